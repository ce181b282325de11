#ifndef HYPERMOMENT_POLYNOMIAL_HPP
#define HYPERMOMENT_POLYNOMIAL_HPP

#include <algorithm>
#include <cstddef>
#include <vector>

#include "hypermoment/scalar.hpp"

namespace hypermoment {

/// Univariate polynomial in the monomial basis; index k holds the
/// coefficient of lambda^k.
using Polynomial = std::vector<Scalar>;

inline void trim(Polynomial& p)
{
    while (!p.empty() && p.back().is_zero())
        p.pop_back();
}

inline Scalar evaluate(const Polynomial& p, const Scalar& x)
{
    Scalar acc(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        acc *= x;
        acc += *it;
    }
    return acc;
}

inline Polynomial derivative(const Polynomial& p, std::size_t times = 1)
{
    Polynomial d = p;
    for (std::size_t t = 0; t < times; ++t) {
        if (d.size() <= 1)
            return {};
        Polynomial next(d.size() - 1);
        for (std::size_t k = 1; k < d.size(); ++k)
            next[k - 1] = d[k] * Scalar(static_cast<unsigned long>(k));
        d = std::move(next);
    }
    return d;
}

inline Polynomial multiply(const Polynomial& p, const Polynomial& q)
{
    if (p.empty() || q.empty())
        return {};
    Polynomial r(p.size() + q.size() - 1);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i].is_zero())
            continue;
        for (std::size_t j = 0; j < q.size(); ++j)
            r[i + j] += p[i] * q[j];
    }
    trim(r);
    return r;
}

} // namespace hypermoment

#endif
