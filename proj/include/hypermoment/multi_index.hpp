#ifndef HYPERMOMENT_MULTI_INDEX_HPP
#define HYPERMOMENT_MULTI_INDEX_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "hypermoment/error.hpp"
#include "hypermoment/scalar.hpp"

namespace hypermoment {

/// Element of N^r.
///
/// `<=>` is the graded order used for iteration and serialization: total
/// degree ascending, then lexicographic with larger leading components
/// first, so (1,0) precedes (0,1). The componentwise partial order is
/// `componentwise_le`.
class MultiIndex {
public:
    using value_type = std::uint32_t;

    MultiIndex() = default;
    explicit MultiIndex(std::vector<value_type> components) : c_(std::move(components)) {}
    MultiIndex(std::initializer_list<value_type> components) : c_(components) {}

    static MultiIndex zero(std::size_t rank) { return MultiIndex(std::vector<value_type>(rank, 0)); }

    static MultiIndex unit(std::size_t rank, std::size_t axis)
    {
        MultiIndex e = zero(rank);
        e.c_.at(axis) = 1;
        return e;
    }

    std::size_t rank() const noexcept { return c_.size(); }
    value_type operator[](std::size_t i) const { return c_[i]; }
    const std::vector<value_type>& components() const noexcept { return c_; }

    std::uint64_t degree() const noexcept { return std::accumulate(c_.begin(), c_.end(), std::uint64_t{0}); }
    bool is_zero() const noexcept { return degree() == 0; }

    /// alpha! = prod alpha_i!
    Scalar factorial() const
    {
        mpz_class f = 1;
        for (value_type v : c_) {
            mpz_class g;
            mpz_fac_ui(g.get_mpz_t(), v);
            f *= g;
        }
        return Scalar(f);
    }

    std::string str() const
    {
        std::string out = "[";
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i != 0)
                out += ',';
            out += std::to_string(c_[i]);
        }
        return out + "]";
    }

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

    friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b)
    {
        if (auto d = a.degree() <=> b.degree(); d != 0)
            return d;
        if (auto r = a.rank() <=> b.rank(); r != 0)
            return r;
        for (std::size_t i = 0; i < a.rank(); ++i)
            if (a.c_[i] != b.c_[i])
                return b.c_[i] <=> a.c_[i];
        return std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const MultiIndex& a) { return os << a.str(); }

private:
    std::vector<value_type> c_;
};

inline void require_same_rank(const MultiIndex& a, const MultiIndex& b)
{
    if (a.rank() != b.rank())
        throw Error(ErrorCode::RankMismatch, "multi-indices " + a.str() + " and " + b.str() + " differ in rank");
}

/// beta <= alpha componentwise.
inline bool componentwise_le(const MultiIndex& beta, const MultiIndex& alpha)
{
    require_same_rank(beta, alpha);
    for (std::size_t i = 0; i < alpha.rank(); ++i)
        if (beta[i] > alpha[i])
            return false;
    return true;
}

inline MultiIndex operator+(const MultiIndex& a, const MultiIndex& b)
{
    require_same_rank(a, b);
    std::vector<MultiIndex::value_type> c(a.rank());
    for (std::size_t i = 0; i < a.rank(); ++i)
        c[i] = a[i] + b[i];
    return MultiIndex(std::move(c));
}

/// alpha - beta; requires beta <= alpha.
inline MultiIndex operator-(const MultiIndex& alpha, const MultiIndex& beta)
{
    if (!componentwise_le(beta, alpha))
        throw Error(ErrorCode::DominanceViolation, beta.str() + " is not below " + alpha.str());
    std::vector<MultiIndex::value_type> c(alpha.rank());
    for (std::size_t i = 0; i < alpha.rank(); ++i)
        c[i] = alpha[i] - beta[i];
    return MultiIndex(std::move(c));
}

/// Every alpha in N^r with |alpha| <= max_degree, in graded order.
inline std::vector<MultiIndex> mi_enumerate(std::size_t rank, std::uint64_t max_degree)
{
    if (rank == 0)
        throw Error(ErrorCode::RankMismatch, "rank must be positive");
    std::vector<MultiIndex> out;
    std::vector<MultiIndex::value_type> c(rank, 0);
    // Fill position `pos` onward with exactly `remaining`, largest leading part first.
    std::function<void(std::size_t, std::uint64_t)> fill = [&](std::size_t pos, std::uint64_t remaining) {
        if (pos + 1 == rank) {
            c[pos] = static_cast<MultiIndex::value_type>(remaining);
            out.emplace_back(c);
            return;
        }
        for (std::uint64_t v = remaining + 1; v-- > 0;) {
            c[pos] = static_cast<MultiIndex::value_type>(v);
            fill(pos + 1, remaining - v);
        }
    };
    for (std::uint64_t d = 0; d <= max_degree; ++d)
        fill(0, d);
    return out;
}

/// Every beta <= alpha, in graded order.
inline std::vector<MultiIndex> sub_indices(const MultiIndex& alpha)
{
    std::vector<MultiIndex> out;
    for (auto& beta : mi_enumerate(alpha.rank(), alpha.degree()))
        if (componentwise_le(beta, alpha))
            out.push_back(std::move(beta));
    return out;
}

/// binom(alpha, beta) = prod_i C(alpha_i, beta_i).
inline Scalar mi_binom(const MultiIndex& alpha, const MultiIndex& beta)
{
    if (!componentwise_le(beta, alpha))
        throw Error(ErrorCode::DominanceViolation, beta.str() + " is not below " + alpha.str());
    mpz_class result = 1;
    for (std::size_t i = 0; i < alpha.rank(); ++i) {
        mpz_class c;
        mpz_bin_uiui(c.get_mpz_t(), alpha[i], beta[i]);
        result *= c;
    }
    return Scalar(result);
}

} // namespace hypermoment

#endif
