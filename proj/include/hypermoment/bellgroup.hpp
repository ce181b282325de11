#ifndef HYPERMOMENT_BELLGROUP_HPP
#define HYPERMOMENT_BELLGROUP_HPP

#include <concepts>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hypermoment/error.hpp"
#include "hypermoment/hypergroup.hpp"
#include "hypermoment/jet.hpp"
#include "hypermoment/moments.hpp"
#include "hypermoment/multi_index.hpp"
#include "hypermoment/scalar.hpp"

namespace hypermoment {

/// A family x -> a_alpha(x), 0 < |alpha| <= order, on the monoid (N, +).
template <class F>
concept AdditiveFunctions = requires(const F& family, const MultiIndex& alpha, std::uint64_t x) {
    { family.rank() } -> std::convertible_to<std::size_t>;
    { family.order() } -> std::convertible_to<std::uint64_t>;
    { family.value(alpha, x) } -> std::convertible_to<Scalar>;
};

/// a_alpha(x) = slope_alpha * x; additive on N by construction.
class AdditiveFamily {
public:
    AdditiveFamily(std::size_t rank, std::uint64_t order, std::map<MultiIndex, Scalar> slopes)
        : rank_(rank), order_(order), slopes_(std::move(slopes))
    {
        if (rank == 0)
            throw Error(ErrorCode::RankMismatch, "family rank must be positive");
        std::vector<std::string> missing;
        for (const auto& alpha : mi_enumerate(rank, order))
            if (!alpha.is_zero() && !slopes_.contains(alpha))
                missing.push_back(alpha.str());
        for (const auto& [alpha, s] : slopes_) {
            if (alpha.rank() != rank)
                throw Error(ErrorCode::RankMismatch, "slope key " + alpha.str() + " has wrong rank");
            if (alpha.is_zero() || alpha.degree() > order)
                throw Error(ErrorCode::OrderMismatch, "slope key " + alpha.str() + " outside 0 < |alpha| <= order");
        }
        if (!missing.empty())
            throw Error(ErrorCode::IncompleteSeed, "family is missing " + std::to_string(missing.size()) + " slopes",
                        missing);
    }

    std::size_t rank() const noexcept { return rank_; }
    std::uint64_t order() const noexcept { return order_; }
    const std::map<MultiIndex, Scalar>& slopes() const noexcept { return slopes_; }

    Scalar value(const MultiIndex& alpha, std::uint64_t x) const
    {
        return slopes_.at(alpha) * Scalar(static_cast<unsigned long>(x));
    }

private:
    std::size_t rank_;
    std::uint64_t order_;
    std::map<MultiIndex, Scalar> slopes_;
};

/// m(x) = base^x.
struct GroupExponential {
    Scalar base{1};

    Scalar operator()(std::uint64_t x) const { return pow(base, x); }
};

/// exp(g_x) with g_x = sum_{0 < |beta| <= order} a_beta(x) / beta! t^beta;
/// its alpha-th derivative at 0 is the Bell polynomial B_alpha(a(x)).
template <AdditiveFunctions F>
Jet bell_generating_jet(const F& family, std::uint64_t x)
{
    Jet g(family.rank(), family.order());
    for (const auto& beta : mi_enumerate(family.rank(), family.order()))
        if (!beta.is_zero())
            g.set(beta, Scalar(family.value(beta, x)) / beta.factorial());
    return jet_exp(g);
}

/// f_alpha(x) = B_alpha(a(x)) m(x).
template <AdditiveFunctions F>
Scalar group_moment(const MultiIndex& alpha, std::uint64_t x, const F& family, const GroupExponential& m)
{
    if (alpha.rank() != family.rank())
        throw Error(ErrorCode::RankMismatch, "multi-index " + alpha.str() + " does not match family rank");
    if (alpha.degree() > family.order())
        throw Error(ErrorCode::OrderMismatch, "multi-index " + alpha.str() + " exceeds family order");
    return m(x) * partial_at_zero(bell_generating_jet(family, x), alpha);
}

/// n! sum_{j_1 + 2 j_2 + ... + n j_n = n} prod_k (1/j_k!) (a_k(x)/k!)^{j_k}, by direct
/// enumeration of the multiplicity vectors (j_1, ..., j_n).
template <AdditiveFunctions F>
Scalar aczel_rank1(std::uint64_t n, std::uint64_t x, const F& family)
{
    if (family.rank() != 1)
        throw Error(ErrorCode::RankMismatch, "partition formula needs a rank-1 family");
    if (n > family.order())
        throw Error(ErrorCode::OrderMismatch, "n=" + std::to_string(n) + " exceeds family order");

    std::vector<Scalar> scaled(n + 1); // a_k(x) / k!
    for (std::uint64_t k = 1; k <= n; ++k)
        scaled[k] = Scalar(family.value(MultiIndex{static_cast<MultiIndex::value_type>(k)}, x)) / factorial(k);

    Scalar sum(0);
    // Choose j_k for k = part, part-1, ..., 1 with `remaining` left to cover.
    std::function<void(std::uint64_t, std::uint64_t, Scalar)> walk = [&](std::uint64_t part, std::uint64_t remaining,
                                                                          Scalar product) {
        if (remaining == 0) {
            sum += product;
            return;
        }
        if (part == 0)
            return;
        for (std::uint64_t j = 0; j * part <= remaining; ++j) {
            walk(part - 1, remaining - j * part, product * pow(scaled[part], j) / factorial(j));
        }
    };
    walk(n, n, Scalar(1));
    return sum * factorial(n);
}

/// Checks f_alpha(x + y) = sum_{beta <= alpha} binom(alpha, beta) f_beta(x) f_{alpha-beta}(y)
/// for x, y <= x_max and |alpha| <= max_degree.
template <AdditiveFunctions F>
VerificationReport verify_group_binomial(const F& family, const GroupExponential& m, std::uint64_t max_degree,
                                         std::uint64_t x_max)
{
    if (max_degree > family.order())
        throw Error(ErrorCode::OrderMismatch, "degree " + std::to_string(max_degree) + " exceeds family order");
    const auto indices = mi_enumerate(family.rank(), max_degree);
    std::vector<std::map<MultiIndex, Scalar>> values(2 * x_max + 1);
    for (std::uint64_t x = 0; x <= 2 * x_max; ++x) {
        const Jet e = bell_generating_jet(family, x);
        const Scalar mx = m(x);
        for (const auto& alpha : indices)
            values[x].emplace(alpha, mx * partial_at_zero(e, alpha));
    }

    VerificationReport report;
    for (std::uint64_t x = 0; x <= x_max; ++x) {
        for (std::uint64_t y = 0; y <= x_max; ++y) {
            for (const auto& alpha : indices) {
                const Scalar& lhs = values[x + y].at(alpha);
                Scalar rhs(0);
                for (const auto& beta : sub_indices(alpha))
                    rhs += mi_binom(alpha, beta) * values[x].at(beta) * values[y].at(alpha - beta);
                ++report.checked;
                if (!(lhs == rhs))
                    report.violations.push_back({alpha, x, y, lhs, std::move(rhs)});
            }
        }
    }
    return report;
}

/// B_{alpha,k}(f) = alpha! [t^alpha] (f - f(0))^k / k!.
inline Scalar partial_bell(const Jet& f, const MultiIndex& alpha, std::uint64_t k)
{
    Jet g = f;
    g.set(MultiIndex::zero(f.rank()), Scalar(0));
    return partial_at_zero(jet_pow(g, k), alpha) / factorial(k);
}

struct FaaDiBrunoPair {
    Scalar decomposed;
    Scalar direct;
};

/// d^alpha (P_n o f)(0) two ways: sum_k P_n^{(k)}(f(0)) B_{alpha,k}(f) from the
/// monomial form of P_n, and directly from the composed jet.
inline FaaDiBrunoPair faa_di_bruno_check(const Hypergroup& h, std::uint64_t n, const Jet& f, const MultiIndex& alpha)
{
    if (alpha.rank() != f.rank())
        throw Error(ErrorCode::RankMismatch, "multi-index " + alpha.str() + " does not match jet rank");
    if (alpha.degree() > f.order())
        throw Error(ErrorCode::OrderMismatch, "multi-index " + alpha.str() + " exceeds jet order");
    const Polynomial p = h.basis_polynomial(n);
    const Scalar f0 = f.constant_term();
    Scalar decomposed(0);
    Polynomial dk = p;
    for (std::uint64_t k = 0; k <= alpha.degree(); ++k) {
        if (k > 0)
            dk = derivative(dk);
        if (dk.empty())
            break;
        decomposed += evaluate(dk, f0) * partial_bell(f, alpha, k);
    }
    return {std::move(decomposed), partial_at_zero(compose_basis(h, n, f), alpha)};
}

} // namespace hypermoment

#endif
