#ifndef HYPERMOMENT_MOMENTS_HPP
#define HYPERMOMENT_MOMENTS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hypermoment/error.hpp"
#include "hypermoment/hypergroup.hpp"
#include "hypermoment/jet.hpp"
#include "hypermoment/multi_index.hpp"
#include "hypermoment/polynomial.hpp"
#include "hypermoment/scalar.hpp"

namespace hypermoment {

/// Prescribed values phi_alpha(1) for every |alpha| <= order.
struct MomentSeed {
    std::size_t rank = 1;
    std::uint64_t order = 0;
    std::map<MultiIndex, Scalar> values;

    /// Throws RankMismatch / OrderMismatch for stray keys and IncompleteSeed
    /// (with the missing indices as details) if any alpha is absent.
    void require_complete() const
    {
        if (rank == 0)
            throw Error(ErrorCode::RankMismatch, "seed rank must be positive");
        for (const auto& [alpha, v] : values) {
            if (alpha.rank() != rank)
                throw Error(ErrorCode::RankMismatch, "seed key " + alpha.str() + " has wrong rank");
            if (alpha.degree() > order)
                throw Error(ErrorCode::OrderMismatch, "seed key " + alpha.str() + " exceeds order");
        }
        std::vector<std::string> missing;
        for (const auto& alpha : mi_enumerate(rank, order))
            if (!values.contains(alpha))
                missing.push_back(alpha.str());
        if (!missing.empty()) {
            std::string list;
            for (const auto& m : missing)
                list += (list.empty() ? "" : " ") + m;
            throw Error(ErrorCode::IncompleteSeed, "seed is missing " + list, missing);
        }
    }

    const Scalar& lambda() const { return values.at(MultiIndex::zero(rank)); }
};

/// phi_alpha(n) for all |alpha| <= order and 0 <= n <= n_max.
class MomentTable {
public:
    MomentTable(std::size_t rank, std::uint64_t order, std::uint64_t n_max)
        : rank_(rank), order_(order), n_max_(n_max)
    {
        for (const auto& alpha : mi_enumerate(rank, order))
            columns_.emplace(alpha, std::vector<Scalar>(n_max + 1));
    }

    std::size_t rank() const noexcept { return rank_; }
    std::uint64_t order() const noexcept { return order_; }
    std::uint64_t n_max() const noexcept { return n_max_; }

    const Scalar& at(const MultiIndex& alpha, std::uint64_t n) const
    {
        return column(alpha).at(range_checked(n));
    }

    void set(const MultiIndex& alpha, std::uint64_t n, Scalar value)
    {
        column_mut(alpha).at(range_checked(n)) = std::move(value);
    }

    const std::vector<Scalar>& column(const MultiIndex& alpha) const
    {
        auto it = columns_.find(alpha);
        if (it == columns_.end())
            throw Error(alpha.rank() != rank_ ? ErrorCode::RankMismatch : ErrorCode::OrderMismatch,
                        "multi-index " + alpha.str() + " is not in the table");
        return it->second;
    }

    /// Column map in graded order of alpha.
    const std::map<MultiIndex, std::vector<Scalar>>& columns() const noexcept { return columns_; }

    friend bool operator==(const MomentTable&, const MomentTable&) = default;

private:
    std::uint64_t range_checked(std::uint64_t n) const
    {
        if (n > n_max_)
            throw Error(ErrorCode::TableRangeExceeded,
                        "n=" + std::to_string(n) + " beyond table n_max=" + std::to_string(n_max_));
        return n;
    }

    std::vector<Scalar>& column_mut(const MultiIndex& alpha)
    {
        return const_cast<std::vector<Scalar>&>(std::as_const(*this).column(alpha));
    }

    std::size_t rank_;
    std::uint64_t order_;
    std::uint64_t n_max_;
    std::map<MultiIndex, std::vector<Scalar>> columns_;
};

struct Violation {
    MultiIndex alpha;
    std::uint64_t n;
    std::uint64_t m;
    Scalar lhs;
    Scalar rhs;
};

struct VerificationReport {
    std::uint64_t checked = 0;
    std::vector<Violation> violations;

    bool passed() const noexcept { return violations.empty(); }
};

/// f(t) = sum phi_alpha(1) / alpha! t^alpha.
inline Jet seed_jet(const MomentSeed& seed)
{
    seed.require_complete();
    Jet f(seed.rank, seed.order);
    for (const auto& [alpha, v] : seed.values)
        f.set(alpha, v / alpha.factorial());
    return f;
}

/// phi_alpha(n) = d^alpha (P_n o f)(0), one composed jet per n.
inline MomentTable moment_table(const Hypergroup& h, const MomentSeed& seed, std::uint64_t n_max)
{
    const Jet f = seed_jet(seed);
    const auto jets = compose_basis_sequence(h, n_max, f);
    MomentTable table(seed.rank, seed.order, n_max);
    for (std::uint64_t n = 0; n <= n_max; ++n)
        for (const auto& [alpha, col] : table.columns())
            table.set(alpha, n, partial_at_zero(jets[n], alpha));
    return table;
}

/// phi_0(n) = P_n(lambda): the exponential through lambda.
inline std::vector<Scalar> exponential_values(const Hypergroup& h, const Scalar& lambda, std::uint64_t n_max)
{
    std::vector<Scalar> out;
    out.reserve(n_max + 1);
    for (std::uint64_t n = 0; n <= n_max; ++n)
        out.push_back(h.eval_basis(n, lambda));
    return out;
}

namespace detail {

inline void require_range(const MomentTable& table, std::uint64_t n_max, std::uint64_t m_max)
{
    if (n_max + m_max > table.n_max())
        throw Error(ErrorCode::TableRangeExceeded,
                    "checking n <= " + std::to_string(n_max) + ", m <= " + std::to_string(m_max) +
                        " needs values up to " + std::to_string(n_max + m_max) + " but the table stops at " +
                        std::to_string(table.n_max()));
}

// phi_alpha(n * m) = sum_k c(n,m,k) phi_alpha(k)
inline Scalar convolved_value(const Measure& nm, const std::vector<Scalar>& column)
{
    Scalar sum(0);
    for (const auto& [k, w] : nm.atoms())
        sum += w * column[k];
    return sum;
}

} // namespace detail

/// Checks phi_alpha(n * m) = sum_{beta <= alpha} binom(alpha, beta) phi_beta(n) phi_{alpha-beta}(m)
/// exactly for every |alpha| <= order, n <= n_max, m <= m_max. Collects all violations.
inline VerificationReport verify_binomial(const Hypergroup& h, const MomentTable& table, std::uint64_t n_max,
                                          std::uint64_t m_max)
{
    detail::require_range(table, n_max, m_max);
    struct Term {
        Scalar binom;
        const std::vector<Scalar>* left;
        const std::vector<Scalar>* right;
    };
    std::vector<std::pair<MultiIndex, std::vector<Term>>> expansions;
    for (const auto& [alpha, col] : table.columns()) {
        std::vector<Term> terms;
        for (const auto& beta : sub_indices(alpha))
            terms.push_back({mi_binom(alpha, beta), &table.column(beta), &table.column(alpha - beta)});
        expansions.emplace_back(alpha, std::move(terms));
    }

    VerificationReport report;
    for (std::uint64_t n = 0; n <= n_max; ++n) {
        for (std::uint64_t m = 0; m <= m_max; ++m) {
            const Measure nm = h.linearize(n, m);
            for (const auto& [alpha, terms] : expansions) {
                Scalar lhs = detail::convolved_value(nm, table.column(alpha));
                Scalar rhs(0);
                for (const auto& t : terms)
                    rhs += t.binom * (*t.left)[n] * (*t.right)[m];
                ++report.checked;
                if (!(lhs == rhs))
                    report.violations.push_back({alpha, n, m, std::move(lhs), std::move(rhs)});
            }
        }
    }
    return report;
}

/// The |alpha| = 1 slice: phi_alpha(n * m) = phi_alpha(n) phi_0(m) + phi_0(n) phi_alpha(m).
inline VerificationReport sine_check(const Hypergroup& h, const MomentTable& table, std::uint64_t n_max,
                                     std::uint64_t m_max)
{
    detail::require_range(table, n_max, m_max);
    VerificationReport report;
    if (table.order() == 0)
        return report;
    const auto& phi0 = table.column(MultiIndex::zero(table.rank()));
    for (std::uint64_t n = 0; n <= n_max; ++n) {
        for (std::uint64_t m = 0; m <= m_max; ++m) {
            const Measure nm = h.linearize(n, m);
            for (std::size_t axis = 0; axis < table.rank(); ++axis) {
                const auto alpha = MultiIndex::unit(table.rank(), axis);
                const auto& col = table.column(alpha);
                Scalar lhs = detail::convolved_value(nm, col);
                Scalar rhs = col[n] * phi0[m] + phi0[n] * col[m];
                ++report.checked;
                if (!(lhs == rhs))
                    report.violations.push_back({alpha, n, m, std::move(lhs), std::move(rhs)});
            }
        }
    }
    return report;
}

/// Rank-1 generator, phi_k(n) = (P_n o f)^{(k)}(0). Substitutes f into the
/// monomial form of P_n with univariate truncated series, a separate route
/// from the jet recurrence used by moment_table.
inline MomentTable rank1_table(const Hypergroup& h, const MomentSeed& seed, std::uint64_t n_max)
{
    if (seed.rank != 1)
        throw Error(ErrorCode::RankMismatch, "rank1_table needs a rank-1 seed, got rank " + std::to_string(seed.rank));
    seed.require_complete();
    const std::uint64_t order = seed.order;

    // Taylor coefficients of f.
    std::vector<Scalar> f(order + 1);
    for (std::uint64_t k = 0; k <= order; ++k)
        f[k] = seed.values.at(MultiIndex{static_cast<MultiIndex::value_type>(k)}) / factorial(k);

    auto truncated_mul = [order](const std::vector<Scalar>& u, const std::vector<Scalar>& v) {
        std::vector<Scalar> w(order + 1);
        for (std::uint64_t i = 0; i <= order; ++i) {
            if (u[i].is_zero())
                continue;
            for (std::uint64_t j = 0; i + j <= order; ++j)
                w[i + j] += u[i] * v[j];
        }
        return w;
    };

    MomentTable table(1, order, n_max);
    for (std::uint64_t n = 0; n <= n_max; ++n) {
        const Polynomial p = h.basis_polynomial(n);
        std::vector<Scalar> acc(order + 1);
        for (auto it = p.rbegin(); it != p.rend(); ++it) {
            acc = truncated_mul(acc, f);
            acc[0] += *it;
        }
        for (std::uint64_t k = 0; k <= order; ++k)
            table.set(MultiIndex{static_cast<MultiIndex::value_type>(k)}, n, acc[k] * factorial(k));
    }
    return table;
}

} // namespace hypermoment

#endif
