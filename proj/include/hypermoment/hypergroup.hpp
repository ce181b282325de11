#ifndef HYPERMOMENT_HYPERGROUP_HPP
#define HYPERMOMENT_HYPERGROUP_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "hypermoment/error.hpp"
#include "hypermoment/measure.hpp"
#include "hypermoment/polynomial.hpp"
#include "hypermoment/recurrence.hpp"
#include "hypermoment/scalar.hpp"

namespace hypermoment {

/// Index pair (n, m) with n >= m; linearizations are cached under this key.
using LinearizationKey = std::pair<std::uint64_t, std::uint64_t>;

/// Polynomial hypergroup on N generated by a three-term recurrence.
///
/// Basis polynomials and linearizations are cached lazily. Copies share the
/// cache; every cache access is serialized by one mutex, so concurrent calls
/// behave as if issued one after another.
class Hypergroup {
public:
    explicit Hypergroup(RecurrenceSpec spec) : state_(std::make_shared<State>(std::move(spec))) {}

    static Hypergroup catalog(std::string_view name) { return Hypergroup(RecurrenceSpec::catalog(name)); }

    const RecurrenceSpec& spec() const noexcept { return state_->spec; }

    /// Recurrence row n, checked against the hypergroup conditions.
    RecurrenceCoefficients coefficients(std::uint64_t n) const
    {
        std::lock_guard lock(state_->mutex);
        return coefficients_locked(n);
    }

    /// Monomial coefficients of P_n via P_{n+1} = (lambda P_n - a_n P_{n-1} - b_n P_n) / c_n.
    Polynomial basis_polynomial(std::uint64_t n) const
    {
        std::lock_guard lock(state_->mutex);
        auto& basis = state_->basis;
        if (basis.empty())
            basis.push_back(Polynomial{Scalar(1)});
        if (basis.size() == 1 && n >= 1)
            basis.push_back(Polynomial{Scalar(0), Scalar(1)});
        while (basis.size() <= n) {
            const std::uint64_t k = basis.size() - 1;
            const auto rc = coefficients_locked(k);
            const Polynomial& pk = basis[k];
            const Polynomial& pkm1 = basis[k - 1];
            Polynomial next(pk.size() + 1);
            for (std::size_t i = 0; i < pk.size(); ++i) {
                next[i + 1] += pk[i];
                next[i] -= rc.b * pk[i];
            }
            for (std::size_t i = 0; i < pkm1.size(); ++i)
                next[i] -= rc.a * pkm1[i];
            for (auto& coeff : next)
                coeff /= rc.c;
            trim(next);
            basis.push_back(std::move(next));
        }
        return basis[n];
    }

    /// P_n(lambda) by running the recurrence on values.
    Scalar eval_basis(std::uint64_t n, const Scalar& lambda) const
    {
        if (n == 0)
            return Scalar(1);
        Scalar prev(1);
        Scalar cur = lambda;
        for (std::uint64_t k = 1; k < n; ++k) {
            const auto rc = coefficients(k);
            Scalar next = (lambda * cur - rc.a * prev - rc.b * cur) / rc.c;
            prev = std::move(cur);
            cur = std::move(next);
        }
        return cur;
    }

    /// delta_n * delta_m = sum_k c(n,m,k) delta_k.
    ///
    /// Built by recursion on the smaller index:
    /// delta_n * delta_{j+1} = ((delta_n * delta_j) * delta_1 - a_j delta_n * delta_{j-1}
    ///                          - b_j delta_n * delta_j) / c_j.
    /// Throws NegativeLinearization if any weight comes out negative.
    Measure linearize(std::uint64_t n, std::uint64_t m) const
    {
        std::lock_guard lock(state_->mutex);
        return linearize_locked(n, m);
    }

    /// Bilinear extension of the point-mass convolution.
    Measure convolve(const Measure& mu, const Measure& nu) const
    {
        std::lock_guard lock(state_->mutex);
        Measure out;
        for (const auto& [n, wn] : mu.atoms())
            for (const auto& [m, wm] : nu.atoms())
                out += linearize_locked(n, m) * (wn * wm);
        return out;
    }

    /// Snapshot of every cached linearization, keyed by (n, m) with n >= m.
    std::map<LinearizationKey, Measure> cached_linearizations() const
    {
        std::lock_guard lock(state_->mutex);
        return state_->linearizations;
    }

    /// Seeds the cache with previously computed linearizations. Entries that
    /// fail the structural checks (support, nonnegativity, unit mass) are
    /// skipped; returns the number accepted.
    std::size_t import_linearizations(const std::map<LinearizationKey, Measure>& entries) const
    {
        std::lock_guard lock(state_->mutex);
        std::size_t accepted = 0;
        for (const auto& [key, mu] : entries) {
            const auto [n, m] = std::minmax(key.first, key.second);
            if (!structurally_valid(m, n, mu) || !(measure_total(mu) == Scalar(1)))
                continue;
            state_->linearizations.insert_or_assign(LinearizationKey{m, n}, mu);
            ++accepted;
        }
        return accepted;
    }

private:
    struct State {
        explicit State(RecurrenceSpec s) : spec(std::move(s)) {}

        RecurrenceSpec spec;
        std::mutex mutex;
        std::vector<RecurrenceCoefficients> coefficients;
        std::vector<Polynomial> basis;
        std::map<LinearizationKey, Measure> linearizations;
    };

    static bool structurally_valid(std::uint64_t n, std::uint64_t m, const Measure& mu)
    {
        const std::uint64_t lo = n > m ? n - m : m - n;
        for (const auto& [k, w] : mu.atoms()) {
            if (k < lo || k > n + m)
                return false;
            if (!w.is_real() || w.real_sign() < 0)
                return false;
        }
        return true;
    }

    RecurrenceCoefficients coefficients_locked(std::uint64_t n) const
    {
        auto& rows = state_->coefficients;
        while (rows.size() <= n) {
            const std::uint64_t k = rows.size();
            auto rc = state_->spec.at(k);
            auto problems = check_coefficients(rc, k);
            if (!problems.empty()) {
                std::vector<std::string> details;
                for (auto& p : problems)
                    details.push_back(p.message);
                throw Error(ErrorCode::InvalidSpec,
                            "'" + state_->spec.name() + "' violates hypergroup conditions: " + details.front(), details);
            }
            rows.push_back(std::move(rc));
        }
        return rows[n];
    }

    // mu * delta_1, using delta_k * delta_1 = a_k delta_{k-1} + b_k delta_k + c_k delta_{k+1}.
    Measure times_generator_locked(const Measure& mu) const
    {
        Measure out;
        for (const auto& [k, w] : mu.atoms()) {
            const auto rc = coefficients_locked(k);
            if (k > 0)
                out.add(k - 1, rc.a * w);
            out.add(k, rc.b * w);
            out.add(k + 1, rc.c * w);
        }
        return out;
    }

    Measure linearize_locked(std::uint64_t n, std::uint64_t m) const
    {
        if (n < m)
            std::swap(n, m);
        auto& cache = state_->linearizations;
        if (auto it = cache.find({n, m}); it != cache.end())
            return it->second;

        // Resume from the largest j <= m whose rows j and j-1 are both cached.
        std::uint64_t j = m;
        while (j > 0 && !(cache.contains({n, j}) && cache.contains({n, j - 1})))
            --j;
        Measure cur = j == 0 ? Measure::delta(n) : cache.at({n, j});
        Measure prev = j == 0 ? Measure{} : cache.at({n, j - 1});
        if (j == 0)
            cache.insert_or_assign(LinearizationKey{n, 0}, cur);

        while (j < m) {
            const auto rc = coefficients_locked(j);
            Measure next = times_generator_locked(cur);
            if (j > 0)
                next -= prev * rc.a;
            next -= cur * rc.b;
            next /= rc.c;
            ++j;
            check_linearization(n, j, next);
            cache.insert_or_assign(LinearizationKey{n, j}, next);
            prev = std::move(cur);
            cur = std::move(next);
        }
        return cur;
    }

    void check_linearization(std::uint64_t n, std::uint64_t m, const Measure& mu) const
    {
        for (const auto& [k, w] : mu.atoms()) {
            if (w.real_sign() < 0)
                throw Error(ErrorCode::NegativeLinearization,
                            "c(" + std::to_string(n) + "," + std::to_string(m) + "," + std::to_string(k) +
                                ") = " + w.str() + " < 0 for '" + state_->spec.name() + "'");
        }
        if (!structurally_valid(n, m, mu))
            throw Error(ErrorCode::InvalidSpec, "linearization support out of range for (" + std::to_string(n) + "," +
                                                    std::to_string(m) + ")");
    }

    std::shared_ptr<State> state_;
};

} // namespace hypermoment

#endif
