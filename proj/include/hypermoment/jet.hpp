#ifndef HYPERMOMENT_JET_HPP
#define HYPERMOMENT_JET_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hypermoment/error.hpp"
#include "hypermoment/hypergroup.hpp"
#include "hypermoment/multi_index.hpp"
#include "hypermoment/polynomial.hpp"
#include "hypermoment/scalar.hpp"

namespace hypermoment {

/// Power series in `rank` variables truncated at total degree `order`.
/// Only nonzero coefficients are stored.
class Jet {
public:
    using coeff_map = std::map<MultiIndex, Scalar>;

    Jet(std::size_t rank, std::uint64_t order) : rank_(rank), order_(order)
    {
        if (rank == 0)
            throw Error(ErrorCode::RankMismatch, "jet rank must be positive");
    }

    static Jet constant(std::size_t rank, std::uint64_t order, const Scalar& s)
    {
        Jet j(rank, order);
        j.set(MultiIndex::zero(rank), s);
        return j;
    }

    /// The coordinate t_axis (truncated away when order == 0).
    static Jet variable(std::size_t rank, std::uint64_t order, std::size_t axis)
    {
        Jet j(rank, order);
        if (order >= 1)
            j.set(MultiIndex::unit(rank, axis), Scalar(1));
        return j;
    }

    std::size_t rank() const noexcept { return rank_; }
    std::uint64_t order() const noexcept { return order_; }
    const coeff_map& coefficients() const noexcept { return coeffs_; }
    bool is_zero() const noexcept { return coeffs_.empty(); }

    Scalar coeff(const MultiIndex& alpha) const
    {
        check_index(alpha);
        auto it = coeffs_.find(alpha);
        return it == coeffs_.end() ? Scalar(0) : it->second;
    }

    Scalar constant_term() const { return coeff(MultiIndex::zero(rank_)); }

    void set(const MultiIndex& alpha, const Scalar& value)
    {
        check_index(alpha);
        if (value.is_zero())
            coeffs_.erase(alpha);
        else
            coeffs_.insert_or_assign(alpha, value);
    }

    void add_to(const MultiIndex& alpha, const Scalar& value)
    {
        if (value.is_zero())
            return;
        auto [it, inserted] = coeffs_.try_emplace(alpha, value);
        if (!inserted) {
            it->second += value;
            if (it->second.is_zero())
                coeffs_.erase(it);
        }
    }

    Jet& operator+=(const Jet& rhs)
    {
        require_compatible(rhs);
        for (const auto& [alpha, v] : rhs.coeffs_)
            add_to(alpha, v);
        return *this;
    }

    Jet& operator-=(const Jet& rhs)
    {
        require_compatible(rhs);
        for (const auto& [alpha, v] : rhs.coeffs_)
            add_to(alpha, -v);
        return *this;
    }

    Jet& operator*=(const Scalar& s)
    {
        if (s.is_zero()) {
            coeffs_.clear();
            return *this;
        }
        for (auto& [alpha, v] : coeffs_)
            v *= s;
        return *this;
    }

    Jet& operator/=(const Scalar& s)
    {
        for (auto& [alpha, v] : coeffs_)
            v /= s;
        return *this;
    }

    /// Truncated Cauchy product: w_alpha = sum_{beta <= alpha} u_beta v_{alpha-beta}.
    friend Jet operator*(const Jet& u, const Jet& v)
    {
        u.require_compatible(v);
        Jet w(u.rank_, u.order_);
        for (const auto& [beta, ub] : u.coeffs_) {
            const auto db = beta.degree();
            for (const auto& [gamma, vg] : v.coeffs_) {
                if (db + gamma.degree() > u.order_)
                    continue;
                w.add_to(beta + gamma, ub * vg);
            }
        }
        return w;
    }

    Jet& operator*=(const Jet& rhs) { return *this = *this * rhs; }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator-(Jet a) { return a *= Scalar(-1); }
    friend Jet operator*(Jet a, const Scalar& s) { return a *= s; }
    friend Jet operator*(const Scalar& s, Jet a) { return a *= s; }
    friend Jet operator/(Jet a, const Scalar& s) { return a /= s; }

    friend bool operator==(const Jet&, const Jet&) = default;

    void require_compatible(const Jet& other) const
    {
        if (rank_ != other.rank_)
            throw Error(ErrorCode::RankMismatch,
                        "jets of rank " + std::to_string(rank_) + " and " + std::to_string(other.rank_));
        if (order_ != other.order_)
            throw Error(ErrorCode::OrderMismatch,
                        "jets of order " + std::to_string(order_) + " and " + std::to_string(other.order_));
    }

private:
    void check_index(const MultiIndex& alpha) const
    {
        if (alpha.rank() != rank_)
            throw Error(ErrorCode::RankMismatch,
                        "multi-index " + alpha.str() + " used with a rank-" + std::to_string(rank_) + " jet");
        if (alpha.degree() > order_)
            throw Error(ErrorCode::OrderMismatch,
                        "multi-index " + alpha.str() + " exceeds jet order " + std::to_string(order_));
    }

    std::size_t rank_;
    std::uint64_t order_;
    coeff_map coeffs_;
};

inline Jet jet_const(std::size_t rank, std::uint64_t order, const Scalar& s) { return Jet::constant(rank, order, s); }
inline Jet jet_add(const Jet& u, const Jet& v) { return u + v; }
inline Jet jet_scale(const Jet& u, const Scalar& s) { return u * s; }
inline Jet jet_mul(const Jet& u, const Jet& v) { return u * v; }

inline Jet jet_pow(const Jet& u, std::uint64_t k)
{
    Jet result = Jet::constant(u.rank(), u.order(), Scalar(1));
    for (std::uint64_t i = 0; i < k; ++i) {
        result *= u;
        if (result.is_zero())
            break;
    }
    return result;
}

/// exp(u) = sum_{k <= order} u^k / k! for u with zero constant term;
/// u^{order+1} truncates to zero, so the sum is exact.
inline Jet jet_exp(const Jet& u)
{
    if (!u.constant_term().is_zero())
        throw Error(ErrorCode::ExpNonzeroConstant, "exp of a jet with constant term " + u.constant_term().str());
    Jet result = Jet::constant(u.rank(), u.order(), Scalar(1));
    Jet term = result;
    for (std::uint64_t k = 1; k <= u.order(); ++k) {
        term = term * u / Scalar(static_cast<unsigned long>(k));
        if (term.is_zero())
            break;
        result += term;
    }
    return result;
}

/// d^alpha u at 0, i.e. alpha! times the coefficient of t^alpha.
inline Scalar partial_at_zero(const Jet& u, const MultiIndex& alpha)
{
    return u.coeff(alpha) * alpha.factorial();
}

/// Substitutes a jet into a monomial-basis polynomial (Horner).
inline Jet compose_polynomial(const Polynomial& p, const Jet& f)
{
    Jet acc(f.rank(), f.order());
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        acc = acc * f;
        acc += Jet::constant(f.rank(), f.order(), *it);
    }
    return acc;
}

/// P_k o f for k = 0..n_max, via J_{k+1} = (f J_k - a_k J_{k-1} - b_k J_k) / c_k.
inline std::vector<Jet> compose_basis_sequence(const Hypergroup& h, std::uint64_t n_max, const Jet& f)
{
    std::vector<Jet> out;
    out.reserve(n_max + 1);
    out.push_back(Jet::constant(f.rank(), f.order(), Scalar(1)));
    if (n_max == 0)
        return out;
    out.push_back(f);
    for (std::uint64_t k = 1; k < n_max; ++k) {
        const auto rc = h.coefficients(k);
        Jet next = f * out[k];
        next -= out[k - 1] * rc.a;
        next -= out[k] * rc.b;
        next /= rc.c;
        out.push_back(std::move(next));
    }
    return out;
}

inline Jet compose_basis(const Hypergroup& h, std::uint64_t n, const Jet& f)
{
    return std::move(compose_basis_sequence(h, n, f).back());
}

} // namespace hypermoment

#endif
