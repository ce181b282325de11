#ifndef HYPERMOMENT_RECURRENCE_HPP
#define HYPERMOMENT_RECURRENCE_HPP

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hypermoment/error.hpp"
#include "hypermoment/scalar.hpp"

namespace hypermoment {

/// (a_n, b_n, c_n) in  lambda P_n = a_n P_{n-1} + b_n P_n + c_n P_{n+1}.
struct RecurrenceCoefficients {
    Scalar a;
    Scalar b;
    Scalar c;

    friend bool operator==(const RecurrenceCoefficients&, const RecurrenceCoefficients&) = default;
};

enum class CatalogKind { chebyshev1, chebyshev2, legendre, custom };

struct CatalogEntry {
    std::string_view name;
    std::string_view description;
    std::string_view a;
    std::string_view b;
    std::string_view c;
};

inline constexpr CatalogEntry catalog_entries[] = {
    {"chebyshev1", "Chebyshev polynomials of the first kind, T_n(1) = 1", "1/2 (n >= 1)", "0", "1/2 (n >= 1), c_0 = 1"},
    {"chebyshev2", "Chebyshev polynomials of the second kind normalized by U_n(1) = n+1", "n/(2(n+1))", "0",
     "(n+2)/(2(n+1))"},
    {"legendre", "Legendre polynomials, P_n(1) = 1", "n/(2n+1)", "0", "(n+1)/(2n+1)"},
};

/// Coefficient rules of a three-term recurrence: either a closed-form catalog
/// entry or an explicit table valid up to a declared n_max.
class RecurrenceSpec {
public:
    static RecurrenceSpec catalog(std::string_view name)
    {
        if (name == "chebyshev1")
            return RecurrenceSpec(CatalogKind::chebyshev1, std::string(name));
        if (name == "chebyshev2")
            return RecurrenceSpec(CatalogKind::chebyshev2, std::string(name));
        if (name == "legendre")
            return RecurrenceSpec(CatalogKind::legendre, std::string(name));
        throw Error(ErrorCode::UnknownCatalogEntry, "no catalog hypergroup named '" + std::string(name) + "'");
    }

    static RecurrenceSpec custom(std::uint64_t n_max, std::vector<Scalar> a, std::vector<Scalar> b,
                                 std::vector<Scalar> c, std::string name = "custom")
    {
        RecurrenceSpec spec(CatalogKind::custom, std::move(name));
        spec.n_max_ = n_max;
        spec.a_ = std::move(a);
        spec.b_ = std::move(b);
        spec.c_ = std::move(c);
        return spec;
    }

    CatalogKind kind() const noexcept { return kind_; }
    const std::string& name() const noexcept { return name_; }
    bool is_custom() const noexcept { return kind_ == CatalogKind::custom; }

    /// Largest index whose coefficients are available; catalog rules are unbounded.
    std::uint64_t n_max() const noexcept
    {
        if (!is_custom())
            return UINT64_MAX;
        const std::uint64_t rows = std::min({a_.size(), b_.size(), c_.size()});
        if (rows == 0)
            return 0;
        return std::min<std::uint64_t>(n_max_, rows - 1);
    }

    std::uint64_t declared_n_max() const noexcept { return is_custom() ? n_max_ : UINT64_MAX; }

    const std::vector<Scalar>& table_a() const noexcept { return a_; }
    const std::vector<Scalar>& table_b() const noexcept { return b_; }
    const std::vector<Scalar>& table_c() const noexcept { return c_; }

    RecurrenceCoefficients at(std::uint64_t n) const
    {
        const auto ln = static_cast<long>(n);
        switch (kind_) {
        case CatalogKind::chebyshev1:
            if (n == 0)
                return {Scalar(0), Scalar(0), Scalar(1)};
            return {Scalar::ratio(1, 2), Scalar(0), Scalar::ratio(1, 2)};
        case CatalogKind::chebyshev2:
            return {Scalar::ratio(ln, 2 * (ln + 1)), Scalar(0), Scalar::ratio(ln + 2, 2 * (ln + 1))};
        case CatalogKind::legendre:
            return {Scalar::ratio(ln, 2 * ln + 1), Scalar(0), Scalar::ratio(ln + 1, 2 * ln + 1)};
        case CatalogKind::custom:
            break;
        }
        if (n > n_max_ || n >= a_.size() || n >= b_.size() || n >= c_.size())
            throw Error(ErrorCode::CoefficientUnavailable,
                        "coefficients of '" + name_ + "' requested at n=" + std::to_string(n) + " beyond table");
        return {a_[n], b_[n], c_[n]};
    }

private:
    RecurrenceSpec(CatalogKind kind, std::string name) : kind_(kind), name_(std::move(name)) {}

    CatalogKind kind_;
    std::string name_;
    std::uint64_t n_max_ = 0;
    std::vector<Scalar> a_;
    std::vector<Scalar> b_;
    std::vector<Scalar> c_;
};

struct SpecViolation {
    std::uint64_t index;
    std::string message;
};

struct ValidationReport {
    std::uint64_t n_max = 0;
    std::vector<SpecViolation> violations;

    bool valid() const noexcept { return violations.empty(); }
};

/// Hypergroup conditions on a single row of coefficients.
inline std::vector<SpecViolation> check_coefficients(const RecurrenceCoefficients& k, std::uint64_t n)
{
    std::vector<SpecViolation> out;
    const std::string idx = std::to_string(n);
    auto fail = [&](std::string msg) { out.push_back({n, std::move(msg)}); };
    if (!k.a.is_real() || !k.b.is_real() || !k.c.is_real()) {
        fail("coefficients at n=" + idx + " are not real");
        return out;
    }
    if (n == 0) {
        if (!k.a.is_zero())
            fail("a_0 = 0 fails");
        if (!k.b.is_zero())
            fail("b_0 = 0 fails");
    } else if (k.a.real_sign() <= 0) {
        fail("a_" + idx + " > 0 fails");
    }
    if (k.b.real_sign() < 0)
        fail("b_" + idx + " ≥ 0 fails");
    if (k.c.real_sign() <= 0)
        fail("c_" + idx + " > 0 fails");
    if (!(k.a + k.b + k.c == Scalar(1)))
        fail("sum ≠ 1 at n=" + idx);
    return out;
}

/// Checks every hypergroup condition for 0 <= n <= n_max and lists all violations.
inline ValidationReport validate_spec(const RecurrenceSpec& spec, std::uint64_t n_max)
{
    if (spec.is_custom() && spec.n_max() < n_max)
        throw Error(ErrorCode::CoefficientUnavailable, "custom table '" + spec.name() + "' covers n <= " +
                                                           std::to_string(spec.n_max()) + ", requested " +
                                                           std::to_string(n_max));
    ValidationReport report;
    report.n_max = n_max;
    for (std::uint64_t n = 0; n <= n_max; ++n) {
        auto v = check_coefficients(spec.at(n), n);
        report.violations.insert(report.violations.end(), v.begin(), v.end());
    }
    return report;
}

} // namespace hypermoment

#endif
