#ifndef HYPERMOMENT_SCALAR_HPP
#define HYPERMOMENT_SCALAR_HPP

#include <cctype>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>

#include "hypermoment/error.hpp"

namespace hypermoment {

namespace detail {

inline bool is_digits(std::string_view s)
{
    if (s.empty())
        return false;
    for (char ch : s)
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            return false;
    return true;
}

// Accepts [+-]digits or [+-]digits/digits with a nonzero denominator.
inline mpq_class parse_rational(std::string_view text)
{
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    const auto slash = s.find('/');
    const std::string_view num = s.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
    if (!is_digits(num) || !is_digits(den))
        throw Error(ErrorCode::ParseError, "malformed rational '" + std::string(text) + "'");
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0)
        throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
    mpq_class q(negative ? mpz_class(-n) : n, d);
    q.canonicalize();
    return q;
}

inline std::string format_rational(const mpq_class& q)
{
    if (q.get_den() == 1)
        return q.get_num().get_str();
    return q.get_str();
}

} // namespace detail

/// Exact complex number with rational real and imaginary parts.
///
/// GMP keeps both parts canonical (reduced, positive denominator), so
/// equality is decided by comparing fields.
class Scalar {
public:
    Scalar() = default;
    Scalar(int value) : re_(value) {}
    Scalar(long value) : re_(value) {}
    Scalar(long long value) : re_(static_cast<long>(value)) {}
    Scalar(unsigned value) : re_(value) {}
    Scalar(unsigned long value) : re_(value) {}
    Scalar(const mpz_class& value) : re_(value) {}
    Scalar(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im))
    {
        re_.canonicalize();
        im_.canonicalize();
    }

    static Scalar ratio(long num, long den)
    {
        if (den == 0)
            throw Error(ErrorCode::DivisionByZero, "ratio with zero denominator");
        mpq_class q(num, den);
        q.canonicalize();
        return Scalar(std::move(q));
    }

    static Scalar imaginary_unit() { return Scalar(mpq_class(0), mpq_class(1)); }

    /// Parses "p/q", "p/q+s/ti" (whitespace before `i` allowed), "s/ti", "i".
    static Scalar parse(std::string_view text)
    {
        std::string s;
        for (char ch : text)
            if (!std::isspace(static_cast<unsigned char>(ch)))
                s.push_back(ch);
        if (s.empty())
            throw Error(ErrorCode::ParseError, "empty scalar");
        if (s.back() != 'i')
            return Scalar(detail::parse_rational(s));

        s.pop_back();
        std::size_t split = std::string::npos;
        for (std::size_t k = s.size(); k-- > 1;) {
            if (s[k] == '+' || s[k] == '-') {
                split = k;
                break;
            }
        }
        std::string re_part = split == std::string::npos ? std::string() : s.substr(0, split);
        std::string im_part = split == std::string::npos ? s : s.substr(split);
        if (im_part.empty() || im_part == "+")
            im_part = "1";
        else if (im_part == "-")
            im_part = "-1";
        mpq_class re = re_part.empty() ? mpq_class(0) : detail::parse_rational(re_part);
        return Scalar(std::move(re), detail::parse_rational(im_part));
    }

    const mpq_class& real() const noexcept { return re_; }
    const mpq_class& imag() const noexcept { return im_; }

    bool is_real() const noexcept { return sgn(im_) == 0; }
    bool is_zero() const noexcept { return sgn(re_) == 0 && sgn(im_) == 0; }

    /// Sign of a real scalar; throws for non-real values.
    int real_sign() const
    {
        if (!is_real())
            throw Error(ErrorCode::InvalidSpec, "ordering requested on non-real scalar " + str());
        return sgn(re_);
    }

    std::string str() const
    {
        if (is_real())
            return detail::format_rational(re_);
        std::string out = detail::format_rational(re_);
        if (sgn(im_) >= 0)
            out += '+';
        if (im_ == 1)
            return out + "i";
        if (im_ == -1)
            return out + "-i";
        return out + detail::format_rational(im_) + "i";
    }

    /// Decimal rendering for display only.
    std::string approx(int digits = 12) const
    {
        auto render = [digits](const mpq_class& q) {
            mpf_class f(q, 256);
            mp_exp_t exp = 0;
            std::string mant = f.get_str(exp, 10, digits);
            if (mant.empty())
                return std::string("0");
            std::string sign;
            if (mant.front() == '-') {
                sign = "-";
                mant.erase(0, 1);
            }
            std::string out;
            if (exp <= 0)
                out = "0." + std::string(static_cast<std::size_t>(-exp), '0') + mant;
            else if (static_cast<std::size_t>(exp) >= mant.size())
                out = mant + std::string(static_cast<std::size_t>(exp) - mant.size(), '0');
            else
                out = mant.substr(0, static_cast<std::size_t>(exp)) + "." + mant.substr(static_cast<std::size_t>(exp));
            return sign + out;
        };
        if (is_real())
            return render(re_);
        std::string im = render(im_);
        return render(re_) + (im.front() == '-' ? "" : "+") + im + "i";
    }

    Scalar conj() const { return Scalar(re_, -im_); }

    Scalar& operator+=(const Scalar& rhs)
    {
        re_ += rhs.re_;
        if (sgn(rhs.im_) != 0)
            im_ += rhs.im_;
        return *this;
    }

    Scalar& operator-=(const Scalar& rhs)
    {
        re_ -= rhs.re_;
        if (sgn(rhs.im_) != 0)
            im_ -= rhs.im_;
        return *this;
    }

    Scalar& operator*=(const Scalar& rhs)
    {
        if (is_real() && rhs.is_real()) {
            re_ *= rhs.re_;
            return *this;
        }
        mpq_class re = re_ * rhs.re_ - im_ * rhs.im_;
        mpq_class im = re_ * rhs.im_ + im_ * rhs.re_;
        re_ = std::move(re);
        im_ = std::move(im);
        return *this;
    }

    Scalar& operator/=(const Scalar& rhs)
    {
        if (rhs.is_zero())
            throw Error(ErrorCode::DivisionByZero, "division of " + str() + " by zero");
        if (is_real() && rhs.is_real()) {
            re_ /= rhs.re_;
            return *this;
        }
        const mpq_class norm = rhs.re_ * rhs.re_ + rhs.im_ * rhs.im_;
        mpq_class re = (re_ * rhs.re_ + im_ * rhs.im_) / norm;
        mpq_class im = (im_ * rhs.re_ - re_ * rhs.im_) / norm;
        re_ = std::move(re);
        im_ = std::move(im);
        return *this;
    }

    friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
    friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
    friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
    friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }
    friend Scalar operator-(const Scalar& v) { return Scalar(-v.re_, -v.im_); }

    friend bool operator==(const Scalar& a, const Scalar& b) { return a.re_ == b.re_ && a.im_ == b.im_; }

    friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

private:
    mpq_class re_{0};
    mpq_class im_{0};
};

/// Exact integer power; negative exponents are not supported.
inline Scalar pow(const Scalar& base, std::uint64_t exponent)
{
    Scalar result(1);
    Scalar b = base;
    while (exponent != 0) {
        if (exponent & 1U)
            result *= b;
        exponent >>= 1U;
        if (exponent != 0)
            b *= b;
    }
    return result;
}

inline Scalar factorial(std::uint64_t k)
{
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), k);
    return Scalar(f);
}

} // namespace hypermoment

#endif
