#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace pmetric {

/// Arbitrary precision signed rational, always normalized (lowest terms,
/// positive denominator). Used for unvalidated input and probabilities.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Exact non-negative rational distance.
///
/// Equality and ordering are exact. Only operations closed over the
/// non-negative rationals are provided; there is deliberately no
/// subtraction operator.
class Dist {
public:
    Dist() = default;

    Dist(std::uint64_t n) : value_(n) {} // NOLINT: implicit from integer literals

    Dist(std::uint64_t num, std::uint64_t den)
    {
        if (den == 0)
            throw InputError("distance denominator must be positive");
        value_ = Rational(BigInt(num), BigInt(den));
    }

    static Dist from_rational(const Rational& r)
    {
        if (r < 0)
            throw InputError("distance must be non-negative, got " + r.str());
        Dist d;
        d.value_ = r;
        return d;
    }

    /// Parses a decimal integer "p" or a fraction "p/q" (p >= 0, q >= 1).
    /// Any fraction is accepted; the value is normalized.
    static Dist parse(std::string_view text)
    {
        auto const slash = text.find('/');
        if (slash == std::string_view::npos)
            return from_rational(Rational(parse_digits(text, "integer")));
        BigInt const num = parse_digits(text.substr(0, slash), "numerator");
        BigInt const den = parse_digits(text.substr(slash + 1), "denominator");
        if (den == 0)
            throw InputError("distance literal '" + std::string(text) + "' has zero denominator");
        return from_rational(Rational(num, den));
    }

    const Rational& value() const noexcept { return value_; }

    bool is_zero() const noexcept { return value_ == 0; }

    BigInt numerator() const { return boost::multiprecision::numerator(value_); }
    BigInt denominator() const { return boost::multiprecision::denominator(value_); }

    /// Canonical literal: "p" when the denominator is 1, else "p/q" in lowest terms.
    std::string str() const
    {
        if (denominator() == 1)
            return numerator().str();
        return numerator().str() + "/" + denominator().str();
    }

    friend Dist operator+(const Dist& a, const Dist& b) { return from_rational(a.value_ + b.value_); }
    friend Dist operator*(const Dist& a, const Dist& b) { return from_rational(a.value_ * b.value_); }
    friend Dist operator/(const Dist& a, const Dist& b)
    {
        if (b.is_zero())
            throw InputError("division of a distance by zero");
        return from_rational(a.value_ / b.value_);
    }
    Dist& operator+=(const Dist& o) { value_ += o.value_; return *this; }

    friend bool operator==(const Dist& a, const Dist& b) { return a.value_ == b.value_; }
    friend bool operator<(const Dist& a, const Dist& b) { return a.value_ < b.value_; }
    friend bool operator>(const Dist& a, const Dist& b) { return b < a; }
    friend bool operator<=(const Dist& a, const Dist& b) { return !(b < a); }
    friend bool operator>=(const Dist& a, const Dist& b) { return !(a < b); }

    friend std::ostream& operator<<(std::ostream& os, const Dist& d) { return os << d.str(); }

private:
    static BigInt parse_digits(std::string_view s, const char* part)
    {
        if (s.empty())
            throw InputError(std::string("empty ") + part + " in distance literal");
        for (char c : s)
            if (c < '0' || c > '9')
                throw InputError(std::string("invalid character '") + c + "' in distance " + part +
                                 " '" + std::string(s) + "'");
        return BigInt(std::string(s));
    }

    Rational value_{0};
};

} // namespace pmetric
