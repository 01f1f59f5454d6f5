#pragma once

// Exact link capacities: positive rationals plus a distinguished Unbounded
// value used for the terminal edges added by terminal augmentation.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstddef>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>

#include "hdroute/error.hpp"

namespace hdroute {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

class Capacity {
public:
    /// Finite capacity 1.
    Capacity() : value_(1) {}
    Capacity(Rational value) : value_(std::move(value)) {}  // NOLINT: implicit by intent
    Capacity(long long value) : value_(value) {}             // NOLINT

    static Capacity unbounded() {
        Capacity c;
        c.unbounded_ = true;
        return c;
    }

    /// Parses "inf", a decimal ("12", "-0.25", "3.") or a fraction "p/q".
    static Capacity parse(std::string_view text);

    bool is_unbounded() const noexcept { return unbounded_; }
    bool is_finite() const noexcept { return !unbounded_; }
    bool is_positive() const { return unbounded_ || value_ > 0; }

    /// Finite value; throws for Unbounded.
    const Rational& value() const {
        if (unbounded_) throw Error("unbounded capacity has no finite value");
        return value_;
    }

    /// "p/q" for finite values (always with a denominator), "inf" otherwise.
    std::string to_fraction() const;
    /// Rounded half-up to `places` decimals, "inf" for Unbounded.
    std::string to_decimal(int places = 6) const;
    double to_double() const;

    friend bool operator==(const Capacity& a, const Capacity& b) {
        if (a.unbounded_ || b.unbounded_) return a.unbounded_ == b.unbounded_;
        // both sides are kept in lowest terms
        return numerator(a.value_) == numerator(b.value_) && denominator(a.value_) == denominator(b.value_);
    }

    friend std::strong_ordering operator<=>(const Capacity& a, const Capacity& b) {
        if (a.unbounded_ || b.unbounded_) {
            return static_cast<int>(a.unbounded_) <=> static_cast<int>(b.unbounded_);
        }
        // cross-multiplying beats the library's division-based comparison
        const BigInt lhs = numerator(a.value_) * denominator(b.value_);
        const BigInt rhs = numerator(b.value_) * denominator(a.value_);
        return lhs.compare(rhs) <=> 0;
    }

    friend std::ostream& operator<<(std::ostream& os, const Capacity& c) {
        return os << c.to_fraction();
    }

private:
    Rational value_;
    bool unbounded_ = false;
};

inline const Capacity& min(const Capacity& a, const Capacity& b) { return b < a ? b : a; }
inline const Capacity& max(const Capacity& a, const Capacity& b) { return a < b ? b : a; }

/// a*b/(a+b): half the harmonic mean of two link capacities. An Unbounded
/// operand contributes its limit, i.e. the other operand.
inline Capacity half_harmonic(const Capacity& a, const Capacity& b) {
    if (a.is_unbounded()) return b;
    if (b.is_unbounded()) return a;
    const Rational& x = a.value();
    const Rational& y = b.value();
    return Capacity(Rational(x * y / (x + y)));
}

/// Multiplies a finite capacity by a rational factor.
inline Capacity scaled(const Capacity& c, const Rational& factor) {
    if (c.is_unbounded()) return c;
    return Capacity(Rational(c.value() * factor));
}

namespace detail {

inline BigInt parse_digits(std::string_view digits, std::string_view whole) {
    if (digits.empty()) return BigInt(0);
    for (char ch : digits) {
        if (ch < '0' || ch > '9') throw ParseError("invalid capacity '" + std::string(whole) + "'");
    }
    return BigInt(std::string(digits));
}

inline BigInt pow10(std::size_t n) {
    BigInt r = 1;
    for (std::size_t i = 0; i < n; ++i) r *= 10;
    return r;
}

}  // namespace detail

inline Capacity Capacity::parse(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    if (s.empty()) throw ParseError("empty capacity");
    if (s == "inf" || s == "Infinity" || s == "unbounded") return unbounded();

    bool negative = false;
    if (s.front() == '-' || s.front() == '+') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) throw ParseError("invalid capacity '" + std::string(text) + "'");

    Rational value;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto num = s.substr(0, slash);
        auto den = s.substr(slash + 1);
        if (num.empty() || den.empty()) throw ParseError("invalid capacity '" + std::string(text) + "'");
        BigInt p = detail::parse_digits(num, text);
        BigInt q = detail::parse_digits(den, text);
        if (q == 0) throw ParseError("zero denominator in capacity '" + std::string(text) + "'");
        value = Rational(p, q);
    } else {
        auto dot = s.find('.');
        auto int_part = s.substr(0, dot);
        std::string_view frac_part = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
        if (int_part.empty() && frac_part.empty()) {
            throw ParseError("invalid capacity '" + std::string(text) + "'");
        }
        BigInt whole = detail::parse_digits(int_part, text);
        BigInt frac = detail::parse_digits(frac_part, text);
        BigInt scale = detail::pow10(frac_part.size());
        value = Rational(whole * scale + frac, scale);
    }
    if (negative) value = -value;
    return Capacity(std::move(value));
}

inline std::string Capacity::to_fraction() const {
    if (unbounded_) return "inf";
    return numerator(value_).str() + "/" + denominator(value_).str();
}

inline std::string Capacity::to_decimal(int places) const {
    if (unbounded_) return "inf";
    BigInt p = numerator(value_);
    BigInt q = denominator(value_);
    bool negative = p < 0;
    if (negative) p = -p;
    BigInt scale = detail::pow10(static_cast<std::size_t>(places));
    // round half up on the magnitude
    BigInt scaled_value = (2 * p * scale + q) / (2 * q);
    BigInt whole = scaled_value / scale;
    BigInt frac = scaled_value % scale;
    std::string out = negative && scaled_value != 0 ? "-" : "";
    out += whole.str();
    if (places > 0) {
        std::string f = frac.str();
        out += "." + std::string(static_cast<std::size_t>(places) - f.size(), '0') + f;
    }
    return out;
}

inline double Capacity::to_double() const {
    if (unbounded_) return std::numeric_limits<double>::infinity();
    return static_cast<double>(value_);
}

}  // namespace hdroute
