#pragma once

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "constructive/errors.hpp"

namespace constructive {

using Int = boost::multiprecision::cpp_int;

/// Exact fraction in canonical form: denominator > 0 and coprime with the
/// numerator, zero is 0/1. Canonical form is established at construction and
/// preserved by every operation, so equality is structural. Values are
/// immutable and never rounded.
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(Int n) : num_(std::move(n)), den_(1) {}
    Rational(Int n, Int d);

    const Int& num() const { return num_; }
    const Int& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }
    bool is_positive() const { return num_ > 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ == 0 ? 0 : (num_ < 0 ? -1 : 1); }

    Rational operator-() const;
    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    bool operator==(const Rational& o) const {
        return num_ == o.num_ && den_ == o.den_;
    }
    std::strong_ordering operator<=>(const Rational& o) const;

    Rational reciprocal() const;

    /// "p/q", or just "p" for integers.
    std::string str() const;

    /// Accepts the same textual forms str() emits, plus optional leading '-'
    /// inside the numerator. Throws ParseError.
    static Rational parse(std::string_view text);

  private:
    Int num_;
    Int den_;
    void normalize();
};

Rational abs(const Rational& a);
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

/// a^e for machine-range e; e < 0 inverts (a must be nonzero), a^0 = 1.
Rational pow(const Rational& a, long long e);

/// Largest integer <= a.
Int floor_int(const Rational& a);

/// Smallest k with 2^k >= q. Requires q > 0.
long long ceil_log2(const Rational& q);
/// Largest k with 2^k <= q. Requires q > 0.
long long floor_log2(const Rational& q);
/// 2^k as an exact rational, k may be negative.
Rational pow2(long long k);

std::ostream& operator<<(std::ostream& os, const Rational& r);

} // namespace constructive
