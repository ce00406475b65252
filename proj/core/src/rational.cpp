#include "constructive/rational.hpp"

#include <cctype>
#include <ostream>
#include <utility>

namespace constructive {

namespace mp = boost::multiprecision;

void Rational::normalize() {
    if (den_ == 0)
        throw DomainError("rational with zero denominator");
    if (num_ == 0) {
        den_ = 1;
        return;
    }
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    Int g = mp::gcd(num_ < 0 ? Int(-num_) : num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

Rational::Rational(Int n, Int d) : num_(std::move(n)), den_(std::move(d)) {
    normalize();
}

Rational Rational::operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0)
        throw DomainError("rational division by zero");
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
    // a/b <=> c/d  iff  a*d <=> c*b, both denominators positive.
    Int lhs = num_ * o.den_;
    Int rhs = o.num_ * den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

Rational Rational::reciprocal() const {
    if (num_ == 0)
        throw DomainError("reciprocal of zero");
    return Rational(den_, num_);
}

std::string Rational::str() const {
    std::string s = num_.str();
    if (den_ != 1) {
        s += '/';
        s += den_.str();
    }
    return s;
}

Rational Rational::parse(std::string_view text) {
    auto is_int = [](std::string_view s) {
        if (!s.empty() && (s[0] == '-' || s[0] == '+')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        if (!is_int(text))
            throw ParseError("expected integer or p/q", 0);
        return Rational(Int(std::string(text)));
    }
    std::string_view n = text.substr(0, slash);
    std::string_view d = text.substr(slash + 1);
    if (!is_int(n))
        throw ParseError("expected integer numerator", 0);
    if (!is_int(d))
        throw ParseError("expected integer denominator", slash + 1);
    Int den{std::string(d)};
    if (den == 0)
        throw DomainError("rational with zero denominator");
    return Rational(Int(std::string(n)), std::move(den));
}

Rational abs(const Rational& a) { return a.is_negative() ? -a : a; }

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }

Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

Rational pow(const Rational& a, long long e) {
    if (e == 0) return Rational(1);
    if (e < -(1LL << 31) || e > (1LL << 31))
        throw ResourceError("rational exponent out of machine range");
    bool invert = e < 0;
    unsigned k = static_cast<unsigned>(invert ? -e : e);
    if (invert && a.is_zero())
        throw DomainError("zero to a negative power");
    Rational base = invert ? a.reciprocal() : a;
    // num and den are coprime, so their powers are too: the result is
    // already canonical and Rational's normalize finds gcd 1.
    return Rational(mp::pow(base.num(), k), mp::pow(base.den(), k));
}

Int floor_int(const Rational& a) {
    Int q = a.num() / a.den();
    if (a.num() < 0 && q * a.den() != a.num()) --q;
    return q;
}

namespace {

long long bit_length(const Int& v) {
    // msb() is 0-based; bit_length(1) == 1.
    return v == 0 ? 0 : static_cast<long long>(mp::msb(v)) + 1;
}

} // namespace

long long ceil_log2(const Rational& q) {
    if (!q.is_positive())
        throw DomainError("ceil_log2 of non-positive value");
    // With k0 = bitlen(num) - bitlen(den):  2^(k0-1) <= q < 2^(k0+1),
    // so the answer lies in {k0-1, k0, k0+1}.
    long long k = bit_length(q.num()) - bit_length(q.den()) - 1;
    while (pow2(k) < q) ++k;
    return k;
}

long long floor_log2(const Rational& q) {
    if (!q.is_positive())
        throw DomainError("floor_log2 of non-positive value");
    long long k = ceil_log2(q);
    return pow2(k) == q ? k : k - 1;
}

Rational pow2(long long k) {
    if (k >= 0)
        return Rational(Int(1) << static_cast<unsigned>(k));
    return Rational(Int(1), Int(1) << static_cast<unsigned>(-k));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

} // namespace constructive
