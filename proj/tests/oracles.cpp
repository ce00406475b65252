#include "oracles.hpp"

#include <algorithm>
#include <stdexcept>

namespace oracles {

namespace mp = boost::multiprecision;

namespace {

// arctan(1/x) * 2^bits, truncated summation; error in units of 2^-bits is
// at most (#terms + 1): one unit per truncated division plus the tail.
struct FixedAtan {
    Int value;
    long long terms;
};

FixedAtan atan_inv_fixed(long long x, long long bits) {
    Int scale = Int(1) << static_cast<unsigned>(bits);
    Int xpow = x;
    Int sum = 0;
    long long terms = 0;
    for (long long k = 0;; ++k) {
        Int t = scale / (Int(2 * k + 1) * xpow);
        if (t == 0) break;
        if (k % 2 == 0)
            sum += t;
        else
            sum -= t;
        xpow *= Int(x) * x;
        ++terms;
    }
    return {sum, terms};
}

} // namespace

Rational pi_fixed_point(long long bits) {
    const long long guard = 24;
    const long long work = bits + guard;
    // pi = 8 arctan(1/3) + 4 arctan(1/7) (Hutton)
    FixedAtan a3 = atan_inv_fixed(3, work);
    FixedAtan a7 = atan_inv_fixed(7, work);
    Int v = 8 * a3.value + 4 * a7.value;
    long long err_units = 8 * (a3.terms + 1) + 4 * (a7.terms + 1);
    if (Int(err_units) >= (Int(1) << static_cast<unsigned>(guard - 1)))
        throw std::logic_error("pi oracle guard bits exhausted");
    return Rational(v, Int(1) << static_cast<unsigned>(work));
}

Rational e_fixed_point(long long bits) {
    const long long guard = 16;
    const long long work = bits + guard;
    Int t = Int(1) << static_cast<unsigned>(work);
    Int sum = t;
    long long terms = 1;
    for (long long j = 1; t != 0; ++j) {
        t /= j;
        sum += t;
        ++terms;
    }
    if (Int(terms + 2) >= (Int(1) << static_cast<unsigned>(guard - 1)))
        throw std::logic_error("e oracle guard bits exhausted");
    return Rational(sum, Int(1) << static_cast<unsigned>(work));
}

namespace {

Int binomial(std::uint64_t n, std::uint64_t r) {
    Int b = 1;
    for (std::uint64_t i = 1; i <= r; ++i) {
        b *= n - r + i;
        b /= i;
    }
    return b;
}

} // namespace

Rational zeta3_fixed_point(long long bits) {
    const long long guard = 24;
    const long long work = bits + guard;
    Int scale = Int(1) << static_cast<unsigned>(work);
    Int sum = 0;
    Int prev_t = 0;
    long long terms = 0;
    for (std::uint64_t k = 1;; ++k) {
        Int numer = scale * Int(56 * k * k - 32 * k + 5);
        Int denom = Int(4) * Int(2 * k - 1) * Int(2 * k - 1) * Int(k) * Int(k) *
                    Int(k) * binomial(2 * k, k) * binomial(3 * k, k);
        Int t = numer / denom;
        if (k > 1 && t >= prev_t)
            throw std::logic_error("zeta3 oracle terms stopped decreasing");
        if (t == 0) break;
        if (k % 2 == 1)
            sum += t;
        else
            sum -= t;
        prev_t = t;
        ++terms;
    }
    if (Int(terms + 2) >= (Int(1) << static_cast<unsigned>(guard - 1)))
        throw std::logic_error("zeta3 oracle guard bits exhausted");
    return Rational(sum, scale);
}

DirectSum zeta3_direct(std::uint64_t terms, long long bits) {
    Int scale = Int(1) << static_cast<unsigned>(bits);
    Int sum = 0;
    for (std::uint64_t j = 1; j <= terms; ++j) {
        Int j3 = Int(j) * Int(j) * Int(j);
        sum += scale / j3;
    }
    Rational value(sum, scale);
    // each truncated division loses < 1 unit; the tail is below 1/(2N^2)
    Rational err = Rational(Int(terms), scale) +
                   Rational(Int(1), Int(2) * Int(terms) * Int(terms));
    return {value, err};
}

Rational sqrt_fixed_point(const Rational& q, long long bits) {
    if (q.is_negative()) throw std::logic_error("sqrt oracle of negative");
    if (q.is_zero()) return Rational(0);
    // y = floor(sqrt(q * 4^w)) gives |y/2^w - sqrt(q)| <= 2^-w.
    const long long work = bits + 2;
    Int scaled = (q.num() << static_cast<unsigned>(2 * work)) / q.den();
    Int y = mp::sqrt(scaled);
    return Rational(y, Int(1) << static_cast<unsigned>(work));
}

namespace {

Rational tan_sum(const Rational& a, const Rational& b) {
    return (a + b) / (Rational(1) - a * b);
}

Rational tan_multiple(int c, const Rational& t) {
    // repeated addition keeps this honest for small c
    if (c == 1) return t;
    return tan_sum(t, tan_multiple(c - 1, t));
}

} // namespace

Rational tan_of_combination(int c1, long long x1, int c2, long long x2) {
    Rational t1 = tan_multiple(std::abs(c1), Rational(1, x1));
    if (c1 < 0) t1 = -t1;
    Rational t2 = tan_multiple(std::abs(c2), Rational(1, x2));
    if (c2 < 0) t2 = -t2;
    return tan_sum(t1, t2);
}

std::vector<bool> sieve(std::uint64_t limit) {
    std::vector<bool> is_prime(limit + 1, true);
    is_prime[0] = false;
    if (limit >= 1) is_prime[1] = false;
    for (std::uint64_t p = 2; p * p <= limit; ++p)
        if (is_prime[p])
            for (std::uint64_t q = p * p; q <= limit; q += p) is_prime[q] = false;
    return is_prime;
}

std::vector<std::pair<Int, Int>> sqrt2_convergents(const Int& q_max) {
    std::vector<std::pair<Int, Int>> out;
    Int p = 1, q = 1;
    while (q <= q_max) {
        out.emplace_back(p, q);
        Int np = p + 2 * q;
        Int nq = p + q;
        p = np;
        q = nq;
    }
    return out;
}

std::pair<Int, Int> discrepancy_by_modular_powers(const Int& p, const Int& q,
                                                  std::uint64_t n_points) {
    // fractional parts as raw (numerator, denominator) pairs
    std::vector<std::pair<Int, Int>> xs;
    Int pn = 1, qn = 1;
    for (std::uint64_t n = 1; n <= n_points; ++n) {
        pn *= p;
        qn *= q;
        xs.emplace_back(pn % qn, qn);
    }
    std::sort(xs.begin(), xs.end(), [](const auto& a, const auto& b) {
        return a.first * b.second < b.first * a.second;
    });
    Int best_num = 0, best_den = 1;
    Int big_n = Int(n_points);
    auto consider = [&](const Int& num, const Int& den) {
        if (num * best_den > best_num * den) {
            best_num = num;
            best_den = den;
        }
    };
    for (std::uint64_t k = 1; k <= n_points; ++k) {
        const auto& [xn, xd] = xs[k - 1];
        // k/N - x and x - (k-1)/N over the common denominator N*xd
        consider(Int(k) * xd - big_n * xn, big_n * xd);
        consider(big_n * xn - Int(k - 1) * xd, big_n * xd);
    }
    Int g = mp::gcd(best_num, best_den);
    return {best_num / g, best_den / g};
}

Int isqrt_scaled(const Int& num, const Int& den, const Int& scale_squared) {
    Int scaled = num * scale_squared / den;
    return mp::sqrt(scaled);
}

} // namespace oracles
