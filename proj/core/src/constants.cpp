#include "constructive/constants.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <vector>

namespace constructive {

namespace mp = boost::multiprecision;

namespace {

// Partial sums of a series with an explicit tail bound tau(K) >= |S - S_K|,
// tau nonincreasing. Then for m, m' >= K the partial sums differ by at most
// tau(min(m, m')) < 2^-n once tau(K) < 2^-n, so
//     c(n) = smallest K with tau(K) < 2^-n
// is a sound regulator and approx(n) = S_c(n) is within tau(c(n)) of the sum.
struct SeriesState {
    std::function<Rational(std::uint64_t)> next_term; // called once per j, in order
    std::function<Rational(std::uint64_t)> tail_bound; // pure in K
    std::mutex mu;
    std::vector<Rational> partials;
    std::map<long long, std::uint64_t> first_k; // level -> smallest K
};

Duplex make_series(std::function<Rational(std::uint64_t)> next_term,
                   std::function<Rational(std::uint64_t)> tail_bound) {
    auto st = std::make_shared<SeriesState>();
    st->next_term = std::move(next_term);
    st->tail_bound = std::move(tail_bound);
    auto term = [st](std::uint64_t k) {
        std::lock_guard<std::mutex> lock(st->mu);
        while (st->partials.size() <= k) {
            std::uint64_t j = st->partials.size();
            Rational t = st->next_term(j);
            st->partials.push_back(j == 0 ? t : st->partials.back() + t);
        }
        return st->partials[k];
    };
    auto reg = [st](long long n) -> std::uint64_t {
        std::lock_guard<std::mutex> lock(st->mu);
        std::uint64_t k = 0;
        auto it = st->first_k.upper_bound(n);
        if (it != st->first_k.begin()) k = std::prev(it)->second;
        Rational bound = pow2(-n);
        while (!(st->tail_bound(k) < bound)) ++k;
        st->first_k[n] = k;
        return k;
    };
    return Duplex::from_functions(term, reg);
}

Int factorial(std::uint64_t n) {
    Int f = 1;
    for (std::uint64_t j = 2; j <= n; ++j) f *= j;
    return f;
}

Int central_binomial(std::uint64_t k) {
    // binom(2k, k), by the ratio recurrence.
    Int b = 1;
    for (std::uint64_t j = 1; j <= k; ++j) {
        b *= (2 * j - 1) * (2 * j);
        b /= j * j;
    }
    return b;
}

} // namespace

Duplex const_e() {
    // sum 1/j!; tail after K terms is below 2/(K+1)! since the remaining
    // factors are dominated by a geometric series with ratio 1/2.
    auto fact = std::make_shared<Int>(1);
    auto next_term = [fact](std::uint64_t j) {
        if (j > 0) *fact *= j;
        return Rational(Int(1), *fact);
    };
    auto tail = [](std::uint64_t k) {
        return Rational(Int(2), factorial(k + 1));
    };
    return make_series(next_term, tail);
}

Duplex arctan_inv(const Int& x) {
    if (x < 2)
        throw DomainError("arctan_inv requires an integer x >= 2");
    // arctan(1/x) = sum (-1)^j / ((2j+1) x^(2j+1)): alternating with
    // strictly shrinking terms, so |S - S_K| <= |t_(K+1)|.
    struct St {
        Int x, xpow; // xpow = x^(2j+1) for the next j
        St(const Int& v) : x(v), xpow(v) {}
    };
    auto st = std::make_shared<St>(x);
    auto next_term = [st](std::uint64_t j) {
        if (j > 0) st->xpow *= st->x * st->x;
        Rational t(Int(1), Int(2 * j + 1) * st->xpow);
        return (j % 2 == 0) ? t : -t;
    };
    auto tail = [x](std::uint64_t k) {
        unsigned e = static_cast<unsigned>(2 * k + 3);
        return Rational(Int(1), Int(2 * k + 3) * mp::pow(x, e));
    };
    return make_series(next_term, tail);
}

Duplex const_pi() {
    return Duplex::from_rational(Rational(16)) * arctan_inv(Int(5)) -
           Duplex::from_rational(Rational(4)) * arctan_inv(Int(239));
}

Duplex const_pi_alt() {
    Duplex four = Duplex::from_rational(Rational(4));
    return four * arctan_inv(Int(2)) + four * arctan_inv(Int(3));
}

Duplex const_zeta3() {
    // (5/2) sum_{k>=1} (-1)^(k-1) / (k^3 binom(2k,k)). Term ratio is
    // k^3 / ((k+1)(2k+1)(2k+2)) < 1, so magnitudes shrink and the
    // alternating tail bound |S - S_K| <= |t_(K+2)| applies (terms are
    // 0-indexed by j = k-1).
    struct St {
        Int binom = 2; // binom(2k,k) at k = 1
        std::uint64_t k = 1;
    };
    auto st = std::make_shared<St>();
    auto next_term = [st](std::uint64_t j) {
        std::uint64_t k = j + 1;
        if (j > 0) {
            // binom(2k,k) = binom(2k-2,k-1) * (2k-1)(2k) / k^2
            st->binom *= (2 * k - 1) * (2 * k);
            st->binom /= k * k;
        }
        Rational t(Int(5), Int(2) * Int(k) * Int(k) * Int(k) * st->binom);
        return (j % 2 == 0) ? t : -t;
    };
    auto tail = [](std::uint64_t kk) {
        std::uint64_t k = kk + 2; // first omitted 1-based term index
        return Rational(Int(5), Int(2) * Int(k) * Int(k) * Int(k) * central_binomial(k));
    };
    return make_series(next_term, tail);
}

Duplex const_sqrt(const Rational& q) {
    if (q.is_negative())
        throw DomainError("const_sqrt of a negative rational");
    if (q.is_zero())
        return Duplex::from_rational(Rational(0));

    // Seed from the integer square root: with nd = num*den,
    //   x0 = (isqrt(nd) + 1) / den > sqrt(q),   e0 = x0 - sqrt(q) <= 1/den,
    // and L = isqrt(nd)/den is a positive lower bound on sqrt(q).
    // A Newton step from x >= sqrt(q) stays above sqrt(q) (AM-GM) with
    //   e' = e^2 / (2x) <= min(e/2, e^2/(2L)).
    // Exact iterates double in bit length every step. To keep term sizes
    // linear in the requested precision, each iterate is rounded *up* onto
    // the dyadic grid g (up keeps it above sqrt(q)), and the certified
    // bounds are themselves rounded up to 9-bit dyadics:
    //   E_{k+1} = up(up(min(E_k/2, E_k^2/(2L)))/256 + min(...))
    // which still shrinks by a factor < 0.51 per step.
    Int nd = q.num() * q.den();
    Int root = mp::sqrt(nd);
    // smallest 9-bit-mantissa dyadic >= v; at most a 1 + 2^-8 overshoot
    auto round_up_dyadic = [](const Rational& v) {
        long long e = ceil_log2(v);
        Rational unit = pow2(e - 9);
        Int m = -floor_int(-(v / unit));
        return Rational(m) * unit;
    };
    struct St {
        Rational q;
        Rational two_lower; // 2L
        std::function<Rational(const Rational&)> up;
        std::vector<Rational> iterates;
        std::vector<Rational> bound; // |iterate_k - sqrt(q)| <= bound[k]
        std::mutex mu;

        void extend_once() {
            const Rational& x = iterates.back();
            const Rational& e = bound.back();
            Rational raw = (x + q / x) / Rational(2);
            Rational e_raw = min(e / Rational(2), e * e / two_lower);
            Rational grid = up(e_raw) / Rational(256);
            Int steps = -floor_int(-(raw / grid)); // ceil
            iterates.push_back(Rational(steps) * grid);
            bound.push_back(up(e_raw + grid));
        }
    };
    auto st = std::make_shared<St>();
    st->q = q;
    st->two_lower = Rational(2 * root, q.den());
    st->up = round_up_dyadic;
    st->iterates.push_back(Rational(root + 1, q.den()));
    st->bound.push_back(round_up_dyadic(Rational(Int(1), q.den())));

    // u(k) = first iterate within 2^-k of sqrt(q): one bit per index, so
    // term size stays linear in the index even when composite nodes clamp
    // indices upward, while only ~log k Newton steps ever run. Then
    //   |u(m) - u(m')| < 2^-m + 2^-m' <= 2^-n  for m, m' >= n + 1.
    auto term = [st](std::uint64_t k) {
        std::lock_guard<std::mutex> lock(st->mu);
        Rational target = pow2(-static_cast<long long>(k));
        while (!(st->bound.back() < target)) st->extend_once();
        std::size_t j = 0;
        while (!(st->bound[j] < target)) ++j;
        return st->iterates[j];
    };
    auto reg = [](long long n) -> std::uint64_t {
        return static_cast<std::uint64_t>(n) + 1;
    };
    return Duplex::from_functions(term, reg);
}

namespace {

// Smallest n with 2^-n < v, v > 0.
long long level_strictly_below(const Rational& v) {
    long long n = -ceil_log2(v); // 2^-n <= v
    while (!(pow2(-n) < v)) ++n;
    return n;
}

std::vector<Convergent> convergents_of_rational(const Rational& r, const Int& q_max) {
    std::vector<Convergent> out;
    Int h1 = 1, h2 = 0, k1 = 0, k2 = 1; // p_{-1}, p_{-2}, q_{-1}, q_{-2}
    Rational cur = r;
    for (;;) {
        Int a = floor_int(cur);
        Int h = a * h1 + h2;
        Int k = a * k1 + k2;
        if (k > q_max) break;
        if (!out.empty() && out.back().q == k) {
            out.back().p = h; // a_1 = 1 produces two convergents with q = 1
        } else {
            out.push_back(Convergent{h, k, out.size()});
        }
        h2 = h1; h1 = h;
        k2 = k1; k1 = k;
        Rational frac = cur - Rational(a);
        if (frac.is_zero()) break;
        cur = frac.reciprocal();
    }
    return out;
}

} // namespace

namespace {

// Decide |x - p/q| < 1/q^2 by refining the approximation level until the
// 2^-n slack clears the boundary one way or the other. True convergents
// always land strictly below 1/q^2, so for them this terminates; equality
// would need x rational sitting exactly on the boundary, hence the cap.
enum class CertResult { certified, rejected, undecided };

CertResult certify_below_inverse_square(const Duplex& x, const Rational& pq,
                                        const Int& q) {
    Rational limit(Int(1), q * q);
    long long n = level_strictly_below(limit / Rational(4));
    for (int refine = 0; refine < 8; ++refine) {
        Rational slack = pow2(-n);
        Rational d = abs(x.approx(n) - pq);
        if (d + slack < limit) return CertResult::certified;
        if (d - slack > limit) return CertResult::rejected;
        n *= 2;
    }
    return CertResult::undecided;
}

} // namespace

std::vector<Convergent> cf_convergents(const Duplex& x, const Int& q_max) {
    if (q_max < 1)
        throw DomainError("cf_convergents requires q_max >= 1");
    long long base = 2 * ceil_log2(Rational(q_max)) + 16;
    for (int attempt = 0; attempt < 2; ++attempt) {
        long long prec = base << attempt;
        Rational r = x.approx(prec);
        auto candidates = convergents_of_rational(r, q_max);
        // Re-certify against the duplex itself so approximation noise cannot
        // inject a false convergent: keep p/q only with a certificate that
        // |x - p/q| < 1/q^2. A rejection means the continued fraction of the
        // approximation diverged from x's; everything after it is noise too.
        std::vector<Convergent> out;
        bool retry = false;
        for (auto& c : candidates) {
            CertResult res = certify_below_inverse_square(x, Rational(c.p, c.q), c.q);
            if (res == CertResult::certified) {
                c.index = out.size();
                out.push_back(std::move(c));
            } else {
                retry = res == CertResult::undecided;
                break;
            }
        }
        if (!retry) return out;
    }
    throw PrecisionError("cf_convergents re-certification failed after retry");
}

std::size_t MeasureReport::passed() const {
    std::size_t c = 0;
    for (auto& e : entries) c += e.verdict == MeasureEntry::Verdict::pass;
    return c;
}
std::size_t MeasureReport::failed() const {
    std::size_t c = 0;
    for (auto& e : entries) c += e.verdict == MeasureEntry::Verdict::fail;
    return c;
}
std::size_t MeasureReport::unknown() const {
    std::size_t c = 0;
    for (auto& e : entries) c += e.verdict == MeasureEntry::Verdict::unknown;
    return c;
}

MeasureReport irrationality_check_pi(long long exponent, const Int& q_max) {
    if (exponent < 1)
        throw DomainError("irrationality exponent must be >= 1");
    if (q_max < 1)
        throw DomainError("q_max must be >= 1");
    Duplex pi = const_pi();
    MeasureReport report{exponent, q_max, {}};
    for (const auto& c : cf_convergents(pi, q_max)) {
        if (c.q < 2) continue;
        Rational pq(c.p, c.q);
        Rational threshold(Int(1), mp::pow(c.q, static_cast<unsigned>(exponent)));
        long long n = level_strictly_below(threshold / Rational(2));
        MeasureEntry entry{c, Rational(0), MeasureEntry::Verdict::unknown};
        for (int tries = 0; tries < 4; ++tries) {
            Rational slack = pow2(-n);
            Rational dist = abs(pi.approx(n) - pq);
            if (dist - slack > threshold) {
                // certified: |pi - p/q| >= dist - 2^-n > q^-exponent
                entry.margin = dist - slack;
                entry.verdict = MeasureEntry::Verdict::pass;
                break;
            }
            if (dist + slack < threshold) {
                // certified violation: |pi - p/q| <= dist + 2^-n < q^-exponent
                entry.margin = dist + slack;
                entry.verdict = MeasureEntry::Verdict::fail;
                break;
            }
            n *= 2;
        }
        report.entries.push_back(std::move(entry));
    }
    return report;
}

namespace {

// Round a positive rational to `sig` significant decimal digits, toward
// zero (down) or away (up). Keeps report lines short without weakening the
// certificate direction.
Rational round_significant(const Rational& r, int sig, bool down) {
    if (r.is_zero()) return r;
    Rational a = abs(r);
    long long mag = 0; // 10^mag <= a < 10^(mag+1)
    Rational ten(10);
    Rational t = a;
    while (t >= ten) { t /= ten; ++mag; }
    while (t < Rational(1)) { t *= ten; --mag; }
    long long shift = sig - 1 - mag;
    Rational scaled = a * pow(ten, shift);
    Int v = floor_int(scaled);
    if (!down && Rational(v) != scaled) ++v;
    Rational result = Rational(v) * pow(ten, -shift);
    return r.is_negative() ? -result : result;
}

} // namespace

std::string format_report(const MeasureReport& report) {
    std::ostringstream os;
    for (const auto& e : report.entries) {
        Rational margin = e.margin;
        if (e.verdict == MeasureEntry::Verdict::pass) {
            Rational rounded = round_significant(margin, 12, /*down=*/true);
            Rational threshold(Int(1), mp::pow(e.conv.q, static_cast<unsigned>(report.exponent)));
            if (rounded > threshold) margin = rounded;
        } else if (e.verdict == MeasureEntry::Verdict::fail) {
            margin = round_significant(margin, 12, /*down=*/false);
        }
        os << e.conv.p.str() << '/' << e.conv.q.str() << "  " << margin.str() << "  ";
        switch (e.verdict) {
            case MeasureEntry::Verdict::pass: os << "PASS"; break;
            case MeasureEntry::Verdict::fail: os << "FAIL"; break;
            case MeasureEntry::Verdict::unknown: os << "UNKNOWN"; break;
        }
        os << '\n';
    }
    os << "summary: convergents=" << report.entries.size()
       << " pass=" << report.passed()
       << " fail=" << report.failed()
       << " unknown=" << report.unknown()
       << " (exponent=" << report.exponent
       << ", 2 <= q <= " << report.q_max.str() << ")\n";
    return os.str();
}

} // namespace constructive
