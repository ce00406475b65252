#include "constructive/real.hpp"

#include <map>
#include <mutex>
#include <vector>

namespace constructive {

namespace detail {

// Immutable after construction except for the memo tables, which cache pure
// functions behind `mu`. Closures may call into *child* duplexes (their own
// locks) but never back into this node, so lock acquisition follows the
// expression DAG and cannot cycle.
struct DuplexState {
    std::function<Rational(std::uint64_t)> term_fn;
    std::function<std::uint64_t(long long)> reg_fn;
    std::function<std::uint64_t(long long)> null_fn; // empty if no certificate

    mutable std::mutex mu;
    mutable std::map<std::uint64_t, Rational> term_memo;
    mutable std::map<long long, std::uint64_t> reg_memo;  // monotone in level
    mutable std::map<long long, std::uint64_t> null_memo; // monotone in level
};

namespace {

// Running max over levels 0..n: the underlying formulas need not be
// monotone, the stored regulator is.
std::uint64_t monotone_lookup(long long n,
                              std::map<long long, std::uint64_t>& memo,
                              const std::function<std::uint64_t(long long)>& raw) {
    if (n < 0) n = 0;
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    long long start = 0;
    std::uint64_t acc = 0;
    if (!memo.empty()) {
        auto last = std::prev(memo.end());
        start = last->first + 1;
        acc = last->second;
    }
    for (long long level = start; level <= n; ++level) {
        std::uint64_t r = raw(level);
        if (r > acc) acc = r;
        memo.emplace(level, acc);
    }
    return memo.at(n);
}

} // namespace
} // namespace detail

Duplex Duplex::from_functions(std::function<Rational(std::uint64_t)> term,
                              std::function<std::uint64_t(long long)> regulator,
                              std::function<std::uint64_t(long long)> nullity) {
    auto s = std::make_shared<detail::DuplexState>();
    s->term_fn = std::move(term);
    s->reg_fn = std::move(regulator);
    s->null_fn = std::move(nullity);
    return Duplex(std::move(s));
}

Duplex Duplex::from_rational(Rational q) {
    bool zero = q.is_zero();
    auto term = [q = std::move(q)](std::uint64_t) { return q; };
    auto reg = [](long long) -> std::uint64_t { return 0; };
    if (zero)
        return from_functions(std::move(term), reg,
                              [](long long) -> std::uint64_t { return 0; });
    return from_functions(std::move(term), reg);
}

Rational Duplex::term(std::uint64_t k) const {
    std::lock_guard<std::mutex> lock(state_->mu);
    auto it = state_->term_memo.find(k);
    if (it != state_->term_memo.end()) return it->second;
    Rational v = state_->term_fn(k);
    state_->term_memo.emplace(k, v);
    return v;
}

std::uint64_t Duplex::regulator(long long n) const {
    std::lock_guard<std::mutex> lock(state_->mu);
    return detail::monotone_lookup(n, state_->reg_memo, state_->reg_fn);
}

bool Duplex::has_nullity() const { return static_cast<bool>(state_->null_fn); }

std::uint64_t Duplex::nullity_index(long long n) const {
    if (!has_nullity())
        throw EvidenceError("duplex carries no nullity certificate");
    std::lock_guard<std::mutex> lock(state_->mu);
    return detail::monotone_lookup(n, state_->null_memo, state_->null_fn);
}

Rational Duplex::approx(long long n) const {
    if (n < 0) n = 0;
    return term(regulator(n));
}

Duplex operator-(const Duplex& x) {
    auto term = [x](std::uint64_t k) { return -x.term(k); };
    auto reg = [x](long long n) { return x.regulator(n); };
    if (x.has_nullity())
        return Duplex::from_functions(term, reg, [x](long long n) {
            return x.nullity_index(n);
        });
    return Duplex::from_functions(term, reg);
}

Duplex operator+(const Duplex& x, const Duplex& y) {
    // |(a+b) - (a'+b')| <= |a-a'| + |b-b'| < 2^-(n+1) + 2^-(n+1) = 2^-n,
    // hence c(n) = max(cx(n+1), cy(n+1)).
    auto term = [x, y](std::uint64_t k) { return x.term(k) + y.term(k); };
    auto reg = [x, y](long long n) {
        return std::max(x.regulator(n + 1), y.regulator(n + 1));
    };
    if (x.has_nullity() && y.has_nullity())
        return Duplex::from_functions(term, reg, [x, y](long long n) {
            return std::max(x.nullity_index(n + 1), y.nullity_index(n + 1));
        });
    return Duplex::from_functions(term, reg);
}

Duplex operator-(const Duplex& x, const Duplex& y) { return x + (-y); }

Rational canonical_bound(const Duplex& x) {
    // For m >= c(0): |u(m)| <= |u(c(0))| + |u(m) - u(c(0))| < |u(c(0))| + 1.
    return abs(x.approx(0)) + Rational(1);
}

Duplex operator*(const Duplex& x, const Duplex& y) {
    // With Bx = canonical_bound(x), By = canonical_bound(y), and all indices
    // clamped to j = max(k, cx(0), cy(0)) so the bounds apply:
    //   |ab - a'b'| <= Bx|b - b'| + By|a - a'|
    //               <  2^ceil_log2(Bx) * 2^-(n+1+ceil_log2(Bx)) + (same for y)
    //               =  2^-n.
    std::uint64_t cx0 = x.regulator(0), cy0 = y.regulator(0);
    std::uint64_t base = std::max(cx0, cy0);
    long long sx = ceil_log2(canonical_bound(x));
    long long sy = ceil_log2(canonical_bound(y));
    auto term = [x, y, base](std::uint64_t k) {
        std::uint64_t j = std::max(k, base);
        return x.term(j) * y.term(j);
    };
    auto reg = [x, y, base, sx, sy](long long n) {
        return std::max({x.regulator(n + 1 + sy), y.regulator(n + 1 + sx), base});
    };
    // A zero certificate on either factor survives: for k >= dx(n+sy),
    // |u_x(j) u_y(j)| < 2^-(n+sy) * By <= 2^-n  (j >= cy(0) by clamping).
    if (x.has_nullity())
        return Duplex::from_functions(term, reg, [x, sy](long long n) {
            return x.nullity_index(n + sy);
        });
    if (y.has_nullity())
        return Duplex::from_functions(term, reg, [y, sx](long long n) {
            return y.nullity_index(n + sx);
        });
    return Duplex::from_functions(term, reg);
}

Duplex abs(const Duplex& x) {
    // ||a| - |a'|| <= |a - a'|: the regulator carries over unchanged,
    // and so does a nullity certificate.
    auto term = [x](std::uint64_t k) { return abs(x.term(k)); };
    auto reg = [x](long long n) { return x.regulator(n); };
    if (x.has_nullity())
        return Duplex::from_functions(term, reg, [x](long long n) {
            return x.nullity_index(n);
        });
    return Duplex::from_functions(term, reg);
}

namespace {

Duplex pointwise_pair(const Duplex& x, const Duplex& y, bool take_max) {
    // |max(a,b) - max(a',b')| <= max(|a-a'|, |b-b'|), same for min:
    // c(n) = max(cx(n), cy(n)) with no level shift.
    auto term = [x, y, take_max](std::uint64_t k) {
        return take_max ? max(x.term(k), y.term(k)) : min(x.term(k), y.term(k));
    };
    auto reg = [x, y](long long n) {
        return std::max(x.regulator(n), y.regulator(n));
    };
    // |max(a,b)| <= max(|a|,|b|) when both are certified small.
    if (x.has_nullity() && y.has_nullity())
        return Duplex::from_functions(term, reg, [x, y](long long n) {
            return std::max(x.nullity_index(n), y.nullity_index(n));
        });
    return Duplex::from_functions(term, reg);
}

} // namespace

Duplex max(const Duplex& x, const Duplex& y) { return pointwise_pair(x, y, true); }
Duplex min(const Duplex& x, const Duplex& y) { return pointwise_pair(x, y, false); }

void certify(const ApartnessWitness& w, const Duplex& x) {
    if (w.m < 1)
        throw EvidenceError("apartness witness with m < 1");
    Rational r = x.approx(w.level);
    Rational slack = pow2(-w.level);
    // |x| >= |approx| - 2^-level, so the check implies |x| > 1/m.
    if (!(abs(r) - slack > Rational(Int(1), w.m)))
        throw EvidenceError("apartness witness failed re-certification");
}

Duplex inverse(const Duplex& x, const ApartnessWitness& w) {
    certify(w, x);
    Rational inv_m(Int(1), w.m);
    // s: smallest level with 2^-s <= 1/(2m). Beyond N = cx(s) every term
    // satisfies |u(j)| >= |x| - 2^-s > 1/m - 1/(2m) = 1/(2m), so
    //   |1/a - 1/a'| = |a - a'| / (|a||a'|) < 4m^2 |a - a'|
    // and shifting the level by t = ceil_log2(4m^2) absorbs the factor.
    long long s = ceil_log2(Rational(2 * w.m));
    std::uint64_t clamp = x.regulator(s);
    long long t = ceil_log2(Rational(4 * w.m * w.m));
    auto term = [x, clamp](std::uint64_t k) {
        return x.term(std::max(k, clamp)).reciprocal();
    };
    auto reg = [x, clamp, t](long long n) {
        return std::max(clamp, x.regulator(n + t));
    };
    return Duplex::from_functions(term, reg);
}

Duplex inverse_unit_residual(const Duplex& x, const ApartnessWitness& w) {
    Duplex inv = inverse(x, w); // re-certifies
    Duplex residual = x * inv - Duplex::from_rational(Rational(1));
    // inverse clamps its argument index at N = c_x(s); for any term index
    // m >= M the product multiplies u_x(m) by 1/u_x(m) exactly, so the
    // residual vanishes identically from M on: d(n) = M.
    long long s = ceil_log2(Rational(2 * w.m));
    std::uint64_t clamp = std::max({x.regulator(s), x.regulator(0), inv.regulator(0)});
    auto term = [residual](std::uint64_t k) { return residual.term(k); };
    auto reg = [residual](long long n) { return residual.regulator(n); };
    auto nullf = [clamp](long long) { return clamp; };
    return Duplex::from_functions(term, reg, nullf);
}

std::optional<ApartnessWitness> apartness_search(const Duplex& x, long long budget) {
    for (long long n = 1; n <= budget; ++n) {
        Rational r = abs(x.approx(n));
        Rational slack = pow2(-n);
        if (r > slack + slack) {
            // gap = |approx| - 2^-n is a certified lower bound on |x|;
            // the smallest m with 1/m < gap keeps the witness checkable.
            Rational gap = r - slack;
            Int m = floor_int(gap.reciprocal()) + 1;
            return ApartnessWitness{std::move(m), n};
        }
    }
    return std::nullopt;
}

LocateClaim locate(const Duplex& x, const Rational& a, const Rational& b) {
    if (!(a < b))
        throw DomainError("locate requires a < b");
    Rational quarter = (b - a) / Rational(4);
    long long n = 0;
    while (!(pow2(-n) < quarter)) ++n;
    Rational r = x.approx(n);
    Rational mid = (a + b) / Rational(2);
    // r > mid: x >= r - 2^-n > mid - (b-a)/4 > a. Otherwise
    // x <= r + 2^-n <= mid + (b-a)/4 < b. Either claim is outright true.
    if (r > mid)
        return LocateClaim{LocateClaim::Kind::above_lower, a};
    return LocateClaim{LocateClaim::Kind::below_upper, b};
}

struct ContractingIntervals::State {
    std::function<std::pair<Rational, Rational>(std::uint64_t)> gen;
    std::mutex mu;
    std::vector<std::pair<Rational, Rational>> memo;
};

ContractingIntervals::ContractingIntervals(
    std::function<std::pair<Rational, Rational>(std::uint64_t)> gen)
    : state_(std::make_shared<State>()) {
    state_->gen = std::move(gen);
}

std::pair<Rational, Rational> ContractingIntervals::interval(std::uint64_t n) const {
    std::lock_guard<std::mutex> lock(state_->mu);
    while (state_->memo.size() <= n) {
        std::uint64_t k = state_->memo.size();
        auto iv = state_->gen(k);
        if (!(iv.first < iv.second))
            throw InvariantError("contracting interval is empty");
        if (k > 0) {
            const auto& prev = state_->memo.back();
            if (!(prev.first < iv.first && iv.second < prev.second))
                throw InvariantError("contracting intervals are not strictly nested");
        }
        state_->memo.push_back(std::move(iv));
    }
    return state_->memo[n];
}

ContractingIntervals to_contracting(const Duplex& x) {
    // Interval n is centered on r_n = approx(x, n+3) with half-width
    // h_n = 2^-(n+1) + 2^-(n+3).
    //   containment: |x - r_n| <= 2^-(n+3) < h_n;
    //   nesting:     |r_{n+1} - r_n| <= 2^-(n+3) + 2^-(n+4) = 3*2^-(n+4)
    //                < h_n - h_{n+1} = 5*2^-(n+4), strictly;
    //   widths:      2*h_n = (5/4)*2^-n < 2^-n' already at n = n'+1.
    return ContractingIntervals([x](std::uint64_t n) {
        Rational r = x.approx(static_cast<long long>(n) + 3);
        Rational half = pow2(-(static_cast<long long>(n) + 1)) +
                        pow2(-(static_cast<long long>(n) + 3));
        return std::pair<Rational, Rational>(r - half, r + half);
    });
}

namespace {

// Smallest m (from a growing hint) whose interval is no wider than 2^-n.
// The stream contract guarantees one exists; the pull cap turns a broken
// stream into an error instead of a hang.
constexpr std::uint64_t kMaxIntervalPulls = 1 << 16;

std::uint64_t narrow_enough_index(const ContractingIntervals& ci, long long n) {
    Rational bound = pow2(-n);
    for (std::uint64_t m = 0; m < kMaxIntervalPulls; ++m) {
        auto iv = ci.interval(m);
        if (iv.second - iv.first <= bound) return m;
    }
    throw InvariantError("contracting intervals never reached width 2^-n");
}

} // namespace

Duplex from_contracting(const ContractingIntervals& ci, ZeroEvidence ev) {
    // Midpoints of nested intervals: for i, j >= m both midpoints lie in
    // the open interval m, so |mid_i - mid_j| < width(m) <= 2^-n when m is
    // the first index of width <= 2^-n.
    auto term = [ci](std::uint64_t k) {
        auto iv = ci.interval(k);
        return (iv.first + iv.second) / Rational(2);
    };
    auto reg = [ci](long long n) { return narrow_enough_index(ci, n); };
    if (ev == ZeroEvidence::straddles_zero) {
        // mid_j in interval j subset of interval m which contains 0 and has
        // width <= 2^-n, hence |mid_j| < 2^-n for all j >= m. The straddle
        // claim is the caller's; verify it on the interval actually used.
        auto null_fn = [ci](long long n) {
            std::uint64_t m = narrow_enough_index(ci, n);
            auto iv = ci.interval(m);
            if (!(iv.first < Rational(0) && Rational(0) < iv.second))
                throw EvidenceError("straddles_zero claim falsified by interval");
            return m;
        };
        return Duplex::from_functions(term, reg, null_fn);
    }
    return Duplex::from_functions(term, reg);
}

std::string to_decimal(const Duplex& x, long long digits) {
    if (digits < 1)
        throw DomainError("to_decimal requires digits >= 1");
    // Approximate to 2^-n <= 10^-(digits+2), then round at `digits`
    // fractional places: total error < (1/2)*10^-digits + 10^-(digits+2),
    // comfortably inside the advertised 10^-digits guarantee.
    Int scale = boost::multiprecision::pow(Int(10), static_cast<unsigned>(digits));
    long long n = ceil_log2(Rational(scale * 100));
    Rational r = x.approx(n);
    Rational scaled = r * Rational(scale);
    bool negative = scaled.is_negative();
    Rational a = abs(scaled);
    Int ip = a.num() / a.den();
    if ((a - Rational(ip)) >= Rational(1, 2)) ++ip;
    std::string body = ip.str();
    if (static_cast<long long>(body.size()) <= digits)
        body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
    body.insert(body.size() - static_cast<std::size_t>(digits), ".");
    if (negative && ip != 0) body.insert(0, "-");
    return body;
}

} // namespace constructive
