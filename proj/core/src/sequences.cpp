#include "constructive/sequences.hpp"

#include <algorithm>
#include <mutex>
#include <vector>

namespace constructive {

namespace mp = boost::multiprecision;

struct FugaciousSequence::State {
    std::function<std::uint64_t(std::uint64_t)> pred;
    mutable std::mutex mu;
    long long probed_through = -1;
    bool nonzero = false;
    std::uint64_t nonzero_index = 0;
    std::uint64_t nonzero_value = 0;

    ProbeStatus snapshot() const {
        ProbeStatus s;
        s.probed_through = probed_through;
        if (nonzero) {
            s.kind = ProbeStatus::Kind::nonzero_found;
            s.nonzero_index = nonzero_index;
            s.nonzero_value = nonzero_value;
        }
        return s;
    }
};

FugaciousSequence::FugaciousSequence(std::function<std::uint64_t(std::uint64_t)> pred)
    : state_(std::make_shared<State>()) {
    state_->pred = std::move(pred);
}

ProbeStatus FugaciousSequence::probe(std::uint64_t upto) {
    std::lock_guard<std::mutex> lock(state_->mu);
    if (!state_->nonzero) {
        for (long long n = state_->probed_through + 1;
             n <= static_cast<long long>(upto); ++n) {
            std::uint64_t v = state_->pred(static_cast<std::uint64_t>(n));
            state_->probed_through = n;
            if (v != 0) {
                state_->nonzero = true;
                state_->nonzero_index = static_cast<std::uint64_t>(n);
                state_->nonzero_value = v;
                break;
            }
        }
    }
    return state_->snapshot();
}

ProbeStatus FugaciousSequence::status() const {
    std::lock_guard<std::mutex> lock(state_->mu);
    return state_->snapshot();
}

namespace {

// Shared growable sieve of Eratosthenes; doubles to cover requests.
struct Sieve {
    std::vector<bool> is_prime;
    std::mutex mu;

    void ensure(std::uint64_t limit) {
        if (is_prime.size() > limit) return;
        std::uint64_t n = std::max<std::uint64_t>(limit + 1, 1024);
        n = std::max<std::uint64_t>(n, is_prime.size() * 2);
        is_prime.assign(n, true);
        is_prime[0] = false;
        if (n > 1) is_prime[1] = false;
        for (std::uint64_t p = 2; p * p < n; ++p)
            if (is_prime[p])
                for (std::uint64_t q = p * p; q < n; q += p) is_prime[q] = false;
    }
};

} // namespace

FugaciousSequence goldbach_indicator() {
    auto sieve = std::make_shared<Sieve>();
    return FugaciousSequence([sieve](std::uint64_t n) -> std::uint64_t {
        std::uint64_t even = 2 * n + 4;
        std::lock_guard<std::mutex> lock(sieve->mu);
        sieve->ensure(even);
        for (std::uint64_t p = 2; p <= even / 2; ++p)
            if (sieve->is_prime[p] && sieve->is_prime[even - p]) return 0;
        return 1;
    });
}

FugaciousSequence seq_compare(std::function<Int(std::uint64_t)> u,
                              std::function<Int(std::uint64_t)> v) {
    return FugaciousSequence(
        [u = std::move(u), v = std::move(v)](std::uint64_t n) -> std::uint64_t {
            Int d = u(n) - v(n);
            if (d < 0) d = -d;
            // the probe only needs zero / nonzero plus a small sample value
            return d > 0xffffffffULL ? 0xffffffffULL
                                     : static_cast<std::uint64_t>(d);
        });
}

Rational power_fraction_discrepancy(const Rational& alpha, std::uint64_t n_points,
                                    std::uint64_t bit_cap) {
    if (!(alpha > Rational(1)))
        throw DomainError("discrepancy requires alpha > 1");
    if (n_points < 1)
        throw DomainError("discrepancy requires N >= 1");
    // frac(alpha^n) = (p^n mod q^n) / q^n exactly, alpha = p/q canonical.
    std::vector<Rational> xs;
    xs.reserve(n_points);
    Int pn = 1, qn = 1;
    for (std::uint64_t n = 1; n <= n_points; ++n) {
        pn *= alpha.num();
        qn *= alpha.den();
        if (mp::msb(pn) + 1 > bit_cap)
            throw ResourceError("power numerator exceeded the bit-length cap");
        xs.emplace_back(pn % qn, qn);
    }
    std::sort(xs.begin(), xs.end());
    Rational n_rat{Int(n_points)};
    Rational best(0);
    for (std::uint64_t k = 1; k <= n_points; ++k) {
        const Rational& x = xs[k - 1];
        Rational hi = Rational(Int(k)) / n_rat - x;
        Rational lo = x - Rational(Int(k - 1)) / n_rat;
        if (hi > best) best = hi;
        if (lo > best) best = lo;
    }
    return best;
}

} // namespace constructive
