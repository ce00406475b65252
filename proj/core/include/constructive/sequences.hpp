#pragma once

#include <cstdint>
#include <functional>
#include <memory>

#include "constructive/rational.hpp"

namespace constructive {

/// Probe result for a fugacious sequence. `probed_through` is the largest
/// index evaluated so far (-1 before any probe); once a nonzero element is
/// found the status is permanent.
struct ProbeStatus {
    enum class Kind { all_zero_so_far, nonzero_found };
    Kind kind = Kind::all_zero_so_far;
    long long probed_through = -1;
    std::uint64_t nonzero_index = 0;
    std::uint64_t nonzero_value = 0;
};

/// A total decidable integer sequence probed lazily: every element computed
/// so far is zero, and whether the rest are stays open until a probe says
/// otherwise. Storage is sparse -- an all-zero prefix needs only the
/// frontier, plus the first nonzero hit if any. Probes serialize on an
/// internal lock; status reads are safe at any time.
class FugaciousSequence {
  public:
    explicit FugaciousSequence(std::function<std::uint64_t(std::uint64_t)> pred);

    /// Evaluates every unprobed index <= upto, stopping at the first
    /// nonzero. The frontier only grows; chunking order cannot change the
    /// final status.
    ProbeStatus probe(std::uint64_t upto);

    /// Current status without evaluating anything.
    ProbeStatus status() const;

  private:
    struct State;
    std::shared_ptr<State> state_;
};

/// pred(n) = 0 iff 2n+4 is a sum of two primes, decided by trial over a
/// growing sieve. All computed elements being zero is the Goldbach
/// conjecture up to the frontier; nothing more is claimed.
FugaciousSequence goldbach_indicator();

/// The sequence n -> |u(n) - v(n)|. Equality of u and v is exactly nullity
/// of the result; probing examines it, it is never decided outright.
FugaciousSequence seq_compare(std::function<Int(std::uint64_t)> u,
                              std::function<Int(std::uint64_t)> v);

/// Star discrepancy D*_N of the fractional parts of alpha^1 .. alpha^N,
/// computed exactly: sort x_(1) <= ... <= x_(N) and take
///   max_k max(k/N - x_(k), x_(k) - (k-1)/N).
/// Requires alpha > 1, N >= 1. Powers of rationals grow exponentially, so a
/// numerator above `bit_cap` bits raises ResourceError.
Rational power_fraction_discrepancy(const Rational& alpha, std::uint64_t n_points,
                                    std::uint64_t bit_cap = 1u << 20);

} // namespace constructive
