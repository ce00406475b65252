#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "constructive/rational.hpp"

namespace constructive {

namespace detail {
struct DuplexState;
}

/// A real number given constructively: an approximation sequence u(k) of
/// rationals together with a convergence regulator c(n) such that
///
///     m, m' >= c(n)  =>  |u(m) - u(m')| < 2^-n.
///
/// Optionally a nullity certificate d(n) with  m >= d(n) => |u(m)| < 2^-n,
/// which is positive evidence that the value is zero. Both index functions
/// are stored monotone (running max over levels). Values are immutable;
/// term and regulator lookups are memoized behind an internal lock, so a
/// Duplex may be shared freely across threads.
class Duplex {
  public:
    /// The constant sequence q with regulator 0. Carries a nullity
    /// certificate exactly when q == 0.
    static Duplex from_rational(Rational q);

    /// Assembles a duplex from raw sequence functions. `term` must be a pure
    /// function of the index, `regulator` a sound convergence regulator for
    /// it; `nullity`, when given, must be a sound zero certificate. The
    /// soundness of what callers pass here is their proof obligation; the
    /// test suite samples it.
    static Duplex from_functions(std::function<Rational(std::uint64_t)> term,
                                 std::function<std::uint64_t(long long)> regulator,
                                 std::function<std::uint64_t(long long)> nullity = {});

    Duplex() : Duplex(from_rational(Rational(0))) {}

    /// u(k), memoized.
    Rational term(std::uint64_t k) const;
    /// c(n) for n >= 0, monotone nondecreasing in n, memoized.
    std::uint64_t regulator(long long n) const;

    bool has_nullity() const;
    /// d(n); requires has_nullity().
    std::uint64_t nullity_index(long long n) const;

    /// u(c(n)); within 2^-n of the number. Total, cost grows with n.
    Rational approx(long long n) const;

  private:
    explicit Duplex(std::shared_ptr<detail::DuplexState> s) : state_(std::move(s)) {}
    std::shared_ptr<detail::DuplexState> state_;
};

Duplex operator+(const Duplex& x, const Duplex& y);
Duplex operator-(const Duplex& x, const Duplex& y);
Duplex operator-(const Duplex& x);
Duplex operator*(const Duplex& x, const Duplex& y);

Duplex abs(const Duplex& x);
Duplex max(const Duplex& x, const Duplex& y);
Duplex min(const Duplex& x, const Duplex& y);

/// |u(c(0))| + 1; satisfies |u(m)| < bound for every m >= c(0).
Rational canonical_bound(const Duplex& x);

/// Positive evidence that |x| > 1/m, carrying the precision level at which
/// it was certified: |approx(x, level)| - 2^-level > 1/m. Checkable, and
/// re-checked by every consumer.
struct ApartnessWitness {
    Int m;           // |x| > 1/m
    long long level; // certifying precision level
};

/// Re-runs the witness check against x. EvidenceError on failure.
void certify(const ApartnessWitness& w, const Duplex& x);

/// 1/x, gated by evidence that x is apart from zero. The witness is
/// re-certified first; an invalid witness is a caller bug (EvidenceError),
/// not an Unknown.
Duplex inverse(const Duplex& x, const ApartnessWitness& w);

/// x * inverse(x, w) - 1, carrying a nullity certificate. Beyond the
/// witness clamp both factors sample x at the same index, so the product
/// terms are exactly 1 and the residual terms exactly 0 -- knowledge the
/// generic operators cannot recover from closures, hence this dedicated
/// constructor.
Duplex inverse_unit_residual(const Duplex& x, const ApartnessWitness& w);

/// Tries precision levels 1..budget looking for evidence |x| > 1/m.
/// Returns nullopt when the budget is exhausted: the honest third state,
/// not an error. A returned witness always re-certifies; if x is truly
/// apart from zero a large enough budget finds one.
std::optional<ApartnessWitness> apartness_search(const Duplex& x, long long budget);

/// One of the two constructively decidable comparisons for a < b:
/// either x > a or x < b. The returned claim is always true.
struct LocateClaim {
    enum class Kind { above_lower, below_upper };
    Kind kind;
    Rational bound; // a for above_lower, b for below_upper
};
LocateClaim locate(const Duplex& x, const Rational& a, const Rational& b);

/// Strictly nested open rational intervals ]lo_n, hi_n[ whose widths drop
/// below every 2^-n. Intervals are produced on demand and validated against
/// the nesting invariant as they are pulled (InvariantError on violation).
class ContractingIntervals {
  public:
    explicit ContractingIntervals(
        std::function<std::pair<Rational, Rational>(std::uint64_t)> gen);

    /// Interval n; validates nesting against interval n-1.
    std::pair<Rational, Rational> interval(std::uint64_t n) const;

  private:
    struct State;
    std::shared_ptr<State> state_;
};

ContractingIntervals to_contracting(const Duplex& x);

/// Optional caller evidence for from_contracting: `straddles_zero` asserts
/// that every interval of the stream contains 0, which makes the limit zero
/// and justifies a nullity certificate. The certificate validates the claim
/// on every interval it pulls and throws EvidenceError if falsified.
enum class ZeroEvidence { none, straddles_zero };

Duplex from_contracting(const ContractingIntervals& ci,
                        ZeroEvidence ev = ZeroEvidence::none);

/// Decimal rendering with an explicit guarantee: the true value lies within
/// 10^-digits of the printed string. Round-half-away-from-zero at `digits`
/// fractional digits; no claim about exact decimal expansions is made (that
/// would require deciding x = k*10^-digits, which is not decidable here).
std::string to_decimal(const Duplex& x, long long digits);

} // namespace constructive
