#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "constructive/real.hpp"

namespace constructive {

/// sqrt(q) for a rational q >= 0, by Newton iteration on exact rationals
/// from an integer-sqrt seed. The contract worth testing is the residual:
/// |approx(n)^2 - q| stays small. sqrt(0) carries a nullity certificate.
Duplex const_sqrt(const Rational& q);

/// e = sum 1/j!, regulator from the tail bound 2/(N+1)!.
Duplex const_e();

/// pi = 16*arctan(1/5) - 4*arctan(1/239), the arctangents as alternating
/// series duplexes, the combination through ordinary duplex arithmetic.
Duplex const_pi();

/// pi again via 4*arctan(1/2) + 4*arctan(1/3): a distinct identity whose
/// agreement with const_pi() is a library-level cross-check.
Duplex const_pi_alt();

/// zeta(3) via the accelerated alternating series
/// (5/2) * sum_{k>=1} (-1)^(k-1) / (k^3 binom(2k,k)); roughly two bits per
/// term, against the quarter-million terms the plain sum would need for
/// ten digits.
Duplex const_zeta3();

/// arctan(1/x) for an integer x >= 2, as an alternating-series duplex.
/// Exposed for building further Machin-style identities.
Duplex arctan_inv(const Int& x);

/// A continued-fraction convergent p/q of some real, in lowest terms.
struct Convergent {
    Int p;
    Int q;
    std::uint64_t index;
};

/// Convergents of x with q <= q_max, computed from a validated rational
/// approximation and re-certified against the duplex itself: every returned
/// p/q provably satisfies |x - p/q| < 1/q^2. PrecisionError if the working
/// precision fails twice.
std::vector<Convergent> cf_convergents(const Duplex& x, const Int& q_max);

/// One checked rational approximation in an irrationality-measure report.
/// `margin` is a certified bound on |x - p/q|: a lower bound for PASS
/// (margin > q^-exponent), an upper bound for FAIL (margin < q^-exponent).
struct MeasureEntry {
    Convergent conv;
    Rational margin;
    enum class Verdict { pass, fail, unknown } verdict;
};

struct MeasureReport {
    long long exponent;
    Int q_max;
    std::vector<MeasureEntry> entries;
    std::size_t passed() const;
    std::size_t failed() const;
    std::size_t unknown() const;
};

/// Checks |pi - p/q| > q^-exponent over the convergents of pi with
/// 2 <= q <= q_max. Convergents suffice: every best rational approximation
/// is a convergent, so any violator would show up among them. q = 1 is
/// excluded -- every real lies within 1/2 of an integer, so no bound of the
/// form q^-e with q = 1 can hold; the classical statement starts at q = 2.
MeasureReport irrationality_check_pi(long long exponent, const Int& q_max);

/// Report lines in the documented format:
///   p/q  margin_num/margin_den  PASS|FAIL|UNKNOWN
/// followed by a summary line. Margins are rounded toward the safe side to
/// twelve significant digits so lines stay readable; the direction of the
/// certificate is preserved.
std::string format_report(const MeasureReport& report);

} // namespace constructive
