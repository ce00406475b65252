// Test-only oracles. Everything here recomputes values along code paths
// (and identities) disjoint from the library: fixed-point integer series,
// integer square roots, sieves, Pell recurrences. Results carry explicit
// error bounds so tests can assert |library - oracle| <= tol honestly.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "constructive/rational.hpp"

namespace oracles {

using constructive::Int;
using constructive::Rational;

/// pi via the Hutton identity pi/4 = 2 arctan(1/3) + arctan(1/7), summed in
/// fixed point. |result - pi| <= 2^-bits.
Rational pi_fixed_point(long long bits);

/// e = sum 1/j! in fixed point. |result - e| <= 2^-bits.
Rational e_fixed_point(long long bits);

/// zeta(3) through the fast alternating series
/// (1/4) sum (-1)^(k-1) (56k^2-32k+5) / ((2k-1)^2 k^3 C(2k,k) C(3k,k)).
/// |result - zeta(3)| <= 2^-bits.
Rational zeta3_fixed_point(long long bits);

/// Plain partial sum of 1/j^3 in fixed point, with its tail bound:
/// returns r such that r <= zeta(3) <= r + err, err = terms/2^bits + 1/(2N^2).
struct DirectSum {
    Rational value;
    Rational error;
};
DirectSum zeta3_direct(std::uint64_t terms, long long bits);

/// floor-sqrt based: |result - sqrt(q)| <= 2^-bits, q >= 0.
Rational sqrt_fixed_point(const Rational& q, long long bits);

/// Exact tangent of c1*arctan(1/x1) + c2*arctan(1/x2) for small integer
/// multiples, by the rational tangent-addition formulas. The Machin-style
/// identities used in the library must give exactly 1 (= tan(pi/4)) here.
Rational tan_of_combination(int c1, long long x1, int c2, long long x2);

/// Sieve of Eratosthenes; index i true iff i prime.
std::vector<bool> sieve(std::uint64_t limit);

/// Pell-recurrence convergents of sqrt(2): (1,1), then p' = p + 2q,
/// q' = p + q, while q' <= q_max.
std::vector<std::pair<Int, Int>> sqrt2_convergents(const Int& q_max);

/// Star discrepancy of frac(alpha^n), n = 1..N, recomputed with raw
/// integers only (pow/mod, cross-multiplied comparisons): the independent
/// route for the golden value. Returns the reduced fraction.
std::pair<Int, Int> discrepancy_by_modular_powers(const Int& p, const Int& q,
                                                  std::uint64_t n_points);

/// Largest v with v^2 <= a/b (scaled): helper for decimal digit checks.
Int isqrt_scaled(const Int& num, const Int& den, const Int& scale_squared);

} // namespace oracles
