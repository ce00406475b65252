// Shared property checks and generators for the duplex tests.
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "constructive/constants.hpp"
#include "constructive/real.hpp"

namespace checks {

using constructive::Duplex;
using constructive::Rational;

/// Samples the regulator contract: for each tested level n, every pair of
/// indices in [c(n), c(n)+span] must differ by less than 2^-n. Returns an
/// empty string or a description of the first violation.
inline std::string regulator_violation(const Duplex& x,
                                       const std::vector<long long>& levels,
                                       std::uint64_t span = 8) {
    for (long long n : levels) {
        std::uint64_t base = x.regulator(n);
        Rational bound = constructive::pow2(-n);
        for (std::uint64_t i = 0; i <= span; ++i)
            for (std::uint64_t j = i + 1; j <= span; ++j) {
                Rational d = constructive::abs(x.term(base + i) - x.term(base + j));
                if (!(d < bound))
                    return "level " + std::to_string(n) + ": |u(" +
                           std::to_string(base + i) + ") - u(" +
                           std::to_string(base + j) + ")| >= 2^-n";
            }
    }
    return {};
}

/// Samples a nullity certificate: |u(m)| < 2^-n for m in [d(n), d(n)+span].
inline std::string nullity_violation(const Duplex& x,
                                     const std::vector<long long>& levels,
                                     std::uint64_t span = 8) {
    if (!x.has_nullity()) return "no certificate";
    for (long long n : levels) {
        std::uint64_t base = x.nullity_index(n);
        Rational bound = constructive::pow2(-n);
        for (std::uint64_t i = 0; i <= span; ++i)
            if (!(constructive::abs(x.term(base + i)) < bound))
                return "level " + std::to_string(n) + ": |u(" +
                       std::to_string(base + i) + ")| >= 2^-n";
    }
    return {};
}

inline Rational random_rational(std::mt19937_64& rng, long long mag = 1000) {
    std::uniform_int_distribution<long long> num(-mag, mag);
    std::uniform_int_distribution<long long> den(1, mag);
    return Rational(num(rng), den(rng));
}

/// Random duplex built from the exported constructors and operations;
/// `depth` bounds the expression tree.
inline Duplex random_duplex(std::mt19937_64& rng, int depth = 3) {
    std::uniform_int_distribution<int> pick(0, depth > 0 ? 9 : 3);
    switch (pick(rng)) {
        case 0: return Duplex::from_rational(random_rational(rng));
        case 1: return constructive::const_sqrt(abs(random_rational(rng)));
        case 2: return constructive::const_e();
        case 3: return constructive::const_pi();
        case 4: return random_duplex(rng, depth - 1) + random_duplex(rng, depth - 1);
        case 5: return random_duplex(rng, depth - 1) - random_duplex(rng, depth - 1);
        case 6: return random_duplex(rng, depth - 1) * random_duplex(rng, depth - 1);
        case 7: return -random_duplex(rng, depth - 1);
        case 8: return constructive::abs(random_duplex(rng, depth - 1));
        default:
            return constructive::max(random_duplex(rng, depth - 1),
                                     random_duplex(rng, depth - 1));
    }
}

} // namespace checks
