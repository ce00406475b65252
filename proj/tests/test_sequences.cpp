#include <doctest.h>

#include <random>

#include "constructive/sequences.hpp"
#include "oracles.hpp"

using namespace constructive;

TEST_CASE("fugacious probe on simple predicates") {
    FugaciousSequence zeros([](std::uint64_t) -> std::uint64_t { return 0; });
    auto s = zeros.probe(1000);
    CHECK(s.kind == ProbeStatus::Kind::all_zero_so_far);
    CHECK(s.probed_through == 1000);

    FugaciousSequence hit7([](std::uint64_t n) -> std::uint64_t { return n < 7 ? 0 : 1; });
    auto h = hit7.probe(100);
    REQUIRE(h.kind == ProbeStatus::Kind::nonzero_found);
    CHECK(h.nonzero_index == 7);
    CHECK(h.nonzero_value == 1);

    // NonzeroFound is permanent
    auto again = hit7.probe(100000);
    CHECK(again.kind == ProbeStatus::Kind::nonzero_found);
    CHECK(again.nonzero_index == 7);
}

TEST_CASE("probe stops at the first nonzero and never evaluates past it") {
    int calls_past = 0;
    FugaciousSequence s([&](std::uint64_t n) -> std::uint64_t {
        if (n > 5) ++calls_past;
        return n == 5 ? 9 : 0;
    });
    auto st = s.probe(500);
    REQUIRE(st.kind == ProbeStatus::Kind::nonzero_found);
    CHECK(st.nonzero_index == 5);
    CHECK(st.nonzero_value == 9);
    CHECK(calls_past == 0);
}

TEST_CASE("chunked probing is order-insensitive and each index evaluates once") {
    std::mt19937_64 rng(55);
    for (int round = 0; round < 10; ++round) {
        std::vector<int> counts(301, 0);
        FugaciousSequence s([&](std::uint64_t n) -> std::uint64_t {
            ++counts[n];
            return 0;
        });
        // probe in a random chunk schedule (some chunks regress, some repeat)
        std::uniform_int_distribution<std::uint64_t> upto(0, 300);
        for (int i = 0; i < 12; ++i) s.probe(upto(rng));
        auto fin = s.probe(300);
        CHECK(fin.kind == ProbeStatus::Kind::all_zero_so_far);
        CHECK(fin.probed_through == 300);
        for (int n = 0; n <= 300; ++n) CHECK(counts[n] == 1);
    }
}

TEST_CASE("status reads do not advance the frontier") {
    FugaciousSequence s([](std::uint64_t) -> std::uint64_t { return 0; });
    CHECK(s.status().probed_through == -1);
    s.probe(10);
    CHECK(s.status().probed_through == 10);
    CHECK(s.status().probed_through == 10);
}

TEST_CASE("goldbach indicator") {
    auto g = goldbach_indicator();
    // 4 = 2+2 and 10 = 3+7 = 5+5
    auto s0 = g.probe(0);
    CHECK(s0.kind == ProbeStatus::Kind::all_zero_so_far);
    auto s3 = g.probe(3);
    CHECK(s3.kind == ProbeStatus::Kind::all_zero_so_far);
    CHECK(s3.probed_through == 3);

    auto s = g.probe(2000);
    CHECK(s.kind == ProbeStatus::Kind::all_zero_so_far);
    CHECK(s.probed_through == 2000);

    // cross-check each even number against an independent sieve
    auto primes = oracles::sieve(2 * 2000 + 4);
    for (std::uint64_t n = 0; n <= 2000; ++n) {
        std::uint64_t even = 2 * n + 4;
        bool split = false;
        for (std::uint64_t p = 2; p <= even / 2 && !split; ++p)
            split = primes[p] && primes[even - p];
        CHECK_MESSAGE(split, "sieve oracle disagrees at n=", n);
    }
}

TEST_CASE("seq_compare reduces equality to nullity") {
    auto u = [](std::uint64_t n) { return Int(n); };
    auto same = seq_compare(u, u);
    CHECK(same.probe(500).kind == ProbeStatus::Kind::all_zero_so_far);

    auto v = [](std::uint64_t n) { return n == 5 ? Int(6) : Int(n); };
    auto differ = seq_compare(u, v);
    auto st = differ.probe(100);
    REQUIRE(st.kind == ProbeStatus::Kind::nonzero_found);
    CHECK(st.nonzero_index == 5);
    CHECK(st.nonzero_value == 1);
}

TEST_CASE("star discrepancy exact values") {
    // every frac(2^n) is 0: maximal clustering
    CHECK(power_fraction_discrepancy(Rational(2), 50) == Rational(1));
    // alpha = 3/2, N = 1: x_1 = 1/2
    CHECK(power_fraction_discrepancy(Rational(3, 2), 1) == Rational(1, 2));
}

TEST_CASE("star discrepancy against the modular-power recomputation") {
    for (auto [p, q, n] : {std::tuple<int, int, std::uint64_t>{3, 2, 200},
                           {3, 2, 50},
                           {7, 5, 80},
                           {9, 4, 60}}) {
        Rational d = power_fraction_discrepancy(Rational(p, q), n);
        auto [on, od] = oracles::discrepancy_by_modular_powers(Int(p), Int(q), n);
        CHECK(d == Rational(on, od));
    }
}

TEST_CASE("discrepancy bounds 1/N <= D <= 1") {
    std::mt19937_64 rng(303);
    std::uniform_int_distribution<int> num(3, 40);
    std::uniform_int_distribution<int> den(1, 20);
    std::uniform_int_distribution<std::uint64_t> points(1, 60);
    for (int i = 0; i < 40; ++i) {
        int q = den(rng);
        int p = num(rng) + q; // alpha > 1
        std::uint64_t n = points(rng);
        Rational d = power_fraction_discrepancy(Rational(p, q), n);
        CHECK(d >= Rational(1, static_cast<long long>(n)));
        CHECK(d <= Rational(1));
    }
}

TEST_CASE("discrepancy domain and resource errors") {
    CHECK_THROWS_AS(power_fraction_discrepancy(Rational(1), 10), DomainError);
    CHECK_THROWS_AS(power_fraction_discrepancy(Rational(1, 2), 10), DomainError);
    CHECK_THROWS_AS(power_fraction_discrepancy(Rational(3, 2), 0), DomainError);
    // 3^n at n = 10000 blows a 1000-bit cap
    CHECK_THROWS_AS(power_fraction_discrepancy(Rational(3), 10000, 1000), ResourceError);
}
