#include <doctest.h>

#include <random>

#include "checks.hpp"
#include "constructive/constants.hpp"
#include "oracles.hpp"

using namespace constructive;

TEST_CASE("machin-style identities are exact tangent identities") {
    // tan(16 arctan(1/5) - 4 arctan(1/239)) = tan(pi) = 0
    CHECK(oracles::tan_of_combination(16, 5, -4, 239) == Rational(0));
    // tan(4 arctan(1/2) + 4 arctan(1/3)) = tan(pi) = 0
    CHECK(oracles::tan_of_combination(4, 2, 4, 3) == Rational(0));
    // tan(2 arctan(1/3) + arctan(1/7)) = tan(pi/4) = 1
    CHECK(oracles::tan_of_combination(2, 3, 1, 7) == Rational(1));
}

TEST_CASE("const_sqrt") {
    CHECK(abs(const_sqrt(Rational(4)).approx(30) - Rational(2)) <= pow2(-30));

    Duplex s0 = const_sqrt(Rational(0));
    CHECK(s0.has_nullity());

    CHECK_THROWS_AS(const_sqrt(Rational(-1)), DomainError);

    // 20-digit rendering, residual certified independently
    Duplex s2 = const_sqrt(Rational(2));
    CHECK(to_decimal(s2, 20) == "1.41421356237309504880");
    Rational r = s2.approx(70);
    CHECK(abs(r * r - Rational(2)) < Rational(Int(1), Int(10000000000000000000ULL)));
    Rational r50 = s2.approx(50);
    CHECK(abs(r50 * r50 - Rational(2)) < pow2(-48));

    // against the integer-sqrt oracle
    Rational o = oracles::sqrt_fixed_point(Rational(2), 80);
    CHECK(abs(s2.approx(80) - o) <= pow2(-79));

    // rational arguments with rational roots still go through Newton
    CHECK(abs(const_sqrt(Rational(9, 4)).approx(40) - Rational(3, 2)) <= pow2(-40));
}

TEST_CASE("reciprocal of sqrt(2) under an m=2 witness") {
    Duplex s2 = const_sqrt(Rational(2));
    ApartnessWitness w{Int(2), 2}; // |sqrt(2)| > 1/2, certifiable at level 2
    Duplex inv = inverse(s2, w);
    std::string printed = to_decimal(inv, 20);
    CHECK(printed == "0.70710678118654752440");
    // the printed value sits within 1e-20 of the oracle reciprocal
    Rational oracle_inv = oracles::sqrt_fixed_point(Rational(2), 90).reciprocal();
    Rational printed_rat(Int("70710678118654752440"),
                         boost::multiprecision::pow(Int(10), 20));
    CHECK(abs(printed_rat - oracle_inv) <= Rational(Int(2), boost::multiprecision::pow(Int(10), 20)));
}

TEST_CASE("const_sqrt residuals on random rationals") {
    std::mt19937_64 rng(5150);
    for (int i = 0; i < 40; ++i) {
        Rational q = abs(checks::random_rational(rng, 5000));
        if (q.is_zero()) continue;
        Duplex s = const_sqrt(q);
        Rational r = s.approx(60);
        // |r^2 - q| = |r - sqrt(q)| * (r + sqrt(q)) <= 2^-60 * (2r + 1)
        CHECK(abs(r * r - q) <= pow2(-60) * (Rational(2) * r + Rational(1)));
        std::string v = checks::regulator_violation(s, {3, 24, 51}, 4);
        CHECK_MESSAGE(v.empty(), v);
    }
}

TEST_CASE("const_e matches the fixed-point oracle") {
    Duplex e = const_e();
    CHECK(to_decimal(e, 15) == "2.718281828459045");
    Rational o = oracles::e_fixed_point(110);
    CHECK(abs(e.approx(100) - o) <= pow2(-100) + pow2(-110));
    CHECK(abs(e.approx(10) - o) <= pow2(-10) + pow2(-110));
    std::string v = checks::regulator_violation(e, {5, 20, 60}, 6);
    CHECK_MESSAGE(v.empty(), v);
}

TEST_CASE("const_pi two library constructions and the third oracle agree") {
    Duplex pi = const_pi();
    Duplex alt = const_pi_alt();
    CHECK(to_decimal(pi, 10) == "3.1415926536");

    // cross-formula agreement through level 300
    for (long long n : {10, 50, 150, 300})
        CHECK(abs(pi.approx(n) - alt.approx(n)) <= pow2(-n) + pow2(-n));

    Rational o = oracles::pi_fixed_point(200);
    CHECK(abs(pi.approx(200) - o) <= pow2(-200) + pow2(-200));
    CHECK(abs(alt.approx(200) - o) <= pow2(-200) + pow2(-200));

    // coherence between widely separated levels
    CHECK(abs(pi.approx(200) - pi.approx(100)) <= pow2(-100) + pow2(-200));

    auto claim = locate(pi, Rational(3), Rational(4));
    CHECK(claim.kind == LocateClaim::Kind::below_upper);
}

TEST_CASE("e plus pi to thirty digits") {
    Duplex sum = const_e() + const_pi();
    CHECK(to_decimal(sum, 30) == "5.859874482048838473822930854632");
}

TEST_CASE("const_zeta3 against two independent routes") {
    Duplex z = const_zeta3();
    CHECK(to_decimal(z, 10) == "1.2020569032");

    // fast alternating oracle at higher precision
    Rational o = oracles::zeta3_fixed_point(120);
    CHECK(abs(z.approx(110) - o) <= pow2(-110) + pow2(-120));
    CHECK(abs(z.approx(4) - o) <= pow2(-4) + pow2(-120));

    // plain partial sums of 1/j^3 bracket the value
    auto direct = oracles::zeta3_direct(200000, 64);
    Rational v = z.approx(80);
    CHECK(v >= direct.value - pow2(-80));
    CHECK(v <= direct.value + direct.error + pow2(-80));

    std::string viol = checks::regulator_violation(z, {3, 30, 64}, 6);
    CHECK_MESSAGE(viol.empty(), viol);
}

TEST_CASE("plain 1/j^3 partial sums as a duplex: the integral-tail regulator") {
    // Polynomial convergence: c(n) = smallest N with 1/(2N^2) < 2^-n. Usable
    // only at low precision, which is exactly how it is used here.
    auto partial = std::make_shared<std::vector<Rational>>();
    auto term = [partial](std::uint64_t k) {
        while (partial->size() <= k) {
            std::uint64_t j = partial->size() + 1; // sum starts at j = 1
            Rational t(Int(1), Int(j) * Int(j) * Int(j));
            partial->push_back(partial->empty() ? t : partial->back() + t);
        }
        return (*partial)[k];
    };
    auto reg = [](long long n) -> std::uint64_t {
        std::uint64_t big_n = 1;
        while (!(Rational(Int(1), Int(2) * Int(big_n) * Int(big_n)) < pow2(-n)))
            ++big_n;
        return big_n - 1; // index of the N-th partial sum
    };
    Duplex direct = Duplex::from_functions(term, reg);

    // the stated arithmetic: c(10) wants N = 23
    CHECK(reg(10) + 1 == 23);

    std::string v = checks::regulator_violation(direct, {2, 8, 14}, 5);
    CHECK_MESSAGE(v.empty(), v);

    // same number as the accelerated construction
    Duplex z = const_zeta3();
    CHECK(abs(direct.approx(18) - z.approx(18)) <= pow2(-18) + pow2(-18));
}

TEST_CASE("cf_convergents of pi, a rational, and sqrt(2)") {
    auto pi_convs = cf_convergents(const_pi(), Int(120));
    REQUIRE(pi_convs.size() == 4);
    CHECK(pi_convs[0].p == 3);   CHECK(pi_convs[0].q == 1);
    CHECK(pi_convs[1].p == 22);  CHECK(pi_convs[1].q == 7);
    CHECK(pi_convs[2].p == 333); CHECK(pi_convs[2].q == 106);
    CHECK(pi_convs[3].p == 355); CHECK(pi_convs[3].q == 113);

    // every returned p/q certifies |x - p/q| < 1/q^2, checked here against
    // the independent fixed-point pi
    Rational opi = oracles::pi_fixed_point(120);
    for (const auto& c : pi_convs) {
        Rational d = abs(opi - Rational(c.p, c.q));
        CHECK(d < Rational(Int(1), c.q * c.q) + pow2(-119));
        CHECK(boost::multiprecision::gcd(abs(Rational(c.p, c.q)).num(), c.q) >= 1);
    }

    auto rat_convs = cf_convergents(Duplex::from_rational(Rational(22, 7)), Int(10));
    REQUIRE(rat_convs.size() == 2);
    CHECK(rat_convs[0].p == 3);  CHECK(rat_convs[0].q == 1);
    CHECK(rat_convs[1].p == 22); CHECK(rat_convs[1].q == 7);

    auto s2_convs = cf_convergents(const_sqrt(Rational(2)), Int(100));
    auto pell = oracles::sqrt2_convergents(Int(100));
    REQUIRE(s2_convs.size() == pell.size());
    for (std::size_t i = 0; i < pell.size(); ++i) {
        CHECK(s2_convs[i].p == pell[i].first);
        CHECK(s2_convs[i].q == pell[i].second);
    }

    // denominators strictly increase, even when a_1 = 1 collapses the
    // first two candidates (19/10 = [1; 1, 9])
    auto dd = cf_convergents(Duplex::from_rational(Rational(19, 10)), Int(10));
    REQUIRE(dd.size() == 2);
    CHECK(dd[0].p == 2);  CHECK(dd[0].q == 1);
    CHECK(dd[1].p == 19); CHECK(dd[1].q == 10);
    for (std::size_t i = 1; i < dd.size(); ++i) CHECK(dd[i - 1].q < dd[i].q);
}

TEST_CASE("irrationality measure report for pi") {
    auto report = irrationality_check_pi(42, Int(113));
    REQUIRE(report.entries.size() == 3); // 22/7, 333/106, 355/113 (q=1 excluded)
    CHECK(report.passed() == 3);
    CHECK(report.failed() == 0);
    CHECK(report.unknown() == 0);

    const auto& last = report.entries.back();
    CHECK(last.conv.p == 355);
    CHECK(last.conv.q == 113);
    // |pi - 355/113| = 2.667e-7; the certified margin is a lower bound
    CHECK(last.margin > Rational(26, 100000000));
    CHECK(last.margin < Rational(27, 100000000));
    Rational true_dist = abs(oracles::pi_fixed_point(80) - Rational(355, 113));
    CHECK(last.margin <= true_dist + pow2(-79));

    // the checker can reject: 22/7 violates exponent 1, and the FAIL margin
    // is a certified upper bound on the true distance
    auto reject = irrationality_check_pi(1, Int(7));
    REQUIRE(reject.entries.size() == 1);
    CHECK(reject.entries[0].verdict == MeasureEntry::Verdict::fail);
    Rational dist_22_7 = abs(oracles::pi_fixed_point(80) - Rational(22, 7));
    CHECK(reject.entries[0].margin >= dist_22_7 - pow2(-79));
    CHECK(reject.entries[0].margin < Rational(1, 7));

    std::string text = format_report(report);
    CHECK(text.find("355/113") != std::string::npos);
    CHECK(text.find("PASS") != std::string::npos);
    CHECK(text.find("unknown=0") != std::string::npos);

    CHECK_THROWS_AS(irrationality_check_pi(0, Int(100)), DomainError);
    CHECK_THROWS_AS(irrationality_check_pi(42, Int(0)), DomainError);
}
