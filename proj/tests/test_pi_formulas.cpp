#include <doctest.h>

#include "arcpi/derivative.hpp"
#include "arcpi/pi_formulas.hpp"

#include <string>
#include <vector>

using namespace arcpi;

namespace {

const PrecisionContext kCtx(128);

FixedPoint ulps(long n) { return FixedPoint(BigInt(n), 128); }

FixedPoint rat(long long p, long long q) { return FixedPoint::from_rational(p, q, 128); }

}  // namespace

TEST_CASE("builtin specs carry the published parameters") {
    const SeriesSpec& p4 = builtin_spec("PI_BASE4");
    CHECK(p4.prefactor_num == 1);
    CHECK(p4.prefactor_den == 1);
    CHECK(p4.sign_alternates);
    CHECK(p4.ratio_num == 1);
    CHECK(p4.ratio_den == 4);
    CHECK(p4.period == 4);
    REQUIRE(p4.terms.size() == 3);
    CHECK(p4.terms[0].numerator == 2);
    CHECK(p4.terms[0].offset == 1);
    CHECK(p4.terms[1].numerator == 2);
    CHECK(p4.terms[1].offset == 2);
    CHECK(p4.terms[2].numerator == 1);
    CHECK(p4.terms[2].offset == 3);
    CHECK(p4.target == TargetConstant::Pi);
    CHECK(p4.has_integer_base());
    CHECK(p4.integer_base() == 4);

    const SeriesSpec& p8 = builtin_spec("PISQRT3_BASE8");
    CHECK(p8.prefactor_num == 9);
    CHECK(p8.prefactor_den == 8);
    CHECK(p8.sign_alternates);
    CHECK(p8.ratio_den == 8);
    CHECK(p8.period == 3);
    REQUIRE(p8.terms.size() == 2);
    CHECK(p8.terms[0].numerator == 4);
    CHECK(p8.terms[1].numerator == 2);
    CHECK(p8.target == TargetConstant::PiSqrt3);
    CHECK(p8.integer_base() == 8);

    const SeriesSpec& p27 = builtin_spec("PISQRT3_2764");
    CHECK(p27.prefactor_num == 9);
    CHECK(p27.prefactor_den == 64);
    CHECK(p27.ratio_num == 27);
    CHECK(p27.ratio_den == 64);
    CHECK(p27.period == 6);
    REQUIRE(p27.terms.size() == 5);
    CHECK(p27.terms[0].numerator == 16);
    CHECK(p27.terms[4].numerator == 9);
    CHECK(p27.terms[4].offset == 5);
    CHECK_FALSE(p27.has_integer_base());

    const SeriesSpec& bbp = builtin_spec("BBP16");
    CHECK_FALSE(bbp.sign_alternates);
    CHECK(bbp.ratio_den == 16);
    CHECK(bbp.period == 8);
    REQUIRE(bbp.terms.size() == 4);
    CHECK(bbp.terms[1].numerator == -2);
    CHECK(bbp.terms[1].offset == 4);
    CHECK(bbp.integer_base() == 16);

    for (const SeriesSpec& s : builtin_specs()) s.validate();
}

TEST_CASE("integer base is refused where the ratio is not 1/b") {
    try {
        builtin_spec("PISQRT3_2764").integer_base();
        FAIL("expected a domain_error");
    } catch (const std::domain_error& err) {
        CHECK(std::string(err.what()).find("not a BBP-type formula") != std::string::npos);
    }
}

TEST_CASE("unknown spec names list the built-ins") {
    try {
        builtin_spec("NOPE");
        FAIL("expected an invalid_argument");
    } catch (const std::invalid_argument& err) {
        const std::string msg = err.what();
        CHECK(msg.find("PI_BASE4") != std::string::npos);
        CHECK(msg.find("BBP16") != std::string::npos);
    }
}

TEST_CASE("validate rejects malformed specs") {
    const SeriesSpec good = builtin_spec("PI_BASE4");

    SeriesSpec s = good;
    s.prefactor_num = 0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);

    s = good;
    s.ratio_num = 4;   // ratio 4/4 does not converge
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);

    s = good;
    s.terms[1].offset = 1;   // offsets must strictly increase
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);

    s = good;
    s.terms.clear();
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);

    s = good;
    s.terms[0].numerator = 0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);

    s = good;
    s.period = 0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("partial sums match hand-computed rationals") {
    SUBCASE("PI_BASE4, first block: 2 + 1 + 1/3") {
        const SeriesEvaluation e = partial_sum(builtin_spec("PI_BASE4"), 0, kCtx);
        CHECK(e.value == rat(10, 3));
        CHECK(e.terms_used == 1);
        CHECK_FALSE(e.converged);
    }
    SUBCASE("PI_BASE4, two blocks: 10/3 - 23/105 = 109/35") {
        const SeriesEvaluation e = partial_sum(builtin_spec("PI_BASE4"), 1, kCtx);
        CHECK((e.value - rat(109, 35)).abs() <= ulps(2));
        CHECK(e.terms_used == 2);
    }
    SUBCASE("PISQRT3_BASE8, first block: (9/8)(4 + 1) = 45/8 exactly") {
        const SeriesEvaluation e = partial_sum(builtin_spec("PISQRT3_BASE8"), 0, kCtx);
        CHECK(e.value == rat(45, 8));
        CHECK(e.value.to_decimal_string(3) == "5.625");
    }
    SUBCASE("PISQRT3_2764, first block: (9/64)(423/10) = 3807/640 exactly") {
        const SeriesEvaluation e = partial_sum(builtin_spec("PISQRT3_2764"), 0, kCtx);
        CHECK(e.value == rat(3807, 640));
    }
    SUBCASE("BBP16, first block: 4 - 1/2 - 1/5 - 1/6 = 47/15") {
        const SeriesEvaluation e = partial_sum(builtin_spec("BBP16"), 0, kCtx);
        CHECK((e.value - rat(47, 15)).abs() <= ulps(2));
    }
}

TEST_CASE("partial sum validates its input") {
    CHECK_THROWS_AS(partial_sum(builtin_spec("PI_BASE4"), -1, kCtx), std::invalid_argument);
    SeriesSpec bad = builtin_spec("PI_BASE4");
    bad.terms.clear();
    CHECK_THROWS_AS(partial_sum(bad, 3, kCtx), std::invalid_argument);
}

TEST_CASE("PI_BASE4 partial sums stay within the published tail of pi") {
    const FixedPoint ref = reference_pi(kCtx);
    const SeriesSpec& spec = builtin_spec("PI_BASE4");
    for (long n = 0; n <= 200; ++n) {
        const SeriesEvaluation e = partial_sum(spec, n, kCtx);
        CAPTURE(n);
        CHECK((e.value - ref).abs() <= e.tail_bound);
    }
}

TEST_CASE("PI_BASE4 partial sums bracket pi alternately") {
    const FixedPoint ref = reference_pi(kCtx);
    const SeriesSpec& spec = builtin_spec("PI_BASE4");
    for (long n = 1; n <= 30; ++n) {
        const FixedPoint v = partial_sum(spec, n, kCtx).value;
        CAPTURE(n);
        if (n % 2 == 0) {
            CHECK(ref < v);   // last block added
        } else {
            CHECK(v < ref);   // last block subtracted
        }
    }
}

TEST_CASE("the two pi sqrt3 routes agree within their summed bounds") {
    const SeriesSpec& a = builtin_spec("PISQRT3_BASE8");
    const SeriesSpec& b = builtin_spec("PISQRT3_2764");
    std::vector<SeriesEvaluation> ea, eb;
    for (long n = 0; n <= 100; ++n) {
        ea.push_back(partial_sum(a, n, kCtx));
        eb.push_back(partial_sum(b, n, kCtx));
    }
    for (long n1 = 0; n1 <= 100; n1 += 1) {
        for (long n2 = 0; n2 <= 100; n2 += 1) {
            const FixedPoint gap = (ea[n1].value - eb[n2].value).abs();
            CAPTURE(n1);
            CAPTURE(n2);
            REQUIRE(gap <= ea[n1].tail_bound + eb[n2].tail_bound);
        }
    }
}

TEST_CASE("sin case tables hold the exact surd values") {
    SUBCASE("quarter-pi table") {
        CHECK(sin_case(4, 1).num == 1);
        CHECK(sin_case(4, 1).surd == SurdKind::InvSqrt2);
        CHECK(sin_case(4, 2).num == 1);
        CHECK(sin_case(4, 2).surd == SurdKind::One);
        CHECK(sin_case(4, 4).is_zero());
        CHECK(sin_case(4, 6).num == -1);
        CHECK(sin_case(4, 6).surd == SurdKind::One);
    }
    SUBCASE("third-pi table") {
        CHECK(sin_case(3, 1).surd == SurdKind::Sqrt3Over2);
        CHECK(sin_case(3, 3).is_zero());
        CHECK(sin_case(3, 4).num == -1);
        CHECK(sin_case(3, 4).surd == SurdKind::Sqrt3Over2);
    }
    SUBCASE("sixth-pi table") {
        CHECK(sin_case(6, 1).num == 1);
        CHECK(sin_case(6, 1).den == 2);
        CHECK(sin_case(6, 3).num == 1);
        CHECK(sin_case(6, 3).den == 1);
        CHECK(sin_case(6, 9).num == -1);
        CHECK(sin_case(6, 9).den == 1);
    }
    SUBCASE("periodicity, including negative indices") {
        for (int d : {4, 3, 6}) {
            const long period = 2L * d;
            for (long n = 0; n < period; ++n) {
                CHECK(sin_case(d, n).num == sin_case(d, n + 3 * period).num);
                CHECK(sin_case(d, n - period).num == sin_case(d, n).num);
            }
        }
    }
    SUBCASE("unsupported denominators") {
        CHECK_THROWS_AS(sin_case_table(5), std::invalid_argument);
    }
}

TEST_CASE("sin case values track the recurrence for a hundred multiples") {
    const long s = 192;
    const FixedPoint tol(pow2(16), s);
    const FixedPoint half = FixedPoint::from_rational(1, 2, s);
    const FixedPoint inv_sqrt2 = sqrt_int(2, s).div_int(2);
    const FixedPoint sqrt3_half = sqrt_int(3, s).div_int(2);

    struct Row {
        int den;
        FixedPoint sin_t;
        FixedPoint cos_t;
    };
    const Row rows[] = {
        {4, inv_sqrt2, inv_sqrt2},
        {3, sqrt3_half, half},
        {6, half, sqrt3_half},
    };
    for (const Row& r : rows) {
        const ThetaFrame frame{r.sin_t, r.cos_t};
        const std::vector<FixedPoint> sins = sin_multiple_recurrence(frame, 100);
        for (long n = 1; n <= 100; ++n) {
            CAPTURE(r.den);
            CAPTURE(n);
            CHECK((sins[n - 1] - sin_case(r.den, n).to_fixed(s)).abs() <= tol);
        }
    }
}

TEST_CASE("regrouping the generator reproduces every derived series") {
    const FixedPoint cap(pow2(8), 128);
    for (ThetaChoice choice :
         {ThetaChoice::PiOver4, ThetaChoice::PiOver3, ThetaChoice::PiOver6}) {
        const RegroupResult r = regroup_check(choice, 20, kCtx);
        CHECK(r.ok);
        CHECK(r.max_deviation <= cap);
    }
    CHECK_THROWS_AS(regroup_check(ThetaChoice::PiOver4, 0, kCtx), std::invalid_argument);
}

TEST_CASE("reference pi is correct and self-consistent") {
    const SeriesEvaluation e = reference_pi_eval(kCtx);
    CHECK(e.converged);
    CHECK(e.value.to_decimal_string(10) == "3.1415926535");
    CHECK(FixedPoint::zero(128) < e.tail_bound);

    const FixedPoint at64 = reference_pi(PrecisionContext(64));
    CHECK((at64 - e.value.rescaled(64)).abs() <= FixedPoint(pow2(17), 64));

    const FixedPoint pi_sqrt3 = mul(e.value, sqrt_int(3, 128));
    CHECK(pi_sqrt3.to_decimal_string(10) == "5.4413980927");
}

TEST_CASE("spec json round trips with deterministic field order") {
    const SeriesSpec& p4 = builtin_spec("PI_BASE4");
    const std::string text = p4.to_json();
    CHECK(text ==
          "{\"name\":\"PI_BASE4\",\"prefactor\":[1,1],\"sign_alternates\":true,"
          "\"ratio\":[1,4],\"period\":4,\"terms\":[[2,1],[2,2],[1,3]],\"target\":\"PI\"}");

    for (const SeriesSpec& s : builtin_specs()) {
        const SeriesSpec back = SeriesSpec::from_json(s.to_json());
        CHECK(back.name == s.name);
        CHECK(back.prefactor_num == s.prefactor_num);
        CHECK(back.prefactor_den == s.prefactor_den);
        CHECK(back.sign_alternates == s.sign_alternates);
        CHECK(back.ratio_num == s.ratio_num);
        CHECK(back.ratio_den == s.ratio_den);
        CHECK(back.period == s.period);
        REQUIRE(back.terms.size() == s.terms.size());
        for (size_t i = 0; i < s.terms.size(); ++i) {
            CHECK(back.terms[i].numerator == s.terms[i].numerator);
            CHECK(back.terms[i].offset == s.terms[i].offset);
        }
        CHECK(back.target == s.target);
    }
}

TEST_CASE("spec json parsing rejects malformed documents") {
    CHECK_THROWS_AS(SeriesSpec::from_json("nope"), std::invalid_argument);
    CHECK_THROWS_AS(SeriesSpec::from_json("{\"name\":\"X\"}"), std::invalid_argument);
    CHECK_THROWS_AS(
        SeriesSpec::from_json(
            "{\"name\":\"X\",\"prefactor\":3,\"sign_alternates\":true,\"ratio\":[1,4],"
            "\"period\":4,\"terms\":[[2,1]],\"target\":\"PI\"}"),
        std::invalid_argument);
    CHECK_THROWS_AS(
        SeriesSpec::from_json(
            "{\"name\":\"X\",\"prefactor\":[1,1],\"sign_alternates\":true,\"ratio\":[1,4],"
            "\"period\":4,\"terms\":[[2,1]],\"target\":\"TAU\"}"),
        std::invalid_argument);
    // parses but fails validation: ratio >= 1
    CHECK_THROWS_AS(
        SeriesSpec::from_json(
            "{\"name\":\"X\",\"prefactor\":[1,1],\"sign_alternates\":true,\"ratio\":[5,4],"
            "\"period\":4,\"terms\":[[2,1]],\"target\":\"PI\"}"),
        std::invalid_argument);
}
