#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "semiabel/torsion.hpp"

using namespace semiabel;

TEST_CASE("find_d on the classification curves") {
    auto d = find_d(FamilyCurve::make(Int(-4), Int(-1)));
    REQUIRE(d.has_value());
    CHECK(*d == 1);

    d = find_d(FamilyCurve::make(Int(4), Int(1)));
    REQUIRE(d.has_value());
    CHECK(*d == -1);

    CHECK_FALSE(find_d(FamilyCurve::make(Int(0), Int(1))).has_value());
    CHECK_FALSE(find_d(FamilyCurve::make(Int(2), Int(1))).has_value());
}

TEST_CASE("find_d recovers a planted witness") {
    std::mt19937_64 rng(505);
    int done = 0;
    while (done < 500) {
        Int m(static_cast<long>(rng() % 201) - 100);
        Int d(2 * static_cast<long>(rng() % 20) + 1);
        if (rng() & 1) d = -d;
        Int n = -d * (4 * m + 1 + 16 * d);
        if (family_reject_reason(m, n)) continue;
        auto got = find_d(FamilyCurve::make(m, n));
        REQUIRE(got.has_value());
        CHECK(*got == d);
        ++done;
    }
}

TEST_CASE("witness existence matches all-even Kodaira indices") {
    // the full equivalence; swept again over the pinned box by the acceptance run
    std::mt19937_64 rng(606);
    int done = 0;
    while (done < 3000) {
        Int m(static_cast<long>(rng() % 201) - 100);
        Int n(static_cast<long>(rng() % 201) - 100);
        if (family_reject_reason(m, n)) continue;
        FamilyCurve c = FamilyCurve::make(m, n);
        bool even = all_even_kodaira(c);
        auto d = find_d(c);
        CHECK(even == d.has_value());
        // spot-check against the definition via the actual indices
        bool direct = true;
        for (const auto& [p, e] : factor(c.disc()).factors)
            if (kodaira(c, p) % 2 != 0) direct = false;
        CHECK(even == direct);
        ++done;
    }
}

TEST_CASE("discriminant square decomposition at a witness") {
    std::mt19937_64 rng(707);
    int done = 0;
    while (done < 500) {
        Int m(static_cast<long>(rng() % 401) - 200);
        Int d(2 * static_cast<long>(rng() % 30) + 1);
        if (rng() & 1) d = -d;
        Int n = -d * (4 * m + 1 + 16 * d);
        if (family_reject_reason(m, n)) continue;
        FamilyCurve c = FamilyCurve::make(m, n);
        Int root = d * (4 * m + 1 + 16 * d) * (4 * m + 1 + 32 * d);
        CHECK(c.disc() == root * root);
        ++done;
    }
}

TEST_CASE("torsion profile of the classification curves") {
    TorsionProfile t = torsion_profile(FamilyCurve::make(Int(-4), Int(-1)));
    REQUIRE(t.d.has_value());
    CHECK(*t.d == 1);
    CHECK(*t.Q == CurvePoint::affine(Rat(4), Rat(-2)));
    CHECK(*t.PQ == CurvePoint::affine(make_rat(Int(-1), Int(4)), make_rat(Int(1), Int(8))));
    CHECK_FALSE(t.R.has_value());

    t = torsion_profile(FamilyCurve::make(Int(2), Int(1)));
    CHECK_FALSE(t.d.has_value());
    CHECK_FALSE(t.Q.has_value());
    REQUIRE(t.R.has_value());
    CHECK(*t.R == CurvePoint::affine(Rat(-1), Rat(0)));

    t = torsion_profile(FamilyCurve::make(Int(-2), Int(1)));
    REQUIRE(t.R.has_value());
    CHECK(*t.R == CurvePoint::affine(Rat(1), Rat(0)));

    t = torsion_profile(FamilyCurve::make(Int(0), Int(3)));
    CHECK_FALSE(t.d.has_value());
    CHECK_FALSE(t.R.has_value());
}

TEST_CASE("order-four points double to the origin") {
    std::mt19937_64 rng(808);
    int found = 0, done = 0;
    while (done < 4000) {
        Int m(static_cast<long>(rng() % 201) - 100);
        Int n(static_cast<long>(rng() % 201) - 100);
        if (family_reject_reason(m, n)) continue;
        FamilyCurve c = FamilyCurve::make(m, n);
        auto R = find_order_four(c);
        if (R) {
            WeierstrassEquation e = c.equation();
            CHECK(order_of(e, *R) == 4);
            CHECK(add(e, *R, *R) == CurvePoint::affine(Rat(0), Rat(0)));
            ++found;
        }
        ++done;
    }
    CHECK(found > 0);
}

TEST_CASE("P + Q computed by the group law matches the printed coordinates") {
    std::mt19937_64 rng(909);
    int done = 0;
    while (done < 300) {
        Int m(static_cast<long>(rng() % 101) - 50);
        Int d(2 * static_cast<long>(rng() % 15) + 1);
        if (rng() & 1) d = -d;
        Int n = -d * (4 * m + 1 + 16 * d);
        if (family_reject_reason(m, n)) continue;
        FamilyCurve c = FamilyCurve::make(m, n);
        TorsionProfile t = torsion_profile(c);
        REQUIRE(t.d.has_value());
        CHECK(add(c.equation(), t.P, *t.Q) == *t.PQ);
        ++done;
    }
}

TEST_CASE("velu quotient closed form") {
    QuotientResult q = velu_quotient(FamilyCurve::make(Int(-4), Int(-1)), Int(1));
    CHECK(q.target.m() == 2);
    CHECK(q.target.n() == 1);

    q = velu_quotient(FamilyCurve::make(Int(4), Int(1)), Int(-1));
    CHECK(q.target.m() == -2);
    CHECK(q.target.n() == 1);

    q = velu_quotient(FamilyCurve::make(Int(0), Int(-17)), Int(1));
    CHECK(q.target.m() == 6);
    CHECK(q.target.n() == 1);

    CHECK_THROWS_AS(velu_quotient(FamilyCurve::make(Int(-4), Int(-1)), Int(2)),
                    std::invalid_argument);
}

TEST_CASE("intermediate quotient equation normalizes to the closed form") {
    std::mt19937_64 rng(1010);
    int done = 0;
    while (done < 1000) {
        Int m(static_cast<long>(rng() % 201) - 100);
        Int d(2 * static_cast<long>(rng() % 25) + 1);
        if (rng() & 1) d = -d;
        WeierstrassEquation got = quotient_via_intermediate(m, d);
        Int mm = m + 6 * d, nn = d * d;
        WeierstrassEquation want{Rat(1), Rat(mm), Rat(0), Rat(nn), Rat(0)};
        CHECK(got == want);
        ++done;
    }
}

TEST_CASE("translating Q to the origin") {
    FamilyCurve im = translate_to_Q(FamilyCurve::make(Int(-4), Int(-1)), Int(1));
    CHECK(im.m() == 8);
    CHECK(im.n() == 17);

    im = translate_to_Q(FamilyCurve::make(Int(4), Int(1)), Int(-1));
    CHECK(im.m() == -8);
    CHECK(im.n() == 15);
}

TEST_CASE("translation matches the coordinate change and is an involution") {
    std::mt19937_64 rng(1111);
    int done = 0;
    while (done < 500) {
        Int m(static_cast<long>(rng() % 201) - 100);
        Int d(2 * static_cast<long>(rng() % 20) + 1);
        if (rng() & 1) d = -d;
        Int n = -d * (4 * m + 1 + 16 * d);
        if (family_reject_reason(m, n)) continue;
        FamilyCurve c = FamilyCurve::make(m, n);
        FamilyCurve im = translate_to_Q(c, d);
        // the same move realized as an explicit change of coordinates
        WeierstrassEquation moved =
            apply_change(c.equation(), CoordinateChange{Rat(1), Rat(4 * d), Rat(0), Rat(-2 * d)});
        CHECK(moved == im.equation());
        // translating by -d on the image restores (m, n)
        FamilyCurve back = translate_to_Q(im, -d);
        CHECK(back.m() == c.m());
        CHECK(back.n() == c.n());
        // both curves share the witness structure: d <-> -d
        CHECK(im.disc() == c.disc());
        ++done;
    }
}

TEST_CASE("component class of P + Q and freeness of the mu_2 action") {
    FamilyCurve c = FamilyCurve::make(Int(-4), Int(-1));
    // (4m+1+16d)(4m+1+32d) = 1 * 17 at d = 1
    CHECK_FALSE(pq_component_class_trivial(c, Int(1), Int(17)));
    CHECK(pq_component_class_trivial(c, Int(1), Int(3)));
    CHECK(mu2_action_free(c, Int(1), Int(17)));

    // a curve whose witness is divisible by 3
    Int m(0), d(3), n = -d * (4 * m + 1 + 16 * d);
    FamilyCurve c3 = FamilyCurve::make(m, n);
    CHECK_FALSE(mu2_action_free(c3, d, Int(3)));
    CHECK(mu2_action_free(c3, d, Int(7)));
}

TEST_CASE("quotient targets stay in the family and P + Q dies") {
    std::mt19937_64 rng(1212);
    int done = 0;
    while (done < 500) {
        Int m(static_cast<long>(rng() % 201) - 100);
        Int d(2 * static_cast<long>(rng() % 20) + 1);
        if (rng() & 1) d = -d;
        Int n = -d * (4 * m + 1 + 16 * d);
        if (family_reject_reason(m, n)) continue;
        FamilyCurve c = FamilyCurve::make(m, n);
        QuotientResult q = velu_quotient(c, d);
        // n' = d^2 odd, and validity of the target pair is enforced by make()
        CHECK(q.target.n() == d * d);
        CHECK(q.target.m() == m + 6 * d);
        ++done;
    }
}
