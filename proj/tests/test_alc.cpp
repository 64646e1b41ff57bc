#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ecp/alc.hpp"

using namespace ecp;

namespace {
const auto E11 = WeierstrassCurve::from_longs(0, -1, 1, -7820, -263580);
const auto E737 = WeierstrassCurve::from_longs(0, -1, 1, 406, -686);
const auto E52 = WeierstrassCurve::from_longs(0, 0, 0, 1, -10);
const auto E364 = WeierstrassCurve::from_longs(0, 0, 0, -584, 5444);
const auto E56 = WeierstrassCurve::from_longs(0, -1, 0, 0, -4);
const auto E392 = WeierstrassCurve::from_longs(0, -1, 0, -16, 29);
}  // namespace

TEST_CASE("delta for the trivial twist") {
    // split multiplicative at 11 with 11 = 1 mod 5
    CHECK(delta_trivial(E11, 11, 5) == 1);
    CHECK(delta_trivial(E11, 11, 7) == 0);
    // nonsplit at 13 with 13 = -1 mod 7
    CHECK(delta_trivial(E52, 13, 7) == 1);
    CHECK(delta_trivial(E52, 2, 5) == 0);
    CHECK(delta_trivial(E392, 7, 3) == 0);
    // good: #E(F_ell) = 1 - a + ell
    for (long ell : {3L, 5L, 7L, 13L, 17L, 19L}) {
        long n = count_points_naive(E11, ell);
        for (long p : {3L, 5L, 7L}) {
            if (p == ell) continue;
            long expect = n % p != 0 ? 0 : (mod(ell, p) == 1 ? 2 : 1);
            CHECK(delta_trivial(E11, ell, p) == expect);
        }
    }
    CHECK_THROWS_AS(delta_trivial(E11, 3, 3), MathError);
}

TEST_CASE("a curve against itself") {
    for (long ell : {2L, 7L}) {
        auto r = alc_parity(E56, E56, ell, 3);
        CHECK(r.delta1 == r.delta2);
        CHECK(r.local_root_ratio == 1);
        CHECK(r.consistent);
    }
}

TEST_CASE("good against multiplicative at 7, p = 5") {
    auto r = alc_parity(E52, E364, 7, 5);
    long n = count_points_naive(E52, 7);
    CHECK(r.parity == (n % 5 == 0 ? 1 : 0));
    CHECK(r.row == PairRow::GoodSplit);
    CHECK(r.consistent);
    CHECK(r.engine_agrees);
}

TEST_CASE("11.a2 against 737.a1 at 67") {
    auto r = alc_parity(E11, E737, 67, 3);
    CHECK(r.r1 == Reduction::Good);
    CHECK(r.r2 == Reduction::SplitMult);
    CHECK(r.consistent);
    CHECK(r.engine_agrees);
}

TEST_CASE("all bad primes of the example pairs") {
    struct P {
        WeierstrassCurve a, b;
        long p;
        size_t n;
    };
    for (auto& [a, b, p, n] : {P{E11, E737, 3, 2}, P{E52, E364, 5, 3}, P{E56, E392, 3, 2}}) {
        auto recs = alc_report(a, b, p);
        CHECK(recs.size() == n);
        for (auto& r : recs) {
            CAPTURE(r.ell);
            CHECK(r.consistent);
            CHECK(r.engine_agrees);
        }
    }
}
