#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ecp/parity.hpp"

#include <fstream>

using namespace ecp;

namespace {

FieldData field(const std::string& name) {
    std::ifstream in(std::string(ECP_TEST_FIXTURES) + "/" + name);
    return parse_field(nlohmann::json::parse(in));
}

const auto E11 = WeierstrassCurve::from_longs(0, -1, 1, -7820, -263580);
const auto E737 = WeierstrassCurve::from_longs(0, -1, 1, 406, -686);
const auto E52 = WeierstrassCurve::from_longs(0, 0, 0, 1, -10);
const auto E364 = WeierstrassCurve::from_longs(0, 0, 0, -584, 5444);
const auto E56 = WeierstrassCurve::from_longs(0, -1, 0, 0, -4);
const auto E392 = WeierstrassCurve::from_longs(0, -1, 0, -16, 29);

ReductionClass cls(Reduction r, long ell, long p, int vj = 0, int e = 0) {
    ReductionClass c;
    c.reduction = r;
    c.ell = ell;
    c.q = ell;
    c.mu_p_in_Fv = mod(ell, p) == 1;
    c.vj = vj;
    c.e = e;
    if (r == Reduction::AdditivePMR) c.theta = square_class(Rat(ell), Place::finite(ell));
    if (r == Reduction::AdditivePGNA || r == Reduction::AdditivePGA) c.disc_min = Int(ell) * ell * ell * ell;
    return c;
}

const PrimeReport& at(const ParityReport& r, const std::string& place) {
    for (auto& pr : r.primes)
        if (pr.pair.place == place) return pr;
    throw std::runtime_error("no place " + place);
}

}  // namespace

TEST_CASE("pair rows") {
    const long p = 3;
    CHECK(classify_pair(cls(Reduction::Good, 7, p), cls(Reduction::SplitMult, 7, p, -3), p).row == PairRow::GoodSplit);
    auto sw = classify_pair(cls(Reduction::SplitMult, 7, p, -3), cls(Reduction::Good, 7, p), p);
    CHECK(sw.row == PairRow::GoodSplit);
    CHECK(sw.swapped);
    CHECK(classify_pair(cls(Reduction::SplitMult, 5, p, -3), cls(Reduction::NonsplitMult, 5, p, -3), p).row ==
          PairRow::SplitNonsplit);
    CHECK(classify_pair(cls(Reduction::SplitMult, 7, p, -1), cls(Reduction::AdditivePGA, 7, p, 0, 3), p).row ==
          PairRow::SplitPga3);
    CHECK(classify_pair(cls(Reduction::SplitMult, 5, p, -1), cls(Reduction::AdditivePGNA, 5, p, 0, 3), p).row ==
          PairRow::SplitPgna3);
    CHECK(classify_pair(cls(Reduction::Good, 7, p), cls(Reduction::Good, 7, p), p).row == PairRow::Equal);
}

TEST_CASE("excluded pairs") {
    const long p = 3;
    // unramified against ramified mod-p image
    CHECK_THROWS_AS(classify_pair(cls(Reduction::Good, 7, p), cls(Reduction::SplitMult, 7, p, -1), p), ImpossiblePair);
    // abelian against non-abelian potentially good
    CHECK_THROWS_AS(classify_pair(cls(Reduction::AdditivePGA, 7, p, 0, 3), cls(Reduction::AdditivePGNA, 7, p, 0, 4), p),
                    ImpossiblePair);
    // split against nonsplit needs q = -1 mod p
    CHECK_THROWS_AS(classify_pair(cls(Reduction::SplitMult, 7, p, -3), cls(Reduction::NonsplitMult, 7, p, -3), p),
                    ImpossiblePair);
    CHECK_THROWS_AS(classify_pair(cls(Reduction::AdditivePGA, 7, 5, 0, 2), cls(Reduction::AdditivePGA, 7, 5, 0, 3), 5),
                    ImpossiblePair);
    CHECK_THROWS_AS(classify_pair(cls(Reduction::Good, 3, p), cls(Reduction::Good, 3, p), p), MathError);
}

TEST_CASE("local identity on single configurations") {
    auto S3 = FiniteGroup::dihedral(6);
    SigmaSpec s = make_sigma(S3, "2dim");
    auto d = make_local_datum(S3, 7, 1, {}, {}, 0);
    auto pc = classify_pair(cls(Reduction::SplitMult, 7, 3, -1), cls(Reduction::AdditivePGA, 7, 3, 0, 3), 3);
    CHECK(delta_contribution(pc, s, d) == 0);
    CHECK(pc.corrections.at(0).mult == 2);
    auto rr = local_root_ratio(pc, s, d, 3);
    CHECK(rr.ratio == 1);
    CHECK(rr.method == RatioMethod::Absolute);
    auto refl = make_local_datum(S3, 7, 1, {3}, {}, 3);
    auto pc2 = classify_pair(cls(Reduction::Good, 7, 3), cls(Reduction::SplitMult, 7, 3, -3), 3);
    CHECK(delta_contribution(pc2, s, refl) == 1);
    CHECK(local_root_ratio(pc2, s, refl, 3).ratio == -1);
    CHECK(archimedean_root_number(s) == 1);
}

TEST_CASE("D5 example") {
    auto F = field("d5_field.json");
    SigmaSpec s = make_sigma(F.delta, "2dim-a");
    auto R = global_report(E11, E737, s, F, 3);
    CHECK(R.root_side_ratio == 1);
    CHECK(R.delta_side_parity == 0);
    CHECK(R.thm4_consistent);
    REQUIRE(R.W2);
    CHECK(*R.W2 == 1);
    CHECK(*R.W1 == 1);
    CHECK(at(R, "67").pair.row == PairRow::GoodSplit);
    CHECK(at(R, "67").in_sigma0);
}

TEST_CASE("S3 example") {
    auto F = field("s3_field.json");
    SigmaSpec s = make_sigma(F.delta, "2dim");
    auto R = global_report(E52, E364, s, F, 5);
    CHECK(R.root_side_ratio == -1);
    CHECK(R.delta_side_parity == 1);
    CHECK(R.thm1_parity == 1);
    CHECK(R.thm4_consistent);
    REQUIRE(R.W1);
    REQUIRE(R.W2);
    CHECK(*R.W1 == 1);
    CHECK(*R.W2 == -1);
    std::vector<std::string> s0;
    for (auto& e : R.sigma0) s0.push_back(e.place);
    CHECK(s0 == std::vector<std::string>{"2", "7"});
    CHECK(at(R, "7").delta_contribution == 1);
    CHECK(R.m2 == 1);
    CHECK(R.sets.S2 == std::vector<std::string>{"7"});
    auto serial = global_report(E52, E364, s, F, 5, Exec::Serial);
    CHECK(serial.root_side_ratio == R.root_side_ratio);
    CHECK(serial.delta_side_parity == R.delta_side_parity);
}

TEST_CASE("base change to the real subfield of Q(zeta_19)") {
    for (long m : {2L, 7L}) {
        auto F = field("zeta19_m" + std::to_string(m) + ".json");
        SigmaSpec s = make_sigma(F.delta, "2dim");
        auto R = global_report(E56, E392, s, F, 3);
        const long expect = m == 2 ? 2 : 0;
        for (const char* v : {"7a", "7b", "7c"}) {
            auto& pr = at(R, v);
            CHECK(pr.pair.row == PairRow::SplitPga3);
            REQUIRE(pr.pair.corrections.size() == 1);
            CHECK(pr.pair.corrections[0].mult == expect);
        }
        CHECK(R.delta_side_parity == 0);
        CHECK(R.root_side_ratio == 1);
        CHECK(R.thm4_consistent);
    }
}

TEST_CASE("Kummer fields over Q") {
    auto F = s3_kummer_field(2);
    SigmaSpec s = make_sigma(F.delta, "2dim");
    auto R = global_report(E56, E392, s, F, 3);
    CHECK(R.thm4_consistent);
    // 2 is not a cube mod 7, so sigma has no invariants at 7
    CHECK(at(R, "7").pair.corrections.at(0).mult == 0);
}

TEST_CASE("missing data is an error, not a guess") {
    auto F = field("s3_field.json");
    F.data.erase(std::remove_if(F.data.begin(), F.data.end(), [](const LocalGaloisDatum& d) { return d.ell == 7; }),
                 F.data.end());
    SigmaSpec s = make_sigma(F.delta, "2dim");
    CHECK_THROWS_AS(global_report(E52, E364, s, F, 5), MathError);
}

TEST_CASE("hypotheses are enforced") {
    auto F = field("s3_field.json");
    SigmaSpec s = make_sigma(F.delta, "2dim");
    // 11 divides the conductor of the first curve
    CHECK_THROWS_AS(global_report(E11, E737, s, F, 11), MathError);
}

TEST_CASE("sweep for one prime, serial against parallel") {
    SweepOptions o;
    o.primes_p = {7};
    o.exec = Exec::Serial;
    auto a = localized_sweep(o);
    o.exec = Exec::Parallel;
    auto b = localized_sweep(o);
    CHECK(a.cases > 0);
    CHECK(a.failures == 0);
    CHECK(a.undetermined == 0);
    CHECK(a.cases == b.cases);
    CHECK(a.row_coverage == b.row_coverage);
    CHECK(a.row_coverage[PairRow::GoodSplit] > 0);
    CHECK(a.row_coverage[PairRow::PmrPga] > 0);
}
