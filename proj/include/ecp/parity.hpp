#pragma once

#include "ecp/congruence.hpp"
#include "ecp/curve.hpp"
#include "ecp/galoislocal.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ecp {

enum class PairRow {
    Equal,
    GoodSplit,
    GoodNonsplit,
    SplitNonsplit,
    PmrPmr,
    PmrPga,
    SplitPga3,
    NonsplitPga3,
    SplitPgna3,
    NonsplitPgna3,
    PmrPgna3,
};

std::string to_string(PairRow r);
const std::vector<PairRow>& all_rows();

struct ImpossiblePair : MathError {
    std::string rule;  // which pairing rule excludes it
    ImpossiblePair(const std::string& why, std::string r) : MathError(why + " [" + r + "]"), rule(std::move(r)) {}
};

struct Correction {
    int side = 1;  // 1 = E1 side, 2 = E2 side
    LocalCharSpec chi;
    long mult = 0;
};

struct PrimePairClass {
    std::string place;
    long ell = 0;
    Int q;
    int f_base = 1;
    ReductionClass c1, c2;
    PairRow row = PairRow::Equal;
    bool swapped = false;  // E1 occupies the row's second role
    bool mu_p_in_Fv = false;
    std::optional<bool> theta_equal;
    std::vector<std::string> flags;
    std::vector<Correction> corrections;
};

// Row assignment; throws ImpossiblePair for pairs no congruence can produce.
PrimePairClass classify_pair(const ReductionClass& c1, const ReductionClass& c2, long p);
// Fills correction multiplicities and returns their sum mod 2.
int delta_contribution(PrimePairClass& pc, const SigmaSpec& sigma, const LocalGaloisDatum& d);

// Absolute W(E/F_v, sigma_v); nullopt when not determined.
std::optional<int> absolute_local_root_number(const ReductionClass& c, const SigmaSpec& sigma,
                                              const LocalGaloisDatum& d);
int archimedean_root_number(const SigmaSpec& sigma);

enum class RatioMethod { Trivial, Absolute, CaseFormula };
std::string to_string(RatioMethod m);

struct RootRatio {
    int ratio = 1;
    RatioMethod method = RatioMethod::Trivial;
    std::optional<int> W1, W2;
};

RootRatio local_root_ratio(const PrimePairClass& pc, const SigmaSpec& sigma, const LocalGaloisDatum& d, long p);

// ---------------------------------------------------------------------------
// Global data

struct FieldData {
    std::string name;
    GroupPtr delta;
    int base_degree = 1;
    int real_places = 1;
    std::vector<long> ramified;          // rational primes under places ramified in K/F
    std::vector<LocalGaloisDatum> data;  // over a non-rational base: one entry per place
    std::map<long, int> places_above;    // completeness check for non-rational bases
    std::map<long, int> residue_degree;  // residue degree of places of F above ell
    std::optional<long> kummer_m;
    std::string provenance;

    bool base_is_Q() const { return base_degree == 1; }
    // data at a rational prime (base Q); generated for Kummer fields
    std::optional<LocalGaloisDatum> datum_at(long ell, long p) const;
    std::vector<LocalGaloisDatum> places_over(long ell, long p) const;
    bool ramified_at(long ell) const;
};

FieldData s3_kummer_field(long m);
FieldData parse_field(const nlohmann::json& j);

struct Sigma0Entry {
    std::string place;
    long ell = 0;
    std::vector<std::string> reasons;
};

struct PrimeReport {
    PrimePairClass pair;
    bool in_sigma0 = false;
    bool sigma_ramified = false;
    int delta_contribution = 0;
    RootRatio root;
};

struct Assumption {
    std::string name;
    std::string status;  // verified, assumed, declared, failed
    std::string detail;
};

struct AggregateSets {
    std::vector<std::string> S1, S2, N1, N2, W, X, Y3, Z3;
};

struct ParityReport {
    long p = 0;
    std::string field;
    std::string sigma;
    std::vector<std::string> sigma_places;  // Sigma
    std::vector<Sigma0Entry> sigma0;
    std::vector<PrimeReport> primes;
    int delta_side_parity = 0;
    int root_side_ratio = 1;
    int thm1_parity = 0;  // bookkeeping path
    long m1 = 0, m2 = 0, T = 0;
    int bookkeeping_ratio = 1;
    bool aggregate_consistent = true;
    bool thm4_consistent = true;
    AggregateSets sets;
    std::optional<int> W1, W2;
    std::vector<Assumption> assumptions;
    std::vector<std::string> notes;
};

ReductionClass reduction_at(const WeierstrassCurve& E, const LocalGaloisDatum* d, int which, long ell, long p,
                            int f_base);

std::pair<std::vector<std::string>, std::vector<Sigma0Entry>> compute_sigma_sets(const WeierstrassCurve& E1,
                                                                                 const WeierstrassCurve& E2,
                                                                                 const FieldData& field, long p);

ParityReport global_report(const WeierstrassCurve& E1, const WeierstrassCurve& E2, const SigmaSpec& sigma,
                           const FieldData& field, long p, Exec exec = Exec::Parallel);

// ---------------------------------------------------------------------------
// Localized identity sweep

struct SweepFailure {
    std::string description;
};

struct SweepResult {
    long cases = 0;
    long impossible_skipped = 0;
    long failures = 0;
    long undetermined = 0;
    long absolute_checked = 0;  // cases where both root numbers were computed independently
    std::map<PairRow, long> row_coverage;
    std::vector<SweepFailure> examples;  // first few failures

    bool all_rows_covered() const;
};

struct SweepOptions {
    std::vector<long> primes_p{3, 5, 7};
    Exec exec = Exec::Parallel;
    bool include_stability = true;
};

SweepResult localized_sweep(const SweepOptions& opt = {});

}  // namespace ecp
