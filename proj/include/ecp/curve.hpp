#pragma once

#include "ecp/numtheory.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ecp {

enum class Exec { Serial, Parallel };

struct Invariants {
    Int b2, b4, b6, b8, c4, c6, disc;
    Rat j;
};

struct WeierstrassCurve {
    // a1, a2, a3, a4, a6
    std::array<Int, 5> a;
    std::string label;

    WeierstrassCurve() = default;
    WeierstrassCurve(std::array<Int, 5> ainvs, std::string lbl = "");
    static WeierstrassCurve from_longs(long a1, long a2, long a3, long a4, long a6, std::string lbl = "");

    Invariants inv() const;
    std::string ainvs_str() const;
    // (r,s,t)-shift followed by the scaling a_i -> u^i a_i; always an integral model of the same curve
    WeierstrassCurve transformed(const Int& u, const Int& r, const Int& s, const Int& t) const;
};

Invariants invariants(const WeierstrassCurve& E);

enum class Reduction { Good, SplitMult, NonsplitMult, AdditivePMR, AdditivePGA, AdditivePGNA, AdditivePG };

std::string to_string(Reduction r);
bool is_multiplicative(Reduction r);
bool is_additive(Reduction r);
bool is_potentially_good_additive(Reduction r);

struct PgOverride {
    int e = 0;
    bool abelian = false;
};

struct LocalReductionData {
    long ell = 0;
    std::string kodaira;
    int f = 0;
    int vdisc_min = 0;
    int vj = 0;
    std::optional<long> a_ell;
    std::optional<SquareClass> minus_c6_class;
    Reduction reduction = Reduction::Good;
    int e = 0;  // 0 when potentially good but unresolved (wild)
    bool pg_override_used = false;
    WeierstrassCurve minimal;  // locally minimal model at ell
    Int disc_min;
};

LocalReductionData tate_local(const WeierstrassCurve& E, long ell);
LocalReductionData tate_local(const WeierstrassCurve& E, long ell, const std::optional<PgOverride>& ov);

// #E(F_ell) via the Legendre sum (odd ell) or direct enumeration (ell = 2); model must be good at ell
long count_points_mod(const WeierstrassCurve& E, long ell);
long count_points_naive(const WeierstrassCurve& E, long ell);
long trace_of_frobenius(const WeierstrassCurve& E, long ell);
// a_ell for every ell in primes; bad primes report nullopt
std::vector<std::optional<long>> trace_table(const WeierstrassCurve& E, const std::vector<long>& primes,
                                             Exec exec = Exec::Parallel);
// trace of Frob^f from a_ell
Int trace_power(long a_ell, long ell, int f);

std::vector<long> bad_primes(const WeierstrassCurve& E);
Int conductor(const WeierstrassCurve& E);

// Refinement over the cyclotomic Z_p-line, base residue degree f_base over Q_ell.
struct ReductionClass {
    Reduction reduction = Reduction::Good;
    long ell = 0;
    Int q;  // residue cardinality of F_v
    int f_base = 1;
    int e = 0;
    bool mu_p_in_Fv = false;
    std::optional<SquareClass> theta;  // PMR: class of -c6
    std::optional<long> a_v;           // good: trace of Frob_v
    int vj = 0;
    int vdisc_min = 0;
    int conductor_exponent = 0;
    bool pg_override_used = false;
    bool wild = false;
    Int disc_min;
};

// strict: unresolved wild potentially good reduction throws "needs override"
ReductionClass classify_reduction(const WeierstrassCurve& E, long ell, long p, int f_base = 1,
                                  const std::optional<PgOverride>& ov = std::nullopt, bool strict = true);
ReductionClass classify_local(const LocalReductionData& d, long p, int f_base = 1, bool strict = true);

}  // namespace ecp
