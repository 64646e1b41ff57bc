#pragma once

#include "ecp/numtheory.hpp"
#include "ecp/reptheory.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ecp {

// Annotated order-2 character of D with the Q_ell square class of its fixed field.
struct QuadAnnotation {
    std::string label;
    CharacterRep chi;  // on D
    SquareClass cls;
};

// 2-dim irreducible of an S3-type quotient of D, cut out by a Kummer generator.
struct CubicAnnotation {
    std::string label;
    CharacterRep chi;  // on D
    CubeClassMu3 cls;
};

// Per-curve override carried by supplied records (non-Q base fields, wild primes).
struct CurveOverride {
    std::optional<std::string> reduction;  // good, split, nonsplit, pmr, pga, pgna, pg
    std::optional<int> e;
    std::optional<std::string> pg_kind;  // PGA or PGNA
    std::optional<Rat> minus_c6;         // PMR square-class representative
    std::optional<Rat> disc_min;         // PGNA cube-class source
    std::optional<int> vj;
    std::optional<long> a_v;
    std::optional<int> conductor_exponent;
};

struct LocalGaloisDatum {
    std::string label;
    long ell = 0;
    int f_base = 1;  // residue degree of F_v over Q_ell
    Int q;
    GroupPtr delta;
    GroupPtr D;  // subgroup of delta
    std::vector<int> inertia;  // elements of D (local indices)
    int frobenius = 0;         // element of D (local index)
    int e_v = 1, f_v = 1;
    std::vector<QuadAnnotation> quad;
    std::optional<CubicAnnotation> cubic;
    bool partial = false;
    bool structure_partial = false;  // D and I themselves are placeholders
    std::string partial_reason;
    std::map<int, CurveOverride> overrides;  // keyed by curve index 1 or 2

    bool mu_p_in_Fv(long p) const;
    bool ramified() const { return e_v > 1; }
    // k with d in Frob^k I
    int frobenius_exponent(int d) const;
    std::string str() const;
};

// Builds and validates a datum; D and I are given by generators in delta.
LocalGaloisDatum make_local_datum(const GroupPtr& delta, long ell, int f_base, const std::vector<int>& D_gens,
                                  const std::vector<int>& I_gens, int frobenius_in_delta);
// Checks the annotation set; sets partial when a ramified quadratic character lacks one.
void validate_annotations(LocalGaloisDatum& d);

// Character of G_{F_v} in canonical form: unramified part (value at Frobenius as
// exp(2 pi i * unr)), ramified quadratic part as a Q_ell class modulo unramified
// classes, and an optional theta_3 factor.
struct LocalCharSpec {
    long ell = 0;
    int f_base = 1;
    Rat unr = 0;                        // in [0,1)
    std::optional<SquareClass> ram;     // ramified class representative
    std::optional<CubeClassMu3> theta3;
    std::string label = "1";

    static LocalCharSpec one(long ell, int f_base);
    static LocalCharSpec kappa(long ell, int f_base);
    static LocalCharSpec omega_pow(long ell, int f_base, long p, long j);
    static LocalCharSpec theta_quad(const SquareClass& d, int f_base);
    static LocalCharSpec theta3_of(const CubeClassMu3& c, int f_base);

    LocalCharSpec operator*(const LocalCharSpec& o) const;
    LocalCharSpec inverse() const;
    bool unramified() const { return !ram && !theta3; }
    // order of the unramified part
    long unr_order() const;
    bool operator==(const LocalCharSpec& o) const;
};

struct SigmaSpec {
    GroupPtr delta;
    CharacterRep sigma;
    bool self_dual = true;
    bool orthogonal = true;

    long dim() const { return sigma.dim(); }
};

// Validates irreducibility and orthogonality.
SigmaSpec make_sigma(const GroupPtr& delta, const CharacterRep& sigma);
SigmaSpec make_sigma(const GroupPtr& delta, const std::string& name);

// The character of D matching chi, or nullopt when chi does not factor through D.
std::optional<CharacterRep> match_character(const LocalGaloisDatum& d, const LocalCharSpec& chi);
long multiplicity(const SigmaSpec& sigma, const LocalGaloisDatum& d, const LocalCharSpec& chi);
// restriction multiplicity for an arbitrary class function on delta (used by additivity tests)
long multiplicity(const CharacterRep& sigma, const LocalGaloisDatum& d, const LocalCharSpec& chi);
int det_sigma_minus_one(const SigmaSpec& sigma, const LocalGaloisDatum& d);
int det_sigma_minus_one(const CharacterRep& sigma, const LocalGaloisDatum& d);
// det(sigma|D) evaluated at the Frobenius element; must be +-1
int det_sigma_frobenius(const SigmaSpec& sigma, const LocalGaloisDatum& d);
// sigma restricted to inertia is trivial
bool sigma_unramified(const SigmaSpec& sigma, const LocalGaloisDatum& d);

// K = Q(mu_3, m^(1/3)) over Q, Delta = S3 = Dihedral(6). f_base > 1 models an
// unramified base of that residue degree (used for Q(zeta_19)^+).
LocalGaloisDatum s3_kummer_local_datum(long m, long ell, long p, int f_base = 1);
bool cube_free(long m);

// Local-datum record; "ell" (or "p") is the residue characteristic.
LocalGaloisDatum parse_local_datum(const nlohmann::json& rec, const GroupPtr& delta);
CurveOverride parse_curve_override(const nlohmann::json& rec);
// character of D from "ker:<i,j>", "irr:<k>" or a name of delta restricted to D
CharacterRep character_of_D(const LocalGaloisDatum& d, const std::string& spec);

}  // namespace ecp
