#include "ecp/parity.hpp"

#include <algorithm>
#include <exception>
#include <set>

namespace ecp {

std::string to_string(PairRow r) {
    switch (r) {
        case PairRow::Equal: return "equal";
        case PairRow::GoodSplit: return "good-split";
        case PairRow::GoodNonsplit: return "good-nonsplit";
        case PairRow::SplitNonsplit: return "split-nonsplit";
        case PairRow::PmrPmr: return "pmr-pmr-distinct";
        case PairRow::PmrPga: return "pmr-pga";
        case PairRow::SplitPga3: return "split-pga-p3";
        case PairRow::NonsplitPga3: return "nonsplit-pga-p3";
        case PairRow::SplitPgna3: return "split-pgna-p3";
        case PairRow::NonsplitPgna3: return "nonsplit-pgna-p3";
        case PairRow::PmrPgna3: return "pmr-pgna-p3";
    }
    return "?";
}

const std::vector<PairRow>& all_rows() {
    static const std::vector<PairRow> rows{PairRow::Equal,        PairRow::GoodSplit,     PairRow::GoodNonsplit,
                                           PairRow::SplitNonsplit, PairRow::PmrPmr,        PairRow::PmrPga,
                                           PairRow::SplitPga3,     PairRow::NonsplitPga3,  PairRow::SplitPgna3,
                                           PairRow::NonsplitPgna3, PairRow::PmrPgna3};
    return rows;
}

std::string to_string(RatioMethod m) {
    switch (m) {
        case RatioMethod::Trivial: return "trivial";
        case RatioMethod::Absolute: return "absolute";
        case RatioMethod::CaseFormula: return "case-formula";
    }
    return "?";
}

namespace {

int kind(Reduction r) {
    switch (r) {
        case Reduction::Good: return 0;
        case Reduction::SplitMult: return 1;
        case Reduction::NonsplitMult: return 2;
        case Reduction::AdditivePMR: return 3;
        case Reduction::AdditivePGA: return 4;
        case Reduction::AdditivePGNA: return 5;
        case Reduction::AdditivePG: return 6;
    }
    return 6;
}

int sign_pow(long k) { return (k % 2 == 0) ? 1 : -1; }

struct Chars {
    long ell;
    int f;
    long p;
    LocalCharSpec one() const { return LocalCharSpec::one(ell, f); }
    LocalCharSpec kappa() const { return LocalCharSpec::kappa(ell, f); }
    LocalCharSpec omega() const { return LocalCharSpec::omega_pow(ell, f, p, 1); }
    LocalCharSpec theta(const ReductionClass& c) const {
        if (!c.theta) throw MathError("PMR class without a -c6 square class");
        return LocalCharSpec::theta_quad(*c.theta, f);
    }
    LocalCharSpec theta3(const ReductionClass& c) const {
        if (c.disc_min == 0) throw MathError("PGNA class without a minimal discriminant");
        return LocalCharSpec::theta3_of(cube_class_mu3(Rat(c.disc_min), ell), f);
    }
};

// p | ord_v(j), or nullopt when the class carries no j-valuation
std::optional<bool> p_divides_vj(const ReductionClass& c, long p) {
    if (c.vj == 0) return std::nullopt;
    return c.vj % p == 0;
}

}  // namespace

PrimePairClass classify_pair(const ReductionClass& c1, const ReductionClass& c2, long p) {
    if (c1.ell != c2.ell || c1.f_base != c2.f_base) throw MathError("classify_pair: classes at different places");
    if (c1.ell == p) throw MathError("classify_pair: v | p is handled by hypothesis (H1)");
    PrimePairClass pc;
    pc.ell = c1.ell;
    pc.q = c1.q;
    pc.f_base = c1.f_base;
    pc.c1 = c1;
    pc.c2 = c2;
    pc.place = std::to_string(c1.ell);
    const long qp = mod(c1.q, p);
    pc.mu_p_in_Fv = qp == 1;
    const bool q_minus_one = qp == p - 1;
    if (p == 3) pc.flags.push_back(pc.mu_p_in_Fv ? "mu3 in F_v" : "mu3 not in F_v");

    int a = kind(c1.reduction), b = kind(c2.reduction);
    const ReductionClass* x = &c1;
    const ReductionClass* y = &c2;
    if (a > b) {
        std::swap(a, b);
        std::swap(x, y);
        pc.swapped = true;
    }
    const int role1 = pc.swapped ? 2 : 1, role2 = pc.swapped ? 1 : 2;
    Chars ch{pc.ell, pc.f_base, p};
    auto add = [&](int role, LocalCharSpec chi) { pc.corrections.push_back(Correction{role, std::move(chi), 0}); };
    auto needs_override = [&]() {
        throw MathError("needs override: potentially good reduction at " + pc.place +
                        " with unresolved inertia type is paired with a potentially multiplicative class");
    };
    auto vj_mismatch = [&](std::optional<bool> u, std::optional<bool> w) { return u && w && *u != *w; };
    auto require = [&](bool cond, const std::string& why, const std::string& rule) {
        if (!cond) throw ImpossiblePair("impossible pair at " + pc.place + ": " + why, rule);
    };
    const auto dx = p_divides_vj(*x, p), dy = p_divides_vj(*y, p);

    if (a == b) {
        pc.row = PairRow::Equal;
        if (a == 1 || a == 2) require(!vj_mismatch(dx, dy), "mod-p inertia images differ", "image");
        if (a == 3) {
            require(!vj_mismatch(dx, dy), "mod-p inertia images differ", "pmr-pmr");
            LocalCharSpec t1 = ch.theta(*x), t2 = ch.theta(*y);
            pc.theta_equal = (t1 == t2);
            if (!*pc.theta_equal) {
                require(q_minus_one && (t1 * t2) == ch.kappa(), "distinct theta needs theta1 = omega theta2 with omega quadratic",
                        "pmr-pmr");
                require(!(dx && !*dx), "distinct theta needs p | ord_v(j)", "pmr-pmr");
                pc.row = PairRow::PmrPmr;
                add(role1, t1);
                add(role2, ch.omega() * t1);
            }
        }
        if ((a == 4 || a == 5) && x->e && y->e) require(x->e == y->e, "inertia orders differ", "pg-pg");
        if (a == 6) pc.flags.push_back("potentially good kind unresolved");
        return pc;
    }
    switch (a) {
        case 0:
            require(b <= 2, "good against additive", "good-additive");
            require(!(dy && !*dy), "good against ramified mod-p image needs p | ord_v(j)", "good-bad");
            if (b == 1) {
                pc.row = PairRow::GoodSplit;
                add(role2, ch.one());
            } else {
                pc.row = PairRow::GoodNonsplit;
                add(role2, ch.kappa());
            }
            return pc;
        case 1:
        case 2: {
            const bool split = a == 1;
            if (b == 2) {
                require(q_minus_one, "split against non-split needs omega_v = kappa_v", "split-nonsplit");
                require(!(dx && !*dx) && !(dy && !*dy), "split against non-split needs p | ord_v(j)", "split-nonsplit");
                pc.row = PairRow::SplitNonsplit;
                add(role1, ch.one());
                add(role2, ch.kappa());
                return pc;
            }
            require(b != 3, "multiplicative against potentially multiplicative additive", "mult-pmr");
            if (b == 6) needs_override();
            require(!(dx && *dx), "additive partner needs a ramified mod-p image", "mult-additive");
            if (b == 4) {
                require(p == 3 && pc.mu_p_in_Fv, "multiplicative against PGA needs p = 3 and mu_3 in F_v", "mult-pga");
                require(y->e == 3, "multiplicative against PGA needs e = 3", "mult-pga");
                pc.row = split ? PairRow::SplitPga3 : PairRow::NonsplitPga3;
                add(role2, split ? ch.one() : ch.kappa());
                return pc;
            }
            require(p == 3 && !pc.mu_p_in_Fv, "multiplicative against PGNA needs p = 3 and mu_3 not in F_v", "mult-pgna");
            require(y->e == 3, "multiplicative against PGNA needs e = 3", "mult-pgna");
            pc.row = split ? PairRow::SplitPgna3 : PairRow::NonsplitPgna3;
            add(role1, split ? ch.kappa() : ch.one());
            add(role2, ch.theta3(*y));
            return pc;
        }
        case 3: {
            if (b == 6) needs_override();
            LocalCharSpec t = ch.theta(*x);
            if (b == 4) {
                const bool e2 = y->e == 2, e6 = p == 3 && pc.mu_p_in_Fv && y->e == 6;
                require(e2 || e6, "PMR against PGA needs e = 2, or p = 3 with mu_3 in F_v and e = 6", "pmr-pga");
                if (e2) require(!(dx && !*dx), "PMR against PGA with e = 2 needs p | ord_v(j)", "pmr-pga");
                if (e6) require(!(dx && *dx), "PMR against PGA with e = 6 needs p not dividing ord_v(j)", "pmr-pga");
                pc.row = PairRow::PmrPga;
                add(role2, t);
                return pc;
            }
            require(p == 3 && !pc.mu_p_in_Fv && y->e == 6,
                    "PMR against PGNA needs p = 3, mu_3 not in F_v and e = 6", "pmr-pgna");
            require(!(dx && *dx), "PMR against PGNA needs p not dividing ord_v(j)", "pmr-pgna");
            pc.row = PairRow::PmrPgna3;
            add(role1, ch.omega() * t);
            add(role2, ch.theta3(*y) * t);
            return pc;
        }
        case 4:
            require(b != 5, "PGA against PGNA", "pga-pgna");
            [[fallthrough]];
        case 5:
            pc.row = PairRow::Equal;
            pc.flags.push_back("potentially good kind unresolved");
            return pc;
    }
    throw MathError("classify_pair: unreachable");
}

int delta_contribution(PrimePairClass& pc, const SigmaSpec& sigma, const LocalGaloisDatum& d) {
    long s = 0;
    for (auto& c : pc.corrections) {
        c.mult = multiplicity(sigma, d, c.chi);
        s += c.mult;
    }
    return static_cast<int>(s % 2);
}

int archimedean_root_number(const SigmaSpec& sigma) { return sign_pow(sigma.dim()); }

std::optional<int> absolute_local_root_number(const ReductionClass& c, const SigmaSpec& sigma,
                                              const LocalGaloisDatum& d) {
    const long dim = sigma.dim();
    int det;
    try {
        det = det_sigma_minus_one(sigma, d);
    } catch (const MathError&) {
        return std::nullopt;
    }
    const Place v = Place::finite(c.ell);
    auto mult = [&](const LocalCharSpec& chi) { return multiplicity(sigma, d, chi); };
    switch (c.reduction) {
        case Reduction::Good: return det;
        case Reduction::SplitMult: return det * sign_pow(mult(LocalCharSpec::one(c.ell, c.f_base)));
        case Reduction::NonsplitMult: return det * sign_pow(mult(LocalCharSpec::kappa(c.ell, c.f_base)));
        case Reduction::AdditivePMR: {
            if (!c.theta) return std::nullopt;
            int tm1 = hilbert_symbol(Rat(-1), c.theta->representative(), v, c.f_base);
            int r = det * (dim % 2 ? tm1 : 1);
            return r * sign_pow(mult(LocalCharSpec::theta_quad(*c.theta, c.f_base)));
        }
        case Reduction::AdditivePGA:
            if (!c.wild && c.e > 0) {
                int eps = 1;
                if (c.e % 2 == 0) {
                    Int k = (c.q - 1) / c.e;
                    eps = mpz_even_p(k.get_mpz_t()) ? 1 : -1;
                }
                return det * (dim % 2 ? eps : 1);
            }
            break;
        default: break;
    }
    // unramified twist of an undetermined local type
    if (sigma_unramified(sigma, d) && dim % 2 == 0) {
        int df = det_sigma_frobenius(sigma, d);
        return (c.conductor_exponent % 2 == 0) ? 1 : df;
    }
    return std::nullopt;
}

RootRatio local_root_ratio(const PrimePairClass& pc, const SigmaSpec& sigma, const LocalGaloisDatum& d, long p) {
    RootRatio r;
    r.W1 = absolute_local_root_number(pc.c1, sigma, d);
    r.W2 = absolute_local_root_number(pc.c2, sigma, d);
    if (r.W1 && r.W2) {
        r.ratio = *r.W1 * *r.W2;
        r.method = RatioMethod::Absolute;
        return r;
    }
    r.method = RatioMethod::CaseFormula;
    Chars ch{pc.ell, pc.f_base, p};
    auto m = [&](const LocalCharSpec& chi) { return multiplicity(sigma, d, chi); };
    const ReductionClass& pmr = pc.c1.reduction == Reduction::AdditivePMR ? pc.c1 : pc.c2;
    const ReductionClass& pg = pc.c1.reduction == Reduction::AdditivePGNA ? pc.c1 : pc.c2;
    long k = 0;
    switch (pc.row) {
        case PairRow::Equal: k = 0; break;
        case PairRow::GoodSplit:
        case PairRow::SplitPga3: k = m(ch.one()); break;
        case PairRow::GoodNonsplit:
        case PairRow::NonsplitPga3: k = m(ch.kappa()); break;
        case PairRow::SplitNonsplit: k = m(ch.one()) + m(ch.kappa()); break;
        case PairRow::PmrPmr: {
            const ReductionClass& first = pc.swapped ? pc.c2 : pc.c1;
            k = m(ch.theta(first)) + m(ch.omega() * ch.theta(first));
            break;
        }
        case PairRow::PmrPga: k = m(ch.theta(pmr)); break;
        case PairRow::SplitPgna3: k = m(ch.kappa()) + m(ch.theta3(pg)); break;
        case PairRow::NonsplitPgna3: k = m(ch.one()) + m(ch.theta3(pg)); break;
        case PairRow::PmrPgna3: k = m(ch.omega() * ch.theta(pmr)) + m(ch.theta3(pg) * ch.theta(pmr)); break;
    }
    r.ratio = sign_pow(k);
    return r;
}

// ---------------------------------------------------------------------------

std::optional<LocalGaloisDatum> FieldData::datum_at(long ell, long p) const {
    if (kummer_m) return s3_kummer_local_datum(*kummer_m, ell, p);
    for (auto& d : data)
        if (d.ell == ell) return d;
    return std::nullopt;
}

std::vector<LocalGaloisDatum> FieldData::places_over(long ell, long p) const {
    if (base_is_Q()) {
        auto d = datum_at(ell, p);
        return d ? std::vector<LocalGaloisDatum>{*d} : std::vector<LocalGaloisDatum>{};
    }
    std::vector<LocalGaloisDatum> out;
    for (auto& d : data)
        if (d.ell == ell) out.push_back(d);
    return out;
}

bool FieldData::ramified_at(long ell) const {
    if (kummer_m) return ell == 3 || *kummer_m % ell == 0;
    return std::find(ramified.begin(), ramified.end(), ell) != ramified.end();
}

FieldData s3_kummer_field(long m) {
    if (!cube_free(m) || m == 1 || m == -1) throw MathError("Kummer field: m must be cube-free with |m| > 1");
    FieldData f;
    f.name = "kummer:" + std::to_string(m);
    f.delta = FiniteGroup::dihedral(6);
    f.kummer_m = m;
    f.ramified.push_back(3);
    for (const Int& q : prime_factors(Int(m < 0 ? -m : m)))
        if (q != 3) f.ramified.push_back(q.get_si());
    f.provenance = "built-in Kummer family Q(mu_3, m^(1/3))";
    return f;
}

FieldData parse_field(const nlohmann::json& j) {
    try {
        FieldData f;
        f.name = j.value("name", std::string("custom"));
        f.provenance = j.value("note", std::string());
        if (j.contains("kummer_m") && !j.contains("places")) {
            FieldData k = s3_kummer_field(j.at("kummer_m").get<long>());
            k.provenance = f.provenance.empty() ? k.provenance : f.provenance;
            return k;
        }
        f.delta = FiniteGroup::by_name(j.at("group").get<std::string>());
        f.base_degree = j.value("base_degree", 1);
        f.real_places = j.value("real_places", f.base_degree);
        if (j.contains("ramified"))
            for (auto& x : j.at("ramified")) f.ramified.push_back(x.get<long>());
        if (j.contains("places_above"))
            for (auto& [k, v] : j.at("places_above").items()) f.places_above[std::stol(k)] = v.get<int>();
        if (j.contains("residue_degree"))
            for (auto& [k, v] : j.at("residue_degree").items()) f.residue_degree[std::stol(k)] = v.get<int>();
        if (j.contains("places"))
            for (auto& rec : j.at("places")) f.data.push_back(parse_local_datum(rec, f.delta));
        for (auto& [ell, n] : f.places_above) {
            long c = std::count_if(f.data.begin(), f.data.end(), [&](const LocalGaloisDatum& d) { return d.ell == ell; });
            if (c != n)
                throw MathError("field '" + f.name + "': " + std::to_string(c) + " records over " + std::to_string(ell) +
                                ", expected " + std::to_string(n));
        }
        if (f.base_is_Q()) {
            std::set<long> seen;
            for (auto& d : f.data)
                if (!seen.insert(d.ell).second) throw MathError("field '" + f.name + "': duplicate record over Q");
        }
        return f;
    } catch (const nlohmann::json::exception& e) {
        throw MathError(std::string("field schema violation: ") + e.what());
    }
}

// ---------------------------------------------------------------------------

ReductionClass reduction_at(const WeierstrassCurve& E, const LocalGaloisDatum* d, int which, long ell, long p,
                            int f_base) {
    std::optional<PgOverride> pg;
    std::optional<CurveOverride> ov;
    if (d) {
        auto it = d->overrides.find(which);
        if (it != d->overrides.end()) ov = it->second;
    }
    if (ov) {
        std::string red = ov->reduction.value_or("");
        std::string kindname = ov->pg_kind.value_or(red == "pga" ? "PGA" : red == "pgna" ? "PGNA" : "");
        if (!kindname.empty()) {
            if (!ov->e) throw MathError("override at " + std::to_string(ell) + ": potentially good kind needs e");
            pg = PgOverride{*ov->e, kindname == "PGA"};
        }
    }
    ReductionClass c = classify_reduction(E, ell, p, f_base, pg, false);
    if (ov && ov->reduction && !pg) {
        static const std::map<std::string, Reduction> names{{"good", Reduction::Good},
                                                            {"split", Reduction::SplitMult},
                                                            {"nonsplit", Reduction::NonsplitMult},
                                                            {"pmr", Reduction::AdditivePMR},
                                                            {"pg", Reduction::AdditivePG}};
        auto it = names.find(*ov->reduction);
        if (it == names.end()) throw MathError("unknown reduction override '" + *ov->reduction + "'");
        if (it->second != c.reduction)
            throw MathError("override at " + std::to_string(ell) + " disagrees with Tate's algorithm (" +
                            to_string(c.reduction) + ")");
    }
    return c;
}

namespace {

struct PlaceWork {
    std::string label;
    long ell = 0;
    int f_base = 1;
    std::optional<LocalGaloisDatum> datum;
    ReductionClass c1, c2;
    std::vector<std::string> s0;
};

int residue_degree_for(const FieldData& field, const std::optional<LocalGaloisDatum>& d, long ell) {
    if (d) return d->f_base;
    auto it = field.residue_degree.find(ell);
    return it == field.residue_degree.end() ? 1 : it->second;
}

std::vector<long> rational_support(const WeierstrassCurve& E1, const WeierstrassCurve& E2, const FieldData& field,
                                   long p) {
    std::set<long> s{p};
    for (long l : bad_primes(E1)) s.insert(l);
    for (long l : bad_primes(E2)) s.insert(l);
    for (long l : field.ramified) s.insert(l);
    for (auto& d : field.data) s.insert(d.ell);
    return {s.begin(), s.end()};
}

std::vector<std::string> sigma0_reasons(const ReductionClass& c, int which, long p) {
    std::vector<std::string> r;
    const std::string tag = "E" + std::to_string(which) + ": ";
    switch (c.reduction) {
        case Reduction::SplitMult:
        case Reduction::NonsplitMult:
        case Reduction::AdditivePMR:
            if (c.vj % p == 0) r.push_back(tag + "p | ord_v(j)");
            break;
        case Reduction::AdditivePGA:
        case Reduction::AdditivePGNA:
        case Reduction::AdditivePG:
            if (c.wild)
                r.push_back(tag + "wild additive (conservative)");
            else if (c.e > 0 && c.e % p == 0)
                r.push_back(tag + "p | e (tame potentially good)");
            break;
        default: break;
    }
    return r;
}

std::vector<PlaceWork> build_places(const WeierstrassCurve& E1, const WeierstrassCurve& E2, const FieldData& field,
                                    long p) {
    std::vector<PlaceWork> out;
    for (long ell : rational_support(E1, E2, field, p)) {
        if (ell == p) continue;
        std::vector<std::optional<LocalGaloisDatum>> ds;
        if (field.base_is_Q()) {
            ds.push_back(field.datum_at(ell, p));
        } else {
            for (auto& d : field.places_over(ell, p)) ds.push_back(d);
            if (ds.empty())
                throw MathError("missing local data: no record for the places over " + std::to_string(ell));
        }
        int idx = 0;
        for (auto& d : ds) {
            PlaceWork w;
            w.ell = ell;
            w.datum = d;
            w.f_base = residue_degree_for(field, d, ell);
            w.label = d && !d->label.empty() ? d->label : std::to_string(ell);
            if (!field.base_is_Q() && (!d || d->label.empty())) w.label = std::to_string(ell) + "." + std::to_string(++idx);
            const LocalGaloisDatum* dp = d ? &*d : nullptr;
            w.c1 = reduction_at(E1, dp, 1, ell, p, w.f_base);
            w.c2 = reduction_at(E2, dp, 2, ell, p, w.f_base);
            for (auto& r : sigma0_reasons(w.c1, 1, p)) w.s0.push_back(r);
            for (auto& r : sigma0_reasons(w.c2, 2, p)) w.s0.push_back(r);
            if (d && d->e_v % p == 0) w.s0.push_back("p | e_v(K/F)");
            out.push_back(std::move(w));
        }
    }
    return out;
}

std::vector<std::string> sigma_labels(const std::vector<PlaceWork>& places, const FieldData& field, long p) {
    std::vector<std::string> s{"inf"};
    s.push_back(field.base_is_Q() ? std::to_string(p) : "places over " + std::to_string(p));
    for (auto& w : places) s.push_back(w.label);
    return s;
}

}  // namespace

std::pair<std::vector<std::string>, std::vector<Sigma0Entry>> compute_sigma_sets(const WeierstrassCurve& E1,
                                                                                 const WeierstrassCurve& E2,
                                                                                 const FieldData& field, long p) {
    auto places = build_places(E1, E2, field, p);
    std::vector<Sigma0Entry> s0;
    for (auto& w : places)
        if (!w.s0.empty()) s0.push_back(Sigma0Entry{w.label, w.ell, w.s0});
    return {sigma_labels(places, field, p), s0};
}

namespace {

bool good_at(const WeierstrassCurve& E, long p) { return tate_local(E, p).reduction == Reduction::Good; }

// E(Q)[p] = 0 is certified by one good prime with #E(F_ell) prime to p
bool torsion_free_certificate(const WeierstrassCurve& E, long p) {
    auto bad = bad_primes(E);
    for (long ell : primes_up_to(200)) {
        if (ell == p || std::find(bad.begin(), bad.end(), ell) != bad.end()) continue;
        if (tate_local(E, ell).reduction != Reduction::Good) continue;
        long n = ell + 1 - trace_of_frobenius(E, ell);
        if (n % p != 0) return true;
    }
    return false;
}

}  // namespace

ParityReport global_report(const WeierstrassCurve& E1, const WeierstrassCurve& E2, const SigmaSpec& sigma,
                           const FieldData& field, long p, Exec exec) {
    if (p < 3 || !is_prime(p)) throw MathError("p must be an odd prime");
    if (sigma.delta != field.delta) throw MathError("sigma is not a representation of the field's group");
    ParityReport R;
    R.p = p;
    R.field = field.name;
    R.sigma = sigma.sigma.name;

    const bool h1 = good_at(E1, p) && good_at(E2, p);
    if (!h1) throw MathError("hypothesis (H1) fails: both curves must have good reduction at p");
    R.assumptions.push_back({"H1", "verified", "good reduction at p for both curves"});
    long ap = trace_of_frobenius(E1, p);
    R.assumptions.push_back({"H2", mod(ap, p) != 0 ? "verified" : "failed",
                             "a_p(E1) = " + std::to_string(ap) + (mod(ap, p) ? " (ordinary)" : " (supersingular)")});
    bool t1 = torsion_free_certificate(E1, p), t2 = torsion_free_certificate(E2, p);
    R.assumptions.push_back({"H3", "assumed",
                             std::string("E1[p] has no K-points; rational shadow E1(Q)[p] = 0 ") +
                                 (t1 && t2 ? "certified" : "not certified")});
    R.assumptions.push_back({"H4", "assumed", "Selmer finiteness over the cyclotomic line"});
    R.assumptions.push_back({"Syl", "declared", "symplectic nature of the mod-p isomorphism is not checked"});
    CongruenceVerdict cv = check_congruence(E1, E2, p, std::nullopt, exec);
    R.assumptions.push_back({"congruence", cv.supported() ? "verified" : "failed",
                             cv.supported() ? "a_ell agree mod p up to " + std::to_string(cv.bound_used) + " (bounded check)"
                                            : "refuted at ell = " + std::to_string(cv.refutation->ell)});

    auto places = build_places(E1, E2, field, p);
    R.sigma_places = sigma_labels(places, field, p);
    const size_t n = places.size();
    std::vector<PrimeReport> reports(n);
    std::vector<std::exception_ptr> errs(n);
    auto work = [&](size_t i) {
        try {
            PlaceWork& w = places[i];
            PrimeReport pr;
            pr.pair = classify_pair(w.c1, w.c2, p);
            pr.pair.place = w.label;
            pr.in_sigma0 = !w.s0.empty();
            const LocalGaloisDatum* d = w.datum ? &*w.datum : nullptr;
            if (pr.pair.row != PairRow::Equal && !pr.in_sigma0) {
                pr.in_sigma0 = true;
                w.s0.push_back("reduction rows differ (enlargement)");
            }
            if (d && d->structure_partial) {
                if (pr.in_sigma0) throw MathError("partial local data at " + w.label + ": " + d->partial_reason);
                pr.root.method = RatioMethod::CaseFormula;
                reports[i] = std::move(pr);
                return;
            }
            if (!d) {
                if (pr.in_sigma0 || field.ramified_at(w.ell))
                    throw MathError("missing local data at " + w.label);
                pr.root.method = RatioMethod::CaseFormula;
                if (w.c1.reduction == Reduction::Good) pr.root.W1 = 1;
                if (w.c2.reduction == Reduction::Good) pr.root.W2 = 1;
                reports[i] = std::move(pr);
                return;
            }
            pr.sigma_ramified = !sigma_unramified(sigma, *d);
            if (pr.in_sigma0) pr.delta_contribution = delta_contribution(pr.pair, sigma, *d);
            pr.root = local_root_ratio(pr.pair, sigma, *d, p);
            reports[i] = std::move(pr);
        } catch (...) {
            errs[i] = std::current_exception();
        }
    };
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (long i = 0; i < static_cast<long>(n); ++i) work(static_cast<size_t>(i));
    } else {
        for (size_t i = 0; i < n; ++i) work(i);
    }
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    R.primes = std::move(reports);
    for (size_t i = 0; i < n; ++i)
        if (R.primes[i].in_sigma0) R.sigma0.push_back(Sigma0Entry{places[i].label, places[i].ell, places[i].s0});

    // per-prime aggregation
    int dsum = 0, rprod = 1;
    for (auto& pr : R.primes) {
        dsum += pr.delta_contribution;
        rprod *= pr.root.ratio;
    }
    R.delta_side_parity = dsum % 2;
    R.root_side_ratio = rprod;

    // bookkeeping by reduction sets
    long A1 = 0, A2 = 0;
    for (size_t i = 0; i < n; ++i) {
        const PrimeReport& pr = R.primes[i];
        if (!pr.in_sigma0) continue;
        const PlaceWork& w = places[i];
        const LocalGaloisDatum& d = *w.datum;
        const std::string& lab = w.label;
        Chars ch{w.ell, w.f_base, p};
        auto m = [&](const LocalCharSpec& chi) { return multiplicity(sigma, d, chi); };
        const ReductionClass& a = w.c1;
        const ReductionClass& b = w.c2;
        const bool mu = mod(a.q, p) == 1;
        auto is_mult = [](const ReductionClass& c) {
            return c.reduction == Reduction::SplitMult || c.reduction == Reduction::NonsplitMult;
        };
        auto is = [](const ReductionClass& c, Reduction r) { return c.reduction == r; };
        if (is(a, Reduction::SplitMult)) {
            R.sets.S1.push_back(lab);
            R.m1 += m(ch.one());
        }
        if (is(a, Reduction::NonsplitMult)) {
            R.sets.N1.push_back(lab);
            R.m1 += m(ch.kappa());
        }
        if (is(b, Reduction::SplitMult)) {
            R.sets.S2.push_back(lab);
            R.m2 += m(ch.one());
        }
        if (is(b, Reduction::NonsplitMult)) {
            R.sets.N2.push_back(lab);
            R.m2 += m(ch.kappa());
        }
        const bool ram = pr.sigma_ramified;
        if (ram && !mu && is(a, Reduction::AdditivePMR) && is(b, Reduction::AdditivePMR) &&
            !(ch.theta(a) == ch.theta(b))) {
            R.sets.W.push_back(lab);
            long t = m(ch.theta(a)) + m(ch.omega() * ch.theta(a));
            A1 += t;
            R.T += t;
        }
        const ReductionClass* pmr = is(a, Reduction::AdditivePMR) ? &a : is(b, Reduction::AdditivePMR) ? &b : nullptr;
        const ReductionClass* other = pmr == &a ? &b : &a;
        if (ram && pmr && is(*other, Reduction::AdditivePGA)) {
            R.sets.X.push_back(lab);
            long t = m(ch.theta(*pmr));
            A2 += t;
            R.T += t;
        }
        if (p == 3 && !mu) {
            const ReductionClass* pgna = is(a, Reduction::AdditivePGNA) ? &a : is(b, Reduction::AdditivePGNA) ? &b : nullptr;
            const ReductionClass* rest = pgna == &a ? &b : &a;
            if (pgna && is_mult(*rest)) {
                R.sets.Y3.push_back(lab);
                long t = m(ch.one()) + m(ch.kappa()) + m(ch.theta3(*pgna));
                A2 += t;
                R.T += t;
            }
            if (ram && pgna && pmr) {
                R.sets.Z3.push_back(lab);
                LocalCharSpec th = ch.theta(*pmr);
                long t = m(ch.omega() * th) + m(th * ch.theta3(*pgna));
                A1 += t;
                R.T += t;
            }
        }
    }
    A1 += R.m1;
    A2 += R.m2;
    R.thm1_parity = static_cast<int>((A1 + A2) % 2);
    R.bookkeeping_ratio = sign_pow(R.m1 - R.m2 + R.T);
    R.aggregate_consistent = R.thm1_parity == R.delta_side_parity && R.bookkeeping_ratio == R.root_side_ratio;
    R.thm4_consistent = R.aggregate_consistent && sign_pow(R.delta_side_parity) == R.root_side_ratio;

    // absolute global root numbers
    bool all = true;
    int w1 = 1, w2 = 1;
    const int arch = sign_pow(static_cast<long>(field.real_places) * sigma.dim());
    w1 *= arch;
    w2 *= arch;
    for (auto& pr : R.primes) {
        if (!pr.root.W1 || !pr.root.W2) {
            all = false;
            break;
        }
        w1 *= *pr.root.W1;
        w2 *= *pr.root.W2;
    }
    if (all) {
        // v | p: both good, W = det sigma_v(-1)
        std::vector<LocalGaloisDatum> pd = field.places_over(p, p);
        if (pd.empty()) {
            if (field.ramified_at(p)) all = false;
        } else {
            for (auto& d : pd) {
                if (d.structure_partial) {
                    all = false;
                    continue;
                }
                try {
                    int s = det_sigma_minus_one(sigma, d);
                    w1 *= s;
                    w2 *= s;
                } catch (const MathError&) {
                    all = false;
                }
            }
        }
    }
    if (all) {
        R.W1 = w1;
        R.W2 = w2;
    } else {
        R.notes.push_back("absolute global root numbers undetermined at some place");
    }
    for (auto& pr : R.primes) {
        for (auto& f : pr.pair.flags)
            if (f == "potentially good kind unresolved")
                R.notes.push_back(pr.pair.place + ": potentially good kind unresolved, treated as an equal row");
        if (pr.pair.c1.pg_override_used || pr.pair.c2.pg_override_used)
            R.assumptions.push_back({"override", "declared", "inertia override used at " + pr.pair.place});
    }
    return R;
}

}  // namespace ecp
