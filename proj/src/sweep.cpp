#include "ecp/parity.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ecp {

bool SweepResult::all_rows_covered() const {
    for (PairRow r : all_rows()) {
        auto it = row_coverage.find(r);
        if (it == row_coverage.end() || it->second == 0) return false;
    }
    return true;
}

namespace {

struct SPlace {
    long ell;
    int f;
};

// Orthogonal irreducibles of delta.
std::vector<SigmaSpec> orthogonal_sigmas(const GroupPtr& G) {
    std::vector<SigmaSpec> out;
    for (auto& chi : character_table(G))
        if (frobenius_schur(chi) == 1) out.push_back(make_sigma(G, chi));
    return out;
}

// Subgroups D with tame-type inertia: I cyclic of order <= 3, normal, D/I cyclic.
// The Frobenius action on I is recorded so places can be matched to it.
struct DShape {
    std::vector<int> D_gens, I_gens;
    int frob;
    int e, f;
    int frob_power;  // Frob x Frob^-1 = x^frob_power on I
};

std::vector<DShape> shapes(const GroupPtr& G) {
    std::vector<DShape> out;
    std::set<std::pair<std::vector<int>, std::pair<std::vector<int>, int>>> seen;
    const int n = G->size();
    for (int i = 0; i < n; ++i)
        for (int x = 0; x < n; ++x) {
            if (G->order_of(i) > 3) continue;
            std::vector<int> Ig = i ? std::vector<int>{i} : std::vector<int>{};
            auto I = G->closure(Ig);
            // x normalizes I
            bool norm = true;
            for (int h : I)
                if (!std::binary_search(I.begin(), I.end(), G->mul(G->mul(x, h), G->inv(x)))) norm = false;
            if (!norm) continue;
            std::vector<int> Dg = Ig;
            Dg.push_back(x);
            auto D = G->closure(Dg);
            int e = static_cast<int>(I.size());
            int f = static_cast<int>(D.size()) / e;
            if (f > 6) continue;
            // Frobenius class: canonical up to the choice of x within its I-coset
            int k = 1;
            if (e > 1) {
                int conj = G->mul(G->mul(x, i), G->inv(x));
                k = (conj == i) ? 1 : e - 1;
            }
            auto key = std::make_pair(D, std::make_pair(I, x));
            if (!seen.insert(key).second) continue;
            out.push_back(DShape{Dg, Ig, x, e, f, k});
        }
    return out;
}

long q_of(const SPlace& pl) {
    long q = 1;
    for (int i = 0; i < pl.f; ++i) q *= pl.ell;
    return q;
}

// tame local Galois theory: Frobenius acts on inertia of order e by the q-th power
bool compatible(const DShape& s, const SPlace& pl) {
    const long q = q_of(pl);
    if (s.e == 1) return true;
    long k = q % s.e;
    return k == s.frob_power % s.e;
}

ReductionClass base_class(Reduction r, const SPlace& pl, long p) {
    ReductionClass c;
    c.reduction = r;
    c.ell = pl.ell;
    c.f_base = pl.f;
    c.q = q_of(pl);
    c.mu_p_in_Fv = mod(c.q, p) == 1;
    c.wild = false;
    return c;
}

// All synthetic reduction classes at a place, with parameter variants.
std::vector<ReductionClass> class_variants(const SPlace& pl, long p) {
    std::vector<ReductionClass> out;
    const long q = q_of(pl);
    ReductionClass g = base_class(Reduction::Good, pl, p);
    g.a_v = 0;
    out.push_back(g);
    for (Reduction r : {Reduction::SplitMult, Reduction::NonsplitMult}) {
        if (r == Reduction::NonsplitMult && pl.f % 2 == 0) continue;
        for (int vj : {-static_cast<int>(p), -1}) {
            ReductionClass c = base_class(r, pl, p);
            c.vj = vj;
            c.conductor_exponent = 1;
            c.vdisc_min = -vj;
            out.push_back(c);
        }
    }
    const Place v = Place::finite(pl.ell);
    for (long unit : {1L, nonresidue(pl.ell)})
        for (int vj : {-static_cast<int>(p), -1}) {
            ReductionClass c = base_class(Reduction::AdditivePMR, pl, p);
            c.theta = square_class(Rat(Int(unit) * pl.ell), v);
            c.vj = vj;
            c.conductor_exponent = 2;
            c.vdisc_min = 6 - vj;
            out.push_back(c);
        }
    for (int e : {2, 3, 4, 6}) {
        const bool abelian = q % e == 1;
        ReductionClass c = base_class(abelian ? Reduction::AdditivePGA : Reduction::AdditivePGNA, pl, p);
        c.e = e;
        c.conductor_exponent = 2;
        int vd = e == 2 ? 6 : e == 3 ? 4 : e == 4 ? 3 : 2;
        for (int shift : {0, 1}) {
            int vds = (e == 3 && shift) ? 8 : (e == 6 && shift) ? 10 : (e == 4 && shift) ? 9 : vd;
            if (shift && e == 2) continue;
            ReductionClass cc = c;
            cc.vdisc_min = vds;
            Int dm = 1;
            for (int i = 0; i < vds; ++i) dm *= pl.ell;
            cc.disc_min = dm;
            out.push_back(cc);
        }
    }
    return out;
}

std::vector<SPlace> places_for(long p) {
    std::vector<SPlace> out;
    for (long ell : {5L, 7L, 11L, 13L, 29L, 43L})
        if (ell != p) out.push_back(SPlace{ell, 1});
    out.push_back(SPlace{p == 5 ? 7L : 5L, 2});
    return out;
}

// annotation variants for ramified quadratic characters of D: one class per inertia restriction
std::vector<LocalGaloisDatum> annotated(const LocalGaloisDatum& base) {
    std::vector<LocalGaloisDatum> out;
    std::vector<CharacterRep> reps;
    for (auto& lam : linear_characters(base.D)) {
        bool quad = true, ram = false;
        for (int g = 0; g < base.D->size(); ++g)
            if (lam.at(g) != Cyc(1) && lam.at(g) != Cyc(-1)) quad = false;
        for (int g : base.inertia)
            if (lam.at(g) != Cyc(1)) ram = true;
        if (!quad || !ram) continue;
        bool dup = std::any_of(reps.begin(), reps.end(), [&](const CharacterRep& r) {
            for (int g : base.inertia)
                if (r.at(g) != lam.at(g)) return false;
            return true;
        });
        if (!dup) reps.push_back(lam);
    }
    const Place v = Place::finite(base.ell);
    std::vector<Rat> classes{Rat(base.ell), Rat(Int(base.ell) * nonresidue(base.ell))};
    // cubic annotation applies to an S3-type D with I of order 3 and mu_3 outside F_v
    std::vector<std::optional<CubicAnnotation>> cubics{std::nullopt};
    if (base.e_v == 3 && mod(base.q, 3) == 2) {
        for (auto& chi : character_table(base.D))
            if (chi.dim() == 2) {
                cubics.clear();
                for (int vm : {1, 2}) cubics.push_back(CubicAnnotation{"2dim", chi, CubeClassMu3{base.ell, vm, 0}});
                break;
            }
    }
    const size_t nr = reps.size();
    for (size_t mask = 0; mask < (size_t(1) << nr); ++mask)
        for (auto& cu : cubics) {
            LocalGaloisDatum d = base;
            for (size_t k = 0; k < nr; ++k)
                d.quad.push_back(QuadAnnotation{"q" + std::to_string(k), reps[k],
                                                square_class(classes[(mask >> k) & 1], v)});
            d.cubic = cu;
            try {
                validate_annotations(d);
            } catch (const MathError&) {
                continue;
            }
            out.push_back(d);
        }
    return out;
}

struct Job {
    long p;
    GroupPtr G;
    std::vector<SigmaSpec> sigmas;
    DShape shape;
    SPlace place;
};

struct Partial {
    long cases = 0, impossible = 0, failures = 0, undetermined = 0, absolute = 0;
    std::map<PairRow, long> cov;
    std::vector<SweepFailure> ex;
};

std::string describe(const Job& j, const PrimePairClass& pc, const SigmaSpec& s, const LocalGaloisDatum& d) {
    std::ostringstream os;
    os << "p=" << j.p << " G=" << j.G->name() << " sigma=" << s.sigma.name << " " << d.str() << " row=" << to_string(pc.row)
       << " E1=" << to_string(pc.c1.reduction) << " E2=" << to_string(pc.c2.reduction);
    return os.str();
}

void run_job(const Job& j, Partial& out, bool stability) {
    LocalGaloisDatum base;
    try {
        base = make_local_datum(j.G, j.place.ell, j.place.f, j.shape.D_gens, j.shape.I_gens, j.shape.frob);
    } catch (const MathError&) {
        return;
    }
    auto data = annotated(base);
    auto classes = class_variants(j.place, j.p);
    std::vector<PrimePairClass> pairs;
    for (auto& c1 : classes)
        for (auto& c2 : classes) {
            try {
                pairs.push_back(classify_pair(c1, c2, j.p));
            } catch (const ImpossiblePair&) {
                out.impossible += static_cast<long>(data.size() * j.sigmas.size());
            }
        }
    for (auto& d : data)
        for (auto& s : j.sigmas)
            for (auto pc : pairs) {
                ++out.cases;
                try {
                    int delta = delta_contribution(pc, s, d);
                    RootRatio rr = local_root_ratio(pc, s, d, j.p);
                    bool ok = ((delta % 2 == 0) ? 1 : -1) == rr.ratio;
                    if (stability && pc.row == PairRow::Equal) ok = ok && delta == 0 && rr.ratio == 1;
                    // self-duality of every correction multiplicity
                    for (auto& c : pc.corrections)
                        if (!c.chi.theta3 && multiplicity(s, d, c.chi.inverse()) != c.mult) ok = false;
                    if (!ok) {
                        ++out.failures;
                        if (out.ex.size() < 5) out.ex.push_back({describe(j, pc, s, d)});
                    } else {
                        ++out.cov[pc.row];
                        if (rr.method == RatioMethod::Absolute) ++out.absolute;
                    }
                } catch (const MathError& e) {
                    ++out.undetermined;
                    if (out.ex.size() < 5) out.ex.push_back({describe(j, pc, s, d) + ": " + e.what()});
                }
            }
}

}  // namespace

SweepResult localized_sweep(const SweepOptions& opt) {
    std::vector<GroupPtr> groups{FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::cyclic(4),
                                 FiniteGroup::cyclic(6), FiniteGroup::dihedral(6), FiniteGroup::dihedral(8),
                                 FiniteGroup::dihedral(10), FiniteGroup::dihedral(12)};
    std::vector<Job> jobs;
    for (long p : opt.primes_p)
        for (auto& G : groups) {
            auto sig = orthogonal_sigmas(G);
            for (auto& sh : shapes(G))
                for (auto& pl : places_for(p))
                    if (compatible(sh, pl)) jobs.push_back(Job{p, G, sig, sh, pl});
        }
    std::vector<Partial> parts(jobs.size());
    const long n = static_cast<long>(jobs.size());
    if (opt.exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (long i = 0; i < n; ++i) run_job(jobs[i], parts[i], opt.include_stability);
    } else {
        for (long i = 0; i < n; ++i) run_job(jobs[i], parts[i], opt.include_stability);
    }
    SweepResult r;
    for (PairRow row : all_rows()) r.row_coverage[row] = 0;
    for (auto& pt : parts) {
        r.cases += pt.cases;
        r.impossible_skipped += pt.impossible;
        r.failures += pt.failures;
        r.undetermined += pt.undetermined;
        r.absolute_checked += pt.absolute;
        for (auto& [row, c] : pt.cov) r.row_coverage[row] += c;
        for (auto& e : pt.ex)
            if (r.examples.size() < 10) r.examples.push_back(e);
    }
    return r;
}

}  // namespace ecp
