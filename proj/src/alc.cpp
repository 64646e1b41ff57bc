#include "ecp/alc.hpp"

#include <set>

namespace ecp {

namespace {

const SigmaSpec& trivial_sigma() {
    static const SigmaSpec s = [] {
        auto G = FiniteGroup::cyclic(1);
        return make_sigma(G, trivial_character(G));
    }();
    return s;
}

LocalGaloisDatum trivial_datum(long ell) {
    return make_local_datum(trivial_sigma().delta, ell, 1, {}, {}, 0);
}

}  // namespace

long delta_trivial(const WeierstrassCurve& E, long ell, long p) {
    if (ell == p) throw MathError("delta_trivial: place above p");
    ReductionClass c = classify_reduction(E, ell, p, 1, std::nullopt, false);
    switch (c.reduction) {
        case Reduction::Good: {
            long a = c.a_v ? *c.a_v : trace_of_frobenius(E, ell);
            // char poly x^2 - a x + ell; a root 1 forces the other root to be ell
            if (mod(1 - a + ell, p) != 0) return 0;
            return mod(ell, p) == 1 ? 2 : 1;
        }
        case Reduction::SplitMult: return mod(ell, p) == 1 ? 1 : 0;
        case Reduction::NonsplitMult: return mod(ell + 1, p) == 0 ? 1 : 0;
        default: return 0;
    }
}

AlcRecord alc_parity(const WeierstrassCurve& E1, const WeierstrassCurve& E2, long ell, long p) {
    AlcRecord rec;
    rec.ell = ell;
    rec.delta1 = delta_trivial(E1, ell, p);
    rec.delta2 = delta_trivial(E2, ell, p);
    rec.parity = static_cast<int>(mod(rec.delta1 - rec.delta2, 2));

    ReductionClass c1 = classify_reduction(E1, ell, p, 1, std::nullopt, false);
    ReductionClass c2 = classify_reduction(E2, ell, p, 1, std::nullopt, false);
    rec.r1 = c1.reduction;
    rec.r2 = c2.reduction;
    PrimePairClass pc = classify_pair(c1, c2, p);
    rec.row = pc.row;
    rec.flags = pc.flags;
    const LocalGaloisDatum d = trivial_datum(ell);
    rec.engine_parity = delta_contribution(pc, trivial_sigma(), d);
    RootRatio rr = local_root_ratio(pc, trivial_sigma(), d, p);
    rec.local_root_ratio = rr.ratio;
    rec.method = rr.method;
    rec.consistent = (rec.parity == 0 ? 1 : -1) == rec.local_root_ratio;
    rec.engine_agrees = rec.engine_parity == rec.parity;
    return rec;
}

std::vector<AlcRecord> alc_report(const WeierstrassCurve& E1, const WeierstrassCurve& E2, long p) {
    std::set<long> primes;
    for (long l : bad_primes(E1)) primes.insert(l);
    for (long l : bad_primes(E2)) primes.insert(l);
    primes.erase(p);
    std::vector<AlcRecord> out;
    for (long l : primes) out.push_back(alc_parity(E1, E2, l, p));
    return out;
}

}  // namespace ecp
