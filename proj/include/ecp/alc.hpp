#pragma once

#include "ecp/parity.hpp"

#include <string>
#include <vector>

namespace ecp {

// delta_{E,v} for the trivial twist at a rational prime ell != p.
long delta_trivial(const WeierstrassCurve& E, long ell, long p);

struct AlcRecord {
    long ell = 0;
    Reduction r1 = Reduction::Good, r2 = Reduction::Good;
    PairRow row = PairRow::Equal;
    long delta1 = 0, delta2 = 0;
    int parity = 0;
    int local_root_ratio = 1;
    RatioMethod method = RatioMethod::Trivial;
    bool consistent = true;
    // same parity from the general twisted engine at sigma = 1
    int engine_parity = 0;
    bool engine_agrees = true;
    std::vector<std::string> flags;
};

AlcRecord alc_parity(const WeierstrassCurve& E1, const WeierstrassCurve& E2, long ell, long p);
// every rational prime ell != p that is bad for either curve
std::vector<AlcRecord> alc_report(const WeierstrassCurve& E1, const WeierstrassCurve& E2, long p);

}  // namespace ecp
