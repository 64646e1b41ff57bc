#pragma once

#include "ecp/curve.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ecp {

struct SkippedPrime {
    long ell = 0;
    std::string reason;
};

struct Refutation {
    long ell = 0;
    long a1 = 0, a2 = 0;
};

struct CongruenceVerdict {
    long p = 0;
    long bound_used = 0;
    std::vector<long> checked_primes;
    std::vector<SkippedPrime> skipped_primes;
    std::optional<Refutation> refutation;  // smallest mismatching prime

    bool supported() const { return !refutation.has_value(); }
    std::string status() const { return supported() ? "supported" : "refuted"; }
};

long sturm_bound(const Int& N1, const Int& N2, long p);
CongruenceVerdict check_congruence(const WeierstrassCurve& E1, const WeierstrassCurve& E2, long p,
                                   std::optional<long> bound = std::nullopt, Exec exec = Exec::Parallel);

}  // namespace ecp
