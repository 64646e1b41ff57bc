#include "ecp/congruence.hpp"

#include <algorithm>

namespace ecp {

long sturm_bound(const Int& N1, const Int& N2, long p) {
    if (N1 <= 0 || N2 <= 0) throw MathError("sturm_bound: conductors must be positive");
    Int N;
    mpz_lcm(N.get_mpz_t(), N1.get_mpz_t(), N2.get_mpz_t());
    Rat B(N);
    for (const Int& q : prime_factors(N)) B *= Rat(q + 1, q);
    B /= 6;
    B.canonicalize();
    Int c;
    mpz_cdiv_q(c.get_mpz_t(), B.get_num_mpz_t(), B.get_den_mpz_t());
    if (!c.fits_slong_p()) throw MathError("sturm_bound: bound too large");
    return c.get_si();
}

CongruenceVerdict check_congruence(const WeierstrassCurve& E1, const WeierstrassCurve& E2, long p,
                                   std::optional<long> bound, Exec exec) {
    if (p < 3 || !is_prime(p)) throw MathError("check_congruence: p must be an odd prime");
    const Int N1 = conductor(E1), N2 = conductor(E2);
    CongruenceVerdict v;
    v.p = p;
    v.bound_used = bound ? *bound : sturm_bound(N1, N2, p);
    if (v.bound_used < 2) throw MathError("check_congruence: bound must be at least 2");
    std::vector<long> cand;
    for (long ell : primes_up_to(v.bound_used)) {
        if (ell == p) {
            v.skipped_primes.push_back({ell, "divides p"});
        } else if (mpz_divisible_ui_p(N1.get_mpz_t(), ell) || mpz_divisible_ui_p(N2.get_mpz_t(), ell)) {
            v.skipped_primes.push_back({ell, "bad reduction"});
        } else {
            cand.push_back(ell);
        }
    }
    auto t1 = trace_table(E1, cand, exec);
    auto t2 = trace_table(E2, cand, exec);
    for (size_t i = 0; i < cand.size(); ++i) {
        if (!t1[i] || !t2[i]) throw MathError("check_congruence: missing trace at a good prime");
        v.checked_primes.push_back(cand[i]);
        if (mod(*t1[i] - *t2[i], p) != 0) {
            v.refutation = Refutation{cand[i], *t1[i], *t2[i]};
            break;
        }
    }
    return v;
}

}  // namespace ecp
