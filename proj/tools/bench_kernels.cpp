#include "ecp/congruence.hpp"
#include "ecp/parity.hpp"

#include <chrono>
#include <cstdio>
#include <functional>

using namespace ecp;

namespace {

double seconds(const std::function<void()>& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(const char* name, double serial, double parallel, bool agree) {
    std::printf("%-22s serial %8.3fs  parallel %8.3fs  speedup %5.2fx  %s\n", name, serial, parallel,
                parallel > 0 ? serial / parallel : 0.0, agree ? "results agree" : "RESULTS DIFFER");
}

}  // namespace

int main(int argc, char** argv) {
    long limit = argc > 1 ? std::atol(argv[1]) : 20000;
    bool ok = true;

    auto E1 = WeierstrassCurve::from_longs(0, -1, 1, -7820, -263580);
    auto E2 = WeierstrassCurve::from_longs(0, -1, 1, 406, -686);
    auto primes = primes_up_to(limit);
    std::vector<std::optional<long>> ts, tp;
    double s = seconds([&] { ts = trace_table(E2, primes, Exec::Serial); });
    double p = seconds([&] { tp = trace_table(E2, primes, Exec::Parallel); });
    report("a_ell table", s, p, ts == tp);
    ok = ok && ts == tp;

    CongruenceVerdict vs, vp;
    s = seconds([&] { vs = check_congruence(E1, E2, 3, limit, Exec::Serial); });
    p = seconds([&] { vp = check_congruence(E1, E2, 3, limit, Exec::Parallel); });
    bool same = vs.supported() == vp.supported() && vs.checked_primes == vp.checked_primes;
    report("congruence scan", s, p, same);
    ok = ok && same;

    SweepOptions o;
    o.primes_p = {3};
    SweepResult rs, rp;
    o.exec = Exec::Serial;
    s = seconds([&] { rs = localized_sweep(o); });
    o.exec = Exec::Parallel;
    p = seconds([&] { rp = localized_sweep(o); });
    same = rs.cases == rp.cases && rs.failures == rp.failures && rs.row_coverage == rp.row_coverage;
    report("localized sweep p=3", s, p, same);
    ok = ok && same;
    return ok ? 0 : 1;
}
