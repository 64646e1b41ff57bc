#include "ecp/cli.hpp"

#include <iomanip>
#include <sstream>

namespace ecp {

using nlohmann::json;

namespace {

std::string str(const Int& x) { return x.get_str(); }
std::string str(const Rat& x) { return x.get_str(); }

json opt_int(const std::optional<int>& x) { return x ? json(*x) : json(nullptr); }

json to_json(const LocalCharSpec& c) {
    json j{{"label", c.label}, {"unramified_part", str(c.unr)}};
    j["ramified_class"] = c.ram ? json(c.ram->str()) : json(nullptr);
    if (c.theta3) j["cubic_class"] = {{"val_mod3", c.theta3->val_mod3}, {"unit_class", c.theta3->unit_class}};
    return j;
}

std::string sign(int s) { return s > 0 ? "+1" : "-1"; }

}  // namespace

json envelope(const std::string& kind, json payload) {
    return json{{"schema", "ecp-report"}, {"version", kReportVersion}, {"kind", kind}, {"result", std::move(payload)}};
}

json to_json(const ReductionClass& c) {
    json j{{"ell", c.ell},
           {"q", str(c.q)},
           {"f_base", c.f_base},
           {"reduction", to_string(c.reduction)},
           {"e", c.e},
           {"mu_p_in_Fv", c.mu_p_in_Fv},
           {"vj", c.vj},
           {"vdisc_min", c.vdisc_min},
           {"conductor_exponent", c.conductor_exponent},
           {"pg_override_used", c.pg_override_used},
           {"wild", c.wild}};
    j["theta"] = c.theta ? json(c.theta->str()) : json(nullptr);
    j["a_v"] = c.a_v ? json(*c.a_v) : json(nullptr);
    return j;
}

json to_json(const CongruenceVerdict& v) {
    json skipped = json::array();
    for (auto& s : v.skipped_primes) skipped.push_back({{"ell", s.ell}, {"reason", s.reason}});
    json j{{"p", v.p},
           {"status", v.status()},
           {"bound_used", v.bound_used},
           {"checked_count", v.checked_primes.size()},
           {"checked_primes", v.checked_primes},
           {"skipped_primes", skipped}};
    j["refutation"] = v.refutation ? json{{"ell", v.refutation->ell}, {"a1", v.refutation->a1}, {"a2", v.refutation->a2}}
                                   : json(nullptr);
    return j;
}

json to_json(const ParityReport& r) {
    json sigma0 = json::array();
    for (auto& s : r.sigma0) sigma0.push_back({{"place", s.place}, {"ell", s.ell}, {"reasons", s.reasons}});
    json primes = json::array();
    for (auto& pr : r.primes) {
        json corr = json::array();
        for (auto& c : pr.pair.corrections)
            corr.push_back({{"side", c.side}, {"character", to_json(c.chi)}, {"multiplicity", c.mult}});
        json pair{{"place", pr.pair.place},
                  {"ell", pr.pair.ell},
                  {"q", str(pr.pair.q)},
                  {"f_base", pr.pair.f_base},
                  {"E1", to_json(pr.pair.c1)},
                  {"E2", to_json(pr.pair.c2)},
                  {"row", to_string(pr.pair.row)},
                  {"swapped", pr.pair.swapped},
                  {"mu_p_in_Fv", pr.pair.mu_p_in_Fv},
                  {"flags", pr.pair.flags},
                  {"corrections", corr}};
        pair["theta_equal"] = pr.pair.theta_equal ? json(*pr.pair.theta_equal) : json(nullptr);
        primes.push_back({{"pair", pair},
                          {"in_sigma0", pr.in_sigma0},
                          {"sigma_ramified", pr.sigma_ramified},
                          {"delta_contribution", pr.delta_contribution},
                          {"root",
                           {{"ratio", pr.root.ratio},
                            {"method", to_string(pr.root.method)},
                            {"W1", opt_int(pr.root.W1)},
                            {"W2", opt_int(pr.root.W2)}}}});
    }
    json assumptions = json::array();
    for (auto& a : r.assumptions) assumptions.push_back({{"name", a.name}, {"status", a.status}, {"detail", a.detail}});
    json sets{{"S1", r.sets.S1}, {"S2", r.sets.S2}, {"N1", r.sets.N1}, {"N2", r.sets.N2},
              {"W", r.sets.W},   {"X", r.sets.X},   {"Y3", r.sets.Y3}, {"Z3", r.sets.Z3}};
    return json{{"p", r.p},
                {"field", r.field},
                {"sigma", r.sigma},
                {"sigma_places", r.sigma_places},
                {"sigma0", sigma0},
                {"primes", primes},
                {"delta_side_parity", r.delta_side_parity},
                {"root_side_ratio", r.root_side_ratio},
                {"thm1_parity", r.thm1_parity},
                {"m1", r.m1},
                {"m2", r.m2},
                {"T", r.T},
                {"bookkeeping_ratio", r.bookkeeping_ratio},
                {"aggregate_consistent", r.aggregate_consistent},
                {"thm4_consistent", r.thm4_consistent},
                {"sets", sets},
                {"W1", opt_int(r.W1)},
                {"W2", opt_int(r.W2)},
                {"assumptions", assumptions},
                {"notes", r.notes}};
}

json to_json(const AlcRecord& r) {
    return json{{"ell", r.ell},
                {"E1", to_string(r.r1)},
                {"E2", to_string(r.r2)},
                {"row", to_string(r.row)},
                {"delta1", r.delta1},
                {"delta2", r.delta2},
                {"parity", r.parity},
                {"local_root_ratio", r.local_root_ratio},
                {"method", to_string(r.method)},
                {"consistent", r.consistent},
                {"engine_parity", r.engine_parity},
                {"engine_agrees", r.engine_agrees},
                {"flags", r.flags}};
}

json to_json(const SweepResult& r) {
    json cov = json::object();
    for (auto& [row, n] : r.row_coverage) cov[to_string(row)] = n;
    json ex = json::array();
    for (auto& e : r.examples) ex.push_back(e.description);
    return json{{"cases", r.cases},
                {"impossible_skipped", r.impossible_skipped},
                {"failures", r.failures},
                {"undetermined", r.undetermined},
                {"absolute_checked", r.absolute_checked},
                {"row_coverage", cov},
                {"all_rows_covered", r.all_rows_covered()},
                {"examples", ex}};
}

json curve_info_json(const WeierstrassCurve& E) {
    Invariants I = E.inv();
    json local = json::array();
    for (long ell : bad_primes(E)) {
        LocalReductionData d = tate_local(E, ell);
        json row{{"ell", ell},
                 {"kodaira", d.kodaira},
                 {"conductor_exponent", d.f},
                 {"vdisc_min", d.vdisc_min},
                 {"vj", d.vj},
                 {"reduction", to_string(d.reduction)},
                 {"e", d.e},
                 {"minimal_model", curve_to_json(d.minimal)["ainvs"]}};
        row["minus_c6_class"] = d.minus_c6_class ? json(d.minus_c6_class->str()) : json(nullptr);
        local.push_back(row);
    }
    json traces = json::object();
    for (long ell : primes_up_to(50)) {
        bool bad = false;
        for (long b : bad_primes(E)) bad = bad || b == ell;
        if (!bad) traces[std::to_string(ell)] = trace_of_frobenius(E, ell);
    }
    json j = curve_to_json(E);
    j["c4"] = str(I.c4);
    j["c6"] = str(I.c6);
    j["discriminant"] = str(I.disc);
    j["j_invariant"] = str(I.j);
    j["conductor"] = str(conductor(E));
    j["bad_primes"] = bad_primes(E);
    j["local_data"] = local;
    j["traces"] = traces;
    return j;
}

std::string curve_info_text(const WeierstrassCurve& E) {
    json j = curve_info_json(E);
    std::ostringstream os;
    os << "curve " << (E.label.empty() ? "" : E.label + " ") << E.ainvs_str() << "\n";
    os << "  conductor " << j["conductor"].get<std::string>() << ", discriminant " << j["discriminant"].get<std::string>()
       << ", j = " << j["j_invariant"].get<std::string>() << "\n";
    for (auto& r : j["local_data"])
        os << "  ell=" << r["ell"] << ": " << r["kodaira"].get<std::string>() << ", f=" << r["conductor_exponent"]
           << ", v(disc)=" << r["vdisc_min"] << ", v(j)=" << r["vj"] << ", " << r["reduction"].get<std::string>() << "\n";
    os << "  a_ell:";
    for (auto& [k, v] : j["traces"].items()) os << " " << k << ":" << v;
    os << "\n";
    return os.str();
}

std::string render_text(const CongruenceVerdict& v) {
    std::ostringstream os;
    os << "congruence mod " << v.p << ": " << v.status() << " (bound " << v.bound_used << ", "
       << v.checked_primes.size() << " primes compared, " << v.skipped_primes.size() << " skipped)\n";
    if (v.refutation)
        os << "  a_" << v.refutation->ell << ": " << v.refutation->a1 << " vs " << v.refutation->a2 << "\n";
    return os.str();
}

std::string render_text(const ParityReport& r) {
    std::ostringstream os;
    os << "parity report  p=" << r.p << "  field=" << r.field << "  sigma=" << r.sigma << "\n";
    os << "  Sigma0:";
    for (auto& s : r.sigma0) os << " " << s.place;
    os << "\n";
    for (auto& pr : r.primes) {
        os << "  " << std::left << std::setw(10) << pr.pair.place << " " << std::setw(14) << to_string(pr.pair.c1.reduction)
           << std::setw(14) << to_string(pr.pair.c2.reduction) << std::setw(18) << to_string(pr.pair.row)
           << " delta=" << pr.delta_contribution << " ratio=" << sign(pr.root.ratio) << " ("
           << to_string(pr.root.method) << ")";
        for (auto& c : pr.pair.corrections) os << " <" << c.chi.label << ">_" << c.side << "=" << c.mult;
        os << "\n";
    }
    os << "  delta parity " << r.delta_side_parity << ", root ratio " << sign(r.root_side_ratio) << "\n";
    os << "  bookkeeping: m1=" << r.m1 << " m2=" << r.m2 << " T=" << r.T << " ratio " << sign(r.bookkeeping_ratio)
       << ", parity " << r.thm1_parity << "\n";
    if (r.W1) os << "  W(E1,sigma) = " << sign(*r.W1) << "\n";
    if (r.W2) os << "  W(E2,sigma) = " << sign(*r.W2) << "\n";
    for (auto& a : r.assumptions) os << "  [" << a.status << "] " << a.name << ": " << a.detail << "\n";
    for (auto& n : r.notes) os << "  note: " << n << "\n";
    os << "  consistent: " << (r.thm4_consistent && r.aggregate_consistent ? "yes" : "NO") << "\n";
    return os.str();
}

std::string render_text(const std::vector<AlcRecord>& recs, long p) {
    std::ostringstream os;
    os << "arithmetic local constants, p=" << p << "\n";
    for (auto& r : recs)
        os << "  ell=" << r.ell << " " << to_string(r.r1) << "/" << to_string(r.r2) << " delta=" << r.delta1 << ","
           << r.delta2 << " parity=" << r.parity << " ratio=" << sign(r.local_root_ratio)
           << (r.consistent && r.engine_agrees ? " ok" : " INCONSISTENT") << "\n";
    return os.str();
}

std::string render_text(const SweepResult& r) {
    std::ostringstream os;
    os << "localized sweep: " << r.cases << " cases, " << r.failures << " failures, " << r.undetermined
       << " undetermined, " << r.impossible_skipped << " impossible pairs skipped\n";
    os << "  independently computed root numbers on " << r.absolute_checked << " cases\n";
    for (auto& [row, n] : r.row_coverage) os << "  " << std::left << std::setw(18) << to_string(row) << n << "\n";
    for (auto& e : r.examples) os << "  failure: " << e.description << "\n";
    return os.str();
}

}  // namespace ecp
