#include "ecp/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace ecp {

namespace {

struct Common {
    std::string format = "text";
    bool offline = false;
    std::string cache_dir;
    std::string url_template;
    std::string fixtures;
    bool serial = false;

    Exec exec() const { return serial ? Exec::Serial : Exec::Parallel; }
    std::filesystem::path fixture_dir() const { return fixtures.empty() ? default_fixture_dir() : std::filesystem::path(fixtures); }
    CurveResolver resolver() const {
        CurveResolver r;
        r.fixture_files.push_back(fixture_dir() / "curves.json");
        r.lmfdb.offline = offline;
        if (!cache_dir.empty()) r.lmfdb.cache_dir = cache_dir;
        if (!url_template.empty()) r.lmfdb.url_template = url_template;
        return r;
    }
};

void emit(const Common& c, const std::string& kind, const nlohmann::json& payload, const std::string& text) {
    if (c.format == "json")
        std::cout << envelope(kind, payload).dump(2) << "\n";
    else
        std::cout << text;
}

void require_prime(long p) {
    if (p < 3 || !is_prime(p)) throw InputError("p must be an odd prime");
}

void require_congruent(const WeierstrassCurve& E1, const WeierstrassCurve& E2, long p, Exec exec) {
    CongruenceVerdict v = check_congruence(E1, E2, p, std::nullopt, exec);
    if (!v.supported())
        throw InputError("curves are not congruent mod " + std::to_string(p) + " (a_" +
                         std::to_string(v.refutation->ell) + " differs)");
}

}  // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"Parity of twisted Selmer ranks for congruent elliptic curves"};
    app.require_subcommand(1);
    Common c;
    app.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_flag("--offline", c.offline, "Serve LMFDB labels from the cache only");
    app.add_option("--cache-dir", c.cache_dir, "LMFDB cache directory (default: $ECP_CACHE_DIR)");
    app.add_option("--lmfdb-url", c.url_template, "LMFDB URL template containing {label}");
    app.add_option("--fixtures", c.fixtures, "Fixture directory");
    app.add_flag("--serial", c.serial, "Run kernels on one thread");

    std::string curve, e1, e2, field, sigma;
    long p = 0;
    std::optional<long> bound;
    std::vector<long> sweep_primes{3, 5, 7};

    auto* info = app.add_subcommand("curve-info", "Invariants and local Tate data");
    info->add_option("--curve", curve, "Curve: [a1,a2,a3,a4,a6], JSON file, or label")->required();

    auto* cong = app.add_subcommand("congruence", "Compare traces of Frobenius mod p up to the Sturm bound");
    cong->add_option("--e1", e1)->required();
    cong->add_option("--e2", e2)->required();
    cong->add_option("--p", p)->required();
    cong->add_option("--bound", bound, "Override the coefficient bound");

    auto* par = app.add_subcommand("parity", "Twisted parity report");
    par->add_option("--e1", e1)->required();
    par->add_option("--e2", e2)->required();
    par->add_option("--p", p)->required();
    par->add_option("--field", field, "custom:<file.json> or kummer:<m>")->required();
    par->add_option("--sigma", sigma, "Orthogonal irreducible of the Galois group, by name")->required();

    auto* alc = app.add_subcommand("alc", "Trivial-twist local constants at the bad primes");
    alc->add_option("--e1", e1)->required();
    alc->add_option("--e2", e2)->required();
    alc->add_option("--p", p)->required();

    auto* self = app.add_subcommand("selftest", "Exhaustive localized sweep");
    self->add_option("--primes", sweep_primes, "Primes p to sweep")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*info) {
            WeierstrassCurve E = c.resolver().resolve(curve);
            emit(c, "curve-info", curve_info_json(E), curve_info_text(E));
            return 0;
        }
        if (*cong) {
            require_prime(p);
            auto R = c.resolver();
            WeierstrassCurve E1 = R.resolve(e1), E2 = R.resolve(e2);
            CongruenceVerdict v = check_congruence(E1, E2, p, bound, c.exec());
            emit(c, "congruence", to_json(v), render_text(v));
            return 0;
        }
        if (*par) {
            require_prime(p);
            auto R = c.resolver();
            WeierstrassCurve E1 = R.resolve(e1), E2 = R.resolve(e2);
            require_congruent(E1, E2, p, c.exec());
            FieldData F = load_field(field, {std::filesystem::current_path(), c.fixture_dir()});
            SigmaSpec s;
            try {
                s = make_sigma(F.delta, sigma);
            } catch (const MathError& e) {
                throw InputError(e.what());
            }
            ParityReport rep = global_report(E1, E2, s, F, p, c.exec());
            emit(c, "parity", to_json(rep), render_text(rep));
            return rep.thm4_consistent && rep.aggregate_consistent ? 0 : 2;
        }
        if (*alc) {
            require_prime(p);
            auto R = c.resolver();
            WeierstrassCurve E1 = R.resolve(e1), E2 = R.resolve(e2);
            require_congruent(E1, E2, p, c.exec());
            auto recs = alc_report(E1, E2, p);
            nlohmann::json arr = nlohmann::json::array();
            bool ok = true;
            for (auto& r : recs) {
                arr.push_back(to_json(r));
                ok = ok && r.consistent && r.engine_agrees;
            }
            nlohmann::json payload{{"p", p}, {"records", arr}, {"syl", "declared"}};
            emit(c, "alc", payload, render_text(recs, p));
            return ok ? 0 : 2;
        }
        if (*self) {
            for (long q : sweep_primes) require_prime(q);
            SweepOptions opt;
            opt.primes_p = sweep_primes;
            opt.exec = c.exec();
            SweepResult r = localized_sweep(opt);
            emit(c, "selftest", to_json(r), render_text(r));
            return r.failures == 0 && r.undetermined == 0 && r.cases > 0 && r.all_rows_covered() ? 0 : 2;
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const MathError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace ecp
