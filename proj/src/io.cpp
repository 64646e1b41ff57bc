#include "ecp/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace ecp {

namespace {

Int int_of(const nlohmann::json& x) {
    if (x.is_number_integer()) return Int(std::to_string(x.get<long long>()));
    if (x.is_string()) {
        const std::string s = x.get<std::string>();
        Int v;
        if (s.empty() || v.set_str(s, 10) != 0) throw InputError("not a decimal integer: \"" + s + "\"");
        return v;
    }
    throw InputError("a-invariant must be an integer or a decimal string, got " + x.dump());
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

WeierstrassCurve curve_from_json(const nlohmann::json& rec) {
    const nlohmann::json& arr = rec.is_object() ? rec.at("ainvs") : rec;
    if (!arr.is_array()) throw InputError("ainvs must be an array");
    std::array<Int, 5> a;
    if (arr.size() == 5) {
        for (int i = 0; i < 5; ++i) a[i] = int_of(arr[i]);
    } else if (arr.size() == 6) {
        if (int_of(arr[4]) != 0) throw InputError("six-entry ainvs are read as a1..a6 and need a5 = 0");
        for (int i = 0; i < 4; ++i) a[i] = int_of(arr[i]);
        a[4] = int_of(arr[5]);
    } else {
        throw InputError("ainvs must have 5 entries [a1,a2,a3,a4,a6]");
    }
    std::string label = rec.is_object() ? rec.value("label", std::string()) : std::string();
    try {
        WeierstrassCurve E(a, label);
        if (E.inv().disc == 0) throw MathError("discriminant is zero");
        return E;
    } catch (const MathError& e) {
        throw InputError(std::string("singular Weierstrass equation: ") + e.what());
    }
}

nlohmann::json curve_to_json(const WeierstrassCurve& E) {
    nlohmann::json j;
    if (!E.label.empty()) j["label"] = E.label;
    nlohmann::json a = nlohmann::json::array();
    for (auto& x : E.a) {
        if (x.fits_slong_p())
            a.push_back(x.get_si());
        else
            a.push_back(x.get_str());
    }
    j["ainvs"] = a;
    return j;
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InputError("invalid JSON in " + path.string() + ": " + e.what());
    }
}

std::filesystem::path default_fixture_dir() {
    if (const char* env = std::getenv("ECP_FIXTURE_DIR")) return env;
#ifdef ECP_FIXTURE_DIR
    return ECP_FIXTURE_DIR;
#else
    return "fixtures";
#endif
}

WeierstrassCurve CurveResolver::resolve(const std::string& raw) const {
    const std::string spec = trim(raw);
    if (spec.empty()) throw InputError("empty curve source");
    if (spec.front() == '[' || spec.front() == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(spec);
        } catch (const nlohmann::json::exception& e) {
            throw InputError("invalid inline curve: " + std::string(e.what()));
        }
        return curve_from_json(j);
    }
    std::error_code ec;
    if (std::filesystem::is_regular_file(spec, ec)) return curve_from_json(read_json_file(spec));
    for (auto& f : fixture_files) {
        if (!std::filesystem::is_regular_file(f, ec)) continue;
        auto j = read_json_file(f);
        if (j.contains("curves") && j["curves"].contains(spec)) {
            WeierstrassCurve E = curve_from_json(j["curves"][spec]);
            E.label = spec;
            return E;
        }
    }
    if (!valid_label(spec)) throw FetchError(FetchErrorKind::BadLabel, "'" + spec + "' is not a curve, file or label");
    WeierstrassCurve E = lmfdb_fetch(spec, lmfdb);
    E.label = spec;
    return E;
}

FieldData load_field(const std::string& spec, const std::vector<std::filesystem::path>& search) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) throw InputError("field spec must be custom:<file> or kummer:<m>");
    const std::string kind = spec.substr(0, colon), arg = spec.substr(colon + 1);
    try {
        if (kind == "kummer") {
            std::size_t used = 0;
            long m = std::stol(arg, &used);
            if (used != arg.size()) throw InputError("kummer:<m> needs an integer");
            return s3_kummer_field(m);
        }
        if (kind == "custom") {
            std::filesystem::path p = arg;
            std::error_code ec;
            if (!std::filesystem::is_regular_file(p, ec))
                for (auto& dir : search)
                    if (std::filesystem::is_regular_file(dir / arg, ec)) {
                        p = dir / arg;
                        break;
                    }
            return parse_field(read_json_file(p));
        }
    } catch (const std::invalid_argument&) {
        throw InputError("kummer:<m> needs an integer");
    } catch (const MathError& e) {
        throw InputError(e.what());
    }
    throw InputError("unknown field kind '" + kind + "'");
}

}  // namespace ecp
