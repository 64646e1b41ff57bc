#pragma once

#include "ecp/alc.hpp"
#include "ecp/congruence.hpp"
#include "ecp/parity.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ecp {

// Bad user input; maps to exit status 1.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class FetchErrorKind { Network, CacheMiss, UnknownLabel, Malformed, BadLabel };
std::string to_string(FetchErrorKind k);

struct FetchError : InputError {
    FetchErrorKind kind;
    FetchError(FetchErrorKind k, const std::string& what) : InputError(to_string(k) + ": " + what), kind(k) {}
};

// ---------------------------------------------------------------------------
// io

// {"label"?: str, "ainvs": [a1,a2,a3,a4,a6]} or the indexed [a1..a6] form with a5 = 0; entries may be decimal strings
WeierstrassCurve curve_from_json(const nlohmann::json& rec);
nlohmann::json curve_to_json(const WeierstrassCurve& E);
nlohmann::json read_json_file(const std::filesystem::path& path);

struct LmfdbOptions {
    std::string url_template = "https://www.lmfdb.org/api/ec_curvedata/?label={label}&_format=json";
    std::filesystem::path cache_dir;
    bool offline = false;
    int timeout_seconds = 20;
};

// cache dir from ECP_CACHE_DIR, else XDG_CACHE_HOME/ecp, else ~/.cache/ecp
std::filesystem::path default_cache_dir();
bool valid_label(const std::string& label);

// cache first, then network unless offline; successful fetches are written through atomically
WeierstrassCurve lmfdb_fetch(const std::string& label, const LmfdbOptions& opt);
// body of an ec_curvedata response
WeierstrassCurve parse_lmfdb_response(const std::string& label, const std::string& body);

struct CurveResolver {
    std::vector<std::filesystem::path> fixture_files;
    LmfdbOptions lmfdb;

    // inline JSON array or record, a JSON file, a fixture label, then LMFDB
    WeierstrassCurve resolve(const std::string& spec) const;
};

std::filesystem::path default_fixture_dir();

// "custom:<file>" or "kummer:<m>"
FieldData load_field(const std::string& spec, const std::vector<std::filesystem::path>& search);

// ---------------------------------------------------------------------------
// report

inline constexpr int kReportVersion = 1;

nlohmann::json to_json(const ReductionClass& c);
nlohmann::json to_json(const CongruenceVerdict& v);
nlohmann::json to_json(const ParityReport& r);
nlohmann::json to_json(const AlcRecord& r);
nlohmann::json to_json(const SweepResult& r);
nlohmann::json curve_info_json(const WeierstrassCurve& E);
// wraps a payload with schema name, version and kind
nlohmann::json envelope(const std::string& kind, nlohmann::json payload);

std::string render_text(const CongruenceVerdict& v);
std::string render_text(const ParityReport& r);
std::string render_text(const std::vector<AlcRecord>& recs, long p);
std::string render_text(const SweepResult& r);
std::string curve_info_text(const WeierstrassCurve& E);

// ---------------------------------------------------------------------------

int run_cli(int argc, char** argv);

}  // namespace ecp
