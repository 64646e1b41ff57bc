#include "ecp/cli.hpp"

#include <httplib.h>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <unistd.h>

namespace ecp {

std::string to_string(FetchErrorKind k) {
    switch (k) {
        case FetchErrorKind::Network: return "network failure";
        case FetchErrorKind::CacheMiss: return "cache miss (offline)";
        case FetchErrorKind::UnknownLabel: return "unknown label";
        case FetchErrorKind::Malformed: return "malformed response";
        case FetchErrorKind::BadLabel: return "invalid label";
    }
    return "?";
}

std::filesystem::path default_cache_dir() {
    if (const char* env = std::getenv("ECP_CACHE_DIR"); env && *env) return env;
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return std::filesystem::path(xdg) / "ecp";
    if (const char* home = std::getenv("HOME"); home && *home) return std::filesystem::path(home) / ".cache" / "ecp";
    return ".ecp-cache";
}

bool valid_label(const std::string& label) {
    static const std::regex re(R"(^[1-9][0-9]*\.[a-z]+[1-9][0-9]*$)");
    return std::regex_match(label, re);
}

namespace {

std::string url_encode(const std::string& s) {
    static const char* hex = "0123456789ABCDEF";
    std::string out;
    for (unsigned char c : s) {
        if (std::isalnum(c) || c == '.' || c == '-' || c == '_' || c == '~') {
            out += static_cast<char>(c);
        } else {
            out += '%';
            out += hex[c >> 4];
            out += hex[c & 15];
        }
    }
    return out;
}

std::filesystem::path cache_file(const std::filesystem::path& dir, const std::string& label) {
    return dir / (label + ".json");
}

void write_atomic(const std::filesystem::path& target, const std::string& content) {
    static std::atomic<unsigned> counter{0};
    std::filesystem::create_directories(target.parent_path());
    auto tmp = target;
    tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InputError("cannot write cache file " + tmp.string());
        out << content;
        if (!out.flush()) throw InputError("cannot write cache file " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
}

}  // namespace

WeierstrassCurve parse_lmfdb_response(const std::string& label, const std::string& body) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception&) {
        throw FetchError(FetchErrorKind::Malformed, "response for " + label + " is not JSON");
    }
    const nlohmann::json* rows = nullptr;
    if (j.is_object() && j.contains("data") && j["data"].is_array())
        rows = &j["data"];
    else if (j.is_array())
        rows = &j;
    if (!rows) throw FetchError(FetchErrorKind::Malformed, "response for " + label + " has no data array");
    if (rows->empty()) throw FetchError(FetchErrorKind::UnknownLabel, label);
    const auto& row = rows->front();
    if (!row.is_object() || !row.contains("ainvs"))
        throw FetchError(FetchErrorKind::Malformed, "record for " + label + " lacks ainvs");
    if (row.contains("lmfdb_label") && row["lmfdb_label"] != label)
        throw FetchError(FetchErrorKind::Malformed, "record label " + row["lmfdb_label"].dump() + " != " + label);
    nlohmann::json ainvs = row["ainvs"];
    try {
        if (ainvs.is_string()) ainvs = nlohmann::json::parse(ainvs.get<std::string>());
        WeierstrassCurve E = curve_from_json(ainvs);
        E.label = label;
        return E;
    } catch (const nlohmann::json::exception&) {
        throw FetchError(FetchErrorKind::Malformed, "ainvs for " + label + " unreadable");
    } catch (const FetchError&) {
        throw;
    } catch (const InputError& e) {
        throw FetchError(FetchErrorKind::Malformed, e.what());
    }
}

WeierstrassCurve lmfdb_fetch(const std::string& label, const LmfdbOptions& opt) {
    if (!valid_label(label)) throw FetchError(FetchErrorKind::BadLabel, "'" + label + "'");
    const auto dir = opt.cache_dir.empty() ? default_cache_dir() : opt.cache_dir;
    const auto file = cache_file(dir, label);
    std::error_code ec;
    if (std::filesystem::is_regular_file(file, ec)) {
        try {
            std::ifstream in(file);
            WeierstrassCurve E = curve_from_json(nlohmann::json::parse(in));
            E.label = label;
            return E;
        } catch (const std::exception& e) {
            throw FetchError(FetchErrorKind::Malformed, "cached record " + file.string() + ": " + e.what());
        }
    }
    if (opt.offline) throw FetchError(FetchErrorKind::CacheMiss, label + " not in " + dir.string());

    std::string url = opt.url_template;
    auto pos = url.find("{label}");
    if (pos == std::string::npos) throw InputError("URL template lacks {label}");
    url.replace(pos, 7, url_encode(label));
    static const std::regex split(R"(^(https?://[^/]+)(/.*)?$)");
    std::smatch m;
    if (!std::regex_match(url, m, split)) throw InputError("unsupported URL " + url);
    const std::string host = m[1].str(), path = m[2].matched ? m[2].str() : "/";

    std::string body;
    try {
        httplib::Client cli(host);
        if (!cli.is_valid()) throw FetchError(FetchErrorKind::Network, "client unavailable for " + host);
        cli.set_connection_timeout(opt.timeout_seconds, 0);
        cli.set_read_timeout(opt.timeout_seconds, 0);
        cli.set_follow_location(true);
        auto res = cli.Get(path);
        if (!res) throw FetchError(FetchErrorKind::Network, host + ": " + httplib::to_string(res.error()));
        if (res->status == 404) throw FetchError(FetchErrorKind::UnknownLabel, label);
        if (res->status != 200) throw FetchError(FetchErrorKind::Network, host + ": HTTP " + std::to_string(res->status));
        body = res->body;
    } catch (const FetchError&) {
        throw;
    } catch (const std::exception& e) {
        throw FetchError(FetchErrorKind::Network, e.what());
    }
    WeierstrassCurve E = parse_lmfdb_response(label, body);
    write_atomic(file, curve_to_json(E).dump() + "\n");
    return E;
}

}  // namespace ecp
