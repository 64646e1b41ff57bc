#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ecp/cli.hpp"

#include <httplib.h>

#include <atomic>
#include <iostream>
#include <sstream>
#include <thread>

using namespace ecp;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("ecp-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    static std::atomic<int>& counter() {
        static std::atomic<int> c{0};
        return c;
    }
};

struct FakeLmfdb {
    httplib::Server svr;
    std::thread th;
    int port = 0;
    std::atomic<int> hits{0};

    FakeLmfdb() {
        svr.Get("/api/ec_curvedata/", [this](const httplib::Request& req, httplib::Response& res) {
            ++hits;
            std::string label = req.get_param_value("label");
            if (label == "11.a2")
                res.set_content(R"({"data":[{"lmfdb_label":"11.a2","ainvs":[0,-1,1,-10,-20],"conductor":11}]})",
                                "application/json");
            else if (label == "15.a1")
                res.set_content(R"({"data":[{"ainvs":"[1, 1, 1, -10, -10]"}]})", "application/json");
            else if (label == "13.a1")
                res.set_content("<html>rate limited</html>", "text/html");
            else if (label == "14.a1")
                res.set_content(R"({"data":[{"conductor":14}]})", "application/json");
            else
                res.set_content(R"({"data":[]})", "application/json");
        });
        port = svr.bind_to_any_port("127.0.0.1");
        th = std::thread([this] { svr.listen_after_bind(); });
        svr.wait_until_ready();
    }
    ~FakeLmfdb() {
        svr.stop();
        th.join();
    }
    std::string url() const {
        return "http://127.0.0.1:" + std::to_string(port) + "/api/ec_curvedata/?label={label}&_format=json";
    }
};

FetchErrorKind fetch_kind(const std::string& label, const LmfdbOptions& o) {
    try {
        lmfdb_fetch(label, o);
    } catch (const FetchError& e) {
        return e.kind;
    }
    FAIL("no error");
    return FetchErrorKind::Network;
}

int run(std::vector<std::string> args, std::string* out = nullptr) {
    args.insert(args.begin(), "ecp");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream buf;
    auto* old = std::cout.rdbuf(buf.rdbuf());
    int rc = run_cli(static_cast<int>(argv.size()), argv.data());
    std::cout.rdbuf(old);
    if (out) *out = buf.str();
    return rc;
}

}  // namespace

TEST_CASE("curve records") {
    auto E = curve_from_json(nlohmann::json::parse(R"({"label":"x","ainvs":["0","-1","1","-7820","-263580"]})"));
    CHECK(E.label == "x");
    CHECK(conductor(E) == 11);
    auto F = curve_from_json(nlohmann::json::parse("[0,-1,1,-7820,0,-263580]"));
    CHECK(F.a == E.a);
    CHECK_THROWS_AS(curve_from_json(nlohmann::json::parse("[0,-1,1,-7820,5,-263580]")), InputError);
    CHECK_THROWS_AS(curve_from_json(nlohmann::json::parse("[0,1,2]")), InputError);
    CHECK_THROWS_AS(curve_from_json(nlohmann::json::parse("[0,0,0,0,0]")), InputError);
    CHECK_THROWS_AS(curve_from_json(nlohmann::json::parse(R"(["1x",0,0,1,1])")), InputError);
    auto big = curve_from_json(nlohmann::json::parse(R"([0,0,0,"-123456789012345678901234567890",1])"));
    CHECK(curve_to_json(big)["ainvs"][3] == "-123456789012345678901234567890");
    CHECK(curve_from_json(curve_to_json(E)).a == E.a);
}

TEST_CASE("curve resolution order") {
    CurveResolver r;
    r.fixture_files.push_back(fs::path(ECP_TEST_FIXTURES) / "curves.json");
    r.lmfdb.offline = true;
    TempDir cache;
    r.lmfdb.cache_dir = cache.path;
    CHECK(conductor(r.resolve("[0,-1,1,406,-686]")) == 737);
    CHECK(conductor(r.resolve("364.a1")) == 364);
    // the fixture file keeps the examples' own label for the first curve
    CHECK(r.resolve("11.a2").a == WeierstrassCurve::from_longs(0, -1, 1, -7820, -263580).a);
    TempDir d;
    {
        std::ofstream f(d.path / "c.json");
        f << R"({"ainvs":[0,0,0,1,-10]})";
    }
    CHECK(conductor(r.resolve((d.path / "c.json").string())) == 52);
    CHECK_THROWS_AS(r.resolve("not-a-label"), FetchError);
    CHECK_THROWS_AS(r.resolve("20.a1"), FetchError);
}

TEST_CASE("labels") {
    CHECK(valid_label("11.a2"));
    CHECK(valid_label("392.c1"));
    CHECK_FALSE(valid_label("not-a-label"));
    CHECK_FALSE(valid_label("11a2"));
    CHECK_FALSE(valid_label("../etc.a1"));
}

TEST_CASE("fetching through a local server") {
    FakeLmfdb srv;
    TempDir cache;
    LmfdbOptions o;
    o.url_template = srv.url();
    o.cache_dir = cache.path;

    WeierstrassCurve E = lmfdb_fetch("11.a2", o);
    CHECK(E.a == WeierstrassCurve::from_longs(0, -1, 1, -10, -20).a);
    CHECK(fs::exists(cache.path / "11.a2.json"));
    for (auto& f : fs::directory_iterator(cache.path)) CHECK(f.path().string().find(".tmp") == std::string::npos);
    CHECK(srv.hits == 1);

    // cache hit, no request
    o.offline = true;
    CHECK(lmfdb_fetch("11.a2", o).a == E.a);
    o.offline = false;
    CHECK(lmfdb_fetch("11.a2", o).a == E.a);
    CHECK(srv.hits == 1);

    CHECK(lmfdb_fetch("15.a1", o).a == WeierstrassCurve::from_longs(1, 1, 1, -10, -10).a);
    CHECK(fetch_kind("999.z9", o) == FetchErrorKind::UnknownLabel);
    CHECK(fetch_kind("13.a1", o) == FetchErrorKind::Malformed);
    CHECK(fetch_kind("14.a1", o) == FetchErrorKind::Malformed);
    CHECK(fetch_kind("not-a-label", o) == FetchErrorKind::BadLabel);
    CHECK_FALSE(fs::exists(cache.path / "999.z9.json"));

    o.offline = true;
    CHECK(fetch_kind("37.a1", o) == FetchErrorKind::CacheMiss);
}

TEST_CASE("network failure is distinct from a cache miss") {
    int port;
    {
        httplib::Server s;
        port = s.bind_to_any_port("127.0.0.1");
    }
    TempDir cache;
    LmfdbOptions o;
    o.url_template = "http://127.0.0.1:" + std::to_string(port) + "/?label={label}";
    o.cache_dir = cache.path;
    o.timeout_seconds = 2;
    CHECK(fetch_kind("11.a1", o) == FetchErrorKind::Network);
}

TEST_CASE("lmfdb response parsing") {
    CHECK(parse_lmfdb_response("11.a1", R"([{"ainvs":[0,-1,1,-7820,-263580]}])").a[3] == -7820);
    CHECK_THROWS_AS(parse_lmfdb_response("11.a1", R"({"data":[{"lmfdb_label":"11.a3","ainvs":[0,-1,1,0,0]}]})"),
                    FetchError);
    CHECK_THROWS_AS(parse_lmfdb_response("11.a1", R"({"rows":[]})"), FetchError);
}

TEST_CASE("field specs") {
    std::vector<fs::path> search{ECP_TEST_FIXTURES};
    CHECK(load_field("custom:s3_field.json", search).delta->size() == 6);
    CHECK(load_field("kummer:2", search).kummer_m == 2L);
    CHECK_THROWS_AS(load_field("kummer:x", search), InputError);
    CHECK_THROWS_AS(load_field("cubic:2", search), InputError);
    CHECK_THROWS_AS(load_field("custom:missing.json", search), InputError);
}

TEST_CASE("command line exit codes") {
    const std::string fx = ECP_TEST_FIXTURES;
    std::string out;
    CHECK(run({"--fixtures", fx, "--offline", "parity", "--e1", "11.a2", "--e2", "737.a1", "--p", "3", "--field",
               "custom:d5_field.json", "--sigma", "2dim-a"},
              &out) == 0);
    CHECK(out.find("root ratio +1") != std::string::npos);
    CHECK(run({"--fixtures", fx, "--offline", "--format", "json", "parity", "--e1", "52.a1", "--e2", "364.a1", "--p",
               "5", "--field", "custom:s3_field.json", "--sigma", "2dim"},
              &out) == 0);
    auto j = nlohmann::json::parse(out);
    CHECK(j["schema"] == "ecp-report");
    CHECK(j["version"] == kReportVersion);
    CHECK(j["result"]["root_side_ratio"] == -1);
    CHECK(j["result"]["W2"] == -1);
    CHECK(run({"--fixtures", fx, "congruence", "--e1", "[0,0,0,1,-10]", "--e2", "[0,0,0,-584,5444]", "--p", "5"},
              &out) == 0);
    CHECK(out.find("supported") != std::string::npos);
    CHECK(run({"--fixtures", fx, "alc", "--e1", "56.b1", "--e2", "392.c1", "--p", "3"}, &out) == 0);
    CHECK(run({"--fixtures", fx, "curve-info", "--curve", "737.a1"}, &out) == 0);
    CHECK(out.find("conductor 737") != std::string::npos);

    CHECK(run({"--fixtures", fx, "curve-info", "--curve", "[0,0,0,0,0]"}) == 1);
    CHECK(run({"--fixtures", fx, "congruence", "--e1", "11.a2", "--e2", "737.a1", "--p", "4"}) == 1);
    CHECK(run({"--fixtures", fx, "alc", "--e1", "11.a2", "--e2", "52.a1", "--p", "3"}) == 1);
    CHECK(run({"--fixtures", fx, "--offline", "curve-info", "--curve", "not-a-label"}) == 1);
    CHECK(run({"frobnicate"}) == 1);
    CHECK(run({"--fixtures", fx, "parity", "--e1", "11.a2", "--e2", "737.a1", "--p", "3", "--field",
               "custom:d5_field.json", "--sigma", "nosuch"}) == 1);
}

TEST_CASE("reports are deterministic") {
    const std::string fx = ECP_TEST_FIXTURES;
    std::vector<std::string> args{"--fixtures", fx,   "--format", "json",    "parity",  "--e1",
                                  "56.b1",      "--e2", "392.c1",   "--p",     "3",       "--field",
                                  "custom:zeta19_m2.json",          "--sigma", "2dim"};
    std::string a, b, c;
    CHECK(run(args, &a) == 0);
    CHECK(run(args, &b) == 0);
    args.insert(args.begin(), "--serial");
    CHECK(run(args, &c) == 0);
    CHECK(a == b);
    CHECK(a == c);
}
