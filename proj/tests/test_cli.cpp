#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

// End-to-end checks of the gzk binary: exit codes, artifact layout, config
// merging, determinism of repeated runs. The binary path arrives in GZK_BIN.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out, err;
};

const std::string& bin() {
    static const std::string b = [] {
        const char* p = std::getenv("GZK_BIN");
        REQUIRE_MESSAGE(p != nullptr, "GZK_BIN must point at the gzk binary");
        return std::string(p);
    }();
    return b;
}

const fs::path& scratch() {
    static const fs::path base = [] {
        fs::path p = fs::temp_directory_path() / "gzk_cli_tests";
        fs::remove_all(p);
        fs::create_directories(p);
        return p;
    }();
    return base;
}

fs::path fresh_dir(const std::string& tag) {
    static int counter = 0;
    fs::path p = scratch() / (tag + "_" + std::to_string(counter++));
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), ("cannot open " + p.string()).c_str());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Run run(const std::string& args, const std::string& envs = "") {
    static int counter = 0;
    const fs::path of = scratch() / ("stdout_" + std::to_string(counter));
    const fs::path ef = scratch() / ("stderr_" + std::to_string(counter));
    ++counter;
    const std::string cmd = (envs.empty() ? "" : envs + " ") + bin() + " " + args + " > " +
                            of.string() + " 2> " + ef.string();
    const int rc = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = slurp(of);
    r.err = slurp(ef);
    return r;
}

bool starts_with(const std::string& s, const std::string& prefix) {
    return s.rfind(prefix, 0) == 0;
}

int line_count(const std::string& s) {
    int n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

void write(const fs::path& p, const std::string& body) {
    std::ofstream out(p, std::ios::binary);
    out << body;
}

} // namespace

TEST_CASE("help lists every subcommand and exits zero") {
    const Run r = run("--help");
    CHECK(r.code == 0);
    for (const char* name : {"simulate", "groundstate", "thresholds", "gn-verify",
                             "probe-strichartz", "soliton-test", "plotdata"})
        CHECK(r.out.find(name) != std::string::npos);
}

TEST_CASE("missing subcommand and unknown flags are config errors") {
    const Run none = run("");
    CHECK(none.code == 2);
    CHECK(starts_with(none.err, "E:ConfigError"));
    const Run bad = run("groundstate --k 2 --frobnicate 3");
    CHECK(bad.code == 2);
    CHECK(starts_with(bad.err, "E:ConfigError"));
}

TEST_CASE("groundstate: pinned values, artifacts, byte-identical reruns") {
    const fs::path d1 = fresh_dir("gs"), d2 = fresh_dir("gs");
    const std::string args = "groundstate --k 2 --L 20 --N 256 --snapshot --out ";
    const Run r1 = run(args + d1.string());
    const Run r2 = run(args + d2.string());
    REQUIRE(r1.code == 0);
    REQUIRE(r2.code == 0);

    const auto j = nlohmann::json::parse(r1.out);
    CHECK(j.at("k").get<int>() == 2);
    CHECK(j.at("mass_sq").get<double>() == doctest::Approx(11.70089652).epsilon(1e-5));
    CHECK(j.at("sharp_constant").get<double>() == doctest::Approx(0.17092707).epsilon(1e-4));
    CHECK(j.at("residual").get<double>() < 1e-9 * std::sqrt(j.at("mass_sq").get<double>()));
    CHECK(j.at("s_k").get<double>() == 0.0);

    REQUIRE(fs::exists(d1 / "groundstate_k2.json"));
    REQUIRE(fs::exists(d1 / "groundstate_k2.gzkf"));
    CHECK(r1.out == r2.out);
    CHECK(slurp(d1 / "groundstate_k2.json") == slurp(d2 / "groundstate_k2.json"));
    CHECK(slurp(d1 / "groundstate_k2.gzkf") == slurp(d2 / "groundstate_k2.gzkf"));
    CHECK(slurp(d1 / "groundstate_k2.json") == r1.out);
}

TEST_CASE("config files merge under explicit flags") {
    const fs::path cfgdir = fresh_dir("cfg");
    const fs::path dflag = fresh_dir("cfg_flag");

    // sectioned config steers the groundstate solve; the --out flag must win
    // over the out value in the file
    const fs::path cfg = cfgdir / "run.ini";
    write(cfg, "[groundstate]\nk = 1\nN = 128\nL = 16\n# comment\nout = " +
                   (cfgdir / "from_config").string() + "\n");
    const Run r = run("--config " + cfg.string() + " groundstate --out " + dflag.string());
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("k").get<int>() == 1);
    CHECK(fs::exists(dflag / "groundstate_k1.json"));
    CHECK(!fs::exists(cfgdir / "from_config"));

    // sectionless keys bind to the invoked subcommand
    const fs::path cfg2 = cfgdir / "plain.ini";
    write(cfg2, "k = 1\nN = 128\nL = 16\n");
    const Run r2 = run("--config " + cfg2.string() + " groundstate");
    REQUIRE(r2.code == 0);
    CHECK(nlohmann::json::parse(r2.out).at("k").get<int>() == 1);
    CHECK(r2.out == r.out); // same solve either way
}

TEST_CASE("config rejection: unknown keys, unknown sections, malformed lines") {
    const fs::path d = fresh_dir("badcfg");
    const fs::path outdir = d / "never";

    write(d / "bad_key.ini", "[groundstate]\nbogus = 1\n");
    const Run rk = run("--config " + (d / "bad_key.ini").string() + " groundstate --out " +
                       outdir.string());
    CHECK(rk.code == 2);
    CHECK(starts_with(rk.err, "E:ConfigError"));
    CHECK(rk.err.find("unknown config key: groundstate.bogus") != std::string::npos);
    CHECK(!fs::exists(outdir)); // rejected before any work happened

    write(d / "bad_section.ini", "[warp-drive]\nk = 2\n");
    const Run rs = run("--config " + (d / "bad_section.ini").string() + " groundstate");
    CHECK(rs.code == 2);
    CHECK(rs.err.find("unknown config section") != std::string::npos);

    write(d / "bad_line.ini", "k 2\n");
    const Run rl = run("--config " + (d / "bad_line.ini").string() + " groundstate");
    CHECK(rl.code == 2);
    CHECK(rl.err.find("line 1") != std::string::npos);

    write(d / "bad_value.ini", "[groundstate]\nN = soon\n");
    const Run rv = run("--config " + (d / "bad_value.ini").string() + " groundstate");
    CHECK(rv.code == 2);
    CHECK(starts_with(rv.err, "E:ConfigError"));

    const Run rm = run("--config " + (d / "missing.ini").string() + " groundstate");
    CHECK(rm.code == 4); // unreadable config file is an IO failure
}

TEST_CASE("simulate: preset plus overrides, diagnostics artifact, determinism") {
    const fs::path d1 = fresh_dir("sim"), d2 = fresh_dir("sim");
    const std::string args =
        "simulate --preset conservation --t-end 0.05 --nx 128 --ny 32 --out ";
    const Run r1 = run(args + d1.string());
    REQUIRE(r1.code == 0);
    CHECK(r1.out.find("dM/M") != std::string::npos);

    const std::string csv = slurp(d1 / "diagnostics.csv");
    CHECK(starts_with(csv, "t,mass,energy,grad_norm_sq,linf,X_t\n"));
    // stride 10 over 50 steps: initial row + 5 recorded rows
    CHECK(line_count(csv) == 7);

    const Run r2 = run(args + d2.string());
    REQUIRE(r2.code == 0);
    CHECK(slurp(d2 / "diagnostics.csv") == csv);
    // summaries agree except for the echoed output paths
    CHECK(r2.out.substr(0, r2.out.find("artifacts:")) ==
          r1.out.substr(0, r1.out.find("artifacts:")));
}

TEST_CASE("simulate: guard halt exits 3 but still writes artifacts") {
    const fs::path d = fresh_dir("halt");
    const Run r = run("simulate --ic gaussian --a 0.5 --linf-halt 0.4 --t-end 0.01 "
                      "--nx 64 --ny 16 --out " + d.string());
    CHECK(r.code == 3);
    CHECK(starts_with(r.err, "E:NonFinite"));
    CHECK(fs::exists(d / "diagnostics.csv")); // failure is reported after the write
}

TEST_CASE("soliton-test: json summary on stdout and on disk") {
    const fs::path d = fresh_dir("sol");
    const Run r = run("soliton-test --k 1 --c 1 --nx 256 --ny 8 --t-end 0.05 --out " +
                      d.string());
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("k").get<int>() == 1);
    CHECK(j.at("shape_error").get<double>() < 1e-6);
    CHECK(j.at("y_variation").get<double>() < 1e-10);
    CHECK(j.at("mass_drift").get<double>() < 1e-10);
    CHECK(slurp(d / "soliton.json") == r.out);
}

TEST_CASE("thresholds: small k=3 datum is certified global") {
    const fs::path d = fresh_dir("thr");
    const Run r = run("thresholds --k 3 --ic modulated-gaussian --a 0.3 --mod-amp 0 "
                      "--nx 128 --ny 32 --gs-N 256 --ny-part 256 --out " + d.string());
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(slurp(d / "threshold.json"));
    CHECK(j.at("gr1_holds").get<bool>());
    CHECK(j.at("gr2_holds").get<bool>());
    CHECK(j.at("verdict").get<std::string>() == "GlobalByTheorem");
    CHECK(j.at("x0").get<double>() > j.at("X0").get<double>());
}

TEST_CASE("gn-verify: csv artifacts with the advertised shapes") {
    const fs::path d = fresh_dir("gn");
    const Run r = run("gn-verify --k 2 --trials 3 --gs-N 256 --ny-part 64 --out " + d.string());
    REQUIRE(r.code == 0);
    CHECK(r.out.find("violations=0") != std::string::npos);
    CHECK(line_count(slurp(d / "sgn.csv")) == 4);           // header + one row per trial
    CHECK(line_count(slurp(d / "falsification.csv")) == 5); // header + four lambdas
    CHECK(line_count(slurp(d / "concentration.csv")) == 4); // header + three dilations
    CHECK(starts_with(slurp(d / "falsification.csv"), "lambda,ratio\n"));
}

TEST_CASE("probe-strichartz: probe.json and the plotdata projection") {
    const fs::path d1 = fresh_dir("probe"), d2 = fresh_dir("probe");
    const std::string args = "probe-strichartz --scales 1,2 --trials 2 --nt 64 --out ";
    const Run r1 = run(args + d1.string());
    REQUIRE(r1.code == 0);
    const auto j = nlohmann::json::parse(slurp(d1 / "probe.json"));
    CHECK(j.at("per_scale").size() == 2);
    CHECK(j.at("trials").get<int>() == 2);

    const Run r2 = run(args + d2.string());
    REQUIRE(r2.code == 0);
    CHECK(slurp(d2 / "probe.json") == slurp(d1 / "probe.json"));

    const Run rp = run("plotdata " + d1.string());
    REQUIRE(rp.code == 0);
    const std::string pc = slurp(d1 / "plot_probe.csv");
    CHECK(starts_with(pc, "N,max_ratio\n"));
    CHECK(line_count(pc) == 3);
}

TEST_CASE("plotdata: diagnostics plus threshold report yield the X(t) columns") {
    const fs::path d = fresh_dir("plot");
    const Run rs = run("simulate --preset conservation --t-end 0.02 --nx 64 --ny 16 --out " +
                       d.string());
    REQUIRE(rs.code == 0);
    // borrow a threshold report so the X(t) projection has its x0 line
    const Run rt = run("thresholds --k 3 --ic modulated-gaussian --a 0.3 --mod-amp 0 "
                       "--nx 64 --ny 16 --gs-N 128 --ny-part 64 --out " + d.string());
    REQUIRE(rt.code == 0);

    const Run rp = run("plotdata " + d.string());
    REQUIRE(rp.code == 0);
    const std::string mass = slurp(d / "plot_mass.csv");
    CHECK(starts_with(mass, "t,mass\n"));
    CHECK(line_count(mass) == line_count(slurp(d / "diagnostics.csv")));
    const std::string x = slurp(d / "plot_X.csv");
    CHECK(starts_with(x, "t,X_t,x0\n"));

    const Run empty = run("plotdata " + fresh_dir("empty").string());
    CHECK(empty.code == 4);
    CHECK(starts_with(empty.err, "E:MissingArtifact"));

    const Run noarg = run("plotdata");
    CHECK(noarg.code == 2);
}

TEST_CASE("GZK_THREADS is validated before any work") {
    CHECK(run("--help", "GZK_THREADS=1").code == 0);
    CHECK(run("--help", "GZK_THREADS=4").code == 0);
    const Run bad = run("--help", "GZK_THREADS=zippy");
    CHECK(bad.code == 2);
    CHECK(starts_with(bad.err, "E:ConfigError"));
    CHECK(run("--help", "GZK_THREADS=0").code == 2);
    CHECK(run("--help", "GZK_THREADS=-3").code == 2);
}

TEST_CASE("domain violations surface as exit 3 with the error class") {
    // soliton tail does not fit on a short cylinder at small speed
    const Run r = run("soliton-test --k 1 --c 0.25 --Lx 8 --nx 128 --ny 8 --t-end 0.01");
    CHECK(r.code == 3);
    CHECK(starts_with(r.err, "E:DomainTooSmall"));
}
