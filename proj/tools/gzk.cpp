// gzk: command-line front end for the cylinder gZK toolkit.
//
// Subcommands: simulate, groundstate, thresholds, gn-verify, probe-strichartz,
// soliton-test, plotdata. Options resolve as defaults < preset < config file
// < explicit flags. Every artifact is written atomically and is byte-stable
// for a fixed (config, seed) on the same machine.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gzk/analysis.hpp"
#include "gzk/dynamics.hpp"
#include "gzk/error.hpp"
#include "gzk/functionals.hpp"
#include "gzk/groundstate.hpp"
#include "gzk/io.hpp"
#include "gzk/report.hpp"
#include "gzk/snapshot.hpp"

using namespace gzk;

namespace {

// ---- small config-value parsers (full-consume, ConfigError naming the key)

double to_double(const std::string& s, const std::string& key) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        fail(ErrorClass::ConfigError, "config key " + key + ": not a number: " + s);
    return v;
}

long long to_ll(const std::string& s, const std::string& key) {
    char* end = nullptr;
    const long long v = std::strtoll(s.c_str(), &end, 10);
    if (end == s.c_str() || *end != '\0')
        fail(ErrorClass::ConfigError, "config key " + key + ": not an integer: " + s);
    return v;
}

bool to_bool(const std::string& s, const std::string& key) {
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    fail(ErrorClass::ConfigError, "config key " + key + ": not a boolean: " + s);
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start <= s.size()) {
        const std::size_t comma = s.find(',', start);
        const std::string tok =
            s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        parts.push_back(tok);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return parts;
}

// ---- option registry: couples a CLI11 flag with a config key so config
// files and presets feed the same variables (flags win).

struct KeySet {
    CLI::App* cmd = nullptr;
    std::map<std::string, std::function<void(const std::string&)>> setters;
    std::map<std::string, CLI::Option*> options;

    template <class T>
    void add(const std::string& key, T& var, const std::string& desc) {
        CLI::Option* o = cmd->add_option("--" + key, var, desc);
        if constexpr (std::is_same_v<T, std::vector<double>> ||
                      std::is_same_v<T, std::vector<int>>)
            o->delimiter(',');
        options[key] = o;
        setters[key] = [&var, key](const std::string& s) {
            if constexpr (std::is_same_v<T, double>)
                var = to_double(s, key);
            else if constexpr (std::is_same_v<T, int>)
                var = static_cast<int>(to_ll(s, key));
            else if constexpr (std::is_same_v<T, long long>)
                var = to_ll(s, key);
            else if constexpr (std::is_same_v<T, std::uint64_t>)
                var = static_cast<std::uint64_t>(to_ll(s, key));
            else if constexpr (std::is_same_v<T, std::string>)
                var = s;
            else if constexpr (std::is_same_v<T, std::vector<double>>) {
                var.clear();
                for (const auto& p : split_commas(s)) var.push_back(to_double(p, key));
            } else if constexpr (std::is_same_v<T, std::vector<int>>) {
                var.clear();
                for (const auto& p : split_commas(s))
                    var.push_back(static_cast<int>(to_ll(p, key)));
            } else {
                static_assert(!sizeof(T*), "unsupported option type");
            }
        };
    }

    void add_flag(const std::string& key, bool& var, const std::string& desc) {
        CLI::Option* o = cmd->add_flag("--" + key, var, desc);
        options[key] = o;
        setters[key] = [&var, key](const std::string& s) { var = to_bool(s, key); };
    }

    // Applies key=value pairs that were not given explicitly on the command
    // line. Unknown keys have been screened beforehand.
    void apply(const std::map<std::string, std::string>& kv) {
        for (const auto& [key, value] : kv) {
            const auto it = setters.find(key);
            if (it == setters.end())
                fail(ErrorClass::ConfigError, "unknown config key: " + key);
            if (options[key]->count() > 0) continue; // explicit flag wins
            it->second(value);
        }
    }
};

// ---- config document: "key = value" lines with [section] headers; sections
// name subcommands. Every key must exist in the schema of its section.

struct ConfigDoc {
    // section -> key -> value; sectionless keys live under "".
    std::map<std::string, std::map<std::string, std::string>> sections;
};

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

ConfigDoc parse_config(const std::string& path) {
    const std::string text = io::read_text(path);
    ConfigDoc doc;
    std::string section;
    int lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string line =
            text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
        pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                fail(ErrorClass::ConfigError,
                     "malformed section header on line " + std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            fail(ErrorClass::ConfigError,
                 "malformed config line " + std::to_string(lineno) + " (expected key = value)");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            fail(ErrorClass::ConfigError, "empty key on line " + std::to_string(lineno));
        doc.sections[section][key] = value;
    }
    return doc;
}

// ---- presets: named bundles of config values, one per scripted experiment.

using Preset = std::map<std::string, std::string>;

const std::map<std::string, Preset> kSimulatePresets = {
    {"conservation",
     {{"k", "2"}, {"ic", "gaussian"}, {"a", "0.5"}, {"sigma", "40"}, {"Lx", "32"},
      {"nx", "256"}, {"ny", "64"}, {"dt", "0.001"}, {"t-end", "1"}}},
    {"line-soliton",
     {{"k", "1"}, {"ic", "line-soliton"}, {"c", "1"}, {"Lx", "32"}, {"nx", "512"},
      {"ny", "16"}, {"dt", "0.001"}, {"t-end", "1"}}},
    {"threshold-k2",
     {{"k", "2"}, {"ic", "modulated-gaussian"}, {"a", "1"}, {"width", "2"},
      {"mod-amp", "0.3"}, {"mass-frac", "0.9"}, {"c-kt-partition", "true"}, {"Lx", "32"},
      {"nx", "256"}, {"ny", "64"}, {"dt", "0.001"}, {"t-end", "1"}}},
    {"threshold-k3",
     {{"k", "3"}, {"ic", "modulated-gaussian"}, {"a", "0.3"}, {"width", "2"},
      {"mod-amp", "0"}, {"c-kt-partition", "true"}, {"Lx", "32"}, {"nx", "256"},
      {"ny", "64"}, {"dt", "0.001"}, {"t-end", "1"}}},
};

const std::map<std::string, Preset> kGnPresets = {
    {"acceptance",
     {{"trials", "100"}, {"lambdas", "1,0.5,0.25,0.125"}, {"conc-lambdas", "4,8,16"}}},
};

const std::map<std::string, Preset> kProbePresets = {
    {"acceptance",
     {{"scales", "1,2,4,8,16,32,64"}, {"trials", "20"}, {"nt", "512"}}},
};

Preset lookup_preset(const std::map<std::string, Preset>& table, const std::string& name) {
    if (name.empty()) return {};
    const auto it = table.find(name);
    if (it == table.end()) fail(ErrorClass::ConfigError, "unknown preset: " + name);
    return it->second;
}

// ---- shared helpers

functionals::PartitionProfile profile_from_string(const std::string& s) {
    if (s == "cosine") return functionals::PartitionProfile::CosineBump;
    if (s == "polynomial") return functionals::PartitionProfile::PolynomialBump;
    fail(ErrorClass::ConfigError, "profile must be cosine or polynomial, got: " + s);
}

void write_file(const std::string& dir, const std::string& name, const std::string& body) {
    std::filesystem::create_directories(dir);
    io::atomic_write(dir + "/" + name, body);
}

std::string scan_csv(const std::vector<functionals::ScanPoint>& pts) {
    std::string out = "lambda,ratio\n";
    char buf[96];
    for (const auto& p : pts) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", p.lambda, p.ratio);
        out += buf;
    }
    return out;
}

void validate_threads_env() {
    if (const char* s = std::getenv("GZK_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(s, &end, 10);
        if (*s == '\0' || *end != '\0' || v < 1)
            fail(ErrorClass::ConfigError, "GZK_THREADS must be a positive integer");
        // All kernels are currently single logical thread per process; the
        // cap is validated and reserved.
    }
}

// ---- subcommand option structs

struct SimulateOpts {
    std::string preset, ic = "gaussian", out = "run", profile = "cosine";
    int k = 2, nx = 256, ny = 64, snapshot_stride = 0, diagnostics_stride = 10;
    int sign = 1, ny_part = 512;
    double Lx = 32.0, dt = 1e-3, t_end = 1.0;
    double a = 0.5, sigma = 40.0, width = 2.0, mod_amp = 0.0, c = 1.0, eps = 0.1;
    double mass_frac = -1.0, c_kt = 0.0, linf_halt = 1e6;
    bool c_kt_partition = false;
};

struct GroundstateOpts {
    int k = 2, N = 512, max_iter = 500;
    double L = 20.0, tol = 1e-12;
    std::string out;
    bool snapshot = false;
};

struct ThresholdsOpts {
    std::string ic = "modulated-gaussian", out = "run-thresholds", profile = "cosine";
    int k = 3, nx = 256, ny = 64, ny_part = 512, gs_N = 512;
    double Lx = 32.0, gs_L = 20.0;
    double a = 0.3, sigma = 40.0, width = 2.0, mod_amp = 0.0, c = 1.0, eps = 0.1;
    double mass_frac = -1.0;
};

struct GnVerifyOpts {
    std::string preset, out = "run-gn", profile = "cosine";
    int k = 2, trials = 100, ny_part = 512, gs_N = 512;
    double gs_L = 20.0;
    std::uint64_t seed = 1234;
    std::vector<double> lambdas = {1.0, 0.5, 0.25, 0.125};
    std::vector<double> conc_lambdas = {4.0, 8.0, 16.0};
};

struct ProbeOpts {
    std::string preset, out = "run-probe";
    std::uint64_t seed = 1234;
    std::vector<int> scales = {1, 2, 4, 8, 16, 32, 64};
    int trials = 20, nt = 512;
    double s = 1.0 / 6.0, b = 0.375, Lx = 8.0;
};

struct SolitonOpts {
    std::string out;
    int k = 1, nx = 512, ny = 16;
    double c = 1.0, Lx = 32.0, dt = 1e-3, t_end = 1.0;
};

// ---- initial data shared by simulate/thresholds

struct IcParams {
    std::string ic;
    int k;
    double a, sigma, width, mod_amp, c, eps, mass_frac;
    double gs_L = 20.0;
    int gs_N = 256;
};

Field build_ic(const Grid& g, const IcParams& p) {
    Field u = [&] {
        if (p.ic == "gaussian") return dynamics::ic_gaussian(g, p.a, p.sigma);
        if (p.ic == "modulated-gaussian")
            return dynamics::ic_modulated_gaussian(g, p.a, p.width, p.mod_amp);
        if (p.ic == "line-soliton") return dynamics::ic_line_soliton(g, p.k, p.c);
        if (p.ic == "perturbed-soliton")
            return dynamics::ic_perturbed_soliton(g, p.k, p.c, p.eps);
        fail(ErrorClass::ConfigError, "unknown ic: " + p.ic);
    }();
    if (p.mass_frac > 0.0) {
        const auto gs = groundstate::petviashvili_solve(p.k, p.gs_L, p.gs_N);
        u = dynamics::rescale_mass(u, p.mass_frac * p.mass_frac * gs.mass_sq);
    }
    return u;
}

// ---- subcommand drivers

int cmd_simulate(const SimulateOpts& o) {
    dynamics::SimConfig cfg;
    cfg.k = o.k;
    cfg.sign = o.sign;
    cfg.Lx = o.Lx;
    cfg.nx = o.nx;
    cfg.ny = o.ny;
    cfg.dt = o.dt;
    cfg.t_end = o.t_end;
    cfg.snapshot_stride = o.snapshot_stride;
    cfg.diagnostics_stride = o.diagnostics_stride;
    cfg.linf_halt = o.linf_halt;
    cfg.out_dir = o.snapshot_stride > 0 ? o.out : "";
    cfg.c_kt = o.c_kt_partition
                   ? functionals::build_partition(profile_from_string(o.profile), o.ny_part)
                         .c_bound
                   : o.c_kt;
    cfg.validate();

    const Grid g = Grid::cylinder(o.Lx, o.nx, o.ny);
    const Field u0 = build_ic(
        g, {o.ic, o.k, o.a, o.sigma, o.width, o.mod_amp, o.c, o.eps, o.mass_frac});
    const auto res = dynamics::evolve(u0, cfg);

    write_file(o.out, "diagnostics.csv", dynamics::diagnostics_csv(res.diagnostics));
    const auto& first = res.diagnostics.front();
    const auto& last = res.diagnostics.back();
    std::printf("simulate: k=%d grid %dx%d dt=%g steps=%lld\n", o.k, o.nx, o.ny, o.dt,
                res.steps_taken);
    std::printf("t=%.17g mass=%.17g energy=%.17g\n", last.t, last.mass, last.energy);
    std::printf("dM/M=%.3e dH/(|H|+1)=%.3e\n",
                std::fabs(last.mass - first.mass) / first.mass,
                std::fabs(last.energy - first.energy) / (std::fabs(first.energy) + 1.0));
    std::printf("artifacts: %s/diagnostics.csv\n", o.out.c_str());
    if (res.halted) fail(ErrorClass::NonFinite, "run halted at t=" + std::to_string(res.t_final) +
                                                    ": " + res.halt_reason);
    return 0;
}

int cmd_groundstate(const GroundstateOpts& o) {
    const auto gs = groundstate::petviashvili_solve(o.k, o.L, o.N, o.tol, o.max_iter);
    const std::string body = report::groundstate_json(gs);
    std::fputs(body.c_str(), stdout);
    if (!o.out.empty()) {
        const std::string stem = "groundstate_k" + std::to_string(o.k);
        write_file(o.out, stem + ".json", body);
        if (o.snapshot) {
            std::filesystem::create_directories(o.out);
            write_snapshot(o.out + "/" + stem + ".gzkf", gs.profile, 0.0);
        }
    }
    return 0;
}

int cmd_thresholds(const ThresholdsOpts& o) {
    const auto gs = groundstate::petviashvili_solve(o.k, o.gs_L, o.gs_N);
    const double c_kt =
        functionals::build_partition(profile_from_string(o.profile), o.ny_part).c_bound;
    const Grid g = Grid::cylinder(o.Lx, o.nx, o.ny);
    const Field u0 = build_ic(g, {o.ic, o.k, o.a, o.sigma, o.width, o.mod_amp, o.c, o.eps,
                                  o.mass_frac, o.gs_L, o.gs_N});
    const auto rep = functionals::threshold_report(u0, o.k, gs, c_kt);
    const std::string body = report::threshold_json(rep);
    std::fputs(body.c_str(), stdout);
    write_file(o.out, "threshold.json", body);
    return 0;
}

int cmd_gn_verify(const GnVerifyOpts& o) {
    const auto gs = groundstate::petviashvili_solve(o.k, o.gs_L, o.gs_N);
    const auto pc = functionals::build_partition(profile_from_string(o.profile), o.ny_part);
    const auto rep =
        functionals::verify_sgn_suite(o.k, gs.sharp_constant, pc.c_bound, o.trials, o.seed);
    write_file(o.out, "sgn.csv", functionals::sgn_report_csv(rep));
    write_file(o.out, "falsification.csv",
               scan_csv(functionals::falsification_scan(o.k, gs.sharp_constant, o.lambdas)));
    write_file(o.out, "concentration.csv",
               scan_csv(functionals::concentration_scan(gs, o.conc_lambdas)));
    std::printf("gn-verify: k=%d trials=%d violations=%d max_ratio=%.6f C_kR=%.8f C_kT=%.4f\n",
                o.k, o.trials, rep.violations, rep.max_ratio, gs.sharp_constant, pc.c_bound);
    std::printf("artifacts: %s/{sgn.csv,falsification.csv,concentration.csv}\n", o.out.c_str());
    if (rep.violations > 0)
        fail(ErrorClass::NoConvergence, "randomized suite found an inequality violation");
    return 0;
}

int cmd_probe(const ProbeOpts& o) {
    const auto rep =
        analysis::strichartz_ratio_scan(o.seed, o.scales, o.trials, o.s, o.b, o.nt, o.Lx);
    const std::string body = report::probe_json(rep);
    write_file(o.out, "probe.json", body);
    std::printf("probe-strichartz: s=%g b=%g trials=%d slope=%.4f\n", o.s, o.b, o.trials,
                rep.slope);
    std::printf("artifacts: %s/probe.json\n", o.out.c_str());
    return 0;
}

int cmd_soliton_test(const SolitonOpts& o) {
    dynamics::SimConfig cfg;
    cfg.k = o.k;
    cfg.Lx = o.Lx;
    cfg.nx = o.nx;
    cfg.ny = o.ny;
    cfg.dt = o.dt;
    cfg.t_end = o.t_end;
    cfg.diagnostics_stride = 0;
    cfg.validate();
    const Grid g = Grid::cylinder(o.Lx, o.nx, o.ny);
    const Field u0 = dynamics::ic_line_soliton(g, o.k, o.c);
    const auto res = dynamics::evolve(u0, cfg);
    if (res.halted) fail(ErrorClass::NonFinite, "run halted: " + res.halt_reason);
    const auto chk = dynamics::soliton_check(u0, res.final_state, o.c, res.t_final);
    const double drift = std::fabs(res.diagnostics.back().mass - res.diagnostics.front().mass) /
                         res.diagnostics.front().mass;
    nlohmann::json j{{"k", o.k},          {"c", o.c},
                     {"t_end", o.t_end},  {"dt", o.dt},
                     {"shape_error", chk.shape_error}, {"y_variation", chk.y_variation},
                     {"mass_drift", drift}};
    const std::string body = j.dump(2) + "\n";
    std::fputs(body.c_str(), stdout);
    if (!o.out.empty()) write_file(o.out, "soliton.json", body);
    return 0;
}

int cmd_plotdata(const std::string& dir) {
    namespace fs = std::filesystem;
    bool any = false;
    char buf[160];
    if (fs::exists(dir + "/diagnostics.csv")) {
        const std::string text = io::read_text(dir + "/diagnostics.csv");
        std::vector<std::array<double, 6>> rows;
        std::size_t pos = text.find('\n'); // skip header
        while (pos != std::string::npos && pos + 1 < text.size()) {
            const std::size_t end = text.find('\n', pos + 1);
            const std::string line =
                text.substr(pos + 1, end == std::string::npos ? std::string::npos : end - pos - 1);
            pos = end;
            if (trim(line).empty()) continue;
            const auto parts = split_commas(line);
            if (parts.size() != 6)
                fail(ErrorClass::IoError, "malformed diagnostics row in " + dir);
            std::array<double, 6> r{};
            for (int i = 0; i < 6; ++i) r[i] = to_double(parts[i], "diagnostics");
            rows.push_back(r);
        }
        std::string mass_csv = "t,mass\n";
        for (const auto& r : rows) {
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", r[0], r[1]);
            mass_csv += buf;
        }
        io::atomic_write(dir + "/plot_mass.csv", mass_csv);
        any = true;
        if (fs::exists(dir + "/threshold.json")) {
            const auto j = nlohmann::json::parse(io::read_text(dir + "/threshold.json"));
            const double x0 = j.value("x0", 0.0);
            std::string x_csv = "t,X_t,x0\n";
            for (const auto& r : rows) {
                std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", r[0], r[5], x0);
                x_csv += buf;
            }
            io::atomic_write(dir + "/plot_X.csv", x_csv);
        }
    }
    if (fs::exists(dir + "/falsification.csv")) {
        io::atomic_write(dir + "/plot_gn_ratio.csv", io::read_text(dir + "/falsification.csv"));
        any = true;
    }
    if (fs::exists(dir + "/probe.json")) {
        const auto j = nlohmann::json::parse(io::read_text(dir + "/probe.json"));
        std::string probe_csv = "N,max_ratio\n";
        for (const auto& st : j.at("per_scale")) {
            std::snprintf(buf, sizeof(buf), "%d,%.17g\n", st.at("N").get<int>(),
                          st.at("max_ratio").get<double>());
            probe_csv += buf;
        }
        io::atomic_write(dir + "/plot_probe.csv", probe_csv);
        any = true;
    }
    if (!any)
        fail(ErrorClass::MissingArtifact, "no recognized artifacts in run directory: " + dir);
    std::printf("plotdata: wrote plot files into %s\n", dir.c_str());
    return 0;
}

int run_cli(int argc, char** argv) {
    validate_threads_env();

    CLI::App app{"cylinder gZK simulation and variational-analysis toolkit"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "key = value config file with [subcommand] sections");

    SimulateOpts so;
    GroundstateOpts go;
    ThresholdsOpts to;
    GnVerifyOpts vo;
    ProbeOpts po;
    SolitonOpts lo;
    std::string plot_dir;

    KeySet sim;
    sim.cmd = app.add_subcommand("simulate", "integrate the equation from an initial datum");
    sim.cmd->add_option("--preset", so.preset,
                        "conservation | line-soliton | threshold-k2 | threshold-k3");
    sim.add("k", so.k, "nonlinearity order");
    sim.add("sign", so.sign, "+1 focusing, -1 defocusing");
    sim.add("Lx", so.Lx, "half-length of the x interval");
    sim.add("nx", so.nx, "x modes");
    sim.add("ny", so.ny, "y modes");
    sim.add("dt", so.dt, "time step");
    sim.add("t-end", so.t_end, "final time (integer multiple of dt)");
    sim.add("ic", so.ic, "gaussian | modulated-gaussian | line-soliton | perturbed-soliton");
    sim.add("a", so.a, "datum amplitude");
    sim.add("sigma", so.sigma, "gaussian y stiffness");
    sim.add("width", so.width, "modulated-gaussian x width");
    sim.add("mod-amp", so.mod_amp, "modulated-gaussian y modulation");
    sim.add("c", so.c, "soliton speed");
    sim.add("eps", so.eps, "soliton perturbation amplitude");
    sim.add("mass-frac", so.mass_frac, "rescale datum to this fraction of ||Q_k||_2");
    sim.add("c-kt", so.c_kt, "constant in the X(t) diagnostic column");
    sim.add_flag("c-kt-partition", so.c_kt_partition, "use the partition-derived constant");
    sim.add("profile", so.profile, "partition profile: cosine | polynomial");
    sim.add("ny-part", so.ny_part, "partition grid");
    sim.add("snapshot-stride", so.snapshot_stride, "GZKF snapshot every this many steps");
    sim.add("diagnostics-stride", so.diagnostics_stride, "CSV row every this many steps");
    sim.add("linf-halt", so.linf_halt, "blow-up guard on the sup norm");
    sim.add("out", so.out, "output directory");

    KeySet gnd;
    gnd.cmd = app.add_subcommand("groundstate", "Petviashvili solve on a square box");
    gnd.add("k", go.k, "nonlinearity order");
    gnd.add("L", go.L, "box half-length");
    gnd.add("N", go.N, "modes per direction");
    gnd.add("tol", go.tol, "relative residual target");
    gnd.add("max-iter", go.max_iter, "iteration cap");
    gnd.add("out", go.out, "output directory (stdout only when empty)");
    gnd.add_flag("snapshot", go.snapshot, "also write the profile as GZKF");

    KeySet thr;
    thr.cmd = app.add_subcommand("thresholds", "global-existence predicates for a datum");
    thr.add("k", to.k, "nonlinearity order (>= 2)");
    thr.add("Lx", to.Lx, "half-length of the x interval");
    thr.add("nx", to.nx, "x modes");
    thr.add("ny", to.ny, "y modes");
    thr.add("ic", to.ic, "datum family");
    thr.add("a", to.a, "datum amplitude");
    thr.add("sigma", to.sigma, "gaussian y stiffness");
    thr.add("width", to.width, "modulated-gaussian x width");
    thr.add("mod-amp", to.mod_amp, "modulated-gaussian y modulation");
    thr.add("c", to.c, "soliton speed");
    thr.add("eps", to.eps, "soliton perturbation amplitude");
    thr.add("mass-frac", to.mass_frac, "rescale datum to this fraction of ||Q_k||_2");
    thr.add("profile", to.profile, "partition profile: cosine | polynomial");
    thr.add("ny-part", to.ny_part, "partition grid");
    thr.add("gs-L", to.gs_L, "ground-state box half-length");
    thr.add("gs-N", to.gs_N, "ground-state modes per direction");
    thr.add("out", to.out, "output directory");

    KeySet gnv;
    gnv.cmd = app.add_subcommand("gn-verify", "randomized inequality suite and sharpness scans");
    gnv.cmd->add_option("--preset", vo.preset, "acceptance");
    gnv.add("k", vo.k, "nonlinearity order");
    gnv.add("trials", vo.trials, "random fields");
    gnv.add("seed", vo.seed, "RNG seed");
    gnv.add("profile", vo.profile, "partition profile: cosine | polynomial");
    gnv.add("ny-part", vo.ny_part, "partition grid");
    gnv.add("gs-L", vo.gs_L, "ground-state box half-length");
    gnv.add("gs-N", vo.gs_N, "ground-state modes per direction");
    gnv.add("lambdas", vo.lambdas, "falsification scan widths");
    gnv.add("conc-lambdas", vo.conc_lambdas, "concentration scan dilations");
    gnv.add("out", vo.out, "output directory");

    KeySet prb;
    prb.cmd = app.add_subcommand("probe-strichartz", "dyadic L4/X^{s,b} ratio scan");
    prb.cmd->add_option("--preset", po.preset, "acceptance");
    prb.add("seed", po.seed, "RNG seed");
    prb.add("scales", po.scales, "dyadic shells");
    prb.add("trials", po.trials, "trials per scale");
    prb.add("s", po.s, "Sobolev exponent");
    prb.add("b", po.b, "modulation exponent");
    prb.add("nt", po.nt, "time grid");
    prb.add("Lx", po.Lx, "half-length of the x interval");
    prb.add("out", po.out, "output directory");

    KeySet sol;
    sol.cmd = app.add_subcommand("soliton-test", "propagate a line soliton and compare shapes");
    sol.add("k", lo.k, "nonlinearity order");
    sol.add("c", lo.c, "soliton speed");
    sol.add("Lx", lo.Lx, "half-length of the x interval");
    sol.add("nx", lo.nx, "x modes");
    sol.add("ny", lo.ny, "y modes");
    sol.add("dt", lo.dt, "time step");
    sol.add("t-end", lo.t_end, "final time");
    sol.add("out", lo.out, "output directory (stdout only when empty)");

    CLI::App* plot = app.add_subcommand("plotdata", "project run artifacts into plot columns");
    plot->add_option("run", plot_dir, "run directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        const int code = app.exit(e);
        std::exit(code);
    } catch (const CLI::ParseError& e) {
        fail(ErrorClass::ConfigError, e.what());
    }

    const std::map<std::string, KeySet*> sections = {
        {"simulate", &sim},          {"groundstate", &gnd}, {"thresholds", &thr},
        {"gn-verify", &gnv},         {"probe-strichartz", &prb},
        {"soliton-test", &sol}};

    ConfigDoc doc;
    if (!config_path.empty()) doc = parse_config(config_path);
    // Screen every section/key against the published schema before running.
    for (const auto& [section, kv] : doc.sections) {
        if (section.empty()) continue; // sectionless: checked by the active command below
        const auto it = sections.find(section);
        if (it == sections.end())
            fail(ErrorClass::ConfigError, "unknown config section: " + section);
        for (const auto& [key, value] : kv)
            if (!it->second->setters.count(key))
                fail(ErrorClass::ConfigError, "unknown config key: " + section + "." + key);
    }

    auto merged = [&](KeySet& ks, const std::string& name,
                      const Preset& preset) -> void {
        ks.apply(preset);
        auto sectionless = doc.sections.count("") ? doc.sections.at("") : Preset{};
        ks.apply(sectionless);
        if (doc.sections.count(name)) ks.apply(doc.sections.at(name));
    };

    if (sim.cmd->parsed()) {
        merged(sim, "simulate", lookup_preset(kSimulatePresets, so.preset));
        return cmd_simulate(so);
    }
    if (gnd.cmd->parsed()) {
        merged(gnd, "groundstate", {});
        return cmd_groundstate(go);
    }
    if (thr.cmd->parsed()) {
        merged(thr, "thresholds", {});
        return cmd_thresholds(to);
    }
    if (gnv.cmd->parsed()) {
        merged(gnv, "gn-verify", lookup_preset(kGnPresets, vo.preset));
        return cmd_gn_verify(vo);
    }
    if (prb.cmd->parsed()) {
        merged(prb, "probe-strichartz", lookup_preset(kProbePresets, po.preset));
        return cmd_probe(po);
    }
    if (sol.cmd->parsed()) {
        merged(sol, "soliton-test", {});
        return cmd_soliton_test(lo);
    }
    if (plot->parsed()) return cmd_plotdata(plot_dir);
    fail(ErrorClass::ConfigError, "no subcommand given");
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const Error& e) {
        std::fprintf(stderr, "%s\n", e.line().c_str());
        return e.exit_code();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "E:IoError: unexpected: %s\n", e.what());
        return 4;
    }
}
