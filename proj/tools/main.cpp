// geocalib command-line driver: runs the verification suites and writes
// machine-readable reports (JSON lines and CSV).

#include <cctype>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "geocalib/suites.hpp"

namespace {

using geocalib::report::Check;
using geocalib::suites::SuiteConfig;

constexpr int kExitConfig = 64;
// Numerical failure exits 65..69 in suite order: phic, isometry, psi, ter,
// maximize.
const std::vector<std::string> kSuiteOrder = {"check-phic", "check-isometry", "check-psi",
                                              "ter", "maximize"};

// Flat INI-style file: optional [section] headers, key = value lines, '#' or
// ';' comments. Keys are stored as "section.key" ("" section for the
// preamble).
std::map<std::string, std::string> parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line, section;
    int lineno = 0;
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                         ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty())
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": empty key");
        kv[section.empty() ? key : section + "." + key] = trim(line.substr(eq + 1));
    }
    return kv;
}

std::vector<double> parse_eps_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        const double v = std::stod(item, &pos);
        while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
        if (pos != item.size()) throw std::runtime_error("bad epsilon list entry: " + item);
        out.push_back(v);
    }
    if (out.empty()) throw std::runtime_error("empty epsilon list");
    return out;
}

// Per-suite lookup: "[suite] key" wins over a top-level "key".
const std::string* config_value(const std::map<std::string, std::string>& kv,
                                const std::string& suite, const std::string& key) {
    if (auto it = kv.find(suite + "." + key); it != kv.end()) return &it->second;
    if (auto it = kv.find(key); it != kv.end()) return &it->second;
    return nullptr;
}

struct CliOverrides {
    int n = -1;
    long long seed = -1;
    int grid = -1;
    std::string eps;
    std::string field;
};

SuiteConfig build_config(const std::map<std::string, std::string>& kv, const std::string& suite,
                         const CliOverrides& cli) {
    SuiteConfig cfg;
    auto get = [&](const char* key) { return config_value(kv, suite, key); };
    if (const auto* v = get("n")) cfg.n = std::stoi(*v);
    if (const auto* v = get("seed")) cfg.seed = std::stoull(*v);
    if (const auto* v = get("eps")) cfg.eps = parse_eps_list(*v);
    if (const auto* v = get("field")) cfg.field = *v;
    if (const auto* v = get("planes")) cfg.planes = std::stoi(*v);
    if (const auto* v = get("isometry_pairs")) cfg.isometry_pairs = std::stoi(*v);
    if (const auto* v = get("pullback_pairs")) cfg.pullback_pairs = std::stoi(*v);
    if (const auto* v = get("c_lines")) cfg.c_lines = std::stol(*v);
    if (const auto* v = get("calibration_blades")) cfg.calibration_blades = std::stoi(*v);
    if (const auto* v = get("maximize_resolution")) cfg.maximize_resolution = std::stoi(*v);

    int grid_res = -1;
    if (const auto* v = get("grid")) grid_res = std::stoi(*v);

    // Command-line flags override file values.
    if (cli.n >= 0) cfg.n = cli.n;
    if (cli.seed >= 0) cfg.seed = static_cast<std::uint64_t>(cli.seed);
    if (cli.grid >= 0) grid_res = cli.grid;
    if (!cli.eps.empty()) cfg.eps = parse_eps_list(cli.eps);
    if (!cli.field.empty()) cfg.field = cli.field;

    // The flat suite works in any dimension; the chart quadratures need n <= 3.
    const int n_max = suite == "check-phic" ? 4 : 3;
    if (cfg.n < 1 || cfg.n > n_max)
        throw std::runtime_error("n must be in [1, " + std::to_string(n_max) + "] for " + suite);
    cfg.grid = geocalib::suites::default_grid(cfg.n, cfg.seed);
    if (grid_res > 0) cfg.grid.resolution = grid_res;
    return cfg;
}

std::vector<Check> run_suite(const std::string& suite, const SuiteConfig& cfg,
                             std::vector<std::pair<double, double>>* eps_vol) {
    if (suite == "check-phic") return geocalib::suites::check_phic(cfg);
    if (suite == "check-isometry") return geocalib::suites::check_isometry(cfg);
    if (suite == "check-psi") return geocalib::suites::check_psi(cfg);
    if (suite == "ter") return geocalib::suites::check_ter(cfg);
    if (suite == "maximize") return geocalib::suites::check_maximize(cfg, eps_vol);
    throw std::logic_error("unknown suite: " + suite);
}

std::string header_json(const std::string& suite, const SuiteConfig& cfg) {
    nlohmann::json h;
    h["suite"] = suite;
    h["n"] = cfg.n;
    h["seed"] = cfg.seed;
    h["grid_resolution"] = cfg.grid.resolution;
    h["field"] = cfg.field;
    h["eps"] = cfg.eps;
    return h.dump();
}

// Returns 0 on pass, 65 + suite index on any failed check.
int run_and_report(const std::string& suite, const SuiteConfig& cfg, const std::string& out) {
    std::vector<std::pair<double, double>> eps_vol;
    const std::vector<Check> checks =
        run_suite(suite, cfg, suite == "maximize" ? &eps_vol : nullptr);

    for (const Check& c : checks)
        std::printf("%-52s %s %-22s %s %s\n", c.name.c_str(),
                    geocalib::report::format_double(c.value).c_str(), c.cmp.c_str(),
                    geocalib::report::format_double(c.bound).c_str(),
                    c.pass ? "pass" : "FAIL");

    if (!out.empty()) {
        geocalib::report::write_file(out + "." + suite + ".jsonl",
                                     geocalib::report::to_jsonl(checks, header_json(suite, cfg)));
        geocalib::report::write_file(out + "." + suite + ".csv",
                                     geocalib::report::to_csv(checks));
        if (suite == "maximize")
            geocalib::report::write_file(
                out + ".eps_volume.csv",
                geocalib::report::to_csv("epsilon", "competitor_volume", eps_vol));
    }

    const bool ok = geocalib::report::all_pass(checks);
    std::printf("[%s] %zu checks, %s\n", suite.c_str(), checks.size(), ok ? "all pass" : "FAILED");
    if (ok) return 0;
    for (std::size_t i = 0; i < kSuiteOrder.size(); ++i)
        if (kSuiteOrder[i] == suite) return 65 + static_cast<int>(i);
    return 65;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical verification of the split calibration on the space of "
                 "oriented geodesics of hyperbolic space"};
    app.require_subcommand(1);

    CliOverrides cli;
    std::string config_path, out_prefix;
    app.add_option("--config", config_path, "INI-style configuration file");
    app.add_option("--n", cli.n, "Boundary sphere dimension (ambient space is H^{n+1})");
    app.add_option("--seed", cli.seed, "Deterministic sampling seed");
    app.add_option("--grid", cli.grid, "Quadrature resolution per axis");
    app.add_option("--eps", cli.eps, "Comma-separated perturbation amplitudes");
    app.add_option("--field", cli.field, "Field family for the ter suite");
    app.add_option("--out", out_prefix, "Report file prefix (.jsonl/.csv outputs)");

    for (const std::string& name : kSuiteOrder) app.add_subcommand(name)->fallthrough();
    app.add_subcommand("all", "Run every suite in order")->fallthrough();

    CLI11_PARSE(app, argc, argv);

    std::map<std::string, std::string> kv;
    try {
        if (!config_path.empty()) kv = parse_config(config_path);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    }

    const std::string chosen = app.get_subcommands().front()->get_name();
    const std::vector<std::string> suites =
        chosen == "all" ? kSuiteOrder : std::vector<std::string>{chosen};

    int rc = 0;
    for (const std::string& suite : suites) {
        SuiteConfig cfg;
        try {
            cfg = build_config(kv, suite, cli);
        } catch (const std::exception& e) {
            std::fprintf(stderr, "config error: %s\n", e.what());
            return kExitConfig;
        }
        try {
            const int code = run_and_report(suite, cfg, out_prefix);
            if (code != 0 && rc == 0) rc = code;
        } catch (const std::exception& e) {
            std::fprintf(stderr, "[%s] error: %s\n", suite.c_str(), e.what());
            for (std::size_t i = 0; i < kSuiteOrder.size(); ++i)
                if (kSuiteOrder[i] == suite && rc == 0) rc = 65 + static_cast<int>(i);
        }
    }
    return rc;
}
