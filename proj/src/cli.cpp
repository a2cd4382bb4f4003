#include "anisoperim/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "anisoperim/anisotropy.hpp"
#include "anisoperim/casebook.hpp"
#include "anisoperim/grid.hpp"
#include "anisoperim/json_io.hpp"
#include "anisoperim/polyhedral.hpp"
#include "anisoperim/solver.hpp"
#include "anisoperim/verify.hpp"

namespace anisoperim {

namespace {

constexpr const char* kVersion = "anisoperim 1.0.0";

using ojson = nlohmann::ordered_json;

// Twelve significant digits: plain fixed-point in the mid range, scientific
// once fixed-point would drop below that precision.
std::string fmt12(double v) {
    char buf[64];
    const double a = std::abs(v);
    if (std::isfinite(v) && (a >= 1e6 || (a > 0.0 && a < 1e-4)))
        std::snprintf(buf, sizeof buf, "%.11e", v);
    else
        std::snprintf(buf, sizeof buf, "%.12f", v);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << content))
        throw std::invalid_argument("cannot write \"" + path + "\"");
}

std::vector<double> parse_numbers(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string(what) + ": bad number \"" + tok + "\"");
        }
        while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos]))) ++pos;
        if (pos != tok.size())
            throw std::invalid_argument(std::string(what) + ": bad number \"" + tok + "\"");
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument(std::string(what) + ": empty number list");
    return out;
}

Vec parse_point(const std::string& text, const char* what) {
    const std::vector<double> xs = parse_numbers(text, what);
    if (xs.size() > 4) throw std::invalid_argument(std::string(what) + ": at most 4 components");
    return from_std(xs);
}

std::vector<std::string> split_groups(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ';')) out.push_back(tok);
    return out;
}

// "lo1,lo2;hi1,hi2"
Box parse_window(const std::string& text) {
    const std::vector<std::string> parts = split_groups(text);
    if (parts.size() != 2)
        throw std::invalid_argument("window: expected \"lo1,lo2,...;hi1,hi2,...\"");
    const Vec lo = parse_point(parts[0], "window lo");
    const Vec hi = parse_point(parts[1], "window hi");
    if (lo.size() != hi.size())
        throw std::invalid_argument("window: lo/hi dimension mismatch");
    for (Eigen::Index i = 0; i < lo.size(); ++i)
        if (!(lo[i] < hi[i]))
            throw std::invalid_argument("window: lo must be strictly below hi");
    return Box{lo, hi};
}

int positive_int(double v, const char* what) {
    if (!(v > 0.0) || v != std::floor(v) || v > 1e6)
        throw std::invalid_argument(std::string(what) + ": expected a positive integer");
    return static_cast<int>(v);
}

// "nx,ny,h,ox,oy" per window in two dimensions, "nx,h,ox" in one; windows
// separated by ';'.
std::vector<Lattice> parse_lattice_windows(const std::string& text) {
    std::vector<Lattice> out;
    for (const std::string& group : split_groups(text)) {
        const std::vector<double> xs = parse_numbers(group, "window");
        if (xs.size() == 5) {
            out.push_back(make_lattice({positive_int(xs[0], "window nx"),
                                        positive_int(xs[1], "window ny")},
                                       xs[2], make_vec({xs[3], xs[4]})));
        } else if (xs.size() == 3) {
            out.push_back(
                make_lattice({positive_int(xs[0], "window nx")}, xs[1], make_vec({xs[2]})));
        } else {
            throw std::invalid_argument(
                "window: expected \"nx,ny,h,ox,oy\" or \"nx,h,ox\", got \"" + group + "\"");
        }
    }
    return out;
}

void require_same_dim(int a, const char* what_a, int b, const char* what_b) {
    if (a != b)
        throw std::invalid_argument(std::string(what_a) + " dimension " + std::to_string(a) +
                                    " does not match " + what_b + " dimension " +
                                    std::to_string(b));
}

int thread_cap_from_env() {
    const char* raw = std::getenv("ANISOPERIM_THREADS");
    if (raw == nullptr) return 1;
    const std::string text(raw);
    if (text.empty() || text.size() > 4 ||
        text.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("ANISOPERIM_THREADS must be a positive integer, got \"" +
                                    text + "\"");
    const int v = std::atoi(text.c_str());
    if (v < 1)
        throw std::invalid_argument("ANISOPERIM_THREADS must be a positive integer, got \"" +
                                    text + "\"");
    return v;
}

ojson witness_json(const PredicateReport& rep) {
    ojson w = ojson::array();
    for (const Vec& v : rep.witness) {
        ojson arr = ojson::array();
        for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
        w.push_back(std::move(arr));
    }
    return w;
}

struct NormConfig {
    std::string config;
    std::string eval;
    std::string dual;
    std::string check;
    std::uint64_t seed = 0;
    bool emit = false;
};

int do_norm(const NormConfig& cfg) {
    const Anisotropy norm = norm_from_json(read_file(cfg.config));
    bool acted = false;
    int status = 0;
    if (!cfg.eval.empty()) {
        const Vec x = parse_point(cfg.eval, "--eval point");
        require_same_dim(static_cast<int>(x.size()), "input", norm.dim(), "norm");
        std::cout << fmt12(norm.eval(x)) << "\n";
        acted = true;
    }
    if (!cfg.dual.empty()) {
        const Vec x = parse_point(cfg.dual, "--dual point");
        require_same_dim(static_cast<int>(x.size()), "input", norm.dim(), "norm");
        std::cout << fmt12(norm.eval_dual(x)) << "\n";
        acted = true;
    }
    if (!cfg.check.empty()) {
        SamplerParams params;
        params.seed = cfg.seed;
        if (cfg.check == "gap") {
            std::cout << fmt12(norm.restriction_gap_sup(params)) << "\n";
        } else {
            const PredicateReport rep = cfg.check == "graph"
                                            ? norm.check_generalized_graph(params)
                                            : norm.check_partial_monotonicity(params);
            ojson obj;
            obj["predicate"] =
                cfg.check == "graph" ? "generalized-graph" : "partial-monotonicity";
            obj["holds"] = rep.holds;
            obj["method"] = rep.method == CheckMethod::Exact ? "exact" : "sampled";
            obj["n_samples"] = rep.n_samples;
            obj["seed"] = rep.seed;
            obj["tol"] = rep.tol;
            obj["max_violation"] = rep.max_violation;
            obj["witness"] = witness_json(rep);
            if (!rep.detail.empty()) obj["detail"] = rep.detail;
            std::cout << obj.dump(2) << "\n";
            if (!rep.holds) status = 1;
        }
        acted = true;
    }
    if (cfg.emit) {
        std::cout << norm_to_json(norm);
        acted = true;
    }
    if (!acted)
        throw std::invalid_argument("norm: nothing to do (give --eval, --dual, --check, or --emit)");
    return status;
}

struct SetNormConfig {
    std::string set;
    std::string norm;
    std::string window;
};

int do_perim(const SetNormConfig& cfg) {
    const PolyhedralSet set = set_from_json(read_file(cfg.set));
    const Anisotropy norm = norm_from_json(read_file(cfg.norm));
    require_same_dim(set.dim(), "set", norm.dim(), "norm");
    double value = 0.0;
    if (cfg.window.empty()) {
        value = perimeter(set, norm);
    } else {
        const Box w = parse_window(cfg.window);
        require_same_dim(w.dim(), "window", set.dim(), "set");
        value = perimeter(set, norm, w);
    }
    std::cout << fmt12(value) << "\n";
    return 0;
}

int do_slice(const SetNormConfig& cfg) {
    const PolyhedralSet set = set_from_json(read_file(cfg.set));
    const Anisotropy norm = norm_from_json(read_file(cfg.norm));
    require_same_dim(set.dim(), "set", norm.dim(), "norm");
    Box w = set.window();
    if (!cfg.window.empty()) {
        w = parse_window(cfg.window);
        require_same_dim(w.dim(), "window", set.dim(), "set");
    }
    const SliceReport rep = slice_check(set, norm, w);
    ojson obj;
    obj["lhs_horizontal"] = rep.lhs_horizontal;
    obj["rhs_horizontal"] = rep.rhs_horizontal;
    obj["lhs_vertical"] = rep.lhs_vertical;
    obj["rhs_vertical"] = rep.rhs_vertical;
    std::cout << obj.dump(2) << "\n";
    return 0;
}

struct GminConfig {
    std::string scenario;
    std::string out;
};

int do_gmin(const GminConfig& cfg) {
    const SolveScenario sc = scenario_from_json(read_file(cfg.scenario));
    try {
        const SolveResult r = minimize_G(sc.norm, sc.collar, sc.params);
        const std::string csv = grid_function_to_csv(r.u);
        if (cfg.out.empty()) {
            std::cout << csv;
        } else {
            write_file(cfg.out, csv);
            ojson obj;
            obj["energy"] = r.energy;
            obj["coupled_energy"] = r.coupled_energy;
            obj["gap"] = r.gap;
            obj["iters"] = r.iters;
            obj["out"] = cfg.out;
            std::cout << obj.dump(2) << "\n";
        }
        return 0;
    } catch (const SolverError& e) {
        std::cerr << "solve failed: " << e.what() << "\n";
        return 1;
    }
}

struct VerifyConfig {
    std::string candidate;
    std::string norm;
    std::string windows;
    std::string method = "brute";
    double gap_tol = 1e-8;
    int max_iters = 100000;
    std::uint64_t solver_seed = 1;
    std::string out;
};

int do_verify(const VerifyConfig& cfg) {
    const PolyhedralSet cand = set_from_json(read_file(cfg.candidate));
    const Anisotropy norm = norm_from_json(read_file(cfg.norm));
    require_same_dim(cand.dim(), "candidate", norm.dim(), "norm");
    const std::vector<Lattice> windows = parse_lattice_windows(cfg.windows);
    for (const Lattice& w : windows)
        require_same_dim(w.n(), "window", cand.dim(), "candidate");
    if (!(cfg.gap_tol > 0.0))
        throw std::invalid_argument("--gap-tol must be positive");
    if (cfg.max_iters < 1) throw std::invalid_argument("--max-iters must be positive");
    SolverParams params;
    params.gap_tol = cfg.gap_tol;
    params.max_iters = cfg.max_iters;
    params.seed = cfg.solver_seed;
    const VerifyMethod method =
        cfg.method == "brute" ? VerifyMethod::Brute : VerifyMethod::Relaxed;
    const Verdict v = verify_minimality(cand, norm, windows, method, params);
    const std::string doc = verdict_to_json(v);
    std::cout << doc;
    if (!cfg.out.empty()) write_file(cfg.out, doc);
    return v.status == VerdictStatus::CertifiedAtScale ? 0 : 1;
}

struct CasebookConfig {
    std::string run = "all";
    std::string format = "csv";
    std::string out;
    bool timing = false;
};

int do_casebook(const CasebookConfig& cfg, int threads) {
    Casebook cb;
    cb.record_timing(cfg.timing);
    cb.max_threads(threads);
    cb.run(cfg.run);
    const std::string doc = cb.emit(parse_table_format(cfg.format));
    std::cout << doc;
    if (!cfg.out.empty()) write_file(cfg.out, doc);
    return cb.all_passed() ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"anisotropic perimeter and graph-minimizer toolkit"};
    app.set_version_flag("--version", kVersion, "print the version string");
    app.require_subcommand(0, 1);

    NormConfig nc;
    CLI::App* norm_cmd =
        app.add_subcommand("norm", "evaluate a norm descriptor and its structure predicates");
    norm_cmd->add_option("--config", nc.config, "norm descriptor JSON file")->required();
    norm_cmd->add_option("--eval", nc.eval,
                         "comma-separated point; prints the norm value");
    norm_cmd->add_option("--dual", nc.dual,
                         "comma-separated point; prints the dual norm value");
    norm_cmd
        ->add_option("--check", nc.check,
                     "predicate: graph or monotone (JSON report, exit 1 when it fails), or "
                     "gap (prints the supremal restriction gap)")
        ->check(CLI::IsMember({"graph", "monotone", "gap"}));
    norm_cmd->add_option("--seed", nc.seed, "sampler seed for --check, default 0");
    norm_cmd->add_flag("--emit", nc.emit, "re-emit the parsed descriptor as canonical JSON");

    SetNormConfig pc;
    CLI::App* perim_cmd =
        app.add_subcommand("perim", "anisotropic perimeter of a polyhedral set");
    perim_cmd->add_option("--set", pc.set, "set descriptor JSON file")->required();
    perim_cmd->add_option("--norm", pc.norm, "norm descriptor JSON file")->required();
    perim_cmd->add_option("--window", pc.window,
                          "query box \"lo1,lo2,...;hi1,hi2,...\", default the set's window");

    SetNormConfig sc;
    CLI::App* slice_cmd = app.add_subcommand(
        "slice", "split the boundary energy by slices and report both routes");
    slice_cmd->add_option("--set", sc.set, "set descriptor JSON file")->required();
    slice_cmd->add_option("--norm", sc.norm, "norm descriptor JSON file")->required();
    slice_cmd->add_option("--window", sc.window,
                          "query box \"lo1,lo2,...;hi1,hi2,...\", default the set's window");

    GminConfig gc;
    CLI::App* gmin_cmd =
        app.add_subcommand("gmin", "minimize the area-type graph functional for a scenario");
    gmin_cmd->add_option("--scenario", gc.scenario, "scenario JSON file")->required();
    gmin_cmd->add_option("--out", gc.out,
                         "write the minimizer CSV here and print a summary instead");

    VerifyConfig vc;
    CLI::App* verify_cmd = app.add_subcommand(
        "verify", "test a candidate set for minimality on compact windows");
    verify_cmd->add_option("--candidate", vc.candidate, "set descriptor JSON file")->required();
    verify_cmd->add_option("--norm", vc.norm, "norm descriptor JSON file")->required();
    verify_cmd
        ->add_option("--windows", vc.windows,
                     "lattice windows \"nx,ny,h,ox,oy\" (or \"nx,h,ox\"), ';'-separated")
        ->required();
    verify_cmd->add_option("--method", vc.method, "competitor search: brute or relaxed")
        ->check(CLI::IsMember({"brute", "relaxed"}));
    verify_cmd->add_option("--gap-tol", vc.gap_tol,
                           "relaxed solver gap tolerance, default 1e-8");
    verify_cmd->add_option("--max-iters", vc.max_iters,
                           "relaxed solver iteration cap, default 100000");
    verify_cmd->add_option("--solver-seed", vc.solver_seed,
                           "relaxed solver start seed, default 1");
    verify_cmd->add_option("--out", vc.out, "also write the verdict JSON here");

    CasebookConfig cc;
    CLI::App* casebook_cmd =
        app.add_subcommand("casebook", "run the registered worked-example scenarios");
    casebook_cmd->add_option("--run", cc.run, "scenario id or \"all\", default all");
    casebook_cmd->add_option("--format", cc.format, "table format: csv, json, or md")
        ->check(CLI::IsMember({"csv", "json", "md"}));
    casebook_cmd->add_option("--out", cc.out, "also write the table here");
    casebook_cmd->add_flag("--timing", cc.timing,
                           "record per-scenario seconds (off keeps output byte-identical)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        // Validated on every invocation; only the casebook currently spreads
        // work across threads.
        const int threads = thread_cap_from_env();
        if (norm_cmd->parsed()) return do_norm(nc);
        if (perim_cmd->parsed()) return do_perim(pc);
        if (slice_cmd->parsed()) return do_slice(sc);
        if (gmin_cmd->parsed()) return do_gmin(gc);
        if (verify_cmd->parsed()) return do_verify(vc);
        if (casebook_cmd->parsed()) return do_casebook(cc, threads);
        std::cerr << app.help();
        return 2;
    } catch (const SolverError& e) {
        std::cerr << "solve failed: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace anisoperim
