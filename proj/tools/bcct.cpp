#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <filesystem>
#include <future>
#include <iostream>

#include "CLI11.hpp"

#include "bcct/cutoff.hpp"
#include "bcct/errors.hpp"
#include "bcct/spaces.hpp"
#include "bcct/suites.hpp"
#include "bcct/transforms.hpp"
#include "io.hpp"

namespace fs = std::filesystem;
using namespace bcct;

namespace {

struct Options {
    std::optional<int> grid;
    int kmax = 16;
    double tol = 1.0;
    std::string out = "bcct_out";
    std::uint64_t seed = 1;
    bool parallel = false;
    std::string config;
};

fs::path out_dir(const Options& o) {
    if (const char* env = std::getenv("BCCT_OUT"); env && *env) return env;
    return o.out;
}

SuiteContext context(const Options& o) {
    SuiteContext ctx = o.config.empty() ? default_context() : io::load_config(o.config);
    ctx.k_max = o.kmax;
    ctx.tol_scale = o.tol;
    ctx.seed = o.seed;
    ctx.log2_size = o.grid;
    return ctx;
}

void print(const SuiteReport& r) {
    std::cout << "[" << r.suite << "] " << (r.pass() ? "PASS" : "FAIL") << " (" << r.seconds << " s)\n";
    for (const auto& c : r.checks) {
        std::cout << "  " << (c.relation == "info" ? "info" : c.pass ? "ok  " : "FAIL") << "  " << c.name << ": "
                  << c.value;
        if (c.relation != "info") std::cout << " " << c.relation << " " << c.threshold;
        if (!c.note.empty()) std::cout << "  (" << c.note << ")";
        std::cout << "\n";
    }
}

int cmd_validate(const std::string& file, const Options& o) {
    const auto E = io::load_set(file);
    std::cout << "gaps " << E.gaps.size() << ", m(E) " << E.measure << ", entropy " << E.entropy << "\n";
    const auto dir = out_dir(o);
    fs::create_directories(dir);
    std::vector<std::vector<double>> rows;
    for (const auto& g : E.gaps) rows.push_back({g.start, g.end, g.length});
    io::write_csv(dir / "validate_gaps.csv", {"start", "end", "length"}, rows);
    std::ofstream(dir / "validate.json") << "{\"gaps\": " << E.gaps.size() << ", \"measure\": " << io::number(E.measure)
                                         << ", \"entropy\": " << io::number(E.entropy) << "}\n";
    return 0;
}

int cmd_whitney(const std::string& file, const Options& o) {
    const auto E = io::load_set(file);
    CutoffOptions co;
    co.k_max = o.kmax;
    const CutoffFunction c(E, co);
    std::vector<std::vector<double>> rows;
    for (const auto& a : c.whitney())
        rows.push_back({double(a.parent), double(a.rank), a.arc.start, a.arc.end, a.arc.length, a.lambda, a.weight()});
    const auto dir = out_dir(o);
    fs::create_directories(dir);
    io::write_csv(dir / "whitney_arcs.csv", {"gap", "rank", "start", "end", "length", "lambda", "c"}, rows);
    std::cout << rows.size() << " arcs\n";
    return 0;
}

int cmd_cutoff(const std::string& file, const Options& o) {
    const auto E = io::load_set(file);
    CutoffOptions co;
    co.k_max = o.kmax;
    const CutoffFunction c(E, co);
    const int log2 = o.grid.value_or(12);
    const auto g = c.boundary_g(log2);
    std::vector<std::vector<double>> rows;
    for (std::size_t m = 0; m < g.size(); ++m)
        rows.push_back({two_pi * double(m) / double(g.size()), g[m].real(), g[m].imag(), std::abs(g[m])});
    const auto dir = out_dir(o);
    fs::create_directories(dir);
    io::write_csv(dir / "cutoff_boundary.csv", {"t", "re_g", "im_g", "abs_g"}, rows);
    const auto d = certify_decay(c, {0, 1, 2, 3, 4}, {0, 1, 2});
    rows.clear();
    for (const auto& e : d.entries)
        for (std::size_t l = 0; l < e.log10_rho.size(); ++l)
            rows.push_back({double(e.N), double(e.m), double(d.ranks[l]), d.distance[l], e.log10_rho[l]});
    io::write_csv(dir / "cutoff_decay.csv", {"N", "m", "rank", "distance", "log10_rho"}, rows);
    std::cout << "decay certificate " << (d.all_monotone ? "monotone" : "NOT monotone") << "\n";
    return d.all_monotone ? 0 : 1;
}

int cmd_outer(const std::string& set_file, const std::string& weight_file, const Options& o) {
    const auto E = io::load_set(set_file);
    const auto spec = io::load_weight(weight_file);
    const OuterFunction W(make_weight(E, spec.levels, spec.bumps));
    const int log2 = o.grid.value_or(12);
    const auto b = W.boundary(log2);
    std::vector<std::vector<double>> rows;
    for (std::size_t m = 0; m < b.size(); ++m)
        rows.push_back({two_pi * double(m) / double(b.size()), std::abs(b[m]), std::arg(b[m])});
    const auto dir = out_dir(o);
    fs::create_directories(dir);
    io::write_csv(dir / "outer_boundary.csv", {"t", "abs_W", "arg_W"}, rows);
    std::cout << "|W(0)| = " << std::abs(W.value(0.0)) << "\n";
    return 0;
}

int cmd_transform(int degree, const Options& o) {
    const auto ctx = context(o);
    FamilyIngredients ing;
    CutoffOptions co;
    co.k_max = ctx.k_max;
    ing.g = std::make_shared<const CutoffFunction>(ctx.set, co);
    ing.W = std::make_shared<const OuterFunction>(make_weight(ctx.set, ctx.weight.levels, ctx.weight.bumps));
    const int log2 = o.grid.value_or(16);
    std::vector<cplx> p(static_cast<std::size_t>(degree) + 1);
    p.back() = 1.0;
    const auto m = build_member(Family::K, AnalyticSeries(p), ing, log2);
    TransformOptions to;
    to.fit_hi = std::min<std::size_t>(to.fit_hi, m.s.size() / 16);
    to.band = std::min<std::size_t>(to.band, m.s.size() / 2);
    const auto r = smooth_transform(m, to);
    std::vector<std::vector<double>> rows;
    for (std::size_t k = 0; k < r.series.size(); ++k) rows.push_back({double(k), r.series[k].real(), r.series[k].imag()});
    const auto dir = out_dir(o);
    fs::create_directories(dir);
    io::write_csv(dir / "transform_coefficients.csv", {"n", "re", "im"}, rows);
    std::cout << "decay slope " << r.decay_fit.slope << " on [" << r.decay_fit.lo << ", " << r.decay_fit.hi << "], norm "
              << r.norm << "\n";
    return 0;
}

int cmd_weights(const std::string& file, int n_max, const Options& o) {
    const auto S = io::read_coefficients_csv(file);
    const auto a = rapid_weight(S, n_max);
    std::vector<std::vector<double>> rows;
    for (std::size_t k = 0; k < a.size(); ++k) rows.push_back({double(k), a.alpha[k]});
    const auto dir = out_dir(o);
    fs::create_directories(dir);
    io::write_csv(dir / "weights_alpha.csv", {"k", "alpha"}, rows);
    std::cout << "K(N):";
    for (auto k : a.K) std::cout << " " << k;
    std::cout << "\n";
    return 0;
}

int cmd_verify(std::vector<std::string> suites, const Options& o) {
    if (suites.empty() || (suites.size() == 1 && suites[0] == "all")) suites = suite_names();
    for (const auto& s : suites)
        if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
            throw ConfigError("unknown suite: " + s);
    const auto ctx = context(o);
    std::vector<SuiteReport> reports;
    if (o.parallel) {
        std::vector<std::future<SuiteReport>> jobs;
        for (const auto& s : suites) jobs.push_back(std::async(std::launch::async, [&ctx, s] { return run_suite(s, ctx); }));
        for (auto& j : jobs) reports.push_back(j.get());
    } else {
        for (const auto& s : suites) reports.push_back(run_suite(s, ctx));
    }
    bool ok = true;
    const auto dir = out_dir(o);
    for (const auto& r : reports) {
        print(r);
        io::write_report(dir, r);
        ok = ok && r.pass();
    }
    return ok ? 0 : 1;
}

int cmd_report(const std::string& dir_arg, const Options& o) {
    const fs::path dir = dir_arg.empty() ? out_dir(o) : fs::path(dir_arg);
    const auto v = io::read_verdicts(dir);
    if (v.empty()) throw ConfigError("no verdict files in " + dir.string());
    bool ok = true;
    for (const auto& [suite, pass] : v) {
        std::cout << (pass ? "PASS " : "FAIL ") << suite << "\n";
        ok = ok && pass;
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Beurling-Carleson cutoff toolkit"};
    app.require_subcommand(1);
    // global flags may follow the subcommand
    app.fallthrough();
    Options o;
    int grid = 0;
    auto* grid_opt = app.add_option("--grid", grid, "log2 grid size")->check(CLI::Range(6, 26));
    app.add_option("--kmax", o.kmax, "Whitney truncation rank")->check(CLI::Range(0, 40));
    app.add_option("--tol", o.tol, "scale factor on residual thresholds")->check(CLI::PositiveNumber);
    app.add_option("--out", o.out, "output directory (BCCT_OUT overrides)");
    app.add_option("--seed", o.seed, "random seed");
    app.add_flag("--parallel", o.parallel, "run suites concurrently");
    app.add_option("--config", o.config, "run configuration JSON")->check(CLI::ExistingFile);

    std::string file, file2, dir;
    int degree = 0, n_max = 4;
    std::vector<std::string> suites;
    auto* validate = app.add_subcommand("validate", "validate a set fixture");
    validate->add_option("set", file)->required();
    auto* whitney = app.add_subcommand("whitney", "Whitney decomposition of a set");
    whitney->add_option("set", file)->required();
    auto* cutoff = app.add_subcommand("cutoff", "cutoff boundary values and decay certificate");
    cutoff->add_option("set", file)->required();
    auto* outer = app.add_subcommand("outer", "outer function boundary values");
    outer->add_option("set", file)->required();
    outer->add_option("weight", file2)->required();
    auto* transform = app.add_subcommand("transform", "Cauchy transform coefficients of a K member");
    transform->add_option("--degree", degree, "p = z^degree")->check(CLI::Range(0, 64));
    auto* weights = app.add_subcommand("weights", "rapid weight from a coefficient CSV");
    weights->add_option("coefficients", file)->required();
    weights->add_option("--nmax", n_max)->check(CLI::Range(1, 8));
    auto* verify = app.add_subcommand("verify", "run verification suites");
    verify->add_option("--suite", suites, "suite name, repeatable, or all");
    auto* report = app.add_subcommand("report", "summarize verdict files");
    report->add_option("dir", dir);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (*grid_opt) o.grid = grid;

    try {
        if (*validate) return cmd_validate(file, o);
        if (*whitney) return cmd_whitney(file, o);
        if (*cutoff) return cmd_cutoff(file, o);
        if (*outer) return cmd_outer(file, file2, o);
        if (*transform) return cmd_transform(degree, o);
        if (*weights) return cmd_weights(file, n_max, o);
        if (*verify) return cmd_verify(suites, o);
        if (*report) return cmd_report(dir, o);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
