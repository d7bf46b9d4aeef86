#include "bcct/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <random>

#include "bcct/boundary_calculus.hpp"
#include "bcct/cutoff.hpp"
#include "bcct/dbr.hpp"
#include "bcct/errors.hpp"
#include "bcct/spaces.hpp"
#include "bcct/transforms.hpp"

namespace bcct {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

Arc turns(double a, double b) { return Arc::from_endpoints(two_pi * a, two_pi * b); }

BoundaryWeight weight_of(const BeurlingCarlesonSet& E, const WeightSpec& spec) {
    return make_weight(E, spec.levels, spec.bumps);
}

AnalyticSeries monomial(int k, cplx c = 1.0) {
    std::vector<cplx> v(static_cast<std::size_t>(k) + 1, cplx{});
    v.back() = c;
    return AnalyticSeries(std::move(v));
}

// (z - a)^m z^j
AnalyticSeries vanishing_monomial(cplx a, int m, int j) {
    std::vector<cplx> q{1.0};
    for (int i = 0; i < m; ++i) {
        std::vector<cplx> next(q.size() + 1, cplx{});
        for (std::size_t k = 0; k < q.size(); ++k) {
            next[k + 1] += q[k];
            next[k] -= a * q[k];
        }
        q = std::move(next);
    }
    q.insert(q.begin(), static_cast<std::size_t>(j), cplx{});
    return AnalyticSeries(std::move(q));
}

bool on_set(const BeurlingCarlesonSet& E, double t) { return E.measure > 0.0 && E.contains(t); }

std::vector<cplx> random_disk_points(std::mt19937_64& rng, int count, double r_max) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<cplx> out;
    for (int i = 0; i < count; ++i) out.push_back(std::polar(r_max * std::sqrt(u(rng)), two_pi * u(rng)));
    return out;
}

double rel_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num = std::max(num, std::abs(a[i] - b[i]));
        den = std::max(den, std::abs(b[i]));
    }
    return den > 0.0 ? num / den : num;
}

template <class F>
bool throws_bcct(F&& f) {
    try {
        f();
    } catch (const std::exception&) {
        return true;
    }
    return false;
}

}  // namespace

bool SuiteReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

CheckResult& SuiteReport::add(std::string name, double value, std::string relation, double threshold,
                              std::string note) {
    CheckResult c;
    c.name = std::move(name);
    c.value = value;
    c.threshold = threshold;
    c.relation = std::move(relation);
    c.note = std::move(note);
    if (c.relation == "<=") c.pass = value <= threshold;
    else if (c.relation == "<") c.pass = value < threshold;
    else if (c.relation == ">=") c.pass = value >= threshold;
    else if (c.relation == ">") c.pass = value > threshold;
    else c.pass = true;
    checks.push_back(std::move(c));
    return checks.back();
}

const CheckResult* SuiteReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

SuiteContext default_context() {
    SuiteContext ctx;
    ctx.set = validate_set({turns(32.0 / 256, 96.0 / 256), turns(160.0 / 256, 192.0 / 256)});
    ctx.sets.push_back({"one_gap", validate_set({turns(64.0 / 256, 128.0 / 256)})});
    ctx.sets.push_back({"two_gap", ctx.set});
    ctx.sets.push_back({"three_gap", validate_set({turns(16.0 / 256, 48.0 / 256), turns(96.0 / 256, 128.0 / 256),
                                                   turns(176.0 / 256, 224.0 / 256)})});
    {
        // A_n = (2^{-n-1}, 3·2^{-n-2}) turns; Σ_{n>16} |A_n| log(1/|A_n|) < 2^{-14}
        std::vector<Arc> gaps;
        for (int n = 1; n <= 16; ++n) gaps.push_back(turns(std::ldexp(1.0, -n - 1), 3.0 * std::ldexp(1.0, -n - 2)));
        ctx.sets.push_back({"geometric", validate_set(std::move(gaps), TailCertificate{std::ldexp(1.0, -14), 1.0})});
    }
    ctx.weight.levels = {1.0};
    ctx.weight.bumps = {{two_pi * 128.0 / 256, two_pi * 16.0 / 256, -0.7},
                        {two_pi * 240.0 / 256, two_pi * 24.0 / 256, -1.2}};
    ctx.divisor_weight.levels = {0.5, 0.3};
    ctx.atoms = {{0.0, 0.1, MeasurePart::C}, {0.0, 0.1, MeasurePart::K}, {two_pi * 64.0 / 256, 0.1, MeasurePart::K}};
    ctx.blaschke = {cplx(0.5, 0.0)};
    std::vector<cplx> c(64);
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = std::ldexp(1.0, -static_cast<int>(k));
    ctx.coefficients = AnalyticSeries(std::move(c));
    return ctx;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"whitney", "cutoff",     "outer",      "transform",
                                                "weights", "annihilator", "permanence", "dbr-psd"};
    return names;
}

int default_grid(const std::string& suite) {
    if (suite == "transform") return 22;
    if (suite == "permanence") return 20;
    return 16;
}

SuiteReport run_suite(const std::string& name, const SuiteContext& ctx) {
    static const std::map<std::string, std::function<SuiteReport(const SuiteContext&)>> table{
        {"whitney", suite_whitney},     {"cutoff", suite_cutoff},         {"outer", suite_outer},
        {"transform", suite_transform}, {"weights", suite_weights},       {"annihilator", suite_annihilator},
        {"permanence", suite_permanence}, {"dbr-psd", suite_dbr_psd}};
    const auto it = table.find(name);
    if (it == table.end()) throw ConfigError("unknown suite: " + name);
    const auto t0 = Clock::now();
    auto r = it->second(ctx);
    r.suite = name;
    r.seconds = seconds_since(t0);
    return r;
}

// ---------------------------------------------------------------- whitney

SuiteReport suite_whitney(const SuiteContext& ctx) {
    SuiteReport rep;
    std::mt19937_64 rng(ctx.seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> ngaps(1, 8), kdist(0, 20);
    const double tol = 1e-12 * ctx.tol_scale;
    double len_err = 0.0, dist_err = 0.0, tiling_err = 0.0;
    std::size_t arcs = 0;
    DataTable tab{"whitney_trials", {"trial", "gaps", "k_max", "arcs", "max_length_error", "max_dist_error"}, {}};

    const auto t0 = Clock::now();
    for (int trial = 0; trial < ctx.whitney_trials; ++trial) {
        const int n = ngaps(rng);
        std::vector<double> p;
        for (;;) {
            p.clear();
            for (int i = 0; i < 2 * n; ++i) p.push_back(u(rng));
            std::sort(p.begin(), p.end());
            bool ok = true;
            for (std::size_t i = 1; i < p.size(); ++i) ok = ok && p[i] - p[i - 1] > 1e-4;
            ok = ok && 1.0 - p.back() + p.front() > 1e-4;
            if (ok) break;
        }
        const double shift = u(rng);
        std::vector<Arc> gaps;
        for (int i = 0; i < n; ++i) {
            const double s = wrap_angle(two_pi * (p[2 * i] + shift));
            gaps.push_back(Arc::from_endpoints(s, s + two_pi * (p[2 * i + 1] - p[2 * i])));
        }
        std::sort(gaps.begin(), gaps.end(), [](const Arc& a, const Arc& b) { return a.start < b.start; });
        const auto E = validate_set(gaps);
        const int kmax = kdist(rng);
        const auto W = whitney_decompose(E, kmax);

        double le = 0.0, de = 0.0;
        std::vector<double> covered(E.gaps.size(), 0.0);
        for (const auto& a : W.arcs) {
            const auto& A = E.gaps[static_cast<std::size_t>(a.parent)];
            const double expect = A.length / (3.0 * std::ldexp(1.0, std::abs(a.rank)));
            le = std::max(le, std::abs(a.arc.length - expect));
            // distance to E = distance to the nearer endpoint of the parent gap
            const double off = wrap_angle(a.arc.start - A.start);
            const double d = std::min(off, A.span() - off - a.arc.span()) / two_pi;
            de = std::max(de, std::abs(d - a.arc.length));
            covered[static_cast<std::size_t>(a.parent)] += a.arc.length;
        }
        for (const auto& r : W.residuals) {
            const int gi = E.gap_index(r.mid_angle());
            if (gi >= 0) covered[static_cast<std::size_t>(gi)] += r.length;
        }
        for (std::size_t i = 0; i < E.gaps.size(); ++i)
            tiling_err = std::max(tiling_err, std::abs(covered[i] - E.gaps[i].length));
        len_err = std::max(len_err, le);
        dist_err = std::max(dist_err, de);
        arcs += W.arcs.size();
        tab.rows.push_back({double(trial), double(n), double(kmax), double(W.arcs.size()), le, de});
    }
    const double elapsed = seconds_since(t0);
    rep.add("whitney length |B| = |A|/(3·2^|k|)", len_err, "<=", tol);
    rep.add("whitney dist(B, E) = |B|", dist_err, "<=", tol);
    rep.add("whitney arcs and residuals tile each gap", tiling_err, "<=", tol);
    rep.add("whitney runtime seconds", elapsed, "<", 1.0).timing = true;
    rep.add("whitney arcs checked", static_cast<double>(arcs), "info", 0.0);
    rep.tables.push_back(std::move(tab));
    return rep;
}

// ---------------------------------------------------------------- cutoff

SuiteReport suite_cutoff(const SuiteContext& ctx) {
    SuiteReport rep;
    const auto t0 = Clock::now();
    const double tol = 1e-12 * ctx.tol_scale;
    CutoffOptions opt;
    opt.k_max = ctx.k_max;
    const CutoffFunction c(ctx.set, opt);

    std::mt19937_64 rng(ctx.seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double max_g = 0.0, max_re_h = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 10000; ++i) {
        // a quarter of the closed-disk points sit on the circle
        const double r = i % 4 == 0 ? 1.0 : std::sqrt(u(rng));
        const cplx z = std::polar(r, two_pi * u(rng));
        max_g = std::max(max_g, std::abs(eval_g(c, z)));
    }
    for (int i = 0; i < 10000; ++i) {
        const cplx z = std::polar(std::sqrt(u(rng)) * (1.0 - 1e-12), two_pi * u(rng));
        max_re_h = std::max(max_re_h, eval_h(c, z).real());
    }
    rep.add("cutoff max |g| on closed disk", max_g, "<=", 1.0 + tol);
    rep.add("cutoff max Re h in disk", max_re_h, "<", 0.0);

    const auto decay = certify_decay(c, {0, 1, 2, 3, 4}, {0, 1, 2});
    int bad = 0;
    DataTable tab{"cutoff_decay", {"N", "m", "level", "rank", "distance", "log10_rho"}, {}};
    for (const auto& e : decay.entries) {
        if (!e.monotone) ++bad;
        for (std::size_t l = 0; l < e.log10_rho.size(); ++l)
            tab.rows.push_back({double(e.N), double(e.m), double(l), double(decay.ranks[l]), decay.distance[l],
                                e.log10_rho[l]});
    }
    rep.add("cutoff decay certificate non-monotone entries (N<=4, m<=2)", bad, "<=", 0.0, decay.method);
    rep.add("cutoff decay levels", static_cast<double>(decay.ranks.size()), ">=", 6.0);
    rep.tables.push_back(std::move(tab));

    // spectral cross-check where the grid resolves the arcs
    const int log2 = ctx.log2_size.value_or(16);
    try {
        const auto& A = ctx.set.gaps.front();
        const int finest = static_cast<int>(std::floor(std::log2(A.length * std::ldexp(1.0, log2) / 24.0)));
        const auto spec = windowed_spectral_derivative(c, 0, 1, log2, finest);
        const double min_d = A.length / (3.0 * std::ldexp(1.0, finest - 2));
        double err = 0.0, scale = 0.0;
        for (std::size_t m = 0; m < spec.size(); ++m) {
            const double t = two_pi * static_cast<double>(m) / static_cast<double>(spec.size());
            if (ctx.set.gap_index(t) != 0 || dist_to_set(t, ctx.set) < min_d) continue;
            const auto r = c.log_derivative_ratios(t, 1);
            const cplx exact = r[1] * c.g(std::polar(1.0, t));
            err = std::max(err, std::abs(spec[m] - exact));
            scale = std::max(scale, std::abs(exact));
        }
        rep.add("cutoff windowed spectral G' vs exact (resolved region, relative)", scale > 0 ? err / scale : err,
                "info", 0.0);
    } catch (const ResolutionError& e) {
        rep.add("cutoff windowed spectral G' vs exact (resolved region, relative)", 0.0, "info", 0.0, e.what());
    }

    const auto fit = fit_cutoff_exponent(c);
    rep.add("cutoff fitted exponent c", fit.c, "info", 0.0);
    rep.add("cutoff fitted exponent spread", fit.spread, "info", 0.0);
    rep.add("cutoff tail mass", c.tail_mass(), "info", 0.0);
    rep.add("cutoff lambda-weighted sum minus bound", lambda_weighted_sum(c.whitney()) - lambda_sum_bound(c.whitney()),
            "<=", 0.0);
    rep.add("cutoff runtime seconds", seconds_since(t0), "<", 30.0).timing = true;
    return rep;
}

// ---------------------------------------------------------------- outer

SuiteReport suite_outer(const SuiteContext& ctx) {
    SuiteReport rep;
    const int log2 = ctx.log2_size.value_or(16);
    const double s = ctx.tol_scale;
    std::mt19937_64 rng(ctx.seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);

    {
        const OuterFunction W(make_weight(BeurlingCarlesonSet::full_circle(), {0.5}));
        rep.add("outer E = T, w = 1/2: |W(z) - 1/2|", std::abs(W.value(cplx(0.3, 0.2)) - 0.5), "<=", 1e-12 * s);
    }
    {
        const auto half = validate_set({Arc::from_endpoints(pi, two_pi)});
        const OuterFunction W(make_weight(half, {0.25}));
        rep.add("outer half circle, w = 1/4: ||W(0)| - 1/2|", std::abs(std::abs(W.value(0.0)) - 0.5), "<=", 1e-12 * s);
    }

    const auto w = weight_of(ctx.set, ctx.weight);
    const OuterFunction W(w);
    const auto Wb = W.boundary(log2);
    const std::size_t n = Wb.size();

    // analyticity: negative frequencies vanish for smooth weights
    auto negative_mass = [&](const std::vector<cplx>& b) {
        const auto cf = dft(b);
        double worst = 0.0;
        for (std::size_t k = n / 2 + 1; k < n; ++k) worst = std::max(worst, std::abs(cf[k]));
        return worst / std::abs(cf[0]);
    };
    rep.add("outer analyticity, smooth weight (max negative coefficient)", negative_mass(Wb), "<=", 1e-8 * s);
    double worst_random = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<Bump> bumps;
        for (const auto& comp : ctx.set.components()) {
            const double hw = comp.span() / 5.0;
            const double c = comp.start + hw + (comp.span() - 2.0 * hw) * u(rng);
            bumps.push_back({wrap_angle(c), hw, -1.5 + 2.0 * u(rng)});
        }
        // level 1 keeps log w continuous across ∂E
        const OuterFunction Wr(make_weight(ctx.set, {1.0}, bumps));
        worst_random = std::max(worst_random, negative_mass(Wr.boundary(log2)));
    }
    rep.add("outer analyticity, random smooth weights", worst_random, "<=", 1e-8 * s);
    {
        const OuterFunction Wp(weight_of(ctx.set, ctx.divisor_weight));
        rep.add("outer analyticity, piecewise-constant weight (aliasing ~ 1/N)", negative_mass(Wp.boundary(log2)),
                "info", 0.0);
    }

    rep.add("outer |W(0)| = exp(∫ log w)", std::abs(std::abs(W.value(0.0)) - std::exp(w.log_integral)) /
                                               std::exp(w.log_integral),
            "<=", 1e-10 * s);

    {
        const BoundaryWeight w2 = make_weight(ctx.set, {0.8, 0.6}, {});
        const OuterFunction W2(w2), W12(multiply(w, w2));
        double err = 0.0;
        for (const auto& z : random_disk_points(rng, 50, 0.95)) {
            const cplx prod = W.value(z) * W2.value(z);
            err = std::max(err, std::abs(W12.value(z) - prod) / std::abs(prod));
        }
        rep.add("outer multiplicative W(w1 w2) = W(w1) W(w2)", err, "<=", 1e-10 * s);
    }

    {
        double err = 0.0;
        const double cell = two_pi / static_cast<double>(n);
        for (std::size_t m = 0; m < n; ++m) {
            const double t = cell * static_cast<double>(m);
            if (dist_to_set(t, ctx.set) * two_pi < 2.0 * cell && !ctx.set.contains(t)) continue;
            bool near_end = false;
            for (const auto& g : ctx.set.gaps)
                near_end = near_end || std::abs(std::remainder(t - g.start, two_pi)) < 2.0 * cell ||
                           std::abs(std::remainder(t - g.end, two_pi)) < 2.0 * cell;
            if (near_end) continue;
            const double target = ctx.set.contains(t) ? w.value(t) : 1.0;
            err = std::max(err, std::abs(std::abs(Wb[m]) - target) / target);
        }
        rep.add("outer boundary modulus |W| = w on E, 1 off E", err, "<=", 1e-8 * s);
    }

    {
        const auto ser = W.series(512);
        double err = 0.0;
        for (const auto& z : random_disk_points(rng, 50, 0.8)) err = std::max(err, std::abs(evaluate_in_disk(ser, z) - W.value(z)));
        rep.add("outer Taylor series vs Herglotz value, |z| <= 0.8", err, "<=", 1e-10 * s);
    }

    {
        const auto d = certify_W_derivatives(W, {0, 1, 2});
        DataTable tab{"outer_W_derivatives", {"m", "distance", "value", "cumulative"}, {}};
        for (const auto& b : d.bounds) {
            for (const auto& l : b.levels) tab.rows.push_back({double(b.m), l.distance, l.value, l.cumulative});
            rep.add("outer W derivative bound stability m=" + std::to_string(b.m), b.stability, "<=", 4.0);
        }
        rep.add("outer W derivative constant m=0 (|W| <= 1 off E)", d.bounds.front().constant, "<=", 1.0 + 1e-12);
        rep.tables.push_back(std::move(tab));
        const OuterFunction W1(make_weight(ctx.set, {1.0}));
        const auto d1 = certify_W_derivatives(W1, {1, 2});
        double c = 0.0;
        for (const auto& b : d1.bounds) c = std::max(c, b.constant);
        rep.add("outer w = 1 on E: derivative constants", c, "<=", 1e-10 * s);
    }

    // singular inner factors
    {
        InnerFunction th;
        th.singular = make_measure({{0.0, 0.3, MeasurePart::K}, {2.0, 0.2, MeasurePart::K}});
        rep.add("inner S(0) = exp(-ν(T))", std::abs(th.value(0.0) - std::exp(-0.5)), "<=", 1e-14 * s);
        InnerFunction one;
        one.singular = make_measure({{0.0, 0.4, MeasurePart::K}});
        double err = 0.0;
        for (double x : {-0.9, -0.3, 0.0, 0.4, 0.8}) {
            const double expect = std::exp(-0.4 * (1.0 + x) / (1.0 - x));
            err = std::max(err, std::abs(one.value(x) - expect) / expect);
        }
        rep.add("inner S at real points vs exp(-a(1+x)/(1-x))", err, "<=", 1e-12 * s);
        double radial = 1.0;
        for (double t : {1.0, 2.5, 4.0}) radial = std::min(radial, std::abs(th.value(std::polar(1.0 - 1e-6, t))));
        rep.add("inner radial limit modulus away from atoms", radial, ">=", 1.0 - 1e-3);
        double sup = 0.0, mult = 0.0;
        InnerFunction a, b;
        a.singular = make_measure({{0.0, 0.3, MeasurePart::K}});
        b.singular = make_measure({{2.0, 0.2, MeasurePart::K}});
        for (const auto& z : random_disk_points(rng, 200, 0.999)) {
            sup = std::max(sup, std::abs(th.value(z)));
            mult = std::max(mult, std::abs(th.value(z) - a.value(z) * b.value(z)));
        }
        rep.add("inner |S| <= 1 in the disk", sup, "<=", 1.0 + 1e-14);
        rep.add("inner S_{ν1+ν2} = S_ν1 S_ν2", mult, "<=", 1e-12 * s);

        InnerFunction bl;
        bl.zeros = {cplx(0.9, 0.0)};
        double unimod = 0.0;
        for (const auto& v : bl.boundary(12)) unimod = std::max(unimod, std::abs(std::abs(v) - 1.0));
        rep.add("inner Blaschke factor unimodular on T", unimod, "<=", 1e-12 * s);

        const auto F = validate_set({Arc::from_endpoints(0.0, two_pi)});
        const auto td = certify_theta_derivatives(one, F, {1, 2});
        for (const auto& bd : td.bounds)
            rep.add("inner θ derivative bound stability m=" + std::to_string(bd.m), bd.stability, "<=", 4.0);
        InnerFunction triv;
        const auto tz = certify_theta_derivatives(triv, F, {1});
        rep.add("inner θ = 1 derivative constant", tz.bounds.front().constant, "<=", 1e-14);

        // b = θ W on the boundary keeps |W| off atoms
        const auto thb = one.boundary(log2);
        double mod = 0.0;
        for (std::size_t m = 1; m < n; ++m) {
            const double t = two_pi * static_cast<double>(m) / static_cast<double>(n);
            if (std::abs(std::remainder(t, two_pi)) < 1e-2) continue;
            mod = std::max(mod, std::abs(std::abs(thb[m] * Wb[m]) - std::abs(Wb[m])));
        }
        rep.add("inner-outer product keeps |W| on T away from atoms", mod, "<=", 1e-12 * s);
    }
    return rep;
}

// ---------------------------------------------------------------- transform

namespace {

std::shared_ptr<const CutoffFunction> cutoff_of(const BeurlingCarlesonSet& E, int k_max) {
    CutoffOptions o;
    o.k_max = k_max;
    return std::make_shared<const CutoffFunction>(E, o);
}

std::shared_ptr<const InnerFunction> inner_of(std::vector<Atom> atoms, std::vector<cplx> zeros = {}) {
    auto th = std::make_shared<InnerFunction>();
    th->zeros = std::move(zeros);
    th->singular = make_measure(std::move(atoms));
    return th;
}

const BeurlingCarlesonSet& point_carrier() {
    static const auto F = validate_set({Arc::from_endpoints(0.0, two_pi)});
    return F;
}

}  // namespace

SuiteReport suite_transform(const SuiteContext& ctx) {
    SuiteReport rep;
    const int log2 = ctx.log2_size.value_or(22);
    const double s = ctx.tol_scale;
    const auto t0 = Clock::now();

    FamilyIngredients ing;
    ing.g = cutoff_of(ctx.set, ctx.k_max);
    ing.W = std::make_shared<const OuterFunction>(weight_of(ctx.set, ctx.weight));
    const auto grid = std::make_shared<const FamilyGrid>(Family::K, ing, log2);

    const std::vector<std::pair<std::string, AnalyticSeries>> members{
        {"1", monomial(0)}, {"z", monomial(1)}, {"z^3", monomial(3)}};
    TransformOptions topt;
    const std::size_t n = grid->size();
    if (topt.fit_hi > n / 16) {
        topt.fit_hi = n / 16;
        topt.fit_lo = std::min<std::size_t>(topt.fit_lo, topt.fit_hi / 4);
        topt.band = std::min(topt.band, n / 2);
    }
    DataTable tab{"transform_coefficients", {"n", "abs_S_p1", "abs_S_pz", "abs_S_pz3"}, {}};
    std::vector<KMember> built;
    std::vector<TransformResult> results;
    for (const auto& [name, p] : members) {
        built.push_back(build_member(grid, p));
        const auto& m = built.back();
        results.push_back(smooth_transform(m, topt));
        const auto& r = results.back();
        rep.add("transform K p=" + name + " decay slope on [" + std::to_string(topt.fit_lo) + ", " +
                    std::to_string(topt.fit_hi) + "]",
                r.decay_fit.slope, "<=", -4.0);
        rep.add("transform K p=" + name + " norm", r.norm, ">", 0.0);
        rep.add("transform K p=" + name + " flip discrepancy", flip_check(m).discrepancy, "<=", 1e-6 * s);
    }
    rep.add("transform criterion runtime seconds", seconds_since(t0), "<", 60.0).timing = true;
    for (std::size_t k = 0; k < results[0].series.size(); ++k)
        tab.rows.push_back({double(k), std::abs(results[0].series[k]), std::abs(results[1].series[k]),
                            std::abs(results[2].series[k])});
    rep.tables.push_back(std::move(tab));

    {
        auto ctrl = built[0].s;
        double peak = 0.0;
        for (const auto& v : ctrl) peak = std::max(peak, std::abs(v));
        for (auto& v : ctrl) v += 0.1 * peak;
        rep.add("transform flip negative control (s + const)", flip_check(with_samples(built[0], ctrl)).discrepancy,
                ">=", 1e-2);
    }
    {
        AnalyticSeries q({1.0, 0.0, 0.0, 2.0});
        const auto lin = smooth_transform(build_member(grid, q), topt);
        std::vector<cplx> sum(lin.series.size());
        for (std::size_t k = 0; k < sum.size(); ++k) sum[k] = results[0].series[k] + 2.0 * results[2].series[k];
        rep.add("transform linearity S(1 + 2z^3) = S(1) + 2 S(z^3)", rel_diff(lin.series.coeffs, sum), "<=",
                1e-10 * s);
    }
    rep.add("transform E = T rejected", throws_bcct([&] { cutoff_of(BeurlingCarlesonSet::full_circle(), ctx.k_max); })
                                            ? 1.0
                                            : 0.0,
            ">=", 1.0);

    {
        double worst = 0.0;
        for (int k = 0; k <= 8; ++k) worst = std::max(worst, backshift_identity(built[0], k));
        rep.add("transform backward shift identity k <= 8", worst, "<=", 1e-10 * s);
        rep.add("transform p(L) identity with p = 1 + 2z", backshift_polynomial(built[0], AnalyticSeries({1.0, 2.0})),
                "<=", 1e-10 * s);
    }

    // K1 and K2 orthogonality
    std::vector<Atom> c_atoms, k_on, k_off;
    for (const auto& a : ctx.atoms) {
        if (a.part == MeasurePart::C) c_atoms.push_back(a);
        else if (on_set(ctx.set, a.angle)) k_on.push_back(a);
        else k_off.push_back(a);
    }
    const double orth_tol = 1e-7 * s;
    {
        FamilyIngredients k1;
        k1.g = cutoff_of(point_carrier(), ctx.k_max);
        if (!c_atoms.empty()) {
            std::vector<Atom> at;
            for (auto a : c_atoms) at.push_back(a);
            k1.theta = inner_of(at);
            const auto g1 = std::make_shared<const FamilyGrid>(Family::K1, k1, log2);
            const auto r = model_space_orthogonality(build_member(g1, monomial(0)), 32);
            rep.add("transform K1 atomic θ: C_s ⟂ θ z^k, k <= 32", r.grid_residual, "<=", orth_tol);
            rep.add("transform K1 atomic θ: coefficient route", r.coefficient_residual, "info", 0.0);
        }
        if (!ctx.blaschke.empty()) {
            k1.theta = inner_of({}, ctx.blaschke);
            const auto g1 = std::make_shared<const FamilyGrid>(Family::K1, k1, log2);
            rep.add("transform K1 Blaschke θ: C_s ⟂ θ z^k",
                    model_space_orthogonality(build_member(g1, monomial(0)), 32).grid_residual, "<=", orth_tol);
        }
        k1.theta = inner_of({});
        const auto g1 = std::make_shared<const FamilyGrid>(Family::K1, k1, log2);
        const auto m1 = build_member(g1, monomial(0));
        const auto r = model_space_orthogonality(m1, 32);
        double sn = 0.0;
        for (const auto& v : m1.s) sn += std::norm(v);
        sn = std::sqrt(sn / static_cast<double>(m1.s.size()));
        rep.add("transform K1 θ = 1: ‖C_s‖ / ‖s‖", r.scale / sn, "<=", 1e-8 * s);
    }
    if (!k_on.empty()) {
        FamilyIngredients k2 = ing;
        k2.theta = inner_of(k_on);
        const auto g2 = std::make_shared<const FamilyGrid>(Family::K2, k2, log2);
        double worst = 0.0;
        for (int j = 0; j <= 2; ++j) {
            const auto p = vanishing_monomial(std::polar(1.0, k_on.front().angle), 3, j);
            worst = std::max(worst, model_space_orthogonality(build_member(g2, p), 32).grid_residual);
        }
        rep.add("transform K2 atom on E, p = (z - ζ_a)^3 z^j: C_s ⟂ θ z^k", worst, "<=", orth_tol);
        const auto plain = model_space_orthogonality(build_member(g2, monomial(0)), 32);
        rep.add("transform K2 atom on E, p = 1 (atom sampling error)", plain.grid_residual, "info", 0.0,
                "cell estimate " + std::to_string(plain.atom_cell_estimate));

        const auto split = split_transform(build_member(g2, vanishing_monomial(std::polar(1.0, k_on.front().angle), 3, 0)),
                                           topt);
        rep.add("transform K2 split additivity u1 + u2 = C_s", split.additivity, "<=", 1e-10 * s);
        rep.add("transform K2 split u1 decay slope", split.u1_decay.slope, "info", 0.0);
    }
    return rep;
}

// ---------------------------------------------------------------- weights

namespace {

// K(N) by forward prefix sums: least K >= 1 with total_N - prefix_N(K) < base^N
std::vector<std::size_t> direct_tail_indices(const AnalyticSeries& S, int n_max, double base) {
    std::vector<std::size_t> K{0};
    for (int N = 1; N <= n_max; ++N) {
        long double total = 0.0L;
        for (std::size_t k = 1; k < S.size(); ++k) total += std::pow(static_cast<long double>(k), N) * std::norm(S[k]);
        long double prefix = 0.0L;
        std::size_t found = S.size();
        for (std::size_t k = 1; k < S.size(); ++k) {
            if (total - prefix < std::pow(static_cast<long double>(base), N)) {
                found = k;
                break;
            }
            prefix += std::pow(static_cast<long double>(k), N) * std::norm(S[k]);
        }
        K.push_back(std::max(found, K.back()));
    }
    return K;
}

AnalyticSeries fejer_symbol(std::mt19937_64& rng, int degree) {
    std::normal_distribution<double> nd;
    std::vector<cplx> c(static_cast<std::size_t>(degree) + 1);
    for (auto& v : c) v = cplx(nd(rng), nd(rng));
    auto f = fejer_means(AnalyticSeries(std::move(c)), degree);
    const double sup = circle_sup_norm(f);
    for (auto& v : f.coeffs) v /= sup;
    return f;
}

}  // namespace

SuiteReport suite_weights(const SuiteContext& ctx) {
    SuiteReport rep;
    const double s = ctx.tol_scale;
    std::mt19937_64 rng(ctx.seed);
    constexpr int n_max = 4;

    const auto alpha = rapid_weight(ctx.coefficients, n_max);
    bool nondecreasing = true;
    double cap = 0.0, weighted = 0.0, norm2 = 0.0;
    for (std::size_t k = 0; k < alpha.size(); ++k) {
        if (k > 0 && alpha.alpha[k] < alpha.alpha[k - 1]) nondecreasing = false;
        if (k > 0) {
            const double kk = static_cast<double>(k);
            cap = std::max(cap, alpha.alpha[k] / std::pow(kk, std::sqrt(kk)) - 1.0);
        }
        weighted += alpha.alpha[k] * std::norm(ctx.coefficients[k]);
        norm2 += std::norm(ctx.coefficients[k]);
    }
    rep.add("weights rapid weight non-decreasing", nondecreasing ? 1.0 : 0.0, ">=", 1.0);
    rep.add("weights Σ α|S|² - ‖S‖² - 2", weighted - norm2 - 2.0, "<=", 0.0);
    rep.add("weights α_k / k^√k - 1", cap, "<=", 1e-12);
    const auto K = direct_tail_indices(ctx.coefficients, n_max, 0.5);
    int mismatch = 0;
    DataTable tab{"weights_tail_indices", {"N", "K_rapid", "K_direct"}, {}};
    for (int N = 0; N <= n_max; ++N) {
        if (alpha.K[static_cast<std::size_t>(N)] != K[static_cast<std::size_t>(N)]) ++mismatch;
        tab.rows.push_back({double(N), double(alpha.K[static_cast<std::size_t>(N)]), double(K[static_cast<std::size_t>(N)])});
    }
    rep.add("weights K(N) index agreement with direct tail sums (mismatches)", mismatch, "<=", 0.0);
    rep.tables.push_back(std::move(tab));
    rep.add("weights rapid growth proxy", alpha.rapid_certified ? 1.0 : 0.0, "info", 0.0);

    // Toeplitz and multiplier bounds
    std::vector<cplx> geo(160);
    for (std::size_t k = 0; k < geo.size(); ++k) geo[k] = std::ldexp(1.0, -static_cast<int>(k));
    const auto aT = rapid_weight(AnalyticSeries(geo), n_max);
    std::vector<double> incr(aT.size());
    {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        double acc = 1.0;
        for (auto& v : incr) v = (acc += u(rng));
    }
    const auto aR = make_sequence(incr);
    double worst = -std::numeric_limits<double>::infinity();
    DataTable ttab{"weights_toeplitz", {"trial", "mode", "sequence", "norm", "sup"}, {}};
    for (int trial = 0; trial < 20; ++trial) {
        const auto h = fejer_symbol(rng, 64);
        const double sup = circle_sup_norm(h);
        int seq = 0;
        for (const auto* a : {&aT, &aR}) {
            for (auto mode : {ToeplitzMode::co_analytic, ToeplitzMode::multiplier}) {
                const double nv = toeplitz_norm(h, 64, mode, *a);
                worst = std::max(worst, nv - sup);
                ttab.rows.push_back({double(trial), mode == ToeplitzMode::co_analytic ? 0.0 : 1.0, double(seq), nv, sup});
            }
            ++seq;
        }
    }
    rep.add("weights Toeplitz/multiplier norm - ‖h‖∞ (20 Fejér symbols, both modes)", worst, "<=", 1e-8);
    rep.tables.push_back(std::move(ttab));
    rep.add("weights backward shift norm on X(α)", toeplitz_norm(monomial(1), 64, ToeplitzMode::co_analytic, aT), "<=",
            1.0 + 1e-12);

    // moments
    DataTable mtab{"weights_moments", {"C", "k", "beta", "ratio"}, {}};
    for (double C : {0.0, 1.0, 2.5}) {
        const auto m = moments_beta(C, 1024);
        const std::string tag = "C=" + std::to_string(C).substr(0, 3);
        rep.add("weights moments " + tag + " closed form Beta(k+1, C+1)", m.closed_form_error, "<=", 1e-12 * s);
        rep.add("weights moments " + tag + " recursion", m.recursion_error, "<=", 1e-12 * s);
        rep.add("weights moments " + tag + " quadrature cross-check", m.quadrature_error, "<=", 1e-10 * s);
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (std::size_t k = 64; k <= 1024; ++k) {
            lo = std::min(lo, m.ratio[k]);
            hi = std::max(hi, m.ratio[k]);
        }
        rep.add("weights moments " + tag + " β_k k^{C+1} spread on [64, 1024]", hi / lo - 1.0, "<=", 0.1,
                "ratio at 64: " + std::to_string(m.ratio[64]) + ", at 1024: " + std::to_string(m.ratio[1024]));
        for (std::size_t k = 1; k <= 1024; k *= 2) mtab.rows.push_back({C, double(k), m.beta[k], m.ratio[k]});
    }
    rep.tables.push_back(std::move(mtab));

    // Gram and embedding
    {
        const auto full = make_weight(BeurlingCarlesonSet::full_circle(), {1.0});
        DualSequence ones;
        ones.reciprocal.assign(17, 1.0);
        const auto g = d_space_gram(ones, full, 16);
        const Eigen::MatrixXcd two = 2.0 * Eigen::MatrixXcd::Identity(17, 17);
        rep.add("weights Gram E = T, w = 1, α = 1 equals 2I", (g.G - two).cwiseAbs().maxCoeff(), "<=", 1e-12 * s);
        const auto dual = DualSequence::of(aT);
        const auto wp = weight_of(ctx.set, ctx.divisor_weight);
        const auto gg = d_space_gram(dual, wp, 16);
        rep.add("weights Gram min eigenvalue", gg.min_eigenvalue, ">", 0.0);
        rep.add("weights Gram Hermitian error", gg.hermitian_error, "<=", 1e-12);
        rep.add("weights w = 0 rejected",
                throws_bcct([&] { make_weight(ctx.set, {0.0}); }) ? 1.0 : 0.0, ">=", 1.0);
        std::normal_distribution<double> nd;
        std::vector<cplx> f(9);
        for (auto& v : f) v = cplx(nd(rng), nd(rng));
        rep.add("weights H² embedding projection residual",
                h2_embedding_residual(dual, weight_of(ctx.set, ctx.weight), AnalyticSeries(f), 16), "<=", 1e-8 * s);
    }
    {
        std::normal_distribution<double> nd;
        double worst_cs = -std::numeric_limits<double>::infinity();
        const auto dual = DualSequence::of(aT);
        for (int t = 0; t < 100; ++t) {
            std::vector<cplx> f(aT.size()), g(aT.size());
            for (std::size_t k = 0; k < f.size(); ++k) {
                f[k] = cplx(nd(rng), nd(rng)) / std::sqrt(aT.alpha[k]);
                g[k] = cplx(nd(rng), nd(rng)) * std::sqrt(aT.alpha[k]) * 1e-3;
            }
            const AnalyticSeries F(f), G(g);
            worst_cs = std::max(worst_cs, std::abs(pairing(F, G)) - x_norm(F, aT) * x_norm(G, dual) * (1.0 + 1e-12));
        }
        rep.add("weights Cauchy-Schwarz |<f,g>| - ‖f‖_α ‖g‖_{1/α}", worst_cs, "<=", 0.0);
    }
    return rep;
}

// ---------------------------------------------------------------- annihilator

SuiteReport suite_annihilator(const SuiteContext& ctx) {
    SuiteReport rep;
    const int log2 = ctx.log2_size.value_or(16);
    const double tol = 1e-7 * ctx.tol_scale;
    DataTable tab{"annihilator", {"set", "p", "residual"}, {}};
    for (std::size_t si = 0; si < ctx.sets.size(); ++si) {
        const auto& ns = ctx.sets[si];
        FamilyIngredients ing;
        ing.g = cutoff_of(ns.set, ctx.k_max);
        const bool main = ns.set.gaps.size() == ctx.set.gaps.size() &&
                          std::abs(ns.set.measure - ctx.set.measure) < 1e-15;
        ing.W = std::make_shared<const OuterFunction>(main ? weight_of(ns.set, ctx.weight)
                                                           : make_weight(ns.set, {0.5}));
        const auto grid = std::make_shared<const FamilyGrid>(Family::K, ing, log2);
        int pi_idx = 0;
        for (const auto& p : {monomial(0), monomial(1), monomial(3)}) {
            const auto m = build_member(grid, p);
            const double r = annihilator_check(m, 32).residual;
            rep.add("annihilator " + ns.name + " p=" + std::vector<std::string>{"1", "z", "z^3"}[static_cast<std::size_t>(pi_idx)],
                    r, "<=", tol);
            tab.rows.push_back({double(si), double(pi_idx), r});
            if (pi_idx == 0) {
                auto C = cauchy_coefficients(m, Region::E, grid->size() / 2);
                C.coeffs[0] += 0.1;
                C.coeffs[1] += 0.1;
                rep.add("annihilator " + ns.name + " negative control C + 0.1(1 + z)", annihilator_check(m, 32, C).residual,
                        ">=", 1e-2);
            }
            ++pi_idx;
        }
    }
    rep.tables.push_back(std::move(tab));
    return rep;
}

// ---------------------------------------------------------------- permanence

SuiteReport suite_permanence(const SuiteContext& ctx) {
    SuiteReport rep;
    const int log2 = ctx.log2_size.value_or(20);
    const double tol = 1e-7 * ctx.tol_scale;
    FamilyIngredients ing;
    ing.g = cutoff_of(ctx.set, ctx.k_max);
    ing.W = std::make_shared<const OuterFunction>(weight_of(ctx.set, ctx.weight));

    std::vector<Atom> on, off;
    for (const auto& a : ctx.atoms) {
        if (on_set(ctx.set, a.angle)) {
            bool dup = false;
            for (const auto& b : on) dup = dup || (std::abs(b.angle - a.angle) < 1e-15 && b.mass == a.mass);
            if (!dup) on.push_back(a);
        } else if (a.part == MeasurePart::K) {
            off.push_back(a);
        }
    }
    DataTable tab{"permanence", {"config", "degree", "c1", "c2"}, {}};
    std::optional<WeightSequence> reference;
    if (!on.empty()) {
        FamilyIngredients k2 = ing;
        k2.theta = inner_of({on.front()});
        const auto grid = std::make_shared<const FamilyGrid>(Family::K2, k2, log2);
        const auto r = permanence_functional_check(grid);
        rep.add("permanence atom on E: C_s ⟂ θ z^k over the basis", r.orthogonality, "<=", tol);
        rep.add("permanence atom on E: u1 constant ratio C(32)/C(8)", r.c1_ratio, "<=", 2.0);
        rep.add("permanence atom on E: u2 constant ratio C(32)/C(8)", r.c2_ratio, "<=", 2.0);
        rep.add("permanence atom on E: max_d C1(d) / ‖u1‖_X(α)", r.c1.back() / r.b1, "<=", 1.0 + 1e-9);
        rep.add("permanence atom on E: max_d C2(d) / ‖s/w‖_L²(w)", r.c2.back() / r.b2, "<=", 1.0 + 1e-9);
        for (std::size_t i = 0; i < r.degrees.size(); ++i) tab.rows.push_back({0.0, double(r.degrees[i]), r.c1[i], r.c2[i]});
        reference = r.alpha;
    }
    if (!off.empty()) {
        FamilyIngredients k2 = ing;
        k2.theta = inner_of({off.front()});
        const auto grid = std::make_shared<const FamilyGrid>(Family::K2, k2, log2);
        const auto r = permanence_functional_check(grid, {}, reference ? &*reference : nullptr);
        rep.add("permanence atom off E: u1 constant ratio C(32)/C(8) (trend)", r.c1_ratio, "info", 0.0);
        rep.add("permanence atom off E: u2 constant ratio C(32)/C(8) (trend)", r.c2_ratio, "info", 0.0);
        rep.add("permanence atom off E: orthogonality", r.orthogonality, "info", 0.0);
        rep.add("permanence atom off E: ‖u1‖_X(α) with the on-E α", r.b1, "info", 0.0);
        for (std::size_t i = 0; i < r.degrees.size(); ++i) tab.rows.push_back({1.0, double(r.degrees[i]), r.c1[i], r.c2[i]});
    }
    rep.tables.push_back(std::move(tab));
    return rep;
}

// ---------------------------------------------------------------- dbr-psd

SuiteReport suite_dbr_psd(const SuiteContext& ctx) {
    SuiteReport rep;
    const int log2 = ctx.log2_size.value_or(16);
    const double s = ctx.tol_scale;
    std::mt19937_64 rng(ctx.seed);

    std::vector<Atom> c_atoms;
    for (const auto& a : ctx.atoms)
        if (a.part == MeasurePart::C) c_atoms.push_back(a);
    InnerFunction th;
    th.zeros = ctx.blaschke;
    th.singular = make_measure(c_atoms);
    const SymbolB b(th, weight_of(ctx.set, ctx.divisor_weight));

    const auto cert = certify_symbol(b, log2);
    rep.add("dbr ‖b‖∞ <= 1", cert.sup_norm, "<=", 1.0 + 1e-12);
    rep.add("dbr Δ² + |b|² = 1", cert.pythagoras_error, "<=", 1e-10 * s);
    rep.add("dbr log Δ integral floor hit (extremality proxy)", cert.floor_hit ? 1.0 : 0.0, "info", 0.0);

    const auto pts = psd_lattice(32, 0.9);
    const auto comps = ctx.set.components();
    double shortest = 1.0;
    for (const auto& c : comps) shortest = std::min(shortest, c.length);
    const double delta0 = 0.25 * shortest;
    std::vector<std::size_t> drop_first;
    if (!c_atoms.empty()) drop_first.push_back(0);

    double worst_eig = std::numeric_limits<double>::infinity(), worst_herm = 0.0;
    std::vector<SymbolB> seq;
    DataTable tab{"dbr_divisors", {"n", "delta", "min_eigenvalue", "divisor_ratio"}, {}};
    for (int n = 1; n <= 6; ++n) {
        const double d = delta0 * std::ldexp(1.0, -n);
        const auto bn = divisor_symbol(b, d, drop_first);
        const auto r = kernel_difference_psd(b, bn, pts);
        worst_eig = std::min(worst_eig, r.min_eigenvalue);
        worst_herm = std::max(worst_herm, r.hermitian_error);
        tab.rows.push_back({double(n), d, r.min_eigenvalue, r.divisor_ratio});
        seq.push_back(divisor_symbol(b, d));
    }
    rep.tables.push_back(std::move(tab));
    rep.add("dbr PSD min eigenvalue over the divisor recipe", worst_eig, ">=", -1e-10);
    rep.add("dbr kernel Hermitian symmetry", worst_herm, "<=", 1e-12);
    {
        const auto r = kernel_difference_psd(b, b, pts);
        rep.add("dbr b_n = b gives the zero matrix", std::abs(r.min_eigenvalue), "<=", 1e-14);
        const auto outer_only = divisor_symbol(b, 0.0, [&] {
            std::vector<std::size_t> all(c_atoms.size());
            for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
            return all;
        }(), true);
        rep.add("dbr b_n = outer part only", kernel_difference_psd(b, outer_only, pts).min_eigenvalue, ">=", -1e-10);
    }
    {
        const auto bn = divisor_symbol(b, delta0 / 2, drop_first);
        bool rejected = false;
        double eig = 0.0;
        try {
            kernel_difference_psd(bn, b, pts);
        } catch (const NotADivisor&) {
            rejected = true;
        }
        eig = kernel_difference_gram(HbKernel::of(bn), HbKernel::of(b), pts).min_eigenvalue;
        rep.add("dbr swapped pair rejected (NotADivisor)", rejected ? 1.0 : 0.0, ">=", 1.0);
        rep.add("dbr swapped pair min eigenvalue", eig, "<", -1e-10);
    }
    {
        const auto kb = HbKernel::of(b);
        double diag = std::numeric_limits<double>::infinity();
        double herm = 0.0;
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int i = 0; i < 1000; ++i) {
            const cplx l = std::polar(0.99 * std::sqrt(u(rng)), two_pi * u(rng));
            const cplx z = std::polar(0.99 * std::sqrt(u(rng)), two_pi * u(rng));
            diag = std::min(diag, kernel_eval(kb, l, l).real());
            herm = std::max(herm, std::abs(kernel_eval(kb, l, z) - std::conj(kernel_eval(kb, z, l))));
        }
        rep.add("dbr k_b diagonal non-negative (1000 points)", diag, ">=", 0.0);
        rep.add("dbr k_b Hermitian symmetry (1000 pairs)", herm, "<=", 1e-12);
        const HbKernel zero([](cplx) { return cplx{}; });
        double sz = 0.0;
        for (const auto& l : pts)
            for (const auto& z : pts) sz = std::max(sz, std::abs(kernel_eval(zero, l, z) - 1.0 / (1.0 - std::conj(l) * z)));
        rep.add("dbr b = 0 gives the Szegő kernel", sz, "<=", 1e-15);
    }
    {
        const auto prox = convergence_proxy(b, seq, psd_lattice(20, 0.9));
        int bad = 0;
        for (std::size_t i = 1; i < prox.size(); ++i)
            if (prox[i] > prox[i - 1]) ++bad;
        rep.add("dbr |b_n - b| decreasing as E_n grows (violations)", bad, "<=", 0.0);
    }
    {
        // smooth symbol: E equals the bump supports, levels 1, Blaschke θ
        const auto Es = validate_set({turns(144.0 / 256, 216.0 / 256), turns(264.0 / 256, 368.0 / 256)});
        const auto ws = make_weight(Es, {1.0}, {{two_pi * 128.0 / 256, two_pi * 16.0 / 256, -0.7},
                                                {two_pi * 240.0 / 256, two_pi * 24.0 / 256, -1.2}});
        InnerFunction bl;
        bl.zeros = {cplx(0.5, 0.0)};
        const SymbolB bs(bl, ws);
        const auto [f, g] = kernel_pair(bs, cplx(0.3, 0.0), log2);
        const auto j = j_relation_check(bs, f, g);
        rep.add("dbr J relation pairing residual (kernel pair)", j.pairing_residual, "<=", 1e-8 * s);
        rep.add("dbr J relation projection residual (kernel pair)", j.projection_residual, "<=", 1e-8 * s);

        const SymbolB inner(bl, make_weight(BeurlingCarlesonSet::full_circle(), {1.0}));
        const auto [fi, gi] = kernel_pair(inner, cplx(0.3, 0.0), log2);
        rep.add("dbr inner b: P+(conj(b) k_b) = 0", j_relation_check(inner, fi, gi).projection_residual, "<=",
                1e-8 * s);
        const std::vector<cplx> zf(f.size());
        const auto z0 = j_relation_check(bs, zf, zf);
        rep.add("dbr f = g = 0", std::max(z0.pairing_residual, z0.projection_residual), "<=", 0.0);
    }
    return rep;
}

}  // namespace bcct
