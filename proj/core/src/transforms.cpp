#include "bcct/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bcct/errors.hpp"

namespace bcct {

namespace {

bool same_set(const BeurlingCarlesonSet& a, const BeurlingCarlesonSet& b) {
    if (a.gaps.size() != b.gaps.size()) return false;
    for (std::size_t i = 0; i < a.gaps.size(); ++i)
        if (std::abs(a.gaps[i].start - b.gaps[i].start) > angle_slack ||
            std::abs(a.gaps[i].end - b.gaps[i].end) > angle_slack)
            return false;
    return true;
}

std::vector<cplx> grid_points(std::size_t n) {
    std::vector<cplx> z(n);
    for (std::size_t m = 0; m < n; ++m) z[m] = std::polar(1.0, two_pi * static_cast<double>(m) / static_cast<double>(n));
    return z;
}

// golden-angle lattice with area-uniform radii
std::vector<cplx> disk_lattice(int count, double r_max) {
    const double golden = pi * (3.0 - std::sqrt(5.0));
    std::vector<cplx> out;
    for (int i = 0; i < count; ++i)
        out.push_back(std::polar(r_max * std::sqrt((i + 0.5) / count), golden * i));
    return out;
}

double max_abs(const std::vector<cplx>& v) {
    double m = 0.0;
    for (const auto& x : v) m = std::max(m, std::abs(x));
    return m;
}

// coefficients 0..band-1 of x (normalized DFT)
AnalyticSeries head(const std::vector<cplx>& x, std::size_t band) {
    auto c = dft(x);
    c.resize(std::min(band, c.size() / 2));
    return AnalyticSeries(std::move(c));
}

}  // namespace

const char* family_name(Family f) {
    switch (f) {
        case Family::K: return "K";
        case Family::K1: return "K1";
        case Family::K2: return "K2";
    }
    return "?";
}

FamilyGrid::FamilyGrid(Family family, FamilyIngredients ingredients, int log2_size, std::size_t theta_degree)
    : family_(family), ing_(std::move(ingredients)), log2_(log2_size) {
    if (!ing_.g || !ing_.g->has_set()) throw IngredientMismatch("family needs a cutoff built from its set");
    const bool needs_W = family != Family::K1;
    const bool needs_theta = family != Family::K;
    if (needs_W && !ing_.W) throw IngredientMismatch("family needs the outer function W");
    if (needs_theta && !ing_.theta) throw IngredientMismatch("family needs the inner function θ");
    set_ = ing_.g->set();
    if (needs_W && !same_set(set_, ing_.W->weight().support))
        throw IngredientMismatch("g and W must be built on the same set");
    if (family == Family::K1 && set_.measure > 0.0)
        throw IngredientMismatch("K1 needs a cutoff for a measure-zero carrier");

    const auto g = ing_.g->boundary_g(log2_size);
    const std::size_t n = g.size();
    const auto z = grid_points(n);
    base_.resize(n);
    if (needs_W) {
        const auto W = ing_.W->boundary(log2_size);
        for (std::size_t m = 0; m < n; ++m) base_[m] = std::conj(z[m] * g[m] * W[m]);
    } else {
        for (std::size_t m = 0; m < n; ++m) base_[m] = std::conj(z[m] * g[m]);
    }
    if (needs_theta) {
        theta_ = ing_.theta->boundary(log2_size);
        for (std::size_t m = 0; m < n; ++m) base_[m] *= theta_[m];
        theta_series_ = ing_.theta->series(std::min(theta_degree, n / 4));
    }
    if (set_.measure > 0.0) indicator_ = indicator_weights(set_, log2_size);
    else indicator_.assign(n, 0.0);
}

KMember build_member(std::shared_ptr<const FamilyGrid> grid, const AnalyticSeries& p) {
    KMember m;
    m.family = grid->family();
    m.p = p;
    const std::size_t n = grid->size();
    m.s.resize(n);
    const auto& b = grid->base();
    for (std::size_t j = 0; j < n; ++j) {
        const cplx z = std::polar(1.0, two_pi * static_cast<double>(j) / static_cast<double>(n));
        m.s[j] = b[j] * std::conj(evaluate_polynomial(p, z));
    }
    m.grid = std::move(grid);
    return m;
}

KMember build_member(Family family, const AnalyticSeries& p, const FamilyIngredients& ingredients, int log2_size) {
    return build_member(std::make_shared<const FamilyGrid>(family, ingredients, log2_size), p);
}

KMember with_samples(const KMember& m, std::vector<cplx> s) {
    if (s.size() != m.s.size()) throw LengthMismatch("replacement samples have the wrong length");
    KMember out = m;
    out.s = std::move(s);
    return out;
}

AnalyticSeries cauchy_coefficients(const KMember& m, Region region, std::size_t band) {
    const auto& ind = m.grid->indicator();
    std::vector<cplx> x(m.s.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double w = region == Region::E ? ind[j] : region == Region::complement ? 1.0 - ind[j] : 1.0;
        x[j] = w * m.s[j];
    }
    return head(x, band);
}

DecayFit fit_decay(const AnalyticSeries& S, std::size_t lo, std::size_t hi) {
    if (lo < 1 || hi <= lo || hi >= S.size()) throw PreconditionError("decay fit window outside the band");
    std::vector<double> env(hi + 1, 0.0);
    double run = 0.0;
    for (std::size_t k = hi + 1; k-- > lo;) {
        run = std::max(run, std::abs(S.coeffs[k]));
        env[k] = run;
    }
    constexpr int samples = 33;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int j = 0; j < samples; ++j) {
        const double x = std::log(static_cast<double>(lo)) +
                         (std::log(static_cast<double>(hi)) - std::log(static_cast<double>(lo))) * j / (samples - 1);
        const auto n = std::clamp(static_cast<std::size_t>(std::llround(std::exp(x))), lo, hi);
        const double lx = std::log(static_cast<double>(n));
        const double ly = std::log(std::max(env[n], std::numeric_limits<double>::min()));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    DecayFit f;
    f.lo = lo;
    f.hi = hi;
    f.slope = (samples * sxy - sx * sy) / (samples * sxx - sx * sx);
    return f;
}

TransformResult smooth_transform(const KMember& m, const TransformOptions& options) {
    if (m.family != Family::K) throw PreconditionError("smooth_transform is defined for family K");
    if (m.grid->set().is_full()) throw PreconditionError("smooth_transform needs E != T");
    const std::size_t n = m.s.size();
    if (options.fit_hi > n / 16 || options.band > n / 2)
        throw ResolutionError("grid too coarse for the requested fit window");
    TransformResult r;
    r.series = cauchy_coefficients(m, Region::E, std::max(options.band, options.fit_hi + 1));
    r.decay_fit = fit_decay(r.series, options.fit_lo, options.fit_hi);
    r.norm = r.series.l2_norm();
    return r;
}

FlipReport flip_check(const KMember& m, int points, double r_max) {
    if (r_max > 0.95) throw OutsideDomain("flip check needs r_max <= 0.95");
    const std::size_t n = m.s.size();
    const auto& ind = m.grid->indicator();
    // enough Taylor terms for r_max^k below 1e-18
    const auto terms = static_cast<std::size_t>(std::ceil(std::log(1e-18) / std::log(r_max))) + 1;
    const auto S = cauchy_coefficients(m, Region::E, std::min(terms, n / 2));
    const auto zeta = grid_points(n);
    std::vector<cplx> outside(n);
    for (std::size_t j = 0; j < n; ++j) outside[j] = (1.0 - ind[j]) * m.s[j];

    FlipReport rep;
    rep.points = points;
    double scale = 0.0, worst = 0.0;
    for (const auto& z : disk_lattice(points, r_max)) {
        const cplx ce = evaluate_polynomial(S, z);
        cplx acc{};
        for (std::size_t j = 0; j < n; ++j) {
            if (outside[j] == cplx{}) continue;
            acc += outside[j] / (1.0 - z * std::conj(zeta[j]));
        }
        const cplx cc = acc / static_cast<double>(n);
        scale = std::max(scale, std::abs(ce));
        worst = std::max(worst, std::abs(ce + cc));
    }
    rep.max_abs = worst;
    rep.discrepancy = scale > 0.0 ? worst / scale : worst;
    return rep;
}

double backshift_polynomial(const KMember& m, const AnalyticSeries& q, std::size_t band) {
    const std::size_t n = m.s.size();
    const std::size_t deg = q.size() == 0 ? 0 : q.size() - 1;
    if (band + deg > n / 2) throw ResolutionError("band too large for the grid");
    const auto S = cauchy_coefficients(m, Region::E, band + deg);
    // left: Σ_k q_k S_{n+k}
    std::vector<cplx> left(band);
    for (std::size_t j = 0; j < band; ++j)
        for (std::size_t k = 0; k <= deg && k < q.size(); ++k) left[j] += q.coeffs[k] * S.coeffs[j + k];
    // right: coefficients of q(conj ζ) s 1_E, built on the grid
    const auto& ind = m.grid->indicator();
    std::vector<cplx> x(n);
    for (std::size_t j = 0; j < n; ++j) {
        const cplx zb = std::polar(1.0, -two_pi * static_cast<double>(j) / static_cast<double>(n));
        x[j] = evaluate_polynomial(q, zb) * ind[j] * m.s[j];
    }
    const auto R = head(x, band);
    double worst = 0.0;
    for (std::size_t j = 0; j < band; ++j) worst = std::max(worst, std::abs(left[j] - R.coeffs[j]));
    const double scale = max_abs(S.coeffs);
    return scale > 0.0 ? worst / scale : worst;
}

double backshift_identity(const KMember& m, int k, std::size_t band) {
    if (k < 0) throw PreconditionError("backward shift power must be non-negative");
    std::vector<cplx> q(static_cast<std::size_t>(k) + 1);
    q.back() = 1.0;
    return backshift_polynomial(m, AnalyticSeries(std::move(q)), band);
}

OrthogonalityReport model_space_orthogonality(const KMember& m, int max_k) {
    if (m.family == Family::K) throw PreconditionError("orthogonality is checked for K1 and K2 members");
    const std::size_t n = m.s.size();
    if (max_k < 0 || static_cast<std::size_t>(max_k) >= n / 2) throw PreconditionError("max_k must be below the band");
    const auto& theta = m.grid->theta();

    // C_s = P_+ s on the grid
    auto c = dft(m.s);
    for (std::size_t j = n / 2; j < n; ++j) c[j] = 0.0;
    const double scale = [&] {
        double s2 = 0.0;
        for (std::size_t j = 0; j < n / 2; ++j) s2 += std::norm(c[j]);
        return std::sqrt(s2);
    }();
    const auto Cs = idft(c);

    OrthogonalityReport rep;
    rep.max_k = max_k;
    rep.scale = scale;
    // grid route: mean of θ ζ^k conj(C_s)
    std::vector<cplx> y(n);
    for (std::size_t j = 0; j < n; ++j) y[j] = std::conj(theta[j]) * Cs[j];
    // <θ z^k, C_s> = conj( coefficient k of conj(θ) C_s )
    const auto yc = dft(y);
    for (int k = 0; k <= max_k; ++k) rep.grid_residual = std::max(rep.grid_residual, std::abs(yc[static_cast<std::size_t>(k)]));

    // coefficient route: Σ_j θ̂_j conj(S_{j+k})
    const auto& th = m.grid->theta_series();
    const std::size_t nb = std::min(th.size() - 1, n / 2 - static_cast<std::size_t>(max_k) - 1);
    for (int k = 0; k <= max_k; ++k) {
        cplx acc{};
        for (std::size_t j = 0; j <= nb; ++j) acc += th.coeffs[j] * std::conj(c[j + static_cast<std::size_t>(k)]);
        rep.coefficient_residual = std::max(rep.coefficient_residual, std::abs(acc));
    }
    rep.relative = scale > 0.0 ? rep.grid_residual / scale : rep.grid_residual;

    const double dt = two_pi / static_cast<double>(n);
    const double peak = max_abs(m.s);
    for (const auto& a : m.grid->ingredients().theta->singular.atoms) {
        // an atom only matters where s does not vanish next to it
        const auto j = static_cast<long>(std::llround(wrap_angle(a.angle) / dt));
        double local = 0.0;
        for (long d = -4; d <= 4; ++d) {
            const auto i = static_cast<std::size_t>(((j + d) % static_cast<long>(n) + static_cast<long>(n)) % static_cast<long>(n));
            local = std::max(local, std::abs(m.s[i]));
        }
        if (peak > 0.0 && local > 1e-12 * peak) rep.atom_cell_estimate += std::sqrt(2.0 * a.mass * dt / pi) * local;
    }
    return rep;
}

SplitResult split_transform(const KMember& m, const TransformOptions& options) {
    if (m.family != Family::K2) throw PreconditionError("split_transform is defined for family K2");
    const std::size_t band = std::max(options.band, options.fit_hi + 1);
    if (band > m.s.size() / 2) throw ResolutionError("band too large for the grid");
    SplitResult r;
    r.u1 = cauchy_coefficients(m, Region::complement, band);
    r.u2 = cauchy_coefficients(m, Region::E, band);
    const auto full = cauchy_coefficients(m, Region::circle, band);
    double worst = 0.0;
    for (std::size_t j = 0; j < band; ++j) worst = std::max(worst, std::abs(r.u1.coeffs[j] + r.u2.coeffs[j] - full.coeffs[j]));
    const double scale = max_abs(full.coeffs);
    r.additivity = scale > 0.0 ? worst / scale : worst;
    r.u1_decay = fit_decay(r.u1, options.fit_lo, options.fit_hi);
    return r;
}

}  // namespace bcct
