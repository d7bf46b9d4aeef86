#include "bcct/factors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "bcct/errors.hpp"

namespace bcct {

namespace {

constexpr int max_order = 8;

// signed angular difference in (-π, π]
double angle_diff(double t, double c) {
    double d = std::remainder(t - c, two_pi);
    if (d <= -pi) d += two_pi;
    return d;
}

bool on_circle(cplx z) { return std::abs(z) >= 1.0 - 1e-14; }

}  // namespace

double bump_profile(double y) {
    const double q = 1.0 - y * y;
    if (q <= 0.0) return 0.0;
    return std::exp(1.0 - 1.0 / q);
}

double bump_profile_integral() {
    static const double value = [] {
        boost::math::quadrature::tanh_sinh<double> ts;
        return ts.integrate([](double y) { return bump_profile(y); }, -1.0, 1.0);
    }();
    return value;
}

int BoundaryWeight::component_index(double t) const {
    if (support.gap_index(t) >= 0) return -1;
    for (std::size_t i = 0; i < components.size(); ++i)
        if (components[i].contains_closed(t)) return static_cast<int>(i);
    return -1;
}

double BoundaryWeight::log_value(double t) const {
    const int i = component_index(t);
    if (i < 0) return -std::numeric_limits<double>::infinity();
    double v = std::log(levels[static_cast<std::size_t>(i)]);
    for (const auto& b : bumps) v += b.amplitude * bump_profile(angle_diff(t, b.center) / b.half_width);
    return v;
}

double BoundaryWeight::value(double t) const {
    const double l = log_value(t);
    return std::isfinite(l) ? std::exp(l) : 0.0;
}

double BoundaryWeight::integral() const {
    double total = 0.0;
    for (std::size_t i = 0; i < components.size(); ++i) {
        const Arc& c = components[i];
        const double level = levels[i];
        total += level * c.length;
        for (const auto& b : bumps) {
            if (!c.contains_closed(b.center)) continue;
            auto f = [&](double y) {
                return level * (std::exp(b.amplitude * bump_profile(y)) - 1.0);
            };
            const double I = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, -1.0, 1.0, 15, 1e-14);
            total += I * b.half_width / two_pi;
        }
    }
    return total;
}

std::vector<double> BoundaryWeight::samples(int log2_size) const {
    const std::size_t n = std::size_t{1} << log2_size;
    std::vector<double> out(n);
    for (std::size_t m = 0; m < n; ++m) out[m] = value(two_pi * static_cast<double>(m) / static_cast<double>(n));
    return out;
}

BoundaryWeight make_weight(const BeurlingCarlesonSet& E, std::vector<double> levels, std::vector<Bump> bumps) {
    BoundaryWeight w;
    w.support = E;
    w.components = E.components();
    if (levels.empty()) throw PreconditionError("weight needs at least one level");
    if (levels.size() == 1) levels.assign(w.components.size(), levels.front());
    if (levels.size() != w.components.size())
        throw PreconditionError("one level per component of E required");
    for (double c : levels)
        if (!(c > 0.0) || !std::isfinite(c)) throw WeightNotLogIntegrable("weight levels must be positive and finite");
    w.levels = std::move(levels);

    double li = 0.0;
    for (std::size_t i = 0; i < w.components.size(); ++i) li += w.components[i].length * std::log(w.levels[i]);
    for (const auto& b : bumps) {
        if (!(b.half_width > 0.0) || !std::isfinite(b.amplitude))
            throw PreconditionError("bump needs positive half-width and finite amplitude");
        bool inside = false;
        for (const auto& c : w.components) {
            if (!c.contains_closed(b.center)) continue;
            const double u = c.offset(b.center);
            if (u - b.half_width >= -angle_slack && u + b.half_width <= c.span() + angle_slack) inside = true;
        }
        if (!inside) throw PreconditionError("bump support must lie in one component of E");
        li += b.amplitude * b.half_width / two_pi * bump_profile_integral();
    }
    w.bumps = std::move(bumps);
    w.log_integral = li;
    if (!(li >= log_integral_floor)) throw WeightNotLogIntegrable("log-integral of w below the floor");
    return w;
}

BoundaryWeight multiply(const BoundaryWeight& a, const BoundaryWeight& b) {
    if (a.components.size() != b.components.size()) throw IngredientMismatch("weights live on different sets");
    for (std::size_t i = 0; i < a.components.size(); ++i)
        if (std::abs(a.components[i].start - b.components[i].start) > angle_slack ||
            std::abs(a.components[i].end - b.components[i].end) > angle_slack)
            throw IngredientMismatch("weights live on different sets");
    std::vector<double> levels(a.levels.size());
    for (std::size_t i = 0; i < levels.size(); ++i) levels[i] = a.levels[i] * b.levels[i];
    auto bumps = a.bumps;
    bumps.insert(bumps.end(), b.bumps.begin(), b.bumps.end());
    if (levels.empty()) levels.push_back(1.0);
    return make_weight(a.support, std::move(levels), std::move(bumps));
}

OuterFunction::OuterFunction(BoundaryWeight w, int bump_log2) : w_(std::move(w)) {
    if (w_.bumps.empty()) return;
    const std::size_t n = std::size_t{1} << bump_log2;
    for (const auto& b : w_.bumps)
        if (b.half_width * static_cast<double>(n) / two_pi < 64.0)
            throw ResolutionError("bump narrower than 64 grid cells");
    std::vector<cplx> u(n);
    for (std::size_t m = 0; m < n; ++m) {
        const double t = two_pi * static_cast<double>(m) / static_cast<double>(n);
        double v = 0.0;
        for (const auto& b : w_.bumps) v += b.amplitude * bump_profile(angle_diff(t, b.center) / b.half_width);
        u[m] = v;
    }
    auto c = dft(u);
    c.resize(n / 2);
    double peak = 0.0;
    for (const auto& x : c) peak = std::max(peak, std::abs(x));
    std::size_t keep = c.size();
    while (keep > 1 && std::abs(c[keep - 1]) < 1e-17 * peak) --keep;
    c.resize(keep);
    bump_coef_ = std::move(c);
}

cplx OuterFunction::level_part(cplx z) const {
    cplx acc{};
    for (std::size_t i = 0; i < w_.components.size(); ++i) {
        const double lc = std::log(w_.levels[i]);
        if (lc == 0.0) continue;
        const Arc& A = w_.components[i];
        if (A.span() >= two_pi - angle_slack) {
            acc += lc;
            continue;
        }
        const cplx ea = std::polar(1.0, A.start), eb = std::polar(1.0, A.end);
        double darg = std::arg((eb - z) / (ea - z));
        if (darg < 0.0) darg += two_pi;
        const cplx F = -A.length - cplx{0.0, 1.0 / pi} * (std::log(std::abs(eb - z)) - std::log(std::abs(ea - z))) +
                       darg / pi;
        acc += lc * F;
    }
    return acc;
}

cplx OuterFunction::level_part_boundary(double t) const {
    cplx acc{};
    for (std::size_t i = 0; i < w_.components.size(); ++i) {
        const double lc = std::log(w_.levels[i]);
        if (lc == 0.0) continue;
        const Arc& A = w_.components[i];
        if (A.span() >= two_pi - angle_slack) {
            acc += lc;
            continue;
        }
        const double da = angle_diff(t, A.start), db = angle_diff(t, A.end);
        double re, im = 0.0;
        const bool at_a = std::abs(da) < 1e-15, at_b = std::abs(db) < 1e-15;
        if (at_a || at_b) {
            re = 0.5;  // endpoint convention: half the jump, singular log dropped
            if (!at_b) im -= std::log(std::abs(2.0 * std::sin(0.5 * db))) / pi;
            if (!at_a) im += std::log(std::abs(2.0 * std::sin(0.5 * da))) / pi;
        } else {
            re = A.contains(t) ? 1.0 : 0.0;
            im = -(std::log(std::abs(2.0 * std::sin(0.5 * db))) - std::log(std::abs(2.0 * std::sin(0.5 * da)))) / pi;
        }
        acc += lc * cplx{re, im};
    }
    return acc;
}

cplx OuterFunction::log_value(cplx z) const {
    const double r = std::abs(z);
    if (r > 1.0 + 1e-12) throw OutsideDomain("outer function needs |z| <= 1");
    cplx v;
    if (on_circle(z)) {
        v = level_part_boundary(std::arg(z));
        z /= r;
    } else {
        v = level_part(z);
    }
    if (!bump_coef_.empty()) {
        cplx s{};
        for (std::size_t n = bump_coef_.size(); n-- > 1;) s = (s + 2.0 * bump_coef_[n]) * z;
        v += s + bump_coef_[0];
    }
    return v;
}

std::vector<cplx> OuterFunction::boundary(int log2_size) const {
    const std::size_t n = std::size_t{1} << log2_size;
    std::vector<cplx> out(n);
    for (std::size_t m = 0; m < n; ++m) out[m] = level_part_boundary(two_pi * static_cast<double>(m) / static_cast<double>(n));
    if (!w_.bumps.empty()) {
        std::vector<double> u(n);
        for (std::size_t m = 0; m < n; ++m) {
            const double t = two_pi * static_cast<double>(m) / static_cast<double>(n);
            for (const auto& b : w_.bumps) u[m] += b.amplitude * bump_profile(angle_diff(t, b.center) / b.half_width);
        }
        const auto ut = conjugate_function(u);
        for (std::size_t m = 0; m < n; ++m) out[m] += cplx{u[m], ut[m]};
    }
    for (auto& x : out) x = std::exp(x);
    return out;
}

AnalyticSeries OuterFunction::log_series(std::size_t degree) const {
    std::vector<cplx> L(degree + 1);
    for (std::size_t i = 0; i < w_.components.size(); ++i) {
        const double lc = std::log(w_.levels[i]);
        if (lc == 0.0) continue;
        const Arc& A = w_.components[i];
        L[0] += lc * A.length;
        if (A.span() >= two_pi - angle_slack) continue;
        for (std::size_t n = 1; n <= degree; ++n) {
            const double dn = static_cast<double>(n);
            const cplx mom = (std::polar(1.0, -dn * A.start) - std::polar(1.0, -dn * A.end)) / cplx{0.0, two_pi * dn};
            L[n] += 2.0 * lc * mom;
        }
    }
    for (std::size_t n = 0; n < bump_coef_.size() && n <= degree; ++n) L[n] += (n == 0 ? 1.0 : 2.0) * bump_coef_[n];
    return AnalyticSeries(std::move(L));
}

AnalyticSeries OuterFunction::series(std::size_t degree) const { return exp_series(log_series(degree), degree); }

std::vector<cplx> OuterFunction::log_derivatives(double t, int order) const {
    if (order < 0 || order > max_order) throw PreconditionError("derivative order out of range");
    std::vector<cplx> out(static_cast<std::size_t>(order) + 1);
    out[0] = log_value(std::polar(1.0, t));
    const cplx mi{0.0, -1.0 / pi};
    for (std::size_t i = 0; i < w_.components.size(); ++i) {
        const double lc = std::log(w_.levels[i]);
        if (lc == 0.0 || order == 0) continue;
        const Arc& A = w_.components[i];
        if (A.span() >= two_pi - angle_slack) continue;
        // d^k/dt^k ln|2 sin((t - x)/2)| = (1/2) d^{k-1}/dt^{k-1} cot((t - x)/2)
        const auto cb = cot_half_derivatives(t, A.end, order - 1);
        const auto ca = cot_half_derivatives(t, A.start, order - 1);
        for (int k = 1; k <= order; ++k)
            out[static_cast<std::size_t>(k)] += lc * mi * 0.5 * (cb[static_cast<std::size_t>(k - 1)] - ca[static_cast<std::size_t>(k - 1)]);
    }
    for (std::size_t n = 1; n < bump_coef_.size(); ++n) {
        const cplx e = 2.0 * bump_coef_[n] * std::polar(1.0, static_cast<double>(n) * t);
        cplx f = 1.0;
        for (int k = 1; k <= order; ++k) {
            f *= cplx{0.0, static_cast<double>(n)};
            out[static_cast<std::size_t>(k)] += f * e;
        }
    }
    return out;
}

OuterBoundary outer_from_weight(const BoundaryWeight& w, int log2_size, std::size_t degree) {
    OuterFunction W(w);
    return {W.boundary(log2_size), W.series(degree)};
}

double SingularMeasure::total_mass() const {
    double s = 0.0;
    for (const auto& a : atoms) s += a.mass;
    return s;
}

SingularMeasure make_measure(std::vector<Atom> atoms, std::optional<BeurlingCarlesonSet> carrier_C) {
    for (auto& a : atoms) {
        if (!(a.mass > 0.0) || !std::isfinite(a.mass)) throw PreconditionError("atom masses must be positive and finite");
        a.angle = wrap_angle(a.angle);
        if (a.part == MeasurePart::C && carrier_C && !carrier_C->contains(a.angle))
            throw PreconditionError("C-part atom outside its carrier");
    }
    return {std::move(atoms), std::move(carrier_C)};
}

cplx inner_singular_eval(const SingularMeasure& nu, cplx z) {
    if (!(std::abs(z) < 1.0)) throw OutsideDomain("singular inner function needs |z| < 1");
    cplx acc{};
    for (const auto& a : nu.atoms) {
        const cplx zeta = std::polar(1.0, a.angle);
        acc -= a.mass * (zeta + z) / (zeta - z);
    }
    return std::exp(acc);
}

cplx InnerFunction::value(cplx z) const {
    if (std::abs(z) > 1.0 + 1e-12) throw OutsideDomain("inner function needs |z| <= 1");
    cplx v = 1.0;
    for (const auto& a : zeros) v *= (z - a) / (1.0 - std::conj(a) * z);
    cplx acc{};
    for (const auto& a : singular.atoms) {
        const cplx zeta = std::polar(1.0, a.angle);
        if (std::abs(zeta - z) < 1e-15) return 0.0;
        acc -= a.mass * (zeta + z) / (zeta - z);
    }
    return v * std::exp(acc);
}

std::vector<cplx> InnerFunction::boundary(int log2_size) const {
    const std::size_t n = std::size_t{1} << log2_size;
    std::vector<cplx> out(n);
    for (std::size_t m = 0; m < n; ++m) out[m] = value(std::polar(1.0, two_pi * static_cast<double>(m) / static_cast<double>(n)));
    return out;
}

AnalyticSeries InnerFunction::series(std::size_t degree) const {
    std::vector<cplx> Q(degree + 1);
    for (const auto& a : singular.atoms) {
        Q[0] -= a.mass;
        for (std::size_t n = 1; n <= degree; ++n) Q[n] -= 2.0 * a.mass * std::polar(1.0, -static_cast<double>(n) * a.angle);
    }
    auto out = exp_series(AnalyticSeries(std::move(Q)), degree);
    for (const auto& a : zeros) {
        // (z - a)/(1 - ā z) = -a + Σ_{n>=1} ā^{n-1}(1 - |a|²) z^n
        std::vector<cplx> f(degree + 1);
        f[0] = -a;
        cplx p = 1.0;
        for (std::size_t n = 1; n <= degree; ++n) {
            f[n] = p * (1.0 - std::norm(a));
            p *= std::conj(a);
        }
        out = multiply(out, AnalyticSeries(std::move(f)), degree);
    }
    return out;
}

std::vector<cplx> InnerFunction::log_derivatives(double t, int order) const {
    if (order < 0 || order > max_order) throw PreconditionError("derivative order out of range");
    const auto n = static_cast<std::size_t>(order) + 1;
    std::vector<cplx> out(n);
    const cplx z = std::polar(1.0, t);
    for (const auto& a : singular.atoms) {
        // log S = -i Σ m cot((t - a)/2) on the circle
        const auto c = cot_half_derivatives(t, a.angle, order);
        for (std::size_t k = 0; k < n; ++k) out[k] += cplx{0.0, -a.mass * c[k]};
    }
    for (const auto& a : zeros) {
        std::vector<cplx> dz(n);
        dz[0] = std::log((z - a) / (1.0 - std::conj(a) * z));
        double fact = 1.0;  // (k-1)!
        for (std::size_t k = 1; k < n; ++k) {
            const double sign = (k % 2 == 1) ? 1.0 : -1.0;
            dz[k] = sign * fact / std::pow(z - a, static_cast<int>(k)) +
                    fact * std::pow(std::conj(a) / (1.0 - std::conj(a) * z), static_cast<int>(k));
            fact *= static_cast<double>(k);
        }
        const auto dt = circle_derivatives(dz, z);
        for (std::size_t k = 0; k < n; ++k) out[k] += dt[k];
    }
    return out;
}

namespace {

struct Probe {
    double t;
    double d;  // normalized distance
    int level;
};

DerivativeReport derivative_report(const std::vector<Probe>& probes, const std::vector<int>& orders, int levels,
                                   const std::function<std::vector<cplx>(double, int)>& log_derivs,
                                   std::string method) {
    DerivativeReport rep;
    rep.method = std::move(method);
    int top = 0;
    for (int m : orders) {
        if (m < 0 || m > max_order) throw PreconditionError("derivative order out of range");
        top = std::max(top, m);
    }
    std::vector<std::vector<double>> per(orders.size(), std::vector<double>(static_cast<std::size_t>(levels), 0.0));
    std::vector<double> dist(static_cast<std::size_t>(levels), 0.0);
    for (const auto& p : probes) {
        const auto phi = log_derivs(p.t, top);
        const auto R = exp_derivative_ratios(phi);
        const double mod = std::exp(phi[0].real());
        const auto L = static_cast<std::size_t>(p.level);
        dist[L] = std::max(dist[L], p.d);
        for (std::size_t i = 0; i < orders.size(); ++i) {
            const int m = orders[i];
            const double v = mod * std::abs(R[static_cast<std::size_t>(m)]) * std::pow(p.d, 2 * m);
            per[i][L] = std::max(per[i][L], v);
        }
    }
    rep.all_stable = true;
    for (std::size_t i = 0; i < orders.size(); ++i) {
        DerivativeBound b;
        b.m = orders[i];
        double cum = 0.0;
        for (int L = 0; L < levels; ++L) {
            cum = std::max(cum, per[i][static_cast<std::size_t>(L)]);
            b.levels.push_back({dist[static_cast<std::size_t>(L)], per[i][static_cast<std::size_t>(L)], cum});
        }
        b.constant = cum;
        if (probes.empty() || levels < 4) {
            b.stability = 1.0;
        } else {
            const double ref = b.levels[static_cast<std::size_t>(levels - 4)].cumulative;
            b.stability = ref > 0.0 ? cum / ref : (cum > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
        }
        b.stable = b.stability <= 4.0;
        rep.all_stable = rep.all_stable && b.stable;
        rep.bounds.push_back(std::move(b));
    }
    return rep;
}

}  // namespace

DerivativeReport certify_W_derivatives(const OuterFunction& W, const std::vector<int>& orders, int levels) {
    if (levels < 1) throw PreconditionError("need at least one level");
    std::vector<Probe> probes;
    for (const auto& gap : W.weight().support.gaps) {
        for (int j = 1; j <= levels; ++j) {
            const double d = 0.5 * gap.length * std::ldexp(1.0, -j);
            if (two_pi * d < 1e-13)
                throw ResolutionError("dyadic level below double resolution of the angle");
            probes.push_back({gap.start + two_pi * d, d, j - 1});
            probes.push_back({gap.end - two_pi * d, d, j - 1});
        }
    }
    return derivative_report(probes, orders, levels,
                             [&](double t, int k) { return W.log_derivatives(t, k); },
                             "exact log-derivatives of the closed-form outer function, 2 probes per gap per level");
}

DerivativeReport certify_theta_derivatives(const InnerFunction& theta, const BeurlingCarlesonSet& F,
                                           const std::vector<int>& orders, int levels) {
    if (levels < 1) throw PreconditionError("need at least one level");
    std::vector<double> targets;
    for (const auto& a : theta.singular.atoms) {
        if (!F.contains(a.angle)) throw PreconditionError("atom outside the carrier F");
        targets.push_back(a.angle);
    }
    for (const auto& z : theta.zeros)
        if (std::abs(z) >= 1.0) throw PreconditionError("Blaschke zeros must lie in the open disk");
    std::vector<Probe> probes;
    for (double a : targets) {
        for (int j = 1; j <= levels; ++j) {
            const double d = std::ldexp(1.0, -j) / 8.0;
            for (double s : {-1.0, 1.0}) {
                const double t = a + s * two_pi * d;
                double dn = d;
                for (double b : targets) dn = std::min(dn, std::abs(angle_diff(t, b)) / two_pi);
                probes.push_back({t, dn, j - 1});
            }
        }
    }
    return derivative_report(probes, orders, levels,
                             [&](double t, int k) { return theta.log_derivatives(t, k); },
                             "exact log-derivatives of the inner function, 2 probes per atom per level");
}

}  // namespace bcct
