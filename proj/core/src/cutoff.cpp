#include "bcct/cutoff.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "bcct/boundary_calculus.hpp"
#include "bcct/errors.hpp"

namespace bcct {

namespace {

constexpr int max_order = 8;

}  // namespace

CutoffFunction::CutoffFunction(const BeurlingCarlesonSet& E, const CutoffOptions& options) {
    if (options.k_max < 0 || options.horizon < options.k_max)
        throw PreconditionError("need 0 <= k_max <= horizon");
    auto all = whitney_decompose(E, options.horizon).arcs;
    all = assign_lambdas(std::move(all), options.rule);
    for (auto& a : all) {
        if (std::abs(a.rank) <= options.k_max) arcs_.push_back(a);
        else omitted_.push_back(a);
    }
    set_ = E;
    has_set_ = true;
    k_max_ = options.k_max;
    build_poles();
}

CutoffFunction CutoffFunction::from_arcs(std::vector<WhitneyArc> retained, std::vector<WhitneyArc> omitted) {
    CutoffFunction c;
    c.arcs_ = std::move(retained);
    c.omitted_ = std::move(omitted);
    for (const auto& a : c.arcs_) c.k_max_ = std::max(c.k_max_, std::abs(a.rank));
    c.build_poles();
    return c;
}

void CutoffFunction::build_poles() {
    pole_.clear();
    coef_.clear();
    for (const auto& a : arcs_) {
        if (a.arc.length >= 1.0) throw DegenerateArc("Whitney arc with |B| >= 1");
        pole_.push_back(a.radius * a.midpoint);
        coef_.push_back(a.lambda * a.weight() * a.midpoint);
    }
    long double tb = 0.0L, tm = 0.0L;
    for (const auto& a : omitted_) {
        tm += static_cast<long double>(a.lambda) * a.weight();
        tb += static_cast<long double>(a.lambda) * a.weight() / (a.radius - 1.0);
    }
    tail_bound_ = static_cast<double>(tb);
    tail_mass_ = static_cast<double>(tm);
}

double CutoffFunction::tail_bound_at(cplx z) const {
    double s = 0.0;
    for (const auto& a : omitted_) s += a.lambda * a.weight() / std::abs(a.radius * a.midpoint - z);
    return s;
}

cplx CutoffFunction::h(cplx z) const {
    cplx acc{};
    for (std::size_t j = 0; j < pole_.size(); ++j) acc += coef_[j] / (pole_[j] - z);
    return -acc;
}

cplx CutoffFunction::g(cplx z) const { return std::exp(h(z)); }

std::vector<cplx> CutoffFunction::phase_derivatives(double t, int order) const {
    if (order < 0 || order > max_order) throw PreconditionError("derivative order out of range");
    const cplx z = std::polar(1.0, t);
    // h^{(k)}(z) = -k! Σ a_j / (p_j - z)^{k+1}
    std::array<cplx, max_order + 1> hk{};
    for (std::size_t j = 0; j < pole_.size(); ++j) {
        const cplx inv = 1.0 / (pole_[j] - z);
        cplx p = coef_[j] * inv;
        double fact = 1.0;
        for (int k = 0; k <= order; ++k) {
            hk[k] -= fact * p;
            p *= inv;
            fact *= (k + 1);
        }
    }
    std::vector<cplx> dz(hk.begin(), hk.begin() + order + 1);
    return circle_derivatives(dz, z);
}


std::vector<cplx> CutoffFunction::log_derivative_ratios(double t, int order) const {
    return exp_derivative_ratios(phase_derivatives(t, order));
}

std::vector<cplx> CutoffFunction::boundary_g(int log2_size) const {
    const std::size_t n = std::size_t{1} << log2_size;
    std::vector<cplx> out(n);
    for (std::size_t m = 0; m < n; ++m) {
        const double t = two_pi * (static_cast<double>(m) / static_cast<double>(n));
        out[m] = g(std::polar(1.0, t));
    }
    return out;
}

cplx eval_h(const CutoffFunction& c, cplx z) {
    if (std::abs(z) > 1.0 + 1e-12) throw OutsideDomain("eval_h needs |z| <= 1");
    return c.h(z);
}

cplx eval_g(const CutoffFunction& c, cplx z, GExtension ext) {
    if (std::abs(z) > 1.0 + 1e-12) throw OutsideDomain("eval_g needs |z| <= 1");
    if (ext == GExtension::zero_on_set && c.has_set() && std::abs(z) >= 1.0 - 1e-15 &&
        c.set().contains(std::arg(z)))
        return 0.0;
    return c.g(z);
}

DecayReport certify_decay(const CutoffFunction& c, const std::vector<int>& orders_N,
                          const std::vector<int>& orders_m, int levels, int samples_per_arc) {
    if (!c.has_set()) throw PreconditionError("certify_decay needs the cutoff's set");
    if (levels < 2 || c.k_max() < levels)
        throw ResolutionError("k_max must be at least the number of certified levels");
    if (samples_per_arc < 2) throw PreconditionError("need at least two samples per arc");
    int max_m = 0;
    for (int m : orders_m) {
        if (m < 0 || m > max_order) throw PreconditionError("derivative order out of range");
        max_m = std::max(max_m, m);
    }

    DecayReport rep;
    rep.samples_per_arc = samples_per_arc;
    rep.method = "exact pole-expansion derivatives sampled on Whitney arcs";
    for (int q = c.k_max() - levels; q < c.k_max(); ++q) rep.ranks.push_back(q);

    // log of max over samples, per (N, m) and level
    const std::size_t nN = orders_N.size(), nm = orders_m.size();
    std::vector<std::vector<double>> best(nN * nm, std::vector<double>(rep.ranks.size(),
                                                   -std::numeric_limits<double>::infinity()));
    for (std::size_t L = 0; L < rep.ranks.size(); ++L) {
        const int q = rep.ranks[L];
        double longest = 0.0;
        for (const auto& a : c.whitney()) {
            if (std::abs(a.rank) != q) continue;
            longest = std::max(longest, a.arc.length);
            for (int s = 0; s < samples_per_arc; ++s) {
                const double t = a.arc.start + a.arc.span() * s / (samples_per_arc - 1);
                const double d = dist_to_set(t, c.set());
                if (!(d > 0.0)) continue;
                const auto phi = c.phase_derivatives(t, 0);
                const auto R = c.log_derivative_ratios(t, max_m);
                for (std::size_t i = 0; i < nN; ++i)
                    for (std::size_t k = 0; k < nm; ++k) {
                        const double v = phi[0].real() + std::log(std::abs(R[orders_m[k]])) -
                                         orders_N[i] * std::log(d);
                        auto& slot = best[i * nm + k][L];
                        slot = std::max(slot, v);
                    }
            }
        }
        rep.distance.push_back(longest);
    }

    rep.all_monotone = true;
    for (std::size_t i = 0; i < nN; ++i)
        for (std::size_t k = 0; k < nm; ++k) {
            DecayEntry e;
            e.N = orders_N[i];
            e.m = orders_m[k];
            const auto& row = best[i * nm + k];
            e.monotone = true;
            for (std::size_t L = 0; L < row.size(); ++L) {
                e.log10_rho.push_back(row[L] / std::log(10.0));
                if (L > 0 && !(row[L] < row[L - 1])) e.monotone = false;
            }
            rep.all_monotone = rep.all_monotone && e.monotone;
            rep.entries.push_back(std::move(e));
        }
    return rep;
}

std::vector<cplx> windowed_spectral_derivative(const CutoffFunction& c, int gap, int m,
                                               int log2_size, int finest_rank) {
    if (!c.has_set()) throw PreconditionError("windowed derivative needs the cutoff's set");
    const auto& E = c.set();
    if (gap < 0 || static_cast<std::size_t>(gap) >= E.gaps.size()) throw PreconditionError("bad gap index");
    const Arc& A = E.gaps[static_cast<std::size_t>(gap)];
    const std::size_t n = std::size_t{1} << log2_size;
    const double finest = A.length / (3.0 * std::ldexp(1.0, finest_rank));
    if (finest * static_cast<double>(n) < 8.0)
        throw ResolutionError("grid gives fewer than 8 points on the finest requested Whitney arc");

    // taper width: the residual segment left by the truncation
    const double ramp = A.length / (3.0 * std::ldexp(1.0, c.k_max())) * two_pi;
    std::vector<cplx> x(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double t = two_pi * (static_cast<double>(j) / static_cast<double>(n));
        if (!A.contains(t)) continue;
        const double u = A.offset(t);
        const double edge = std::min(u, A.span() - u);
        const double w = edge >= ramp ? 1.0 : 0.5 - 0.5 * std::cos(pi * edge / ramp);
        x[j] = w * c.g(std::polar(1.0, t));
    }
    auto coef = dft(x);
    const auto N = static_cast<long>(n);
    for (long k = 0; k < N; ++k) {
        const long f = k < N / 2 ? k : k - N;
        if (k == N / 2) {
            coef[static_cast<std::size_t>(k)] = 0.0;
            continue;
        }
        coef[static_cast<std::size_t>(k)] *= std::pow(cplx{0.0, static_cast<double>(f)}, m);
    }
    return idft(coef);
}

ExponentFit fit_cutoff_exponent(const CutoffFunction& c) {
    ExponentFit fit;
    std::vector<double> per_rank(static_cast<std::size_t>(c.k_max()) + 1, std::numeric_limits<double>::infinity());
    for (const auto& a : c.whitney()) {
        const double lg = c.h(a.midpoint).real();  // log|g(b_j)|
        const double e = lg / (a.lambda * std::log(a.arc.length));
        auto& slot = per_rank[static_cast<std::size_t>(std::abs(a.rank))];
        slot = std::min(slot, e);
    }
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::size_t q = 0; q < per_rank.size(); ++q) {
        if (!std::isfinite(per_rank[q])) continue;
        fit.ranks.push_back(static_cast<int>(q));
        fit.exponent.push_back(per_rank[q]);
        lo = std::min(lo, per_rank[q]);
        hi = std::max(hi, per_rank[q]);
    }
    fit.c = lo;
    fit.spread = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
    return fit;
}

}  // namespace bcct
