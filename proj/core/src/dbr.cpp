#include "bcct/dbr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "bcct/errors.hpp"

namespace bcct {

namespace {

bool weight_at_most_one(const BoundaryWeight& w) {
    for (double c : w.levels)
        if (c > 1.0 + 1e-15) return false;
    for (const auto& b : w.bumps)
        if (b.amplitude > 0.0) return false;
    return true;
}

double near_endpoint(double t, const BeurlingCarlesonSet& E) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& g : E.gaps)
        for (double e : {g.start, g.end}) d = std::min(d, std::abs(std::remainder(t - e, two_pi)));
    return d;
}

}  // namespace

SymbolB::SymbolB(InnerFunction theta, BoundaryWeight w) : theta_(std::move(theta)) {
    if (!weight_at_most_one(w)) throw PreconditionError("symbol needs w <= 1 so that ‖b‖∞ <= 1");
    u_ = std::make_shared<const OuterFunction>(std::move(w));
}

std::vector<cplx> SymbolB::boundary(int log2_size) const {
    auto out = u_->boundary(log2_size);
    if (!theta_.trivial()) {
        const auto th = theta_.boundary(log2_size);
        for (std::size_t m = 0; m < out.size(); ++m) out[m] *= th[m];
    }
    return out;
}

std::vector<double> SymbolB::delta(const std::vector<cplx>& b) {
    std::vector<double> d(b.size());
    for (std::size_t m = 0; m < b.size(); ++m) {
        const double q = 1.0 - std::norm(b[m]);
        d[m] = q < 1e-15 ? 0.0 : std::sqrt(q);
    }
    return d;
}

SymbolCertificate certify_symbol(const SymbolB& b, int log2_size, double floor) {
    const auto bs = b.boundary(log2_size);
    const auto D = SymbolB::delta(bs);
    SymbolCertificate c;
    c.sup_norm = sup_norm(bs);
    long double li = 0.0L;
    bool minus_inf = false;
    for (std::size_t m = 0; m < bs.size(); ++m) {
        if (D[m] > 0.0) {
            c.pythagoras_error = std::max(c.pythagoras_error, std::abs(D[m] * D[m] + std::norm(bs[m]) - 1.0));
            li += std::log(D[m]);
        } else {
            minus_inf = true;
        }
    }
    const double value = minus_inf ? -std::numeric_limits<double>::infinity()
                                   : static_cast<double>(li / static_cast<long double>(bs.size()));
    c.floor_hit = value <= floor;
    c.log_delta_integral = std::max(value, floor);
    return c;
}

HbKernel HbKernel::of(const SymbolB& b) {
    auto shared = std::make_shared<const SymbolB>(b);
    return HbKernel([shared](cplx z) { return shared->value(z); });
}

cplx HbKernel::operator()(cplx lambda, cplx z) const {
    return (1.0 - std::conj(b_(lambda)) * b_(z)) / (1.0 - std::conj(lambda) * z);
}

cplx kernel_eval(const HbKernel& k, cplx lambda, cplx z) {
    if (!(std::abs(lambda) < 1.0) || !(std::abs(z) < 1.0)) throw OutsideDomain("kernel needs |λ|, |z| < 1");
    return k(lambda, z);
}

std::vector<cplx> psd_lattice(int count, double r_max) {
    const double golden = pi * (3.0 - std::sqrt(5.0));
    std::vector<cplx> out;
    for (int i = 0; i < count; ++i) out.push_back(std::polar(r_max * std::sqrt((i + 0.5) / count), golden * i));
    return out;
}

BoundaryWeight shrink_weight(const BoundaryWeight& w, double delta) {
    if (!(delta >= 0.0)) throw PreconditionError("shrink amount must be non-negative");
    if (w.support.is_full()) throw PreconditionError("E = T has no endpoints to shrink from");
    std::vector<Arc> gaps;
    for (const auto& g : w.support.gaps) gaps.push_back(Arc::from_endpoints(g.start - two_pi * delta, g.end + two_pi * delta));
    for (auto& g : gaps) {
        const double s = wrap_angle(g.start);
        g = Arc::from_endpoints(s, s + (g.end - g.start));
    }
    const auto En = validate_set(std::move(gaps));
    // components keep their order when every component survives
    if (En.components().size() != w.components.size()) throw PreconditionError("shrinking removed a component of E");
    std::vector<double> levels;
    for (const auto& c : En.components()) levels.push_back(w.levels[static_cast<std::size_t>(w.component_index(c.mid_angle()))]);
    return make_weight(En, std::move(levels), w.bumps);
}

SymbolB divisor_symbol(const SymbolB& b, double delta, const std::vector<std::size_t>& drop_atoms, bool drop_zeros) {
    InnerFunction th = b.theta();
    if (drop_zeros) th.zeros.clear();
    std::vector<Atom> kept;
    for (std::size_t i = 0; i < th.singular.atoms.size(); ++i)
        if (std::find(drop_atoms.begin(), drop_atoms.end(), i) == drop_atoms.end()) kept.push_back(th.singular.atoms[i]);
    th.singular.atoms = std::move(kept);
    return SymbolB(std::move(th), delta > 0.0 ? shrink_weight(b.weight(), delta) : b.weight());
}

double divisor_ratio(const SymbolB& b, const SymbolB& bn, int samples) {
    double worst = 0.0;
    for (const auto& z : psd_lattice(samples, 0.99)) {
        const cplx d = bn.value(z);
        worst = std::max(worst, std::abs(b.value(z)) / std::abs(d));
    }
    const double cell = two_pi / samples;
    for (int m = 0; m < samples; ++m) {
        const double t = cell * (m + 0.5);
        if (near_endpoint(t, b.E()) < 1e-9 || near_endpoint(t, bn.E()) < 1e-9) continue;
        bool near_atom = false;
        for (const auto& a : b.theta().singular.atoms)
            if (std::abs(std::remainder(t - a.angle, two_pi)) < 1e-3) near_atom = true;
        if (near_atom) continue;
        const cplx z = std::polar(1.0, t);
        worst = std::max(worst, std::abs(b.value(z)) / std::abs(bn.value(z)));
    }
    return worst;
}

PsdReport kernel_difference_gram(const HbKernel& kb, const HbKernel& kbn, const std::vector<cplx>& points) {
    const auto n = static_cast<Eigen::Index>(points.size());
    if (n == 0 || n > 64) throw PreconditionError("need 1..64 points");
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (std::abs(points[i] - points[j]) < 1e-12) throw PreconditionError("points must be distinct");
    Eigen::MatrixXcd G(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            const cplx li = points[static_cast<std::size_t>(i)], lj = points[static_cast<std::size_t>(j)];
            G(i, j) = kernel_eval(kb, li, lj) - kernel_eval(kbn, li, lj);
        }
    PsdReport r;
    r.points = static_cast<int>(n);
    r.hermitian_error = (G - G.adjoint()).cwiseAbs().maxCoeff();
    const Eigen::MatrixXcd H = 0.5 * (G + G.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H, Eigen::EigenvaluesOnly);
    r.min_eigenvalue = es.eigenvalues()(0);
    return r;
}

PsdReport kernel_difference_psd(const SymbolB& b, const SymbolB& bn, const std::vector<cplx>& points) {
    const double ratio = divisor_ratio(b, bn);
    if (ratio > 1.0 + 1e-8) throw NotADivisor("sampled |b / b_n| exceeds 1");
    auto r = kernel_difference_gram(HbKernel::of(b), HbKernel::of(bn), points);
    r.divisor_ratio = ratio;
    return r;
}

std::vector<double> convergence_proxy(const SymbolB& b, const std::vector<SymbolB>& bn, const std::vector<cplx>& points) {
    std::vector<double> out;
    for (const auto& s : bn) {
        double worst = 0.0;
        for (const auto& z : points) worst = std::max(worst, std::abs(s.value(z) - b.value(z)));
        out.push_back(worst);
    }
    return out;
}

JRelationReport j_relation_check(const SymbolB& b, const std::vector<cplx>& f, const std::vector<cplx>& g, int k_max,
                                 std::size_t band) {
    const std::size_t n = f.size();
    if (g.size() != n || n == 0 || (n & (n - 1)) != 0) throw LengthMismatch("f and g must share a power-of-two grid");
    if (band > n / 2 || static_cast<std::size_t>(k_max) >= n / 2) throw BandTooLarge("band too large for the grid");
    const int lg = static_cast<int>(std::lround(std::log2(static_cast<double>(n))));
    const auto bs = b.boundary(lg);
    const auto D = SymbolB::delta(bs);
    std::vector<cplx> x(n);
    for (std::size_t m = 0; m < n; ++m) x[m] = std::conj(bs[m]) * f[m] + D[m] * g[m];

    JRelationReport r;
    r.k_max = k_max;
    // direct sums of ∫ f conj(b ζ^k) + ∫ g Δ conj(ζ^k)
    std::vector<cplx> zeta(n);
    for (std::size_t m = 0; m < n; ++m) zeta[m] = std::polar(1.0, -two_pi * static_cast<double>(m) / static_cast<double>(n));
    for (int k = 0; k <= k_max; ++k) {
        long double re = 0.0L, im = 0.0L;
        for (std::size_t m = 0; m < n; ++m) {
            const cplx v = x[m] * zeta[(static_cast<std::size_t>(k) * m) % n];
            re += v.real();
            im += v.imag();
        }
        const cplx s{static_cast<double>(re / n), static_cast<double>(im / n)};
        r.pairing_residual = std::max(r.pairing_residual, std::abs(s));
    }
    const auto c = dft(x);
    double s2 = 0.0;
    for (std::size_t k = 0; k < band; ++k) s2 += std::norm(c[k]);
    r.projection_residual = std::sqrt(s2);
    return r;
}

std::pair<std::vector<cplx>, std::vector<cplx>> kernel_pair(const SymbolB& b, cplx lambda, int log2_size) {
    if (!(std::abs(lambda) < 1.0)) throw OutsideDomain("kernel pair needs |λ| < 1");
    const auto bs = b.boundary(log2_size);
    const auto D = SymbolB::delta(bs);
    const cplx bl = b.value(lambda);
    const std::size_t n = bs.size();
    std::vector<cplx> f(n), g(n);
    for (std::size_t m = 0; m < n; ++m) {
        const cplx z = std::polar(1.0, two_pi * static_cast<double>(m) / static_cast<double>(n));
        const cplx k = 1.0 / (1.0 - std::conj(lambda) * z);
        f[m] = (1.0 - std::conj(bl) * bs[m]) * k;
        g[m] = -std::conj(bl) * D[m] * k;
    }
    return {std::move(f), std::move(g)};
}

double l2w_functional_norm(const BoundaryWeight& w, const AnalyticSeries& v, int d) {
    const auto wf = weight_fourier(w, d);
    const int n = d + 1;
    Eigen::MatrixXcd G(n, n);
    // <z^k, z^j>_w = ∫ ζ^{k-j} w dm = ŵ_{j-k}
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) G(j, k) = wf[static_cast<std::size_t>(j - k + d)];
    Eigen::VectorXcd vv(n);
    for (int k = 0; k < n; ++k) vv(k) = v[static_cast<std::size_t>(k)];
    const Eigen::VectorXcd y = G.ldlt().solve(vv);
    return std::sqrt(std::max(0.0, vv.dot(y).real()));
}

PermanenceReport permanence_functional_check(std::shared_ptr<const FamilyGrid> grid, const PermanenceOptions& options,
                                             const WeightSequence* reference_alpha) {
    if (grid->family() != Family::K2) throw PreconditionError("permanence check runs on family K2");
    if (options.degrees.empty()) throw PreconditionError("need at least one degree");
    const auto& ing = grid->ingredients();
    const auto& E = grid->set();
    // q vanishes to the requested order at atoms lying on E
    AnalyticSeries q(std::vector<cplx>{1.0});
    for (const auto& a : ing.theta->singular.atoms) {
        if (!E.contains(a.angle)) continue;
        const cplx zeta = std::polar(1.0, a.angle);
        for (int i = 0; i < options.atom_vanishing; ++i)
            q = multiply(q, AnalyticSeries(std::vector<cplx>{-zeta, 1.0}), q.size());
    }
    const int top = *std::max_element(options.degrees.begin(), options.degrees.end());

    PermanenceReport rep;
    rep.degrees = options.degrees;
    TransformOptions topt;
    topt.band = options.band;
    std::vector<SplitResult> splits;
    for (int j = 0; j <= top; ++j) {
        std::vector<cplx> p(q.coeffs);
        p.insert(p.begin(), static_cast<std::size_t>(j), cplx{});
        const auto m = build_member(grid, AnalyticSeries(std::move(p)));
        splits.push_back(split_transform(m, topt));
        const auto o = model_space_orthogonality(m, options.orthogonality_k);
        rep.orthogonality = std::max(rep.orthogonality, o.grid_residual);
        rep.orthogonality_relative = std::max(rep.orthogonality_relative, o.relative);
    }

    if (reference_alpha) {
        rep.alpha = *reference_alpha;
    } else {
        for (const auto& s : splits) {
            const auto a = rapid_weight(s.u1, options.n_max);
            if (rep.alpha.alpha.empty()) rep.alpha = a;
            else
                for (std::size_t k = 0; k < rep.alpha.alpha.size(); ++k)
                    rep.alpha.alpha[k] = std::min(rep.alpha.alpha[k], a.alpha[k]);
        }
        rep.alpha.n_max = options.n_max;
        certify_sequence(rep.alpha);
    }
    if (rep.alpha.size() <= static_cast<std::size_t>(top)) throw LengthMismatch("weight sequence shorter than the degrees");

    const auto& w = ing.W->weight();
    {
        const auto ws = w.samples(grid->log2_size());
        const auto& ind = grid->indicator();
        for (int j = 0; j <= top; ++j) {
            const auto& s = splits[static_cast<std::size_t>(j)];
            long double a = 0.0L;
            const std::size_t kk = std::min(s.u1.size(), rep.alpha.size());
            for (std::size_t k = 0; k < kk; ++k) a += static_cast<long double>(rep.alpha.alpha[k]) * std::norm(s.u1[k]);
            rep.b1 = std::max(rep.b1, static_cast<double>(std::sqrt(a)));
        }
        for (int j = 0; j <= top; ++j) {
            std::vector<cplx> p(q.coeffs);
            p.insert(p.begin(), static_cast<std::size_t>(j), cplx{});
            const auto m = build_member(grid, AnalyticSeries(std::move(p)));
            long double acc = 0.0L;
            for (std::size_t i = 0; i < m.s.size(); ++i)
                if (ind[i] > 0.0 && ws[i] > 0.0) acc += ind[i] * std::norm(m.s[i]) / ws[i];
            rep.b2 = std::max(rep.b2, static_cast<double>(std::sqrt(acc / static_cast<long double>(m.s.size()))));
        }
    }
    for (int d : options.degrees) {
        double c1 = 0.0, c2 = 0.0;
        for (int j = 0; j <= d; ++j) {
            const auto& s = splits[static_cast<std::size_t>(j)];
            long double a = 0.0L;
            for (int k = 0; k <= d; ++k) a += static_cast<long double>(rep.alpha.alpha[static_cast<std::size_t>(k)]) * std::norm(s.u1[static_cast<std::size_t>(k)]);
            c1 = std::max(c1, static_cast<double>(std::sqrt(a)));
            c2 = std::max(c2, l2w_functional_norm(w, s.u2, d));
        }
        rep.c1.push_back(c1);
        rep.c2.push_back(c2);
    }
    rep.c1_ratio = rep.c1.front() > 0.0 ? rep.c1.back() / rep.c1.front() : std::numeric_limits<double>::infinity();
    rep.c2_ratio = rep.c2.front() > 0.0 ? rep.c2.back() / rep.c2.front() : std::numeric_limits<double>::infinity();
    rep.stable = rep.c1_ratio <= 2.0 && rep.c2_ratio <= 2.0;
    return rep;
}

}  // namespace bcct
