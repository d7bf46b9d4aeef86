#include "bcct/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/minima.hpp>

#include "bcct/errors.hpp"

namespace bcct {

DualSequence DualSequence::of(const WeightSequence& a) {
    DualSequence d;
    d.reciprocal.reserve(a.size());
    for (double x : a.alpha) d.reciprocal.push_back(1.0 / x);
    return d;
}

void certify_sequence(WeightSequence& a) {
    const auto& al = a.alpha;
    a.increasing = true;
    for (std::size_t k = 0; k + 1 < al.size(); ++k)
        if (al[k + 1] < al[k]) a.increasing = false;

    const std::size_t half = std::max<std::size_t>(al.size() / 2, 1);
    a.rapid_certified = al.size() >= 4;
    for (int N = 0; N < std::max(a.n_max, 1) && a.rapid_certified; ++N)
        for (std::size_t k = half; k + 1 < al.size(); ++k) {
            const double r0 = al[k] / std::pow(static_cast<double>(k), N);
            const double r1 = al[k + 1] / std::pow(static_cast<double>(k + 1), N);
            if (r1 < r0 * (1.0 - 1e-12)) {
                a.rapid_certified = false;
                break;
            }
        }
    a.root_limit_certified = al.size() >= 4;
    for (std::size_t k = half; k + 1 < al.size(); ++k) {
        const double r0 = std::log(al[k]) / static_cast<double>(k);
        const double r1 = std::log(al[k + 1]) / static_cast<double>(k + 1);
        if (r1 > r0 + 1e-12) a.root_limit_certified = false;
    }
}

WeightSequence make_sequence(std::vector<double> alpha) {
    for (double x : alpha)
        if (!(x > 0.0) || !std::isfinite(x)) throw PreconditionError("weights must be positive and finite");
    WeightSequence a;
    a.alpha = std::move(alpha);
    certify_sequence(a);
    return a;
}

WeightSequence rapid_weight(const AnalyticSeries& S, int n_max, double tail_base) {
    if (n_max < 1) throw PreconditionError("n_max must be positive");
    if (!(tail_base > 0.0 && tail_base < 1.0)) throw PreconditionError("tail base must be in (0, 1)");
    const std::size_t len = S.size();
    WeightSequence a;
    a.n_max = n_max;
    a.K.assign(static_cast<std::size_t>(n_max) + 1, 0);
    for (int N = 1; N <= n_max; ++N) {
        const double threshold = std::pow(tail_base, N);
        // tails from the end; tail[K] = Σ_{k>=K} k^N |S_k|²
        long double tail = 0.0L;
        std::size_t K = len;
        for (std::size_t k = len; k-- > 1;) {
            tail += std::pow(static_cast<long double>(k), N) * std::norm(S.coeffs[k]);
            if (tail < threshold) K = k;
            else break;
        }
        K = std::max(K, a.K[static_cast<std::size_t>(N - 1)]);
        K = std::max<std::size_t>(K, 1);
        a.K[static_cast<std::size_t>(N)] = K;
    }
    if (a.K.back() >= len) throw RangeExhausted("K(n_max) exceeds the available coefficients; reduce n_max");

    a.alpha.assign(len, 1.0);
    int N = 0;
    for (std::size_t k = 1; k < len; ++k) {
        while (N < n_max && k >= a.K[static_cast<std::size_t>(N + 1)]) ++N;
        const double kk = static_cast<double>(k);
        a.alpha[k] = std::min(std::pow(kk, N), std::pow(kk, std::sqrt(kk)));
    }
    certify_sequence(a);
    return a;
}

double x_norm(const AnalyticSeries& f, const WeightSequence& a) {
    if (f.size() > a.size()) throw LengthMismatch("series longer than the weight sequence");
    long double s = 0.0L;
    for (std::size_t k = 0; k < f.size(); ++k) s += static_cast<long double>(a.alpha[k]) * std::norm(f.coeffs[k]);
    return static_cast<double>(std::sqrt(s));
}

double x_norm(const AnalyticSeries& f, const DualSequence& a) {
    if (f.size() > a.size()) throw LengthMismatch("series longer than the weight sequence");
    long double s = 0.0L;
    for (std::size_t k = 0; k < f.size(); ++k) s += static_cast<long double>(a.reciprocal[k]) * std::norm(f.coeffs[k]);
    return static_cast<double>(std::sqrt(s));
}

cplx pairing(const AnalyticSeries& f, const AnalyticSeries& g) {
    cplx s{};
    const std::size_t n = std::min(f.size(), g.size());
    for (std::size_t k = 0; k < n; ++k) s += f.coeffs[k] * std::conj(g.coeffs[k]);
    return s;
}

cplx grid_pairing(const AnalyticSeries& f, const AnalyticSeries& g, int log2_size) {
    const std::size_t n = std::size_t{1} << log2_size;
    if (std::max(f.size(), g.size()) > n / 2) throw BandTooLarge("grid too small for the pairing");
    cplx s{};
    for (std::size_t m = 0; m < n; ++m) {
        const cplx z = std::polar(1.0, two_pi * static_cast<double>(m) / static_cast<double>(n));
        s += evaluate_polynomial(f, z) * std::conj(evaluate_polynomial(g, z));
    }
    return s / static_cast<double>(n);
}

Eigen::MatrixXcd toeplitz_truncation(const AnalyticSeries& h, int d, ToeplitzMode mode) {
    if (d < 0) throw PreconditionError("degree must be non-negative");
    const int n = d + 1;
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int off = mode == ToeplitzMode::co_analytic ? j - i : i - j;
            if (off >= 0) M(i, j) = h[static_cast<std::size_t>(off)];
        }
    return M;
}

double weighted_operator_norm(const Eigen::MatrixXcd& M, const std::vector<double>& weights) {
    const auto n = M.rows();
    if (static_cast<std::size_t>(n) > weights.size()) throw LengthMismatch("weights shorter than the matrix");
    Eigen::MatrixXcd A = M;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            A(i, j) *= std::sqrt(weights[static_cast<std::size_t>(i)] / weights[static_cast<std::size_t>(j)]);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
    return svd.singularValues()(0);
}

double toeplitz_norm(const AnalyticSeries& h, int d, ToeplitzMode mode, const WeightSequence& a) {
    const auto M = toeplitz_truncation(h, d, mode);
    if (mode == ToeplitzMode::co_analytic) return weighted_operator_norm(M, a.alpha);
    return weighted_operator_norm(M, DualSequence::of(a).reciprocal);
}

double circle_sup_norm(const AnalyticSeries& h, int log2_size) {
    const std::size_t n = std::size_t{1} << log2_size;
    auto mag = [&](double t) { return std::abs(evaluate_polynomial(h, std::polar(1.0, t))); };
    std::vector<double> v(n);
    for (std::size_t m = 0; m < n; ++m) v[m] = mag(two_pi * static_cast<double>(m) / static_cast<double>(n));
    // refine the five largest local maxima
    std::vector<std::size_t> peaks;
    for (std::size_t m = 0; m < n; ++m)
        if (v[m] >= v[(m + n - 1) % n] && v[m] >= v[(m + 1) % n]) peaks.push_back(m);
    std::sort(peaks.begin(), peaks.end(), [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
    if (peaks.size() > 5) peaks.resize(5);
    double best = *std::max_element(v.begin(), v.end());
    const double cell = two_pi / static_cast<double>(n);
    for (std::size_t m : peaks) {
        const double t = two_pi * static_cast<double>(m) / static_cast<double>(n);
        const auto r = boost::math::tools::brent_find_minima([&](double x) { return -mag(x); }, t - cell, t + cell,
                                                             std::numeric_limits<double>::digits / 2);
        best = std::max(best, -r.second);
    }
    return best;
}

AnnihilatorReport annihilator_check(const KMember& m, int k_max) {
    return annihilator_check(m, k_max, cauchy_coefficients(m, Region::E, m.s.size() / 2));
}

AnnihilatorReport annihilator_check(const KMember& m, int k_max, const AnalyticSeries& C) {
    if (m.family != Family::K) throw PreconditionError("annihilator check is defined for family K");
    const std::size_t n = m.s.size();
    if (C.size() > n / 2) throw BandTooLarge("transform longer than the grid band");
    std::vector<cplx> c(n);
    std::copy(C.coeffs.begin(), C.coeffs.end(), c.begin());
    const auto Cb = idft(c);
    const auto& ind = m.grid->indicator();
    AnnihilatorReport rep;
    rep.k_max = k_max;
    std::vector<cplx> zeta(n);
    for (std::size_t j = 0; j < n; ++j) zeta[j] = std::polar(1.0, two_pi * static_cast<double>(j) / static_cast<double>(n));
    for (int k = 0; k <= k_max; ++k) {
        cplx a{}, b{};
        for (std::size_t j = 0; j < n; ++j) {
            const cplx zk = zeta[(static_cast<std::size_t>(k) * j) % n];
            a += zk * std::conj(Cb[j]);
            b += ind[j] * zk * std::conj(m.s[j]);
        }
        rep.residual = std::max(rep.residual, std::abs(-a + b) / static_cast<double>(n));
    }
    return rep;
}

MomentReport moments_beta(double C, int k_max) {
    if (!(C > -1.0)) throw PreconditionError("moment exponent must exceed -1");
    if (k_max < 0) throw PreconditionError("k_max must be non-negative");
    MomentReport r;
    r.C = C;
    r.beta.resize(static_cast<std::size_t>(k_max) + 1);
    r.beta[0] = 1.0 / (C + 1.0);
    for (int k = 0; k < k_max; ++k)
        r.beta[static_cast<std::size_t>(k + 1)] = r.beta[static_cast<std::size_t>(k)] * (k + 1.0) / (k + C + 2.0);

    boost::math::quadrature::tanh_sinh<double> ts;
    const double gC = std::tgamma(C + 1.0);
    for (int k = 0; k <= k_max; ++k) {
        const double b = r.beta[static_cast<std::size_t>(k)];
        const double exact = boost::math::beta(k + 1.0, C + 1.0);
        r.closed_form_error = std::max(r.closed_form_error, std::abs(b - exact) / exact);
        if (k <= 64) {
            const double q = ts.integrate([&](double s) { return std::pow(s, k) * std::pow(1.0 - s, C); }, 0.0, 1.0);
            r.quadrature_error = std::max(r.quadrature_error, std::abs(b - q) / exact);
        }
        if (k < k_max) {
            const double ratio = r.beta[static_cast<std::size_t>(k + 1)] / b;
            r.recursion_error = std::max(r.recursion_error, std::abs(ratio - (k + 1.0) / (k + C + 2.0)));
        }
        r.ratio.push_back(k == 0 ? 0.0 : b * std::pow(static_cast<double>(k), C + 1.0) / gC);
    }
    return r;
}

std::vector<cplx> weight_fourier(const BoundaryWeight& w, int band) {
    std::vector<cplx> out(2 * static_cast<std::size_t>(band) + 1);
    auto at = [&](int n) -> cplx& { return out[static_cast<std::size_t>(n + band)]; };
    for (std::size_t i = 0; i < w.components.size(); ++i) {
        const Arc& A = w.components[i];
        const double c = w.levels[i];
        at(0) += c * A.length;
        if (A.span() >= two_pi - angle_slack) continue;
        for (int n = -band; n <= band; ++n) {
            if (n == 0) continue;
            const double dn = n;
            at(n) += c * (std::polar(1.0, -dn * A.start) - std::polar(1.0, -dn * A.end)) / cplx{0.0, two_pi * dn};
        }
    }
    if (!w.bumps.empty()) {
        constexpr int lg = 16;
        const std::size_t N = std::size_t{1} << lg;
        if (static_cast<std::size_t>(band) >= N / 2) throw BandTooLarge("band too large for the bump grid");
        std::vector<cplx> x(N);
        for (std::size_t m = 0; m < N; ++m) {
            const double t = two_pi * static_cast<double>(m) / static_cast<double>(N);
            const int ci = w.component_index(t);
            if (ci < 0) continue;
            double u = 0.0;
            for (const auto& b : w.bumps) {
                const double y = std::remainder(t - b.center, two_pi) / b.half_width;
                u += b.amplitude * bump_profile(y);
            }
            x[m] = w.levels[static_cast<std::size_t>(ci)] * std::expm1(u);
        }
        const auto c = dft(x);
        for (int n = -band; n <= band; ++n) at(n) += c[static_cast<std::size_t>((n + static_cast<long>(N)) % static_cast<long>(N))];
    }
    return out;
}

GramReport d_space_gram(const DualSequence& dual, const BoundaryWeight& w, int d) {
    if (d < 0) throw PreconditionError("degree must be non-negative");
    if (dual.size() < static_cast<std::size_t>(d) + 1) throw LengthMismatch("dual sequence shorter than the degree");
    const auto wf = weight_fourier(w, d);
    const int n = d + 1;
    GramReport r;
    r.G = Eigen::MatrixXcd::Zero(n, n);
    // ∫ ζ^j conj(ζ^k) w dm = ŵ_{k-j}
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            r.G(j, k) = wf[static_cast<std::size_t>(k - j + d)];
            if (j == k) r.G(j, k) += dual.reciprocal[static_cast<std::size_t>(j)];
        }
    r.hermitian_error = (r.G - r.G.adjoint()).cwiseAbs().maxCoeff();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(r.G, Eigen::EigenvaluesOnly);
    r.min_eigenvalue = es.eigenvalues()(0);
    return r;
}

double h2_embedding_residual(const DualSequence& dual, const BoundaryWeight& w, const AnalyticSeries& f, int d) {
    if (f.size() > static_cast<std::size_t>(d) + 1) throw PreconditionError("degree below deg f");
    const auto gram = d_space_gram(dual, w, d);
    const int n = d + 1;
    Eigen::VectorXcd b(n);
    for (int j = 0; j < n; ++j) {
        cplx acc = f[static_cast<std::size_t>(j)] * dual.reciprocal[static_cast<std::size_t>(j)];
        for (const auto& A : w.components) {
            auto part = [&](bool imag) {
                auto g = [&](double t) {
                    const cplx v = evaluate_polynomial(f, std::polar(1.0, t)) * std::polar(1.0, -static_cast<double>(j) * t) *
                                   w.value(t);
                    return imag ? v.imag() : v.real();
                };
                return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, A.start, A.end, 12, 1e-15);
            };
            acc += cplx{part(false), part(true)} / two_pi;
        }
        b(j) = acc;
    }
    // b_j = <f, z^j>, so the system matrix is <z^k, z^j> = conj(G_jk)
    const Eigen::MatrixXcd A = gram.G.conjugate();
    const Eigen::VectorXcd c = A.ldlt().solve(b);
    double worst = 0.0;
    for (int j = 0; j < n; ++j) worst = std::max(worst, std::abs(c(j) - f[static_cast<std::size_t>(j)]));
    return worst;
}

}  // namespace bcct
