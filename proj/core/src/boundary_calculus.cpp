#include "bcct/boundary_calculus.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <utility>

#include "bcct/errors.hpp"

namespace bcct {

namespace {

// FFTW plans are cached per (size, direction). Planning is not thread safe,
// execution through fftw_execute_dft is.
class PlanCache {
public:
    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

    fftw_plan get(int n, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto key = std::make_pair(n, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        auto* in = fftw_alloc_complex(static_cast<std::size_t>(n));
        auto* out = fftw_alloc_complex(static_cast<std::size_t>(n));
        fftw_plan p = fftw_plan_dft_1d(n, in, out, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(in);
        fftw_free(out);
        plans_.emplace(key, p);
        return p;
    }

private:
    std::mutex mutex_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& plans() {
    static PlanCache cache;
    return cache;
}

void transform(const std::vector<cplx>& in, std::vector<cplx>& out, int sign) {
    const int n = static_cast<int>(in.size());
    out.resize(in.size());
    if (n == 0) return;
    fftw_plan p = plans().get(n, sign);
    // fftw_complex is layout compatible with std::complex<double>
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data())),
                     reinterpret_cast<fftw_complex*>(out.data()));
}

void require_power_of_two(std::size_t n) {
    if (n < 2 || (n & (n - 1)) != 0) throw PreconditionError("grid size must be a power of two");
}

}  // namespace

double BoundaryGrid::angle(std::size_t m) const {
    return two_pi * (static_cast<double>(m) / static_cast<double>(samples.size()));
}

BoundaryGrid BoundaryGrid::zeros(int log2_size) {
    if (log2_size < 8 || log2_size > 26) throw PreconditionError("grid log2 size must lie in [8, 26]");
    BoundaryGrid g;
    g.log2_size = log2_size;
    g.samples.assign(std::size_t{1} << log2_size, cplx{});
    return g;
}

BoundaryGrid BoundaryGrid::sample(int log2_size, const std::function<cplx(double)>& f) {
    BoundaryGrid g = zeros(log2_size);
    for (std::size_t m = 0; m < g.size(); ++m) g.samples[m] = f(g.angle(m));
    return g;
}

double AnalyticSeries::l2_norm() const {
    double s = 0.0;
    for (const auto& c : coeffs) s += std::norm(c);
    return std::sqrt(s);
}

std::vector<cplx> dft(const std::vector<cplx>& samples) {
    require_power_of_two(samples.size());
    std::vector<cplx> out;
    transform(samples, out, FFTW_FORWARD);
    const double scale = 1.0 / static_cast<double>(samples.size());
    for (auto& c : out) c *= scale;
    return out;
}

std::vector<cplx> idft(const std::vector<cplx>& coeffs) {
    require_power_of_two(coeffs.size());
    std::vector<cplx> out;
    transform(coeffs, out, FFTW_BACKWARD);
    return out;
}

TwoSidedCoefficients fourier_coefficients(const BoundaryGrid& grid, int band) {
    const auto n = static_cast<long>(grid.size());
    if (band < 0 || band >= n / 2) throw BandTooLarge("band must be below size/2");
    const auto c = dft(grid.samples);
    TwoSidedCoefficients out;
    out.band = band;
    out.values.resize(2 * static_cast<std::size_t>(band) + 1);
    for (int k = -band; k <= band; ++k) out.at(k) = c[static_cast<std::size_t>((k + n) % n)];
    return out;
}

BoundaryGrid synthesize(const TwoSidedCoefficients& c, int log2_size) {
    BoundaryGrid g = BoundaryGrid::zeros(log2_size);
    const auto n = static_cast<long>(g.size());
    if (c.band >= n / 2) throw BandTooLarge("band must be below size/2");
    std::vector<cplx> spec(g.size());
    for (int k = -c.band; k <= c.band; ++k) spec[static_cast<std::size_t>((k + n) % n)] = c.at(k);
    g.samples = idft(spec);
    return g;
}

AnalyticSeries analytic_projection(const TwoSidedCoefficients& c) {
    std::vector<cplx> out(static_cast<std::size_t>(c.band) + 1);
    for (int k = 0; k <= c.band; ++k) out[static_cast<std::size_t>(k)] = c.at(k);
    return AnalyticSeries(std::move(out));
}

AnalyticSeries analytic_part(const std::vector<cplx>& samples, std::size_t degree) {
    auto c = dft(samples);
    const std::size_t keep = std::min(degree + 1, samples.size() / 2);
    c.resize(keep);
    return AnalyticSeries(std::move(c));
}

std::vector<cplx> project_analytic(const std::vector<cplx>& samples) {
    auto c = dft(samples);
    std::fill(c.begin() + static_cast<std::ptrdiff_t>(c.size() / 2), c.end(), cplx{});
    return idft(c);
}

std::vector<double> conjugate_function(const std::vector<double>& u) {
    const std::size_t n = u.size();
    std::vector<cplx> x(u.begin(), u.end());
    auto c = dft(x);
    c[0] = 0.0;
    c[n / 2] = 0.0;
    const cplx minus_i{0.0, -1.0};
    for (std::size_t k = 1; k < n / 2; ++k) {
        c[k] *= minus_i;
        c[n - k] *= -minus_i;
    }
    const auto y = idft(c);
    std::vector<double> out(n);
    for (std::size_t m = 0; m < n; ++m) out[m] = y[m].real();
    return out;
}

AnalyticSeries fejer_means(const AnalyticSeries& f, int degree) {
    if (degree < 0) throw PreconditionError("Fejér degree must be non-negative");
    const std::size_t d = static_cast<std::size_t>(degree);
    std::vector<cplx> out(std::min(f.size(), d + 1));
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = f.coeffs[k] * (1.0 - static_cast<double>(k) / static_cast<double>(d + 1));
    return AnalyticSeries(std::move(out));
}

cplx evaluate_polynomial(const AnalyticSeries& f, cplx z) {
    cplx acc{};
    for (std::size_t k = f.size(); k-- > 0;) acc = acc * z + f.coeffs[k];
    return acc;
}

cplx evaluate_in_disk(const AnalyticSeries& f, cplx z) {
    if (std::abs(z) > 1.0 - 1e-6) throw OutsideDomain("evaluate_in_disk needs |z| <= 1 - 1e-6");
    return evaluate_polynomial(f, z);
}

cplx evaluate_abel(const AnalyticSeries& f, cplx z, double r) {
    return evaluate_polynomial(f, r * z);
}

cplx cauchy_quadrature(const BoundaryGrid& grid, cplx z) {
    if (std::abs(z) > 0.95) throw OutsideDomain("cauchy_quadrature needs |z| <= 0.95");
    cplx acc{};
    for (std::size_t m = 0; m < grid.size(); ++m)
        acc += grid.samples[m] / (1.0 - z * std::conj(grid.point(m)));
    return acc / static_cast<double>(grid.size());
}

std::vector<double> indicator_weights(const BeurlingCarlesonSet& E, int log2_size, double* snap_error) {
    const std::size_t n = std::size_t{1} << log2_size;
    std::vector<double> w(n, 1.0);
    double worst = 0.0;
    if (E.is_full()) {
        if (snap_error) *snap_error = 0.0;
        return w;
    }
    const double cell = two_pi / static_cast<double>(n);
    auto position = [&](double angle) {
        double x = angle / cell;
        const double r = std::round(x);
        if (std::abs(x - r) < 1e-9) x = r;
        return x;
    };
    const auto N = static_cast<long long>(n);
    for (const auto& g : E.gaps) {
        const double a = position(g.start), b = position(g.end);
        const auto lo = static_cast<long long>(std::floor(a)) + 1;
        const auto hi = static_cast<long long>(std::ceil(b)) - 1;
        for (long long i = lo; i <= hi; ++i) w[static_cast<std::size_t>(((i % N) + N) % N)] = 0.0;
    }
    for (const auto& g : E.gaps) {
        for (double e : {g.start, g.end}) {
            const double x = position(e);
            const double r = std::round(x);
            worst = std::max(worst, std::abs(x - r));
            const auto i = static_cast<long long>(r);
            w[static_cast<std::size_t>(((i % N) + N) % N)] = 0.5;
        }
    }
    if (snap_error) *snap_error = worst;
    return w;
}

double sup_norm(const std::vector<cplx>& samples) {
    double m = 0.0;
    for (const auto& v : samples) m = std::max(m, std::abs(v));
    return m;
}

AnalyticSeries exp_series(const AnalyticSeries& log_f, std::size_t degree) {
    std::vector<cplx> F(degree + 1);
    F[0] = std::exp(log_f[0]);
    for (std::size_t n = 1; n <= degree; ++n) {
        cplx acc{};
        const std::size_t top = std::min(n, log_f.size() == 0 ? 0 : log_f.size() - 1);
        for (std::size_t k = 1; k <= top; ++k) acc += static_cast<double>(k) * log_f.coeffs[k] * F[n - k];
        F[n] = acc / static_cast<double>(n);
    }
    return AnalyticSeries(std::move(F));
}

AnalyticSeries multiply(const AnalyticSeries& a, const AnalyticSeries& b, std::size_t degree) {
    std::vector<cplx> out(degree + 1);
    for (std::size_t i = 0; i < a.size() && i <= degree; ++i) {
        if (a.coeffs[i] == cplx{}) continue;
        for (std::size_t j = 0; j < b.size() && i + j <= degree; ++j) out[i + j] += a.coeffs[i] * b.coeffs[j];
    }
    return AnalyticSeries(std::move(out));
}

double stirling2(int m, int k) {
    constexpr int top = 12;
    static const auto table = [] {
        std::vector<std::vector<double>> s(top + 1, std::vector<double>(top + 1, 0.0));
        s[0][0] = 1.0;
        for (int i = 1; i <= top; ++i)
            for (int j = 1; j <= i; ++j) s[i][j] = j * s[i - 1][j] + s[i - 1][j - 1];
        return s;
    }();
    if (m < 0 || k < 0 || m > top || k > top) throw PreconditionError("Stirling index out of range");
    return table[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)];
}

std::vector<cplx> circle_derivatives(const std::vector<cplx>& dz, cplx z) {
    // (d/dt)^m = i^m Σ_k S(m,k) z^k (d/dz)^k
    const int M = static_cast<int>(dz.size()) - 1;
    std::vector<cplx> out(dz.size());
    if (M < 0) return out;
    out[0] = dz[0];
    cplx im = 1.0;
    for (int m = 1; m <= M; ++m) {
        im *= cplx{0.0, 1.0};
        cplx acc{}, zk = 1.0;
        for (int k = 1; k <= m; ++k) {
            zk *= z;
            acc += stirling2(m, k) * zk * dz[static_cast<std::size_t>(k)];
        }
        out[static_cast<std::size_t>(m)] = im * acc;
    }
    return out;
}

std::vector<cplx> exp_derivative_ratios(const std::vector<cplx>& phi) {
    const std::size_t M = phi.size() == 0 ? 0 : phi.size() - 1;
    std::vector<cplx> R(M + 1);
    R[0] = 1.0;
    for (std::size_t m = 1; m <= M; ++m) {
        cplx acc{};
        double binom = 1.0;  // C(m-1, k)
        for (std::size_t k = 0; k < m; ++k) {
            acc += binom * phi[k + 1] * R[m - 1 - k];
            binom = binom * static_cast<double>(m - 1 - k) / static_cast<double>(k + 1);
        }
        R[m] = acc;
    }
    return R;
}

std::vector<double> cot_half_derivatives(double t, double a, int order) {
    // c = cot(u), u = (t - a)/2, dc/dt = -(1 + c^2)/2; each derivative is a
    // polynomial in c, built by the chain rule.
    const double c = 1.0 / std::tan(0.5 * (t - a));
    std::vector<double> poly{0.0, 1.0};  // c
    std::vector<double> out;
    for (int k = 0; k <= order; ++k) {
        double v = 0.0;
        for (std::size_t i = poly.size(); i-- > 0;) v = v * c + poly[i];
        out.push_back(v);
        // next = poly'(c) * (-(1 + c^2)/2)
        std::vector<double> d(poly.size() > 1 ? poly.size() - 1 : 1, 0.0);
        for (std::size_t i = 1; i < poly.size(); ++i) d[i - 1] = static_cast<double>(i) * poly[i];
        std::vector<double> next(d.size() + 2, 0.0);
        for (std::size_t i = 0; i < d.size(); ++i) {
            next[i] -= 0.5 * d[i];
            next[i + 2] -= 0.5 * d[i];
        }
        poly = std::move(next);
    }
    return out;
}

}  // namespace bcct
