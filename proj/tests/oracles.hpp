#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library's numerical routines: direct sums, naive DFTs and closed forms.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
inline constexpr double two_pi = 6.283185307179586476925286766559005768;

// c_n = (1/N) Σ_m x_m e^{-i n t_m}, computed in long double
inline cplx naive_coefficient(const std::vector<cplx>& x, long n) {
    const std::size_t N = x.size();
    std::complex<long double> acc{};
    for (std::size_t m = 0; m < N; ++m) {
        // reduce the phase exactly in integers before scaling
        const long double frac = static_cast<long double>(((n * static_cast<long>(m)) % static_cast<long>(N) + static_cast<long>(N)) %
                                                          static_cast<long>(N)) /
                                 static_cast<long double>(N);
        const long double ph = -2.0L * 3.141592653589793238462643383279502884L * frac;
        acc += std::complex<long double>(x[m].real(), x[m].imag()) * std::complex<long double>(std::cos(ph), std::sin(ph));
    }
    acc /= static_cast<long double>(N);
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

inline std::vector<cplx> sample(std::size_t N, const std::function<cplx(double)>& f) {
    std::vector<cplx> v(N);
    for (std::size_t m = 0; m < N; ++m) v[m] = f(two_pi * static_cast<double>(m) / static_cast<double>(N));
    return v;
}

// Σ ℓ log(1/ℓ)
inline double entropy(const std::vector<double>& lengths) {
    long double s = 0.0L;
    for (double l : lengths) s += static_cast<long double>(l) * std::log(1.0L / static_cast<long double>(l));
    return static_cast<double>(s);
}

// Normalized distance from e^{it} to the closed set whose gaps are given as
// (start, span) pairs in radians: 0 inside E, otherwise the nearer endpoint
// of the gap containing t.
inline double distance(double t, const std::vector<std::pair<double, double>>& gaps) {
    for (const auto& [s, span] : gaps) {
        double off = std::fmod(t - s, two_pi);
        if (off < 0) off += two_pi;
        if (off > 0.0 && off < span) return std::min(off, span - off) / two_pi;
    }
    return 0.0;
}

// h(z) = -Σ λ b ℓ log(1/ℓ) / ((1+ℓ) b - z) summed term by term
struct Term {
    double mid_angle;
    double length;
    double lambda;
};

inline cplx cutoff_h(const std::vector<Term>& terms, cplx z) {
    std::complex<long double> acc{};
    for (const auto& t : terms) {
        const std::complex<long double> b(std::cos(static_cast<long double>(t.mid_angle)),
                                          std::sin(static_cast<long double>(t.mid_angle)));
        const long double l = t.length;
        const std::complex<long double> zz(z.real(), z.imag());
        acc -= static_cast<long double>(t.lambda) * b * l * std::log(1.0L / l) / ((1.0L + l) * b - zz);
    }
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

// Trapezoid rule for ∫ s(ζ)/(1 - z conj ζ) dm on N points.
inline cplx cauchy(const std::function<cplx(double)>& s, cplx z, std::size_t N) {
    std::complex<long double> acc{};
    for (std::size_t m = 0; m < N; ++m) {
        const double t = two_pi * static_cast<double>(m) / static_cast<double>(N);
        const cplx zeta = std::polar(1.0, t);
        const cplx v = s(t) / (1.0 - z * std::conj(zeta));
        acc += std::complex<long double>(v.real(), v.imag());
    }
    acc /= static_cast<long double>(N);
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

// exp(∫ (ζ+z)/(ζ-z) log w dm) by the trapezoid rule; log_w may be -inf
// (treated as absent, i.e. w = 1 outside its support when support_only).
inline cplx outer(const std::function<double(double)>& log_w, cplx z, std::size_t N) {
    std::complex<long double> acc{};
    for (std::size_t m = 0; m < N; ++m) {
        const double t = two_pi * (static_cast<double>(m) + 0.5) / static_cast<double>(N);
        const double lw = log_w(t);
        const cplx zeta = std::polar(1.0, t);
        const cplx v = (zeta + z) / (zeta - z) * lw;
        acc += std::complex<long double>(v.real(), v.imag());
    }
    acc /= static_cast<long double>(N);
    return std::exp(cplx(static_cast<double>(acc.real()), static_cast<double>(acc.imag())));
}

// Singular inner function of a finite atomic measure.
inline cplx singular_inner(const std::vector<std::pair<double, double>>& atoms, cplx z) {
    cplx s = 0.0;
    for (const auto& [angle, mass] : atoms) {
        const cplx zeta = std::polar(1.0, angle);
        s += mass * (zeta + z) / (zeta - z);
    }
    return std::exp(-s);
}

// Beta(k+1, C+1) from log-gamma in extended precision
inline double beta(double k, double C) {
    const long double v = std::lgamma(static_cast<long double>(k) + 1.0L) + std::lgamma(static_cast<long double>(C) + 1.0L) -
                          std::lgamma(static_cast<long double>(k) + static_cast<long double>(C) + 2.0L);
    return static_cast<double>(std::exp(v));
}

// K(N): least K >= 1 with Σ_{k>=K} k^N |S_k|² < base^N, by suffix sums
// accumulated from the end (K(0) = 0).
inline std::vector<std::size_t> tail_indices(const std::vector<double>& abs_s, int n_max, double base = 0.5) {
    std::vector<std::size_t> K{0};
    for (int N = 1; N <= n_max; ++N) {
        const std::size_t n = abs_s.size();
        std::vector<long double> suffix(n + 1, 0.0L);
        for (std::size_t k = n; k-- > 1;)
            suffix[k] = suffix[k + 1] + std::pow(static_cast<long double>(k), N) * static_cast<long double>(abs_s[k]) *
                                            static_cast<long double>(abs_s[k]);
        std::size_t found = n;
        for (std::size_t k = 1; k < n; ++k)
            if (suffix[k] < std::pow(static_cast<long double>(base), N)) {
                found = k;
                break;
            }
        K.push_back(std::max(found, K.back()));
    }
    return K;
}

// Largest singular value of a dense complex matrix by power iteration on
// A* A (row-major, rows x cols).
inline double spectral_norm(const std::vector<cplx>& A, std::size_t rows, std::size_t cols, int iters = 2000) {
    std::vector<cplx> v(cols, 1.0), w(rows), u(cols);
    std::mt19937_64 rng(7);
    std::normal_distribution<double> nd;
    for (auto& x : v) x = cplx(nd(rng), nd(rng));
    double sigma = 0.0;
    for (int it = 0; it < iters; ++it) {
        double nv = 0.0;
        for (const auto& x : v) nv += std::norm(x);
        nv = std::sqrt(nv);
        for (auto& x : v) x /= nv;
        for (std::size_t i = 0; i < rows; ++i) {
            cplx s = 0.0;
            for (std::size_t j = 0; j < cols; ++j) s += A[i * cols + j] * v[j];
            w[i] = s;
        }
        for (std::size_t j = 0; j < cols; ++j) {
            cplx s = 0.0;
            for (std::size_t i = 0; i < rows; ++i) s += std::conj(A[i * cols + j]) * w[i];
            u[j] = s;
        }
        double nu = 0.0;
        for (const auto& x : u) nu += std::norm(x);
        const double next = std::sqrt(std::sqrt(nu));
        v = u;
        if (it > 50 && std::abs(next - sigma) < 1e-15 * next) {
            sigma = next;
            break;
        }
        sigma = next;
    }
    return sigma;
}

// Cholesky attempt on H + shift·I; true when every pivot stays positive.
inline bool cholesky_ok(const std::vector<cplx>& H, std::size_t n, double shift) {
    std::vector<cplx> L(n * n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        cplx d = H[j * n + j] + shift;
        for (std::size_t k = 0; k < j; ++k) d -= L[j * n + k] * std::conj(L[j * n + k]);
        if (!(d.real() > 0.0)) return false;
        const double ljj = std::sqrt(d.real());
        L[j * n + j] = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            cplx s = H[i * n + j];
            for (std::size_t k = 0; k < j; ++k) s -= L[i * n + k] * std::conj(L[j * n + k]);
            L[i * n + j] = s / ljj;
        }
    }
    return true;
}

inline double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double e = 0.0;
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) e = std::max(e, std::abs(a[i] - b[i]));
    return e;
}

}  // namespace oracle
