#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "bcct/circle_sets.hpp"

namespace bcct {

// Equispaced samples at t_m = 2π m / 2^log2_size.
struct BoundaryGrid {
    int log2_size = 14;
    std::vector<cplx> samples;

    std::size_t size() const { return samples.size(); }
    double angle(std::size_t m) const;
    cplx point(std::size_t m) const { return std::polar(1.0, angle(m)); }

    static BoundaryGrid zeros(int log2_size);
    static BoundaryGrid sample(int log2_size, const std::function<cplx(double)>& f);
};

// f(z) = Σ_k coeffs[k] z^k
struct AnalyticSeries {
    std::vector<cplx> coeffs;

    AnalyticSeries() = default;
    explicit AnalyticSeries(std::vector<cplx> c) : coeffs(std::move(c)) {}
    std::size_t size() const { return coeffs.size(); }
    cplx operator[](std::size_t k) const { return k < coeffs.size() ? coeffs[k] : cplx{}; }
    double l2_norm() const;
};

// Coefficients c_{-band} .. c_{band}
struct TwoSidedCoefficients {
    int band = 0;
    std::vector<cplx> values;

    cplx at(int n) const { return values[static_cast<std::size_t>(n + band)]; }
    cplx& at(int n) { return values[static_cast<std::size_t>(n + band)]; }
};

// Normalized forward DFT: c_n = (1/N) Σ_m x_m e^{-i n t_m}, n = 0..N-1
// (index n >= N/2 holds the coefficient n - N).
std::vector<cplx> dft(const std::vector<cplx>& samples);
// Inverse of dft: x_m = Σ_n c_n e^{i n t_m}.
std::vector<cplx> idft(const std::vector<cplx>& coeffs);

TwoSidedCoefficients fourier_coefficients(const BoundaryGrid& grid, int band);
BoundaryGrid synthesize(const TwoSidedCoefficients& c, int log2_size);

AnalyticSeries analytic_projection(const TwoSidedCoefficients& c);
// Coefficients 0..degree of the analytic projection of grid samples.
AnalyticSeries analytic_part(const std::vector<cplx>& samples, std::size_t degree);
// Boundary samples of P_+ applied to the samples (non-negative frequencies
// below Nyquist kept).
std::vector<cplx> project_analytic(const std::vector<cplx>& samples);

std::vector<double> conjugate_function(const std::vector<double>& u);

AnalyticSeries fejer_means(const AnalyticSeries& f, int degree);

// Horner evaluation for |z| <= 1 - 1e-6.
cplx evaluate_in_disk(const AnalyticSeries& f, cplx z);
// Abel mean Σ f_k r^k z^k.
cplx evaluate_abel(const AnalyticSeries& f, cplx z, double r);
// Horner evaluation without domain restriction (used for |z| = 1 with
// polynomials).
cplx evaluate_polynomial(const AnalyticSeries& f, cplx z);

// Trapezoid quadrature of ∫ s(ζ)/(1 - z conj ζ) dm for |z| <= 0.95. The
// grid is expected to hold s·1_E already.
cplx cauchy_quadrature(const BoundaryGrid& grid, cplx z);

// Quadrature weights for 1_E on a grid: 1 inside E, 0 inside gaps, 1/2 on
// grid points snapped to an endpoint (within half a cell). The largest
// endpoint-to-grid offset, in cells, is written to snap_error when given.
std::vector<double> indicator_weights(const BeurlingCarlesonSet& E, int log2_size,
                                      double* snap_error = nullptr);

double sup_norm(const std::vector<cplx>& samples);

// Taylor coefficients 0..degree of exp(L) from those of L (recurrence
// n F_n = Σ_{k=1}^{n} k L_k F_{n-k}).
AnalyticSeries exp_series(const AnalyticSeries& log_f, std::size_t degree);
// Truncated product of two series.
AnalyticSeries multiply(const AnalyticSeries& a, const AnalyticSeries& b, std::size_t degree);

// Stirling numbers of the second kind, 0 <= k <= m <= 12.
double stirling2(int m, int k);
// Given f^{(k)}(z), k = 0..M, at z = e^{it}, returns d^k/dt^k f(e^{it}).
std::vector<cplx> circle_derivatives(const std::vector<cplx>& dz, cplx z);
// Given φ^{(k)}, k = 0..M, returns (e^φ)^{(m)} / e^φ for m = 0..M.
std::vector<cplx> exp_derivative_ratios(const std::vector<cplx>& phi);
// d^k/dt^k cot((t - a)/2) for k = 0..order, at t.
std::vector<double> cot_half_derivatives(double t, double a, int order);

}  // namespace bcct
