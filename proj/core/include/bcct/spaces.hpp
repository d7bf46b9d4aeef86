#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "bcct/boundary_calculus.hpp"
#include "bcct/factors.hpp"
#include "bcct/transforms.hpp"

namespace bcct {

struct WeightSequence {
    std::vector<double> alpha;
    std::vector<std::size_t> K;  // K(0..n_max)
    int n_max = 0;
    bool increasing = false;
    // α_k / k^N non-decreasing on the final half-range for N < n_max
    bool rapid_certified = false;
    // α_k^{1/k} non-increasing on the final half-range
    bool root_limit_certified = false;

    std::size_t size() const { return alpha.size(); }
};

struct DualSequence {
    std::vector<double> reciprocal;

    static DualSequence of(const WeightSequence& a);
    std::size_t size() const { return reciprocal.size(); }
};

// Fills the flags of a sequence from its values.
void certify_sequence(WeightSequence& a);
WeightSequence make_sequence(std::vector<double> alpha);

// K(N) = least K >= 1 with Σ_{k>=K} k^N |S_k|² < tail_base^N (K(0) = 0),
// α_k = k^N on [K(N), K(N+1)), k^{n_max} beyond K(n_max), then
// α_k = min(α_k, k^{√k}). RangeExhausted when K(n_max) reaches the end.
WeightSequence rapid_weight(const AnalyticSeries& S, int n_max, double tail_base = 0.5);

double x_norm(const AnalyticSeries& f, const WeightSequence& a);
double x_norm(const AnalyticSeries& f, const DualSequence& a);
// Σ f_k conj(g_k)
cplx pairing(const AnalyticSeries& f, const AnalyticSeries& g);
// ∫ f conj(g) dm on a 2^log2_size grid
cplx grid_pairing(const AnalyticSeries& f, const AnalyticSeries& g, int log2_size);

enum class ToeplitzMode { co_analytic, multiplier };

// co_analytic: p(L) with p = h, M_ij = h_{j-i} (j >= i).
// multiplier: M_ij = h_{i-j} (i >= j).
Eigen::MatrixXcd toeplitz_truncation(const AnalyticSeries& h, int d, ToeplitzMode mode);
// ‖D^{1/2} M D^{-1/2}‖₂
double weighted_operator_norm(const Eigen::MatrixXcd& M, const std::vector<double>& weights);
// co_analytic acts on X(α), multiplier on X(α⁻¹)
double toeplitz_norm(const AnalyticSeries& h, int d, ToeplitzMode mode, const WeightSequence& a);
// max over the circle: grid search refined by Brent's method
double circle_sup_norm(const AnalyticSeries& h, int log2_size = 12);

struct AnnihilatorReport {
    double residual = 0.0;  // max_k over both integrals
    int k_max = 0;
};

// -∫ z^k conj(C) dm + ∫_E z^k conj(s) dm for k <= k_max, both by grid sums.
// C defaults to C_{s1_E}.
AnnihilatorReport annihilator_check(const KMember& m, int k_max);
AnnihilatorReport annihilator_check(const KMember& m, int k_max, const AnalyticSeries& C);

struct MomentReport {
    double C = 0.0;
    std::vector<double> beta;          // β_0..β_kmax by recursion
    double closed_form_error = 0.0;    // max relative vs Beta(k+1, C+1)
    double quadrature_error = 0.0;     // max relative vs tanh-sinh, k <= 64
    double recursion_error = 0.0;      // max |β_{k+1}/β_k - (k+1)/(k+C+2)|
    std::vector<double> ratio;         // β_k k^{C+1} / Γ(C+1)
};

MomentReport moments_beta(double C, int k_max);

struct GramReport {
    Eigen::MatrixXcd G;
    double min_eigenvalue = 0.0;
    double hermitian_error = 0.0;
};

// Fourier coefficients ∫ w ζ^{-n} dm for |n| <= band, level part in closed
// form, bump part by FFT.
std::vector<cplx> weight_fourier(const BoundaryWeight& w, int band);

GramReport d_space_gram(const DualSequence& dual, const BoundaryWeight& w, int d);

// Projects (f, f) onto the diagonal monomials of degree <= d through the
// Gram matrix; the right-hand side uses adaptive quadrature on E. Returns
// max |c_k - f_k|.
double h2_embedding_residual(const DualSequence& dual, const BoundaryWeight& w, const AnalyticSeries& f, int d);

}  // namespace bcct
