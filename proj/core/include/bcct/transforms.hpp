#pragma once

#include <memory>
#include <string>
#include <vector>

#include "bcct/boundary_calculus.hpp"
#include "bcct/cutoff.hpp"
#include "bcct/factors.hpp"

namespace bcct {

enum class Family { K, K1, K2 };

const char* family_name(Family f);

struct FamilyIngredients {
    std::shared_ptr<const CutoffFunction> g;   // g_E for K and K2, g_F for K1
    std::shared_ptr<const OuterFunction> W;    // K and K2
    std::shared_ptr<const InnerFunction> theta;  // K1 and K2
};

// Everything a family needs on one grid: s = base · conj(p(ζ)).
//   K:  base = conj(ζ g W)
//   K1: base = θ conj(ζ g_F)
//   K2: base = θ conj(ζ g_E W)
class FamilyGrid {
public:
    FamilyGrid(Family family, FamilyIngredients ingredients, int log2_size,
               std::size_t theta_degree = 16384);

    Family family() const { return family_; }
    int log2_size() const { return log2_; }
    std::size_t size() const { return base_.size(); }
    const BeurlingCarlesonSet& set() const { return set_; }  // E, or F for K1
    const FamilyIngredients& ingredients() const { return ing_; }
    const std::vector<cplx>& base() const { return base_; }
    const std::vector<double>& indicator() const { return indicator_; }  // 1_E quadrature weights
    const std::vector<cplx>& theta() const { return theta_; }            // empty for K
    const AnalyticSeries& theta_series() const { return theta_series_; }

private:
    Family family_;
    FamilyIngredients ing_;
    int log2_;
    BeurlingCarlesonSet set_;
    std::vector<cplx> base_;
    std::vector<double> indicator_;
    std::vector<cplx> theta_;
    AnalyticSeries theta_series_;
};

struct KMember {
    Family family = Family::K;
    AnalyticSeries p;
    std::shared_ptr<const FamilyGrid> grid;
    std::vector<cplx> s;
};

KMember build_member(std::shared_ptr<const FamilyGrid> grid, const AnalyticSeries& p);
KMember build_member(Family family, const AnalyticSeries& p, const FamilyIngredients& ingredients,
                     int log2_size);
// Same grid, samples replaced (negative controls).
KMember with_samples(const KMember& m, std::vector<cplx> s);

enum class Region { E, complement, circle };

// Non-negative Fourier coefficients 0..band-1 of s·1_region.
AnalyticSeries cauchy_coefficients(const KMember& m, Region region, std::size_t band);

struct DecayFit {
    double slope = 0.0;
    std::size_t lo = 0, hi = 0;
};

// Least-squares slope of log env_n against log n at 33 log-spaced n in
// [lo, hi], env_n = max_{n <= k <= hi} |S_k|.
DecayFit fit_decay(const AnalyticSeries& S, std::size_t lo, std::size_t hi);

struct TransformOptions {
    std::size_t fit_lo = 64;
    std::size_t fit_hi = 1024;
    std::size_t band = 4096;
};

struct TransformResult {
    AnalyticSeries series;  // S_n of s·1_E
    DecayFit decay_fit;
    double norm = 0.0;      // l² norm of the kept coefficients
};

// Family K only, E ≠ T (PreconditionError otherwise). ResolutionError when
// the fit window reaches beyond N/16.
TransformResult smooth_transform(const KMember& m, const TransformOptions& options = {});

struct FlipReport {
    double discrepancy = 0.0;  // max |C_E + C_c| / max |C_E| over the points
    double max_abs = 0.0;
    int points = 0;
};

// E side from the analytic coefficients of s·1_E (Horner), complement side
// by direct trapezoid quadrature of s·1_{T∖E}, at `points` lattice points of
// radius <= r_max.
FlipReport flip_check(const KMember& m, int points = 64, double r_max = 0.9);

// max_n |(q(L) C_{s1_E})_n - (C_{q(conj ζ) s 1_E})_n| / max_n |S_n| over
// the band.
double backshift_identity(const KMember& m, int k, std::size_t band = 4096);
double backshift_polynomial(const KMember& m, const AnalyticSeries& q, std::size_t band = 4096);

struct OrthogonalityReport {
    double grid_residual = 0.0;         // max_k |<θ z^k, C_s>| on the grid
    double coefficient_residual = 0.0;  // same pairing from Taylor coefficients of θ
    double scale = 0.0;                 // ‖C_s‖_2
    double relative = 0.0;              // grid_residual / scale
    // sqrt(2 a Δt / π) summed over atoms where s does not vanish: size of
    // the error from sampling the atom's oscillation on a uniform grid
    double atom_cell_estimate = 0.0;
    int max_k = 0;
};

// The coefficient route uses the grid's cached Taylor series of θ.
OrthogonalityReport model_space_orthogonality(const KMember& m, int max_k);

struct SplitResult {
    AnalyticSeries u1;  // C_{s 1_{T∖E}}
    AnalyticSeries u2;  // C_{s 1_E}
    double additivity = 0.0;  // max |u1 + u2 - C_s| / max |C_s|
    DecayFit u1_decay;
};

SplitResult split_transform(const KMember& m, const TransformOptions& options = {});

}  // namespace bcct
