#pragma once

#include <string>
#include <vector>

#include "bcct/circle_sets.hpp"

namespace bcct {

struct CutoffOptions {
    int k_max = 16;
    LambdaRule rule = LambdaRule::tail_sum;
    // λ is assigned over all ranks |k| <= horizon so that truncations with
    // different k_max share the same multipliers.
    int horizon = 64;
};

enum class GExtension { analytic, zero_on_set };

// g = exp(h), h(z) = -Σ_j λ_j b_j c_j / (r_j b_j - z), c_j = |B_j| log(1/|B_j|).
class CutoffFunction {
public:
    CutoffFunction(const BeurlingCarlesonSet& E, const CutoffOptions& options = {});
    // Explicit system; `omitted` only feeds the tail bounds.
    static CutoffFunction from_arcs(std::vector<WhitneyArc> retained,
                                    std::vector<WhitneyArc> omitted = {});

    const std::vector<WhitneyArc>& whitney() const { return arcs_; }
    const std::vector<WhitneyArc>& omitted() const { return omitted_; }
    const BeurlingCarlesonSet& set() const { return set_; }
    bool has_set() const { return has_set_; }
    int k_max() const { return k_max_; }

    // Σ_omitted λ c / (r - 1): the crude bound on |h_full - h| over the disk.
    double tail_bound() const { return tail_bound_; }
    // Σ_omitted λ c
    double tail_mass() const { return tail_mass_; }
    // Σ_omitted λ c / |r b - z|
    double tail_bound_at(cplx z) const;

    cplx h(cplx z) const;
    cplx g(cplx z) const;
    // φ(t) = h(e^{it}) and its t-derivatives of order 0..order.
    std::vector<cplx> phase_derivatives(double t, int order) const;
    // G^{(m)}(t) / G(t) for m = 0..order, where G(t) = g(e^{it}).
    std::vector<cplx> log_derivative_ratios(double t, int order) const;

    std::vector<cplx> boundary_g(int log2_size) const;

private:
    CutoffFunction() = default;
    void build_poles();

    std::vector<WhitneyArc> arcs_;
    std::vector<WhitneyArc> omitted_;
    std::vector<cplx> pole_;  // r_j b_j
    std::vector<cplx> coef_;  // λ_j b_j c_j
    BeurlingCarlesonSet set_;
    bool has_set_ = false;
    int k_max_ = 0;
    double tail_bound_ = 0.0;
    double tail_mass_ = 0.0;
};

// |z| <= 1 required.
cplx eval_h(const CutoffFunction& c, cplx z);
// With zero_on_set, boundary points of E map to 0 (continuous extension
// from the gaps); otherwise exp(h) is returned everywhere.
cplx eval_g(const CutoffFunction& c, cplx z, GExtension ext = GExtension::analytic);

struct DecayEntry {
    int N = 0;
    int m = 0;
    std::vector<double> log10_rho;
    bool monotone = false;
};

struct DecayReport {
    std::vector<int> ranks;          // Whitney ranks used as dyadic levels
    std::vector<double> distance;    // largest |B| at each rank
    std::vector<DecayEntry> entries;
    int samples_per_arc = 9;
    std::string method;
    bool all_monotone = false;
};

// ρ(d) = max |G^{(m)}| / d^N over points sampled on the Whitney arcs of one
// rank. Uses the `levels` ranks just below k_max.
DecayReport certify_decay(const CutoffFunction& c, const std::vector<int>& orders_N,
                          const std::vector<int>& orders_m, int levels = 6,
                          int samples_per_arc = 9);

// Spectral m-th derivative of G restricted to one gap, with cosine tapers
// across the residual end segments. Throws ResolutionError when the arcs
// up to `finest_rank` get fewer than 8 grid points.
std::vector<cplx> windowed_spectral_derivative(const CutoffFunction& c, int gap, int m,
                                               int log2_size, int finest_rank);

struct ExponentFit {
    std::vector<int> ranks;
    std::vector<double> exponent;  // min over arcs of that rank
    double c = 0.0;                // min over ranks
    double spread = 0.0;           // max / min over ranks
};

// Fits c in |g(b_j)| <= |B_j|^{c λ_j}.
ExponentFit fit_cutoff_exponent(const CutoffFunction& c);

}  // namespace bcct
