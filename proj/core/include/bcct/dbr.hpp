#pragma once

#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "bcct/factors.hpp"
#include "bcct/spaces.hpp"
#include "bcct/transforms.hpp"

namespace bcct {

// b = θ·u with |u| = w on E and 1 off E; needs w <= 1.
class SymbolB {
public:
    SymbolB(InnerFunction theta, BoundaryWeight w);

    const InnerFunction& theta() const { return theta_; }
    const BoundaryWeight& weight() const { return u_->weight(); }
    const OuterFunction& outer() const { return *u_; }
    const BeurlingCarlesonSet& E() const { return u_->weight().support; }

    cplx value(cplx z) const { return theta_.value(z) * u_->value(z); }
    std::vector<cplx> boundary(int log2_size) const;
    // sqrt(1 - |b|²), zero where 1 - |b|² < 1e-15
    static std::vector<double> delta(const std::vector<cplx>& b);

private:
    InnerFunction theta_;
    std::shared_ptr<const OuterFunction> u_;
};

struct SymbolCertificate {
    double sup_norm = 0.0;
    double pythagoras_error = 0.0;  // max |Δ² + |b|² - 1| where Δ > 0
    double log_delta_integral = 0.0;  // clipped at the floor
    bool floor_hit = false;           // extremality proxy
};

SymbolCertificate certify_symbol(const SymbolB& b, int log2_size, double floor = -1e3);

// k_b(λ, z) = (1 - conj(b(λ)) b(z)) / (1 - conj(λ) z)
class HbKernel {
public:
    explicit HbKernel(std::function<cplx(cplx)> b) : b_(std::move(b)) {}
    static HbKernel of(const SymbolB& b);

    cplx operator()(cplx lambda, cplx z) const;
    cplx b(cplx z) const { return b_(z); }

private:
    std::function<cplx(cplx)> b_;
};

// |λ|, |z| < 1, otherwise OutsideDomain.
cplx kernel_eval(const HbKernel& k, cplx lambda, cplx z);

// r_i = r_max sqrt((i + 1/2)/count), golden-angle spacing.
std::vector<cplx> psd_lattice(int count = 32, double r_max = 0.9);

// Weight restricted to E_δ: each component of E loses δ (normalized) at
// both ends; the levels stay.
BoundaryWeight shrink_weight(const BoundaryWeight& w, double delta);
// b_δ = θ' u_δ, θ' = θ without the listed atoms (and without its zeros
// when drop_zeros is set).
SymbolB divisor_symbol(const SymbolB& b, double delta, const std::vector<std::size_t>& drop_atoms = {},
                       bool drop_zeros = false);

// max |b / b_n| over `samples` lattice points with r <= 0.99 and `samples`
// boundary points away from atoms and from ∂E.
double divisor_ratio(const SymbolB& b, const SymbolB& bn, int samples = 1024);

struct PsdReport {
    double min_eigenvalue = 0.0;
    double hermitian_error = 0.0;
    double divisor_ratio = 0.0;
    int points = 0;
};

// Gram matrix of k_b - k_{b_n}; NotADivisor when |b/b_n| > 1 + 1e-8.
PsdReport kernel_difference_psd(const SymbolB& b, const SymbolB& bn, const std::vector<cplx>& points);
// Without the divisor check (negative controls).
PsdReport kernel_difference_gram(const HbKernel& kb, const HbKernel& kbn, const std::vector<cplx>& points);

// max_z |b_n(z) - b(z)| over the points, for each b_n in order.
std::vector<double> convergence_proxy(const SymbolB& b, const std::vector<SymbolB>& bn,
                                      const std::vector<cplx>& points);

struct JRelationReport {
    double pairing_residual = 0.0;     // max_k |∫ f conj(b ζ^k) + ∫ g conj(Δ ζ^k)|, direct sums
    double projection_residual = 0.0;  // ‖P_+(conj(b) f) + P_+(Δ g)‖ over the band, FFT
    int k_max = 0;
};

// f, g are boundary samples on a common grid.
JRelationReport j_relation_check(const SymbolB& b, const std::vector<cplx>& f, const std::vector<cplx>& g,
                                 int k_max = 32, std::size_t band = 4096);
// f = k_b(λ, ·) and g = -conj(b(λ)) Δ / (1 - conj(λ) ζ) on the boundary.
std::pair<std::vector<cplx>, std::vector<cplx>> kernel_pair(const SymbolB& b, cplx lambda, int log2_size);

struct PermanenceOptions {
    std::vector<int> degrees{8, 16, 32};
    int n_max = 4;
    std::size_t band = 4096;
    int orthogonality_k = 32;
    // zero order of the basis polynomials at atoms lying on E
    int atom_vanishing = 3;
};

struct PermanenceReport {
    std::vector<int> degrees;
    std::vector<double> c1;  // u₁ functional against X(α⁻¹), per degree
    std::vector<double> c2;  // u₂ functional against L²(w dm), per degree
    double c1_ratio = 0.0;   // last / first
    double c2_ratio = 0.0;
    bool stable = false;     // both ratios <= 2
    // proof constants over the whole band: max_j ‖u₁‖_{X(α)} and
    // max_j ‖s/w‖_{L²(w 1_E)}; the per-degree constants stay below them
    double b1 = 0.0;
    double b2 = 0.0;
    double orthogonality = 0.0;           // max grid residual over the basis
    double orthogonality_relative = 0.0;  // same over ‖C_s‖
    WeightSequence alpha;
};

// Basis members p_j = q·z^j, j <= max degree, with q = Π (z - ζ_a)^m over
// atoms on E. α is the termwise minimum of rapid_weight over the u₁
// pieces unless a reference is given.
PermanenceReport permanence_functional_check(std::shared_ptr<const FamilyGrid> grid,
                                             const PermanenceOptions& options = {},
                                             const WeightSequence* reference_alpha = nullptr);

// sqrt(v* G⁻¹ v) with G the L²(w dm) Gram matrix of 1..z^d: the norm of
// f ↦ Σ f_k conj(v_k) on polynomials of degree <= d.
double l2w_functional_norm(const BoundaryWeight& w, const AnalyticSeries& v, int d);

}  // namespace bcct
