#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bcct/boundary_calculus.hpp"
#include "bcct/circle_sets.hpp"

namespace bcct {

// log w gets amplitude·ψ((t - center)/half_width) added, with
// ψ(y) = exp(1 - 1/(1 - y²)) on |y| < 1. Angles in radians.
struct Bump {
    double center = 0.0;
    double half_width = 0.0;
    double amplitude = 0.0;
};

double bump_profile(double y);
// ∫_{-1}^{1} ψ(y) dy
double bump_profile_integral();

// Weight on E: constant level on each component of E times exp(bumps).
struct BoundaryWeight {
    BeurlingCarlesonSet support;
    std::vector<Arc> components;
    std::vector<double> levels;  // one per component
    std::vector<Bump> bumps;
    double log_integral = 0.0;   // ∫_E log w dm

    int component_index(double t) const;  // -1 off E
    double log_value(double t) const;     // -inf off E
    double value(double t) const;         // 0 off E
    // ∫_E w dm
    double integral() const;
    std::vector<double> samples(int log2_size) const;
};

inline constexpr double log_integral_floor = -1e3;

// One level broadcasts to every component. Throws WeightNotLogIntegrable
// for non-positive levels or a log-integral below the floor, and
// PreconditionError for bumps that leave their component.
BoundaryWeight make_weight(const BeurlingCarlesonSet& E, std::vector<double> levels,
                           std::vector<Bump> bumps = {});
// Pointwise product of two weights on the same support.
BoundaryWeight multiply(const BoundaryWeight& a, const BoundaryWeight& b);

// W = exp(∫_E (ζ + z)/(ζ - z) log w(ζ) dm(ζ)).
class OuterFunction {
public:
    explicit OuterFunction(BoundaryWeight w, int bump_log2 = 16);

    const BoundaryWeight& weight() const { return w_; }
    // |z| <= 1. On the circle the boundary values are used; at an endpoint
    // of E the singular logarithmic term is dropped.
    cplx log_value(cplx z) const;
    cplx value(cplx z) const { return std::exp(log_value(z)); }
    std::vector<cplx> boundary(int log2_size) const;
    AnalyticSeries log_series(std::size_t degree) const;
    AnalyticSeries series(std::size_t degree) const;
    // d^k/dt^k log W(e^{it}), k = 0..order, for e^{it} off the closure of E.
    std::vector<cplx> log_derivatives(double t, int order) const;

private:
    cplx level_part(cplx z) const;
    cplx level_part_boundary(double t) const;

    BoundaryWeight w_;
    std::vector<cplx> bump_coef_;  // b̂_n, n >= 0, of the bump part of log w
};

struct OuterBoundary {
    std::vector<cplx> samples;
    AnalyticSeries series;
};

OuterBoundary outer_from_weight(const BoundaryWeight& w, int log2_size, std::size_t degree);

enum class MeasurePart { C, K };

struct Atom {
    double angle = 0.0;
    double mass = 0.0;
    MeasurePart part = MeasurePart::C;
};

struct SingularMeasure {
    std::vector<Atom> atoms;
    std::optional<BeurlingCarlesonSet> carrier_C;

    double total_mass() const;
};

// Checks masses and that C atoms sit in carrier_C when one is given.
SingularMeasure make_measure(std::vector<Atom> atoms,
                             std::optional<BeurlingCarlesonSet> carrier_C = std::nullopt);

// |z| < 1, otherwise OutsideDomain.
cplx inner_singular_eval(const SingularMeasure& nu, cplx z);

// θ = B·S_ν with B(z) = Π (z - a)/(1 - conj(a) z).
struct InnerFunction {
    std::vector<cplx> zeros;
    SingularMeasure singular;

    // |z| <= 1; on the circle, atoms map to 0.
    cplx value(cplx z) const;
    std::vector<cplx> boundary(int log2_size) const;
    AnalyticSeries series(std::size_t degree) const;
    // d^k/dt^k log θ(e^{it}), off atoms.
    std::vector<cplx> log_derivatives(double t, int order) const;
    bool trivial() const { return zeros.empty() && singular.atoms.empty(); }
};

struct DerivativeLevel {
    double distance = 0.0;  // normalized distance of the level's points
    double value = 0.0;     // max |∂^m f| · d^{2m} at that level
    double cumulative = 0.0;
};

struct DerivativeBound {
    int m = 0;
    std::vector<DerivativeLevel> levels;
    double constant = 0.0;   // cumulative max over all levels
    double stability = 0.0;  // cumulative ratio over the last 4 levels
    bool stable = false;     // stability <= 4
};

struct DerivativeReport {
    std::string method;
    std::vector<DerivativeBound> bounds;
    bool all_stable = false;
};

// Points approach each endpoint of every gap from inside the gap, at
// distances |A|/2 · 2^{-j}, j = 1..levels.
DerivativeReport certify_W_derivatives(const OuterFunction& W, const std::vector<int>& orders,
                                       int levels = 12);
// Points approach each atom (and each unimodular zero) from both sides at
// distances 2^{-j}/8; F is only used to check the singular support.
DerivativeReport certify_theta_derivatives(const InnerFunction& theta,
                                           const BeurlingCarlesonSet& F,
                                           const std::vector<int>& orders, int levels = 12);

}  // namespace bcct
