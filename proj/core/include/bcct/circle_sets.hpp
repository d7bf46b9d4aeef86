#pragma once

#include <complex>
#include <optional>
#include <vector>

namespace bcct {

using cplx = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double two_pi = 6.283185307179586476925286766559005768;
// Angular slack used for endpoint comparisons (radians).
inline constexpr double angle_slack = 1e-14;

// Reduce an angle to [0, 2π).
double wrap_angle(double t);

// Open arc of the unit circle. `start` is in [0, 2π); `end` may exceed 2π
// when the arc wraps through angle 0. `length` is normalized (m(T) = 1).
struct Arc {
    double start = 0.0;
    double end = 0.0;
    double length = 0.0;

    // Counter-clockwise arc from `start` to `end`. A span of exactly 2π is
    // allowed and describes the complement of a single point.
    static Arc from_endpoints(double start, double end);
    // Arc with a prescribed normalized length; the length field is kept
    // exactly as given rather than recomputed from the endpoints.
    static Arc from_start_length(double start, double length);

    double span() const { return end - start; }
    double mid_angle() const { return wrap_angle(0.5 * (start + end)); }
    // Position of t measured counter-clockwise from `start`, in [0, 2π).
    double offset(double t) const { return wrap_angle(t - start); }
    bool contains(double t) const;         // open arc
    bool contains_closed(double t) const;  // closure
};

// Certified bound on the entropy tail of an infinite gap family that was
// truncated to the listed gaps.
struct TailCertificate {
    double bound = 0.0;
    double threshold = 1.0;
};

// Closed E ⊂ T stored through its complementary open arcs.
struct BeurlingCarlesonSet {
    std::vector<Arc> gaps;  // sorted by start angle
    double measure = 1.0;   // m(E)
    double entropy = 0.0;   // Σ |A_n| log(1/|A_n|)

    static BeurlingCarlesonSet full_circle();

    bool is_full() const { return gaps.empty(); }
    bool contains(double t) const { return gap_index(t) < 0; }
    int gap_index(double t) const;
    // Closed arcs of E between consecutive gaps, as open Arc records
    // (start = end of previous gap). Empty when E has measure zero.
    std::vector<Arc> components() const;
};

BeurlingCarlesonSet validate_set(std::vector<Arc> gaps,
                                 std::optional<TailCertificate> tail = std::nullopt);

// All gaps rotated by phi.
BeurlingCarlesonSet rotate(const BeurlingCarlesonSet& E, double phi);

// Normalized arc-length distance from the point e^{it} to E.
double dist_to_set(double t, const BeurlingCarlesonSet& E);

struct WhitneyArc {
    int parent = 0;      // index of the gap A_n
    int rank = 0;        // k
    Arc arc;             // B_j
    cplx midpoint;       // b_j
    double radius = 1.0; // r_j = 1 + |B_j|
    double lambda = 1.0;

    // c_j = |B_j| log(1/|B_j|)
    double weight() const;
};

struct WhitneyDecomposition {
    std::vector<WhitneyArc> arcs;
    std::vector<Arc> residuals;  // two end segments per gap
    int k_max = 0;
};

WhitneyDecomposition whitney_decompose(const BeurlingCarlesonSet& E, int k_max);

enum class LambdaRule { tail_sum, constant };

// λ_j = max(1, T_j^{-1/2}) where T_j is the inclusive tail sum of c in the
// order given (callers pass c already sorted in decreasing order). Runs of
// equal c (relative 1e-12) share the tail sum of the run's first entry.
std::vector<double> tail_sum_lambdas(const std::vector<double>& c);

std::vector<WhitneyArc> assign_lambdas(std::vector<WhitneyArc> arcs, LambdaRule rule);

// Σ λ_j c_j and the bound 2·sqrt(Σ c_j) + Σ c_j that the tail-sum rule obeys.
double lambda_weighted_sum(const std::vector<WhitneyArc>& arcs);
double lambda_sum_bound(const std::vector<WhitneyArc>& arcs);

}  // namespace bcct
