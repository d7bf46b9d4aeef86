#include "bcct/circle_sets.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "bcct/errors.hpp"

namespace bcct {

double wrap_angle(double t) {
    double r = std::fmod(t, two_pi);
    if (r < 0.0) r += two_pi;
    if (r >= two_pi) r -= two_pi;
    return r;
}

Arc Arc::from_endpoints(double start, double end) {
    if (!std::isfinite(start) || !std::isfinite(end))
        throw DegenerateArc("arc endpoints must be finite");
    double span = end - start;
    if (span <= 0.0) span = wrap_angle(span);
    if (span <= angle_slack || span > two_pi + angle_slack)
        throw DegenerateArc("arc span must lie in (0, 2π], got " + std::to_string(span));
    span = std::min(span, two_pi);
    Arc a;
    a.start = wrap_angle(start);
    a.end = a.start + span;
    a.length = span / two_pi;
    return a;
}

Arc Arc::from_start_length(double start, double length) {
    if (!(length > 0.0) || length > 1.0) throw DegenerateArc("normalized arc length must lie in (0, 1]");
    Arc a;
    a.start = wrap_angle(start);
    a.end = a.start + two_pi * length;
    a.length = length;
    return a;
}

bool Arc::contains(double t) const {
    const double u = offset(t);
    return u > angle_slack && u < span() - angle_slack;
}

bool Arc::contains_closed(double t) const {
    const double u = offset(t);
    return u <= span() + angle_slack || u >= two_pi - angle_slack;
}

BeurlingCarlesonSet BeurlingCarlesonSet::full_circle() {
    BeurlingCarlesonSet E;
    E.measure = 1.0;
    E.entropy = 0.0;
    return E;
}

int BeurlingCarlesonSet::gap_index(double t) const {
    if (gaps.empty()) return -1;
    const double u = wrap_angle(t);
    // last gap whose start is <= u; the wrapping candidate is the final gap
    auto it = std::upper_bound(gaps.begin(), gaps.end(), u,
                               [](double v, const Arc& a) { return v < a.start; });
    if (it != gaps.begin()) {
        const auto idx = static_cast<int>(std::distance(gaps.begin(), it)) - 1;
        if (gaps[idx].contains(u)) return idx;
    }
    const int last = static_cast<int>(gaps.size()) - 1;
    if (gaps[last].contains(u)) return last;
    return -1;
}

std::vector<Arc> BeurlingCarlesonSet::components() const {
    std::vector<Arc> out;
    if (gaps.empty()) {
        out.push_back(Arc::from_endpoints(0.0, two_pi));
        return out;
    }
    const std::size_t n = gaps.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double a = gaps[i].end;
        double b = gaps[(i + 1) % n].start;
        while (b <= a) b += two_pi;
        const double span = b - a;
        if (span <= angle_slack || span >= two_pi - angle_slack) continue;
        out.push_back(Arc::from_endpoints(a, b));
    }
    return out;
}

BeurlingCarlesonSet validate_set(std::vector<Arc> gaps, std::optional<TailCertificate> tail) {
    if (gaps.empty()) throw PreconditionError("validate_set needs a non-empty gap list");
    for (auto& g : gaps) g = Arc::from_endpoints(g.start, g.end);
    std::sort(gaps.begin(), gaps.end(), [](const Arc& a, const Arc& b) { return a.start < b.start; });

    const std::size_t n = gaps.size();
    if (n > 1) {
        for (std::size_t i = 0; i < n; ++i) {
            double next = gaps[(i + 1) % n].start;
            if (i + 1 == n) next += two_pi;
            // closures must be disjoint, so shared endpoints are rejected too
            if (!(gaps[i].end + angle_slack < next))
                throw OverlapError("gaps " + std::to_string(i) + " and " +
                                   std::to_string((i + 1) % n) + " intersect or touch");
        }
    }

    BeurlingCarlesonSet E;
    E.gaps = std::move(gaps);
    double total = 0.0, entropy = 0.0;
    for (const auto& g : E.gaps) {
        total += g.length;
        if (g.length < 1.0) entropy += g.length * std::log(1.0 / g.length);
    }
    if (total > 1.0 + 1e-12) throw OverlapError("gap lengths exceed the circle");
    E.measure = std::max(0.0, 1.0 - total);
    E.entropy = entropy;

    if (tail) {
        if (!std::isfinite(tail->bound) || tail->bound < 0.0 || tail->bound > tail->threshold)
            throw EntropyDivergence("certified entropy tail " + std::to_string(tail->bound) +
                                    " exceeds threshold " + std::to_string(tail->threshold));
        E.entropy += tail->bound;
    }
    return E;
}

BeurlingCarlesonSet rotate(const BeurlingCarlesonSet& E, double phi) {
    if (E.is_full()) return E;
    std::vector<Arc> gaps;
    gaps.reserve(E.gaps.size());
    for (const auto& g : E.gaps) gaps.push_back(Arc::from_endpoints(g.start + phi, g.end + phi));
    return validate_set(std::move(gaps));
}

double dist_to_set(double t, const BeurlingCarlesonSet& E) {
    const int i = E.gap_index(t);
    if (i < 0) return 0.0;
    const Arc& g = E.gaps[i];
    const double u = g.offset(t);
    return std::min(u, g.span() - u) / two_pi;
}

double WhitneyArc::weight() const { return arc.length * std::log(1.0 / arc.length); }

WhitneyDecomposition whitney_decompose(const BeurlingCarlesonSet& E, int k_max) {
    if (k_max < 0) throw PreconditionError("k_max must be non-negative");
    if (E.is_full()) throw PreconditionError("Whitney decomposition needs at least one gap");

    WhitneyDecomposition W;
    W.k_max = k_max;
    W.arcs.reserve(E.gaps.size() * (2 * static_cast<std::size_t>(k_max) + 1));
    for (std::size_t n = 0; n < E.gaps.size(); ++n) {
        const Arc& gap = E.gaps[n];
        const double L = gap.length;
        for (int k = -k_max; k <= k_max; ++k) {
            const double len = L / (3.0 * std::ldexp(1.0, std::abs(k)));
            // offset of the arc's start from the gap start, normalized
            double off;
            if (k == 0) off = L / 3.0;
            else if (k > 0) off = L - 2.0 * len;
            else off = len;
            WhitneyArc w;
            w.parent = static_cast<int>(n);
            w.rank = k;
            w.arc = Arc::from_start_length(gap.start + two_pi * off, len);
            w.midpoint = std::polar(1.0, w.arc.mid_angle());
            w.radius = 1.0 + len;
            W.arcs.push_back(w);
        }
        const double res = L / (3.0 * std::ldexp(1.0, k_max));
        W.residuals.push_back(Arc::from_start_length(gap.start, res));
        W.residuals.push_back(Arc::from_start_length(gap.start + two_pi * (L - res), res));
    }
    return W;
}

std::vector<double> tail_sum_lambdas(const std::vector<double>& c) {
    const std::size_t n = c.size();
    std::vector<double> lambda(n);
    std::vector<long double> tail(n + 1, 0.0L);
    for (std::size_t i = n; i-- > 0;) tail[i] = tail[i + 1] + c[i];
    // Equal weights share the tail sum taken at the first member of their
    // run, so the assignment does not depend on how ties were ordered.
    std::size_t head = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0 && std::abs(c[i] - c[head]) > 1e-12 * std::abs(c[head])) head = i;
        const double T = static_cast<double>(tail[head]);
        lambda[i] = T > 0.0 ? std::max(1.0, 1.0 / std::sqrt(T)) : 1.0;
    }
    return lambda;
}

std::vector<WhitneyArc> assign_lambdas(std::vector<WhitneyArc> arcs, LambdaRule rule) {
    if (arcs.empty()) throw PreconditionError("assign_lambdas needs a non-empty arc list");
    for (const auto& a : arcs)
        if (a.arc.length >= 1.0) throw DegenerateArc("Whitney arc with |B| >= 1");

    if (rule == LambdaRule::constant) {
        for (auto& a : arcs) a.lambda = 1.0;
        return arcs;
    }
    std::vector<std::size_t> order(arcs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return arcs[i].weight() > arcs[j].weight();
    });
    std::vector<double> c(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) c[i] = arcs[order[i]].weight();
    const auto lambda = tail_sum_lambdas(c);
    for (std::size_t i = 0; i < order.size(); ++i) arcs[order[i]].lambda = lambda[i];
    return arcs;
}

double lambda_weighted_sum(const std::vector<WhitneyArc>& arcs) {
    long double s = 0.0L;
    for (const auto& a : arcs) s += static_cast<long double>(a.lambda) * a.weight();
    return static_cast<double>(s);
}

double lambda_sum_bound(const std::vector<WhitneyArc>& arcs) {
    long double s = 0.0L;
    for (const auto& a : arcs) s += a.weight();
    return 2.0 * std::sqrt(static_cast<double>(s)) + static_cast<double>(s);
}

}  // namespace bcct
