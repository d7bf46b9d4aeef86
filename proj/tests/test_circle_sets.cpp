#include "doctest.h"

#include <random>

#include "bcct/circle_sets.hpp"
#include "bcct/errors.hpp"
#include "oracles.hpp"

using namespace bcct;

namespace {

Arc turns(double a, double b) { return Arc::from_endpoints(two_pi * a, two_pi * b); }

std::vector<std::pair<double, double>> spans(const BeurlingCarlesonSet& E) {
    std::vector<std::pair<double, double>> v;
    for (const auto& g : E.gaps) v.emplace_back(g.start, g.span());
    return v;
}

}  // namespace

TEST_CASE("single half-circle gap") {
    const auto E = validate_set({turns(0.25, 0.75)});
    CHECK(E.measure == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(std::abs(E.entropy - 0.5 * std::log(2.0)) < 1e-15);
    CHECK(std::abs(E.entropy - 0.346574) < 1e-6);
}

TEST_CASE("dyadic gap lengths: entropy by direct summation") {
    for (int m : {2, 5, 10, 20}) {
        std::vector<Arc> gaps;
        std::vector<double> lengths;
        double pos = 0.0;
        for (int k = 2; k <= m; ++k) {
            const double l = std::ldexp(1.0, -k);
            gaps.push_back(turns(pos, pos + l));
            lengths.push_back(l);
            pos += l + 1e-3;
        }
        const auto E = validate_set(gaps);
        CHECK(std::abs(E.entropy - oracle::entropy(lengths)) < 1e-14);
        double closed = 0.0;
        for (int k = 2; k <= m; ++k) closed += std::ldexp(1.0, -k) * k * std::log(2.0);
        CHECK(std::abs(E.entropy - closed) < 1e-14);
    }
}

TEST_CASE("overlapping or touching gaps are rejected") {
    CHECK_THROWS_AS(validate_set({turns(0.1, 0.4), turns(0.3, 0.6)}), OverlapError);
    CHECK_THROWS_AS(validate_set({turns(0.1, 0.4), turns(0.4, 0.6)}), OverlapError);
    CHECK_THROWS_AS(validate_set({turns(0.8, 1.1), turns(0.05, 0.2)}), OverlapError);
    CHECK_THROWS_AS(validate_set({}), Error);
}

TEST_CASE("tail certificate") {
    CHECK_NOTHROW(validate_set({turns(0.1, 0.2)}, TailCertificate{0.01, 1.0}));
    CHECK_THROWS_AS(validate_set({turns(0.1, 0.2)}, TailCertificate{2.0, 1.0}), EntropyDivergence);
}

TEST_CASE("entropy is rotation invariant") {
    const auto E = validate_set({turns(0.05, 0.2), turns(0.4, 0.45), turns(0.7, 0.95)});
    for (double phi : {0.3, 1.7, 4.0, 6.0}) {
        const auto R = rotate(E, phi);
        CHECK(std::abs(R.entropy - E.entropy) < 1e-12);
        CHECK(std::abs(R.measure - E.measure) < 1e-12);
    }
}

TEST_CASE("Whitney arcs of a gap of length 0.3") {
    const auto E = validate_set({turns(0.1, 0.4)});
    const auto W = whitney_decompose(E, 4);
    for (const auto& a : W.arcs) {
        const double expect = 0.3 / (3.0 * std::ldexp(1.0, std::abs(a.rank)));
        CHECK(std::abs(a.arc.length - expect) < 1e-15);
        if (a.rank == 0) {
            CHECK(std::abs(a.arc.length - 0.1) < 1e-15);
            CHECK(std::abs(a.arc.mid_angle() - E.gaps[0].mid_angle()) < 1e-14);
        }
        if (std::abs(a.rank) == 1) CHECK(std::abs(a.arc.length - 0.05) < 1e-15);
        if (std::abs(a.rank) == 2) CHECK(std::abs(a.arc.length - 0.025) < 1e-15);
        CHECK(std::abs(a.radius - (1.0 + a.arc.length)) < 1e-15);
        CHECK(std::abs(std::abs(a.midpoint) - 1.0) < 1e-15);
    }
    CHECK(W.arcs.size() == 9);
}

TEST_CASE("Whitney distance and tiling against brute-force distance") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        const double a = u(rng) * 0.4, l1 = 0.05 + 0.2 * u(rng), l2 = 0.05 + 0.2 * u(rng);
        const auto E = validate_set({turns(a, a + l1), turns(a + l1 + 0.05, a + l1 + 0.05 + l2)});
        const int kmax = 1 + trial % 12;
        const auto W = whitney_decompose(E, kmax);
        CHECK(W.arcs.size() == E.gaps.size() * static_cast<std::size_t>(2 * kmax + 1));
        std::vector<double> covered(E.gaps.size(), 0.0);
        for (const auto& w : W.arcs) {
            // the nearest point of E to an arc is an endpoint of the arc
            const double d = std::min(oracle::distance(w.arc.start, spans(E)), oracle::distance(w.arc.end, spans(E)));
            CHECK(std::abs(d - w.arc.length) < 1e-12);
            covered[static_cast<std::size_t>(w.parent)] += w.arc.length;
        }
        for (const auto& r : W.residuals) {
            CHECK(std::abs(r.length - E.gaps[static_cast<std::size_t>(E.gap_index(r.mid_angle()))].length /
                                          (3.0 * std::ldexp(1.0, kmax))) < 1e-14);
            covered[static_cast<std::size_t>(E.gap_index(r.mid_angle()))] += r.length;
        }
        for (std::size_t i = 0; i < covered.size(); ++i) CHECK(std::abs(covered[i] - E.gaps[i].length) < 1e-12);
    }
}

TEST_CASE("k_max = 0 keeps the middle third only") {
    const auto E = validate_set({turns(0.1, 0.4), turns(0.6, 0.7)});
    const auto W = whitney_decompose(E, 0);
    REQUIRE(W.arcs.size() == 2);
    for (const auto& a : W.arcs) {
        CHECK(a.rank == 0);
        CHECK(std::abs(a.arc.length - E.gaps[static_cast<std::size_t>(a.parent)].length / 3.0) < 1e-15);
    }
}

TEST_CASE("tail-sum lambdas on a geometric sequence") {
    std::vector<double> c;
    for (int j = 1; j <= 60; ++j) c.push_back(std::ldexp(1.0, -j));
    const auto lam = tail_sum_lambdas(c);
    for (int j = 1; j <= 30; ++j) {
        const double expect = std::max(1.0, std::pow(2.0, (j - 1) / 2.0));
        CHECK(std::abs(lam[static_cast<std::size_t>(j - 1)] / expect - 1.0) < 1e-8);
    }
    for (std::size_t j = 1; j < lam.size(); ++j) CHECK(lam[j] >= lam[j - 1]);
}

TEST_CASE("constant lambda rule and the weighted-sum bound") {
    const auto E = validate_set({turns(16.0 / 256, 48.0 / 256), turns(96.0 / 256, 128.0 / 256),
                                 turns(176.0 / 256, 224.0 / 256)});
    const auto W = whitney_decompose(E, 12);
    const auto con = assign_lambdas(W.arcs, LambdaRule::constant);
    long double sc = 0.0L, sl = 0.0L;
    for (const auto& a : con) {
        CHECK(a.lambda == 1.0);
        sc += a.arc.length * std::log(1.0L / a.arc.length);
    }
    CHECK(std::abs(lambda_weighted_sum(con) - static_cast<double>(sc)) < 1e-13);

    const auto tail = assign_lambdas(W.arcs, LambdaRule::tail_sum);
    for (const auto& a : tail) sl += a.lambda * a.arc.length * std::log(1.0L / a.arc.length);
    const double bound = 2.0 * std::sqrt(static_cast<double>(sc)) + static_cast<double>(sc);
    CHECK(static_cast<double>(sl) <= bound);
    CHECK(std::abs(lambda_sum_bound(tail) - bound) < 1e-12);

    // monotone along decreasing c
    auto sorted = tail;
    std::stable_sort(sorted.begin(), sorted.end(), [](const WhitneyArc& x, const WhitneyArc& y) { return x.weight() > y.weight(); });
    for (std::size_t j = 1; j < sorted.size(); ++j) CHECK(sorted[j].lambda >= sorted[j - 1].lambda * (1.0 - 1e-12));
}

TEST_CASE("degenerate arcs are rejected by assign_lambdas") {
    WhitneyArc a;
    a.arc = Arc::from_start_length(0.0, 1.0);
    CHECK_THROWS_AS(assign_lambdas({a}, LambdaRule::tail_sum), DegenerateArc);
}

TEST_CASE("distance to the set") {
    const auto E = validate_set({turns(0.2, 0.5), turns(0.7, 0.8)});
    CHECK(std::abs(dist_to_set(two_pi * 0.35, E) - 0.15) < 1e-15);
    CHECK(std::abs(dist_to_set(two_pi * 0.75, E) - 0.05) < 1e-15);
    CHECK(dist_to_set(two_pi * 0.6, E) == 0.0);
    CHECK(dist_to_set(two_pi * 0.95, E) == 0.0);
    const auto W = whitney_decompose(E, 10);
    for (const auto& a : W.arcs) {
        const double d = dist_to_set(a.arc.mid_angle(), E);
        CHECK(std::abs(d - oracle::distance(a.arc.mid_angle(), spans(E))) < 1e-15);
        CHECK(d >= a.arc.length * (1.0 - 1e-12));
        CHECK(d <= 1.5 * a.arc.length * (1.0 + 1e-12));
    }
}
