#include "doctest.h"

#include <random>

#include "bcct/errors.hpp"
#include "bcct/factors.hpp"
#include "oracles.hpp"

using namespace bcct;

namespace {

Arc turns(double a, double b) { return Arc::from_endpoints(two_pi * a, two_pi * b); }

const BeurlingCarlesonSet& two_gap() {
    static const auto E = validate_set({turns(32.0 / 256, 96.0 / 256), turns(160.0 / 256, 192.0 / 256)});
    return E;
}

BoundaryWeight smooth_weight() {
    return make_weight(two_gap(), {1.0}, {{two_pi * 128.0 / 256, two_pi * 16.0 / 256, -0.7},
                                          {two_pi * 240.0 / 256, two_pi * 24.0 / 256, -1.2}});
}

// log|W| on the whole circle: log w on E, 0 off E
std::function<double(double)> log_modulus(const BoundaryWeight& w) {
    return [w](double t) { return w.support.contains(t) ? w.log_value(t) : 0.0; };
}

cplx random_disk(std::mt19937_64& rng, double r_max) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return std::polar(r_max * std::sqrt(u(rng)), two_pi * u(rng));
}

}  // namespace

TEST_CASE("outer function of constants") {
    const OuterFunction W(make_weight(BeurlingCarlesonSet::full_circle(), {0.5}));
    for (cplx z : {cplx(0.0), cplx(0.3, 0.2), cplx(-0.7, 0.5)}) CHECK(std::abs(W.value(z) - 0.5) < 1e-14);
    const OuterFunction H(make_weight(validate_set({Arc::from_endpoints(pi, two_pi)}), {0.25}));
    CHECK(std::abs(std::abs(H.value(0.0)) - std::exp(0.5 * std::log(0.25))) < 1e-14);
}

TEST_CASE("smooth outer function against direct Herglotz quadrature") {
    const auto w = smooth_weight();
    const OuterFunction W(w);
    std::mt19937_64 rng(1);
    for (int i = 0; i < 20; ++i) {
        const cplx z = random_disk(rng, 0.8);
        const cplx ref = oracle::outer(log_modulus(w), z, 1 << 14);
        CHECK(std::abs(W.value(z) - ref) < 1e-10 * std::abs(ref));
    }
}

TEST_CASE("piecewise-constant outer function against refined quadrature") {
    // log w jumps at ∂E, so the midpoint rule converges like 1/N; two
    // refinements bracket the error
    const auto w = make_weight(two_gap(), {0.5, 0.3});
    const OuterFunction W(w);
    std::mt19937_64 rng(2);
    for (int i = 0; i < 10; ++i) {
        const cplx z = random_disk(rng, 0.7);
        const cplx r1 = oracle::outer(log_modulus(w), z, 1 << 16);
        const cplx r2 = oracle::outer(log_modulus(w), z, 1 << 17);
        CHECK(std::abs(W.value(z) - r2) <= 4.0 * std::abs(r2 - r1) + 1e-12);
    }
}

TEST_CASE("outer boundary values: modulus, analyticity, |W(0)|") {
    const auto w = smooth_weight();
    const OuterFunction W(w);
    const int log2 = 12;
    const auto b = W.boundary(log2);
    const std::size_t N = b.size();
    for (std::size_t m = 0; m < N; m += 7) {
        const double t = two_pi * double(m) / double(N);
        if (dist_to_set(t, two_gap()) < 2.0 / double(N) && !two_gap().contains(t)) continue;
        const double target = two_gap().contains(t) ? w.value(t) : 1.0;
        CHECK(std::abs(std::abs(b[m]) - target) < 1e-8 * target);
    }
    for (long n = -30; n < 0; ++n) CHECK(std::abs(oracle::naive_coefficient(b, n)) < 1e-8);

    // ∫_E log w by midpoint rule
    long double li = 0.0L;
    const std::size_t M = 1 << 16;
    for (std::size_t m = 0; m < M; ++m) li += log_modulus(w)(two_pi * (double(m) + 0.5) / double(M));
    li /= M;
    CHECK(std::abs(w.log_integral - static_cast<double>(li)) < 1e-12);
    CHECK(std::abs(std::abs(W.value(0.0)) - std::exp(w.log_integral)) < 1e-12);
}

TEST_CASE("random smooth weights give analytic boundary values") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 3; ++trial) {
        std::vector<Bump> bumps;
        for (const auto& comp : two_gap().components()) {
            const double hw = comp.span() / 5.0;
            bumps.push_back({wrap_angle(comp.start + hw + (comp.span() - 2.0 * hw) * u(rng)), hw, -1.5 + 2.0 * u(rng)});
        }
        const OuterFunction W(make_weight(two_gap(), {1.0}, bumps));
        const auto b = W.boundary(12);
        for (long n = -20; n < 0; ++n) CHECK(std::abs(oracle::naive_coefficient(b, n)) < 1e-8);
    }
}

TEST_CASE("outer functions multiply") {
    const auto w1 = smooth_weight();
    const auto w2 = make_weight(two_gap(), {0.8, 0.6});
    const OuterFunction A(w1), B(w2), AB(multiply(w1, w2));
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        const cplx z = random_disk(rng, 0.95);
        CHECK(std::abs(AB.value(z) - A.value(z) * B.value(z)) < 1e-6 * std::abs(A.value(z) * B.value(z)));
    }
}

TEST_CASE("Taylor series of W") {
    const OuterFunction W(smooth_weight());
    const auto s = W.series(400);
    std::mt19937_64 rng(4);
    for (int i = 0; i < 20; ++i) {
        const cplx z = random_disk(rng, 0.8);
        CHECK(std::abs(evaluate_in_disk(s, z) - W.value(z)) < 1e-10);
    }
}

TEST_CASE("weights must be log-integrable") {
    CHECK_THROWS_AS(make_weight(two_gap(), {0.0}), WeightNotLogIntegrable);
    CHECK_THROWS_AS(make_weight(two_gap(), {-1.0}), WeightNotLogIntegrable);
    CHECK_THROWS_AS(make_weight(two_gap(), {std::exp(-5000.0)}), WeightNotLogIntegrable);
}

TEST_CASE("W derivative certificates") {
    const OuterFunction W(smooth_weight());
    const auto d = certify_W_derivatives(W, {0, 1});
    REQUIRE(d.bounds.size() == 2);
    CHECK(std::abs(d.bounds[0].constant - 1.0) < 1e-12);
    CHECK(d.bounds[1].stable);
    CHECK(d.bounds[1].stability <= 4.0);
    const OuterFunction one(make_weight(two_gap(), {1.0}));
    for (const auto& b : certify_W_derivatives(one, {1, 2}).bounds) CHECK(b.constant < 1e-10);
}

TEST_CASE("singular inner function of atoms") {
    const auto nu = make_measure({{0.0, 0.3, MeasurePart::K}, {2.0, 0.2, MeasurePart::C}});
    CHECK(std::abs(inner_singular_eval(nu, 0.0) - std::exp(-0.5)) < 1e-15);
    CHECK(std::abs(nu.total_mass() - 0.5) < 1e-15);
    const auto one = make_measure({{0.0, 0.4, MeasurePart::K}});
    for (double x : {-0.9, -0.2, 0.0, 0.5, 0.9}) {
        const double e = std::exp(-0.4 * (1.0 + x) / (1.0 - x));
        CHECK(std::abs(inner_singular_eval(one, x) - e) < 1e-14 * e + 1e-300);
    }
    std::mt19937_64 rng(6);
    const auto a = make_measure({{0.0, 0.3, MeasurePart::K}});
    const auto b = make_measure({{2.0, 0.2, MeasurePart::C}});
    for (int i = 0; i < 200; ++i) {
        const cplx z = random_disk(rng, 0.999);
        const cplx v = inner_singular_eval(nu, z);
        CHECK(std::abs(v) <= 1.0 + 1e-14);
        CHECK(std::abs(v - oracle::singular_inner({{0.0, 0.3}, {2.0, 0.2}}, z)) < 1e-13);
        CHECK(std::abs(v - inner_singular_eval(a, z) * inner_singular_eval(b, z)) < 1e-10);
    }
    for (double phi : {1.0, 3.0, 4.5}) CHECK(std::abs(inner_singular_eval(nu, std::polar(1.0 - 1e-6, phi))) >= 1.0 - 1e-3);
    CHECK_THROWS_AS(inner_singular_eval(nu, 1.0), OutsideDomain);
}

TEST_CASE("measure validation") {
    CHECK_THROWS_AS(make_measure({{0.0, -0.1, MeasurePart::K}}), Error);
    const auto F = validate_set({Arc::from_endpoints(0.0, two_pi)});
    CHECK_NOTHROW(make_measure({{0.0, 0.1, MeasurePart::C}}, F));
    CHECK_THROWS_AS(make_measure({{1.0, 0.1, MeasurePart::C}}, F), Error);
}

TEST_CASE("Blaschke factor and inner product") {
    InnerFunction th;
    th.zeros = {cplx(0.9, 0.0)};
    for (const auto& v : th.boundary(10)) CHECK(std::abs(std::abs(v) - 1.0) < 1e-12);
    const cplx z(0.2, -0.4);
    CHECK(std::abs(th.value(z) - (z - 0.9) / (1.0 - 0.9 * z)) < 1e-15);

    InnerFunction both;
    both.zeros = {cplx(0.5, 0.0)};
    both.singular = make_measure({{0.0, 0.1, MeasurePart::C}});
    const auto s = both.series(256);
    CHECK(std::abs(evaluate_in_disk(s, z) - both.value(z)) < 1e-12);

    // b = θ W keeps |W| on T away from atoms
    const OuterFunction W(smooth_weight());
    for (double t : {0.7, 2.0, 3.3, 5.5}) {
        const cplx p = std::polar(1.0, t);
        CHECK(std::abs(std::abs(both.value(p) * W.value(p)) - std::abs(W.value(p))) < 1e-12);
    }
}

TEST_CASE("θ derivative certificates") {
    const auto F = validate_set({Arc::from_endpoints(0.0, two_pi)});
    InnerFunction triv;
    CHECK(certify_theta_derivatives(triv, F, {1}).bounds.front().constant == 0.0);
    InnerFunction one;
    one.singular = make_measure({{0.0, 0.1, MeasurePart::C}});
    const auto r = certify_theta_derivatives(one, F, {1, 2});
    for (const auto& b : r.bounds) CHECK(b.stable);
    // the derivative of log θ at a point matches finite differences
    const double t = 1.3, dt = 1e-5;
    const auto d = one.log_derivatives(t, 1);
    const cplx fd = (std::log(one.value(std::polar(1.0, t + dt))) - std::log(one.value(std::polar(1.0, t - dt)))) / (2 * dt);
    CHECK(std::abs(d[1] - fd) < 1e-6 * std::abs(fd));
}
