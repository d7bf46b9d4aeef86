#include "doctest.h"

#include <random>

#include "bcct/errors.hpp"
#include "bcct/spaces.hpp"
#include "oracles.hpp"

using namespace bcct;

namespace {

Arc turns(double a, double b) { return Arc::from_endpoints(two_pi * a, two_pi * b); }

const BeurlingCarlesonSet& two_gap() {
    static const auto E = validate_set({turns(32.0 / 256, 96.0 / 256), turns(160.0 / 256, 192.0 / 256)});
    return E;
}

AnalyticSeries geometric(std::size_t n) {
    std::vector<cplx> c(n);
    for (std::size_t k = 0; k < n; ++k) c[k] = std::ldexp(1.0, -static_cast<int>(k));
    return AnalyticSeries(c);
}

std::vector<double> abs_of(const AnalyticSeries& S) {
    std::vector<double> v;
    for (const auto& c : S.coeffs) v.push_back(std::abs(c));
    return v;
}

// ∫ w ζ^{-n} dm for a weight that is constant on each component of E
cplx piecewise_fourier(const BoundaryWeight& w, int n) {
    cplx acc = 0.0;
    for (std::size_t i = 0; i < w.components.size(); ++i) {
        const auto& c = w.components[i];
        if (n == 0) {
            acc += w.levels[i] * c.span() / two_pi;
        } else {
            const cplx i_n(0.0, -double(n));
            acc += w.levels[i] * (std::exp(i_n * c.end) - std::exp(i_n * c.start)) / (i_n * two_pi);
        }
    }
    return acc;
}

}  // namespace

TEST_CASE("rapid weight on S_k = 2^-k") {
    const auto S = geometric(64);
    const auto a = rapid_weight(S, 4);
    const auto K = oracle::tail_indices(abs_of(S), 4);
    REQUIRE(a.K.size() == K.size());
    for (std::size_t N = 0; N < K.size(); ++N) CHECK(a.K[N] == K[N]);
    double weighted = 0.0, norm2 = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (k > 0) CHECK(a.alpha[k] >= a.alpha[k - 1]);
        if (k >= 2) CHECK(a.alpha[k] <= std::pow(double(k), std::sqrt(double(k))) * (1.0 + 1e-15));
        weighted += a.alpha[k] * std::norm(S[k]);
        norm2 += std::norm(S[k]);
    }
    CHECK(weighted <= norm2 + 1.0);
    CHECK(a.increasing);
}

TEST_CASE("rapid weight of a single coefficient") {
    std::vector<cplx> c(40);
    c[0] = 1.0;
    const auto a = rapid_weight(AnalyticSeries(c), 4);
    for (int N = 1; N <= 4; ++N) CHECK(a.K[static_cast<std::size_t>(N)] == 1);
    for (std::size_t k = 2; k < a.size(); ++k) {
        CHECK(a.alpha[k] >= a.alpha[k - 1]);
        const double kk = double(k);
        CHECK(std::abs(a.alpha[k] - std::min(std::pow(kk, 4.0), std::pow(kk, std::sqrt(kk)))) <= 1e-12 * a.alpha[k]);
    }
}

TEST_CASE("rapid weight runs out of range") {
    std::vector<cplx> c(12);
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = 1.0 / double(k + 1);
    CHECK_THROWS_AS(rapid_weight(AnalyticSeries(c), 6), RangeExhausted);
}

TEST_CASE("sequence flags") {
    auto a = make_sequence({1.0, 2.0, 3.0, 3.0, 5.0});
    CHECK(a.increasing);
    auto b = make_sequence({1.0, 2.0, 1.5});
    CHECK_FALSE(b.increasing);
    const auto d = DualSequence::of(a);
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(d.reciprocal[k] * a.alpha[k] - 1.0) < 1e-15);
}

TEST_CASE("X(α) norm and pairing") {
    const auto a = make_sequence({1.0, 2.0, 5.0, 9.0, 20.0});
    for (int k = 0; k < 5; ++k) {
        std::vector<cplx> c(5);
        c[static_cast<std::size_t>(k)] = 1.0;
        CHECK(std::abs(x_norm(AnalyticSeries(c), a) - std::sqrt(a.alpha[static_cast<std::size_t>(k)])) < 1e-15);
    }
    const AnalyticSeries f({1.0, cplx(0, 2), 0.0, 0.0, 0.0}), g({0.0, 0.0, 3.0, 0.0, cplx(1, 1)});
    AnalyticSeries fg({1.0, cplx(0, 2), 3.0, 0.0, cplx(1, 1)});
    CHECK(std::abs(std::pow(x_norm(fg, a), 2) - std::pow(x_norm(f, a), 2) - std::pow(x_norm(g, a), 2)) < 1e-12);
    const auto ones = make_sequence(std::vector<double>(5, 1.0));
    CHECK(std::abs(x_norm(fg, ones) - fg.l2_norm()) < 1e-15);
    CHECK_THROWS_AS(x_norm(AnalyticSeries(std::vector<cplx>(6, 1.0)), a), LengthMismatch);

    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) {
            std::vector<cplx> x(4), y(4);
            x[static_cast<std::size_t>(j)] = 1.0;
            y[static_cast<std::size_t>(k)] = 1.0;
            CHECK(pairing(AnalyticSeries(x), AnalyticSeries(y)) == cplx(j == k ? 1.0 : 0.0));
        }
}

TEST_CASE("pairing: Cauchy-Schwarz and agreement with the boundary integral") {
    const auto a = rapid_weight(geometric(64), 4);
    const auto d = DualSequence::of(a);
    std::mt19937_64 rng(1);
    std::normal_distribution<double> nd;
    for (int t = 0; t < 50; ++t) {
        std::vector<cplx> f(a.size()), g(a.size());
        for (auto& v : f) v = cplx(nd(rng), nd(rng));
        for (auto& v : g) v = cplx(nd(rng), nd(rng));
        const AnalyticSeries F(f), G(g);
        CHECK(std::abs(pairing(F, G)) <= x_norm(F, a) * x_norm(G, d) * (1.0 + 1e-12));
        // ∫ f conj(g) dm by a naive sum over 128 points
        const auto fs = oracle::sample(128, [&](double s) { return evaluate_polynomial(F, std::polar(1.0, s)); });
        const auto gs = oracle::sample(128, [&](double s) { return evaluate_polynomial(G, std::polar(1.0, s)); });
        cplx direct = 0.0;
        for (std::size_t m = 0; m < 128; ++m) direct += fs[m] * std::conj(gs[m]);
        direct /= 128.0;
        CHECK(std::abs(direct - pairing(F, G)) < 1e-10 * std::abs(pairing(F, G)) + 1e-10);
        CHECK(std::abs(grid_pairing(F, G, 8) - pairing(F, G)) < 1e-10 * (1.0 + std::abs(pairing(F, G))));
    }
}

TEST_CASE("Toeplitz truncations") {
    const auto a = rapid_weight(geometric(80), 4);
    const auto L = toeplitz_truncation(AnalyticSeries({0.0, 1.0}), 8, ToeplitzMode::co_analytic);
    for (int i = 0; i <= 8; ++i)
        for (int j = 0; j <= 8; ++j) CHECK(L(i, j) == cplx(j == i + 1 ? 1.0 : 0.0));
    CHECK(toeplitz_norm(AnalyticSeries({0.0, 1.0}), 64, ToeplitzMode::co_analytic, a) <= 1.0 + 1e-12);

    const cplx c(0.6, -0.8);
    const auto C = toeplitz_truncation(AnalyticSeries({c}), 5, ToeplitzMode::multiplier);
    CHECK((C - c * Eigen::MatrixXcd::Identity(6, 6)).norm() == 0.0);
    CHECK(std::abs(toeplitz_norm(AnalyticSeries({c}), 5, ToeplitzMode::multiplier, a) - 1.0) < 1e-12);

    std::mt19937_64 rng(2);
    std::normal_distribution<double> nd;
    std::vector<double> incr(a.size());
    double acc = 1.0;
    for (auto& v : incr) v = (acc += std::abs(nd(rng)));
    const auto r = make_sequence(incr);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<cplx> h(65);
        for (auto& v : h) v = cplx(nd(rng), nd(rng));
        auto H = fejer_means(AnalyticSeries(h), 64);
        const double sup = circle_sup_norm(H);
        // sup-norm by dense sampling never exceeds the refined maximum
        double dense = 0.0;
        for (const auto& v : oracle::sample(1 << 14, [&](double s) { return evaluate_polynomial(H, std::polar(1.0, s)); }))
            dense = std::max(dense, std::abs(v));
        CHECK(dense <= sup * (1.0 + 1e-12));
        CHECK(sup <= dense * (1.0 + 1e-4));
        for (auto& v : H.coeffs) v /= sup;
        for (auto mode : {ToeplitzMode::co_analytic, ToeplitzMode::multiplier}) {
            const auto M = toeplitz_truncation(H, 64, mode);
            const auto& w = mode == ToeplitzMode::co_analytic ? r.alpha : DualSequence::of(r).reciprocal;
            std::vector<cplx> D(65 * 65);
            for (int i = 0; i <= 64; ++i)
                for (int j = 0; j <= 64; ++j)
                    D[static_cast<std::size_t>(i * 65 + j)] =
                        std::sqrt(w[static_cast<std::size_t>(i)] / w[static_cast<std::size_t>(j)]) * M(i, j);
            const double ref = oracle::spectral_norm(D, 65, 65);
            const double lib = toeplitz_norm(H, 64, mode, r);
            CHECK(std::abs(lib - ref) < 1e-8 * ref);
            CHECK(lib <= 1.0 + 1e-8);
        }
    }
}

TEST_CASE("moments of the area measure") {
    const auto m1 = moments_beta(1.0, 1024);
    const auto m0 = moments_beta(0.0, 1024);
    for (int k = 0; k <= 1024; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        CHECK(std::abs(m1.beta[kk] * (k + 1.0) * (k + 2.0) - 1.0) < 1e-12);
        CHECK(std::abs(m0.beta[kk] * (k + 1.0) - 1.0) < 1e-12);
    }
    for (double C : {0.0, 1.0, 2.5, -0.5}) {
        const auto m = moments_beta(C, 1024);
        for (int k : {0, 1, 10, 100, 1000}) CHECK(std::abs(m.beta[static_cast<std::size_t>(k)] / oracle::beta(k, C) - 1.0) < 1e-12);
        CHECK(m.closed_form_error < 1e-12);
        CHECK(m.recursion_error < 1e-12);
        // β_k k^{C+1} / Γ(C+1) approaches 1
        CHECK(std::abs(m.ratio[1024] - 1.0) < std::abs(m.ratio[64] - 1.0));
    }
}

TEST_CASE("D-space Gram matrix") {
    DualSequence ones;
    ones.reciprocal.assign(9, 1.0);
    const auto g = d_space_gram(ones, make_weight(BeurlingCarlesonSet::full_circle(), {1.0}), 8);
    CHECK((g.G - 2.0 * Eigen::MatrixXcd::Identity(9, 9)).cwiseAbs().maxCoeff() < 1e-14);

    const auto w = make_weight(two_gap(), {0.5, 0.3});
    const auto a = rapid_weight(geometric(64), 4);
    const auto d = DualSequence::of(a);
    const auto G = d_space_gram(d, w, 16);
    std::vector<cplx> H(17 * 17);
    for (int j = 0; j <= 16; ++j)
        for (int k = 0; k <= 16; ++k) {
            // <z^j, z^k>: ∫ ζ^j conj(ζ^k) w dm = ŵ(k - j)
            const cplx expect = (j == k ? d.reciprocal[static_cast<std::size_t>(j)] : 0.0) + piecewise_fourier(w, k - j);
            CHECK(std::abs(G.G(j, k) - expect) < 1e-14);
            H[static_cast<std::size_t>(j * 17 + k)] = G.G(j, k);
        }
    CHECK(G.hermitian_error < 1e-14);
    CHECK(G.min_eigenvalue > 0.0);
    CHECK(oracle::cholesky_ok(H, 17, 0.0));
    CHECK_FALSE(oracle::cholesky_ok(H, 17, -1.01 * G.min_eigenvalue - 1e-300));
    CHECK(std::abs(weight_fourier(w, 0)[0] - w.integral()) < 1e-15);
}

TEST_CASE("H² embedding of the diagonal space") {
    const auto a = rapid_weight(geometric(64), 4);
    const auto w = make_weight(two_gap(), {1.0}, {{two_pi * 128.0 / 256, two_pi * 16.0 / 256, -0.7}});
    std::mt19937_64 rng(3);
    std::normal_distribution<double> nd;
    std::vector<cplx> f(7);
    for (auto& v : f) v = cplx(nd(rng), nd(rng));
    CHECK(h2_embedding_residual(DualSequence::of(a), w, AnalyticSeries(f), 12) <= 1e-8);
}

TEST_CASE("annihilating functionals") {
    FamilyIngredients ing;
    CutoffOptions o;
    o.k_max = 8;
    ing.g = std::make_shared<const CutoffFunction>(two_gap(), o);
    ing.W = std::make_shared<const OuterFunction>(make_weight(two_gap(), {0.5}));
    const auto grid = std::make_shared<const FamilyGrid>(Family::K, ing, 14);
    const auto m = build_member(grid, AnalyticSeries({1.0}));
    CHECK(annihilator_check(m, 0).residual <= 1e-8);
    CHECK(annihilator_check(m, 32).residual <= 1e-7);
    auto C = cauchy_coefficients(m, Region::E, grid->size() / 2);
    C.coeffs[1] += 1.0;
    CHECK(annihilator_check(m, 1, C).residual > 0.99);
}
