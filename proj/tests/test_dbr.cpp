#include "doctest.h"

#include <random>

#include "bcct/dbr.hpp"
#include "bcct/errors.hpp"
#include "oracles.hpp"

using namespace bcct;

namespace {

Arc turns(double a, double b) { return Arc::from_endpoints(two_pi * a, two_pi * b); }

const BeurlingCarlesonSet& two_gap() {
    static const auto E = validate_set({turns(32.0 / 256, 96.0 / 256), turns(160.0 / 256, 192.0 / 256)});
    return E;
}

SymbolB divisor_fixture() {
    InnerFunction th;
    th.zeros = {cplx(0.5, 0.0)};
    th.singular = make_measure({{0.0, 0.1, MeasurePart::C}});
    return SymbolB(th, make_weight(two_gap(), {0.5, 0.3}));
}

// Gram matrix of k_b - k_bn assembled from the kernel formula
std::vector<cplx> difference_gram(const SymbolB& b, const SymbolB& bn, const std::vector<cplx>& pts) {
    const std::size_t n = pts.size();
    std::vector<cplx> bv(n), bnv(n);
    for (std::size_t i = 0; i < n; ++i) bv[i] = b.value(pts[i]), bnv[i] = bn.value(pts[i]);
    std::vector<cplx> G(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const cplx sz = 1.0 / (1.0 - std::conj(pts[j]) * pts[i]);
            G[i * n + j] = (std::conj(bnv[j]) * bnv[i] - std::conj(bv[j]) * bv[i]) * sz;
        }
    return G;
}

}  // namespace

TEST_CASE("kernel evaluation") {
    const HbKernel zero([](cplx) { return cplx{}; });
    const HbKernel ident([](cplx z) { return z; });
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const cplx l = std::polar(0.95 * std::sqrt(u(rng)), two_pi * u(rng));
        const cplx z = std::polar(0.95 * std::sqrt(u(rng)), two_pi * u(rng));
        CHECK(std::abs(kernel_eval(zero, l, z) - 1.0 / (1.0 - std::conj(l) * z)) < 1e-15);
        CHECK(std::abs(kernel_eval(ident, 0.0, z) - 1.0) < 1e-15);
    }
    const auto b = divisor_fixture();
    const auto kb = HbKernel::of(b);
    for (int i = 0; i < 200; ++i) {
        const cplx l = std::polar(0.99 * std::sqrt(u(rng)), two_pi * u(rng));
        const cplx z = std::polar(0.99 * std::sqrt(u(rng)), two_pi * u(rng));
        const double diag = kernel_eval(kb, l, l).real();
        CHECK(diag >= 0.0);
        CHECK(std::abs(diag - (1.0 - std::norm(b.value(l))) / (1.0 - std::norm(l))) < 1e-12 * (1.0 + diag));
        CHECK(std::abs(kernel_eval(kb, l, z) - std::conj(kernel_eval(kb, z, l))) < 1e-12);
    }
    CHECK_THROWS_AS(kernel_eval(kb, 1.0, 0.0), OutsideDomain);
}

TEST_CASE("symbol certificate") {
    const auto b = divisor_fixture();
    const auto c = certify_symbol(b, 12);
    CHECK(c.sup_norm <= 1.0 + 1e-12);
    CHECK(c.pythagoras_error <= 1e-10);
    const auto bd = b.boundary(10);
    const auto d = SymbolB::delta(bd);
    for (std::size_t m = 0; m < bd.size(); ++m)
        if (d[m] > 0.0) CHECK(std::abs(d[m] * d[m] + std::norm(bd[m]) - 1.0) < 1e-12);
}

TEST_CASE("kernel difference PSD for the divisor recipe") {
    const auto b = divisor_fixture();
    const auto pts = psd_lattice(32, 0.9);
    REQUIRE(pts.size() == 32);
    for (double delta : {0.02, 0.005}) {
        const auto bn = divisor_symbol(b, delta, {0});
        CHECK(divisor_ratio(b, bn) <= 1.0 + 1e-8);
        const auto r = kernel_difference_psd(b, bn, pts);
        CHECK(r.min_eigenvalue >= -1e-10);
        const auto G = difference_gram(b, bn, pts);
        CHECK(oracle::cholesky_ok(G, 32, 1e-10));
        // diagonal: ‖k_{b_n}(λ, ·)‖² <= ‖k_b(λ, ·)‖²
        const auto kb = HbKernel::of(b), kn = HbKernel::of(bn);
        for (const auto& l : pts) CHECK(kernel_eval(kn, l, l).real() <= kernel_eval(kb, l, l).real() + 1e-12);
    }
    const auto same = kernel_difference_psd(b, b, pts);
    CHECK(std::abs(same.min_eigenvalue) <= 1e-14);
}

TEST_CASE("swapped divisor pair is rejected and indefinite") {
    const auto b = divisor_fixture();
    const auto bn = divisor_symbol(b, 0.01, {0});
    const auto pts = psd_lattice(32, 0.9);
    CHECK_THROWS_AS(kernel_difference_psd(bn, b, pts), NotADivisor);
    const auto r = kernel_difference_gram(HbKernel::of(bn), HbKernel::of(b), pts);
    CHECK(r.min_eigenvalue < -1e-10);
    CHECK_FALSE(oracle::cholesky_ok(difference_gram(bn, b, pts), 32, 1e-10));
}

TEST_CASE("shrunk weights keep the levels") {
    const auto w = make_weight(two_gap(), {0.5, 0.3});
    const auto s = shrink_weight(w, 0.01);
    REQUIRE(s.components.size() == w.components.size());
    for (std::size_t i = 0; i < s.components.size(); ++i) {
        CHECK(s.levels[i] == w.levels[i]);
        CHECK(std::abs(s.components[i].length - (w.components[i].length - 0.02)) < 1e-14);
    }
}

TEST_CASE("b_n converges to b as E_n grows") {
    const auto b = divisor_fixture();
    std::vector<SymbolB> seq;
    for (int n = 1; n <= 5; ++n) seq.push_back(divisor_symbol(b, 0.02 * std::ldexp(1.0, -n)));
    const auto prox = convergence_proxy(b, seq, psd_lattice(20, 0.9));
    for (std::size_t i = 1; i < prox.size(); ++i) CHECK(prox[i] < prox[i - 1]);
}

TEST_CASE("J relation") {
    InnerFunction bl;
    bl.zeros = {cplx(0.5, 0.0)};
    const SymbolB inner(bl, make_weight(BeurlingCarlesonSet::full_circle(), {1.0}));
    const auto [fi, gi] = kernel_pair(inner, cplx(0.3, 0.0), 14);
    CHECK(j_relation_check(inner, fi, gi).projection_residual <= 1e-8);

    const auto Es = validate_set({turns(144.0 / 256, 216.0 / 256), turns(264.0 / 256, 368.0 / 256)});
    const SymbolB bs(bl, make_weight(Es, {1.0}, {{two_pi * 128.0 / 256, two_pi * 16.0 / 256, -0.7},
                                                 {two_pi * 240.0 / 256, two_pi * 24.0 / 256, -1.2}}));
    const auto [f, g] = kernel_pair(bs, cplx(0.3, 0.0), 16);
    const auto j = j_relation_check(bs, f, g);
    CHECK(j.pairing_residual <= 1e-8);
    CHECK(j.projection_residual <= 1e-8);
    // perturbing g breaks the relation
    auto g2 = g;
    for (auto& v : g2) v *= 1.1;
    CHECK(j_relation_check(bs, f, g2).projection_residual > 1e-4);

    const std::vector<cplx> z(f.size());
    const auto r0 = j_relation_check(bs, z, z);
    CHECK(r0.pairing_residual == 0.0);
    CHECK(r0.projection_residual == 0.0);
}

TEST_CASE("L²(w) functional norm for a constant weight") {
    const auto w = make_weight(BeurlingCarlesonSet::full_circle(), {0.25});
    std::mt19937_64 rng(4);
    std::normal_distribution<double> nd;
    std::vector<cplx> v(9);
    for (auto& x : v) x = cplx(nd(rng), nd(rng));
    const AnalyticSeries V(v);
    // G = w I, so the norm is ‖v‖ / sqrt(w)
    CHECK(std::abs(l2w_functional_norm(w, V, 8) - V.l2_norm() / 0.5) < 1e-12 * V.l2_norm());
}

TEST_CASE("permanence functionals at small scale") {
    FamilyIngredients k2;
    CutoffOptions o;
    o.k_max = 8;
    k2.g = std::make_shared<const CutoffFunction>(two_gap(), o);
    k2.W = std::make_shared<const OuterFunction>(
        make_weight(two_gap(), {1.0}, {{two_pi * 128.0 / 256, two_pi * 16.0 / 256, -0.7}}));
    auto th = std::make_shared<InnerFunction>();
    th->singular = make_measure({{0.0, 0.1, MeasurePart::K}});
    k2.theta = th;
    const auto grid = std::make_shared<const FamilyGrid>(Family::K2, k2, 16);
    PermanenceOptions po;
    po.degrees = {4, 8};
    po.orthogonality_k = 8;
    po.n_max = 2;
    const auto r = permanence_functional_check(grid, po);
    REQUIRE(r.c1.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(r.c1[i] > 0.0);
        CHECK(r.c2[i] > 0.0);
        // truncated dual norms stay below the full-band constants
        CHECK(r.c1[i] <= r.b1 * (1.0 + 1e-9));
        CHECK(r.c2[i] <= r.b2 * (1.0 + 1e-9));
    }
    CHECK(r.c1[1] >= r.c1[0] * (1.0 - 1e-12));
    CHECK(r.alpha.increasing);
}
