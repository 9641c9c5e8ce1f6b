#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "djet/bergman.hpp"

using namespace djet;

namespace {

std::mt19937_64 eng(4507);
double unit() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }
cplx rbox() { return {2.0 * unit() - 1.0, 2.0 * unit() - 1.0}; }

NDifferential rseries(int order, int deg) {
    std::vector<cplx> c(static_cast<size_t>(deg) + 1);
    for (cplx& v : c) v = rbox();
    return NDifferential::power_series(order, std::move(c));
}

}  // namespace

TEST_CASE("weighted_norm: anchors, monotonicity, input contracts") {
    CHECK(weighted_norm({}, 0.7) == 0.0);
    // single fiber entry: pi * sq_norm / Gamma(2 + alpha)
    for (double alpha : {-0.5, 0.0, 1.0, 2.5}) {
        double v = weighted_norm({{0, 3.0}}, alpha);
        CHECK(v == doctest::Approx(M_PI * 3.0 / std::exp(std::lgamma(2.0 + alpha)))
                       .epsilon(1e-13));
    }
    std::vector<LadderEntry> entries{{1, 1.0}, {2, 0.5}, {5, 2.0}};
    double prev = weighted_norm(entries, -0.5);
    for (double alpha : {0.0, 1.0, 2.0}) {
        double cur = weighted_norm(entries, alpha);
        CHECK(cur < prev);  // fiber weights decay as alpha grows
        prev = cur;
    }
    CHECK_THROWS_AS(weighted_norm(entries, -1.0), std::domain_error);
    CHECK_THROWS_AS(weighted_norm({{2, 1.0}, {2, 1.0}}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(weighted_norm({{0, -1.0}}, 0.0), std::invalid_argument);
}

TEST_CASE("i_image_norm: closed form, scaling, ladder consistency") {
    // c(1, 0) == 1, so the unit seed maps to norm exactly pi
    CHECK(std::abs(i_image_norm(1, 0.0, 1.0) - M_PI) < 1e-15);
    double one = i_image_norm(3, 0.7, 1.0);
    CHECK(i_image_norm(3, 0.7, 2.0) == doctest::Approx(2.0 * one).epsilon(1e-15));
    CHECK_THROWS_AS(i_image_norm(3, 0.7, -1.0), std::invalid_argument);

    // the ladder route reproduces the closed form: entries (N+m, norm_ratio)
    for (int N : {1, 2, 4}) {
        for (double alpha : {-0.5, 0.0, 2.0}) {
            long M = 4000;
            std::vector<LadderEntry> lad;
            lad.reserve(static_cast<size_t>(M) + 1);
            for (long m = 0; m <= M; ++m) lad.push_back({N + m, norm_ratio(N, m)});
            double partial = weighted_norm(lad, alpha);
            double tail = M_PI * moment_sum(N, alpha, M).tail_estimate;
            double closed = i_image_norm(N, alpha, 1.0);
            CHECK(std::abs(partial + tail - closed) < 1e-7 * closed);
        }
    }
}

TEST_CASE("hardy_partial: harmonic numbers at N=1 and logarithmic growth") {
    CHECK(hardy_partial(1, 0) == doctest::Approx(M_PI).epsilon(1e-15));
    long M = 5000;
    double h = 0.0;
    for (long k = 1; k <= M + 1; ++k) h += 1.0 / static_cast<double>(k);
    CHECK(hardy_partial(1, M) == doctest::Approx(M_PI * h).epsilon(1e-12));

    // growth rate K_N ln 2 per doubling, K_N = Gamma(2N)/Gamma(N)^2
    for (int N : {2, 3}) {
        double kn = std::exp(std::lgamma(2.0 * N) - 2.0 * std::lgamma(N));
        double gap = hardy_partial(N, 8192) - hardy_partial(N, 4096);
        CHECK(gap > 0.5 * M_PI * kn * std::log(2.0));
        CHECK(gap < 1.5 * M_PI * kn * std::log(2.0));
    }
    // strictly increasing partial sums (each term positive): no finite limit
    CHECK(hardy_partial(2, 101) > hardy_partial(2, 100));
    CHECK_THROWS_AS(hardy_partial(0, 10), std::domain_error);
    CHECK_THROWS_AS(hardy_partial(1, -1), std::domain_error);
}

TEST_CASE("surface_norm: exact disk integrals and refinement stability") {
    SurfaceQuadrature q = SurfaceQuadrature::disk(0.5, 48, 64);
    NDifferential zero = NDifferential::power_series(2, {0.0});
    CHECK(surface_norm(zero, q) == 0.0);

    // order 0, psi == 1: the hyperbolic area 4 pi rho^2 / (1 - rho^2)
    NDifferential one0 = NDifferential::power_series(0, {1.0});
    CHECK(surface_norm(one0, q) ==
          doctest::Approx(4.0 * M_PI * 0.25 / 0.75).epsilon(1e-12));

    // order 1, psi == 1: the metric factors cancel to the constant 2
    NDifferential one1 = NDifferential::power_series(1, {1.0});
    CHECK(surface_norm(one1, q) == doctest::Approx(2.0 * M_PI * 0.25).epsilon(1e-12));

    NDifferential psi = rseries(2, 5);
    double a = surface_norm(psi, SurfaceQuadrature::disk(0.7, 64, 128));
    double b = surface_norm(psi, SurfaceQuadrature::disk(0.7, 96, 192));
    CHECK(std::abs(a - b) < 1e-6 * (1.0 + std::abs(b)));

    CHECK_THROWS_AS(SurfaceQuadrature::disk(1.0, 16, 32), std::domain_error);
    CHECK_THROWS_AS(SurfaceQuadrature::disk(0.5, 16, 3), std::domain_error);
    SurfaceQuadrature bad;
    bad.samples.push_back({DiskPoint(cplx(0.1, 0.0)), -1.0});
    CHECK_THROWS_AS(surface_norm(psi, bad), std::invalid_argument);
}

TEST_CASE("kernel_constant: anchor value and guards") {
    CHECK(kernel_constant(2, 0.0) ==
          doctest::Approx(1.0 / (4.0 * M_PI * M_PI)).epsilon(1e-15));
    // genus dependence: volume normalization pi (4g - 4)
    CHECK(kernel_constant(3, 0.0) == doctest::Approx(kernel_constant(2, 0.0) / 2.0)
                                         .epsilon(1e-15));
    CHECK(kernel_constant(2, 1.0) ==
          doctest::Approx(std::exp(std::lgamma(3.0)) / (4.0 * M_PI * M_PI)).epsilon(1e-14));
    CHECK_THROWS_AS(kernel_constant(1, 0.0), std::domain_error);
    CHECK_THROWS_AS(kernel_constant(2, -1.0), std::domain_error);
}

TEST_CASE("kernel_assemble: constant term, symmetry, positivity, truncation order") {
    KernelBasis empty{2, {}};
    PointPair p{DiskPoint(cplx(0.2, 0.1)), DiskPoint(cplx(-0.3, 0.25))};
    PointPair p2{DiskPoint(cplx(-0.1, -0.4)), DiskPoint(cplx(0.35, 0.0))};
    for (double alpha : {0.0, 0.7, 2.0}) {
        cplx k = kernel_assemble(empty, alpha, p, p2);
        CHECK(k.real() == kernel_constant(2, alpha));
        CHECK(k.imag() == 0.0);
    }

    KernelBasis basis{2,
                      {{rseries(1, 3), 2.0},
                       {rseries(2, 4), 1.5},
                       {rseries(3, 2), 3.0}}};
    // Hermitian symmetry in the two point pairs
    cplx k12 = kernel_assemble(basis, 0.5, p, p2);
    cplx k21 = kernel_assemble(basis, 0.5, p2, p);
    CHECK(std::abs(k12 - std::conj(k21)) < 1e-12 * (1.0 + std::abs(k12)));

    // diagonal values are real, positive, at least the constant term
    cplx kd = kernel_assemble(basis, 0.5, p, p);
    CHECK(std::abs(kd.imag()) < 1e-14 * kd.real());
    CHECK(kd.real() >= kernel_constant(2, 0.5));

    // adding a family never decreases the diagonal value
    KernelBasis partial{2, {basis.families[0]}};
    KernelBasis fuller{2, {basis.families[0], basis.families[1]}};
    double d1 = kernel_assemble(partial, 0.5, p, p).real();
    double d2 = kernel_assemble(fuller, 0.5, p, p).real();
    double d3 = kernel_assemble(basis, 0.5, p, p).real();
    CHECK(d1 >= kernel_constant(2, 0.5));
    CHECK(d2 >= d1);
    CHECK(d3 >= d2);

    KernelBasis bad{2, {{rseries(1, 2), 0.0}}};
    CHECK_THROWS_AS(kernel_assemble(bad, 0.5, p, p2), std::domain_error);
    KernelBasis badg{1, {}};
    CHECK_THROWS_AS(kernel_assemble(badg, 0.5, p, p2), std::domain_error);
}

TEST_CASE("family_gram: cross-order exact zeros, angular orthogonality, diagonal norms") {
    NDifferential m0 = NDifferential::power_series(1, {1.0});
    NDifferential m1 = NDifferential::power_series(1, {0.0, 1.0});
    NDifferential o2 = NDifferential::power_series(2, {0.5, 0.0, 1.0});
    KernelBasis basis{2, {{m0, 1.0}, {m1, 1.0}, {o2, 1.0}}};
    SurfaceQuadrature q = SurfaceQuadrature::disk(0.6, 48, 96);
    auto g = family_gram(basis, q);
    REQUIRE(g.size() == 3);
    REQUIRE(g[0].size() == 3);

    // different orders: exact zeros without quadrature
    CHECK(g[0][2] == cplx(0.0, 0.0));
    CHECK(g[2][0] == cplx(0.0, 0.0));
    CHECK(g[1][2] == cplx(0.0, 0.0));

    // same order, different monomial degree: the angular rule kills them
    CHECK(std::abs(g[0][1]) < 1e-13);
    CHECK(std::abs(g[1][0]) < 1e-13);

    // Hermitian with surface_norm on the diagonal
    CHECK(std::abs(g[0][1] - std::conj(g[1][0])) < 1e-15);
    CHECK(g[0][0].real() == doctest::Approx(surface_norm(m0, q)).epsilon(1e-13));
    CHECK(g[2][2].real() == doctest::Approx(surface_norm(o2, q)).epsilon(1e-13));
    CHECK(std::abs(g[0][0].imag()) < 1e-15);
}
