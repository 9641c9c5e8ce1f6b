#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include "djet/fuchsian.hpp"

using namespace djet;

TEST_CASE("octagon generators validate; corrupted sets are rejected with the relation index") {
    GeneratorSet gens = octagon_generators();
    CHECK(gens.generators.size() == 4);
    CHECK(gens.relations.size() == 1);
    CHECK_NOTHROW(gens.validate());
    CHECK_NOTHROW(gens.validate(1e-11));  // the residual is orders below the contract

    GeneratorSet bad = gens;
    bad.generators[2] = Mobius(bad.generators[2].alpha() + cplx(1e-6, 0.0),
                               bad.generators[2].beta());
    try {
        bad.validate();
        FAIL("corrupted generator set validated");
    } catch (const std::domain_error& e) {
        CHECK(std::string(e.what()).find("relation 1") != std::string::npos);
        CHECK(std::string(e.what()).find("residual") != std::string::npos);
    }

    GeneratorSet empty;
    CHECK_THROWS_AS(empty.validate(), std::invalid_argument);
}

TEST_CASE("ball enumeration: shell counts, prefix property, determinism, hygiene") {
    GeneratorSet gens = octagon_generators();

    GroupBall b0 = enumerate_ball(gens, 0);
    CHECK(b0.size() == 1);
    CHECK(b0.shell_count() == 1);
    CHECK(near_identity(b0.elements()[0], 0.0));

    GroupBall b1 = enumerate_ball(gens, 1);
    CHECK(b1.size() == 9);  // identity + 4 generators + 4 inverses

    GroupBall b3 = enumerate_ball(gens, 3);
    REQUIRE(b3.shell_count() == 4);
    CHECK(b3.shell(0).size() == 1);
    CHECK(b3.shell(1).size() == 8);
    CHECK(b3.shell(2).size() == 56);   // 8 * 7: one letter cancels
    CHECK(b3.shell(3).size() == 392);  // 56 * 7
    CHECK(b3.size() == 457);
    CHECK(b3.word_length() == 3);
    CHECK_THROWS_AS(b3.shell(4), std::out_of_range);

    // smaller balls are bitwise prefixes of larger ones (deterministic BFS)
    for (size_t i = 0; i < b1.size(); ++i) {
        CHECK(b3.elements()[i].alpha() == b1.elements()[i].alpha());
        CHECK(b3.elements()[i].beta() == b1.elements()[i].beta());
    }
    GroupBall b3b = enumerate_ball(gens, 3);
    for (size_t i = 0; i < b3.size(); ++i)
        CHECK(b3.elements()[i].alpha() == b3b.elements()[i].alpha());

    for (const Mobius& g : b3.elements()) CHECK(g.det_residual() <= 1e-12);
    CHECK(b3.non_hyperbolic_count() == 0);

    CHECK_THROWS_AS(enumerate_ball(gens, -1), std::domain_error);
}

TEST_CASE("poincare density: identity ball, definition anchor, warning flag") {
    GeneratorSet gens = octagon_generators();
    GroupBall b0 = enumerate_ball(gens, 0);
    DiskPoint tau(cplx(0.31, -0.12));

    SeriesTerm t = poincare_density(b0, 4, tau);
    CHECK(t.value == cplx(1.0, 0.0));
    CHECK(t.tail_indicator == 1.0);
    CHECK_FALSE(t.convergence_warning);
    CHECK(poincare_density(b0, 1, tau).convergence_warning);
    CHECK(poincare_density(b0, 0, tau).convergence_warning);

    GroupBall b2 = enumerate_ball(gens, 2);
    SeriesTerm s = poincare_density(b2, 3, tau);
    cplx direct = 0.0;
    for (const Mobius& g : b2.elements()) direct += cpow_int(g.derivative(tau.value()), 3);
    CHECK(std::abs(s.value - direct) < 1e-13);
    CHECK_THROWS_AS(poincare_density(b2, -1, tau), std::domain_error);
}

TEST_CASE("poincare density: shell magnitude decay on the octagon") {
    GroupBall b4 = enumerate_ball(octagon_generators(), 4);
    for (int N : {2, 3, 4}) {
        std::vector<double> mags = shell_magnitudes(b4, N, DiskPoint(0.0));
        REQUIRE(mags.size() == 5);
        // decay from shell 2 onward; in particular outermost < previous
        CHECK(mags[3] < mags[2]);
        CHECK(mags[4] < mags[3]);
    }
    std::vector<double> off_center = shell_magnitudes(b4, 4, DiskPoint(cplx(0.3, 0.1)));
    CHECK(off_center[4] < off_center[3]);
}

TEST_CASE("pair series: identity ball, diagonal vanishing, tail indicator") {
    GeneratorSet gens = octagon_generators();
    GroupBall b0 = enumerate_ball(gens, 0);
    DiskPoint z(cplx(0.2, 0.0)), w(cplx(-0.1, 0.3));

    SeriesTerm t = pair_series(b0, 4, {z, w});
    CHECK(std::abs(t.value - cpow_int(z.value() - w.value(), 4)) < 1e-16);

    GroupBall b2 = enumerate_ball(gens, 2);
    SeriesTerm diag = pair_series(b2, 4, {z, z});
    CHECK(diag.value == cplx(0.0, 0.0));
    CHECK(diag.tail_indicator == 0.0);

    SeriesTerm s = pair_series(b2, 4, {z, w});
    cplx direct = 0.0;
    for (const Mobius& g : b2.elements())
        direct += cpow_int(g.apply_raw(z.value()) - g.apply_raw(w.value()), 4);
    CHECK(std::abs(s.value - direct) < 1e-13);
    CHECK(s.tail_indicator > 0.0);
}

TEST_CASE("pair series is covariant under conjugation of the whole picture") {
    GeneratorSet gens = octagon_generators();
    GroupBall ball = enumerate_ball(gens, 2);
    Mobius sigma(std::polar(std::cosh(0.4), 0.7), std::polar(std::sinh(0.4), -1.1));

    GeneratorSet conj;
    for (const Mobius& g : gens.generators)
        conj.generators.push_back(compose(compose(sigma, g), sigma.inverse()));
    conj.relations = gens.relations;  // the relation word still closes
    GroupBall ball_conj = enumerate_ball(conj, 2);
    REQUIRE(ball_conj.size() == ball.size());

    DiskPoint z(cplx(0.25, -0.1)), w(cplx(-0.15, 0.2));
    PointPair moved{sigma(z), sigma(w)};
    cplx via_enumeration = pair_series(ball_conj, 4, moved).value;
    cplx via_elementwise = 0.0;
    for (const Mobius& g : ball.elements()) {
        Mobius cg = compose(compose(sigma, g), sigma.inverse());
        via_elementwise +=
            cpow_int(cg.apply_raw(moved.z.value()) - cg.apply_raw(moved.w.value()), 4);
    }
    CHECK(std::abs(via_enumeration - via_elementwise) < 1e-10);
}

TEST_CASE("near-coincident words trigger the discreteness error") {
    // second generator is g1^2 composed with a 5e-11 rotation: every length-1
    // word is well separated, but at length 2 the word for g1*g1 lands within
    // the ambiguous dedup window (1e-12, 1e-9] of the stored second generator,
    // which must be reported, not silently merged or kept
    GeneratorSet gens = octagon_generators();
    Mobius g1 = gens.generators[0];
    Mobius almost_square =
        compose(compose(g1, g1), Mobius(std::polar(1.0, 5e-11), cplx(0.0, 0.0)));
    GeneratorSet tricky;
    tricky.generators = {g1, almost_square};
    CHECK_NOTHROW(enumerate_ball(tricky, 1));
    CHECK_THROWS_AS(enumerate_ball(tricky, 2), discreteness_error);
    try {
        enumerate_ball(tricky, 2);
    } catch (const discreteness_error& e) {
        CHECK(std::string(e.what()).find("ambiguous") != std::string::npos);
    }
}
