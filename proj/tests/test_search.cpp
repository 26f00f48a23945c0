#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "zonolab/functionals.hpp"
#include "zonolab/inequalities.hpp"
#include "zonolab/radii.hpp"
#include "zonolab/search.hpp"

#include <nlohmann/json.hpp>

#include <cmath>

using namespace zonolab;

TEST_CASE("polarization value") {
    // {e1, e2}: max |cos| + |sin| = sqrt(2)
    GeneratorSet sq = make_cube(2, 1.0);
    PolarizationValue v = polarization_value(sq, 1.0);
    CHECK(v.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(v.method.find("exact") != std::string::npos);

    // three equally spaced unit generators: 2 * cirr of the unit-edge hexagon
    GeneratorSet hex = make_regular_zonogon(3, 1.0);
    CHECK(polarization_value(hex, 1.0).value == doctest::Approx(2.0).epsilon(1e-12));

    // identity with the circumradius certificate for any unit configuration
    for (int trial = 0; trial < 10; ++trial) {
        GeneratorSet gs = random_unit_generators(6, 3, 2000 + trial);
        CHECK(polarization_value(gs, 1.0).value ==
              doctest::Approx(2.0 * circumradius(gs).value).epsilon(1e-14));
    }

    // p != 1 is numerical; p = 2 has the closed planar check sum |<x_i,u>|^2
    GeneratorSet pair = make_cube(2, 1.0);
    PolarizationValue p2 = polarization_value(pair, 2.0);
    CHECK(p2.method.find("numerical") != std::string::npos);
    CHECK(p2.value == doctest::Approx(1.0).epsilon(1e-9));  // orthonormal: sum is 1 everywhere

    GeneratorSet bad = make_cube(2, 2.0);
    CHECK_THROWS_AS(polarization_value(bad, 1.0), DimensionError);
}

TEST_CASE("minimize_polarization planar oracles") {
    SearchConfig cfg;
    cfg.objective = Objective::polarization;
    cfg.constraints = {Constraint::unit_generators};
    cfg.d = 2;
    cfg.restarts = 8;
    cfg.max_iters = 300;
    cfg.seed = 31415;

    SUBCASE("n = 2 -> sqrt(2)") {
        cfg.n = 2;
        SearchOutcome out = minimize_polarization(cfg);
        CHECK(out.objective_value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
        CHECK(out.has_certificate);
    }
    SUBCASE("n = 3 -> 2") {
        cfg.n = 3;
        SearchOutcome out = minimize_polarization(cfg);
        CHECK(out.objective_value == doctest::Approx(2.0).epsilon(1e-6));
    }
    SUBCASE("n = 4 -> 1/sin(pi/8)") {
        cfg.n = 4;
        SearchOutcome out = minimize_polarization(cfg);
        CHECK(out.objective_value == doctest::Approx(1.0 / std::sin(M_PI / 8.0)).epsilon(1e-5));
    }
}

TEST_CASE("minimize_polarization d=3 n=4 stays at or below the simplex value") {
    SearchConfig cfg;
    cfg.objective = Objective::polarization;
    cfg.constraints = {Constraint::unit_generators};
    cfg.d = 3;
    cfg.n = 4;
    cfg.restarts = 12;
    cfg.max_iters = 300;
    cfg.seed = 99;
    SearchOutcome out = minimize_polarization(cfg);
    // regular-simplex configuration gives 4/sqrt(3); odd-d optima may undercut
    CHECK(out.objective_value <= 4.0 / std::sqrt(3.0) + 1e-6);
    // outcome value re-derivable from the returned generators
    CHECK(out.objective_value ==
          doctest::Approx(2.0 * circumradius(out.best).value).epsilon(1e-9));
}

TEST_CASE("search outcomes are deterministic") {
    SearchConfig cfg;
    cfg.objective = Objective::polarization;
    cfg.constraints = {Constraint::unit_generators};
    cfg.d = 2;
    cfg.n = 3;
    cfg.restarts = 6;
    cfg.max_iters = 150;
    cfg.seed = 2024;
    SearchOutcome a = minimize_polarization(cfg, 1);
    SearchOutcome b = minimize_polarization(cfg, 4);
    CHECK(a.objective_value == b.objective_value);
    REQUIRE(a.best.size() == b.best.size());
    for (int i = 0; i < a.best.size(); ++i)
        for (int c = 0; c < 2; ++c)
            CHECK(a.best.generators[i](c) == b.best.generators[i](c));
}

TEST_CASE("thm5 counterexample construction") {
    Thm5Counterexample ce = thm5_counterexample(3, 1e-2);
    CHECK(std::abs(ce.width_prime - ce.width_reg) <= 1e-12 * ce.width_reg);
    CHECK(ce.cirr_reg == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(ce.cirr_prime < ce.cirr_reg - 1e-8);

    // shrinking v: the gap closes monotonically from below
    double prev_gap = std::numeric_limits<double>::infinity();
    for (double scale : {1e-1, 1e-2, 1e-3}) {
        Thm5Counterexample c = thm5_counterexample(3, scale);
        double gap = c.cirr_reg - c.cirr_prime;
        CHECK(gap > 0.0);
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }

    CHECK_THROWS_AS(thm5_counterexample(4), DimensionError);
    CHECK_THROWS_AS(thm5_counterexample(2), DimensionError);

    Thm5Counterexample d5 = thm5_counterexample(5, 1e-2);
    CHECK(d5.cirr_prime < d5.cirr_reg);
}

TEST_CASE("local optimality probes") {
    // regular rd at fixed volume: no perturbation goes below (k < d)
    LocalProbeReport a =
        local_optimality_probe(ProbeBody::regular_rd, Constraint::fixed_volume, 2, 300, 1e-2, 1);
    CHECK(a.asserted);
    CHECK(a.sense == "min");
    CHECK(a.improving == 0);

    // cube at fixed mean width: V_2 never exceeds the cube's
    LocalProbeReport b =
        local_optimality_probe(ProbeBody::cube, Constraint::fixed_mean_width, 2, 300, 1e-2, 2);
    CHECK(b.asserted);
    CHECK(b.sense == "max");
    CHECK(b.improving == 0);

    // unit-edge rd: V_2 never exceeds the regular value
    LocalProbeReport c = local_optimality_probe(ProbeBody::regular_rd,
                                                Constraint::unit_generators, 2, 300, 1e-2, 3);
    CHECK(c.asserted);
    CHECK(c.improving == 0);

    // exploratory open-problem probe: data only
    LocalProbeReport d = local_optimality_probe(ProbeBody::regular_rd,
                                                Constraint::fixed_mean_width, 2, 100, 1e-2, 4);
    CHECK_FALSE(d.asserted);
    CHECK(d.trials == 100);

    CHECK_THROWS_AS(
        local_optimality_probe(ProbeBody::cube, Constraint::centered, 2, 10, 1e-2, 5),
        ConfigError);
}

TEST_CASE("constrained minimization recovers the regular bodies") {
    SUBCASE("cirr at fixed mean width over parallelotopes -> cube") {
        SearchConfig cfg;
        cfg.objective = Objective::cirr;
        cfg.constraints = {Constraint::fixed_mean_width};
        cfg.d = 3;
        cfg.n = 3;
        cfg.restarts = 10;
        cfg.max_iters = 300;
        cfg.seed = 7;
        SearchOutcome out = constrained_minimize(cfg);
        CHECK(out.objective_value ==
              doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-4));
    }

    SUBCASE("cirr at centered + fixed mean width over rhombic dodecahedra -> regular") {
        SearchConfig cfg;
        cfg.objective = Objective::cirr;
        cfg.constraints = {Constraint::centered, Constraint::fixed_mean_width};
        cfg.d = 3;
        cfg.n = 4;
        cfg.restarts = 10;
        cfg.max_iters = 300;
        cfg.seed = 8;
        SearchOutcome out = constrained_minimize(cfg);
        CHECK(out.objective_value == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-4));
    }

    SUBCASE("V_d at fixed inradius over rhombic dodecahedra -> regular") {
        SearchConfig cfg;
        cfg.objective = Objective::intrinsic_k;
        cfg.k = 3;
        cfg.constraints = {Constraint::fixed_inradius};
        cfg.d = 3;
        cfg.n = 4;
        cfg.restarts = 8;
        cfg.max_iters = 200;
        cfg.seed = 9;
        SearchOutcome out = constrained_minimize(cfg);
        GeneratorSet reg = make_regular_rhombic_dodecahedron(3, 1.0);
        double reg_vol = intrinsic_volume(reg, 3);
        CHECK(out.objective_value >= reg_vol * (1.0 - 1e-9));  // guaranteed floor
        CHECK(out.objective_value <= reg_vol * (1.0 + 1e-3));  // convergence quality
    }
}

TEST_CASE("search config json round trip") {
    SearchConfig cfg;
    cfg.objective = Objective::cirr;
    cfg.constraints = {Constraint::centered, Constraint::fixed_mean_width};
    cfg.n = 4;
    cfg.d = 3;
    cfg.seed = 55;
    nlohmann::json j = search_config_to_json(cfg);
    SearchConfig back = search_config_from_json(j);
    CHECK(back.objective == cfg.objective);
    CHECK(back.constraints == cfg.constraints);
    CHECK(back.n == cfg.n);
    CHECK(search_config_digest(back) == search_config_digest(cfg));

    // singular string form accepted
    nlohmann::json j2 = {{"objective", "polarization"}, {"constraints", "unit-generators"},
                         {"n", 3},                      {"d", 2},
                         {"seed", 1}};
    SearchConfig c2 = search_config_from_json(j2);
    CHECK(c2.constraints == std::vector<Constraint>{Constraint::unit_generators});

    nlohmann::json badj = {{"objective", "nope"}, {"n", 3}, {"d", 2}};
    CHECK_THROWS_AS(search_config_from_json(badj), ConfigError);
}

TEST_CASE("outcome json carries certificate and trace") {
    SearchConfig cfg;
    cfg.objective = Objective::polarization;
    cfg.constraints = {Constraint::unit_generators};
    cfg.d = 2;
    cfg.n = 2;
    cfg.restarts = 3;
    cfg.max_iters = 60;
    cfg.seed = 5;
    SearchOutcome out = minimize_polarization(cfg);
    nlohmann::json j = search_outcome_to_json(out);
    CHECK(j.contains("certificate"));
    CHECK(j["trace"].size() == 3);
    CHECK(j["config"]["objective"] == "polarization");
}
