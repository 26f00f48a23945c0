#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "zonolab/functionals.hpp"
#include "zonolab/radii.hpp"
#include "zonolab/rng.hpp"
#include "zonolab/stochastic.hpp"

#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

using namespace zonolab;
using namespace zonolab::testing;

namespace {

GeneratorSet from_rows(std::vector<std::vector<double>> rows) {
    GeneratorSet gs;
    gs.dim = static_cast<int>(rows[0].size());
    for (const auto& r : rows) {
        Vec v(gs.dim);
        for (int i = 0; i < gs.dim; ++i) v(i) = r[i];
        gs.generators.push_back(v);
    }
    return gs;
}

}  // namespace

TEST_CASE("support function") {
    GeneratorSet cube = make_cube(3, 1.0);
    Vec e1 = Vec::Zero(3);
    e1(0) = 1.0;
    CHECK(support(cube, e1) == doctest::Approx(0.5).epsilon(1e-15));

    Vec diag = Vec::Ones(3) / std::sqrt(3.0);
    CHECK(support(cube, diag) == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-14));

    GeneratorSet gs = random_unit_generators(5, 3, 77);
    CounterRng rng(2);
    for (int i = 0; i < 20; ++i) {
        Vec u = rng.unit_vec(3);
        CHECK(support(gs, u) == doctest::Approx(support(gs, Vec(-u))).epsilon(1e-14));
    }
    Vec bad = 2.0 * e1;
    CHECK_THROWS_AS(support(cube, bad), DimensionError);
}

TEST_CASE("circumradius of fixtures") {
    CircumradiusCertificate cube = circumradius(make_cube(3, 1.0));
    CHECK(cube.value == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-14));
    for (int8_t s : cube.witness.signs) CHECK(s == 1);  // lexicographic tie winner

    // unit-edge simplex generators: (d+1)/(2 sqrt d) for odd d, sqrt(d+2)/2 for even
    for (int d = 2; d <= 6; ++d) {
        double want = (d % 2 == 1) ? (d + 1) / (2.0 * std::sqrt(static_cast<double>(d)))
                                   : std::sqrt(d + 2.0) / 2.0;
        CircumradiusCertificate c = circumradius(make_regular_rhombic_dodecahedron(d, 1.0));
        CHECK(c.value == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("circumradius witness reproduces the value") {
    for (int trial = 0; trial < 20; ++trial) {
        GeneratorSet gs = random_unit_generators(8, 3, 600 + trial);
        CircumradiusCertificate c = circumradius(gs);
        Vec v = Vec::Zero(3);
        for (int i = 0; i < gs.size(); ++i)
            v += static_cast<double>(c.witness.signs[i]) * gs.generators[i];
        CHECK(0.5 * v.norm() == doctest::Approx(c.value).epsilon(1e-12));
        CHECK(c.witness.signs[0] == 1);  // canonical
    }
}

TEST_CASE("gray-code circumradius equals naive enumeration up to n = 16") {
    for (int trial = 0; trial < 12; ++trial) {
        int n = 4 + trial;  // 4..15
        GeneratorSet gs = random_unit_generators(n, 3, 40 + trial);
        double naive = circumradius_brute(gs);
        CHECK(circumradius(gs).value == doctest::Approx(naive).epsilon(1e-12));
    }
}

TEST_CASE("branch-and-bound path agrees with full enumeration") {
    // n = 26 crosses the internal Gray/BnB threshold; the oracle is a
    // test-side incremental scan over all 2^25 canonical sign vectors
    GeneratorSet gs = random_unit_generators(26, 3, 99);
    CircumradiusCertificate bnb = circumradius(gs);

    const int m = gs.size();
    std::vector<int8_t> eps(m, 1);
    Vec v = Vec::Zero(3);
    for (const Vec& p : gs.generators) v += p;
    double best_sq = v.squaredNorm();
    for (std::uint64_t s = 1; s < (1ULL << (m - 1)); ++s) {
        int j = std::countr_zero(s) + 1;
        eps[j] = static_cast<int8_t>(-eps[j]);
        if ((s & ((1ULL << 20) - 1)) == 0) {
            v.setZero();  // periodic refresh keeps the incremental sum exact-ish
            for (int i = 0; i < m; ++i) v += static_cast<double>(eps[i]) * gs.generators[i];
        } else {
            v += 2.0 * static_cast<double>(eps[j]) * gs.generators[j];
        }
        best_sq = std::max(best_sq, v.squaredNorm());
    }
    CHECK(bnb.value == doctest::Approx(0.5 * std::sqrt(best_sq)).epsilon(1e-11));

    // the two-stage numerical estimate is a lower bound and lands close here
    double numeric = circumradius_numeric(gs);
    CHECK(numeric <= bnb.value * (1.0 + 1e-9));
    CHECK(numeric >= bnb.value * (1.0 - 1e-6));

    // witness reproduces value
    Vec w = Vec::Zero(3);
    for (int i = 0; i < gs.size(); ++i)
        w += static_cast<double>(bnb.witness.signs[i]) * gs.generators[i];
    CHECK(0.5 * w.norm() == doctest::Approx(bnb.value).epsilon(1e-12));
}

TEST_CASE("circumradius dominates sampled support directions") {
    for (int d : {3, 4}) {
        GeneratorSet gs = random_unit_generators(9, d, 123 + d);
        CircumradiusCertificate c = circumradius(gs);
        CounterRng rng(321);
        double sampled = 0.0;
        for (int i = 0; i < 100000; ++i)
            sampled = std::max(sampled, support(gs, rng.unit_vec(d)));
        CHECK(sampled <= c.value * (1.0 + 1e-12));
        CHECK(sampled >= c.value * 0.99);  // dense sampling comes within 1%
    }
}

TEST_CASE("ratio gap shrinks from n = 50 to n = 200 random unit generators") {
    // circumradius at these n comes from the two-stage numerical maximizer
    // (a lower bound), inradius stays exact; the trend is what is asserted
    std::vector<double> r50, r200;
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        GeneratorSet a = random_unit_generators(50, 3, seed);
        GeneratorSet b = random_unit_generators(200, 3, seed);
        r50.push_back(circumradius_numeric(a, 512) / inradius(a).value - 1.0);
        r200.push_back(circumradius_numeric(b, 512) / inradius(b).value - 1.0);
    }
    std::sort(r50.begin(), r50.end());
    std::sort(r200.begin(), r200.end());
    CHECK(r200[1] < r50[1]);  // median over seeds decreases with n
    CHECK(r200[1] > 0.0);
}

TEST_CASE("circumradius witness counts") {
    GeneratorSet rd3 = make_regular_rhombic_dodecahedron(3, 1.0);
    CHECK(circumradius_witness_count(rd3) == 3);

    // |sum eps_i e_i| = sqrt(d) for every sign choice: all canonical vectors tie
    for (int d = 2; d <= 5; ++d)
        CHECK(circumradius_witness_count(make_cube(d, 1.0)) == (1 << (d - 1)));

    GeneratorSet pair = from_rows({{1, 0}, {-1, 0}});
    CHECK(circumradius_witness_count(pair) == 1);

    // generic inputs have a unique maximizer
    for (int trial = 0; trial < 5; ++trial)
        CHECK(circumradius_witness_count(random_unit_generators(7, 3, 555 + trial)) == 1);
}

TEST_CASE("inradius of fixtures") {
    InradiusCertificate c = inradius(make_cube(3, 1.0));
    CHECK(c.value == doctest::Approx(0.5).epsilon(1e-14));
    int axis = -1;
    for (int i = 0; i < 3; ++i)
        if (std::abs(c.normal(i)) > 0.5) axis = i;
    CHECK(axis >= 0);

    double s2 = std::sqrt(2.0) / 2.0;
    GeneratorSet rotated = from_rows({{s2, s2}, {-s2, s2}});
    CHECK(inradius(rotated).value == doctest::Approx(0.5).epsilon(1e-12));

    GeneratorSet flat = from_rows({{1, 0, 0}, {0, 1, 0}});
    CHECK_THROWS_AS(inradius(flat), DegenerateInput);
}

TEST_CASE("inradius certificate is the minimum over facet normals") {
    for (int trial = 0; trial < 15; ++trial) {
        GeneratorSet gs = random_unit_generators(7, 3, 77 + trial);
        if (!full_dimensional(gs)) continue;
        InradiusCertificate c = inradius(gs);
        CHECK(support(gs, c.normal) == doctest::Approx(c.value).epsilon(1e-15));
        for (const auto& s : lex_subsets(gs.size(), 2)) {
            auto normal = orthogonal_complement_normal(
                {gs.generators[s[0]], gs.generators[s[1]]});
            if (!normal) continue;
            CHECK(support(gs, *normal) >= c.value - 1e-12);
        }
    }
}

TEST_CASE("inradius agrees with a dense sphere grid oracle") {
    GeneratorSet rd3 = make_regular_rhombic_dodecahedron(3, 1.0);
    InradiusCertificate c = inradius(rd3);

    // grid minimization: 10^6 spiral directions, then compass refinement on
    // the sphere (the oracle touches only support evaluations)
    GeneratorSet grid = fibonacci_sphere_generators(1000000);
    Vec best_u = grid.generators[0];
    double best = support(rd3, best_u);
    for (const Vec& u : grid.generators) {
        double h = support(rd3, u);
        if (h < best) {
            best = h;
            best_u = u;
        }
    }
    auto cross = [](const Vec& a, const Vec& b) {
        Vec c(3);
        c << a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2), a(0) * b(1) - a(1) * b(0);
        return c;
    };
    double step = 2e-3;
    while (step > 1e-10) {
        bool improved = false;
        Vec axis = Vec::Zero(3);
        axis(std::abs(best_u(0)) < 0.9 ? 0 : 1) = 1.0;
        Vec t1 = cross(best_u, axis).normalized();
        Vec t2 = cross(best_u, t1).normalized();
        for (const Vec& dir : {Vec(t1), Vec(-t1), Vec(t2), Vec(-t2)}) {
            Vec u = (best_u + step * dir).normalized();
            double h = support(rd3, u);
            if (h < best) {
                best = h;
                best_u = u;
                improved = true;
            }
        }
        if (!improved) step *= 0.5;
    }
    CHECK(std::abs(best - c.value) <= 1e-6);
    CHECK(best >= c.value - 1e-12);  // the exact value is a true minimum
}

TEST_CASE("homogeneity of both radii") {
    GeneratorSet gs = random_unit_generators(6, 3, 13);
    double c0 = circumradius(gs).value;
    double i0 = inradius(gs).value;
    for (double lambda : {0.5, 2.0, 10.0}) {
        GeneratorSet scaled = gs;
        for (Vec& p : scaled.generators) p *= lambda;
        CHECK(circumradius(scaled).value == doctest::Approx(lambda * c0).epsilon(1e-12));
        CHECK(inradius(scaled).value == doctest::Approx(lambda * i0).epsilon(1e-12));
    }
}

TEST_CASE("ratio report") {
    RatioReport cube = ratio_report(make_cube(3, 1.0));
    CHECK(cube.ratio_minus_one == doctest::Approx(std::sqrt(3.0) - 1.0).epsilon(1e-12));

    RatioReport z12 = ratio_report(make_regular_zonogon(12, 1.0));
    CHECK(z12.ratio_minus_one ==
          doctest::Approx(1.0 / std::cos(M_PI / 24.0) - 1.0).epsilon(1e-10));

    for (int trial = 0; trial < 10; ++trial) {
        GeneratorSet gs = random_unit_generators(8, 3, 99 + trial);
        if (!full_dimensional(gs)) continue;
        CHECK(ratio_report(gs).ratio_minus_one >= -1e-12);
    }
}

TEST_CASE("planar sweep equals enumeration") {
    for (int trial = 0; trial < 20; ++trial) {
        int n = 3 + trial % 12;
        GeneratorSet gs = random_unit_generators(n, 2, 313 + trial);
        CircumradiusCertificate sweep = circumradius_planar(gs);
        CHECK(sweep.value == doctest::Approx(circumradius_brute(gs)).epsilon(1e-12));
        Vec v = Vec::Zero(2);
        for (int i = 0; i < gs.size(); ++i)
            v += static_cast<double>(sweep.witness.signs[i]) * gs.generators[i];
        CHECK(0.5 * v.norm() == doctest::Approx(sweep.value).epsilon(1e-12));
    }
    // regular zonogons at large n stay consistent with the closed form
    for (int n : {24, 48, 64}) {
        GeneratorSet z = make_regular_zonogon(n, 1.0);
        double want = 0.5 / std::sin(M_PI / (2.0 * n));
        CHECK(circumradius_planar(z).value == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("enumeration bound refusals") {
    GeneratorSet big = random_unit_generators(41, 3, 1);
    CHECK_THROWS_AS(circumradius(big), BoundExceeded);
    GeneratorSet wide = random_unit_generators(400, 4, 2);  // C(400,3) > 10^7
    CHECK_THROWS_AS(inradius(wide), BoundExceeded);
}

TEST_CASE("zero generators do not disturb the radii") {
    GeneratorSet gs = from_rows({{1, 0}, {0, 1}, {0, 0}});
    CHECK(circumradius(gs).value == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-14));
    CHECK(inradius(gs).value == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(static_cast<int>(circumradius(gs).witness.signs.size()) == 3);
}
