#include "doctest.h"

#include <cmath>
#include <set>

#include "dyntda/boids.hpp"
#include "dyntda/rng.hpp"

using namespace dyntda;

TEST_CASE("torus distance wraps around") {
    CHECK(torus_distance(0.1, 0.0, 0.9, 0.0, 1.0) == doctest::Approx(0.2));
    CHECK(torus_distance(0.3, 0.4, 0.3, 0.4, 1.0) == 0.0);

    SplitMix64 rng(3);
    for (int t = 0; t < 2000; ++t) {
        const double L = 7.0;
        const double ax = rng.uniform(0.0, L), ay = rng.uniform(0.0, L);
        const double bx = rng.uniform(0.0, L), by = rng.uniform(0.0, L);
        const double cx = rng.uniform(0.0, L), cy = rng.uniform(0.0, L);
        const double dab = torus_distance(ax, ay, bx, by, L);
        const double dbc = torus_distance(bx, by, cx, cy, L);
        const double dac = torus_distance(ax, ay, cx, cy, L);
        CHECK(dab == torus_distance(bx, by, ax, ay, L));
        CHECK(dac <= dab + dbc + 1e-12);
        // never exceeds the Euclidean distance, equality without wrapping
        const double euclid = std::hypot(ax - bx, ay - by);
        CHECK(dab <= euclid + 1e-12);
        if (std::fabs(ax - bx) <= L / 2 && std::fabs(ay - by) <= L / 2)
            CHECK(dab == doctest::Approx(euclid));
    }
}

TEST_CASE("force-free boids move in straight lines with wrap") {
    BoidsParams p;
    p.n_boids = 5;
    p.steps = 40;
    p.record_every = 1;
    p.seed = 99;
    const BoidsState initial = boids_init(p);
    const DynamicMetricSpace dms = simulate(p);
    REQUIRE(dms.time_grid().count == 40);
    for (int s = 0; s < 40; ++s)
        for (int i = 0; i < 5; ++i)
            for (int c = 0; c < 2; ++c) {
                double expect = initial.pos[2 * i + c] + s * p.dt * initial.vel[2 * i + c];
                expect = std::fmod(expect, p.torus_size);
                if (expect < 0) expect += p.torus_size;
                CHECK(dms.positions()[(static_cast<std::size_t>(s) * 5 + i) * 2 + c] ==
                      doctest::Approx(expect).epsilon(1e-12));
            }
}

TEST_CASE("same seed reproduces the trajectory bit for bit") {
    BoidsParams p = presets()[3].params; // milling
    p.n_boids = 12;
    p.steps = 60;
    p.seed = 1234;
    const DynamicMetricSpace a = simulate(p);
    const DynamicMetricSpace b = simulate(p);
    CHECK(a.positions() == b.positions());

    p.seed = 1235;
    const DynamicMetricSpace c = simulate(p);
    CHECK(a.positions() != c.positions());
}

TEST_CASE("separation pushes a close resting pair apart") {
    BoidsParams p;
    p.n_boids = 2;
    p.separation_weight = 1.0;
    p.separation_radius = 1.0;
    p.cohesion_weight = 0.0;
    p.alignment_weight = 0.0;
    BoidsState s;
    s.pos = {5.0, 5.0, 5.3, 5.0};
    s.vel = {0.0, 0.0, 0.0, 0.0};
    const double before = torus_distance(s.pos[0], s.pos[1], s.pos[2], s.pos[3], p.torus_size);
    boids_step(s, p);
    const double after = torus_distance(s.pos[0], s.pos[1], s.pos[2], s.pos[3], p.torus_size);
    CHECK(after >= before);
}

TEST_CASE("positions stay on the torus and speeds stay clamped") {
    for (const BehaviorPreset& preset : presets()) {
        BoidsParams p = preset.params;
        p.n_boids = 10;
        p.steps = 50;
        p.seed = 7;
        BoidsState s = boids_init(p);
        for (int step = 0; step < p.steps; ++step) {
            boids_step(s, p);
            for (int i = 0; i < p.n_boids; ++i) {
                CHECK(s.pos[2 * i] >= 0.0);
                CHECK(s.pos[2 * i] < p.torus_size);
                CHECK(s.pos[2 * i + 1] >= 0.0);
                CHECK(s.pos[2 * i + 1] < p.torus_size);
                CHECK(std::hypot(s.vel[2 * i], s.vel[2 * i + 1]) <= p.max_speed + 1e-12);
            }
        }
    }
}

TEST_CASE("five distinct presets, last one force free") {
    const auto ps = presets();
    REQUIRE(ps.size() == 5);
    std::set<std::string> names;
    for (const auto& p : ps) names.insert(p.name);
    CHECK(names.size() == 5);

    const BoidsParams& drift = ps.back().params;
    CHECK(drift.cohesion_weight == 0.0);
    CHECK(drift.separation_weight == 0.0);
    CHECK(drift.alignment_weight == 0.0);
}

TEST_CASE("parameter validation") {
    BoidsParams p;
    p.steps = 0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = BoidsParams{};
    p.dt = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = BoidsParams{};
    p.neighbor_radius = -1.0;
    CHECK_THROWS_AS(simulate(p), std::invalid_argument);
}
