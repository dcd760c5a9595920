#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dyntda/dms.hpp"

namespace dyntda {

/// Geodesic distance on the flat 2-torus of side length torus_size.
double torus_distance(double px, double py, double qx, double qy, double torus_size);

struct BoidsParams {
    int n_boids = 40;
    double torus_size = 10.0;
    double neighbor_radius = 2.5;
    double cohesion_weight = 0.0;
    double separation_weight = 0.0;
    double separation_radius = 0.6;
    double alignment_weight = 0.0;
    double max_speed = 1.0;
    double dt = 0.05;
    int steps = 200;
    int record_every = 2;
    std::uint64_t seed = 1;

    void validate() const;
};

struct BehaviorPreset {
    std::string name;
    BoidsParams params;
};

/// Five parameter sets spanning qualitatively distinct regimes: cohesion-
/// dominant clumping, separation-dominant dispersal, alignment-dominant
/// streaming, balanced milling, and near-zero-interaction drift. The values
/// are this project's own choices; only structural fields (n_boids, steps,
/// dt, ...) are meant to be overridden by experiment configs.
std::vector<BehaviorPreset> presets();

struct BoidsState {
    std::vector<double> pos; // N x 2, in [0, L)^2
    std::vector<double> vel; // N x 2
};

/// Seeded initial state: positions uniform on [0, L)^2, velocities with a
/// uniform direction and speed uniform in [0, max_speed]. Draw order per boid
/// is x, y, angle, speed.
BoidsState boids_init(const BoidsParams& params);

/// One synchronous step: steering accelerations (cohesion, separation,
/// alignment) are computed from the current state over toroidal neighbor
/// displacements, then velocities are updated, clamped to max_speed, and
/// positions advanced modulo the torus size.
void boids_step(BoidsState& state, const BoidsParams& params);

/// Full simulation; records frames 0, record_every, 2*record_every, ... and
/// returns a positional DynamicMetricSpace. Single-threaded by contract, so
/// output is bit-identical per seed.
DynamicMetricSpace simulate(const BoidsParams& params);

} // namespace dyntda
