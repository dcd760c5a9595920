#include "dyntda/boids.hpp"

#include <cmath>
#include <stdexcept>

#include "dyntda/rng.hpp"

namespace dyntda {

double torus_distance(double px, double py, double qx, double qy, double torus_size) {
    double dx = std::fabs(px - qx);
    double dy = std::fabs(py - qy);
    dx = std::min(dx, torus_size - dx);
    dy = std::min(dy, torus_size - dy);
    return std::sqrt(dx * dx + dy * dy);
}

void BoidsParams::validate() const {
    if (n_boids < 1) throw std::invalid_argument("BoidsParams: n_boids must be positive");
    if (torus_size <= 0.0) throw std::invalid_argument("BoidsParams: torus_size must be positive");
    if (neighbor_radius < 0.0 || separation_radius < 0.0)
        throw std::invalid_argument("BoidsParams: radii must be nonnegative");
    if (cohesion_weight < 0.0 || separation_weight < 0.0 || alignment_weight < 0.0)
        throw std::invalid_argument("BoidsParams: weights must be nonnegative");
    if (max_speed < 0.0) throw std::invalid_argument("BoidsParams: max_speed must be nonnegative");
    if (dt <= 0.0) throw std::invalid_argument("BoidsParams: dt must be positive");
    if (steps < 1) throw std::invalid_argument("BoidsParams: steps must be at least 1");
    if (record_every < 1) throw std::invalid_argument("BoidsParams: record_every must be positive");
}

std::vector<BehaviorPreset> presets() {
    std::vector<BehaviorPreset> out;
    BoidsParams base;

    BoidsParams p = base; // cohesion-dominant clumping
    p.neighbor_radius = 4.0;
    p.cohesion_weight = 2.0;
    p.separation_weight = 0.02;
    p.alignment_weight = 0.0;
    out.push_back({"cohesive", p});

    p = base; // separation-dominant dispersal
    p.cohesion_weight = 0.0;
    p.separation_weight = 1.5;
    p.separation_radius = 3.0;
    p.alignment_weight = 0.0;
    out.push_back({"dispersive", p});

    p = base; // alignment-dominant streaming
    p.cohesion_weight = 0.2;
    p.separation_weight = 0.05;
    p.alignment_weight = 2.5;
    out.push_back({"aligned", p});

    p = base; // balanced milling
    p.neighbor_radius = 2.0;
    p.cohesion_weight = 1.2;
    p.separation_weight = 0.7;
    p.separation_radius = 0.9;
    p.alignment_weight = 1.0;
    out.push_back({"milling", p});

    p = base; // near-zero interaction drift
    p.cohesion_weight = 0.0;
    p.separation_weight = 0.0;
    p.alignment_weight = 0.0;
    out.push_back({"drift", p});

    return out;
}

namespace {

inline double wrap_delta(double d, double L) {
    // shortest signed displacement on the circle of circumference L
    d = std::fmod(d, L);
    if (d > 0.5 * L) d -= L;
    if (d < -0.5 * L) d += L;
    return d;
}

inline double wrap_position(double x, double L) {
    x = std::fmod(x, L);
    if (x < 0.0) x += L;
    return x;
}

} // namespace

BoidsState boids_init(const BoidsParams& params) {
    params.validate();
    SplitMix64 rng(params.seed);
    BoidsState s;
    s.pos.resize(static_cast<std::size_t>(params.n_boids) * 2);
    s.vel.resize(static_cast<std::size_t>(params.n_boids) * 2);
    for (int i = 0; i < params.n_boids; ++i) {
        s.pos[2 * i] = rng.uniform(0.0, params.torus_size);
        s.pos[2 * i + 1] = rng.uniform(0.0, params.torus_size);
        const double angle = rng.uniform(0.0, 2.0 * M_PI);
        const double speed = rng.uniform(0.0, params.max_speed);
        s.vel[2 * i] = speed * std::cos(angle);
        s.vel[2 * i + 1] = speed * std::sin(angle);
    }
    return s;
}

void boids_step(BoidsState& state, const BoidsParams& params) {
    const int n = params.n_boids;
    const double L = params.torus_size;
    std::vector<double> acc(static_cast<std::size_t>(n) * 2, 0.0);

    for (int i = 0; i < n; ++i) {
        double com_x = 0.0, com_y = 0.0;
        double align_x = 0.0, align_y = 0.0;
        double sep_x = 0.0, sep_y = 0.0;
        int neighbors = 0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double dx = wrap_delta(state.pos[2 * j] - state.pos[2 * i], L);
            const double dy = wrap_delta(state.pos[2 * j + 1] - state.pos[2 * i + 1], L);
            const double d2 = dx * dx + dy * dy;
            if (d2 <= params.neighbor_radius * params.neighbor_radius) {
                ++neighbors;
                com_x += dx;
                com_y += dy;
                align_x += state.vel[2 * j] - state.vel[2 * i];
                align_y += state.vel[2 * j + 1] - state.vel[2 * i + 1];
            }
            if (d2 <= params.separation_radius * params.separation_radius && d2 > 1e-24) {
                sep_x -= dx / d2;
                sep_y -= dy / d2;
            }
        }
        if (neighbors > 0) {
            acc[2 * i] += params.cohesion_weight * com_x / neighbors;
            acc[2 * i + 1] += params.cohesion_weight * com_y / neighbors;
            acc[2 * i] += params.alignment_weight * align_x / neighbors;
            acc[2 * i + 1] += params.alignment_weight * align_y / neighbors;
        }
        acc[2 * i] += params.separation_weight * sep_x;
        acc[2 * i + 1] += params.separation_weight * sep_y;
    }

    for (int i = 0; i < n; ++i) {
        double vx = state.vel[2 * i] + params.dt * acc[2 * i];
        double vy = state.vel[2 * i + 1] + params.dt * acc[2 * i + 1];
        const double speed = std::sqrt(vx * vx + vy * vy);
        if (speed > params.max_speed && speed > 0.0) {
            vx *= params.max_speed / speed;
            vy *= params.max_speed / speed;
        }
        state.vel[2 * i] = vx;
        state.vel[2 * i + 1] = vy;
        state.pos[2 * i] = wrap_position(state.pos[2 * i] + params.dt * vx, L);
        state.pos[2 * i + 1] = wrap_position(state.pos[2 * i + 1] + params.dt * vy, L);
    }
}

DynamicMetricSpace simulate(const BoidsParams& params) {
    params.validate();
    BoidsState state = boids_init(params);

    const int frames = (params.steps - 1) / params.record_every + 1;
    std::vector<double> recorded;
    recorded.reserve(static_cast<std::size_t>(frames) * params.n_boids * 2);

    for (int s = 0; s < params.steps; ++s) {
        if (s % params.record_every == 0)
            recorded.insert(recorded.end(), state.pos.begin(), state.pos.end());
        boids_step(state, params);
    }

    std::vector<std::string> labels;
    labels.reserve(params.n_boids);
    for (int i = 0; i < params.n_boids; ++i) labels.push_back("b" + std::to_string(i));

    TimeGrid grid(0.0, params.dt * params.record_every, frames);
    return DynamicMetricSpace::from_positions(std::move(labels), grid, std::move(recorded),
                                              params.torus_size);
}

} // namespace dyntda
