// Acceptance suite: one numbered criterion per function, one PASS/FAIL line
// each, nonzero exit when anything fails. Run with an integer argument to
// execute a single criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "dyntda/analysis.hpp"
#include "dyntda/boids.hpp"
#include "dyntda/dyn_module.hpp"
#include "dyntda/erosion.hpp"
#include "dyntda/persistence_set.hpp"
#include "dyntda/pipeline.hpp"
#include "dyntda/rips_small.hpp"
#include "dyntda/rng.hpp"
#include "test_support.hpp"

using namespace dyntda;
namespace fs = std::filesystem;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// --- 1. sweep-line distance equals the brute-force definition exactly ------

bool criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    for (int t = 0; t < 1000; ++t) {
        const GridModule v = random_acd_module({12, 12}, derive_seed(101, {1, (unsigned)t}));
        const GridModule w = random_acd_module({12, 12}, derive_seed(101, {2, (unsigned)t}));
        if (erosion_distance(v, w) != erosion_distance_oracle(v, w)) {
            std::printf("  mismatch on [12]^2 pair %d\n", t);
            return false;
        }
    }
    for (int t = 0; t < 300; ++t) {
        const GridModule v = random_acd_module({8, 8, 8}, derive_seed(102, {1, (unsigned)t}));
        const GridModule w = random_acd_module({8, 8, 8}, derive_seed(102, {2, (unsigned)t}));
        if (erosion_distance(v, w) != erosion_distance_oracle(v, w)) {
            std::printf("  mismatch on [8]^3 pair %d\n", t);
            return false;
        }
    }
    const double elapsed = seconds_since(t0);
    std::printf("  1000 pairs on [12]^2 and 300 on [8]^3 in %.1f s\n", elapsed);
    return elapsed < 300.0;
}

// --- 2. four-point worked examples ------------------------------------------

bool criterion2() {
    const SmallDiagram square = rips_diagram_small(testsupport::unit_square(), 1);
    if (square.empty()) return false;
    if (std::fabs(square.birth() - 1.0) > 1e-12) return false;
    if (std::fabs(square.death() - std::sqrt(2.0)) > 1e-12) return false;
    return rips_diagram_small(testsupport::rhombus(), 1).empty();
}

// --- 3. single-point diagrams and cross-polytope shape ----------------------

bool criterion3() {
    for (int k = 0; k <= 2; ++k) {
        const int n = 2 * k + 2;
        for (int t = 0; t < 10000; ++t) {
            const SquareMatrix m =
                testsupport::random_semimetric(n, derive_seed(303, {(unsigned)k, (unsigned)t}));
            const auto pairs = rips_pairs(m, k);
            if (pairs.size() > 1) {
                std::printf("  %zu diagram points at k=%d trial %d\n", pairs.size(), k, t);
                return false;
            }
            if (!pairs.empty()) {
                const double birth = pairs[0].first;
                const double death = pairs[0].second;
                const double scales[3] = {birth, 0.5 * (birth + death),
                                          std::nexttoward(death, birth)};
                for (double delta : scales)
                    if (!is_cross_polytope(m, k, delta)) {
                        std::printf("  no cross-polytope at k=%d trial %d\n", k, t);
                        return false;
                    }
            }
        }
    }
    return true;
}

// --- 4. convex supports and antichain decompositions ------------------------

bool criterion4() {
    for (int t = 0; t < 500; ++t) {
        const int k = t % 2;
        const auto dms =
            testsupport::random_dms(2 * k + 2, 6, 0.4, derive_seed(404, {(unsigned)t}));
        const auto mod = build_dyn_module(dms, k, DynGrid(dms.time_grid(), 6, 1.0));

        // convexity checked literally at every comparable support pair
        const auto points = mod.support_points();
        for (const DynPoint& p : points)
            for (const DynPoint& r : points) {
                if (!dyn_leq(p, r)) continue;
                for (int i = r.i; i <= p.i; ++i)
                    for (int j = p.j; j <= r.j; ++j)
                        for (int m = p.m; m <= r.m; ++m)
                            if (i <= j && !mod.in_support({i, j, m})) {
                                std::printf("  convexity violated at trial %d\n", t);
                                return false;
                            }
            }
        if (!verify_acd(decompose(mod))) {
            std::printf("  antichain check failed at trial %d\n", t);
            return false;
        }
    }
    return true;
}

// --- 5. pointwise-isometric oscillators separated over intervals ------------

bool criterion5() {
    TimeGrid tg(0.0, M_PI / 10.0, 21); // covers [0, 2pi], hits 3pi/2 exactly
    const auto plain = testsupport::oscillator_triple(tg, false);
    const auto folded = testsupport::oscillator_triple(tg, true);

    // identical distance multisets at every sampled time
    for (int f = 0; f < tg.count; ++f) {
        std::vector<double> a, b;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                a.push_back(plain.distance(f, i, j));
                b.push_back(folded.distance(f, i, j));
            }
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        for (int i = 0; i < 3; ++i)
            if (std::fabs(a[i] - b[i]) > 1e-12) return false;
    }

    const DynGrid grid(tg, 14, 1.0); // scale axis covers [0, 4.4)
    const PersistenceSet pa = exhaustive_persistence_set(plain, 0, grid);
    const PersistenceSet pb = exhaustive_persistence_set(folded, 0, grid);
    const double dh = hausdorff_erosion(pa, pb);
    std::printf("  Hausdorff erosion distance between the two sets: %.6f\n", dh);
    if (!(dh > 0.0)) return false;

    // oracle spot check on one distinguishing pair of modules
    const GridModule ga = dyn_to_poset_coords(pa.modules[0]);
    const GridModule gb = dyn_to_poset_coords(pb.modules[0]);
    return erosion_distance(ga, gb) == erosion_distance_oracle(ga, gb);
}

// --- 6. perturbation stability ----------------------------------------------

bool criterion6() {
    const double h = 0.4;
    for (int t = 0; t < 50; ++t) {
        const auto dms = testsupport::random_dms(6, 7, h, derive_seed(606, {(unsigned)t}));
        const DynGrid grid(dms.time_grid(), 9, 1.0);
        const PersistenceSet ps = exhaustive_persistence_set(dms, 0, grid);
        int which = 0;
        for (double frac : {0.1, 0.5, 1.0}) {
            const double delta = frac * h;
            const auto moved = perturb(dms, delta, derive_seed(607, {(unsigned)t, (unsigned)which++}));
            const PersistenceSet qs = exhaustive_persistence_set(moved, 0, grid);
            const double dh = hausdorff_erosion(ps, qs);
            if (dh > delta + h + 1e-12) {
                std::printf("  stability violated: %.4f > %.4f at trial %d\n", dh, delta + h, t);
                return false;
            }
        }
    }
    return true;
}

// --- 7. rank-maximal modules against the superlevel brute force --------------

bool criterion7() {
    for (int t = 0; t < 200; ++t) {
        // nested convex supports give a dimension function with M <= 4
        RankMaximalGridModule v({10, 10}, 1.0), w({10, 10}, 1.0);
        for (int side = 0; side < 2; ++side) {
            RankMaximalGridModule& target = side == 0 ? v : w;
            const std::uint64_t seed = derive_seed(707, {(unsigned)t, (unsigned)side});
            const int levels = 1 + static_cast<int>(SplitMix64(seed).below(4));
            GridModule current = random_acd_module({10, 10}, derive_seed(seed, {1}));
            std::vector<GridModule> nested{current};
            for (int l = 1; l < levels; ++l) {
                const GridModule next = random_acd_module({10, 10}, derive_seed(seed, {1 + (unsigned)l}));
                GridModule inter({10, 10}, 1.0);
                for (int c = 0; c < inter.column_count(); ++c) {
                    const auto a = nested.back().column(c);
                    const auto b = next.column(c);
                    if (a && b && std::max(a->lo, b->lo) <= std::min(a->hi, b->hi))
                        inter.set_column(c, std::max(a->lo, b->lo), std::min(a->hi, b->hi));
                }
                nested.push_back(inter);
            }
            for (int x = 0; x < 10; ++x)
                for (int y = 0; y < 10; ++y) {
                    const int p[2] = {x, y};
                    int dim = 0;
                    for (const auto& level : nested)
                        if (level.contains(p)) ++dim;
                    if (dim > 0) target.set_dimension(p, dim);
                }
        }
        const double fast = erosion_distance_rank_maximal(v, w);
        double brute = 0.0;
        const int m = std::max(v.max_level(), w.max_level());
        for (int i = 1; i <= m; ++i)
            brute = std::max(brute, erosion_distance_oracle(v.superlevel(i), w.superlevel(i)));
        if (fast != brute) {
            std::printf("  mismatch %f vs %f at trial %d\n", fast, brute, t);
            return false;
        }
        if (fast != erosion_distance_rank_maximal_oracle(v, w)) {
            std::printf("  direct-rank oracle mismatch at trial %d\n", t);
            return false;
        }
    }
    return true;
}

// --- 8. runtime growth of the sweep vs the brute force -----------------------

bool criterion8() {
    // anti-diagonal band with every column supported: support density and
    // active-set size scale with n, so per-call cost tracks the algorithm
    // rather than the luck of a random draw
    auto band_module = [](int n, int shift) {
        GridModule m({n, n}, 1.0);
        const int w = n / 8;
        for (int x = 0; x < n; ++x) {
            const int center = n - 1 - x;
            const int lo = std::max(0, center - w + shift);
            const int hi = std::min(n - 1, center + w + shift);
            if (lo <= hi) m.set_column(x, lo, hi);
        }
        m.validate();
        return m;
    };

    // sizes are timed in interleaved rounds with the minimum kept per size,
    // so a transient slow period on the host cannot skew a single size
    auto time_sweep_all = [&](const int (&sizes)[4], const int (&reps)[4], double (&out)[4]) {
        std::vector<std::pair<GridModule, GridModule>> mods;
        double sink = 0.0;
        for (int i = 0; i < 4; ++i) {
            mods.emplace_back(band_module(sizes[i], 0), band_module(sizes[i], sizes[i] / 16));
            sink += erosion_distance(mods[i].first, mods[i].second); // warm up
            out[i] = 1e300;
        }
        for (int round = 0; round < 7; ++round)
            for (int i = 0; i < 4; ++i) {
                const auto t0 = std::chrono::steady_clock::now();
                for (int r = 0; r < reps[i]; ++r)
                    sink += erosion_distance(mods[i].first, mods[i].second);
                out[i] = std::min(out[i], seconds_since(t0) / reps[i]);
            }
        if (sink < -1.0) std::printf("%f", sink);
    };
    auto time_oracle = [&](int n, int reps) {
        const GridModule a = band_module(n, 0);
        const GridModule b = band_module(n, std::max(1, n / 16));
        double best = 1e300;
        for (int round = 0; round < 3; ++round) {
            const auto t0 = std::chrono::steady_clock::now();
            double sink = 0.0;
            for (int r = 0; r < reps; ++r) sink += erosion_distance_oracle(a, b);
            const double dt = seconds_since(t0);
            if (sink < -1.0) std::printf("%f", sink);
            best = std::min(best, dt / reps);
        }
        return best;
    };

    const int sizes[4] = {256, 512, 1024, 2048};
    const int reps[4] = {3000, 1500, 750, 375};
    double sweep_time[4];
    time_sweep_all(sizes, reps, sweep_time);
    double worst_growth = 0.0;
    for (int i = 1; i < 4; ++i)
        worst_growth = std::max(worst_growth, sweep_time[i] / sweep_time[i - 1]);
    std::printf("  sweep per-call: %.1f, %.1f, %.1f, %.1f us; worst doubling factor %.2f\n",
                sweep_time[0] * 1e6, sweep_time[1] * 1e6, sweep_time[2] * 1e6,
                sweep_time[3] * 1e6, worst_growth);

    const double oracle16 = time_oracle(16, 20);
    const double oracle32 = time_oracle(32, 5);
    const double oracle_growth = oracle32 / oracle16;
    std::printf("  oracle per-call: %.2f, %.2f ms; doubling factor %.1f\n", oracle16 * 1e3,
                oracle32 * 1e3, oracle_growth);

    return worst_growth <= 3.0 && oracle_growth >= 3.5;
}

// --- 9 & 10. desk-scale experiment, determinism across thread counts ---------

ExperimentConfig desk_config(const std::string& out_dir, int threads) {
    ExperimentConfig cfg;
    cfg.flocks_per_preset = 3;
    cfg.n_boids = 40;
    cfg.steps = 200;
    cfg.record_every = 2;
    cfg.dt = 0.05;
    cfg.torus_size = 10.0;
    cfg.k_list = {0, 1};
    cfg.subsets_per_flock = 300;
    cfg.kcenter_target = 60;
    cfg.grid.T = 20;
    cfg.grid.S = 20;
    // scale-axis weight chosen so one grid step resolves about 0.09 distance
    // units; distances on the half-period torus reach ~7 but the
    // discriminating aggregated-minimum structure lives below S*h/w ~ 1.8
    cfg.grid.delta_weight = 5.5;
    cfg.one_nn_trials = 10000;
    cfg.master_seed = 20260810;
    cfg.output_dir = out_dir;
    cfg.threads = threads;
    return cfg;
}

OneNnReport run_pipeline(const ExperimentConfig& cfg) {
    cmd_simulate(cfg);
    cmd_distances(cfg);
    return cmd_analyze(cfg);
}

bool criterion9(OneNnReport& report_out, double& minutes_out) {
    const auto t0 = std::chrono::steady_clock::now();
    const ExperimentConfig cfg = desk_config("acceptance_out/t4", 4);
    fs::remove_all(cfg.output_dir);
    report_out = run_pipeline(cfg);
    minutes_out = seconds_since(t0) / 60.0;

    const double chance = 0.2; // five behaviors
    const double se = report_out.trial_stddev / std::sqrt((double)report_out.trials);
    std::printf("  pipeline %.1f min; 1-NN accuracy %.4f (chance %.2f, stderr %.5f)\n",
                minutes_out, report_out.accuracy, chance, se);
    return minutes_out < 30.0 && report_out.accuracy > chance + 3.0 * se;
}

bool criterion10() {
    std::string digests[2];
    const char* artifacts[6] = {"dist_k0.csv",     "dist_k1.csv", "dist_combined.csv",
                                "dendrogram.json", "mds.csv",     "one_nn.json"};
    for (int run = 0; run < 2; ++run) {
        const int threads = run == 0 ? 1 : 8;
        const ExperimentConfig cfg =
            desk_config("acceptance_out/t" + std::to_string(threads), threads);
        fs::remove_all(cfg.output_dir);
        run_pipeline(cfg);
        for (const char* name : artifacts) {
            std::ifstream in(fs::path(cfg.output_dir) / name, std::ios::binary);
            if (!in) return false;
            digests[run] += std::string(std::istreambuf_iterator<char>(in), {});
            digests[run] += '\x1f';
        }
    }
    // the 4-thread run from criterion 9 must agree as well
    std::string digest4;
    for (const char* name : artifacts) {
        std::ifstream in(fs::path("acceptance_out/t4") / name, std::ios::binary);
        if (!in) return false;
        digest4 += std::string(std::istreambuf_iterator<char>(in), {});
        digest4 += '\x1f';
    }
    return digests[0] == digests[1] && digests[0] == digest4;
}

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);

    int failures = 0;
    OneNnReport report;
    double minutes = 0.0;
    bool ran9 = false;

    struct Entry {
        int id;
        const char* text;
    };
    const Entry entries[] = {
        {1, "sweep-line erosion distance equals the brute-force oracle exactly"},
        {2, "four-point square and rhombus diagrams"},
        {3, "single-point diagrams with cross-polytope complexes"},
        {4, "support convexity and antichain decomposition on random modules"},
        {5, "pointwise-isometric oscillators separated by persistence sets"},
        {6, "Hausdorff erosion distance stable under metric perturbation"},
        {7, "rank-maximal distance equals superlevel brute force"},
        {8, "sweep runtime grows quasi-linearly, oracle polynomially"},
        {9, "desk-scale flocking experiment beats chance"},
        {10, "byte-identical artifacts across 1, 4 and 8 threads"},
    };

    for (const Entry& e : entries) {
        if (only != 0 && e.id != only) continue;
        bool ok = false;
        switch (e.id) {
        case 1: ok = criterion1(); break;
        case 2: ok = criterion2(); break;
        case 3: ok = criterion3(); break;
        case 4: ok = criterion4(); break;
        case 5: ok = criterion5(); break;
        case 6: ok = criterion6(); break;
        case 7: ok = criterion7(); break;
        case 8: ok = criterion8(); break;
        case 9:
            ok = criterion9(report, minutes);
            ran9 = ok || true;
            break;
        case 10:
            if (!ran9 && only == 10) {
                OneNnReport r;
                double m;
                criterion9(r, m); // criterion 10 compares against the t4 run
            }
            ok = criterion10();
            break;
        }
        std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", e.id, e.text);
        if (!ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
