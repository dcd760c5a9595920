#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dyntda/analysis.hpp"
#include "dyntda/persistence_set.hpp"

namespace dyntda {

struct GridConfig {
    double h = 0.0; // desired time spacing; 0 derives the stride from T
    int T = 20;
    int S = 20;
    double delta_weight = 1.0;
};

/// One JSON config drives the whole pipeline. Every seed is derived from
/// master_seed, so a config determines every artifact byte-for-byte
/// regardless of thread count.
struct ExperimentConfig {
    std::vector<std::string> presets; // empty = all five
    int flocks_per_preset = 3;
    int n_boids = 40;
    int steps = 200;
    int record_every = 2;
    double dt = 0.05;
    double torus_size = 10.0;
    std::vector<int> k_list = {0, 1};
    int subsets_per_flock = 300;
    int kcenter_target = 60;
    GridConfig grid;
    int one_nn_trials = 10000;
    std::uint64_t master_seed = 20260810;
    std::string output_dir = "out";
    int threads = 1;

    void validate() const;
    static ExperimentConfig from_json_file(const std::string& path);
};

/// simulate: one DMS file per (preset, flock), under <output_dir>/flocks/.
std::vector<std::string> cmd_simulate(const ExperimentConfig& cfg);

/// distances: persistence sets -> k-center reduction -> pairwise Hausdorff
/// erosion distances; writes dist_k<k>.csv per degree plus dist_combined.csv.
void cmd_distances(const ExperimentConfig& cfg);

/// analyze: dendrogram.json, mds.csv and one_nn.json from the combined matrix.
OneNnReport cmd_analyze(const ExperimentConfig& cfg);

/// erosion distance between two module files (thin Dyn modules or grid
/// modules, detected from the JSON shape).
double erode_files(const std::string& path_a, const std::string& path_b);

/// Quick oracle-equivalence and invariant checks; returns the number of
/// failed checks and prints one line per check.
int run_selftest(std::uint64_t seed, bool quick);

} // namespace dyntda
