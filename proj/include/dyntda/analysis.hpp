#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "dyntda/persistence_set.hpp"

namespace dyntda {

struct Dendrogram {
    struct Merge {
        int cluster_a;
        int cluster_b;
        double height;
    };
    // N-1 merges with non-decreasing heights; leaves are clusters 0..N-1 and
    // merge i creates cluster N+i.
    std::vector<Merge> merges;

    nlohmann::json to_json() const;
};

/// Single linkage from the minimum spanning tree: merge heights are the MST
/// edge weights in sorted order.
Dendrogram single_linkage(const DistanceMatrix& m);

struct MdsEmbedding {
    std::vector<double> coordinates; // N x dim, row-major, columns mean-centered
    std::vector<double> eigenvalues; // top dim, descending
    bool clipped_negative = false;   // some retained eigenvalue was negative
};

/// Classical MDS: double-center B = -1/2 J D^2 J and take the top-dim
/// eigenpairs by cyclic Jacobi rotations (tolerance 1e-12, at most 100
/// sweeps). Negative eigenvalues are clipped to zero and flagged.
MdsEmbedding classical_mds(const DistanceMatrix& m, int dim = 2);

void save_mds_csv(const MdsEmbedding& e, const std::vector<std::string>& labels,
                  const std::string& path);

struct OneNnReport {
    double accuracy = 0.0;
    double trial_stddev = 0.0; // std of per-trial accuracy
    int trials = 0;
    std::uint64_t seed = 0;
};

/// Repeated 1-nearest-neighbor protocol: per trial, one seeded-random
/// representative per class; every other row is classified by its nearest
/// representative (ties to the lowest row index). Accuracy is 1 minus the
/// mean misclassification rate. Trials use independent derived seeds, so the
/// result does not depend on the thread count.
OneNnReport one_nn_protocol(const DistanceMatrix& m, const std::vector<std::string>& classes,
                            int trials, std::uint64_t seed, int threads = 1);

} // namespace dyntda
