#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dyntda/dyn_module.hpp"
#include "dyntda/matrix.hpp"

namespace dyntda {

/// A sampled persistence set: thin Dyn modules of (2k+2)-point sub-DMSs,
/// together with the point-index subsets they came from.
struct PersistenceSet {
    int k = 0;
    DynGrid grid;
    std::vector<ThinDynModule> modules;
    std::vector<std::vector<int>> provenance;

    std::size_t size() const { return modules.size(); }
};

/// `count` seeded-uniform (2k+2)-point subsets, duplicates rejected up to a
/// retry cap (after which duplicates are allowed, for tiny subset spaces),
/// each built into a module over `grid`.
PersistenceSet sample_persistence_set(const DynamicMetricSpace& dms, int k, int count,
                                      const DynGrid& grid, std::uint64_t seed);

/// Every (2k+2)-point subset, in lexicographic order.
PersistenceSet exhaustive_persistence_set(const DynamicMetricSpace& dms, int k,
                                          const DynGrid& grid);

/// Greedy farthest-point traversal (Gonzalez) over [0, n) under dist:
/// seeded-random start, then repeatedly the element maximizing the distance
/// to the chosen set, ties broken toward the lowest index. Distance batches
/// per round are evaluated in parallel when threads > 1.
std::vector<int> greedy_kcenter(int n, const std::function<double(int, int)>& dist, int target,
                                std::uint64_t seed, int threads = 1);

/// Gonzalez reduction of a persistence set under the erosion distance.
PersistenceSet kcenter_reduce(const PersistenceSet& ps, int target, std::uint64_t seed,
                              int threads = 1);

/// Hausdorff distance between two persistence sets under the erosion
/// distance (same k and grid required): max of the two directed sup-inf
/// values over the full pairwise distance matrix, computed in parallel.
double hausdorff_erosion(const PersistenceSet& a, const PersistenceSet& b, int threads = 1);

/// Symmetric labeled distance matrix with zero diagonal; the pipeline's
/// terminal artifact.
struct DistanceMatrix {
    std::vector<std::string> labels;
    SquareMatrix values;

    void validate() const;
};

DistanceMatrix combine_max(const std::vector<DistanceMatrix>& matrices);

/// CSV with a label header row/column and 12 significant digits.
void save_distance_matrix(const DistanceMatrix& m, const std::string& path);
DistanceMatrix load_distance_matrix(const std::string& path);

} // namespace dyntda
