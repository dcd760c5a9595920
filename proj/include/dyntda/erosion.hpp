#pragma once

#include <cstdint>
#include <optional>

#include "dyntda/grid_module.hpp"

namespace dyntda {

class ThinDynModule; // dyn_module.hpp

/// Intersection of two module supports with one diagonal fiber, as intervals
/// [a, b] (V side) and [c, d] (W side) in the fiber parameter.
struct FiberSlice {
    std::optional<Interval1d> v;
    std::optional<Interval1d> w;

    FiberSlice swapped() const { return {w, v}; }
};

/// Maximum over integer s in [a,b] \ [c,d] of min(s - a, b - s): how far the
/// support interval can erode from both ends before every uncovered point is
/// gone. 0 when the support is absent or fully covered. O(1).
int erosion1d(const FiberSlice& slice);

/// Same value by scanning every s; differential-testing reference.
int erosion1d_scan(const FiberSlice& slice);

struct ErosionOptions {
    bool use_linear_scan = false; // route fiber values through erosion1d_scan
};

/// Erosion distance between two thin modules with order-convex support over
/// the same box, in physical units (grid steps * unit).
///
/// Sweep-line over diagonal fibers: every nonempty column contributes a start
/// and an end event keyed by the diagonal projection of its interval
/// endpoints; events on each base-space line are processed in increasing
/// order while an ordered active set (a chain, so first-coordinate order is
/// total) yields the fiber's support interval endpoints in O(log n).
/// O(n^{d-1} d log n) overall.
///
/// Thresholds are evaluated at lattice points with integer shifts, so the
/// result is a lower bound of the continuous-index value, off by at most one
/// grid step, and matches erosion_distance_oracle exactly.
double erosion_distance(const GridModule& v, const GridModule& w, const ErosionOptions& opt = {});

/// Brute force directly from the definition: enumerates every grid segment
/// [p, q] and finds the least integer shift after which both thickened-rank
/// inequalities hold; the segment's threshold is the last shift where they do
/// not. Throws resource_error when the segment count exceeds the budget.
double erosion_distance_oracle(const GridModule& v, const GridModule& w,
                               std::uint64_t op_budget = 400'000'000ull);

/// Erosion distance between two Dyn-indexed thin modules on identical grids,
/// via the coordinate change that turns the Dyn order into a product order.
double erosion_distance_dyn(const ThinDynModule& v, const ThinDynModule& w);

/// Erosion distance between rank-maximal modules: the max over levels
/// i = 1..M of the erosion distance between superlevel indicator modules.
double erosion_distance_rank_maximal(const RankMaximalGridModule& v,
                                     const RankMaximalGridModule& w);

/// Brute force over segments with integer ranks min(dim(p), dim(q)).
double erosion_distance_rank_maximal_oracle(const RankMaximalGridModule& v,
                                            const RankMaximalGridModule& w,
                                            std::uint64_t op_budget = 400'000'000ull);

} // namespace dyntda
