#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "dyntda/matrix.hpp"

namespace dyntda {

/// Degree-k Rips persistence diagram of a (2k+2)-point semimetric space.
/// Holds at most one point; when present, 0 <= birth < death.
struct SmallDiagram {
    std::optional<std::pair<double, double>> point;

    bool empty() const { return !point.has_value(); }
    double birth() const { return point->first; }
    double death() const { return point->second; }
};

struct FiltrationSimplex {
    std::vector<int> vertices; // sorted, distinct
    double diameter = 0.0;     // max pairwise distance; 0 for vertices
};

/// Every simplex of dimension <= max_dim in filtration order: sorted by
/// (diameter, dimension, lexicographic vertex list), so faces always precede
/// the simplices they bound.
std::vector<FiltrationSimplex> rips_filtration(const SquareMatrix& dist, int max_dim);

/// All finite degree-k persistence pairs (birth < death) of the Rips
/// filtration, by boundary-matrix reduction over the two-element field.
/// Simplices of dimension <= k+2 enter in (diameter, dimension, lexicographic
/// vertex) order. Essential classes are dropped, so k = 0 behaves as reduced
/// homology. Exposed separately from rips_diagram_small so tests can observe
/// the raw pair count.
std::vector<std::pair<double, double>> rips_pairs(const SquareMatrix& dist, int k);

/// The degree-k diagram for a matrix with exactly 2k+2 points. Throws
/// std::invalid_argument on wrong size or NaN entries.
SmallDiagram rips_diagram_small(const SquareMatrix& dist, int k);

/// True iff the Rips complex at scale delta is simplicially isomorphic to the
/// (k+1)-dimensional cross-polytope; equivalently, the complement of the
/// delta-neighborhood graph is a perfect matching.
bool is_cross_polytope(const SquareMatrix& dist, int k, double delta);

} // namespace dyntda
