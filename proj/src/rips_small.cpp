#include "dyntda/rips_small.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace dyntda {

namespace {

struct Simplex {
    std::uint32_t vertex_mask;
    double diameter;
    int dim;
};

void check_input(const SquareMatrix& dist, int k) {
    if (k < 0) throw std::invalid_argument("rips: degree must be nonnegative");
    if (dist.n != 2 * k + 2)
        throw std::invalid_argument("rips: matrix must have exactly 2k+2 points");
    for (double v : dist.a)
        if (std::isnan(v)) throw std::invalid_argument("rips: NaN distance entry");
}

// All subsets of [0, n) with 1..max_size elements, ordered by
// (diameter, dimension, lexicographic sorted vertex list).
std::vector<Simplex> build_filtration(const SquareMatrix& dist, int max_size) {
    const int n = dist.n;
    std::vector<Simplex> simplices;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        const int size = __builtin_popcount(mask);
        if (size > max_size) continue;
        double diam = 0.0;
        for (int a = 0; a < n; ++a) {
            if (!(mask & (1u << a))) continue;
            for (int b = a + 1; b < n; ++b)
                if (mask & (1u << b)) diam = std::max(diam, dist.at(a, b));
        }
        simplices.push_back({mask, diam, size - 1});
    }
    std::sort(simplices.begin(), simplices.end(), [](const Simplex& x, const Simplex& y) {
        if (x.diameter != y.diameter) return x.diameter < y.diameter;
        if (x.dim != y.dim) return x.dim < y.dim;
        return x.vertex_mask < y.vertex_mask; // equals lexicographic order on sorted vertices
    });
    return simplices;
}

} // namespace

std::vector<FiltrationSimplex> rips_filtration(const SquareMatrix& dist, int max_dim) {
    if (dist.n < 1 || dist.n > 16)
        throw std::invalid_argument("rips_filtration: point count out of supported range");
    std::vector<FiltrationSimplex> out;
    for (const Simplex& s : build_filtration(dist, max_dim + 1)) {
        FiltrationSimplex f;
        f.diameter = s.diameter;
        for (int v = 0; v < dist.n; ++v)
            if (s.vertex_mask & (1u << v)) f.vertices.push_back(v);
        out.push_back(std::move(f));
    }
    return out;
}

std::vector<std::pair<double, double>> rips_pairs(const SquareMatrix& dist, int k) {
    check_input(dist, k);
    const auto simplices = build_filtration(dist, k + 3); // dimensions <= k+2

    // Position of each simplex (by vertex mask) in filtration order.
    std::vector<int> position(1u << dist.n, -1);
    for (std::size_t i = 0; i < simplices.size(); ++i) position[simplices[i].vertex_mask] = (int)i;

    // Boundary columns as 64-bit row sets; at most 62 simplices for k <= 2.
    if (simplices.size() > 64)
        throw std::invalid_argument("rips: filtration too large for small-complex reduction");
    std::vector<std::uint64_t> columns(simplices.size(), 0);
    for (std::size_t i = 0; i < simplices.size(); ++i) {
        const std::uint32_t mask = simplices[i].vertex_mask;
        if (simplices[i].dim == 0) continue;
        for (int v = 0; v < dist.n; ++v)
            if (mask & (1u << v)) columns[i] |= 1ull << position[mask ^ (1u << v)];
    }

    // Standard reduction: repeatedly add the column with the same pivot.
    std::vector<int> pivot_owner(simplices.size(), -1);
    std::vector<std::pair<double, double>> pairs;
    for (std::size_t i = 0; i < simplices.size(); ++i) {
        std::uint64_t col = columns[i];
        while (col != 0) {
            const int pivot = 63 - __builtin_clzll(col);
            const int owner = pivot_owner[pivot];
            if (owner < 0) break;
            col ^= columns[owner];
        }
        columns[i] = col;
        if (col != 0) {
            const int pivot = 63 - __builtin_clzll(col);
            pivot_owner[pivot] = (int)i;
            if (simplices[pivot].dim == k) {
                const double birth = simplices[pivot].diameter;
                const double death = simplices[i].diameter;
                if (birth < death) pairs.emplace_back(birth, death);
            }
        }
    }
    return pairs;
}

SmallDiagram rips_diagram_small(const SquareMatrix& dist, int k) {
    const auto pairs = rips_pairs(dist, k);
    if (pairs.size() > 1)
        throw std::logic_error("rips_diagram_small: more than one diagram point on 2k+2 points");
    SmallDiagram d;
    if (!pairs.empty()) d.point = pairs.front();
    return d;
}

bool is_cross_polytope(const SquareMatrix& dist, int k, double delta) {
    check_input(dist, k);
    const int n = dist.n;
    // Complement of the delta-neighborhood graph must be a perfect matching:
    // every vertex has exactly one partner farther than delta.
    std::vector<int> partner(n, -1);
    for (int a = 0; a < n; ++a) {
        int count = 0;
        for (int b = 0; b < n; ++b) {
            if (b == a) continue;
            if (dist.at(a, b) > delta) {
                partner[a] = b;
                ++count;
            }
        }
        if (count != 1) return false;
    }
    for (int a = 0; a < n; ++a)
        if (partner[partner[a]] != a) return false;
    return true;
}

} // namespace dyntda
