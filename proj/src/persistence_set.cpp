#include "dyntda/persistence_set.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "dyntda/erosion.hpp"
#include "dyntda/errors.hpp"
#include "dyntda/parallel.hpp"
#include "dyntda/rng.hpp"

namespace dyntda {

namespace {

std::vector<int> sample_subset(SplitMix64& rng, int n, int m, std::vector<int>& scratch) {
    scratch.resize(n);
    std::iota(scratch.begin(), scratch.end(), 0);
    for (int i = 0; i < m; ++i) {
        const int j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
        std::swap(scratch[i], scratch[j]);
    }
    std::vector<int> subset(scratch.begin(), scratch.begin() + m);
    std::sort(subset.begin(), subset.end());
    return subset;
}

PersistenceSet build_from_subsets(const DynamicMetricSpace& dms, int k, const DynGrid& grid,
                                  std::vector<std::vector<int>> subsets) {
    PersistenceSet ps;
    ps.k = k;
    ps.grid = grid;
    ps.provenance = std::move(subsets);
    ps.modules.reserve(ps.provenance.size());
    for (const auto& subset : ps.provenance)
        ps.modules.push_back(build_dyn_module(restrict_points(dms, subset), k, grid));
    return ps;
}

} // namespace

PersistenceSet sample_persistence_set(const DynamicMetricSpace& dms, int k, int count,
                                      const DynGrid& grid, std::uint64_t seed) {
    const int m = 2 * k + 2;
    if (dms.size() < m)
        throw std::invalid_argument("sample_persistence_set: DMS has fewer than 2k+2 points");
    if (count < 1) throw std::invalid_argument("sample_persistence_set: count must be positive");

    SplitMix64 rng(seed);
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> subsets;
    std::vector<int> scratch;
    constexpr int kRetryCap = 64;
    for (int s = 0; s < count; ++s) {
        std::vector<int> subset;
        for (int attempt = 0; attempt < kRetryCap; ++attempt) {
            subset = sample_subset(rng, dms.size(), m, scratch);
            if (!seen.count(subset)) break;
        }
        seen.insert(subset);
        subsets.push_back(std::move(subset));
    }
    return build_from_subsets(dms, k, grid, std::move(subsets));
}

PersistenceSet exhaustive_persistence_set(const DynamicMetricSpace& dms, int k,
                                          const DynGrid& grid) {
    const int m = 2 * k + 2;
    const int n = dms.size();
    if (n < m)
        throw std::invalid_argument("exhaustive_persistence_set: DMS has fewer than 2k+2 points");
    std::vector<std::vector<int>> subsets;
    std::vector<int> c(m);
    std::iota(c.begin(), c.end(), 0);
    for (;;) {
        subsets.push_back(c);
        int i = m - 1;
        while (i >= 0 && c[i] == n - m + i) --i;
        if (i < 0) break;
        ++c[i];
        for (int j = i + 1; j < m; ++j) c[j] = c[j - 1] + 1;
    }
    return build_from_subsets(dms, k, grid, std::move(subsets));
}

std::vector<int> greedy_kcenter(int n, const std::function<double(int, int)>& dist, int target,
                                std::uint64_t seed, int threads) {
    if (target < 1) throw std::invalid_argument("greedy_kcenter: target must be positive");
    if (target > n) throw std::invalid_argument("greedy_kcenter: target exceeds set size");

    SplitMix64 rng(seed);
    std::vector<int> chosen;
    chosen.reserve(target);
    std::vector<bool> is_chosen(n, false);
    chosen.push_back(static_cast<int>(rng.below(static_cast<std::uint64_t>(n))));
    is_chosen[chosen.back()] = true;

    std::vector<double> min_dist(n, std::numeric_limits<double>::infinity());
    std::vector<double> batch(n);
    while (static_cast<int>(chosen.size()) < target) {
        const int latest = chosen.back();
        parallel_for(static_cast<std::size_t>(n), threads,
                     [&](std::size_t i) { batch[i] = dist(latest, static_cast<int>(i)); });
        int best = -1;
        double best_dist = -1.0;
        for (int i = 0; i < n; ++i) {
            min_dist[i] = std::min(min_dist[i], batch[i]);
            if (!is_chosen[i] && min_dist[i] > best_dist) {
                best_dist = min_dist[i];
                best = i;
            }
        }
        chosen.push_back(best);
        is_chosen[best] = true;
    }
    return chosen;
}

PersistenceSet kcenter_reduce(const PersistenceSet& ps, int target, std::uint64_t seed,
                              int threads) {
    if (target < 1) throw std::invalid_argument("kcenter_reduce: target must be positive");
    if (static_cast<std::size_t>(target) > ps.size())
        throw std::invalid_argument("kcenter_reduce: target exceeds set size");

    // convert once; the greedy loop evaluates O(target * n) distances
    std::vector<GridModule> grids;
    grids.reserve(ps.size());
    for (const auto& m : ps.modules) {
        grids.push_back(dyn_to_poset_coords(m));
        grids.back().validate();
    }
    auto dist = [&](int a, int b) { return erosion_distance(grids[a], grids[b]); };
    const std::vector<int> chosen =
        greedy_kcenter(static_cast<int>(ps.size()), dist, target, seed, threads);

    PersistenceSet out;
    out.k = ps.k;
    out.grid = ps.grid;
    for (int idx : chosen) {
        out.modules.push_back(ps.modules[idx]);
        out.provenance.push_back(ps.provenance[idx]);
    }
    return out;
}

double hausdorff_erosion(const PersistenceSet& a, const PersistenceSet& b, int threads) {
    if (a.size() == 0 || b.size() == 0)
        throw std::invalid_argument("hausdorff_erosion: empty persistence set");
    if (a.k != b.k) throw std::invalid_argument("hausdorff_erosion: degree mismatch");
    if (!(a.grid == b.grid)) throw std::invalid_argument("hausdorff_erosion: grid mismatch");

    std::vector<GridModule> ga, gb;
    ga.reserve(a.size());
    gb.reserve(b.size());
    for (const auto& m : a.modules) ga.push_back(dyn_to_poset_coords(m));
    for (const auto& m : b.modules) gb.push_back(dyn_to_poset_coords(m));

    const std::size_t na = ga.size(), nb = gb.size();
    std::vector<double> pairwise(na * nb);
    parallel_for(na * nb, threads, [&](std::size_t idx) {
        pairwise[idx] = erosion_distance(ga[idx / nb], gb[idx % nb]);
    });

    double directed_ab = 0.0;
    for (std::size_t i = 0; i < na; ++i) {
        double nearest = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < nb; ++j) nearest = std::min(nearest, pairwise[i * nb + j]);
        directed_ab = std::max(directed_ab, nearest);
    }
    double directed_ba = 0.0;
    for (std::size_t j = 0; j < nb; ++j) {
        double nearest = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < na; ++i) nearest = std::min(nearest, pairwise[i * nb + j]);
        directed_ba = std::max(directed_ba, nearest);
    }
    return std::max(directed_ab, directed_ba);
}

void DistanceMatrix::validate() const {
    const int n = values.n;
    if (static_cast<int>(labels.size()) != n)
        throw std::invalid_argument("DistanceMatrix: label count mismatch");
    for (int i = 0; i < n; ++i) {
        if (values.at(i, i) != 0.0)
            throw std::invalid_argument("DistanceMatrix: nonzero diagonal");
        for (int j = 0; j < n; ++j) {
            if (!(values.at(i, j) >= 0.0))
                throw std::invalid_argument("DistanceMatrix: negative or NaN entry");
            if (values.at(i, j) != values.at(j, i))
                throw std::invalid_argument("DistanceMatrix: asymmetric");
        }
    }
}

DistanceMatrix combine_max(const std::vector<DistanceMatrix>& matrices) {
    if (matrices.empty()) throw std::invalid_argument("combine_max: no matrices");
    DistanceMatrix out = matrices.front();
    for (std::size_t m = 1; m < matrices.size(); ++m) {
        if (matrices[m].labels != out.labels)
            throw std::invalid_argument("combine_max: label mismatch");
        for (std::size_t i = 0; i < out.values.a.size(); ++i)
            out.values.a[i] = std::max(out.values.a[i], matrices[m].values.a[i]);
    }
    return out;
}

namespace {
std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}
} // namespace

void save_distance_matrix(const DistanceMatrix& m, const std::string& path) {
    m.validate();
    std::ofstream out(path);
    if (!out) throw io_error("cannot open for writing: " + path);
    for (const auto& l : m.labels) out << "," << l;
    out << "\n";
    for (int i = 0; i < m.values.n; ++i) {
        out << m.labels[i];
        for (int j = 0; j < m.values.n; ++j) out << "," << format_value(m.values.at(i, j));
        out << "\n";
    }
}

DistanceMatrix load_distance_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open for reading: " + path);
    std::string line;
    if (!std::getline(in, line)) throw io_error("empty distance matrix file: " + path);

    auto split = [](const std::string& s) {
        std::vector<std::string> fields;
        std::stringstream ss(s);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        return fields;
    };

    const auto header = split(line);
    if (header.empty() || !header.front().empty())
        throw io_error("malformed distance matrix header: " + path);
    DistanceMatrix m;
    m.labels.assign(header.begin() + 1, header.end());
    const int n = static_cast<int>(m.labels.size());
    m.values = SquareMatrix(n);
    for (int i = 0; i < n; ++i) {
        if (!std::getline(in, line)) throw io_error("truncated distance matrix: " + path);
        const auto fields = split(line);
        if (static_cast<int>(fields.size()) != n + 1 || fields[0] != m.labels[i])
            throw io_error("malformed distance matrix row: " + path);
        for (int j = 0; j < n; ++j) m.values.at(i, j) = std::stod(fields[j + 1]);
    }
    m.validate();
    return m;
}

} // namespace dyntda
