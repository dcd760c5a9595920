#include "dyntda/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

#include "dyntda/errors.hpp"
#include "dyntda/parallel.hpp"
#include "dyntda/rng.hpp"

namespace dyntda {

nlohmann::json Dendrogram::to_json() const {
    nlohmann::json merges_json = nlohmann::json::array();
    for (const Merge& m : merges) merges_json.push_back({m.cluster_a, m.cluster_b, m.height});
    return nlohmann::json{{"merges", std::move(merges_json)}};
}

Dendrogram single_linkage(const DistanceMatrix& dm) {
    dm.validate();
    const int n = dm.values.n;
    Dendrogram out;
    if (n <= 1) return out;

    // Prim's MST on the complete graph
    std::vector<bool> in_tree(n, false);
    std::vector<double> best(n, std::numeric_limits<double>::infinity());
    std::vector<int> best_from(n, 0);
    struct Edge {
        double w;
        int u, v;
    };
    std::vector<Edge> edges;
    in_tree[0] = true;
    for (int v = 1; v < n; ++v) {
        best[v] = dm.values.at(0, v);
        best_from[v] = 0;
    }
    for (int step = 1; step < n; ++step) {
        int pick = -1;
        for (int v = 0; v < n; ++v)
            if (!in_tree[v] && (pick < 0 || best[v] < best[pick])) pick = v;
        in_tree[pick] = true;
        edges.push_back({best[pick], std::min(best_from[pick], pick),
                         std::max(best_from[pick], pick)});
        for (int v = 0; v < n; ++v)
            if (!in_tree[v] && dm.values.at(pick, v) < best[v]) {
                best[v] = dm.values.at(pick, v);
                best_from[v] = pick;
            }
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        if (a.w != b.w) return a.w < b.w;
        if (a.u != b.u) return a.u < b.u;
        return a.v < b.v;
    });

    std::vector<int> parent(n), cluster_id(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::iota(cluster_id.begin(), cluster_id.end(), 0);
    auto find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const int ra = find(edges[e].u);
        const int rb = find(edges[e].v);
        const int ca = cluster_id[ra];
        const int cb = cluster_id[rb];
        out.merges.push_back({std::min(ca, cb), std::max(ca, cb), edges[e].w});
        parent[rb] = ra;
        cluster_id[ra] = n + static_cast<int>(e);
    }
    return out;
}

namespace {

// Cyclic Jacobi for a symmetric matrix; eigenvectors in columns of v.
void jacobi_eigen(SquareMatrix a, std::vector<double>& values, SquareMatrix& v, double tol,
                  int max_sweeps) {
    const int n = a.n;
    v = SquareMatrix(n);
    for (int i = 0; i < n; ++i) v.at(i, i) = 1.0;

    double scale = 0.0;
    for (int i = 0; i < n; ++i) scale = std::max(scale, std::fabs(a.at(i, i)));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) scale = std::max(scale, std::fabs(a.at(i, j)));
    if (scale == 0.0) scale = 1.0;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off = std::max(off, std::fabs(a.at(i, j)));
        if (off <= tol * scale) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                const double apq = a.at(p, q);
                if (std::fabs(apq) <= tol * scale * 1e-3) continue;
                const double theta = (a.at(q, q) - a.at(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int i = 0; i < n; ++i) {
                    const double aip = a.at(i, p), aiq = a.at(i, q);
                    a.at(i, p) = c * aip - s * aiq;
                    a.at(i, q) = s * aip + c * aiq;
                }
                for (int i = 0; i < n; ++i) {
                    const double api = a.at(p, i), aqi = a.at(q, i);
                    a.at(p, i) = c * api - s * aqi;
                    a.at(q, i) = s * api + c * aqi;
                }
                for (int i = 0; i < n; ++i) {
                    const double vip = v.at(i, p), viq = v.at(i, q);
                    v.at(i, p) = c * vip - s * viq;
                    v.at(i, q) = s * vip + c * viq;
                }
            }
    }
    values.resize(n);
    for (int i = 0; i < n; ++i) values[i] = a.at(i, i);
}

} // namespace

MdsEmbedding classical_mds(const DistanceMatrix& dm, int dim) {
    dm.validate();
    if (dim < 1) throw std::invalid_argument("classical_mds: dim must be positive");
    const int n = dm.values.n;

    // B = -1/2 J D^2 J with J = I - (1/n) 1 1^T
    SquareMatrix b(n);
    std::vector<double> row_mean(n, 0.0);
    double total_mean = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double d2 = dm.values.at(i, j) * dm.values.at(i, j);
            b.at(i, j) = d2;
            row_mean[i] += d2;
        }
        row_mean[i] /= n;
        total_mean += row_mean[i];
    }
    total_mean /= n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            b.at(i, j) = -0.5 * (b.at(i, j) - row_mean[i] - row_mean[j] + total_mean);

    std::vector<double> values;
    SquareMatrix vectors;
    jacobi_eigen(b, values, vectors, 1e-12, 100);

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        if (values[x] != values[y]) return values[x] > values[y];
        return x < y;
    });

    MdsEmbedding out;
    out.coordinates.assign(static_cast<std::size_t>(n) * dim, 0.0);
    for (int d = 0; d < dim && d < n; ++d) {
        const int idx = order[d];
        const double lambda = values[idx];
        out.eigenvalues.push_back(lambda);
        if (lambda < 0.0) out.clipped_negative = true;
        const double factor = std::sqrt(std::max(lambda, 0.0));
        // deterministic sign: largest-magnitude component positive
        int peak = 0;
        for (int i = 1; i < n; ++i)
            if (std::fabs(vectors.at(i, idx)) > std::fabs(vectors.at(peak, idx))) peak = i;
        const double sign = vectors.at(peak, idx) < 0.0 ? -1.0 : 1.0;
        for (int i = 0; i < n; ++i)
            out.coordinates[static_cast<std::size_t>(i) * dim + d] =
                sign * vectors.at(i, idx) * factor;
    }
    return out;
}

void save_mds_csv(const MdsEmbedding& e, const std::vector<std::string>& labels,
                  const std::string& path) {
    const int n = static_cast<int>(labels.size());
    const int dim = n == 0 ? 0 : static_cast<int>(e.coordinates.size()) / n;
    std::ofstream out(path);
    if (!out) throw io_error("cannot open for writing: " + path);
    out << "label";
    for (int d = 0; d < dim; ++d) out << ",c" << d;
    out << "\n";
    char buf[40];
    for (int i = 0; i < n; ++i) {
        out << labels[i];
        for (int d = 0; d < dim; ++d) {
            std::snprintf(buf, sizeof(buf), "%.12g", e.coordinates[static_cast<std::size_t>(i) * dim + d]);
            out << "," << buf;
        }
        out << "\n";
    }
}

OneNnReport one_nn_protocol(const DistanceMatrix& m, const std::vector<std::string>& classes,
                            int trials, std::uint64_t seed, int threads) {
    m.validate();
    const int n = m.values.n;
    if (static_cast<int>(classes.size()) != n)
        throw std::invalid_argument("one_nn_protocol: class label count mismatch");
    if (trials < 1) throw std::invalid_argument("one_nn_protocol: trials must be positive");

    // class ids in first-appearance order
    std::map<std::string, int> ids;
    std::vector<std::vector<int>> members;
    std::vector<int> class_of(n);
    for (int i = 0; i < n; ++i) {
        auto [it, inserted] = ids.emplace(classes[i], static_cast<int>(members.size()));
        if (inserted) members.emplace_back();
        class_of[i] = it->second;
        members[it->second].push_back(i);
    }
    for (const auto& g : members)
        if (g.size() < 2)
            throw std::invalid_argument("one_nn_protocol: every class needs at least 2 members");
    const int n_classes = static_cast<int>(members.size());

    std::vector<double> per_trial(trials);
    parallel_for(static_cast<std::size_t>(trials), threads, [&](std::size_t t) {
        SplitMix64 rng(derive_seed(seed, {static_cast<std::uint64_t>(t)}));
        std::vector<int> reps(n_classes);
        std::vector<bool> is_rep(n, false);
        for (int c = 0; c < n_classes; ++c) {
            reps[c] = members[c][rng.below(members[c].size())];
            is_rep[reps[c]] = true;
        }
        int wrong = 0, total = 0;
        for (int i = 0; i < n; ++i) {
            if (is_rep[i]) continue;
            int nearest = reps[0];
            for (int c = 1; c < n_classes; ++c) {
                const double d = m.values.at(i, reps[c]);
                const double dn = m.values.at(i, nearest);
                // ties resolve to the lowest row index
                if (d < dn || (d == dn && reps[c] < nearest)) nearest = reps[c];
            }
            if (class_of[nearest] != class_of[i]) ++wrong;
            ++total;
        }
        per_trial[t] = total == 0 ? 1.0 : 1.0 - static_cast<double>(wrong) / total;
    });

    double mean = 0.0;
    for (double v : per_trial) mean += v;
    mean /= trials;
    double var = 0.0;
    for (double v : per_trial) var += (v - mean) * (v - mean);
    var = trials > 1 ? var / (trials - 1) : 0.0;

    OneNnReport r;
    r.accuracy = mean;
    r.trial_stddev = std::sqrt(var);
    r.trials = trials;
    r.seed = seed;
    return r;
}

} // namespace dyntda
