#include "dyntda/dyn_module.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "dyntda/rips_small.hpp"

namespace dyntda {

ThinDynModule::ThinDynModule(DynGrid grid) : grid_(grid) {
    const std::size_t t = static_cast<std::size_t>(grid_.time_grid.count);
    entries_.assign(t * t, Entry{});
}

std::size_t ThinDynModule::index(int i, int j) const {
    const int t = grid_.time_grid.count;
    if (i < 0 || j < i || j >= t)
        throw std::invalid_argument("ThinDynModule: interval index out of range");
    return static_cast<std::size_t>(i) * t + j;
}

void ThinDynModule::set_entry(int i, int j, double birth, double death) {
    if (!(birth >= 0.0) || !(birth < death))
        throw std::invalid_argument("ThinDynModule: need 0 <= birth < death");
    entries_[index(i, j)] = {birth, death, true};
}

void ThinDynModule::clear_entry(int i, int j) { entries_[index(i, j)] = Entry{}; }

std::optional<std::pair<double, double>> ThinDynModule::entry(int i, int j) const {
    const Entry& e = entries_[index(i, j)];
    if (!e.present) return std::nullopt;
    return std::make_pair(e.birth, e.death);
}

std::optional<Interval1d> ThinDynModule::support_interval(int i, int j) const {
    const Entry& e = entries_[index(i, j)];
    if (!e.present) return std::nullopt;
    const double h = grid_.spacing();
    const double w = grid_.delta_weight;
    // first m with m*h >= w*birth, last m with m*h < w*death; nudged so the
    // rounded bounds agree exactly with the in_support predicate
    int lo = static_cast<int>(std::ceil(w * e.birth / h));
    while (lo * h < w * e.birth) ++lo;
    while (lo > 0 && (lo - 1) * h >= w * e.birth) --lo;
    int hi = static_cast<int>(std::ceil(w * e.death / h)) - 1;
    while (hi >= 0 && hi * h >= w * e.death) --hi;
    while ((hi + 1) * h < w * e.death) ++hi;
    lo = std::max(lo, 0);
    hi = std::min(hi, grid_.delta_count - 1);
    if (lo > hi) return std::nullopt;
    return Interval1d{lo, hi};
}

bool ThinDynModule::in_support(const DynPoint& p) const {
    const int t = grid_.time_grid.count;
    if (p.i < 0 || p.j < p.i || p.j >= t || p.m < 0 || p.m >= grid_.delta_count) return false;
    const Entry& e = entries_[static_cast<std::size_t>(p.i) * t + p.j];
    if (!e.present) return false;
    const double scale = p.m * grid_.spacing();
    const double w = grid_.delta_weight;
    return w * e.birth <= scale && scale < w * e.death;
}

std::vector<DynPoint> ThinDynModule::support_points() const {
    std::vector<DynPoint> out;
    const int t = grid_.time_grid.count;
    for (int i = 0; i < t; ++i)
        for (int j = i; j < t; ++j) {
            const auto iv = support_interval(i, j);
            if (!iv) continue;
            for (int m = iv->lo; m <= iv->hi; ++m) out.push_back({i, j, m});
        }
    return out;
}

bool ThinDynModule::empty() const {
    const int t = grid_.time_grid.count;
    for (int i = 0; i < t; ++i)
        for (int j = i; j < t; ++j)
            if (support_interval(i, j)) return false;
    return true;
}

nlohmann::json ThinDynModule::to_json() const {
    nlohmann::json entries = nlohmann::json::array();
    const int t = grid_.time_grid.count;
    for (int i = 0; i < t; ++i)
        for (int j = i; j < t; ++j) {
            const auto e = entry(i, j);
            if (e) entries.push_back({i, j, e->first, e->second});
        }
    return nlohmann::json{{"grid",
                           {{"t_start", grid_.time_grid.t_start},
                            {"step", grid_.time_grid.step},
                            {"T", grid_.time_grid.count},
                            {"S", grid_.delta_count},
                            {"delta_weight", grid_.delta_weight}}},
                          {"entries", std::move(entries)}};
}

ThinDynModule ThinDynModule::from_json(const nlohmann::json& j) {
    const auto& g = j.at("grid");
    DynGrid grid(TimeGrid(g.at("t_start").get<double>(), g.at("step").get<double>(),
                          g.at("T").get<int>()),
                 g.at("S").get<int>(), g.at("delta_weight").get<double>());
    ThinDynModule m(grid);
    for (const auto& row : j.at("entries"))
        m.set_entry(row.at(0).get<int>(), row.at(1).get<int>(), row.at(2).get<double>(),
                    row.at(3).get<double>());
    return m;
}

ThinDynModule build_dyn_module(const DynamicMetricSpace& dms, int k, const DynGrid& grid) {
    if (dms.size() != 2 * k + 2)
        throw std::invalid_argument("build_dyn_module: DMS must have exactly 2k+2 points");
    if (!(dms.time_grid() == grid.time_grid))
        throw std::invalid_argument("build_dyn_module: grid does not match the DMS time grid");
    ThinDynModule out(grid);
    const int t = grid.time_grid.count;
    for (int i = 0; i < t; ++i) {
        AggregateScan scan(dms, i);
        while (scan.next()) {
            const SmallDiagram d = rips_diagram_small(scan.matrix(), k);
            if (!d.empty()) out.set_entry(i, scan.j(), d.birth(), d.death());
        }
    }
    return out;
}

IntervalDecomposition decompose(const ThinDynModule& m) {
    const std::vector<DynPoint> points = m.support_points();
    const int n = static_cast<int>(points.size());

    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    auto unite = [&](int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[b] = a;
    };

    // index of each support point for cover-step lookups
    const int t = m.time_count();
    const int s = m.grid().delta_count;
    std::vector<int> id(static_cast<std::size_t>(t) * t * s, -1);
    auto flat = [&](const DynPoint& p) {
        return (static_cast<std::size_t>(p.i) * t + p.j) * s + p.m;
    };
    for (int a = 0; a < n; ++a) id[flat(points[a])] = a;

    for (int a = 0; a < n; ++a) {
        const DynPoint& p = points[a];
        const DynPoint up[3] = {{p.i - 1, p.j, p.m}, {p.i, p.j + 1, p.m}, {p.i, p.j, p.m + 1}};
        for (const DynPoint& q : up) {
            if (q.i < 0 || q.j >= t || q.m >= s) continue;
            const int b = id[flat(q)];
            if (b >= 0) unite(a, b);
        }
    }

    IntervalDecomposition out;
    std::vector<int> component_of_root(n, -1);
    for (int a = 0; a < n; ++a) {
        const int r = find(a);
        if (component_of_root[r] < 0) {
            component_of_root[r] = static_cast<int>(out.components.size());
            out.components.emplace_back();
        }
        out.components[component_of_root[r]].push_back(points[a]);
    }
    return out;
}

bool verify_acd(const IntervalDecomposition& d) {
    const std::size_t k = d.components.size();
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b)
            for (const DynPoint& p : d.components[a])
                for (const DynPoint& q : d.components[b])
                    if (dyn_leq(p, q) || dyn_leq(q, p)) return false;
    return true;
}

GridModule dyn_to_poset_coords(const ThinDynModule& m) {
    const int t = m.time_count();
    const int s = m.grid().delta_count;
    GridModule out({t, t, s}, m.grid().spacing());
    for (int i = 0; i < t; ++i)
        for (int j = i; j < t; ++j) {
            const auto iv = m.support_interval(i, j);
            if (!iv) continue;
            const int xs[2] = {t - 1 - i, j};
            out.set_column(out.column_index(xs), iv->lo, iv->hi);
        }
    return out;
}

} // namespace dyntda
