#include "dyntda/grid_module.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "dyntda/errors.hpp"
#include "dyntda/rng.hpp"

namespace dyntda {

namespace {
constexpr int kNoLo = std::numeric_limits<int>::max();
constexpr int kNoHi = std::numeric_limits<int>::min();
} // namespace

GridModule::GridModule(std::vector<int> dims, double unit) : dims_(std::move(dims)), unit_(unit) {
    if (dims_.empty()) throw std::invalid_argument("GridModule: need at least one dimension");
    if (unit_ <= 0.0) throw std::invalid_argument("GridModule: unit must be positive");
    long long count = 1;
    for (int n : dims_) {
        if (n < 1) throw std::invalid_argument("GridModule: extents must be positive");
        if (n > 4096) throw std::invalid_argument("GridModule: extent above supported limit 4096");
    }
    for (std::size_t i = 0; i + 1 < dims_.size(); ++i) {
        count *= dims_[i];
        if (count > (1ll << 26)) throw std::invalid_argument("GridModule: column space too large");
    }
    column_count_ = static_cast<int>(count);
    columns_.assign(column_count_, Interval1d{});
}

GridModule::GridModule(const GridModule& other)
    : dims_(other.dims_), unit_(other.unit_), column_count_(other.column_count_),
      columns_(other.columns_) {
    validated_.store(other.validated_.load(std::memory_order_relaxed), std::memory_order_relaxed);
}

GridModule& GridModule::operator=(const GridModule& other) {
    if (this != &other) {
        dims_ = other.dims_;
        unit_ = other.unit_;
        column_count_ = other.column_count_;
        columns_ = other.columns_;
        validated_.store(other.validated_.load(std::memory_order_relaxed),
                         std::memory_order_relaxed);
    }
    return *this;
}

void GridModule::set_column(int column, int lo, int hi) {
    if (column < 0 || column >= column_count_)
        throw std::invalid_argument("GridModule: column out of range");
    if (lo < 0 || hi < lo || hi >= dims_.back())
        throw std::invalid_argument("GridModule: interval violates 0 <= lo <= hi < n_d");
    columns_[column] = {lo, hi};
    validated_.store(false, std::memory_order_relaxed);
}

void GridModule::clear_column(int column) {
    if (column < 0 || column >= column_count_)
        throw std::invalid_argument("GridModule: column out of range");
    columns_[column] = Interval1d{};
    validated_.store(false, std::memory_order_relaxed);
}

std::optional<Interval1d> GridModule::column(int column) const {
    const Interval1d& c = columns_[column];
    if (c.hi < c.lo) return std::nullopt;
    return c;
}

int GridModule::column_index(std::span<const int> xs) const {
    int idx = 0;
    for (std::size_t i = 0; i + 1 < dims_.size(); ++i) idx = idx * dims_[i] + xs[i];
    return idx;
}

void GridModule::column_coords(int column, std::span<int> xs) const {
    for (std::size_t i = dims_.size() - 1; i-- > 0;) {
        xs[i] = column % dims_[i];
        column /= dims_[i];
    }
}

bool GridModule::contains(std::span<const int> p) const {
    for (std::size_t i = 0; i < dims_.size(); ++i)
        if (p[i] < 0 || p[i] >= dims_[i]) return false;
    const Interval1d& c = columns_[column_index(p)];
    const int t = p[dims_.size() - 1];
    return c.lo <= t && t <= c.hi;
}

bool GridModule::empty() const {
    for (const Interval1d& c : columns_)
        if (c.lo <= c.hi) return false;
    return true;
}

void GridModule::validate() const {
    if (validated_.load(std::memory_order_relaxed)) return;

    // The support is order-convex iff it equals the intersection of its
    // up-closure and down-closure. Columnwise, the up-closure threshold is
    // the prefix-min of lo over all columns below, and the down-closure
    // threshold is the suffix-max of hi over all columns above; both are
    // multidimensional prefix scans, one axis at a time.
    const int d1 = dim() - 1;
    std::vector<int> up(column_count_), down(column_count_);
    for (int c = 0; c < column_count_; ++c) {
        up[c] = columns_[c].hi < columns_[c].lo ? kNoLo : columns_[c].lo;
        down[c] = columns_[c].hi < columns_[c].lo ? kNoHi : columns_[c].hi;
    }
    // stride of axis i in the row-major column numbering
    std::vector<long long> stride(d1, 1);
    for (int i = d1 - 2; i >= 0; --i) stride[i] = stride[i + 1] * dims_[i + 1];
    std::vector<int> coords(std::max(d1, 1), 0);
    for (int axis = 0; axis < d1; ++axis) {
        for (int c = 0; c < column_count_; ++c) {
            column_coords(c, coords);
            if (coords[axis] > 0) {
                const int prev = c - static_cast<int>(stride[axis]);
                up[c] = std::min(up[c], up[prev]);
            }
        }
        for (int c = column_count_ - 1; c >= 0; --c) {
            column_coords(c, coords);
            if (coords[axis] + 1 < dims_[axis]) {
                const int next = c + static_cast<int>(stride[axis]);
                down[c] = std::max(down[c], down[next]);
            }
        }
    }
    for (int c = 0; c < column_count_; ++c) {
        const Interval1d& col = columns_[c];
        const bool stored_empty = col.hi < col.lo;
        const bool hull_empty = up[c] == kNoLo || down[c] == kNoHi || up[c] > down[c];
        if (stored_empty != hull_empty || (!stored_empty && (up[c] != col.lo || down[c] != col.hi)))
            throw validation_error("GridModule: support is not order-convex");
    }
    validated_.store(true, std::memory_order_relaxed);
}

nlohmann::json GridModule::to_json() const {
    nlohmann::json cols = nlohmann::json::array();
    std::vector<int> xs(std::max(dim() - 1, 1));
    for (int c = 0; c < column_count_; ++c) {
        const auto iv = column(c);
        if (!iv) continue;
        column_coords(c, xs);
        nlohmann::json row = nlohmann::json::array();
        for (int i = 0; i + 1 < dim(); ++i) row.push_back(xs[i]);
        row.push_back(iv->lo);
        row.push_back(iv->hi);
        cols.push_back(std::move(row));
    }
    return nlohmann::json{{"dims", dims_}, {"unit", unit_}, {"columns", std::move(cols)}};
}

GridModule GridModule::from_json(const nlohmann::json& j) {
    GridModule m(j.at("dims").get<std::vector<int>>(), j.at("unit").get<double>());
    const int d1 = m.dim() - 1;
    std::vector<int> xs(std::max(d1, 1));
    for (const auto& row : j.at("columns")) {
        if (static_cast<int>(row.size()) != d1 + 2)
            throw io_error("GridModule: malformed column row");
        for (int i = 0; i < d1; ++i) xs[i] = row[i].get<int>();
        m.set_column(m.column_index(std::span<const int>(xs.data(), d1)), row[d1].get<int>(),
                     row[d1 + 1].get<int>());
    }
    return m;
}

// ---------------------------------------------------------------------------

RankMaximalGridModule::RankMaximalGridModule(std::vector<int> dims, double unit)
    : dims_(std::move(dims)), unit_(unit) {
    if (dims_.empty()) throw std::invalid_argument("RankMaximalGridModule: need dimensions");
    if (unit_ <= 0.0) throw std::invalid_argument("RankMaximalGridModule: unit must be positive");
    std::size_t count = 1;
    for (int n : dims_) {
        if (n < 1) throw std::invalid_argument("RankMaximalGridModule: extents must be positive");
        count *= static_cast<std::size_t>(n);
    }
    values_.assign(count, 0);
}

std::size_t RankMaximalGridModule::flat_index(std::span<const int> p) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < dims_.size(); ++i) {
        if (p[i] < 0 || p[i] >= dims_[i])
            throw std::invalid_argument("RankMaximalGridModule: point out of range");
        idx = idx * dims_[i] + static_cast<std::size_t>(p[i]);
    }
    return idx;
}

int RankMaximalGridModule::dimension(std::span<const int> p) const {
    for (std::size_t i = 0; i < dims_.size(); ++i)
        if (p[i] < 0 || p[i] >= dims_[i]) return 0;
    std::size_t idx = 0;
    for (std::size_t i = 0; i < dims_.size(); ++i)
        idx = idx * dims_[i] + static_cast<std::size_t>(p[i]);
    return values_[idx];
}

void RankMaximalGridModule::set_dimension(std::span<const int> p, int value) {
    if (value < 0) throw std::invalid_argument("RankMaximalGridModule: dimension must be >= 0");
    values_[flat_index(p)] = value;
}

int RankMaximalGridModule::max_level() const {
    int m = 0;
    for (int v : values_) m = std::max(m, v);
    return m;
}

void RankMaximalGridModule::validate() const {
    // Superlevel sets along the last axis must be contiguous, i.e. every
    // column is unimodal: never rises again after it has fallen.
    const int nd = dims_.back();
    const std::size_t cols = values_.size() / static_cast<std::size_t>(nd);
    for (std::size_t c = 0; c < cols; ++c) {
        const int* v = values_.data() + c * nd;
        bool falling = false;
        for (int t = 1; t < nd; ++t) {
            if (v[t] < v[t - 1]) falling = true;
            else if (v[t] > v[t - 1] && falling)
                throw validation_error(
                    "RankMaximalGridModule: superlevel sets not contiguous in a column");
        }
    }
}

GridModule RankMaximalGridModule::superlevel(int level) const {
    if (level < 1) throw std::invalid_argument("superlevel: level must be >= 1");
    GridModule m(dims_, unit_);
    const int nd = dims_.back();
    const std::size_t cols = values_.size() / static_cast<std::size_t>(nd);
    for (std::size_t c = 0; c < cols; ++c) {
        const int* v = values_.data() + c * nd;
        int lo = -1, hi = -1;
        for (int t = 0; t < nd; ++t)
            if (v[t] >= level) {
                if (lo < 0) lo = t;
                hi = t;
            }
        if (lo >= 0) m.set_column(static_cast<int>(c), lo, hi);
    }
    return m;
}

// ---------------------------------------------------------------------------

GridModule random_acd_module(std::vector<int> dims, std::uint64_t seed, double unit) {
    GridModule m(dims, unit);
    SplitMix64 rng(seed);
    const int d = m.dim();
    const int d1 = d - 1;
    const int corners = 1 + static_cast<int>(rng.below(3));

    struct Corner {
        std::vector<int> x;
        int t;
    };
    auto draw = [&](std::vector<Corner>& out) {
        out.clear();
        for (int c = 0; c < corners; ++c) {
            Corner p;
            p.x.resize(d1);
            for (int i = 0; i < d1; ++i) p.x[i] = static_cast<int>(rng.below(dims[i]));
            p.t = static_cast<int>(rng.below(dims[d1]));
            out.push_back(std::move(p));
        }
    };
    std::vector<Corner> up_corners, down_corners;
    draw(up_corners);
    draw(down_corners);

    std::vector<int> xs(std::max(d1, 1));
    for (int c = 0; c < m.column_count(); ++c) {
        m.column_coords(c, xs);
        int lo = kNoLo, hi = kNoHi;
        for (const Corner& u : up_corners) {
            bool below = true;
            for (int i = 0; i < d1; ++i)
                if (u.x[i] > xs[i]) { below = false; break; }
            if (below) lo = std::min(lo, u.t);
        }
        for (const Corner& v : down_corners) {
            bool above = true;
            for (int i = 0; i < d1; ++i)
                if (v.x[i] < xs[i]) { above = false; break; }
            if (above) hi = std::max(hi, v.t);
        }
        if (lo != kNoLo && hi != kNoHi && lo <= hi) m.set_column(c, lo, hi);
    }
    return m;
}

} // namespace dyntda
