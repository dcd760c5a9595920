#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace dyntda {

struct Interval1d {
    int lo = 0;
    int hi = -1; // hi < lo encodes empty at call sites that allow it
};

/// Support of a thin module over the box [n_1] x ... x [n_d] with the product
/// order, stored as one optional interval in the last coordinate per column
/// x in [n_1] x ... x [n_{d-1}]. `unit` is the physical length of one grid
/// step. The support must be order-convex; validate() checks this exactly in
/// O(columns * d) by comparing against the up-closure/down-closure envelopes.
class GridModule {
  public:
    GridModule(std::vector<int> dims, double unit);

    int dim() const { return static_cast<int>(dims_.size()); }
    const std::vector<int>& dims() const { return dims_; }
    double unit() const { return unit_; }
    int column_count() const { return column_count_; }
    int last_extent() const { return dims_.back(); }

    void set_column(int column, int lo, int hi);
    void clear_column(int column);
    std::optional<Interval1d> column(int column) const;

    /// Column index of the first d-1 coordinates (row-major).
    int column_index(std::span<const int> xs) const;
    /// Inverse of column_index.
    void column_coords(int column, std::span<int> xs) const;

    /// Support membership; points outside the box are never in the support.
    bool contains(std::span<const int> p) const;
    bool empty() const;

    void validate() const; // throws validation_error

    nlohmann::json to_json() const;
    static GridModule from_json(const nlohmann::json& j);

    GridModule(const GridModule& other);
    GridModule& operator=(const GridModule& other);
    GridModule(GridModule&&) noexcept = default;
    GridModule& operator=(GridModule&&) noexcept = default;

  private:
    std::vector<int> dims_;
    double unit_ = 1.0;
    int column_count_ = 0;
    std::vector<Interval1d> columns_;
    mutable std::atomic<bool> validated_{false};
};

/// Pointwise dimension function over the box, for modules whose structure-map
/// ranks equal min(dim(p), dim(q)). Each column's superlevel sets
/// {t : dim >= i} must be contiguous intervals (checked by validate()).
class RankMaximalGridModule {
  public:
    RankMaximalGridModule(std::vector<int> dims, double unit);

    const std::vector<int>& dims() const { return dims_; }
    double unit() const { return unit_; }
    int max_level() const;

    int dimension(std::span<const int> p) const; // 0 outside the box
    void set_dimension(std::span<const int> p, int value);

    void validate() const;

    /// Indicator module of {p : dim(p) >= level}; per-level column endpoints
    /// only, the dimension grid itself is not copied.
    GridModule superlevel(int level) const;

  private:
    std::vector<int> dims_;
    double unit_ = 1.0;
    std::vector<int> values_;
    std::size_t flat_index(std::span<const int> p) const;
};

/// Random module whose support is the intersection of a random up-set and a
/// random down-set (each the closure of a few seeded corner points), which is
/// exactly the class of order-convex supports. May be empty. Deterministic
/// per seed.
GridModule random_acd_module(std::vector<int> dims, std::uint64_t seed, double unit = 1.0);

} // namespace dyntda
