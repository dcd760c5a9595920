#include "dyntda/erosion.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "dyntda/dyn_module.hpp"
#include "dyntda/errors.hpp"

namespace dyntda {

namespace {

int tent(int a, int b, int s) { return std::min(s - a, b - s); }

// Best tent value over the piece [lo, hi] of the support [a, b]. The peak of
// min(s-a, b-s) sits at the midpoint; clamping it into the piece and checking
// both integer neighbors covers every case.
int piece_best(int a, int b, int lo, int hi) {
    const int mid_lo = a + (b - a) / 2;
    const int mid_hi = a + (b - a + 1) / 2;
    int best = std::max(tent(a, b, std::clamp(mid_lo, lo, hi)),
                        tent(a, b, std::clamp(mid_hi, lo, hi)));
    return best;
}

} // namespace

int erosion1d(const FiberSlice& slice) {
    if (!slice.v) return 0;
    const int a = slice.v->lo, b = slice.v->hi;
    if (!slice.w) return (b - a) / 2;
    const int c = slice.w->lo, d = slice.w->hi;
    if (c <= a && b <= d) return 0;
    if (d < a || c > b) return (b - a) / 2;
    int best = 0;
    if (c > a) best = std::max(best, piece_best(a, b, a, std::min(b, c - 1)));
    if (d < b) best = std::max(best, piece_best(a, b, std::max(a, d + 1), b));
    return best;
}

int erosion1d_scan(const FiberSlice& slice) {
    if (!slice.v) return 0;
    int best = 0;
    for (int s = slice.v->lo; s <= slice.v->hi; ++s) {
        if (slice.w && slice.w->lo <= s && s <= slice.w->hi) continue;
        best = std::max(best, tent(slice.v->lo, slice.v->hi, s));
    }
    return best;
}

namespace {

// One sweep event: column enters (start) or leaves (end) the active chain of
// the base-space line `key` at position `s` along the line.
struct Event {
    std::int64_t key; // packed line identifier
    int s;
    int x0; // first coordinate of the column; total order on the chain
    std::int8_t type;  // 0 start, 1 end
    std::int8_t which; // 0 = V, 1 = W
    int key0;          // first component of the line key (0 when d <= 2)

    bool operator<(const Event& o) const {
        if (key != o.key) return key < o.key;
        if (s != o.s) return s < o.s;
        if (type != o.type) return type < o.type;
        if (which != o.which) return which < o.which;
        return x0 < o.x0;
    }
};

// Line key = projected coordinates minus their last component, packed into 13
// bits per component (extents are capped at 4096 in GridModule).
std::int64_t pack_key(std::span<const int> diffs) {
    std::int64_t key = 0;
    for (int v : diffs) key = (key << 13) | static_cast<std::int64_t>(v + 4096);
    return key;
}

void append_events(const GridModule& m, std::int8_t which, std::vector<Event>& events) {
    const int d = m.dim();
    const int d1 = d - 1;
    std::vector<int> xs(d1);
    std::vector<int> diffs(std::max(d1 - 1, 0));
    for (int c = 0; c < m.column_count(); ++c) {
        const auto iv = m.column(c);
        if (!iv) continue;
        m.column_coords(c, xs);
        // projection of (xs, t): v_j = t - xs[j]; the line key v_j - v_{d1-1}
        // = xs[d1-1] - xs[j] does not depend on t.
        for (int j = 0; j + 1 < d1; ++j) diffs[j] = xs[d1 - 1] - xs[j];
        const std::int64_t key = pack_key(diffs);
        const int key0 = d1 >= 2 ? diffs[0] : 0;
        events.push_back({key, iv->lo - xs[d1 - 1], xs[0], 0, which, key0});
        events.push_back({key, iv->hi - xs[d1 - 1], xs[0], 1, which, key0});
    }
}

// Active chain of one module along the current sweep line, keyed by the
// first column coordinate (a total order on the chain). Min and max are
// served from binary heaps with lazy deletion: a column enters and leaves a
// line exactly once, so a generation stamp per x0 marks removals and stale
// stamps from earlier lines are ignored. Contiguous storage keeps the hot
// loop off the allocator.
class ActiveChain {
  public:
    // gen must outlive the call and never repeat across calls sharing the
    // same stamp buffer; stamps equal to the current generation mark removed
    // columns, anything else is stale and ignored.
    void reset(int universe, std::vector<int>& min_buf, std::vector<int>& max_buf,
               std::vector<std::uint64_t>& stamp_buf, std::uint64_t& gen) {
        min_heap_ = &min_buf;
        max_heap_ = &max_buf;
        dead_stamp_ = &stamp_buf;
        gen_ = &gen;
        if (static_cast<int>(dead_stamp_->size()) < universe) dead_stamp_->assign(universe, 0);
        new_line();
    }

    void new_line() {
        ++*gen_;
        min_heap_->clear();
        max_heap_->clear();
        size_ = 0;
    }

    void insert(int x0) {
        min_heap_->push_back(x0);
        std::push_heap(min_heap_->begin(), min_heap_->end(), std::greater<int>());
        max_heap_->push_back(x0);
        std::push_heap(max_heap_->begin(), max_heap_->end());
        ++size_;
    }

    void erase(int x0) {
        (*dead_stamp_)[x0] = *gen_;
        --size_;
    }

    bool empty() const { return size_ == 0; }

    int min() {
        while ((*dead_stamp_)[min_heap_->front()] == *gen_) {
            std::pop_heap(min_heap_->begin(), min_heap_->end(), std::greater<int>());
            min_heap_->pop_back();
        }
        return min_heap_->front();
    }

    int max() {
        while ((*dead_stamp_)[max_heap_->front()] == *gen_) {
            std::pop_heap(max_heap_->begin(), max_heap_->end());
            max_heap_->pop_back();
        }
        return max_heap_->front();
    }

  private:
    std::vector<int>* min_heap_ = nullptr;
    std::vector<int>* max_heap_ = nullptr;
    std::vector<std::uint64_t>* dead_stamp_ = nullptr;
    std::uint64_t* gen_ = nullptr;
    int size_ = 0;
};

struct SweepBuffers {
    std::vector<Event> events;
    std::vector<Event> scratch;
    std::vector<int> histogram;
    std::vector<int> min_v, max_v, min_w, max_w;
    std::vector<std::uint64_t> stamp_v, stamp_w;
    std::uint64_t gen_v = 0, gen_w = 0;
};

// With d == 2 every event lies on the single base line, so grouping only
// needs a counting sort over the bounded s range; this keeps the event pass
// linear and cache-friendly at large n.
void order_events_2d(SweepBuffers& buf, int n1, int nd) {
    const int offset = n1 - 1;
    const int range = n1 + nd - 1;
    buf.histogram.assign(range + 1, 0);
    for (const Event& e : buf.events) ++buf.histogram[e.s + offset + 1];
    for (int i = 0; i < range; ++i) buf.histogram[i + 1] += buf.histogram[i];
    buf.scratch.resize(buf.events.size());
    for (const Event& e : buf.events) buf.scratch[buf.histogram[e.s + offset]++] = e;
    buf.events.swap(buf.scratch);
}

int sweep(const GridModule& v, const GridModule& w, const ErosionOptions& opt) {
    const int d = v.dim();
    thread_local SweepBuffers buf;
    buf.events.clear();
    buf.events.reserve(2 * static_cast<std::size_t>(v.column_count() + w.column_count()));
    append_events(v, 0, buf.events);
    append_events(w, 1, buf.events);
    auto& events = buf.events;
    if (events.empty()) return 0;
    if (d == 2)
        order_events_2d(buf, v.dims()[0], v.dims()[1]);
    else
        std::sort(events.begin(), events.end());

    auto fiber_value = [&](const FiberSlice& slice) {
        return opt.use_linear_scan ? erosion1d_scan(slice) : erosion1d(slice);
    };

    ActiveChain active_v, active_w;
    active_v.reset(v.dims()[0], buf.min_v, buf.max_v, buf.stamp_v, buf.gen_v);
    active_w.reset(w.dims()[0], buf.min_w, buf.max_w, buf.stamp_w, buf.gen_w);

    int ans = 0;
    std::size_t i = 0;
    while (i < events.size()) {
        if (i > 0 && events[i].key != events[i - 1].key) {
            active_v.new_line();
            active_w.new_line();
        }
        std::size_t j = i;
        while (j < events.size() && events[j].key == events[i].key && events[j].s == events[i].s)
            ++j;
        for (std::size_t e = i; e < j; ++e)
            if (events[e].type == 0)
                (events[e].which == 0 ? active_v : active_w).insert(events[e].x0);

        // v1 + x0 recovers the last-axis coordinate where the fiber meets a
        // column; v1 is the first projected coordinate of the current base
        // point (equal to s itself when d == 2).
        const int v1 = d >= 3 ? events[i].key0 + events[i].s : events[i].s;
        FiberSlice slice;
        if (!active_v.empty()) slice.v = Interval1d{v1 + active_v.min(), v1 + active_v.max()};
        if (!active_w.empty()) slice.w = Interval1d{v1 + active_w.min(), v1 + active_w.max()};
        ans = std::max(ans, std::max(fiber_value(slice), fiber_value(slice.swapped())));

        for (std::size_t e = i; e < j; ++e)
            if (events[e].type == 1)
                (events[e].which == 0 ? active_v : active_w).erase(events[e].x0);
        i = j;
    }
    return ans;
}

void check_compatible(const std::vector<int>& dv, double uv, const std::vector<int>& dw,
                      double uw) {
    if (dv != dw) throw std::invalid_argument("erosion_distance: dimension mismatch");
    if (uv != uw) throw std::invalid_argument("erosion_distance: unit mismatch");
}

} // namespace

double erosion_distance(const GridModule& v, const GridModule& w, const ErosionOptions& opt) {
    check_compatible(v.dims(), v.unit(), w.dims(), w.unit());
    v.validate();
    w.validate();
    if (v.dim() == 1) {
        const FiberSlice slice{v.column(0), w.column(0)};
        const int steps = std::max(opt.use_linear_scan ? erosion1d_scan(slice) : erosion1d(slice),
                                   opt.use_linear_scan ? erosion1d_scan(slice.swapped())
                                                       : erosion1d(slice.swapped()));
        return steps * v.unit();
    }
    return sweep(v, w, opt) * v.unit();
}

namespace {

// Support-membership rank of the segment [p, q]: 1 iff both endpoints lie in
// the support. Coordinates may be outside the box.
int rank01(const GridModule& m, std::span<const int> p, std::span<const int> q) {
    return m.contains(p) && m.contains(q) ? 1 : 0;
}

// Odometer over all q with p <= q <= dims-1. Returns false when exhausted.
bool advance_upper(std::vector<int>& q, const std::vector<int>& p, const std::vector<int>& dims) {
    for (std::size_t i = q.size(); i-- > 0;) {
        if (q[i] + 1 < dims[i]) {
            ++q[i];
            for (std::size_t j = i + 1; j < q.size(); ++j) q[j] = p[j];
            return true;
        }
    }
    return false;
}

bool advance_point(std::vector<int>& p, const std::vector<int>& dims) {
    for (std::size_t i = p.size(); i-- > 0;) {
        if (p[i] + 1 < dims[i]) {
            ++p[i];
            for (std::size_t j = i + 1; j < p.size(); ++j) p[j] = 0;
            return true;
        }
    }
    return false;
}

std::uint64_t segment_count(const std::vector<int>& dims) {
    std::uint64_t total = 1;
    for (int n : dims) total *= static_cast<std::uint64_t>(n) * (n + 1) / 2;
    return total;
}

} // namespace

double erosion_distance_oracle(const GridModule& v, const GridModule& w,
                               std::uint64_t op_budget) {
    check_compatible(v.dims(), v.unit(), w.dims(), w.unit());
    v.validate();
    w.validate();
    const std::vector<int>& dims = v.dims();
    const int d = v.dim();
    const int max_extent = *std::max_element(dims.begin(), dims.end());
    if (segment_count(dims) > op_budget / (static_cast<std::uint64_t>(max_extent) + 2))
        throw resource_error("erosion_distance_oracle: segment budget exceeded");

    std::vector<int> p(d, 0), q(d), pm(d), qp(d);
    int best = 0;
    do {
        q = p;
        do {
            const int rv = rank01(v, p, q);
            const int rw = rank01(w, p, q);
            int eps = 0;
            for (;; ++eps) {
                for (int i = 0; i < d; ++i) {
                    pm[i] = p[i] - eps;
                    qp[i] = q[i] + eps;
                }
                if (rank01(v, pm, qp) <= rw && rank01(w, pm, qp) <= rv) break;
            }
            // inf semantics: the threshold is the last shift where the
            // inequalities still fail
            if (eps > 0) best = std::max(best, eps - 1);
        } while (advance_upper(q, p, dims));
    } while (advance_point(p, dims));
    return best * v.unit();
}

double erosion_distance_dyn(const ThinDynModule& v, const ThinDynModule& w) {
    if (!(v.grid() == w.grid()))
        throw std::invalid_argument("erosion_distance_dyn: grid mismatch");
    return erosion_distance(dyn_to_poset_coords(v), dyn_to_poset_coords(w));
}

double erosion_distance_rank_maximal(const RankMaximalGridModule& v,
                                     const RankMaximalGridModule& w) {
    check_compatible(v.dims(), v.unit(), w.dims(), w.unit());
    v.validate();
    w.validate();
    const int levels = std::max(v.max_level(), w.max_level());
    double best = 0.0;
    for (int i = 1; i <= levels; ++i)
        best = std::max(best, erosion_distance(v.superlevel(i), w.superlevel(i)));
    return best;
}

double erosion_distance_rank_maximal_oracle(const RankMaximalGridModule& v,
                                            const RankMaximalGridModule& w,
                                            std::uint64_t op_budget) {
    check_compatible(v.dims(), v.unit(), w.dims(), w.unit());
    v.validate();
    w.validate();
    const std::vector<int>& dims = v.dims();
    const int d = static_cast<int>(dims.size());
    const int max_extent = *std::max_element(dims.begin(), dims.end());
    if (segment_count(dims) > op_budget / (static_cast<std::uint64_t>(max_extent) + 2))
        throw resource_error("erosion_distance_rank_maximal_oracle: segment budget exceeded");

    auto rank = [](const RankMaximalGridModule& m, std::span<const int> p,
                   std::span<const int> q) {
        return std::min(m.dimension(p), m.dimension(q));
    };

    std::vector<int> p(d, 0), q(d), pm(d), qp(d);
    int best = 0;
    do {
        q = p;
        do {
            const int rv = rank(v, p, q);
            const int rw = rank(w, p, q);
            int eps = 0;
            for (;; ++eps) {
                for (int i = 0; i < d; ++i) {
                    pm[i] = p[i] - eps;
                    qp[i] = q[i] + eps;
                }
                if (rank(v, pm, qp) <= rw && rank(w, pm, qp) <= rv) break;
            }
            if (eps > 0) best = std::max(best, eps - 1);
        } while (advance_upper(q, p, dims));
    } while (advance_point(p, dims));
    return best * v.unit();
}

} // namespace dyntda
