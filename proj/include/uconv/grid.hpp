#pragma once

#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "uconv/core.hpp"

namespace uconv {

/// Axis-aligned dyadic grid: origin + spacing * index, row-major enumeration
/// with axis 0 slowest. Midpoints of index pairs with componentwise even sums
/// are grid points again, so midpoint search runs on exact integers.
struct DyadicGrid {
    Vec origin;
    double spacing = 1.0;
    std::array<int, 3> shape{1, 1, 1};
    int dim = 1;

    long size() const {
        long n = 1;
        for (int i = 0; i < dim; ++i) n *= shape[static_cast<size_t>(i)];
        return n;
    }
    Vec point_at(const std::array<int, 3>& idx) const {
        Vec p = origin;
        for (int i = 0; i < dim; ++i) p[i] = origin[i] + spacing * idx[static_cast<size_t>(i)];
        return p;
    }
    std::array<int, 3> unflatten(long k) const {
        std::array<int, 3> idx{0, 0, 0};
        for (int i = dim - 1; i >= 0; --i) {
            idx[static_cast<size_t>(i)] = static_cast<int>(k % shape[static_cast<size_t>(i)]);
            k /= shape[static_cast<size_t>(i)];
        }
        return idx;
    }
    long flatten(const std::array<int, 3>& idx) const {
        long k = 0;
        for (int i = 0; i < dim; ++i) k = k * shape[static_cast<size_t>(i)] + idx[static_cast<size_t>(i)];
        return k;
    }
    bool in_range(const std::array<int, 3>& idx) const {
        for (int i = 0; i < dim; ++i)
            if (idx[static_cast<size_t>(i)] < 0 || idx[static_cast<size_t>(i)] >= shape[static_cast<size_t>(i)]) return false;
        return true;
    }
};

inline DyadicGrid make_dyadic_grid(const Vec& origin, double spacing, const std::vector<int>& shape) {
    if (!(spacing > 0.0)) throw precondition_error("make_dyadic_grid: spacing must be > 0");
    if (shape.empty() || shape.size() > 3)
        throw precondition_error("make_dyadic_grid: dimension must be 1..3");
    DyadicGrid g;
    g.dim = static_cast<int>(shape.size());
    g.origin = origin;
    g.origin.dim = g.dim;
    g.spacing = spacing;
    for (size_t i = 0; i < shape.size(); ++i) {
        if (shape[i] < 2) throw precondition_error("make_dyadic_grid: shape entries must be >= 2");
        g.shape[i] = shape[i];
    }
    return g;
}

/// Finite point support: either a full dyadic grid or an explicit point set.
/// Immutable after construction; lookup is exact (bit-level).
class Support {
public:
    Support() = default;

    static Support from_grid(const DyadicGrid& g) {
        Support s;
        s.grid_ = g;
        s.dim_ = g.dim;
        const long n = g.size();
        s.pts_.reserve(static_cast<size_t>(n));
        for (long k = 0; k < n; ++k) s.pts_.push_back(g.point_at(g.unflatten(k)));
        s.build_index();
        return s;
    }

    static Support from_points(std::vector<Vec> pts) {
        if (pts.empty()) throw precondition_error("Support: empty point list");
        Support s;
        s.dim_ = pts.front().dim;
        for (const auto& p : pts)
            if (p.dim != s.dim_) throw precondition_error("Support: mixed dimensions");
        s.pts_ = std::move(pts);
        s.build_index();
        if (s.lookup_.size() != s.pts_.size())
            throw precondition_error("Support: duplicate points");
        return s;
    }

    int dim() const { return dim_; }
    int size() const { return static_cast<int>(pts_.size()); }
    const Vec& point(int i) const { return pts_[static_cast<size_t>(i)]; }
    const std::vector<Vec>& points() const { return pts_; }
    bool has_grid() const { return grid_.has_value(); }
    const DyadicGrid& grid() const { return *grid_; }

    std::optional<int> index_of(const Vec& p) const {
        auto it = lookup_.find(VecKey(p));
        if (it == lookup_.end()) return std::nullopt;
        return it->second;
    }

    /// Index of the exact midpoint of points i and j, if it is a support point.
    /// Grid-backed supports decide via integer indices, never via rounding.
    std::optional<int> midpoint_index(int i, int j) const {
        if (grid_) {
            auto a = grid_->unflatten(i), b = grid_->unflatten(j);
            std::array<int, 3> m{0, 0, 0};
            for (int k = 0; k < dim_; ++k) {
                const int s = a[static_cast<size_t>(k)] + b[static_cast<size_t>(k)];
                if (s & 1) return std::nullopt;
                m[static_cast<size_t>(k)] = s / 2;
            }
            return static_cast<int>(grid_->flatten(m));
        }
        return index_of(midpoint(pts_[static_cast<size_t>(i)], pts_[static_cast<size_t>(j)]));
    }

    /// All unordered pairs {j,k} (j <= k) of support points whose exact
    /// midpoint is point i.
    std::vector<std::pair<int, int>> midpoint_pairs(int i) const {
        std::vector<std::pair<int, int>> out;
        if (grid_) {
            auto xi = grid_->unflatten(i);
            const long n = grid_->size();
            for (long j = 0; j < n; ++j) {
                auto yj = grid_->unflatten(j);
                std::array<int, 3> z{0, 0, 0};
                bool ok = true;
                for (int k = 0; k < dim_; ++k) {
                    z[static_cast<size_t>(k)] = 2 * xi[static_cast<size_t>(k)] - yj[static_cast<size_t>(k)];
                    if (z[static_cast<size_t>(k)] < 0 || z[static_cast<size_t>(k)] >= grid_->shape[static_cast<size_t>(k)]) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) continue;
                const long zj = grid_->flatten(z);
                if (j <= zj) out.emplace_back(static_cast<int>(j), static_cast<int>(zj));
            }
            return out;
        }
        const Vec& x = pts_[static_cast<size_t>(i)];
        for (int j = 0; j < size(); ++j) {
            Vec z = 2.0 * x - pts_[static_cast<size_t>(j)];
            auto k = index_of(z);
            if (k && j <= *k) out.emplace_back(j, *k);
        }
        return out;
    }

private:
    void build_index() {
        lookup_.reserve(pts_.size() * 2);
        for (int i = 0; i < static_cast<int>(pts_.size()); ++i)
            lookup_.emplace(VecKey(pts_[static_cast<size_t>(i)]), i);
    }

    int dim_ = 1;
    std::vector<Vec> pts_;
    std::optional<DyadicGrid> grid_;
    std::unordered_map<VecKey, int, VecKeyHash> lookup_;
};

/// Largest power of two dividing |v| (v != 0).
inline int two_adic_valuation(int v) {
    if (v < 0) v = -v;
    int a = 0;
    while (v % 2 == 0) {
        v /= 2;
        ++a;
    }
    return a;
}

}  // namespace uconv
