#pragma once

#include <algorithm>
#include <vector>

#include "uconv/core.hpp"
#include "uconv/rational.hpp"

namespace uconv {

/// Orientation of (a->b, a->c) with exact rational arithmetic: sign of the
/// cross product, +1 counterclockwise, -1 clockwise, 0 collinear.
inline int orient2d(const Vec& a, const Vec& b, const Vec& c) {
    Rat x1 = to_rat(b[0]) - to_rat(a[0]), y1 = to_rat(b[1]) - to_rat(a[1]);
    Rat x2 = to_rat(c[0]) - to_rat(a[0]), y2 = to_rat(c[1]) - to_rat(a[1]);
    Rat cr = x1 * y2 - y1 * x2;
    return cr > 0 ? 1 : (cr < 0 ? -1 : 0);
}

/// Monotone-chain convex hull of 2D points. Returns indices into pts in CCW
/// order; collinear boundary points are dropped (vertices only). Degenerate
/// inputs (all collinear) yield the two extreme points, or one.
inline std::vector<int> hull2d(const std::vector<Vec>& pts) {
    const int n = static_cast<int>(pts.size());
    std::vector<int> id(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) id[static_cast<size_t>(i)] = i;
    std::sort(id.begin(), id.end(), [&](int i, int j) {
        const Vec &a = pts[static_cast<size_t>(i)], &b = pts[static_cast<size_t>(j)];
        if (a[0] != b[0]) return a[0] < b[0];
        if (a[1] != b[1]) return a[1] < b[1];
        return i < j;
    });
    id.erase(std::unique(id.begin(), id.end(),
                         [&](int i, int j) { return pts[static_cast<size_t>(i)] == pts[static_cast<size_t>(j)]; }),
             id.end());
    const int k = static_cast<int>(id.size());
    if (k <= 2) return id;
    std::vector<int> h(static_cast<size_t>(2 * k));
    int m = 0;
    for (int ii = 0; ii < k; ++ii) {  // lower chain
        int i = id[static_cast<size_t>(ii)];
        while (m >= 2 && orient2d(pts[static_cast<size_t>(h[static_cast<size_t>(m - 2)])],
                                  pts[static_cast<size_t>(h[static_cast<size_t>(m - 1)])],
                                  pts[static_cast<size_t>(i)]) <= 0)
            --m;
        h[static_cast<size_t>(m++)] = i;
    }
    const int lower = m + 1;
    for (int ii = k - 2; ii >= 0; --ii) {  // upper chain
        int i = id[static_cast<size_t>(ii)];
        while (m >= lower && orient2d(pts[static_cast<size_t>(h[static_cast<size_t>(m - 2)])],
                                      pts[static_cast<size_t>(h[static_cast<size_t>(m - 1)])],
                                      pts[static_cast<size_t>(i)]) <= 0)
            --m;
        h[static_cast<size_t>(m++)] = i;
    }
    h.resize(static_cast<size_t>(m - 1));
    return h;
}

/// Lower convex hull of the graph {(x_i, y_i)}; input must be sorted by
/// strictly increasing x. Returns indices of the hull vertices left to right.
/// Collinear interior points are kept off the vertex list.
inline std::vector<int> lower_hull_graph(const std::vector<Rat>& xs, const std::vector<Rat>& ys) {
    const int n = static_cast<int>(xs.size());
    std::vector<int> h;
    h.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        while (h.size() >= 2) {
            const int a = h[h.size() - 2], b = h[h.size() - 1];
            // keep turn strictly convex: cross((b-a),(i-a)) > 0 required
            Rat cr = (xs[static_cast<size_t>(b)] - xs[static_cast<size_t>(a)]) * (ys[static_cast<size_t>(i)] - ys[static_cast<size_t>(a)]) -
                     (ys[static_cast<size_t>(b)] - ys[static_cast<size_t>(a)]) * (xs[static_cast<size_t>(i)] - xs[static_cast<size_t>(a)]);
            if (cr > 0) break;
            h.pop_back();
        }
        h.push_back(i);
    }
    return h;
}

}  // namespace uconv
