#pragma once

#include <algorithm>
#include <memory>
#include <vector>

#include "uconv/norm.hpp"
#include "uconv/tab_func.hpp"

namespace uconv {

/// Concave nondecreasing piecewise-linear modulus with value 0 at 0.
/// Beyond the last knot the final slope is extended.
struct PiecewiseLinearModulus {
    std::vector<std::pair<double, double>> knots;  // sorted by abscissa, starts at (0,0)

    double eval(double t) const {
        if (t <= 0.0) return 0.0;
        if (knots.size() < 2) return 0.0;
        for (size_t i = 1; i < knots.size(); ++i) {
            if (t <= knots[i].first) {
                const auto& [x0, y0] = knots[i - 1];
                const auto& [x1, y1] = knots[i];
                return y0 + (y1 - y0) * (t - x0) / (x1 - x0);
            }
        }
        const auto& [x0, y0] = knots[knots.size() - 2];
        const auto& [x1, y1] = knots.back();
        const double slope = x1 > x0 ? (y1 - y0) / (x1 - x0) : 0.0;
        return y1 + std::max(slope, 0.0) * (t - x1);
    }
};

/// Pseudometric on a point set: norm-induced, pullback through a tabulated
/// function (d(x,y) = |f(x)-f(y)|), or an explicit table. Table metrics are
/// symmetry- and triangle-checked at construction.
class PseudometricSpec {
public:
    enum class Kind { norm_induced, pullback, table };

    static PseudometricSpec norm_induced(NormSpec n) {
        PseudometricSpec d;
        d.kind_ = Kind::norm_induced;
        d.norm_ = std::move(n);
        return d;
    }

    static PseudometricSpec pullback(TabFunc f) {
        PseudometricSpec d;
        d.kind_ = Kind::pullback;
        d.f_ = std::make_shared<TabFunc>(std::move(f));
        return d;
    }

    static PseudometricSpec table(std::vector<Vec> pts, std::vector<std::vector<double>> dist) {
        const size_t n = pts.size();
        if (dist.size() != n) throw precondition_error("table metric: size mismatch");
        for (size_t i = 0; i < n; ++i) {
            if (dist[i].size() != n) throw precondition_error("table metric: not square");
            if (dist[i][i] != 0.0) throw precondition_error("table metric: d(x,x) != 0");
            for (size_t j = 0; j < n; ++j) {
                if (dist[i][j] < 0.0) throw precondition_error("table metric: negative value");
                if (dist[i][j] != dist[j][i]) throw precondition_error("table metric: not symmetric");
            }
        }
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                for (size_t k = 0; k < n; ++k)
                    if (dist[i][j] > dist[i][k] + dist[k][j] + 1e-12)
                        throw precondition_error("table metric: triangle inequality fails");
        PseudometricSpec d;
        d.kind_ = Kind::table;
        d.tbl_pts_ = std::make_shared<Support>(Support::from_points(std::move(pts)));
        d.tbl_ = std::move(dist);
        return d;
    }

    Kind kind() const { return kind_; }

    double eval(const Vec& x, const Vec& y) const {
        switch (kind_) {
            case Kind::norm_induced:
                return norm_.eval(x - y);
            case Kind::pullback: {
                const double fx = f_->value_at(x), fy = f_->value_at(y);
                if (!std::isfinite(fx) || !std::isfinite(fy))
                    throw precondition_error("pullback metric: point outside the function domain");
                return std::fabs(fx - fy);
            }
            case Kind::table: {
                auto i = tbl_pts_->index_of(x), j = tbl_pts_->index_of(y);
                if (!i || !j) throw precondition_error("table metric: point not tabulated");
                return tbl_[static_cast<size_t>(*i)][static_cast<size_t>(*j)];
            }
        }
        return 0.0;
    }

private:
    Kind kind_ = Kind::norm_induced;
    NormSpec norm_ = NormSpec::make_lp(2.0, 1);
    std::shared_ptr<TabFunc> f_;
    std::shared_ptr<Support> tbl_pts_;
    std::vector<std::vector<double>> tbl_;
};

/// Least concave nondecreasing piecewise-linear majorant of the scatter
/// {(||x-y||_N, d(x,y))} over all pairs of S, pinned to 0 at 0: the upper
/// concave hull of the scatter, flattened after its peak.
inline PiecewiseLinearModulus estimate_varpi(const PseudometricSpec& d,
                                             const std::vector<Vec>& S,
                                             const NormSpec& N) {
    std::vector<std::pair<double, double>> sc;
    sc.emplace_back(0.0, 0.0);
    for (size_t i = 0; i < S.size(); ++i)
        for (size_t j = i + 1; j < S.size(); ++j)
            sc.emplace_back(N.eval(S[i] - S[j]), d.eval(S[i], S[j]));
    std::sort(sc.begin(), sc.end());
    // keep the max ordinate per abscissa
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : sc) {
        if (!pts.empty() && pts.back().first == p.first)
            pts.back().second = std::max(pts.back().second, p.second);
        else
            pts.push_back(p);
    }
    // upper concave hull, left to right (slopes nonincreasing)
    std::vector<std::pair<double, double>> h;
    for (const auto& p : pts) {
        while (h.size() >= 2) {
            const auto& a = h[h.size() - 2];
            const auto& b = h.back();
            const double cr = (b.first - a.first) * (p.second - a.second) -
                              (b.second - a.second) * (p.first - a.first);
            if (cr < 0.0) break;  // strictly concave turn
            h.pop_back();
        }
        h.push_back(p);
    }
    // enforce nondecreasing: once slopes go negative, continue flat at the peak
    PiecewiseLinearModulus m;
    double peak = 0.0;
    for (const auto& p : h) {
        if (p.second < peak) {
            m.knots.emplace_back(p.first, peak);
        } else {
            peak = p.second;
            m.knots.push_back(p);
        }
    }
    return m;
}

}  // namespace uconv
