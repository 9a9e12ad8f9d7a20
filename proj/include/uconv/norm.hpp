#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "uconv/core.hpp"
#include "uconv/hull.hpp"
#include "uconv/simplex.hpp"

namespace uconv {

/// Minkowski functional of conv(vertices): gauge(x) = min{t > 0 : x/t in hull}.
/// Vertices must make a symmetric, full-dimensional body (so 0 is interior).
/// 1D and 2D evaluate in closed form over the hull; 3D goes through the exact
/// simplex:  min sum(lambda)  s.t.  V lambda = x, lambda >= 0.
class PolytopeGauge {
public:
    PolytopeGauge() = default;
    explicit PolytopeGauge(std::vector<Vec> vertices, bool require_symmetric = true)
        : verts_(std::move(vertices)) {
        if (verts_.empty()) throw precondition_error("PolytopeGauge: no vertices");
        dim_ = verts_.front().dim;
        if (require_symmetric) {
            for (const auto& v : verts_) {
                bool found = false;
                for (const auto& w : verts_)
                    if (w == -v) { found = true; break; }
                if (!found) throw precondition_error("PolytopeGauge: vertex set is not symmetric");
            }
        }
        if (dim_ == 1) {
            lo_ = kInf;
            hi_ = -kInf;
            for (const auto& v : verts_) {
                lo_ = std::min(lo_, v[0]);
                hi_ = std::max(hi_, v[0]);
            }
            if (!(lo_ < 0.0 && hi_ > 0.0))
                throw precondition_error("PolytopeGauge: 0 not interior");
        } else if (dim_ == 2) {
            auto h = hull2d(verts_);
            if (h.size() < 3) throw precondition_error("PolytopeGauge: degenerate polytope (0 not interior)");
            for (int i : h) hull_.push_back(verts_[static_cast<size_t>(i)]);
            // 0 interior <=> every hull edge has 0 strictly on its left (CCW).
            const int m = static_cast<int>(hull_.size());
            for (int i = 0; i < m; ++i) {
                const Vec &a = hull_[static_cast<size_t>(i)], &b = hull_[static_cast<size_t>((i + 1) % m)];
                if (orient2d(a, b, Vec(0.0, 0.0)) <= 0)
                    throw precondition_error("PolytopeGauge: degenerate polytope (0 not interior)");
            }
        } else {
            // rank check via rational elimination on the vertex matrix
            std::vector<std::vector<Rat>> M;
            for (const auto& v : verts_) {
                std::vector<Rat> row(static_cast<size_t>(dim_));
                for (int i = 0; i < dim_; ++i) row[static_cast<size_t>(i)] = to_rat(v[i]);
                M.push_back(std::move(row));
            }
            if (rank(M) < dim_) throw precondition_error("PolytopeGauge: degenerate polytope (0 not interior)");
        }
    }

    int dim() const { return dim_; }
    const std::vector<Vec>& vertices() const { return verts_; }

    double eval(const Vec& x) const {
        bool zero = true;
        for (int i = 0; i < dim_; ++i) zero &= (x[i] == 0.0);
        if (zero) return 0.0;
        if (dim_ == 1) return x[0] > 0 ? x[0] / hi_ : x[0] / lo_;
        if (dim_ == 2) return eval2d(x);
        return eval_lp(x);
    }

private:
    static int rank(std::vector<std::vector<Rat>> M) {
        const int rows = static_cast<int>(M.size());
        if (rows == 0) return 0;
        const int cols = static_cast<int>(M[0].size());
        int r = 0;
        for (int c = 0; c < cols && r < rows; ++c) {
            int piv = -1;
            for (int i = r; i < rows; ++i)
                if (M[static_cast<size_t>(i)][static_cast<size_t>(c)] != 0) { piv = i; break; }
            if (piv < 0) continue;
            std::swap(M[static_cast<size_t>(piv)], M[static_cast<size_t>(r)]);
            for (int i = r + 1; i < rows; ++i) {
                if (M[static_cast<size_t>(i)][static_cast<size_t>(c)] == 0) continue;
                Rat f = M[static_cast<size_t>(i)][static_cast<size_t>(c)] / M[static_cast<size_t>(r)][static_cast<size_t>(c)];
                for (int j = c; j < cols; ++j)
                    M[static_cast<size_t>(i)][static_cast<size_t>(j)] -= f * M[static_cast<size_t>(r)][static_cast<size_t>(j)];
            }
            ++r;
        }
        return r;
    }

    double eval2d(const Vec& x) const {
        // find the hull edge crossed by ray 0->x, then solve the 1D intersection
        const int m = static_cast<int>(hull_.size());
        for (int i = 0; i < m; ++i) {
            const Vec &a = hull_[static_cast<size_t>(i)], &b = hull_[static_cast<size_t>((i + 1) % m)];
            const double ca = cross(x, a), cb = cross(x, b);
            // CCW boundary crosses the ray 0->x from its right side to its left
            if (ca <= 0.0 && cb >= 0.0 && (ca < 0.0 || cb > 0.0)) {
                // x = t * (a + s (b - a)): gauge = 1/t; use cross forms
                const double denom = cross(b - a, x);
                if (denom == 0.0) continue;
                const double s = cross(x, a) / denom;
                const Vec p = a + s * (b - a);
                // gauge = |x| / |p| along the ray; use the dominant coordinate
                const int k = std::fabs(x[0]) >= std::fabs(x[1]) ? 0 : 1;
                return x[k] / p[k];
            }
            if (ca == 0.0 && cb == 0.0) {  // ray collinear with the edge
                const int k = std::fabs(x[0]) >= std::fabs(x[1]) ? 0 : 1;
                const double pa = a[k] / x[k], pb = b[k] / x[k];
                const double t = std::max(pa, pb);
                if (t > 0.0) return 1.0 / t;
            }
        }
        return kInf;  // unreachable for 0-interior polygons
    }

    static double cross(const Vec& a, const Vec& b) { return a[0] * b[1] - a[1] * b[0]; }

    double eval_lp(const Vec& x) const {
        const int n = static_cast<int>(verts_.size());
        std::vector<std::vector<Rat>> A(static_cast<size_t>(dim_), std::vector<Rat>(static_cast<size_t>(n)));
        std::vector<Rat> b(static_cast<size_t>(dim_));
        std::vector<Rat> c(static_cast<size_t>(n), Rat(1));
        for (int i = 0; i < dim_; ++i) {
            for (int j = 0; j < n; ++j) A[static_cast<size_t>(i)][static_cast<size_t>(j)] = to_rat(verts_[static_cast<size_t>(j)][i]);
            b[static_cast<size_t>(i)] = to_rat(x[i]);
        }
        auto r = ExactSimplex::solve(A, b, c);
        if (r.status != LpResult::Status::optimal) return kInf;
        return to_double(r.value);
    }

    std::vector<Vec> verts_;
    std::vector<Vec> hull_;
    int dim_ = 1;
    double lo_ = -1.0, hi_ = 1.0;
};

/// Evaluable norm: lp (p in {1,2,inf}), gauge of a symmetric polytope, or
/// max |<w_i, .>| over a norming functional dictionary.
class NormSpec {
public:
    enum class Kind { lp, polytope, dictionary };

    static NormSpec make_lp(double p, int dim) {
        if (p != 1.0 && p != 2.0 && p != kInf)
            throw precondition_error("NormSpec: p must be 1, 2 or inf");
        NormSpec n;
        n.kind_ = Kind::lp;
        n.p_ = p;
        n.dim_ = dim;
        return n;
    }

    static NormSpec make_polytope(std::vector<Vec> vertices) {
        NormSpec n;
        n.kind_ = Kind::polytope;
        n.dim_ = vertices.front().dim;
        n.gauge_ = std::make_shared<PolytopeGauge>(std::move(vertices));
        return n;
    }

    static NormSpec make_dictionary(std::vector<Vec> functionals) {
        if (functionals.empty()) throw precondition_error("NormSpec: empty dictionary");
        NormSpec n;
        n.kind_ = Kind::dictionary;
        n.dim_ = functionals.front().dim;
        n.dict_ = std::move(functionals);
        // norming <=> functionals span R^d
        std::vector<std::vector<Rat>> M;
        for (const auto& w : n.dict_) {
            std::vector<Rat> row(static_cast<size_t>(n.dim_));
            for (int i = 0; i < n.dim_; ++i) row[static_cast<size_t>(i)] = to_rat(w[i]);
            M.push_back(std::move(row));
        }
        if (rank_of(M) < n.dim_)
            throw precondition_error("NormSpec: dictionary is not norming on R^d");
        return n;
    }

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }
    double lp_exponent() const { return p_; }
    const PolytopeGauge& gauge() const { return *gauge_; }
    const std::vector<Vec>& dictionary() const { return dict_; }

    double eval(const Vec& x) const {
        if (x.dim != dim_) throw precondition_error("eval_norm: dimension mismatch");
        switch (kind_) {
            case Kind::lp: {
                if (p_ == 1.0) {
                    double s = 0.0;
                    for (int i = 0; i < dim_; ++i) s += std::fabs(x[i]);
                    return s;
                }
                if (p_ == 2.0) return norm2(x);
                double m = 0.0;
                for (int i = 0; i < dim_; ++i) m = std::max(m, std::fabs(x[i]));
                return m;
            }
            case Kind::polytope:
                return gauge_->eval(x);
            case Kind::dictionary: {
                double m = 0.0;
                for (const auto& w : dict_) m = std::max(m, std::fabs(dot(w, x)));
                return m;
            }
        }
        return 0.0;
    }

    /// Dual norm, used to sample perturbation functionals.
    double dual_eval(const Vec& w) const {
        switch (kind_) {
            case Kind::lp: {
                if (p_ == 1.0) {
                    double m = 0.0;
                    for (int i = 0; i < dim_; ++i) m = std::max(m, std::fabs(w[i]));
                    return m;
                }
                if (p_ == 2.0) return norm2(w);
                double s = 0.0;
                for (int i = 0; i < dim_; ++i) s += std::fabs(w[i]);
                return s;
            }
            case Kind::polytope: {
                double m = 0.0;
                for (const auto& v : gauge_->vertices()) m = std::max(m, std::fabs(dot(w, v)));
                return m;
            }
            case Kind::dictionary: {
                // ball = polar of conv{+-w_i}; dual norm = gauge of conv{+-w_i}
                std::vector<Vec> vs;
                for (const auto& f : dict_) {
                    vs.push_back(f);
                    vs.push_back(-f);
                }
                return PolytopeGauge(vs, false).eval(w);
            }
        }
        return 0.0;
    }

private:
    static int rank_of(std::vector<std::vector<Rat>> M) {
        const int rows = static_cast<int>(M.size());
        if (rows == 0) return 0;
        const int cols = static_cast<int>(M[0].size());
        int r = 0;
        for (int c = 0; c < cols && r < rows; ++c) {
            int piv = -1;
            for (int i = r; i < rows; ++i)
                if (M[static_cast<size_t>(i)][static_cast<size_t>(c)] != 0) { piv = i; break; }
            if (piv < 0) continue;
            std::swap(M[static_cast<size_t>(piv)], M[static_cast<size_t>(r)]);
            for (int i = r + 1; i < rows; ++i) {
                if (M[static_cast<size_t>(i)][static_cast<size_t>(c)] == 0) continue;
                Rat f = M[static_cast<size_t>(i)][static_cast<size_t>(c)] / M[static_cast<size_t>(r)][static_cast<size_t>(c)];
                for (int j = c; j < cols; ++j)
                    M[static_cast<size_t>(i)][static_cast<size_t>(j)] -= f * M[static_cast<size_t>(r)][static_cast<size_t>(j)];
            }
            ++r;
        }
        return r;
    }

    Kind kind_ = Kind::lp;
    double p_ = 2.0;
    int dim_ = 1;
    std::shared_ptr<PolytopeGauge> gauge_;
    std::vector<Vec> dict_;
};

inline double eval_norm(const NormSpec& n, const Vec& x) { return n.eval(x); }

}  // namespace uconv
