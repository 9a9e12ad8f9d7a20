#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "uconv/hull.hpp"
#include "uconv/moduli.hpp"
#include "uconv/simplex.hpp"
#include "uconv/tab_func.hpp"

namespace uconv {

/// Convex combination realizing an envelope value; weights are exact and the
/// combination reproduces the query point and value with no rounding.
struct ActiveSet {
    std::vector<int> idx;
    std::vector<Rat> weights;
};

namespace detail {

struct ExactEnvelope {
    std::vector<Rat> values;      // valid where !inf[i]
    std::vector<char> inf;
    std::vector<ActiveSet> active;
    std::vector<int> candidates;  // dom indices allowed in combinations
};

/// Carathéodory pruning for staircase-valued 2D data: a point whose value is
/// v can only carry weight in an optimal combination if it is a hull vertex
/// of the sublevel cloud {f <= v}. Used when few distinct values exist.
inline std::vector<int> prune_candidates_2d(const Support& S, const std::vector<Rat>& vals,
                                            const std::vector<int>& dom) {
    std::vector<std::pair<Rat, int>> byval;
    byval.reserve(dom.size());
    for (int i : dom) byval.emplace_back(vals[static_cast<size_t>(i)], i);
    std::sort(byval.begin(), byval.end());
    std::vector<int> keep;
    std::vector<Vec> cloud;
    std::vector<int> cloud_idx;
    size_t a = 0;
    while (a < byval.size()) {
        size_t b = a;
        while (b < byval.size() && byval[b].first == byval[a].first) ++b;
        for (size_t k = a; k < b; ++k) {
            cloud.push_back(S.point(byval[k].second));
            cloud_idx.push_back(byval[k].second);
        }
        auto h = hull2d(cloud);
        std::vector<char> isv(cloud.size(), 0);
        for (int hi : h) isv[static_cast<size_t>(hi)] = 1;
        for (size_t k = a; k < b; ++k) {
            const size_t pos = cloud.size() - (b - a) + (k - a);
            if (isv[pos]) keep.push_back(byval[k].second);
        }
        a = b;
    }
    std::sort(keep.begin(), keep.end());
    return keep;
}

/// Exact envelope core. 1D runs on the lower hull of the graph; higher
/// dimensions solve one exact LP per support point:
///     min sum l_k f(x_k)  s.t.  sum l_k x_k = x, sum l_k = 1, l >= 0.
inline ExactEnvelope envelope_exact(const Support& S, const std::vector<Rat>& vals,
                                    const std::vector<char>& is_inf) {
    ExactEnvelope out;
    const int n = S.size();
    out.values.assign(static_cast<size_t>(n), Rat(0));
    out.inf.assign(static_cast<size_t>(n), 1);
    out.active.assign(static_cast<size_t>(n), {});
    std::vector<int> dom;
    for (int i = 0; i < n; ++i)
        if (!is_inf[static_cast<size_t>(i)]) dom.push_back(i);
    if (dom.empty()) throw precondition_error("convex_envelope: empty domain");

    if (S.dim() == 1) {
        std::vector<int> order = dom;
        std::sort(order.begin(), order.end(),
                  [&](int i, int j) { return S.point(i)[0] < S.point(j)[0]; });
        std::vector<Rat> xs, ys;
        xs.reserve(order.size());
        ys.reserve(order.size());
        for (int i : order) {
            xs.push_back(to_rat(S.point(i)[0]));
            ys.push_back(vals[static_cast<size_t>(i)]);
        }
        auto h = lower_hull_graph(xs, ys);
        out.candidates.reserve(h.size());
        for (int hi : h) out.candidates.push_back(order[static_cast<size_t>(hi)]);
        const Rat xmin = xs.front(), xmax = xs.back();
        for (int i = 0; i < n; ++i) {
            const Rat x = to_rat(S.point(i)[0]);
            if (x < xmin || x > xmax) continue;  // stays +inf
            // locate hull segment by binary search on vertex abscissae
            size_t lo = 0, hi = h.size() - 1;
            while (lo + 1 < hi) {
                const size_t mid = (lo + hi) / 2;
                if (xs[static_cast<size_t>(h[mid])] <= x)
                    lo = mid;
                else
                    hi = mid;
            }
            const int ia = h[lo], ib = h[h.size() == 1 ? lo : hi];
            const Rat xa = xs[static_cast<size_t>(ia)], xb = xs[static_cast<size_t>(ib)];
            ActiveSet as;
            Rat v;
            if (x == xa || xa == xb) {
                v = ys[static_cast<size_t>(ia)];
                as.idx = {order[static_cast<size_t>(ia)]};
                as.weights = {Rat(1)};
            } else if (x == xb) {
                v = ys[static_cast<size_t>(ib)];
                as.idx = {order[static_cast<size_t>(ib)]};
                as.weights = {Rat(1)};
            } else {
                const Rat t = (x - xa) / (xb - xa);
                v = (Rat(1) - t) * ys[static_cast<size_t>(ia)] + t * ys[static_cast<size_t>(ib)];
                as.idx = {order[static_cast<size_t>(ia)], order[static_cast<size_t>(ib)]};
                as.weights = {Rat(1) - t, t};
            }
            out.values[static_cast<size_t>(i)] = v;
            out.inf[static_cast<size_t>(i)] = 0;
            out.active[static_cast<size_t>(i)] = std::move(as);
        }
        return out;
    }

    std::vector<int> cand = dom;
    if (S.dim() == 2 && dom.size() > 400) {
        std::vector<Rat> distinct;
        for (int i : dom) distinct.push_back(vals[static_cast<size_t>(i)]);
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        if (distinct.size() <= 64) cand = prune_candidates_2d(S, vals, dom);
    }
    out.candidates = cand;

    const int d = S.dim();
    const int m = d + 1;
    const int nc = static_cast<int>(cand.size());
    std::vector<std::vector<Rat>> A(static_cast<size_t>(m), std::vector<Rat>(static_cast<size_t>(nc)));
    std::vector<Rat> c(static_cast<size_t>(nc));
    for (int j = 0; j < nc; ++j) {
        const Vec& p = S.point(cand[static_cast<size_t>(j)]);
        for (int r = 0; r < d; ++r) A[static_cast<size_t>(r)][static_cast<size_t>(j)] = to_rat(p[r]);
        A[static_cast<size_t>(d)][static_cast<size_t>(j)] = 1;
        c[static_cast<size_t>(j)] = vals[static_cast<size_t>(cand[static_cast<size_t>(j)])];
    }
    std::vector<Rat> b(static_cast<size_t>(m));
    b[static_cast<size_t>(d)] = 1;
    for (int i = 0; i < n; ++i) {
        const Vec& x = S.point(i);
        for (int r = 0; r < d; ++r) b[static_cast<size_t>(r)] = to_rat(x[r]);
        auto lp = ExactSimplex::solve(A, b, c);
        if (lp.status != LpResult::Status::optimal) continue;  // outside hull: +inf
        out.values[static_cast<size_t>(i)] = lp.value;
        out.inf[static_cast<size_t>(i)] = 0;
        ActiveSet as;
        for (int j = 0; j < nc; ++j)
            if (lp.x[static_cast<size_t>(j)] != 0) {
                as.idx.push_back(cand[static_cast<size_t>(j)]);
                as.weights.push_back(lp.x[static_cast<size_t>(j)]);
            }
        out.active[static_cast<size_t>(i)] = std::move(as);
    }
    return out;
}

inline std::pair<std::vector<Rat>, std::vector<char>> to_exact_values(const TabFunc& f) {
    std::vector<Rat> vals(static_cast<size_t>(f.size()), Rat(0));
    std::vector<char> inf(static_cast<size_t>(f.size()), 0);
    for (int i = 0; i < f.size(); ++i) {
        if (f.in_dom(i))
            vals[static_cast<size_t>(i)] = to_rat(f.value(i));
        else
            inf[static_cast<size_t>(i)] = 1;
    }
    return {std::move(vals), std::move(inf)};
}

}  // namespace detail

struct EnvelopeResult {
    TabFunc envelope;                   // rounded to double, +inf off the hull
    std::vector<ActiveSet> active_sets; // per support point
    std::vector<Rat> exact_values;      // rational envelope values (valid off exact_inf)
    std::vector<char> exact_inf;
    std::vector<int> candidates;
};

/// Lower semicontinuous convex envelope on the finite support, exact.
inline EnvelopeResult convex_envelope(const TabFunc& f) {
    auto [vals, inf] = detail::to_exact_values(f);
    auto ex = detail::envelope_exact(f.support(), vals, inf);
    std::vector<double> env(static_cast<size_t>(f.size()), kInf);
    for (int i = 0; i < f.size(); ++i)
        if (!ex.inf[static_cast<size_t>(i)]) env[static_cast<size_t>(i)] = to_double(ex.values[static_cast<size_t>(i)]);
    EnvelopeResult r;
    r.envelope = f.with_values(std::move(env), f.name().empty() ? "env" : "env(" + f.name() + ")");
    r.active_sets = std::move(ex.active);
    r.exact_values = std::move(ex.values);
    r.exact_inf = std::move(ex.inf);
    r.candidates = std::move(ex.candidates);
    return r;
}

/// Envelope value at an arbitrary point of the ambient space (+inf outside
/// the domain hull), via one exact LP over the given candidate indices.
inline double envelope_value_at(const TabFunc& f, const Vec& z,
                                const std::vector<int>* candidates = nullptr) {
    std::vector<int> dom = candidates ? *candidates : f.dom_indices();
    const Support& S = f.support();
    const int d = S.dim();
    const int m = d + 1;
    const int nc = static_cast<int>(dom.size());
    if (nc == 0) throw precondition_error("envelope_value_at: empty domain");
    std::vector<std::vector<Rat>> A(static_cast<size_t>(m), std::vector<Rat>(static_cast<size_t>(nc)));
    std::vector<Rat> c(static_cast<size_t>(nc)), b(static_cast<size_t>(m));
    for (int j = 0; j < nc; ++j) {
        const Vec& p = S.point(dom[static_cast<size_t>(j)]);
        for (int r = 0; r < d; ++r) A[static_cast<size_t>(r)][static_cast<size_t>(j)] = to_rat(p[r]);
        A[static_cast<size_t>(d)][static_cast<size_t>(j)] = 1;
        c[static_cast<size_t>(j)] = to_rat(f.value(dom[static_cast<size_t>(j)]));
    }
    for (int r = 0; r < d; ++r) b[static_cast<size_t>(r)] = to_rat(z[r]);
    b[static_cast<size_t>(d)] = 1;
    auto lp = ExactSimplex::solve(A, b, c);
    if (lp.status != LpResult::Status::optimal) return kInf;
    return to_double(lp.value);
}

/// Envelope of f restricted to the open ball B(x, eps): equals the global
/// envelope at x for eps-uniformly convex f. The ball is taken in N
/// (ambient norm; callers in 1D get |.|).
inline double local_envelope_reduction(const TabFunc& f, const Vec& x, double eps,
                                       const NormSpec& N) {
    auto ix = f.support().index_of(x);
    if (!ix || !f.in_dom(*ix)) throw precondition_error("local_envelope_reduction: x not in dom(f)");
    std::vector<int> ball;
    for (int i : f.dom_indices())
        if (N.eval(f.support().point(i) - x) < eps) ball.push_back(i);
    return envelope_value_at(f, x, &ball);
}

/// Jensen inequality with the modulus gap (finite convex combinations).
inline bool jensen_gap_check(const TabFunc& f, const Vec& x,
                             const std::vector<std::pair<Vec, double>>& combo, double eps,
                             const PseudometricSpec& d) {
    if (combo.empty()) throw precondition_error("jensen_gap_check: empty combination");
    double wsum = 0.0;
    Vec acc = 0.0 * x;
    for (const auto& [p, w] : combo) {
        if (w < -1e-12) throw precondition_error("jensen_gap_check: negative weight");
        wsum += w;
        acc = acc + w * p;
    }
    if (std::fabs(wsum - 1.0) > 1e-12) throw precondition_error("jensen_gap_check: weights do not sum to 1");
    for (int k = 0; k < x.dim; ++k)
        if (std::fabs(acc[k] - x[k]) > 1e-12)
            throw precondition_error("jensen_gap_check: combination does not sum to x");
    for (const auto& [p, w] : combo)
        if (d.eval(x, p) < eps)
            throw precondition_error("jensen_gap_check: d(x, x_k) >= eps violated");
    const double delta = delta_modulus(f, eps, d).delta;
    double rhs = 0.0;
    for (const auto& [p, w] : combo) {
        const double fp = f.value_at(p);
        if (fp == kInf) throw precondition_error("jensen_gap_check: combination point outside dom(f)");
        rhs += w * fp;
    }
    const double fx = f.value_at(x);
    return fx <= rhs - delta + 1e-9;
}

struct SliceWitness {
    Vec functional;
    double offset = 0.0;
    double diameter = 0.0;
};

struct SliceVerdict {
    bool dir1 = true;           // delta_f(eps)-slices are eps-small
    bool dir2_premise = true;   // all delta-slices are eps-small
    bool dir2 = true;           // premise => delta_f(eps) >= delta/2
    double delta_f = 0.0;
    std::optional<SliceWitness> witness;
};

/// Both directions of the slice criterion, restricted to slices generated by
/// the functional dictionary. A slice of epi(f) given by (w, c) collects the
/// domain points with f(x) < <w,x> + c; the extremal offset keeping the slice
/// disjoint from epi(f + delta) is c* = min(f + delta - <w,.>).
inline SliceVerdict slice_diameter_criterion(const TabFunc& f, double delta, double eps,
                                             const PseudometricSpec& d,
                                             const std::vector<Vec>& dict) {
    if (dict.empty()) throw precondition_error("slice_diameter_criterion: empty dictionary");
    const auto dom = f.dom_indices();
    const Support& S = f.support();

    auto max_slice_diam = [&](double dlt, std::optional<SliceWitness>& wit) {
        double worst = 0.0;
        for (const auto& w : dict) {
            double cstar = kInf;
            for (int i : dom) cstar = std::min(cstar, f.value(i) + dlt - dot(w, S.point(i)));
            std::vector<int> slice;
            for (int i : dom)
                if (f.value(i) < dot(w, S.point(i)) + cstar) slice.push_back(i);
            double diam = 0.0;
            for (size_t a = 0; a < slice.size(); ++a)
                for (size_t b = a + 1; b < slice.size(); ++b)
                    diam = std::max(diam, d.eval(S.point(slice[a]), S.point(slice[b])));
            if (diam > worst) {
                worst = diam;
                wit = SliceWitness{w, cstar, diam};
            }
        }
        return worst;
    };

    SliceVerdict v;
    v.delta_f = delta_modulus(f, eps, d).delta;
    std::optional<SliceWitness> w1, w2;
    if (v.delta_f != kInf && v.delta_f > 0.0)
        v.dir1 = max_slice_diam(v.delta_f, w1) < eps + 1e-9;
    v.dir2_premise = max_slice_diam(delta, w2) < eps + 1e-9;
    if (v.dir2_premise)
        v.dir2 = v.delta_f >= delta / 2.0 - 1e-9;
    else
        v.dir2 = true;  // vacuous
    if (!v.dir1) v.witness = w1;
    if (!v.dir2_premise && !v.witness) v.witness = w2;
    return v;
}

struct PropernessReport {
    bool bounded_below = true;  // always on finite supports
    double min_value = 0.0;
    Vec minimizer;
    Vec minorant_slope;
    double minorant_offset = 0.0;
    bool minorant_valid = false;
};

/// The equivalent properness statements on a finite support, with an explicit
/// affine minorant read off the envelope LP duals at the minimizer.
inline PropernessReport properness_check(const TabFunc& f) {
    const auto dom = f.dom_indices();
    const Support& S = f.support();
    PropernessReport rep;
    int imin = dom.front();
    for (int i : dom)
        if (f.value(i) < f.value(imin)) imin = i;
    rep.min_value = f.value(imin);
    rep.minimizer = S.point(imin);

    const int d = S.dim();
    const int nc = static_cast<int>(dom.size());
    std::vector<std::vector<Rat>> A(static_cast<size_t>(d + 1), std::vector<Rat>(static_cast<size_t>(nc)));
    std::vector<Rat> c(static_cast<size_t>(nc)), b(static_cast<size_t>(d + 1));
    for (int j = 0; j < nc; ++j) {
        const Vec& p = S.point(dom[static_cast<size_t>(j)]);
        for (int r = 0; r < d; ++r) A[static_cast<size_t>(r)][static_cast<size_t>(j)] = to_rat(p[r]);
        A[static_cast<size_t>(d)][static_cast<size_t>(j)] = 1;
        c[static_cast<size_t>(j)] = to_rat(f.value(dom[static_cast<size_t>(j)]));
    }
    for (int r = 0; r < d; ++r) b[static_cast<size_t>(r)] = to_rat(rep.minimizer[r]);
    b[static_cast<size_t>(d)] = 1;
    auto lp = ExactSimplex::solve(A, b, c);
    if (lp.status == LpResult::Status::optimal) {
        Vec slope = rep.minimizer;
        for (int r = 0; r < d; ++r) slope[r] = to_double(lp.dual[static_cast<size_t>(r)]);
        rep.minorant_slope = slope;
        rep.minorant_offset = to_double(lp.dual[static_cast<size_t>(d)]);
        // dual feasibility is exact: <y, (p,1)> <= f(p) for every support point
        rep.minorant_valid = true;
        for (int j = 0; j < nc; ++j) {
            Rat lhs(0);
            for (int r = 0; r < d; ++r)
                lhs += lp.dual[static_cast<size_t>(r)] * A[static_cast<size_t>(r)][static_cast<size_t>(j)];
            lhs += lp.dual[static_cast<size_t>(d)];
            if (lhs > c[static_cast<size_t>(j)]) rep.minorant_valid = false;
        }
    }
    return rep;
}

}  // namespace uconv
