#pragma once

#include <cmath>
#include <vector>

#include "uconv/moduli.hpp"
#include "uconv/norm_modulus.hpp"
#include "uconv/tab_func.hpp"

namespace uconv {

/// Exact infimal convolution of two grid functions with equal spacing:
/// (f1 [] f2)(x) = min{ f1(x-y) + f2(y) } over the support of f2. The result
/// lives on the Minkowski sum grid (origin o1+o2, shape s1+s2-1).
inline TabFunc inf_convolution(const TabFunc& f1, const TabFunc& f2) {
    const Support &S1 = f1.support(), &S2 = f2.support();
    if (!S1.has_grid() || !S2.has_grid())
        throw precondition_error("inf_convolution: grid supports required");
    const auto &g1 = S1.grid(), &g2 = S2.grid();
    if (g1.dim != g2.dim || g1.spacing != g2.spacing)
        throw precondition_error("inf_convolution: incompatible grids");
    DyadicGrid gr;
    gr.dim = g1.dim;
    gr.spacing = g1.spacing;
    gr.origin = g1.origin + g2.origin;
    std::vector<int> shape;
    for (int k = 0; k < gr.dim; ++k) {
        gr.shape[static_cast<size_t>(k)] = g1.shape[static_cast<size_t>(k)] + g2.shape[static_cast<size_t>(k)] - 1;
        shape.push_back(gr.shape[static_cast<size_t>(k)]);
    }
    Support Sr = Support::from_grid(gr);
    const long nr = gr.size(), n2 = g2.size();
    std::vector<double> vals(static_cast<size_t>(nr), kInf);
    for (long k = 0; k < nr; ++k) {
        auto ik = gr.unflatten(k);
        double best = kInf;
        for (long j = 0; j < n2; ++j) {
            const double v2 = f2.value(static_cast<int>(j));
            if (v2 == kInf) continue;
            auto ij = g2.unflatten(j);
            std::array<int, 3> ia{0, 0, 0};
            bool ok = true;
            for (int c = 0; c < gr.dim; ++c) {
                ia[static_cast<size_t>(c)] = ik[static_cast<size_t>(c)] - ij[static_cast<size_t>(c)];
                if (ia[static_cast<size_t>(c)] < 0 || ia[static_cast<size_t>(c)] >= g1.shape[static_cast<size_t>(c)]) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            const double v1 = f1.value(static_cast<int>(g1.flatten(ia)));
            if (v1 == kInf) continue;
            best = std::min(best, v1 + v2);
        }
        vals[static_cast<size_t>(k)] = best;
    }
    return TabFunc(std::move(Sr), std::move(vals), "infconv");
}

/// 3^{f/delta}, the quasi-convex -> convex transform. delta is a certified
/// lower bound for the quasi-modulus, supplied by the caller.
inline TabFunc exp_transform(const TabFunc& f, double delta) {
    if (!(delta > 0.0)) throw precondition_error("exp_transform: delta must be > 0");
    std::vector<double> vals(static_cast<size_t>(f.size()));
    for (int i = 0; i < f.size(); ++i) {
        const double v = f.value(i);
        vals[static_cast<size_t>(i)] = v == kInf ? kInf : std::pow(3.0, v / delta);
    }
    return f.with_values(std::move(vals), "exp3");
}

/// g(x) = inf{ f(y) + c ||x-y|| : y in C }, a c-Lipschitz convex minorant on C.
inline TabFunc lipschitz_regularization(const TabFunc& f, const std::vector<int>& C, double c,
                                        const NormSpec& N) {
    if (!(c > 0.0)) throw precondition_error("lipschitz_regularization: c must be > 0");
    std::vector<int> cd;
    for (int i : C)
        if (f.in_dom(i)) cd.push_back(i);
    if (cd.empty()) throw precondition_error("lipschitz_regularization: C misses dom(f)");
    const Support& S = f.support();
    std::vector<double> vals(static_cast<size_t>(f.size()), kInf);
    for (int i = 0; i < f.size(); ++i) {
        double best = kInf;
        for (int y : cd) best = std::min(best, f.value(y) + c * N.eval(S.point(i) - S.point(y)));
        vals[static_cast<size_t>(i)] = best;
    }
    TabFunc g = f.with_values(std::move(vals), "lip");
    for (int i = 0; i < g.size(); ++i)
        for (int j = i + 1; j < g.size(); ++j)
            if (std::fabs(g.value(i) - g.value(j)) > c * N.eval(S.point(i) - S.point(j)) + 1e-9)
                throw precondition_error("lipschitz_regularization: output fails the Lipschitz bound");
    return g;
}

/// g(x) = inf{ f(y) : ||y-x|| < eta } on the ambient support (open ball).
inline TabFunc domain_enlargement(const TabFunc& f, double eta, const NormSpec& N) {
    if (!(eta > 0.0)) throw precondition_error("domain_enlargement: eta must be > 0");
    const Support& S = f.support();
    const auto dom = f.dom_indices();
    std::vector<double> vals(static_cast<size_t>(f.size()), kInf);
    for (int i = 0; i < f.size(); ++i) {
        double best = kInf;
        for (int y : dom)
            if (N.eval(S.point(y) - S.point(i)) < eta) best = std::min(best, f.value(y));
        vals[static_cast<size_t>(i)] = best;
    }
    return f.with_values(std::move(vals), "enlarge");
}

/// Pointwise square of a nonnegative function.
inline TabFunc square_transform(const TabFunc& f) {
    std::vector<double> vals(static_cast<size_t>(f.size()));
    for (int i = 0; i < f.size(); ++i) {
        const double v = f.value(i);
        if (v < 0.0) throw precondition_error("square_transform: f must be nonnegative");
        vals[static_cast<size_t>(i)] = v == kInf ? kInf : v * v;
    }
    return f.with_values(std::move(vals), "square");
}

inline void require_equal_supports(const TabFunc& a, const TabFunc& b, const char* who) {
    if (a.size() != b.size()) throw precondition_error(std::string(who) + ": mismatched supports");
    for (int i = 0; i < a.size(); ++i)
        if (!(a.support().point(i) == b.support().point(i)))
            throw precondition_error(std::string(who) + ": mismatched supports");
}

/// Pointwise weighted sum with positive weights; +inf propagates.
inline TabFunc series_combine(const std::vector<TabFunc>& fs, const std::vector<double>& weights) {
    if (fs.empty() || fs.size() != weights.size())
        throw precondition_error("series_combine: need matching nonempty lists");
    for (double w : weights)
        if (!(w > 0.0)) throw precondition_error("series_combine: weights must be positive");
    for (size_t k = 1; k < fs.size(); ++k) require_equal_supports(fs[0], fs[k], "series_combine");
    std::vector<double> vals(static_cast<size_t>(fs[0].size()), 0.0);
    for (int i = 0; i < fs[0].size(); ++i) {
        double s = 0.0;
        for (size_t k = 0; k < fs.size(); ++k) {
            const double v = fs[k].value(i);
            if (v == kInf) {
                s = kInf;
                break;
            }
            s += weights[k] * v;
        }
        vals[static_cast<size_t>(i)] = s;
    }
    return fs[0].with_values(std::move(vals), "series");
}

/// f + g for convex g (checked), keeping the modulus of f.
inline TabFunc add_convex(const TabFunc& f, const TabFunc& g) {
    require_equal_supports(f, g, "add_convex");
    require_convex(g, "add_convex");
    return series_combine({f, g}, {1.0, 1.0});
}

/// Pointwise supremum of finitely many functions.
inline TabFunc sup_finite(const std::vector<TabFunc>& fs) {
    if (fs.empty()) throw precondition_error("sup_finite: empty list");
    for (size_t k = 1; k < fs.size(); ++k) require_equal_supports(fs[0], fs[k], "sup_finite");
    std::vector<double> vals(static_cast<size_t>(fs[0].size()), -kInf);
    for (int i = 0; i < fs[0].size(); ++i) {
        double m = -kInf;
        for (const auto& f : fs) m = std::max(m, f.value(i));
        vals[static_cast<size_t>(i)] = m;
    }
    return fs[0].with_values(std::move(vals), "sup");
}

struct RadialUc {
    std::vector<double> radii;  // a_1 < a_2 < ... solved from the implicit recursion
    TabFunc step;               // f(x) = n on the ring a_{n-1} < ||x|| <= a_n
};

/// Radial uniformly convex step function for a uniformly convex norm:
/// a_1 = eps/2 and a_{n-1} = (1 - delta_X(eps/a_n)) a_n solved by bisection.
/// Rejects norms whose sampled modulus vanishes at the required arguments.
inline RadialUc radial_uc(const NormSpec& N, double eps, int levels) {
    if (!(eps > 0.0) || levels < 1) throw precondition_error("radial_uc: eps > 0 and levels >= 1 required");
    auto deltaX = [&](double t) { return norm_modulus(N, t, 1024, 0xA11CEull); };
    std::vector<double> a;
    a.push_back(eps / 2.0);
    for (int n = 2; n <= levels; ++n) {
        const double prev = a.back();
        if (deltaX(std::min(2.0, eps / prev)) <= 1e-6)
            throw precondition_error("radial_uc: norm not uniformly convex");
        auto G = [&](double x) { return (1.0 - deltaX(std::min(2.0, eps / x))) * x - prev; };
        double lo = prev, hi = prev;
        int guard = 0;
        while (G(hi) <= 0.0 && guard++ < 80) hi *= 1.5;
        if (G(hi) <= 0.0) throw precondition_error("radial_uc: norm not uniformly convex");
        for (int it = 0; it < 120 && hi - lo > 1e-10 * std::max(1.0, hi); ++it) {
            const double mid = 0.5 * (lo + hi);
            if (G(mid) > 0.0)
                hi = mid;
            else
                lo = mid;
        }
        a.push_back(0.5 * (lo + hi));
    }

    // internal support: symmetric dyadic grid covering the outer ring
    const int d = N.dim();
    const double R = a.back();
    const int per_axis_cap = d == 3 ? 17 : 65;
    double spacing = 1.0;
    while (2.0 * R / spacing + 1 > per_axis_cap) spacing *= 2.0;
    while (2.0 * R / (spacing / 2.0) + 1 <= per_axis_cap) spacing /= 2.0;
    const int m = static_cast<int>(std::ceil(R / spacing));
    std::vector<int> shape(static_cast<size_t>(d), 2 * m + 1);
    Vec origin;
    origin.dim = d;
    for (int k = 0; k < d; ++k) origin[k] = -m * spacing;
    Support S = Support::from_grid(make_dyadic_grid(origin, spacing, shape));

    std::vector<double> vals(static_cast<size_t>(S.size()), kInf);
    for (int i = 0; i < S.size(); ++i) {
        const double r = N.eval(S.point(i));
        if (r > a.back()) continue;
        int n = 1;
        while (r > a[static_cast<size_t>(n - 1)]) ++n;
        vals[static_cast<size_t>(i)] = n;
    }
    return RadialUc{std::move(a), TabFunc(std::move(S), std::move(vals), "radial_uc")};
}

}  // namespace uconv
