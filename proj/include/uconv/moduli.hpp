#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <tuple>
#include <vector>

#include "uconv/pseudometric.hpp"
#include "uconv/tab_func.hpp"

namespace uconv {

/// Deterministic uniform double in [0,1) from a raw 64-bit generator.
template <class Rng>
inline double det_uniform(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Result of a two-point modulus scan. delta = +inf iff no eligible pair.
/// delta may be negative for non-convex functions; a pair whose midpoint
/// carries +inf contributes -inf.
struct ModulusReport {
    double epsilon = 0.0;
    double delta = kInf;
    std::optional<std::pair<Vec, Vec>> witness;
    long pair_count = 0;

    bool empty() const { return pair_count == 0; }
};

namespace detail {

template <class GapFn>
ModulusReport modulus_scan(const TabFunc& f, double eps, const PseudometricSpec& d, GapFn gap) {
    if (!(eps > 0.0)) throw precondition_error("modulus: eps must be > 0");
    const auto dom = f.dom_indices();
    if (dom.empty()) throw precondition_error("modulus: empty domain");
    const Support& S = f.support();
    ModulusReport rep;
    rep.epsilon = eps;
    long best_i = -1, best_j = -1;
    for (size_t a = 0; a < dom.size(); ++a) {
        const int i = dom[a];
        const Vec& x = S.point(i);
        const double fx = f.value(i);
        for (size_t b = a + 1; b < dom.size(); ++b) {
            const int j = dom[b];
            auto m = S.midpoint_index(i, j);
            if (!m) continue;
            const Vec& y = S.point(j);
            if (d.eval(x, y) < eps) continue;
            const double g = gap(fx, f.value(j), f.value(*m));
            ++rep.pair_count;
            if (g < rep.delta || (g == rep.delta && best_i < 0)) {
                rep.delta = g;
                best_i = i;
                best_j = j;
            }
        }
    }
    if (best_i >= 0) rep.witness = std::make_pair(S.point(static_cast<int>(best_i)), S.point(static_cast<int>(best_j)));
    if (rep.pair_count == 0) rep.delta = kInf;
    return rep;
}

/// Visit every grid-representable interior combination z = (1-t)x + ty of the
/// pair (i, j): t = s/2^a for a = v2 of the index difference. Explicit point
/// sets are probed with dyadic t up to denominator 64.
template <class Fn>
void for_each_interior_combo(const Support& S, int i, int j, Fn fn) {
    if (S.has_grid()) {
        const auto& g = S.grid();
        auto ii = g.unflatten(i), jj = g.unflatten(j);
        int a = -1;
        for (int k = 0; k < S.dim(); ++k) {
            const int dk = jj[static_cast<size_t>(k)] - ii[static_cast<size_t>(k)];
            if (dk == 0) continue;
            const int v = two_adic_valuation(dk);
            a = a < 0 ? v : std::min(a, v);
        }
        if (a <= 0) return;  // odd difference: no dyadic interior combination
        const int den = 1 << a;
        for (int s = 1; s < den; ++s) {
            std::array<int, 3> z{0, 0, 0};
            for (int k = 0; k < S.dim(); ++k) {
                const int dk = jj[static_cast<size_t>(k)] - ii[static_cast<size_t>(k)];
                z[static_cast<size_t>(k)] = ii[static_cast<size_t>(k)] + (dk / den) * s;
            }
            fn(static_cast<double>(s) / den, static_cast<int>(g.flatten(z)));
        }
        return;
    }
    const Vec &x = S.point(i), &y = S.point(j);
    for (int a = 1; a <= 6; ++a) {
        const int den = 1 << a;
        for (int s = 1; s < den; s += 2) {
            const double t = static_cast<double>(s) / den;
            auto z = S.index_of(x + t * (y - x));
            if (z) fn(t, *z);
        }
    }
}

}  // namespace detail

/// Modulus of uniform convexity: inf of (f(x)+f(y))/2 - f((x+y)/2) over
/// domain pairs with d(x,y) >= eps and representable midpoint.
inline ModulusReport delta_modulus(const TabFunc& f, double eps, const PseudometricSpec& d) {
    return detail::modulus_scan(f, eps, d, [](double fx, double fy, double fm) {
        if (fm == kInf) return -kInf;
        return 0.5 * (fx + fy) - fm;
    });
}

/// Quasi-convexity modulus: gap taken against max{f(x), f(y)}.
inline ModulusReport quasi_modulus(const TabFunc& f, double eps, const PseudometricSpec& d) {
    return detail::modulus_scan(f, eps, d, [](double fx, double fy, double fm) {
        if (fm == kInf) return -kInf;
        return std::max(fx, fy) - fm;
    });
}

/// Worst midpoint-convexity violation over all representable pairs
/// (0 for exactly midpoint-convex data, negative where convexity fails).
inline double worst_midpoint_gap(const TabFunc& f) {
    const auto dom = f.dom_indices();
    const Support& S = f.support();
    double w = kInf;
    for (size_t a = 0; a < dom.size(); ++a)
        for (size_t b = a + 1; b < dom.size(); ++b) {
            auto m = S.midpoint_index(dom[a], dom[b]);
            if (!m) continue;
            const double fm = f.value(*m);
            const double g = fm == kInf ? -kInf : 0.5 * (f.value(dom[a]) + f.value(dom[b])) - fm;
            w = std::min(w, g);
        }
    return w == kInf ? 0.0 : w;
}

inline void require_convex(const TabFunc& f, const char* who) {
    if (worst_midpoint_gap(f) < -1e-9)
        throw precondition_error(std::string(who) + ": function is not convex on its support");
}

/// Gage of uniform convexity for convex f: inf over representable interior
/// combinations of ((1-t)f(x)+tf(y)-f((1-t)x+ty)) / (t(1-t)), pairs at
/// norm distance >= eps. +inf when no combination is representable.
inline double gage(const TabFunc& f, double eps, const NormSpec& N) {
    if (!(eps > 0.0)) throw precondition_error("gage: eps must be > 0");
    require_convex(f, "gage");
    const auto dom = f.dom_indices();
    const Support& S = f.support();
    double p = kInf;
    for (size_t a = 0; a < dom.size(); ++a) {
        const int i = dom[a];
        const double fx = f.value(i);
        for (size_t b = a + 1; b < dom.size(); ++b) {
            const int j = dom[b];
            if (N.eval(S.point(i) - S.point(j)) < eps) continue;
            const double fy = f.value(j);
            detail::for_each_interior_combo(S, i, j, [&](double t, int zi) {
                const double fz = f.value(zi);
                if (fz == kInf)
                    throw precondition_error("gage: +inf inside a segment of the domain");
                const double term = ((1.0 - t) * fx + t * fy - fz) / (t * (1.0 - t));
                p = std::min(p, term);
            });
        }
    }
    return p;
}

/// Two-point convexity gap of Phi at a pair whose midpoint must be on the support.
inline ExtReal delta_phi(const TabFunc& Phi, const Vec& x, const Vec& y) {
    const Support& S = Phi.support();
    auto i = S.index_of(x), j = S.index_of(y);
    if (!i || !j) throw precondition_error("delta_phi: endpoint not on support");
    auto m = S.midpoint_index(*i, *j);
    if (!m) throw precondition_error("delta_phi: midpoint not on support");
    const double fx = Phi.value(*i), fy = Phi.value(*j), fm = Phi.value(*m);
    if (fx == kInf || fy == kInf) return ExtReal::inf();
    if (fm == kInf) throw precondition_error("delta_phi: midpoint value is +inf");
    return ExtReal(0.5 * (fx + fy) - fm);
}

struct InterpolationReport {
    bool ok = true;
    double worst_slack = kInf;
    long triple_count = 0;
    double delta_used = 0.0;
};

/// Checks (1-t)f(x)+tf(y)-f((1-t)x+ty) >= 2 delta_f(eps) min{t,1-t} over all
/// representable triples with ||x-y|| >= eps.
inline InterpolationReport check_t_interpolation(const TabFunc& f, double eps, const NormSpec& N) {
    require_convex(f, "check_t_interpolation");
    const double delta = delta_modulus(f, eps, PseudometricSpec::norm_induced(N)).delta;
    InterpolationReport rep;
    rep.delta_used = delta;
    if (delta == kInf) return rep;  // no eligible pairs: vacuous
    const auto dom = f.dom_indices();
    const Support& S = f.support();
    for (size_t a = 0; a < dom.size(); ++a) {
        const int i = dom[a];
        for (size_t b = a + 1; b < dom.size(); ++b) {
            const int j = dom[b];
            if (N.eval(S.point(i) - S.point(j)) < eps) continue;
            detail::for_each_interior_combo(S, i, j, [&](double t, int zi) {
                const double lhs = (1.0 - t) * f.value(i) + t * f.value(j) - f.value(zi);
                const double slack = lhs - 2.0 * delta * std::min(t, 1.0 - t);
                ++rep.triple_count;
                rep.worst_slack = std::min(rep.worst_slack, slack);
                if (slack < -1e-9) rep.ok = false;
            });
        }
    }
    return rep;
}

struct GageScalingReport {
    bool ok = true;
    // lambda, p(lambda eps), p(eps), slack
    std::vector<std::tuple<double, double, double, double>> rows;
};

/// Checks p_f(lambda eps) >= lambda^2 p_f(eps) for each lambda >= 1.
inline GageScalingReport check_gage_scaling(const TabFunc& f, double eps,
                                            const std::vector<double>& lambdas,
                                            const NormSpec& N) {
    GageScalingReport rep;
    const double pe = gage(f, eps, N);
    for (double l : lambdas) {
        if (l < 1.0) throw precondition_error("check_gage_scaling: lambda must be >= 1");
        const double pl = gage(f, l * eps, N);
        const double slack = (pl == kInf) ? kInf : pl - l * l * pe;
        rep.rows.emplace_back(l, pl, pe, slack);
        if (slack < -1e-9) rep.ok = false;
    }
    return rep;
}

/// Profile r -> min{ f(x)/||x||^2 : x in dom f, ||x|| >= r }.
inline std::vector<std::pair<double, double>> coercivity_profile(const TabFunc& f, const NormSpec& N,
                                                                 const std::vector<double>& radii) {
    std::vector<std::pair<double, double>> out;
    const auto dom = f.dom_indices();
    const Support& S = f.support();
    for (double r : radii) {
        if (!(r > 0.0)) throw precondition_error("coercivity_profile: radii must be > 0");
        double m = kInf;
        bool any = false;
        for (int i : dom) {
            const double nx = N.eval(S.point(i));
            if (nx < r) continue;
            any = true;
            m = std::min(m, f.value(i) / (nx * nx));
        }
        if (!any) throw precondition_error("coercivity_profile: radius exceeds the support extent");
        out.emplace_back(r, m);
    }
    return out;
}

struct StabilityReport {
    Vec x0;
    double base_min = 0.0;
    double max_distance = 0.0;
    double eps_implied = kInf;
    bool within = false;
    int trials = 0;
};

/// Probes Theorem-style minimizer stability: exact minimizers of f + x* for
/// random functionals within dual distance eta of x0*, against the epsilon
/// implied by the modulus ladder of f (callers pass a convex f, typically an
/// envelope). Distances are measured in N.
inline StabilityReport minimizer_stability_probe(const TabFunc& f, const Vec& x0star, double eta,
                                                 int trials, std::uint64_t seed,
                                                 const NormSpec& N) {
    const auto dom = f.dom_indices();
    if (dom.empty()) throw precondition_error("minimizer_stability_probe: empty domain");
    const Support& S = f.support();

    auto argmin_for = [&](const Vec& w) {
        int best = dom.front();
        double bv = kInf;
        for (int i : dom) {
            const double v = f.value(i) + dot(w, S.point(i));
            if (v < bv) {
                bv = v;
                best = i;
            }
        }
        return std::make_pair(best, bv);
    };

    StabilityReport rep;
    rep.trials = trials;
    auto [i0, v0] = argmin_for(x0star);
    rep.x0 = S.point(i0);
    rep.base_min = v0;

    std::mt19937_64 rng(seed);
    for (int t = 0; t < trials; ++t) {
        Vec w = x0star;
        for (;;) {  // rejection-sample the dual ball of radius eta
            Vec u = x0star;
            for (int k = 0; k < S.dim(); ++k) u[k] = x0star[k] + eta * (2.0 * det_uniform(rng) - 1.0);
            Vec diff = u - x0star;
            if (eta == 0.0 || N.dual_eval(diff) < eta) {
                w = u;
                break;
            }
        }
        auto [it, vt] = argmin_for(w);
        rep.max_distance = std::max(rep.max_distance, N.eval(S.point(it) - rep.x0));
    }

    // Smallest eps' on a ladder whose modulus beats the perturbation scale
    // eta*diam/2 (midpoint argument on the finite support).
    double diam = 0.0;
    for (size_t a = 0; a < dom.size(); ++a)
        for (size_t b = a + 1; b < dom.size(); ++b)
            diam = std::max(diam, N.eval(S.point(dom[a]) - S.point(dom[b])));
    const double need = 0.5 * eta * diam;
    for (int k = 1; k <= 64; ++k) {
        const double epsp = diam * k / 64.0;
        const double dk = delta_modulus(f, epsp, PseudometricSpec::norm_induced(N)).delta;
        if (dk > need) {
            rep.eps_implied = epsp;
            break;
        }
    }
    double slack = S.has_grid() ? S.grid().spacing : 0.0;
    rep.within = rep.max_distance <= rep.eps_implied + slack;
    return rep;
}

}  // namespace uconv
