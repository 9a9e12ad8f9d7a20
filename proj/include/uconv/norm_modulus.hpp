#pragma once

#include <cmath>
#include <functional>
#include <random>

#include "uconv/moduli.hpp"
#include "uconv/norm.hpp"

namespace uconv {

/// Sampled modulus of convexity of a norm-like evaluator:
///   inf { 1 - |(x+y)/2| : |x| = |y| = 1, |x - y| >= eps }
/// over deterministic low-discrepancy sphere samples, with a local boundary
/// refinement in 2D. Every reported pair is feasible, so the estimate is an
/// upper bound of the true infimum.
inline double norm_modulus_of(const std::function<double(const Vec&)>& nrm, int dim, double eps,
                              int samples, std::uint64_t seed) {
    if (eps <= 0.0) return 0.0;
    std::mt19937_64 rng(seed);
    const double jitter = det_uniform(rng);

    if (dim == 1) {
        // sphere = {-1, +1}
        if (eps > 2.0) return kInf;
        return 1.0 - nrm(Vec(0.0));
    }

    auto unit = [&](const Vec& v) {
        const double n = nrm(v);
        return (1.0 / n) * v;
    };

    if (dim == 2) {
        auto at = [&](double th) { return unit(Vec(std::cos(th), std::sin(th))); };
        const int k = std::max(samples, 16);
        std::vector<Vec> u(static_cast<size_t>(k));
        for (int i = 0; i < k; ++i)
            u[static_cast<size_t>(i)] = at(2.0 * M_PI * (i + jitter) / k);
        double best = kInf;
        double best_a = 0.0, best_b = 0.0;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) {
                if (nrm(u[static_cast<size_t>(i)] - u[static_cast<size_t>(j)]) < eps * (1.0 - 1e-12)) continue;
                const double gap = 1.0 - nrm(midpoint(u[static_cast<size_t>(i)], u[static_cast<size_t>(j)]));
                if (gap < best) {
                    best = gap;
                    best_a = 2.0 * M_PI * (i + jitter) / k;
                    best_b = 2.0 * M_PI * (j + jitter) / k;
                }
            }
        if (best == kInf) return kInf;
        // refinement: walk the first angle, put the second exactly on the
        // separation boundary by bisection, keep feasible pairs only
        double width = 2.0 * M_PI / k;
        double center = best_a;
        for (int round = 0; round < 8; ++round) {
            double round_best_t = center;
            for (int s = -8; s <= 8; ++s) {
                const double t = center + width * s / 8.0;
                const Vec x = at(t);
                double lo = 0.0, hi = best_b - best_a;
                if (hi <= 0) hi += 2.0 * M_PI;
                // ensure feasibility at hi; widen if needed
                int guard = 0;
                while (nrm(x - at(t + hi)) < eps && guard++ < 8) hi *= 1.25;
                if (nrm(x - at(t + hi)) < eps) continue;
                for (int it = 0; it < 60; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    if (nrm(x - at(t + mid)) >= eps)
                        hi = mid;
                    else
                        lo = mid;
                }
                const Vec y = at(t + hi);
                if (nrm(x - y) < eps * (1.0 - 1e-12)) continue;
                const double gap = 1.0 - nrm(midpoint(x, y));
                if (gap < best) {
                    best = gap;
                    round_best_t = t;
                }
            }
            center = round_best_t;
            width *= 0.4;
        }
        return std::max(best, 0.0);
    }

    // 3D: Fibonacci sphere, pair scan
    const int k = std::max(samples, 32);
    std::vector<Vec> u;
    u.reserve(static_cast<size_t>(k));
    const double ga = M_PI * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < k; ++i) {
        const double z = 1.0 - 2.0 * (i + 0.5 + jitter) / k;
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double th = ga * i;
        u.push_back(unit(Vec(r * std::cos(th), r * std::sin(th), z)));
    }
    double best = kInf;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            if (nrm(u[static_cast<size_t>(i)] - u[static_cast<size_t>(j)]) < eps * (1.0 - 1e-12)) continue;
            best = std::min(best, 1.0 - nrm(midpoint(u[static_cast<size_t>(i)], u[static_cast<size_t>(j)])));
        }
    return best == kInf ? kInf : std::max(best, 0.0);
}

inline double norm_modulus(const NormSpec& N, double eps, int samples = 512, std::uint64_t seed = 1) {
    return norm_modulus_of([&](const Vec& v) { return N.eval(v); }, N.dim(), eps, samples, seed);
}

}  // namespace uconv
