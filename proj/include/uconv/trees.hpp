#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "uconv/envelope.hpp"
#include "uconv/moduli.hpp"
#include "uconv/pseudometric.hpp"
#include "uconv/simplex.hpp"
#include "uconv/tab_func.hpp"

namespace uconv {

/// Midpoint-consistent labeled binary tree, nodes keyed by binary strings
/// ("" = root, "01" = child 1 of child 0, ...). Complete up to its height.
struct DyadicTree {
    int height = 0;
    std::map<std::string, Vec> nodes;

    const Vec& root() const { return nodes.at(""); }
};

inline void require_tree_consistent(const DyadicTree& T) {
    if (!T.nodes.count("")) throw precondition_error("tree: missing root");
    for (const auto& [s, x] : T.nodes) {
        if (static_cast<int>(s.size()) > T.height) throw precondition_error("tree: node deeper than height");
        if (static_cast<int>(s.size()) == T.height) continue;
        auto c0 = T.nodes.find(s + "0"), c1 = T.nodes.find(s + "1");
        if (c0 == T.nodes.end() || c1 == T.nodes.end())
            throw precondition_error("tree: incomplete at node '" + s + "'");
        if (!(midpoint(c0->second, c1->second) == x))
            throw precondition_error("tree: midpoint consistency fails at node '" + s + "'");
    }
}

/// True iff every sibling pair is eps-separated under d.
inline bool tree_separation_check(const DyadicTree& T, double eps, const PseudometricSpec& d) {
    require_tree_consistent(T);
    for (const auto& [s, x] : T.nodes) {
        if (static_cast<int>(s.size()) >= T.height) continue;
        if (d.eval(T.nodes.at(s + "0"), T.nodes.at(s + "1")) < eps - 1e-9) return false;
    }
    return true;
}

struct TreeHeights {
    std::vector<int> height;  // per support index
    int max_height = 0;
    int argmax = 0;
    bool capped = false;
    int capped_at = -1;  // a surviving point index when capped
};

/// Heights of maximal eps-separated trees rooted at each support point, by
/// level-set iteration: S_{n+1} = {x : some midpoint pair of x inside S_n is
/// eps-separated}. Exact integer arithmetic on grid indices.
inline TreeHeights compute_tree_heights(const Support& S, double eps, const PseudometricSpec& d,
                                        int cap) {
    if (cap < 1) throw precondition_error("tree search: cap must be >= 1");
    const int n = S.size();
    TreeHeights th;
    th.height.assign(static_cast<size_t>(n), 0);
    std::vector<int> alive(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) alive[static_cast<size_t>(i)] = i;
    std::vector<char> in_set(static_cast<size_t>(n), 1);

    for (int level = 1; level <= cap && !alive.empty(); ++level) {
        std::vector<int> next;
        std::vector<char> next_in(static_cast<size_t>(n), 0);
        for (int x : alive) {
            bool found = false;
            for (int y : alive) {
                // z with (y+z)/2 = x, z in the alive set
                std::optional<int> z;
                if (S.has_grid()) {
                    const auto& g = S.grid();
                    auto xi = g.unflatten(x), yi = g.unflatten(y);
                    std::array<int, 3> zi{0, 0, 0};
                    bool ok = true;
                    for (int k = 0; k < S.dim(); ++k) {
                        zi[static_cast<size_t>(k)] = 2 * xi[static_cast<size_t>(k)] - yi[static_cast<size_t>(k)];
                        if (zi[static_cast<size_t>(k)] < 0 || zi[static_cast<size_t>(k)] >= g.shape[static_cast<size_t>(k)]) {
                            ok = false;
                            break;
                        }
                    }
                    if (ok) z = static_cast<int>(g.flatten(zi));
                } else {
                    z = S.index_of(2.0 * S.point(x) - S.point(y));
                }
                if (!z || *z < y || !in_set[static_cast<size_t>(*z)]) continue;
                if (d.eval(S.point(y), S.point(*z)) < eps) continue;
                found = true;
                break;
            }
            if (found) {
                next.push_back(x);
                next_in[static_cast<size_t>(x)] = 1;
                th.height[static_cast<size_t>(x)] = level;
            }
        }
        if (!next.empty() && level == cap) {
            th.capped = true;
            th.capped_at = next.front();
        }
        alive = std::move(next);
        in_set = std::move(next_in);
    }
    for (int i = 0; i < n; ++i)
        if (th.height[static_cast<size_t>(i)] > th.height[static_cast<size_t>(th.argmax)]) th.argmax = i;
    th.max_height = th.height[static_cast<size_t>(th.argmax)];
    return th;
}

namespace detail {

inline void build_witness(const Support& S, const PseudometricSpec& d, double eps,
                          const std::vector<int>& heights, int x, int k, const std::string& key,
                          DyadicTree& T) {
    T.nodes[key] = S.point(x);
    if (k == 0) return;
    for (int y = 0; y < S.size(); ++y) {
        if (heights[static_cast<size_t>(y)] < k - 1) continue;
        // find z with (y+z)/2 = x
        std::optional<int> zz;
        if (S.has_grid()) {
            const auto& g = S.grid();
            auto xi = g.unflatten(x), yi = g.unflatten(y);
            std::array<int, 3> zi{0, 0, 0};
            bool ok = true;
            for (int c = 0; c < S.dim(); ++c) {
                zi[static_cast<size_t>(c)] = 2 * xi[static_cast<size_t>(c)] - yi[static_cast<size_t>(c)];
                if (zi[static_cast<size_t>(c)] < 0 || zi[static_cast<size_t>(c)] >= g.shape[static_cast<size_t>(c)]) {
                    ok = false;
                    break;
                }
            }
            if (ok) zz = static_cast<int>(g.flatten(zi));
        } else {
            zz = S.index_of(2.0 * S.point(x) - S.point(y));
        }
        if (!zz || *zz < y || heights[static_cast<size_t>(*zz)] < k - 1) continue;
        if (d.eval(S.point(y), S.point(*zz)) < eps) continue;
        build_witness(S, d, eps, heights, y, k - 1, key + "0", T);
        build_witness(S, d, eps, heights, *zz, k - 1, key + "1", T);
        return;
    }
    throw precondition_error("tree witness reconstruction failed");  // unreachable
}

}  // namespace detail

struct TreeSearchResult {
    int height = 0;
    bool capped = false;  // true: height is a ">= cap" statement
    DyadicTree witness;
};

/// Exact maximal height of an eps-separated tree with all nodes in S, rooted
/// at `root` when given, together with a witness attaining it.
inline TreeSearchResult max_separated_tree_height(const Support& S, double eps,
                                                  const PseudometricSpec& d,
                                                  std::optional<Vec> root, int cap) {
    auto th = compute_tree_heights(S, eps, d, cap);
    TreeSearchResult r;
    int x;
    if (root) {
        auto i = S.index_of(*root);
        if (!i) throw precondition_error("max_separated_tree_height: root not in S");
        x = *i;
    } else {
        x = th.argmax;
    }
    r.height = th.height[static_cast<size_t>(x)];
    r.capped = th.capped;
    r.witness.height = r.height;
    detail::build_witness(S, d, eps, th.height, x, r.height, "", r.witness);
    return r;
}

/// Glue two eps-separated trees at their midpoint (Thm-style construction):
/// result is rooted at (x+y)/2 with height min(h_x, h_y) + 1.
inline DyadicTree glue_trees(const Vec& x, const Vec& y, const DyadicTree& Tx, const DyadicTree& Ty,
                             double eps, const PseudometricSpec& d) {
    if (!(Tx.root() == x) || !(Ty.root() == y))
        throw precondition_error("glue_trees: trees not rooted at the given points");
    if (!tree_separation_check(Tx, eps, d) || !tree_separation_check(Ty, eps, d))
        throw precondition_error("glue_trees: input trees are not eps-separated");
    if (d.eval(x, y) < eps) throw precondition_error("glue_trees: d(x,y) < eps");
    const int h = std::min(Tx.height, Ty.height);
    DyadicTree T;
    T.height = h + 1;
    T.nodes[""] = midpoint(x, y);
    for (const auto& [s, p] : Tx.nodes)
        if (static_cast<int>(s.size()) <= h) T.nodes["0" + s] = p;
    for (const auto& [s, p] : Ty.nodes)
        if (static_cast<int>(s.size()) <= h) T.nodes["1" + s] = p;
    return T;
}

/// f(x) = -(max height of an eps-separated tree rooted at x), the raw
/// quasi-concave staircase the renorming pipeline starts from.
inline TabFunc height_function(const Support& S, double eps, const PseudometricSpec& d, int cap) {
    auto th = compute_tree_heights(S, eps, d, cap);
    if (th.capped)
        throw cap_exceeded_error("height_function: cap exceeded at point " +
                                 fmt_vec(S.point(th.capped_at)));
    std::vector<double> vals(static_cast<size_t>(S.size()));
    for (int i = 0; i < S.size(); ++i) vals[static_cast<size_t>(i)] = -static_cast<double>(th.height[static_cast<size_t>(i)]);
    return TabFunc(std::make_shared<Support>(S), std::move(vals), "tree_height");
}

/// Convex-combination-consistent bush. Node keys: "" root, children "k" /
/// "s.k" with per-edge weights.
struct Bush {
    int height = 0;
    std::map<std::string, Vec> nodes;
    std::map<std::string, double> weights;  // key = child node key

    static std::string child_key(const std::string& s, int k) {
        return s.empty() ? std::to_string(k) : s + "." + std::to_string(k);
    }
};

inline std::vector<std::string> bush_children(const Bush& B, const std::string& s) {
    std::vector<std::string> out;
    for (int k = 0;; ++k) {
        auto key = Bush::child_key(s, k);
        if (!B.nodes.count(key)) break;
        out.push_back(key);
    }
    return out;
}

inline void require_bush_consistent(const Bush& B) {
    if (!B.nodes.count("")) throw precondition_error("bush: missing root");
    for (const auto& [s, x] : B.nodes) {
        auto ch = bush_children(B, s);
        const int depth = s.empty() ? 0 : 1 + static_cast<int>(std::count(s.begin(), s.end(), '.'));
        if (depth >= B.height) continue;
        if (ch.empty()) throw precondition_error("bush: node '" + s + "' has no children");
        double wsum = 0.0;
        Vec comb = 0.0 * x;
        for (const auto& ck : ch) {
            const double w = B.weights.at(ck);
            if (w < 0.0) throw precondition_error("bush: negative weight");
            wsum += w;
            comb = comb + w * B.nodes.at(ck);
        }
        if (std::fabs(wsum - 1.0) > 1e-12) throw precondition_error("bush: weights do not sum to 1");
        for (int c = 0; c < x.dim; ++c)
            if (std::fabs(comb[c] - x[c]) > 1e-12)
                throw precondition_error("bush: combination consistency fails at '" + s + "'");
    }
}

inline bool bush_separation_check(const Bush& B, double eps, const PseudometricSpec& d) {
    require_bush_consistent(B);
    for (const auto& [s, x] : B.nodes) {
        for (const auto& ck : bush_children(B, s)) {
            if (B.weights.at(ck) <= 0.0) continue;
            if (d.eval(B.nodes.at(ck), x) < eps - 1e-9) return false;
        }
    }
    return true;
}

struct BushBoundReport {
    bool ok = true;
    double a = 0.0, b = 0.0;
    double delta_used = 0.0;
    double bound = kInf;
    bool tree_recursion_checked = false;
};

/// Height bound from a bounded eps-uniformly convex function on the nodes:
/// height <= (b-a)/delta. Binary midpoint bushes are additionally checked via
/// the direct recursion f(x_s) <= max children - delta. delta_override exists
/// for negative-control fixtures.
inline BushBoundReport bush_height_bound_check(const Bush& B, const TabFunc& f, double eps,
                                               const PseudometricSpec& d,
                                               std::optional<double> delta_override = std::nullopt) {
    require_bush_consistent(B);
    BushBoundReport rep;
    if (B.height == 0) return rep;

    // nodes must live on the support of f
    double a = kInf, b = -kInf;
    for (const auto& [s, x] : B.nodes) {
        const double v = f.value_at(x);
        if (v == kInf) throw precondition_error("bush_height_bound_check: node off the support of f");
        a = std::min(a, v);
        b = std::max(b, v);
    }
    rep.a = a;
    rep.b = b;

    bool dyadic_shape = true;
    for (const auto& [s, x] : B.nodes) {
        auto ch = bush_children(B, s);
        if (ch.empty()) continue;
        if (ch.size() != 2 || std::fabs(B.weights.at(ch[0]) - 0.5) > 1e-12 ||
            std::fabs(B.weights.at(ch[1]) - 0.5) > 1e-12) {
            dyadic_shape = false;
            break;
        }
    }

    double delta;
    if (delta_override) {
        delta = *delta_override;
    } else if (dyadic_shape) {
        delta = delta_modulus(f, eps, d).delta;
    } else {
        delta = delta_modulus(convex_envelope(f).envelope, eps, d).delta;
    }
    rep.delta_used = delta;
    if (!(delta > 0.0)) {
        rep.ok = false;
        return rep;
    }
    rep.bound = (b - a) / delta;
    rep.ok = B.height <= rep.bound + 1e-9;

    if (dyadic_shape && !delta_override) {
        rep.tree_recursion_checked = true;
        for (const auto& [s, x] : B.nodes) {
            auto ch = bush_children(B, s);
            if (ch.empty()) continue;
            const Vec &c0 = B.nodes.at(ch[0]), &c1 = B.nodes.at(ch[1]);
            if (d.eval(c0, c1) < eps) continue;
            const double lhs = f.value_at(x);
            const double rhs = std::max(f.value_at(c0), f.value_at(c1)) - delta;
            if (lhs > rhs + 1e-9) rep.ok = false;
        }
    }
    return rep;
}

namespace detail {

/// Wolfe-style projection of the origin onto conv(pts - q), returning the
/// projection of q onto conv(pts).
inline Vec project_onto_hull(const Vec& q, const std::vector<Vec>& pts) {
    const int d = q.dim;
    // active corral with affine weights
    std::vector<int> S;
    std::vector<double> lam;
    int start = 0;
    double bn = kInf;
    for (size_t i = 0; i < pts.size(); ++i) {
        const double n = norm2(pts[i] - q);
        if (n < bn) {
            bn = n;
            start = static_cast<int>(i);
        }
    }
    S = {start};
    lam = {1.0};
    Vec x = pts[static_cast<size_t>(start)] - q;
    for (int iter = 0; iter < 200; ++iter) {
        // linear minimization step
        int best = -1;
        double bd = dot(x, x) - 1e-14 * std::max(1.0, dot(x, x));
        for (size_t i = 0; i < pts.size(); ++i) {
            const double v = dot(x, pts[i] - q);
            if (v < bd) {
                bd = v;
                best = static_cast<int>(i);
            }
        }
        if (best < 0) break;
        bool already = false;
        for (int s : S) already |= (s == best);
        if (!already) {
            S.push_back(best);
            lam.push_back(0.0);
        }
        // minor cycle: affine min-norm over the corral, clip to the simplex
        for (int minor = 0; minor < 50; ++minor) {
            const int m = static_cast<int>(S.size());
            // solve min ||sum a_i p_i||, sum a_i = 1 via normal equations
            std::vector<std::vector<double>> G(static_cast<size_t>(m + 1), std::vector<double>(static_cast<size_t>(m + 2), 0.0));
            for (int i = 0; i < m; ++i) {
                for (int j = 0; j < m; ++j)
                    G[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                        dot(pts[static_cast<size_t>(S[static_cast<size_t>(i)])] - q, pts[static_cast<size_t>(S[static_cast<size_t>(j)])] - q);
                G[static_cast<size_t>(i)][static_cast<size_t>(m)] = 1.0;
            }
            for (int j = 0; j < m; ++j) G[static_cast<size_t>(m)][static_cast<size_t>(j)] = 1.0;
            G[static_cast<size_t>(m)][static_cast<size_t>(m + 1)] = 1.0;
            // gaussian elimination
            std::vector<double> a(static_cast<size_t>(m), 1.0 / m);
            {
                const int nn = m + 1;
                for (int col = 0, row = 0; col <= m && row < nn; ++col) {
                    int piv = -1;
                    double pv = 1e-13;
                    for (int i = row; i < nn; ++i)
                        if (std::fabs(G[static_cast<size_t>(i)][static_cast<size_t>(col)]) > pv) {
                            pv = std::fabs(G[static_cast<size_t>(i)][static_cast<size_t>(col)]);
                            piv = i;
                        }
                    if (piv < 0) continue;
                    std::swap(G[static_cast<size_t>(piv)], G[static_cast<size_t>(row)]);
                    for (int i = 0; i < nn; ++i) {
                        if (i == row) continue;
                        const double f = G[static_cast<size_t>(i)][static_cast<size_t>(col)] / G[static_cast<size_t>(row)][static_cast<size_t>(col)];
                        if (f == 0.0) continue;
                        for (int jj = col; jj <= m + 1; ++jj)
                            G[static_cast<size_t>(i)][static_cast<size_t>(jj)] -= f * G[static_cast<size_t>(row)][static_cast<size_t>(jj)];
                    }
                    ++row;
                }
                // read solution if well posed; fall back to uniform weights otherwise
                bool okship = true;
                std::vector<double> sol(static_cast<size_t>(m), 0.0);
                for (int i = 0, row = 0; i < m; ++i) {
                    (void)row;
                    // find row with pivot in column i
                    int r = -1;
                    for (int rr = 0; rr <= m; ++rr) {
                        bool lead = std::fabs(G[static_cast<size_t>(rr)][static_cast<size_t>(i)]) > 1e-12;
                        if (!lead) continue;
                        bool clean = true;
                        for (int cc = 0; cc < i; ++cc)
                            clean &= std::fabs(G[static_cast<size_t>(rr)][static_cast<size_t>(cc)]) < 1e-9;
                        if (clean) {
                            r = rr;
                            break;
                        }
                    }
                    if (r < 0) {
                        okship = false;
                        break;
                    }
                    sol[static_cast<size_t>(i)] = G[static_cast<size_t>(r)][static_cast<size_t>(m + 1)] / G[static_cast<size_t>(r)][static_cast<size_t>(i)];
                }
                if (okship) a = sol;
            }
            bool interior = true;
            for (double ai : a) interior &= ai > 1e-12;
            if (interior) {
                lam = a;
                break;
            }
            // move toward a until a coordinate hits zero; drop it
            double theta = 1.0;
            for (int i = 0; i < m; ++i)
                if (a[static_cast<size_t>(i)] <= 1e-12 && lam[static_cast<size_t>(i)] - a[static_cast<size_t>(i)] > 1e-15)
                    theta = std::min(theta, lam[static_cast<size_t>(i)] / (lam[static_cast<size_t>(i)] - a[static_cast<size_t>(i)]));
            std::vector<int> S2;
            std::vector<double> l2;
            for (int i = 0; i < m; ++i) {
                const double li = (1.0 - theta) * lam[static_cast<size_t>(i)] + theta * a[static_cast<size_t>(i)];
                if (li > 1e-12) {
                    S2.push_back(S[static_cast<size_t>(i)]);
                    l2.push_back(li);
                }
            }
            if (S2.empty()) {
                S2 = {S[0]};
                l2 = {1.0};
            }
            S = std::move(S2);
            lam = std::move(l2);
        }
        Vec nx = 0.0 * q;
        for (size_t i = 0; i < S.size(); ++i) nx = nx + lam[i] * (pts[static_cast<size_t>(S[i])] - q);
        if (norm2(nx - x) < 1e-14) {
            x = nx;
            break;
        }
        x = nx;
    }
    return q + x;
}

}  // namespace detail

/// Norm distance between conv(A) and conv(B): exact LP for polytopal norms,
/// alternating projections (Wolfe min-norm steps) for l2.
inline double hull_distance(const std::vector<Vec>& A, const std::vector<Vec>& B, const NormSpec& N) {
    if (A.empty() || B.empty()) throw precondition_error("hull_distance: empty set");
    const int d = A.front().dim;
    if (N.kind() == NormSpec::Kind::lp && N.lp_exponent() == 2.0) {
        Vec pa = A.front(), pb = B.front();
        double prev = kInf;
        for (int it = 0; it < 400; ++it) {
            pa = detail::project_onto_hull(pb, A);
            pb = detail::project_onto_hull(pa, B);
            const double dcur = norm2(pa - pb);
            if (std::fabs(prev - dcur) < 1e-12) return dcur;
            prev = dcur;
        }
        return prev;
    }
    // polytopal: min sum(nu) s.t. sum(la a) - sum(mu b) - sum(nu v) = 0,
    // sum(la) = 1, sum(mu) = 1
    std::vector<Vec> V;
    if (N.kind() == NormSpec::Kind::polytope) {
        V = N.gauge().vertices();
    } else if (N.kind() == NormSpec::Kind::lp && N.lp_exponent() == 1.0) {
        for (int k = 0; k < d; ++k) {
            Vec e = 0.0 * A.front();
            e[k] = 1.0;
            V.push_back(e);
            e[k] = -1.0;
            V.push_back(e);
        }
    } else if (N.kind() == NormSpec::Kind::lp) {  // inf
        const int corners = 1 << d;
        for (int mask = 0; mask < corners; ++mask) {
            Vec v = 0.0 * A.front();
            for (int k = 0; k < d; ++k) v[k] = (mask >> k) & 1 ? 1.0 : -1.0;
            V.push_back(v);
        }
    } else {
        throw precondition_error("hull_distance: unsupported norm kind");
    }
    const int na = static_cast<int>(A.size()), nb = static_cast<int>(B.size()), nv = static_cast<int>(V.size());
    const int n = na + nb + nv;
    const int m = d + 2;
    std::vector<std::vector<Rat>> M(static_cast<size_t>(m), std::vector<Rat>(static_cast<size_t>(n), Rat(0)));
    std::vector<Rat> rhs(static_cast<size_t>(m), Rat(0)), c(static_cast<size_t>(n), Rat(0));
    for (int j = 0; j < na; ++j) {
        for (int r = 0; r < d; ++r) M[static_cast<size_t>(r)][static_cast<size_t>(j)] = to_rat(A[static_cast<size_t>(j)][r]);
        M[static_cast<size_t>(d)][static_cast<size_t>(j)] = 1;
    }
    for (int j = 0; j < nb; ++j) {
        for (int r = 0; r < d; ++r) M[static_cast<size_t>(r)][static_cast<size_t>(na + j)] = -to_rat(B[static_cast<size_t>(j)][r]);
        M[static_cast<size_t>(d + 1)][static_cast<size_t>(na + j)] = 1;
    }
    for (int j = 0; j < nv; ++j) {
        for (int r = 0; r < d; ++r) M[static_cast<size_t>(r)][static_cast<size_t>(na + nb + j)] = -to_rat(V[static_cast<size_t>(j)][r]);
        c[static_cast<size_t>(na + nb + j)] = 1;
    }
    rhs[static_cast<size_t>(d)] = 1;
    rhs[static_cast<size_t>(d + 1)] = 1;
    auto lp = ExactSimplex::solve(M, rhs, c);
    if (lp.status != LpResult::Status::optimal)
        throw precondition_error("hull_distance: LP failed");
    return to_double(lp.value);
}

struct SeparationSequenceResult {
    std::optional<std::vector<Vec>> witness;
    bool budget_exhausted = false;
    long nodes_visited = 0;
};

/// Depth-first search for x_1..x_n in S with
/// d(conv{x_1..x_k}, conv{x_{k+1}..x_n}) >= eps for every split k. Candidates
/// are restricted to extreme points of S when S is large; absence of a
/// witness is a lower-bound statement, not a proof.
inline SeparationSequenceResult convex_separation_sequence(const Support& S, double eps, int n,
                                                           const NormSpec& N,
                                                           long node_budget = 20000) {
    if (n < 2 || n > 12) throw precondition_error("convex_separation_sequence: n must be in [2,12]");
    std::vector<int> cand;
    if (S.size() <= 24) {
        for (int i = 0; i < S.size(); ++i) cand.push_back(i);
    } else if (S.dim() == 2) {
        cand = hull2d(S.points());
        std::sort(cand.begin(), cand.end());
    } else {
        // coordinate extremes
        for (int k = 0; k < S.dim(); ++k) {
            int lo = 0, hi = 0;
            for (int i = 1; i < S.size(); ++i) {
                if (S.point(i)[k] < S.point(lo)[k]) lo = i;
                if (S.point(i)[k] > S.point(hi)[k]) hi = i;
            }
            cand.push_back(lo);
            cand.push_back(hi);
        }
        std::sort(cand.begin(), cand.end());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    }

    SeparationSequenceResult res;
    std::vector<int> seq;
    std::vector<char> used(static_cast<size_t>(S.size()), 0);

    std::function<bool(void)> dfs = [&]() -> bool {
        if (static_cast<int>(seq.size()) == n) return true;
        if (res.nodes_visited++ > node_budget) {
            res.budget_exhausted = true;
            return false;
        }
        for (int ci : cand) {
            if (used[static_cast<size_t>(ci)]) continue;
            seq.push_back(ci);
            used[static_cast<size_t>(ci)] = 1;
            bool ok = true;
            for (size_t k = 1; k < seq.size() && ok; ++k) {
                std::vector<Vec> L, R;
                for (size_t i = 0; i < k; ++i) L.push_back(S.point(seq[i]));
                for (size_t i = k; i < seq.size(); ++i) R.push_back(S.point(seq[i]));
                if (hull_distance(L, R, N) < eps - 1e-9) ok = false;
            }
            if (ok && dfs()) return true;
            used[static_cast<size_t>(ci)] = 0;
            seq.pop_back();
            if (res.budget_exhausted) return false;
        }
        return false;
    };
    if (dfs()) {
        std::vector<Vec> w;
        for (int i : seq) w.push_back(S.point(i));
        res.witness = std::move(w);
    }
    return res;
}

}  // namespace uconv
