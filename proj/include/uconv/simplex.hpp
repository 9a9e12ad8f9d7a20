#pragma once

#include <optional>
#include <vector>

#include "uconv/rational.hpp"

namespace uconv {

/// Dense exact simplex for small standard-form programs
///
///     min c.x   s.t.  A x = b,  x >= 0
///
/// with rational arithmetic throughout. Row counts here are tiny (<= d+3)
/// while column counts reach a few thousand, so a plain tableau with Bland's
/// rule is adequate and immune to cycling and to floating-point tie trouble.
struct LpResult {
    enum class Status { optimal, infeasible, unbounded };
    Status status = Status::infeasible;
    Rat value = 0;
    std::vector<Rat> x;     // primal solution, size n
    std::vector<Rat> dual;  // y with A^T y <= c, c.x = b.y at optimum, size m
    std::vector<int> basis; // basic column per row (< n), -1 for leftover artificials
};

class ExactSimplex {
public:
    // A is row-major m x n.
    static LpResult solve(const std::vector<std::vector<Rat>>& A,
                          const std::vector<Rat>& b,
                          const std::vector<Rat>& c) {
        const int m = static_cast<int>(A.size());
        const int n = m ? static_cast<int>(A[0].size()) : 0;

        // Tableau columns: n structural + m artificial + rhs.
        const int cols = n + m + 1;
        std::vector<std::vector<Rat>> T(static_cast<size_t>(m), std::vector<Rat>(static_cast<size_t>(cols), Rat(0)));
        for (int i = 0; i < m; ++i) {
            const bool neg = b[static_cast<size_t>(i)] < 0;
            for (int j = 0; j < n; ++j)
                T[static_cast<size_t>(i)][static_cast<size_t>(j)] = neg ? Rat(-A[static_cast<size_t>(i)][static_cast<size_t>(j)]) : A[static_cast<size_t>(i)][static_cast<size_t>(j)];
            T[static_cast<size_t>(i)][static_cast<size_t>(n + i)] = 1;
            T[static_cast<size_t>(i)][static_cast<size_t>(cols - 1)] = neg ? Rat(-b[static_cast<size_t>(i)]) : b[static_cast<size_t>(i)];
        }
        std::vector<int> basis(static_cast<size_t>(m));
        for (int i = 0; i < m; ++i) basis[static_cast<size_t>(i)] = n + i;

        // Phase 1: minimize sum of artificials.
        std::vector<Rat> z1(static_cast<size_t>(cols), Rat(0));
        for (int j = 0; j < cols - 1; ++j) {
            Rat s(0);
            for (int i = 0; i < m; ++i)
                if (basis[static_cast<size_t>(i)] >= n) s += T[static_cast<size_t>(i)][static_cast<size_t>(j)];
            z1[static_cast<size_t>(j)] = (j >= n ? Rat(1) : Rat(0)) - s;
        }
        {
            Rat s(0);
            for (int i = 0; i < m; ++i)
                if (basis[static_cast<size_t>(i)] >= n) s += T[static_cast<size_t>(i)][static_cast<size_t>(cols - 1)];
            z1[static_cast<size_t>(cols - 1)] = -s;
        }
        if (!run(T, basis, z1, n, /*allow_artificial=*/false)) {
            LpResult r;
            r.status = LpResult::Status::unbounded;  // cannot happen in phase 1
            return r;
        }
        if (z1[static_cast<size_t>(cols - 1)] != 0) {
            LpResult r;
            r.status = LpResult::Status::infeasible;
            return r;
        }
        // Drive artificials out of the basis where possible.
        for (int i = 0; i < m; ++i) {
            if (basis[static_cast<size_t>(i)] < n) continue;
            int piv = -1;
            for (int j = 0; j < n; ++j)
                if (T[static_cast<size_t>(i)][static_cast<size_t>(j)] != 0) { piv = j; break; }
            if (piv >= 0) pivot(T, basis, i, piv);
            // else: redundant row, artificial stays basic at level 0.
        }

        // Phase 2 objective row: reduced costs of c.
        std::vector<Rat> z2(static_cast<size_t>(cols), Rat(0));
        for (int j = 0; j < cols; ++j) {
            Rat s(0);
            for (int i = 0; i < m; ++i) {
                const int bj = basis[static_cast<size_t>(i)];
                const Rat cb = bj < n ? c[static_cast<size_t>(bj)] : Rat(0);
                if (cb != 0) s += cb * T[static_cast<size_t>(i)][static_cast<size_t>(j)];
            }
            const Rat cj = (j < n) ? c[static_cast<size_t>(j)] : Rat(0);
            z2[static_cast<size_t>(j)] = (j == cols - 1) ? Rat(-s) : Rat(cj - s);
        }
        if (!run(T, basis, z2, n, /*allow_artificial=*/false)) {
            LpResult r;
            r.status = LpResult::Status::unbounded;
            return r;
        }

        LpResult r;
        r.status = LpResult::Status::optimal;
        r.x.assign(static_cast<size_t>(n), Rat(0));
        for (int i = 0; i < m; ++i)
            if (basis[static_cast<size_t>(i)] < n)
                r.x[static_cast<size_t>(basis[static_cast<size_t>(i)])] = T[static_cast<size_t>(i)][static_cast<size_t>(cols - 1)];
        Rat val(0);
        for (int j = 0; j < n; ++j)
            if (r.x[static_cast<size_t>(j)] != 0) val += c[static_cast<size_t>(j)] * r.x[static_cast<size_t>(j)];
        r.value = val;
        r.basis.assign(static_cast<size_t>(m), -1);
        for (int i = 0; i < m; ++i)
            r.basis[static_cast<size_t>(i)] = basis[static_cast<size_t>(i)] < n ? basis[static_cast<size_t>(i)] : -1;
        // Duals read off the artificial columns: y_i = -z2[n+i] with the sign
        // convention of the final objective row (artificial costs are zero).
        r.dual.assign(static_cast<size_t>(m), Rat(0));
        for (int i = 0; i < m; ++i) {
            Rat y = -z2[static_cast<size_t>(n + i)];
            if (b[static_cast<size_t>(i)] < 0) y = -y;
            r.dual[static_cast<size_t>(i)] = y;
        }
        return r;
    }

private:
    static void pivot(std::vector<std::vector<Rat>>& T, std::vector<int>& basis, int pr, int pc) {
        auto& prow = T[static_cast<size_t>(pr)];
        const Rat inv = Rat(1) / prow[static_cast<size_t>(pc)];
        for (auto& v : prow) v *= inv;
        const int m = static_cast<int>(T.size());
        const int cols = static_cast<int>(prow.size());
        for (int i = 0; i < m; ++i) {
            if (i == pr) continue;
            Rat f = T[static_cast<size_t>(i)][static_cast<size_t>(pc)];
            if (f == 0) continue;
            auto& row = T[static_cast<size_t>(i)];
            for (int j = 0; j < cols; ++j)
                if (prow[static_cast<size_t>(j)] != 0) row[static_cast<size_t>(j)] -= f * prow[static_cast<size_t>(j)];
        }
        basis[static_cast<size_t>(pr)] = pc;
    }

    // Bland's rule; zrow is maintained alongside the tableau. Returns false on unbounded.
    static bool run(std::vector<std::vector<Rat>>& T, std::vector<int>& basis,
                    std::vector<Rat>& z, int n, bool allow_artificial) {
        const int m = static_cast<int>(T.size());
        const int cols = m ? static_cast<int>(T[0].size()) : 0;
        const int jmax = allow_artificial ? cols - 1 : n;
        for (;;) {
            int pc = -1;
            for (int j = 0; j < jmax; ++j)
                if (z[static_cast<size_t>(j)] < 0) { pc = j; break; }
            if (pc < 0) return true;
            int pr = -1;
            Rat best(0);
            for (int i = 0; i < m; ++i) {
                const Rat a = T[static_cast<size_t>(i)][static_cast<size_t>(pc)];
                if (a <= 0) continue;
                Rat ratio = T[static_cast<size_t>(i)].back() / a;
                if (pr < 0 || ratio < best ||
                    (ratio == best && basis[static_cast<size_t>(i)] < basis[static_cast<size_t>(pr)])) {
                    pr = i;
                    best = ratio;
                }
            }
            if (pr < 0) return false;
            const Rat f = z[static_cast<size_t>(pc)] / T[static_cast<size_t>(pr)][static_cast<size_t>(pc)];
            pivot(T, basis, pr, pc);
            const auto& prow = T[static_cast<size_t>(pr)];
            for (int j = 0; j < cols; ++j)
                if (prow[static_cast<size_t>(j)] != 0) z[static_cast<size_t>(j)] -= f * prow[static_cast<size_t>(j)];
            z[static_cast<size_t>(pc)] = 0;
        }
    }
};

}  // namespace uconv
