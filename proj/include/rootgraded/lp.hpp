#pragma once

#include <optional>

#include "rootgraded/linalg.hpp"

namespace rootgraded {

/// Exact rational feasibility of the system  rows[i] . x >= 1  for all i,
/// with x free. Returns a witness x, or nothing if infeasible.
///
/// Strict systems rows[i] . x > 0 are positively homogeneous, so they are
/// feasible iff this normalized system is; the returned witness satisfies
/// the strict system with margin 1.
///
/// Phase-1 simplex with Bland's rule (guaranteed termination), writing
/// x = xp - xn with xp, xn >= 0 and surplus/artificial columns.
inline std::optional<RatVec> feasible_point(const RatMat& rows) {
    if (rows.empty()) return RatVec{};
    size_t m = rows.size(), d = rows[0].size();
    size_t nvar = 2 * d + 2 * m;  // xp, xn, surplus, artificial
    // tableau: m rows of [coeffs | rhs]
    RatMat t(m, RatVec(nvar + 1, Rat(0)));
    std::vector<size_t> basis(m);
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < d; ++j) {
            t[i][j] = rows[i][j];
            t[i][d + j] = -rows[i][j];
        }
        t[i][2 * d + i] = Rat(-1);      // surplus
        t[i][2 * d + m + i] = Rat(1);   // artificial
        t[i][nvar] = Rat(1);            // rhs
        basis[i] = 2 * d + m + i;
    }
    // phase-1 objective: minimize sum of artificials; reduced-cost row
    RatVec cost(nvar + 1, Rat(0));
    for (size_t i = 0; i < m; ++i) cost[2 * d + m + i] = Rat(1);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j <= nvar; ++j) cost[j] -= t[i][j];
    while (true) {
        size_t enter = nvar;
        for (size_t j = 0; j < nvar; ++j)
            if (cost[j] < Rat(0)) { enter = j; break; }  // Bland
        if (enter == nvar) break;
        size_t leave = m;
        Rat best(0);
        for (size_t i = 0; i < m; ++i) {
            if (t[i][enter] <= Rat(0)) continue;
            Rat ratio = t[i][nvar] / t[i][enter];
            if (leave == m || ratio < best ||
                (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == m) return std::nullopt;  // unbounded phase 1: cannot happen
        // pivot
        Rat piv = t[leave][enter];
        for (size_t j = 0; j <= nvar; ++j) t[leave][j] /= piv;
        for (size_t i = 0; i < m; ++i) {
            if (i == leave || t[i][enter] == Rat(0)) continue;
            Rat f = t[i][enter];
            for (size_t j = 0; j <= nvar; ++j) t[i][j] -= f * t[leave][j];
        }
        Rat f = cost[enter];
        for (size_t j = 0; j <= nvar; ++j) cost[j] -= f * t[leave][j];
        basis[leave] = enter;
    }
    // feasible iff all artificials are zero, i.e. objective value is 0
    if (cost[nvar] != Rat(0)) return std::nullopt;
    RatVec x(d, Rat(0));
    for (size_t i = 0; i < m; ++i) {
        if (basis[i] < d)
            x[basis[i]] += t[i][nvar];
        else if (basis[i] < 2 * d)
            x[basis[i] - d] -= t[i][nvar];
    }
    return x;
}

/// Exact conic membership: does target lie in the cone of the given vectors,
/// i.e. is there lambda >= 0 with sum lambda_i vecs[i] = target?
/// Phase-1 simplex on the equality system (rows indexed by coordinates).
inline bool in_cone(const RatMat& vecs, const RatVec& target) {
    size_t d = target.size(), n = vecs.size();
    size_t nvar = n + d;  // lambdas + artificials
    RatMat t(d, RatVec(nvar + 1, Rat(0)));
    std::vector<size_t> basis(d);
    for (size_t i = 0; i < d; ++i) {
        Rat rhs = target[i];
        Rat sgn = rhs < Rat(0) ? Rat(-1) : Rat(1);
        for (size_t j = 0; j < n; ++j) t[i][j] = sgn * vecs[j][i];
        t[i][n + i] = Rat(1);
        t[i][nvar] = sgn * rhs;
        basis[i] = n + i;
    }
    RatVec cost(nvar + 1, Rat(0));
    for (size_t i = 0; i < d; ++i) cost[n + i] = Rat(1);
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j <= nvar; ++j) cost[j] -= t[i][j];
    while (true) {
        size_t enter = nvar;
        for (size_t j = 0; j < nvar; ++j)
            if (cost[j] < Rat(0)) { enter = j; break; }
        if (enter == nvar) break;
        size_t leave = d;
        Rat best(0);
        for (size_t i = 0; i < d; ++i) {
            if (t[i][enter] <= Rat(0)) continue;
            Rat ratio = t[i][nvar] / t[i][enter];
            if (leave == d || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == d) return false;  // unbounded: cannot happen in phase 1
        Rat piv = t[leave][enter];
        for (size_t j = 0; j <= nvar; ++j) t[leave][j] /= piv;
        for (size_t i = 0; i < d; ++i) {
            if (i == leave || t[i][enter] == Rat(0)) continue;
            Rat f = t[i][enter];
            for (size_t j = 0; j <= nvar; ++j) t[i][j] -= f * t[leave][j];
        }
        Rat f = cost[enter];
        for (size_t j = 0; j <= nvar; ++j) cost[j] -= f * t[leave][j];
        basis[leave] = enter;
    }
    return cost[nvar] == Rat(0);
}

}  // namespace rootgraded
