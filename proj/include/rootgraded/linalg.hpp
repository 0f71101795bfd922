#pragma once

#include <cassert>
#include <optional>
#include <stdexcept>

#include "rootgraded/rational.hpp"

namespace rootgraded {

/// Dense matrix over exact rationals.
using RatMat = std::vector<RatVec>;

inline RatMat rat_identity(size_t n) {
    RatMat m(n, RatVec(n, Rat(0)));
    for (size_t i = 0; i < n; ++i) m[i][i] = Rat(1);
    return m;
}

inline RatMat rat_mul(const RatMat& a, const RatMat& b) {
    size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    RatMat c(n, RatVec(m, Rat(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (a[i][l] == Rat(0)) continue;
            for (size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

inline RatVec rat_apply(const RatMat& a, const RatVec& v) {
    RatVec out(a.size(), Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) out[i] += a[i][j] * v[j];
    return out;
}

/// Reduced row echelon form in place; returns pivot column indices.
inline std::vector<size_t> rref(RatMat& m) {
    std::vector<size_t> pivots;
    if (m.empty()) return pivots;
    size_t rows = m.size(), cols = m[0].size(), r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && m[p][c] == Rat(0)) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        Rat inv = Rat(1) / m[r][c];
        for (size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == Rat(0)) continue;
            Rat f = m[i][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline size_t rat_rank(RatMat m) { return rref(m).size(); }

/// Basis of the right kernel {x : m x = 0}.
inline RatMat kernel_basis(RatMat m) {
    size_t cols = m.empty() ? 0 : m[0].size();
    auto pivots = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (size_t c : pivots) is_pivot[c] = true;
    RatMat basis;
    for (size_t c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        RatVec v(cols, Rat(0));
        v[c] = Rat(1);
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][c];
        basis.push_back(v);
    }
    return basis;
}

/// Solve m x = b; empty optional if inconsistent. Returns one solution.
inline std::optional<RatVec> solve(RatMat m, RatVec b) {
    size_t rows = m.size(), cols = m.empty() ? 0 : m[0].size();
    for (size_t i = 0; i < rows; ++i) m[i].push_back(b[i]);
    auto pivots = rref(m);
    if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
    RatVec x(cols, Rat(0));
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = m[r][cols];
    return x;
}

inline RatMat rat_inverse(const RatMat& a) {
    size_t n = a.size();
    RatMat m(n, RatVec(2 * n, Rat(0)));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) m[i][j] = a[i][j];
        m[i][n + i] = Rat(1);
    }
    auto pivots = rref(m);
    if (pivots.size() != n) throw std::runtime_error("rat_inverse: singular matrix");
    RatMat inv(n, RatVec(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv[i][j] = m[i][n + j];
    return inv;
}

/// Characteristic polynomial coefficients c_0..c_n of det(xI - m),
/// via Faddeev-LeVerrier (exact).
inline std::vector<Rat> char_poly(const RatMat& a) {
    size_t n = a.size();
    std::vector<Rat> c(n + 1, Rat(0));
    c[n] = Rat(1);
    RatMat m = rat_identity(n);
    for (size_t k = 1; k <= n; ++k) {
        m = rat_mul(a, m);
        Rat tr(0);
        for (size_t i = 0; i < n; ++i) tr += m[i][i];
        c[n - k] = -tr / Rat(Int(k));
        for (size_t i = 0; i < n; ++i) m[i][i] += c[n - k];
    }
    return c;
}

/// Gram-Schmidt without normalization, with respect to a rational inner
/// product given by gram (or the dot product if gram is empty).
/// Returns an orthogonal basis of the span of the input vectors.
inline RatMat orthogonalize(const RatMat& vecs, const RatMat& gram = {}) {
    auto inner = [&](const RatVec& x, const RatVec& y) {
        if (gram.empty()) return dot(x, y);
        return dot(x, rat_apply(gram, y));
    };
    RatMat basis;
    for (const auto& v : vecs) {
        RatVec w = v;
        for (const auto& u : basis) {
            Rat coeff = inner(w, u) / inner(u, u);
            w = w - coeff * u;
        }
        if (!is_zero(w)) basis.push_back(w);
    }
    return basis;
}

}  // namespace rootgraded
