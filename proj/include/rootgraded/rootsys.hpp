#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "rootgraded/linalg.hpp"

namespace rootgraded {

enum class LengthClass { Short, Long, Double };

/// Admissible inner product on the ambient space of a root system.
struct AdmissibleForm {
    RatMat gram;
};

/// Finite symmetric set of exact rational vectors spanning its span.
/// Roots are kept in canonical lexicographic order.
struct RootSystem {
    size_t dim = 0;
    std::vector<RatVec> roots;
    std::string label;
    RatMat gram;  // canonical admissible form; identity for built-ins

    // integer fast path: iroots[i] = scale * roots[i], entrywise integral
    long long scale = 1;
    std::vector<std::vector<long long>> iroots;

    std::map<RatVec, int> index;

    void finalize() {
        std::sort(roots.begin(), roots.end(), lex_less);
        roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
        index.clear();
        for (size_t i = 0; i < roots.size(); ++i) index[roots[i]] = (int)i;
        Int lcm_den = 1;
        for (const auto& r : roots)
            for (const auto& x : r) lcm_den = boost::multiprecision::lcm(lcm_den, x.denominator());
        scale = lcm_den.convert_to<long long>();
        iroots.assign(roots.size(), {});
        for (size_t i = 0; i < roots.size(); ++i) {
            iroots[i].resize(dim);
            for (size_t j = 0; j < dim; ++j) {
                Rat s = roots[i][j] * Rat(Int(scale));
                iroots[i][j] = s.numerator().convert_to<long long>();
            }
        }
        if (gram.empty()) gram = rat_identity(dim);
    }

    int index_of(const RatVec& v) const {
        auto it = index.find(v);
        return it == index.end() ? -1 : it->second;
    }

    Rat inner(const RatVec& a, const RatVec& b) const { return dot(a, rat_apply(gram, b)); }
    Rat norm(size_t i) const { return inner(roots[i], roots[i]); }
    /// Cartan pairing <beta, alpha> = 2(beta, alpha)/(alpha, alpha).
    Rat pairing(size_t b, size_t a) const {
        return Rat(2) * inner(roots[b], roots[a]) / norm(a);
    }

    size_t rank() const { return rat_rank(RatMat(roots.begin(), roots.end())); }
};

inline void validate(const RootSystem& phi) {
    if (phi.roots.empty()) throw std::invalid_argument("root system is empty");
    for (const auto& r : phi.roots) {
        if (r.size() != phi.dim) throw std::invalid_argument("root of wrong dimension");
        if (is_zero(r)) throw std::invalid_argument("root system contains zero");
        if (phi.index_of(-r) < 0) throw std::invalid_argument("root system not symmetric");
    }
}

/// Checks the admissible-form axioms: positive definiteness on the span,
/// integral Cartan pairings, and closure under reflections.
inline bool is_admissible(const RootSystem& phi) {
    RatMat span_basis;
    for (const auto& r : phi.roots) {
        RatMat test = span_basis;
        test.push_back(r);
        if (rat_rank(test) > span_basis.size()) span_basis.push_back(r);
    }
    // positive definite on span: leading principal minors of the Gram matrix
    size_t k = span_basis.size();
    RatMat g(k, RatVec(k));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) g[i][j] = phi.inner(span_basis[i], span_basis[j]);
    for (size_t m = 1; m <= k; ++m) {
        RatMat lead(m, RatVec(m));
        for (size_t i = 0; i < m; ++i)
            for (size_t j = 0; j < m; ++j) lead[i][j] = g[i][j];
        auto cp = char_poly(lead);  // det = (-1)^m * cp[0]
        Rat det = (m % 2 == 0) ? cp[0] : -cp[0];
        if (det <= Rat(0)) return false;
    }
    for (size_t b = 0; b < phi.roots.size(); ++b)
        for (size_t a = 0; a < phi.roots.size(); ++a) {
            Rat p = phi.pairing(b, a);
            if (p.denominator() != 1) return false;
            RatVec refl = phi.roots[b] - p * phi.roots[a];
            if (phi.index_of(refl) < 0) return false;
        }
    return true;
}

namespace detail {

/// rank of the 3 x d integer matrix {a, b, c} is <= 2 iff all 3x3 minors vanish.
inline bool in_plane(const std::vector<long long>& a, const std::vector<long long>& b,
                     const std::vector<long long>& c) {
    size_t d = a.size();
    for (size_t i = 0; i < d; ++i)
        for (size_t j = i + 1; j < d; ++j)
            for (size_t k = j + 1; k < d; ++k) {
                __int128 det = (__int128)a[i] * ((__int128)b[j] * c[k] - (__int128)b[k] * c[j]) -
                               (__int128)a[j] * ((__int128)b[i] * c[k] - (__int128)b[k] * c[i]) +
                               (__int128)a[k] * ((__int128)b[i] * c[j] - (__int128)b[j] * c[i]);
                if (det != 0) return false;
            }
    return true;
}

inline bool proportional(const std::vector<long long>& a, const std::vector<long long>& b) {
    size_t d = a.size();
    for (size_t i = 0; i < d; ++i)
        for (size_t j = i + 1; j < d; ++j)
            if ((__int128)a[i] * b[j] != (__int128)a[j] * b[i]) return false;
    return true;
}

}  // namespace detail

/// Indices of all roots lying in the plane spanned by roots i and j
/// (which must be linearly independent).
inline std::vector<int> plane_subsystem(const RootSystem& phi, int i, int j) {
    std::vector<int> out;
    for (size_t k = 0; k < phi.roots.size(); ++k)
        if (detail::in_plane(phi.iroots[i], phi.iroots[j], phi.iroots[k])) out.push_back((int)k);
    return out;
}

/// Connectivity of a subset under non-orthogonality (w.r.t. the canonical form).
inline bool is_connected_set(const RootSystem& phi, const std::vector<int>& idx) {
    if (idx.empty()) return false;
    std::vector<char> seen(idx.size(), 0);
    std::vector<size_t> stack = {0};
    seen[0] = 1;
    size_t count = 1;
    while (!stack.empty()) {
        size_t u = stack.back();
        stack.pop_back();
        for (size_t v = 0; v < idx.size(); ++v) {
            if (seen[v]) continue;
            if (phi.inner(phi.roots[idx[u]], phi.roots[idx[v]]) != Rat(0)) {
                seen[v] = 1;
                ++count;
                stack.push_back(v);
            }
        }
    }
    return count == idx.size();
}

inline bool is_irreducible_rank2(const RootSystem& phi, const std::vector<int>& idx) {
    if (idx.size() < 2) return false;
    RatMat m;
    for (int k : idx) m.push_back(phi.roots[k]);
    return rat_rank(m) == 2 && is_connected_set(phi, idx);
}

/// Every line meets the system in at most two roots.
inline bool is_reduced(const RootSystem& phi) {
    for (size_t i = 0; i < phi.roots.size(); ++i)
        for (size_t j = i + 1; j < phi.roots.size(); ++j)
            if (detail::proportional(phi.iroots[i], phi.iroots[j]) &&
                phi.roots[i] != -phi.roots[j])
                return false;
    return true;
}

inline std::vector<std::vector<int>> irreducible_components(const RootSystem& phi) {
    size_t n = phi.roots.size();
    std::vector<int> comp(n, -1);
    int ncomp = 0;
    for (size_t s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = ncomp;
        std::vector<size_t> stack = {s};
        while (!stack.empty()) {
            size_t u = stack.back();
            stack.pop_back();
            for (size_t v = 0; v < n; ++v) {
                if (comp[v] >= 0) continue;
                bool coupled = phi.inner(phi.roots[u], phi.roots[v]) != Rat(0) ||
                               detail::proportional(phi.iroots[u], phi.iroots[v]);
                if (coupled) {
                    comp[v] = ncomp;
                    stack.push_back(v);
                }
            }
        }
        ++ncomp;
    }
    std::vector<std::vector<int>> out(ncomp);
    for (size_t i = 0; i < n; ++i) out[comp[i]].push_back((int)i);
    return out;
}

inline bool is_irreducible(const RootSystem& phi) {
    return irreducible_components(phi).size() == 1;
}

/// All roots beta such that span{alpha, beta} meets Phi in an irreducible
/// rank-2 subsystem.
inline std::vector<int> rank2_neighborhood(const RootSystem& phi, int alpha) {
    if (alpha < 0 || (size_t)alpha >= phi.roots.size())
        throw std::invalid_argument("rank2_neighborhood: root not in system");
    std::vector<int> out;
    std::set<std::vector<int>> good_planes, bad_planes;
    for (size_t b = 0; b < phi.roots.size(); ++b) {
        if (detail::proportional(phi.iroots[alpha], phi.iroots[b])) continue;
        auto plane = plane_subsystem(phi, alpha, (int)b);
        if (good_planes.count(plane)) {
            out.push_back((int)b);
            continue;
        }
        if (bad_planes.count(plane)) continue;
        if (is_irreducible_rank2(phi, plane)) {
            good_planes.insert(plane);
            out.push_back((int)b);
        } else {
            bad_planes.insert(plane);
        }
    }
    return out;
}

/// Every root lies in an irreducible rank-2 subsystem. The witness map
/// records, per root index, one such subsystem (as root indices).
inline bool is_regular(const RootSystem& phi, std::map<int, std::vector<int>>* witness = nullptr) {
    for (size_t a = 0; a < phi.roots.size(); ++a) {
        bool found = false;
        for (size_t b = 0; b < phi.roots.size() && !found; ++b) {
            if (detail::proportional(phi.iroots[a], phi.iroots[b])) continue;
            auto plane = plane_subsystem(phi, (int)a, (int)b);
            if (is_irreducible_rank2(phi, plane)) {
                if (witness) (*witness)[(int)a] = plane;
                found = true;
            }
        }
        if (!found) return false;
    }
    return true;
}

/// Phi intersected with the linear span of the given vectors.
inline RootSystem subsystem(const RootSystem& phi, const RatMat& basis) {
    RatMat b;
    for (const auto& v : basis) {
        RatMat test = b;
        test.push_back(v);
        if (rat_rank(test) > b.size()) b.push_back(v);
    }
    RootSystem out;
    out.dim = phi.dim;
    out.gram = phi.gram;
    for (const auto& r : phi.roots) {
        RatMat test = b;
        test.push_back(r);
        if (rat_rank(test) == b.size()) out.roots.push_back(r);
    }
    out.finalize();
    return out;
}

namespace detail {

/// Row-echelon Z-basis of the lattice generated by the rows.
inline std::vector<std::vector<Int>> lattice_echelon(std::vector<std::vector<Int>> rows) {
    if (rows.empty()) return rows;
    size_t cols = rows[0].size(), r = 0;
    for (size_t c = 0; c < cols && r < rows.size(); ++c) {
        while (true) {
            size_t best = rows.size();
            for (size_t i = r; i < rows.size(); ++i)
                if (rows[i][c] != 0 &&
                    (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c])))
                    best = i;
            if (best == rows.size()) break;
            std::swap(rows[r], rows[best]);
            bool clean = true;
            for (size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i][c] == 0) continue;
                Int q = rows[i][c] / rows[r][c];
                for (size_t j = 0; j < cols; ++j) rows[i][j] -= q * rows[r][j];
                if (rows[i][c] != 0) clean = false;
            }
            if (clean) {
                ++r;
                break;
            }
        }
    }
    rows.resize(r);
    return rows;
}

inline bool lattice_contains(const std::vector<std::vector<Int>>& echelon, std::vector<Int> v) {
    size_t cols = v.size();
    for (const auto& row : echelon) {
        size_t c = 0;
        while (c < cols && row[c] == 0) ++c;
        if (c == cols) continue;
        if (v[c] % row[c] != 0) return false;
        Int q = v[c] / row[c];
        for (size_t j = 0; j < cols; ++j) v[j] -= q * row[j];
    }
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

}  // namespace detail

/// Psi is a weak subsystem of Phi: Psi subset of Phi and
/// Phi ∩ (integer span of Psi) = Psi.
inline bool is_weak_subsystem(const RootSystem& phi, const RootSystem& psi) {
    for (const auto& r : psi.roots)
        if (phi.index_of(r) < 0) return false;
    // common integer scaling for exact lattice arithmetic
    Int lcm_den = Int(phi.scale);
    std::vector<std::vector<Int>> gens;
    for (const auto& r : psi.roots) {
        std::vector<Int> v(phi.dim);
        for (size_t j = 0; j < phi.dim; ++j) {
            Rat s = r[j] * Rat(lcm_den);
            if (s.denominator() != 1) return false;  // psi not on phi's lattice scale
            v[j] = s.numerator();
        }
        gens.push_back(v);
    }
    auto ech = detail::lattice_echelon(gens);
    for (size_t i = 0; i < phi.roots.size(); ++i) {
        if (psi.index_of(phi.roots[i]) >= 0) continue;
        std::vector<Int> v(phi.dim);
        for (size_t j = 0; j < phi.dim; ++j) v[j] = Int(phi.iroots[i][j]);
        if (detail::lattice_contains(ech, v)) return false;
    }
    return true;
}

/// Length classes from the canonical form: a root is Double when its half is
/// also a root; among the rest, minimal norm is Short, anything longer Long.
inline std::vector<LengthClass> length_classes(const RootSystem& phi) {
    size_t n = phi.roots.size();
    std::vector<LengthClass> cls(n, LengthClass::Short);
    std::vector<char> dbl(n, 0);
    for (size_t i = 0; i < n; ++i) {
        RatVec half = Rat(1, 2) * phi.roots[i];
        if (phi.index_of(half) >= 0) dbl[i] = 1;
    }
    Rat min_norm(0);
    bool first = true;
    for (size_t i = 0; i < n; ++i) {
        if (dbl[i]) continue;
        Rat nm = phi.norm(i);
        if (first || nm < min_norm) {
            min_norm = nm;
            first = false;
        }
    }
    for (size_t i = 0; i < n; ++i) {
        if (dbl[i])
            cls[i] = LengthClass::Double;
        else
            cls[i] = (phi.norm(i) == min_norm) ? LengthClass::Short : LengthClass::Long;
    }
    return cls;
}

// ---------------------------------------------------------------------------
// Standard realizations of the classical systems.
// ---------------------------------------------------------------------------

inline RootSystem build_classical(const std::string& family, int n) {
    auto bad = [&](const std::string& why) {
        throw std::invalid_argument("build_classical(" + family + ", " + std::to_string(n) +
                                    "): " + why);
    };
    RootSystem phi;
    auto unit = [&](int d, int i, long long s) {
        RatVec v(d, Rat(0));
        v[i] = Rat(Int(s));
        return v;
    };
    if (family == "A") {
        if (n < 1) bad("A_n requires n >= 1");
        phi.dim = n + 1;
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j)
                if (i != j) phi.roots.push_back(unit(n + 1, i, 1) + unit(n + 1, j, -1));
    } else if (family == "B" || family == "C" || family == "D" || family == "BC") {
        int minn = family == "D" ? 3 : (family == "BC" ? 1 : 2);
        if (n < minn) bad(family + "_n rank too small");
        phi.dim = n;
        if (family != "BC" || n >= 2)
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    for (int si : {1, -1})
                        for (int sj : {1, -1})
                            phi.roots.push_back(unit(n, i, si) + unit(n, j, sj));
        if (family == "B" || family == "BC")
            for (int i = 0; i < n; ++i)
                for (int s : {1, -1}) phi.roots.push_back(unit(n, i, s));
        if (family == "C" || family == "BC")
            for (int i = 0; i < n; ++i)
                for (int s : {2, -2}) phi.roots.push_back(unit(n, i, s));
    } else if (family == "G") {
        if (n != 2) bad("G requires rank 2");
        phi.dim = 3;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (i != j) phi.roots.push_back(unit(3, i, 1) + unit(3, j, -1));
        for (int i = 0; i < 3; ++i) {
            int j = (i + 1) % 3, k = (i + 2) % 3;
            for (int s : {1, -1})
                phi.roots.push_back(unit(3, i, 2 * s) + unit(3, j, -s) + unit(3, k, -s));
        }
    } else if (family == "F") {
        if (n != 4) bad("F requires rank 4");
        phi.dim = 4;
        for (int i = 0; i < 4; ++i)
            for (int s : {1, -1}) phi.roots.push_back(unit(4, i, s));
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                for (int si : {1, -1})
                    for (int sj : {1, -1}) phi.roots.push_back(unit(4, i, si) + unit(4, j, sj));
        for (int m = 0; m < 16; ++m) {
            RatVec v(4);
            for (int i = 0; i < 4; ++i) v[i] = Rat(((m >> i) & 1) ? -1 : 1, 2);
            phi.roots.push_back(v);
        }
    } else if (family == "E") {
        if (n < 6 || n > 8) bad("E requires rank 6, 7 or 8");
        phi.dim = 8;
        std::vector<RatVec> e8;
        for (int i = 0; i < 8; ++i)
            for (int j = i + 1; j < 8; ++j)
                for (int si : {1, -1})
                    for (int sj : {1, -1}) e8.push_back(unit(8, i, si) + unit(8, j, sj));
        for (int m = 0; m < 256; ++m) {
            int minus = __builtin_popcount(m);
            if (minus % 2) continue;
            RatVec v(8);
            for (int i = 0; i < 8; ++i) v[i] = Rat(((m >> i) & 1) ? -1 : 1, 2);
            e8.push_back(v);
        }
        for (const auto& v : e8) {
            if (n <= 7 && v[6] != v[7]) continue;   // orthogonal to e7 - e8
            if (n == 6 && v[5] != -v[6]) continue;  // orthogonal to e6 + e7
            phi.roots.push_back(v);
        }
    } else {
        bad("unknown family");
    }
    phi.label = family + std::to_string(n);
    phi.finalize();
    return phi;
}

}  // namespace rootgraded
