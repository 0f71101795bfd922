#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "rootgraded/linalg.hpp"
#include "rootgraded/steinberg.hpp"
#include "rootgraded/weylgraph.hpp"

namespace rootgraded {

// ---- finite groups by multiplication table -------------------------------------

/// A finite group given by its full multiplication table. Elements are the
/// indices 0..size-1 and `id` is the identity.
struct FiniteGroup {
    size_t size = 0;
    int id = 0;
    std::vector<std::vector<int>> mul;  // mul[a][b] = a * b
    std::vector<int> inv;
};

namespace detail {

inline void finish_group(FiniteGroup& g) {
    g.size = g.mul.size();
    g.inv.assign(g.size, -1);
    for (size_t a = 0; a < g.size; ++a) {
        for (size_t b = 0; b < g.size; ++b)
            if (g.mul[a][b] == g.id) g.inv[a] = (int)b;
        if (g.inv[a] < 0) throw std::invalid_argument("finite group: element has no inverse");
    }
}

/// Deterministic generator for reproducible sampling.
struct Rng {
    uint64_t s;
    explicit Rng(uint64_t seed) : s(seed * 6364136223846793005ULL + 1442695040888963407ULL) {}
    uint64_t next() {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        return s >> 11;
    }
    double uniform() { return (double)(next() & ((1ULL << 52) - 1)) / (double)(1ULL << 52); }
    double gaussian() {
        double u = 0;
        while (u <= 1e-300) u = uniform();
        return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * M_PI * uniform());
    }
};

}  // namespace detail

/// Group of invertible matrices (must be closed under products).
inline FiniteGroup group_from_matrices(const FiniteRing& R, const std::vector<RingMat>& elems) {
    std::unordered_map<RingMat, int, RingMatHash> index;
    for (size_t i = 0; i < elems.size(); ++i)
        if (!index.emplace(elems[i], (int)i).second)
            throw std::invalid_argument("group_from_matrices: duplicate element");
    FiniteGroup g;
    g.mul.assign(elems.size(), std::vector<int>(elems.size()));
    g.id = -1;
    if (!elems.empty()) {
        auto it = index.find(mat_identity(R, elems[0].n));
        if (it == index.end())
            throw std::invalid_argument("group_from_matrices: identity not present");
        g.id = it->second;
    }
    for (size_t a = 0; a < elems.size(); ++a)
        for (size_t b = 0; b < elems.size(); ++b) {
            auto it = index.find(mat_mul(R, elems[a], elems[b]));
            if (it == index.end())
                throw std::invalid_argument("group_from_matrices: set not closed under products");
            g.mul[a][b] = it->second;
        }
    detail::finish_group(g);
    return g;
}

/// Direct product of cyclic groups Z/m_1 x ... x Z/m_r (mixed-radix indexing).
inline FiniteGroup abelian_group(const std::vector<int>& moduli) {
    size_t n = 1;
    for (int m : moduli) {
        if (m < 1) throw std::invalid_argument("abelian_group: moduli must be positive");
        n *= (size_t)m;
    }
    auto digits = [&](size_t x) {
        std::vector<int> d(moduli.size());
        for (size_t i = 0; i < moduli.size(); ++i) {
            d[i] = (int)(x % moduli[i]);
            x /= moduli[i];
        }
        return d;
    };
    auto pack = [&](const std::vector<int>& d) {
        size_t x = 0;
        for (size_t i = moduli.size(); i-- > 0;) x = x * moduli[i] + d[i];
        return (int)x;
    };
    FiniteGroup g;
    g.id = 0;
    g.mul.assign(n, std::vector<int>(n));
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
            auto da = digits(a), db = digits(b);
            for (size_t i = 0; i < moduli.size(); ++i) da[i] = (da[i] + db[i]) % moduli[i];
            g.mul[a][b] = pack(da);
        }
    detail::finish_group(g);
    return g;
}

/// Symmetric group on n letters; elements are permutations in lexicographic order
/// and (a*b)(i) = a(b(i)).
inline FiniteGroup symmetric_group(int n) {
    if (n < 1 || n > 7) throw std::invalid_argument("symmetric_group: supported for 1 <= n <= 7");
    std::vector<std::vector<int>> perms;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    std::map<std::vector<int>, int> index;
    for (size_t i = 0; i < perms.size(); ++i) index[perms[i]] = (int)i;
    FiniteGroup g;
    g.id = 0;
    g.mul.assign(perms.size(), std::vector<int>(perms.size()));
    for (size_t a = 0; a < perms.size(); ++a)
        for (size_t b = 0; b < perms.size(); ++b) {
            std::vector<int> c(n);
            for (int i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];
            g.mul[a][b] = index.at(c);
        }
    detail::finish_group(g);
    return g;
}

/// Upper unitriangular 3x3 matrices over Z/p: (a,b,c) indexed as a + p b + p^2 c,
/// with (a1,b1,c1)(a2,b2,c2) = (a1+a2, b1+b2, c1+c2+a1 b2).
inline FiniteGroup heisenberg_group(int p) {
    if (p < 2) throw std::invalid_argument("heisenberg_group: p must be at least 2");
    size_t n = (size_t)p * p * p;
    FiniteGroup g;
    g.id = 0;
    g.mul.assign(n, std::vector<int>(n));
    for (size_t x = 0; x < n; ++x)
        for (size_t y = 0; y < n; ++y) {
            int a1 = (int)(x % p), b1 = (int)(x / p % p), c1 = (int)(x / p / p);
            int a2 = (int)(y % p), b2 = (int)(y / p % p), c2 = (int)(y / p / p);
            g.mul[x][y] =
                (a1 + a2) % p + p * ((b1 + b2) % p) + p * p * ((c1 + c2 + a1 * b2) % p);
        }
    detail::finish_group(g);
    return g;
}

/// Closure of the given element indices inside the group (sorted).
inline std::vector<int> subgroup_closure_indices(const FiniteGroup& g, std::vector<int> gens) {
    std::vector<char> seen(g.size, 0);
    seen[g.id] = 1;
    std::queue<int> bfs;
    bfs.push(g.id);
    for (int x : gens)
        if (!seen[x]) {
            seen[x] = 1;
            bfs.push(x);
        }
    gens.push_back(g.id);
    while (!bfs.empty()) {
        int x = bfs.front();
        bfs.pop();
        for (int s : gens) {
            int y = g.mul[x][s];
            if (!seen[y]) {
                seen[y] = 1;
                bfs.push(y);
            }
        }
    }
    std::vector<int> out;
    for (size_t i = 0; i < g.size; ++i)
        if (seen[i]) out.push_back((int)i);
    return out;
}

inline bool is_subgroup_indices(const FiniteGroup& g, const std::vector<int>& H) {
    std::vector<char> in(g.size, 0);
    for (int x : H) in[x] = 1;
    if (!in[g.id]) return false;
    for (int a : H)
        for (int b : H)
            if (!in[g.mul[a][b]]) return false;
    return true;
}

// ---- representation model --------------------------------------------------------

/// Regular representation of a finite group on l^2(G): rho(a) e_x = e_{ax}
/// (exact permutation matrices). Fixed-subspace projectors are cached per subgroup.
struct RepresentationModel {
    FiniteGroup group;
    std::map<std::vector<int>, RatMat> projector_cache;

    size_t dim() const { return group.size; }
};

inline RepresentationModel regular_representation(FiniteGroup g) {
    RepresentationModel m;
    m.group = std::move(g);
    return m;
}

/// Exact projector (1/|H|) sum_{h in H} rho(h) onto the H-fixed subspace of l^2(G).
inline const RatMat& subgroup_projector(RepresentationModel& rep, std::vector<int> H) {
    std::sort(H.begin(), H.end());
    H.erase(std::unique(H.begin(), H.end()), H.end());
    auto it = rep.projector_cache.find(H);
    if (it != rep.projector_cache.end()) return it->second;
    if (!is_subgroup_indices(rep.group, H))
        throw std::invalid_argument("subgroup_projector: H is not closed under products");
    size_t n = rep.dim();
    RatMat p(n, RatVec(n, Rat(0)));
    Rat w(Int(1), Int((long long)H.size()));
    for (size_t x = 0; x < n; ++x)
        for (int h : H) p[rep.group.mul[h][x]][x] += w;
    return rep.projector_cache.emplace(std::move(H), std::move(p)).first->second;
}

struct FixedSubspace {
    RatMat projector;                     // exact averaging projector
    std::vector<std::vector<int>> orbits; // cosets Hx; indicator vectors span V^H
    Eigen::MatrixXd basis;                // orthonormal basis (normalized indicators)
};

/// Orthonormal basis of the H-fixed subspace of l^2(G). The coset indicator
/// vectors are an exact orthogonal basis over the rationals; only the final
/// normalization is floating.
inline FixedSubspace fixed_subspace(RepresentationModel& rep, const std::vector<int>& H) {
    FixedSubspace out;
    out.projector = subgroup_projector(rep, H);
    size_t n = rep.dim();
    std::vector<char> seen(n, 0);
    for (size_t x = 0; x < n; ++x) {
        if (seen[x]) continue;
        std::vector<int> orbit;
        for (int h : H) {
            int y = rep.group.mul[h][(int)x];
            if (!seen[y]) {
                seen[y] = 1;
                orbit.push_back(y);
            }
        }
        std::sort(orbit.begin(), orbit.end());
        out.orbits.push_back(orbit);
    }
    out.basis = Eigen::MatrixXd::Zero((long)n, (long)out.orbits.size());
    for (size_t c = 0; c < out.orbits.size(); ++c) {
        double v = 1.0 / std::sqrt((double)out.orbits[c].size());
        for (int x : out.orbits[c]) out.basis(x, (long)c) = v;
    }
    return out;
}

// ---- codistance -------------------------------------------------------------------

inline Eigen::MatrixXd to_eigen(const RatMat& m) {
    Eigen::MatrixXd out((long)m.size(), m.empty() ? 0 : (long)m[0].size());
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m[i].size(); ++j) out((long)i, (long)j) = to_double(m[i][j]);
    return out;
}

/// Largest eigenvalue of a symmetric matrix with a residual check
/// ||Mv - lambda v|| <= 1e-9 max(1, ||M||).
inline double largest_eigenvalue(const Eigen::MatrixXd& m) {
    Eigen::MatrixXd s = (m + m.transpose()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
    if (es.info() != Eigen::Success) throw std::runtime_error("largest_eigenvalue: solver failed");
    long last = s.rows() - 1;
    double lambda = es.eigenvalues()(last);
    Eigen::VectorXd v = es.eigenvectors().col(last);
    double resid = (s * v - lambda * v).norm();
    if (resid > 1e-9 * std::max(1.0, s.norm()))
        throw std::runtime_error("largest_eigenvalue: residual check failed");
    return lambda;
}

/// Codistance of subspaces given by their (orthogonal) projectors: the largest
/// eigenvalue of the average projector.
inline double codistance(const std::vector<Eigen::MatrixXd>& projectors) {
    if (projectors.empty()) throw std::invalid_argument("codistance: no subspaces");
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(projectors[0].rows(), projectors[0].cols());
    for (const auto& p : projectors) m += p;
    m /= (double)projectors.size();
    return largest_eigenvalue(m);
}

/// Independent oracle: coordinate ascent on the definitional supremum
/// ||u_1 + ... + u_n||^2 / (n sum ||u_i||^2), optimizing one u_i at a time
/// (the one-block optimum has a closed form).
inline double codistance_alternating(const std::vector<Eigen::MatrixXd>& projectors,
                                     uint64_t seed = 1, int restarts = 8, int iters = 600) {
    size_t n = projectors.size();
    if (n == 0) throw std::invalid_argument("codistance_alternating: no subspaces");
    long dim = projectors[0].rows();
    detail::Rng rng(seed ^ 0x5eedULL);
    double best = 0;
    for (int r = 0; r < restarts; ++r) {
        std::vector<Eigen::VectorXd> u(n);
        auto reinit = [&]() {
            for (size_t i = 0; i < n; ++i) {
                Eigen::VectorXd g(dim);
                for (long j = 0; j < dim; ++j) g(j) = rng.gaussian();
                u[i] = projectors[i] * g;
            }
        };
        reinit();
        double val = 0;
        for (int it = 0; it < iters; ++it) {
            for (size_t i = 0; i < n; ++i) {
                Eigen::VectorXd s = Eigen::VectorXd::Zero(dim);
                double c = 0;
                for (size_t j = 0; j < n; ++j)
                    if (j != i) {
                        s += u[j];
                        c += u[j].squaredNorm();
                    }
                Eigen::VectorXd p = projectors[i] * s;
                double pn = p.norm();
                if (pn < 1e-14 || c < 1e-28) {
                    u[i].setZero(dim);
                    continue;
                }
                double s2 = s.squaredNorm();
                double t = (c - s2 + std::sqrt((s2 - c) * (s2 - c) + 4 * c * pn * pn)) / (2 * pn);
                u[i] = (t / pn) * p;
            }
            Eigen::VectorXd total = Eigen::VectorXd::Zero(dim);
            double denom = 0;
            for (const auto& ui : u) {
                total += ui;
                denom += ui.squaredNorm();
            }
            if (denom < 1e-28) {
                reinit();
                continue;
            }
            double now = total.squaredNorm() / ((double)n * denom);
            if (now < val + 1e-14) {
                val = std::max(val, now);
                break;
            }
            val = now;
        }
        best = std::max(best, val);
    }
    return best;
}

/// Exact positive-semidefiniteness test for a symmetric rational matrix
/// (elimination on positive pivots; the remainder must vanish).
inline bool rat_psd(RatMat a) {
    size_t n = a.size();
    std::vector<char> done(n, 0);
    for (size_t step = 0; step < n; ++step) {
        size_t p = n;
        for (size_t i = 0; i < n; ++i)
            if (!done[i] && a[i][i] > Rat(0)) {
                p = i;
                break;
            }
        if (p == n) break;
        done[p] = 1;
        Rat d = a[p][p];
        for (size_t i = 0; i < n; ++i) {
            if (done[i] || a[i][p] == Rat(0)) continue;
            Rat f = a[i][p] / d;
            for (size_t j = 0; j < n; ++j)
                if (!done[j]) a[i][j] -= f * a[p][j];
        }
    }
    for (size_t i = 0; i < n; ++i)
        if (!done[i])
            for (size_t j = 0; j < n; ++j)
                if (!done[j] && a[i][j] != Rat(0)) return false;
    return true;
}

/// True iff the codistance of the subspaces equals q exactly: qI - M is
/// positive semidefinite and singular, where M is the average projector.
inline bool codistance_attains(const std::vector<RatMat>& projectors, const Rat& q) {
    if (projectors.empty()) throw std::invalid_argument("codistance_attains: no subspaces");
    size_t n = projectors[0].size();
    Rat w(Int(1), Int((long long)projectors.size()));
    RatMat a(n, RatVec(n, Rat(0)));
    for (const auto& p : projectors)
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) a[i][j] -= w * p[i][j];
    for (size_t i = 0; i < n; ++i) a[i][i] += q;
    return rat_psd(a) && rat_rank(a) < n;
}

/// Orthogonality constant after factoring out the intersection: the square root
/// of the largest eigenvalue of P1 P2 P1 strictly below 1.
inline double reduced_orthogonality(const Eigen::MatrixXd& p1, const Eigen::MatrixXd& p2,
                                    double tol = 1e-9) {
    Eigen::MatrixXd m = p1 * p2 * p1;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es((m + m.transpose()) / 2.0);
    double best = 0;
    for (long i = 0; i < es.eigenvalues().size(); ++i) {
        double lam = es.eigenvalues()(i);
        if (lam < 1.0 - tol) best = std::max(best, lam);
    }
    return std::sqrt(std::max(0.0, best));
}

// ---- codistance between subgroups --------------------------------------------------

struct GroupCodistance {
    double value = 0;
    bool generates = false;           // false means the value is forced to 1
    std::vector<RatMat> projectors;   // exact projectors onto V^{H_i} inside l^2_0(G)
};

/// Codistance between subgroups, evaluated on l^2_0(G). For a finite group the
/// regular representation attains the supremum over all representations without
/// invariant vectors (every irreducible embeds into it).
inline GroupCodistance group_codistance(RepresentationModel& rep,
                                        const std::vector<std::vector<int>>& subgroups) {
    GroupCodistance out;
    size_t n = rep.dim();
    std::vector<int> all;
    for (const auto& h : subgroups) all.insert(all.end(), h.begin(), h.end());
    out.generates = subgroup_closure_indices(rep.group, all).size() == n;
    Rat mean(Int(1), Int((long long)n));
    std::vector<Eigen::MatrixXd> numeric;
    for (const auto& h : subgroups) {
        RatMat p = subgroup_projector(rep, h);
        for (auto& row : p)
            for (auto& x : row) x -= mean;
        numeric.push_back(to_eigen(p));
        out.projectors.push_back(std::move(p));
    }
    out.value = codistance(numeric);
    return out;
}

inline bool group_codistance_attains(RepresentationModel& rep,
                                     const std::vector<std::vector<int>>& subgroups,
                                     const Rat& q) {
    return codistance_attains(group_codistance(rep, subgroups).projectors, q);
}

// ---- invariant blocks of the regular representation --------------------------------

/// Orthonormal bases of invariant subspaces of l^2(G), obtained as eigenspaces
/// of a random Hermitian element of the commutant. For a generic sample the
/// blocks are irreducible.
inline std::vector<Eigen::MatrixXcd> invariant_blocks(const RepresentationModel& rep,
                                                      uint64_t seed = 3,
                                                      double cluster = 1e-6) {
    size_t n = rep.dim();
    detail::Rng rng(seed ^ 0xb10cULL);
    Eigen::MatrixXcd s((long)n, (long)n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            s((long)i, (long)j) = std::complex<double>(rng.gaussian(), rng.gaussian());
    s = (s + s.adjoint().eval()) / 2.0;
    // commutant average: C[x][y] = (1/|G|) sum_g S[g^-1 x][g^-1 y]
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero((long)n, (long)n);
    for (size_t g = 0; g < n; ++g) {
        int gi = rep.group.inv[g];
        for (size_t x = 0; x < n; ++x) {
            int gx = rep.group.mul[gi][x];
            for (size_t y = 0; y < n; ++y) c((long)x, (long)y) += s(gx, rep.group.mul[gi][y]);
        }
    }
    c /= (double)n;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(c);
    if (es.info() != Eigen::Success) throw std::runtime_error("invariant_blocks: solver failed");
    std::vector<Eigen::MatrixXcd> blocks;
    long i = 0;
    while (i < (long)n) {
        long j = i;
        while (j + 1 < (long)n && es.eigenvalues()(j + 1) - es.eigenvalues()(j) < cluster) ++j;
        blocks.push_back(es.eigenvectors().middleCols(i, j - i + 1));
        i = j + 1;
    }
    return blocks;
}

/// (1/|G|) sum_g |tr rho(g)|_W|^2 for the subrepresentation with orthonormal
/// basis B; equals 1 iff the block is irreducible over the complex numbers.
inline double irreducibility_index(const RepresentationModel& rep, const Eigen::MatrixXcd& b) {
    size_t n = rep.dim();
    double total = 0;
    for (size_t g = 0; g < n; ++g) {
        std::complex<double> tr = 0;
        for (long c = 0; c < b.cols(); ++c)
            for (size_t x = 0; x < n; ++x)
                tr += std::conj(b((long)rep.group.mul[g][x], c)) * b((long)x, c);
        total += std::norm(tr);
    }
    return total / (double)n;
}

/// Cross-validation of the regular-representation codistance: maximum over the
/// nontrivial invariant blocks of the largest eigenvalue of the restricted
/// average projector.
inline double block_codistance(RepresentationModel& rep,
                               const std::vector<std::vector<int>>& subgroups,
                               uint64_t seed = 3) {
    size_t n = rep.dim();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero((long)n, (long)n);
    for (const auto& h : subgroups) m += to_eigen(subgroup_projector(rep, h));
    m /= (double)subgroups.size();
    Eigen::VectorXcd ones = Eigen::VectorXcd::Constant((long)n, 1.0 / std::sqrt((double)n));
    double best = 0;
    for (const auto& b : invariant_blocks(rep, seed)) {
        if ((b.adjoint() * ones).norm() > 0.5) continue;  // trivial block
        Eigen::MatrixXcd restricted = b.adjoint() * m * b;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es((restricted + restricted.adjoint()) /
                                                           2.0);
        best = std::max(best, es.eigenvalues().maxCoeff());
    }
    return best;
}

// ---- Hilbert-Schmidt lemma suite ----------------------------------------------------

/// ||P_{HS(W)^N}(P_v)||^2 for the subrepresentation with orthonormal basis B and
/// a unit vector v in block coordinates: the HS-norm of the N-average of P_v.
inline double hs_invariant_projection_norm2(const RepresentationModel& rep,
                                            const std::vector<int>& N,
                                            const Eigen::MatrixXcd& b,
                                            const Eigen::VectorXcd& v) {
    if (!is_subgroup_indices(rep.group, N))
        throw std::invalid_argument("hs_invariant_projection_norm2: N is not a subgroup");
    long d = b.cols();
    size_t n = rep.dim();
    Eigen::MatrixXcd avg = Eigen::MatrixXcd::Zero(d, d);
    Eigen::MatrixXcd pv = v * v.adjoint();
    for (int g : N) {
        Eigen::MatrixXcd rho(d, d);
        for (long c = 0; c < d; ++c) {
            Eigen::VectorXcd col = Eigen::VectorXcd::Zero((long)n);
            for (size_t x = 0; x < n; ++x) col((long)rep.group.mul[g][x]) += b((long)x, c);
            rho.col(c) = b.adjoint() * col;
        }
        avg.noalias() += rho * pv * rho.adjoint();
    }
    avg /= (double)N.size();
    return avg.squaredNorm();
}

struct HsReport {
    uint64_t seed = 0;
    int pairs = 0, tuples = 0;
    double product_residual = 0;   // max |<P_u,P_v> - |<u,v>|^2|
    double lipschitz_margin = 0;   // min of sqrt(2)||u-v|| - ||P_u - P_v||
    double codist_margin = 0;      // min of codist(iota v_i) - (2 codist(v_i) - 1)
    double pv_residual_s3 = 0;     // max |  ||P_{HS^G}(P_v)||^2 - 1/2 |, S3 2-dim block
    double pv_residual_heis = 0;   // same with 1/3 on a Heisenberg 3-dim block
    bool ok = false;
};

inline HsReport hs_lemma_suite(uint64_t seed = 2026, int pairs = 1000, int tuples = 200) {
    HsReport rep;
    rep.seed = seed;
    rep.pairs = pairs;
    rep.tuples = tuples;
    detail::Rng rng(seed);
    const long dim = 8;
    auto random_unit = [&]() {
        Eigen::VectorXcd v(dim);
        for (long i = 0; i < dim; ++i) v(i) = std::complex<double>(rng.gaussian(), rng.gaussian());
        return Eigen::VectorXcd(v / v.norm());
    };
    rep.lipschitz_margin = 1e300;
    for (int i = 0; i < pairs; ++i) {
        Eigen::VectorXcd u = random_unit(), v = random_unit();
        Eigen::MatrixXcd pu = u * u.adjoint(), pv = v * v.adjoint();
        double hs = std::real((pu.adjoint() * pv).trace());
        double ip = std::norm(u.dot(v));
        rep.product_residual = std::max(rep.product_residual, std::abs(hs - ip));
        rep.lipschitz_margin =
            std::min(rep.lipschitz_margin, std::sqrt(2.0) * (u - v).norm() - (pu - pv).norm());
    }
    rep.codist_margin = 1e300;
    for (int i = 0; i < tuples; ++i) {
        int k = 2 + (int)(rng.next() % 4);  // 2..5
        std::vector<Eigen::VectorXcd> vs(k);
        double denom = 0;
        Eigen::VectorXcd total = Eigen::VectorXcd::Zero(dim);
        for (auto& v : vs) {
            v = random_unit() * (0.2 + rng.uniform());
            total += v;
            denom += v.squaredNorm();
        }
        double codist_v = total.squaredNorm() / (k * denom);
        double gram = 0;
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b) {
                double na = vs[a].norm(), nb = vs[b].norm();
                gram += na * nb * std::norm(vs[a].dot(vs[b])) / (na * na * nb * nb);
            }
        double codist_iota = gram / (k * denom);
        rep.codist_margin = std::min(rep.codist_margin, codist_iota - (2 * codist_v - 1));
    }
    // Projection of P_v onto the invariant Hilbert-Schmidt operators equals
    // 1/dim on irreducible blocks.
    auto pv_check = [&](const FiniteGroup& g, long want_dim, double expect) {
        RepresentationModel model = regular_representation(g);
        std::vector<int> whole(g.size);
        std::iota(whole.begin(), whole.end(), 0);
        double worst = 1e300;
        for (const auto& b : invariant_blocks(model, seed)) {
            if (b.cols() != want_dim) continue;
            if (std::abs(irreducibility_index(model, b) - 1.0) > 1e-6) continue;
            double res = 0;
            for (int t = 0; t < 5; ++t) {
                Eigen::VectorXcd v(want_dim);
                for (long i = 0; i < want_dim; ++i)
                    v(i) = std::complex<double>(rng.gaussian(), rng.gaussian());
                v /= v.norm();
                res = std::max(res,
                               std::abs(hs_invariant_projection_norm2(model, whole, b, v) -
                                        expect));
            }
            worst = res;
            break;
        }
        if (worst == 1e300)
            throw std::runtime_error("hs_lemma_suite: no irreducible block of the requested size");
        return worst;
    };
    rep.pv_residual_s3 = pv_check(symmetric_group(3), 2, 0.5);
    rep.pv_residual_heis = pv_check(heisenberg_group(3), 3, 1.0 / 3.0);
    rep.ok = rep.product_residual <= 1e-12 && rep.lipschitz_margin >= -1e-12 &&
             rep.codist_margin >= -1e-12 && rep.pv_residual_s3 <= 1e-9 &&
             rep.pv_residual_heis <= 1e-9;
    return rep;
}

inline nlohmann::json hs_report_json(const HsReport& r) {
    return {{"seed", r.seed},
            {"pairs", r.pairs},
            {"tuples", r.tuples},
            {"product_residual", r.product_residual},
            {"lipschitz_margin", r.lipschitz_margin},
            {"codist_margin", r.codist_margin},
            {"pv_residual_s3", r.pv_residual_s3},
            {"pv_residual_heisenberg", r.pv_residual_heis},
            {"ok", r.ok}};
}

// ---- bound evaluators ---------------------------------------------------------------

struct BoundInputs {
    std::map<std::string, Rat> num;  // named scalar parameters
    std::string label;               // root-system label for the table formula
    std::vector<Rat> list;           // ratio list for the bounded-generation rule
};

/// Exactly evaluated bound. When `is_sqrt` is set the exact rational is the
/// square of the bound and `value` is its floating square root.
struct BoundValue {
    Rat exact = Rat(0);
    bool is_sqrt = false;
    double value = 0;
};

namespace detail {

inline Rat bound_param(const BoundInputs& in, const std::string& key, const char* formula) {
    auto it = in.num.find(key);
    if (it == in.num.end())
        throw std::invalid_argument(std::string(formula) + ": missing parameter " + key);
    return it->second;
}

inline long long bound_int(const BoundInputs& in, const std::string& key, const char* formula) {
    Rat r = bound_param(in, key, formula);
    if (r.denominator() != 1)
        throw std::invalid_argument(std::string(formula) + ": parameter " + key +
                                    " must be an integer");
    return r.numerator().convert_to<long long>();
}

inline Rat rat_pow(Rat base, long long e) {
    Rat out(1);
    for (long long i = 0; i < e; ++i) out *= base;
    return out;
}

inline BoundValue make_bound(Rat exact, bool is_sqrt) {
    BoundValue v;
    v.exact = exact;
    v.is_sqrt = is_sqrt;
    v.value = is_sqrt ? std::sqrt(to_double(exact)) : to_double(exact);
    return v;
}

}  // namespace detail

inline std::vector<std::string> bound_names() {
    return {"orthogonality",         "spectral-criterion",     "generalized-spectral-criterion",
            "borel-epsilon",         "central-extension",      "bounded-generation",
            "g2-supermultiplicativity", "kazhdan-ratio-product", "nilpotent-codistance",
            "codistance-step",       "steinberg-table",        "relative-linear-action",
            "relative-b2"};
}

/// Named evaluators for every closed-form bound; exact rational arithmetic with
/// domain checks that name the violated constraint.
inline BoundValue evaluate_bound(const std::string& name, const BoundInputs& in) {
    using detail::bound_int;
    using detail::bound_param;
    using detail::make_bound;
    using detail::rat_pow;
    if (name == "orthogonality") {
        Rat rho = bound_param(in, "rho", "orthogonality");
        if (rho < Rat(0) || rho > Rat(1))
            throw std::invalid_argument("orthogonality: requires 0 <= rho <= 1");
        return make_bound(Rat(2) * (Rat(1) - rho), true);
    }
    if (name == "spectral-criterion") {
        Rat l = bound_param(in, "lambda1", "spectral-criterion");
        Rat p = bound_param(in, "p", "spectral-criterion");
        long long k = bound_int(in, "k", "spectral-criterion");
        if (l <= Rat(0)) throw std::invalid_argument("spectral-criterion: requires lambda1 > 0");
        if (k < 1) throw std::invalid_argument("spectral-criterion: requires k >= 1");
        if (p < Rat(0) || p >= Rat(1))
            throw std::invalid_argument("spectral-criterion: requires 0 <= p < 1");
        if (p * Rat(2) * Rat(Int(k)) >= l)
            throw std::invalid_argument("spectral-criterion: requires p < lambda1 / (2k)");
        return make_bound(Rat(2) * (l - Rat(2) * Rat(Int(k)) * p) / (l * (Rat(1) - p)), true);
    }
    if (name == "generalized-spectral-criterion") {
        Rat l = bound_param(in, "lambda1", "generalized-spectral-criterion");
        Rat eps = bound_param(in, "eps", "generalized-spectral-criterion");
        Rat a = bound_param(in, "A", "generalized-spectral-criterion");
        Rat b = bound_param(in, "B", "generalized-spectral-criterion");
        long long k = bound_int(in, "k", "generalized-spectral-criterion");
        if (k < 1) throw std::invalid_argument("generalized-spectral-criterion: requires k >= 1");
        if (eps <= Rat(0))
            throw std::invalid_argument("generalized-spectral-criterion: requires eps > 0");
        if (a <= Rat(0) || b <= Rat(0))
            throw std::invalid_argument("generalized-spectral-criterion: requires A, B > 0");
        if (l <= Rat(0) || l > Rat(2) * Rat(Int(k)))
            throw std::invalid_argument(
                "generalized-spectral-criterion: requires 0 < lambda1 <= 2k");
        return make_bound(Rat(4) * eps * Rat(Int(k)) /
                              (eps * l * a + (Rat(2) * Rat(Int(k)) - l) * b),
                          true);
    }
    if (name == "borel-epsilon") {
        long long n = bound_int(in, "N", "borel-epsilon");
        long long roots = bound_int(in, "roots", "borel-epsilon");
        if (n <= 2) throw std::invalid_argument("borel-epsilon: requires N > 2");
        if (roots <= 0 || roots % 2 != 0)
            throw std::invalid_argument("borel-epsilon: requires an even positive root count");
        return make_bound(Rat(8) / (Rat(Int(n - 2)) * rat_pow(Rat(4), roots / 2)), false);
    }
    if (name == "central-extension") {
        Rat eps = bound_param(in, "eps", "central-extension");
        Rat delta = bound_param(in, "delta", "central-extension");
        long long sa = bound_int(in, "sizeA", "central-extension");
        long long sb = bound_int(in, "sizeB", "central-extension");
        if (eps <= Rat(0) || delta <= Rat(0))
            throw std::invalid_argument("central-extension: requires eps, delta > 0");
        if (sa < 1 || sb < 1)
            throw std::invalid_argument("central-extension: requires |A|, |B| >= 1");
        Rat x = Rat(72) * eps * eps * Rat(Int(sa)) + Rat(25) * Rat(Int(sb));
        Rat first = Rat(48) * eps * eps / (Rat(25) * x);  // ((12 eps / 5 sqrt(x)) / sqrt 3)^2
        Rat second = delta * delta / Rat(3);
        return make_bound(std::min(first, second), true);
    }
    if (name == "bounded-generation") {
        if (in.list.empty())
            throw std::invalid_argument("bounded-generation: requires a nonempty ratio list");
        Rat total(0);
        for (const Rat& r : in.list) {
            if (r <= Rat(0))
                throw std::invalid_argument("bounded-generation: requires positive ratios");
            total += Rat(1) / r;
        }
        return make_bound(Rat(1) / total, false);
    }
    if (name == "g2-supermultiplicativity") {
        Rat a = bound_param(in, "a", "g2-supermultiplicativity");
        Rat b = bound_param(in, "b", "g2-supermultiplicativity");
        if (a <= Rat(0) || b <= Rat(0))
            throw std::invalid_argument("g2-supermultiplicativity: requires a, b > 0");
        return make_bound(Rat(1) / (Rat(2) * a * a + Rat(4) * b * b), true);
    }
    if (name == "kazhdan-ratio-product") {
        Rat kappa = bound_param(in, "kappa", "kazhdan-ratio-product");
        Rat ratio = bound_param(in, "ratio", "kazhdan-ratio-product");
        if (kappa < Rat(0) || ratio < Rat(0))
            throw std::invalid_argument("kazhdan-ratio-product: requires nonnegative factors");
        return make_bound(kappa * ratio, false);
    }
    if (name == "nilpotent-codistance") {
        long long c = bound_int(in, "c", "nilpotent-codistance");
        long long k = bound_int(in, "k", "nilpotent-codistance");
        if (c < 1) throw std::invalid_argument("nilpotent-codistance: requires class c >= 1");
        if (k < 1) throw std::invalid_argument("nilpotent-codistance: requires k >= 1");
        return make_bound(Rat(1) - Rat(1) / (detail::rat_pow(Rat(4), c - 1) * Rat(Int(k))),
                          false);
    }
    if (name == "codistance-step") {
        long long m = bound_int(in, "m", "codistance-step");
        Rat eps = bound_param(in, "eps", "codistance-step");
        if (m < 1) throw std::invalid_argument("codistance-step: requires m >= 1");
        if (eps < Rat(0) || eps > Rat(1))
            throw std::invalid_argument("codistance-step: requires 0 <= eps <= 1");
        return make_bound(Rat(1) - Rat(Int(m - 1)) * eps / (Rat(2) * Rat(Int(m))), false);
    }
    if (name == "steinberg-table") {
        long long d = bound_int(in, "d", "steinberg-table");
        if (d < 0) throw std::invalid_argument("steinberg-table: requires d >= 0");
        if (in.label.size() < 2)
            throw std::invalid_argument("steinberg-table: requires a root-system label");
        char fam = in.label[0];
        long long n = std::atoll(in.label.c_str() + 1);
        if (in.label == "B2" || in.label == "G2")
            return make_bound(Rat(1) / detail::rat_pow(Rat(2), d), true);
        if (fam == 'A' && n >= 2) return make_bound(Rat(1) / Rat(Int(n + d)), true);
        if (fam == 'B' && n >= 3) return make_bound(Rat(1) / Rat(Int(n + d)), true);
        if (fam == 'D' && n >= 4) return make_bound(Rat(1) / Rat(Int(n + d)), true);
        if (fam == 'C' && n >= 3)
            return make_bound(Rat(1) / (Rat(Int(n)) + detail::rat_pow(Rat(2), d)), true);
        if ((fam == 'E' && n >= 6 && n <= 8) || in.label == "F4") {
            if (d < 1)
                throw std::invalid_argument("steinberg-table: exceptional types require d >= 1");
            return make_bound(Rat(1) / Rat(Int(d)), true);
        }
        throw std::invalid_argument("steinberg-table: unsupported root system " + in.label);
    }
    if (name == "relative-linear-action") {
        long long n = bound_int(in, "n", "relative-linear-action");
        long long d = bound_int(in, "d", "relative-linear-action");
        if (n < 2) throw std::invalid_argument("relative-linear-action: requires n >= 2");
        if (d < 0) throw std::invalid_argument("relative-linear-action: requires d >= 0");
        return make_bound(Rat(1) / Rat(Int(d + n)), true);
    }
    if (name == "relative-b2") {
        long long d = bound_int(in, "d", "relative-b2");
        if (d < 0) throw std::invalid_argument("relative-b2: requires d >= 0");
        return make_bound(Rat(1) / detail::rat_pow(Rat(2), d), true);
    }
    throw std::invalid_argument("evaluate_bound: unknown formula " + name);
}

/// Algebraic cross-checks between the closed-form bounds.
inline std::vector<IdentityReport> bound_consistency_reports() {
    std::vector<IdentityReport> out;
    auto record = [&](const std::string& name, bool passed, const std::string& witness) {
        out.push_back({name, passed, witness});
    };
    // At lambda1 = k the generalized criterion collapses to sqrt(4 eps / (eps A + B)).
    bool collapse = true;
    std::string witness = "checked on a 3x3x3x3 grid";
    for (long long k : {2, 4, 7})
        for (Rat eps : {Rat(1, 32), Rat(1, 2), Rat(1)})
            for (Rat a : {Rat(1), Rat(3), Rat(5)})
                for (Rat b : {Rat(1), Rat(5), Rat(7)}) {
                    BoundInputs in;
                    in.num = {{"lambda1", Rat(Int(k))}, {"eps", eps}, {"A", a}, {"B", b},
                              {"k", Rat(Int(k))}};
                    Rat got = evaluate_bound("generalized-spectral-criterion", in).exact;
                    Rat expect = Rat(4) * eps / (eps * a + b);
                    if (got != expect) {
                        collapse = false;
                        witness = "mismatch at k=" + std::to_string(k);
                    }
                }
    record("generalized criterion at lambda1 = k", collapse, witness);
    // The B2 table row equals the dedicated B2 evaluator.
    bool b2 = true;
    for (long long d = 0; d <= 6; ++d) {
        BoundInputs t, r;
        t.label = "B2";
        t.num = {{"d", Rat(Int(d))}};
        r.num = {{"d", Rat(Int(d))}};
        if (evaluate_bound("steinberg-table", t).exact != evaluate_bound("relative-b2", r).exact)
            b2 = false;
    }
    record("table row B2 matches the B2 evaluator", b2, "d = 0..6");
    // The A_n table row equals the linear-action evaluator.
    bool an = true;
    for (long long n = 2; n <= 5; ++n)
        for (long long d = 0; d <= 4; ++d) {
            BoundInputs t, r;
            t.label = "A" + std::to_string(n);
            t.num = {{"d", Rat(Int(d))}};
            r.num = {{"n", Rat(Int(n))}, {"d", Rat(Int(d))}};
            if (evaluate_bound("steinberg-table", t).exact !=
                evaluate_bound("relative-linear-action", r).exact)
                an = false;
        }
    record("table row A_n matches the linear-action evaluator", an, "n = 2..5, d = 0..4");
    // orthogonality at rho = 1/2 gives exactly 1.
    BoundInputs o;
    o.num = {{"rho", Rat(1, 2)}};
    record("orthogonality bound at rho = 1/2 equals 1",
           evaluate_bound("orthogonality", o).exact == Rat(1), "2 (1 - 1/2) = 1");
    return out;
}

inline nlohmann::json bound_report_json(const std::string& name, const BoundInputs& in,
                                        const BoundValue& v) {
    nlohmann::json inputs = nlohmann::json::object();
    for (const auto& [key, val] : in.num) inputs[key] = to_string(val);
    if (!in.label.empty()) inputs["label"] = in.label;
    if (!in.list.empty()) {
        nlohmann::json l = nlohmann::json::array();
        for (const auto& r : in.list) l.push_back(to_string(r));
        inputs["ratios"] = l;
    }
    return {{"formula", name},
            {"inputs", inputs},
            {"exact", to_string(v.exact)},
            {"sqrt", v.is_sqrt},
            {"value", v.value}};
}

// ---- spectral pipeline ---------------------------------------------------------------

struct PipelineReport {
    std::string model;
    size_t group_order = 0;
    int vertices = 0;
    int degree = 0;
    Rat eps_phi = Rat(0);
    Rat corefree_bound = Rat(0);     // (1 - eps_phi)/2
    Rat angle_constant = Rat(0);     // eps / (B(1 - pbar) + eps A pbar)
    std::vector<double> vertex_codistance;
    std::vector<double> corefree_codistance;
    double norm_margin = 0;      // min of A||rho1(dg)||^2 + B||rho3(dg)||^2 - ||dg||^2
    double angle_margin = 0;     // min of ||rho1(Lap g)||^2 - P ||Lap g||^2
    double roottwo_min = 0;      // min over unit v of max_{s in G} ||sv - v||
    double generator_bound = 0;  // sqrt(2 (1 - rho)) from the root-subgroup codistance
    double generator_min = 0;    // min over unit v of max_{s in union X_alpha} ||sv - v||
    int samples = 0;
    uint64_t seed = 0;
    double tolerance = 1e-9;
    bool ok = false;
    std::string failure;
};

/// End-to-end spectral checks for a finite graded group model over its large
/// Borel graph: per-vertex codistance bounds, the improved core-free bound, the
/// norm and Laplacian-angle inequalities on random equivariant functions, and
/// per-vector Kazhdan displacement tests on l^2_0(G).
inline PipelineReport spectral_pipeline(const GradedGroupModel& m, uint64_t seed = 1,
                                        int samples = 50, Rat a_const = Rat(5),
                                        Rat b_const = Rat(5)) {
    PipelineReport rep;
    rep.model = m.name;
    rep.seed = seed;
    rep.samples = samples;
    auto fail = [&](const std::string& why) {
        rep.ok = false;
        if (rep.failure.empty()) rep.failure = why;
    };
    auto en = enumerate_borel_sets(m.phi);
    auto gl = large_weyl_graph(en);
    rep.vertices = (int)gl.n;
    rep.degree = gl.degree(0);
    for (size_t v = 1; v < gl.n; ++v)
        if (gl.degree((int)v) != rep.degree)
            throw std::logic_error("spectral_pipeline: graph is not regular");
    // The spectral gap of the large Borel graph equals its degree.
    auto spectrum = laplacian_spectrum(gl);
    {
        double gap = spectral_gap(spectrum);
        if (std::abs(gap - rep.degree) > 1e-9)
            throw std::logic_error("spectral_pipeline: spectral gap does not equal the degree");
    }
    // Assemble the group and the vertex / edge / core subgroups.
    std::vector<int> all_roots(m.phi.roots.size());
    std::iota(all_roots.begin(), all_roots.end(), 0);
    auto set = detail::closed_set(m.ring, m.dim, detail::model_generators(m, all_roots),
                                  2'000'000, "spectral_pipeline");
    std::vector<RingMat> elems(set.begin(), set.end());
    FiniteGroup group = group_from_matrices(m.ring, elems);
    std::unordered_map<RingMat, int, RingMatHash> index;
    for (size_t i = 0; i < elems.size(); ++i) index.emplace(elems[i], (int)i);
    rep.group_order = group.size;
    size_t n = group.size;
    auto root_indices = [&](const std::vector<int>& roots) {
        std::vector<int> out;
        for (int r : roots)
            for (const auto& g : m.subgroups[r].elements) out.push_back(index.at(g));
        return subgroup_closure_indices(group, out);
    };
    RepresentationModel model = regular_representation(group);
    std::vector<std::vector<int>> vertex_group(gl.n), core_group(gl.n);
    for (size_t f = 0; f < gl.n; ++f) {
        vertex_group[f] = root_indices(en.sets[f].positives);
        core_group[f] = root_indices(en.core((int)f));
    }
    std::map<std::pair<int, int>, std::vector<int>> edge_group;
    for (size_t e = 0; e < gl.edges.size(); ++e) {
        std::pair<int, int> key = std::minmax({gl.tail((int)e), gl.head((int)e)});
        if (!edge_group.count(key)) edge_group[key] = root_indices(gl.edge_label((int)e));
    }
    // Regularity of the decomposition: each vertex group is generated by its
    // edge groups.
    for (size_t f = 0; f < gl.n; ++f) {
        std::vector<int> from_edges;
        for (int u : gl.adj[f]) {
            const auto& eg = edge_group.at(std::minmax({(int)f, u}));
            from_edges.insert(from_edges.end(), eg.begin(), eg.end());
        }
        if (subgroup_closure_indices(group, from_edges) != vertex_group[f])
            throw std::logic_error("spectral_pipeline: decomposition is not regular");
    }
    Eigen::MatrixXd identity = Eigen::MatrixXd::Identity((long)n, (long)n);
    Eigen::MatrixXd mean = Eigen::MatrixXd::Constant((long)n, (long)n, 1.0 / (double)n);
    std::vector<Eigen::MatrixXd> p_vertex(gl.n), p_core(gl.n);
    for (size_t f = 0; f < gl.n; ++f) {
        p_vertex[f] = to_eigen(subgroup_projector(model, vertex_group[f]));
        p_core[f] = to_eigen(subgroup_projector(model, core_group[f]));
    }
    rep.eps_phi = Rat(8) / (Rat(Int((long long)gl.n - 2)) *
                            detail::rat_pow(Rat(4), (long long)m.phi.roots.size() / 2));
    rep.corefree_bound = (Rat(1) - rep.eps_phi) / Rat(2);
    rep.ok = true;
    // (1) codistance of the edge fixed subspaces on the complement of the
    //     vertex-invariant vectors is at most 1/2;
    // (2) on the complement of the core-invariant vectors it improves to
    //     (1 - eps)/2.
    for (size_t f = 0; f < gl.n; ++f) {
        std::vector<Eigen::MatrixXd> plain, corefree;
        for (int u : gl.adj[f]) {
            Eigen::MatrixXd pe =
                to_eigen(subgroup_projector(model, edge_group.at(std::minmax({(int)f, u}))));
            plain.push_back(pe - p_vertex[f]);
            Eigen::MatrixXd cf = pe * (identity - p_core[f]);
            corefree.push_back((cf + cf.transpose()) / 2.0);
        }
        rep.vertex_codistance.push_back(codistance(plain));
        rep.corefree_codistance.push_back(codistance(corefree));
        if (rep.vertex_codistance.back() > 0.5 + rep.tolerance)
            fail("vertex codistance above 1/2 at Borel set " + std::to_string(f));
        if (rep.corefree_codistance.back() > to_double(rep.corefree_bound) + rep.tolerance)
            fail("core-free codistance above the improved bound at Borel set " +
                 std::to_string(f));
    }
    // (3) norm inequality and Laplacian-angle inequality on random functions
    //     g with g(f) invariant under the vertex group.
    Rat pbar(1, 2);
    rep.angle_constant = rep.eps_phi / (b_const * (Rat(1) - pbar) + rep.eps_phi * a_const * pbar);
    detail::Rng rng(seed);
    std::vector<Eigen::MatrixXd> q_vertex(gl.n);
    for (size_t f = 0; f < gl.n; ++f) q_vertex[f] = p_vertex[f] - mean;
    rep.norm_margin = 1e300;
    rep.angle_margin = 1e300;
    double a_num = to_double(a_const), b_num = to_double(b_const);
    double p_num = to_double(rep.angle_constant);
    for (int trial = 0; trial < samples; ++trial) {
        std::vector<Eigen::VectorXd> g(gl.n);
        double total = 0;
        for (size_t f = 0; f < gl.n; ++f) {
            Eigen::VectorXd r((long)n);
            for (long i = 0; i < (long)n; ++i) r(i) = rng.gaussian();
            g[f] = q_vertex[f] * r;
            total += g[f].squaredNorm();
        }
        if (total < 1e-12) {
            --trial;
            continue;
        }
        double dg2 = 0, rho1 = 0, rho3 = 0;
        for (size_t e = 0; e < gl.edges.size(); ++e) {
            int tail = gl.tail((int)e), head = gl.head((int)e);
            Eigen::VectorXd d = g[head] - g[tail];
            dg2 += 0.5 * d.squaredNorm();
            rho1 += 0.5 * (p_vertex[head] * d).squaredNorm();
            rho3 += 0.5 * (d - p_core[head] * d).squaredNorm();
        }
        rep.norm_margin = std::min(rep.norm_margin, a_num * rho1 + b_num * rho3 - dg2);
        double lap2 = 0, lap_rho1 = 0;
        for (size_t f = 0; f < gl.n; ++f) {
            Eigen::VectorXd lap = (double)gl.degree((int)f) * g[f];
            for (int u : gl.adj[f]) lap -= g[u];
            lap2 += lap.squaredNorm();
            lap_rho1 += (p_vertex[f] * lap).squaredNorm();
        }
        rep.angle_margin = std::min(rep.angle_margin, lap_rho1 - p_num * lap2);
    }
    if (rep.norm_margin < -rep.tolerance) fail("norm inequality violated on a sampled function");
    if (rep.angle_margin < -rep.tolerance)
        fail("Laplacian-angle inequality violated on a sampled function");
    // (4) per-vector displacement tests on l^2_0(G): the whole group moves every
    //     unit vector by at least sqrt(2); the union of the root subgroups moves
    //     it by the codistance-derived lower bound.
    std::vector<std::vector<int>> root_subgroups;
    std::vector<int> union_roots;
    for (size_t r = 0; r < m.phi.roots.size(); ++r) {
        root_subgroups.push_back(root_indices({(int)r}));
        for (int x : root_subgroups.back())
            if (x != group.id) union_roots.push_back(x);
    }
    std::sort(union_roots.begin(), union_roots.end());
    union_roots.erase(std::unique(union_roots.begin(), union_roots.end()), union_roots.end());
    double rho = group_codistance(model, root_subgroups).value;
    rep.generator_bound = std::sqrt(std::max(0.0, 2.0 * (1.0 - rho)));
    rep.roottwo_min = 1e300;
    rep.generator_min = 1e300;
    for (int trial = 0; trial < samples; ++trial) {
        Eigen::VectorXd v((long)n);
        for (long i = 0; i < (long)n; ++i) v(i) = rng.gaussian();
        v.array() -= v.mean();
        if (v.norm() < 1e-12) {
            --trial;
            continue;
        }
        v /= v.norm();
        auto moved = [&](int s) {
            double d2 = 0;
            for (size_t x = 0; x < n; ++x) {
                double diff = v((long)group.mul[s][x]) - v((long)x);
                d2 += diff * diff;
            }
            return std::sqrt(d2);
        };
        double whole = 0, roots_only = 0;
        for (size_t s = 0; s < n; ++s) whole = std::max(whole, moved((int)s));
        for (int s : union_roots) roots_only = std::max(roots_only, moved(s));
        rep.roottwo_min = std::min(rep.roottwo_min, whole);
        rep.generator_min = std::min(rep.generator_min, roots_only);
    }
    if (rep.roottwo_min < std::sqrt(2.0) - rep.tolerance)
        fail("a unit vector is moved less than sqrt(2) by the whole group");
    if (rep.generator_min < rep.generator_bound - rep.tolerance)
        fail("a unit vector is moved less than the codistance-derived bound");
    return rep;
}

inline nlohmann::json pipeline_report_json(const PipelineReport& r) {
    return {{"model", r.model},
            {"group_order", r.group_order},
            {"vertices", r.vertices},
            {"degree", r.degree},
            {"eps_phi", to_string(r.eps_phi)},
            {"corefree_bound", to_string(r.corefree_bound)},
            {"angle_constant", to_string(r.angle_constant)},
            {"vertex_codistance", r.vertex_codistance},
            {"corefree_codistance", r.corefree_codistance},
            {"norm_margin", r.norm_margin},
            {"angle_margin", r.angle_margin},
            {"roottwo_min", r.roottwo_min},
            {"generator_bound", r.generator_bound},
            {"generator_min", r.generator_min},
            {"samples", r.samples},
            {"seed", r.seed},
            {"tolerance", r.tolerance},
            {"ok", r.ok},
            {"failure", r.failure}};
}

/// CSV sweep of two lines at an angle: codistance should equal (1 + cos)/2.
inline std::string codistance_sweep_csv(int steps, uint64_t seed = 1) {
    std::string out = "index,cos_angle,codistance_eigen,codistance_alternating,expected\n";
    for (int i = 0; i <= steps; ++i) {
        double theta = M_PI / 2 * (double)i / (double)steps;
        double c = std::cos(theta);
        Eigen::MatrixXd p1 = Eigen::MatrixXd::Zero(2, 2), p2(2, 2);
        p1(0, 0) = 1;
        Eigen::Vector2d w(c, std::sin(theta));
        p2 = w * w.transpose();
        std::vector<Eigen::MatrixXd> proj = {p1, p2};
        out += std::to_string(i) + "," + std::to_string(c) + "," +
               std::to_string(codistance(proj)) + "," +
               std::to_string(codistance_alternating(proj, seed)) + "," +
               std::to_string((1 + c) / 2) + "\n";
    }
    return out;
}

}  // namespace rootgraded
