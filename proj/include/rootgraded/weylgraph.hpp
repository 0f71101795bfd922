#pragma once

#include <Eigen/Dense>
#include <bit>
#include <sstream>

#include "rootgraded/borel.hpp"

namespace rootgraded {

/// Graph on the Borel sets of a root system. Edges are stored as symmetric
/// directed pairs; rev gives the reversal involution. For an edge e = (x, y)
/// the tail x is the initial vertex and the head y the terminal one.
struct WeylGraph {
    enum class Flavor { Large, Small };

    Flavor flavor = Flavor::Large;
    const BorelEnumeration* en = nullptr;
    size_t n = 0;
    std::vector<std::vector<int>> adj;         // sorted neighbor ids
    std::vector<std::pair<int, int>> edges;    // directed (tail, head)
    std::vector<int> rev;                      // edge id -> reversed edge id
    std::map<std::pair<int, int>, int> edge_index;
    std::vector<std::vector<uint64_t>> pos_mask;  // positives bitmask per vertex

    int degree(int v) const { return (int)adj[v].size(); }
    bool adjacent(int u, int v) const { return edge_index.count({u, v}) > 0; }
    size_t undirected_edge_count() const { return edges.size() / 2; }

    int tail(int e) const { return edges[e].first; }
    int head(int e) const { return edges[e].second; }

    /// Root indices of Phi_{e+} intersected with Phi_{e-}.
    std::vector<int> edge_label(int e) const {
        std::vector<int> out;
        const auto& a = pos_mask[edges[e].first];
        const auto& b = pos_mask[edges[e].second];
        for (size_t w = 0; w < a.size(); ++w) {
            uint64_t m = a[w] & b[w];
            while (m) {
                int bit = std::countr_zero(m);
                out.push_back((int)(w * 64) + bit);
                m &= m - 1;
            }
        }
        return out;
    }

    bool edge_label_contains(int e, int root) const {
        size_t w = (size_t)root / 64;
        uint64_t bit = 1ULL << (root % 64);
        return (pos_mask[edges[e].first][w] & pos_mask[edges[e].second][w] & bit) != 0;
    }
};

namespace detail {

inline std::vector<uint64_t> root_mask(const std::vector<int>& roots, size_t nroots) {
    std::vector<uint64_t> m((nroots + 63) / 64, 0);
    for (int r : roots) m[(size_t)r / 64] |= 1ULL << (r % 64);
    return m;
}

inline bool mask_subset(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b) {
    for (size_t w = 0; w < a.size(); ++w)
        if (a[w] & ~b[w]) return false;
    return true;
}

template <class Pred>
WeylGraph build_graph(const BorelEnumeration& en, WeylGraph::Flavor flavor, Pred adjacent) {
    WeylGraph g;
    g.flavor = flavor;
    g.en = &en;
    g.n = en.size();
    size_t nroots = en.phi.roots.size();
    g.pos_mask.resize(g.n);
    for (size_t v = 0; v < g.n; ++v) g.pos_mask[v] = root_mask(en.sets[v].positives, nroots);
    g.adj.resize(g.n);
    for (size_t u = 0; u < g.n; ++u)
        for (size_t v = u + 1; v < g.n; ++v)
            if (adjacent((int)u, (int)v)) {
                g.adj[u].push_back((int)v);
                g.adj[v].push_back((int)u);
            }
    for (size_t u = 0; u < g.n; ++u)
        for (int v : g.adj[u]) {
            g.edge_index[{(int)u, v}] = (int)g.edges.size();
            g.edges.push_back({(int)u, v});
        }
    g.rev.resize(g.edges.size());
    for (size_t e = 0; e < g.edges.size(); ++e)
        g.rev[e] = g.edge_index.at({g.edges[e].second, g.edges[e].first});
    return g;
}

}  // namespace detail

/// Vertices adjacent iff their Borel sets are distinct and not opposite.
inline WeylGraph large_weyl_graph(const BorelEnumeration& en) {
    return detail::build_graph(en, WeylGraph::Flavor::Large,
                               [&](int u, int v) { return en.opposite[u] != v; });
}

/// f ~ g iff each difference set fits inside the core of some Borel set.
inline WeylGraph small_weyl_graph(const BorelEnumeration& en) {
    size_t nroots = en.phi.roots.size();
    std::vector<std::vector<uint64_t>> cores;
    {
        std::set<std::vector<uint64_t>> seen;
        for (const auto& b : en.sets) {
            auto m = detail::root_mask(en.core(b.id), nroots);
            if (seen.insert(m).second) cores.push_back(m);
        }
    }
    std::vector<std::vector<uint64_t>> pos(en.size());
    for (size_t v = 0; v < en.size(); ++v)
        pos[v] = detail::root_mask(en.sets[v].positives, nroots);
    auto fits_some_core = [&](const std::vector<uint64_t>& diff) {
        for (const auto& c : cores)
            if (detail::mask_subset(diff, c)) return true;
        return false;
    };
    size_t words = (nroots + 63) / 64;
    return detail::build_graph(en, WeylGraph::Flavor::Small, [&](int u, int v) {
        std::vector<uint64_t> d1(words), d2(words);
        for (size_t w = 0; w < words; ++w) {
            d1[w] = pos[u][w] & ~pos[v][w];
            d2[w] = pos[v][w] & ~pos[u][w];
        }
        return fits_some_core(d1) && fits_some_core(d2);
    });
}

inline RatMat adjacency_matrix(const WeylGraph& g) {
    RatMat a(g.n, RatVec(g.n, Rat(0)));
    for (size_t u = 0; u < g.n; ++u)
        for (int v : g.adj[u]) a[u][v] = Rat(1);
    return a;
}

inline RatMat laplacian_matrix(const WeylGraph& g) {
    RatMat l(g.n, RatVec(g.n, Rat(0)));
    for (size_t u = 0; u < g.n; ++u) {
        l[u][u] = Rat(Int(g.degree((int)u)));
        for (int v : g.adj[u]) l[u][v] = Rat(-1);
    }
    return l;
}

inline std::vector<std::vector<int>> components(const WeylGraph& g) {
    std::vector<int> comp(g.n, -1);
    std::vector<std::vector<int>> out;
    for (size_t s = 0; s < g.n; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> q = {(int)s}, cur;
        comp[s] = (int)out.size();
        for (size_t i = 0; i < q.size(); ++i) {
            cur.push_back(q[i]);
            for (int v : g.adj[q[i]])
                if (comp[v] < 0) {
                    comp[v] = (int)out.size();
                    q.push_back(v);
                }
        }
        std::sort(cur.begin(), cur.end());
        out.push_back(cur);
    }
    return out;
}

inline bool is_connected(const WeylGraph& g) { return components(g).size() == 1; }

inline std::vector<int> bfs_distances(const WeylGraph& g, int src) {
    std::vector<int> dist(g.n, -1);
    std::vector<int> q = {src};
    dist[src] = 0;
    for (size_t i = 0; i < q.size(); ++i)
        for (int v : g.adj[q[i]])
            if (dist[v] < 0) {
                dist[v] = dist[q[i]] + 1;
                q.push_back(v);
            }
    return dist;
}

/// Maximum eccentricity; -1 if the graph is disconnected.
inline int diameter(const WeylGraph& g) {
    int d = 0;
    for (size_t s = 0; s < g.n; ++s)
        for (int x : bfs_distances(g, (int)s)) {
            if (x < 0) return -1;
            d = std::max(d, x);
        }
    return d;
}

struct SpectrumEntry {
    double value = 0;
    int multiplicity = 0;
    bool is_exact = false;
    Rat exact;  // meaningful iff is_exact
};

struct Spectrum {
    std::vector<SpectrumEntry> entries;  // sorted by value
    bool all_exact = false;
    std::vector<std::vector<int>> components_report;  // nonempty iff disconnected
};

namespace detail {

inline int integer_eigenvalue_multiplicity(const WeylGraph& g, long long lambda) {
    RatMat m = laplacian_matrix(g);
    for (size_t i = 0; i < g.n; ++i) m[i][i] -= Rat(Int(lambda));
    return (int)g.n - (int)rat_rank(m);
}

inline Eigen::MatrixXd laplacian_dense(const WeylGraph& g) {
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero((long)g.n, (long)g.n);
    for (size_t u = 0; u < g.n; ++u) {
        l((long)u, (long)u) = g.degree((int)u);
        for (int v : g.adj[u]) l((long)u, v) = -1.0;
    }
    return l;
}

}  // namespace detail

/// Laplacian spectrum with multiplicities. Large flavor: exact rational kernel
/// ranks for n <= 200, otherwise verified structurally via A = J - I - P.
/// Small flavor: integer eigenvalues found by exact kernel ranks (n <= 64),
/// any remainder (or n > 64) by a floating eigensolver, residual <= 1e-9.
inline Spectrum laplacian_spectrum(const WeylGraph& g) {
    Spectrum sp;
    auto comps = components(g);
    if (comps.size() != 1) {
        sp.components_report = comps;
        return sp;
    }
    size_t n = g.n;
    if (g.flavor == WeylGraph::Flavor::Large) {
        // adjacency eigenvalues n-2, 0, -2 with multiplicities 1, n/2, n/2-1
        if (n <= 200) {
            int m0 = detail::integer_eigenvalue_multiplicity(g, 0);
            int m1 = detail::integer_eigenvalue_multiplicity(g, (long long)n - 2);
            int m2 = detail::integer_eigenvalue_multiplicity(g, (long long)n);
            if (m0 != 1 || m1 != (int)n / 2 || m2 != (int)n / 2 - 1)
                throw std::runtime_error("laplacian_spectrum: unexpected kernel ranks");
        } else {
            // structural check of A = J - I - P: adjacency iff distinct and
            // not opposite, with opposite a fixed-point-free involution
            const auto& opp = g.en->opposite;
            for (size_t u = 0; u < n; ++u) {
                if (opp[u] == (int)u || opp[opp[u]] != (int)u)
                    throw std::runtime_error("laplacian_spectrum: bad opposite pairing");
                if (g.degree((int)u) != (int)n - 2 || g.adjacent((int)u, opp[u]))
                    throw std::runtime_error("laplacian_spectrum: not the non-opposite graph");
            }
        }
        sp.entries = {{0.0, 1, true, Rat(0)},
                      {(double)(n - 2), (int)n / 2, true, Rat(Int((long long)n - 2))},
                      {(double)n, (int)n / 2 - 1, true, Rat(Int((long long)n))}};
        sp.all_exact = true;
        return sp;
    }
    int maxdeg = 0;
    for (size_t u = 0; u < n; ++u) maxdeg = std::max(maxdeg, g.degree((int)u));
    int found = 0;
    if (n <= 64) {
        for (long long lam = 0; lam <= 2LL * maxdeg; ++lam) {
            int m = detail::integer_eigenvalue_multiplicity(g, lam);
            if (m > 0) {
                sp.entries.push_back({(double)lam, m, true, Rat(Int(lam))});
                found += m;
            }
        }
    }
    sp.all_exact = (found == (int)n);
    if (!sp.all_exact) {
        Eigen::MatrixXd l = detail::laplacian_dense(g);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(l);
        const auto& ev = es.eigenvalues();
        double scale = std::max(1.0, l.norm());
        Eigen::MatrixXd vecs = es.eigenvectors();
        Eigen::MatrixXd lv = l.lazyProduct(vecs);
        double resid = 0;
        for (long c = 0; c < vecs.cols(); ++c)
            for (long r = 0; r < vecs.rows(); ++r)
                resid = std::max(resid, std::abs(lv(r, c) - ev[c] * vecs(r, c)));
        if (resid > 1e-9 * scale)
            throw std::runtime_error("laplacian_spectrum: eigensolver residual too large");
        std::vector<double> rest;
        for (long i = 0; i < ev.size(); ++i) {
            double v = ev[i];
            bool matched = false;
            for (auto& e : sp.entries)
                if (e.is_exact && std::abs(v - e.value) < 1e-6) {
                    matched = true;
                    break;
                }
            if (!matched) rest.push_back(v);
        }
        std::sort(rest.begin(), rest.end());
        for (size_t i = 0; i < rest.size();) {
            size_t j = i;
            while (j < rest.size() && rest[j] - rest[i] < 1e-6) ++j;
            sp.entries.push_back({rest[i], (int)(j - i), false, Rat(0)});
            i = j;
        }
        std::sort(sp.entries.begin(), sp.entries.end(),
                  [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.value < b.value; });
    }
    return sp;
}

/// Smallest positive Laplacian eigenvalue.
inline double spectral_gap(const Spectrum& sp) {
    for (const auto& e : sp.entries)
        if (e.value > 1e-9) return e.value;
    throw std::runtime_error("spectral_gap: no positive eigenvalue");
}

// ---- vertex / edge functions, d, d*, Delta --------------------------------

template <class S>
using GraphFn = std::vector<std::vector<S>>;  // one vector per vertex or edge

namespace detail {

template <class S>
size_t common_dim(const GraphFn<S>& f) {
    if (f.empty()) return 0;
    size_t d = f[0].size();
    for (const auto& v : f)
        if (v.size() != d) throw std::invalid_argument("graph function: dimension mismatch");
    return d;
}

}  // namespace detail

/// (df)(e) = f(head) - f(tail), one value per directed edge.
template <class S>
GraphFn<S> difference_operator(const WeylGraph& g, const GraphFn<S>& f) {
    if (f.size() != g.n) throw std::invalid_argument("difference_operator: wrong vertex count");
    size_t d = detail::common_dim(f);
    GraphFn<S> out(g.edges.size(), std::vector<S>(d));
    for (size_t e = 0; e < g.edges.size(); ++e)
        for (size_t i = 0; i < d; ++i)
            out[e][i] = f[g.head((int)e)][i] - f[g.tail((int)e)][i];
    return out;
}

/// (d*h)(y) = sum over edges with head y of (h(e) - h(reversed e)) / 2.
template <class S>
GraphFn<S> adjoint_difference(const WeylGraph& g, const GraphFn<S>& h) {
    if (h.size() != g.edges.size())
        throw std::invalid_argument("adjoint_difference: wrong edge count");
    size_t d = detail::common_dim(h);
    GraphFn<S> out(g.n, std::vector<S>(d, S(0)));
    for (size_t e = 0; e < g.edges.size(); ++e) {
        int y = g.head((int)e);
        for (size_t i = 0; i < d; ++i)
            out[y][i] += (h[e][i] - h[g.rev[e]][i]) / S(2);
    }
    return out;
}

/// (Delta f)(y) = sum over edges with head y of (f(y) - f(tail)).
template <class S>
GraphFn<S> laplacian_apply(const WeylGraph& g, const GraphFn<S>& f) {
    if (f.size() != g.n) throw std::invalid_argument("laplacian_apply: wrong vertex count");
    size_t d = detail::common_dim(f);
    GraphFn<S> out(g.n, std::vector<S>(d, S(0)));
    for (size_t y = 0; y < g.n; ++y)
        for (size_t i = 0; i < d; ++i) {
            out[y][i] = S(g.degree((int)y)) * f[y][i];
            for (int x : g.adj[y]) out[y][i] -= f[x][i];
        }
    return out;
}

template <class S>
S vertex_inner(const GraphFn<S>& a, const GraphFn<S>& b) {
    S s(0);
    for (size_t v = 0; v < a.size(); ++v)
        for (size_t i = 0; i < a[v].size(); ++i) s += a[v][i] * b[v][i];
    return s;
}

/// Edge-space inner product: half the sum over directed edges.
template <class S>
S edge_inner(const GraphFn<S>& a, const GraphFn<S>& b) {
    return vertex_inner(a, b) / S(2);
}

template <class S>
S vertex_norm_sq(const GraphFn<S>& a) {
    return vertex_inner(a, a);
}

template <class S>
S edge_norm_sq(const GraphFn<S>& a) {
    return edge_inner(a, a);
}

// ---- path constant ---------------------------------------------------------

/// For every edge of the large graph, a shortest small-graph route between its
/// endpoints (deterministic lowest-id tie-breaking), and the certified
/// congestion constant C with  |d_large f|^2 <= C |d_small f|^2.
struct PathTable {
    Rat constant;
    std::map<std::pair<int, int>, std::vector<int>> routes;      // large edge -> vertex path
    std::map<std::pair<int, int>, long long> congestion;         // small edge -> load
};

inline PathTable path_constant(const WeylGraph& large, const WeylGraph& small) {
    if (!is_connected(small)) throw std::invalid_argument("path_constant: small graph disconnected");
    PathTable t;
    // BFS parents from each source; neighbors scanned in ascending id order,
    // so the recorded shortest path is the lexicographically least one.
    std::vector<std::vector<int>> parent(small.n, std::vector<int>(small.n, -1));
    for (size_t s = 0; s < small.n; ++s) {
        std::vector<int> q = {(int)s};
        std::vector<int> dist(small.n, -1);
        dist[s] = 0;
        for (size_t i = 0; i < q.size(); ++i)
            for (int v : small.adj[q[i]])
                if (dist[v] < 0) {
                    dist[v] = dist[q[i]] + 1;
                    parent[s][v] = q[i];
                    q.push_back(v);
                }
    }
    for (size_t e = 0; e < large.edges.size(); ++e) {
        auto [u, v] = large.edges[e];
        if (u > v) continue;
        std::vector<int> path = {v};
        while (path.back() != u) path.push_back(parent[u][path.back()]);
        std::reverse(path.begin(), path.end());
        t.routes[{u, v}] = path;
        long long len = (long long)path.size() - 1;
        for (size_t i = 0; i + 1 < path.size(); ++i) {
            auto key = std::minmax(path[i], path[i + 1]);
            t.congestion[{key.first, key.second}] += len;
        }
    }
    long long c = 0;
    for (auto& [k, v] : t.congestion) c = std::max(c, v);
    t.constant = Rat(Int(c));
    return t;
}

// ---- invariants used by tests and acceptance checks ------------------------

/// For every vertex f and every position t of its induced root ordering,
/// exactly half of the large-graph edges with head f omit the t-th root
/// from their label.
inline bool half_split_invariant(const WeylGraph& large, const BorelEnumeration& en) {
    for (size_t f = 0; f < large.n; ++f) {
        auto order = induced_ordering(en, (int)f);
        std::vector<int> in_edges;
        for (size_t e = 0; e < large.edges.size(); ++e)
            if (large.head((int)e) == (int)f) in_edges.push_back((int)e);
        for (int root : order) {
            int omit = 0;
            for (int e : in_edges)
                if (!large.edge_label_contains(e, root)) ++omit;
            if (2 * omit != (int)in_edges.size()) return false;
        }
    }
    return true;
}

/// The labels of the edges omitting the t-th root jointly cover every
/// positive root of f that is not a multiple of it.
inline bool omitted_edge_cover_invariant(const WeylGraph& large, const BorelEnumeration& en) {
    for (size_t f = 0; f < large.n; ++f) {
        auto order = induced_ordering(en, (int)f);
        std::vector<int> in_edges;
        for (size_t e = 0; e < large.edges.size(); ++e)
            if (large.head((int)e) == (int)f) in_edges.push_back((int)e);
        for (int root : order) {
            std::set<int> covered;
            for (int e : in_edges)
                if (!large.edge_label_contains(e, root))
                    for (int r : large.edge_label(e)) covered.insert(r);
            for (int beta : en.sets[f].positives) {
                if (detail::proportional(en.phi.iroots[beta], en.phi.iroots[root])) continue;
                if (!covered.count(beta)) return false;
            }
        }
    }
    return true;
}

// ---- exports ----------------------------------------------------------------

/// Combined picture: solid = small edges, dashed = large-only edges,
/// dotted = opposite pairs.
inline std::string to_dot(const WeylGraph& large, const WeylGraph& small) {
    std::ostringstream os;
    os << "graph weyl {\n";
    for (size_t v = 0; v < large.n; ++v) os << "  v" << v << ";\n";
    for (size_t u = 0; u < large.n; ++u) {
        for (int v : large.adj[u]) {
            if ((int)u > v) continue;
            bool s = small.adjacent((int)u, v);
            os << "  v" << u << " -- v" << v << " [style=" << (s ? "solid" : "dashed")
               << "];\n";
        }
        int opp = large.en->opposite[u];
        if ((int)u < opp) os << "  v" << u << " -- v" << opp << " [style=dotted];\n";
    }
    os << "}\n";
    return os.str();
}

inline std::string spectrum_csv(const Spectrum& sp) {
    std::ostringstream os;
    os << "eigenvalue,multiplicity,exact\n";
    for (const auto& e : sp.entries) {
        if (e.is_exact)
            os << to_string(e.exact);
        else
            os << e.value;
        os << "," << e.multiplicity << "," << (e.is_exact ? 1 : 0) << "\n";
    }
    return os.str();
}

}  // namespace rootgraded
