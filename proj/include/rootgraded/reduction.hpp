#pragma once

#include <functional>
#include <memory>

#include "json.hpp"
#include "rootgraded/weylgraph.hpp"

namespace rootgraded {

/// Surjective linear map from span(Phi) onto the span of the induced system.
struct Reduction {
    std::string name;
    RatMat matrix;  // target coordinates x source dimension
    RootSystem source;
    RootSystem induced;
    std::vector<int> image_index;             // source root -> induced index, -1 on kernel
    std::map<int, std::vector<int>> fibers;   // induced index -> source root indices
    std::vector<int> kernel_roots;            // source root indices killed by the map

    RatVec apply(const RatVec& v) const {
        RatVec out(matrix.size(), Rat(0));
        for (size_t i = 0; i < matrix.size(); ++i) out[i] = dot(matrix[i], v);
        return out;
    }
};

inline Reduction apply_reduction(const RatMat& eta, const RootSystem& phi,
                                 std::string name = "") {
    if (eta.empty() || eta[0].size() != phi.dim)
        throw std::invalid_argument("apply_reduction: map has wrong source dimension");
    Reduction r;
    r.name = std::move(name);
    r.matrix = eta;
    r.source = phi;
    r.induced.dim = eta.size();
    std::vector<RatVec> images(phi.roots.size());
    for (size_t i = 0; i < phi.roots.size(); ++i) {
        images[i] = r.apply(phi.roots[i]);
        if (!is_zero(images[i])) r.induced.roots.push_back(images[i]);
    }
    // The effective target is the image of span(Phi); the induced roots span
    // it whenever any survive, so the map fails to be surjective exactly when
    // it kills the whole root span.
    if (r.induced.roots.empty())
        throw std::invalid_argument("apply_reduction: map not surjective (zero on the root span)");
    r.induced.label = r.name.empty() ? "induced" : r.name;
    r.induced.finalize();
    r.image_index.resize(phi.roots.size());
    for (size_t i = 0; i < phi.roots.size(); ++i) {
        if (is_zero(images[i])) {
            r.image_index[i] = -1;
            r.kernel_roots.push_back((int)i);
        } else {
            r.image_index[i] = r.induced.index_of(images[i]);
            r.fibers[r.image_index[i]].push_back((int)i);
        }
    }
    return r;
}

/// Index map used to coarsen gradings: source root -> induced root (-1: kernel).
inline std::vector<int> coarsen_index(const Reduction& r) { return r.image_index; }

// ---- goodness certificates --------------------------------------------------

struct KernelWitness {
    int gamma;             // source root index in ker
    std::vector<int> psi;  // source indices of the witnessing subsystem
};

struct FiberWitness {
    int f_id;                           // Borel set of the induced enumeration
    int gamma_prime;                    // induced root index
    int gamma;                          // source root index
    std::vector<int> psi;               // source indices of the subsystem
    std::vector<RatVec> psi_positives;  // the witnessing Borel set of Psi
    std::vector<RatVec> base_f;         // base of the induced Borel set
    std::vector<RatVec> base_g;         // base of the Psi Borel set
};

struct GoodnessCertificate {
    int k = 0;
    bool ok = false;
    std::string failure;  // first unprovable obligation, empty when ok
    std::vector<KernelWitness> kernel_witnesses;
    std::vector<FiberWitness> fiber_witnesses;
};

namespace detail {

inline int int_rank(std::vector<std::vector<__int128>> m) {
    size_t rows = m.size(), cols = rows ? m[0].size() : 0, r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[r], m[p]);
        for (size_t i = r + 1; i < rows; ++i) {
            if (m[i][c] == 0) continue;
            __int128 a = m[r][c], b = m[i][c];
            for (size_t j = c; j < cols; ++j) m[i][j] = m[i][j] * a - m[r][j] * b;
        }
        ++r;
    }
    return (int)r;
}

inline std::vector<__int128> to128(const std::vector<long long>& v) {
    return std::vector<__int128>(v.begin(), v.end());
}

/// Cached data about one candidate subsystem Psi of the source.
struct PsiInfo {
    std::vector<int> roots;  // source indices, sorted
    RootSystem psi;
    std::vector<int> src;  // psi-local index -> source index
    std::vector<int> img;  // psi-local index -> induced index or -1
    bool irreducible = false;
    bool regular = false;
    size_t rank = 0;
    std::optional<BorelEnumeration> en;
    std::vector<char> g_ok;                       // Borel set avoids the kernel
    std::vector<std::vector<uint64_t>> g_image;   // induced-index mask of eta(Psi_g)
    std::vector<std::vector<uint64_t>> g_core;    // psi-local mask of the core
};

}  // namespace detail

/// Exhaustive k-goodness checker (k = 2 or 3). Candidate subsystems are the
/// intersections of the source with planes (k=2) or 3-spaces (k=3) through the
/// root in question; the induced system's Borel sets are enumerated, the
/// source's never are. Witness selection is deterministic: candidates are
/// scanned in discovery order and Borel sets in enumeration order.
class GoodnessChecker {
public:
    GoodnessChecker(const Reduction& r, int k) : r_(r), k_(k) {
        if (k != 2 && k != 3) throw std::invalid_argument("is_k_good: k must be 2 or 3");
        enp_ = enumerate_borel_sets(r.induced);
        // proportionality classes of induced roots, for the line condition
        line_of_.assign(r.induced.roots.size(), -1);
        int nl = 0;
        for (size_t i = 0; i < r.induced.roots.size(); ++i) {
            if (line_of_[i] >= 0) continue;
            for (size_t j = i; j < r.induced.roots.size(); ++j)
                if (line_of_[j] < 0 &&
                    detail::proportional(r.induced.iroots[i], r.induced.iroots[j]))
                    line_of_[j] = nl;
            ++nl;
        }
        nwords_ = (r.induced.roots.size() + 63) / 64;
    }

    GoodnessCertificate run() {
        GoodnessCertificate cert;
        cert.k = k_;
        for (int gamma : r_.kernel_roots) {
            auto w = kernel_witness(gamma);
            if (!w) {
                cert.ok = false;
                cert.failure = "no rank-" + std::to_string(k_) +
                               " witness for kernel root " + vec_str(r_.source.roots[gamma]);
                return cert;
            }
            cert.kernel_witnesses.push_back(*w);
        }
        for (const auto& f : enp_.sets) {
            auto fmask = detail::root_mask(f.positives, r_.induced.roots.size());
            auto basef = base_vectors(enp_, f.id);
            for (int gp : enp_.core(f.id)) {
                auto fit = r_.fibers.find(gp);
                if (fit == r_.fibers.end()) continue;
                for (int gamma : fit->second) {
                    auto w = fiber_witness(f.id, fmask, basef, gp, gamma);
                    if (!w) {
                        cert.ok = false;
                        cert.failure = "no witness for core root " +
                                       vec_str(r_.induced.roots[gp]) + " above " +
                                       vec_str(r_.source.roots[gamma]);
                        return cert;
                    }
                    cert.fiber_witnesses.push_back(*w);
                }
            }
        }
        cert.ok = true;
        return cert;
    }

    const BorelEnumeration& induced_enumeration() const { return enp_; }

private:
    static std::string vec_str(const RatVec& v) {
        std::string s = "(";
        for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
        return s + ")";
    }

    static std::vector<RatVec> base_vectors(const BorelEnumeration& en, int id) {
        std::vector<RatVec> out;
        for (int b : base_of(en, id)) out.push_back(en.phi.roots[b]);
        return out;
    }

    detail::PsiInfo& psi_info(std::vector<int> roots) {
        auto it = cache_.find(roots);
        if (it != cache_.end()) return *it->second;
        auto info = std::make_unique<detail::PsiInfo>();
        info->roots = roots;
        info->psi.dim = r_.source.dim;
        info->psi.gram = r_.source.gram;
        for (int i : roots) info->psi.roots.push_back(r_.source.roots[i]);
        info->psi.finalize();
        info->rank = info->psi.rank();
        info->irreducible = is_irreducible(info->psi);
        info->src.resize(roots.size());
        info->img.resize(roots.size());
        for (size_t i = 0; i < info->psi.roots.size(); ++i) {
            int s = r_.source.index_of(info->psi.roots[i]);
            info->src[i] = s;
            info->img[i] = r_.image_index[s];
        }
        if (info->irreducible && info->rank == (size_t)k_)
            info->regular = is_regular(info->psi);
        auto& ref = *info;
        cache_[roots] = std::move(info);
        return ref;
    }

    void ensure_enumerated(detail::PsiInfo& p) {
        if (p.en) return;
        p.en = enumerate_borel_sets(p.psi);
        size_t nsets = p.en->size();
        p.g_ok.assign(nsets, 1);
        p.g_image.assign(nsets, std::vector<uint64_t>(nwords_, 0));
        p.g_core.assign(nsets, std::vector<uint64_t>((p.psi.roots.size() + 63) / 64, 0));
        for (const auto& g : p.en->sets) {
            for (int local : g.positives) {
                int ind = p.img[local];
                if (ind < 0) {
                    p.g_ok[g.id] = 0;
                    break;
                }
                p.g_image[g.id][(size_t)ind / 64] |= 1ULL << (ind % 64);
            }
            for (int local : p.en->core(g.id))
                p.g_core[g.id][(size_t)local / 64] |= 1ULL << (local % 64);
        }
    }

    /// Candidate subsystems through gamma, in deterministic discovery order.
    const std::vector<std::vector<int>>& candidates(int gamma) {
        auto it = cand_.find(gamma);
        if (it != cand_.end()) return it->second;
        std::vector<std::vector<int>> out;
        std::set<std::vector<int>> seen;
        const auto& ir = r_.source.iroots;
        size_t n = r_.source.roots.size();
        if (k_ == 2) {
            for (size_t d = 0; d < n; ++d) {
                if (detail::proportional(ir[gamma], ir[d])) continue;
                auto plane = plane_subsystem(r_.source, gamma, (int)d);
                if (seen.insert(plane).second) out.push_back(std::move(plane));
            }
        } else {
            for (size_t d1 = 0; d1 < n; ++d1) {
                if (detail::proportional(ir[gamma], ir[d1])) continue;
                for (size_t d2 = d1 + 1; d2 < n; ++d2) {
                    if (detail::int_rank({detail::to128(ir[gamma]), detail::to128(ir[d1]),
                                          detail::to128(ir[d2])}) != 3)
                        continue;
                    std::vector<int> roots;
                    for (size_t m = 0; m < n; ++m)
                        if (detail::int_rank({detail::to128(ir[gamma]), detail::to128(ir[d1]),
                                              detail::to128(ir[d2]), detail::to128(ir[m])}) == 3)
                            roots.push_back((int)m);
                    if (seen.insert(roots).second) out.push_back(std::move(roots));
                }
            }
        }
        return cand_[gamma] = std::move(out);
    }

    std::optional<KernelWitness> kernel_witness(int gamma) {
        for (const auto& roots : candidates(gamma)) {
            auto& p = psi_info(roots);
            if (!p.irreducible || p.rank != (size_t)k_ || !p.regular) continue;
            bool ok = true;
            for (size_t i = 0; i < p.src.size() && ok; ++i)
                if (p.img[i] < 0 &&
                    !detail::proportional(r_.source.iroots[p.src[i]], r_.source.iroots[gamma]))
                    ok = false;
            if (ok) return KernelWitness{gamma, roots};
        }
        return std::nullopt;
    }

    std::optional<FiberWitness> fiber_witness(int f_id, const std::vector<uint64_t>& fmask,
                                              const std::vector<RatVec>& basef, int gp,
                                              int gamma) {
        // Borel enumeration of a candidate is the expensive step, so scan the
        // already-enumerated candidates first; the processing order of the
        // obligations is fixed, keeping the selected witnesses deterministic.
        const auto& cand = candidates(gamma);
        std::vector<const std::vector<int>*> order;
        order.reserve(cand.size());
        for (const auto& roots : cand) {
            auto it = cache_.find(roots);
            if (it != cache_.end() && it->second->en) order.push_back(&roots);
        }
        for (const auto& roots : cand) {
            auto it = cache_.find(roots);
            if (!(it != cache_.end() && it->second->en)) order.push_back(&roots);
        }
        for (const auto* rp : order) {
            const auto& roots = *rp;
            auto& p = psi_info(roots);
            if (!p.irreducible || p.rank != (size_t)k_) continue;
            // Psi meets the preimage of the line of gamma' only along gamma
            bool line_ok = true;
            for (size_t i = 0; i < p.src.size() && line_ok; ++i) {
                bool on_line = p.img[i] < 0 || line_of_[p.img[i]] == line_of_[gp];
                if (on_line && !detail::proportional(r_.source.iroots[p.src[i]],
                                                     r_.source.iroots[gamma]))
                    line_ok = false;
            }
            if (!line_ok) continue;
            ensure_enumerated(p);
            int local_gamma = p.psi.index_of(r_.source.roots[gamma]);
            for (const auto& g : p.en->sets) {
                if (!p.g_ok[g.id]) continue;
                if (!(p.g_core[g.id][(size_t)local_gamma / 64] >> (local_gamma % 64) & 1))
                    continue;
                if (!detail::mask_subset(p.g_image[g.id], fmask)) continue;
                FiberWitness w;
                w.f_id = f_id;
                w.gamma_prime = gp;
                w.gamma = gamma;
                w.psi = roots;
                for (int local : g.positives) w.psi_positives.push_back(p.psi.roots[local]);
                w.base_f = basef;
                w.base_g = base_vectors(*p.en, g.id);
                return w;
            }
        }
        return std::nullopt;
    }

    const Reduction& r_;
    int k_;
    BorelEnumeration enp_;
    std::vector<int> line_of_;
    size_t nwords_ = 0;
    std::map<std::vector<int>, std::unique_ptr<detail::PsiInfo>> cache_;
    std::map<int, std::vector<std::vector<int>>> cand_;
};

inline GoodnessCertificate is_k_good(const Reduction& r, int k) {
    return GoodnessChecker(r, k).run();
}

// ---- independent re-verification -------------------------------------------

namespace detail {

/// Shared state for verifying many witnesses against one reduction: the
/// induced Borel enumeration plus enumerations of the subsystems seen so far.
struct VerifyContext {
    const Reduction& r;
    BorelEnumeration enp;
    std::map<std::vector<RatVec>, std::pair<RootSystem, BorelEnumeration>> psis;

    explicit VerifyContext(const Reduction& red)
        : r(red), enp(enumerate_borel_sets(red.induced)) {}
};

inline bool verify_row(VerifyContext& ctx, const RatVec& gamma_prime, const RatVec& gamma,
                       const std::vector<RatVec>& base_f, const std::vector<RatVec>& base_g);

}  // namespace detail

/// Checks a table row (gamma', gamma, base of the induced Borel set, base of
/// the Psi Borel set) as a self-contained witness for the fiber condition.
inline bool verify_table_row(const Reduction& r, const RatVec& gamma_prime, const RatVec& gamma,
                             const std::vector<RatVec>& base_f,
                             const std::vector<RatVec>& base_g) {
    detail::VerifyContext ctx(r);
    return detail::verify_row(ctx, gamma_prime, gamma, base_f, base_g);
}

namespace detail {

inline bool verify_row(VerifyContext& ctx, const RatVec& gamma_prime, const RatVec& gamma,
                       const std::vector<RatVec>& base_f, const std::vector<RatVec>& base_g) {
    const Reduction& r = ctx.r;
    int gi = r.source.index_of(gamma);
    if (gi < 0) return false;
    if (r.apply(gamma) != gamma_prime) return false;
    int gpi = r.induced.index_of(gamma_prime);
    if (gpi < 0) return false;
    // reconstruct the induced Borel set from its base
    auto& enp = ctx.enp;
    int f_id = -1;
    for (const auto& f : enp.sets) {
        std::set<RatVec> base;
        for (int b : base_of(enp, f.id)) base.insert(r.induced.roots[b]);
        if (base == std::set<RatVec>(base_f.begin(), base_f.end())) {
            f_id = f.id;
            break;
        }
    }
    if (f_id < 0) return false;
    auto core_f = enp.core(f_id);
    if (std::find(core_f.begin(), core_f.end(), gpi) == core_f.end()) return false;
    // reconstruct Psi from the span of its base
    RootSystem psi = subsystem(r.source, RatMat(base_g.begin(), base_g.end()));
    if (psi.rank() != base_g.size() || !is_irreducible(psi)) return false;
    if (psi.index_of(gamma) < 0) return false;
    auto cached = ctx.psis.find(psi.roots);
    // the line condition
    for (const auto& root : psi.roots) {
        RatVec img = r.apply(root);
        bool on_line = true;
        if (!is_zero(img)) {
            for (size_t i = 0; i < img.size() && on_line; ++i)
                for (size_t j = i + 1; j < img.size(); ++j)
                    if (img[i] * gamma_prime[j] != img[j] * gamma_prime[i]) {
                        on_line = false;
                        break;
                    }
        }
        if (on_line) {
            bool prop = true;
            for (size_t i = 0; i < root.size() && prop; ++i)
                for (size_t j = i + 1; j < root.size(); ++j)
                    if (root[i] * gamma[j] != root[j] * gamma[i]) {
                        prop = false;
                        break;
                    }
            if (!prop) return false;
        }
    }
    // reconstruct the Psi Borel set from its base and check the conditions
    if (cached == ctx.psis.end())
        cached = ctx.psis.emplace(psi.roots, std::pair(psi, enumerate_borel_sets(psi))).first;
    const auto& enq = cached->second.second;
    int g_id = -1;
    for (const auto& g : enq.sets) {
        std::set<RatVec> base;
        for (int b : base_of(enq, g.id)) base.insert(psi.roots[b]);
        if (base == std::set<RatVec>(base_g.begin(), base_g.end())) {
            g_id = g.id;
            break;
        }
    }
    if (g_id < 0) return false;
    auto core_g = enq.core(g_id);
    int lg = psi.index_of(gamma);
    if (std::find(core_g.begin(), core_g.end(), lg) == core_g.end()) return false;
    std::set<RatVec> fpos;
    for (int p : enp.sets[f_id].positives) fpos.insert(r.induced.roots[p]);
    for (int p : enq.sets[g_id].positives) {
        RatVec img = r.apply(psi.roots[p]);
        if (is_zero(img) || !fpos.count(img)) return false;
    }
    return true;
}

}  // namespace detail

inline bool verify_kernel_witness(const Reduction& r, const KernelWitness& w) {
    if (w.gamma < 0 || (size_t)w.gamma >= r.source.roots.size()) return false;
    if (r.image_index[w.gamma] != -1) return false;
    RootSystem psi;
    psi.dim = r.source.dim;
    psi.gram = r.source.gram;
    for (int i : w.psi) psi.roots.push_back(r.source.roots[i]);
    psi.finalize();
    if (!is_irreducible(psi) || !is_regular(psi)) return false;
    if (psi.index_of(r.source.roots[w.gamma]) < 0) return false;
    for (int i : w.psi)
        if (r.image_index[i] == -1 &&
            !detail::proportional(r.source.iroots[i], r.source.iroots[w.gamma]))
            return false;
    return true;
}

inline bool verify_fiber_witness(const Reduction& r, const FiberWitness& w) {
    return verify_table_row(r, r.induced.roots[w.gamma_prime], r.source.roots[w.gamma],
                            w.base_f, w.base_g);
}

inline bool verify_certificate(const Reduction& r, const GoodnessCertificate& c) {
    if (!c.ok) return false;
    for (const auto& w : c.kernel_witnesses)
        if (!verify_kernel_witness(r, w)) return false;
    detail::VerifyContext ctx(r);
    for (const auto& w : c.fiber_witnesses)
        if (!detail::verify_row(ctx, r.induced.roots[w.gamma_prime], r.source.roots[w.gamma],
                                w.base_f, w.base_g))
            return false;
    // completeness: every kernel root and every (core root, fiber) obligation covered
    std::set<int> kcov;
    for (const auto& w : c.kernel_witnesses) kcov.insert(w.gamma);
    for (int g : r.kernel_roots)
        if (!kcov.count(g)) return false;
    std::set<std::tuple<int, int, int>> fcov;
    for (const auto& w : c.fiber_witnesses) fcov.insert({w.f_id, w.gamma_prime, w.gamma});
    const auto& enp = ctx.enp;
    for (const auto& f : enp.sets)
        for (int gp : enp.core(f.id)) {
            auto it = r.fibers.find(gp);
            if (it == r.fibers.end()) continue;
            for (int gamma : it->second)
                if (!fcov.count({f.id, gp, gamma})) return false;
        }
    return true;
}

// ---- JSON certificates ------------------------------------------------------

namespace detail {

inline nlohmann::json vec_json(const RatVec& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& x : v)
        a.push_back({x.numerator().convert_to<long long>(),
                     x.denominator().convert_to<long long>()});
    return a;
}

inline nlohmann::json vecs_json(const std::vector<RatVec>& vs) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& v : vs) a.push_back(vec_json(v));
    return a;
}

}  // namespace detail

inline nlohmann::json certificate_to_json(const Reduction& r, const GoodnessCertificate& c) {
    nlohmann::json j;
    j["reduction"] = r.name;
    j["k"] = c.k;
    j["ok"] = c.ok;
    if (!c.ok) j["failure"] = c.failure;
    j["kernel"] = nlohmann::json::array();
    for (const auto& w : c.kernel_witnesses) {
        std::vector<RatVec> psi;
        for (int i : w.psi) psi.push_back(r.source.roots[i]);
        j["kernel"].push_back({{"gamma", detail::vec_json(r.source.roots[w.gamma])},
                               {"psi", detail::vecs_json(psi)}});
    }
    j["rows"] = nlohmann::json::array();
    for (const auto& w : c.fiber_witnesses)
        j["rows"].push_back({{"gamma_prime", detail::vec_json(r.induced.roots[w.gamma_prime])},
                             {"gamma", detail::vec_json(r.source.roots[w.gamma])},
                             {"base_f", detail::vecs_json(w.base_f)},
                             {"base_g", detail::vecs_json(w.base_g)}});
    return j;
}

// ---- built-in reductions ----------------------------------------------------

namespace detail {

inline RatMat block_sum_map(int dim, const std::vector<std::pair<int, int>>& blocks) {
    RatMat m(blocks.size(), RatVec(dim, Rat(0)));
    for (size_t r = 0; r < blocks.size(); ++r)
        for (int c = blocks[r].first; c < blocks[r].second; ++c) m[r][c] = Rat(1);
    return m;
}

}  // namespace detail

/// (x_1..x_{n+1}) -> (x_1+..+x_i, x_{i+1}+..+x_j, x_{j+1}+..+x_{n+1}).
inline Reduction reduction_A_to_A2(int n, int i, int j) {
    if (n < 2 || i < 1 || i >= j || j > n)
        throw std::invalid_argument("reduction_A_to_A2: need n >= 2, 1 <= i < j <= n");
    auto eta = detail::block_sum_map(n + 1, {{0, i}, {i, j}, {j, n + 1}});
    return apply_reduction(eta, build_classical("A", n),
                           "A" + std::to_string(n) + "->A2");
}

inline Reduction reduction_B_to_B2(int n) {
    if (n < 3) throw std::invalid_argument("reduction_B_to_B2: need n >= 3");
    auto eta = detail::block_sum_map(n, {{0, 1}, {1, 2}});
    return apply_reduction(eta, build_classical("B", n), "B" + std::to_string(n) + "->B2");
}

inline Reduction reduction_D_to_B2(int n) {
    if (n < 3) throw std::invalid_argument("reduction_D_to_B2: need n >= 3");
    auto eta = detail::block_sum_map(n, {{0, 1}, {1, 2}});
    return apply_reduction(eta, build_classical("D", n), "D" + std::to_string(n) + "->B2");
}

inline Reduction reduction_C_to_BC2(int n) {
    if (n < 3) throw std::invalid_argument("reduction_C_to_BC2: need n >= 3");
    auto eta = detail::block_sum_map(n, {{0, 1}, {1, 2}});
    return apply_reduction(eta, build_classical("C", n), "C" + std::to_string(n) + "->BC2");
}

/// ((x_1+..+x_i) - (x_{i+1}+..+x_n), (x_1+..+x_n)) / 2.
inline Reduction reduction_C_to_B2(int n, int i = -1) {
    if (i < 0) i = n - 1;
    if (n < 2 || i < 1 || i >= n)
        throw std::invalid_argument("reduction_C_to_B2: need n >= 2, 1 <= i < n");
    RatMat eta(2, RatVec(n));
    for (int c = 0; c < n; ++c) {
        eta[0][c] = Rat(c < i ? 1 : -1, 2);
        eta[1][c] = Rat(1, 2);
    }
    return apply_reduction(eta, build_classical("C", n), "C" + std::to_string(n) + "->B2");
}

inline Reduction reduction_BC_to_BC2(int n) {
    if (n < 3) throw std::invalid_argument("reduction_BC_to_BC2: need n >= 3");
    auto eta = detail::block_sum_map(n, {{0, 1}, {1, 2}});
    return apply_reduction(eta, build_classical("BC", n),
                           "BC" + std::to_string(n) + "->BC2");
}

/// (x_1 - x_2, x_2 - x_3, x_3 - x_1).
inline Reduction reduction_F4_to_G2() {
    RatMat eta = {{rat(1), rat(-1), rat(0), rat(0)},
                  {rat(0), rat(1), rat(-1), rat(0)},
                  {rat(-1), rat(0), rat(1), rat(0)}};
    return apply_reduction(eta, build_classical("F", 4), "F4->G2");
}

/// Same difference map on the first three coordinates of the E systems.
inline Reduction reduction_E_to_G2(int n) {
    if (n < 6 || n > 8) throw std::invalid_argument("reduction_E_to_G2: need n in {6,7,8}");
    RatMat eta(3, RatVec(8, Rat(0)));
    eta[0][0] = Rat(1);
    eta[0][1] = Rat(-1);
    eta[1][1] = Rat(1);
    eta[1][2] = Rat(-1);
    eta[2][2] = Rat(1);
    eta[2][0] = Rat(-1);
    return apply_reduction(eta, build_classical("E", n), "E" + std::to_string(n) + "->G2");
}

inline Reduction reduction_BC_to_BC3(int n) {
    if (n < 3) throw std::invalid_argument("reduction_BC_to_BC3: need n >= 3");
    auto eta = detail::block_sum_map(n, {{0, 1}, {1, 2}, {2, 3}});
    return apply_reduction(eta, build_classical("BC", n),
                           "BC" + std::to_string(n) + "->BC3");
}

struct ReductionFamily {
    std::string name;
    int k;        // declared goodness
    int min_rank;
    int max_rank;  // 0 = unbounded
    std::function<Reduction(int)> make;
};

inline const std::vector<ReductionFamily>& builtin_families() {
    static const std::vector<ReductionFamily> fams = {
        {"A_n->A2", 2, 2, 0, [](int n) { return reduction_A_to_A2(n, 1, 2); }},
        {"B_n->B2", 2, 3, 0, [](int n) { return reduction_B_to_B2(n); }},
        {"D_n->B2", 2, 3, 0, [](int n) { return reduction_D_to_B2(n); }},
        {"C_n->BC2", 2, 3, 0, [](int n) { return reduction_C_to_BC2(n); }},
        {"C_n->B2", 2, 2, 0, [](int n) { return reduction_C_to_B2(n); }},
        {"BC_n->BC2", 2, 3, 0, [](int n) { return reduction_BC_to_BC2(n); }},
        {"F4->G2", 2, 4, 4, [](int) { return reduction_F4_to_G2(); }},
        {"E_n->G2", 2, 6, 8, [](int n) { return reduction_E_to_G2(n); }},
        {"BC_n->BC3", 3, 3, 0, [](int n) { return reduction_BC_to_BC3(n); }},
    };
    return fams;
}

/// All built-in reductions instantiable at source rank n.
inline std::vector<Reduction> builtin_catalog(int n) {
    std::vector<Reduction> out;
    for (const auto& f : builtin_families())
        if (n >= f.min_rank && (f.max_rank == 0 || n <= f.max_rank)) out.push_back(f.make(n));
    return out;
}

}  // namespace rootgraded
