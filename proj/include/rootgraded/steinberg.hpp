#pragma once

#include <functional>
#include <numeric>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "rootgraded/borel.hpp"
#include "rootgraded/chevalley.hpp"
#include "rootgraded/finitering.hpp"
#include "rootgraded/reduction.hpp"

namespace rootgraded {

// ---- matrices over a finite ring ---------------------------------------------

struct RingMat {
    int n = 0;
    std::vector<int> e;  // row-major ring element indices
    bool operator==(const RingMat&) const = default;
    int at(int i, int j) const { return e[i * n + j]; }
    int& at(int i, int j) { return e[i * n + j]; }
};

struct RingMatHash {
    size_t operator()(const RingMat& m) const {
        size_t h = 1469598103934665603ull;
        for (int v : m.e) {
            h ^= (size_t)(v + 1);
            h *= 1099511628211ull;
        }
        return h;
    }
};

inline RingMat mat_identity(const FiniteRing& R, int n) {
    RingMat m{n, std::vector<int>((size_t)n * n, R.zero)};
    for (int i = 0; i < n; ++i) m.at(i, i) = R.one;
    return m;
}

/// Identity plus r in entry (i, j): the elementary transvection.
inline RingMat mat_elementary(const FiniteRing& R, int n, int i, int j, int r) {
    RingMat m = mat_identity(R, n);
    if (i == j) throw std::invalid_argument("mat_elementary: diagonal entry");
    m.at(i, j) = r;
    return m;
}

inline RingMat mat_mul(const FiniteRing& R, const RingMat& x, const RingMat& y) {
    int n = x.n;
    RingMat out{n, std::vector<int>((size_t)n * n, R.zero)};
    const int* mul = R.mul.data();
    const int* add = R.add.data();
    int s = R.size;
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            int xik = x.e[i * n + k];
            if (xik == R.zero) continue;
            const int* mrow = mul + (size_t)xik * s;
            for (int j = 0; j < n; ++j) {
                int p = mrow[y.e[k * n + j]];
                int& o = out.e[i * n + j];
                o = add[(size_t)o * s + p];
            }
        }
    return out;
}

/// Inverse of a finite-order matrix via its multiplicative order.
inline RingMat mat_inverse(const FiniteRing& R, const RingMat& x, size_t order_cap = 1 << 20) {
    RingMat id = mat_identity(R, x.n);
    if (x == id) return id;
    RingMat prev = x, cur = mat_mul(R, x, x);
    for (size_t i = 0; i < order_cap; ++i) {
        if (cur == id) return prev;
        prev = cur;
        cur = mat_mul(R, cur, x);
    }
    throw std::logic_error("mat_inverse: element order exceeds the cap");
}

inline RingMat mat_conjugate(const FiniteRing& R, const RingMat& g, const RingMat& x) {
    return mat_mul(R, mat_mul(R, mat_inverse(R, g), x), g);
}

/// Group commutator g^{-1} h^{-1} g h.
inline RingMat mat_commutator(const FiniteRing& R, const RingMat& g, const RingMat& h) {
    return mat_mul(R, mat_mul(R, mat_inverse(R, g), mat_inverse(R, h)), mat_mul(R, g, h));
}

struct ClosureResult {
    bool complete = false;
    std::vector<RingMat> elements;  // BFS order starting at the identity
};

/// Breadth-first closure under right multiplication by the generators; exact
/// when it stays below the cap, otherwise an overflow result with the partial
/// set (complete == false).
inline ClosureResult subgroup_closure(const FiniteRing& R, const std::vector<RingMat>& gens,
                                      size_t cap = 2'000'000) {
    ClosureResult out;
    if (gens.empty()) return out;
    int n = gens[0].n;
    std::unordered_set<RingMat, RingMatHash> seen;
    out.elements.push_back(mat_identity(R, n));
    seen.insert(out.elements[0]);
    for (size_t head = 0; head < out.elements.size(); ++head) {
        RingMat g = out.elements[head];
        for (const auto& s : gens) {
            RingMat h = mat_mul(R, g, s);
            if (seen.insert(h).second) {
                if (out.elements.size() >= cap) return out;  // overflow: complete stays false
                out.elements.push_back(std::move(h));
            }
        }
    }
    out.complete = true;
    return out;
}

/// Greedy small generating subset of a (small) finite matrix group.
inline std::vector<RingMat> reduced_generators(const FiniteRing& R,
                                               const std::vector<RingMat>& elements) {
    std::vector<RingMat> gens;
    std::unordered_set<RingMat, RingMatHash> covered;
    if (elements.empty()) return gens;
    covered.insert(mat_identity(R, elements[0].n));
    for (const auto& e : elements) {
        if (covered.count(e)) continue;
        gens.push_back(e);
        auto cl = subgroup_closure(R, gens, elements.size() * 4 + 16);
        covered.clear();
        covered.insert(cl.elements.begin(), cl.elements.end());
    }
    return gens;
}

// ---- graded group models -------------------------------------------------------

struct RootSubgroup {
    std::vector<RingMat> elements;               // the full subgroup, identity included
    std::map<std::vector<int>, size_t> by_param; // canonical parameter -> element index
};

/// A group graded by a root system, realized by explicit matrices over a
/// finite ring: one finite subgroup per root.
struct GradedGroupModel {
    std::string name;
    RootSystem phi;
    FiniteRing ring;
    int dim = 0;  // ambient matrix dimension
    std::vector<RootSubgroup> subgroups;

    const RingMat& element(int root, const std::vector<int>& param) const {
        const auto& sg = subgroups[root];
        auto it = sg.by_param.find(param);
        if (it == sg.by_param.end())
            throw std::invalid_argument(name + ": no element with the requested parameter");
        return sg.elements[it->second];
    }
    bool has_param(int root, const std::vector<int>& param) const {
        return subgroups[root].by_param.count(param) > 0;
    }
};

namespace detail {

inline std::string render_root(const RootSystem& phi, int idx) {
    std::string s = "(";
    for (size_t d = 0; d < phi.dim; ++d) s += (d ? " " : "") + to_string(phi.roots[idx][d]);
    return s + ")";
}

inline bool rat_proportional(const RatVec& u, const RatVec& v) {
    for (size_t i = 0; i < u.size(); ++i)
        for (size_t j = i + 1; j < u.size(); ++j)
            if (u[i] * v[j] != u[j] * v[i]) return false;
    return true;
}

inline bool negative_multiple(const RatVec& u, const RatVec& v) {
    return rat_proportional(u, v) && dot(u, v) < Rat(0);
}

/// Small generating set of the union of the listed root subgroups.
inline std::vector<RingMat> model_generators(const GradedGroupModel& m,
                                             const std::vector<int>& roots) {
    std::vector<RingMat> gens;
    for (int r : roots)
        for (const auto& g : reduced_generators(m.ring, m.subgroups[r].elements))
            gens.push_back(g);
    return gens;
}

/// Closure as a set, always containing the identity (even for no generators).
inline std::unordered_set<RingMat, RingMatHash> closed_set(const FiniteRing& R, int dim,
                                                           const std::vector<RingMat>& gens,
                                                           size_t cap, const char* what) {
    std::unordered_set<RingMat, RingMatHash> out;
    out.insert(mat_identity(R, dim));
    if (gens.empty()) return out;
    auto cl = subgroup_closure(R, gens, cap);
    if (!cl.complete) throw std::logic_error(std::string(what) + ": closure overflow");
    out.insert(cl.elements.begin(), cl.elements.end());
    return out;
}

}  // namespace detail

/// Checks that every root subgroup is closed under products (a finite set of
/// invertible matrices closed under products is a group). Throws on failure.
inline void verify_root_subgroups(const GradedGroupModel& m) {
    for (size_t r = 0; r < m.subgroups.size(); ++r) {
        const auto& els = m.subgroups[r].elements;
        std::unordered_set<RingMat, RingMatHash> set(els.begin(), els.end());
        if (set.size() != els.size())
            throw std::logic_error(m.name + ": duplicate elements in X_" +
                                   detail::render_root(m.phi, (int)r));
        if (!set.count(mat_identity(m.ring, m.dim)))
            throw std::logic_error(m.name + ": identity missing from X_" +
                                   detail::render_root(m.phi, (int)r));
        for (const auto& x : els)
            for (const auto& y : els)
                if (!set.count(mat_mul(m.ring, x, y)))
                    throw std::logic_error(m.name + ": X_" + detail::render_root(m.phi, (int)r) +
                                           " is not closed under products");
    }
}

/// Grading condition: for alpha not a negative multiple of beta, every
/// commutator [X_alpha, X_beta] lies in the subgroup generated by the root
/// subgroups on the open cone a*alpha + b*beta (a, b >= 1). Exhaustive over
/// generator pairs.
inline bool verify_grading(const GradedGroupModel& m, std::string* failure = nullptr) {
    const auto& phi = m.phi;
    size_t nr = phi.roots.size();
    std::vector<std::vector<RingMat>> inverses(nr);
    for (size_t r = 0; r < nr; ++r)
        for (const auto& x : m.subgroups[r].elements)
            inverses[r].push_back(mat_inverse(m.ring, x));
    std::map<std::pair<int, int>, std::unordered_set<RingMat, RingMatHash>> target_cache;
    for (size_t a = 0; a < nr; ++a)
        for (size_t b = 0; b < nr; ++b) {
            if (detail::negative_multiple(phi.roots[a], phi.roots[b])) continue;
            auto key = std::minmax((int)a, (int)b);
            auto it = target_cache.find(key);
            if (it == target_cache.end()) {
                std::vector<int> cone;
                for (int i = 1; i <= 5; ++i)
                    for (int j = 1; j <= 5; ++j) {
                        int idx = phi.index_of(Rat(i) * phi.roots[a] + Rat(j) * phi.roots[b]);
                        if (idx >= 0 && std::find(cone.begin(), cone.end(), idx) == cone.end())
                            cone.push_back(idx);
                    }
                auto set = detail::closed_set(m.ring, m.dim, detail::model_generators(m, cone),
                                              2'000'000, "verify_grading");
                it = target_cache.emplace(key, std::move(set)).first;
            }
            const auto& target = it->second;
            const auto& xa = m.subgroups[a].elements;
            const auto& xb = m.subgroups[b].elements;
            for (size_t i = 0; i < xa.size(); ++i)
                for (size_t j = 0; j < xb.size(); ++j) {
                    RingMat c = mat_mul(m.ring, mat_mul(m.ring, inverses[a][i], inverses[b][j]),
                                        mat_mul(m.ring, xa[i], xb[j]));
                    if (!target.count(c)) {
                        if (failure)
                            *failure = "[X_" + detail::render_root(phi, (int)a) + ", X_" +
                                       detail::render_root(phi, (int)b) +
                                       "] leaves the cone subgroup";
                        return false;
                    }
                }
        }
    return true;
}

// ---- elementary Chevalley models -----------------------------------------------

/// The Chevalley basis used for all matrix models: sign-normalized for rank 2
/// so the fixed rank-2 relation catalog holds verbatim.
inline StructureConstantTable model_chevalley_table(const RootSystem& phi) {
    auto t = chevalley_basis(phi);
    if (t.rank() == 2) return normalize_rank2_signs(std::move(t));
    return t;
}

namespace detail {

/// Specializes an integral one-variable polynomial matrix at a ring element.
inline RingMat specialize(const FiniteRing& R, const PolyMat& m, int r) {
    int n = (int)m.size();
    RingMat out{n, std::vector<int>((size_t)n * n, R.zero)};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int v = R.zero;
            for (const auto& [mono, c] : m[i][j].terms()) {
                if (c.denominator() != Int(1))
                    throw std::logic_error("specialize: non-integral coefficient");
                int term = R.m(R.of_integer(c.numerator().convert_to<long long>()),
                               R.pow(r, mono.empty() ? 0 : mono[0]));
                v = R.a(v, term);
            }
            out.e[i * n + j] = v;
        }
    return out;
}

}  // namespace detail

/// The adjoint elementary Chevalley group over a commutative finite ring:
/// X_alpha(r) specializes the integral adjoint exponential at t = r.
inline GradedGroupModel elementary_chevalley_model(const RootSystem& phi, const FiniteRing& R) {
    if (!R.is_commutative())
        throw std::invalid_argument("elementary_chevalley_model: ring must be commutative");
    auto t = model_chevalley_table(phi);
    GradedGroupModel m;
    m.name = phi.label + "(" + R.name + ")";
    m.phi = t.system();
    m.ring = R;
    m.dim = (int)t.dimension();
    m.subgroups.resize(m.phi.roots.size());
    for (size_t a = 0; a < m.phi.roots.size(); ++a) {
        PolyMat exp = adjoint_exponential(t, (int)a, 0, 1);
        for (int r = 0; r < R.size; ++r) {
            m.subgroups[a].by_param[{r}] = m.subgroups[a].elements.size();
            m.subgroups[a].elements.push_back(detail::specialize(R, exp, r));
        }
    }
    verify_root_subgroups(m);
    std::string why;
    if (!verify_grading(m, &why)) throw std::logic_error(m.name + ": " + why);
    return m;
}

// ---- strongness -----------------------------------------------------------------

/// Strong at (gamma, f): X_gamma lies in the subgroup generated by the root
/// subgroups of the Borel set that are off the line of gamma.
inline bool check_strong(const GradedGroupModel& m, int gamma, const BorelEnumeration& en,
                         int borel_id) {
    const auto& set = en.set(borel_id);
    auto core = en.core(borel_id);
    if (std::find(core.begin(), core.end(), gamma) == core.end())
        throw std::invalid_argument("check_strong: root is not in the core of the Borel set");
    std::vector<int> off_line;
    for (int b : set.positives)
        if (!detail::rat_proportional(m.phi.roots[b], m.phi.roots[gamma])) off_line.push_back(b);
    auto have = detail::closed_set(m.ring, m.dim, detail::model_generators(m, off_line),
                                   2'000'000, "check_strong");
    for (const auto& x : m.subgroups[gamma].elements)
        if (!have.count(x)) return false;
    return true;
}

struct StrongReport {
    int borel_id = -1;
    int root = -1;
    bool ok = false;
};

inline std::vector<StrongReport> check_strong_all(const GradedGroupModel& m) {
    auto en = enumerate_borel_sets(m.phi);
    std::vector<StrongReport> out;
    for (size_t id = 0; id < en.size(); ++id)
        for (int gamma : en.core((int)id))
            out.push_back({(int)id, gamma, check_strong(m, gamma, en, (int)id)});
    return out;
}

// ---- standard generators ---------------------------------------------------------

/// All products of distinct elements of T in index order (T must contain 1, so
/// this set contains 1 and T itself).
inline std::vector<int> star_closure(const FiniteRing& R, const std::vector<int>& T) {
    std::set<int> out;
    size_t n = T.size();
    if (n > 20) throw std::invalid_argument("star_closure: generating set too large");
    for (size_t mask = 1; mask < (size_t(1) << n); ++mask) {
        int p = R.one;
        for (size_t i = 0; i < n; ++i)
            if (mask >> i & 1) p = R.m(p, T[i]);
        out.insert(p);
    }
    return std::vector<int>(out.begin(), out.end());
}

struct StandardGenerator {
    int root = -1;
    int param = 0;
    RingMat mat;
};

/// The standard generating set: x_alpha(t) with t running over T everywhere,
/// except that long roots of B2/C_n and short roots of G2 use the products of
/// distinct elements of T.
inline std::vector<StandardGenerator> standard_generators(const GradedGroupModel& m,
                                                          const std::vector<int>& T) {
    if (T.empty() || T[0] != m.ring.one)
        throw std::invalid_argument("standard_generators: T must start with 1");
    char family = m.phi.label.empty() ? '?' : m.phi.label[0];
    size_t rank = m.phi.rank();
    auto classes = length_classes(m.phi);
    bool twisted_long = (family == 'C') || (family == 'B' && rank == 2);
    bool twisted_short = family == 'G';
    std::vector<int> tstar = star_closure(m.ring, T);
    std::vector<StandardGenerator> out;
    for (size_t a = 0; a < m.phi.roots.size(); ++a) {
        bool use_star = (twisted_long && classes[a] == LengthClass::Long) ||
                        (twisted_short && classes[a] == LengthClass::Short);
        const std::vector<int>& dom = use_star ? tstar : T;
        for (int t : dom) out.push_back({(int)a, t, m.element((int)a, {t})});
    }
    return out;
}

/// Closure equality of the generated subgroup against the full model group.
inline bool verify_generation(const GradedGroupModel& m, const std::vector<StandardGenerator>& g,
                              size_t cap = 2'000'000) {
    std::vector<int> all(m.phi.roots.size());
    std::iota(all.begin(), all.end(), 0);
    auto full = subgroup_closure(m.ring, detail::model_generators(m, all), cap);
    if (!full.complete) throw std::logic_error("verify_generation: full closure overflow");
    std::vector<RingMat> gens;
    for (const auto& s : g) gens.push_back(s.mat);
    auto sub = subgroup_closure(m.ring, gens, cap);
    if (!sub.complete) throw std::logic_error("verify_generation: generated closure overflow");
    if (sub.elements.size() != full.elements.size()) return false;
    std::unordered_set<RingMat, RingMatHash> have(full.elements.begin(), full.elements.end());
    for (const auto& e : sub.elements)
        if (!have.count(e)) return false;
    return true;
}

// ---- named identities ------------------------------------------------------------

struct IdentityReport {
    std::string name;
    bool passed = false;
    std::string witness;  // first failing tuple, or a note on coverage
};

inline nlohmann::json reports_to_json(const std::vector<IdentityReport>& reports) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : reports)
        out.push_back({{"name", r.name}, {"passed", r.passed}, {"witness", r.witness}});
    return out;
}

namespace detail {

inline PolyMat poly_commutator(const StructureConstantTable& t, int a, const Poly& x, int b,
                               const Poly& y) {
    return adjoint_exponential_at(t, a, -x) * adjoint_exponential_at(t, b, -y) *
           adjoint_exponential_at(t, a, x) * adjoint_exponential_at(t, b, y);
}

}  // namespace detail

/// The catalog of one-variable-family identities used to bootstrap generation
/// in the B2 unipotent, checked as exact polynomial-matrix identities over
/// Z[m1, m2] in the sign-normalized adjoint representation.
inline std::vector<IdentityReport> verify_named_identities() {
    auto t = model_chevalley_table(build_classical("B", 2));
    const auto& phi = t.system();
    auto [al, be] = detail::rank2_simple_pair(t);
    auto at = [&](int i, int j) {
        return phi.index_of(Rat(i) * phi.roots[al] + Rat(j) * phi.roots[be]);
    };
    int ab = at(1, 1), a2b = at(1, 2), nal = t.negative_of(al);
    Poly m1 = Poly::variable(2, 0), m2 = Poly::variable(2, 1);
    Poly one = Poly::constant(2, Rat(1));
    auto exp = [&](int root, const Poly& arg) { return adjoint_exponential_at(t, root, arg); };
    std::vector<IdentityReport> out;
    auto check = [&](const std::string& name, const PolyMat& lhs, const PolyMat& rhs) {
        out.push_back({name, lhs == rhs, ""});
    };
    check("x_{a+2b}(t^2) = [x_a(1), x_b(t)] x_{a+b}(-t)", exp(a2b, m1 * m1),
          detail::poly_commutator(t, al, one, be, m1) * exp(ab, -m1));
    check("x_{a+2b}(m1 m2^2) = [x_a(m1), x_b(m2)] x_{a+b}(-m1 m2)", exp(a2b, m1 * m2 * m2),
          detail::poly_commutator(t, al, m1, be, m2) * exp(ab, -(m1 * m2)));
    check("x_{a+b}(m1) = [x_a(m1), x_b(1)] x_{a+2b}(-m1)", exp(ab, m1),
          detail::poly_commutator(t, al, m1, be, one) * exp(a2b, -m1));
    check("x_{a+b}(m2^2 m1) = [x_a(m2^2), x_b(m1)] [x_a(-1), x_b(m2 m1)] x_{a+b}(m2 m1)",
          exp(ab, m2 * m2 * m1),
          detail::poly_commutator(t, al, m2 * m2, be, m1) *
              detail::poly_commutator(t, al, -one, be, m2 * m1) * exp(ab, m2 * m1));
    check("x_b(m1 m2) = [x_{-a}(m1), x_{a+b}(m2)] x_{a+2b}(m1 m2^2)", exp(be, m1 * m2),
          detail::poly_commutator(t, nal, m1, ab, m2) * exp(a2b, m1 * m2 * m2));
    return out;
}

/// Bounded generation of the doubled short-root image in G2 over a concrete
/// finite ring: for every r, [x_a(r), x_b(2)] [x_a(2r), x_b(1)]^{-1} factors as
/// x_{a+2b}(s) x_{a+3b}(u) x_{2a+3b}(v) with s in 2R, and the s values exhaust 2R.
inline IdentityReport g2_bounded_generation(const FiniteRing& R) {
    auto m = elementary_chevalley_model(build_classical("G", 2), R);
    auto t = model_chevalley_table(m.phi);
    auto [al, be] = detail::rank2_simple_pair(t);
    const auto& phi = m.phi;
    auto at = [&](int i, int j) {
        return phi.index_of(Rat(i) * phi.roots[al] + Rat(j) * phi.roots[be]);
    };
    int a2b = at(1, 2), a3b = at(1, 3), d2a3b = at(2, 3);
    int two = R.of_integer(2);
    std::set<int> two_r, found;
    for (int r = 0; r < R.size; ++r) two_r.insert(R.m(two, r));
    IdentityReport rep{"G2 short-root image in a bounded product of long-root subgroups over " +
                           R.name,
                       true, ""};
    for (int r = 0; r < R.size; ++r) {
        RingMat lhs = mat_mul(
            R, mat_commutator(R, m.element(al, {r}), m.element(be, {two})),
            mat_inverse(R, mat_commutator(R, m.element(al, {R.m(two, r)}), m.element(be, {R.one}))));
        bool decomposed = false;
        for (int s : two_r) {
            RingMat left = m.element(a2b, {s});
            for (int u = 0; u < R.size && !decomposed; ++u) {
                RingMat lu = mat_mul(R, left, m.element(a3b, {u}));
                for (int v = 0; v < R.size; ++v)
                    if (mat_mul(R, lu, m.element(d2a3b, {v})) == lhs) {
                        decomposed = true;
                        found.insert(s);
                        break;
                    }
            }
            if (decomposed) break;
        }
        if (!decomposed) {
            rep.passed = false;
            rep.witness = "no factorization at r = " + std::to_string(r);
            return rep;
        }
    }
    if (found != two_r) {
        rep.passed = false;
        rep.witness = "the x_{a+2b} components do not exhaust 2R";
    } else {
        rep.witness = "checked " + std::to_string(R.size) + " parameters";
    }
    return rep;
}

// ---- form parameters --------------------------------------------------------------

/// Sym_{-omega}(R) = { r : r* omega = -r }.
inline std::vector<int> sym_elements(const FiniteRing& R, int omega) {
    std::vector<int> out;
    for (int r = 0; r < R.size; ++r)
        if (R.m(R.star(r), omega) == R.n(r)) out.push_back(r);
    return out;
}

/// Sym^min_{-omega}(R) = { r - r* omega : r in R }.
inline std::vector<int> sym_min_elements(const FiniteRing& R, int omega) {
    std::set<int> out;
    for (int r = 0; r < R.size; ++r) out.insert(R.sub(r, R.m(R.star(r), omega)));
    return std::vector<int>(out.begin(), out.end());
}

struct FormParameter {
    int omega = 0;
    std::vector<int> elements;  // sorted
};

inline bool is_form_parameter(const FiniteRing& R, int omega, const std::vector<int>& J) {
    std::set<int> j(J.begin(), J.end());
    std::set<int> sym;
    for (int s : sym_elements(R, omega)) sym.insert(s);
    for (int s : sym_min_elements(R, omega))
        if (!j.count(s)) return false;
    for (int u : J) {
        if (!sym.count(u)) return false;
        for (int v : J)
            if (!j.count(R.a(u, v))) return false;
        for (int s = 0; s < R.size; ++s)
            if (!j.count(R.m(R.m(R.star(s), u), s))) return false;
    }
    return true;
}

/// Smallest form parameter containing A: fixed-point closure under addition
/// and the twists s* u s.
inline FormParameter form_parameter_closure(const FiniteRing& R, int omega,
                                            const std::vector<int>& A) {
    std::vector<int> sym_list = sym_elements(R, omega);
    std::set<int> sym(sym_list.begin(), sym_list.end());
    for (int a : A)
        if (!sym.count(a))
            throw std::invalid_argument("form_parameter_closure: generator outside Sym_{-omega}");
    std::set<int> J;
    for (int s : sym_min_elements(R, omega)) J.insert(s);
    for (int a : A) J.insert(a);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<int> cur(J.begin(), J.end());
        for (int u : cur) {
            for (int v : cur)
                if (J.insert(R.a(u, v)).second) grew = true;
            for (int s = 0; s < R.size; ++s)
                if (J.insert(R.m(R.m(R.star(s), u), s)).second) grew = true;
        }
    }
    return {omega, std::vector<int>(J.begin(), J.end())};
}

/// The one-term-per-generator normal form: all sums of one twist per generator
/// plus an element of Sym^min.
inline std::vector<int> form_parameter_normal_form(const FiniteRing& R, int omega,
                                                   const std::vector<int>& A) {
    long long total = R.size;
    for (size_t i = 0; i < A.size(); ++i) {
        total *= R.size;
        if (total > 1'000'000)
            throw std::invalid_argument("form_parameter_normal_form: too many combinations");
    }
    std::set<int> out;
    for (long long idx = 0; idx < total; ++idx) {
        long long v = idx;
        int x = 0;
        for (int a : A) {
            int s = (int)(v % R.size);
            v /= R.size;
            x = R.a(x, R.m(R.m(s, a), R.star(s)));
        }
        int r = (int)(v % R.size);
        x = R.a(x, R.sub(r, R.m(R.star(r), omega)));
        out.insert(x);
    }
    return std::vector<int>(out.begin(), out.end());
}

// ---- hyperbolic unitary models ------------------------------------------------------

namespace detail {

struct UnitaryIndices {
    int i = 0, j = 0;  // 1-based, i < j where applicable
    enum Kind { ShortDiff, ShortSum, ShortSumNeg, Long, LongNeg, Half, HalfNeg, Double, DoubleNeg };
    Kind kind = ShortDiff;
    bool swapped = false;  // ShortDiff with the larger index first (i > j formula)
};

/// Classifies a C_n / BC_n root vector into the standard (i, j) description.
inline UnitaryIndices classify_unitary_root(const RatVec& v) {
    UnitaryIndices u;
    std::vector<std::pair<int, int>> nz;  // (1-based index, integer value)
    for (size_t d = 0; d < v.size(); ++d) {
        if (v[d] == Rat(0)) continue;
        nz.push_back({(int)d + 1, (int)v[d].numerator().convert_to<long long>()});
    }
    if (nz.size() == 1) {
        u.i = nz[0].first;
        int val = nz[0].second;
        if (val == 2) u.kind = UnitaryIndices::Double;
        else if (val == -2) u.kind = UnitaryIndices::DoubleNeg;
        else if (val == 1) u.kind = UnitaryIndices::Half;
        else u.kind = UnitaryIndices::HalfNeg;
        return u;
    }
    auto [i, vi] = nz[0];
    auto [j, vj] = nz[1];
    u.i = i;
    u.j = j;
    if (vi == 1 && vj == -1) u.kind = UnitaryIndices::ShortDiff;
    else if (vi == -1 && vj == 1) {
        u.kind = UnitaryIndices::ShortDiff;
        u.swapped = true;
    } else if (vi == 1 && vj == 1)
        u.kind = UnitaryIndices::ShortSum;
    else
        u.kind = UnitaryIndices::ShortSumNeg;
    return u;
}

}  // namespace detail

/// The hyperbolic unitary group graded by C_n: fixed points of the form-
/// preserving twist inside E_{2n}(R), realized by the explicit 2n x 2n
/// products of elementary matrices. Long root subgroups run over the form
/// parameter J (default Sym_{-omega}(R)).
inline GradedGroupModel unitary_steinberg_model(int n, const FiniteRing& R, int omega,
                                                const std::vector<int>& J_in = {}) {
    if (n < 2) throw std::invalid_argument("unitary_steinberg_model: need n >= 2");
    if (!R.has_involution())
        throw std::invalid_argument("unitary_steinberg_model: ring has no involution");
    auto center = R.center();
    if (!R.is_unit(omega) ||
        std::find(center.begin(), center.end(), omega) == center.end() ||
        R.m(omega, R.star(omega)) != R.one)
        throw std::invalid_argument(
            "unitary_steinberg_model: omega must be a central unit with omega omega* = 1");
    std::vector<int> J = J_in.empty() ? sym_elements(R, omega) : J_in;
    if (!is_form_parameter(R, omega, J))
        throw std::invalid_argument("unitary_steinberg_model: J is not a form parameter");
    GradedGroupModel m;
    m.phi = build_classical("C", n);
    m.ring = R;
    m.dim = 2 * n;
    m.name = "StC" + std::to_string(n) + "(" + R.name + ")";
    m.subgroups.resize(m.phi.roots.size());
    int ostar = R.star(omega);
    auto bar = [n](int i) { return 2 * n + 1 - i; };  // 1-based
    auto E = [&](int a, int b, int r) { return mat_elementary(R, 2 * n, a - 1, b - 1, r); };
    for (size_t idx = 0; idx < m.phi.roots.size(); ++idx) {
        auto u = detail::classify_unitary_root(m.phi.roots[idx]);
        auto& sg = m.subgroups[idx];
        auto push = [&](int r, RingMat mat) {
            sg.by_param[{r}] = sg.elements.size();
            sg.elements.push_back(std::move(mat));
        };
        switch (u.kind) {
            case detail::UnitaryIndices::ShortDiff: {
                int i = u.swapped ? u.j : u.i, j = u.swapped ? u.i : u.j;
                // z_{e_i - e_j}
                for (int r = 0; r < R.size; ++r) {
                    RingMat mat =
                        i < j ? mat_mul(R, E(i, j, r), E(bar(j), bar(i), R.n(R.star(r))))
                              : mat_mul(R, E(i, j, R.n(R.star(r))), E(bar(j), bar(i), r));
                    push(r, std::move(mat));
                }
                break;
            }
            case detail::UnitaryIndices::ShortSum:
                for (int r = 0; r < R.size; ++r)
                    push(r, mat_mul(R, E(u.i, bar(u.j), r),
                                    E(u.j, bar(u.i), R.n(R.m(omega, R.star(r))))));
                break;
            case detail::UnitaryIndices::ShortSumNeg:
                for (int r = 0; r < R.size; ++r)
                    push(r, mat_mul(R, E(bar(u.j), u.i, R.n(R.star(r))),
                                    E(bar(u.i), u.j, R.m(ostar, r))));
                break;
            case detail::UnitaryIndices::Double:
                for (int r : J) push(r, E(u.i, bar(u.i), r));
                break;
            case detail::UnitaryIndices::DoubleNeg:
                for (int r : J) push(r, E(bar(u.i), u.i, R.n(R.star(r))));
                break;
            default:
                throw std::logic_error("unitary_steinberg_model: unexpected root shape");
        }
    }
    verify_root_subgroups(m);
    std::string why;
    if (!verify_grading(m, &why)) throw std::logic_error(m.name + ": " + why);
    return m;
}

/// The odd-dimensional unitary group graded by BC_n inside E_{2n+1}(R):
/// short root subgroups are the non-abelian pairs (r, t) with r r* = t + t*,
/// double roots the central slice r = 0.
inline GradedGroupModel odd_unitary_model(int n, const FiniteRing& R,
                                          const std::vector<int>& I_in = {}) {
    if (n < 2) throw std::invalid_argument("odd_unitary_model: need n >= 2");
    if (!R.has_involution())
        throw std::invalid_argument("odd_unitary_model: ring has no involution");
    std::vector<int> I(I_in);
    if (I.empty())
        for (int r = 0; r < R.size; ++r) I.push_back(r);
    GradedGroupModel m;
    m.phi = build_classical("BC", n);
    m.ring = R;
    m.dim = 2 * n + 1;
    m.name = "StBC" + std::to_string(n) + "(" + R.name + ")";
    m.subgroups.resize(m.phi.roots.size());
    int mid = n + 1;
    auto bar = [n](int i) { return 2 * n + 2 - i; };  // 1-based
    auto E = [&](int a, int b, int r) { return mat_elementary(R, 2 * n + 1, a - 1, b - 1, r); };
    std::set<int> ideal(I.begin(), I.end());
    for (size_t idx = 0; idx < m.phi.roots.size(); ++idx) {
        auto u = detail::classify_unitary_root(m.phi.roots[idx]);
        auto& sg = m.subgroups[idx];
        auto push = [&](std::vector<int> key, RingMat mat) {
            sg.by_param[std::move(key)] = sg.elements.size();
            sg.elements.push_back(std::move(mat));
        };
        switch (u.kind) {
            case detail::UnitaryIndices::ShortDiff: {
                int i = u.swapped ? u.j : u.i, j = u.swapped ? u.i : u.j;
                for (int r = 0; r < R.size; ++r) {
                    RingMat mat =
                        i < j ? mat_mul(R, E(i, j, r), E(bar(j), bar(i), R.n(R.star(r))))
                              : mat_mul(R, E(i, j, R.n(R.star(r))), E(bar(j), bar(i), r));
                    push({r}, std::move(mat));
                }
                break;
            }
            case detail::UnitaryIndices::ShortSum:
                for (int r = 0; r < R.size; ++r)
                    push({r}, mat_mul(R, E(u.i, bar(u.j), r), E(u.j, bar(u.i), R.n(R.star(r)))));
                break;
            case detail::UnitaryIndices::ShortSumNeg:
                for (int r = 0; r < R.size; ++r)
                    push({r}, mat_mul(R, E(bar(u.j), u.i, R.n(R.star(r))), E(bar(u.i), u.j, r)));
                break;
            case detail::UnitaryIndices::Half:
                for (int r = 0; r < R.size; ++r) {
                    if (!ideal.count(r)) continue;
                    for (int t = 0; t < R.size; ++t)
                        if (R.m(r, R.star(r)) == R.a(t, R.star(t)))
                            push({r, t},
                                 mat_mul(R, mat_mul(R, E(u.i, mid, r),
                                                    E(mid, bar(u.i), R.n(R.star(r)))),
                                         E(u.i, bar(u.i), t)));
                }
                break;
            case detail::UnitaryIndices::HalfNeg:
                for (int r = 0; r < R.size; ++r) {
                    if (!ideal.count(r)) continue;
                    for (int t = 0; t < R.size; ++t)
                        if (R.m(r, R.star(r)) == R.a(t, R.star(t)))
                            push({r, t},
                                 mat_mul(R, mat_mul(R, E(mid, u.i, R.n(R.star(r))),
                                                    E(bar(u.i), mid, r)),
                                         E(bar(u.i), u.i, R.n(R.star(t)))));
                }
                break;
            case detail::UnitaryIndices::Double:
                for (int t = 0; t < R.size; ++t)
                    if (R.a(t, R.star(t)) == R.zero) push({t}, E(u.i, bar(u.i), t));
                break;
            case detail::UnitaryIndices::DoubleNeg:
                for (int t = 0; t < R.size; ++t)
                    if (R.a(t, R.star(t)) == R.zero)
                        push({t}, E(bar(u.i), u.i, R.n(R.star(t))));
                break;
        }
    }
    verify_root_subgroups(m);
    std::string why;
    if (!verify_grading(m, &why)) throw std::logic_error(m.name + ": " + why);
    return m;
}

/// Fattening: each root subgroup absorbs the subgroups of its positive
/// multiples (only meaningful for non-reduced systems).
inline GradedGroupModel fattened(const GradedGroupModel& m) {
    GradedGroupModel out = m;
    for (size_t a = 0; a < m.phi.roots.size(); ++a) {
        std::vector<int> line;
        for (int k = 1; k <= 4; ++k) {
            int idx = m.phi.index_of(Rat(k) * m.phi.roots[a]);
            if (idx >= 0) line.push_back(idx);
        }
        auto gens = detail::model_generators(m, line);
        out.subgroups[a].by_param.clear();
        if (gens.empty()) {
            out.subgroups[a].elements = {mat_identity(m.ring, m.dim)};
            continue;
        }
        auto cl = subgroup_closure(m.ring, gens);
        if (!cl.complete) throw std::logic_error("fattened: closure overflow");
        out.subgroups[a].elements = cl.elements;
    }
    std::string why;
    if (!verify_grading(out, &why)) throw std::logic_error("fattened: " + why);
    return out;
}

// ---- relation verification for the unitary models -----------------------------------

namespace detail {

/// Indices to test: the full range when small, otherwise a fixed-seed sample.
inline std::vector<long long> test_indices(long long total, long long exhaustive_cap,
                                           long long samples, uint64_t seed) {
    std::vector<long long> out;
    if (total <= exhaustive_cap) {
        for (long long i = 0; i < total; ++i) out.push_back(i);
    } else {
        uint64_t state = seed * 2862933555777941757ull + 3037000493ull;
        for (long long i = 0; i < samples; ++i) {
            state = state * 6364136223846793005ull + 1442695040888963407ull;
            out.push_back((long long)(state % (uint64_t)total));
        }
    }
    return out;
}

}  // namespace detail

/// Exhaustive (or sampled, above the cap) verification of the displayed
/// commutation relations between the positive root subgroups of the C_n
/// unitary model.
inline std::vector<IdentityReport> verify_unitary_relations(const GradedGroupModel& m, int omega,
                                                            uint64_t seed = 1,
                                                            long long exhaustive_cap = 4096,
                                                            long long samples = 1000) {
    const FiniteRing& R = m.ring;
    int n = (int)m.phi.dim;
    auto root = [&](const RatVec& v) {
        int idx = m.phi.index_of(v);
        if (idx < 0) throw std::logic_error("verify_unitary_relations: missing root");
        return idx;
    };
    auto eps = [&](int i, int sign_i, int j, int sign_j) {
        RatVec v(n, Rat(0));
        v[i - 1] += Rat(sign_i);
        if (j) v[j - 1] += Rat(sign_j);
        return v;
    };
    std::vector<int> sym = sym_elements(R, omega);
    auto z = [&](int r_idx, int param) { return m.element(r_idx, {param}); };
    std::vector<IdentityReport> out;
    auto run = [&](const std::string& name, long long total,
                   const std::function<bool(long long, std::string&)>& check) {
        IdentityReport rep{name, true, ""};
        long long tested = 0;
        for (long long idx : detail::test_indices(total, exhaustive_cap, samples, seed)) {
            std::string w;
            ++tested;
            if (!check(idx, w)) {
                rep.passed = false;
                rep.witness = w;
                break;
            }
        }
        if (rep.passed)
            rep.witness = "checked " + std::to_string(tested) + " of " + std::to_string(total) +
                          " tuples";
        out.push_back(rep);
    };
    // (E1) [z_{ei-ej}(r), z_{ej-ek}(s)] = z_{ei-ek}(rs), i < j < k
    {
        long long combos = 0;
        std::vector<std::array<int, 3>> triples;
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                for (int k = j + 1; k <= n; ++k) triples.push_back({i, j, k});
        combos = (long long)triples.size() * R.size * R.size;
        run("E1", combos, [&](long long idx, std::string& w) {
            auto [i, j, k] = triples[idx / ((long long)R.size * R.size)];
            int r = (int)(idx % R.size), s = (int)(idx / R.size % R.size);
            RingMat lhs = mat_commutator(R, z(root(eps(i, 1, j, -1)), r),
                                         z(root(eps(j, 1, k, -1)), s));
            bool ok = lhs == z(root(eps(i, 1, k, -1)), R.m(r, s));
            if (!ok) w = "E1 fails at i<j<k with r=" + std::to_string(r) + " s=" +
                         std::to_string(s);
            return ok;
        });
    }
    // (E2) [z_{ei-ej}(r), z_{ei+ej}(s)] = z_{2ei}(s r* - omega r s*), i < j
    {
        std::vector<std::array<int, 2>> pairs;
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) pairs.push_back({i, j});
        long long combos = (long long)pairs.size() * R.size * R.size;
        run("E2", combos, [&](long long idx, std::string& w) {
            auto [i, j] = pairs[idx / ((long long)R.size * R.size)];
            int r = (int)(idx % R.size), s = (int)(idx / R.size % R.size);
            int arg = R.sub(R.m(s, R.star(r)), R.m(omega, R.m(r, R.star(s))));
            int lroot = root(eps(i, 2, 0, 0));
            if (!m.has_param(lroot, {arg})) {
                w = "E2 target parameter outside the long root subgroup";
                return false;
            }
            RingMat lhs = mat_commutator(R, z(root(eps(i, 1, j, -1)), r),
                                         z(root(eps(i, 1, j, 1)), s));
            bool ok = lhs == z(lroot, arg);
            if (!ok) w = "E2 fails with r=" + std::to_string(r) + " s=" + std::to_string(s);
            return ok;
        });
    }
    // (E3) [z_{2ej}(r), z_{ei-ej}(s)] = z_{ei+ej}(-sr) z_{2ei}(s r s*), i < j
    {
        std::vector<std::array<int, 2>> pairs;
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) pairs.push_back({i, j});
        long long combos = (long long)pairs.size() * sym.size() * R.size;
        run("E3", combos, [&](long long idx, std::string& w) {
            auto [i, j] = pairs[idx / ((long long)sym.size() * R.size)];
            int r = sym[idx % sym.size()], s = (int)(idx / sym.size() % R.size);
            RingMat lhs =
                mat_commutator(R, z(root(eps(j, 2, 0, 0)), r), z(root(eps(i, 1, j, -1)), s));
            int arg2 = R.m(R.m(s, r), R.star(s));
            RingMat rhs = mat_mul(R, z(root(eps(i, 1, j, 1)), R.n(R.m(s, r))),
                                  z(root(eps(i, 2, 0, 0)), arg2));
            bool ok = lhs == rhs;
            if (!ok) w = "E3 fails with r=" + std::to_string(r) + " s=" + std::to_string(s);
            return ok;
        });
    }
    // (E4) [z_{ei-ej}(r), z_{ej+ek}(s)], three index orderings
    {
        struct Case {
            int i, j, k;
            int variant;  // 0: i<j<k, 1: k<i<j, 2: i<k<j
        };
        std::vector<Case> cases;
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                for (int k = 1; k <= n; ++k) {
                    if (i == j || j == k || i == k) continue;
                    if (i < j && j < k) cases.push_back({i, j, k, 0});
                    else if (k < i && i < j) cases.push_back({i, j, k, 1});
                    else if (i < k && k < j) cases.push_back({i, j, k, 2});
                }
        long long combos = (long long)cases.size() * R.size * R.size;
        run("E4", combos, [&](long long idx, std::string& w) {
            auto c = cases[idx / ((long long)R.size * R.size)];
            int r = (int)(idx % R.size), s = (int)(idx / R.size % R.size);
            RingMat lhs = mat_commutator(R, z(root(eps(c.i, 1, c.j, -1)), r),
                                         z(root(eps(c.j, 1, c.k, 1)), s));
            int arg = c.variant == 0   ? R.m(r, s)
                      : c.variant == 1 ? R.m(s, R.star(r))
                                       : R.n(R.m(omega, R.m(r, R.star(s))));
            bool ok = lhs == z(root(eps(c.i, 1, c.k, 1)), arg);
            if (!ok)
                w = "E4 variant " + std::to_string(c.variant) + " fails with r=" +
                    std::to_string(r) + " s=" + std::to_string(s);
            return ok;
        });
    }
    // (E5) [z_{-2ei}(r), z_{ei+ej}(s)], both index orders
    {
        std::vector<std::array<int, 2>> pairs;
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                if (i != j) pairs.push_back({i, j});
        long long combos = (long long)pairs.size() * sym.size() * R.size;
        run("E5", combos, [&](long long idx, std::string& w) {
            auto [i, j] = pairs[idx / ((long long)sym.size() * R.size)];
            int r = sym[idx % sym.size()], s = (int)(idx / sym.size() % R.size);
            RingMat lhs =
                mat_commutator(R, z(root(eps(i, -2, 0, 0)), r), z(root(eps(i, 1, j, 1)), s));
            RingMat rhs =
                i < j ? mat_mul(R, z(root(eps(j, 1, i, -1)), R.n(R.m(R.star(r), s))),
                                z(root(eps(j, 2, 0, 0)), R.m(R.m(R.star(s), r), s)))
                      : mat_mul(R, z(root(eps(j, 1, i, -1)), R.m(s, R.star(r))),
                                z(root(eps(j, 2, 0, 0)), R.m(R.m(s, r), R.star(s))));
            bool ok = lhs == rhs;
            if (!ok)
                w = "E5 (" + std::string(i < j ? "i<j" : "i>j") + ") fails with r=" +
                    std::to_string(r) + " s=" + std::to_string(s);
            return ok;
        });
    }
    return out;
}

/// The displayed relation list of the odd-dimensional (BC_n) unitary model.
inline std::vector<IdentityReport> verify_odd_unitary_relations(const GradedGroupModel& m,
                                                                uint64_t seed = 1,
                                                                long long exhaustive_cap = 4096,
                                                                long long samples = 1000) {
    const FiniteRing& R = m.ring;
    int n = (int)m.phi.dim;
    auto root = [&](const RatVec& v) {
        int idx = m.phi.index_of(v);
        if (idx < 0) throw std::logic_error("verify_odd_unitary_relations: missing root");
        return idx;
    };
    auto eps = [&](int i, int sign_i, int j, int sign_j) {
        RatVec v(n, Rat(0));
        v[i - 1] += Rat(sign_i);
        if (j) v[j - 1] += Rat(sign_j);
        return v;
    };
    // valid short parameters (r, t) with r r* = t + t*, shared by every short root
    std::vector<std::array<int, 2>> short_params;
    {
        int some_short = root(eps(1, 1, 0, 0));
        for (const auto& [key, pos] : m.subgroups[some_short].by_param)
            short_params.push_back({key[0], key[1]});
    }
    auto z = [&](int r_idx, std::vector<int> param) { return m.element(r_idx, std::move(param)); };
    std::vector<IdentityReport> out;
    auto run = [&](const std::string& name, long long total,
                   const std::function<bool(long long, std::string&)>& check) {
        IdentityReport rep{name, true, ""};
        long long tested = 0;
        for (long long idx : detail::test_indices(total, exhaustive_cap, samples, seed)) {
            std::string w;
            ++tested;
            if (!check(idx, w)) {
                rep.passed = false;
                rep.witness = w;
                break;
            }
        }
        if (rep.passed)
            rep.witness = "checked " + std::to_string(tested) + " of " + std::to_string(total) +
                          " tuples";
        out.push_back(rep);
    };
    // (E1) [z_{ei-ej}(r), z_{ej-ek}(s)] = z_{ei-ek}(rs), i<j<k
    {
        std::vector<std::array<int, 3>> triples;
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                for (int k = j + 1; k <= n; ++k) triples.push_back({i, j, k});
        long long combos = (long long)triples.size() * R.size * R.size;
        run("E1", combos, [&](long long idx, std::string& w) {
            auto [i, j, k] = triples[idx / ((long long)R.size * R.size)];
            int r = (int)(idx % R.size), s = (int)(idx / R.size % R.size);
            bool ok = mat_commutator(R, z(root(eps(i, 1, j, -1)), {r}),
                                     z(root(eps(j, 1, k, -1)), {s})) ==
                      z(root(eps(i, 1, k, -1)), {R.m(r, s)});
            if (!ok) w = "E1 fails with r=" + std::to_string(r) + " s=" + std::to_string(s);
            return ok;
        });
    }
    // (E2) [z_{ei-ej}(r), z_{ei+ej}(s)] = z_{ei}((0, s r* - r s*)), i<j
    {
        std::vector<std::array<int, 2>> pairs;
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) pairs.push_back({i, j});
        long long combos = (long long)pairs.size() * R.size * R.size;
        run("E2", combos, [&](long long idx, std::string& w) {
            auto [i, j] = pairs[idx / ((long long)R.size * R.size)];
            int r = (int)(idx % R.size), s = (int)(idx / R.size % R.size);
            int t = R.sub(R.m(s, R.star(r)), R.m(r, R.star(s)));
            int sroot = root(eps(i, 1, 0, 0));
            if (!m.has_param(sroot, {R.zero, t})) {
                w = "E2 target parameter missing";
                return false;
            }
            bool ok = mat_commutator(R, z(root(eps(i, 1, j, -1)), {r}),
                                     z(root(eps(i, 1, j, 1)), {s})) == z(sroot, {R.zero, t});
            if (!ok) w = "E2 fails with r=" + std::to_string(r) + " s=" + std::to_string(s);
            return ok;
        });
    }
    // (E3) [z_{ej}((r,t)), z_{ei-ej}(s)] = z_{ei}((-sr, s t s*)) z_{ei+ej}(s t*), i<j
    {
        std::vector<std::array<int, 2>> pairs;
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) pairs.push_back({i, j});
        long long combos = (long long)pairs.size() * short_params.size() * R.size;
        run("E3", combos, [&](long long idx, std::string& w) {
            auto [i, j] = pairs[idx / ((long long)short_params.size() * R.size)];
            auto [r, t] = short_params[idx % short_params.size()];
            int s = (int)(idx / short_params.size() % R.size);
            int r2 = R.n(R.m(s, r)), t2 = R.m(R.m(s, t), R.star(s));
            int sroot = root(eps(i, 1, 0, 0));
            if (!m.has_param(sroot, {r2, t2})) {
                w = "E3 target parameter missing";
                return false;
            }
            bool ok = mat_commutator(R, z(root(eps(j, 1, 0, 0)), {r, t}),
                                     z(root(eps(i, 1, j, -1)), {s})) ==
                      mat_mul(R, z(sroot, {r2, t2}),
                              z(root(eps(i, 1, j, 1)), {R.m(s, R.star(t))}));
            if (!ok)
                w = "E3 fails with (r,t)=(" + std::to_string(r) + "," + std::to_string(t) +
                    ") s=" + std::to_string(s);
            return ok;
        });
    }
    // (E4) [z_{ei}((r,t)), z_{ej}((s,q))] = z_{ei+ej}(-r s*), i<j
    {
        std::vector<std::array<int, 2>> pairs;
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) pairs.push_back({i, j});
        long long per = (long long)short_params.size() * short_params.size();
        long long combos = (long long)pairs.size() * per;
        run("E4", combos, [&](long long idx, std::string& w) {
            auto [i, j] = pairs[idx / per];
            auto [r, t] = short_params[idx % short_params.size()];
            auto [s, q] = short_params[idx / short_params.size() % short_params.size()];
            bool ok = mat_commutator(R, z(root(eps(i, 1, 0, 0)), {r, t}),
                                     z(root(eps(j, 1, 0, 0)), {s, q})) ==
                      z(root(eps(i, 1, j, 1)), {R.n(R.m(r, R.star(s)))});
            if (!ok)
                w = "E4 fails with (r,t)=(" + std::to_string(r) + "," + std::to_string(t) +
                    ") (s,q)=(" + std::to_string(s) + "," + std::to_string(q) + ")";
            return ok;
        });
    }
    // (E5) [z_{ei-ej}(r), z_{ej+ek}(s)], three index orderings
    {
        struct Case {
            int i, j, k, variant;
        };
        std::vector<Case> cases;
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                for (int k = 1; k <= n; ++k) {
                    if (i == j || j == k || i == k) continue;
                    if (i < j && j < k) cases.push_back({i, j, k, 0});
                    else if (k < i && i < j) cases.push_back({i, j, k, 1});
                    else if (i < k && k < j) cases.push_back({i, j, k, 2});
                }
        long long combos = (long long)cases.size() * R.size * R.size;
        run("E5", combos, [&](long long idx, std::string& w) {
            auto c = cases[idx / ((long long)R.size * R.size)];
            int r = (int)(idx % R.size), s = (int)(idx / R.size % R.size);
            int arg = c.variant == 0   ? R.m(r, s)
                      : c.variant == 1 ? R.m(s, R.star(r))
                                       : R.n(R.m(r, R.star(s)));
            bool ok = mat_commutator(R, z(root(eps(c.i, 1, c.j, -1)), {r}),
                                     z(root(eps(c.j, 1, c.k, 1)), {s})) ==
                      z(root(eps(c.i, 1, c.k, 1)), {arg});
            if (!ok)
                w = "E5 variant " + std::to_string(c.variant) + " fails with r=" +
                    std::to_string(r) + " s=" + std::to_string(s);
            return ok;
        });
    }
    return out;
}

// ---- coarsening and unique factorization ----------------------------------------------

/// Coarsens a graded model along a k-good reduction: the new root subgroups are
/// the closures of the fiber subgroups. Every kernel root subgroup must be
/// absorbed by the off-kernel subgroups (checked inside the witnessing rank-k
/// subsystem); a failure names the orphan root subgroup.
inline GradedGroupModel coarsened_grading(const GradedGroupModel& m, const Reduction& red,
                                          int k = 2) {
    if (red.source.roots != m.phi.roots)
        throw std::invalid_argument("coarsened_grading: reduction source does not match");
    GoodnessChecker checker(red, k);
    auto cert = checker.run();
    if (!cert.ok)
        throw std::invalid_argument("coarsened_grading: reduction is not " + std::to_string(k) +
                                    "-good: " + cert.failure);
    for (const auto& kw : cert.kernel_witnesses) {
        RootSystem psi;
        psi.dim = m.phi.dim;
        for (int idx : kw.psi) psi.roots.push_back(m.phi.roots[idx]);
        psi.finalize();
        auto en = enumerate_borel_sets(psi);
        int gamma_psi = psi.index_of(m.phi.roots[kw.gamma]);
        bool absorbed = false;
        for (size_t id = 0; id < en.size() && !absorbed; ++id) {
            auto core = en.core((int)id);
            if (std::find(core.begin(), core.end(), gamma_psi) == core.end()) continue;
            std::vector<int> off_line;
            for (int b : en.set((int)id).positives)
                if (!detail::rat_proportional(psi.roots[b], m.phi.roots[kw.gamma]))
                    off_line.push_back(m.phi.index_of(psi.roots[b]));
            auto have = detail::closed_set(m.ring, m.dim, detail::model_generators(m, off_line),
                                           2'000'000, "coarsened_grading");
            absorbed = true;
            for (const auto& x : m.subgroups[kw.gamma].elements)
                if (!have.count(x)) {
                    absorbed = false;
                    break;
                }
        }
        if (!absorbed)
            throw std::invalid_argument("coarsened_grading: kernel root subgroup X_" +
                                        detail::render_root(m.phi, kw.gamma) +
                                        " is not absorbed");
    }
    GradedGroupModel out;
    out.name = m.name + " / " + red.name;
    out.phi = red.induced;
    out.ring = m.ring;
    out.dim = m.dim;
    out.subgroups.resize(out.phi.roots.size());
    for (const auto& [beta, fiber] : red.fibers) {
        auto gens = detail::model_generators(m, fiber);
        if (gens.empty()) {
            out.subgroups[beta].elements = {mat_identity(m.ring, m.dim)};
            continue;
        }
        auto cl = subgroup_closure(m.ring, gens);
        if (!cl.complete) throw std::logic_error("coarsened_grading: fiber closure overflow");
        out.subgroups[beta].elements = cl.elements;
    }
    verify_root_subgroups(out);
    std::string why;
    if (!verify_grading(out, &why)) throw std::logic_error(out.name + ": " + why);
    return out;
}

/// Unique factorization inside a Borel subgroup: every element of the group
/// generated by the Borel roots is a product of one element per non-divisible
/// root, each root used once in the fixed order, and distinct tuples give
/// distinct elements.
inline bool unique_factorization_check(const GradedGroupModel& m,
                                       const std::vector<int>& borel_roots,
                                       std::vector<int> order = {}, size_t cap = 2'000'000) {
    if (order.empty()) {
        for (int b : borel_roots) {
            RatVec half = Rat(1, 2) * m.phi.roots[b];
            if (m.phi.index_of(half) >= 0) continue;  // divisible roots are absorbed
            order.push_back(b);
        }
    }
    long long total = 1;
    for (int b : order) {
        total *= (long long)m.subgroups[b].elements.size();
        if (total > (long long)cap)
            throw std::invalid_argument("unique_factorization_check: too many products");
    }
    std::vector<RingMat> prods{mat_identity(m.ring, m.dim)};
    for (int b : order) {
        std::vector<RingMat> next;
        next.reserve(prods.size() * m.subgroups[b].elements.size());
        for (const auto& p : prods)
            for (const auto& y : m.subgroups[b].elements) next.push_back(mat_mul(m.ring, p, y));
        prods = std::move(next);
    }
    std::unordered_set<RingMat, RingMatHash> distinct(prods.begin(), prods.end());
    if (distinct.size() != prods.size()) return false;
    auto cl = subgroup_closure(m.ring, detail::model_generators(m, borel_roots), cap);
    if (!cl.complete) throw std::logic_error("unique_factorization_check: closure overflow");
    return cl.elements.size() == prods.size();
}

// ---- isomorphism and comparison utilities ------------------------------------------

/// Attempts to extend the generator correspondence gens1[i] -> gens2[i] to an
/// isomorphism of the generated matrix groups, by breadth-first consistency.
inline bool generators_extend_to_isomorphism(const FiniteRing& R1,
                                             const std::vector<RingMat>& gens1,
                                             const FiniteRing& R2,
                                             const std::vector<RingMat>& gens2,
                                             size_t cap = 2'000'000) {
    if (gens1.size() != gens2.size() || gens1.empty())
        throw std::invalid_argument("generators_extend_to_isomorphism: generator lists differ");
    std::unordered_map<RingMat, RingMat, RingMatHash> fwd, bwd;
    std::vector<RingMat> queue;
    RingMat id1 = mat_identity(R1, gens1[0].n), id2 = mat_identity(R2, gens2[0].n);
    fwd[id1] = id2;
    bwd[id2] = id1;
    queue.push_back(id1);
    for (size_t head = 0; head < queue.size(); ++head) {
        RingMat g = queue[head];
        RingMat img = fwd.at(g);
        for (size_t k = 0; k < gens1.size(); ++k) {
            RingMat h1 = mat_mul(R1, g, gens1[k]);
            RingMat h2 = mat_mul(R2, img, gens2[k]);
            auto it = fwd.find(h1);
            if (it != fwd.end()) {
                if (!(it->second == h2)) return false;
                continue;
            }
            auto back = bwd.find(h2);
            if (back != bwd.end()) return false;  // not injective
            if (queue.size() >= cap)
                throw std::logic_error("generators_extend_to_isomorphism: cap exceeded");
            fwd[h1] = h2;
            bwd[h2] = h1;
            queue.push_back(std::move(h1));
        }
    }
    return true;
}

/// Checks whether the unitary model satisfies exactly the Chevalley commutator
/// relations of its root system after rescaling the parameter of each root
/// subgroup by a unit. Returns the per-root scale vector when a match exists.
inline std::optional<std::vector<int>> unitary_matches_chevalley(const GradedGroupModel& m) {
    auto t = model_chevalley_table(m.phi);
    const auto& phi = m.phi;
    const FiniteRing& R = m.ring;
    size_t nr = phi.roots.size();
    std::vector<int> neg(nr);
    for (size_t a = 0; a < nr; ++a) neg[a] = phi.index_of(-phi.roots[a]);
    std::map<std::pair<int, int>, std::vector<CommutatorTerm>> terms;
    for (size_t a = 0; a < nr; ++a)
        for (size_t b = 0; b < nr; ++b)
            if (a != b && neg[a] != (int)b)
                terms[{(int)a, (int)b}] = commutator_constants(t, (int)a, (int)b);
    // try +-1 before the other units: the match is usually a sign pattern
    std::vector<int> units{R.one};
    if (R.n(R.one) != R.one) units.push_back(R.n(R.one));
    for (int u : R.units())
        if (u != R.one && u != R.n(R.one)) units.push_back(u);
    long long total = 1;
    for (size_t a = 0; a < nr; ++a) {
        total *= (long long)units.size();
        if (total > 100'000'000)
            throw std::invalid_argument("unitary_matches_chevalley: scale space too large");
    }
    for (long long combo = 0; combo < total; ++combo) {
        std::vector<int> scale(nr, R.one);
        long long v = combo;
        for (size_t a = 0; a < nr; ++a) {
            scale[a] = units[v % units.size()];
            v /= units.size();
        }
        bool ok = true;
        for (size_t a = 0; a < nr && ok; ++a)
            for (size_t b = 0; b < nr && ok; ++b) {
                if (a == b || neg[a] == (int)b) continue;
                const auto& ts = terms.at({(int)a, (int)b});
                for (const auto& [pa, ia] : m.subgroups[a].by_param) {
                    int r = pa[0];
                    for (const auto& [pb, ib] : m.subgroups[b].by_param) {
                        int s = pb[0];
                        RingMat lhs =
                            mat_commutator(R, m.element((int)a, {R.m(scale[a], r)}),
                                           m.element((int)b, {R.m(scale[b], s)}));
                        RingMat rhs = mat_identity(R, m.dim);
                        bool domain_ok = true;
                        for (const auto& term : ts) {
                            long long c = term.constant.convert_to<long long>();
                            int arg = R.m(R.of_integer(c),
                                          R.m(R.pow(r, term.i), R.pow(s, term.j)));
                            arg = R.m(scale[term.root], arg);
                            if (!m.has_param(term.root, {arg})) {
                                domain_ok = false;
                                break;
                            }
                            rhs = mat_mul(R, rhs, m.element(term.root, {arg}));
                        }
                        if (!domain_ok || !(lhs == rhs)) {
                            ok = false;
                            break;
                        }
                    }
                    if (!ok) break;
                }
            }
        if (ok) return scale;
    }
    return std::nullopt;
}

/// Core subgroups are normal in their Borel subgroups: conjugation of the core
/// closure by every Borel generator stays inside the core closure.
inline bool core_subgroups_normal(const GradedGroupModel& m) {
    auto en = enumerate_borel_sets(m.phi);
    for (size_t id = 0; id < en.size(); ++id) {
        auto core = en.core((int)id);
        auto cg = detail::closed_set(m.ring, m.dim, detail::model_generators(m, core), 2'000'000,
                                     "core_subgroups_normal");
        for (int b : en.set((int)id).positives)
            for (const auto& g : reduced_generators(m.ring, m.subgroups[b].elements)) {
                RingMat gi = mat_inverse(m.ring, g);
                for (const auto& c : cg) {
                    if (!cg.count(mat_mul(m.ring, mat_mul(m.ring, g, c), gi))) return false;
                    if (!cg.count(mat_mul(m.ring, mat_mul(m.ring, gi, c), g))) return false;
                }
            }
    }
    return true;
}

}  // namespace rootgraded
