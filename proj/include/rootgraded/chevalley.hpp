#pragma once

#include "json.hpp"
#include "rootgraded/linalg.hpp"
#include "rootgraded/poly.hpp"
#include "rootgraded/rootsys.hpp"

namespace rootgraded {

/// Structure constants of a simple Lie algebra in a Chevalley basis, together
/// with the Cartan data needed to realize the adjoint module over the
/// integers. Basis order: one x per root (in the root system's canonical
/// order), then h per simple root.
class StructureConstantTable {
public:
    explicit StructureConstantTable(RootSystem system) : phi_(std::move(system)) {
        if (!is_reduced(phi_) || !is_irreducible(phi_))
            throw std::invalid_argument("chevalley_basis: need a reduced irreducible system");
        if (!is_admissible(phi_))
            throw std::invalid_argument("chevalley_basis: system is not classical");
        size_t n = phi_.roots.size();
        neg_.resize(n);
        positive_.resize(n);
        for (size_t i = 0; i < n; ++i) {
            neg_[i] = phi_.index_of(-phi_.roots[i]);
            positive_[i] = lex_positive(phi_.roots[i]);
        }
        // simple roots: indecomposable positives of the lexicographic order
        std::set<RatVec> pset;
        for (size_t i = 0; i < n; ++i)
            if (positive_[i]) pset.insert(phi_.roots[i]);
        for (size_t i = 0; i < n; ++i) {
            if (!positive_[i]) continue;
            bool decomposable = false;
            for (const auto& d : pset) {
                RatVec rest = phi_.roots[i] - d;
                if (!is_zero(rest) && pset.count(rest)) {
                    decomposable = true;
                    break;
                }
            }
            if (!decomposable) simple_.push_back((int)i);
        }
        // heights via coordinates in the simple basis
        RatMat basis(phi_.dim, RatVec(simple_.size(), Rat(0)));
        for (size_t j = 0; j < simple_.size(); ++j)
            for (size_t d = 0; d < phi_.dim; ++d) basis[d][j] = phi_.roots[simple_[j]][d];
        height_.resize(n);
        for (size_t i = 0; i < n; ++i) {
            auto coords = solve(basis, phi_.roots[i]);
            if (!coords) throw std::logic_error("simple roots do not span the system");
            Rat h(0);
            for (const auto& c : *coords) {
                if (c.denominator() != Int(1))
                    throw std::logic_error("non-integral simple-root coordinates");
                h += c;
            }
            height_[i] = (int)h.numerator().convert_to<long long>();
        }
        // h_alpha in the basis of simple-root h's: coefficients of the coroot
        // 2a/(a,a) in the simple coroots
        RatMat cobasis(phi_.dim, RatVec(simple_.size(), Rat(0)));
        for (size_t j = 0; j < simple_.size(); ++j) {
            RatVec co = Rat(2) / phi_.norm(simple_[j]) * phi_.roots[simple_[j]];
            for (size_t d = 0; d < phi_.dim; ++d) cobasis[d][j] = co[d];
        }
        cartan_coords_.resize(n);
        for (size_t i = 0; i < n; ++i) {
            RatVec co = Rat(2) / phi_.norm(i) * phi_.roots[i];
            auto coords = solve(cobasis, co);
            if (!coords) throw std::logic_error("simple coroots do not span the coroot space");
            for (const auto& c : *coords)
                if (c.denominator() != Int(1))
                    throw std::logic_error("coroot outside the simple coroot lattice");
            cartan_coords_[i] = *coords;
        }
        sign_.assign(n, 1);
    }

    const RootSystem& system() const { return phi_; }
    const std::vector<int>& simple_roots() const { return simple_; }
    size_t rank() const { return simple_.size(); }
    size_t dimension() const { return phi_.roots.size() + simple_.size(); }
    int negative_of(int a) const { return neg_[a]; }
    bool is_positive_root(int a) const { return positive_[a]; }
    int height(int a) const { return height_[a]; }

    /// Cartan pairing <beta, alpha>.
    Rat pairing(int beta, int alpha) const { return phi_.pairing(beta, alpha); }

    /// h_alpha expressed in the h's of the simple roots (integer entries).
    const RatVec& cartan_coordinates(int alpha) const { return cartan_coords_[alpha]; }

    /// N_{a,b} for roots with a+b a root; 0 when a+b is not a root or a = -b.
    Int structure_constant(int a, int b) const {
        if (neg_[a] == b) return Int(0);
        int s = phi_.index_of(phi_.roots[a] + phi_.roots[b]);
        if (s < 0) return Int(0);
        Int base = raw_constant(a, b);
        return Int(sign_[a] * sign_[b] * sign_[s]) * base;
    }

    /// Largest s with b - s*a still a root (the a-string below b).
    int string_down(int a, int b) const {
        int r = 0;
        RatVec v = phi_.roots[b] - phi_.roots[a];
        while (phi_.index_of(v) >= 0) {
            ++r;
            v = v - phi_.roots[a];
        }
        return r;
    }

    /// Bracket of basis elements as a sparse vector over the module basis
    /// (x's first, then h's). Indices: a, b < |roots| are x's; otherwise h's.
    std::map<int, Rat> bracket(int a, int b) const {
        std::map<int, Rat> out;
        size_t nr = phi_.roots.size();
        auto add = [&out](int i, const Rat& c) {
            if (c == Rat(0)) return;
            auto [it, fresh] = out.emplace(i, c);
            if (!fresh) {
                it->second += c;
                if (it->second == Rat(0)) out.erase(it);
            }
        };
        bool xa = (size_t)a < nr, xb = (size_t)b < nr;
        if (xa && xb) {
            if (neg_[a] == b) {
                const auto& hc = cartan_coords_[a];
                for (size_t j = 0; j < hc.size(); ++j) add((int)(nr + j), hc[j]);
            } else {
                int s = phi_.index_of(phi_.roots[a] + phi_.roots[b]);
                if (s >= 0) add(s, Rat(structure_constant(a, b)));
            }
        } else if (!xa && xb) {
            add(b, pairing(b, simple_[a - (int)nr]));
        } else if (xa && !xb) {
            add(a, -pairing(a, simple_[b - (int)nr]));
        }
        return out;
    }

    std::map<int, Rat> bracket(const std::map<int, Rat>& u, const std::map<int, Rat>& v) const {
        std::map<int, Rat> out;
        for (const auto& [i, ci] : u)
            for (const auto& [j, cj] : v)
                for (const auto& [k, ck] : bracket(i, j)) {
                    Rat c = ci * cj * ck;
                    auto [it, fresh] = out.emplace(k, c);
                    if (!fresh) it->second += c;
                }
        std::erase_if(out, [](const auto& kv) { return kv.second == Rat(0); });
        return out;
    }

    /// Adjoint matrix of x_a acting on the module basis (integer entries).
    RatMat adjoint(int a) const {
        size_t d = dimension();
        RatMat m(d, RatVec(d, Rat(0)));
        for (size_t j = 0; j < d; ++j)
            for (const auto& [i, c] : bracket(a, (int)j)) m[i][j] = c;
        return m;
    }

    /// Flips the basis vector of root line a (both x_a and x_{-a}).
    void flip_sign(int a) {
        sign_[a] = -sign_[a];
        sign_[neg_[a]] = -sign_[neg_[a]];
    }
    int8_t sign_of(int a) const { return sign_[a]; }

private:
    static bool lex_positive(const RatVec& v) {
        for (const auto& c : v) {
            if (c > Rat(0)) return true;
            if (c < Rat(0)) return false;
        }
        return false;
    }

    /// Total order on positive roots: by height, then canonical root order.
    bool before(int a, int b) const {
        if (height_[a] != height_[b]) return height_[a] < height_[b];
        return a < b;
    }

    /// Least positive root a' (in the order) with both a' and xi-a' roots.
    int extraspecial_first(int xi) const {
        int best = -1;
        for (size_t a = 0; a < phi_.roots.size(); ++a) {
            if (!positive_[a]) continue;
            RatVec rest = phi_.roots[xi] - phi_.roots[a];
            if (is_zero(rest)) continue;
            int b = phi_.index_of(rest);
            if (b < 0 || !positive_[b]) continue;
            if (best < 0 || before((int)a, best)) best = (int)a;
        }
        return best;
    }

    /// Unnormalized N (before the sign flips of flip_sign), memoized.
    /// Extraspecial pairs are positive; everything else follows from the
    /// standard antisymmetry, negation, and four-root relations.
    Int raw_constant(int a, int b) const {
        auto key = std::make_pair(a, b);
        auto it = nmemo_.find(key);
        if (it != nmemo_.end()) return it->second;
        Int value = compute_raw(a, b);
        nmemo_[key] = value;
        return value;
    }

    Int compute_raw(int a, int b) const {
        int s = phi_.index_of(phi_.roots[a] + phi_.roots[b]);
        if (s < 0 || neg_[a] == b) return Int(0);
        if (positive_[a] && positive_[b]) {
            if (!before(a, b)) return -raw_constant(b, a);
            int a1 = extraspecial_first(s);
            int b1 = phi_.index_of(phi_.roots[s] - phi_.roots[a1]);
            if (a1 == a) return Int(string_down(a, b) + 1);
            // four-root relation on (a1, -a, b1, -b), all sums known at
            // strictly smaller height
            Rat t1(0), t2(0);
            if (phi_.index_of(phi_.roots[a1] - phi_.roots[a]) >= 0)
                t1 = Rat(raw_constant(a1, neg_[a])) * Rat(raw_constant(b1, neg_[b])) /
                     phi_.inner(phi_.roots[a1] - phi_.roots[a],
                                phi_.roots[a1] - phi_.roots[a]);
            if (phi_.index_of(phi_.roots[b1] - phi_.roots[a]) >= 0)
                t2 = Rat(raw_constant(neg_[a], b1)) * Rat(raw_constant(a1, neg_[b])) /
                     phi_.inner(phi_.roots[b1] - phi_.roots[a],
                                phi_.roots[b1] - phi_.roots[a]);
            Rat num = -phi_.norm(s) * (t1 + t2) / Rat(raw_constant(a1, b1));
            if (num.denominator() != Int(1))
                throw std::logic_error("non-integral structure constant");
            return num.numerator();
        }
        if (!positive_[a] && !positive_[b]) return -raw_constant(neg_[a], neg_[b]);
        // mixed signs: rotate the zero-sum triple (a, b, -(a+b)) so both
        // remaining roots have the same sign
        if (positive_[s]) {
            // N_{a,b}/(s,s) = N_{b,-s}/(a,a) with b and -s of one sign
            Rat v = phi_.norm(s) / phi_.inner(phi_.roots[a], phi_.roots[a]) *
                    Rat(raw_constant(b, neg_[s]));
            if (v.denominator() != Int(1)) throw std::logic_error("non-integral constant");
            return v.numerator();
        }
        // N_{a,b}/(s,s) = N_{-s,a}/(b,b) with -s and a of one sign
        Rat v = phi_.norm(s) / phi_.inner(phi_.roots[b], phi_.roots[b]) *
                Rat(raw_constant(neg_[s], a));
        if (v.denominator() != Int(1)) throw std::logic_error("non-integral constant");
        return v.numerator();
    }

    RootSystem phi_;
    std::vector<int> simple_;
    std::vector<int> neg_;
    std::vector<char> positive_;
    std::vector<int> height_;
    std::vector<RatVec> cartan_coords_;
    std::vector<int8_t> sign_;
    mutable std::map<std::pair<int, int>, Int> nmemo_;
};

/// Exhaustive Jacobi check on basis triples; throws on the first failure.
inline void verify_jacobi(const StructureConstantTable& t) {
    size_t d = t.dimension();
    auto unit = [](int i) { return std::map<int, Rat>{{i, Rat(1)}}; };
    for (size_t i = 0; i < d; ++i)
        for (size_t j = i + 1; j < d; ++j)
            for (size_t k = j + 1; k < d; ++k) {
                auto s = t.bracket(unit((int)i), t.bracket((int)j, (int)k));
                for (const auto& [idx, c] :
                     t.bracket(unit((int)j), t.bracket((int)k, (int)i))) {
                    auto [it, fresh] = s.emplace(idx, c);
                    if (!fresh) it->second += c;
                }
                for (const auto& [idx, c] :
                     t.bracket(unit((int)k), t.bracket((int)i, (int)j))) {
                    auto [it, fresh] = s.emplace(idx, c);
                    if (!fresh) it->second += c;
                }
                for (const auto& [idx, c] : s)
                    if (c != Rat(0)) throw std::logic_error("Jacobi identity fails");
            }
}

inline StructureConstantTable chevalley_basis(const RootSystem& phi, bool check = true) {
    StructureConstantTable t(phi);
    if (check) {
        // antisymmetry and the string-length magnitude law
        const auto& roots = t.system().roots;
        for (size_t a = 0; a < roots.size(); ++a)
            for (size_t b = 0; b < roots.size(); ++b) {
                Int n = t.structure_constant((int)a, (int)b);
                if (n == 0) continue;
                if (t.structure_constant((int)b, (int)a) != -n)
                    throw std::logic_error("structure constants not antisymmetric");
                if (t.system().norm(b) >= t.system().norm(a)) {
                    Int mag = n < 0 ? -n : n;
                    if (mag != Int(t.string_down((int)a, (int)b) + 1))
                        throw std::logic_error("structure constant magnitude off");
                }
            }
        verify_jacobi(t);
    }
    return t;
}

// ---- integral adjoint exponentials ------------------------------------------

/// exp(var * ad x_a) over two polynomial variables; asserts nilpotency and
/// integrality of every entry.
inline PolyMat adjoint_exponential(const StructureConstantTable& t, int a, int var,
                                   int nvars = 2) {
    size_t d = t.dimension();
    RatMat power = rat_identity(d);
    RatMat ad = t.adjoint(a);
    PolyMat out(d, std::vector<Poly>(d, Poly(nvars)));
    Rat factorial(1);
    for (size_t p = 0; p <= d; ++p) {
        if (p > 0) {
            power = rat_mul(ad, power);
            factorial *= Rat((long long)p);
        }
        bool zero = true;
        Poly::Mono mono(nvars, 0);
        mono[var] = (int)p;
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j) {
                Rat c = power[i][j] / factorial;
                if (c == Rat(0)) continue;
                zero = false;
                if (c.denominator() != Int(1))
                    throw std::logic_error("adjoint exponential entry not integral");
                Poly m = Poly::constant(nvars, c);
                for (int e = 0; e < (int)p; ++e) m = m * Poly::variable(nvars, var);
                out[i][j] += m;
            }
        if (zero && p > 0) return out;
    }
    throw std::logic_error("ad x_a is not nilpotent");
}

/// exp(arg * ad x_a) for a polynomial argument.
inline PolyMat adjoint_exponential_at(const StructureConstantTable& t, int a,
                                      const Poly& arg) {
    size_t d = t.dimension();
    int nvars = arg.nvars();
    RatMat power = rat_identity(d);
    RatMat ad = t.adjoint(a);
    PolyMat out = poly_identity(d, nvars);
    Poly argpow = Poly::constant(nvars, Rat(1));
    Rat factorial(1);
    for (size_t p = 1; p <= d; ++p) {
        power = rat_mul(ad, power);
        factorial *= Rat((long long)p);
        argpow = argpow * arg;
        bool zero = true;
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j) {
                if (power[i][j] == Rat(0)) continue;
                zero = false;
                out[i][j] += (power[i][j] / factorial) * argpow;
            }
        if (zero) return out;
    }
    throw std::logic_error("ad x_a is not nilpotent");
}

/// Checks A_a(t) A_a(u) = A_a(t+u) as an identity in Z[t,u].
inline bool one_parameter_identity(const StructureConstantTable& t, int a) {
    PolyMat at = adjoint_exponential(t, a, 0);
    PolyMat au = adjoint_exponential(t, a, 1);
    Poly sum = Poly::variable(2, 0) + Poly::variable(2, 1);
    PolyMat shifted = adjoint_exponential_at(t, a, sum);
    return at * au == shifted;
}

// ---- commutator constants ----------------------------------------------------

struct CommutatorTerm {
    int i = 0, j = 0;   // the root is i*alpha + j*beta
    int root = -1;      // index in the system
    Int constant = 0;   // c_{ij}(alpha, beta)
};

/// Solves [x_a(t), x_b(s)] = prod x_{ia+jb}(c_ij t^i s^j) with the factors
/// ordered by increasing i+j, then i. Asserts the product form is exact and
/// c_11 = N_{a,b}.
inline std::vector<CommutatorTerm> commutator_constants(const StructureConstantTable& t,
                                                        int a, int b) {
    const auto& phi = t.system();
    if (t.negative_of(a) == b)
        throw std::invalid_argument("commutator_constants: opposite roots");
    std::vector<CommutatorTerm> terms;
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j) {
            RatVec v = Rat(i) * phi.roots[a] + Rat(j) * phi.roots[b];
            int idx = phi.index_of(v);
            if (idx >= 0) terms.push_back({i, j, idx, Int(0)});
        }
    std::sort(terms.begin(), terms.end(), [](const CommutatorTerm& x, const CommutatorTerm& y) {
        if (x.i + x.j != y.i + y.j) return x.i + x.j < y.i + y.j;
        return x.i < y.i;
    });
    Poly tv = Poly::variable(2, 0), sv = Poly::variable(2, 1);
    // group commutator convention: [g, h] = g^{-1} h^{-1} g h
    PolyMat m = adjoint_exponential_at(t, a, -tv) * adjoint_exponential_at(t, b, -sv) *
                adjoint_exponential_at(t, a, tv) * adjoint_exponential_at(t, b, sv);
    for (auto& term : terms) {
        Poly::Mono mono = {term.i, term.j};
        RatMat coeff = poly_mat_coeff(m, mono);
        RatMat ad = t.adjoint(term.root);
        Rat c(0);
        for (size_t i = 0; i < ad.size() && c == Rat(0); ++i)
            for (size_t j = 0; j < ad.size(); ++j)
                if (ad[i][j] != Rat(0)) {
                    c = coeff[i][j] / ad[i][j];
                    break;
                }
        for (size_t i = 0; i < ad.size(); ++i)
            for (size_t j = 0; j < ad.size(); ++j)
                if (coeff[i][j] != c * ad[i][j])
                    throw std::logic_error("commutator does not match the product form");
        if (c.denominator() != Int(1))
            throw std::logic_error("commutator constant not integral");
        term.constant = c.numerator();
        Poly monoP = Poly::constant(2, -c);
        for (int e = 0; e < term.i; ++e) monoP = monoP * tv;
        for (int e = 0; e < term.j; ++e) monoP = monoP * sv;
        m = adjoint_exponential_at(t, term.root, monoP) * m;
    }
    if (!poly_mat_is_identity(m))
        throw std::logic_error("commutator has terms outside the product form");
    for (const auto& term : terms)
        if (term.i == 1 && term.j == 1 && term.constant != t.structure_constant(a, b))
            throw std::logic_error("c_11 differs from the structure constant");
    return terms;
}

// ---- rank-2 sign normalization and relation catalog --------------------------

namespace detail {

/// The distinguished simple pair (alpha, beta) of a rank-2 table: alpha is the
/// long simple root when lengths differ (beta short); for A2 the first simple.
inline std::pair<int, int> rank2_simple_pair(const StructureConstantTable& t) {
    if (t.rank() != 2) throw std::invalid_argument("rank-2 table required");
    int s0 = t.simple_roots()[0], s1 = t.simple_roots()[1];
    if (t.system().norm(s0) < t.system().norm(s1)) std::swap(s0, s1);
    return {s0, s1};
}

struct BracketTarget {
    int left, right;  // bracket [x_left, x_right]
    int result;       // expected N * x_result
    Int n;
};

/// The bracket identities that pin down the rank-2 signs.
inline std::vector<BracketTarget> rank2_targets(const StructureConstantTable& t) {
    const auto& phi = t.system();
    auto [al, be] = rank2_simple_pair(t);
    auto at = [&](int i, int j) {
        int idx = phi.index_of(Rat(i) * phi.roots[al] + Rat(j) * phi.roots[be]);
        if (idx < 0) throw std::logic_error("expected root missing");
        return idx;
    };
    size_t npos = phi.roots.size() / 2;
    std::vector<BracketTarget> out;
    out.push_back({al, be, at(1, 1), Int(1)});
    out.push_back({t.negative_of(al), at(1, 1), be, Int(1)});
    if (npos >= 4) {  // B2
        out.push_back({at(1, 1), be, at(1, 2), Int(2)});
    }
    if (npos == 6) {  // G2
        out.push_back({at(1, 2), be, at(1, 3), Int(3)});
        out.push_back({al, at(1, 3), at(2, 3), Int(1)});
        // the bracket of x_{a+b} and x_{a+2b}: magnitude 3 is forced by the
        // root-string law ((a+2b) - 2(a+b) = -a is a root), and the sign by
        // the Jacobi identity with the two targets above
        out.push_back({at(1, 1), at(1, 2), at(2, 3), Int(-3)});
        out.push_back({t.negative_of(al), at(2, 3), at(1, 3), Int(1)});
    }
    return out;
}

}  // namespace detail

/// Flips basis signs so the fixed catalog of rank-2 bracket identities holds
/// verbatim; deterministic (first workable flip set in lexicographic order).
inline StructureConstantTable normalize_rank2_signs(StructureConstantTable t) {
    auto targets = detail::rank2_targets(t);
    const auto& phi = t.system();
    std::vector<int> pos;
    for (size_t i = 0; i < phi.roots.size(); ++i)
        if (t.is_positive_root((int)i)) pos.push_back((int)i);
    for (uint32_t mask = 0; mask < (1u << pos.size()); ++mask) {
        for (size_t i = 0; i < pos.size(); ++i)
            if (mask >> i & 1) t.flip_sign(pos[i]);
        bool ok = true;
        for (const auto& tg : targets)
            if (t.structure_constant(tg.left, tg.right) != tg.n) {
                ok = false;
                break;
            }
        if (ok) return t;
        for (size_t i = 0; i < pos.size(); ++i)
            if (mask >> i & 1) t.flip_sign(pos[i]);
    }
    throw std::logic_error("no sign assignment matches the rank-2 bracket catalog");
}

struct CatalogEntry {
    std::string name;
    bool passed = false;
};

/// Verifies the full catalog of rank-2 commutator formulas as exact
/// polynomial-matrix identities in two variables.
inline std::vector<CatalogEntry> verify_rank2_catalog(const StructureConstantTable& t) {
    const auto& phi = t.system();
    auto [al, be] = detail::rank2_simple_pair(t);
    auto at = [&](int i, int j) {
        return phi.index_of(Rat(i) * phi.roots[al] + Rat(j) * phi.roots[be]);
    };
    Poly tv = Poly::variable(2, 0), sv = Poly::variable(2, 1);
    auto mono = [&](Int c, int i, int j) {
        Poly p = Poly::constant(2, Rat(c));
        for (int e = 0; e < i; ++e) p = p * tv;
        for (int e = 0; e < j; ++e) p = p * sv;
        return p;
    };
    struct Relation {
        std::string name;
        int left, right;
        std::vector<std::pair<int, Poly>> factors;  // root, argument
    };
    std::vector<Relation> rels;
    size_t npos = phi.roots.size() / 2;
    int nal = t.negative_of(al);
    if (npos == 3) {
        rels.push_back({"[x_a(t), x_b(u)] = x_{a+b}(tu)", al, be, {{at(1, 1), mono(1, 1, 1)}}});
        rels.push_back({"[x_{-a}(t), x_{a+b}(u)] = x_b(tu)", nal, at(1, 1),
                        {{be, mono(1, 1, 1)}}});
    } else if (npos == 4) {
        rels.push_back({"[x_a(t), x_b(u)] = x_{a+b}(tu) x_{a+2b}(tu^2)", al, be,
                        {{at(1, 1), mono(1, 1, 1)}, {at(1, 2), mono(1, 1, 2)}}});
        rels.push_back({"[x_{-a}(t), x_{a+b}(u)] = x_b(tu) x_{a+2b}(-tu^2)", nal, at(1, 1),
                        {{be, mono(1, 1, 1)}, {at(1, 2), mono(-1, 1, 2)}}});
        rels.push_back({"[x_{a+b}(t), x_b(u)] = x_{a+2b}(2tu)", at(1, 1), be,
                        {{at(1, 2), mono(2, 1, 1)}}});
    } else if (npos == 6) {
        // both length-3 commutators need the fourth root of the positive span
        // as a closing factor; its constant is 1 mod 3 under any reordering,
        // so no basis or product order can drop it
        rels.push_back(
            {"[x_a(t), x_b(u)] = x_{a+b}(tu) x_{a+2b}(tu^2) x_{a+3b}(tu^3) x_{2a+3b}(t^2u^3)",
             al, be,
             {{at(1, 1), mono(1, 1, 1)},
              {at(1, 2), mono(1, 1, 2)},
              {at(1, 3), mono(1, 1, 3)},
              {at(2, 3), mono(1, 2, 3)}}});
        rels.push_back({"[x_a(t), x_{a+3b}(u)] = x_{2a+3b}(tu)", al, at(1, 3),
                        {{at(2, 3), mono(1, 1, 1)}}});
        rels.push_back({"[x_{-a}(t), x_{a+b}(u)] = x_b(tu) x_{a+2b}(-tu^2) x_{2a+3b}(-tu^3) "
                        "x_{a+3b}(-t^2u^3)",
                        nal,
                        at(1, 1),
                        {{be, mono(1, 1, 1)},
                         {at(1, 2), mono(-1, 1, 2)},
                         {at(2, 3), mono(-1, 1, 3)},
                         {at(1, 3), mono(-1, 2, 3)}}});
        rels.push_back({"[x_{-a}(t), x_{2a+3b}(u)] = x_{a+3b}(tu)", nal, at(2, 3),
                        {{at(1, 3), mono(1, 1, 1)}}});
        rels.push_back(
            {"[x_{a+b}(t), x_b(u)] = x_{a+2b}(2tu) x_{a+3b}(3tu^2) x_{2a+3b}(3t^2u)", at(1, 1),
             be,
             {{at(1, 2), mono(2, 1, 1)}, {at(1, 3), mono(3, 1, 2)}, {at(2, 3), mono(3, 2, 1)}}});
    } else {
        throw std::invalid_argument("rank-2 catalog: table is not A2, B2, or G2");
    }
    std::vector<CatalogEntry> report;
    for (const auto& rel : rels) {
        PolyMat lhs = adjoint_exponential_at(t, rel.left, -tv) *
                      adjoint_exponential_at(t, rel.right, -sv) *
                      adjoint_exponential_at(t, rel.left, tv) *
                      adjoint_exponential_at(t, rel.right, sv);
        PolyMat rhs = poly_identity(t.dimension(), 2);
        for (const auto& [root, arg] : rel.factors)
            rhs = rhs * adjoint_exponential_at(t, root, arg);
        report.push_back({rel.name, lhs == rhs});
    }
    return report;
}

// ---- exports ------------------------------------------------------------------

inline std::string structure_constants_csv(const StructureConstantTable& t) {
    const auto& phi = t.system();
    auto render = [&](int idx) {
        std::string s = "(";
        for (size_t d = 0; d < phi.dim; ++d)
            s += (d ? " " : "") + to_string(phi.roots[idx][d]);
        return s + ")";
    };
    std::string out = "alpha,beta,N\n";
    for (size_t a = 0; a < phi.roots.size(); ++a)
        for (size_t b = 0; b < phi.roots.size(); ++b) {
            Int n = t.structure_constant((int)a, (int)b);
            if (n == 0) continue;
            out += render((int)a) + "," + render((int)b) + "," + n.str() + "\n";
        }
    return out;
}

inline nlohmann::json poly_mat_to_json(const PolyMat& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : m) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto& p : row) {
            nlohmann::json terms = nlohmann::json::array();
            for (const auto& [mono, c] : p.terms())
                terms.push_back({{"exponents", mono},
                                 {"numerator", c.numerator().convert_to<long long>()},
                                 {"denominator", c.denominator().convert_to<long long>()}});
            r.push_back(terms);
        }
        rows.push_back(r);
    }
    return rows;
}

}  // namespace rootgraded
