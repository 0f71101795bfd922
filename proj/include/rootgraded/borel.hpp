#pragma once

#include <random>
#include <unordered_map>

#include "rootgraded/lp.hpp"
#include "rootgraded/rootsys.hpp"

namespace rootgraded {

/// Linear functional on the ambient space, nonzero and injective on Phi.
struct Functional {
    RatVec covector;
    Rat value(const RatVec& root) const { return dot(covector, root); }
};

inline bool functional_is_generic(const RootSystem& phi, const RatVec& c) {
    std::set<Rat> values;
    for (const auto& r : phi.roots) {
        Rat v = dot(c, r);
        if (v == Rat(0)) return false;
        if (!values.insert(v).second) return false;
    }
    return true;
}

/// Deterministic generic functional: perturb a seeded base covector until
/// its values on Phi are nonzero and pairwise distinct.
inline Functional generic_functional(const RootSystem& phi, uint64_t seed) {
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 1);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        RatVec c(phi.dim);
        for (size_t i = 0; i < phi.dim; ++i)
            c[i] = Rat(Int((long long)(rng() % 2000003) - 1000001));
        if (functional_is_generic(phi, c)) return Functional{c};
    }
    throw std::runtime_error("generic_functional: perturbation cap exceeded");
}

/// Perturb x (assumed strictly nonzero on all roots) into a nearby generic
/// covector with the same sign pattern on Phi.
inline RatVec make_generic(const RootSystem& phi, RatVec x, uint64_t seed = 0) {
    if (functional_is_generic(phi, x)) return x;
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 7);
    // margin of x on roots is >= 1 by LP construction; keep |eps * w . r| < 1
    for (int attempt = 1; attempt < 10000; ++attempt) {
        RatVec w(phi.dim);
        long long maxnum = 0;
        for (size_t i = 0; i < phi.dim; ++i) {
            long long wi = (long long)(rng() % 101) - 50;
            w[i] = Rat(Int(wi));
            maxnum = std::max(maxnum, std::abs(wi));
        }
        // |w . r| <= dim * maxnum * maxcoord; a safely small eps:
        Rat eps(1, Int(1 + 200 * (long long)phi.dim * maxnum * phi.scale));
        RatVec cand = x + eps * w;
        if (functional_is_generic(phi, cand)) return cand;
    }
    throw std::runtime_error("make_generic: perturbation cap exceeded");
}

/// A positive half of Phi with a certifying representative functional.
struct BorelSet {
    int id = -1;
    std::vector<int> positives;      // root indices, sorted
    std::vector<int8_t> line_signs;  // +-1 per line of the enumeration
    Functional representative;
};

/// Complete enumeration of the Borel sets of a root system, with
/// co-maximal adjacency recorded per wall crossing.
struct BorelEnumeration {
    RootSystem phi;
    std::vector<std::vector<int>> lines;  // root indices on the positive rep side
    std::vector<int> line_rep;            // representative root per line
    std::vector<BorelSet> sets;
    std::vector<std::vector<std::pair<int, int>>> comax;  // id -> (neighbor id, line)
    std::vector<int> opposite;                            // id -> id of opposite set
    std::map<std::vector<int8_t>, int> by_signs;

    const BorelSet& set(int id) const { return sets[id]; }
    size_t size() const { return sets.size(); }

    std::vector<int> boundary(int id) const {
        std::set<int> b;
        for (auto [nb, line] : comax[id]) {
            (void)nb;
            for (int r : positive_side(line, sets[id].line_signs[line])) b.insert(r);
        }
        return std::vector<int>(b.begin(), b.end());
    }

    std::vector<int> core(int id) const {
        auto b = boundary(id);
        std::set<int> bs(b.begin(), b.end());
        std::vector<int> c;
        for (int r : sets[id].positives)
            if (!bs.count(r)) c.push_back(r);
        return c;
    }

    /// Roots of the given line lying on the side selected by sign.
    std::vector<int> positive_side(int line, int8_t sign) const {
        std::vector<int> out;
        for (int r : lines[line]) out.push_back(r);
        if (sign < 0)
            for (auto& r : out) r = phi.index_of(-phi.roots[r]);
        return out;
    }
};

namespace detail {

inline std::vector<int> positives_from_signs(const BorelEnumeration& en,
                                             const std::vector<int8_t>& signs) {
    std::vector<int> pos;
    for (size_t l = 0; l < en.lines.size(); ++l)
        for (int r : en.positive_side((int)l, signs[l])) pos.push_back(r);
    std::sort(pos.begin(), pos.end());
    return pos;
}

}  // namespace detail

/// Breadth-first wall-crossing enumeration. Every produced sign pattern is
/// certified by an exact rational functional; candidate patterns without a
/// certificate are discarded. Adjacent (co-maximal) pairs differ in the sign
/// of exactly one root line.
inline BorelEnumeration enumerate_borel_sets(const RootSystem& phi, uint64_t seed = 0) {
    BorelEnumeration en;
    en.phi = phi;
    // group roots into lines; per line keep the roots on the side of the
    // lexicographically largest root (the "rep side")
    std::vector<char> assigned(phi.roots.size(), 0);
    for (size_t i = 0; i < phi.roots.size(); ++i) {
        if (assigned[i]) continue;
        std::vector<int> pos = {(int)i}, all = {(int)i};
        assigned[i] = 1;
        for (size_t j = i + 1; j < phi.roots.size(); ++j) {
            if (assigned[j] || !detail::proportional(phi.iroots[i], phi.iroots[j])) continue;
            assigned[j] = 1;
            all.push_back((int)j);
            if (dot(phi.roots[i], phi.roots[j]) > Rat(0)) pos.push_back((int)j);
        }
        // representative: the primitive (shortest) root on the rep side
        int rep = pos[0];
        for (int r : pos)
            if (phi.inner(phi.roots[r], phi.roots[r]) <
                phi.inner(phi.roots[rep], phi.roots[rep]))
                rep = r;
        en.lines.push_back(pos);
        en.line_rep.push_back(rep);
    }
    size_t nl = en.lines.size();

    auto signs_of = [&](const RatVec& f) {
        std::vector<int8_t> s(nl);
        for (size_t l = 0; l < nl; ++l)
            s[l] = dot(f, phi.roots[en.line_rep[l]]) > Rat(0) ? 1 : -1;
        return s;
    };
    // primitive positive root per line under a sign pattern
    auto line_root = [&](const std::vector<int8_t>& s, size_t l) {
        RatVec r = phi.roots[en.line_rep[l]];
        if (s[l] < 0) r = -r;
        return r;
    };
    // Walls of the chamber of a sign pattern are the indecomposable positive
    // lines: line l is a wall iff its primitive root is not a sum of two
    // positive roots. (Indecomposables form the simple system, which is the
    // set of extreme rays of the positive cone.)
    auto simple_lines = [&](const std::vector<int8_t>& s) {
        auto pos = detail::positives_from_signs(en, s);
        std::set<RatVec> pset;
        for (int r : pos) pset.insert(phi.roots[r]);
        std::vector<size_t> simples;
        for (size_t l = 0; l < nl; ++l) {
            RatVec gamma = line_root(s, l);
            bool decomposable = false;
            for (int d : pos) {
                RatVec rest = gamma - phi.roots[d];
                if (!is_zero(rest) && pset.count(rest)) {
                    decomposable = true;
                    break;
                }
            }
            if (!decomposable) simples.push_back(l);
        }
        return simples;
    };
    // LP certificate for a sign pattern: margin 1 on the simple lines, which
    // forces strict positivity on every positive root.
    auto certify = [&](const std::vector<int8_t>& s) -> std::optional<RatVec> {
        RatMat rows;
        for (size_t l : simple_lines(s)) rows.push_back(line_root(s, l));
        auto x = feasible_point(rows);
        if (!x) return x;
        for (size_t l = 0; l < nl; ++l)
            if (dot(*x, line_root(s, l)) <= Rat(0)) return std::nullopt;
        return x;
    };

    Functional f0 = generic_functional(phi, seed);
    auto s0 = signs_of(f0.covector);

    auto add_set = [&](const std::vector<int8_t>& s, const RatVec& cert) {
        BorelSet b;
        b.id = (int)en.sets.size();
        b.line_signs = s;
        b.positives = detail::positives_from_signs(en, s);
        b.representative = Functional{make_generic(phi, cert, seed)};
        en.by_signs[s] = b.id;
        en.sets.push_back(std::move(b));
        en.comax.emplace_back();
        return en.sets.back().id;
    };

    std::vector<int> queue = {add_set(s0, f0.covector)};
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        int id = queue[qi];
        auto signs = en.sets[id].line_signs;
        for (size_t l : simple_lines(signs)) {
            auto cand = signs;
            cand[l] = -cand[l];
            int nid;
            auto known = en.by_signs.find(cand);
            if (known == en.by_signs.end()) {
                auto cert = certify(cand);
                if (!cert.has_value())
                    throw std::runtime_error("enumerate_borel_sets: wall without certificate");
                nid = add_set(cand, *cert);
                queue.push_back(nid);
            } else {
                nid = known->second;
            }
            en.comax[id].push_back({nid, (int)l});
        }
    }
    // opposite pairing
    en.opposite.assign(en.sets.size(), -1);
    for (auto& b : en.sets) {
        auto flipped = b.line_signs;
        for (auto& s : flipped) s = -s;
        en.opposite[b.id] = en.by_signs.at(flipped);
    }
    return en;
}

inline bool are_opposite(const BorelEnumeration& en, int a, int b) {
    return en.opposite[a] == b && a != b;
}

/// Co-maximal iff the two positive halves differ on exactly one root line.
inline bool are_comaximal(const BorelEnumeration& en, int a, int b) {
    if (a == b) return false;
    int diff = 0;
    for (size_t l = 0; l < en.lines.size(); ++l)
        if (en.sets[a].line_signs[l] != en.sets[b].line_signs[l]) ++diff;
    return diff == 1;
}

inline bool are_cominimal(const BorelEnumeration& en, int a, int b) {
    return are_comaximal(en, a, en.opposite[b]);
}

/// Indecomposable positives: the base (extreme rays) of the Borel set.
inline std::vector<int> base_of(const BorelEnumeration& en, int id) {
    const auto& pos = en.sets[id].positives;
    std::set<RatVec> pset;
    for (int r : pos) pset.insert(en.phi.roots[r]);
    std::vector<int> base;
    for (int r : pos) {
        bool decomposable = false;
        for (int d : pos) {
            RatVec rest = en.phi.roots[r] - en.phi.roots[d];
            if (!is_zero(rest) && pset.count(rest)) {
                decomposable = true;
                break;
            }
        }
        if (!decomposable) base.push_back(r);
    }
    return base;
}

/// Positive roots sorted by strictly decreasing representative value.
inline std::vector<int> induced_ordering(const BorelEnumeration& en, int id) {
    auto pos = en.sets[id].positives;
    const auto& f = en.sets[id].representative;
    std::sort(pos.begin(), pos.end(), [&](int x, int y) {
        return f.value(en.phi.roots[x]) > f.value(en.phi.roots[y]);
    });
    return pos;
}

}  // namespace rootgraded
