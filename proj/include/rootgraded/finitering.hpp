#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace rootgraded {

/// A finite unital ring given by complete operation tables. Elements are the
/// indices 0..size-1; `add` and `mul` are flattened size x size tables. The
/// involution and automorphism tables are optional (empty when absent).
struct FiniteRing {
    std::string name;
    int size = 0;
    std::vector<int> add, mul;    // flattened [x * size + y]
    std::vector<int> neg;
    int zero = 0, one = 0;
    std::vector<int> involution;  // x -> x*
    std::vector<int> automorphism;
    int automorphism_order = 0;

    int a(int x, int y) const { return add[x * size + y]; }
    int m(int x, int y) const { return mul[x * size + y]; }
    int n(int x) const { return neg[x]; }
    int sub(int x, int y) const { return a(x, neg[y]); }
    bool has_involution() const { return !involution.empty(); }
    bool has_automorphism() const { return !automorphism.empty(); }
    int star(int x) const {
        if (!has_involution()) throw std::logic_error(name + ": no involution defined");
        return involution[x];
    }
    int sigma(int x) const {
        if (!has_automorphism()) throw std::logic_error(name + ": no automorphism defined");
        return automorphism[x];
    }

    int pow(int x, int e) const {
        int out = one;
        for (int i = 0; i < e; ++i) out = m(out, x);
        return out;
    }

    /// Additive order of 1 (the characteristic).
    int characteristic() const {
        int x = one, c = 1;
        while (x != zero) {
            x = a(x, one);
            ++c;
        }
        return c;
    }

    /// The image of an integer under the unique map from Z.
    int of_integer(long long k) const {
        int c = characteristic();
        long long r = k % c;
        if (r < 0) r += c;
        int out = zero;
        for (long long i = 0; i < r; ++i) out = a(out, one);
        return out;
    }

    bool is_commutative() const {
        for (int x = 0; x < size; ++x)
            for (int y = 0; y < size; ++y)
                if (m(x, y) != m(y, x)) return false;
        return true;
    }

    std::vector<int> center() const {
        std::vector<int> out;
        for (int z = 0; z < size; ++z) {
            bool central = true;
            for (int x = 0; x < size && central; ++x) central = m(z, x) == m(x, z);
            if (central) out.push_back(z);
        }
        return out;
    }

    bool is_unit(int x) const {
        for (int y = 0; y < size; ++y)
            if (m(x, y) == one && m(y, x) == one) return true;
        return false;
    }

    std::vector<int> units() const {
        std::vector<int> out;
        for (int x = 0; x < size; ++x)
            if (is_unit(x)) out.push_back(x);
        return out;
    }
};

/// Exhaustive ring-axiom verification; throws naming the first failed axiom.
inline void check_ring_axioms(const FiniteRing& R) {
    int n = R.size;
    if (n <= 0 || (int)R.add.size() != n * n || (int)R.mul.size() != n * n ||
        (int)R.neg.size() != n)
        throw std::invalid_argument(R.name + ": malformed operation tables");
    auto fail = [&R](const std::string& what) {
        throw std::invalid_argument(R.name + ": " + what);
    };
    for (int x = 0; x < n; ++x) {
        if (R.a(x, R.zero) != x) fail("additive identity");
        if (R.a(x, R.n(x)) != R.zero) fail("additive inverse");
        if (R.m(x, R.one) != x || R.m(R.one, x) != x) fail("multiplicative identity");
        for (int y = 0; y < n; ++y) {
            if (R.a(x, y) != R.a(y, x)) fail("addition not commutative");
            for (int z = 0; z < n; ++z) {
                if (R.a(R.a(x, y), z) != R.a(x, R.a(y, z))) fail("addition not associative");
                if (R.m(R.m(x, y), z) != R.m(x, R.m(y, z)))
                    fail("multiplication not associative");
                if (R.m(x, R.a(y, z)) != R.a(R.m(x, y), R.m(x, z)))
                    fail("left distributivity");
                if (R.m(R.a(x, y), z) != R.a(R.m(x, z), R.m(y, z)))
                    fail("right distributivity");
            }
        }
    }
    if (R.has_involution()) {
        for (int x = 0; x < n; ++x) {
            if (R.star(R.star(x)) != x) fail("involution not involutive");
            for (int y = 0; y < n; ++y) {
                if (R.star(R.a(x, y)) != R.a(R.star(x), R.star(y))) fail("involution not additive");
                if (R.star(R.m(x, y)) != R.m(R.star(y), R.star(x)))
                    fail("involution does not reverse products");
            }
        }
        if (R.star(R.one) != R.one) fail("involution moves 1");
    }
    if (R.has_automorphism()) {
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                if (R.sigma(R.a(x, y)) != R.a(R.sigma(x), R.sigma(y)))
                    fail("automorphism not additive");
                if (R.sigma(R.m(x, y)) != R.m(R.sigma(x), R.sigma(y)))
                    fail("automorphism not multiplicative");
            }
        if (R.automorphism_order <= 0) fail("automorphism order not declared");
        for (int x = 0; x < n; ++x) {
            int y = x;
            for (int i = 0; i < R.automorphism_order; ++i) y = R.sigma(y);
            if (y != x) fail("automorphism order exceeds the declared order");
        }
    }
}

inline FiniteRing ring_zmod(int m) {
    if (m < 1) throw std::invalid_argument("ring_zmod: modulus must be positive");
    FiniteRing R;
    R.name = "Z/" + std::to_string(m);
    R.size = m;
    R.zero = 0;
    R.one = m == 1 ? 0 : 1;
    R.add.resize(m * m);
    R.mul.resize(m * m);
    R.neg.resize(m);
    for (int x = 0; x < m; ++x) {
        R.neg[x] = (m - x) % m;
        for (int y = 0; y < m; ++y) {
            R.add[x * m + y] = (x + y) % m;
            R.mul[x * m + y] = (x * y) % m;
        }
    }
    return R;
}

namespace detail {

/// Polynomial helpers over Z/p for building finite fields. Polynomials are
/// little-endian coefficient vectors with no trailing zeros.
inline std::vector<int> poly_trim(std::vector<int> v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
    return v;
}

inline std::vector<int> poly_mul_modp(const std::vector<int>& a, const std::vector<int>& b,
                                      int p) {
    if (a.empty() || b.empty()) return {};
    std::vector<int> out(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
    return poly_trim(out);
}

/// Remainder of a modulo the monic polynomial f over Z/p.
inline std::vector<int> poly_mod_modp(std::vector<int> a, const std::vector<int>& f, int p) {
    a = poly_trim(a);
    while (a.size() >= f.size()) {
        int lead = a.back();
        size_t shift = a.size() - f.size();
        for (size_t i = 0; i < f.size(); ++i) {
            int& c = a[shift + i];
            c = ((c - lead * f[i]) % p + p) % p;
        }
        a = poly_trim(a);
    }
    return a;
}

inline bool poly_is_irreducible_modp(const std::vector<int>& f, int p) {
    int deg = (int)f.size() - 1;
    // trial division by every monic polynomial of degree 1..deg/2
    for (int d = 1; 2 * d <= deg; ++d) {
        long long count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (long long idx = 0; idx < count; ++idx) {
            std::vector<int> g(d + 1, 0);
            long long v = idx;
            for (int i = 0; i < d; ++i) {
                g[i] = (int)(v % p);
                v /= p;
            }
            g[d] = 1;
            if (poly_mod_modp(f, g, p).empty()) return false;
        }
    }
    return true;
}

inline bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

}  // namespace detail

/// The field with p^e elements, realized as Z/p[x] modulo the lexicographically
/// first irreducible monic polynomial of degree e. The Frobenius x -> x^p is
/// recorded as the distinguished automorphism (order e).
inline FiniteRing ring_gf(int p, int e) {
    if (!detail::is_prime(p)) throw std::invalid_argument("ring_gf: p is not prime");
    if (e < 1) throw std::invalid_argument("ring_gf: e must be positive");
    std::vector<int> f(e + 1, 0);
    f[e] = 1;
    if (e > 1) {
        long long count = 1;
        for (int i = 0; i < e; ++i) count *= p;
        bool found = false;
        for (long long idx = 0; idx < count && !found; ++idx) {
            long long v = idx;
            for (int i = 0; i < e; ++i) {
                f[i] = (int)(v % p);
                v /= p;
            }
            found = detail::poly_is_irreducible_modp(f, p);
        }
        if (!found) throw std::logic_error("ring_gf: no irreducible polynomial found");
    }
    int q = 1;
    for (int i = 0; i < e; ++i) q *= p;
    FiniteRing R;
    R.name = "F" + std::to_string(q);
    R.size = q;
    R.zero = 0;
    R.one = q == 1 ? 0 : 1;
    auto decode = [&](int idx) {
        std::vector<int> c(e);
        for (int i = 0; i < e; ++i) {
            c[i] = idx % p;
            idx /= p;
        }
        return detail::poly_trim(c);
    };
    auto encode = [&](const std::vector<int>& c) {
        int idx = 0;
        for (int i = e - 1; i >= 0; --i) idx = idx * p + (i < (int)c.size() ? c[i] : 0);
        return idx;
    };
    R.add.resize(q * q);
    R.mul.resize(q * q);
    R.neg.resize(q);
    for (int x = 0; x < q; ++x) {
        auto cx = decode(x);
        std::vector<int> nx(cx.size());
        for (size_t i = 0; i < cx.size(); ++i) nx[i] = (p - cx[i]) % p;
        R.neg[x] = encode(detail::poly_trim(nx));
        for (int y = 0; y < q; ++y) {
            auto cy = decode(y);
            std::vector<int> s(std::max(cx.size(), cy.size()), 0);
            for (size_t i = 0; i < s.size(); ++i)
                s[i] = ((i < cx.size() ? cx[i] : 0) + (i < cy.size() ? cy[i] : 0)) % p;
            R.add[x * q + y] = encode(detail::poly_trim(s));
            R.mul[x * q + y] =
                encode(detail::poly_mod_modp(detail::poly_mul_modp(cx, cy, p), f, p));
        }
    }
    R.automorphism.resize(q);
    for (int x = 0; x < q; ++x) R.automorphism[x] = R.pow(x, p);
    R.automorphism_order = e;
    return R;
}

/// Attaches the identity involution (valid on commutative rings only).
inline FiniteRing with_identity_involution(FiniteRing R) {
    if (!R.is_commutative())
        throw std::invalid_argument(R.name + ": identity involution needs commutativity");
    R.involution.resize(R.size);
    std::iota(R.involution.begin(), R.involution.end(), 0);
    return R;
}

/// Attaches the involutive power of the Frobenius, x -> x^(p^(e/2)), to a
/// finite field of even degree.
inline FiniteRing with_frobenius_involution(FiniteRing R) {
    int p = R.characteristic();
    int e = 0;
    long long q = 1;
    while (q < R.size) {
        q *= p;
        ++e;
    }
    if (q != R.size)
        throw std::invalid_argument(R.name + ": size is not a power of the characteristic");
    if (e % 2 != 0)
        throw std::invalid_argument(R.name + ": Frobenius involution needs even degree");
    int half = 1;
    for (int i = 0; i < e / 2; ++i) half *= p;
    R.involution.resize(R.size);
    for (int x = 0; x < R.size; ++x) R.involution[x] = R.pow(x, half);
    return R;
}

/// Quotient base[t]/(f) for a commutative base ring and a monic modulus, given
/// little-endian by base-ring elements (degree = f.size()-1 >= 1).
inline FiniteRing ring_poly_quotient(const FiniteRing& base, const std::vector<int>& f,
                                     const std::string& var = "t") {
    if (!base.is_commutative())
        throw std::invalid_argument("ring_poly_quotient: base must be commutative");
    if (f.size() < 2 || f.back() != base.one)
        throw std::invalid_argument("ring_poly_quotient: modulus must be monic of degree >= 1");
    int d = (int)f.size() - 1;
    long long size = 1;
    for (int i = 0; i < d; ++i) size *= base.size;
    if (size > 100000) throw std::invalid_argument("ring_poly_quotient: ring too large");
    FiniteRing R;
    R.name = base.name + "[" + var + "]/(f)";
    R.size = (int)size;
    auto decode = [&](int idx) {
        std::vector<int> c(d);
        for (int i = 0; i < d; ++i) {
            c[i] = idx % base.size;
            idx /= base.size;
        }
        return c;
    };
    auto encode = [&](const std::vector<int>& c) {
        int idx = 0;
        for (int i = d - 1; i >= 0; --i)
            idx = idx * base.size + (i < (int)c.size() ? c[i] : base.zero);
        return idx;
    };
    auto reduce = [&](std::vector<int> c) {
        while ((int)c.size() > d) {
            int lead = c.back();
            size_t shift = c.size() - f.size();
            for (size_t i = 0; i < f.size(); ++i)
                c[shift + i] = base.sub(c[shift + i], base.m(lead, f[i]));
            while (!c.empty() && c.back() == base.zero && c.size() > (size_t)d) c.pop_back();
        }
        c.resize(d, base.zero);
        return c;
    };
    R.zero = encode(std::vector<int>(d, base.zero));
    std::vector<int> onec(d, base.zero);
    onec[0] = base.one;
    R.one = encode(onec);
    R.add.resize(R.size * R.size);
    R.mul.resize(R.size * R.size);
    R.neg.resize(R.size);
    for (int x = 0; x < R.size; ++x) {
        auto cx = decode(x);
        std::vector<int> nx(d);
        for (int i = 0; i < d; ++i) nx[i] = base.n(cx[i]);
        R.neg[x] = encode(nx);
        for (int y = 0; y < R.size; ++y) {
            auto cy = decode(y);
            std::vector<int> s(d);
            for (int i = 0; i < d; ++i) s[i] = base.a(cx[i], cy[i]);
            R.add[x * R.size + y] = encode(s);
            std::vector<int> prod(2 * d - 1, base.zero);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    prod[i + j] = base.a(prod[i + j], base.m(cx[i], cy[j]));
            R.mul[x * R.size + y] = encode(reduce(prod));
        }
    }
    return R;
}

inline FiniteRing ring_product(const FiniteRing& A, const FiniteRing& B) {
    FiniteRing R;
    R.name = A.name + " x " + B.name;
    R.size = A.size * B.size;
    auto enc = [&](int x, int y) { return x * B.size + y; };
    R.zero = enc(A.zero, B.zero);
    R.one = enc(A.one, B.one);
    R.add.resize(R.size * R.size);
    R.mul.resize(R.size * R.size);
    R.neg.resize(R.size);
    for (int x1 = 0; x1 < A.size; ++x1)
        for (int y1 = 0; y1 < B.size; ++y1) {
            int u = enc(x1, y1);
            R.neg[u] = enc(A.n(x1), B.n(y1));
            for (int x2 = 0; x2 < A.size; ++x2)
                for (int y2 = 0; y2 < B.size; ++y2) {
                    int v = enc(x2, y2);
                    R.add[u * R.size + v] = enc(A.a(x1, x2), B.a(y1, y2));
                    R.mul[u * R.size + v] = enc(A.m(x1, x2), B.m(y1, y2));
                }
        }
    if (A.has_involution() && B.has_involution()) {
        R.involution.resize(R.size);
        for (int x = 0; x < A.size; ++x)
            for (int y = 0; y < B.size; ++y)
                R.involution[enc(x, y)] = enc(A.star(x), B.star(y));
    }
    return R;
}

/// The matrix ring M_k(base) as an explicit table, with the transpose
/// involution when the base is commutative.
inline FiniteRing ring_matrices(const FiniteRing& base, int k) {
    int entries = k * k;
    long long size = 1;
    for (int i = 0; i < entries; ++i) {
        size *= base.size;
        if (size > 4096) throw std::invalid_argument("ring_matrices: ring too large");
    }
    FiniteRing R;
    R.name = "M" + std::to_string(k) + "(" + base.name + ")";
    R.size = (int)size;
    auto decode = [&](int idx) {
        std::vector<int> c(entries);
        for (int i = 0; i < entries; ++i) {
            c[i] = idx % base.size;
            idx /= base.size;
        }
        return c;
    };
    auto encode = [&](const std::vector<int>& c) {
        int idx = 0;
        for (int i = entries - 1; i >= 0; --i) idx = idx * base.size + c[i];
        return idx;
    };
    std::vector<int> zero(entries, base.zero), one(entries, base.zero);
    for (int i = 0; i < k; ++i) one[i * k + i] = base.one;
    R.zero = encode(zero);
    R.one = encode(one);
    R.add.resize(R.size * (size_t)R.size);
    R.mul.resize(R.size * (size_t)R.size);
    R.neg.resize(R.size);
    for (int x = 0; x < R.size; ++x) {
        auto cx = decode(x);
        std::vector<int> nx(entries);
        for (int i = 0; i < entries; ++i) nx[i] = base.n(cx[i]);
        R.neg[x] = encode(nx);
        for (int y = 0; y < R.size; ++y) {
            auto cy = decode(y);
            std::vector<int> s(entries), p(entries, base.zero);
            for (int i = 0; i < entries; ++i) s[i] = base.a(cx[i], cy[i]);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j)
                    for (int l = 0; l < k; ++l)
                        p[i * k + j] =
                            base.a(p[i * k + j], base.m(cx[i * k + l], cy[l * k + j]));
            R.add[x * (size_t)R.size + y] = encode(s);
            R.mul[x * (size_t)R.size + y] = encode(p);
        }
    }
    if (base.is_commutative()) {
        R.involution.resize(R.size);
        for (int x = 0; x < R.size; ++x) {
            auto c = decode(x);
            std::vector<int> t(entries);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) t[i * k + j] = c[j * k + i];
            R.involution[x] = encode(t);
        }
    }
    return R;
}

/// Loads a ring from a JSON description, e.g.
///   {"kind":"zmod","m":4,"involution":"identity"}
///   {"kind":"gf","p":3,"e":2,"involution":"frobenius"}
///   {"kind":"quotient","base":{...},"modulus":[0,0,1]}
///   {"kind":"product","factors":[{...},{...}]}
///   {"kind":"matrix","base":{...},"k":2}
inline FiniteRing ring_from_json(const nlohmann::json& spec) {
    std::string kind = spec.at("kind").get<std::string>();
    FiniteRing R;
    if (kind == "zmod") {
        R = ring_zmod(spec.at("m").get<int>());
    } else if (kind == "gf") {
        R = ring_gf(spec.at("p").get<int>(), spec.at("e").get<int>());
    } else if (kind == "quotient") {
        R = ring_poly_quotient(ring_from_json(spec.at("base")),
                               spec.at("modulus").get<std::vector<int>>());
    } else if (kind == "product") {
        const auto& factors = spec.at("factors");
        if (factors.size() < 2) throw std::invalid_argument("ring_from_json: need >= 2 factors");
        R = ring_product(ring_from_json(factors[0]), ring_from_json(factors[1]));
        for (size_t i = 2; i < factors.size(); ++i)
            R = ring_product(R, ring_from_json(factors[i]));
    } else if (kind == "matrix") {
        R = ring_matrices(ring_from_json(spec.at("base")), spec.at("k").get<int>());
    } else {
        throw std::invalid_argument("ring_from_json: unknown kind " + kind);
    }
    if (spec.contains("involution")) {
        std::string inv = spec.at("involution").get<std::string>();
        if (inv == "identity")
            R = with_identity_involution(std::move(R));
        else if (inv == "frobenius")
            R = with_frobenius_involution(std::move(R));
        else if (inv != "builtin")
            throw std::invalid_argument("ring_from_json: unknown involution " + inv);
    }
    if (R.size <= 256) check_ring_axioms(R);
    return R;
}

}  // namespace rootgraded
