#pragma once

#include "rootgraded/rational.hpp"

namespace rootgraded {

/// Sparse multivariate polynomial with exact rational coefficients.
/// The number of variables is fixed per polynomial; exponent vectors key the
/// term map and zero coefficients are never stored.
class Poly {
public:
    using Mono = std::vector<int>;

    Poly() = default;
    explicit Poly(int nvars) : nvars_(nvars) {}

    static Poly constant(int nvars, const Rat& c) {
        Poly p(nvars);
        if (c != Rat(0)) p.terms_[Mono(nvars, 0)] = c;
        return p;
    }

    static Poly variable(int nvars, int idx) {
        Poly p(nvars);
        Mono m(nvars, 0);
        m[idx] = 1;
        p.terms_[m] = Rat(1);
        return p;
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Mono, Rat>& terms() const { return terms_; }

    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 && terms_.begin()->first == Mono(nvars_, 0));
    }

    bool is_integral() const {
        for (const auto& [m, c] : terms_)
            if (c.denominator() != Int(1)) return false;
        return true;
    }

    Rat coeff(const Mono& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rat(0) : it->second;
    }

    int total_degree() const {
        int d = 0;
        for (const auto& [m, c] : terms_) {
            int s = 0;
            for (int e : m) s += e;
            d = std::max(d, s);
        }
        return d;
    }

    Poly& operator+=(const Poly& o) {
        check(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        check(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

    friend Poly operator-(const Poly& a) {
        Poly out(a.nvars_);
        for (const auto& [m, c] : a.terms_) out.terms_[m] = -c;
        return out;
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        a.check(b);
        Poly out(a.nvars_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                Mono m(a.nvars_);
                for (int i = 0; i < a.nvars_; ++i) m[i] = ma[i] + mb[i];
                out.add_term(m, ca * cb);
            }
        return out;
    }

    friend Poly operator*(const Rat& s, const Poly& a) {
        Poly out(a.nvars_);
        if (s == Rat(0)) return out;
        for (const auto& [m, c] : a.terms_) out.terms_[m] = s * c;
        return out;
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    /// Substitutes images[i] (all over a common variable set) for variable i.
    Poly subst(const std::vector<Poly>& images) const {
        if ((int)images.size() != nvars_) throw std::invalid_argument("subst: wrong image count");
        int out_vars = images.empty() ? 0 : images[0].nvars_;
        Poly out(out_vars);
        for (const auto& [m, c] : terms_) {
            Poly term = constant(out_vars, c);
            for (int i = 0; i < nvars_; ++i)
                for (int e = 0; e < m[i]; ++e) term = term * images[i];
            out += term;
        }
        return out;
    }

    std::string str(const std::vector<std::string>& names) const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [m, c] : terms_) {
            std::string mono;
            for (int i = 0; i < nvars_; ++i) {
                if (m[i] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += names[i];
                if (m[i] > 1) mono += "^" + std::to_string(m[i]);
            }
            std::string coef = to_string(c);
            std::string piece;
            if (mono.empty())
                piece = coef;
            else if (coef == "1")
                piece = mono;
            else if (coef == "-1")
                piece = "-" + mono;
            else
                piece = coef + "*" + mono;
            if (!out.empty() && piece[0] != '-') out += "+";
            out += piece;
        }
        return out;
    }

private:
    void check(const Poly& o) const {
        if (nvars_ != o.nvars_) throw std::invalid_argument("polynomial variable mismatch");
    }
    void add_term(const Mono& m, const Rat& c) {
        auto [it, fresh] = terms_.emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second == Rat(0)) terms_.erase(it);
        } else if (c == Rat(0)) {
            terms_.erase(it);
        }
    }

    int nvars_ = 0;
    std::map<Mono, Rat> terms_;
};

using PolyMat = std::vector<std::vector<Poly>>;

inline PolyMat poly_identity(size_t n, int nvars) {
    PolyMat m(n, std::vector<Poly>(n, Poly(nvars)));
    for (size_t i = 0; i < n; ++i) m[i][i] = Poly::constant(nvars, Rat(1));
    return m;
}

inline PolyMat operator*(const PolyMat& a, const PolyMat& b) {
    size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    int nv = a.empty() || a[0].empty() ? 0 : a[0][0].nvars();
    PolyMat out(n, std::vector<Poly>(m, Poly(nv)));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (a[i][l].is_zero()) continue;
            for (size_t j = 0; j < m; ++j) {
                if (b[l][j].is_zero()) continue;
                out[i][j] += a[i][l] * b[l][j];
            }
        }
    return out;
}

inline bool poly_mat_is_identity(const PolyMat& m) {
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m[i].size(); ++j) {
            if (i == j) {
                if (!(m[i][j] == Poly::constant(m[i][j].nvars(), Rat(1)))) return false;
            } else if (!m[i][j].is_zero()) {
                return false;
            }
        }
    return true;
}

/// Matrix of the coefficients of one monomial across a polynomial matrix.
inline RatMat poly_mat_coeff(const PolyMat& m, const Poly::Mono& mono) {
    RatMat out(m.size(), RatVec(m.empty() ? 0 : m[0].size(), Rat(0)));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m[i].size(); ++j) out[i][j] = m[i][j].coeff(mono);
    return out;
}

}  // namespace rootgraded
