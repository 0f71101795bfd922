#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>
#include <concepts>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

namespace rootgraded {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::rational<Int>;

inline Rat rat(long long n, long long d = 1) { return Rat(Int(n), Int(d)); }

inline double to_double(const Rat& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline std::string to_string(const Rat& r) {
    std::ostringstream os;
    os << r.numerator();
    if (r.denominator() != 1) os << '/' << r.denominator();
    return os.str();
}

/// Vector with exact rational coordinates.
using RatVec = std::vector<Rat>;

// The operators are constrained to the exact types so that they never take
// part in overload resolution for unrelated operands (in particular Eigen
// expression templates, whose conversion checks do not fail gracefully).
template <class V>
    requires std::same_as<V, RatVec>
inline RatVec operator+(const V& a, const V& b) {
    RatVec c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return c;
}

template <class V>
    requires std::same_as<V, RatVec>
inline RatVec operator-(const V& a, const V& b) {
    RatVec c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
    return c;
}

template <class V>
    requires std::same_as<V, RatVec>
inline RatVec operator-(const V& a) {
    RatVec c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = -a[i];
    return c;
}

template <class S, class V>
    requires std::same_as<S, Rat> && std::same_as<V, RatVec>
inline RatVec operator*(const S& s, const V& a) {
    RatVec c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = s * a[i];
    return c;
}

inline Rat dot(const RatVec& a, const RatVec& b) {
    Rat s(0);
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline bool is_zero(const RatVec& a) {
    for (const auto& x : a)
        if (x != Rat(0)) return false;
    return true;
}

/// Lexicographic comparison, used for canonical orderings.
inline bool lex_less(const RatVec& a, const RatVec& b) {
    for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return a.size() < b.size();
}

}  // namespace rootgraded
