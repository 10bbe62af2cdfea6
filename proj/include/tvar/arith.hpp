#ifndef TVAR_ARITH_HPP
#define TVAR_ARITH_HPP

#include <gmpxx.h>

#include <algorithm>
#include <climits>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tvar {

using Int = mpz_class;
using Rational = mpq_class;
using ZVec = std::vector<Int>;
using QVec = std::vector<Rational>;

// Mathematical precondition failure. name() is the stable identifier
// reported by the command line tool (e.g. "NotPointed").
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(name + ": " + what), name_(std::move(name)) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

[[noreturn]] inline void raise(const std::string& name, const std::string& message) {
    throw Error(name, message);
}

inline Rational make_rational(const Int& num, const Int& den) {
    if (den == 0) raise("ZeroDenominator", "rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Int floor_q(const Rational& q) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline Int ceil_q(const Rational& q) {
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

inline Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

inline Int binomial(const Int& n, unsigned long k) {
    Int r;
    mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

inline Int ipow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rational qpow(const Rational& base, long e) {
    Rational r(1);
    Rational b = e >= 0 ? base : Rational(1) / base;
    for (long i = 0; i < (e >= 0 ? e : -e); ++i) r *= b;
    return r;
}

inline long to_long(const Int& v) {
    if (!v.fits_slong_p()) raise("Overflow", "integer " + v.get_str() + " exceeds machine range");
    return v.get_si();
}

inline std::string to_string(const Int& v) { return v.get_str(); }
inline std::string to_string(const Rational& q) { return q.get_str(); }

// Accepts "p", "-p", "p/q" with q > 0.
inline Rational parse_rational(const std::string& text) {
    auto digits = [](const std::string& s, std::size_t from, std::size_t to) {
        if (from >= to) return false;
        for (std::size_t i = from; i < to; ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    std::size_t start = (!text.empty() && (text[0] == '-' || text[0] == '+')) ? 1 : 0;
    std::size_t slash = text.find('/');
    std::size_t num_end = slash == std::string::npos ? text.size() : slash;
    if (!digits(text, start, num_end) ||
        (slash != std::string::npos && !digits(text, slash + 1, text.size())))
        raise("ParseError", "malformed rational '" + text + "'");
    Int num(text.substr(start, num_end - start));
    if (start == 1 && text[0] == '-') num = -num;
    Int den(1);
    if (slash != std::string::npos) den = Int(text.substr(slash + 1));
    if (den == 0) raise("ParseError", "zero denominator in '" + text + "'");
    return make_rational(num, den);
}

inline ZVec zvec(std::initializer_list<long> xs) {
    ZVec v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

inline QVec qvec(std::initializer_list<Rational> xs) { return QVec(xs); }

inline QVec to_q(const ZVec& v) {
    QVec r;
    r.reserve(v.size());
    for (const auto& x : v) r.emplace_back(x);
    return r;
}

inline bool is_integral(const QVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& q) { return is_integral(q); });
}

inline ZVec to_z(const QVec& v) {
    ZVec r;
    r.reserve(v.size());
    for (const auto& q : v) {
        if (!is_integral(q)) raise("NonIntegral", "vector entry " + q.get_str() + " is not an integer");
        r.push_back(q.get_num());
    }
    return r;
}

template <class T>
bool is_zero(const std::vector<T>& v) {
    return std::all_of(v.begin(), v.end(), [](const T& x) { return x == 0; });
}

template <class T>
std::vector<T> add(const std::vector<T>& a, const std::vector<T>& b) {
    std::vector<T> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

template <class T>
std::vector<T> sub(const std::vector<T>& a, const std::vector<T>& b) {
    std::vector<T> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

template <class T>
std::vector<T> neg(const std::vector<T>& a) {
    std::vector<T> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

template <class T, class S>
std::vector<T> scale(const std::vector<T>& a, const S& s) {
    std::vector<T> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
    return r;
}

inline Int dot(const ZVec& a, const ZVec& b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Rational dot(const ZVec& a, const QVec& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Rational dot(const QVec& a, const ZVec& b) { return dot(b, a); }

inline Rational dot(const QVec& a, const QVec& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Int content(const ZVec& v) {
    Int g = 0;
    for (const auto& x : v) g = gcd(g, x);
    return g;
}

inline ZVec primitive(const ZVec& v) {
    Int g = content(v);
    if (g == 0 || g == 1) return v;
    ZVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] / g;
    return r;
}

inline Int denominator_lcm(const QVec& v) {
    Int l = 1;
    for (const auto& q : v) l = lcm(l, q.get_den());
    return l;
}

// Primitive integer vector on the ray through v.
inline ZVec primitive(const QVec& v) {
    Int l = denominator_lcm(v);
    ZVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i].get_num() * (l / v[i].get_den());
    return primitive(r);
}

inline ZVec unit_vector(std::size_t n, std::size_t i) {
    ZVec e(n, Int(0));
    e[i] = 1;
    return e;
}

template <class T>
std::string to_string(const std::vector<T>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].get_str();
    }
    return s + ")";
}

}  // namespace tvar

#endif
