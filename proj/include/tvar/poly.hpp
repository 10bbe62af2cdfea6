#ifndef TVAR_POLY_HPP
#define TVAR_POLY_HPP

#include "arith.hpp"

#include <tuple>

namespace tvar {

// Dense univariate polynomial over Q, ascending coefficients, no trailing zeros.
class Poly {
public:
    Poly() = default;
    Poly(const Rational& c) {  // NOLINT(google-explicit-constructor)
        if (c != 0) c_.push_back(c);
    }
    explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly t() { return Poly(std::vector<Rational>{0, 1}); }
    static Poly monomial(std::size_t k, const Rational& c = 1) {
        std::vector<Rational> v(k + 1, Rational(0));
        v[k] = c;
        return Poly(std::move(v));
    }
    static Poly linear(const Rational& root) { return Poly(std::vector<Rational>{-root, 1}); }

    const std::vector<Rational>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    long degree() const { return static_cast<long>(c_.size()) - 1; }  // -1 for zero
    Rational lead() const { return c_.empty() ? Rational(0) : c_.back(); }
    Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    Poly monic() const {
        if (c_.empty()) return *this;
        Rational l = c_.back();
        Poly r = *this;
        for (auto& x : r.c_) x /= l;
        return r;
    }

    Rational operator()(const Rational& x) const {
        Rational s = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) s = s * x + *it;
        return s;
    }

    Poly derivative() const {
        std::vector<Rational> d;
        for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * Rational(static_cast<long>(k)));
        return Poly(std::move(d));
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a) {
        Poly r = a;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(r));
    }
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    // Euclidean division: a = q*b + r with deg r < deg b.
    friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) raise("DivisionByZero", "polynomial division by zero");
        std::vector<Rational> rem = a.c_;
        std::vector<Rational> quo;
        long db = b.degree();
        if (a.degree() >= db) quo.assign(static_cast<std::size_t>(a.degree() - db + 1), Rational(0));
        for (long k = a.degree(); k >= db; --k) {
            Rational f = rem[static_cast<std::size_t>(k)] / b.lead();
            if (f == 0) continue;
            quo[static_cast<std::size_t>(k - db)] = f;
            for (long j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= f * b.c_[static_cast<std::size_t>(j)];
        }
        return {Poly(std::move(quo)), Poly(std::move(rem))};
    }
    friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
    friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

    bool divides(const Poly& a) const { return (a % *this).is_zero(); }

    // Substitute q for the variable.
    Poly compose(const Poly& q) const {
        Poly r;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * q + Poly(*it);
        return r;
    }

    std::string str(const std::string& var = "t") const {
        if (c_.empty()) return "0";
        std::string s;
        for (std::size_t k = c_.size(); k-- > 0;) {
            const Rational& x = c_[k];
            if (x == 0) continue;
            bool negative = x < 0;
            Rational a = negative ? Rational(-x) : x;
            if (s.empty()) s += negative ? "-" : "";
            else s += negative ? " - " : " + ";
            if (k == 0 || a != 1) s += a.get_str();
            if (k > 0) s += (k == 1) ? var : var + "^" + std::to_string(k);
        }
        return s;
    }

    bool operator==(const Poly& o) const { return c_ == o.c_; }
    bool operator!=(const Poly& o) const { return c_ != o.c_; }
    bool operator<(const Poly& o) const {
        if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
        return c_ < o.c_;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rational> c_;
};

inline Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

inline Poly poly_pow(const Poly& p, unsigned long e) {
    Poly r(Rational(1));
    for (unsigned long i = 0; i < e; ++i) r *= p;
    return r;
}

// Element of Q(t) as num/den, coprime, den monic.
class DenseRational {
public:
    DenseRational() = default;
    DenseRational(const Rational& c) : num_(c), den_(Rational(1)) {}  // NOLINT(google-explicit-constructor)
    DenseRational(const Poly& p) : num_(p), den_(Rational(1)) {}      // NOLINT(google-explicit-constructor)
    DenseRational(const Poly& n, const Poly& d) {
        if (d.is_zero()) raise("DivisionByZero", "rational function with zero denominator");
        Poly g = poly_gcd(n, d);
        num_ = n / g;
        den_ = d / g;
        Rational l = den_.lead();
        num_ = num_ * Poly(Rational(1) / l);
        den_ = den_.monic();
        if (num_.is_zero()) den_ = Poly(Rational(1));
    }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

    friend DenseRational operator+(const DenseRational& a, const DenseRational& b) {
        return DenseRational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend DenseRational operator-(const DenseRational& a) { return DenseRational(-a.num_, a.den_); }
    friend DenseRational operator-(const DenseRational& a, const DenseRational& b) { return a + (-b); }
    friend DenseRational operator*(const DenseRational& a, const DenseRational& b) {
        return DenseRational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend DenseRational operator/(const DenseRational& a, const DenseRational& b) {
        if (b.is_zero()) raise("DivisionByZero", "division by the zero function");
        return DenseRational(a.num_ * b.den_, a.den_ * b.num_);
    }
    DenseRational& operator+=(const DenseRational& o) { return *this = *this + o; }
    DenseRational& operator*=(const DenseRational& o) { return *this = *this * o; }

    DenseRational pow(long e) const {
        DenseRational r(Rational(1));
        DenseRational b = e >= 0 ? *this : DenseRational(Rational(1)) / *this;
        for (long i = 0; i < (e >= 0 ? e : -e); ++i) r *= b;
        return r;
    }

    bool operator==(const DenseRational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const DenseRational& o) const { return !(*this == o); }

    std::string str() const {
        if (den_ == Poly(Rational(1))) return num_.str();
        return "(" + num_.str() + ")/(" + den_.str() + ")";
    }

private:
    Poly num_;
    Poly den_{Rational(1)};
};

}  // namespace tvar

#endif
