#ifndef TVAR_BASECURVE_HPP
#define TVAR_BASECURVE_HPP

#include "poly.hpp"

#include <map>
#include <optional>
#include <set>

namespace tvar {

enum class CurveKind { AffineLine, ProjectiveLine, SpecZ };

inline std::string curve_name(CurveKind c) {
    switch (c) {
        case CurveKind::AffineLine: return "A1";
        case CurveKind::ProjectiveLine: return "P1";
        case CurveKind::SpecZ: return "SpecZ";
    }
    return "?";
}

inline CurveKind parse_curve(const std::string& s) {
    if (s == "A1") return CurveKind::AffineLine;
    if (s == "P1") return CurveKind::ProjectiveLine;
    if (s == "SpecZ") return CurveKind::SpecZ;
    raise("UnsupportedCurve", "unknown curve '" + s + "'");
}

inline bool is_affine(CurveKind c) { return c != CurveKind::ProjectiveLine; }
inline bool has_function_field(CurveKind c) { return c != CurveKind::SpecZ; }

inline bool is_prime(const Int& p) {
    if (p < 2) return false;
    for (Int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Distinct positive primes dividing a nonzero integer, ascending.
inline std::vector<Int> prime_divisors(Int n) {
    if (n < 0) n = -n;
    std::vector<Int> out;
    for (Int d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        out.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) out.push_back(n);
    return out;
}

// Number of times p divides a nonzero integer.
inline long valuation(const Int& n, const Int& p) {
    if (n == 0) raise("ZeroFunction", "valuation of zero");
    Int rest;
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

// Number of times p divides f (p nonconstant, f nonzero).
inline long multiplicity(const Poly& p, Poly f) {
    long k = 0;
    while (true) {
        auto [q, r] = divmod(f, p);
        if (!r.is_zero()) return k;
        f = std::move(q);
        ++k;
    }
}

class BasePoint {
public:
    enum class Kind { Finite, Infinity, Prime };

    static BasePoint finite(const Poly& p) {
        if (p.degree() < 1) raise("InvalidPoint", "place polynomial must be nonconstant");
        BasePoint z;
        z.kind_ = Kind::Finite;
        z.poly_ = p.monic();
        return z;
    }
    static BasePoint at(const Rational& a) { return finite(Poly::linear(a)); }
    static BasePoint infinity() {
        BasePoint z;
        z.kind_ = Kind::Infinity;
        return z;
    }
    static BasePoint prime(const Int& p) {
        if (!is_prime(p)) raise("InvalidPoint", p.get_str() + " is not prime");
        BasePoint z;
        z.kind_ = Kind::Prime;
        z.prime_ = p;
        return z;
    }

    Kind kind() const { return kind_; }
    bool is_finite() const { return kind_ == Kind::Finite; }
    bool is_infinity() const { return kind_ == Kind::Infinity; }
    bool is_prime_point() const { return kind_ == Kind::Prime; }
    const Poly& poly() const { return poly_; }
    const Int& prime() const { return prime_; }

    // residue degree
    long degree() const { return kind_ == Kind::Finite ? poly_.degree() : 1; }
    bool is_rational() const { return degree() == 1; }
    // coordinate of a rational finite point
    std::optional<Rational> root() const {
        if (kind_ != Kind::Finite || poly_.degree() != 1) return std::nullopt;
        return -poly_.coeff(0);
    }

    bool lies_on(CurveKind c) const {
        switch (kind_) {
            case Kind::Finite: return c != CurveKind::SpecZ;
            case Kind::Infinity: return c == CurveKind::ProjectiveLine;
            case Kind::Prime: return c == CurveKind::SpecZ;
        }
        return false;
    }

    std::string str() const {
        switch (kind_) {
            case Kind::Finite: return "[" + poly_.str() + "]";
            case Kind::Infinity: return "[inf]";
            case Kind::Prime: return "(" + prime_.get_str() + ")";
        }
        return "?";
    }

    bool operator==(const BasePoint& o) const {
        return kind_ == o.kind_ && poly_ == o.poly_ && prime_ == o.prime_;
    }
    bool operator!=(const BasePoint& o) const { return !(*this == o); }
    bool operator<(const BasePoint& o) const {
        if (kind_ != o.kind_) return kind_ < o.kind_;
        if (kind_ == Kind::Finite) return poly_ < o.poly_;
        return prime_ < o.prime_;
    }

private:
    Kind kind_ = Kind::Infinity;
    Poly poly_;
    Int prime_ = 0;
};

// Nonzero element of Q(t) (or Q) in factored form: constant * prod p^e, p monic nonconstant.
class RationalFunction {
public:
    RationalFunction() = default;
    RationalFunction(const Rational& c) : constant_(c) {  // NOLINT(google-explicit-constructor)
        if (c == 0) raise("ZeroFunction", "rational functions must be nonzero");
    }

    static RationalFunction from_factors(const Rational& c, const std::vector<std::pair<Poly, long>>& fs) {
        RationalFunction f(c);
        for (const auto& [p, e] : fs) f.mul_factor(p, e);
        return f;
    }
    static RationalFunction from_dense(const DenseRational& d) {
        if (d.is_zero()) raise("ZeroFunction", "rational functions must be nonzero");
        RationalFunction f(Rational(1));
        f.mul_factor(d.num(), 1);
        f.mul_factor(d.den(), -1);
        return f;
    }
    static RationalFunction t() { return from_factors(1, {{Poly::t(), 1}}); }

    const Rational& constant() const { return constant_; }
    const std::map<Poly, long>& factors() const { return factors_; }
    bool is_constant() const { return factors_.empty(); }

    DenseRational dense() const {
        Poly num(constant_), den(Rational(1));
        for (const auto& [p, e] : factors_) {
            if (e > 0) num *= poly_pow(p, static_cast<unsigned long>(e));
            else den *= poly_pow(p, static_cast<unsigned long>(-e));
        }
        return DenseRational(num, den);
    }

    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        RationalFunction r = a;
        r.constant_ *= b.constant_;
        for (const auto& [p, e] : b.factors_) r.add_exp(p, e);
        return r;
    }
    RationalFunction pow(long k) const {
        RationalFunction r(qpow(constant_, k));
        for (const auto& [p, e] : factors_) r.factors_[p] = e * k;
        if (k == 0) r.factors_.clear();
        return r;
    }
    RationalFunction inverse() const { return pow(-1); }

    // Equality in Q(t), independent of the factorization used.
    bool same_function(const RationalFunction& o) const { return dense() == o.dense(); }
    bool operator==(const RationalFunction& o) const { return constant_ == o.constant_ && factors_ == o.factors_; }

    std::string str() const {
        std::string s;
        if (constant_ != 1 || factors_.empty()) s = constant_.get_str();
        for (const auto& [p, e] : factors_) {
            if (!s.empty()) s += "*";
            s += "(" + p.str() + ")";
            if (e != 1) s += "^" + std::to_string(e);
        }
        return s;
    }

private:
    void mul_factor(const Poly& p, long e) {
        if (p.is_zero()) raise("ZeroFunction", "zero factor in a rational function");
        if (e == 0) return;
        constant_ *= qpow(p.lead(), e);
        if (p.degree() >= 1) add_exp(p.monic(), e);
    }
    void add_exp(const Poly& p, long e) {
        long& x = factors_[p];
        x += e;
        if (x == 0) factors_.erase(p);
    }

    Rational constant_ = 1;
    std::map<Poly, long> factors_;
};

// Refines polynomials into pairwise coprime squarefree monic factors so that each input is,
// up to a constant, a product of powers of the output.
inline std::vector<Poly> gcd_free_basis(const std::vector<Poly>& polys) {
    std::vector<Poly> work;
    for (const auto& p : polys)
        if (p.degree() >= 1) work.push_back(p.monic());
    bool changed = true;
    while (changed) {
        changed = false;
        std::sort(work.begin(), work.end());
        work.erase(std::unique(work.begin(), work.end()), work.end());
        for (std::size_t i = 0; i < work.size() && !changed; ++i) {
            Poly g = poly_gcd(work[i], work[i].derivative());
            if (g.degree() >= 1) {
                Poly q = (work[i] / g).monic();
                work.erase(work.begin() + static_cast<long>(i));
                work.push_back(g);
                work.push_back(q);
                changed = true;
            }
        }
        for (std::size_t i = 0; i < work.size() && !changed; ++i)
            for (std::size_t j = i + 1; j < work.size() && !changed; ++j) {
                Poly g = poly_gcd(work[i], work[j]);
                if (g.degree() < 1) continue;
                Poly a = (work[i] / g).monic(), b = (work[j] / g).monic();
                work.erase(work.begin() + static_cast<long>(j));
                work.erase(work.begin() + static_cast<long>(i));
                work.push_back(g);
                if (a.degree() >= 1) work.push_back(a);
                if (b.degree() >= 1) work.push_back(b);
                changed = true;
            }
    }
    return work;
}

// Order of f at z. Finite points are assumed to be elements of a gcd-free basis refining the factors of f.
inline long ord_at(const RationalFunction& f, const BasePoint& z) {
    switch (z.kind()) {
        case BasePoint::Kind::Finite: {
            long o = 0;
            for (const auto& [p, e] : f.factors()) o += e * multiplicity(z.poly(), p);
            return o;
        }
        case BasePoint::Kind::Infinity: {
            long o = 0;
            for (const auto& [p, e] : f.factors()) o -= e * p.degree();
            return o;
        }
        case BasePoint::Kind::Prime:
            if (!f.is_constant()) raise("WrongCurve", "polynomial factors on Spec Z");
            return valuation(f.constant().get_num(), z.prime()) - valuation(f.constant().get_den(), z.prime());
    }
    return 0;
}

class QDivisor {
public:
    QDivisor() = default;
    explicit QDivisor(CurveKind c) : curve_(c) {}

    CurveKind curve() const { return curve_; }
    const std::map<BasePoint, Rational>& coefficients() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    Rational operator[](const BasePoint& z) const {
        auto it = coeffs_.find(z);
        return it == coeffs_.end() ? Rational(0) : it->second;
    }
    void set(const BasePoint& z, const Rational& a) {
        if (!z.lies_on(curve_)) raise("WrongCurve", "point " + z.str() + " is not on " + curve_name(curve_));
        if (a == 0) coeffs_.erase(z);
        else coeffs_[z] = a;
    }
    void add_to(const BasePoint& z, const Rational& a) { set(z, (*this)[z] + a); }

    friend QDivisor operator+(const QDivisor& a, const QDivisor& b) {
        QDivisor r = a;
        for (const auto& [z, c] : b.coeffs_) r.add_to(z, c);
        return r;
    }
    friend QDivisor operator-(const QDivisor& a) {
        QDivisor r(a.curve_);
        for (const auto& [z, c] : a.coeffs_) r.coeffs_[z] = -c;
        return r;
    }
    friend QDivisor operator-(const QDivisor& a, const QDivisor& b) { return a + (-b); }
    friend QDivisor operator*(const Rational& s, const QDivisor& a) {
        QDivisor r(a.curve_);
        for (const auto& [z, c] : a.coeffs_) r.set(z, s * c);
        return r;
    }

    bool is_integral() const {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const auto& kv) { return tvar::is_integral(kv.second); });
    }
    bool is_effective() const {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const auto& kv) { return kv.second >= 0; });
    }

    bool operator==(const QDivisor& o) const { return curve_ == o.curve_ && coeffs_ == o.coeffs_; }
    bool operator!=(const QDivisor& o) const { return !(*this == o); }

    std::string str() const {
        if (coeffs_.empty()) return "0";
        std::string s;
        for (const auto& [z, c] : coeffs_) {
            if (!s.empty()) s += " + ";
            s += c.get_str() + "*" + z.str();
        }
        return s;
    }

private:
    CurveKind curve_ = CurveKind::AffineLine;
    std::map<BasePoint, Rational> coeffs_;
};

// Divisor of f, with points taken from a gcd-free refinement of its factors.
inline QDivisor principal_divisor(const RationalFunction& f, CurveKind curve) {
    QDivisor d(curve);
    if (curve == CurveKind::SpecZ) {
        if (!f.is_constant()) raise("WrongCurve", "polynomial factors on Spec Z");
        std::vector<Int> ps = prime_divisors(f.constant().get_num());
        for (const auto& p : prime_divisors(f.constant().get_den())) ps.push_back(p);
        for (const auto& p : ps) {
            BasePoint z = BasePoint::prime(p);
            d.set(z, ord_at(f, z));
        }
        return d;
    }
    std::vector<Poly> ps;
    for (const auto& [p, e] : f.factors()) ps.push_back(p);
    for (const auto& b : gcd_free_basis(ps)) {
        BasePoint z = BasePoint::finite(b);
        d.set(z, ord_at(f, z));
    }
    if (curve == CurveKind::ProjectiveLine) d.set(BasePoint::infinity(), ord_at(f, BasePoint::infinity()));
    return d;
}

inline QDivisor floor_divisor(const QDivisor& d) {
    QDivisor r(d.curve());
    for (const auto& [z, c] : d.coefficients()) r.set(z, floor_q(c));
    return r;
}

inline Rational divisor_degree(const QDivisor& d) {
    Rational s = 0;
    for (const auto& [z, c] : d.coefficients()) s += c * z.degree();
    return s;
}

inline bool is_principal(const QDivisor& d) {
    if (d.curve() != CurveKind::ProjectiveLine) raise("WrongCurve", "principality test is implemented on P1");
    return divisor_degree(d) == 0;
}

// Checks div f + d >= 0 after refining f's factors together with the finite points of d.
inline bool effective_after_adding(const RationalFunction& f, const QDivisor& d) {
    if (d.curve() == CurveKind::SpecZ) {
        QDivisor s = principal_divisor(f, CurveKind::SpecZ) + d;
        return s.is_effective();
    }
    std::vector<Poly> ps;
    for (const auto& [p, e] : f.factors()) ps.push_back(p);
    for (const auto& [z, c] : d.coefficients())
        if (z.is_finite()) ps.push_back(z.poly());
    for (const auto& b : gcd_free_basis(ps)) {
        Rational coeff = 0;
        for (const auto& [z, c] : d.coefficients())
            if (z.is_finite() && b.divides(z.poly())) coeff += c;
        if (ord_at(f, BasePoint::finite(b)) + coeff < 0) return false;
    }
    if (d.curve() == CurveKind::ProjectiveLine &&
        ord_at(f, BasePoint::infinity()) + d[BasePoint::infinity()] < 0)
        return false;
    return true;
}

struct SectionModule {
    enum class Kind { Zero, FreeRankOne, VectorSpace };
    Kind kind = Kind::Zero;
    RationalFunction generator;              // FreeRankOne
    std::vector<RationalFunction> basis;     // VectorSpace

    bool is_zero() const { return kind == Kind::Zero; }
    std::size_t dimension() const { return kind == Kind::VectorSpace ? basis.size() : 0; }
};

// Generator prod p_z^{-a_z} over the finite points (or primes) of an integral divisor.
inline RationalFunction section_frame(const QDivisor& floor_d) {
    RationalFunction g(Rational(1));
    for (const auto& [z, c] : floor_d.coefficients()) {
        long a = to_long(floor_q(c));
        if (z.is_finite()) g = g * RationalFunction::from_factors(1, {{z.poly(), -a}});
        else if (z.is_prime_point()) g = g * RationalFunction(qpow(Rational(z.prime()), -a));
    }
    return g;
}

// On P1: sections of the floor of d are t^j * g0 for 0 <= j <= n.
inline std::pair<RationalFunction, long> p1_section_frame(const QDivisor& d) {
    QDivisor f = floor_divisor(d);
    return {section_frame(f), to_long(floor_q(divisor_degree(f)))};
}

inline SectionModule sections(const QDivisor& d) {
    SectionModule m;
    if (d.curve() != CurveKind::ProjectiveLine) {
        m.kind = SectionModule::Kind::FreeRankOne;
        m.generator = section_frame(floor_divisor(d));
        return m;
    }
    auto [g0, n] = p1_section_frame(d);
    if (n < 0) return m;
    m.kind = SectionModule::Kind::VectorSpace;
    for (long j = 0; j <= n; ++j) m.basis.push_back(RationalFunction::t().pow(j) * g0);
    return m;
}

}  // namespace tvar

#endif
