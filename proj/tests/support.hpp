#ifndef TVAR_TEST_SUPPORT_HPP
#define TVAR_TEST_SUPPORT_HPP

#include <tvar/polydiv.hpp>

#include <random>

namespace tvar::testing {

inline std::mt19937& rng() {
    static std::mt19937 g(20240611u);
    return g;
}

inline Rational frac(long a, long b) { return make_rational(Int(a), Int(b)); }

inline long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

inline ZVec random_zvec(std::size_t n, long lo, long hi) {
    ZVec v(n);
    for (auto& x : v) x = uniform(lo, hi);
    return v;
}

inline Rational random_rational(long lo, long hi, long maxden) {
    return make_rational(Int(uniform(lo * maxden, hi * maxden)), Int(uniform(1, maxden)));
}

inline QVec random_qvec(std::size_t n, long lo, long hi, long maxden) {
    QVec v(n);
    for (auto& x : v) x = random_rational(lo, hi, maxden);
    return v;
}

// Pointed full-dimensional cone spanned by a few random vectors plus a simplex around an interior direction.
inline Cone random_pointed_cone(std::size_t n, long range = 3) {
    while (true) {
        ZMat g;
        std::size_t k = n + static_cast<std::size_t>(uniform(0, 2));
        for (std::size_t i = 0; i < k; ++i) g.push_back(random_zvec(n, -range, range));
        Cone c = Cone::from_rays(n, g);
        if (c.is_pointed() && c.is_full_dimensional()) return c;
    }
}

inline SigmaPolyhedron random_polyhedron(const Cone& tail, std::size_t nverts, long range, long maxden) {
    std::vector<QVec> pts;
    for (std::size_t i = 0; i < nverts; ++i) pts.push_back(random_qvec(tail.ambient_rank(), -range, range, maxden));
    return SigmaPolyhedron::from_vertices(tail.ambient_rank(), pts, tail);
}

inline QVec q(std::initializer_list<const char*> xs) {
    QVec v;
    for (const char* x : xs) v.push_back(parse_rational(x));
    return v;
}

inline Rational r(const char* x) { return parse_rational(x); }

// Random divisor on an affine base with small data; points 0, 1 on A1 or 2, 3 on Spec Z.
inline PolyhedralDivisor random_affine_divisor(CurveKind curve, long maxden = 2) {
    Cone tail = random_pointed_cone(2, 2);
    PolyhedralDivisor d(curve, tail);
    std::vector<BasePoint> pts;
    if (curve == CurveKind::SpecZ) pts = {BasePoint::prime(2), BasePoint::prime(3)};
    else pts = {BasePoint::at(0), BasePoint::at(1)};
    for (const auto& z : pts) {
        if (uniform(0, 3) == 0) continue;
        d.set(z, random_polyhedron(tail, static_cast<std::size_t>(uniform(1, 2)), 1, maxden));
    }
    return d;
}

}  // namespace tvar::testing

#endif
