#include "support.hpp"

#include <tvar/basecurve.hpp>

#include <gtest/gtest.h>

using namespace tvar;
using namespace tvar::testing;

namespace {

Poly P(std::initializer_list<long> c) {
    std::vector<Rational> v;
    for (long x : c) v.emplace_back(x);
    return Poly(std::move(v));
}

const BasePoint z0 = BasePoint::at(0);
const BasePoint z1 = BasePoint::at(1);
const BasePoint inf = BasePoint::infinity();

// z/(z-1)
RationalFunction ratio() { return RationalFunction::from_factors(1, {{P({0, 1}), 1}, {P({-1, 1}), -1}}); }

RationalFunction random_function() {
    std::vector<std::pair<Poly, long>> fs;
    int k = static_cast<int>(uniform(0, 3));
    for (int i = 0; i < k; ++i) {
        Poly p = P({uniform(-2, 2), uniform(-2, 2), uniform(0, 1)});
        if (p.degree() < 1) p = P({uniform(-2, 2), 1});
        fs.push_back({p, uniform(-2, 2)});
    }
    return RationalFunction::from_factors(random_rational(-3, 3, 3) == 0 ? Rational(1) : random_rational(1, 3, 3), fs);
}

}  // namespace

TEST(Poly, Arithmetic) {
    Poly a = P({-1, 0, 1}), b = P({-1, 1});
    EXPECT_EQ(a / b, P({1, 1}));
    EXPECT_TRUE((a % b).is_zero());
    EXPECT_EQ(poly_gcd(a, P({1, 2, 1})), P({1, 1}));
    EXPECT_EQ(a.derivative(), P({0, 2}));
    EXPECT_EQ(a.compose(P({1, 1})), P({0, 2, 1}));
    EXPECT_EQ(a.str(), "t^2 - 1");
}

TEST(DenseRational, Normalizes) {
    DenseRational f(P({-1, 0, 1}), P({-2, 2}));
    EXPECT_EQ(f.num(), Poly(std::vector<Rational>{frac(1, 2), frac(1, 2)}));
    EXPECT_EQ(f.den(), P({1}));
    EXPECT_EQ(f - f, DenseRational(Rational(0)));
}

TEST(Orders, RatioAtPoints) {
    EXPECT_EQ(ord_at(ratio(), z0), 1);
    EXPECT_EQ(ord_at(ratio(), z1), -1);
    EXPECT_EQ(ord_at(ratio(), inf), 0);
    RationalFunction four_thirds(frac(4, 3));
    EXPECT_EQ(ord_at(four_thirds, BasePoint::prime(2)), 2);
    EXPECT_EQ(ord_at(four_thirds, BasePoint::prime(3)), -1);
    EXPECT_EQ(ord_at(RationalFunction(1), z0), 0);
    EXPECT_EQ(ord_at(RationalFunction(1), BasePoint::prime(5)), 0);
}

TEST(Divisors, Principal) {
    QDivisor d = principal_divisor(ratio(), CurveKind::ProjectiveLine);
    QDivisor expect(CurveKind::ProjectiveLine);
    expect.set(z0, 1);
    expect.set(z1, -1);
    EXPECT_EQ(d, expect);
    EXPECT_EQ(divisor_degree(d), 0);
    QDivisor z = principal_divisor(RationalFunction(frac(2, 3)), CurveKind::SpecZ);
    EXPECT_EQ(z[BasePoint::prime(2)], 1);
    EXPECT_EQ(z[BasePoint::prime(3)], -1);
    EXPECT_TRUE(principal_divisor(RationalFunction(Rational(7)), CurveKind::AffineLine).is_zero());
}

TEST(Divisors, FloorAndDegree) {
    QDivisor d(CurveKind::ProjectiveLine);
    d.set(z0, frac(-1, 2));
    d.set(z1, frac(3, 2));
    QDivisor f = floor_divisor(d);
    EXPECT_EQ(f[z0], -1);
    EXPECT_EQ(f[z1], 1);
    QDivisor half(CurveKind::ProjectiveLine);
    half.set(z0, frac(1, 2));
    EXPECT_TRUE(floor_divisor(half).is_zero());
    QDivisor sq(CurveKind::ProjectiveLine);
    sq.set(BasePoint::finite(P({1, 0, 1})), frac(1, 2));
    EXPECT_EQ(divisor_degree(sq), 1);
    EXPECT_EQ(divisor_degree(QDivisor(CurveKind::ProjectiveLine)), 0);
    EXPECT_THROW(d.set(BasePoint::prime(2), 1), Error);
    EXPECT_THROW(QDivisor(CurveKind::AffineLine).set(inf, 1), Error);
}

TEST(Divisors, Principality) {
    QDivisor d(CurveKind::ProjectiveLine);
    d.set(z0, 1);
    d.set(z1, -1);
    EXPECT_TRUE(is_principal(d));
    EXPECT_TRUE(is_principal(frac(1, 2) * d));
    QDivisor one(CurveKind::ProjectiveLine);
    one.set(z0, 1);
    EXPECT_FALSE(is_principal(one));
    try {
        is_principal(QDivisor(CurveKind::AffineLine));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.name(), "WrongCurve");
    }
}

TEST(Sections, Examples) {
    QDivisor d(CurveKind::SpecZ);
    d.set(BasePoint::prime(2), -1);
    d.set(BasePoint::prime(3), 1);
    SectionModule s = sections(d);
    ASSERT_EQ(s.kind, SectionModule::Kind::FreeRankOne);
    EXPECT_EQ(s.generator.constant(), frac(2, 3));

    for (long r = 0; r <= 4; ++r) {
        QDivisor p(CurveKind::ProjectiveLine);
        p.set(z0, r);
        p.set(z1, -(r + 1));
        EXPECT_TRUE(sections(p).is_zero());
    }

    QDivisor a(CurveKind::AffineLine);
    a.set(z0, 1);
    SectionModule sa = sections(a);
    ASSERT_EQ(sa.kind, SectionModule::Kind::FreeRankOne);
    EXPECT_TRUE(sa.generator.same_function(RationalFunction::t().inverse()));
}

TEST(SectionsProperty, DimensionOnP1MatchesMembership) {
    for (int it = 0; it < 60; ++it) {
        QDivisor d(CurveKind::ProjectiveLine);
        d.set(z0, random_rational(-2, 3, 2));
        d.set(z1, random_rational(-2, 2, 3));
        d.set(inf, random_rational(-2, 2, 2));
        d.set(BasePoint::finite(P({1, 0, 1})), Int(uniform(-1, 1)));
        SectionModule s = sections(d);
        long n = to_long(floor_q(divisor_degree(floor_divisor(d))));
        EXPECT_EQ(static_cast<long>(s.dimension()), std::max(0L, n + 1));
        for (const auto& f : s.basis) EXPECT_TRUE(effective_after_adding(f, floor_divisor(d)));
        // one more power of t leaves the space
        if (!s.basis.empty()) {
            EXPECT_FALSE(effective_after_adding(s.basis.back() * RationalFunction::t(), floor_divisor(d)));
        }
    }
}

TEST(RefinementProperty, CoprimeSquarefreeAndAdditive) {
    for (int it = 0; it < 60; ++it) {
        RationalFunction f = random_function(), g = random_function();
        std::vector<Poly> ps;
        for (const auto& [p, e] : f.factors()) ps.push_back(p);
        for (const auto& [p, e] : g.factors()) ps.push_back(p);
        auto basis = gcd_free_basis(ps);
        for (std::size_t i = 0; i < basis.size(); ++i) {
            EXPECT_EQ(poly_gcd(basis[i], basis[i].derivative()).degree(), 0);
            for (std::size_t j = i + 1; j < basis.size(); ++j) EXPECT_EQ(poly_gcd(basis[i], basis[j]).degree(), 0);
        }
        for (const auto& b : basis) {
            BasePoint z = BasePoint::finite(b);
            EXPECT_EQ(ord_at(f * g, z), ord_at(f, z) + ord_at(g, z));
        }
        EXPECT_EQ(divisor_degree(principal_divisor(f, CurveKind::ProjectiveLine)), 0);
        EXPECT_TRUE((f * g).same_function(RationalFunction::from_dense(f.dense() * g.dense())));
    }
}

TEST(SectionsProperty, ProductsOfGenerators) {
    for (int it = 0; it < 30; ++it) {
        QDivisor a(CurveKind::AffineLine), b(CurveKind::AffineLine);
        a.set(z0, Int(uniform(-2, 2)));
        a.set(z1, Int(uniform(-2, 2)));
        b.set(z0, Int(uniform(-2, 2)));
        b.set(BasePoint::at(2), Int(uniform(-2, 2)));
        RationalFunction prod = sections(a).generator * sections(b).generator;
        EXPECT_TRUE(prod.same_function(sections(a + b).generator));
    }
}
