#ifndef TVAR_GAACTION_HPP
#define TVAR_GAACTION_HPP

#include "polydiv.hpp"

#include <functional>
#include <set>

namespace tvar {

// e with <e, ray> = -1 and <e, r> >= 0 for the other rays r of the cone.
struct DemazureRoot {
    ZVec vector;
    ZVec ray;
};

inline std::optional<DemazureRoot> is_demazure_root(const Cone& sigma, const ZVec& e) {
    if (e.size() != sigma.ambient_rank()) raise("RankMismatch", "root candidate has wrong length");
    if (!sigma.is_pointed() || sigma.extreme_rays().empty()) return std::nullopt;
    std::optional<ZVec> ray;
    for (const auto& r : sigma.extreme_rays()) {
        Int p = dot(e, r);
        if (p == -1) {
            if (ray) return std::nullopt;
            ray = r;
        } else if (p < 0) {
            return std::nullopt;
        }
    }
    if (!ray) return std::nullopt;
    return DemazureRoot{e, *ray};
}

inline std::vector<DemazureRoot> roots_with_ray(const Cone& sigma, const ZVec& rho, const Box& box) {
    const ZMat& rays = sigma.extreme_rays();
    if (!sigma.is_pointed() || std::find(rays.begin(), rays.end(), rho) == rays.end())
        raise("RayNotInCone", to_string(rho) + " is not an extreme ray");
    if (box.rank() != sigma.ambient_rank()) raise("RankMismatch", "box has wrong rank");
    std::vector<DemazureRoot> out;
    box.for_each([&](const IVec& x) {
        auto r = is_demazure_root(sigma, to_zvec(x));
        if (r && r->ray == rho) out.push_back(*r);
    });
    return out;
}

struct ExpansionTerm {
    long x_power = 0;
    HomogeneousElement element;
};

// e^{x∂}(a) = sum of element * x^x_power; zero coefficients are omitted.
struct ExponentialExpansion {
    std::vector<ExpansionTerm> terms;
    std::vector<std::string> notes;

    std::size_t length() const { return terms.size(); }
    long top_power() const { return terms.empty() ? -1 : terms.back().x_power; }

    GradedElement coefficient(long k) const {
        GradedElement g;
        for (const auto& t : terms)
            if (t.x_power == k) g += GradedElement(t.element);
        return g;
    }
};

using ExponentialMap = std::function<ExponentialExpansion(const HomogeneousElement&)>;

namespace detail {

inline void require_root(const Cone& sigma, const DemazureRoot& root) {
    auto r = is_demazure_root(sigma, root.vector);
    if (!r || r->ray != root.ray) raise("InvalidRoot", to_string(root.vector) + " is not a root with ray " + to_string(root.ray));
}

}  // namespace detail

// Exponential of λ∂_e on k[σ^∨ ∩ M] applied to chi^m.
inline ExponentialExpansion toric_exponential(const Cone& sigma, const DemazureRoot& root, const Rational& lambda,
                                              const ZVec& m) {
    detail::require_root(sigma, root);
    if (lambda == 0) raise("ZeroScalar", "lambda must be nonzero");
    if (!sigma.dual().contains(m)) raise("OutsideWeightCone", "m = " + to_string(m) + " is outside the weight cone");
    long k = to_long(dot(m, root.ray));
    ExponentialExpansion out;
    for (long i = 0; i <= k; ++i) {
        Rational c = Rational(binomial(Int(k), static_cast<unsigned long>(i))) * qpow(lambda, i);
        out.terms.push_back({i, {RationalFunction(c), add(m, scale(root.vector, Int(i)))}});
    }
    return out;
}

// Same on c * chi^m with c a constant.
inline ExponentialExpansion toric_exponential(const Cone& sigma, const DemazureRoot& root, const Rational& lambda,
                                              const HomogeneousElement& el) {
    if (!el.function.is_constant()) raise("NonMember", "toric algebra elements have constant coefficients");
    ExponentialExpansion out = toric_exponential(sigma, root, lambda, el.degree);
    for (auto& t : out.terms) t.element.function = t.element.function * el.function;
    return out;
}

inline SectionModule vertical_phi(const PolyhedralDivisor& d, const DemazureRoot& root) {
    detail::require_root(d.tail(), root);
    return sections(floor_divisor(evaluate_vertex_min(d, root.vector)));
}

// Whether Q≥0·rho misses the degree polyhedron (always true over an affine base).
inline bool vertical_exists(const PolyhedralDivisor& d, const ZVec& rho) {
    if (is_affine(d.curve())) return true;
    SigmaPolyhedron deg = degree_polyhedron(d);
    Rational lo = 0;
    std::optional<Rational> hi;
    for (const auto& h : deg.halfspaces()) {
        Int c = dot(h.normal, rho);
        if (c == 0) {
            if (h.offset > 0) return true;
            continue;
        }
        Rational bound = h.offset / Rational(c);
        if (c > 0) lo = std::max(lo, bound);
        else hi = hi ? std::min(*hi, bound) : bound;
    }
    return hi && *hi < lo;
}

inline ExponentialExpansion vertical_exponential(const PolyhedralDivisor& d, const DemazureRoot& root,
                                                 const RationalFunction& phi, const HomogeneousElement& el) {
    detail::require_root(d.tail(), root);
    if (!effective_after_adding(phi, floor_divisor(evaluate_vertex_min(d, root.vector))))
        raise("PhiNotAdmissible", phi.str() + " is not a section for the root " + to_string(root.vector));
    if (!member(el, d)) raise("NonMember", el.str() + " is not in the algebra");
    long k = to_long(dot(el.degree, root.ray));
    ExponentialExpansion out;
    for (long i = 0; i <= k; ++i) {
        Rational c(binomial(Int(k), static_cast<unsigned long>(i)));
        HomogeneousElement term{RationalFunction(c) * phi.pow(i) * el.function, add(el.degree, scale(root.vector, Int(i)))};
        if (!member(term, d)) raise("NonMember", "term " + std::to_string(i) + " = " + term.str() + " left the algebra");
        out.terms.push_back({i, term});
    }
    return out;
}

// Coloring of a divisor on A1 or P1; points without an entry carry the color 0.
struct ColoredDivisor {
    PolyhedralDivisor divisor;
    BasePoint base_point;
    std::optional<BasePoint> infinity_point;
    std::map<BasePoint, QVec> colors;

    QVec color(const BasePoint& z) const {
        auto it = colors.find(z);
        return it == colors.end() ? QVec(divisor.rank(), Rational(0)) : it->second;
    }
    bool in_open_part(const BasePoint& z) const { return !infinity_point || z != *infinity_point; }

    // Supported or colored points of C', plus the base point.
    std::vector<BasePoint> open_points() const {
        std::set<BasePoint> pts{base_point};
        for (const auto& [z, p] : divisor.coefficients()) pts.insert(z);
        for (const auto& [z, v] : colors) pts.insert(z);
        std::vector<BasePoint> out;
        for (const auto& z : pts)
            if (in_open_part(z)) out.push_back(z);
        return out;
    }
};

struct ColoringReport {
    std::vector<ConditionResult> conditions;
    Int d = 1;
    QVec v_deg;

    bool all_pass() const {
        return std::all_of(conditions.begin(), conditions.end(), [](const ConditionResult& c) { return c.pass; });
    }
};

namespace detail {

inline SigmaPolyhedron open_degree_polyhedron(const ColoredDivisor& cd) {
    const PolyhedralDivisor& d = cd.divisor;
    SigmaPolyhedron acc = SigmaPolyhedron::of_cone(d.tail());
    for (const auto& [z, p] : d.coefficients())
        if (cd.in_open_part(z)) acc = minkowski_sum(acc, dilate(p, z.degree()));
    return acc;
}

inline Int denominator_of(const QVec& v) { return denominator_lcm(v); }

inline bool is_vertex(const SigmaPolyhedron& p, const QVec& v) {
    return std::find(p.vertices().begin(), p.vertices().end(), v) != p.vertices().end();
}

}  // namespace detail

inline ColoringReport validate_coloring(const ColoredDivisor& cd) {
    ColoringReport rep;
    const PolyhedralDivisor& d = cd.divisor;
    std::size_t n = d.rank();
    rep.v_deg = QVec(n, Rational(0));

    ConditionResult c1{"proper_colored", true, ""};
    auto fail1 = [&](const std::string& w) {
        if (c1.pass) c1.witness = w;
        c1.pass = false;
    };
    if (d.curve() == CurveKind::SpecZ) fail1("base curve must be A1 or P1");
    bool p1 = d.curve() == CurveKind::ProjectiveLine;
    if (p1 && (!cd.infinity_point || !cd.infinity_point->is_rational()))
        fail1("P1 needs a rational point at infinity");
    if (!p1 && cd.infinity_point) fail1("point at infinity given on an affine base");
    if (c1.pass) {
        ProperReport pr = is_proper(d);
        if (!pr.proper) fail1("divisor is not proper: " + pr.reason);
    }
    for (const auto& [z, v] : cd.colors) {
        if (!z.lies_on(d.curve())) fail1("colored point " + z.str() + " is not on the curve");
        else if (!cd.in_open_part(z)) fail1("point at infinity " + z.str() + " carries a color");
        else if (v.size() != n) fail1("color at " + z.str() + " has wrong length");
        else if (!detail::is_vertex(d.coefficient(z), v))
            fail1("color " + to_string(v) + " is not a vertex of the coefficient at " + z.str());
    }
    for (const auto& [z, p] : d.coefficients())
        if (cd.in_open_part(z) && !cd.colors.count(z)) fail1("supported point " + z.str() + " has no color");
    rep.conditions.push_back(c1);

    ConditionResult c2{"v_deg_vertex", true, ""};
    if (c1.pass) {
        for (const auto& z : cd.open_points()) rep.v_deg = add(rep.v_deg, scale(cd.color(z), Rational(z.degree())));
        SigmaPolyhedron deg = detail::open_degree_polyhedron(cd);
        if (!detail::is_vertex(deg, rep.v_deg)) {
            c2.pass = false;
            c2.witness = "v_deg = " + to_string(rep.v_deg) + " is not a vertex";
        }
    } else {
        c2.pass = false;
        c2.witness = "not evaluated";
    }
    rep.conditions.push_back(c2);

    ConditionResult c3{"integral_colors", true, ""};
    const BasePoint& z0 = cd.base_point;
    if (!z0.lies_on(d.curve()) || !z0.is_rational() || !cd.in_open_part(z0)) {
        c3.pass = false;
        c3.witness = "base point " + z0.str() + " must be a rational point of the open part";
    }
    for (const auto& [z, v] : cd.colors) {
        if (z == z0 || v.size() != n || is_integral(v)) continue;
        c3.pass = false;
        c3.witness = "color at " + z.str() + " is not integral";
    }
    rep.conditions.push_back(c3);
    if (cd.color(z0).size() == n) rep.d = detail::denominator_of(cd.color(z0));
    return rep;
}

struct AssociatedCones {
    Cone omega_dual;
    Cone omega;
    Cone omega_tilde_dual;  // in N x Z
};

namespace detail {

inline QVec lift_q(const QVec& v, const Rational& last) {
    QVec r = v;
    r.push_back(last);
    return r;
}

}  // namespace detail

inline AssociatedCones associated_cones(const ColoredDivisor& cd) {
    ColoringReport rep = validate_coloring(cd);
    if (!rep.all_pass()) {
        for (const auto& c : rep.conditions)
            if (!c.pass) raise("InvalidColoring", c.name + ": " + c.witness);
    }
    const PolyhedralDivisor& d = cd.divisor;
    std::size_t n = d.rank();
    SigmaPolyhedron deg = detail::open_degree_polyhedron(cd);
    ZMat gens = d.tail().rays();
    for (const auto& v : deg.vertices()) {
        QVec w = sub(v, rep.v_deg);
        if (!is_zero(w)) gens.push_back(primitive(w));
    }
    AssociatedCones out;
    out.omega_dual = Cone::from_rays(n, gens);
    out.omega = out.omega_dual.dual();

    ZMat tilde;
    for (const auto& r : out.omega_dual.rays()) {
        ZVec x = r;
        x.push_back(0);
        tilde.push_back(x);
    }
    QVec v0 = cd.color(cd.base_point);
    tilde.push_back(primitive(detail::lift_q(v0, 1)));
    if (cd.infinity_point) {
        SigmaPolyhedron dinf = d.coefficient(*cd.infinity_point);
        for (const auto& w : dinf.vertices())
            tilde.push_back(primitive(detail::lift_q(sub(add(w, rep.v_deg), v0), -1)));
    }
    out.omega_tilde_dual = Cone::from_rays(n + 1, tilde);
    return out;
}

// (colored divisor, e, s, λ) in exponent characteristic p (1 for characteristic 0).
struct CoherentAssemblage {
    ColoredDivisor colored;
    ZVec e;
    std::vector<long> s{0};
    std::vector<Rational> lambda{Rational(1)};
    long p = 1;
};

struct AssemblageReport {
    std::vector<ConditionResult> conditions;
    std::vector<Rational> u;
    Int d = 1;
    long k = 0;  // d = l * p^k with gcd(l, p) = 1
    ZVec rho_tilde;

    bool all_pass() const {
        return std::all_of(conditions.begin(), conditions.end(), [](const ConditionResult& c) { return c.pass; });
    }
};

namespace detail {

inline void require_well_formed(const CoherentAssemblage& ca) {
    const auto& s = ca.s;
    if (s.empty() || s.size() != ca.lambda.size()) raise("InvalidAssemblage", "s and lambda must be nonempty of equal length");
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] < 0 || (i > 0 && s[i] <= s[i - 1])) raise("InvalidAssemblage", "s must be strictly increasing and non-negative");
        if (ca.lambda[i] == 0) raise("InvalidAssemblage", "lambda entries must be nonzero");
    }
    if (ca.p != 1 && !is_prime(Int(ca.p))) raise("InvalidAssemblage", "p must be 1 or a prime");
    if (ca.p == 1 && (s.size() != 1 || s[0] != 0)) raise("InvalidAssemblage", "characteristic 0 takes s = (0)");
    if (ca.e.size() != ca.colored.divisor.rank()) raise("RankMismatch", "e has wrong length");
}

inline long p_part(const Int& d, long p) { return p == 1 ? 0 : valuation(d, Int(p)); }

inline ZVec p_power_e(const CoherentAssemblage& ca, std::size_t i) {
    return scale(ca.e, ipow(Int(ca.p), static_cast<unsigned long>(ca.s[i])));
}

}  // namespace detail

inline AssemblageReport assemblage_check(const CoherentAssemblage& ca) {
    detail::require_well_formed(ca);
    const ColoredDivisor& cd = ca.colored;
    ColoringReport col = validate_coloring(cd);
    AssociatedCones cones = associated_cones(cd);
    const PolyhedralDivisor& d = cd.divisor;
    QVec v0 = cd.color(cd.base_point);

    AssemblageReport rep;
    rep.d = col.d;
    rep.k = detail::p_part(col.d, ca.p);
    Rational pk(ipow(Int(ca.p), static_cast<unsigned long>(rep.k)));
    Rational dq(col.d);
    rep.rho_tilde = to_z(scale(detail::lift_q(v0, 1), dq));

    ConditionResult ca_{"A", true, ""};
    for (std::size_t i = 0; i < ca.s.size(); ++i) {
        ZVec ei = detail::p_power_e(ca, i);
        Rational ui = -1 / dq - dot(ei, v0);
        rep.u.push_back(ui);
        if (!ca_.pass) continue;
        if (!is_integral(ui)) {
            ca_.pass = false;
            ca_.witness = "u_" + std::to_string(i + 1) + " = " + ui.get_str() + " is not an integer";
            continue;
        }
        ZVec et = ei;
        et.push_back(ui.get_num());
        auto root = is_demazure_root(cones.omega_tilde_dual, et);
        if (!root || root->ray != rep.rho_tilde) {
            ca_.pass = false;
            ca_.witness = to_string(et) + " is not a root with ray " + to_string(rep.rho_tilde);
        }
    }
    rep.conditions.push_back(ca_);

    ZVec e1 = detail::p_power_e(ca, 0);
    ConditionResult cb{"B", true, ""};
    for (const auto& [z, p] : d.coefficients()) {
        if (z == cd.base_point || !cd.in_open_part(z)) continue;
        QVec vz = cd.color(z);
        for (const auto& v : p.vertices()) {
            if (v == vz || !cb.pass) continue;
            if (pk * dot(e1, v) < 1 + pk * dot(e1, vz)) {
                cb.pass = false;
                cb.witness = "point " + z.str() + ", vertex " + to_string(v);
            }
        }
    }
    rep.conditions.push_back(cb);

    ConditionResult c0{"C_0", true, ""};
    SigmaPolyhedron d0 = d.coefficient(cd.base_point);
    for (const auto& v : d0.vertices()) {
        if (v == v0 || !c0.pass) continue;
        if (dq * dot(e1, v) < 1 + dq * dot(e1, v0)) {
            c0.pass = false;
            c0.witness = "vertex " + to_string(v);
        }
    }
    rep.conditions.push_back(c0);

    ConditionResult cinf{"C_inf", true, ""};
    if (cd.infinity_point) {
        SigmaPolyhedron dinf = d.coefficient(*cd.infinity_point);
        for (const auto& v : dinf.vertices()) {
            if (!cinf.pass) continue;
            if (dq * dot(e1, v) < -1 - dq * dot(e1, col.v_deg)) {
                cinf.pass = false;
                cinf.witness = "vertex " + to_string(v);
            }
        }
    }
    rep.conditions.push_back(cinf);
    return rep;
}

struct HorizontalOptions {
    long exhaustive_box = 0;  // also test every m of σ^∨ in [-b, b]^n when b > 0
};

struct HorizontalReport {
    std::vector<ConditionResult> conditions;
    std::optional<ColoredDivisor> coloring;  // the coloring read off from ω
    std::string normalization;
    std::size_t samples = 0;
    bool exhaustive = false;

    bool all_pass() const {
        return std::all_of(conditions.begin(), conditions.end(), [](const ConditionResult& c) { return c.pass; });
    }
};

namespace detail {

inline bool cone_contains(const Cone& big, const Cone& small) {
    for (const auto& r : small.rays())
        if (!big.contains(r)) return false;
    return true;
}

// Coloring with ω as the cone where every colored vertex is the minimizer, or a reason it fails.
inline std::optional<ColoredDivisor> coloring_for(const PolyhedralDivisor& d, const Cone& omega,
                                                  const std::optional<BasePoint>& zinf, std::string& why) {
    ColoredDivisor cd{d, BasePoint::at(0), zinf, {}};
    Cone meet = d.weight_cone();
    std::optional<BasePoint> fractional;
    for (const auto& [z, p] : d.coefficients()) {
        if (zinf && z == *zinf) continue;
        std::optional<QVec> vz;
        for (const auto& v : p.vertices()) {
            Cone nc = vertex_normal_cone(p, v);
            if (cone_contains(nc, omega)) {
                vz = v;
                meet = meet.intersect(nc);
                break;
            }
        }
        if (!vz) {
            why = "support function at " + z.str() + " is not linear on omega";
            return std::nullopt;
        }
        cd.colors[z] = *vz;
        if (!is_integral(*vz)) {
            if (fractional || !z.is_rational()) {
                why = "non-integral slope at " + z.str();
                return std::nullopt;
            }
            fractional = z;
        }
    }
    if (!cone_contains(omega, meet)) {
        why = "omega is not a maximal cone of the quasi-fan";
        return std::nullopt;
    }
    if (fractional) {
        cd.base_point = *fractional;
    } else {
        std::optional<BasePoint> pick;
        for (const auto& [z, v] : cd.colors)
            if (z.is_rational() && !pick) pick = z;
        if (!pick) pick = (zinf && *zinf == BasePoint::at(0)) ? BasePoint::at(1) : BasePoint::at(0);
        cd.base_point = *pick;
    }
    return cd;
}

}  // namespace detail

inline HorizontalReport horizontal_conditions(const PolyhedralDivisor& d, const Cone& omega, const ZVec& e, long p,
                                              long s1, const HorizontalOptions& opts = {}) {
    if (d.curve() == CurveKind::SpecZ) raise("UnsupportedCurve", "horizontal actions need A1 or P1");
    if (p != 1 && !is_prime(Int(p))) raise("InvalidAssemblage", "p must be 1 or a prime");
    if (s1 < 0) raise("InvalidAssemblage", "s1 must be non-negative");
    if (e.size() != d.rank() || omega.ambient_rank() != d.rank()) raise("RankMismatch", "omega or e has wrong rank");
    std::size_t n = d.rank();
    HorizontalReport rep;
    rep.conditions.push_back({"i", true, ""});

    std::vector<std::optional<BasePoint>> candidates;
    if (d.curve() == CurveKind::AffineLine) {
        candidates.push_back(std::nullopt);
    } else {
        candidates.push_back(BasePoint::infinity());
        for (const auto& [z, q] : d.coefficients())
            if (z.is_rational() && !z.is_infinity()) candidates.push_back(z);
    }
    ConditionResult c1{"i'", false, ""};
    for (const auto& zinf : candidates) {
        std::string why;
        auto cd = detail::coloring_for(d, omega, zinf, why);
        if (cd) {
            rep.coloring = cd;
            c1.pass = true;
            c1.witness.clear();
            break;
        }
        if (c1.witness.empty()) c1.witness = why;
    }
    rep.conditions.push_back(c1);
    if (!rep.coloring) {
        for (const char* name : {"e_in_weight_cone", "ii", "iii", "iv", "v"}) rep.conditions.push_back({name, false, "not evaluated"});
        return rep;
    }
    const ColoredDivisor& cd = *rep.coloring;
    const BasePoint z0 = cd.base_point;
    rep.normalization = "base point " + z0.str() + " -> 0";
    if (cd.infinity_point) rep.normalization += ", " + cd.infinity_point->str() + " -> inf";
    for (const auto& [z, v] : cd.colors)
        if (z != z0 && !is_zero(v)) rep.normalization += ", coefficient at " + z.str() + " shifted by " + to_string(neg(v));

    QVec v0 = cd.color(z0);
    Int dd = denominator_lcm(v0);
    Rational dq(dd);
    Rational pk(ipow(Int(p), static_cast<unsigned long>(detail::p_part(dd, p))));
    ZVec ep = scale(e, ipow(Int(p), static_cast<unsigned long>(s1)));
    QVec vdeg(n, Rational(0));
    for (const auto& z : cd.open_points()) vdeg = add(vdeg, scale(cd.color(z), Rational(z.degree())));

    Cone sigma_dual = d.weight_cone();
    ConditionResult cw{"e_in_weight_cone", sigma_dual.contains(ep), ""};
    if (!cw.pass) cw.witness = to_string(ep) + " is outside the weight cone";
    rep.conditions.push_back(cw);

    Rational u = -1 / dq - dot(ep, v0);
    ConditionResult c2{"ii", is_integral(u), ""};
    if (!c2.pass) c2.witness = "-1/d - h(e) = " + u.get_str();
    rep.conditions.push_back(c2);

    // Sample degrees: Hilbert bases of σ^∨ and of the quasi-fan cones, their multiples by the common
    // denominator, pairwise sums, and the same shifted back by e.
    Int den = dd;
    for (const auto& [z, q] : d.coefficients())
        for (const auto& v : q.vertices()) den = lcm(den, denominator_lcm(v));
    std::set<ZVec> base{ZVec(n, Int(0))};
    std::vector<Cone> cones = quasi_fan(d);
    cones.push_back(sigma_dual);
    for (const auto& c : cones)
        for (const auto& h : hilbert_basis(c)) {
            base.insert(h);
            base.insert(scale(h, den));
        }
    std::set<ZVec> samples = base;
    for (const auto& a : base)
        for (const auto& b : base) samples.insert(add(a, b));
    std::set<ZVec> shifted;
    for (const auto& s : samples) shifted.insert(sub(s, ep));
    samples.insert(shifted.begin(), shifted.end());
    if (opts.exhaustive_box > 0) {
        rep.exhaustive = true;
        Box b{IVec(n, -opts.exhaustive_box), IVec(n, opts.exhaustive_box)};
        b.for_each([&](const IVec& x) { samples.insert(to_zvec(x)); });
    }

    auto hnorm = [&](const BasePoint& z, const ZVec& m) -> Rational { return support_value(d.coefficient(z), m) - dot(m, cd.color(z)); };
    ConditionResult c3{"iii", true, ""}, c4{"iv", true, ""}, c5{"v", true, ""};
    Rational he = dot(ep, v0);
    for (const auto& m : samples) {
        ZVec me = add(m, ep);
        if (!sigma_dual.contains(m) || !sigma_dual.contains(me)) continue;
        ++rep.samples;
        for (const auto& [z, q] : d.coefficients()) {
            if (z == z0 || !cd.in_open_part(z) || !c3.pass) continue;
            Rational a = hnorm(z, me), b = hnorm(z, m);
            if (a != 0 && floor_q(pk * a) - floor_q(pk * b) < 1) {
                c3.pass = false;
                c3.witness = "m = " + to_string(m) + " at " + z.str();
            }
        }
        Rational h0m = support_value(d.coefficient(z0), m), h0me = support_value(d.coefficient(z0), me);
        if (c4.pass && h0me != dot(me, v0) && floor_q(dq * h0me) - floor_q(dq * h0m) < 1 - dq * he) {
            c4.pass = false;
            c4.witness = "m = " + to_string(m);
        }
        if (cd.infinity_point && c5.pass) {
            QVec shift = sub(vdeg, v0);
            SigmaPolyhedron dinf = d.coefficient(*cd.infinity_point);
            Rational a = support_value(dinf, me) + dot(me, shift), b = support_value(dinf, m) + dot(m, shift);
            if (floor_q(dq * a) - floor_q(dq * b) < -1 - dq * he) {
                c5.pass = false;
                c5.witness = "m = " + to_string(m);
            }
        }
    }
    rep.conditions.push_back(c3);
    rep.conditions.push_back(c4);
    rep.conditions.push_back(c5);
    return rep;
}

struct HorizontalKernel {
    ZMat lattice_basis;  // L = {m : <m, v_{z0}> in Z}
    ZMat generators;     // Hilbert basis of ω ∩ L
    std::vector<HomogeneousElement> elements;  // φ_m chi^m for the generators
};

namespace detail {

// φ with div φ + D(m) = 0 on the open part C'.
inline RationalFunction kernel_function(const ColoredDivisor& cd, const ZVec& m) {
    QDivisor dm = evaluate(cd.divisor, m);
    RationalFunction phi(Rational(1));
    long inf_order = 0;  // order at ∞ of the product so far
    for (const auto& [z, c] : dm.coefficients()) {
        if (!cd.in_open_part(z)) continue;
        if (!is_integral(c)) raise("NonIntegral", "kernel degree " + to_string(m) + " has a fractional value at " + z.str());
        long a = to_long(c.get_num());
        if (z.is_finite()) {
            phi = phi * RationalFunction::from_factors(1, {{z.poly(), -a}});
            inf_order += a * z.degree();
        }
    }
    if (cd.infinity_point && !cd.infinity_point->is_infinity()) {
        long k = inf_order + to_long(floor_q(dm[BasePoint::infinity()]));
        phi = phi * RationalFunction::from_factors(1, {{cd.infinity_point->poly(), k}});
    }
    return phi;
}

}  // namespace detail

inline HorizontalKernel horizontal_kernel(const CoherentAssemblage& ca) {
    AssociatedCones cones = associated_cones(ca.colored);
    std::size_t n = ca.colored.divisor.rank();
    QVec v0 = ca.colored.color(ca.colored.base_point);
    Int dd = denominator_lcm(v0);
    ZVec row = to_z(scale(v0, Rational(dd)));
    row.push_back(-dd);
    HorizontalKernel out;
    ZMat lifted = integer_kernel({row}, n + 1);
    for (auto& v : lifted) v.pop_back();
    out.lattice_basis = hermite_basis(lifted, n);
    out.generators = hilbert_basis_in_lattice(cones.omega, out.lattice_basis);
    for (const auto& m : out.generators) out.elements.push_back({detail::kernel_function(ca.colored, m), m});
    return out;
}

namespace detail {

// Multiplier turning the coloring into colors 0 off the base point: div g_m = sum <m, v_z> z.
inline RationalFunction color_twist(const ColoredDivisor& cd, const ZVec& m) {
    RationalFunction g(Rational(1));
    for (const auto& [z, v] : cd.colors) {
        if (z == cd.base_point || is_zero(v)) continue;
        g = g * RationalFunction::from_factors(1, {{z.poly(), to_long(dot(m, v).get_num())}});
    }
    return g;
}

}  // namespace detail

// Characteristic-0 horizontal exponential: with s = t - a (a the base point) and ζ^d = s,
// ∂^(i)(s^l chi^m) = binom(d(h(m)+l), i) λ^i s^(l + i u) chi^(m + i e), u = -1/d - h(e).
inline ExponentialExpansion horizontal_exponential_char0(const CoherentAssemblage& ca, const Rational& lambda_scale,
                                                         const HomogeneousElement& el) {
    detail::require_well_formed(ca);
    if (ca.p != 1) raise("ConditionsFail", "exponentials are evaluated in characteristic 0 only");
    const ColoredDivisor& cd = ca.colored;
    ColoringReport col = validate_coloring(cd);
    for (const auto& c : col.conditions)
        if (!c.pass) raise("ConditionsFail", c.name + ": " + c.witness);
    if (cd.infinity_point && !cd.infinity_point->is_infinity())
        raise("UnsupportedCurve", "the point at infinity must be inf");
    auto a = cd.base_point.root();
    if (!a) raise("UnsupportedCurve", "base point must be a finite rational point");
    Rational lambda = lambda_scale * ca.lambda[0];
    if (lambda == 0) raise("ConditionsFail", "lambda must be nonzero");
    QVec v0 = cd.color(cd.base_point);
    Rational dq(col.d);
    Rational u = -1 / dq - dot(ca.e, v0);
    if (!is_integral(u)) raise("ConditionsFail", "-1/d - h(e) = " + u.get_str() + " is not an integer");
    const PolyhedralDivisor& d = cd.divisor;
    if (!member(el, d)) raise("NonMember", el.str() + " is not in the algebra");

    Poly sa = Poly::linear(*a);
    RationalFunction f = el.function * detail::color_twist(cd, el.degree);
    long ea = 0;
    Poly num(f.constant());
    for (const auto& [q, k] : f.factors()) {
        if (q == sa) ea = k;
        else if (k < 0) raise("NonMember", el.str() + " has a pole away from the base point");
        else num *= poly_pow(q, static_cast<unsigned long>(k));
    }
    Poly shifted = num.compose(Poly(std::vector<Rational>{*a, 1}));  // coefficients in s
    Rational hm = dot(el.degree, v0);
    long top = 0;
    for (std::size_t j = 0; j < shifted.coeffs().size(); ++j) {
        if (shifted.coeffs()[j] == 0) continue;
        Rational n_j = dq * (hm + static_cast<long>(j) + ea);
        if (n_j < 0) raise("NonMember", el.str() + " has negative order at the base point");
        top = std::max(top, to_long(n_j.get_num()));
    }
    long ui = to_long(u.get_num());
    ExponentialExpansion out;
    if (*a != 0) out.notes.push_back("parameter s = " + sa.str());
    for (long i = 0; i <= top; ++i) {
        std::vector<Rational> c(shifted.coeffs().size(), Rational(0));
        for (std::size_t j = 0; j < c.size(); ++j) {
            if (shifted.coeffs()[j] == 0) continue;
            Int n_j = Rational(dq * (hm + static_cast<long>(j) + ea)).get_num();
            c[j] = shifted.coeffs()[j] * Rational(binomial(n_j, static_cast<unsigned long>(i))) * qpow(lambda, i);
        }
        Poly pi(std::move(c));
        if (pi.is_zero()) continue;
        ZVec mi = add(el.degree, scale(ca.e, Int(i)));
        RationalFunction g = RationalFunction::from_factors(1, {{pi.compose(sa), 1}, {sa, ea + i * ui}});
        HomogeneousElement term{g * detail::color_twist(cd, mi).inverse(), mi};
        if (!member(term, d)) raise("NonMember", "term " + std::to_string(i) + " = " + term.str() + " left the algebra");
        out.terms.push_back({i, term});
    }
    return out;
}

struct AxiomReport {
    bool identity = true;
    bool leibniz = true;
    bool finiteness = true;
    bool iterativity = true;
    bool homomorphism = true;
    std::size_t samples = 0;
    std::string witness;

    bool all_pass() const { return identity && leibniz && finiteness && iterativity && homomorphism; }
};

namespace detail {

inline GradedElement scalar_times(const Rational& c, const GradedElement& g, std::size_t n) {
    return GradedElement(ZVec(n, Int(0)), DenseRational(c)) * g;
}

inline GradedElement evaluate_at(const ExponentialExpansion& x, const Rational& at, std::size_t n) {
    GradedElement g;
    for (const auto& t : x.terms) g += scalar_times(qpow(at, t.x_power), GradedElement(t.element), n);
    return g;
}

}  // namespace detail

inline AxiomReport lfihd_axiom_check(const ExponentialMap& exp,
                                     const std::vector<std::pair<HomogeneousElement, HomogeneousElement>>& samples) {
    AxiomReport rep;
    auto note = [&](bool& flag, const std::string& w) {
        if (rep.witness.empty()) rep.witness = w;
        flag = false;
    };
    for (std::size_t s = 0; s < samples.size(); ++s) {
        const auto& [a, b] = samples[s];
        std::size_t n = a.degree.size();
        std::string tag = "sample " + std::to_string(s);
        HomogeneousElement ab = a * b;
        ExponentialExpansion xa = exp(a), xb = exp(b), xab = exp(ab);
        ++rep.samples;

        for (const auto* x : {&xa, &xb, &xab}) {
            for (std::size_t i = 0; i < x->terms.size(); ++i)
                if (x->terms[i].x_power < 0 || (i > 0 && x->terms[i].x_power <= x->terms[i - 1].x_power))
                    note(rep.finiteness, tag + ": x-powers not increasing");
        }
        using Check = std::pair<const ExponentialExpansion*, const HomogeneousElement*>;
        for (const auto& [x, el] : {Check{&xa, &a}, Check{&xb, &b}, Check{&xab, &ab}})
            if (x->coefficient(0) != GradedElement(*el)) note(rep.identity, tag + ": term 0 differs from " + el->str());

        long top = std::max(xab.top_power(), xa.top_power() + xb.top_power());
        for (long k = 0; k <= top; ++k) {
            GradedElement rhs;
            for (long j = 0; j <= k; ++j) rhs += xa.coefficient(j) * xb.coefficient(k - j);
            if (rhs != xab.coefficient(k)) {
                note(rep.leibniz, tag + ": Leibniz rule fails at order " + std::to_string(k));
                break;
            }
        }
        for (long at : {1, 2, -1}) {
            Rational x(at);
            if (detail::evaluate_at(xab, x, n) != detail::evaluate_at(xa, x, n) * detail::evaluate_at(xb, x, n)) {
                note(rep.homomorphism, tag + ": exponential not multiplicative at x = " + std::to_string(at));
                break;
            }
        }
        // ∂^(i) ∘ ∂^(j) = binom(i+j, i) ∂^(i+j) on a
        for (const auto& tj : xa.terms) {
            ExponentialExpansion inner = exp(tj.element);
            long j = tj.x_power;
            long top_i = std::max(inner.top_power(), xa.top_power() - j);
            for (long i = 0; i <= top_i; ++i) {
                GradedElement want = detail::scalar_times(Rational(binomial(Int(i + j), static_cast<unsigned long>(i))),
                                                          xa.coefficient(i + j), n);
                if (inner.coefficient(i) != want) {
                    note(rep.iterativity, tag + ": iterativity fails for i = " + std::to_string(i) + ", j = " + std::to_string(j));
                    break;
                }
            }
        }
    }
    return rep;
}

}  // namespace tvar

#endif
