#ifndef TVAR_IDEALKIT_HPP
#define TVAR_IDEALKIT_HPP

#include "polydiv.hpp"

#include <set>

namespace tvar {

// Monomial ideal (chi^{m_1}, ..., chi^{m_r}) of k[weight_cone ∩ M].
struct MonomialIdeal {
    Cone weight_cone;
    std::vector<ZVec> exponents;

    std::size_t rank() const { return weight_cone.ambient_rank(); }

    void validate() const {
        if (!weight_cone.is_full_dimensional() || !weight_cone.is_pointed())
            raise("InvalidIdeal", "weight cone must be full-dimensional and pointed");
        if (exponents.empty()) raise("InvalidIdeal", "ideal needs at least one exponent");
        for (const auto& m : exponents) {
            if (m.size() != rank()) raise("RankMismatch", "exponent has wrong length");
            if (!weight_cone.contains(m)) raise("InvalidIdeal", "exponent " + to_string(m) + " is outside the weight cone");
        }
    }
};

inline SigmaPolyhedron newton_polyhedron(const MonomialIdeal& I) {
    std::vector<QVec> pts;
    for (const auto& m : I.exponents) pts.push_back(to_q(m));
    return SigmaPolyhedron::from_vertices(I.rank(), pts, I.weight_cone);
}

// Lattice points of p not of the form q + s with q in p ∩ M and 0 != s in the tail monoid.
inline std::vector<ZVec> minimal_lattice_points(const SigmaPolyhedron& p) {
    ZMat hb = hilbert_basis(p.tail());
    IntRegion region(p);
    std::vector<ZVec> out;
    for (const auto& x : lattice_points(p, reduction_box(p))) {
        bool minimal = true;
        for (const auto& h : hb) {
            IVec y = x;
            for (std::size_t i = 0; i < y.size(); ++i) y[i] -= to_long(h[i]);
            if (region.contains(y)) {
                minimal = false;
                break;
            }
        }
        if (minimal) out.push_back(to_zvec(x));
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<ZVec> monomial_closure_generators(const MonomialIdeal& I) {
    return minimal_lattice_points(newton_polyhedron(I));
}

struct MonomialNormality {
    bool normal = true;
    long failing_power = 0;
    std::optional<IVec> witness;
};

inline MonomialNormality monomial_is_normal(const MonomialIdeal& I) {
    SigmaPolyhedron p = newton_polyhedron(I);
    MonomialNormality out;
    for (long e = 2; e < static_cast<long>(I.rank()); ++e) {
        NormalityResult r = polyhedron_normality(p, e);
        if (!r.normal) {
            out.normal = false;
            out.failing_power = e;
            out.witness = r.witness;
            return out;
        }
    }
    return out;
}

struct OracleResult {
    bool member = false;
    long power = 0;  // smallest d witnessing membership
};

// Brute force: some d <= d_max and d exponents of I with d*m - (sum) in the weight cone.
// Partial sums are kept only while d_max*m - sum stays in the cone, and only the minimal ones.
inline OracleResult closure_member_oracle(const ZVec& m, const MonomialIdeal& I, long d_max) {
    if (d_max < 1) raise("InvalidBound", "d_max must be positive");
    if (m.size() != I.rank()) raise("RankMismatch", "degree has wrong length");
    std::vector<IVec> facets;
    for (const auto& f : I.weight_cone.facets()) facets.push_back(to_ivec(f));
    std::vector<IVec> exps;
    for (const auto& e : I.exponents) exps.push_back(to_ivec(e));
    IVec mi = to_ivec(m);
    std::size_t n = mi.size();

    // facet values of a vector
    auto values = [&](const IVec& x) {
        IVec v(facets.size());
        for (std::size_t k = 0; k < facets.size(); ++k)
            for (std::size_t i = 0; i < n; ++i) v[k] += facets[k][i] * x[i];
        return v;
    };
    IVec mv = values(mi);
    for (long x : mv)
        if (x < 0) return {};

    std::vector<IVec> evals;
    for (const auto& e : exps) evals.push_back(values(e));
    // partial sums in facet coordinates; x <= y componentwise means y - x lies in the cone
    std::vector<IVec> layer{IVec(facets.size(), 0)};
    for (long d = 1; d <= d_max; ++d) {
        std::set<IVec> next;
        for (const auto& s : layer)
            for (const auto& e : evals) {
                IVec t = s;
                bool ok = true;
                for (std::size_t k = 0; k < t.size(); ++k) {
                    t[k] += e[k];
                    if (t[k] > d_max * mv[k]) ok = false;
                }
                if (ok) next.insert(std::move(t));
            }
        layer.clear();
        for (const auto& t : next) {
            bool dominated = false;
            for (const auto& u : next) {
                if (u == t) continue;
                bool le = true;
                for (std::size_t k = 0; k < t.size() && le; ++k) le = u[k] <= t[k];
                if (le) {
                    dominated = true;
                    break;
                }
            }
            if (!dominated) layer.push_back(t);
        }
        for (const auto& s : layer) {
            bool inside = true;
            for (std::size_t k = 0; k < s.size(); ++k)
                if (d * mv[k] < s[k]) inside = false;
            if (inside) return {true, d};
        }
        if (layer.empty()) break;
    }
    return {};
}

struct GradedIdealPresentation {
    PolyhedralDivisor ambient;
    std::vector<HomogeneousElement> generators;
};

struct ReesPair {
    SigmaPolyhedron newton;
    PolyhedralDivisor rees_divisor;
    PolyhedralDivisor ambient;

    std::size_t rank() const { return ambient.rank(); }
    // Weight cone of the normalized Rees algebra in M x Z.
    Cone rees_weight_cone() const { return rees_divisor.weight_cone(); }
};

namespace detail {

inline ZVec lift(const ZVec& m, const Int& last) {
    ZVec r = m;
    r.push_back(last);
    return r;
}

inline QVec lift(const QVec& v, const Rational& last) {
    QVec r = v;
    r.push_back(last);
    return r;
}

inline std::set<BasePoint> divisor_points(const PolyhedralDivisor& d) {
    std::set<BasePoint> out;
    for (const auto& [z, p] : d.coefficients()) out.insert(z);
    return out;
}

}  // namespace detail

inline ReesPair rees_pair(const GradedIdealPresentation& pres) {
    const PolyhedralDivisor& d = pres.ambient;
    std::size_t n = d.rank();
    if (pres.generators.empty()) raise("EmptyInput", "ideal needs at least one generator");
    for (const auto& g : pres.generators)
        if (!member(g, d)) raise("NonMemberGenerator", g.str() + " is not in the ambient algebra");

    Cone sigma_dual = d.weight_cone();
    std::vector<QVec> degs;
    ZMat wgens;
    for (const auto& g : pres.generators) {
        degs.push_back(to_q(g.degree));
        wgens.push_back(detail::lift(g.degree, 1));
    }
    for (const auto& r : sigma_dual.rays()) wgens.push_back(detail::lift(r, 0));
    Cone omega = Cone::from_rays(n + 1, wgens);
    Cone tail = omega.dual();

    ReesPair rp{SigmaPolyhedron::from_vertices(n, degs, sigma_dual), PolyhedralDivisor(d.curve(), tail), d};

    std::vector<RationalFunction> fs;
    for (const auto& g : pres.generators) fs.push_back(g.function);
    std::set<BasePoint> pts = detail::divisor_points(d);
    for (const auto& z : detail::support_points(fs, d.curve())) pts.insert(z);

    for (const auto& z : pts) {
        std::vector<Halfspace> hs;
        for (const auto& g : pres.generators)
            hs.push_back(Halfspace{detail::lift(g.degree, 1), Rational(-ord_at(g.function, z))});
        SigmaPolyhedron dz = d.coefficient(z);
        for (const auto& h : dz.halfspaces()) hs.push_back(Halfspace{detail::lift(h.normal, 0), h.offset});
        rp.rees_divisor.set(z, SigmaPolyhedron::from_halfspaces(n + 1, hs, tail));
    }
    return rp;
}

inline bool in_dilate(const SigmaPolyhedron& p, const ZVec& m, long e) {
    if (e == 0) return p.tail().contains(m);
    for (const auto& h : p.halfspaces())
        if (dot(h.normal, m) < h.offset * e) return false;
    return true;
}

// Degree-m piece of the closure of I^e (the ambient algebra for e = 0).
inline GradedPiece closure_power_piece(const ReesPair& rp, const ZVec& m, long e) {
    if (e < 0) raise("NegativeFactor", "power must be non-negative");
    if (m.size() != rp.rank()) raise("RankMismatch", "degree has wrong length");
    if (!in_dilate(rp.newton, m, e))
        raise("DegreeOutsideDilate", "m = " + to_string(m) + " is not in " + std::to_string(e) + "P");
    return {m, sections(evaluate(rp.rees_divisor, detail::lift(m, e)))};
}

struct PairReport {
    std::vector<ConditionResult> conditions;

    bool all_pass() const {
        return std::all_of(conditions.begin(), conditions.end(), [](const ConditionResult& c) { return c.pass; });
    }
};

namespace detail {

inline std::vector<IVec> box_points(const Box& b) {
    std::vector<IVec> out;
    b.for_each([&](const IVec& x) { out.push_back(x); });
    return out;
}

// Vertex box of p widened by `pad` in every direction.
inline Box padded_box(const SigmaPolyhedron& p, long pad) {
    Box b = integral_box_of(p);
    for (auto& x : b.lo) x -= pad;
    for (auto& x : b.hi) x += pad;
    return b;
}

// Order at z of the best section of an integral divisor on P1.
inline bool germ_generated(const QDivisor& floor_d, const BasePoint& z) {
    SectionModule s = sections(floor_d);
    long target = -to_long(floor_q(floor_d[z]));
    for (const auto& f : s.basis)
        if (ord_at(f, z) == target) return true;
    return false;
}

}  // namespace detail

inline PairReport pair_conditions(const ReesPair& rp, long max_power = 4) {
    PairReport rep;
    const PolyhedralDivisor& d = rp.ambient;
    const PolyhedralDivisor& dt = rp.rees_divisor;
    std::size_t n = rp.rank();
    Cone sigma_dual = d.weight_cone();

    ConditionResult c1{"newton_polyhedron", true, ""};
    if (rp.newton.tail() != sigma_dual) {
        c1.pass = false;
        c1.witness = "tail differs from the weight cone";
    }
    for (const auto& v : rp.newton.vertices()) {
        if (!c1.pass) break;
        if (!is_integral(v) || !sigma_dual.contains(v)) {
            c1.pass = false;
            c1.witness = "vertex " + to_string(v);
        }
    }
    rep.conditions.push_back(c1);

    ConditionResult c2{"weight_cone_slices", true, ""};
    Cone omega = dt.weight_cone();
    if (omega.ambient_rank() != n + 1) {
        c2.pass = false;
        c2.witness = "Rees divisor has rank " + std::to_string(omega.ambient_rank());
    }
    for (long e = 0; c2.pass && e <= max_power; ++e) {
        Box b = detail::padded_box(e == 0 ? SigmaPolyhedron::of_cone(sigma_dual) : dilate(rp.newton, e), 2);
        for (const auto& x : detail::box_points(b)) {
            ZVec m = to_zvec(x);
            if (omega.contains(detail::lift(m, e)) != in_dilate(rp.newton, m, e)) {
                c2.pass = false;
                c2.witness = "(m, e) = (" + to_string(m) + ", " + std::to_string(e) + ")";
                break;
            }
        }
    }
    rep.conditions.push_back(c2);

    std::set<BasePoint> pts = detail::divisor_points(d);
    for (const auto& [z, p] : dt.coefficients()) pts.insert(z);

    ConditionResult c3{"projection_and_vertices", true, ""};
    if (c2.pass) {
        for (const auto& z : pts) {
            SigmaPolyhedron pt = dt.coefficient(z);
            std::vector<QVec> proj;
            for (const auto& v : pt.vertices()) {
                if (v[n] > 0) {
                    c3.pass = false;
                    c3.witness = "vertex " + to_string(v) + " at " + z.str();
                    break;
                }
                proj.push_back(QVec(v.begin(), v.begin() + static_cast<long>(n)));
            }
            if (!c3.pass) break;
            ZMat rays;
            for (const auto& r : pt.tail().rays()) rays.push_back(ZVec(r.begin(), r.begin() + static_cast<long>(n)));
            Cone ptail = Cone::from_rays(n, rays);
            if (ptail != d.tail() || SigmaPolyhedron::from_vertices(n, proj, ptail) != d.coefficient(z)) {
                c3.pass = false;
                c3.witness = "projection differs at " + z.str();
                break;
            }
        }
    } else {
        c3.pass = false;
        c3.witness = "skipped: weight cone check failed";
    }
    rep.conditions.push_back(c3);

    ConditionResult c4{"halfspace_form", true, ""};
    if (c2.pass) {
        for (const auto& z : pts) {
            SigmaPolyhedron pt = dt.coefficient(z);
            std::set<Halfspace> base;
            SigmaPolyhedron dz = d.coefficient(z);
            for (const auto& h : dz.halfspaces()) base.insert(Halfspace{detail::lift(h.normal, 0), h.offset});
            for (const auto& h : pt.halfspaces()) {
                const Int& c = h.normal[n];
                std::string where = to_string(h.normal) + " >= " + h.offset.get_str() + " at " + z.str();
                if (c == 0) {
                    if (!base.count(h)) {
                        c4.pass = false;
                        c4.witness = "facet " + where + " is not from the base coefficient";
                    }
                } else if (c < 0 || !is_integral(scale(to_q(h.normal), make_rational(Int(1), c))) ||
                           !is_integral(QVec{h.offset / c})) {
                    c4.pass = false;
                    c4.witness = "facet " + where + " is not of the form m(v) + p >= e";
                } else {
                    ZVec m(h.normal.begin(), h.normal.begin() + static_cast<long>(n));
                    for (auto& x : m) x /= c;
                    if (!in_dilate(rp.newton, m, 1)) {
                        c4.pass = false;
                        c4.witness = "facet " + where + " has m outside P";
                    } else if (d.curve() == CurveKind::ProjectiveLine &&
                               !detail::germ_generated(floor_divisor(evaluate(dt, detail::lift(m, 1))), z)) {
                        c4.pass = false;
                        c4.witness = "sections for m = " + to_string(m) + " do not generate the germ at " + z.str();
                    }
                }
                if (!c4.pass) break;
            }
            if (!c4.pass) break;
        }
    } else {
        c4.pass = false;
        c4.witness = "skipped: weight cone check failed";
    }
    rep.conditions.push_back(c4);
    return rep;
}

// Integer hull of {(m, i) : m in P, h_{Δ̃_z}(m, 1) >= -i}.
inline SigmaPolyhedron ptilde(const ReesPair& rp, const BasePoint& z) {
    if (!is_affine(rp.ambient.curve())) raise("WrongCurve", "P~ is defined over an affine base curve");
    std::size_t n = rp.rank();
    std::vector<Halfspace> hs;
    for (const auto& h : rp.newton.halfspaces()) hs.push_back(Halfspace{detail::lift(h.normal, 0), h.offset});
    SigmaPolyhedron dtz = rp.rees_divisor.coefficient(z);
    for (const auto& v : dtz.vertices()) {
        QVec w(v.begin(), v.begin() + static_cast<long>(n));
        Int l = denominator_lcm(QVec{w});
        ZVec normal;
        for (const auto& x : w) normal.push_back(x.get_num() * (l / x.get_den()));
        normal.push_back(l);
        hs.push_back(Halfspace{normal, -v[n] * l});
    }
    SigmaPolyhedron region = SigmaPolyhedron::from_halfspaces(n + 1, hs);
    std::vector<QVec> pts;
    for (const auto& x : lattice_points(region, reduction_box(region))) pts.push_back(to_q(to_zvec(x)));
    return SigmaPolyhedron::from_vertices(n + 1, pts, region.tail());
}

struct SufficientReport {
    bool normal = true;
    std::optional<BasePoint> point;
    long failing_power = 0;
    std::optional<IVec> witness;
};

namespace detail {

// A point of an affine curve outside `used`.
inline BasePoint generic_point(CurveKind curve, const std::set<BasePoint>& used) {
    if (curve == CurveKind::SpecZ) {
        for (Int p = 2;; ++p)
            if (is_prime(p) && !used.count(BasePoint::prime(p))) return BasePoint::prime(p);
    }
    for (long a = 0;; ++a)
        if (!used.count(BasePoint::at(Rational(a)))) return BasePoint::at(Rational(a));
}

}  // namespace detail

// All P~_z normal for z in the support of the Rees divisor plus one point outside it.
inline SufficientReport normality_sufficient(const ReesPair& rp) {
    if (!is_affine(rp.ambient.curve())) raise("WrongCurve", "the sufficient criterion needs an affine base curve");
    std::set<BasePoint> pts = detail::divisor_points(rp.rees_divisor);
    pts.insert(detail::generic_point(rp.ambient.curve(), pts));
    SufficientReport rep;
    long top = static_cast<long>(rp.rank());
    for (const auto& z : pts) {
        SigmaPolyhedron pz = ptilde(rp, z);
        for (long e = 2; e <= top; ++e) {
            NormalityResult r = polyhedron_normality(pz, e);
            if (!r.normal) {
                rep.normal = false;
                rep.point = z;
                rep.failing_power = e;
                rep.witness = r.witness;
                return rep;
            }
        }
    }
    return rep;
}

}  // namespace tvar

#endif
