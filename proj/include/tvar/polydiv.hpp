#ifndef TVAR_POLYDIV_HPP
#define TVAR_POLYDIV_HPP

#include "basecurve.hpp"
#include "convexcore.hpp"

#include <map>
#include <set>

namespace tvar {

// f * chi^m
struct HomogeneousElement {
    RationalFunction function;
    ZVec degree;

    friend HomogeneousElement operator*(const HomogeneousElement& a, const HomogeneousElement& b) {
        return {a.function * b.function, add(a.degree, b.degree)};
    }
    HomogeneousElement pow(long k) const { return {function.pow(k), scale(degree, Int(k))}; }
    std::string str() const { return function.str() + "*chi^" + to_string(degree); }
};

// Finite sum of terms f_m chi^m with f_m in Q(t), for exact identities in Q(t)[M].
class GradedElement {
public:
    GradedElement() = default;
    GradedElement(const HomogeneousElement& h) { terms_[h.degree] = h.function.dense(); }  // NOLINT
    GradedElement(const ZVec& m, const DenseRational& f) {
        if (!f.is_zero()) terms_[m] = f;
    }

    const std::map<ZVec, DenseRational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    friend GradedElement operator+(const GradedElement& a, const GradedElement& b) {
        GradedElement r = a;
        for (const auto& [m, f] : b.terms_) r.add_term(m, f);
        return r;
    }
    friend GradedElement operator-(const GradedElement& a) {
        GradedElement r;
        for (const auto& [m, f] : a.terms_) r.terms_[m] = -f;
        return r;
    }
    friend GradedElement operator-(const GradedElement& a, const GradedElement& b) { return a + (-b); }
    friend GradedElement operator*(const GradedElement& a, const GradedElement& b) {
        GradedElement r;
        for (const auto& [m1, f1] : a.terms_)
            for (const auto& [m2, f2] : b.terms_) r.add_term(add(m1, m2), f1 * f2);
        return r;
    }
    GradedElement& operator+=(const GradedElement& o) { return *this = *this + o; }

    bool operator==(const GradedElement& o) const { return terms_ == o.terms_; }
    bool operator!=(const GradedElement& o) const { return !(*this == o); }

    void add_term(const ZVec& m, const DenseRational& f) {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (!f.is_zero()) terms_[m] = f;
            return;
        }
        it->second += f;
        if (it->second.is_zero()) terms_.erase(it);
    }

private:
    std::map<ZVec, DenseRational> terms_;
};

class PolyhedralDivisor {
public:
    PolyhedralDivisor() = default;
    PolyhedralDivisor(CurveKind curve, Cone tail) : curve_(curve), tail_(std::move(tail)) {
        if (!tail_.is_pointed()) raise("NotPointed", "tail cone of a polyhedral divisor must be pointed");
    }

    CurveKind curve() const { return curve_; }
    const Cone& tail() const { return tail_; }
    std::size_t rank() const { return tail_.ambient_rank(); }
    Cone weight_cone() const { return tail_.dual(); }
    const std::map<BasePoint, SigmaPolyhedron>& coefficients() const { return coeffs_; }

    void set(const BasePoint& z, const SigmaPolyhedron& p) {
        if (!z.lies_on(curve_)) raise("WrongCurve", "point " + z.str() + " is not on " + curve_name(curve_));
        if (p.ambient_rank() != rank()) raise("RankMismatch", "coefficient has wrong rank");
        if (p.tail() != tail_) raise("TailMismatch", "coefficient at " + z.str() + " has a different tail");
        if (p.is_tail_only()) coeffs_.erase(z);
        else coeffs_[z] = p;
    }

    SigmaPolyhedron coefficient(const BasePoint& z) const {
        auto it = coeffs_.find(z);
        return it == coeffs_.end() ? SigmaPolyhedron::of_cone(tail_) : it->second;
    }

    bool operator==(const PolyhedralDivisor& o) const {
        return curve_ == o.curve_ && tail_ == o.tail_ && coeffs_ == o.coeffs_;
    }
    bool operator!=(const PolyhedralDivisor& o) const { return !(*this == o); }

private:
    CurveKind curve_ = CurveKind::AffineLine;
    Cone tail_;
    std::map<BasePoint, SigmaPolyhedron> coeffs_;
};

inline bool in_weight_cone(const PolyhedralDivisor& d, const ZVec& m) {
    if (m.size() != d.rank()) raise("RankMismatch", "degree has wrong length");
    for (const auto& r : d.tail().rays())
        if (dot(m, r) < 0) return false;
    return true;
}

inline QDivisor evaluate(const PolyhedralDivisor& d, const ZVec& m) {
    if (!in_weight_cone(d, m)) raise("OutsideWeightCone", "m = " + to_string(m) + " is outside the weight cone");
    QDivisor out(d.curve());
    for (const auto& [z, p] : d.coefficients()) out.set(z, support_value(p, m));
    return out;
}

// Coefficient-wise minimum of <e, v> over the vertices, defined for any e.
inline QDivisor evaluate_vertex_min(const PolyhedralDivisor& d, const ZVec& e) {
    QDivisor out(d.curve());
    for (const auto& [z, p] : d.coefficients()) out.set(z, vertex_min(p, e));
    return out;
}

inline SigmaPolyhedron degree_polyhedron(const PolyhedralDivisor& d) {
    if (d.curve() != CurveKind::ProjectiveLine) raise("WrongCurve", "degree polyhedron is defined on P1");
    SigmaPolyhedron acc = SigmaPolyhedron::of_cone(d.tail());
    for (const auto& [z, p] : d.coefficients()) acc = minkowski_sum(acc, dilate(p, z.degree()));
    return acc;
}

struct ProperReport {
    bool proper = true;
    std::string reason;
    std::optional<QVec> witness;
};

inline ProperReport is_proper(const PolyhedralDivisor& d) {
    ProperReport r;
    if (is_affine(d.curve())) {
        r.reason = "affine base curve";
        return r;
    }
    SigmaPolyhedron deg = degree_polyhedron(d);
    for (const auto& v : deg.vertices()) {
        if (!d.tail().contains(v)) {
            r.proper = false;
            r.reason = "vertex of deg D outside the tail";
            r.witness = v;
            return r;
        }
    }
    QVec origin(d.rank(), Rational(0));
    if (deg.contains(origin)) {
        r.proper = false;
        r.reason = "deg D contains the origin, so it equals the tail";
        r.witness = origin;
        return r;
    }
    r.reason = "origin lies in the tail but not in deg D";
    r.witness = origin;
    return r;
}

// One named check of a report, with a witness when it fails.
struct ConditionResult {
    std::string name;
    bool pass = true;
    std::string witness;
};

struct GradedPiece {
    ZVec degree;
    SectionModule module;
};

inline GradedPiece graded_piece(const PolyhedralDivisor& d, const ZVec& m) {
    return {m, sections(evaluate(d, m))};
}

inline bool member(const HomogeneousElement& el, const PolyhedralDivisor& d) {
    if (el.degree.size() != d.rank()) raise("RankMismatch", "element degree has wrong length");
    if (!in_weight_cone(d, el.degree)) return false;
    if (d.curve() == CurveKind::SpecZ && !el.function.is_constant()) raise("WrongCurve", "polynomial factors on Spec Z");
    return effective_after_adding(el.function, floor_divisor(evaluate(d, el.degree)));
}

namespace detail {

// Points of the base curve seen by a family of functions.
inline std::vector<BasePoint> support_points(const std::vector<RationalFunction>& fs, CurveKind curve) {
    std::vector<BasePoint> out;
    if (curve == CurveKind::SpecZ) {
        std::set<Int> ps;
        for (const auto& f : fs) {
            if (!f.is_constant()) raise("WrongCurve", "polynomial factors on Spec Z");
            for (const auto& p : prime_divisors(f.constant().get_num())) ps.insert(p);
            for (const auto& p : prime_divisors(f.constant().get_den())) ps.insert(p);
        }
        for (const auto& p : ps) out.push_back(BasePoint::prime(p));
        return out;
    }
    std::vector<Poly> polys;
    for (const auto& f : fs)
        for (const auto& [p, e] : f.factors()) polys.push_back(p);
    for (const auto& b : gcd_free_basis(polys)) out.push_back(BasePoint::finite(b));
    if (curve == CurveKind::ProjectiveLine) out.push_back(BasePoint::infinity());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

struct Normalization {
    Cone sigma;
    PolyhedralDivisor divisor;
    std::vector<std::string> warnings;
};

// Polyhedral divisor of the normalization of k[C][f_1 chi^m_1, ...]. Degree-0 generators are ignored.
inline Normalization divisor_from_generators(const std::vector<HomogeneousElement>& gens, CurveKind curve) {
    if (gens.empty()) raise("EmptyInput", "no generators given");
    std::size_t n = gens[0].degree.size();
    std::vector<HomogeneousElement> used;
    for (const auto& g : gens) {
        if (g.degree.size() != n) raise("RankMismatch", "generator degrees have different lengths");
        if (!is_zero(g.degree)) used.push_back(g);
    }
    ZMat degs;
    for (const auto& g : used) degs.push_back(g.degree);
    Cone weights = Cone::from_rays(n, degs);
    if (!weights.is_full_dimensional())
        raise("NonPointedDual", "the degrees do not span the ambient space, so the dual cone contains a line");
    if (!generates_lattice(degs, n)) raise("DegreesDoNotSpan", "the degrees do not generate the lattice");
    Cone sigma = weights.dual();

    std::vector<RationalFunction> fs;
    for (const auto& g : used) fs.push_back(g.function);
    Normalization out{sigma, PolyhedralDivisor(curve, sigma), {}};
    for (const auto& z : detail::support_points(fs, curve)) {
        std::vector<Halfspace> hs;
        for (const auto& g : used) hs.push_back(Halfspace{g.degree, Rational(-ord_at(g.function, z))});
        out.divisor.set(z, polyhedron_from_halfspaces(n, hs, sigma));
    }
    if (curve == CurveKind::ProjectiveLine) {
        ProperReport pr = is_proper(out.divisor);
        if (!pr.proper) out.warnings.push_back("resulting divisor is not proper: " + pr.reason);
    }
    return out;
}

// Rank one: D = -min_i div(f_i)/m_i.
inline QDivisor dpd_rank1(const std::vector<HomogeneousElement>& gens, CurveKind curve) {
    if (gens.empty()) raise("EmptyInput", "no generators given");
    std::vector<RationalFunction> fs;
    for (const auto& g : gens) {
        if (g.degree.size() != 1) raise("RankMismatch", "rank-one presentation needs degrees of length 1");
        if (g.degree[0] <= 0) raise("NonPositiveDegree", "degree " + to_string(g.degree) + " is not positive");
        fs.push_back(g.function);
    }
    QDivisor out(curve);
    for (const auto& z : detail::support_points(fs, curve)) {
        std::optional<Rational> best;
        for (const auto& g : gens) {
            Rational v = make_rational(Int(-ord_at(g.function, z)), g.degree[0]);
            if (!best || v < *best) best = v;
        }
        out.set(z, *best);
    }
    return out;
}

// Maximal cones of the coarsest common refinement of the normal fans of all coefficients.
inline std::vector<Cone> quasi_fan(const PolyhedralDivisor& d) {
    std::set<Cone> cur{d.weight_cone()};
    std::size_t dim = d.rank();
    for (const auto& [z, p] : d.coefficients()) {
        std::set<Cone> next;
        for (const auto& c : cur)
            for (const auto& v : p.vertices()) {
                Cone piece = c.intersect(vertex_normal_cone(p, v));
                if (piece.dimension() == dim) next.insert(piece);
            }
        cur = std::move(next);
    }
    return std::vector<Cone>(cur.begin(), cur.end());
}

struct GeneratorReport {
    std::vector<HomogeneousElement> generators;
    bool generated_in_box = true;       // every piece with degree in the box is reached
    bool saturated_in_double = false;   // the same holds on the doubled box
    std::vector<ZVec> missing;          // degrees where generation failed
};

namespace detail {

inline Box integral_box_of(const SigmaPolyhedron& p) {
    std::size_t n = p.ambient_rank();
    Box b{IVec(n), IVec(n)};
    for (std::size_t i = 0; i < n; ++i) {
        Rational lo = p.vertices()[0][i], hi = lo;
        for (const auto& v : p.vertices()) {
            if (v[i] < lo) lo = v[i];
            if (v[i] > hi) hi = v[i];
        }
        b.lo[i] = to_long(floor_q(lo));
        b.hi[i] = to_long(ceil_q(hi));
    }
    return b;
}

// Lattice points of the weight cone with l(m) <= l_max for some point of the box, sorted by (l, lex).
inline std::vector<IVec> working_degrees(const PolyhedralDivisor& d, const Box& box, const ZVec& ell) {
    std::size_t n = d.rank();
    Cone w = d.weight_cone();
    long lmax = LONG_MIN;
    box.for_each([&](const IVec& x) {
        ZVec m = to_zvec(x);
        if (!w.contains(m)) return;
        lmax = std::max(lmax, to_long(dot(ell, m)));
    });
    if (lmax == LONG_MIN) return {};
    std::vector<Halfspace> hs;
    for (const auto& h : w.halfspaces()) hs.push_back(Halfspace{h, Rational(0)});
    hs.push_back(Halfspace{neg(ell), Rational(-lmax)});
    SigmaPolyhedron region = SigmaPolyhedron::from_halfspaces(n, hs);
    std::vector<IVec> pts = lattice_points(region, integral_box_of(region));
    IVec iell = to_ivec(ell);
    auto lval = [&](const IVec& x) {
        long s = 0;
        for (std::size_t i = 0; i < n; ++i) s += iell[i] * x[i];
        return s;
    };
    std::sort(pts.begin(), pts.end(), [&](const IVec& a, const IVec& b) {
        long la = lval(a), lb = lval(b);
        return la != lb ? la < lb : a < b;
    });
    return pts;
}

// Order of f at the points of a fixed support, as an integral divisor.
inline QDivisor div_on(const RationalFunction& f, const std::vector<BasePoint>& pts, CurveKind curve) {
    QDivisor out(curve);
    for (const auto& z : pts) out.set(z, ord_at(f, z));
    return out;
}

inline QDivisor pointwise_max(const QDivisor& a, const QDivisor& b) {
    QDivisor out(a.curve());
    for (const auto& [z, c] : a.coefficients()) out.set(z, std::max(c, b[z]));
    for (const auto& [z, c] : b.coefficients()) out.set(z, std::max(c, a[z]));
    return out;
}

// Subspace of polynomials of degree <= n, stored as an rref basis of coefficient rows.
struct PolySpace {
    long n = -1;
    QMat rows;

    std::size_t dim() const { return rows.size(); }
    bool add(const Poly& p) {
        if (p.is_zero()) return false;
        if (p.degree() > n) raise("InternalError", "product left the section space");
        QVec row(static_cast<std::size_t>(n + 1), Rational(0));
        for (long k = 0; k <= p.degree(); ++k) row[static_cast<std::size_t>(k)] = p.coeff(static_cast<std::size_t>(k));
        QMat trial = rows;
        trial.push_back(row);
        rref(trial, static_cast<std::size_t>(n + 1));
        if (trial.size() == rows.size()) return false;
        rows = std::move(trial);
        return true;
    }
    std::vector<Poly> basis() const {
        std::vector<Poly> out;
        for (const auto& r : rows) out.emplace_back(std::vector<Rational>(r.begin(), r.end()));
        return out;
    }
};

// Reachable part of each graded piece from a generator set; optionally adds generators for
// degrees inside the box where the reachable part is too small.
class GenerationRun {
public:
    GenerationRun(const PolyhedralDivisor& d, const Box& box, std::vector<HomogeneousElement> gens, bool extend)
        : d_(d), box_(box), gens_(std::move(gens)), extend_(extend) {
        std::vector<RationalFunction> fs;
        for (const auto& g : gens_) fs.push_back(g.function);
        std::set<BasePoint> pts;
        for (const auto& z : support_points(fs, d.curve()))
            if (!z.is_infinity()) pts.insert(z);
        for (const auto& [z, p] : d.coefficients()) pts.insert(z);
        pts_.assign(pts.begin(), pts.end());
        ell_ = interior_vector(d.tail());
        run();
    }

    const std::vector<HomogeneousElement>& generators() const { return gens_; }
    const std::vector<ZVec>& missing() const { return missing_; }

private:
    struct Piece {
        bool reached = false;
        QDivisor module_div;  // affine: reachable module is {f : div f + module_div >= 0}
        RationalFunction frame;  // P1: frame of the full piece
        PolySpace space;         // P1: reachable subspace, relative to the frame
    };

    void run() {
        std::vector<IVec> order = working_degrees(d_, box_, ell_);
        for (const auto& x : order) {
            ZVec m = to_zvec(x);
            Piece pc;
            QDivisor target = floor_divisor(evaluate(d_, m));
            bool p1 = d_.curve() == CurveKind::ProjectiveLine;
            if (p1) {
                auto [g0, top] = p1_section_frame(evaluate(d_, m));
                pc.frame = g0;
                pc.space.n = top;
            }
            if (is_zero(m)) {
                pc.reached = true;
                pc.module_div = QDivisor(d_.curve());
                if (p1 && pc.space.n >= 0) pc.space.add(frame_ratio(RationalFunction(1), pc.frame));
            }
            for (const auto& g : gens_) {
                if (is_zero(g.degree)) continue;
                IVec prev(x.size());
                for (std::size_t i = 0; i < x.size(); ++i) prev[i] = x[i] - to_long(g.degree[i]);
                auto it = pieces_.find(prev);
                if (it == pieces_.end() || !it->second.reached) continue;
                const Piece& src = it->second;
                if (p1) {
                    if (pc.space.n < 0) continue;
                    Poly ratio = frame_ratio(g.function * src.frame, pc.frame);
                    for (const auto& b : src.space.basis()) pc.space.add(ratio * b);
                    pc.reached = pc.space.dim() > 0;
                } else {
                    QDivisor cand = src.module_div - div_on(g.function, pts_, d_.curve());
                    pc.module_div = pc.reached ? pointwise_max(pc.module_div, cand) : cand;
                    pc.reached = true;
                }
            }
            bool complete = p1 ? static_cast<long>(pc.space.dim()) == pc.space.n + 1
                               : (pc.reached && pc.module_div == target);
            if (!complete && box_.contains(x)) {
                if (extend_) {
                    if (p1) {
                        for (long j = 0; j <= pc.space.n; ++j)
                            if (pc.space.add(Poly::monomial(static_cast<std::size_t>(j))))
                                gens_.push_back({RationalFunction::t().pow(j) * pc.frame, m});
                    } else {
                        gens_.push_back({section_frame(target), m});
                        pc.module_div = target;
                    }
                    pc.reached = true;
                } else {
                    missing_.push_back(m);
                }
            }
            pieces_[x] = std::move(pc);
        }
    }

    // f / frame as a polynomial (f is a section relative to the frame).
    static Poly frame_ratio(const RationalFunction& f, const RationalFunction& frame) {
        DenseRational q = (f * frame.inverse()).dense();
        if (!q.den().is_constant()) raise("InternalError", "section is not polynomial relative to its frame");
        return q.num() * Poly(Rational(1) / q.den().lead());
    }

    const PolyhedralDivisor& d_;
    Box box_;
    std::vector<HomogeneousElement> gens_;
    bool extend_;
    std::vector<BasePoint> pts_;
    ZVec ell_;
    std::map<IVec, Piece> pieces_;
    std::vector<ZVec> missing_;
};

// Least common multiple of the denominators of all support values at m.
inline Int value_denominator(const PolyhedralDivisor& d, const ZVec& m) {
    Int l = 1;
    for (const auto& [z, p] : d.coefficients()) l = lcm(l, support_value(p, m).get_den());
    return l;
}

}  // namespace detail

// True when every graded piece with degree in the box is spanned by products of the given elements.
inline bool generates(const PolyhedralDivisor& d, const std::vector<HomogeneousElement>& gens, const Box& box,
                      std::vector<ZVec>* missing = nullptr) {
    detail::GenerationRun run(d, box, gens, false);
    if (missing) *missing = run.missing();
    return run.missing().empty();
}

// Degrees that a box must contain for bounded_generators to be meaningful.
inline std::vector<ZVec> required_degrees(const PolyhedralDivisor& d) {
    std::set<ZVec> req;
    for (const auto& h : hilbert_basis(d.weight_cone())) req.insert(h);
    for (const auto& c : quasi_fan(d))
        for (const auto& r : c.extreme_rays()) req.insert(scale(r, detail::value_denominator(d, r)));
    return std::vector<ZVec>(req.begin(), req.end());
}

// Smallest box containing the origin and every required degree.
inline Box default_generator_box(const PolyhedralDivisor& d) {
    std::size_t n = d.rank();
    Box b{IVec(n, 0), IVec(n, 0)};
    for (const auto& m : required_degrees(d))
        for (std::size_t i = 0; i < n; ++i) {
            b.lo[i] = std::min(b.lo[i], to_long(m[i]));
            b.hi[i] = std::max(b.hi[i], to_long(m[i]));
        }
    return b;
}

inline GeneratorReport bounded_generators(const PolyhedralDivisor& d, const Box& box) {
    if (box.rank() != d.rank()) raise("RankMismatch", "box has wrong rank");
    if (!d.tail().is_full_dimensional()) raise("NotPointed", "weight cone contains a line");
    ProperReport pr = is_proper(d);
    if (!pr.proper) raise("NotProper", pr.reason);
    for (const auto& m : required_degrees(d))
        if (!box.contains(m)) raise("BoxTooSmall", "box must contain " + to_string(m));
    std::vector<HomogeneousElement> start;
    if (d.curve() == CurveKind::AffineLine) start.push_back({RationalFunction::t(), ZVec(d.rank(), Int(0))});
    detail::GenerationRun run(d, box, start, true);
    GeneratorReport rep;
    rep.generators = run.generators();
    rep.generated_in_box = true;
    rep.saturated_in_double = generates(d, rep.generators, box.scaled(2), &rep.missing);
    return rep;
}

}  // namespace tvar

#endif
