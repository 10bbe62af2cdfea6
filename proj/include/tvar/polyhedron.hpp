#ifndef TVAR_POLYHEDRON_HPP
#define TVAR_POLYHEDRON_HPP

#include "cone.hpp"

#include <optional>
#include <tuple>

namespace tvar {

// <normal, x> >= offset
struct Halfspace {
    ZVec normal;
    Rational offset;

    bool operator==(const Halfspace& o) const { return normal == o.normal && offset == o.offset; }
    bool operator<(const Halfspace& o) const {
        return std::tie(normal, offset) < std::tie(o.normal, o.offset);
    }
};

// Conv(vertices) + tail, kept with an irredundant halfspace description.
class SigmaPolyhedron {
public:
    SigmaPolyhedron() = default;

    static SigmaPolyhedron from_halfspaces(std::size_t n, const std::vector<Halfspace>& hs,
                                           const std::optional<Cone>& tail_hint = std::nullopt) {
        ZMat rows;
        for (const auto& h : hs) {
            if (h.normal.size() != n) raise("RankMismatch", "halfspace normal has wrong length");
            Int den = h.offset.get_den();
            ZVec row = scale(h.normal, den);
            row.push_back(-h.offset.get_num());
            rows.push_back(std::move(row));
        }
        ZVec t(n + 1, Int(0));
        t[n] = 1;
        rows.push_back(t);
        DoubleDescription dd = double_description(rows, n + 1);
        if (!dd.lineality.empty())
            raise("UnboundedLineality", "recession cone of the halfspace system contains a line");
        if (std::none_of(dd.rays.begin(), dd.rays.end(), [n](const ZVec& r) { return r[n] > 0; }))
            raise("EmptyPolyhedron", "halfspace system has no solution");
        SigmaPolyhedron p = from_homogeneous(n, dd.rays);
        if (tail_hint && p.tail_ != *tail_hint)
            raise("TailMismatch", "recession cone differs from the expected tail");
        return p;
    }

    static SigmaPolyhedron from_vertices(std::size_t n, const std::vector<QVec>& points, const Cone& tail) {
        if (points.empty()) raise("EmptyPolyhedron", "no vertices given");
        if (!tail.is_pointed()) raise("UnboundedLineality", "tail cone is not pointed");
        if (tail.ambient_rank() != n) raise("RankMismatch", "tail cone has wrong rank");
        ZMat gens;
        for (const auto& v : points) {
            if (v.size() != n) raise("RankMismatch", "vertex has wrong length");
            gens.push_back(homogenize(v));
        }
        for (const auto& r : tail.extreme_rays()) {
            ZVec g = r;
            g.push_back(0);
            gens.push_back(std::move(g));
        }
        return from_homogeneous(n, gens);
    }

    // The tail itself viewed as a polyhedron with vertex 0.
    static SigmaPolyhedron of_cone(const Cone& tail) {
        return from_vertices(tail.ambient_rank(), {QVec(tail.ambient_rank(), Rational(0))}, tail);
    }

    std::size_t ambient_rank() const { return n_; }
    const std::vector<QVec>& vertices() const { return vertices_; }
    const Cone& tail() const { return tail_; }
    const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }

    bool contains(const QVec& x) const {
        for (const auto& h : halfspaces_)
            if (dot(h.normal, x) < h.offset) return false;
        return true;
    }
    bool contains(const ZVec& x) const { return contains(to_q(x)); }

    bool is_integral() const {
        return std::all_of(vertices_.begin(), vertices_.end(), [](const QVec& v) { return tvar::is_integral(v); });
    }

    bool is_tail_only() const { return vertices_.size() == 1 && is_zero(vertices_[0]); }

    bool operator==(const SigmaPolyhedron& o) const {
        return n_ == o.n_ && vertices_ == o.vertices_ && tail_ == o.tail_ && halfspaces_ == o.halfspaces_;
    }
    bool operator!=(const SigmaPolyhedron& o) const { return !(*this == o); }

private:
    static ZVec homogenize(const QVec& v) {
        Int l = denominator_lcm(v);
        ZVec g(v.size() + 1);
        for (std::size_t i = 0; i < v.size(); ++i) g[i] = v[i].get_num() * (l / v[i].get_den());
        g[v.size()] = l;
        return primitive(g);
    }

    // gens: generators of the homogenization cone {(x,t) : t >= 0} of the polyhedron
    static SigmaPolyhedron from_homogeneous(std::size_t n, const ZMat& gens) {
        DoubleDescription dual = double_description(gens, n + 1);
        SigmaPolyhedron p;
        p.n_ = n;
        ZMat hrows;
        auto add_half = [&](const ZVec& r) {
            ZVec a(r.begin(), r.begin() + n);
            if (is_zero(a)) return;
            Int g = content(a);
            p.halfspaces_.push_back(Halfspace{scale(a, Int(1)), Rational(0)});
            auto& h = p.halfspaces_.back();
            for (auto& x : h.normal) x /= g;
            h.offset = make_rational(-r[n], g);
        };
        for (const auto& r : dual.rays) add_half(r);
        for (const auto& l : dual.lineality) {
            add_half(l);
            add_half(neg(l));
        }
        std::sort(p.halfspaces_.begin(), p.halfspaces_.end());

        for (const auto& h : p.halfspaces_) {
            Int den = h.offset.get_den();
            ZVec row = scale(h.normal, den);
            row.push_back(-h.offset.get_num());
            hrows.push_back(std::move(row));
        }
        ZVec t(n + 1, Int(0));
        t[n] = 1;
        hrows.push_back(t);
        DoubleDescription prim = double_description(hrows, n + 1);
        if (!prim.lineality.empty()) raise("UnboundedLineality", "polyhedron contains a line");
        ZMat tail_rays;
        for (const auto& r : prim.rays) {
            if (r[n] == 0) {
                tail_rays.push_back(ZVec(r.begin(), r.begin() + n));
            } else {
                QVec v(n);
                for (std::size_t i = 0; i < n; ++i) v[i] = make_rational(r[i], r[n]);
                p.vertices_.push_back(std::move(v));
            }
        }
        if (p.vertices_.empty()) raise("EmptyPolyhedron", "halfspace system has no solution");
        std::sort(p.vertices_.begin(), p.vertices_.end());
        p.tail_ = Cone::from_rays(n, tail_rays);
        return p;
    }

    std::size_t n_ = 0;
    std::vector<QVec> vertices_;
    Cone tail_;
    std::vector<Halfspace> halfspaces_;
};

inline SigmaPolyhedron polyhedron_from_halfspaces(std::size_t n, const std::vector<Halfspace>& hs,
                                                  const std::optional<Cone>& tail_hint = std::nullopt) {
    return SigmaPolyhedron::from_halfspaces(n, hs, tail_hint);
}

inline SigmaPolyhedron minkowski_sum(const SigmaPolyhedron& p, const SigmaPolyhedron& q) {
    if (p.ambient_rank() != q.ambient_rank()) raise("RankMismatch", "Minkowski sum of different ranks");
    std::vector<QVec> pts;
    for (const auto& a : p.vertices())
        for (const auto& b : q.vertices()) pts.push_back(add(a, b));
    Cone tail = p.tail().join(q.tail());
    if (!tail.is_pointed()) raise("UnboundedLineality", "sum of tails is not pointed");
    return SigmaPolyhedron::from_vertices(p.ambient_rank(), pts, tail);
}

inline SigmaPolyhedron dilate(const SigmaPolyhedron& p, long e) {
    if (e < 0) raise("NegativeFactor", "dilation factor must be non-negative");
    if (e == 0) return SigmaPolyhedron::of_cone(p.tail());
    std::vector<QVec> pts;
    for (const auto& v : p.vertices()) pts.push_back(scale(v, Rational(e)));
    return SigmaPolyhedron::from_vertices(p.ambient_rank(), pts, p.tail());
}

inline SigmaPolyhedron translate(const SigmaPolyhedron& p, const QVec& shift) {
    std::vector<QVec> pts;
    for (const auto& v : p.vertices()) pts.push_back(add(v, shift));
    return SigmaPolyhedron::from_vertices(p.ambient_rank(), pts, p.tail());
}

inline bool in_dual_of_tail(const SigmaPolyhedron& p, const ZVec& m) {
    for (const auto& r : p.tail().rays())
        if (dot(m, r) < 0) return false;
    return true;
}

// min over vertices of <m, v>
inline Rational support_value(const SigmaPolyhedron& p, const ZVec& m) {
    if (m.size() != p.ambient_rank()) raise("RankMismatch", "degree has wrong length");
    if (!in_dual_of_tail(p, m)) raise("Unbounded", "m = " + to_string(m) + " is not in the dual of the tail");
    Rational best = dot(m, p.vertices()[0]);
    for (const auto& v : p.vertices()) {
        Rational x = dot(m, v);
        if (x < best) best = x;
    }
    return best;
}

// Vertex minimum without the tail check (used for degrees outside the weight cone).
inline Rational vertex_min(const SigmaPolyhedron& p, const ZVec& m) {
    Rational best = dot(m, p.vertices()[0]);
    for (const auto& v : p.vertices()) {
        Rational x = dot(m, v);
        if (x < best) best = x;
    }
    return best;
}

// Vertices attaining the minimum of <m, .>
inline std::vector<QVec> face_of(const SigmaPolyhedron& p, const ZVec& m) {
    Rational h = support_value(p, m);
    std::vector<QVec> out;
    for (const auto& v : p.vertices())
        if (dot(m, v) == h) out.push_back(v);
    return out;
}

// Normal cone of a vertex inside the dual of the tail.
inline Cone vertex_normal_cone(const SigmaPolyhedron& p, const QVec& v) {
    ZMat h = p.tail().dual().halfspaces();
    for (const auto& w : p.vertices())
        if (w != v) h.push_back(primitive(sub(w, v)));
    return Cone::from_halfspaces(p.ambient_rank(), h);
}

}  // namespace tvar

#endif
