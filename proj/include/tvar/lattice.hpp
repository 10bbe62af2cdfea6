#ifndef TVAR_LATTICE_HPP
#define TVAR_LATTICE_HPP

#include "polyhedron.hpp"

#include <functional>
#include <map>
#include <queue>
#include <set>

namespace tvar {

using IVec = std::vector<long>;

inline IVec to_ivec(const ZVec& v) {
    IVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = to_long(v[i]);
    return r;
}

inline ZVec to_zvec(const IVec& v) {
    ZVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i];
    return r;
}

struct Box {
    IVec lo, hi;

    std::size_t rank() const { return lo.size(); }
    bool contains(const IVec& x) const {
        for (std::size_t i = 0; i < lo.size(); ++i)
            if (x[i] < lo[i] || x[i] > hi[i]) return false;
        return true;
    }
    bool contains(const ZVec& x) const {
        for (std::size_t i = 0; i < lo.size(); ++i)
            if (x[i] < lo[i] || x[i] > hi[i]) return false;
        return true;
    }
    bool empty() const {
        for (std::size_t i = 0; i < lo.size(); ++i)
            if (lo[i] > hi[i]) return true;
        return false;
    }
    Box scaled(long f) const {
        Box b{lo, hi};
        for (auto& x : b.lo) x *= f;
        for (auto& x : b.hi) x *= f;
        return b;
    }

    template <class F>
    void for_each(F&& f) const {
        if (lo.empty() || empty()) {
            if (lo.empty()) f(IVec{});
            return;
        }
        IVec x = lo;
        while (true) {
            f(x);
            std::size_t i = 0;
            while (i < x.size()) {
                if (x[i] < hi[i]) {
                    ++x[i];
                    break;
                }
                x[i] = lo[i];
                ++i;
            }
            if (i == x.size()) return;
        }
    }
};

// Halfspace system with machine-integer rows, for fast lattice-point tests.
class IntRegion {
public:
    IntRegion() = default;
    explicit IntRegion(const std::vector<Halfspace>& hs) {
        for (const auto& h : hs) {
            Int den = h.offset.get_den();
            rows_.push_back(to_ivec(scale(h.normal, den)));
            rhs_.push_back(to_long(h.offset.get_num()));
        }
    }
    explicit IntRegion(const SigmaPolyhedron& p) : IntRegion(p.halfspaces()) {}

    bool contains(const IVec& x) const {
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            __int128 s = 0;
            for (std::size_t i = 0; i < x.size(); ++i) s += static_cast<__int128>(rows_[k][i]) * x[i];
            if (s < rhs_[k]) return false;
        }
        return true;
    }

private:
    std::vector<IVec> rows_;
    std::vector<long> rhs_;
};

inline std::vector<IVec> lattice_points(const SigmaPolyhedron& p, const Box& box) {
    IntRegion reg(p);
    std::vector<IVec> out;
    box.for_each([&](const IVec& x) {
        if (reg.contains(x)) out.push_back(x);
    });
    return out;
}

// Pulling triangulation of a pointed cone into simplicial cones (lists of rays).
inline void triangulate_cone(const ZMat& rays, std::size_t n, std::vector<ZMat>& out) {
    Cone c = Cone::from_rays(n, rays);
    const ZMat& ext = c.extreme_rays();
    if (ext.size() == c.dimension()) {
        out.push_back(ext);
        return;
    }
    const ZVec& apex = ext[0];
    for (const auto& f : c.facets()) {
        if (dot(f, apex) == 0) continue;
        ZMat face;
        for (const auto& r : ext)
            if (dot(f, r) == 0) face.push_back(r);
        std::vector<ZMat> sub;
        triangulate_cone(face, n, sub);
        for (auto& s : sub) {
            s.insert(s.begin(), apex);
            out.push_back(std::move(s));
        }
    }
}

// Lattice points of the half-open parallelepiped spanned by the columns of a full-rank integer matrix.
inline std::vector<ZVec> parallelepiped_points(const ZMat& gens) {
    std::size_t k = gens.size();
    QMat cols(k, QVec(k));  // matrix with the generators as columns
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < k; ++i) cols[i][j] = gens[j][i];
    QMat inv = inverse(cols);
    auto reduce = [&](const ZVec& y) {
        QVec coef = mat_vec(inv, to_q(y));
        ZVec r = y;
        for (std::size_t j = 0; j < k; ++j) {
            Int f = floor_q(coef[j]);
            if (f != 0)
                for (std::size_t i = 0; i < k; ++i) r[i] -= f * gens[j][i];
        }
        return r;
    };
    std::set<ZVec> seen;
    std::queue<ZVec> todo;
    ZVec zero(k, Int(0));
    seen.insert(zero);
    todo.push(zero);
    while (!todo.empty()) {
        ZVec x = todo.front();
        todo.pop();
        for (std::size_t i = 0; i < k; ++i) {
            ZVec y = x;
            y[i] += 1;
            y = reduce(y);
            if (seen.insert(y).second) todo.push(y);
        }
    }
    return std::vector<ZVec>(seen.begin(), seen.end());
}

namespace detail {

inline ZMat hilbert_full_dimensional(const ZMat& rays, std::size_t k) {
    std::vector<ZMat> simplices;
    triangulate_cone(rays, k, simplices);
    std::set<ZVec> cand(rays.begin(), rays.end());
    for (const auto& s : simplices)
        for (auto& p : parallelepiped_points(s))
            if (!is_zero(p)) cand.insert(p);
    Cone c = Cone::from_rays(k, rays);
    std::vector<ZVec> cv(cand.begin(), cand.end());
    ZMat basis;
    for (const auto& x : cv) {
        bool reducible = false;
        for (const auto& y : cv) {
            if (y == x) continue;
            if (c.contains(sub(x, y))) {
                reducible = true;
                break;
            }
        }
        if (!reducible) basis.push_back(x);
    }
    std::sort(basis.begin(), basis.end());
    return basis;
}

}  // namespace detail

// Minimal generating set of the monoid c ∩ Z^n.
inline ZMat hilbert_basis(const Cone& c) {
    if (!c.is_pointed()) raise("NotPointed", "cone contains a line");
    std::size_t n = c.ambient_rank();
    const ZMat& rays = c.extreme_rays();
    if (rays.empty()) return {};
    ZMat lat = saturated_basis(rays, n);  // rows: Z-basis of Z^n ∩ span
    std::size_t k = lat.size();
    QMat bt(n, QVec(k));
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < n; ++i) bt[i][j] = lat[j][i];
    ZMat local;
    for (const auto& r : rays) {
        auto y = solve(bt, to_q(r), k);
        local.push_back(to_z(*y));
    }
    ZMat hb = detail::hilbert_full_dimensional(local, k);
    ZMat out;
    for (const auto& y : hb) {
        ZVec x(n, Int(0));
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t i = 0; i < n; ++i) x[i] += y[j] * lat[j][i];
        out.push_back(std::move(x));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Hilbert basis of the cone intersected with a sublattice given by a row basis.
inline ZMat hilbert_basis_in_lattice(const Cone& c, const ZMat& lattice) {
    std::size_t n = c.ambient_rank();
    std::size_t k = lattice.size();
    QMat bt(n, QVec(k));
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < n; ++i) bt[i][j] = lattice[j][i];
    ZMat local;
    for (const auto& r : c.rays()) {
        auto y = solve(bt, to_q(r), k);
        if (!y) raise("RankMismatch", "cone is not contained in the span of the lattice");
        local.push_back(primitive(*y));
    }
    ZMat hb = hilbert_basis(Cone::from_rays(k, local));
    ZMat out;
    for (const auto& y : hb) {
        ZVec x(n, Int(0));
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t i = 0; i < n; ++i) x[i] += y[j] * lattice[j][i];
        out.push_back(std::move(x));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Box around Conv(scale·vertices) + up to rank(tail) Hilbert elements of the tail.
// Every lattice point of the polyhedron differs from one in this box by a tail lattice vector.
inline Box reduction_box(const SigmaPolyhedron& p, long scale_factor = 1) {
    std::size_t n = p.ambient_rank();
    ZMat hb = hilbert_basis(p.tail());
    long reach = static_cast<long>(p.tail().dimension());
    Box b{IVec(n), IVec(n)};
    for (std::size_t i = 0; i < n; ++i) {
        Rational lo = p.vertices()[0][i] * scale_factor, hi = lo;
        for (const auto& v : p.vertices()) {
            Rational x = v[i] * scale_factor;
            if (x < lo) lo = x;
            if (x > hi) hi = x;
        }
        long neg_step = 0, pos_step = 0;
        for (const auto& h : hb) {
            neg_step = std::min(neg_step, to_long(h[i]));
            pos_step = std::max(pos_step, to_long(h[i]));
        }
        b.lo[i] = to_long(floor_q(lo)) + reach * neg_step;
        b.hi[i] = to_long(ceil_q(hi)) + reach * pos_step;
    }
    return b;
}

struct NormalityResult {
    bool normal = true;
    std::optional<IVec> witness;  // lattice point of eP that is not a sum of e lattice points of P
};

namespace detail {

// Lattice points of P usable as a summand in a decomposition of a point with l(x) <= lmax.
class Decomposer {
public:
    Decomposer(const SigmaPolyhedron& p, long lmax_target, long e) : region_(p) {
        std::size_t n = p.ambient_rank();
        ell_ = interior_vector(p.tail().dual());
        Rational lmin = dot(ell_, p.vertices()[0]);
        for (const auto& v : p.vertices())
            if (dot(ell_, v) < lmin) lmin = dot(ell_, v);
        lmin_ = to_long(floor_q(lmin));
        long bound = lmax_target - (e - 1) * lmin_;
        std::vector<Halfspace> hs = p.halfspaces();
        hs.push_back(Halfspace{neg(ell_), Rational(-bound)});
        SigmaPolyhedron cut = SigmaPolyhedron::from_halfspaces(n, hs);
        Box b{IVec(n), IVec(n)};
        for (std::size_t i = 0; i < n; ++i) {
            Rational lo = cut.vertices()[0][i], hi = lo;
            for (const auto& v : cut.vertices()) {
                if (v[i] < lo) lo = v[i];
                if (v[i] > hi) hi = v[i];
            }
            b.lo[i] = to_long(floor_q(lo));
            b.hi[i] = to_long(ceil_q(hi));
        }
        points_ = lattice_points(cut, b);
        iell_ = to_ivec(ell_);
    }

    bool decomposable(const IVec& x, long e) {
        if (e == 1) return region_.contains(x);
        auto key = std::make_pair(x, e);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        bool ok = false;
        long lx = dotl(x);
        for (const auto& q : points_) {
            if (lx - dotl(q) < (e - 1) * lmin_) continue;
            IVec rest(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) rest[i] = x[i] - q[i];
            if (decomposable(rest, e - 1)) {
                ok = true;
                break;
            }
        }
        memo_[key] = ok;
        return ok;
    }

private:
    long dotl(const IVec& x) const {
        long s = 0;
        for (std::size_t i = 0; i < x.size(); ++i) s += iell_[i] * x[i];
        return s;
    }

    IntRegion region_;
    ZVec ell_;
    IVec iell_;
    long lmin_ = 0;
    std::vector<IVec> points_;
    std::map<std::pair<IVec, long>, bool> memo_;
};

}  // namespace detail

// Checks (eP) ∩ M = {m_1 + ... + m_e : m_i ∈ P ∩ M}.
inline NormalityResult polyhedron_normality(const SigmaPolyhedron& p, long e) {
    if (!p.is_integral()) raise("NonIntegralVertices", "polyhedron has non-lattice vertices");
    if (!p.tail().is_pointed()) raise("UnboundedLineality", "tail cone is not pointed");
    if (e < 1) raise("NegativeFactor", "dilation factor must be positive");
    NormalityResult res;
    if (e == 1) return res;
    SigmaPolyhedron ep = dilate(p, e);
    Box box = reduction_box(ep);
    std::vector<IVec> targets = lattice_points(ep, box);
    if (targets.empty()) return res;
    ZVec ell = interior_vector(p.tail().dual());
    long lmax = LONG_MIN;
    for (const auto& x : targets) {
        long s = 0;
        for (std::size_t i = 0; i < x.size(); ++i) s += to_long(ell[i]) * x[i];
        lmax = std::max(lmax, s);
    }
    detail::Decomposer dec(p, lmax, e);
    for (const auto& x : targets) {
        if (!dec.decomposable(x, e)) {
            res.normal = false;
            res.witness = x;
            return res;
        }
    }
    return res;
}

inline bool is_polyhedron_normal(const SigmaPolyhedron& p, long e) { return polyhedron_normality(p, e).normal; }

// Support value of {v : <a_i, v> >= b_i} at m, read off the Hilbert basis of the monoid of
// non-negative combinations s with sum s_i a_i on the ray through m.
inline Rational support_value_hilbert_oracle(const std::vector<Halfspace>& hs, const ZVec& m) {
    if (hs.empty()) raise("EmptyPolyhedron", "no halfspaces given");
    std::size_t n = m.size();
    std::size_t r = hs.size();
    if (is_zero(m)) return 0;
    ZMat perp = nullspace_z(ZMat{m}, n);
    ZMat normals;
    for (std::size_t i = 0; i < r; ++i) {
        if (hs[i].normal.size() != n) raise("RankMismatch", "halfspace normal has wrong length");
        normals.push_back(unit_vector(r, i));
    }
    auto image_row = [&](const ZVec& w) {
        ZVec row(r);
        for (std::size_t i = 0; i < r; ++i) row[i] = dot(w, hs[i].normal);
        return row;
    };
    for (const auto& w : perp) {
        ZVec row = image_row(w);
        normals.push_back(row);
        normals.push_back(neg(row));
    }
    normals.push_back(image_row(m));
    Cone c = Cone::from_halfspaces(r, normals);
    ZMat hb = hilbert_basis(c);
    Int mm = dot(m, m);
    std::optional<Rational> best;
    for (const auto& s : hb) {
        ZVec img(n, Int(0));
        Rational cost = 0;
        for (std::size_t i = 0; i < r; ++i) {
            if (s[i] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) img[j] += s[i] * hs[i].normal[j];
            cost -= s[i] * hs[i].offset;
        }
        if (is_zero(img)) {
            if (cost < 0) raise("EmptyPolyhedron", "halfspace system has no solution");
            continue;
        }
        Rational lambda = make_rational(dot(img, m), mm);
        Rational q = cost / lambda;
        if (!best || q < *best) best = q;
    }
    if (!best) raise("Unbounded", "m = " + to_string(m) + " is outside the cone of the normals");
    return -*best;
}

}  // namespace tvar

#endif
