#ifndef TVAR_CONE_HPP
#define TVAR_CONE_HPP

#include "linalg.hpp"

#include <boost/dynamic_bitset.hpp>

namespace tvar {

struct DoubleDescription {
    ZMat lineality;  // basis of the lineality space
    ZMat rays;       // extreme rays of the pointed part inside the orthogonal complement of the lineality
};

namespace detail {

inline void sort_unique(ZMat& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace detail

// Double description of {x in Q^n : <a, x> >= 0 for every row a}.
inline DoubleDescription double_description(const ZMat& ineqs, std::size_t n) {
    DoubleDescription out;
    ZMat rows;
    for (const auto& a : ineqs)
        if (!is_zero(a)) rows.push_back(a);
    out.lineality = nullspace_z(rows, n);
    for (const auto& l : out.lineality) {
        rows.push_back(l);
        rows.push_back(neg(l));
    }
    if (n == 0) return out;

    // initial simplicial cone from n independent rows
    std::vector<std::size_t> basis_idx;
    {
        QMat acc;
        for (std::size_t i = 0; i < rows.size() && basis_idx.size() < n; ++i) {
            QMat trial = acc;
            trial.push_back(to_q(rows[i]));
            if (rank(trial, n) == trial.size()) {
                acc = std::move(trial);
                basis_idx.push_back(i);
            }
        }
    }
    const std::size_t m = rows.size();
    QMat b;
    for (auto i : basis_idx) b.push_back(to_q(rows[i]));
    QMat binv = inverse(b);

    struct Ray {
        ZVec v;
        boost::dynamic_bitset<> zeros;
    };
    std::vector<Ray> current;
    boost::dynamic_bitset<> processed(m);
    for (auto i : basis_idx) processed.set(i);
    for (std::size_t j = 0; j < n; ++j) {
        QVec col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = binv[i][j];
        Ray r{primitive(col), boost::dynamic_bitset<>(m)};
        for (std::size_t k = 0; k < n; ++k)
            if (k != j) r.zeros.set(basis_idx[k]);
        current.push_back(std::move(r));
    }

    for (std::size_t ci = 0; ci < m; ++ci) {
        if (processed.test(ci)) continue;
        const ZVec& a = rows[ci];
        std::vector<Int> val(current.size());
        std::vector<std::size_t> pos, negs;
        std::vector<Ray> next;
        for (std::size_t k = 0; k < current.size(); ++k) {
            val[k] = dot(a, current[k].v);
            if (val[k] > 0) pos.push_back(k);
            else if (val[k] < 0) negs.push_back(k);
        }
        for (std::size_t k = 0; k < current.size(); ++k) {
            if (val[k] < 0) continue;
            Ray r = current[k];
            if (val[k] == 0) r.zeros.set(ci);
            next.push_back(std::move(r));
        }
        for (auto p : pos) {
            for (auto q : negs) {
                boost::dynamic_bitset<> common = current[p].zeros & current[q].zeros;
                if (common.count() + 2 < n) continue;
                bool adjacent = true;
                for (std::size_t k = 0; k < current.size() && adjacent; ++k) {
                    if (k == p || k == q) continue;
                    if (common.is_subset_of(current[k].zeros)) adjacent = false;
                }
                if (!adjacent) continue;
                ZVec v(n);
                for (std::size_t i = 0; i < n; ++i)
                    v[i] = val[p] * current[q].v[i] - val[q] * current[p].v[i];
                common.set(ci);
                next.push_back(Ray{primitive(v), common});
            }
        }
        current = std::move(next);
        processed.set(ci);
    }
    for (auto& r : current) out.rays.push_back(r.v);
    detail::sort_unique(out.rays);
    return out;
}

// Rational polyhedral cone carrying both descriptions in canonical form.
class Cone {
public:
    Cone() = default;

    static Cone from_rays(std::size_t n, const ZMat& gens) {
        ZMat g;
        for (const auto& v : gens) {
            check_len(v, n);
            if (!is_zero(v)) g.push_back(primitive(v));
        }
        DoubleDescription dual = double_description(g, n);
        Cone c;
        c.n_ = n;
        c.facets_ = dual.rays;
        c.equations_ = dual.lineality;
        c.complete_from_h();
        return c;
    }

    static Cone from_halfspaces(std::size_t n, const ZMat& normals) {
        ZMat h;
        for (const auto& v : normals) {
            check_len(v, n);
            if (!is_zero(v)) h.push_back(primitive(v));
        }
        DoubleDescription prim = double_description(h, n);
        ZMat gens = prim.rays;
        for (const auto& l : prim.lineality) {
            gens.push_back(l);
            gens.push_back(neg(l));
        }
        return from_rays(n, gens);
    }

    static Cone zero(std::size_t n) { return from_rays(n, {}); }
    static Cone full(std::size_t n) { return from_halfspaces(n, {}); }
    static Cone orthant(std::size_t n) {
        ZMat g;
        for (std::size_t i = 0; i < n; ++i) g.push_back(unit_vector(n, i));
        return from_rays(n, g);
    }

    std::size_t ambient_rank() const { return n_; }
    // Extreme rays of the pointed part followed by ± a lineality basis.
    ZMat rays() const { return with_pm(rays_, lineality_); }
    // Facet normals followed by ± a basis of the orthogonal complement of the span.
    ZMat halfspaces() const { return with_pm(facets_, equations_); }
    const ZMat& extreme_rays() const { return rays_; }
    const ZMat& lineality() const { return lineality_; }
    const ZMat& facets() const { return facets_; }
    const ZMat& equations() const { return equations_; }

    bool is_pointed() const { return lineality_.empty(); }
    bool is_full_dimensional() const { return equations_.empty(); }
    std::size_t dimension() const { return n_ - equations_.size(); }

    template <class V>
    bool contains(const V& x) const {
        for (const auto& f : facets_)
            if (dot(f, x) < 0) return false;
        for (const auto& e : equations_)
            if (dot(e, x) != 0) return false;
        return true;
    }

    // Relative interior membership.
    template <class V>
    bool contains_relint(const V& x) const {
        if (!contains(x)) return false;
        for (const auto& f : facets_)
            if (dot(f, x) == 0) return false;
        return true;
    }

    Cone dual() const {
        Cone d;
        d.n_ = n_;
        d.rays_ = facets_;
        d.lineality_ = equations_;
        d.facets_ = rays_;
        d.equations_ = lineality_;
        return d;
    }

    Cone intersect(const Cone& o) const {
        ZMat h = halfspaces();
        for (const auto& v : o.halfspaces()) h.push_back(v);
        return from_halfspaces(n_, h);
    }

    // Cone generated by the union of both generator sets.
    Cone join(const Cone& o) const {
        ZMat g = rays();
        for (const auto& v : o.rays()) g.push_back(v);
        return from_rays(n_, g);
    }

    bool operator==(const Cone& o) const {
        return n_ == o.n_ && rays_ == o.rays_ && lineality_ == o.lineality_ && facets_ == o.facets_ &&
               equations_ == o.equations_;
    }
    bool operator!=(const Cone& o) const { return !(*this == o); }
    bool operator<(const Cone& o) const {
        return std::tie(n_, rays_, lineality_) < std::tie(o.n_, o.rays_, o.lineality_);
    }

private:
    static void check_len(const ZVec& v, std::size_t n) {
        if (v.size() != n) raise("RankMismatch", "vector " + to_string(v) + " has wrong length");
    }

    static ZMat with_pm(const ZMat& a, const ZMat& lin) {
        ZMat r = a;
        for (const auto& l : lin) {
            r.push_back(l);
            r.push_back(neg(l));
        }
        return r;
    }

    void complete_from_h() {
        DoubleDescription prim = double_description(halfspaces(), n_);
        rays_ = prim.rays;
        lineality_ = prim.lineality;
    }

    std::size_t n_ = 0;
    ZMat rays_, lineality_, facets_, equations_;
};

inline Cone cone_dual(const Cone& c) { return c.dual(); }

// Some integral vector in the relative interior (sum of extreme rays, or 0).
inline ZVec interior_vector(const Cone& c) {
    ZVec s(c.ambient_rank(), Int(0));
    for (const auto& r : c.extreme_rays()) s = add(s, r);
    return s;
}

}  // namespace tvar

#endif
