#ifndef TVAR_LINALG_HPP
#define TVAR_LINALG_HPP

#include "arith.hpp"

#include <optional>

namespace tvar {

using QMat = std::vector<QVec>;  // row-major
using ZMat = std::vector<ZVec>;

inline QMat to_q(const ZMat& m) {
    QMat r;
    r.reserve(m.size());
    for (const auto& row : m) r.push_back(to_q(row));
    return r;
}

// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(QMat& a, std::size_t ncols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncols && row < a.size(); ++col) {
        std::size_t sel = row;
        while (sel < a.size() && a[sel][col] == 0) ++sel;
        if (sel == a.size()) continue;
        std::swap(a[row], a[sel]);
        Rational inv = Rational(1) / a[row][col];
        for (auto& x : a[row]) x *= inv;
        for (std::size_t r = 0; r < a.size(); ++r) {
            if (r == row || a[r][col] == 0) continue;
            Rational f = a[r][col];
            for (std::size_t c = 0; c < a[r].size(); ++c) a[r][c] -= f * a[row][c];
        }
        pivots.push_back(col);
        ++row;
    }
    a.resize(row);
    return pivots;
}

inline std::size_t rank(QMat a, std::size_t ncols) { return rref(a, ncols).size(); }

inline std::size_t rank(const ZMat& a, std::size_t ncols) { return rank(to_q(a), ncols); }

// Basis of {x : a x = 0}, one vector per free column, read off the rref.
inline std::vector<QVec> nullspace(QMat a, std::size_t ncols) {
    auto piv = rref(a, ncols);
    std::vector<bool> is_piv(ncols, false);
    for (auto p : piv) is_piv[p] = true;
    std::vector<QVec> basis;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (is_piv[f]) continue;
        QVec x(ncols, Rational(0));
        x[f] = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = -a[r][f];
        basis.push_back(std::move(x));
    }
    return basis;
}

inline ZMat nullspace_z(const ZMat& a, std::size_t ncols) {
    ZMat out;
    for (const auto& v : nullspace(to_q(a), ncols)) out.push_back(primitive(v));
    return out;
}

inline std::optional<QVec> solve(const QMat& a, const QVec& b, std::size_t ncols) {
    QMat aug = a;
    for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
    auto piv = rref(aug, ncols + 1);
    if (!piv.empty() && piv.back() == ncols) return std::nullopt;
    QVec x(ncols, Rational(0));
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug[r][ncols];
    return x;
}

inline Rational det(QMat a) {
    std::size_t n = a.size();
    Rational d = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t sel = c;
        while (sel < n && a[sel][c] == 0) ++sel;
        if (sel == n) return 0;
        if (sel != c) {
            std::swap(a[sel], a[c]);
            d = -d;
        }
        d *= a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (a[r][c] == 0) continue;
            Rational f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    return d;
}

inline QMat inverse(const QMat& a) {
    std::size_t n = a.size();
    QMat aug(n);
    for (std::size_t i = 0; i < n; ++i) {
        aug[i] = a[i];
        for (std::size_t j = 0; j < n; ++j) aug[i].push_back(Rational(i == j ? 1 : 0));
    }
    auto piv = rref(aug, n);
    if (piv.size() != n || piv.back() != n - 1) raise("Singular", "matrix is not invertible");
    QMat inv(n);
    for (std::size_t i = 0; i < n; ++i) inv[i] = QVec(aug[i].begin() + n, aug[i].end());
    return inv;
}

inline QVec mat_vec(const QMat& a, const QVec& x) {
    QVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = dot(a[i], x);
    return r;
}

// Row Hermite normal form of the lattice spanned by the rows; zero rows dropped.
inline ZMat hermite_basis(ZMat rows, std::size_t ncols) {
    std::size_t top = 0;
    for (std::size_t col = 0; col < ncols && top < rows.size(); ++col) {
        while (true) {
            std::size_t best = rows.size();
            for (std::size_t r = top; r < rows.size(); ++r)
                if (rows[r][col] != 0 && (best == rows.size() || abs(rows[r][col]) < abs(rows[best][col])))
                    best = r;
            if (best == rows.size()) break;
            std::swap(rows[top], rows[best]);
            bool done = true;
            for (std::size_t r = top + 1; r < rows.size(); ++r) {
                if (rows[r][col] == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), rows[r][col].get_mpz_t(), rows[top][col].get_mpz_t());
                for (std::size_t c = 0; c < ncols; ++c) rows[r][c] -= q * rows[top][c];
                if (rows[r][col] != 0) done = false;
            }
            if (done) break;
        }
        if (rows[top][col] == 0) continue;
        if (rows[top][col] < 0)
            for (auto& x : rows[top]) x = -x;
        for (std::size_t r = 0; r < top; ++r) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), rows[r][col].get_mpz_t(), rows[top][col].get_mpz_t());
            if (q != 0)
                for (std::size_t c = 0; c < ncols; ++c) rows[r][c] -= q * rows[top][c];
        }
        ++top;
    }
    rows.resize(top);
    return rows;
}

// Z-basis of {x in Z^n : a x = 0} via unimodular column operations.
inline ZMat integer_kernel(const ZMat& a, std::size_t n) {
    ZMat b = a;
    ZMat u(n, ZVec(n, Int(0)));  // columns of u are tracked as u[.][j]
    for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
    auto col_axpy = [&](std::size_t dst, std::size_t src, const Int& q) {
        for (auto& row : b) row[dst] -= q * row[src];
        for (auto& row : u) row[dst] -= q * row[src];
    };
    auto col_swap = [&](std::size_t x, std::size_t y) {
        for (auto& row : b) std::swap(row[x], row[y]);
        for (auto& row : u) std::swap(row[x], row[y]);
    };
    std::size_t p = 0;
    for (std::size_t r = 0; r < b.size() && p < n; ++r) {
        while (true) {
            std::size_t best = n;
            for (std::size_t j = p; j < n; ++j)
                if (b[r][j] != 0 && (best == n || abs(b[r][j]) < abs(b[r][best]))) best = j;
            if (best == n) break;
            col_swap(p, best);
            bool done = true;
            for (std::size_t j = p + 1; j < n; ++j) {
                if (b[r][j] == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), b[r][j].get_mpz_t(), b[r][p].get_mpz_t());
                col_axpy(j, p, q);
                if (b[r][j] != 0) done = false;
            }
            if (done) {
                ++p;
                break;
            }
        }
    }
    ZMat ker;
    for (std::size_t j = p; j < n; ++j) {
        ZVec v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = u[i][j];
        ker.push_back(std::move(v));
    }
    return hermite_basis(ker, n);
}

// Z-basis of Z^n ∩ span(vs).
inline ZMat saturated_basis(const ZMat& vs, std::size_t n) {
    ZMat perp = nullspace_z(vs, n);
    if (perp.empty()) {
        ZMat id;
        for (std::size_t i = 0; i < n; ++i) id.push_back(unit_vector(n, i));
        return id;
    }
    return integer_kernel(perp, n);
}

inline bool generates_lattice(const ZMat& vs, std::size_t n) {
    ZMat h = hermite_basis(vs, n);
    if (h.size() != n) return false;
    for (std::size_t i = 0; i < n; ++i)
        if (h[i][i] != 1) return false;
    return true;
}

}  // namespace tvar

#endif
