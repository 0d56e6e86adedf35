#pragma once

/* Exact linear algebra over the prime field F_p.  Everything downstream
 * (Hom spaces, extension groups, exactness tests) reduces to the rank /
 * kernel / solve primitives in this header.  No floating point anywhere. */

#include <cassert>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace exang {

using Coeff = int;  // residue in [0, p)

/// Arithmetic context for a fixed prime p.
struct Field {
    int p = 2;

    Coeff norm(long long x) const {
        long long r = x % p;
        if (r < 0) r += p;
        return static_cast<Coeff>(r);
    }
    Coeff add(Coeff a, Coeff b) const { return norm(static_cast<long long>(a) + b); }
    Coeff sub(Coeff a, Coeff b) const { return norm(static_cast<long long>(a) - b); }
    Coeff mul(Coeff a, Coeff b) const { return norm(static_cast<long long>(a) * b); }
    Coeff neg(Coeff a) const { return norm(-static_cast<long long>(a)); }
    Coeff inv(Coeff a) const {
        assert(a % p != 0);
        // p is tiny; extended Euclid would be overkill.
        for (Coeff x = 1; x < p; ++x)
            if (mul(a, x) == 1) return x;
        throw std::logic_error("Field::inv: not invertible");
    }
};

inline bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

using Vec = std::vector<Coeff>;

inline Vec vec_add(const Field& F, const Vec& a, const Vec& b) {
    assert(a.size() == b.size());
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = F.add(a[i], b[i]);
    return r;
}

inline Vec vec_scale(const Field& F, Coeff c, const Vec& a) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = F.mul(c, a[i]);
    return r;
}

inline bool vec_is_zero(const Vec& a) {
    for (Coeff x : a)
        if (x != 0) return false;
    return true;
}

/// Dense matrix over F_p, row-major.
struct Mat {
    int rows = 0, cols = 0;
    int p = 2;
    Vec a;

    Mat() = default;
    Mat(int r, int c, int prime) : rows(r), cols(c), p(prime), a(static_cast<size_t>(r) * c, 0) {}

    static Mat zero(int r, int c, int prime) { return Mat(r, c, prime); }
    static Mat identity(int n, int prime) {
        Mat m(n, n, prime);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
    static Mat from_rows(const std::vector<Vec>& rs, int c, int prime) {
        Mat m(static_cast<int>(rs.size()), c, prime);
        for (int i = 0; i < m.rows; ++i) {
            assert(static_cast<int>(rs[i].size()) == c);
            for (int j = 0; j < c; ++j) m.at(i, j) = rs[i][j];
        }
        return m;
    }

    Coeff& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    Coeff at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    Vec row(int i) const { return Vec(a.begin() + static_cast<size_t>(i) * cols, a.begin() + static_cast<size_t>(i + 1) * cols); }

    bool is_zero() const { return vec_is_zero(a); }

    bool operator==(const Mat& o) const {
        return rows == o.rows && cols == o.cols && p == o.p && a == o.a;
    }

    Mat transpose() const {
        Mat t(cols, rows, p);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    Mat mul(const Mat& o) const {
        assert(cols == o.rows && p == o.p);
        Field F{p};
        Mat r(rows, o.cols, p);
        for (int i = 0; i < rows; ++i)
            for (int k = 0; k < cols; ++k) {
                Coeff x = at(i, k);
                if (x == 0) continue;
                for (int j = 0; j < o.cols; ++j)
                    r.at(i, j) = F.add(r.at(i, j), F.mul(x, o.at(k, j)));
            }
        return r;
    }

    Vec apply(const Vec& v) const {
        assert(static_cast<int>(v.size()) == cols);
        Field F{p};
        Vec r(rows, 0);
        for (int i = 0; i < rows; ++i) {
            long long acc = 0;
            for (int j = 0; j < cols; ++j) acc += static_cast<long long>(at(i, j)) * v[j];
            r[i] = F.norm(acc);
        }
        return r;
    }

    Mat add(const Mat& o) const {
        assert(rows == o.rows && cols == o.cols && p == o.p);
        Field F{p};
        Mat r(rows, cols, p);
        for (size_t i = 0; i < a.size(); ++i) r.a[i] = F.add(a[i], o.a[i]);
        return r;
    }

    Mat scale(Coeff c) const {
        Field F{p};
        Mat r(rows, cols, p);
        for (size_t i = 0; i < a.size(); ++i) r.a[i] = F.mul(c, a[i]);
        return r;
    }

    Mat neg() const { return scale(p - 1); }
};

/// Row-reduce in place; returns pivot column indices.
inline std::vector<int> rref_inplace(Mat& m) {
    Field F{m.p};
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int pr = -1;
        for (int i = r; i < m.rows; ++i)
            if (m.at(i, c) != 0) { pr = i; break; }
        if (pr < 0) continue;
        if (pr != r)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(pr, j), m.at(r, j));
        Coeff inv = F.inv(m.at(r, c));
        for (int j = 0; j < m.cols; ++j) m.at(r, j) = F.mul(inv, m.at(r, j));
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            Coeff f = m.at(i, c);
            for (int j = 0; j < m.cols; ++j)
                m.at(i, j) = F.sub(m.at(i, j), F.mul(f, m.at(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline int rank(const Mat& m) {
    Mat c = m;
    return static_cast<int>(rref_inplace(c).size());
}

/// Linear subspace of F_p^ambient, basis kept in reduced row echelon form
/// so that equality is plain comparison.
struct Subspace {
    int ambient = 0;
    int p = 2;
    std::vector<Vec> basis;  // rref rows, one per dimension

    static Subspace zero(int ambient, int p) { return Subspace{ambient, p, {}}; }

    static Subspace span(const std::vector<Vec>& gens, int ambient, int p) {
        Mat m = Mat::from_rows(gens, ambient, p);
        auto pivots = rref_inplace(m);
        Subspace s{ambient, p, {}};
        for (size_t i = 0; i < pivots.size(); ++i) s.basis.push_back(m.row(static_cast<int>(i)));
        return s;
    }

    static Subspace full(int ambient, int p) {
        Subspace s{ambient, p, {}};
        for (int i = 0; i < ambient; ++i) {
            Vec e(ambient, 0);
            e[i] = 1;
            s.basis.push_back(e);
        }
        return s;
    }

    int dim() const { return static_cast<int>(basis.size()); }

    bool contains(const Vec& v) const {
        assert(static_cast<int>(v.size()) == ambient);
        Field F{p};
        Vec w = v;
        for (const Vec& b : basis) {
            int pc = -1;
            for (int j = 0; j < ambient; ++j)
                if (b[j] != 0) { pc = j; break; }
            if (pc >= 0 && w[pc] != 0) {
                Coeff f = w[pc];  // pivot entry of b is 1
                for (int j = 0; j < ambient; ++j) w[j] = F.sub(w[j], F.mul(f, b[j]));
            }
        }
        return vec_is_zero(w);
    }

    bool contains(const Subspace& o) const {
        for (const Vec& b : o.basis)
            if (!contains(b)) return false;
        return true;
    }

    bool operator==(const Subspace& o) const {
        return ambient == o.ambient && p == o.p && basis == o.basis;
    }

    Subspace sum(const Subspace& o) const {
        assert(ambient == o.ambient && p == o.p);
        std::vector<Vec> gens = basis;
        gens.insert(gens.end(), o.basis.begin(), o.basis.end());
        return span(gens, ambient, p);
    }

    /// u ∩ w from the kernel of [uᵀ | wᵀ]-style stacked system.
    Subspace intersect(const Subspace& o) const;

    /// Matrix Q with ker Q == this subspace; rows = ambient - dim().
    Mat quotient_projection() const {
        // Reduce each unit vector against the basis and read off the
        // non-pivot coordinates.
        std::vector<int> pivots;
        for (const Vec& b : basis)
            for (int j = 0; j < ambient; ++j)
                if (b[j] != 0) { pivots.push_back(j); break; }
        std::vector<bool> is_piv(ambient, false);
        for (int c : pivots) is_piv[c] = true;
        std::vector<int> free_cols;
        for (int j = 0; j < ambient; ++j)
            if (!is_piv[j]) free_cols.push_back(j);

        Field F{p};
        Mat q(static_cast<int>(free_cols.size()), ambient, p);
        for (int j = 0; j < ambient; ++j) {
            Vec e(ambient, 0);
            e[j] = 1;
            for (const Vec& b : basis) {
                int pc = -1;
                for (int t = 0; t < ambient; ++t)
                    if (b[t] != 0) { pc = t; break; }
                if (pc >= 0 && e[pc] != 0) {
                    Coeff f = e[pc];
                    for (int t = 0; t < ambient; ++t) e[t] = F.sub(e[t], F.mul(f, b[t]));
                }
            }
            for (size_t r = 0; r < free_cols.size(); ++r) q.at(static_cast<int>(r), j) = e[free_cols[r]];
        }
        return q;
    }
};

/// Basis of {v : m v = 0}.
inline Subspace kernel_basis(const Mat& m) {
    Mat c = m;
    auto pivots = rref_inplace(c);
    std::vector<bool> is_piv(m.cols, false);
    for (int pc : pivots) is_piv[pc] = true;
    Field F{m.p};
    std::vector<Vec> gens;
    for (int j = 0; j < m.cols; ++j) {
        if (is_piv[j]) continue;
        Vec v(m.cols, 0);
        v[j] = 1;
        for (size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = F.neg(c.at(static_cast<int>(r), j));
        gens.push_back(v);
    }
    return Subspace::span(gens, m.cols, m.p);
}

/// Column span of m, as a subspace of F_p^rows.
inline Subspace image_basis(const Mat& m) {
    std::vector<Vec> cols;
    for (int j = 0; j < m.cols; ++j) {
        Vec v(m.rows, 0);
        for (int i = 0; i < m.rows; ++i) v[i] = m.at(i, j);
        cols.push_back(v);
    }
    return Subspace::span(cols, m.rows, m.p);
}

inline Subspace Subspace::intersect(const Subspace& o) const {
    assert(ambient == o.ambient && p == o.p);
    // v = x·basis = y·o.basis  ⇔  (x, y) in the kernel of [Bᵀ | -B'ᵀ].
    int du = dim(), dw = o.dim();
    Mat m(ambient, du + dw, p);
    Field F{p};
    for (int j = 0; j < du; ++j)
        for (int i = 0; i < ambient; ++i) m.at(i, j) = basis[j][i];
    for (int j = 0; j < dw; ++j)
        for (int i = 0; i < ambient; ++i) m.at(i, du + j) = F.neg(o.basis[j][i]);
    Subspace ker = kernel_basis(m);
    std::vector<Vec> gens;
    for (const Vec& k : ker.basis) {
        Vec v(ambient, 0);
        for (int j = 0; j < du; ++j)
            for (int i = 0; i < ambient; ++i) v[i] = F.add(v[i], F.mul(k[j], basis[j][i]));
        gens.push_back(v);
    }
    return Subspace::span(gens, ambient, p);
}

struct SolveResult {
    std::optional<Vec> particular;
    Subspace kernel;
};

/// One particular solution of m v = b plus the full kernel; absence of the
/// particular solution flags an inconsistent system.
inline SolveResult solve(const Mat& m, const Vec& b) {
    assert(static_cast<int>(b.size()) == m.rows);
    Mat aug(m.rows, m.cols + 1, m.p);
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols) = b[i];
    }
    auto pivots = rref_inplace(aug);
    for (int pc : pivots)
        if (pc == m.cols) return {std::nullopt, kernel_basis(m)};
    Vec x(m.cols, 0);
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(static_cast<int>(r), m.cols);
    return {x, kernel_basis(m)};
}

/// Factored linear system for repeated solves against many right-hand sides:
/// row-reduce [A | I] once, then each solve is one matrix-vector product.
struct PreparedSolve {
    Mat T;  // row transform, T*A in rref
    std::vector<int> pivots;
    int nrank = 0, cols = 0;

    explicit PreparedSolve(const Mat& A) {
        cols = A.cols;
        Mat aug(A.rows, A.cols + A.rows, A.p);
        for (int i = 0; i < A.rows; ++i) {
            for (int j = 0; j < A.cols; ++j) aug.at(i, j) = A.at(i, j);
            aug.at(i, A.cols + i) = 1;
        }
        // eliminate on the A-columns only
        Field F{A.p};
        int r = 0;
        for (int c = 0; c < A.cols && r < A.rows; ++c) {
            int pr = -1;
            for (int i = r; i < A.rows; ++i)
                if (aug.at(i, c) != 0) { pr = i; break; }
            if (pr < 0) continue;
            if (pr != r)
                for (int j = 0; j < aug.cols; ++j) std::swap(aug.at(pr, j), aug.at(r, j));
            Coeff inv = F.inv(aug.at(r, c));
            for (int j = 0; j < aug.cols; ++j) aug.at(r, j) = F.mul(inv, aug.at(r, j));
            for (int i = 0; i < A.rows; ++i) {
                if (i == r || aug.at(i, c) == 0) continue;
                Coeff f = aug.at(i, c);
                for (int j = 0; j < aug.cols; ++j)
                    aug.at(i, j) = F.sub(aug.at(i, j), F.mul(f, aug.at(r, j)));
            }
            pivots.push_back(c);
            ++r;
        }
        nrank = r;
        T = Mat(A.rows, A.rows, A.p);
        for (int i = 0; i < A.rows; ++i)
            for (int j = 0; j < A.rows; ++j) T.at(i, j) = aug.at(i, A.cols + j);
    }

    std::optional<Vec> solve(const Vec& b) const {
        Vec c = T.apply(b);
        for (int i = nrank; i < T.rows; ++i)
            if (c[i] != 0) return std::nullopt;
        Vec x(cols, 0);
        for (int r = 0; r < nrank; ++r) x[pivots[r]] = c[r];
        return x;
    }
};

/// Iterate over all vectors of F_p^n in lexicographic order.
struct VecEnum {
    int n, p;
    bool done = false;
    Vec cur;
    explicit VecEnum(int n_, int p_) : n(n_), p(p_), cur(n_, 0) {}
    const Vec& value() const { return cur; }
    bool next() {
        for (int i = n - 1; i >= 0; --i) {
            if (++cur[i] < p) return true;
            cur[i] = 0;
        }
        done = true;
        return false;
    }
    long long count() const {
        long long c = 1;
        for (int i = 0; i < n; ++i) c *= p;
        return c;
    }
};

}  // namespace exang
