#pragma once

/* Finite additive category presented by indecomposables, Hom bases and
 * composition tables over F_p.  Objects are formal direct sums of the
 * indecomposables; morphisms are block matrices of basis coordinates.
 *
 * Decompositions are input data, not discovered: object equality is
 * multiset equality of factor lists, and the block layout of a morphism
 * follows the (ordered) factor lists of its endpoints. */

#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "exang/linalg.hpp"
#include "exang/report.hpp"

namespace exang {

/// Formal direct sum of indecomposables; empty list is the zero object.
struct ObjectExpr {
    std::vector<int> factors;

    ObjectExpr() = default;
    explicit ObjectExpr(std::vector<int> f) : factors(std::move(f)) {}
    static ObjectExpr zero() { return ObjectExpr{}; }
    static ObjectExpr indec(int i) { return ObjectExpr{{i}}; }

    bool is_zero() const { return factors.empty(); }
    int size() const { return static_cast<int>(factors.size()); }

    ObjectExpr plus(const ObjectExpr& o) const {
        ObjectExpr r = *this;
        r.factors.insert(r.factors.end(), o.factors.begin(), o.factors.end());
        return r;
    }

    std::vector<int> sorted() const {
        std::vector<int> s = factors;
        std::sort(s.begin(), s.end());
        return s;
    }

    /// Order-insensitive equality.
    bool same_as(const ObjectExpr& o) const { return sorted() == o.sorted(); }

    /// Layout equality (same ordered factor list).
    bool operator==(const ObjectExpr& o) const { return factors == o.factors; }
};

struct Subcategory {
    std::vector<int> members;  // indecomposable indices, sorted unique

    bool contains(int i) const {
        return std::binary_search(members.begin(), members.end(), i);
    }
};

struct CategoryPresentation {
    Field F{2};
    std::vector<std::string> objects;
    std::map<std::string, int> obj_index;

    // homdim[a][b] = dim C(a,b); homlabel[a][b][k] = global basis label
    std::vector<std::vector<int>> homdim;
    std::vector<std::vector<std::vector<std::string>>> homlabel;
    std::map<std::string, std::tuple<int, int, int>> label_index;  // label -> (a,b,k)

    // comp[a][b][c][g*dim(a,b)+f] = coords of (basis g: b->c) ∘ (basis f: a->b) in C(a,c)
    std::vector<std::vector<std::vector<std::vector<Vec>>>> comp;
    std::vector<Vec> identity_coords;  // per object, in C(a,a) basis

    int nobj() const { return static_cast<int>(objects.size()); }
    int dim(int a, int b) const { return homdim[a][b]; }

    const Vec& comp_basis(int a, int b, int c, int g, int f) const {
        return comp[a][b][c][static_cast<size_t>(g) * homdim[a][b] + f];
    }

    /// Bilinear extension of the basis composition table.
    Vec compose_coords(int a, int b, int c, const Vec& gco, const Vec& fco) const {
        Vec r(homdim[a][c], 0);
        for (int g = 0; g < homdim[b][c]; ++g) {
            if (gco[g] == 0) continue;
            for (int f = 0; f < homdim[a][b]; ++f) {
                if (fco[f] == 0) continue;
                Coeff s = F.mul(gco[g], fco[f]);
                const Vec& t = comp_basis(a, b, c, g, f);
                for (int k = 0; k < homdim[a][c]; ++k) r[k] = F.add(r[k], F.mul(s, t[k]));
            }
        }
        return r;
    }

    std::string object_name(const ObjectExpr& x) const {
        if (x.is_zero()) return "0";
        std::string s;
        for (size_t i = 0; i < x.factors.size(); ++i) {
            if (i) s += "+";
            s += objects[x.factors[i]];
        }
        return s;
    }
};

/// Morphism between formal sums: blocks[i*|src|+j] holds the coordinates of
/// the (dst_i <- src_j) component in the hom basis of that pair.
struct Morphism {
    ObjectExpr src, dst;
    std::vector<Vec> blocks;

    const Vec& block(int i, int j) const { return blocks[static_cast<size_t>(i) * src.size() + j]; }
    Vec& block(int i, int j) { return blocks[static_cast<size_t>(i) * src.size() + j]; }
};

inline int hom_dim(const CategoryPresentation& C, const ObjectExpr& A, const ObjectExpr& B) {
    int d = 0;
    for (int i : B.factors)
        for (int j : A.factors) d += C.homdim[j][i];
    return d;
}

inline Morphism zero_morphism(const CategoryPresentation& C, const ObjectExpr& A, const ObjectExpr& B) {
    Morphism m{A, B, {}};
    m.blocks.resize(static_cast<size_t>(A.size()) * B.size());
    for (int i = 0; i < B.size(); ++i)
        for (int j = 0; j < A.size(); ++j)
            m.block(i, j) = Vec(C.homdim[A.factors[j]][B.factors[i]], 0);
    return m;
}

inline Morphism identity_morphism(const CategoryPresentation& C, const ObjectExpr& A) {
    Morphism m = zero_morphism(C, A, A);
    for (int i = 0; i < A.size(); ++i) m.block(i, i) = C.identity_coords[A.factors[i]];
    return m;
}

inline bool morphism_is_zero(const Morphism& m) {
    for (const Vec& b : m.blocks)
        if (!vec_is_zero(b)) return false;
    return true;
}

inline bool morphism_eq(const Morphism& f, const Morphism& g) {
    return f.src == g.src && f.dst == g.dst && f.blocks == g.blocks;
}

/// Flat coordinates of a morphism in the hom_space basis (blocks in
/// (dst-major, src-minor) order).
inline Vec flat_coords(const Morphism& m) {
    Vec v;
    for (const Vec& b : m.blocks) v.insert(v.end(), b.begin(), b.end());
    return v;
}

inline Morphism morphism_from_flat(const CategoryPresentation& C, const ObjectExpr& A,
                                   const ObjectExpr& B, const Vec& flat) {
    Morphism m = zero_morphism(C, A, B);
    size_t off = 0;
    for (auto& b : m.blocks) {
        for (auto& x : b) x = flat[off++];
    }
    assert(off == flat.size());
    return m;
}

inline Morphism basis_morphism(const CategoryPresentation& C, const ObjectExpr& A,
                               const ObjectExpr& B, int flat_index) {
    Vec v(hom_dim(C, A, B), 0);
    v[flat_index] = 1;
    return morphism_from_flat(C, A, B, v);
}

inline Morphism add_morphisms(const CategoryPresentation& C, const Morphism& f, const Morphism& g) {
    assert(f.src == g.src && f.dst == g.dst);
    Morphism r = f;
    for (size_t i = 0; i < r.blocks.size(); ++i) r.blocks[i] = vec_add(C.F, r.blocks[i], g.blocks[i]);
    return r;
}

inline Morphism scale_morphism(const CategoryPresentation& C, Coeff c, const Morphism& f) {
    Morphism r = f;
    for (auto& b : r.blocks) b = vec_scale(C.F, c, b);
    return r;
}

inline Morphism compose(const CategoryPresentation& C, const Morphism& g, const Morphism& f) {
    assert(f.dst == g.src && "compose: shape mismatch");
    Morphism r = zero_morphism(C, f.src, g.dst);
    for (int i = 0; i < g.dst.size(); ++i)
        for (int k = 0; k < f.src.size(); ++k) {
            Vec acc(C.homdim[f.src.factors[k]][g.dst.factors[i]], 0);
            for (int j = 0; j < f.dst.size(); ++j) {
                Vec t = C.compose_coords(f.src.factors[k], f.dst.factors[j], g.dst.factors[i],
                                         g.block(i, j), f.block(j, k));
                acc = vec_add(C.F, acc, t);
            }
            r.block(i, k) = acc;
        }
    return r;
}

/// Matrix of C(M, φ): C(M, X) -> C(M, Y), u ↦ φ∘u, in flat hom coordinates.
inline Mat mat_of_post_compose(const CategoryPresentation& C, const ObjectExpr& M, const Morphism& phi) {
    int dx = hom_dim(C, M, phi.src), dy = hom_dim(C, M, phi.dst);
    Mat m(dy, dx, C.F.p);
    for (int j = 0; j < dx; ++j) {
        Morphism u = basis_morphism(C, M, phi.src, j);
        Vec col = flat_coords(compose(C, phi, u));
        for (int i = 0; i < dy; ++i) m.at(i, j) = col[i];
    }
    return m;
}

/// Matrix of C(φ, M): C(Y, M) -> C(X, M), u ↦ u∘φ.
inline Mat mat_of_pre_compose(const CategoryPresentation& C, const Morphism& phi, const ObjectExpr& M) {
    int dy = hom_dim(C, phi.dst, M), dx = hom_dim(C, phi.src, M);
    Mat m(dx, dy, C.F.p);
    for (int j = 0; j < dy; ++j) {
        Morphism u = basis_morphism(C, phi.dst, M, j);
        Vec col = flat_coords(compose(C, u, phi));
        for (int i = 0; i < dx; ++i) m.at(i, j) = col[i];
    }
    return m;
}

/// Subspace of C(A,B) spanned by morphisms factoring through objects of X.
inline Subspace ideal_subspace(const CategoryPresentation& C, const Subcategory& X,
                               const ObjectExpr& A, const ObjectExpr& B) {
    int amb = hom_dim(C, A, B);
    std::vector<Vec> gens;
    for (int x : X.members) {
        ObjectExpr Xi = ObjectExpr::indec(x);
        int du = hom_dim(C, A, Xi), dv = hom_dim(C, Xi, B);
        for (int u = 0; u < du; ++u) {
            Morphism mu = basis_morphism(C, A, Xi, u);
            for (int v = 0; v < dv; ++v) {
                Morphism mv = basis_morphism(C, Xi, B, v);
                gens.push_back(flat_coords(compose(C, mv, mu)));
            }
        }
    }
    return Subspace::span(gens, amb, C.F.p);
}

/// Two-sided inverse when f is invertible; found by solving g∘f = 1, f∘g = 1.
inline std::optional<Morphism> is_isomorphism(const CategoryPresentation& C, const Morphism& f) {
    if (!f.src.same_as(f.dst)) {
        // different multisets can still be isomorphic only through equal
        // total decompositions; with Krull-Schmidt input data they cannot.
        if (f.src.sorted() != f.dst.sorted()) return std::nullopt;
    }
    Mat L1 = mat_of_pre_compose(C, f, f.src);    // g ↦ g∘f  : C(B,A) -> C(A,A)
    Mat L2 = mat_of_post_compose(C, f.dst, f);   // g ↦ f∘g  : C(B,A) -> C(B,B)
    Vec rhs1 = flat_coords(identity_morphism(C, f.src));
    Vec rhs2 = flat_coords(identity_morphism(C, f.dst));
    int dg = hom_dim(C, f.dst, f.src);
    Mat st(L1.rows + L2.rows, dg, C.F.p);
    Vec rhs(L1.rows + L2.rows);
    for (int i = 0; i < L1.rows; ++i) {
        for (int j = 0; j < dg; ++j) st.at(i, j) = L1.at(i, j);
        rhs[i] = rhs1[i];
    }
    for (int i = 0; i < L2.rows; ++i) {
        for (int j = 0; j < dg; ++j) st.at(L1.rows + i, j) = L2.at(i, j);
        rhs[L1.rows + i] = rhs2[i];
    }
    auto sol = solve(st, rhs);
    if (!sol.particular) return std::nullopt;
    return morphism_from_flat(C, f.dst, f.src, *sol.particular);
}

/// Associativity and identity laws on all basis tuples.
inline Report validate_category(const CategoryPresentation& C) {
    Report rep;
    int n = C.nobj();
    // identity laws
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            for (int f = 0; f < C.homdim[a][b]; ++f) {
                Vec fb(C.homdim[a][b], 0);
                fb[f] = 1;
                Vec left = C.compose_coords(a, a, b, fb, C.identity_coords[a]);
                Vec right = C.compose_coords(a, b, b, C.identity_coords[b], fb);
                bool ok_l = (left == fb), ok_r = (right == fb);
                if (!ok_l)
                    rep.add("identity", C.homlabel[a][b][f] + "*id_" + C.objects[a], false,
                            "f∘id != f");
                if (!ok_r)
                    rep.add("identity", "id_" + C.objects[b] + "*" + C.homlabel[a][b][f], false,
                            "id∘f != f");
            }
        }
    }
    if (rep.findings.empty()) rep.add("identity", "all", true);
    // associativity on basis triples
    bool assoc_ok = true;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d)
                    for (int f = 0; f < C.homdim[a][b]; ++f)
                        for (int g = 0; g < C.homdim[b][c]; ++g)
                            for (int h = 0; h < C.homdim[c][d]; ++h) {
                                Vec fb(C.homdim[a][b], 0);
                                fb[f] = 1;
                                Vec gb(C.homdim[b][c], 0);
                                gb[g] = 1;
                                Vec hb(C.homdim[c][d], 0);
                                hb[h] = 1;
                                Vec hg = C.compose_coords(b, c, d, hb, gb);
                                Vec l = C.compose_coords(a, b, d, hg, fb);
                                Vec gf = C.compose_coords(a, b, c, gb, fb);
                                Vec r = C.compose_coords(a, c, d, hb, gf);
                                if (l != r) {
                                    assoc_ok = false;
                                    rep.add("assoc",
                                            C.homlabel[c][d][h] + "*" + C.homlabel[b][c][g] + "*" +
                                                C.homlabel[a][b][f],
                                            false, "(h∘g)∘f != h∘(g∘f)");
                                }
                            }
    if (assoc_ok) rep.add("assoc", "all", true);
    rep.sort();
    return rep;
}

/// All multisets of indecomposables of total multiplicity <= max_mult,
/// zero object first, then by size and lexicographic factor list.
inline std::vector<ObjectExpr> enumerate_objects(const CategoryPresentation& C, int max_mult) {
    std::vector<ObjectExpr> out;
    out.push_back(ObjectExpr::zero());
    std::vector<std::vector<int>> cur, next;
    cur.push_back({});
    for (int s = 1; s <= max_mult; ++s) {
        next.clear();
        for (const auto& m : cur) {
            int lo = m.empty() ? 0 : m.back();
            for (int i = lo; i < C.nobj(); ++i) {
                auto w = m;
                w.push_back(i);
                next.push_back(w);
            }
        }
        for (const auto& m : next) out.push_back(ObjectExpr{m});
        cur = next;
    }
    return out;
}

/// All morphisms A -> B, or nullopt when p^dim exceeds the cap.
inline std::optional<std::vector<Morphism>> enumerate_morphisms(const CategoryPresentation& C,
                                                                const ObjectExpr& A,
                                                                const ObjectExpr& B,
                                                                long long cap = 4096) {
    int d = hom_dim(C, A, B);
    long long total = 1;
    for (int i = 0; i < d; ++i) {
        total *= C.F.p;
        if (total > cap) return std::nullopt;
    }
    std::vector<Morphism> out;
    out.reserve(static_cast<size_t>(total));
    VecEnum e(d, C.F.p);
    do {
        out.push_back(morphism_from_flat(C, A, B, e.value()));
    } while (e.next());
    return out;
}

inline std::string morphism_str(const CategoryPresentation& C, const Morphism& m) {
    std::ostringstream os;
    os << C.object_name(m.src) << "->" << C.object_name(m.dst) << "[";
    Vec v = flat_coords(m);
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        os << v[i];
    }
    os << "]";
    return os.str();
}

}  // namespace exang
