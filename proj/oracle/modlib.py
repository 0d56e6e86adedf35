"""Exact linear algebra over F_p and interval-module machinery for linear
Nakayama algebras (path algebra of 1 -> 2 -> ... -> m with all paths
covering more than L vertices killed).

Used by the fixture generators to derive Hom bases, composition tables,
Ext^k groups with their bifunctor actions, and certified realizations.
Everything is computed from explicit matrices; nothing is assumed from
general theory without a numeric check.
"""


# ---------- F_p linear algebra ----------

def mat_mul(p, A, B):
    n = len(A)
    k = len(B)
    m = len(B[0]) if B else 0
    C = [[0] * m for _ in range(n)]
    for i in range(n):
        for t in range(k):
            a = A[i][t]
            if a == 0:
                continue
            for j in range(m):
                C[i][j] = (C[i][j] + a * B[t][j]) % p
    return C


def rref(p, M):
    M = [row[:] for row in M]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    piv = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        pr = next((i for i in range(r, rows) if M[i][c] % p != 0), None)
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        inv = pow(M[r][c], -1, p)
        M[r] = [(x * inv) % p for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c] % p:
                f = M[i][c]
                M[i] = [(x - f * y) % p for x, y in zip(M[i], M[r])]
        piv.append(c)
        r += 1
    return M, piv


def rank(p, M):
    return len(rref(p, M)[1]) if M else 0


def nullspace(p, M, ncols=None):
    rows = len(M)
    cols = len(M[0]) if rows else (ncols or 0)
    if rows == 0:
        return [[1 if i == j else 0 for i in range(cols)] for j in range(cols)]
    R, piv = rref(p, M)
    pivset = set(piv)
    basis = []
    for j in range(cols):
        if j in pivset:
            continue
        v = [0] * cols
        v[j] = 1
        for r, c in enumerate(piv):
            v[c] = (-R[r][j]) % p
        basis.append(v)
    return basis


def solve(p, M, b):
    """One solution of M x = b, or None."""
    rows = len(M)
    cols = len(M[0]) if rows else 0
    if rows == 0:
        return []
    aug = [M[i][:] + [b[i] % p] for i in range(rows)]
    R, piv = rref(p, aug)
    for r, c in enumerate(piv):
        if c == cols:
            return None
    x = [0] * cols
    for r, c in enumerate(piv):
        x[c] = R[r][cols]
    return x


def in_span(p, vecs, v):
    if not vecs:
        return all(x % p == 0 for x in v)
    M = [[vecs[j][i] for j in range(len(vecs))] for i in range(len(v))]
    return solve(p, M, v) is not None


def express(p, vecs, v):
    """Coordinates of v in the list vecs, or None."""
    if not vecs:
        return [] if all(x % p == 0 for x in v) else None
    M = [[vecs[j][i] for j in range(len(vecs))] for i in range(len(v))]
    return solve(p, M, v)


# ---------- interval modules ----------

def hom_flat(h):
    return [x for Mi in h for row in Mi for x in row]


class Alg:
    """Representations of 1 -> 2 -> ... -> m with interval support bounded
    by L vertices (monomial relation killing longer paths)."""

    def __init__(self, m, L, p):
        self.m, self.L, self.p = m, L, p
        self._hom_cache = {}

    def intervals(self):
        return [(a, b) for a in range(1, self.m + 1)
                for b in range(a, min(a + self.L - 1, self.m) + 1)]

    def dims(self, iv):
        a, b = iv
        return [1 if a <= i <= b else 0 for i in range(1, self.m + 1)]

    def total_dim(self, iv):
        return sum(self.dims(iv))

    def maps(self, iv):
        a, b = iv
        d = self.dims(iv)
        out = []
        for i in range(1, self.m):
            M = [[0] * d[i - 1] for _ in range(d[i])]
            if a <= i and i + 1 <= b:
                M[0][0] = 1
            out.append(M)
        return out

    def zero_hom(self, M, N):
        dM, dN = self.dims(M), self.dims(N)
        return tuple(tuple(tuple(0 for _ in range(dM[i])) for _ in range(dN[i]))
                     for i in range(self.m))

    def hom_basis(self, M, N):
        key = (M, N)
        if key in self._hom_cache:
            return self._hom_cache[key]
        p = self.p
        dM, dN = self.dims(M), self.dims(N)
        aM, aN = self.maps(M), self.maps(N)
        offs, total = [], 0
        for i in range(self.m):
            offs.append(total)
            total += dN[i] * dM[i]
        rows = []
        for i in range(self.m - 1):
            for r in range(dN[i + 1]):
                for c in range(dM[i]):
                    row = [0] * total
                    for t in range(dM[i + 1]):
                        row[offs[i + 1] + r * dM[i + 1] + t] = \
                            (row[offs[i + 1] + r * dM[i + 1] + t] + aM[i][t][c]) % p
                    for t in range(dN[i]):
                        row[offs[i] + t * dM[i] + c] = \
                            (row[offs[i] + t * dM[i] + c] - aN[i][r][t]) % p
                    rows.append(row)
        basis_vecs = nullspace(p, rows, ncols=total)
        out = []
        for v in basis_vecs:
            mats = []
            for i in range(self.m):
                Mi = tuple(tuple(v[offs[i] + r * dM[i] + c] for c in range(dM[i]))
                           for r in range(dN[i]))
                mats.append(Mi)
            out.append(tuple(mats))
        self._hom_cache[key] = out
        return out

    def hom_dim(self, M, N):
        return len(self.hom_basis(M, N))

    def identity(self, M):
        d = self.dims(M)
        return tuple(tuple(tuple(1 if r == c else 0 for c in range(d[i]))
                           for r in range(d[i])) for i in range(self.m))

    def compose(self, f, g):
        """f after g."""
        return tuple(tuple(tuple(r) for r in
                           mat_mul(self.p, [list(r) for r in f[i]], [list(r) for r in g[i]]))
                     for i in range(self.m))

    def is_module_map(self, M, N, f):
        aM, aN = self.maps(M), self.maps(N)
        for i in range(self.m - 1):
            lhs = mat_mul(self.p, [list(r) for r in f[i + 1]], aM[i])
            rhs = mat_mul(self.p, aN[i], [list(r) for r in f[i]])
            if lhs != rhs:
                return False
        return True

    def hom_coords(self, M, N, f):
        basis = self.hom_basis(M, N)
        target = hom_flat(f)
        coords = express(self.p, [hom_flat(b) for b in basis], target)
        assert coords is not None, "morphism not in the hom space"
        return coords

    def canonical_map(self, M, N):
        """Vertexwise-identity map M -> N on the common support."""
        dM, dN = self.dims(M), self.dims(N)
        mats = []
        for i in range(self.m):
            Mi = [[0] * dM[i] for _ in range(dN[i])]
            if dM[i] and dN[i]:
                Mi[0][0] = 1
            mats.append(tuple(tuple(r) for r in Mi))
        f = tuple(mats)
        assert self.is_module_map(M, N, f), (M, N)
        return f

    def proj_cover(self, iv):
        a, b = iv
        return (a, min(a + self.L - 1, self.m))

    def resolution(self, M, length):
        """Minimal projective resolution up to degree `length`:
        returns (projs, diffs, aug); projs[k] is an interval or None,
        diffs[k] : projs[k+1] -> projs[k]."""
        projs, diffs = [], []
        aug = None
        cur = M
        for k in range(length + 1):
            if cur is None:
                projs.append(None)
                continue
            P = self.proj_cover(cur)
            if k == 0:
                aug = self.canonical_map(P, M)
            else:
                to_cur = self.canonical_map(P, cur)
                emb = self.canonical_map(cur, projs[k - 1])
                diffs.append(self.compose(emb, to_cur))
            projs.append(P)
            a, b = cur
            e = P[1]
            cur = (b + 1, e) if b + 1 <= e else None
        while len(diffs) < length:
            diffs.append(None)
        self._check_resolution(M, projs, diffs, aug)
        return projs, diffs, aug

    def _flat_matrix(self, P, N, f):
        dP, dN = self.dims(P), self.dims(N)
        rows, cols = sum(dN), sum(dP)
        out = [[0] * cols for _ in range(rows)]
        ro = co = 0
        for i in range(self.m):
            for r in range(dN[i]):
                for c in range(dP[i]):
                    out[ro + r][co + c] = f[i][r][c]
            ro += dN[i]
            co += dP[i]
        return out

    def _check_resolution(self, M, projs, diffs, aug):
        p = self.p
        A = self._flat_matrix(projs[0], M, aug)
        assert rank(p, A) == self.total_dim(M), "augmentation not surjective"
        prev, prev_src = A, projs[0]
        for k, d in enumerate(diffs):
            if d is None or projs[k + 1] is None:
                # the resolution has terminated; the previous map must be injective
                assert rank(p, prev) == self.total_dim(prev_src) if prev_src else True
                break
            B = self._flat_matrix(projs[k + 1], prev_src, d)
            comp = mat_mul(p, prev, B)
            assert all(all(x % p == 0 for x in row) for row in comp), "not a complex"
            assert rank(p, B) == self.total_dim(prev_src) - rank(p, prev), "not exact"
            prev, prev_src = B, projs[k + 1]


class ExtCalc:
    """Ext^k(M, -) from a fixed minimal resolution of M."""

    def __init__(self, alg, M, k):
        self.alg, self.M, self.k = alg, M, k
        self.projs, self.diffs, self.aug = alg.resolution(M, k + 1)

    def _delta_matrix(self, j, N):
        """Matrix of (- ∘ diffs[j]) : Hom(projs[j], N) -> Hom(projs[j+1], N)."""
        alg = self.alg
        src, tgt, d = self.projs[j], self.projs[j + 1], self.diffs[j]
        if src is None or tgt is None or d is None:
            return None
        bsrc = alg.hom_basis(src, N)
        btgt = alg.hom_basis(tgt, N)
        cols = [alg.hom_coords(tgt, N, alg.compose(phi, d)) for phi in bsrc]
        return [[cols[j2][i] for j2 in range(len(bsrc))] for i in range(len(btgt))]

    def group(self, N):
        """dim, representative cocycle coordinate vectors (in the
        Hom(projs[k], N) basis), and a class reducer."""
        alg, k, p = self.alg, self.k, self.alg.p
        Pk = self.projs[k]
        if Pk is None:
            return {"dim": 0, "reps": [], "img": [], "hdim": 0}
        hdim = alg.hom_dim(Pk, N)
        D_up = self._delta_matrix(k, N)
        if D_up is None:
            ker = [[1 if i == j else 0 for i in range(hdim)] for j in range(hdim)]
        else:
            ker = nullspace(p, D_up, ncols=hdim)
        img = []
        if k >= 1 and self.projs[k - 1] is not None and self.diffs[k - 1] is not None:
            d = self.diffs[k - 1]
            for phi in alg.hom_basis(self.projs[k - 1], N):
                img.append(alg.hom_coords(Pk, N, alg.compose(phi, d)))
        reps = []
        span = [v[:] for v in img]
        for v in ker:
            if not in_span(p, span, v):
                reps.append(v)
                span.append(v)
        return {"dim": len(reps), "reps": reps, "img": img, "hdim": hdim}

    def reduce(self, N, phi_coords):
        """Class coordinates of a cocycle given in Hom(projs[k], N) coords."""
        g = self.group(N)
        vecs = [r[:] for r in g["reps"]] + [v[:] for v in g["img"]]
        x = express(self.alg.p, vecs, phi_coords)
        assert x is not None, "not in the cocycle group"
        return [v % self.alg.p for v in x[: g["dim"]]]

    def rep_cocycle(self, N, class_coords):
        """A Hom(projs[k], N) element representing the class."""
        g = self.group(N)
        out = [0] * g["hdim"]
        for c, r in zip(class_coords, g["reps"]):
            out = [(o + c * x) % self.alg.p for o, x in zip(out, r)]
        basis = self.alg.hom_basis(self.projs[self.k], N)
        acc = self.alg.zero_hom(self.projs[self.k], N)
        acc = [[list(row) for row in Mi] for Mi in acc]
        for c, b in zip(out, basis):
            for i in range(self.alg.m):
                for r in range(len(b[i])):
                    for cc in range(len(b[i][r])):
                        acc[i][r][cc] = (acc[i][r][cc] + c * b[i][r][cc]) % self.alg.p
        return tuple(tuple(tuple(r) for r in Mi) for Mi in acc)

    def solve_through(self, src, mid, post, target):
        """l : src -> mid with post ∘ l = target."""
        alg = self.alg
        basis = alg.hom_basis(src, mid)
        if not basis:
            assert all(x % alg.p == 0 for x in hom_flat(target)), "no lift"
            return alg.zero_hom(src, mid)
        cols = [hom_flat(alg.compose(post, b)) for b in basis]
        x = express(alg.p, cols, hom_flat(target))
        assert x is not None, "no comparison lift"
        acc = [[list(row) for row in Mi] for Mi in alg.zero_hom(src, mid)]
        for c, b in zip(x, basis):
            for i in range(alg.m):
                for r in range(len(b[i])):
                    for cc in range(len(b[i][r])):
                        acc[i][r][cc] = (acc[i][r][cc] + c * b[i][r][cc]) % alg.p
        return tuple(tuple(tuple(r) for r in Mi) for Mi in acc)

    def comparison_lift(self, other, g):
        """Lift g : other.M -> self.M to chain maps of resolutions;
        lifts[j] : other.projs[j] -> self.projs[j]."""
        alg = self.alg
        lifts = [self.solve_through(other.projs[0], self.projs[0], self.aug,
                                    alg.compose(g, other.aug))]
        for j in range(1, self.k + 1):
            if other.projs[j] is None:
                lifts.append(None)
                continue
            assert self.projs[j] is not None, "lift target resolution too short"
            target = alg.compose(lifts[j - 1], other.diffs[j - 1])
            lifts.append(self.solve_through(other.projs[j], self.projs[j],
                                            self.diffs[j - 1], target))
        return lifts

    def contravariant_action(self, other, g, N):
        """Matrix of Ext^k(g, N) : self-classes -> other-classes for
        g : other.M -> self.M."""
        alg, k = self.alg, self.k
        gme = self.group(N)
        goth = other.group(N)
        lifts = self.comparison_lift(other, g)
        cols = []
        for j in range(gme["dim"]):
            phi = self.rep_cocycle(N, [1 if t == j else 0 for t in range(gme["dim"])])
            if other.projs[k] is None or lifts[k] is None:
                cols.append([0] * goth["dim"])
                continue
            comp = alg.compose(phi, lifts[k])
            cols.append(other.reduce(N, alg.hom_coords(other.projs[k], N, comp)))
        return [[cols[j][i] for j in range(gme["dim"])] for i in range(goth["dim"])]

    def covariant_action(self, N, N2, h):
        """Matrix of Ext^k(M, h) : classes over N -> classes over N2 for
        h : N -> N2."""
        alg = self.alg
        gN = self.group(N)
        gN2 = self.group(N2)
        cols = []
        for j in range(gN["dim"]):
            phi = self.rep_cocycle(N, [1 if t == j else 0 for t in range(gN["dim"])])
            comp = alg.compose(h, phi)
            cols.append(self.reduce(N2, alg.hom_coords(self.projs[self.k], N2, comp)))
        return [[cols[j][i] for j in range(gN["dim"])] for i in range(gN2["dim"])]

    def yoneda_class(self, N, middles, maps):
        """Class in Ext^k(M, N) of the exact sequence
           0 -> N -> E_k -> ... -> E_1 -> M -> 0
        with middles = [E_1, ..., E_k] and maps = [e_0 : E_1 -> M,
        e_1 : E_2 -> E_1, ..., e_{k-1} : E_k -> E_{k-1}, e_k : N -> E_k]."""
        alg, k = self.alg, self.k
        mus = [self.solve_through(self.projs[0], middles[0], maps[0], self.aug)]
        for j in range(1, k):
            target = alg.compose(mus[j - 1], self.diffs[j - 1])
            mus.append(self.solve_through(self.projs[j], middles[j], maps[j], target))
        target = alg.compose(mus[k - 1], self.diffs[k - 1])
        phi = self.solve_through(self.projs[k], N, maps[k], target)
        return self.reduce(N, alg.hom_coords(self.projs[k], N, phi))


def check_exact_sequence(alg, seq_modules, seq_maps):
    """Numerically verify that  M_0 <- M_1 <- ... <- M_r  (maps[i] : M_{i+1} -> M_i)
    is exact at the interior and that maps[0] is surjective / maps[-1] injective."""
    p = alg.p
    flats = []
    for i, f in enumerate(seq_maps):
        flats.append(alg._flat_matrix(seq_modules[i + 1], seq_modules[i], f))
    assert rank(p, flats[0]) == alg.total_dim(seq_modules[0]), "not surjective at the end"
    for i in range(len(seq_maps) - 1):
        comp = mat_mul(p, flats[i], flats[i + 1])
        assert all(all(x % p == 0 for x in row) for row in comp), "composite nonzero"
        assert rank(p, flats[i + 1]) == alg.total_dim(seq_modules[i + 1]) - rank(p, flats[i]), \
            "sequence not exact"
    assert rank(p, flats[-1]) == alg.total_dim(seq_modules[-1]), "not injective at the start"
