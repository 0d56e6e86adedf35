#!/usr/bin/env python3
"""Fixture generator for the Nakayama-algebra fixtures.

Derives, from explicit projective resolutions of interval modules:
  * Hom bases and composition tables between the chosen objects,
  * Ext^n dimensions with both bifunctor actions,
  * certified realizations: exact (n+2)-term sequences inside the chosen
    subcategory whose Yoneda class is computed and pinned to the stored
    coordinates.

Emits fixtures/<name>.json plus oracle/out/<name>_dims.json (the committed
cross-check data consumed by the acceptance suite).

Run from the repository root:  python3 oracle/nakayama.py
"""

import itertools
import json
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
from modlib import Alg, ExtCalc, check_exact_sequence, hom_flat  # noqa: E402


def nonzero_coeff_vectors(p, dim):
    for v in itertools.product(range(p), repeat=dim):
        if any(v):
            yield list(v)


def combine(alg, basis, coeffs):
    acc = [[list(r) for r in Mi] for Mi in basis[0]] if basis else None
    if acc is None:
        return None
    for i in range(alg.m):
        for r in range(len(acc[i])):
            for c in range(len(acc[i][r])):
                acc[i][r][c] = 0
    for co, b in zip(coeffs, basis):
        for i in range(alg.m):
            for r in range(len(b[i])):
                for c in range(len(b[i][r])):
                    acc[i][r][c] = (acc[i][r][c] + co * b[i][r][c]) % alg.p
    return tuple(tuple(tuple(r) for r in Mi) for Mi in acc)


def build_fixture(name, m, L, p, n, objects, subcats, realization_order=None):
    """objects: list of (name, interval).  Returns (fixture_json, dims_json)."""
    alg = Alg(m, L, p)
    names = [nm for nm, _ in objects]
    ivs = dict(objects)

    # ---- hom spaces and labels ----
    hom = {}
    labels = {}     # (src, dst) -> list of labels
    basis_of = {}   # label -> (src, dst, hom element)
    for a, A in objects:
        for b, B in objects:
            d = alg.hom_dim(A, B)
            if d == 0:
                continue
            labs = []
            base = alg.hom_basis(A, B)
            for k in range(d):
                lab = ("i" + a) if (a == b and d == 1) else ("f%s_%s_%d" % (a, b, k) if d > 1
                                                             else "f%s_%s" % (a, b))
                labs.append(lab)
                basis_of[lab] = (a, b, base[k])
            hom["%s->%s" % (a, b)] = labs
            labels[(a, b)] = labs

    identities = {}
    for a, A in objects:
        identities[a] = alg.hom_coords(A, A, alg.identity(A))

    compose = {}
    for a, A in objects:
        for b, B in objects:
            for c, Cc in objects:
                for gl in labels.get((b, c), []):
                    for fl in labels.get((a, b), []):
                        g = basis_of[gl][2]
                        f = basis_of[fl][2]
                        comp = alg.compose(g, f)
                        compose["%s*%s" % (gl, fl)] = alg.hom_coords(A, Cc, comp)

    # ---- Ext^n groups ----
    calcs = {a: ExtCalc(alg, A, n) for a, A in objects}
    ext = {}
    edim = {}
    for c, Cc in objects:
        for a, A in objects:
            d = calcs[c].group(A)["dim"]
            edim[(c, a)] = d
            if d > 0:
                ext["%s|%s" % (c, a)] = d

    # ---- actions ----
    cov = {}
    contra = {}
    for lab, (a, b, f) in basis_of.items():
        # covariant: E(Cm, f) : Ext^n(Cm, a) -> Ext^n(Cm, b)
        table = {}
        for cm, _ in objects:
            if edim[(cm, a)] > 0 and edim[(cm, b)] > 0:
                table[cm] = calcs[cm].covariant_action(ivs[a], ivs[b], f)
        if table:
            cov[lab] = table
        # contravariant: E(g, Am) : Ext^n(b-as-source?...)  g = f : a -> b acts
        # on the first slot: Ext^n(b, Am) -> Ext^n(a, Am)
        table2 = {}
        for am, _ in objects:
            if edim[(b, am)] > 0 and edim[(a, am)] > 0:
                table2[am] = calcs[b].contravariant_action(calcs[a], f, ivs[am])
        if table2:
            contra[lab] = table2

    # ---- certified realizations ----
    nonzero_pairs = [(c, a) for c, _ in objects for a, _ in objects if edim[(c, a)] > 0]
    if realization_order:
        order = [pr for pr in realization_order if pr in nonzero_pairs]
        order += [pr for pr in nonzero_pairs if pr not in order]
    else:
        order = nonzero_pairs

    realizations = []
    notes = {}
    for (c, a) in order:
        A, Cc = ivs[a], ivs[c]
        calc = calcs[c]
        targets = [list(v) for v in itertools.product(range(p), repeat=edim[(c, a)]) if any(v)]
        for target in targets:
            found = None
            tried = []
            for mids in itertools.product(names, repeat=n):
                # candidate sequence 0 -> A -> X_1 -> ... -> X_n -> C -> 0
                chain = [a] + list(mids) + [c]
                spaces = []
                ok = True
                for i in range(n + 1):
                    bs = alg.hom_basis(ivs[chain[i]], ivs[chain[i + 1]])
                    if not bs:
                        ok = False
                        break
                    spaces.append(bs)
                if not ok:
                    continue
                dims = [len(bs) for bs in spaces]
                for coeffs in itertools.product(
                        *[list(nonzero_coeff_vectors(p, d)) for d in dims]):
                    maps = [combine(alg, spaces[i], coeffs[i]) for i in range(n + 1)]
                    # exactness of 0 -> A -> X1 -> ... -> Xn -> C -> 0
                    mods_rl = [ivs[chain[n + 1 - i]] for i in range(n + 2)]
                    maps_rl = [maps[n - i] for i in range(n + 1)]
                    try:
                        check_exact_sequence(alg, mods_rl, maps_rl)
                    except AssertionError:
                        continue
                    middles = [ivs[chain[n - j]] for j in range(n)]  # E_1..E_n
                    seq_maps = [maps[n - j] for j in range(n)] + [maps[0]]
                    cls = calc.yoneda_class(A, middles, seq_maps)
                    tried.append((mids, cls))
                    if cls == target:
                        found = (chain, maps)
                        break
                if found:
                    break
            assert found, "no realization found for %s|%s %s" % (c, a, target)
            chain, maps = found
            terms = [[chain[0]]] + [[chain[i]] for i in range(1, n + 1)] + [[chain[n + 1]]]
            diffs = []
            for i in range(n + 1):
                coords = alg.hom_coords(ivs[chain[i]], ivs[chain[i + 1]], maps[i])
                diffs.append([[coords]])
            realizations.append({
                "C": c, "A": a, "coords": target,
                "terms": terms, "diffs": diffs,
            })
            notes.setdefault("realized", []).append(
                {"class": "%s|%s%s" % (c, a, target), "middles": list(chain[1:n + 1])})

    fixture = {
        "field": p,
        "n": n,
        "objects": names,
        "hom": hom,
        "identities": identities,
        "compose": compose,
        "ext": ext,
        "ext_action_cov": cov,
        "ext_action_contra": contra,
        "realizations": realizations,
        "subcategories": subcats,
        "classes": {
            "delta0": {},
            "full": {k: [[1 if i == j else 0 for i in range(d)] for j in range(d)]
                     for k, d in ext.items()},
        },
    }
    dims = {
        "algebra": {"vertices": m, "max_interval": L, "field": p},
        "hom": {k: len(v) for k, v in hom.items()},
        "ext": ext,
        "notes": notes,
    }
    return fixture, dims


def emit(fixture, dims, name, root):
    fx_path = os.path.join(root, "fixtures", name + ".json")
    with open(fx_path, "w") as f:
        json.dump(fixture, f, indent=1)
        f.write("\n")
    out_dir = os.path.join(root, "oracle", "out")
    os.makedirs(out_dir, exist_ok=True)
    with open(os.path.join(out_dir, name + "_dims.json"), "w") as f:
        json.dump(dims, f, indent=1)
        f.write("\n")
    print("wrote", fx_path)


def main():
    root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

    # F0: mod k(1->2) over F_3, n = 1, all three indecomposables.
    f0, d0 = build_fixture(
        "F0", m=2, L=2, p=3, n=1,
        objects=[("S2", (2, 2)), ("P1", (1, 2)), ("S1", (1, 1))],
        subcats={"X": ["P1"]})
    emit(f0, d0, "F0", root)

    # F1: 1->2->3 with the length-2 path killed, n = 2,
    # objects add{3, 2/3, 1/2, 1}.
    f1, d1 = build_fixture(
        "F1", m=3, L=2, p=2, n=2,
        objects=[("S3", (3, 3)), ("P2", (2, 3)), ("P1", (1, 2)), ("S1", (1, 1))],
        subcats={"X": ["P2", "P1"]})
    emit(f1, d1, "F1", root)

    # F2: 1->2->3->4 with length-3 paths killed, n = 2, the six-object
    # 2-cluster-tilting subcategory add{4, 3/4, 2/3/4, 1/2/3, 1/2, 1}.
    f2, d2 = build_fixture(
        "F2", m=4, L=3, p=2, n=2,
        objects=[("4", (4, 4)), ("34", (3, 4)), ("234", (2, 4)),
                 ("123", (1, 3)), ("12", (1, 2)), ("1", (1, 1))],
        subcats={"X234": ["234"]},
        realization_order=[("1", "4"), ("1", "34"), ("12", "4")])
    # resolve the displayed-middle-term question for the ("1","4") class by
    # recording which candidate middles admit an exact sequence
    alg = Alg(4, 3, 2)
    ivs = {"4": (4, 4), "34": (3, 4), "234": (2, 4), "123": (1, 3), "12": (1, 2), "1": (1, 1)}
    exact_mids = []
    for mids in [("234", "12"), ("234", "123")]:
        dtot = (alg.total_dim(ivs["4"]) - alg.total_dim(ivs[mids[0]])
                + alg.total_dim(ivs[mids[1]]) - alg.total_dim(ivs["1"]))
        exact_mids.append({"middles": list(mids), "euler": dtot,
                           "exact_possible": dtot == 0})
    d2["notes"]["middle_term_check_1|4"] = exact_mids
    emit(f2, d2, "F2", root)


if __name__ == "__main__":
    main()
