"""Regenerate the fixed triangulations shipped in src/gds_tqft/data/.

klein_8 and rp3_11 come from larger triangulations of the same manifold
shrunk by random edge contractions that satisfy the link condition
(``lk(a) & lk(b) == lk(ab)``), which preserves the PL type.  cp2_9 is the
unique 3-neighborly 9-vertex 4-manifold, found with a SAT search and then
checked against the cohomology ring of CP^2.

Run from the repository root:  python tools/make_triangulations.py
Needs python-sat for the cp2_9 search (not a package dependency).
"""

from __future__ import annotations

import random
import sys
from itertools import combinations, product
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from gds_tqft.cohomology import CohomologyRing, betti_numbers  # noqa: E402
from gds_tqft.simplicial import (  # noqa: E402
    ManifoldRecord,
    build_from_facets,
    save_facet_file,
    validate_closed_manifold,
)

DATA = ROOT / "src" / "gds_tqft" / "data"


def closure(facets):
    out = set()
    for f in facets:
        for k in range(1, len(f) + 1):
            out.update(combinations(f, k))
    return out


def link_faces(faces, s):
    s = set(s)
    return {tuple(v for v in f if v not in s) for f in faces if s < set(f)}


def contract(facets, a, b):
    """Contract edge ab into a if the link condition holds, else None."""
    faces = closure(facets)
    if link_faces(faces, (a,)) & link_faces(faces, (b,)) != link_faces(faces, (a, b)):
        return None
    out = set()
    for f in facets:
        if a in f and b in f:
            continue
        out.add(tuple(sorted(a if v == b else v for v in f)))
    return out


def relabel(facets):
    verts = sorted({v for f in facets for v in f})
    ren = {v: i for i, v in enumerate(verts)}
    return sorted(tuple(sorted(ren[v] for v in f)) for f in facets)


def shrink(facets, target, rng, tries=200):
    best = None
    for _ in range(tries):
        cur = set(tuple(sorted(f)) for f in facets)
        while True:
            nverts = len({v for f in cur for v in f})
            if nverts <= target:
                return relabel(cur)
            edges = sorted({e for f in cur for e in combinations(f, 2)})
            rng.shuffle(edges)
            for a, b in edges:
                nxt = contract(cur, a, b)
                if nxt is not None:
                    cur = nxt
                    break
            else:
                break
        if best is None or nverts < best[0]:
            best = (nverts, cur)
    raise RuntimeError(f"stuck at {best[0]} vertices")


def klein_grid(p, q):
    def vid(i, j):
        # (i, j + q) ~ (-i, j): the vertical wrap reverses the horizontal direction
        i, j = i, j
        while j >= q:
            j -= q
            i = -i
        return (i % p) * q + j

    facets = []
    for i in range(p):
        for j in range(q):
            a, b, c, d = vid(i, j), vid(i + 1, j), vid(i, j + 1), vid(i + 1, j + 1)
            facets.append((a, b, d))
            facets.append((a, c, d))
    return facets


def rp3_start():
    # barycentric subdivision of the 4-dim cross-polytope boundary, mod antipode
    def antipode(v):
        return v ^ 1

    cross = [tuple(2 * k + s[k] for k in range(4)) for s in product((0, 1), repeat=4)]
    simplices = sorted(closure(cross), key=lambda s: (len(s), s))
    canon = {}
    for s in simplices:
        t = tuple(sorted(antipode(v) for v in s))
        canon[s] = min(s, t)
    ids = {}
    for s in simplices:
        ids.setdefault(canon[s], len(ids))
    facets = set()
    for f in cross:
        for perm in _flags(f):
            facets.add(tuple(sorted(ids[canon[s]] for s in perm)))
    return sorted(facets)


def _flags(f):
    if len(f) == 1:
        yield [f]
        return
    for face in combinations(f, len(f) - 1):
        for chain in _flags(face):
            yield chain + [f]


def cp2_search():
    from pysat.card import CardEnc, EncType
    from pysat.formula import CNF
    from pysat.solvers import Solver

    cands = list(combinations(range(9), 5))
    var = {f: i + 1 for i, f in enumerate(cands)}
    cnf = CNF()
    top = len(cands)
    for t in combinations(range(9), 4):
        vs = [var[tuple(sorted(t + (x,)))] for x in range(9) if x not in t]
        # each tetrahedron lies in 0 or 2 facets
        for v in vs:
            cnf.append([-v] + [w for w in vs if w != v])
        for trip in combinations(vs, 3):
            cnf.append([-w for w in trip])
    for tri in combinations(range(9), 3):
        vs = [var[f] for f in cands if set(tri) <= set(f)]
        cnf.append(vs)
    card = CardEnc.equals(lits=list(var.values()), bound=36, top_id=top, encoding=EncType.seqcounter)
    cnf.extend(card.clauses)
    # break part of the S_9 symmetry
    cnf.append([var[(0, 1, 2, 3, 4)]])
    with Solver(name="cadical153", bootstrap_with=cnf.clauses) as s:
        while s.solve():
            model = set(x for x in s.get_model() if x > 0)
            facets = [f for f in cands if var[f] in model]
            K = build_from_facets(facets)
            if validate_closed_manifold(K) and _looks_like_cp2(K):
                return facets
            s.add_clause([-var[f] for f in facets])
    raise RuntimeError("no CP^2 candidate found")


def _looks_like_cp2(K):
    if betti_numbers(K) != (1, 0, 1, 0, 1):
        return False
    for v in range(K.num_vertices):
        link = build_from_facets(relabel(K.link((v,))))
        if betti_numbers(link) != (1, 0, 0, 1):
            return False
    R = CohomologyRing(K)
    x = R.basis_element(2, 0)
    return R.pair(R.mul(x, x)) == 1


def main():
    rng = random.Random(20240601)
    klein = shrink(klein_grid(4, 4), 8, rng)
    K = build_from_facets(klein)
    assert validate_closed_manifold(K) and K.f_vector == (8, 24, 16)
    save_facet_file(ManifoldRecord("klein_8", K), DATA / "klein_8.json")
    print("klein_8", K.f_vector, betti_numbers(K))

    rp3 = shrink(rp3_start(), 11, rng)
    K = build_from_facets(rp3)
    assert validate_closed_manifold(K)
    save_facet_file(ManifoldRecord("rp3_11", K), DATA / "rp3_11.json")
    print("rp3_11", K.f_vector, betti_numbers(K))

    K = build_from_facets(cp2_search())
    save_facet_file(ManifoldRecord("cp2_9", K), DATA / "cp2_9.json")
    print("cp2_9", K.f_vector, betti_numbers(K))


if __name__ == "__main__":
    main()
