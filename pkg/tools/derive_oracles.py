"""Independent oracle computations whose outputs are frozen into the tests.

Nothing here goes through the package's GF(2) kernel or cohomology ring:
ranks use a throwaway numpy elimination, automorphism groups use brute force
over all vertex permutations, and cup squares are evaluated face by face.
Only the facet data and the face-closure builder are shared.

Run: python tools/derive_oracles.py
"""

from __future__ import annotations

import sys
from itertools import combinations, permutations
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from gds_tqft.simplicial import parse_manifold  # noqa: E402


def rank_mod2(A: np.ndarray) -> int:
    A = (A.copy() % 2).astype(np.uint8)
    r = 0
    rows, cols = A.shape
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i, c]), None)
        if piv is None:
            continue
        A[[r, piv]] = A[[piv, r]]
        for i in range(rows):
            if i != r and A[i, c]:
                A[i] ^= A[r]
        r += 1
        if r == rows:
            break
    return r


def layers(K):
    return [list(layer) for layer in K.simplices]


def boundary(K, k):
    lo = {s: i for i, s in enumerate(K.simplices[k - 1])}
    hi = K.simplices[k]
    A = np.zeros((len(lo), len(hi)), dtype=np.uint8)
    for j, s in enumerate(hi):
        for f in combinations(s, k):
            A[lo[f], j] = 1
    return A


def betti(K):
    d = K.dim
    ranks = [0] + [rank_mod2(boundary(K, k)) for k in range(1, d + 1)] + [0]
    return tuple(K.count(k) - ranks[k] - ranks[k + 1] for k in range(d + 1))


def aut_order(K):
    facets = set(K.facets)
    n = 0
    for p in permutations(range(K.num_vertices)):
        if all(tuple(sorted(p[v] for v in f)) in facets for f in K.facets):
            n += 1
    return n


def h1_generators_mod_coboundaries(K):
    """All 1-cocycles, grouped into cosets of the coboundaries (brute force)."""
    E = K.simplices[1]
    tri = K.simplices[2] if K.dim >= 2 else []
    eidx = {e: i for i, e in enumerate(E)}
    cocycles = []
    for mask in range(1 << len(E)):
        if all(sum((mask >> eidx[f]) & 1 for f in combinations(t, 2)) % 2 == 0 for t in tri):
            cocycles.append(mask)
    cob = set()
    for vs in range(1 << K.num_vertices):
        m = 0
        for (a, b), i in eidx.items():
            if ((vs >> a) ^ (vs >> b)) & 1:
                m |= 1 << i
        cob.add(m)
    return cocycles, cob


def square_pairing(K, z):
    """<z cup z, [K]> for a 1-cocycle z on a surface, face by face."""
    eidx = {e: i for i, e in enumerate(K.simplices[1])}
    total = 0
    for a, b, c in K.simplices[2]:
        total += ((z >> eidx[(a, b)]) & 1) * ((z >> eidx[(b, c)]) & 1)
    return total % 2


def main():
    for e in ["circle(3)", "circle(5)", "sphere(2)", "sphere(3)", "rp2_6", "torus_7", "klein_8",
              "rp3_11", "cp2_9", "product(circle(3),circle(3))", "product(circle(3),rp2_6)",
              "product(sphere(2),rp2_6)"]:
        K = parse_manifold(e).complex
        print(f"betti {e}: {betti(K)}  chi={K.euler_characteristic()}")
    for e in ["sphere(2)", "circle(5)", "rp2_6", "torus_7", "klein_8"]:
        print(f"|Aut {e}| = {aut_order(parse_manifold(e).complex)}")
    for e in ["rp2_6", "torus_7", "klein_8"]:
        K = parse_manifold(e).complex
        cocycles, cob = h1_generators_mod_coboundaries(K)
        print(f"{e}: #Z1={len(cocycles)} #B1={len(cob)} |H1|={len(cocycles) // len(cob)}")
        values = sorted({square_pairing(K, z) for z in cocycles if z not in cob})
        print(f"  <z^2,[M]> over nonzero classes takes values {values}")


if __name__ == "__main__":
    main()
