"""Toric code and GDS lattice models on a triangulated closed manifold.

A spin configuration is one bit per edge, stored as an int bitmask in the
edge order of the complex.  The vertex operator at ``v`` flips every edge at
``v``; for the GDS model it also multiplies by a sign computed by counting
the simplices at ``v`` that touch a spin-1 edge.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .cohomology import Cochain, _face_masks, coboundary_matrix, cohomology_basis
from .errors import InternalSignMismatch, NotAutomorphism, NotFlat, TooLarge
from .gf2 import parity
from .simplicial import SimplicialComplex

MODELS = ("tc", "gds")
MAX_FLAT_BITS = 20
MAX_EDGES = 13


@dataclass(frozen=True)
class SpinConfiguration:
    num_edges: int
    mask: int = 0

    def __post_init__(self) -> None:
        if self.mask < 0 or self.mask >> self.num_edges:
            raise ValueError(f"spin mask does not fit in {self.num_edges} edges")

    @classmethod
    def from_edges(cls, K: SimplicialComplex, edges: Iterable[Sequence[int]]) -> "SpinConfiguration":
        m = 0
        for e in edges:
            m ^= 1 << K.index(tuple(sorted(e)))
        return cls(K.count(1), m)

    def spin(self, i: int) -> int:
        return (self.mask >> i) & 1

    def to_list(self) -> list[int]:
        return [self.spin(i) for i in range(self.num_edges)]


def _mask(s) -> int:
    return s.mask if isinstance(s, SpinConfiguration) else int(s)


# ---------------------------------------------------------------------------
# local structure


@lru_cache(maxsize=32)
def _star_edges(K: SimplicialComplex) -> tuple[int, ...]:
    """For each vertex, the bitset of edges containing it."""
    out = [0] * K.num_vertices
    for i, (a, b) in enumerate(K.edges):
        out[a] |= 1 << i
        out[b] |= 1 << i
    return tuple(out)


@lru_cache(maxsize=32)
def _star_edge_masks(K: SimplicialComplex) -> tuple[tuple[int, ...], ...]:
    """For each vertex, the edge bitset of every simplex of dim >= 1 at it."""
    idx = K._index[1]
    out = []
    for star in K.vertex_stars:
        out.append(tuple(sum(1 << idx[e] for e in combinations(c, 2)) for c in star))
    return tuple(out)


def holonomy(K: SimplicialComplex, s, f: Sequence[int]) -> int:
    """Sum of the three edge spins around the 2-simplex ``f``."""
    m = _mask(s)
    return parity(m & _face_masks(K, 2)[K.index(tuple(f))])


def is_flat(K: SimplicialComplex, s) -> bool:
    if K.dim < 2:
        return True
    m = _mask(s)
    return not any(parity(m & fm) for fm in _face_masks(K, 2))


def vertex_flip(K: SimplicialComplex, s, v: int) -> int:
    return _mask(s) ^ _star_edges(K)[v]


def gds_sign(K: SimplicialComplex, s, v: int) -> int:
    """``(-1)^(1 + #Z_v)`` with Z_v the simplices at v that touch a spin-1 edge.

    The complementary set W_v (all edges spin 0) is counted as well; both
    parities must agree because the star of a vertex has an even number of
    simplices of dimension >= 1.
    """
    m = _mask(s)
    z = w = 0
    for em in _star_edge_masks(K)[v]:
        if em & m:
            z += 1
        else:
            w += 1
    if (z ^ w) & 1:
        raise InternalSignMismatch(f"#Z_v={z} and #W_v={w} differ in parity at vertex {v}")
    return -1 if z % 2 == 0 else 1


def _sign(K: SimplicialComplex, model: str, s: int, v: int) -> int:
    return 1 if model == "tc" else gds_sign(K, s, v)


def sigma_loop(K: SimplicialComplex, s, vertices: Sequence[int], model: str = "gds") -> int:
    """Product of signs along successive vertex flips starting from ``s``."""
    m = _mask(s)
    if not is_flat(K, m):
        raise NotFlat("sigma_loop needs a flat spin configuration")
    out = 1
    for v in vertices:
        out *= _sign(K, model, m, v)
        m = vertex_flip(K, m, v)
    return out


def character(K: SimplicialComplex, s, model: str = "gds") -> tuple[int, ...]:
    """One sign per connected component: flip every vertex of that component."""
    return tuple(sigma_loop(K, s, comp, model) for comp in K.components)


# ---------------------------------------------------------------------------
# flat classes


@dataclass(frozen=True)
class FlatClassSet:
    """Lexicographically least cocycle per H^1 class, indexed by coordinates."""

    complex: SimplicialComplex
    representatives: tuple[int, ...]
    coboundary_basis: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.representatives)

    def index_of(self, s) -> int:
        """Class index (H^1 coordinate bitset) of a flat configuration."""
        return cohomology_basis(self.complex, 1).coordinates(Cochain(1, _mask(s)))


@lru_cache(maxsize=32)
def flat_classes(K: SimplicialComplex) -> FlatClassSet:
    H1 = cohomology_basis(K, 1)
    reps = tuple(H1.lex_least(H1.cochain(c)).support for c in range(1 << H1.rank))
    gauge = tuple(_star_edges(K))
    return FlatClassSet(K, reps, gauge)


@lru_cache(maxsize=32)
def cocycle_basis(K: SimplicialComplex) -> tuple[int, ...]:
    if K.dim < 2:
        return tuple(1 << i for i in range(K.count(1)))
    return tuple(coboundary_matrix(K, 1).nullspace())


def _character_job(args):
    K, s, model = args
    return character(K, s, model)


@dataclass(frozen=True)
class CharacterTable:
    model: str
    characters: tuple[tuple[int, ...], ...]

    def permitted(self) -> list[int]:
        return [i for i, ch in enumerate(self.characters) if all(x == 1 for x in ch)]


def character_table(K: SimplicialComplex, model: str = "gds", threads: int = 1) -> CharacterTable:
    if model not in MODELS:
        raise ValueError(f"unknown model {model!r}")
    reps = flat_classes(K).representatives
    if threads > 1 and len(reps) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            chars = list(pool.map(_character_job, [(K, s, model) for s in reps]))
    else:
        chars = [character(K, s, model) for s in reps]
    return CharacterTable(model, tuple(chars))


@dataclass(frozen=True)
class GroundStateReport:
    manifold: str
    model: str
    dim: int
    permitted: list[int]
    method: str
    elapsed_ms: float

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "GroundStateReport":
        return cls(**json.loads(text))


def ground_dim(K: SimplicialComplex, model: str, name: str = "", threads: int = 1) -> GroundStateReport:
    t0 = time.perf_counter()
    permitted = character_table(K, model, threads).permitted()
    ms = (time.perf_counter() - t0) * 1000
    return GroundStateReport(name, model, len(permitted), permitted, "fast", round(ms, 3))


# ---------------------------------------------------------------------------
# operators as signed permutations, and the brute-force oracles


@dataclass(frozen=True)
class SignedPermutation:
    """``(U psi)(x) = sign[x] * psi(target[x])`` on a finite basis."""

    target: tuple[int, ...]
    sign: tuple[int, ...]

    def __matmul__(self, other: "SignedPermutation") -> "SignedPermutation":
        # (A B psi)(x) = a(x) (B psi)(t_A x) = a(x) b(t_A x) psi(t_B t_A x)
        t = tuple(other.target[y] for y in self.target)
        sg = tuple(self.sign[x] * other.sign[self.target[x]] for x in range(len(self.target)))
        return SignedPermutation(t, sg)

    def is_identity(self) -> bool:
        return all(t == x for x, t in enumerate(self.target)) and all(g == 1 for g in self.sign)


def _enumerate_span(basis: Sequence[int]) -> list[int]:
    out = [0]
    for b in basis:
        out += [x ^ b for x in out]
    return out


def flat_space(K: SimplicialComplex) -> list[int]:
    """All cocycles, in the order of subset sums of ``cocycle_basis``."""
    return _enumerate_span(cocycle_basis(K))


def vertex_operators(K: SimplicialComplex, model: str, configs: Sequence[int]) -> list[SignedPermutation]:
    where = {s: i for i, s in enumerate(configs)}
    ops = []
    for v in range(K.num_vertices):
        target = tuple(where[vertex_flip(K, s, v)] for s in configs)
        sign = tuple(_sign(K, model, s, v) for s in configs)
        ops.append(SignedPermutation(target, sign))
    return ops


def face_diagonals(K: SimplicialComplex, configs: Sequence[int]) -> list[tuple[int, ...]]:
    """Diagonal of ``2 H_f = 1 - B_f`` for each 2-simplex: 0 if flat at f, else 2."""
    if K.dim < 2:
        return []
    return [tuple(2 * parity(s & fm) for s in configs) for fm in _face_masks(K, 2)]


def _integer_nullity(rows: Sequence[dict[int, int]]) -> int:
    """Exact nullity over Q of a sparse integer matrix, block by block.

    Blocks are the connected components of the sparsity pattern; each one is
    ranked with FLINT's fraction-free integer elimination.
    """
    import flint

    n = len(rows)
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i, row in enumerate(rows):
        for j, x in row.items():
            if x:
                parent[find(i)] = find(j)
    blocks: dict[int, list[int]] = {}
    for i in range(n):
        blocks.setdefault(find(i), []).append(i)
    nullity = 0
    for members in blocks.values():
        pos = {x: k for k, x in enumerate(members)}
        dense = []
        for i in members:
            line = [0] * len(members)
            for j, x in rows[i].items():
                line[pos[j]] += x
            dense.append(line)
        nullity += len(members) - flint.fmpz_mat(dense).rank()
    return nullity


def _vertex_rows(configs: Sequence[int], ops: Sequence[SignedPermutation]) -> list[dict[int, int]]:
    # 2 H_v = 1 - U_v
    rows: list[dict[int, int]] = [{x: len(ops)} for x in range(len(configs))]
    for op in ops:
        for x, (t, g) in enumerate(zip(op.target, op.sign)):
            rows[x][t] = rows[x].get(t, 0) - g
    return rows


@lru_cache(maxsize=64)
def flat_oracle_ground_dim(K: SimplicialComplex, model: str, max_flat_bits: int = MAX_FLAT_BITS) -> int:
    """Nullity of ``sum_v (1 - U_v)`` on functions of all cocycles."""
    basis = cocycle_basis(K)
    if len(basis) > max_flat_bits:
        raise TooLarge(f"2^{len(basis)} cocycles exceeds 2^{max_flat_bits}")
    configs = _enumerate_span(basis)
    return _integer_nullity(_vertex_rows(configs, vertex_operators(K, model, configs)))


@lru_cache(maxsize=64)
def full_oracle_ground_dim(K: SimplicialComplex, model: str, max_edges: int = MAX_EDGES) -> int:
    """Nullity of ``2H = sum_v (1 - U_v) + sum_f (1 - B_f)`` on all 2^E configurations."""
    E = K.count(1)
    if E > max_edges:
        raise TooLarge(f"{E} edges exceeds the limit of {max_edges}")
    configs = list(range(1 << E))
    rows = _vertex_rows(configs, vertex_operators(K, model, configs))
    for diag in face_diagonals(K, configs):
        for x, d in enumerate(diag):
            rows[x][x] += d
    return _integer_nullity(rows)


# ---------------------------------------------------------------------------
# symmetries


def push_forward(K: SimplicialComplex, perm: Sequence[int], s) -> int:
    m = _mask(s)
    out = 0
    for i, (a, b) in enumerate(K.edges):
        if (m >> i) & 1:
            out |= 1 << K.index(tuple(sorted((perm[a], perm[b]))))
    return out


def automorphism_action(K: SimplicialComplex, perm: Sequence[int], s) -> int:
    """Class index of the pushed-forward flat configuration."""
    perm = tuple(perm)
    if sorted(perm) != list(range(K.num_vertices)):
        raise NotAutomorphism("not a permutation of the vertices")
    facets = set(K.facets)
    if any(tuple(sorted(perm[v] for v in f)) not in facets for f in K.facets):
        raise NotAutomorphism("permutation does not preserve the facets")
    m = _mask(s)
    if not is_flat(K, m):
        raise NotFlat("automorphism_action needs a flat configuration")
    return flat_classes(K).index_of(push_forward(K, perm, m))


def gauge_orbit_signs(K: SimplicialComplex, s, model: str = "gds") -> list[tuple[int, ...]]:
    """Character of ``s + delta(v)`` for every vertex v."""
    m = _mask(s)
    return [character(K, m ^ g, model) for g in _star_edges(K)]


__all__ = [
    "MODELS",
    "SpinConfiguration",
    "FlatClassSet",
    "CharacterTable",
    "GroundStateReport",
    "SignedPermutation",
    "holonomy",
    "is_flat",
    "vertex_flip",
    "gds_sign",
    "sigma_loop",
    "character",
    "flat_classes",
    "cocycle_basis",
    "character_table",
    "ground_dim",
    "flat_space",
    "vertex_operators",
    "face_diagonals",
    "flat_oracle_ground_dim",
    "full_oracle_ground_dim",
    "automorphism_action",
    "push_forward",
    "gauge_orbit_signs",
]
