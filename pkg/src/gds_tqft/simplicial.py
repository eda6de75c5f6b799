"""Finite simplicial complexes with ordered vertices, and the built-in catalog.

Simplices are strictly increasing tuples of vertex ids.  The integer order of
the vertex ids is the global vertex order used for cup products and for the
staircase product triangulation.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from itertools import combinations
from math import comb
from pathlib import Path
from typing import Iterable, NamedTuple, Sequence

from .errors import (
    EmptyInput,
    MixedDimension,
    NotAManifold,
    ParseError,
    RepeatedVertexInFacet,
    TooLarge,
    UnknownManifold,
    UnknownVertex,
)

Simplex = tuple[int, ...]

MAX_AUTOMORPHISM_VERTICES = 12


@dataclass(frozen=True, eq=False)
class SimplicialComplex:
    """A pure simplicial complex closed under faces.

    ``simplices[k]`` is the lexicographically sorted tuple of k-simplices; a
    simplex's position in that tuple is its index in k-cochains.
    """

    num_vertices: int
    simplices: tuple[tuple[Simplex, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.simplices) - 1

    @property
    def facets(self) -> tuple[Simplex, ...]:
        return self.simplices[-1]

    @property
    def edges(self) -> tuple[Simplex, ...]:
        return self.simplices[1] if self.dim >= 1 else ()

    @property
    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.simplices)

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector))

    @cached_property
    def _index(self) -> tuple[dict[Simplex, int], ...]:
        return tuple({s: i for i, s in enumerate(layer)} for layer in self.simplices)

    def index(self, simplex: Sequence[int]) -> int:
        s = tuple(simplex)
        return self._index[len(s) - 1][s]

    def count(self, k: int) -> int:
        return len(self.simplices[k]) if 0 <= k <= self.dim else 0

    def __contains__(self, simplex) -> bool:
        s = tuple(simplex)
        return 1 <= len(s) <= self.dim + 1 and s in self._index[len(s) - 1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.num_vertices == other.num_vertices and self.simplices == other.simplices

    def __hash__(self) -> int:
        return hash((self.num_vertices, self.facets))

    def __repr__(self) -> str:
        return f"SimplicialComplex(f_vector={self.f_vector})"

    @cached_property
    def vertex_stars(self) -> tuple[tuple[Simplex, ...], ...]:
        """For each vertex, the simplices of dimension >= 1 containing it."""
        stars: list[list[Simplex]] = [[] for _ in range(self.num_vertices)]
        for layer in self.simplices[1:]:
            for s in layer:
                for v in s:
                    stars[v].append(s)
        return tuple(tuple(s) for s in stars)

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        """Vertex sets of the connected components, ordered by least vertex."""
        parent = list(range(self.num_vertices))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for a, b in self.edges:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        groups: dict[int, list[int]] = {}
        for v in range(self.num_vertices):
            groups.setdefault(find(v), []).append(v)
        return tuple(tuple(g) for _, g in sorted(groups.items()))

    def link(self, simplex: Sequence[int]) -> list[Simplex]:
        """Maximal simplices of the link of ``simplex``."""
        s = set(simplex)
        out = []
        for f in self.facets:
            if s.issubset(f):
                out.append(tuple(v for v in f if v not in s))
        return out


@dataclass(frozen=True)
class ManifoldRecord:
    name: str
    complex: SimplicialComplex
    expected_f_vector: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if self.expected_f_vector is not None and tuple(self.expected_f_vector) != self.complex.f_vector:
            raise ValueError(
                f"{self.name}: f-vector {self.complex.f_vector} != expected {self.expected_f_vector}"
            )


def faces_of(simplex: Simplex, k: int) -> Iterable[Simplex]:
    """All k-dimensional faces of ``simplex`` in lexicographic order."""
    return combinations(simplex, k + 1)


def build_from_facets(facets: Iterable[Sequence[int]]) -> SimplicialComplex:
    """Face closure of a list of equidimensional facets.

    Vertex ids must be exactly ``0..V-1``.
    """
    facet_list = [tuple(f) for f in facets]
    if not facet_list:
        raise EmptyInput("no facets given")
    d = len(facet_list[0]) - 1
    if d < 0:
        raise EmptyInput("empty facet")
    top: set[Simplex] = set()
    for f in facet_list:
        if len(f) != d + 1:
            raise MixedDimension(f"facet {f} has dimension {len(f) - 1}, expected {d}")
        if len(set(f)) != len(f):
            raise RepeatedVertexInFacet(f"facet {f} repeats a vertex")
        top.add(tuple(sorted(int(v) for v in f)))
    verts = sorted({v for f in top for v in f})
    if verts != list(range(len(verts))):
        raise UnknownVertex(f"vertex ids must be 0..V-1, got {verts[:5]}...")
    layers: list[set[Simplex]] = [set() for _ in range(d + 1)]
    layers[d] = top
    for k in range(d - 1, -1, -1):
        for s in layers[k + 1]:
            layers[k].update(combinations(s, k + 1))
    return SimplicialComplex(len(verts), tuple(tuple(sorted(layer)) for layer in layers))


class ManifoldCheck(NamedTuple):
    ok: bool
    problem: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def validate_closed_manifold(K: SimplicialComplex) -> ManifoldCheck:
    """Closed pseudomanifold test plus connectedness of vertex links.

    Truthiness is the verdict; ``problem`` names the offending simplex.
    Vertex links of a 1-manifold are two points, so the link test starts in
    dimension 2.
    """
    d = K.dim
    if d == 0:
        return ManifoldCheck(False, "dimension 0")
    counts = {r: 0 for r in K.simplices[d - 1]}
    for f in K.facets:
        for r in combinations(f, d):
            counts[r] += 1
    for r, c in counts.items():
        if c != 2:
            return ManifoldCheck(False, f"ridge {r} lies in {c} facets")
    if d >= 2:
        for v in range(K.num_vertices):
            link = K.link((v,))
            seen = {link[0][0]}
            adj: dict[int, set[int]] = {}
            for s in link:
                for a in s:
                    adj.setdefault(a, set()).update(s)
            stack = [link[0][0]]
            while stack:
                a = stack.pop()
                for b in adj[a]:
                    if b not in seen:
                        seen.add(b)
                        stack.append(b)
            if len(seen) != len(adj):
                return ManifoldCheck(False, f"link of vertex {v} is disconnected")
    return ManifoldCheck(True)


def incident_simplices(K: SimplicialComplex, v: int) -> set[Simplex]:
    """Simplices of dimension >= 1 having ``v`` as a vertex."""
    if not 0 <= v < K.num_vertices:
        raise UnknownVertex(v)
    return set(K.vertex_stars[v])


def _staircases(p: int, q: int) -> list[list[tuple[int, int]]]:
    """Monotone lattice paths from (0,0) to (p,q)."""
    out = []
    for right in combinations(range(p + q), p):
        i = j = 0
        path = [(0, 0)]
        rs = set(right)
        for step in range(p + q):
            if step in rs:
                i += 1
            else:
                j += 1
            path.append((i, j))
        out.append(path)
    return out


def simplicial_product(K: SimplicialComplex, L: SimplicialComplex) -> SimplicialComplex:
    """Staircase triangulation of ``|K| x |L|``.

    Vertex ``(a, b)`` gets id ``a * V_L + b``; both factors' vertex orders
    are respected, so each staircase is an increasing vertex tuple.
    """
    p, q = K.dim, L.dim
    nl = L.num_vertices
    paths = _staircases(p, q)
    facets = []
    for s in K.facets:
        for t in L.facets:
            for path in paths:
                facets.append(tuple(s[i] * nl + t[j] for i, j in path))
    out = build_from_facets(facets)
    assert len(out.facets) == len(K.facets) * len(L.facets) * comb(p + q, p)
    return out


def disjoint_union(K: SimplicialComplex, L: SimplicialComplex) -> SimplicialComplex:
    if K.dim != L.dim:
        raise MixedDimension("disjoint union of complexes of different dimension")
    shift = K.num_vertices
    return build_from_facets(list(K.facets) + [tuple(v + shift for v in f) for f in L.facets])


def relabel(K: SimplicialComplex, perm: Sequence[int]) -> SimplicialComplex:
    """Complex with vertex ``v`` renamed ``perm[v]``."""
    return build_from_facets([tuple(perm[v] for v in f) for f in K.facets])


def barycentric_subdivision(K: SimplicialComplex) -> SimplicialComplex:
    """Vertices are the simplices of K; facets are maximal flags.

    New vertex ids follow (dimension, lexicographic) order so every flag is an
    increasing tuple.
    """
    ids: dict[Simplex, int] = {}
    for layer in K.simplices:
        for s in layer:
            ids[s] = len(ids)

    facets = []

    def extend(chain: list[Simplex]) -> None:
        s = chain[-1]
        if len(s) == 1:
            facets.append(tuple(ids[c] for c in reversed(chain)))
            return
        for face in combinations(s, len(s) - 1):
            chain.append(face)
            extend(chain)
            chain.pop()

    for f in K.facets:
        extend([f])
    return build_from_facets(facets)


def circle(m: int) -> SimplicialComplex:
    if m < 3:
        raise ValueError("circle(m) needs m >= 3")
    return build_from_facets([(i, (i + 1) % m) for i in range(m)])


def sphere(d: int) -> SimplicialComplex:
    """Boundary of the (d+1)-simplex."""
    if d < 1:
        raise ValueError("sphere(d) needs d >= 1")
    return build_from_facets(list(combinations(range(d + 2), d + 1)))


def automorphisms(K: SimplicialComplex) -> list[tuple[int, ...]]:
    """All vertex permutations carrying facets to facets.

    Backtracking over vertex images with edge-adjacency pruning.
    """
    n = K.num_vertices
    if n > MAX_AUTOMORPHISM_VERTICES:
        raise TooLarge(f"automorphism search limited to {MAX_AUTOMORPHISM_VERTICES} vertices")
    facet_set = set(K.facets)
    adj = [set() for _ in range(n)]
    for a, b in K.edges:
        adj[a].add(b)
        adj[b].add(a)
    # facets checked once their largest vertex is assigned
    by_last: dict[int, list[Simplex]] = {}
    for f in K.facets:
        by_last.setdefault(max(f), []).append(f)

    image = [-1] * n
    used = [False] * n
    found: list[tuple[int, ...]] = []

    def go(v: int) -> None:
        if v == n:
            found.append(tuple(image))
            return
        for w in range(n):
            if used[w] or len(adj[w]) != len(adj[v]):
                continue
            if any((u < v) and (image[u] not in adj[w]) for u in adj[v]):
                continue
            if any((u < v) and (image[u] in adj[w]) for u in range(v) if u not in adj[v]):
                continue
            image[v] = w
            if all(tuple(sorted(image[u] for u in f)) in facet_set for f in by_last.get(v, ())):
                used[w] = True
                go(v + 1)
                used[w] = False
            image[v] = -1

    go(0)
    return found


# ---------------------------------------------------------------------------
# catalog

_FIXED = ("rp2_6", "torus_7", "klein_8", "rp3_11", "cp2_9")


def data_dir() -> Path:
    env = os.environ.get("GDS_DATA_DIR")
    if env:
        return Path(env)
    return Path(str(resources.files("gds_tqft") / "data"))


def load_facet_file(path: str | os.PathLike) -> ManifoldRecord:
    """Read ``{"name": ..., "facets": [[...], ...]}`` (optional ``"f_vector"``)."""
    with open(path) as fh:
        doc = json.load(fh)
    K = build_from_facets(doc["facets"])
    fv = doc.get("f_vector")
    return ManifoldRecord(doc.get("name", Path(path).stem), K, tuple(fv) if fv else None)


def save_facet_file(record: ManifoldRecord, path: str | os.PathLike) -> None:
    doc = {
        "name": record.name,
        "f_vector": list(record.complex.f_vector),
        "facets": [list(f) for f in record.complex.facets],
    }
    with open(path, "w") as fh:
        json.dump(doc, fh)
        fh.write("\n")


def builtin(name: str, *params) -> ManifoldRecord:
    """Named closed manifold triangulation, validated on load.

    ``circle(m)``, ``sphere(d)``, the fixed minimal triangulations in
    ``_FIXED``, and ``product(a, b)`` where ``a`` and ``b`` are records,
    complexes, or manifold expressions.
    """
    if name == "circle":
        (m,) = params
        rec = ManifoldRecord(f"circle({m})", circle(int(m)))
    elif name == "sphere":
        (d,) = params
        rec = ManifoldRecord(f"sphere({d})", sphere(int(d)))
    elif name == "product":
        a, b = (_as_record(p) for p in params)
        rec = ManifoldRecord(
            f"product({a.name},{b.name})", simplicial_product(a.complex, b.complex)
        )
    elif name in _FIXED and not params:
        rec = load_facet_file(data_dir() / f"{name}.json")
        rec = ManifoldRecord(name, rec.complex, rec.expected_f_vector)
    else:
        raise UnknownManifold(name)
    check = validate_closed_manifold(rec.complex)
    if not check:
        raise NotAManifold(f"{rec.name} failed validation: {check.problem}")
    return rec


def builtin_names() -> list[str]:
    return ["circle(m)", "sphere(d)", *_FIXED, "product(a,b)"]


def _as_record(obj) -> ManifoldRecord:
    if isinstance(obj, ManifoldRecord):
        return obj
    if isinstance(obj, SimplicialComplex):
        return ManifoldRecord(repr(obj), obj)
    return parse_manifold(str(obj))


def _split_args(s: str) -> list[str]:
    parts, depth, cur = [], 0, ""
    for ch in s:
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur += ch
    parts.append(cur)
    return [p.strip() for p in parts]


def parse_manifold(expr: str) -> ManifoldRecord:
    """Parse ``name``, ``name(k)``, ``product(expr,expr)`` or ``file:<path>``."""
    expr = expr.strip()
    if expr.startswith("file:"):
        rec = load_facet_file(expr[5:])
        check = validate_closed_manifold(rec.complex)
        if not check:
            raise NotAManifold(f"{rec.name} failed validation: {check.problem}")
        return rec
    m = re.fullmatch(r"([A-Za-z_][A-Za-z0-9_]*)\s*(?:\((.*)\))?", expr, flags=re.S)
    if not m:
        raise ParseError(f"cannot parse manifold expression {expr!r}")
    name, inner = m.group(1), m.group(2)
    if inner is None:
        return builtin(name)
    args = _split_args(inner)
    if name == "product":
        if len(args) != 2:
            raise ParseError("product takes two arguments")
        return builtin("product", *(parse_manifold(a) for a in args))
    if len(args) != 1 or not args[0].isdigit():
        raise ParseError(f"{name}(...) takes one integer argument")
    return builtin(name, int(args[0]))
