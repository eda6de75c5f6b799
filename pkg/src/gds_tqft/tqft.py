"""Z/2 gauge-gravity TQFTs: partition functions and state spaces.

A theory is a degree-n Lagrangian.  Partition functions need a triangulated
closed n-manifold and sum over H^1 with weight ``1/|H^0|``.  State spaces of
closed (n-1)-manifolds are computed class by class from the mapping-torus
character, without triangulating ``S^1 x M``.
"""

from __future__ import annotations

import json
import re
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Sequence

from .charclasses import (
    Lagrangian,
    beta2_lagrangian,
    dw_lagrangian,
    gds_lagrangian,
    lagrangian_value,
    mapping_torus_character,
    orientation_twist,
    parse_lagrangian,
    sw_of,
    zero_lagrangian,
)
from .cohomology import CohomologyRing, Element, ring
from .errors import DegreeMismatch, ParseError, TooLarge
from .simplicial import ManifoldRecord, SimplicialComplex, circle, simplicial_product

MAX_TRACE_FACETS = 20000


@dataclass(frozen=True)
class TheoryHandle:
    name: str
    beta: Lagrangian

    @property
    def n(self) -> int:
        return self.beta.n

    def __str__(self) -> str:
        return f"{self.name}[n={self.n}]: {self.beta}"


def theory(spec: str, n: int) -> TheoryHandle:
    """Resolve a theory name in dimension n.

    Names: ``tc`` and ``dw0`` (zero Lagrangian), ``gds``, ``beta2``, ``dw^k``
    (``a^k``, with k = n or the literal ``dw^n``), or an explicit Lagrangian.
    """
    key = spec.strip().lower()
    if key in ("tc", "dw0"):
        return TheoryHandle(key, zero_lagrangian(n))
    if key == "gds":
        return TheoryHandle("gds", gds_lagrangian(n))
    if key == "beta2":
        return TheoryHandle("beta2", beta2_lagrangian(n))
    m = re.fullmatch(r"dw\^(n|\d+)", key)
    if m:
        k = n if m.group(1) == "n" else int(m.group(1))
        if k != n:
            raise DegreeMismatch(f"dw^{k} used in dimension {n}")
        return TheoryHandle(f"dw^{n}", dw_lagrangian(n))
    try:
        beta = parse_lagrangian(spec, n)
    except ParseError as exc:
        raise ParseError(f"unknown theory {spec!r}: {exc}") from None
    return TheoryHandle(str(beta), beta)


def _ring_of(M) -> tuple[str, CohomologyRing]:
    if isinstance(M, ManifoldRecord):
        return M.name, ring(M.complex)
    if isinstance(M, SimplicialComplex):
        return repr(M), ring(M)
    if isinstance(M, CohomologyRing):
        return "", M
    raise TypeError(f"expected a manifold, got {type(M).__name__}")


def classical_partition(T: TheoryHandle, N, a: Element) -> int:
    _, R = _ring_of(N)
    return -1 if lagrangian_value(T.beta, R, a) else 1


@dataclass(frozen=True)
class PartitionResult:
    manifold: str
    theory: str
    value: Fraction

    def to_dict(self) -> dict:
        return {"manifold": self.manifold, "theory": self.theory, "value": str(self.value)}

    @classmethod
    def from_dict(cls, d: dict) -> "PartitionResult":
        return cls(d["manifold"], d["theory"], Fraction(d["value"]))


def quantum_partition(T: TheoryHandle, N) -> PartitionResult:
    """``sum over a in H^1(N) of (-1)^<beta(a),[N]>``, divided by ``|H^0(N)|``."""
    name, R = _ring_of(N)
    if R.dim != T.n:
        raise DegreeMismatch(f"theory of dimension {T.n} on a {R.dim}-manifold")
    total = sum(classical_partition(T, R, a) for a in R.classes(1))
    return PartitionResult(name, T.name, Fraction(total, 1 << R.ranks[0]))


def class_characters(T: TheoryHandle, M) -> list[tuple[int, ...]]:
    """Per H^1 class, one sign per component generator of H^0."""
    _, R = _ring_of(M)
    if R.dim != T.n - 1:
        raise DegreeMismatch(f"theory of dimension {T.n} on a {R.dim}-manifold")
    gens = R.component_generators()
    return [
        tuple(-1 if mapping_torus_character(T.beta, R, a, t) else 1 for t in gens)
        for a in R.classes(1)
    ]


@dataclass(frozen=True)
class StateSpaceResult:
    manifold: str
    theory: str
    dimension: int
    permitted: list[int]

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "StateSpaceResult":
        return cls(**d)


def state_dim(T: TheoryHandle, M) -> StateSpaceResult:
    name, _ = _ring_of(M)
    chars = class_characters(T, M)
    permitted = [i for i, ch in enumerate(chars) if all(x == 1 for x in ch)]
    return StateSpaceResult(name, T.name, len(permitted), permitted)


# ---------------------------------------------------------------------------
# comparison tables


@dataclass(frozen=True)
class ComparisonTable:
    theories: list[str]
    manifolds: list[str]
    dims: list[list[int]]  # [manifold][theory]
    characters: list[list[list[list[int]]]]  # [manifold][theory][class]
    w1_index: list[int]  # per manifold, H^1 coordinates of w1

    def columns_equal(self, i: int, j: int, twisted: bool = False) -> bool:
        """Same dims and per-class characters in columns i and j.

        With ``twisted``, class a of column i is matched with class
        ``a + w1`` of column j, the relabeling behind the w1 twist.
        """
        for row_d, row_c, w in zip(self.dims, self.characters, self.w1_index):
            if row_d[i] != row_d[j]:
                return False
            shift = w if twisted else 0
            if any(row_c[i][a] != row_c[j][a ^ shift] for a in range(len(row_c[i]))):
                return False
        return True

    def equal_pairs(self, twisted: bool = False) -> list[tuple[str, str]]:
        k = len(self.theories)
        return [
            (self.theories[i], self.theories[j])
            for i in range(k)
            for j in range(i + 1, k)
            if self.columns_equal(i, j, twisted)
        ]

    def to_json(self) -> str:
        d = asdict(self)
        d["equal"] = [list(p) for p in self.equal_pairs()]
        d["equal_up_to_w1"] = [list(p) for p in self.equal_pairs(twisted=True)]
        return json.dumps(d, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ComparisonTable":
        d = json.loads(text)
        d.pop("equal", None)
        d.pop("equal_up_to_w1", None)
        return cls(**d)

    def to_text(self) -> str:
        head = ["manifold"] + self.theories
        body = [[m] + [str(x) for x in row] for m, row in zip(self.manifolds, self.dims)]
        widths = [max(len(r[c]) for r in [head] + body) for c in range(len(head))]
        lines = ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in [head] + body]
        for i, m in enumerate(self.manifolds):
            for j, t in enumerate(self.theories):
                signs = " ".join("".join("+" if x > 0 else "-" for x in ch) for ch in self.characters[i][j])
                lines.append(f"  {m} {t}: {signs}")
        pairs = self.equal_pairs()
        lines.append("equal columns: " + (", ".join(f"{a}={b}" for a, b in pairs) if pairs else "none"))
        pairs = self.equal_pairs(twisted=True)
        lines.append("equal up to a -> a + w1: " + (", ".join(f"{a}={b}" for a, b in pairs) if pairs else "none"))
        return "\n".join(lines)


def compare_theories(theories: Sequence[TheoryHandle], manifolds: Sequence[ManifoldRecord]) -> ComparisonTable:
    dims, chars, shifts = [], [], []
    for M in manifolds:
        shifts.append(sw_of(ring(M.complex)).w(1)[1])
        row_d, row_c = [], []
        for T in theories:
            ch = class_characters(T, M)
            row_c.append([list(c) for c in ch])
            row_d.append(sum(all(x == 1 for x in c) for c in ch))
        dims.append(row_d)
        chars.append(row_c)
    return ComparisonTable([T.name for T in theories], [M.name for M in manifolds], dims, chars, shifts)


# ---------------------------------------------------------------------------
# consistency checks between the two computational paths


def circle_product(M: ManifoldRecord, m: int = 3) -> ManifoldRecord:
    K = simplicial_product(circle(m), M.complex)
    return ManifoldRecord(f"product(circle({m}),{M.name})", K)


def trace_identity_check(T: TheoryHandle, M: ManifoldRecord, max_facets: int = MAX_TRACE_FACETS) -> bool:
    """``Z(S^1 x M)`` from a triangulation equals ``dim Z(M)`` from characters."""
    d = M.complex.dim
    facets = 3 * len(M.complex.facets) * (d + 1)
    if facets > max_facets:
        raise TooLarge(f"S^1 x {M.name} would have {facets} facets (limit {max_facets})")
    Z = quantum_partition(T, circle_product(M)).value
    return Z == state_dim(T, M).dimension


def w1_twist_check(beta: Lagrangian, manifolds: Sequence[ManifoldRecord]) -> bool:
    """``beta`` and ``beta(a -> a + w1)`` give the same quantum invariants.

    Manifolds of dimension n-1 compare state dimensions; manifolds of
    dimension n compare partition functions.
    """
    T = TheoryHandle("beta", beta)
    U = TheoryHandle("beta_w1", orientation_twist(beta))
    for M in manifolds:
        d = M.complex.dim
        if d == beta.n - 1:
            if state_dim(T, M).dimension != state_dim(U, M).dimension:
                return False
        elif d == beta.n:
            if quantum_partition(T, M).value != quantum_partition(U, M).value:
                return False
        else:
            raise DegreeMismatch(f"{M.name} has dimension {d}, theory has n={beta.n}")
    return True
