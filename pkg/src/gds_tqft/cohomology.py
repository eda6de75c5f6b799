"""Simplicial cochains and the mod 2 cohomology ring of a closed manifold.

Cochains are bitsets over the simplices of one degree.  Cup products use the
Alexander-Whitney front/back face formula with respect to the vertex order;
Steenrod squares use Steenrod's cup-i products.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .errors import BadDegree, NotACocycle, PairingDegenerate
from .gf2 import EchelonBasis, Gf2Matrix, bits, from_indices, parity
from .simplicial import SimplicialComplex


@dataclass(frozen=True)
class Cochain:
    degree: int
    support: int = 0

    @classmethod
    def from_simplices(cls, K: SimplicialComplex, simplices: Iterable[Sequence[int]]) -> "Cochain":
        simplices = [tuple(s) for s in simplices]
        k = len(simplices[0]) - 1 if simplices else 0
        return cls(k, from_indices(K.index(s) for s in simplices))

    def __add__(self, other: "Cochain") -> "Cochain":
        if self.degree != other.degree:
            raise BadDegree("adding cochains of different degree")
        return Cochain(self.degree, self.support ^ other.support)

    def __bool__(self) -> bool:
        return self.support != 0

    def value(self, K: SimplicialComplex, simplex: Sequence[int]) -> int:
        return (self.support >> K.index(simplex)) & 1


# ---------------------------------------------------------------------------
# chain-level incidence


@lru_cache(maxsize=64)
def _face_masks(K: SimplicialComplex, k: int) -> tuple[int, ...]:
    """For each k-simplex, bitset of its (k-1)-faces."""
    idx = K._index[k - 1]
    return tuple(from_indices(idx[f] for f in combinations(s, k)) for s in K.simplices[k])


@lru_cache(maxsize=64)
def _coface_masks(K: SimplicialComplex, k: int) -> tuple[int, ...]:
    """For each k-simplex, bitset of the (k+1)-simplices containing it."""
    out = [0] * K.count(k)
    for j, m in enumerate(_face_masks(K, k + 1)):
        for i in bits(m):
            out[i] |= 1 << j
    return tuple(out)


def boundary_matrix(K: SimplicialComplex, k: int) -> Gf2Matrix:
    """``d_k : C_k -> C_{k-1}``; rows are (k-1)-simplices."""
    if not 1 <= k <= K.dim:
        raise BadDegree(f"boundary_matrix needs 1 <= k <= {K.dim}, got {k}")
    cols = _face_masks(K, k)
    return Gf2Matrix(len(cols), K.count(k - 1), cols).transpose()


def coboundary_matrix(K: SimplicialComplex, k: int) -> Gf2Matrix:
    """``delta_k : C^k -> C^{k+1}``; rows are (k+1)-simplices."""
    if not 0 <= k <= K.dim:
        raise BadDegree(f"coboundary_matrix needs 0 <= k <= {K.dim}, got {k}")
    if k == K.dim:
        return Gf2Matrix.zeros(0, K.count(k))
    return Gf2Matrix(K.count(k + 1), K.count(k), _face_masks(K, k + 1))


def coboundary(K: SimplicialComplex, x: Cochain) -> Cochain:
    k = x.degree
    if k >= K.dim:
        return Cochain(k + 1, 0)
    out = 0
    for i in bits(x.support):
        out ^= _coface_masks(K, k)[i]
    return Cochain(k + 1, out)


def is_cocycle(K: SimplicialComplex, x: Cochain) -> bool:
    return not coboundary(K, x)


# ---------------------------------------------------------------------------
# cup and cup-i products


@lru_cache(maxsize=256)
def _cup_i_terms(K: SimplicialComplex, p: int, q: int, i: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Index pairs ``(front, back)`` contributing to ``x cup_i y`` on each simplex.

    For ``u_0 < ... < u_i`` in ``0..n`` the vertex positions split into
    alternating closed intervals ``[0,u_0], [u_0,u_1], ..., [u_i,n]``; the
    even-numbered ones feed ``x`` and the odd-numbered ones feed ``y``.
    """
    n = p + q - i
    if n < 0 or n > K.dim:
        return ()
    pattern = []
    for u in combinations(range(n + 1), i + 1):
        ends = (0, *u, n)
        first: list[int] = []
        second: list[int] = []
        for m in range(i + 2):
            seg = range(ends[m], ends[m + 1] + 1)
            (first if m % 2 == 0 else second).extend(seg)
        # shared endpoints appear once per interval they bound
        f = sorted(set(first))
        s = sorted(set(second))
        if len(f) == p + 1 and len(s) == q + 1:
            pattern.append((tuple(f), tuple(s)))
    ip, iq = K._index[p], K._index[q]
    out = []
    for sigma in K.simplices[n]:
        out.append(
            tuple(
                (ip[tuple(sigma[a] for a in f)], iq[tuple(sigma[b] for b in s)])
                for f, s in pattern
            )
        )
    return tuple(out)


def cup_i(K: SimplicialComplex, x: Cochain, y: Cochain, i: int) -> Cochain:
    """Steenrod's cup-i product; ``cup_0`` is the Alexander-Whitney cup."""
    p, q = x.degree, y.degree
    n = p + q - i
    if n > K.dim or n < 0:
        return Cochain(max(n, 0), 0)
    xs, ys = x.support, y.support
    out = 0
    for j, terms in enumerate(_cup_i_terms(K, p, q, i)):
        acc = 0
        for a, b in terms:
            acc ^= (xs >> a) & (ys >> b) & 1
        if acc:
            out |= 1 << j
    return Cochain(n, out)


def cup(K: SimplicialComplex, x: Cochain, y: Cochain) -> Cochain:
    """``(x cup y)(v_0..v_{p+q}) = x(v_0..v_p) y(v_p..v_{p+q})``.

    Products above the top dimension are the zero cochain.
    """
    return cup_i(K, x, y, 0)


def steenrod_square(K: SimplicialComplex, i: int, x: Cochain) -> Cochain:
    """Cocycle representing ``Sq^i [x]``, computed as ``x cup_{k-i} x``."""
    k = x.degree
    if i < 0:
        raise BadDegree("negative square")
    if not is_cocycle(K, x):
        raise NotACocycle(f"degree-{k} cochain is not a cocycle")
    if i > k:
        return Cochain(k + i, 0)
    return cup_i(K, x, x, k - i)


def fundamental_pairing(K: SimplicialComplex, x: Cochain) -> int:
    """Evaluation on the mod 2 fundamental class (sum of all facets)."""
    if x.degree != K.dim:
        raise BadDegree(f"pairing needs a degree-{K.dim} cochain, got degree {x.degree}")
    return parity(x.support)


# ---------------------------------------------------------------------------
# cohomology


@dataclass(frozen=True, eq=False)
class CohomologyBasis:
    """Cocycle representatives of a basis of ``H^k`` and their coordinate map."""

    degree: int
    representatives: tuple[Cochain, ...]
    _boundaries: EchelonBasis = field(repr=False)
    _tagged: EchelonBasis = field(repr=False)
    _K: SimplicialComplex = field(repr=False)

    @property
    def rank(self) -> int:
        return len(self.representatives)

    def coordinates(self, x: Cochain) -> int:
        """Coordinate bitset of the class of the cocycle ``x``."""
        if x.degree != self.degree:
            raise BadDegree(f"expected degree {self.degree}, got {x.degree}")
        residual, tag = self._tagged.reduce(x.support)
        if residual:
            raise NotACocycle(f"degree-{self.degree} cochain is not a cocycle")
        return tag

    def cochain(self, coords: int) -> Cochain:
        """Representative cocycle of the class with the given coordinates."""
        out = 0
        for i in bits(coords):
            out ^= self.representatives[i].support
        return Cochain(self.degree, out)

    def lex_least(self, x: Cochain) -> Cochain:
        """Lexicographically least cocycle cohomologous to ``x``."""
        return Cochain(self.degree, self._boundaries.reduce(x.support)[0])

    def coboundaries(self) -> list[Cochain]:
        """Spanning set of ``B^k``: coboundaries of the (k-1)-simplex indicators."""
        if self.degree == 0:
            return []
        return [Cochain(self.degree, m) for m in _coface_masks(self._K, self.degree - 1)]


def cohomology_basis(K: SimplicialComplex, k: int) -> CohomologyBasis:
    """Basis of ``H^k(K; Z/2)``.

    Degree 0 uses component indicators.  In other degrees, representatives
    come from the cocycle nullspace, reduced to their lexicographically least
    form modulo coboundaries.
    """
    if not 0 <= k <= K.dim:
        raise BadDegree(f"degree {k} outside 0..{K.dim}")
    boundaries = EchelonBasis()
    if k > 0:
        for m in _coface_masks(K, k - 1):
            boundaries.add(m)
    if k == 0:
        candidates = [from_indices(c) for c in K.components]
    else:
        candidates = coboundary_matrix(K, k).nullspace()
    tagged = EchelonBasis()
    if k > 0:
        for m in _coface_masks(K, k - 1):
            tagged.add(m)
    reps: list[Cochain] = []
    for z in candidates:
        z = boundaries.reduce(z)[0]
        if tagged.add(z, 1 << len(reps)):
            reps.append(Cochain(k, z))
    return CohomologyBasis(k, tuple(reps), boundaries, tagged, K)


def betti_numbers(K: SimplicialComplex) -> tuple[int, ...]:
    """Mod 2 Betti numbers via rank-nullity on the coboundary matrices."""
    ranks = [coboundary_matrix(K, k).rank() for k in range(K.dim + 1)]
    return tuple(K.count(k) - ranks[k] - (ranks[k - 1] if k else 0) for k in range(K.dim + 1))


# ---------------------------------------------------------------------------
# the assembled ring

Element = tuple[int, ...]
"""A cohomology class: coordinate bitset per degree 0..d."""


class CohomologyRing:
    """``H^*(K; Z/2)`` with cup products, Steenrod squares and ``[K]``.

    Construction computes every structure constant and checks commutativity,
    associativity, the Steenrod axioms and nondegeneracy of the pairing.
    """

    def __init__(self, K: SimplicialComplex, check: bool = True) -> None:
        self.K = K
        self.dim = d = K.dim
        self.bases = tuple(cohomology_basis(K, k) for k in range(d + 1))
        self.ranks = tuple(b.rank for b in self.bases)
        # cup[p][q][i][j]: coordinates of b^p_i cup b^q_j in degree p + q
        self._cup: dict[tuple[int, int], list[list[int]]] = {}
        for p in range(d + 1):
            for q in range(d + 1 - p):
                self._cup[p, q] = [
                    [
                        self.bases[p + q].coordinates(cup(K, x, y))
                        for y in self.bases[q].representatives
                    ]
                    for x in self.bases[p].representatives
                ]
        # sq[i, k][j]: coordinates of Sq^i b^k_j in degree k + i
        self._sq: dict[tuple[int, int], list[int]] = {}
        for k in range(d + 1):
            for i in range(0, d - k + 1):
                self._sq[i, k] = [
                    self.bases[k + i].coordinates(steenrod_square(K, i, x))
                    for x in self.bases[k].representatives
                ]
        self._top_pairing = from_indices(
            j for j, x in enumerate(self.bases[d].representatives) if fundamental_pairing(K, x)
        )
        if check:
            self._check()

    # element helpers
    def zero(self) -> Element:
        return (0,) * (self.dim + 1)

    def one(self) -> Element:
        return self.homogeneous(0, (1 << self.ranks[0]) - 1)

    def homogeneous(self, k: int, coords: int) -> Element:
        out = [0] * (self.dim + 1)
        if 0 <= k <= self.dim:
            out[k] = coords
        return tuple(out)

    def basis_element(self, k: int, j: int) -> Element:
        return self.homogeneous(k, 1 << j)

    def classes(self, k: int) -> list[Element]:
        """All ``2^{b_k}`` classes of degree k, ordered by coordinate bitset."""
        return [self.homogeneous(k, c) for c in range(1 << self.ranks[k])]

    def class_of(self, x: Cochain) -> Element:
        return self.homogeneous(x.degree, self.bases[x.degree].coordinates(x))

    def component_generators(self) -> list[Element]:
        return [self.basis_element(0, j) for j in range(self.ranks[0])]

    @staticmethod
    def add(a: Element, b: Element) -> Element:
        return tuple(x ^ y for x, y in zip(a, b))

    def mul(self, a: Element, b: Element) -> Element:
        out = [0] * (self.dim + 1)
        for p, ap in enumerate(a):
            if not ap:
                continue
            for q in range(self.dim + 1 - p):
                bq = b[q]
                if not bq:
                    continue
                table = self._cup[p, q]
                acc = 0
                for i in bits(ap):
                    row = table[i]
                    for j in bits(bq):
                        acc ^= row[j]
                out[p + q] ^= acc
        return tuple(out)

    def power(self, a: Element, m: int) -> Element:
        out = self.one()
        for _ in range(m):
            out = self.mul(out, a)
        return out

    def sq(self, i: int, a: Element) -> Element:
        out = [0] * (self.dim + 1)
        for k, ak in enumerate(a):
            if not ak or k + i > self.dim:
                continue
            acc = 0
            for j in bits(ak):
                acc ^= self._sq[i, k][j]
            out[k + i] ^= acc
        return tuple(out)

    def total_sq(self, a: Element) -> Element:
        out = self.zero()
        for i in range(self.dim + 1):
            out = self.add(out, self.sq(i, a))
        return out

    def pair(self, a: Element) -> int:
        """``<a, [K]>``: only the top-degree part contributes."""
        return parity(a[self.dim] & self._top_pairing)

    def pairing_matrix(self, k: int) -> Gf2Matrix:
        """``P[i][j] = <b^k_i b^{d-k}_j, [K]>``."""
        rows = []
        for i in range(self.ranks[k]):
            row = 0
            for j in range(self.ranks[self.dim - k]):
                if self.pair(self.mul(self.basis_element(k, i), self.basis_element(self.dim - k, j))):
                    row |= 1 << j
            rows.append(row)
        return Gf2Matrix(self.ranks[k], self.ranks[self.dim - k], tuple(rows))

    def degree_parts(self, a: Element) -> list[int]:
        return [k for k, c in enumerate(a) if c]

    def _check(self) -> None:
        d = self.dim
        for k in range(d + 1):
            P = self.pairing_matrix(k)
            if P.nrows != P.ncols or P.rank() != P.nrows:
                raise PairingDegenerate(f"pairing H^{k} x H^{d - k} is degenerate")
        basis = [self.basis_element(k, j) for k in range(d + 1) for j in range(self.ranks[k])]
        for a in basis:
            for b in basis:
                ab = self.mul(a, b)
                if ab != self.mul(b, a):
                    raise AssertionError("cup product is not commutative")
        for a in basis:
            for b in basis:
                ab = self.mul(a, b)
                if not any(ab):
                    continue
                for c in basis:
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)):
                        raise AssertionError("cup product is not associative")
        for k in range(d + 1):
            for j in range(self.ranks[k]):
                a = self.basis_element(k, j)
                if self.sq(0, a) != a:
                    raise AssertionError("Sq^0 is not the identity")
                if 2 * k <= d and self.sq(k, a) != self.mul(a, a):
                    raise AssertionError("top square differs from the cup square")


@lru_cache(maxsize=32)
def ring(K: SimplicialComplex) -> CohomologyRing:
    """Cached cohomology ring of a closed manifold triangulation."""
    return CohomologyRing(K)
