"""Wu and Stiefel-Whitney classes, Lagrangians in w_i and a, and their values.

A Lagrangian is a homogeneous mod 2 polynomial in the Stiefel-Whitney symbols
``w1, w2, ...`` and the bundle class ``a``.  It is evaluated either on a closed
n-manifold with a class ``a`` in H^1, or on ``S^1 x M`` for the mapping torus
of a bundle automorphism, using ``H^*(S^1 x M) = H^*(M)[x]/(x^2)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import comb
from typing import Iterable

from .cohomology import CohomologyRing, Element
from .errors import DegreeMismatch, NotIdempotent, PairingDegenerate, ParseError

Monomial = tuple[tuple[int, ...], int]
"""``(sorted w indices with repetition, exponent of a)``."""


def _monomial_degree(m: Monomial) -> int:
    return sum(m[0]) + m[1]


@dataclass(frozen=True)
class Lagrangian:
    n: int
    monomials: frozenset[Monomial] = frozenset()

    def __post_init__(self) -> None:
        for m in self.monomials:
            if _monomial_degree(m) != self.n:
                raise DegreeMismatch(f"monomial {_fmt_monomial(m)} is not of degree {self.n}")

    @classmethod
    def from_terms(cls, n: int, terms: Iterable[Monomial]) -> "Lagrangian":
        acc: set[Monomial] = set()
        for ws, j in terms:
            acc ^= {(tuple(sorted(ws)), j)}
        return cls(n, frozenset(acc))

    def __add__(self, other: "Lagrangian") -> "Lagrangian":
        if self.n != other.n:
            raise DegreeMismatch("adding Lagrangians of different degree")
        return Lagrangian(self.n, self.monomials ^ other.monomials)

    def __bool__(self) -> bool:
        return bool(self.monomials)

    def has_w_terms(self) -> bool:
        return any(ws for ws, _ in self.monomials)

    def __str__(self) -> str:
        if not self.monomials:
            return "0"
        ordered = sorted(self.monomials, key=lambda m: (-m[1], m[0]))
        return " + ".join(_fmt_monomial(m) for m in ordered)


def _fmt_monomial(m: Monomial) -> str:
    ws, j = m
    parts = []
    for i in sorted(set(ws)):
        e = ws.count(i)
        parts.append(f"w{i}" + (f"^{e}" if e > 1 else ""))
    if j:
        parts.append("a" + (f"^{j}" if j > 1 else ""))
    return "*".join(parts) if parts else "1"


_FACTOR = re.compile(r"(w[1-9]|a)(?:\^(\d+))?$")


def parse_lagrangian(text: str, n: int | None = None) -> Lagrangian:
    """Parse sums of monomials such as ``"a^3 + w1*a^2 + w2*a"``.

    Symbols are ``w1`` .. ``w9`` and ``a``; ``*``, ``^`` and ``+`` are the only
    operators and whitespace is ignored.  ``"0"`` is the zero Lagrangian, which
    needs ``n`` to be given.
    """
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ParseError("empty Lagrangian")
    terms: list[Monomial] = []
    for term in s.split("+"):
        if term == "0":
            continue
        if not term:
            raise ParseError(f"dangling '+' in {text!r}")
        ws: list[int] = []
        j = 0
        for factor in term.split("*"):
            m = _FACTOR.match(factor)
            if not m:
                raise ParseError(f"bad factor {factor!r} in {text!r}")
            e = int(m.group(2) or 1)
            if m.group(1) == "a":
                j += e
            else:
                ws.extend([int(m.group(1)[1])] * e)
        terms.append((tuple(ws), j))
    degrees = {sum(ws) + j for ws, j in terms}
    if n is None:
        if len(degrees) != 1:
            raise ParseError(f"cannot infer a single degree from {text!r}")
        n = degrees.pop()
    return Lagrangian.from_terms(n, terms)


def gds_lagrangian(n: int) -> Lagrangian:
    """Degree-n part of ``w a / (1 + a) = (1 + w1 + w2 + ...)(a + a^2 + ...)``."""
    if n < 1:
        raise ValueError("n >= 1")
    return Lagrangian.from_terms(n, [((i,) if i else (), n - i) for i in range(n)])


def dw_lagrangian(n: int) -> Lagrangian:
    return Lagrangian.from_terms(n, [((), n)])


def zero_lagrangian(n: int) -> Lagrangian:
    return Lagrangian(n)


def beta2_lagrangian(n: int) -> Lagrangian:
    """Degree-n part of ``w a / (1 + a^2) = w (a + a^3 + a^5 + ...)``."""
    return Lagrangian.from_terms(
        n, [((n - j,) if n - j else (), j) for j in range(1, n + 1, 2)]
    )


def orientation_twist(beta: Lagrangian) -> Lagrangian:
    """Substitute ``a -> a + w1`` and expand mod 2."""
    terms: list[Monomial] = []
    for ws, j in beta.monomials:
        for k in range(j + 1):
            if comb(j, k) % 2:
                terms.append((ws + (1,) * (j - k), k))
    return Lagrangian.from_terms(beta.n, terms)


# ---------------------------------------------------------------------------
# Wu and Stiefel-Whitney classes


@dataclass(frozen=True)
class WuProfile:
    ring: CohomologyRing
    classes: tuple[Element, ...]  # v_0 .. v_d, each homogeneous

    def total(self) -> Element:
        out = self.ring.zero()
        for v in self.classes:
            out = self.ring.add(out, v)
        return out


@dataclass(frozen=True)
class SWProfile:
    ring: CohomologyRing
    classes: tuple[Element, ...]  # w_0 .. w_d, each homogeneous

    def w(self, i: int) -> Element:
        return self.classes[i] if i < len(self.classes) else self.ring.zero()

    def total(self) -> Element:
        out = self.ring.zero()
        for w in self.classes:
            out = self.ring.add(out, w)
        return out


def wu_classes(R: CohomologyRing) -> WuProfile:
    """Solve ``<v_k x, [M]> = <Sq^k x, [M]>`` for all x in ``H^{d-k}``."""
    d = R.dim
    classes = []
    for k in range(d + 1):
        if 2 * k > d or R.ranks[k] == 0:
            classes.append(R.zero())
            continue
        P = R.pairing_matrix(k)
        rhs = 0
        for j in range(R.ranks[d - k]):
            if R.pair(R.sq(k, R.basis_element(d - k, j))):
                rhs |= 1 << j
        try:
            coords = P.transpose().solve(rhs)
        except ValueError as exc:
            raise PairingDegenerate(f"no Wu class in degree {k}") from exc
        classes.append(R.homogeneous(k, coords))
    return WuProfile(R, tuple(classes))


def stiefel_whitney(R: CohomologyRing, wu: WuProfile | None = None) -> SWProfile:
    """Total Stiefel-Whitney class ``w = Sq(v)``, split by degree."""
    wu = wu or wu_classes(R)
    total = R.total_sq(wu.total())
    return SWProfile(R, tuple(R.homogeneous(k, total[k]) for k in range(R.dim + 1)))


_SW_CACHE: dict[int, tuple[CohomologyRing, SWProfile]] = {}


def sw_of(R: CohomologyRing) -> SWProfile:
    hit = _SW_CACHE.get(id(R))
    if hit is None or hit[0] is not R:
        hit = (R, stiefel_whitney(R))
        _SW_CACHE[id(R)] = hit
    return hit[1]


# ---------------------------------------------------------------------------
# evaluation


def _evaluate(beta: Lagrangian, one, mul, add, zero, w_of, alpha):
    total = zero
    for ws, j in beta.monomials:
        term = one
        for i in ws:
            term = mul(term, w_of(i))
        for _ in range(j):
            term = mul(term, alpha)
        total = add(total, term)
    return total


def lagrangian_value(beta: Lagrangian, R: CohomologyRing, a: Element) -> int:
    """``<beta(N, a), [N]>`` with ``w_i -> w_i(N)`` and ``a -> a``."""
    if beta.n != R.dim:
        raise DegreeMismatch(f"Lagrangian of degree {beta.n} on a {R.dim}-manifold")
    sw = sw_of(R)
    value = _evaluate(beta, R.one(), R.mul, R.add, R.zero(), sw.w, a)
    return R.pair(value)


class MappingTorusRing:
    """``H^*(M)[x]/(x^2)`` with ``x`` the generator of ``H^1(S^1)``.

    Elements are pairs ``(u, u')`` meaning ``u + x u'``.
    """

    def __init__(self, R: CohomologyRing) -> None:
        self.base = R

    def zero(self):
        return (self.base.zero(), self.base.zero())

    def one(self):
        return (self.base.one(), self.base.zero())

    def add(self, p, q):
        return (self.base.add(p[0], q[0]), self.base.add(p[1], q[1]))

    def mul(self, p, q):
        R = self.base
        return (R.mul(p[0], q[0]), R.add(R.mul(p[0], q[1]), R.mul(p[1], q[0])))

    def pair(self, p) -> int:
        """Pairing with ``[S^1 x M]``: the top part of the x-coefficient."""
        return self.base.pair(p[1])


def _check_torus_args(R: CohomologyRing, t: Element) -> None:
    if any(t[1:]):
        raise NotIdempotent("t must be a degree-0 class")
    if R.mul(t, t) != t:
        raise NotIdempotent("t is not idempotent")


def mapping_torus_character(beta: Lagrangian, R: CohomologyRing, a: Element, t: Element) -> int:
    """``<beta(S^1 x M, P_phi), [S^1 x M]>`` where ``alpha(P_phi) = a + x t``.

    The Stiefel-Whitney classes of ``S^1 x M`` are pulled back from M.
    """
    if beta.n != R.dim + 1:
        raise DegreeMismatch(f"Lagrangian of degree {beta.n} on S^1 x (a {R.dim}-manifold)")
    _check_torus_args(R, t)
    T = MappingTorusRing(R)
    sw = sw_of(R)
    alpha = (a, t)
    value = _evaluate(beta, T.one(), T.mul, T.add, T.zero(), lambda i: (sw.w(i), R.zero()), alpha)
    return T.pair(value)


def gds_series_character(R: CohomologyRing, a: Element, t: Element) -> int:
    """``<alpha w / (1 + alpha), [S^1 x M]>`` by truncated geometric series.

    Independent of ``gds_lagrangian``: the series is summed in the ring and
    the pairing picks out the top-degree piece.
    """
    _check_torus_args(R, t)
    T = MappingTorusRing(R)
    alpha = (a, t)
    inverse = T.zero()
    power = T.one()
    for _ in range(R.dim + 2):
        inverse = T.add(inverse, power)
        power = T.mul(power, alpha)
    w = (sw_of(R).total(), R.zero())
    return T.pair(T.mul(T.mul(alpha, w), inverse))
