import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gds_tqft.gf2 import EchelonBasis, Gf2Matrix, bits, from_indices, parity, rank


def span_size(rows):
    span = {0}
    for r in rows:
        span |= {x ^ r for x in span}
    return len(span)


matrices = st.integers(1, 7).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.integers(0, (1 << n) - 1), min_size=0, max_size=7))
)


def test_bit_helpers():
    assert list(bits(0b101001)) == [0, 3, 5]
    assert from_indices([0, 3, 5, 5]) == 0b001001
    assert parity(0b111) == 1 and parity(0b11) == 0


@given(matrices)
def test_rank_matches_span_size(m):
    n, rows = m
    assert 1 << rank(rows, n) == span_size(rows)


@given(matrices)
def test_nullspace_is_kernel_with_rank_nullity(m):
    n, rows = m
    A = Gf2Matrix(len(rows), n, tuple(rows))
    ker = A.nullspace()
    assert all(A.mul_vec(x) == 0 for x in ker)
    assert len(ker) + A.rank() == n
    assert rank(ker, n) == len(ker)


@given(matrices, st.integers(0, 127))
def test_solve_agrees_with_brute_force(m, b):
    n, rows = m
    A = Gf2Matrix(len(rows), n, tuple(rows))
    b &= (1 << len(rows)) - 1
    solvable = any(A.mul_vec(x) == b for x in range(1 << n))
    if solvable:
        assert A.mul_vec(A.solve(b)) == b
    else:
        with pytest.raises(ValueError):
            A.solve(b)


@given(matrices)
def test_transpose_and_dense_round_trip(m):
    n, rows = m
    A = Gf2Matrix(len(rows), n, tuple(rows))
    assert Gf2Matrix.from_dense(A.to_dense()) == A
    assert A.transpose().transpose() == A
    assert np.array_equal(A.transpose().to_dense(), A.to_dense().T)


def test_matmul_matches_numpy():
    rng = np.random.default_rng(3)
    a = rng.integers(0, 2, (5, 7))
    b = rng.integers(0, 2, (7, 4))
    got = (Gf2Matrix.from_dense(a) @ Gf2Matrix.from_dense(b)).to_dense()
    assert np.array_equal(got, (a @ b) % 2)


def test_dump_grid():
    A = Gf2Matrix.from_dense([[1, 0, 1], [0, 1, 1]])
    assert A.dump() == "101\n011"


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.integers(1, (1 << n) - 1), max_size=5), st.integers(0, (1 << n) - 1))))
def test_echelon_basis_reduces_to_least_coset_element(data):
    n, gens, v = data
    B = EchelonBasis()
    for i, g in enumerate(gens):
        B.add(g, 1 << i)
    residual, tag = B.reduce(v)
    coset = []
    for coeffs in itertools.product((0, 1), repeat=len(gens)):
        w = v
        for c, g in zip(coeffs, gens):
            if c:
                w ^= g
        coset.append(w)
    # bit 0 is the most significant coordinate
    key = lambda x: [(x >> j) & 1 for j in range(n)]
    assert key(residual) == min(key(w) for w in coset)
    # the tag records which generators were used
    w = v
    for i in bits(tag):
        w ^= gens[i]
    assert w == residual


def test_echelon_basis_add_reports_dependence():
    B = EchelonBasis()
    assert B.add(0b011) and B.add(0b110)
    assert not B.add(0b101)
    assert B.contains(0b101) and not B.contains(0b001)
    assert len(B) == 2
