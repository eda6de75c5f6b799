import pytest
from hypothesis import given
from hypothesis import strategies as st

from gds_tqft.charclasses import (
    Lagrangian,
    beta2_lagrangian,
    dw_lagrangian,
    gds_lagrangian,
    gds_series_character,
    lagrangian_value,
    mapping_torus_character,
    orientation_twist,
    parse_lagrangian,
    stiefel_whitney,
    sw_of,
    wu_classes,
    zero_lagrangian,
)
from gds_tqft.cohomology import ring
from gds_tqft.errors import DegreeMismatch, NotIdempotent, ParseError

ORIENTABLE = ["circle(3)", "sphere(2)", "sphere(3)", "torus_7", "rp3_11", "cp2_9", "product(circle(3),circle(3))"]
NONORIENTABLE = ["rp2_6", "klein_8", "product(circle(3),rp2_6)", "product(circle(3),klein_8)"]
THREE_MANIFOLDS = ["sphere(3)", "rp3_11", "product(circle(3),rp2_6)", "product(circle(3),klein_8)"]


def R_of(manifold, name):
    return ring(manifold(name).complex)


# --- Lagrangians ------------------------------------------------------------


def test_standard_lagrangians_print():
    assert str(gds_lagrangian(1)) == "a"
    assert str(gds_lagrangian(2)) == "a^2 + w1*a"
    assert str(gds_lagrangian(3)) == "a^3 + w1*a^2 + w2*a"
    assert str(gds_lagrangian(4)) == "a^4 + w1*a^3 + w2*a^2 + w3*a"
    assert str(beta2_lagrangian(2)) == "w1*a"
    assert str(beta2_lagrangian(3)) == "a^3 + w2*a"
    assert str(dw_lagrangian(3)) == "a^3"
    assert str(zero_lagrangian(3)) == "0"


def test_orientation_twist_examples():
    assert str(orientation_twist(dw_lagrangian(2))) == "a^2 + w1^2"
    assert str(orientation_twist(dw_lagrangian(3))) == "a^3 + w1*a^2 + w1^2*a + w1^3"
    assert str(orientation_twist(dw_lagrangian(4))) == "a^4 + w1^4"
    assert orientation_twist(zero_lagrangian(2)) == zero_lagrangian(2)


def test_gauge_gravity_flags():
    assert not dw_lagrangian(3).has_w_terms()
    assert gds_lagrangian(3).has_w_terms()
    assert not zero_lagrangian(2) and gds_lagrangian(1)


monomials = st.integers(1, 5).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.lists(
            st.integers(0, n).flatmap(
                lambda j: st.tuples(
                    st.lists(st.integers(1, n), max_size=n).filter(lambda ws: sum(ws) == n - j), st.just(j)
                )
            ),
            max_size=5,
        ),
    )
)


@given(monomials)
def test_parse_round_trip(data):
    n, terms = data
    L = Lagrangian.from_terms(n, terms)
    assert parse_lagrangian(str(L), n) == L


@given(monomials)
def test_twist_is_an_involution(data):
    n, terms = data
    L = Lagrangian.from_terms(n, terms)
    assert orientation_twist(orientation_twist(L)) == L
    assert orientation_twist(L + L) == zero_lagrangian(n)


def test_parser_accepts_spacing_and_repeats():
    assert parse_lagrangian("w1 * w1 * a") == parse_lagrangian("w1^2*a")
    assert parse_lagrangian("a + a + w1") == parse_lagrangian("w1")
    assert parse_lagrangian("0", 3) == zero_lagrangian(3)


@pytest.mark.parametrize("bad", ["", "a +", "b^2", "a^2 + a", "w0*a", "a^"])
def test_parser_errors(bad):
    with pytest.raises(ParseError):
        parse_lagrangian(bad)


def test_degree_checks():
    with pytest.raises(DegreeMismatch):
        Lagrangian(2, frozenset({((1,), 2)}))
    with pytest.raises(DegreeMismatch):
        parse_lagrangian("a^2", 3)
    with pytest.raises(DegreeMismatch):
        dw_lagrangian(2) + dw_lagrangian(3)


# --- Wu and Stiefel-Whitney classes ---------------------------------------------


def test_sphere_and_torus_wu_classes_trivial(manifold):
    for name in ["sphere(2)", "torus_7", "sphere(3)"]:
        R = R_of(manifold, name)
        wu = wu_classes(R)
        assert wu.total() == R.one()


def test_rp2_classes(manifold):
    R = R_of(manifold, "rp2_6")
    z = R.basis_element(1, 0)
    assert wu_classes(R).classes[1] == z
    sw = stiefel_whitney(R)
    assert sw.w(1) == z
    assert sw.w(2) == R.mul(z, z)
    assert sw.total() == R.add(R.add(R.one(), z), R.mul(z, z))


def test_cp2_classes(manifold):
    R = R_of(manifold, "cp2_9")
    x = R.basis_element(2, 0)
    sw = sw_of(R)
    assert sw.w(1) == R.zero() and sw.w(3) == R.zero()
    assert sw.w(2) == x
    assert sw.w(4) == R.mul(x, x)


def test_klein_bottle_classes(manifold):
    R = R_of(manifold, "klein_8")
    sw = sw_of(R)
    assert sw.w(1) != R.zero()
    assert sw.w(2) == R.zero()
    # <w1 x> = <x^2> for every x in H^1
    for x in R.classes(1):
        assert R.pair(R.mul(sw.w(1), x)) == R.pair(R.mul(x, x))


@pytest.mark.parametrize("name", ORIENTABLE)
def test_orientable_manifolds_have_zero_w1(manifold, name):
    R = R_of(manifold, name)
    assert sw_of(R).w(1) == R.zero()


@pytest.mark.parametrize("name", NONORIENTABLE)
def test_nonorientable_manifolds_have_nonzero_w1(manifold, name):
    R = R_of(manifold, name)
    assert sw_of(R).w(1) != R.zero()


@pytest.mark.parametrize("name", ORIENTABLE + NONORIENTABLE)
def test_top_class_is_euler_characteristic(manifold, name):
    rec = manifold(name)
    R = ring(rec.complex)
    assert R.pair(sw_of(R).w(R.dim)) == rec.complex.euler_characteristic() % 2


@pytest.mark.parametrize("name", ORIENTABLE + NONORIENTABLE)
def test_wu_defining_property(manifold, name):
    R = R_of(manifold, name)
    wu = wu_classes(R)
    d = R.dim
    for k in range(d + 1):
        for x in R.classes(d - k):
            assert R.pair(R.mul(wu.classes[k], x)) == R.pair(R.sq(k, x))


def test_sw_cache_follows_ring_identity(manifold):
    R = R_of(manifold, "rp2_6")
    assert sw_of(R) is sw_of(R)


# --- evaluation ----------------------------------------------------------------


def test_lagrangian_values_on_rp2(manifold):
    R = R_of(manifold, "rp2_6")
    zero, z = R.zero(), R.basis_element(1, 0)
    assert lagrangian_value(dw_lagrangian(2), R, zero) == 0
    assert lagrangian_value(dw_lagrangian(2), R, z) == 1
    twisted = orientation_twist(dw_lagrangian(2))
    assert lagrangian_value(twisted, R, zero) == 1
    assert lagrangian_value(twisted, R, z) == 0
    # a^2 + w1 a vanishes identically on surfaces (Wu)
    assert all(lagrangian_value(gds_lagrangian(2), R, a) == 0 for a in R.classes(1))
    with pytest.raises(DegreeMismatch):
        lagrangian_value(dw_lagrangian(3), R, z)


@pytest.mark.parametrize("name", THREE_MANIFOLDS)
def test_w1_squared_equals_w2_on_three_manifolds(manifold, name):
    R = R_of(manifold, name)
    lhs, rhs = parse_lagrangian("w1^2*a"), parse_lagrangian("w2*a")
    assert all(lagrangian_value(lhs, R, a) == lagrangian_value(rhs, R, a) for a in R.classes(1))


def test_mapping_torus_examples(manifold):
    R = R_of(manifold, "rp2_6")
    z, one = R.basis_element(1, 0), R.one()
    beta = gds_lagrangian(3)
    assert mapping_torus_character(beta, R, R.zero(), one) == 1
    assert mapping_torus_character(beta, R, z, one) == 0
    # with t = 0 the bundle is pulled back from M, and the x-part vanishes
    assert mapping_torus_character(beta, R, z, R.zero()) == 0
    assert mapping_torus_character(dw_lagrangian(3), R, z, one) == 1
    with pytest.raises(DegreeMismatch):
        mapping_torus_character(dw_lagrangian(2), R, z, one)
    with pytest.raises(NotIdempotent):
        mapping_torus_character(beta, R, z, z)


@pytest.mark.parametrize("name", ORIENTABLE + NONORIENTABLE)
def test_series_matches_polynomial(manifold, name):
    R = R_of(manifold, name)
    beta = gds_lagrangian(R.dim + 1)
    for t in R.component_generators():
        for a in R.classes(1):
            assert gds_series_character(R, a, t) == mapping_torus_character(beta, R, a, t)
