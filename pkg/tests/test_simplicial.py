import json
import random
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gds_tqft.cohomology import betti_numbers
from gds_tqft.errors import (
    EmptyInput,
    MixedDimension,
    NotAManifold,
    ParseError,
    RepeatedVertexInFacet,
    TooLarge,
    UnknownManifold,
    UnknownVertex,
)
from gds_tqft.simplicial import (
    ManifoldRecord,
    automorphisms,
    barycentric_subdivision,
    build_from_facets,
    builtin,
    builtin_names,
    circle,
    disjoint_union,
    incident_simplices,
    parse_manifold,
    relabel,
    save_facet_file,
    simplicial_product,
    sphere,
    validate_closed_manifold,
)

SMALL = ["circle(3)", "circle(5)", "sphere(2)", "sphere(3)", "rp2_6", "torus_7", "klein_8"]
ALL = SMALL + ["rp3_11", "cp2_9"]

# Betti numbers from a separate numpy elimination (tools/derive_oracles.py)
BETTI = {
    "circle(3)": (1, 1),
    "circle(5)": (1, 1),
    "sphere(2)": (1, 0, 1),
    "sphere(3)": (1, 0, 0, 1),
    "rp2_6": (1, 1, 1),
    "torus_7": (1, 2, 1),
    "klein_8": (1, 2, 1),
    "rp3_11": (1, 1, 1, 1),
    "cp2_9": (1, 0, 1, 0, 1),
    "product(circle(3),circle(3))": (1, 2, 1),
    "product(circle(3),rp2_6)": (1, 2, 2, 1),
    "product(sphere(2),rp2_6)": (1, 1, 2, 1, 1),
}

F_VECTORS = {
    "sphere(2)": (4, 6, 4),
    "rp2_6": (6, 15, 10),
    "torus_7": (7, 21, 14),
    "klein_8": (8, 24, 16),
    "rp3_11": (11, 53, 84, 42),
    "cp2_9": (9, 36, 84, 90, 36),
}


def test_boundary_of_tetrahedron():
    K = build_from_facets(combinations(range(4), 3))
    assert K.f_vector == (4, 6, 4)
    assert validate_closed_manifold(K)
    assert K == sphere(2)


@pytest.mark.parametrize("name,fv", F_VECTORS.items())
def test_builtin_f_vectors(manifold, name, fv):
    assert manifold(name).complex.f_vector == fv


def test_cp2_euler_characteristic(manifold):
    assert manifold("cp2_9").complex.euler_characteristic() == 3


@pytest.mark.parametrize("name", BETTI)
def test_betti_numbers(manifold, name):
    assert betti_numbers(manifold(name).complex) == BETTI[name]


def test_build_errors():
    with pytest.raises(EmptyInput):
        build_from_facets([])
    with pytest.raises(MixedDimension):
        build_from_facets([(0, 1, 2), (2, 3)])
    with pytest.raises(RepeatedVertexInFacet):
        build_from_facets([(0, 1, 1)])
    with pytest.raises(UnknownVertex):
        build_from_facets([(0, 1, 3)])


def test_validation_rejects_single_triangle():
    check = validate_closed_manifold(build_from_facets([(0, 1, 2)]))
    assert not check
    assert "(0, 1)" in check.problem


def test_validation_rejects_pinched_spheres():
    # two tetrahedron boundaries glued at one vertex: pseudomanifold, bad link
    a = list(combinations(range(4), 3))
    b = [tuple(sorted({0: 0, 1: 4, 2: 5, 3: 6}[v] for v in f)) for f in a]
    check = validate_closed_manifold(build_from_facets(a + b))
    assert not check
    assert "link" in check.problem


@pytest.mark.parametrize("name", ALL)
def test_face_closure_idempotent(manifold, name):
    K = manifold(name).complex
    assert build_from_facets(K.facets) == K


@pytest.mark.parametrize("name", ALL)
def test_star_sizes_even(manifold, name):
    K = manifold(name).complex
    assert all(len(incident_simplices(K, v)) % 2 == 0 for v in range(K.num_vertices))


def test_incident_simplices_examples():
    assert incident_simplices(circle(3), 0) == {(0, 1), (0, 2)}
    S = sphere(2)
    assert all(len(incident_simplices(S, v)) == 6 for v in range(4))
    with pytest.raises(UnknownVertex):
        incident_simplices(S, 4)


def test_product_of_intervals_is_two_triangles():
    I = build_from_facets([(0, 1)])
    assert len(simplicial_product(I, I).facets) == 2


@pytest.mark.parametrize(
    "a,b", [("circle(3)", "circle(3)"), ("circle(3)", "rp2_6"), ("sphere(2)", "rp2_6"), ("circle(4)", "sphere(2)")]
)
def test_product_properties(manifold, a, b):
    K, L = manifold(a).complex, manifold(b).complex
    P = simplicial_product(K, L)
    from math import comb

    assert len(P.facets) == len(K.facets) * len(L.facets) * comb(K.dim + L.dim, K.dim)
    assert validate_closed_manifold(P)
    assert P.euler_characteristic() == K.euler_characteristic() * L.euler_characteristic()


def test_torus_from_product(manifold):
    P = manifold("product(circle(3),circle(3))").complex
    assert P.euler_characteristic() == 0
    assert betti_numbers(P)[1] == 2


def test_product_associative_up_to_invariants():
    A, B, C = circle(3), circle(4), circle(3)
    left = simplicial_product(simplicial_product(A, B), C)
    right = simplicial_product(A, simplicial_product(B, C))
    assert left.f_vector == right.f_vector
    assert betti_numbers(left) == betti_numbers(right) == (1, 3, 3, 1)


def test_barycentric_examples(manifold):
    c6 = barycentric_subdivision(circle(3))
    assert c6.f_vector == (6, 6) and validate_closed_manifold(c6)
    assert len(automorphisms(c6)) == 12
    assert barycentric_subdivision(sphere(2)).f_vector == (14, 36, 24)
    sd = barycentric_subdivision(manifold("rp2_6").complex)
    assert validate_closed_manifold(sd)
    assert betti_numbers(sd) == (1, 1, 1)


@pytest.mark.parametrize("name", ["torus_7", "klein_8", "sphere(3)"])
def test_subdivision_preserves_betti(manifold, name):
    K = manifold(name).complex
    assert betti_numbers(barycentric_subdivision(K)) == betti_numbers(K)


# group orders from brute force over all vertex permutations
@pytest.mark.parametrize(
    "name,order", [("sphere(2)", 24), ("circle(5)", 10), ("rp2_6", 60), ("torus_7", 42), ("klein_8", 2)]
)
def test_automorphism_group_orders(manifold, name, order):
    auts = automorphisms(manifold(name).complex)
    assert len(auts) == order
    group = set(auts)
    for p in auts[:6]:
        for q in auts[:6]:
            assert tuple(p[q[v]] for v in range(len(p))) in group


@pytest.mark.parametrize("m", [3, 4, 7])
def test_circle_automorphisms_dihedral(m):
    assert len(automorphisms(circle(m))) == 2 * m


def test_automorphisms_too_large(manifold):
    with pytest.raises(TooLarge):
        automorphisms(manifold("product(circle(4),circle(4))").complex)


@given(st.permutations(range(7)))
def test_relabel_preserves_invariants(perm):
    K = builtin("torus_7").complex
    L = relabel(K, perm)
    assert L.f_vector == K.f_vector
    assert validate_closed_manifold(L)
    assert betti_numbers(L) == (1, 2, 1)


def test_disjoint_union_components():
    U = disjoint_union(sphere(2), sphere(2))
    assert U.num_vertices == 8
    assert [len(c) for c in U.components] == [4, 4]
    assert betti_numbers(U) == (2, 0, 2)


def test_parse_manifold_forms(tmp_path):
    assert parse_manifold("circle(4)").complex == circle(4)
    assert parse_manifold(" sphere( 3 ) ").complex.f_vector == (5, 10, 10, 5)
    assert parse_manifold("product(circle(3), product(circle(3), circle(3)))").complex.dim == 3
    rec = builtin("rp2_6")
    path = tmp_path / "m.json"
    save_facet_file(rec, path)
    again = parse_manifold(f"file:{path}")
    assert again.complex == rec.complex and again.name == "rp2_6"
    doc = json.loads(path.read_text())
    assert doc["f_vector"] == [6, 15, 10]


@pytest.mark.parametrize("bad", ["", "product(circle(3))", "circle(x)", "circle(3", "3circle"])
def test_parse_manifold_errors(bad):
    with pytest.raises(ParseError):
        parse_manifold(bad)


def test_unknown_and_invalid_manifolds(tmp_path):
    with pytest.raises(UnknownManifold):
        parse_manifold("rp5_99")
    path = tmp_path / "disk.json"
    path.write_text(json.dumps({"name": "disk", "facets": [[0, 1, 2]]}))
    with pytest.raises(NotAManifold):
        parse_manifold(f"file:{path}")


def test_record_checks_f_vector():
    with pytest.raises(ValueError):
        ManifoldRecord("x", sphere(2), (4, 6, 5))


def test_data_dir_override(tmp_path, monkeypatch):
    # a file named torus_7.json holding the 7-vertex sphere boundary of a 6-simplex
    save_facet_file(ManifoldRecord("torus_7", sphere(5)), tmp_path / "torus_7.json")
    monkeypatch.setenv("GDS_DATA_DIR", str(tmp_path))
    moved = builtin("torus_7")
    assert moved.complex == sphere(5)


def test_catalog_names():
    names = builtin_names()
    for n in ["rp2_6", "torus_7", "klein_8", "rp3_11", "cp2_9"]:
        assert n in names


def test_link_of_vertex_is_circle(manifold):
    K = manifold("rp2_6").complex
    link = K.link((0,))
    verts = sorted({v for e in link for v in e})
    assert len(link) == len(verts) == 5
    rng = random.Random(0)
    v = rng.randrange(K.num_vertices)
    assert len(K.link((v,))) == 5
