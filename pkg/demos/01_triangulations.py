"""
Triangulated manifolds
======================

Build closed manifolds from facet lists, check that they really are
manifolds, and read off f-vectors and mod 2 Betti numbers.
"""

from itertools import combinations

from gds_tqft.cohomology import betti_numbers
from gds_tqft.simplicial import build_from_facets, parse_manifold, validate_closed_manifold

# %%
# The boundary of a tetrahedron is the smallest triangulated 2-sphere.
S2 = build_from_facets(combinations(range(4), 3))
print("sphere:", S2.f_vector, betti_numbers(S2), bool(validate_closed_manifold(S2)))

# %%
# A single triangle is not closed; the validator says which edge is at fault.
print("triangle:", validate_closed_manifold(build_from_facets([(0, 1, 2)])).problem)

# %%
# Built-in vertex-minimal triangulations and product expressions share one
# small grammar.
for expr in ["rp2_6", "torus_7", "klein_8", "rp3_11", "cp2_9", "product(circle(3),rp2_6)"]:
    K = parse_manifold(expr).complex
    print(f"{expr:<26} f={K.f_vector}  b={betti_numbers(K)}  chi={K.euler_characteristic()}")
