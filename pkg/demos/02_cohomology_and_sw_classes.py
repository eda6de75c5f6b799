"""
Cup products, Steenrod squares and Stiefel-Whitney classes
==========================================================

Everything is computed from the triangulation: cohomology bases over GF(2),
Alexander-Whitney cup products, cup-i products for the squares, then Wu
classes from Poincare duality and ``w = Sq(v)``.
"""

from gds_tqft.charclasses import sw_of, wu_classes
from gds_tqft.cohomology import ring
from gds_tqft.simplicial import parse_manifold

# %%
# On the real projective plane the generator z squares to the top class.
R = ring(parse_manifold("rp2_6").complex)
z = R.basis_element(1, 0)
print("<z^2, [RP2]> =", R.pair(R.mul(z, z)))

# %%
# On RP^3, Sq^1 z = z^2 and z^3 is the top class.
R3 = ring(parse_manifold("rp3_11").complex)
z = R3.basis_element(1, 0)
print("Sq^1 z == z^2:", R3.sq(1, z) == R3.mul(z, z), "  <z^3> =", R3.pair(R3.power(z, 3)))

# %%
# Which Stiefel-Whitney classes are nonzero, degree by degree.
for name in ["rp2_6", "klein_8", "torus_7", "cp2_9"]:
    Q = ring(parse_manifold(name).complex)
    v = wu_classes(Q)
    w = sw_of(Q)
    nonzero = [k for k in range(Q.dim + 1) if w.w(k) != Q.zero()]
    print(f"{name:<8} betti={Q.ranks}  nonzero w_k: {nonzero}  v1 = 0: {v.classes[1] == Q.zero()}")
