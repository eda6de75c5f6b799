"""
Toric code and the GDS model on a lattice
=========================================

Flat spin configurations live on the edges.  The vertex operator of the
GDS model flips the edges at a vertex with a sign; flipping every vertex of
a component gives a sign per flat class, and the ground space is spanned by
the classes whose sign is +1.
"""

from gds_tqft.simplicial import parse_manifold
from gds_tqft.lattice import character_table, flat_classes, flat_oracle_ground_dim, ground_dim, sigma_loop

# %%
# On RP^2 the trivial class is projected out by the GDS model.
K = parse_manifold("rp2_6").complex
print("flat classes:", len(flat_classes(K)))
print("sigma over all vertices, trivial class:", sigma_loop(K, 0, range(K.num_vertices)))
print("characters:", character_table(K, "gds").characters)

# %%
# Fast ground-state dimensions against the brute-force flat-space oracle.
for name in ["sphere(2)", "rp2_6", "torus_7", "klein_8"]:
    K = parse_manifold(name).complex
    fast = {m: ground_dim(K, m).dim for m in ("tc", "gds")}
    oracle = {m: flat_oracle_ground_dim(K, m) for m in ("tc", "gds")}
    print(f"{name:<10} fast={fast}  oracle={oracle}")

# %%
# The 4-manifold CP^2 has no GDS ground state at all.
print("CP2:", ground_dim(parse_manifold("cp2_9").complex, "gds").dim)
