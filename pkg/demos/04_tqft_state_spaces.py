"""
Gauge-gravity TQFTs
===================

A theory is a Lagrangian in the Stiefel-Whitney classes and the gauge
field.  Partition functions sum over H^1; state spaces are read off from
mapping-torus characters without triangulating ``S^1 x M``.
"""

from gds_tqft.simplicial import parse_manifold
from gds_tqft.tqft import compare_theories, quantum_partition, state_dim, theory, trace_identity_check

M = parse_manifold

# %%
print("Z_gds(RP^2)   =", quantum_partition(theory("gds", 2), M("rp2_6")).value)
print("Z_dw0(torus)  =", quantum_partition(theory("dw0", 2), M("torus_7")).value)
print("dim Z_gds(RP^3) =", state_dim(theory("gds", 4), M("rp3_11")).dimension)

# %%
# In dimension three GDS and a^3 agree after relabeling a -> a + w1.
table = compare_theories([theory(t, 3) for t in ("gds", "dw0", "dw^3")], [M(n) for n in ("sphere(2)", "rp2_6", "torus_7", "klein_8")])
print(table.to_text())

# %%
# Z(S^1 x M) from a triangulated product equals the state-space dimension.
for name in ["circle(3)", "rp2_6"]:
    rec = M(name)
    print(name, trace_identity_check(theory("gds", rec.complex.dim + 1), rec))
