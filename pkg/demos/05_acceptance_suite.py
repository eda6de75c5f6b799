"""
Cross-validation suite
======================

Runs every acceptance criterion: lattice against TQFT, oracles against
fast paths, and ring identities on random cocycles.
"""

from gds_tqft import acceptance

for result in acceptance.run_all():
    print(result.line())
