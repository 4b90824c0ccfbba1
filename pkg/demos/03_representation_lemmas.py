"""
Exterior powers of the monodromy representation
===============================================

For the candidate groups, the exterior powers of V are simple and pairwise
distinct, and the second one has no invariants.  Everything is computed
exactly in Q(zeta_12) from characters.
"""

from isofib import repcheck as rc
from isofib.groups import AbelianProduct, Pauli, Symmetric, Wreath

for spec in (Symmetric(4), Wreath(3, 2), Wreath(6, 3), Pauli):
    report = rc.verify_fiber_lemma(spec)
    print(f"{spec.label:12s} |G|={spec.order:5d}  self={report.self_products}  passed={report.passed}")

###############################################################################
# The invariant part of the exterior algebra of V + conj(V) is the
# identity matrix, so the invariant cohomology looks like that of P^n.

spec = Wreath(4, 3)
for row in rc.invariant_hodge_diamond(spec):
    print(row)
print(rc.invariant_cohomology_profile(spec))

###############################################################################
# An abelian group cannot work: V splits into characters already at k = 1.

print(rc.verify_fiber_lemma(AbelianProduct(3, 2)).first_violation)

###############################################################################
# Characters of exterior powers come from Newton's identities.

chi = rc.natural_character_of(Symmetric(4))
wedge2 = rc.exterior_power_character(chi, 2)
print("dim", wedge2.degree, " <wedge2, wedge2> =", rc.inner_product(wedge2, wedge2))
