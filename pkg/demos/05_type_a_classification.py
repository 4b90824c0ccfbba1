"""
Type A fibrations and their groups
==================================

Type A fibrations over P^n come from a short list of groups acting on an
abelian variety.  The Pauli group appears for n = 2 but its quotient has
no symplectic resolution.
"""

from isofib import canonical as cb

for n in (2, 3):
    res = cb.classify_type_A(n)
    for v in res.candidates:
        print(n, f"{v.spec.label:10s}", v.label if v.admitted else f"excluded ({v.reason})")

###############################################################################
# Monodromy constraints from the j-invariant and the endomorphism field.

for j in cb.J_CLASSES:
    print("global", j, sorted(cb.allowed_global_monodromy(j)))
for e in cb.ENDO_FIELDS:
    print("local", e, sorted(cb.allowed_local_monodromy(e)))

###############################################################################
# Kuga-Satake partners of K3-type Hodge structures.

for t in range(3, 8):
    print(t, sorted(cb.ks_partner_dims(t)))
print("partner an elliptic curve squared:", sorted(cb.admissible_transcendental_dims()))
