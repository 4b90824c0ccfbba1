"""
Kodaira fibers and their invariants
===================================

Each Kodaira type carries an Euler number, a monodromy order, a local
exponent and a log canonical threshold.  For the seven finite-monodromy
types the threshold is determined by the Euler number.
"""

from isofib import kodaira as kd

for name, row in zip(kd.ROW_HEADERS, kd.table_rows()):
    print(f"{name:28s}", " ".join(f"{v:>4s}" for v in row))

###############################################################################
# 1 - c equals e/12 on every finite-monodromy type, and each starred type
# completes its unstarred partner to Euler number 12.

for t in kd.SINGULAR_FINITE_TYPES:
    e = kd.euler_characteristic(t)
    print(f"{t.name:5s} e={e:2d}  1-c={1 - kd.lct(t)}  e/12={e}/12")

for a, b in kd.STAR_PAIRS:
    print(a.name, "+", b.name, "=", kd.euler_characteristic(a) + kd.euler_characteristic(b))

###############################################################################
# Which types can sit over a point with local monodromy of order 4?

print(sorted(t.name for t in kd.types_for_monodromy_order(4)))
