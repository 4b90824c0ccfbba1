"""
Isotrivial elliptic K3 surfaces
===============================

For cyclic monodromy of order d the singular fibers must have Euler
numbers summing to 24.  Each admissible multiset determines a cyclic
cover of P^1 whose genus we compute by Riemann-Hurwitz.
"""

from isofib import enumfib as ef

for d in ef.GROUP_ORDERS:
    rows = ef.classify(d)
    print(f"mu{d}: {len(rows)} configuration(s), {sum(r.type_A for r in rows)} of type A")

###############################################################################
# The order-3 case in full.

axes = ef.allowed_types(3)
print("No.", *[t.name for t in axes], "g", "ramification", sep="\t")
for r in ef.classify(3):
    print(r.row, *r.config.count_vector(axes), ef.format_genus(r.genus, r.components),
          ef.format_ramification(r.cover.ramification_multiset()), sep="\t")

###############################################################################
# A single cover by hand: z^6 = (x - p1)^2 (x - p2)^5 (x - p3)^5.

cover = ef.CoverData(6, (2, 5, 5))
print("genus", ef.genus(cover), "components", ef.component_count(cover))

###############################################################################
# Compare against the bundled tables.  The order-4 table disagrees with the
# computed genus on three rows; those rows are reported, not hidden.

report = ef.match_golden(4)
for row in report.rows:
    for c in row.mismatches():
        print(f"{report.table} row {row.row}: {c.field} printed {c.expected}, computed {c.actual}")
