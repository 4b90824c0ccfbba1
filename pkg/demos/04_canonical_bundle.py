"""
Canonical bundle formula on P^n
===============================

A fibration with trivial canonical class over P^n needs
sum (1 - c_i) deg D_i = n + 1.  We check this on the K3 models, on their
Hilbert scheme lifts, and compare the discriminant with the quotient divisor.
"""

from fractions import Fraction

from isofib import canonical as cb
from isofib import enumfib as ef
from isofib.kodaira import I0star

configs = [c for d in ef.GROUP_ORDERS for c in ef.enumerate_configs(d)]
residuals = {str(r) for r in (cb.check_canonical_bundle(cb.model_from_config(c)) for c in configs)}
print(len(configs), "K3 models, residuals:", residuals)

lifts = {str(cb.check_canonical_bundle(cb.lift_k3_to_hilb(c, n))) for c in configs for n in range(2, 7)}
print("Hilbert lifts n = 2..6, residuals:", lifts)

###############################################################################
# If every general singular fiber is I0*, the discriminant has degree 2(n+1).

print([cb.discriminant_degree_all_I0star(n) for n in range(1, 8)])

###############################################################################
# Type A means the quotient divisor D_q equals D_pi.  Four I0* fibers do;
# six IV fibers over P^1 do not.

kummer = cb.DiscriminantModel(1, (cb.DiscriminantComponent(I0star, 4),))
print("4 x I0*:", cb.compare_divisors(kummer).verdict)

six_iv = ef.enumerate_configs(3)[0]
cmp = cb.compare_divisors(cb.model_from_config(six_iv))
first = cmp.components[0]
print(six_iv, cmp.verdict, f"D_q coefficient {first.q_coefficient} > D_pi coefficient {first.pi_coefficient}")

###############################################################################
# Infinite monodromy fibers need an explicit coefficient.

model = cb.DiscriminantModel(1, (cb.DiscriminantComponent(Fraction(1, 12), 24),))
print("24 x I1 residual:", cb.check_canonical_bundle(model))
