"""The binary forms f_p and their commutators g_pp'.

f_p(v, w) = ((v + w)^p + v^p - w^p) / 2 is homogeneous of degree p.
Composing two of them in both orders and subtracting gives g_pp', whose
low-order part in v already shows that the two composites differ.
"""

from arithchern._rational import fmt_rational
from arithchern.reduced import compose_fp, congruence_extract, expected_g2, expected_g3, fp_poly, g_poly

print("f_3 =", fp_poly(3).render())
print("f_35 has degree", compose_fp([3, 5]).degree)

for p, p2 in [(3, 5), (3, 7), (5, 7), (5, 11)]:
    c = congruence_extract(g_poly([p, p2]))
    print(f"g_{p},{p2}(v,1) mod v^3 = {fmt_rational(c[2])} v^2   predicted {fmt_rational(expected_g2(p, p2))}")

c = congruence_extract(g_poly([3, 5, 7]))
print(f"2 g_3,5,7(v,1) mod v^3 = {fmt_rational(2 * c[2])} v^2   predicted {fmt_rational(expected_g3(3, 5, 7))}")
