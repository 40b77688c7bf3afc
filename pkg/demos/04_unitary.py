"""The unitary case in the quotient ring Z[1/2][[alpha, beta]]/(2 alpha + alpha^2 + beta^2)."""

from arithchern.unitary import coefficient_contradiction, relation_check, uc_commutator_check, uc_lift_p, uc_lift_pbar

a5, b5 = uc_lift_p(5, 7)
# alpha_5 agrees with alpha up to the (1 - (1 + alpha)^2)^5 correction
print("alpha_5 =", a5.render())
print("beta_5 =", b5.render())
print("Chern lift keeps the relation:", bool(relation_check((a5, b5))))
print("trivial lift image of the relation:", relation_check(uc_lift_pbar(5, 4)).witness)

for p, p2 in [(3, 5), (3, 3), (5, 5)]:
    lhs, rhs = coefficient_contradiction(p, p2)
    print(f"({p},{p2}): alpha coefficients {lhs} vs {rhs}")

print(uc_commutator_check(3, 5, 3).witness)
