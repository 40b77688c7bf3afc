"""One prime: the value at the identity of the (1,1)-curvature over Z_p."""

from arithchern.chern import FormMatrix, make_ring, split_form
from arithchern.oneprime import hensel_oracle, lhs_engine, n1_identity_check, rhs_sunny

ring = make_ring()
p, k = 3, 5
q = FormMatrix(1, 1, [[2]], ring)
print("closed form:", rhs_sunny(q, p, k).residues())
print("engine:     ", lhs_engine(q, p, 2, k).value.residues())
print("Newton root agrees mod 3^4:", hensel_oracle(2, p, k).congruent(-2, k - 1))
print("n = 1 identity:", bool(n1_identity_check(2, p, 3, 4)))
print("split form value:", rhs_sunny(split_form("symplectic", 2), p, k).residues())
