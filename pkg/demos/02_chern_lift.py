"""Build the Frobenius lift attached to a split form and check its defining properties."""

from arithchern.chern import chern_lift, globality_check, split_form, verify_bq_diagram, verify_hq_diagram

q = split_form("symplectic", 2)
lift = chern_lift(q, 3, 3)
print("Phi_3(1 + T) - 1 modulo (T)^4:")
for i in range(2):
    for j in range(2):
        print(f"  [{i + 1},{j + 1}]", lift.Phi0[i, j].render())

for check in (verify_hq_diagram, verify_bq_diagram):
    print(check.__name__, bool(check(q, lift)))
print("fixes 1 with integral coefficients:", bool(globality_check(lift)))

# a form with a non-root-of-unity entry loses globality
from arithchern.chern import load_form

bad = load_form({"n": 2, "sign": -1, "entries": [["0", "2"], ["-2", "0"]]})
res = globality_check(chern_lift(bad, 3, 2))
print("q = [[0, 2], [-2, 0]]:", res.witness)
