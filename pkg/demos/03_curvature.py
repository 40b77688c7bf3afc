"""Curvature reports: vanishing in small rank, and where it first appears."""

from arithchern.chern import split_form
from arithchern.curvature import curvature11, curvature2, graded_piece
from arithchern.reduced import corner_two_consistency

print(curvature2(split_form("symplectic", 2), 3, 5, 5).to_text())
print()

rep = curvature2(split_form("split-sym-even", 4), 3, 5, 2)
print("n = 4, degree <= 2 part zero:", graded_piece(rep, 2).is_zero())

# in rank 4 the corner reduction carries the curvature to g_35(B_ij, B_ji)
res = corner_two_consistency(3, 5, 1)
print("corner commutator equals g_35, first nonzero in degree", res.data["leading_degree"])
print()

print(curvature11(split_form("split-sym-even", 2), 3, 5, 2).to_text())
