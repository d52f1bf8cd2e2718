"""
Rank-one symmetric matrices
===========================

The 2x2 minors of a symmetric matrix y (y[i,j] = y[j,i]) cut out the rank-one
matrices. For every size n they are generated by shifting a handful of minors
with strictly increasing index maps, and a small equivariant Groebner basis
describes them all at once.
"""

from itertools import combinations

from eqgb import ORDINARY, Field, buchberger, format_polynomial, interreduce, leading_ideal, truncate_basis
from eqgb.monoid import interval_unions
from eqgb.twofactor import determinant

F = Field(2)

# seeds: one 2x2 minor per pair of row/column sets whose union is {1..k}
seeds = [f for f in (determinant(r, c, F) for r, c in interval_unions(2, 2)) if f]
print(len(seeds), "seed minors")

state = buchberger(seeds)
basis = interreduce(state.elements)
print("equivariant basis:", len(basis), "elements after", state.stats["pairs_processed"], "S-pairs")
for f in basis:
    print("  ", format_polynomial(f))

# Instantiate at n = 5 by applying every increasing map {1..li} -> {1..5}
# and compare with an ordinary Buchberger run on all 2x2 minors of a 5x5 matrix.
n = 5
pairs = list(combinations(range(1, n + 1), 2))
minors = [f for f in (determinant(r, c, F) for r in pairs for c in pairs) if f]
ordinary = buchberger(minors, mode=ORDINARY)
same = leading_ideal(truncate_basis(basis, n)) == leading_ideal(ordinary.elements)
print(f"n={n}: truncated basis has the same leading ideal as the ordinary one: {same}")
