"""
Pentad and off-diagonal minor
=============================

The Gaussian two-factor model consists of covariance matrices that are a
diagonal plus a rank-two matrix. Two polynomials without diagonal entries
vanish on it: the pentad P (degree 5, five indices) and the off-diagonal
minor M = det y[{4,5,6},{1,2,3}]. Both are checked here through the
parameterization y[i,j] -> s_i s_j + t_i t_j.
"""

from eqgb import Field, MonoidElement, apply, format_polynomial, reduce
from eqgb.twofactor import off_diagonal_minor, pentad, seed_minors, substitute_parameterization

QQ = Field()

P = pentad(QQ)
M = off_diagonal_minor(QQ)
print("pentad:", len(P.terms), "terms, coefficients", sorted({str(c) for _, c in P.terms}))
print("M =", format_polynomial(M))

for name, f in (("pentad", P), ("M", M)):
    print(f"{name} under the parameterization:", format_polynomial(substitute_parameterization(f)))

# every 3x3 minor of diag + rank 2 that avoids the diagonal vanishes too
seeds = seed_minors(QQ)
print(sum(not substitute_parameterization(f) for f in seeds), "of", len(seeds), "seed minors vanish")

# shifting by an increasing map keeps membership; the shifted minor reduces
# to zero against M itself
g = MonoidElement.diagonal((2, 3, 5, 7, 8, 9))
print("g.M reduces to", format_polynomial(reduce(apply(g, M), [M])))
