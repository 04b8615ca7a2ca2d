"""A walk through the degree map on small spheres.

Run with ``python3 demos/degree_map_tour.py``.
"""

from srdegree import DegreeMap, RationalFunction, orient, simplex_boundary
from srdegree.degree import monomials_of_degree

# The boundary of a triangle: three edges on three vertices, d = 2.
tri = simplex_boundary(2)
o = orient(tri)
print("facets", tri.facets, "signs", [o.sign(f) for f in tri.facets])

# deg takes a degree-2 monomial in x_1, x_2, x_3 to a rational function of the
# l.s.o.p. coefficients a[i][j].
dm = DegreeMap(tri, o)
for J in monomials_of_degree(3, 2):
    print(J, "->", dm.monomial(J).to_text())

# Facet monomials are pinned down: deg(x^F) * [F] = eps_F.
for F in tri.facets:
    J = tuple(int(v in F) for v in (1, 2, 3))
    print("facet", F, "deg * bracket =", (dm.monomial(J) * dm.bracket(F)).to_text())

# Squares come from the linear relations mu_i = sum_j a[i][j] x_j = 0:
# x_1 * mu_1 = 0 gives a11 deg(x1^2) + a12 deg(x1 x2) + a13 deg(x1 x3) = 0.
a = lambda i, j: RationalFunction.variable(dm.ring, i, j)
lhs = a(1, 1) * dm.monomial((2, 0, 0)) + a(1, 2) * dm.monomial((1, 1, 0)) + a(1, 3) * dm.monomial((1, 0, 1))
print("relation x1*mu1:", lhs.to_text())

# Over F_3 the same map is the reduction of the rational one.
dm3 = DegreeMap(tri, orient(tri, 3), characteristic=3)
print("deg(x1^2) over F_3:", dm3.monomial((2, 0, 0)).to_text())
