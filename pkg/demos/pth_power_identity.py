"""The p-th power behaviour of degrees under derivatives in the coefficients.

Run with ``python3 demos/pth_power_identity.py``.
"""

from srdegree import ExponentMatrix, RationalFunction, apply_partial_multi, poly_ring, simplex_boundary
from srdegree.verify import VerificationTask, run_task

# The smallest case: 1/det of a 2 x 2 matrix in characteristic 3.
ring = poly_ring(2, 2, 3)
a = lambda i, j: RationalFunction.variable(ring, i, j)
f = 1 / (a(1, 1) * a(2, 2) - a(2, 1) * a(1, 2))
g = apply_partial_multi(ExponentMatrix([[2, 0], [0, 2]]), f)
print("d^2/da11^2 d^2/da22^2 f =", g.to_text())
print("equal to f^3:", g == f ** 3)

# Over Q the same derivative is not a cube.
ring0 = poly_ring(2, 2, 0)
b = lambda i, j: RationalFunction.variable(ring0, i, j)
f0 = 1 / (b(1, 1) * b(2, 2) - b(2, 1) * b(1, 2))
print("over Q equal to f^3:", apply_partial_multi(ExponentMatrix([[2, 0], [0, 2]]), f0) == f0 ** 3)

# On a triangle boundary every (I, J) pair is checked symbolically.
for p in (2, 3):
    rep = run_task(VerificationTask("T1.2", simplex_boundary(2), "triangle", p))
    print(f"derivative identity, p={p}: {rep.status}, {rep.instances} instances")

# The expanded identity, randomized on the octahedron with 3 seeds.
from srdegree import octahedron

rep = run_task(VerificationTask("T1.1", octahedron(), "octahedron", 2, "randomized", seeds=3))
print("sum identity on the octahedron:", rep.status, rep.instances, "instances")
for seed, bound in rep.per_seed:
    print("  seed", seed, "failure probability <=", float(bound))
