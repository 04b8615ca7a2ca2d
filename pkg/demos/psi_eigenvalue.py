"""Which scalar does Psi_r multiply degrees by?

Psi_r = sum over matrices I with row sums r of (a^I / I!) d^I.  On a degree
value it acts by a scalar; this compares the observed scalar with
(-1)^(dr) (r!)^(2d) and with (-1)^(dr).

Run with ``python3 demos/psi_eigenvalue.py``.
"""

from math import factorial

from srdegree import Phi, Psi, orient, simplex_boundary
from srdegree.degree import DegreeMap
from srdegree.diffop import psi_scalar_actual, psi_scalar_stated

for d in (1, 2):
    cx = simplex_boundary(d)
    dm = DegreeMap(cx, orient(cx))
    J = (d,) + (0,) * d
    g = dm.monomial(J)
    for r in (1, 2, 3):
        observed = (Psi(r, g) / g).to_text()
        print(f"d={d} r={r}: observed {observed:>4}  "
              f"(-1)^(dr)(r!)^(2d) = {psi_scalar_stated(d, r):>6}  (-1)^(dr) = {psi_scalar_actual(d, r)}")

# The per-row operators multiply by (-1)^r r! each, so their product carries
# (r!)^d, which Psi_r does not.
cx = simplex_boundary(2)
g = DegreeMap(cx, orient(cx)).monomial((1, 1, 0))
r = 2
prod = Phi(1, r, Phi(2, r, g))
print("prod Phi / Psi =", (prod / Psi(r, g)).to_text(), "= (r!)^d =", factorial(r) ** 2)
