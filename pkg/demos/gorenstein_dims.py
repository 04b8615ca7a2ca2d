"""Graded dimensions of the Gorenstein quotient across characteristics.

Run with ``python3 demos/gorenstein_dims.py``.
"""

from srdegree import (
    betti_numbers,
    bipyramid,
    gorenstein_profile,
    h_vector,
    octahedron,
    orient,
    rp2_six_vertex,
    simplex_boundary,
)
from srdegree.reduction import anisotropy_certify, lefschetz_injectivity

complexes = {
    "triangle": simplex_boundary(2),
    "tetrahedron": simplex_boundary(3),
    "bipyramid": bipyramid(),
    "octahedron": octahedron(),
    "RP2": rp2_six_vertex(),
}

# For spheres the dimensions are the h-vector in every characteristic.
for name, cx in complexes.items():
    row = [f"{name:12s} h={h_vector(cx)}"]
    for ch in (0, 2, 3):
        row.append(f"char {ch}: {gorenstein_profile(cx, ch, 'exact').dims}")
    print("  ".join(row))

# RP2 has torsion: over Q it is not orientable and the top degree vanishes,
# over F_2 it is a homology sphere and behaves like one.
rp2 = complexes["RP2"]
print("RP2 Betti over Q", betti_numbers(rp2, 0), "over F_2", betti_numbers(rp2, 2))

# Multiplication by l = x_1 + ... + x_n is injective in low degrees.
oc = complexes["octahedron"]
for p in (2, 3):
    o = orient(oc, p)
    print(f"octahedron p={p} injective in degrees 0..2:",
          [lefschetz_injectivity(oc, o, m, 1, "exact", p) for m in range(3)])

# In characteristic 2 the form g -> deg(l^(d-2m) g^2) has no isotropic vector.
cert = anisotropy_certify(oc, orient(oc, 2), 2, 1)
print("anisotropy certificate:", cert.verdict, "rank", cert.semilinear_rank, "of", cert.dim)
