"""Degree maps of generic artinian reductions of Stanley-Reisner rings.

Symbolic and point-evaluated degree maps of oriented pseudomanifolds,
differential operators in the l.s.o.p. coefficients, the Gorenstein quotient
through degree pairings, and executable checks of the p-th power identities.
"""

__version__ = "0.1.0"

from .complex import (
    SimplicialComplex,
    betti_numbers,
    bipyramid,
    cross_polytope,
    f_vector,
    h_vector,
    octahedron,
    orient,
    parse_complex,
    rp2_six_vertex,
    simplex_boundary,
    validate_pseudomanifold,
)
from .degree import DegreeMap, PointDegree, monomials_of_degree
from .diffop import (
    ExponentMatrix,
    Phi,
    Psi,
    apply_partial_multi,
    enumerate_row_sum_matrices,
    phi,
    pth_root_monomial,
)
from .exactalg import GF, QQ, RationalFunction, p_power_decompose, poly_ring, reduce_mod_p
from .reduction import (
    anisotropy_certify,
    anisotropy_fuzz,
    gorenstein_dimension,
    gorenstein_profile,
    lefschetz_injectivity,
    pairing_matrix,
)
from .verify import VerificationTask, run_task
