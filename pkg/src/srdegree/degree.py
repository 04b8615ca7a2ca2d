"""The degree map deg: K[x_1..x_n]_d -> K of a generic artinian reduction.

Degrees are assembled facet by facet: each facet sigma contributes the degree
map of the boundary of the simplex {0} + sigma, where 0 is an auxiliary cone
vertex, and on that simplex boundary deg(x^J) = X^J / (X_0 ... X_d) with X_j
the signed maximal minors of the d x (d+1) coefficient matrix.

Two evaluation paths share the facet-sum structure:

* :class:`DegreeMap` works symbolically in k(a_{i,j}) and returns
  :class:`RationalFunction` values;
* :class:`PointDegree` works at a point whose coordinates are field elements
  or jets, for randomized identity testing.

The cone column a_{i,0} is specialized to integer constants by default; the
sum is independent of that choice.  With a unit vector e_t there, every minor
through column 0 is a (d-1)-minor, which keeps the symbolic sums small; any
other constant vector c is reduced to e_t by the row operation h with
h e_t = c, since each facet term picks up the factor 1/det h.
"""

from itertools import combinations, combinations_with_replacement
from fractions import Fraction
from math import factorial

from .errors import (
    AuxiliarySpecializationDegenerate,
    DenominatorVanishes,
    PreconditionError,
)
from .exactalg.poly import RationalFunction, poly_ring
from .linalg import leibniz_det

__all__ = [
    "CofactorSystem",
    "DegreeMap",
    "PointDegree",
    "default_aux",
    "simplex_degree",
    "plucker_check",
    "monomials_of_degree",
    "face_supported_monomials",
    "support",
    "xpoly_mul",
    "xpoly_pow",
    "ell_power",
    "random_point",
]


def default_aux(d):
    """Column-0 constants: the first unit vector."""
    return (1,) + (0,) * (d - 1)


def support(J):
    return tuple(v + 1 for v, e in enumerate(J) if e)


def monomials_of_degree(n, m):
    """Exponent tuples of length n and total degree m, in a fixed order."""
    out = []
    for combo in combinations_with_replacement(range(n), m):
        J = [0] * n
        for v in combo:
            J[v] += 1
        out.append(tuple(J))
    return out


def face_supported_monomials(cx, m):
    return [J for J in monomials_of_degree(cx.n, m) if cx.is_face(support(J))]


def xpoly_mul(f, g):
    """Product of polynomials in x given as {exponent tuple: coefficient}."""
    out = {}
    for J, a in f.items():
        for L, b in g.items():
            K = tuple(x + y for x, y in zip(J, L))
            t = a * b
            out[K] = out[K] + t if K in out else t
    return {K: c for K, c in out.items() if c}


def xpoly_pow(f, e, n, one):
    result = {(0,) * n: one}
    for _ in range(e):
        result = xpoly_mul(result, f)
    return result


def ell_power(n, k, coerce):
    """(x_1 + ... + x_n)^k with multinomial coefficients mapped through ``coerce``."""
    out = {}
    for J in monomials_of_degree(n, k):
        c = factorial(k)
        for e in J:
            c //= factorial(e)
        c = coerce(c)
        if c:
            out[J] = c
    return out


class CofactorSystem:
    """Signed maximal minors of a d x (d+1) matrix given by its columns.

    ``X[j] = (-1)^j det(columns without j)``; entries may be polynomials,
    field elements or jets.
    """

    def __init__(self, columns, zero):
        self.columns = [list(c) for c in columns]
        self.d = len(self.columns[0])
        self.zero = zero
        if len(self.columns) != self.d + 1:
            raise PreconditionError("need d+1 columns of length d")
        self.X = []
        for j in range(self.d + 1):
            det = self._det([c for t, c in enumerate(self.columns) if t != j])
            self.X.append(det if j % 2 == 0 else -det)

    def _det(self, cols):
        rows = [[col[i] for col in cols] for i in range(self.d)]
        return leibniz_det(rows, self.zero)

    def augmented_minor(self, r, j, m, one):
        """Y_{j,m}: det of [A | e_r] with columns j < m removed (columns 0..d+1)."""
        e_r = [one if i == r - 1 else self.zero for i in range(self.d)]
        cols = self.columns + [e_r]
        return self._det([c for t, c in enumerate(cols) if t not in (j, m)])


def simplex_degree(cofactors, J, make_fraction=None):
    """X^J / (X_0 ... X_d) for J indexed by the simplex vertices 0..d.

    ``make_fraction(num, den)`` builds the quotient (defaults to ``num / den``).
    """
    d = cofactors.d
    if len(J) != d + 1 or sum(J) != d:
        raise PreconditionError(f"simplex_degree needs row sum {d}, got {tuple(J)}")
    num = None
    den = None
    for x, e in zip(cofactors.X, J):
        if e == 0:
            den = x if den is None else den * x
        elif e > 1:
            f = x ** (e - 1)
            num = f if num is None else num * f
    if make_fraction is not None:
        return make_fraction(num, den)
    if num is None and den is None:
        return 1
    if den is None:
        return num
    return (num if num is not None else 1) / den


class DegreeMap:
    """Symbolic degree map of an oriented pseudomanifold over k(a_{i,j}).

    ``aux`` fixes the column-0 constants; ``aux=None`` keeps a_{i,0} symbolic.
    """

    def __init__(self, cx, orientation, characteristic=0, aux="default"):
        self.cx = cx
        self.orientation = orientation
        self.characteristic = characteristic
        self.d = cx.d
        self.n = cx.n
        self.ring = poly_ring(self.d, self.n, characteristic)
        if aux == "default":
            aux = default_aux(self.d)
        if aux is not None:
            aux = tuple(aux)
            if len(aux) != self.d:
                raise PreconditionError("aux needs one constant per row")
            if characteristic:
                aux = tuple(c % characteristic for c in aux)
            if not any(aux):
                raise AuxiliarySpecializationDegenerate("column-0 constants are all zero")
        self.aux = aux
        self._cofactors = {}
        self._cache = {}
        self._minors = {}
        self._parts = {}
        self._base = None
        if aux is not None and sum(1 for c in aux if c) > 1:
            self._reduce_to_unit(aux)

    def _reduce_to_unit(self, aux):
        ring = self.ring
        t = next(i for i, c in enumerate(aux) if c)
        unit = tuple(int(i == t) for i in range(self.d))
        self._base = DegreeMap(self.cx, self.orientation, self.characteristic, aux=unit)
        # a' = h^{-1} a: row t scaled by 1/c_t, row t subtracted from the others.
        inv = ring.inverse_scalar(aux[t])
        subs = []
        for v in range(ring.nvars):
            i, j = ring.position(v)
            if j == 0:
                subs.append(ring.var(i, 0))
            elif i - 1 == t:
                subs.append(ring.var(i, j) * inv)
            else:
                subs.append(ring.var(i, j) - ring.var(t + 1, j) * (aux[i - 1] * inv))
        self._subs = subs
        self._scale = inv
        self._lead = ring.const(aux[t])

    def entry(self, i, j):
        if j == 0 and self.aux is not None:
            return self.ring.const(self.aux[i - 1])
        return self.ring.var(i, j)

    def column(self, j):
        return [self.entry(i, j) for i in range(1, self.d + 1)]

    def cofactors(self, facet):
        facet = tuple(facet)
        if facet not in self._cofactors:
            cols = [self.column(0)] + [self.column(j) for j in facet]
            cof = CofactorSystem(cols, self.ring.zero)
            if any(x.is_zero() for x in cof.X):
                raise AuxiliarySpecializationDegenerate(
                    f"a cofactor of facet {facet} vanishes identically")
            self._cofactors[facet] = cof
        return self._cofactors[facet]

    def bracket(self, facet):
        """[F]: the determinant of the columns of F."""
        rows = [[self.entry(i, j) for j in facet] for i in range(1, self.d + 1)]
        return leibniz_det(rows, self.ring.zero)

    def facet_degree(self, facet):
        """eps_F / [F]."""
        facet = tuple(facet)
        return RationalFunction(self.ring, self.ring.const(self.orientation.sign(facet)),
                                self.bracket(facet))

    def _fraction(self, num, den):
        ring = self.ring
        return RationalFunction(ring, num if num is not None else ring.one,
                                den if den is not None else ring.one, normalize=False)

    def monomial(self, J):
        """deg(x^J) for an exponent tuple of length n with sum d."""
        J = tuple(J)
        if len(J) != self.n or sum(J) != self.d or min(J) < 0:
            raise PreconditionError(f"deg needs a degree-{self.d} monomial, got {J}")
        if J in self._cache:
            return self._cache[J]
        if self._base is not None:
            base = self._base.monomial(J)
            value = RationalFunction(self.ring, base.num.compose(*self._subs) * self._scale,
                                     base.den.compose(*self._subs), normalize=False)
            value._make_monic()
            self._cache[J] = value
            num, keys = self._base._parts[J]
            if all(0 not in key for key in keys):
                # a bracket [F] becomes [F] / c_t under the substitution
                num = num.compose(*self._subs) * self._lead ** (len(keys) - 1)
                self._parts[J] = (num, keys)
                for key in keys:
                    self._minors.setdefault(key, self.bracket(key))
            else:
                self._parts[J] = None
            return value
        # Every minor is keyed by its sorted column set, so X_k of the facet
        # simplex is (-1)^k times the minor keyed by cols minus cols[k].  The
        # terms are summed over the product of all distinct denominator
        # minors; minors are irreducible, so exact division by each one that
        # divides the sum leaves the value in lowest terms without any gcd.
        ring = self.ring
        minors, terms = self._minors, []
        for facet in self.cx.facets_containing(support(J)):
            cols = (0,) + tuple(facet)
            cof = self.cofactors(facet)
            sign = self.orientation.sign(facet)
            num, den = ring.one, set()
            for k, e in enumerate((0,) + tuple(J[j - 1] for j in facet)):
                if e == 1:
                    continue
                key = cols[:k] + cols[k + 1:]
                if key not in minors:
                    minors[key] = cof.X[k] if k % 2 == 0 else -cof.X[k]
                if k % 2 and e % 2 == 0:
                    sign = -sign
                if e == 0:
                    den.add(key)
                else:
                    num = num * minors[key] ** (e - 1)
            terms.append((sign, num, den))
        keys = sorted(set().union(*(den for _, _, den in terms))) if terms else []
        total = ring.zero
        for sign, num, den in terms:
            for key in keys:
                if key not in den:
                    num = num * minors[key]
            total = total + num if sign > 0 else total - num
        self._parts[J] = self._strip(total, keys)
        value = self._cache[J] = self._assemble(*self._parts[J])
        return value

    def _strip(self, total, keys):
        """Cancel the irreducible minors ``keys`` from total / prod(keys)."""
        if total.is_zero():
            return total, []
        left = []
        for key in keys:
            quo, rem = divmod(total, self._minors[key])
            if rem.is_zero():
                total = quo
            else:
                left.append(key)
        return total, left

    def _assemble(self, num, keys):
        den = self.ring.one
        for key in keys:
            den = den * self._minors[key]
        value = RationalFunction(self.ring, num, den, normalize=False)
        if not num.is_zero():
            value._make_monic()
        return value

    def monomial_by_addition(self, J):
        """deg(x^J) by plain rational-function addition; a slow reference."""
        total = RationalFunction(self.ring, self.ring.zero)
        for facet in self.cx.facets_containing(support(tuple(J))):
            local = (0,) + tuple(J[j - 1] for j in facet)
            term = simplex_degree(self.cofactors(facet), local, self._fraction)
            if self.orientation.sign(facet) < 0:
                term = -term
            total = total + term
        return total

    def polynomial(self, g):
        """K-linear extension to {J: coefficient}."""
        g = {J: c for J, c in g.items() if c}
        for J in g:
            self.monomial(J)
        if all(self._parts.get(J) is not None and isinstance(c, (int, Fraction))
               for J, c in g.items()):
            # every denominator is a product of known minors: sum over their lcm
            keys = sorted(set().union(*(self._parts[J][1] for J in g)))
            total = self.ring.zero
            for J, c in g.items():
                num, own = self._parts[J]
                num = num * self.ring.const(c)
                for key in keys:
                    if key not in own:
                        num = num * self._minors[key]
                total = total + num
            return self._assemble(*self._strip(total, keys))
        total = RationalFunction(self.ring, self.ring.zero)
        for J, c in g.items():
            total = total + self.monomial(J) * c
        return total


def random_point(ring, target, rng):
    """Uniform random coordinates for every variable of ``ring`` (column 0 included)."""
    return [target.random(rng) for _ in range(ring.nvars)]


class PointDegree:
    """Degree map evaluated at a point of field elements or jets.

    ``point`` is indexed like the ring variables (column 0 included).  Raises
    :class:`DenominatorVanishes` if a needed cofactor is zero at the point.
    """

    def __init__(self, cx, orientation, target, point, zero=None):
        self.cx = cx
        self.orientation = orientation
        self.target = target
        self.d = cx.d
        self.n = cx.n
        self.point = point
        self.zero = target.zero if zero is None else zero
        self._cofactors = {}
        self._cache = {}

    def entry(self, i, j):
        return self.point[(i - 1) * (self.n + 1) + j]

    def cofactors(self, facet):
        if facet not in self._cofactors:
            cols = [[self.entry(i, j) for i in range(1, self.d + 1)] for j in (0,) + facet]
            cof = CofactorSystem(cols, self.zero)
            if any(not _nonzero(x) for x in cof.X):
                raise DenominatorVanishes(f"cofactor of {facet} vanishes at the point")
            self._cofactors[facet] = cof
        return self._cofactors[facet]

    def monomial(self, J):
        J = tuple(J)
        if J in self._cache:
            return self._cache[J]
        if sum(J) != self.d:
            raise PreconditionError(f"deg needs a degree-{self.d} monomial, got {J}")
        total = self.zero
        for facet in self.cx.facets_containing(support(J)):
            local = (0,) + tuple(J[j - 1] for j in facet)
            term = simplex_degree(self.cofactors(facet), local)
            total = total + term if self.orientation.sign(facet) > 0 else total - term
        self._cache[J] = total
        return total

    def polynomial(self, g):
        total = self.zero
        for J, c in g.items():
            if c:
                total = total + self.monomial(J) * c
        return total


def _nonzero(x):
    if hasattr(x, "constant_term"):
        return bool(x.constant_term())
    return bool(x)


def plucker_check(cofactors, indices, r=1, one=1):
    """Three-term Pluecker relation among the minors Y of [A | e_r]."""
    j1, j2, j3, j4 = indices
    if not 0 <= j1 < j2 < j3 < j4 <= cofactors.d + 1:
        raise PreconditionError("indices must satisfy 0 <= j1 < j2 < j3 < j4 <= d+1")

    def Y(a, b):
        return cofactors.augmented_minor(r, a, b, one)

    value = Y(j1, j2) * Y(j3, j4) - Y(j1, j3) * Y(j2, j4) + Y(j1, j4) * Y(j2, j3)
    return value == 0 if not hasattr(value, "is_zero") else value.is_zero()


def plucker_quadruples(d):
    return list(combinations(range(d + 2), 4))
