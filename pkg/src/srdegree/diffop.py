"""Multi-index differential operators in the coefficient variables a_{i,j}.

``I`` is a d x n (or d x (n+1), with the cone column 0) nonnegative integer
matrix.  It stands for a^I = prod a_{i,j}^{I_ij}, I! = prod I_ij!, the operator
d^I = prod (d/da_{i,j})^{I_ij}, and the x-monomial whose exponent vector is the
column sums of I.
"""

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations_with_replacement, product
from math import comb, factorial

from .errors import PreconditionError, PsiCharacteristicRange
from .exactalg.jets import jet_lift
from .exactalg.poly import RationalFunction

__all__ = [
    "ExponentMatrix",
    "compositions",
    "enumerate_row_sum_matrices",
    "count_row_sum_matrices",
    "apply_partial_multi",
    "partial_at_point",
    "pth_root_monomial",
    "phi",
    "Phi",
    "Phi_ordered",
    "Psi",
    "psi_scalar_stated",
    "psi_scalar_actual",
]


@dataclass(frozen=True)
class ExponentMatrix:
    """Rows of exponents; column t of a row is variable a_{i, first_column + t}."""

    rows: tuple
    first_column: int = 1

    def __post_init__(self):
        rows = tuple(tuple(int(e) for e in r) for r in self.rows)
        if not rows or len({len(r) for r in rows}) != 1:
            raise PreconditionError("exponent matrix needs equal-length rows")
        if any(e < 0 for r in rows for e in r):
            raise PreconditionError("exponents must be nonnegative")
        object.__setattr__(self, "rows", rows)

    @property
    def d(self):
        return len(self.rows)

    @property
    def width(self):
        return len(self.rows[0])

    @cached_property
    def row_sums(self):
        return tuple(sum(r) for r in self.rows)

    @cached_property
    def column_sums(self):
        return tuple(sum(col) for col in zip(*self.rows))

    @cached_property
    def factorial(self):
        out = 1
        for r in self.rows:
            for e in r:
                out *= factorial(e)
        return out

    def entries(self):
        """(i, j, e) for nonzero entries, row-major, j in ring numbering."""
        for i, r in enumerate(self.rows, start=1):
            for t, e in enumerate(r):
                if e:
                    yield i, t + self.first_column, e

    def x_exponent(self, n):
        """Column sums as an x-exponent vector of length n (vertices 1..n)."""
        out = [0] * n
        for i, j, e in self.entries():
            if j == 0:
                raise PreconditionError("column 0 has no x-variable")
            out[j - 1] += e
        return tuple(out)

    def a_monomial(self, ring):
        exps = [0] * ring.nvars
        for i, j, e in self.entries():
            exps[ring.index(i, j)] += e
        return ring.monomial(exps)

    def variable_counts(self, ring):
        """{ring variable index: order}."""
        return {ring.index(i, j): e for i, j, e in self.entries()}

    def __str__(self):
        return "; ".join(" ".join(map(str, r)) for r in self.rows)


def compositions(n, r):
    """All length-n nonnegative vectors summing to r, in a fixed order."""
    out = []
    for combo in combinations_with_replacement(range(n), r):
        v = [0] * n
        for t in combo:
            v[t] += 1
        out.append(tuple(v))
    return out


def count_row_sum_matrices(d, n, r):
    return comb(r + n - 1, n - 1) ** d


def enumerate_row_sum_matrices(d, n, r, first_column=1):
    """Every d x n matrix with all row sums r, exactly once."""
    if d < 1 or n < 1 or r < 0:
        raise PreconditionError("need d, n >= 1 and r >= 0")
    rows = compositions(n, r)
    for choice in product(rows, repeat=d):
        yield ExponentMatrix(choice, first_column)


def pth_root_monomial(L, p):
    """L/p if p divides every entry, else None."""
    if any(e % p for e in L):
        return None
    return tuple(e // p for e in L)


class _DerivativeTable:
    """Partial derivatives of f kept reduced over the irreducible factors of its denominator.

    With f = N / prod q_i^(m_i), every derivative is (numerator) / prod q_i^(c_i)
    for the same q_i.  One more derivative by v uses the logarithmic form

        d(N / prod q^c) = (N' P - N sum_i c_i q_i' P/q_i) / prod q^(c+1),  P = prod q_i,

    then cancels any q_i that divides the new numerator.  Entries are built
    from the entry with one fewer derivative, so shared prefixes are computed
    once.
    """

    def __init__(self, f):
        self.ring = ring = f.ring
        den = f.den
        if den.is_constant():
            unit, factors = den.leading_coefficient(), []
        else:
            unit, factors = den.factor()
        self.factors = [q for q, _ in factors]
        self.base_exps = tuple(e for _, e in factors)
        num = ring.scale(f.num, ring.inverse_scalar(unit)) if unit != 1 else f.num
        self.product = ring.one
        for q in self.factors:
            self.product = self.product * q
        self.cofactors = []
        for q in self.factors:
            self.cofactors.append(self.product / q)
        self._partials = {}
        self.table = {(): self._strip(num, self.base_exps)}

    def _strip(self, num, exps):
        exps = list(exps)
        if not num.is_zero():
            for t, q in enumerate(self.factors):
                while exps[t]:
                    quo, rem = divmod(num, q)
                    if not rem.is_zero():
                        break
                    num = quo
                    exps[t] -= 1
        return num, tuple(exps)

    def _factor_partials(self, v):
        if v not in self._partials:
            self._partials[v] = [q.derivative(v) for q in self.factors]
        return self._partials[v]

    def entry(self, counts):
        """Reduced (numerator, exponents) of d^counts f; counts a sorted tuple of (variable, order)."""
        if counts in self.table:
            return self.table[counts]
        v, e = counts[-1]
        prev = counts[:-1] + (((v, e - 1),) if e > 1 else ())
        num, exps = self.entry(prev)
        if num.is_zero():
            out = (num, exps)
        else:
            new = num.derivative(v) * self.product
            for c, dq, cof in zip(exps, self._factor_partials(v), self.cofactors):
                if c and not dq.is_zero():
                    new = new - num * dq * cof * c
            out = self._strip(new, tuple(c + 1 for c in exps))
        self.table[counts] = out
        return out

    def _key(self, counts):
        return tuple(sorted((v, e) for v, e in counts.items() if e))

    def derivative(self, counts):
        """d^counts f as a reduced RationalFunction; counts maps variable index to order."""
        num, exps = self.entry(self._key(counts))
        return self._fraction(num, exps)

    def _fraction(self, num, exps):
        den = self.ring.one
        for q, c in zip(self.factors, exps):
            if c:
                den = den * q ** c
        out = RationalFunction(self.ring, num, den, normalize=False)
        out._make_monic()
        return out

    def apply(self, counts):
        """(numerator over prod q_i^(m_i + k), k) with k the total order, for summing."""
        key = self._key(counts)
        k = sum(e for _, e in key)
        num, exps = self.entry(key)
        for q, c, m in zip(self.factors, exps, self.base_exps):
            if m + k > c:
                num = num * q ** (m + k - c)
        return num, k

    def quotient(self, num, k):
        """num / prod q_i^(m_i + k) in lowest terms."""
        num, exps = self._strip(num, tuple(m + k for m in self.base_exps))
        return self._fraction(num, exps)


def apply_partial_multi(I, f):
    """d^I f for a RationalFunction f."""
    if not isinstance(f, RationalFunction):
        raise PreconditionError("apply_partial_multi expects a RationalFunction")
    return _DerivativeTable(f).derivative(I.variable_counts(f.ring))


def partial_at_point(I, f, base, field, ring):
    """d^I f evaluated at ``base`` through a truncated jet.

    ``f`` is a RationalFunction or a callable taking a point of jets.
    Raises NonInvertibleJetDenominator if f has a pole at the base point.
    """
    counts = I.variable_counts(ring)
    active = sorted(counts)
    orders = [counts[v] for v in active]
    jet = jet_lift(f, base, active, orders, field)
    return jet.derivative_value(orders)


def _columns(ring, columns):
    return tuple(range(1, ring.n + 1)) if columns is None else tuple(columns)


def phi(i, f, columns=None):
    """phi_i f = sum_j a_{i,j} df/da_{i,j}."""
    ring = f.ring
    total = RationalFunction(ring, ring.zero)
    for j in _columns(ring, columns):
        total = total + f.derivative(i, j) * ring.var(i, j)
    return total


def _check_order(ring, r):
    if r < 0:
        raise PreconditionError("operator order must be nonnegative")
    p = ring.characteristic
    if p and r >= p:
        raise PsiCharacteristicRange(f"order {r} needs r <= p-1 = {p - 1} in characteristic {p}")


def Phi(i, r, f, columns=None):
    """Phi_{i,r} f in multinomial-collected form (one term per composition)."""
    ring = f.ring
    cols = _columns(ring, columns)
    table = _DerivativeTable(f)
    total = ring.zero
    for alpha in compositions(len(cols), r):
        weight = factorial(r)
        counts = {}
        mono = [0] * ring.nvars
        for j, e in zip(cols, alpha):
            if e:
                weight //= factorial(e)
                counts[ring.index(i, j)] = e
                mono[ring.index(i, j)] = e
        num, _ = table.apply(counts)
        total = total + num * ring.monomial(mono) * ring.const(weight)
    return table.quotient(total, r)


def Phi_ordered(i, r, f, columns=None):
    """Phi_{i,r} f as the raw sum over ordered r-tuples (n^r terms)."""
    ring = f.ring
    cols = _columns(ring, columns)
    total = RationalFunction(ring, ring.zero)
    for js in product(cols, repeat=r):
        g = f
        for j in js:
            g = g.derivative(i, j)
        for j in js:
            g = g * ring.var(i, j)
        total = total + g
    return total


def _row_operator(i, r, f, cols):
    """sum over compositions alpha of r: (a_i^alpha / alpha!) d_i^alpha f."""
    ring = f.ring
    table = _DerivativeTable(f)
    total = ring.zero
    for alpha in compositions(len(cols), r):
        counts = {}
        mono = [0] * ring.nvars
        scale = 1
        for j, e in zip(cols, alpha):
            if e:
                counts[ring.index(i, j)] = e
                mono[ring.index(i, j)] = e
                scale *= factorial(e)
        num, _ = table.apply(counts)
        total = total + ring.scale(num * ring.monomial(mono), ring.inverse_scalar(scale))
    return table.quotient(total, r)


def Psi(r, f, columns=None, method="rowwise"):
    """Psi_r f = sum over row-sum-r matrices I of (a^I / I!) d^I f.

    ``method="direct"`` enumerates every I.  ``"rowwise"`` applies the
    per-row sums one after another, normalizing in between; the two agree
    because rows use disjoint variables, and rowwise keeps intermediate
    numerators small.  In characteristic p only r <= p-1 is accepted, where
    every I! is a unit.
    """
    ring = f.ring
    _check_order(ring, r)
    cols = _columns(ring, columns)
    if method == "rowwise":
        for i in range(ring.d, 0, -1):
            f = _row_operator(i, r, f, cols)
        return f
    if method != "direct":
        raise PreconditionError(f"unknown Psi method {method!r}")
    table = _DerivativeTable(f)
    total = ring.zero
    for I in enumerate_row_sum_matrices(ring.d, len(cols), r):
        counts = {}
        mono = [0] * ring.nvars
        for i, t, e in I.entries():
            v = ring.index(i, cols[t - 1])
            counts[v] = e
            mono[v] = e
        num, _ = table.apply(counts)
        total = total + ring.scale(num * ring.monomial(mono), ring.inverse_scalar(I.factorial))
    return table.quotient(total, ring.d * r)


def psi_scalar_stated(d, r):
    """(-1)^(dr) (r!)^(2d): the eigenvalue asserted for Psi_r on deg(x^J)."""
    return (-1) ** (d * r) * factorial(r) ** (2 * d)


def psi_scalar_actual(d, r):
    """(-1)^(dr): the eigenvalue that follows from Psi_r = (r!)^-d prod_i Phi_{i,r}."""
    return (-1) ** (d * r)
