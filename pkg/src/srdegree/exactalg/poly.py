"""Sparse polynomials and rational functions in the generic entries a[i][j].

Polynomial arithmetic is delegated to FLINT (``fmpq_mpoly`` in characteristic
0, ``nmod_mpoly`` in characteristic p).  Variables are ordered by (i, j) and
terms by graded lexicographic order, which fixes the canonical text form.
"""

from fractions import Fraction
from functools import lru_cache
from math import factorial

import flint

from ..errors import DenominatorVanishes, PDenominator, PreconditionError
from .fields import field as make_field

__all__ = ["PolyRing", "RationalFunction", "poly_ring", "p_power_decompose", "reduce_mod_p"]


class PolyRing:
    """k[a_{i,j} : 1 <= i <= d, 0 <= j <= n] with k = QQ or F_p.

    Column 0 is the auxiliary cone vertex used by the connected-sum formula.
    """

    def __init__(self, d, n, characteristic=0):
        self.d = d
        self.n = n
        self.characteristic = characteristic
        names = tuple(f"a_{i}_{j}" for i in range(1, d + 1) for j in range(n + 1))
        if characteristic == 0:
            self.ctx = flint.fmpq_mpoly_ctx.get(names, ordering="deglex")
        else:
            self.ctx = flint.nmod_mpoly_ctx.get(names, modulus=characteristic, ordering="deglex")
        self.nvars = len(names)
        self._gens = self.ctx.gens()
        self.zero = self.ctx.constant(0)
        self.one = self.ctx.constant(1)
        self.field = make_field(characteristic)

    def __repr__(self):
        return f"PolyRing(d={self.d}, n={self.n}, char={self.characteristic})"

    def index(self, i, j):
        if not (1 <= i <= self.d and 0 <= j <= self.n):
            raise PreconditionError(f"a[{i}][{j}] is not a variable of {self}")
        return (i - 1) * (self.n + 1) + j

    def position(self, index):
        i, j = divmod(index, self.n + 1)
        return i + 1, j

    def var(self, i, j):
        return self._gens[self.index(i, j)]

    def const(self, c):
        if isinstance(c, Fraction):
            if self.characteristic == 0:
                return self.ctx.constant(flint.fmpq(c.numerator, c.denominator))
            p = self.characteristic
            if c.denominator % p == 0:
                raise PDenominator(f"{c} has a denominator divisible by {p}")
            return self.ctx.constant(c.numerator * pow(c.denominator, -1, p) % p)
        if self.characteristic:
            return self.ctx.constant(int(c) % self.characteristic)
        return self.ctx.constant(int(c))

    def scale(self, poly, c):
        """poly * c for a scalar c of the coefficient field."""
        if self.characteristic == 0:
            return poly * flint.fmpq(c)
        return poly * (int(c) % self.characteristic)

    def inverse_scalar(self, c):
        if self.characteristic == 0:
            return 1 / flint.fmpq(c)
        return pow(int(c), -1, self.characteristic)

    def monomial(self, exponents):
        """a^E for a map {(i, j): e} (or a full exponent tuple)."""
        if isinstance(exponents, dict):
            exps = [0] * self.nvars
            for (i, j), e in exponents.items():
                exps[self.index(i, j)] += e
            exponents = exps
        return self.ctx.from_dict({tuple(exponents): 1})

    def from_dict(self, terms):
        if self.characteristic:
            # nmod_mpoly.from_dict keeps terms whose coefficient is 0 mod p
            p = self.characteristic
            terms = {e: int(c) % p for e, c in terms.items() if int(c) % p}
        return self.ctx.from_dict(terms)

    def coefficient_to_field(self, c, target):
        """Convert a FLINT coefficient into an element of ``target``."""
        if self.characteristic == 0:
            return target(Fraction(int(c.p), int(c.q)))
        return target(int(c))

    def evaluate(self, poly, point, target):
        """Value of ``poly`` at ``point`` (sequence indexed by variable index)."""
        powers = {}
        total = target.zero
        for exps, c in poly.terms():
            term = self.coefficient_to_field(c, target)
            for v, e in enumerate(exps):
                if e:
                    key = (v, e)
                    if key not in powers:
                        powers[key] = point[v] ** int(e)
                    term = term * powers[key]
            total = total + term
        return total

    def to_text(self, poly):
        """Canonical text: graded-lex descending terms, variables as a[i][j]."""
        if poly.is_zero():
            return "0"
        pieces = []
        for exps, c in poly.terms():
            factors = []
            for v, e in enumerate(exps):
                if e:
                    i, j = self.position(v)
                    factors.append(f"a[{i}][{j}]" + (f"^{e}" if e > 1 else ""))
            if self.characteristic == 0:
                q = Fraction(int(c.p), int(c.q))
                negative = q < 0
                mag = -q if negative else q
            else:
                negative = False
                mag = int(c)
            if factors and mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if not pieces:
                pieces.append(("-" if negative else "") + body)
            else:
                pieces.append((" - " if negative else " + ") + body)
        return "".join(pieces)


@lru_cache(maxsize=None)
def poly_ring(d, n, characteristic=0):
    return PolyRing(d, n, characteristic)


class RationalFunction:
    """num/den over a :class:`PolyRing`, kept in lowest terms with den monic.

    "Monic" means the graded-lex leading coefficient of the denominator is 1.
    Passing ``normalize=False`` skips the gcd; equality always cross-multiplies
    so unnormalized values compare correctly.
    """

    __slots__ = ("ring", "num", "den")

    def __init__(self, ring, num, den=None, normalize=True):
        self.ring = ring
        if den is None:
            den = ring.one
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.num = num
        self.den = den
        if normalize:
            self._normalize()

    def _normalize(self):
        ring = self.ring
        if self.num.is_zero():
            self.den = ring.one
            return
        if not self.den.is_constant():
            g = self.num.gcd(self.den)
            if not g.is_constant():
                self.num = self.num / g
                self.den = self.den / g
        self._make_monic()

    def _make_monic(self):
        lc = self.den.leading_coefficient()
        if lc != 1:
            inv = self.ring.inverse_scalar(lc)
            self.num = self.num * inv
            self.den = self.den * inv

    @classmethod
    def over_power(cls, ring, num, base, k, factored=None):
        """num / base**k in lowest terms.

        Cancels the irreducible factors of ``base`` from ``num`` by exact
        division, which is much cheaper than a gcd against base**k when base
        is a small product of minors and num is large.  ``factored`` may pass
        a cached ``base.factor()``.
        """
        if num.is_zero() or base.is_constant() or k == 0:
            return cls(ring, num, base ** k)
        unit, factors = factored or base.factor()
        den = ring.one * unit ** k
        for q, mult in factors:
            count = mult * k
            while count:
                quo, rem = divmod(num, q)
                if not rem.is_zero():
                    break
                num = quo
                count -= 1
            if count:
                den = den * q ** count
        out = cls(ring, num, den, normalize=False)
        out._make_monic()
        return out

    @classmethod
    def constant(cls, ring, c):
        return cls(ring, ring.const(c))

    @classmethod
    def variable(cls, ring, i, j):
        return cls(ring, ring.var(i, j))

    def _lift(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (int, Fraction)):
            return RationalFunction(self.ring, self.ring.const(other))
        if isinstance(other, (flint.fmpq_mpoly, flint.nmod_mpoly)):
            return RationalFunction(self.ring, other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return RationalFunction(self.ring, self.num + other.num, self.den)
        return RationalFunction(self.ring, self.num * other.den + other.num * self.den,
                                self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(self.ring, -self.num, self.den, normalize=False)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if other.den.is_one() and other.num.is_constant() and not other.num.is_zero():
            return RationalFunction(self.ring, self.num * other.num, self.den, normalize=False)
        return RationalFunction(self.ring, self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if other.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.ring, self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, e):
        if e < 0:
            return RationalFunction(self.ring, self.den ** (-e), self.num ** (-e))
        # lowest terms are preserved by powers
        return RationalFunction(self.ring, self.num ** e, self.den ** e, normalize=False)

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return False
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        # only valid on normalized values
        return hash((str(self.num), str(self.den)))

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def derivative(self, i, j):
        """Partial derivative by a[i][j] (quotient rule, normalized)."""
        v = self.ring.index(i, j)
        dn = self.num.derivative(v)
        if self.den.is_constant():
            return RationalFunction(self.ring, dn, self.den, normalize=False)
        dd = self.den.derivative(v)
        return RationalFunction(self.ring, dn * self.den - self.num * dd, self.den * self.den)

    def evaluate(self, point, target=None):
        """Exact value at ``point``; raises DenominatorVanishes at a pole."""
        target = target or self.ring.field
        den = self.ring.evaluate(self.den, point, target)
        if not den:
            raise DenominatorVanishes("denominator vanishes at the sampled point")
        return self.ring.evaluate(self.num, point, target) / den

    def total_degree(self):
        """max(deg num, deg den): the Schwartz-Zippel degree of a zero test."""
        return max(self.num.total_degree(), self.den.total_degree())

    def to_text(self):
        num = self.ring.to_text(self.num)
        if self.den.is_one():
            return num
        den = self.ring.to_text(self.den)
        if len(self.num) > 1:
            num = f"({num})"
        if len(self.den) > 1:
            den = f"({den})"
        return f"{num}/{den}"

    __str__ = to_text

    def __repr__(self):
        return f"RationalFunction({self.to_text()})"


def p_power_decompose(f):
    """Split f = sum_e c_e**p * a**e with residues e in {0..p-1}^vars.

    Returns {e: c_e} with e a full exponent tuple; missing residues have c_e = 0.
    Prime-field coefficients are their own p-th roots.
    """
    ring = f.ring
    p = ring.characteristic
    if p == 0:
        raise PreconditionError("p-th power decomposition needs characteristic p")
    numerator = f.num * f.den ** (p - 1)
    parts = {}
    for exps, c in numerator.terms():
        e = tuple(x % p for x in exps)
        q = tuple(x // p for x in exps)
        parts.setdefault(e, {})[q] = int(c)
    return {e: RationalFunction(ring, ring.from_dict(terms), f.den)
            for e, terms in sorted(parts.items())}


def reduce_mod_p(f, p):
    """Coefficientwise reduction of a rational function over QQ into F_p."""
    ring = f.ring
    if ring.characteristic != 0:
        raise PreconditionError("reduce_mod_p expects a function over QQ")
    target = poly_ring(ring.d, ring.n, p)

    def reduce(poly):
        terms = {}
        for exps, c in poly.terms():
            num, den = int(c.p), int(c.q)
            if den % p == 0:
                raise PDenominator(f"coefficient {num}/{den} has a denominator divisible by {p}")
            r = num * pow(den, -1, p) % p
            if r:
                terms[exps] = r
        return target.from_dict(terms)

    den = reduce(f.den)
    if den.is_zero():
        raise PDenominator("denominator reduces to zero")
    return RationalFunction(target, reduce(f.num), den)


def multi_factorial(exponents):
    out = 1
    for e in exponents:
        out *= factorial(e)
    return out
