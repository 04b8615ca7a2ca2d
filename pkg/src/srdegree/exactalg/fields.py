"""Coefficient fields: prime fields, their extensions F_{p^k}, and the rationals.

All fields share a small duck-typed interface (``characteristic``, ``zero``,
``one``, ``random(rng)``, ``sample_size``, calling the field to coerce an
integer) so that determinants, jets and elimination can run over any of them.
Rational elements are plain :class:`fractions.Fraction` objects.
"""

from fractions import Fraction
from functools import lru_cache

import flint

__all__ = [
    "FiniteField",
    "GFElement",
    "RationalField",
    "QQ",
    "GF",
    "field",
    "is_prime",
]

# Fixed monic irreducible moduli x^k + (tail) over F_p: for each (p, k) the
# first irreducible polynomial when tails are enumerated by base-p integer
# code.  Stored as {exponent: coefficient} for the tail terms.
IRREDUCIBLE_TAILS = {
    (2, 2): {0: 1, 1: 1},
    (2, 3): {0: 1, 1: 1},
    (2, 4): {0: 1, 1: 1},
    (2, 5): {0: 1, 2: 1},
    (2, 6): {0: 1, 1: 1},
    (2, 7): {0: 1, 1: 1},
    (2, 8): {0: 1, 1: 1, 3: 1, 4: 1},
    (2, 9): {0: 1, 1: 1},
    (2, 10): {0: 1, 3: 1},
    (2, 11): {0: 1, 2: 1},
    (2, 12): {0: 1, 3: 1},
    (2, 13): {0: 1, 1: 1, 3: 1, 4: 1},
    (2, 14): {0: 1, 5: 1},
    (2, 15): {0: 1, 1: 1},
    (2, 16): {0: 1, 1: 1, 3: 1, 5: 1},
    (3, 2): {0: 1},
    (3, 3): {0: 1, 1: 2},
    (3, 4): {0: 2, 1: 1},
    (3, 5): {0: 1, 1: 2},
    (3, 6): {0: 2, 1: 1},
    (3, 7): {0: 2, 2: 1},
    (3, 8): {0: 2, 2: 1},
    (3, 9): {0: 1, 2: 1, 3: 2},
    (3, 10): {0: 1, 2: 2},
    (3, 11): {0: 2, 2: 1},
    (3, 12): {0: 2, 2: 1},
    (3, 13): {0: 1, 1: 2},
    (3, 14): {0: 2, 1: 1},
    (3, 15): {0: 2, 2: 1},
    (3, 16): {0: 1, 2: 1, 3: 1},
    (5, 2): {0: 2},
    (5, 3): {0: 1, 1: 1},
    (5, 4): {0: 2},
    (5, 5): {0: 1, 1: 4},
    (5, 6): {0: 2, 1: 1},
    (5, 7): {0: 1, 1: 1},
    (5, 8): {0: 2},
    (5, 9): {0: 3, 1: 2, 2: 1},
    (5, 10): {0: 3, 1: 1, 2: 1},
    (5, 11): {0: 1, 1: 2},
    (5, 12): {0: 4, 1: 1},
    (5, 13): {0: 2, 1: 3, 2: 1},
    (5, 14): {0: 2, 2: 3},
    (5, 15): {0: 2, 2: 1},
    (5, 16): {0: 2},
    (7, 2): {0: 1},
    (7, 3): {0: 2},
    (7, 4): {0: 1, 1: 1},
    (7, 5): {0: 3, 1: 1},
    (7, 6): {0: 2},
    (7, 7): {0: 1, 1: 6},
    (7, 8): {0: 3, 1: 1},
    (7, 9): {0: 2},
    (7, 10): {0: 3, 1: 2},
    (7, 11): {0: 3, 1: 1},
    (7, 12): {0: 2, 1: 1, 2: 1},
    (7, 13): {0: 3, 2: 1},
    (7, 14): {0: 4, 1: 1},
    (7, 15): {0: 6, 1: 2, 2: 1},
    (7, 16): {0: 3, 1: 2},
}


def is_prime(p):
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class GFElement:
    """An element of a :class:`FiniteField`.

    Prime-field elements and binary-extension elements store an ``int``;
    odd-characteristic extension elements store a reduced ``flint.nmod_poly``.
    """

    __slots__ = ("field", "raw")

    def __init__(self, field, raw):
        self.field = field
        self.raw = raw

    def _coerce(self, other):
        if isinstance(other, GFElement):
            if other.field is not self.field and (other.field.p, other.field.k) != (self.field.p, self.field.k):
                raise TypeError(f"mixing {self.field} and {other.field}")
            return other
        if isinstance(other, int):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return GFElement(self.field, self.field._add(self.raw, other.raw))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return GFElement(self.field, self.field._add(self.raw, self.field._neg(other.raw)))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return GFElement(self.field, self.field._neg(self.raw))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return GFElement(self.field, self.field._mul(self.raw, other.raw))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return GFElement(self.field, self.field._mul(self.raw, self.field._inv(other.raw)))

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def inverse(self):
        return GFElement(self.field, self.field._inv(self.raw))

    def frobenius_root(self):
        """The unique y with y**p == self (Frobenius is bijective on finite fields)."""
        f = self.field
        return self ** (f.p ** (f.k - 1)) if f.k > 1 else self

    def to_int(self):
        """Base-p integer code of the coefficient vector (constant term lowest)."""
        f = self.field
        if f.k == 1 or f.p == 2:
            return self.raw
        return sum(int(c) * f.p ** e for e, c in enumerate(self.raw.coeffs()))

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.to_int() == other.to_int()

    def __hash__(self):
        return hash((self.field.p, self.field.k, self.to_int()))

    def __bool__(self):
        return self.to_int() != 0

    def __repr__(self):
        if self.field.k == 1:
            return str(self.raw)
        return f"z{self.to_int()}"


class FiniteField:
    """The field F_{p^k}, built as F_p[z] modulo a fixed irreducible polynomial."""

    def __init__(self, p, k=1):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        if k > 1 and (p, k) not in IRREDUCIBLE_TAILS:
            raise ValueError(f"no shipped modulus for F_{p}^{k}")
        self.p = p
        self.k = k
        self.order = p ** k
        self.tail = IRREDUCIBLE_TAILS.get((p, k), {})
        if k > 1 and p == 2:
            self._build_log_tables()
        elif k > 1:
            coeffs = [self.tail.get(e, 0) for e in range(k)] + [1]
            self._modulus = flint.nmod_poly(coeffs, p)
        self.zero = self(0)
        self.one = self(1)

    characteristic = property(lambda self: self.p)
    sample_size = property(lambda self: self.order)

    def __repr__(self):
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    def _build_log_tables(self):
        # multiplicative group is searched for a generator; z itself is tried first
        mod_bits = (1 << self.k) | sum(1 << e for e in self.tail)
        n = self.order - 1
        for g in range(2, self.order):
            exp = [0] * (2 * n)
            log = [0] * self.order
            x = 1
            ok = True
            for i in range(n):
                if i and x == 1:
                    ok = False
                    break
                exp[i] = x
                log[x] = i
                x = _clmul_mod(x, g, mod_bits, self.k)
            if ok and x == 1:
                for i in range(n, 2 * n):
                    exp[i] = exp[i - n]
                self._exp, self._log = exp, log
                return
        raise AssertionError("no generator found")

    def __call__(self, value):
        if isinstance(value, GFElement):
            if value.field is not self:
                raise TypeError(f"element of {value.field} is not in {self}")
            return value
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.p}")
            return self(value.numerator) / self(value.denominator)
        if self.k == 1 or self.p == 2:
            return GFElement(self, int(value) % self.p)
        return GFElement(self, flint.nmod_poly([int(value) % self.p], self.p))

    def from_int(self, code):
        """Element whose base-p digit vector is ``code`` (inverse of ``to_int``)."""
        if not 0 <= code < self.order:
            raise ValueError("code out of range")
        if self.k == 1 or self.p == 2:
            return GFElement(self, code)
        digits = []
        while code:
            code, r = divmod(code, self.p)
            digits.append(r)
        return GFElement(self, flint.nmod_poly(digits, self.p))

    def random(self, rng):
        return self.from_int(rng.randrange(self.order))

    def random_nonzero(self, rng):
        return self.from_int(rng.randrange(1, self.order))

    # raw operations
    def _add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return a + b

    def _neg(self, a):
        if self.k == 1:
            return -a % self.p
        if self.p == 2:
            return a
        return -a

    def _mul(self, a, b):
        if self.k == 1:
            return a * b % self.p
        if self.p == 2:
            if not a or not b:
                return 0
            return self._exp[self._log[a] + self._log[b]]
        return (a * b) % self._modulus

    def _inv(self, a):
        if self.k == 1:
            if a == 0:
                raise ZeroDivisionError("inverse of zero")
            return pow(a, self.p - 2, self.p)
        if self.p == 2:
            if not a:
                raise ZeroDivisionError("inverse of zero")
            return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]
        if a.is_zero():
            raise ZeroDivisionError("inverse of zero")
        # flint returns a monic gcd, which is 1 against an irreducible modulus
        _, s, _ = a.xgcd(self._modulus)
        return s % self._modulus


def _clmul_mod(a, b, mod_bits, k):
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a >> k & 1:
            a ^= mod_bits
    return r


class RationalField:
    """The rationals; random sampling draws integers from 1..sample_bound."""

    characteristic = 0
    k = 1
    p = 0

    def __init__(self, sample_bound=2 ** 20):
        self.sample_bound = sample_bound
        self.zero = Fraction(0)
        self.one = Fraction(1)

    sample_size = property(lambda self: self.sample_bound)

    def __repr__(self):
        return "QQ"

    def __call__(self, value):
        return Fraction(value)

    def random(self, rng):
        return Fraction(rng.randint(1, self.sample_bound))

    random_nonzero = random


QQ = RationalField()


@lru_cache(maxsize=None)
def _cached_field(p, k):
    return FiniteField(p, k)


def GF(p, k=1):
    """Shared instance of F_{p^k}."""
    return _cached_field(p, k)


def field(characteristic, k=1):
    """Field of the given characteristic (0 gives QQ, and k is ignored)."""
    if characteristic == 0:
        return QQ
    return GF(characteristic, k)
