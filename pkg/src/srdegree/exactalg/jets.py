"""Truncated multivariate Taylor jets for evaluating partial derivatives at a point.

A jet records the Taylor coefficients of a function of a few *active*
variables around a base point, truncated at a per-variable order.  The
coefficient of eps^I times I! is the derivative d^I f at the base point.
"""

from itertools import product
from math import factorial

from ..errors import NonInvertibleJetDenominator

__all__ = ["JetSeries", "jet_point", "jet_lift"]


class JetSeries:
    __slots__ = ("field", "orders", "coeffs")

    def __init__(self, field, orders, coeffs):
        self.field = field
        self.orders = tuple(orders)
        self.coeffs = {k: v for k, v in coeffs.items() if v}

    @classmethod
    def constant(cls, field, orders, value):
        return cls(field, orders, {(0,) * len(orders): field(value) if isinstance(value, int) else value})

    @classmethod
    def variable(cls, field, orders, index, base):
        zero = (0,) * len(orders)
        unit = tuple(1 if t == index else 0 for t in range(len(orders)))
        coeffs = {zero: base}
        if orders[index] >= 1:
            coeffs[unit] = field.one
        return cls(field, orders, coeffs)

    def _lift(self, other):
        if isinstance(other, JetSeries):
            return other
        return JetSeries.constant(self.field, self.orders, other if not isinstance(other, int) else self.field(other))

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out[k] + v if k in out else v
        return JetSeries(self.field, self.orders, out)

    __radd__ = __add__

    def __neg__(self):
        return JetSeries(self.field, self.orders, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, JetSeries):
            if isinstance(other, int):
                other = self.field(other)
            return JetSeries(self.field, self.orders, {k: v * other for k, v in self.coeffs.items()})
        orders = self.orders
        out = {}
        for ka, va in self.coeffs.items():
            for kb, vb in other.coeffs.items():
                k = tuple(a + b for a, b in zip(ka, kb))
                if any(x > o for x, o in zip(k, orders)):
                    continue
                t = va * vb
                out[k] = out[k] + t if k in out else t
        return JetSeries(self.field, orders, out)

    __rmul__ = __mul__

    def constant_term(self):
        return self.coeffs.get((0,) * len(self.orders), self.field.zero)

    def inverse(self):
        c0 = self.constant_term()
        if not c0:
            raise NonInvertibleJetDenominator("jet constant term is not invertible")
        inv0 = self.field.one / c0
        nilpotent = (self - c0) * inv0
        # (1 + g)^-1 = sum (-g)^k; g^k vanishes past the total order
        result = JetSeries.constant(self.field, self.orders, self.field.one)
        term = result
        for _ in range(sum(self.orders)):
            term = term * (-nilpotent)
            if not term.coeffs:
                break
            result = result + term
        return result * inv0

    def __truediv__(self, other):
        if not isinstance(other, JetSeries):
            if isinstance(other, int):
                other = self.field(other)
            if not other:
                raise NonInvertibleJetDenominator("division by zero scalar")
            return self * (self.field.one / other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = JetSeries.constant(self.field, self.orders, self.field.one)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def coefficient(self, index):
        return self.coeffs.get(tuple(index), self.field.zero)

    def derivative_value(self, index):
        """d^index f at the base point: the coefficient times index!."""
        scale = 1
        for e in index:
            scale *= factorial(e)
        return self.coefficient(index) * self.field(scale)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        other = self._lift(other)
        keys = set(self.coeffs) | set(other.coeffs)
        return all(self.coefficient(k) == other.coefficient(k) for k in keys)

    __hash__ = None

    def table(self):
        """Dense coefficient table in lexicographic index order."""
        return [self.coefficient(k) for k in product(*(range(o + 1) for o in self.orders))]

    def __repr__(self):
        return f"JetSeries({self.table()})"


def jet_point(field, base, active, orders):
    """Lift a base point into jets: active coordinate t becomes base + eps_t."""
    point = [JetSeries.constant(field, orders, b) for b in base]
    for t, v in enumerate(active):
        point[v] = JetSeries.variable(field, orders, t, base[v])
    return point


def jet_lift(f, base, active, orders, field=None):
    """Jet of ``f`` around ``base`` in the active variables.

    ``f`` is a RationalFunction or any callable taking a point (a sequence of
    jets indexed like ``base``) and returning a jet.
    """
    if field is None:
        field = f.ring.field
    point = jet_point(field, base, active, orders)
    if callable(f):
        out = f(point)
    else:
        num = f.ring.evaluate(f.num, point, field)
        den = f.ring.evaluate(f.den, point, field)
        out = _as_jet(field, orders, num) / _as_jet(field, orders, den)
    return _as_jet(field, orders, out)


def _as_jet(field, orders, value):
    if isinstance(value, JetSeries):
        return value
    return JetSeries.constant(field, orders, value)
