"""Verification suites: each identity becomes an enumerated or sampled check.

A suite turns a :class:`VerificationTask` into instance keys, checks them
(optionally across worker processes), and folds the results into a
:class:`SuiteReport`.  Workers rebuild their own context from the task, so
results do not depend on how keys are split.
"""

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field, replace
from fractions import Fraction
from itertools import product
from math import comb, factorial

from .complex import betti_numbers, orient, simplex_boundary
from .degree import (
    CofactorSystem,
    DegreeMap,
    face_supported_monomials,
    monomials_of_degree,
    plucker_quadruples,
    xpoly_mul,
    xpoly_pow,
)
from .diffop import (
    Phi,
    Phi_ordered,
    Psi,
    _DerivativeTable,
    compositions,
    enumerate_row_sum_matrices,
    phi,
    psi_scalar_actual,
    psi_scalar_stated,
    pth_root_monomial,
)
from .errors import PDenominator, PreconditionError, SrDegreeError
from .exactalg.fields import field as make_field
from .exactalg.jets import JetSeries
from .exactalg.poly import RationalFunction, poly_ring, reduce_mod_p
from .reduction import gorenstein_profile, implication_fuzz, sample_point_degree
from .seeding import rng_for

__all__ = [
    "THEOREMS",
    "VerificationTask",
    "InstanceResult",
    "SuiteReport",
    "EmptySuite",
    "run_task",
    "t11_bound",
    "t12_bound",
]

THEOREMS = ("T1.1", "T1.2", "T2.3", "T2.5", "C3.1", "C3.2", "L2.6", "E2.4", "PLK", "SPEC")


class EmptySuite(SrDegreeError):
    """A suite enumerated no instances; never reported as a pass."""


@dataclass(frozen=True)
class VerificationTask:
    theorem: str
    complex: object = None
    complex_name: str = ""
    characteristic: int = 2
    mode: str = "exact"
    cap: int = None
    seed: int = 0
    seeds: int = 20
    ext: int = 16
    r_max: int = 3
    samples: int = 20
    dims: tuple = (2, 3)

    def __post_init__(self):
        if self.theorem not in THEOREMS:
            raise PreconditionError(f"unknown theorem id {self.theorem!r}")
        if self.mode not in ("exact", "randomized"):
            raise PreconditionError(f"unknown mode {self.mode!r}")


@dataclass
class InstanceResult:
    key: str
    passed: bool
    detail: str = ""
    expected_difference: bool = False


@dataclass
class SuiteReport:
    task: VerificationTask
    status: str
    instances: int
    failures: int
    results: list = dc_field(default_factory=list)
    per_seed: list = dc_field(default_factory=list)
    notes: list = dc_field(default_factory=list)
    counts: dict = dc_field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def passed(self):
        return self.status in ("PASS", "SMOKE")


def _sign(d):
    return -1 if d % 2 else 1


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _oriented(task, characteristic=None):
    ch = task.characteristic if characteristic is None else characteristic
    return orient(task.complex, ch)


def _sample_keys(keys, cap, task):
    """All keys, or a deterministic sample of ``cap`` of them (then the run is SMOKE)."""
    if cap is None or cap >= len(keys):
        return keys, False
    rng = rng_for(task.seed, task.theorem, "sample")
    chosen = sorted(rng.sample(range(len(keys)), cap))
    return [keys[t] for t in chosen], True


class _RowIndex:
    """Compositions of p-1 into n parts, grouped by residue vector mod p.

    Lets the sum over I with colsum(I) + J divisible by p skip the rest: the
    last row is looked up from the residue the other rows leave.
    """

    def __init__(self, n, p):
        self.p = p
        self.comps = compositions(n, p - 1)
        self.by_residue = {}
        for c in self.comps:
            self.by_residue.setdefault(tuple(e % p for e in c), []).append(c)

    def matching(self, d, J):
        """(rows, root) pairs for every I whose column sums complete J to p * root."""
        p = self.p
        for head in product(self.comps, repeat=d - 1):
            col = list(J)
            for row in head:
                col = [x + y for x, y in zip(col, row)]
            need = tuple((-x) % p for x in col)
            for last in self.by_residue.get(need, ()):
                total = [x + y for x, y in zip(col, last)]
                yield head + (last,), tuple(x // p for x in total)


def t11_bound(cx, p, J):
    """Schwartz-Zippel degree of LHS - RHS for one J (cleared by prod [F]^p)."""
    supp = tuple(v + 1 for v, e in enumerate(J) if e)
    mj = len(cx.facets_containing(supp))
    return max(p * cx.d * mj - cx.d, 0)


def t12_bound(cx, p, J):
    supp = tuple(v + 1 for v, e in enumerate(J) if e)
    mj = len(cx.facets_containing(supp))
    return max((1 + cx.d * (p - 1)) * cx.d * mj - cx.d * p, 0)


def _row_values(ev, comps, d, p, target):
    """a_i^alpha / alpha! at the point, per row i and composition alpha."""
    out = []
    for i in range(1, d + 1):
        vals = {}
        for alpha in comps:
            v = target.one
            scale = 1
            for j, e in enumerate(alpha, start=1):
                if e:
                    v = v * ev.entry(i, j) ** e
                    scale *= factorial(e)
            vals[alpha] = v / target(scale)
        out.append(vals)
    return out


def _jet_degree(cx, orientation, target, base, I, ring):
    """Degree map over jets in the variables of I, around ``base``; returns (evaluator, orders)."""
    from .degree import PointDegree
    from .exactalg.jets import jet_point

    counts = I.variable_counts(ring)
    active = sorted(counts)
    orders = [counts[v] for v in active]
    point = jet_point(target, base, active, orders)
    zero = JetSeries.constant(target, orders, target.zero)
    return PointDegree(cx, orientation, target, point, zero), orders


def _jet_derivative(value, orders, target):
    if isinstance(value, JetSeries):
        return value.derivative_value(orders)
    return target.zero if all(orders) else target(value)


def _a_power_poly(ring, rows):
    exps = [0] * ring.nvars
    scale = 1
    for i, row in enumerate(rows, start=1):
        for j, e in enumerate(row, start=1):
            if e:
                exps[ring.index(i, j)] = e
                scale *= factorial(e)
    return ring.scale(ring.monomial(exps), ring.inverse_scalar(scale))


# ---------------------------------------------------------------- suites


class _Suite:
    def __init__(self, task):
        self.task = task
        self.cx = task.complex

    def keys(self):
        raise NotImplementedError

    def check(self, keys):
        raise NotImplementedError

    def per_seed(self):
        return []

    def notes(self):
        return []


class _ExactIdentitySuite(_Suite):
    """deg(x^J) = (-1)^d sum_I deg((x^I x^J)^(1/p))^p a^I / I!."""

    def _setup(self):
        t, p = self.task, self.task.characteristic
        if p == 0:
            raise PreconditionError("this identity needs characteristic p")
        self.orientation = _oriented(t)
        self.index = _RowIndex(self.cx.n, p)

    def keys(self):
        keys = monomials_of_degree(self.cx.n, self.cx.d)
        keys, self.sampled = _sample_keys(keys, self.task.cap, self.task)
        if self.task.mode == "randomized":
            return [(s, J) for s in range(self.task.seeds) for J in keys]
        return keys

    def check(self, keys):
        self._setup()
        if self.task.mode == "exact":
            return [self._check_exact(J) for J in keys]
        return self._check_points(keys)

    def _rhs_groups(self, J):
        groups = {}
        for rows, root in self.index.matching(self.cx.d, J):
            groups.setdefault(root, []).append(rows)
        return groups

    def _check_exact(self, J):
        p, d = self.task.characteristic, self.cx.d
        dm = self._degree_map()
        ring = dm.ring
        rhs = RationalFunction(ring, ring.zero)
        for root, rowsets in self._rhs_groups(J).items():
            coeff = ring.zero
            for rows in rowsets:
                coeff = coeff + _a_power_poly(ring, rows)
            if not coeff.is_zero():
                rhs = rhs + dm.monomial(root) ** p * coeff
        ok = dm.monomial(J) == rhs * _sign(d)
        return InstanceResult(f"J={J}", ok, "" if ok else "deg(x^J) differs from the sum")

    def _degree_map(self):
        if not hasattr(self, "_dm"):
            self._dm = DegreeMap(self.cx, self.orientation, self.task.characteristic)
        return self._dm

    def _check_points(self, keys):
        p, d = self.task.characteristic, self.cx.d
        target = make_field(p, self.task.ext)
        out = []
        by_seed = {}
        for s, J in keys:
            by_seed.setdefault(s, []).append(J)
        for s, Js in sorted(by_seed.items()):
            ev = sample_point_degree(self.cx, self.orientation, target,
                                     rng_for(self.task.seed, self.task.theorem, s))
            rowvals = _row_values(ev, self.index.comps, d, p, target)
            for J in Js:
                rhs = target.zero
                for rows, root in self.index.matching(d, J):
                    w = target.one
                    for i, alpha in enumerate(rows):
                        w = w * rowvals[i][alpha]
                    rhs = rhs + w * ev.monomial(root) ** p
                lhs = ev.monomial(J)
                ok = lhs == (rhs if d % 2 == 0 else -rhs)
                out.append(InstanceResult(f"seed={s} J={J}", ok))
        return out

    def per_seed(self):
        if self.task.mode != "randomized":
            return []
        p = self.task.characteristic
        size = make_field(p, self.task.ext).sample_size
        degree = max(t11_bound(self.cx, p, J) for J in monomials_of_degree(self.cx.n, self.cx.d))
        return [(s, Fraction(degree, size)) for s in range(self.task.seeds)]

    def notes(self):
        p, n, d = self.task.characteristic, self.cx.n, self.cx.d
        total = comb(p - 2 + n, n - 1) ** d
        out = [f"I matrices per J: {total} (terms without a p-th root vanish and are skipped)"]
        if getattr(self, "sampled", False):
            out.append("J sampled under the cap: SMOKE, not a full pass")
        return out


class _DerivativeIdentitySuite(_Suite):
    """d^I deg(x^J) = (-1)^d deg((x^I x^J)^(1/p))^p, or 0 without a root."""

    def _setup(self):
        p = self.task.characteristic
        if p == 0:
            raise PreconditionError("this identity needs characteristic p")
        self.orientation = _oriented(self.task)
        self.matrices = list(enumerate_row_sum_matrices(self.cx.d, self.cx.n, p - 1))

    def keys(self):
        keys = monomials_of_degree(self.cx.n, self.cx.d)
        keys, self.sampled = _sample_keys(keys, self.task.cap, self.task)
        if self.task.mode == "randomized":
            return [(s, J) for s in range(self.task.seeds) for J in keys]
        return keys

    def check(self, keys):
        self._setup()
        if self.task.mode == "exact":
            dm = DegreeMap(self.cx, self.orientation, self.task.characteristic)
            out = []
            for J in keys:
                out.extend(self._check_exact(dm, J))
            return out
        return self._check_points(keys)

    def _check_exact(self, dm, J):
        p, d, n = self.task.characteristic, self.cx.d, self.cx.n
        ring = dm.ring
        f = dm.monomial(J)
        table = _DerivativeTable(f)
        out = []
        for I in self.matrices:
            lhs = table.derivative(I.variable_counts(ring))
            root = pth_root_monomial(_add(I.x_exponent(n), J), p)
            rhs = dm.monomial(root) ** p * _sign(d) if root is not None else 0
            ok = lhs == rhs
            out.append(InstanceResult(f"J={J} I={I}", ok, "" if ok else "derivative mismatch"))
        return out

    def _check_points(self, keys):
        p, d, n = self.task.characteristic, self.cx.d, self.cx.n
        target = make_field(p, self.task.ext)
        ring = poly_ring(d, n, p)
        out = []
        by_seed = {}
        for s, J in keys:
            by_seed.setdefault(s, []).append(J)
        for s, Js in sorted(by_seed.items()):
            ev = sample_point_degree(self.cx, self.orientation, target,
                                     rng_for(self.task.seed, self.task.theorem, s))
            per_J = {J: [] for J in Js}
            for I in self.matrices:
                jets, orders = _jet_degree(self.cx, self.orientation, target, ev.point, I, ring)
                for J in Js:
                    lhs = _jet_derivative(jets.monomial(J), orders, target)
                    root = pth_root_monomial(_add(I.x_exponent(n), J), p)
                    rhs = target.zero
                    if root is not None:
                        rhs = ev.monomial(root) ** p
                        rhs = rhs if d % 2 == 0 else -rhs
                    per_J[J].append(InstanceResult(f"seed={s} J={J} I={I}", lhs == rhs))
            for J in Js:
                out.extend(per_J[J])
        return out

    def per_seed(self):
        if self.task.mode != "randomized":
            return []
        p = self.task.characteristic
        size = make_field(p, self.task.ext).sample_size
        degree = max(t12_bound(self.cx, p, J) for J in monomials_of_degree(self.cx.n, self.cx.d))
        return [(s, Fraction(degree, size)) for s in range(self.task.seeds)]

    def notes(self):
        if getattr(self, "sampled", False):
            return ["J sampled under the cap: SMOKE, not a full pass"]
        return []


class _SimplexSuite(_Suite):
    """d^I X^J = (-1)^d X^M with M = colsum(I) + J - (p-1), when p divides M; else 0.

    Purely polynomial, on the generic d x (d+1) matrix with every column symbolic.
    """

    def _d(self):
        return self.cx.d if self.cx is not None else self.task.dims[0]

    def _cap(self):
        p, d = self.task.characteristic, self._d()
        return self.task.cap if self.task.cap is not None else p * d + p - 1

    def keys(self):
        p, d = self.task.characteristic, self._d()
        if p == 0:
            raise PreconditionError("this identity needs characteristic p")
        Js = []
        for s in range(p - 1, self._cap() + 1, p):
            Js.extend(monomials_of_degree(d + 1, s))
        return Js

    def check(self, keys):
        p, d = self.task.characteristic, self._d()
        ring = poly_ring(d, d, p)
        cols = [[ring.var(i, j) for i in range(1, d + 1)] for j in range(d + 1)]
        X = CofactorSystem(cols, ring.zero).X
        matrices = list(enumerate_row_sum_matrices(d, d + 1, p - 1, first_column=0))
        out = []
        for J in keys:
            XJ = ring.one
            for x, e in zip(X, J):
                XJ = XJ * x ** e
            cache = {(): XJ}
            for I in matrices:
                counts = tuple(sorted(I.variable_counts(ring).items()))
                lhs = self._partial(cache, counts)
                M = [c + j - (p - 1) for c, j in zip(I.column_sums, J)]
                if all(e % p == 0 for e in M):
                    if min(M) < 0:
                        out.append(InstanceResult(f"J={J} I={I}", False, "negative exponent"))
                        continue
                    rhs = ring.one
                    for x, e in zip(X, M):
                        rhs = rhs * x ** e
                    rhs = rhs if d % 2 == 0 else -rhs
                else:
                    rhs = ring.zero
                out.append(InstanceResult(f"J={J} I={I}", lhs == rhs))
        return out

    @staticmethod
    def _partial(cache, counts):
        if counts in cache:
            return cache[counts]
        v, e = counts[-1]
        prev = counts[:-1] + (((v, e - 1),) if e > 1 else ())
        out = _SimplexSuite._partial(cache, prev).derivative(v)
        cache[counts] = out
        return out

    def notes(self):
        return [f"simplex dimension d={self._d()}, J row sums congruent to -1 mod p up to {self._cap()}"]


class _PsiSuite(_Suite):
    """Psi_r deg(x^J) against the stated scalar (-1)^(dr) (r!)^(2d)."""

    def _orders(self):
        p = self.task.characteristic
        top = self.task.r_max if p == 0 else min(self.task.r_max, p - 1)
        return list(range(1, top + 1))

    def keys(self):
        return [(r, J) for r in self._orders() for J in monomials_of_degree(self.cx.n, self.cx.d)]

    def check(self, keys):
        p, d = self.task.characteristic, self.cx.d
        orientation = _oriented(self.task)
        dm = DegreeMap(self.cx, orientation, p)
        out = []
        for r, J in keys:
            g = dm.monomial(J)
            lhs = Psi(r, g)
            stated = psi_scalar_stated(d, r)
            ok = lhs == g * stated
            observed = "0" if g.is_zero() else (lhs / g).to_text()
            detail = f"observed eigenvalue {observed}, stated {self._reduce(stated)}"
            if lhs == g * psi_scalar_actual(d, r) and not ok:
                detail += f" (equals (-1)^(dr) = {psi_scalar_actual(d, r)})"
            out.append(InstanceResult(f"r={r} J={J}", ok, detail))
        return out

    def _reduce(self, value):
        p = self.task.characteristic
        return value % p if p else value


class _CorollarySuite(_Suite):
    """Both identities for h^p x^J with h a combination of degree-m monomials."""

    def _degrees(self):
        p = self.task.characteristic
        return [m for m in range(self.cx.d + 1) if p * m <= self.cx.d]

    def _h_samples(self, m):
        p = self.task.characteristic
        monos = face_supported_monomials(self.cx, m)
        rng = rng_for(self.task.seed, "C3.1", "h", m)
        out = []
        if self.task.mode == "exact":
            for _ in range(self.task.samples):
                while True:
                    coeffs = [rng.randrange(p) for _ in monos]
                    if any(coeffs):
                        break
                out.append({L: c for L, c in zip(monos, coeffs) if c})
        return out

    def keys(self):
        p = self.task.characteristic
        if p == 0:
            raise PreconditionError("this corollary needs characteristic p")
        per_m = [(m, monomials_of_degree(self.cx.n, self.cx.d - p * m)) for m in self._degrees()]
        if self.task.mode == "exact":
            return [(m, h, J) for m, Js in per_m for h in range(self.task.samples) for J in Js]
        return [(s, m, J) for s in range(self.task.seeds) for m, Js in per_m for J in Js]

    def check(self, keys):
        self.orientation = _oriented(self.task)
        self.index = _RowIndex(self.cx.n, self.task.characteristic)
        self.matrices = list(enumerate_row_sum_matrices(self.cx.d, self.cx.n,
                                                        self.task.characteristic - 1))
        if self.task.mode == "exact":
            return self._check_exact(keys)
        return self._check_points(keys)

    def _groups(self, J):
        groups = {}
        for rows, root in self.index.matching(self.cx.d, J):
            groups.setdefault(root, []).append(rows)
        return groups

    def _check_exact(self, keys):
        p, d, n = self.task.characteristic, self.cx.d, self.cx.n
        dm = DegreeMap(self.cx, self.orientation, p)
        ring = dm.ring
        hs = {m: self._h_samples(m) for m in self._degrees()}
        out = []
        for m, t, J in keys:
            h = hs[m][t]
            f = dm.polynomial(xpoly_mul(xpoly_pow(h, p, n, 1), {J: 1}))
            rhs = RationalFunction(ring, ring.zero)
            for root, rowsets in self._groups(J).items():
                coeff = ring.zero
                for rows in rowsets:
                    coeff = coeff + _a_power_poly(ring, rows)
                rhs = rhs + dm.polynomial(xpoly_mul(h, {root: 1})) ** p * coeff
            ok1 = f == rhs * _sign(d)
            out.append(InstanceResult(f"first m={m} h#{t} J={J}", ok1))
            table = _DerivativeTable(f)
            for I in self.matrices:
                lhs = table.derivative(I.variable_counts(ring))
                root = pth_root_monomial(_add(I.x_exponent(n), J), p)
                rhs2 = 0
                if root is not None:
                    rhs2 = dm.polynomial(xpoly_mul(h, {root: 1})) ** p * _sign(d)
                out.append(InstanceResult(f"second m={m} h#{t} J={J} I={I}", lhs == rhs2))
        return out

    def _check_points(self, keys):
        p, d, n = self.task.characteristic, self.cx.d, self.cx.n
        target = make_field(p, self.task.ext)
        ring = poly_ring(d, n, p)
        out = []
        by_seed = {}
        for s, m, J in keys:
            by_seed.setdefault(s, []).append((m, J))
        for s, items in sorted(by_seed.items()):
            ev = sample_point_degree(self.cx, self.orientation, target,
                                     rng_for(self.task.seed, "C3.1", "point", s))
            rowvals = _row_values(ev, self.index.comps, d, p, target)
            cases = []
            for m, J in items:
                rng = rng_for(self.task.seed, "C3.1", s, m, J)
                monos = face_supported_monomials(self.cx, m)
                while True:
                    h = {L: target.random(rng) for L in monos}
                    h = {L: c for L, c in h.items() if c}
                    if h:
                        break
                form = xpoly_mul(xpoly_pow(h, p, n, target.one), {J: target.one})
                lhs = ev.polynomial(form)
                rhs = target.zero
                for rows, root in self.index.matching(d, J):
                    w = target.one
                    for i, alpha in enumerate(rows):
                        w = w * rowvals[i][alpha]
                    rhs = rhs + w * ev.polynomial(xpoly_mul(h, {root: target.one})) ** p
                ok1 = lhs == (rhs if d % 2 == 0 else -rhs)
                first = InstanceResult(f"first seed={s} m={m} J={J}", ok1)
                cases.append((m, J, h, form, [first]))
            # one jet evaluator per I, shared by every (m, J) of this seed
            for I in self.matrices:
                jets, orders = _jet_degree(self.cx, self.orientation, target, ev.point, I, ring)
                for m, J, h, form, results in cases:
                    lhs2 = _jet_derivative(jets.polynomial(form), orders, target)
                    root = pth_root_monomial(_add(I.x_exponent(n), J), p)
                    rhs2 = target.zero
                    if root is not None:
                        rhs2 = ev.polynomial(xpoly_mul(h, {root: target.one})) ** p
                        rhs2 = rhs2 if d % 2 == 0 else -rhs2
                    results.append(InstanceResult(f"second seed={s} m={m} J={J} I={I}", lhs2 == rhs2))
            for case in cases:
                out.extend(case[4])
        return out

    def per_seed(self):
        if self.task.mode != "randomized":
            return []
        p, d, M = self.task.characteristic, self.cx.d, len(self.cx.facets)
        size = make_field(p, self.task.ext).sample_size
        degree = max(p * d * M - d, (1 + d * (p - 1)) * d * M - d * p)
        return [(s, Fraction(degree, size)) for s in range(self.task.seeds)]


class _ImplicationSuite(_Suite):
    def keys(self):
        return [None]

    def check(self, keys):
        p = self.task.characteristic
        if p == 0:
            raise PreconditionError("the implication is checked in characteristic p")
        trials = self.task.samples
        rep = implication_fuzz(self.cx, _oriented(self.task), p, trials, self.task.seed, self.task.ext)
        self._report = rep
        out = [InstanceResult(f"trial={t}", True) for t in range(rep.trials)]
        for trial, m, r in rep.failures_detail:
            out[trial] = InstanceResult(f"trial={trial}", False, f"m={m} r={r}")
        out.append(InstanceResult("premise-hits", rep.premise_hits > 0,
                                  f"{rep.premise_hits} samples satisfied the premise"))
        return out

    def per_seed(self):
        size = make_field(self.task.characteristic, self.task.ext).sample_size
        from .reduction import value_bound

        return [(0, Fraction(value_bound(self.cx), size))]


def _random_rational(ring, rng, terms=4, degree=3):
    """A random nonzero rational function with small integer coefficients."""
    def rand_poly(allow_const):
        while True:
            d = {}
            for _ in range(terms):
                exps = [0] * ring.nvars
                for _ in range(rng.randint(0 if allow_const else 1, degree)):
                    exps[rng.randrange(ring.nvars)] += 1
                d[tuple(exps)] = rng.randint(1, 5)
            poly = ring.from_dict(d)
            if not poly.is_zero():
                return poly
    return RationalFunction(ring, rand_poly(False), rand_poly(True))


class _OperatorSuite(_Suite):
    """Operator identities on random rational functions in a d x n coefficient ring."""

    def _orders(self):
        p = self.task.characteristic
        top = self.task.r_max if p == 0 else min(self.task.r_max, p - 1)
        return list(range(1, top + 1))

    def keys(self):
        return [(t, r) for t in range(self.task.samples) for r in self._orders()]

    def _ring(self):
        d = self.task.dims[0]
        return poly_ring(d, 2, self.task.characteristic)

    def _input(self, ring, t):
        return _random_rational(ring, rng_for(self.task.seed, self.task.theorem, t), terms=3, degree=2)


class _FactorizationSuite(_OperatorSuite):
    """Phi_{i,r}: ordered-tuple sum = multinomial form = falling factorial of phi_i."""

    def check(self, keys):
        ring = self._ring()
        out = []
        for t, r in keys:
            f = self._input(ring, t)
            for i in range(1, ring.d + 1):
                collected = Phi(i, r, f)
                falling = f
                for k in range(r):
                    falling = phi(i, falling) - falling * k
                ok = collected == falling and collected == Phi_ordered(i, r, f)
                out.append(InstanceResult(f"input={t} r={r} i={i}", ok))
            if ring.d >= 2:
                ok = Phi(1, r, Phi(2, r, f)) == Phi(2, r, Phi(1, r, f))
                out.append(InstanceResult(f"input={t} r={r} commute", ok))
        return out


class _PsiFactorSuite(_OperatorSuite):
    """Psi_r f = (r!)^d prod_i Phi_{i,r} f, as stated."""

    def check(self, keys):
        ring = self._ring()
        out = []
        for t, r in keys:
            f = self._input(ring, t)
            lhs = Psi(r, f, method="direct")
            prod_phi = f
            for i in range(ring.d, 0, -1):
                prod_phi = Phi(i, r, prod_phi)
            scale = factorial(r) ** ring.d
            ok = lhs == prod_phi * scale
            detail = ""
            if not ok and lhs * scale == prod_phi:
                detail = f"holds with the factor on the other side: (r!)^d Psi_r = prod Phi ({scale})"
            out.append(InstanceResult(f"input={t} r={r}", ok, detail))
        return out


class _PluckerSuite(_Suite):
    def keys(self):
        out = []
        for d in self.task.dims:
            for q in plucker_quadruples(d):
                for r in range(1, d + 1):
                    out.append((d, q, r))
        return out

    def check(self, keys):
        out = []
        systems = {}
        for d, q, r in keys:
            if d not in systems:
                ring = poly_ring(d, d, self.task.characteristic)
                cols = [[ring.var(i, j) for i in range(1, d + 1)] for j in range(d + 1)]
                systems[d] = (CofactorSystem(cols, ring.zero), ring)
            cof, ring = systems[d]
            from .degree import plucker_check

            out.append(InstanceResult(f"d={d} j={q} r={r}", plucker_check(cof, q, r, ring.one)))
        return out


class _CrossCharacteristicSuite(_Suite):
    """Reduction mod p of degrees over Q, and dims across characteristics."""

    def keys(self):
        return ["values", "dims"]

    def check(self, keys):
        p = self.task.characteristic
        if p == 0:
            raise PreconditionError("give the prime to compare against characteristic 0")
        out = []
        q_betti = betti_numbers(self.cx, 0)
        p_betti = betti_numbers(self.cx, p)
        torsion_free = q_betti == p_betti
        for key in keys:
            if key == "values":
                out.extend(self._values(p))
            else:
                out.append(self._dims(p, torsion_free, q_betti, p_betti))
        return out

    def _values(self, p):
        from .errors import NonOrientable

        try:
            o0 = orient(self.cx, 0)
        except NonOrientable:
            return [InstanceResult("values", True, "not orientable over Q: no degree map to reduce")]
        op = orient(self.cx, p)
        dq = DegreeMap(self.cx, o0, 0)
        dp = DegreeMap(self.cx, op, p)
        out = []
        for J in monomials_of_degree(self.cx.n, self.cx.d):
            try:
                ok = reduce_mod_p(dq.monomial(J), p) == dp.monomial(J)
                out.append(InstanceResult(f"value J={J}", ok))
            except PDenominator as exc:
                out.append(InstanceResult(f"value J={J}", True, f"skipped: {exc}"))
        return out

    def _dims(self, p, torsion_free, q_betti, p_betti):
        t = self.task
        prof0 = gorenstein_profile(self.cx, 0, t.mode, t.seed, t.seeds, t.ext)
        profp = gorenstein_profile(self.cx, p, t.mode, t.seed, t.seeds, t.ext)
        detail = f"dims char 0 {prof0.dims}, char {p} {profp.dims}"
        if torsion_free:
            return InstanceResult("dims", prof0.dims == profp.dims, detail)
        detail += f"; Betti over Q {q_betti} vs F_{p} {p_betti}: difference expected"
        return InstanceResult("dims", prof0.dims != profp.dims, detail, expected_difference=True)


SUITES = {
    "T1.1": _ExactIdentitySuite,
    "T1.2": _DerivativeIdentitySuite,
    "T2.3": _SimplexSuite,
    "T2.5": _PsiSuite,
    "C3.1": _CorollarySuite,
    "C3.2": _ImplicationSuite,
    "L2.6": _FactorizationSuite,
    "E2.4": _PsiFactorSuite,
    "PLK": _PluckerSuite,
    "SPEC": _CrossCharacteristicSuite,
}

NEEDS_COMPLEX = {"T1.1", "T1.2", "T2.5", "C3.1", "C3.2", "SPEC"}


def _run_chunk(task, keys):
    return SUITES[task.theorem](task).check(keys)


def _chunks(keys, jobs):
    size = max(1, -(-len(keys) // (4 * jobs)))
    return [keys[t:t + size] for t in range(0, len(keys), size)]


def run_task(task, jobs=1):
    """Run a suite and fold its instance results into a SuiteReport."""
    if task.theorem in NEEDS_COMPLEX and task.complex is None:
        raise PreconditionError(f"{task.theorem} needs a complex")
    if task.theorem == "T2.5" and task.complex is None:
        task = replace(task, complex=simplex_boundary(2))
    start = time.perf_counter()
    suite = SUITES[task.theorem](task)
    keys = suite.keys()
    if not keys:
        raise EmptySuite(f"{task.theorem}: no instances enumerated")
    if jobs > 1 and len(keys) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_run_chunk, [task] * len(_chunks(keys, jobs)), _chunks(keys, jobs)))
        results = [r for part in parts for r in part]
    else:
        results = suite.check(keys)
    if not results:
        raise EmptySuite(f"{task.theorem}: no instances checked")
    failures = sum(1 for r in results if not r.passed)
    sampled = getattr(suite, "sampled", False)
    status = "FAIL" if failures else ("SMOKE" if sampled else "PASS")
    return SuiteReport(task, status, len(results), failures, results, suite.per_seed(),
                       suite.notes(), {}, time.perf_counter() - start)
