"""The Gorenstein quotient H-bar, modeled through degree pairings.

An element of H-bar^m is a polynomial in x of degree m; it is zero exactly
when it pairs to zero with every degree-(d-m) monomial.  Graded dimensions are
ranks of pairing matrices, and nothing is ever reduced to a normal form.

Ranks are computed at points.  A rank at a point is a lower bound for the
rank over k(a), because a nonzero minor at a point is a nonzero rational
function.  The exact mode pairs that lower bound with an upper bound
certified by the linear relations mu_i * x^K, which vanish in H and so in
H-bar.  When the two bounds disagree it falls back to elimination over k(a).
"""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import product

from .complex import orient
from .degree import (
    DegreeMap,
    PointDegree,
    ell_power,
    face_supported_monomials,
    xpoly_mul,
    xpoly_pow,
)
from .errors import DenominatorVanishes, NonOrientable, PreconditionError
from .exactalg.fields import field as make_field
from .exactalg.poly import p_power_decompose
from .linalg import independent_rows, left_kernel_vector, rank
from .seeding import rng_for

__all__ = [
    "PairingMatrix",
    "GorensteinProfile",
    "DimensionResult",
    "AnisotropyCertificate",
    "FuzzReport",
    "sample_point_degree",
    "pairing_matrix",
    "pairing_rank_bound",
    "relation_vectors",
    "gorenstein_dimension",
    "gorenstein_profile",
    "hbar_basis",
    "lefschetz_injectivity",
    "anisotropy_certify",
    "anisotropy_fuzz",
    "implication_fuzz",
    "is_zero_in_hbar",
    "value_bound",
]

DEFAULT_EXT = 16
DEFAULT_SEEDS = 20
MAX_RESAMPLES = 64


def _add_exps(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sample_field(characteristic, ext):
    return make_field(characteristic, ext if characteristic else 1)


def sample_point_degree(cx, orientation, target, rng):
    """A PointDegree at a random point where every facet cofactor is nonzero."""
    nvars = cx.d * (cx.n + 1)
    for _ in range(MAX_RESAMPLES):
        point = [target.random(rng) for _ in range(nvars)]
        ev = PointDegree(cx, orientation, target, point)
        try:
            for facet in cx.facets:
                ev.cofactors(facet)
        except DenominatorVanishes:
            continue
        return ev
    raise DenominatorVanishes("no admissible point after repeated sampling")


@dataclass
class PairingMatrix:
    m: int
    d: int
    rows: list
    cols: list
    entries: list
    mode: str

    @property
    def shape(self):
        return len(self.rows), len(self.cols)

    def transpose(self):
        entries = [list(col) for col in zip(*self.entries)] if self.entries else []
        return PairingMatrix(self.d - self.m, self.d, self.cols, self.rows, entries, self.mode)


def _check_degree(cx, m):
    if not 0 <= m <= cx.d:
        raise PreconditionError(f"degree {m} outside 0..{cx.d}")


def pairing_matrix(cx, orientation, m, evaluator=None, characteristic=0):
    """Matrix of deg(x^L * x^M) over face-supported L (degree m) and M (degree d-m).

    ``evaluator`` is a DegreeMap (symbolic) or PointDegree (specialized);
    by default a symbolic DegreeMap of the given characteristic.
    """
    _check_degree(cx, m)
    if evaluator is None:
        evaluator = DegreeMap(cx, orientation, characteristic)
    rows = face_supported_monomials(cx, m)
    cols = face_supported_monomials(cx, cx.d - m)
    entries = [[evaluator.monomial(_add_exps(L, M)) for M in cols] for L in rows]
    mode = "symbolic" if isinstance(evaluator, DegreeMap) else "specialized"
    return PairingMatrix(m, cx.d, rows, cols, entries, mode)


def value_bound(cx):
    """Degree of deg(g) times the product of all facet brackets, for constant-coefficient g.

    A nonzero such value vanishes at a uniform point of S^N with probability
    at most this over |S|.
    """
    return cx.d * (len(cx.facets) - 1)


def pairing_rank_bound(cx, size):
    """Schwartz-Zippel degree for a size x size minor of a pairing matrix."""
    return size * value_bound(cx)


def relation_vectors(cx, m, point_degree):
    """Coordinates of mu_i * x^K (K face-supported of degree m-1) over degree-m face monomials.

    Coefficients a_{i,j} are taken from the evaluator's point.
    """
    rows = face_supported_monomials(cx, m)
    index = {L: t for t, L in enumerate(rows)}
    zero = point_degree.zero
    out = []
    if m == 0:
        return out
    for K in face_supported_monomials(cx, m - 1):
        for i in range(1, cx.d + 1):
            vec = [zero] * len(rows)
            for j in range(1, cx.n + 1):
                L = list(K)
                L[j - 1] += 1
                t = index.get(tuple(L))
                if t is not None:
                    vec[t] = vec[t] + point_degree.entry(i, j)
            out.append(vec)
    return out


@dataclass
class DimensionResult:
    value: int
    mode: str
    lower: int
    upper: int
    seeds: list = dc_field(default_factory=list)
    per_seed_ranks: list = dc_field(default_factory=list)
    per_seed_bound: Fraction = Fraction(0)
    method: str = ""


def _point_rank(matrix):
    return rank(matrix) if matrix and matrix[0] else 0


def _relation_upper_bound(cx, m, ev, pm):
    """min over both sides of (#monomials - rank of the mu-relations)."""
    bounds = []
    for side, matrix in ((m, pm.entries), (cx.d - m, pm.transpose().entries)):
        rels = relation_vectors(cx, side, ev)
        for vec in rels:
            for col in zip(*matrix):
                total = ev.zero
                for x, y in zip(vec, col):
                    if x:
                        total = total + x * y
                if total:
                    raise ArithmeticError("a relation mu_i * x^K pairs nontrivially")
        bounds.append(len(face_supported_monomials(cx, side)) - _point_rank(rels))
    return min(bounds)


def _symbolic_rank(cx, orientation, m, characteristic):
    pm = pairing_matrix(cx, orientation, m, DegreeMap(cx, orientation, characteristic))
    return _point_rank(pm.entries)


def gorenstein_dimension(cx, orientation, m, mode="randomized", characteristic=0,
                         seed=0, seeds=DEFAULT_SEEDS, ext=DEFAULT_EXT):
    """dim H-bar^m as a pairing rank.

    ``randomized``: maximum rank over ``seeds`` independent points of F_{p^ext}
    (or rationals in characteristic 0); each seed undercounts with probability
    at most ``per_seed_bound``.  ``exact``: certified lower and upper bounds,
    with elimination over k(a) when they differ.
    """
    _check_degree(cx, m)
    target = _sample_field(characteristic, ext)
    n_rows = len(face_supported_monomials(cx, m))
    n_cols = len(face_supported_monomials(cx, cx.d - m))
    size = min(n_rows, n_cols)
    bound = Fraction(pairing_rank_bound(cx, size), target.sample_size)
    if mode == "randomized":
        ranks, used = [], []
        for s in range(seeds):
            ev = sample_point_degree(cx, orientation, target,
                                     rng_for(seed, "dims", m, s))
            ranks.append(_point_rank(pairing_matrix(cx, orientation, m, ev).entries))
            used.append(s)
        value = max(ranks)
        return DimensionResult(value, mode, value, size, used, ranks, bound, "point rank")
    if mode != "exact":
        raise PreconditionError(f"unknown mode {mode!r}")
    ev = sample_point_degree(cx, orientation, target, rng_for(seed, "dims-exact", m))
    pm = pairing_matrix(cx, orientation, m, ev)
    lower = _point_rank(pm.entries)
    upper = _relation_upper_bound(cx, m, ev, pm)
    if lower == upper:
        return DimensionResult(lower, mode, lower, upper, [0], [lower], Fraction(0),
                               "certified bounds")
    value = _symbolic_rank(cx, orientation, m, characteristic)
    return DimensionResult(value, mode, value, value, [0], [lower], Fraction(0),
                           "elimination over k(a)")


@dataclass
class GorensteinProfile:
    dims: tuple
    characteristic: int
    mode: str
    results: list
    note: str = ""

    @property
    def per_seed_bounds(self):
        return [r.per_seed_bound for r in self.results]


def gorenstein_profile(cx, characteristic=0, mode="randomized", seed=0,
                       seeds=DEFAULT_SEEDS, ext=DEFAULT_EXT, orientation=None):
    """dims H-bar^0..H-bar^d.

    A complex that is not orientable over the characteristic has H^d = 0, so
    the pairing is zero and every graded piece of H-bar vanishes.
    """
    if orientation is None:
        try:
            orientation = orient(cx, characteristic)
        except NonOrientable:
            return GorensteinProfile((0,) * (cx.d + 1), characteristic, mode, [],
                                     "not orientable: top degree vanishes, H-bar = 0")
    results = [gorenstein_dimension(cx, orientation, m, mode, characteristic, seed, seeds, ext)
               for m in range(cx.d + 1)]
    return GorensteinProfile(tuple(r.value for r in results), characteristic, mode, results)


def hbar_basis(cx, orientation, m, characteristic, seed=0, ext=DEFAULT_EXT, dim=None):
    """First independent face monomials of degree m that form a basis of H-bar^m.

    Independence at a point implies independence over k(a); when ``dim`` is
    given the point is resampled until the rank reaches it.
    """
    target = _sample_field(characteristic, ext)
    for attempt in range(MAX_RESAMPLES):
        ev = sample_point_degree(cx, orientation, target, rng_for(seed, "basis", m, attempt))
        pm = pairing_matrix(cx, orientation, m, ev)
        chosen = independent_rows(pm.entries) if pm.cols else []
        if dim is None or len(chosen) == dim:
            return [pm.rows[t] for t in chosen]
    raise PreconditionError("could not reach the requested dimension at sampled points")


def _lefschetz_rank(cx, ev, m, k_power):
    one = ev.target.one
    ell = ell_power(cx.n, k_power, lambda c: one * c)
    rows = face_supported_monomials(cx, m)
    cols = face_supported_monomials(cx, cx.d - m - k_power)
    matrix = []
    for v in rows:
        row = []
        for w in cols:
            total = ev.zero
            vw = _add_exps(v, w)
            for K, c in ell.items():
                total = total + ev.monomial(_add_exps(K, vw)) * c
            row.append(total)
        matrix.append(row)
    return _point_rank(matrix)


def lefschetz_injectivity(cx, orientation, m, k_power=1, mode="randomized",
                          characteristic=0, seed=0, seeds=DEFAULT_SEEDS, ext=DEFAULT_EXT):
    """Is multiplication by l^k_power injective on H-bar^m?

    True iff the matrix deg(l^k * v_i * w_j) has rank dim H-bar^m.  Its rank
    never exceeds that dimension, so a point reaching it certifies injectivity.
    """
    if m < 0 or k_power < 0 or m + k_power > cx.d:
        raise PreconditionError("need 0 <= m and m + k_power <= d")
    dim = gorenstein_dimension(cx, orientation, m, mode, characteristic, seed, seeds, ext).value
    if dim == 0:
        return True
    target = _sample_field(characteristic, ext)
    tries = seeds if mode == "randomized" else MAX_RESAMPLES
    for s in range(tries):
        ev = sample_point_degree(cx, orientation, target, rng_for(seed, "lefschetz", m, k_power, s))
        if _lefschetz_rank(cx, ev, m, k_power) == dim:
            return True
    return False


@dataclass
class AnisotropyCertificate:
    verdict: str
    p: int
    m: int
    dim: int
    basis: list
    semilinear_rank: int
    witness_columns: list
    witness_seed: int
    isotropic_vector: list = None
    note: str = ""

    @property
    def passed(self):
        return self.verdict == "PASS"


def anisotropy_certify(cx, orientation, p, m, seed=0, ext=DEFAULT_EXT, attempts=8,
                       method="auto"):
    """Certify that g -> deg(l^(d-pm) g^p) has no nonzero zero on H-bar^m.

    Writes u_i = deg(l^(d-pm) v_i^p) = sum_e c_{i,e}^p a^e for a basis v_i; the
    form is anisotropic iff the rows (c_{i,e})_e are independent over k(a).
    ``method="auto"`` first looks for independent derivatives of the u_i at
    a point, then decomposes the u_i symbolically; ``"decomposition"`` skips
    the first step.  A nonzero maximal minor at a point certifies PASS;
    otherwise the rows are eliminated over k(a) and a kernel vector is the
    isotropic g.
    """
    if method not in ("auto", "decomposition"):
        raise PreconditionError(f"unknown anisotropy method {method!r}")
    if p < 2 or orientation.characteristic not in (p, 0):
        raise PreconditionError("anisotropy needs characteristic p")
    if p * m > cx.d or m < 0:
        raise PreconditionError("need 0 <= p*m <= d")
    dim = gorenstein_dimension(cx, orientation, m, "exact", p, seed, ext=ext).value
    basis = hbar_basis(cx, orientation, m, p, seed, ext, dim)
    found = None
    if method == "auto":
        found = _derivative_witness(cx, orientation, p, m, basis, seed, ext, attempts)
    if found is not None:
        columns, attempt = found
        return AnisotropyCertificate("PASS", p, m, dim, basis, dim, columns, attempt,
                                     note="independent derivatives at a point")
    dm = DegreeMap(cx, orientation, p)
    ring = dm.ring
    ell = ell_power(cx.n, cx.d - p * m, lambda c: c % p)
    rows = []
    for v in basis:
        u = dm.polynomial(xpoly_mul(ell, {tuple(p * e for e in v): 1}))
        rows.append({e: c.num for e, c in p_power_decompose(u).items()} if u else {})
    keys = sorted({e for r in rows for e in r})
    matrix = [[r.get(e, ring.zero) for e in keys] for r in rows]
    target = _sample_field(p, ext)
    for attempt in range(attempts):
        rng = rng_for(seed, "anisotropy", m, attempt)
        point = [target.random(rng) for _ in range(ring.nvars)]
        values = [[ring.evaluate(x, point, target) for x in row] for row in matrix]
        cols = independent_rows([list(c) for c in zip(*values)]) if keys else []
        if len(cols) == dim:
            return AnisotropyCertificate("PASS", p, m, dim, basis, dim,
                                         [keys[c] for c in cols], attempt)
    # rank deficient at every point tried: decide over k(a)
    from .exactalg.poly import RationalFunction
    sym = [[RationalFunction(ring, x, normalize=False) for x in row] for row in matrix]
    one = RationalFunction(ring, ring.one)
    zero = RationalFunction(ring, ring.zero)
    kernel = left_kernel_vector(sym, one, zero) if keys else [one] + [zero] * (dim - 1)
    if kernel is None:
        return AnisotropyCertificate("PASS", p, m, dim, basis, dim, [], -1,
                                     note="independence found by elimination over k(a)")
    r = dim - 1 if dim else 0
    return AnisotropyCertificate("FAIL", p, m, dim, basis, r, [], -1,
                                 [k.to_text() for k in kernel])


def _derivative_witness(cx, orientation, p, m, basis, seed, ext, attempts):
    """Columns alpha with (d^alpha u_i) of full rank at a point, or None.

    With u_i = sum_e c_{i,e}^p a^e over e in [0,p)^N, the matrix
    (d^alpha u_i)_{alpha in [0,p)^N} is (c_{i,e}^p) times a triangular matrix
    with diagonal alpha!, a unit.  So a nonzero maximal minor among the
    derivatives at a point certifies that the c rows are independent, without
    expanding u_i.  Derivatives come from jets in a few random variables.
    """
    from .exactalg.jets import JetSeries, jet_point

    dim = len(basis)
    if dim == 0:
        return [], 0
    target = _sample_field(p, ext)
    ring = DegreeMap(cx, orientation, p).ring
    coeff_vars = [v for v in range(ring.nvars) if ring.position(v)[1]]
    width = 1
    while p ** width < 2 * dim and width < len(coeff_vars):
        width += 1
    ell = ell_power(cx.n, cx.d - p * m, lambda c: target(c % p))
    for attempt in range(attempts):
        rng = rng_for(seed, "anisotropy-jets", m, attempt)
        base = [target.random(rng) for _ in range(ring.nvars)]
        active = sorted(rng.sample(coeff_vars, width))
        orders = [p - 1] * width
        ev = PointDegree(cx, orientation, target, jet_point(target, base, active, orders),
                         JetSeries.constant(target, orders, target.zero))
        try:
            rows = [ev.polynomial(xpoly_mul(ell, {tuple(p * e for e in v): target.one}))
                    for v in basis]
        except DenominatorVanishes:
            continue
        tables = [u.table() if isinstance(u, JetSeries) else
                  JetSeries.constant(target, orders, u).table() for u in rows]
        cols = independent_rows([list(c) for c in zip(*tables)])
        if len(cols) == dim:
            alphas = list(product(*(range(p) for _ in range(width))))
            witness = []
            for c in cols:
                exps = [0] * ring.nvars
                for v, e in zip(active, alphas[c]):
                    exps[v] = e
                witness.append(tuple(exps))
            return witness, attempt
    return None


@dataclass
class FuzzReport:
    name: str
    characteristic: int
    trials: int
    failures: int
    per_trial_bound: Fraction
    resamples: int = 0
    premise_hits: int = 0
    failures_detail: list = dc_field(default_factory=list)

    @property
    def passed(self):
        return self.trials > 0 and self.failures == 0


def _random_coefficients(target, characteristic, size, rng):
    while True:
        if characteristic == 0:
            coeffs = [Fraction(rng.randint(-2, 2)) for _ in range(size)]
        else:
            coeffs = [target.random(rng) for _ in range(size)]
        if any(coeffs):
            return coeffs


def _hom_poly(monos, coeffs):
    return {L: c for L, c in zip(monos, coeffs) if c}


def anisotropy_fuzz(cx, orientation, characteristic, t, m, trials=100, seed=0, ext=DEFAULT_EXT):
    """Random nonzero g in H-bar^m must have deg(l^(d-tm) g^t) != 0.

    Coefficients of g are drawn from {-2..2} (characteristic 0) or F_{p^ext},
    over a fixed monomial basis of H-bar^m, before the evaluation point.
    """
    if t < 1 or m < 0 or t * m > cx.d:
        raise PreconditionError("need t >= 1 and t*m <= d")
    target = _sample_field(characteristic, ext)
    dim = gorenstein_dimension(cx, orientation, m, "exact", characteristic, seed, ext=ext).value
    basis = hbar_basis(cx, orientation, m, characteristic, seed, ext, dim)
    one = target.one
    report = FuzzReport(f"anisotropy t={t} m={m}", characteristic, 0, 0,
                        Fraction(value_bound(cx), target.sample_size))
    if not basis:
        return report
    ell = ell_power(cx.n, cx.d - t * m, lambda c: one * c)
    for trial in range(trials):
        rng = rng_for(seed, "fuzz", t, m, trial)
        coeffs = _random_coefficients(target, characteristic, len(basis), rng)
        if characteristic == 0:
            coeffs = [one * c for c in coeffs]
        g = _hom_poly(basis, coeffs)
        form = xpoly_mul(ell, xpoly_pow(g, t, cx.n, one))
        ev = sample_point_degree(cx, orientation, target, rng)
        value = ev.polynomial(form)
        report.trials += 1
        if not value:
            report.failures += 1
            report.failures_detail.append((trial, [str(c) for c in coeffs]))
    return report


def is_zero_in_hbar(cx, ev, element, degree):
    """Zero test at the evaluator's point: pairs to zero with every degree-(d-degree) monomial."""
    if not element:
        return True
    for w in face_supported_monomials(cx, cx.d - degree):
        if ev.polynomial(xpoly_mul(element, {w: ev.target.one})):
            return False
    return True


def implication_fuzz(cx, orientation, p, trials=100, seed=0, ext=DEFAULT_EXT):
    """Sample (g, r) and check: l^r g^p = 0 implies l^(r // p) g = 0 in H-bar.

    Half the samples draw g from a basis of H-bar^m (nonzero), half from the
    span of the relations mu_i x^K (zero in H-bar), so both sides of the
    implication are exercised.
    """
    target = _sample_field(p, ext)
    one = target.one
    degrees = [m for m in range(cx.d + 1) if p * m <= cx.d]
    report = FuzzReport(f"implication p={p}", p, 0, 0,
                        Fraction(value_bound(cx), target.sample_size))
    bases = {m: hbar_basis(cx, orientation, m, p, seed, ext) for m in degrees}
    for trial in range(trials):
        rng = rng_for(seed, "implication", trial)
        m = degrees[rng.randrange(len(degrees))]
        r = rng.randrange(cx.d - p * m + 1)
        ev = sample_point_degree(cx, orientation, target, rng)
        null = m > 0 and rng.random() < 0.5
        if null:
            rels = relation_vectors(cx, m, ev)
            rows = face_supported_monomials(cx, m)
            lam = [target.random_nonzero(rng) for _ in rels]
            g = {}
            for c, vec in zip(lam, rels):
                for L, x in zip(rows, vec):
                    if x:
                        g[L] = g.get(L, target.zero) + c * x
            g = {L: c for L, c in g.items() if c}
        else:
            basis = bases[m]
            if not basis:
                continue
            g = _hom_poly(basis, _random_coefficients(target, p, len(basis), rng))
        premise = xpoly_mul(ell_power(cx.n, r, lambda c: one * c), xpoly_pow(g, p, cx.n, one))
        report.trials += 1
        if is_zero_in_hbar(cx, ev, premise, r + p * m):
            report.premise_hits += 1
            tt = r // p
            conclusion = xpoly_mul(ell_power(cx.n, tt, lambda c: one * c), g)
            if not is_zero_in_hbar(cx, ev, conclusion, tt + m):
                report.failures += 1
                report.failures_detail.append((trial, m, r))
    return report
