"""Exact linear algebra: Gaussian elimination over fields, Bareiss over polynomial rings."""

from fractions import Fraction
from functools import lru_cache
from itertools import permutations

__all__ = [
    "rank_mod_p",
    "rank_rational",
    "rank",
    "independent_rows",
    "left_kernel_vector",
    "leibniz_det",
    "bareiss_rank",
]


def rank_mod_p(rows, p):
    m = [[x % p for x in row] for row in rows]
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        for i in range(r + 1, len(m)):
            if m[i][c]:
                f = m[i][c] * inv % p
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        r += 1
    return r


def rank_rational(rows):
    return rank([[Fraction(x) for x in row] for row in rows])


def _reduce_against(basis, row):
    # basis: list of (pivot column, normalized row with 1 at pivot)
    row = list(row)
    for c, b in basis:
        f = row[c]
        if f:
            row = [x - f * y for x, y in zip(row, b)]
    return row


def independent_rows(matrix):
    """Indices of the first maximal set of independent rows, scanning in order."""
    basis = []
    chosen = []
    for idx, row in enumerate(matrix):
        row = _reduce_against(basis, row)
        piv = next((c for c, x in enumerate(row) if x), None)
        if piv is None:
            continue
        inv = 1 / row[piv] if not hasattr(row[piv], "inverse") else row[piv].inverse()
        basis.append((piv, [x * inv for x in row]))
        chosen.append(idx)
    return chosen


def rank(matrix):
    """Rank over whatever field the entries live in (zero test via truthiness)."""
    return len(independent_rows(matrix))


def left_kernel_vector(matrix, one, zero):
    """A nonzero lam with sum_i lam_i * row_i == 0, or None if the rows are independent."""
    n = len(matrix)
    # augment each row with an identity block to track combinations
    aug = [list(row) + [one if k == i else zero for k in range(n)] for i, row in enumerate(matrix)]
    width = len(matrix[0]) if matrix else 0
    basis = []
    for row in aug:
        row = _reduce_against(basis, row)
        piv = next((c for c in range(width) if row[c]), None)
        if piv is None:
            return row[width:]
        inv = one / row[piv]
        basis.append((piv, [x * inv for x in row]))
    return None


def leibniz_det(matrix, zero):
    """Division-free determinant; fine for the d <= 5 minors used here."""
    n = len(matrix)
    total = zero
    for perm, sign in _signed_permutations(n):
        term = matrix[0][perm[0]]
        for i in range(1, n):
            term = term * matrix[i][perm[i]]
        total = total + term if sign > 0 else total - term
    return total


@lru_cache(maxsize=None)
def _signed_permutations(n):
    return tuple((perm, _perm_sign(perm)) for perm in permutations(range(n)))


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def bareiss_rank(matrix):
    """Rank of a matrix of FLINT polynomials by fraction-free elimination.

    Uses exact division by the previous pivot, so intermediate entries stay
    polynomial.
    """
    m = [list(row) for row in matrix]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    prev = None
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if not m[i][c].is_zero()), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                v = m[r][c] * m[i][j] - m[i][c] * m[r][j]
                m[i][j] = v / prev if prev is not None else v
            m[i][c] = m[i][c] * 0
        prev = m[r][c]
        r += 1
        if r == nrows:
            break
    return r
