"""Simplicial complexes: parsing, pseudomanifold checks, orientation, faces, homology."""

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .errors import (
    DuplicateVertexInFacet,
    FacetSizeError,
    MalformedComplex,
    NonOrientable,
    PreconditionError,
)
from .linalg import rank_mod_p, rank_rational

__all__ = [
    "SimplicialComplex",
    "PseudomanifoldReport",
    "Orientation",
    "parse_complex",
    "validate_pseudomanifold",
    "orient",
    "faces",
    "f_vector",
    "h_vector",
    "betti_numbers",
    "link",
    "is_homology_manifold",
    "simplex_boundary",
    "cross_polytope",
    "octahedron",
    "bipyramid",
    "rp2_six_vertex",
]


@dataclass(frozen=True)
class SimplicialComplex:
    """Facets on vertices 1..n, each a sorted tuple; facets sorted and deduplicated."""

    n: int
    facets: tuple

    def __post_init__(self):
        canon = tuple(sorted({tuple(sorted(f)) for f in self.facets}))
        object.__setattr__(self, "facets", canon)
        for f in canon:
            if len(set(f)) != len(f):
                raise DuplicateVertexInFacet(f"facet {f} repeats a vertex")
            if any(not 1 <= v <= self.n for v in f):
                raise MalformedComplex(f"facet {f} has a vertex outside 1..{self.n}")
        used = {v for f in canon for v in f}
        if used != set(range(1, self.n + 1)):
            raise MalformedComplex("every vertex 1..n must lie in some facet")

    @classmethod
    def from_facets(cls, facets):
        """Build from arbitrary positive labels, compacted to 1..n in sorted order."""
        facets = [tuple(f) for f in facets]
        for f in facets:
            if len(set(f)) != len(f):
                raise DuplicateVertexInFacet(f"facet {f} repeats a vertex")
        labels = sorted({v for f in facets for v in f})
        relabel = {v: i + 1 for i, v in enumerate(labels)}
        return cls(len(labels), tuple(tuple(relabel[v] for v in f) for f in facets))

    @property
    def d(self):
        """Facet size (dimension + 1); the maximum size for impure input."""
        return max(len(f) for f in self.facets)

    @property
    def is_pure(self):
        return len({len(f) for f in self.facets}) == 1

    def vertices(self):
        return range(1, self.n + 1)

    def is_face(self, support):
        s = set(support)
        return any(s <= set(f) for f in self.facets)

    def facets_containing(self, support):
        s = set(support)
        return [f for f in self.facets if s <= set(f)]

    def to_text(self):
        return "".join(" ".join(map(str, f)) + "\n" for f in self.facets)

    def digest(self):
        """Short stable fingerprint of the facet list (FNV-1a, 64 bit)."""
        h = 0xCBF29CE484222325
        for byte in self.to_text().encode():
            h = ((h ^ byte) * 0x100000001B3) & 0xFFFFFFFFFFFFFFFF
        return f"{h:016x}"


@dataclass(frozen=True)
class PseudomanifoldReport:
    is_pure: bool
    ridge_ok: bool
    strongly_connected: bool

    @property
    def verdict(self):
        return self.is_pure and self.ridge_ok and self.strongly_connected


@dataclass(frozen=True)
class Orientation:
    """Facet signs eps_F relative to the sorted vertex order of each facet."""

    signs: dict = field(hash=False)
    seed: tuple = ()
    characteristic: int = 0

    def sign(self, facet):
        return self.signs[tuple(facet)]

    def flipped(self):
        return Orientation({f: -s for f, s in self.signs.items()}, self.seed, self.characteristic)


def parse_complex(text, pure=True):
    """Parse the facet-list format: one facet per line, '#' comments, blank lines skipped.

    With ``pure=True`` facets of differing sizes are rejected.
    """
    facets = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            facet = tuple(int(tok) for tok in line.split())
        except ValueError:
            raise MalformedComplex(f"line {lineno}: expected integers, got {raw!r}") from None
        if any(v <= 0 for v in facet):
            raise MalformedComplex(f"line {lineno}: vertex labels must be positive")
        if len(set(facet)) != len(facet):
            raise DuplicateVertexInFacet(f"line {lineno}: facet {facet} repeats a vertex")
        if pure and facets and len(facet) != len(facets[0]):
            raise FacetSizeError(
                f"line {lineno}: facet of size {len(facet)}, expected {len(facets[0])}")
        facets.append(facet)
    if not facets:
        raise MalformedComplex("no facets")
    return SimplicialComplex.from_facets(facets)


def _ridge_map(cx):
    ridges = {}
    for f in cx.facets:
        for k in range(len(f)):
            ridges.setdefault(f[:k] + f[k + 1:], []).append(f)
    return ridges


def validate_pseudomanifold(cx):
    ridges = _ridge_map(cx)
    pure = cx.is_pure
    ridge_ok = pure and all(len(fs) == 2 for fs in ridges.values())
    # facet graph: edges between facets sharing a ridge
    adjacency = {f: set() for f in cx.facets}
    for fs in ridges.values():
        for a, b in combinations(fs, 2):
            adjacency[a].add(b)
            adjacency[b].add(a)
    start = cx.facets[0]
    seen = {start}
    queue = deque([start])
    while queue:
        for g in adjacency[queue.popleft()]:
            if g not in seen:
                seen.add(g)
                queue.append(g)
    return PseudomanifoldReport(pure, ridge_ok, len(seen) == len(cx.facets))


def _induced(facet, k, sign):
    # orientation induced on the ridge facet minus facet[k]
    return sign if k % 2 == 0 else -sign


def orient(cx, characteristic=0):
    """Consistent facet signs by traversal from the lexicographically first facet (+1).

    In characteristic 2 every sign is +1.
    """
    if not validate_pseudomanifold(cx).verdict:
        raise PreconditionError("orientation requires a connected pseudomanifold")
    seed = cx.facets[0]
    if characteristic == 2:
        return Orientation({f: 1 for f in cx.facets}, seed, 2)
    ridges = _ridge_map(cx)
    signs = {seed: 1}
    queue = deque([seed])
    while queue:
        f = queue.popleft()
        for k in range(len(f)):
            ridge = f[:k] + f[k + 1:]
            want = -_induced(f, k, signs[f])
            for g in ridges[ridge]:
                if g == f:
                    continue
                pos = next(t for t in range(len(g)) if g[t] not in ridge)
                s = want if pos % 2 == 0 else -want
                if g in signs:
                    if signs[g] != s:
                        raise NonOrientable("no consistent orientation exists")
                else:
                    signs[g] = s
                    queue.append(g)
    return Orientation(signs, seed, characteristic)


def faces(cx, m):
    """All cardinality-m faces, sorted."""
    if not 0 <= m <= cx.d:
        raise PreconditionError(f"face size {m} outside 0..{cx.d}")
    return sorted({s for f in cx.facets for s in combinations(f, m)})


def f_vector(cx):
    """(f_{-1}, f_0, ..., f_{d-1}): numbers of faces of cardinality 0..d."""
    return tuple(len(faces(cx, m)) for m in range(cx.d + 1))


def h_vector(cx):
    d = cx.d
    f = f_vector(cx)
    return tuple(
        sum((-1) ** (k - i) * comb(d - i, k - i) * f[i] for i in range(k + 1))
        for k in range(d + 1))


def _boundary_rank(lower, upper, characteristic):
    index = {s: r for r, s in enumerate(lower)}
    rows = []
    for s in upper:
        row = {}
        for k in range(len(s)):
            row[index[s[:k] + s[k + 1:]]] = (-1) ** k
        rows.append(row)
    if not rows or not lower:
        return 0
    dense = [[row.get(c, 0) for c in range(len(lower))] for row in rows]
    if characteristic == 0:
        return rank_rational(dense)
    return rank_mod_p(dense, characteristic)


def betti_numbers(cx, characteristic=0):
    """Reduced Betti numbers (b_0, ..., b_{d-1}) over QQ or F_p."""
    d = cx.d
    chains = [faces(cx, m) for m in range(d + 1)]
    ranks = [0] * (d + 2)  # ranks[m]: boundary from cardinality m to m-1
    for m in range(1, d + 1):
        ranks[m] = _boundary_rank(chains[m - 1], chains[m], characteristic)
    return tuple(len(chains[m]) - ranks[m] - ranks[m + 1] for m in range(1, d + 1))


def link(cx, face):
    face = set(face)
    facets = [tuple(v for v in f if v not in face) for f in cx.facets if face <= set(f)]
    facets = [f for f in facets if f]
    if not facets:
        return None
    return SimplicialComplex.from_facets(facets)


def is_homology_manifold(cx, characteristic=0):
    """Advisory check: every nonempty face link has sphere Betti numbers over the field."""
    d = cx.d
    for m in range(1, d):
        for s in faces(cx, m):
            lk = link(cx, s)
            dim = d - m  # facet size of the link
            expected = tuple([0] * (dim - 1) + [1])
            if lk is None or lk.d != dim or betti_numbers(lk, characteristic) != expected:
                return False
    return True


def simplex_boundary(d):
    """Boundary of the d-simplex on vertices 1..d+1 (facet size d)."""
    return SimplicialComplex(d + 1, tuple(combinations(range(1, d + 2), d)))


def cross_polytope(d):
    """Boundary of the d-dimensional cross-polytope; vertex i is antipodal to i+d."""
    facets = []
    for choice in range(2 ** d):
        facets.append(tuple(i + 1 + (d if choice >> i & 1 else 0) for i in range(d)))
    return SimplicialComplex(2 * d, tuple(facets))


def octahedron():
    """Octahedron boundary; the missing diagonals are {1,4}, {2,5}, {3,6}."""
    return cross_polytope(3)


def bipyramid():
    """Suspension of the triangle boundary: apexes 4 and 5, six facets."""
    edges = [(1, 2), (1, 3), (2, 3)]
    return SimplicialComplex(5, tuple(e + (apex,) for e in edges for apex in (4, 5)))


def rp2_six_vertex():
    """The 6-vertex triangulation of the real projective plane."""
    return SimplicialComplex(6, (
        (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
        (2, 3, 5), (3, 4, 6), (2, 4, 5), (3, 5, 6), (2, 4, 6)))
