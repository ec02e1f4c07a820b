"""Exact convex polytopes in dimension ≤ 3 with Minkowski operations.

Vertices are tuples of :class:`fractions.Fraction`, so hull predicates are
decided exactly — degenerate inputs (collinear, coplanar, repeated points)
need no epsilons.  A polytope is stored canonically as its lexicographically
sorted irredundant vertex list, which makes structural equality equality of
the dataclass fields.

Polytopes form an idempotent semiring: ⊕ is the convex hull of the union,
⊙ is the Minkowski sum, with the origin as the ⊙-unit.  Both operations are
implemented on vertex lists followed by a hull pass.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as _iter_product

__all__ = [
    "Polytope",
    "convex_hull",
    "minkowski_mul",
    "minkowski_add",
    "polytope_to_json",
    "polytope_from_json",
]


def _to_fraction_point(p, dim: int) -> tuple[Fraction, ...]:
    q = tuple(Fraction(c) for c in p)
    if len(q) != dim:
        raise ValueError(f"point {p!r} does not have dimension {dim}")
    return q


# -- hull machinery ---------------------------------------------------------

def _hull_1d(pts):
    lo, hi = min(pts), max(pts)
    return [lo] if lo == hi else [lo, hi]


def _cross(o, a, b) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull_2d(pts):
    """Monotone-chain hull; collinear boundary points are dropped."""
    pts = sorted(pts)
    if len(pts) <= 2:
        return pts
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _in_convex_hull(point, points) -> bool:
    """Exact membership test: is ``point`` a convex combination of ``points``?

    Phase-I simplex with Bland's rule over rationals.  Feasibility of
    ``Σ λ_j q_j = p, Σ λ_j = 1, λ ≥ 0`` is decided by whether the artificial
    objective can be driven to zero.
    """
    m = len(points)
    if m == 0:
        return False
    d = len(point)
    rows = d + 1
    a = [[Fraction(points[j][r]) for j in range(m)] for r in range(d)]
    a.append([Fraction(1)] * m)
    b = [Fraction(point[r]) for r in range(d)] + [Fraction(1)]
    for r in range(rows):
        if b[r] < 0:
            a[r] = [-x for x in a[r]]
            b[r] = -b[r]
    ncols = m + rows
    # tableau rows: structural columns, artificial identity, rhs
    tab = [a[r] + [Fraction(int(i == r)) for i in range(rows)] + [b[r]] for r in range(rows)]
    basis = list(range(m, m + rows))
    # phase-I objective row (reduced costs); rhs slot holds -w
    obj = [Fraction(0)] * (ncols + 1)
    for j in range(ncols + 1):
        col_sum = sum(tab[r][j] for r in range(rows))
        cost = Fraction(1) if m <= j < ncols else Fraction(0)
        obj[j] = cost - col_sum
    obj[ncols] = -sum(b)

    while True:
        enter = next((j for j in range(ncols) if obj[j] < 0), None)
        if enter is None:
            break
        ratio = None
        leave = None
        for r in range(rows):
            if tab[r][enter] > 0:
                cand = tab[r][ncols] / tab[r][enter]
                if ratio is None or cand < ratio or (cand == ratio and basis[r] < basis[leave]):
                    ratio = cand
                    leave = r
        if leave is None:  # unbounded cannot happen for phase I, but stay safe
            return False
        pivot = tab[leave][enter]
        tab[leave] = [x / pivot for x in tab[leave]]
        for r in range(rows):
            if r != leave and tab[r][enter] != 0:
                factor = tab[r][enter]
                tab[r] = [x - factor * y for x, y in zip(tab[r], tab[leave])]
        if obj[enter] != 0:
            factor = obj[enter]
            obj = [x - factor * y for x, y in zip(obj, tab[leave])]
        basis[leave] = enter
    return -obj[ncols] == 0


_PREFILTER_DIRS = [u for u in _iter_product((-1, 0, 1), repeat=3) if u != (0, 0, 0)]


def _hull_3d(pts):
    """Irredundant vertex set by exact extreme-point filtering.

    A point is a vertex iff it is not in the hull of the remaining points.
    Unique maximizers of a fixed family of integer directions are certainly
    vertices and skip their membership test.
    """
    pts = sorted(pts)
    if len(pts) <= 2:
        return pts
    certain: set = set()
    for u in _PREFILTER_DIRS:
        best = None
        winners = 0
        for p in pts:
            val = u[0] * p[0] + u[1] * p[1] + u[2] * p[2]
            if best is None or val > best:
                best, winner, winners = val, p, 1
            elif val == best:
                winners += 1
        if winners == 1:
            certain.add(winner)
    out = []
    for p in pts:
        if p in certain:
            out.append(p)
            continue
        others = [q for q in pts if q != p]
        if not _in_convex_hull(p, others):
            out.append(p)
    return out


def _extreme_points(points, dim: int):
    pts = sorted(set(points))
    if not pts:
        raise ValueError("a polytope needs at least one point")
    if dim == 1:
        return [(c,) for c in _hull_1d([p[0] for p in pts])]
    if dim == 2:
        return _hull_2d(pts)
    if dim == 3:
        return _hull_3d(pts)
    raise ValueError("exact hulls are implemented for dimensions 1 to 3")


@dataclass(frozen=True)
class Polytope:
    """A convex polytope given by its canonical (sorted, irredundant) vertices.

    The constructor accepts any finite point set with int/Fraction
    coordinates and reduces it to the extreme points, so two polytopes are
    equal iff their dataclass fields are.
    """

    dim: int
    vertices: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        dim = int(self.dim)
        pts = [_to_fraction_point(p, dim) for p in self.vertices]
        verts = tuple(sorted(_extreme_points(pts, dim)))
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "vertices", verts)

    def translate(self, offset) -> "Polytope":
        off = _to_fraction_point(offset, self.dim)
        return Polytope(self.dim, [tuple(c + o for c, o in zip(v, off)) for v in self.vertices])

    def __repr__(self):
        return f"Polytope(dim={self.dim}, vertices={[tuple(map(str, v)) for v in self.vertices]})"


def convex_hull(points, dim: int | None = None) -> Polytope:
    """Convex hull of a finite point set (coordinates int or Fraction)."""
    pts = list(points)
    if not pts:
        raise ValueError("cannot take the hull of an empty set")
    if dim is None:
        dim = len(pts[0])
    return Polytope(dim, pts)


def minkowski_mul(p: Polytope, q: Polytope) -> Polytope:
    """Minkowski sum P + Q (the ⊙ of the polytope semiring)."""
    if p.dim != q.dim:
        raise ValueError("Minkowski sum needs matching dimensions")
    sums = [tuple(x + y for x, y in zip(a, b)) for a in p.vertices for b in q.vertices]
    return Polytope(p.dim, sums)


def minkowski_add(p: Polytope, q: Polytope) -> Polytope:
    """Convex hull of the union, conv(P ∪ Q) (the ⊕ of the polytope semiring)."""
    if p.dim != q.dim:
        raise ValueError("hull-of-union needs matching dimensions")
    return Polytope(p.dim, list(p.vertices) + list(q.vertices))


# -- serialization ----------------------------------------------------------

def _coord_to_json(c: Fraction):
    return int(c) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def polytope_to_json(p: Polytope) -> dict:
    """JSON-ready dict: integer coordinates as ints, others as "num/den"."""
    return {
        "dim": p.dim,
        "vertices": [[_coord_to_json(c) for c in v] for v in p.vertices],
    }


def polytope_from_json(obj: dict) -> Polytope:
    try:
        dim = int(obj["dim"])
        verts = [[Fraction(str(c)) for c in v] for v in obj["vertices"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed polytope JSON: {exc}") from None
    return Polytope(dim, verts)
