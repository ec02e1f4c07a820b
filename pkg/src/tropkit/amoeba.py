"""Amoebas of plane curves and their tropical limits.

The amoeba of a polynomial ``f`` on (C*)² is the image of its zero set under
``Log_h(z) = (h·log|z₁|, h·log|z₂|)``.  It is sampled fiberwise: fixing
``x₁`` (hence ``|z₁| = exp(x₁/h)``) and sweeping the phase of ``z₁``, the
roots of the resulting univariate polynomial in ``z₂`` are computed exactly
(companion matrix plus a Newton polish), and each root contributes the point
``(x₁, h·log|z₂|)``.  Slicing is done in both coordinate directions so that
tentacles of every orientation are resolved.

The tropical counterpart is the corner locus of ``max_a (v_a + ⟨a, x⟩)``: a
planar piecewise-linear set of vertices, edges and rays computed from
pairwise tie lines intersected with dominance regions.  Deforming
coefficients by ``c ↦ (c/|c|)·|c|^{1/h}`` makes the ``Log_h``-amoeba of the
deformed polynomial collapse onto that corner locus as ``h → 0``; the
distance between the two is measured in the Hausdorff metric after clipping
both to a viewing window.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .dequantize import SparsePolynomial

__all__ = [
    "Window",
    "TropicalPolynomial",
    "PlanarPLSet",
    "AmoebaSample",
    "tropical_data",
    "deform_polynomial",
    "slice_roots",
    "amoeba_slice",
    "sample_amoeba",
    "tropical_variety",
    "hausdorff_distance",
    "convergence_study",
]

_RESIDUAL_TOL = 1e-9
_EXP_GUARD = 700.0  # beyond this, exp overflows double range


@dataclass(frozen=True)
class Window:
    """An axis-aligned viewing rectangle ``[xmin, xmax] × [ymin, ymax]``."""

    xmin: float
    xmax: float
    ymin: float
    ymax: float

    def __post_init__(self):
        for name in ("xmin", "xmax", "ymin", "ymax"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if not (self.xmax > self.xmin and self.ymax > self.ymin):
            raise ValueError("window must have positive width and height")

    @classmethod
    def parse(cls, text: str) -> "Window":
        parts = [p for p in text.replace(",", " ").split() if p]
        if len(parts) != 4:
            raise ValueError("window must be 'xmin,xmax,ymin,ymax'")
        return cls(*(float(p) for p in parts))

    @property
    def diagonal(self) -> float:
        return math.hypot(self.xmax - self.xmin, self.ymax - self.ymin)

    def contains(self, points: np.ndarray) -> np.ndarray:
        """Boolean mask of points inside the closed rectangle."""
        p = np.asarray(points, dtype=float).reshape(-1, 2)
        return (
            (p[:, 0] >= self.xmin)
            & (p[:, 0] <= self.xmax)
            & (p[:, 1] >= self.ymin)
            & (p[:, 1] <= self.ymax)
        )


@dataclass(frozen=True)
class TropicalPolynomial:
    """``max_a (v_a + ⟨a, x⟩)`` given by distinct integer exponents and floats."""

    dim: int
    terms: tuple[tuple[tuple[int, ...], float], ...]

    def __post_init__(self):
        dim = int(self.dim)
        if dim < 1:
            raise ValueError("tropical polynomial dimension must be at least 1")
        seen = {}
        for exps, v in self.terms:
            key = tuple(int(e) for e in exps)
            if len(key) != dim:
                raise ValueError(f"exponent {exps!r} does not have {dim} entries")
            val = float(v)
            if not math.isfinite(val):
                raise ValueError("tropical coefficients must be finite")
            if key in seen:
                raise ValueError(f"duplicate exponent {key!r}")
            seen[key] = val
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "terms", tuple(sorted(seen.items())))
        if not self.terms:
            raise ValueError("need at least one term")

    def evaluate(self, x) -> float:
        xv = np.asarray(x, dtype=float)
        return max(v + float(np.dot(e, xv)) for e, v in self.terms)


def tropical_data(f: SparsePolynomial) -> TropicalPolynomial:
    """Valuation data of a complex polynomial: ``v_a = log|c_a|``."""
    return TropicalPolynomial(
        f.dim, tuple((e, math.log(abs(c))) for e, c in f.terms)
    )


def deform_polynomial(f: SparsePolynomial, h: float) -> SparsePolynomial:
    """Rescale moduli ``c ↦ (c/|c|)·|c|^{1/h}``; at h = 1 this is the identity.

    The deformation matches ``Log_h`` in the sense that the valuation of the
    deformed coefficient seen at scale h, ``h·log|c|^{1/h} = log|c|``, is
    h-independent.
    """
    h = float(h)
    if not h > 0:
        raise ValueError("h must be positive")
    if h == 1.0:
        return f
    terms = []
    for e, c in f.terms:
        mag = abs(c)
        terms.append((e, (c / mag) * mag ** (1.0 / h)))
    return SparsePolynomial(f.dim, tuple(terms))


# -- fiberwise root sampling -------------------------------------------------

def slice_roots(f: SparsePolynomial, h: float, x1: float, angle_samples: int):
    """Roots in ``z₂`` over the circle ``|z₁| = exp(x₁/h)``.

    Returns ``(thetas, roots, residuals)``: for each phase sample and each
    nonzero root, the normalized residual ``|f(z)| / Σ_a |c_a z^a|``.  Phases
    where the univariate slice polynomial vanishes identically are flagged
    with a warning and skipped.
    """
    if f.dim != 2:
        raise ValueError("amoeba slicing expects a bivariate polynomial")
    h = float(h)
    if not h > 0:
        raise ValueError("h must be positive")
    if angle_samples < 1:
        raise ValueError("need at least one phase sample")
    exps = np.array(f.support, dtype=int)
    coeffs = f.coefficient_array()
    if np.max(np.abs(exps[:, 0])) * abs(x1) / h > _EXP_GUARD:
        raise ValueError("slice coordinate too large: |z1|^deg overflows")

    deg2 = int(exps[:, 1].max())
    thetas = 2.0 * np.pi * np.arange(angle_samples) / angle_samples
    # slice coefficients: C[t, a2] = Σ_{(a1, a2)} c · exp(a1·x1/h) · e^{i a1 θ_t}
    cmat = np.zeros((angle_samples, deg2 + 1), dtype=complex)
    for (a1, a2), c in zip(exps, coeffs):
        cmat[:, a2] += c * math.exp(a1 * x1 / h) * np.exp(1j * a1 * thetas)

    out_thetas: list[float] = []
    out_roots: list[complex] = []
    out_res: list[float] = []
    degenerate = 0
    for t in range(angle_samples):
        ascending = cmat[t]
        if not np.any(ascending != 0):
            degenerate += 1
            continue
        roots = np.roots(ascending[::-1])
        roots = roots[roots != 0]
        if roots.size == 0:
            continue
        # one Newton polish pass against the slice polynomial
        deriv = np.polyder(ascending[::-1])
        for _ in range(2):
            pv = np.polyval(ascending[::-1], roots)
            dv = np.polyval(deriv, roots)
            ok = dv != 0
            roots = np.where(ok, roots - np.where(ok, pv, 0) / np.where(ok, dv, 1), roots)
        roots = roots[roots != 0]
        if roots.size == 0:
            continue
        z1 = math.exp(x1 / h) * np.exp(1j * thetas[t])
        vals = np.zeros(roots.shape, dtype=complex)
        scale = np.zeros(roots.shape, dtype=float)
        for (a1, a2), c in zip(exps, coeffs):
            term = c * z1**a1 * roots**a2
            vals += term
            scale += np.abs(term)
        with np.errstate(invalid="ignore", divide="ignore"):
            res = np.abs(vals) / scale
        for r, rr in zip(roots, res):
            if np.isfinite(rr):
                out_thetas.append(float(thetas[t]))
                out_roots.append(complex(r))
                out_res.append(float(rr))
    if degenerate:
        warnings.warn(
            f"slice x1={x1:g}: {degenerate} phase(s) gave an identically zero "
            "polynomial; skipped",
            stacklevel=2,
        )
    return (
        np.array(out_thetas),
        np.array(out_roots, dtype=complex),
        np.array(out_res),
    )


def amoeba_slice(
    f: SparsePolynomial, h: float, x1: float, angle_samples: int
) -> np.ndarray:
    """Amoeba points ``(x₁, h·log|z₂|)`` on one vertical slice.

    Only roots whose normalized residual is below 1e-9 are emitted, so every
    returned point comes from a genuinely certified zero of ``f``.
    """
    _, roots, residuals = slice_roots(f, h, x1, angle_samples)
    keep = residuals <= _RESIDUAL_TOL
    roots = roots[keep]
    if roots.size == 0:
        return np.empty((0, 2))
    x2 = h * np.log(np.abs(roots))
    return np.stack([np.full(x2.shape, float(x1)), x2], axis=1)


@dataclass
class AmoebaSample:
    """A sampled amoeba: points, the scale h, and the window that clips it."""

    points: np.ndarray
    h: float
    window: Window

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float).reshape(-1, 2)
        self.points = pts


def _swap_variables(f: SparsePolynomial) -> SparsePolynomial:
    return SparsePolynomial(2, tuple(((e[1], e[0]), c) for e, c in f.terms))


def sample_amoeba(
    f: SparsePolynomial,
    h: float,
    window: Window,
    slices: int,
    angle_samples: int,
) -> AmoebaSample:
    """Slice the amoeba in both coordinate directions and clip to the window.

    ``slices`` fiber positions per direction; zero slices give an empty
    sample.  Monomials have empty amoebas (every slice is root-free).
    """
    if slices < 0:
        raise ValueError("slice count must be nonnegative")
    collected = []
    if slices > 0:
        for x1 in np.linspace(window.xmin, window.xmax, slices):
            pts = amoeba_slice(f, h, float(x1), angle_samples)
            if pts.size:
                keep = (pts[:, 1] >= window.ymin) & (pts[:, 1] <= window.ymax)
                collected.append(pts[keep])
        swapped = _swap_variables(f)
        for x2 in np.linspace(window.ymin, window.ymax, slices):
            pts = amoeba_slice(swapped, h, float(x2), angle_samples)
            if pts.size:
                flipped = pts[:, ::-1]  # (value, x2) back to (x1-coordinate, x2)
                keep = (flipped[:, 0] >= window.xmin) & (flipped[:, 0] <= window.xmax)
                collected.append(flipped[keep])
    points = (
        np.concatenate(collected, axis=0) if collected else np.empty((0, 2))
    )
    return AmoebaSample(points, float(h), window)


# -- the tropical side -------------------------------------------------------

@dataclass
class PlanarPLSet:
    """A planar piecewise-linear set: vertices, edges between them, and rays.

    ``rays`` hold ``(base_vertex_index, primitive_integer_direction)``.
    """

    vertices: list[tuple[float, float]]
    edges: list[tuple[int, int]]
    rays: list[tuple[int, tuple[int, int]]]

    def to_json(self) -> dict:
        return {
            "vertices": [list(v) for v in self.vertices],
            "edges": [list(e) for e in self.edges],
            "rays": [{"base": b, "dir": list(d)} for b, d in self.rays],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "PlanarPLSet":
        return cls(
            [tuple(map(float, v)) for v in obj["vertices"]],
            [tuple(map(int, e)) for e in obj["edges"]],
            [(int(r["base"]), tuple(map(int, r["dir"]))) for r in obj["rays"]],
        )


def _primitive(d: np.ndarray) -> tuple[int, int]:
    a, b = int(round(d[0])), int(round(d[1]))
    g = math.gcd(abs(a), abs(b))
    return (a // g, b // g)


def tropical_variety(tf: TropicalPolynomial) -> PlanarPLSet:
    """Corner locus of a planar tropical polynomial.

    For every pair of terms the tie line is intersected with the region where
    the pair dominates all other terms; bounded pieces become edges, primal
    unbounded pieces rays.  Vertices within 1e-9 (scaled) snap together.
    A polynomial with fewer than two terms has no corner locus.
    """
    if tf.dim != 2:
        raise ValueError("corner locus is implemented for the plane")
    terms = tf.terms
    if len(terms) < 2:
        raise ValueError("corner locus needs at least two terms")
    exps = np.array([e for e, _ in terms], dtype=float)
    vals = np.array([v for _, v in terms])
    m = len(terms)
    tol = 1e-9 * (1.0 + float(np.abs(vals).max()))

    vertices: list[np.ndarray] = []
    edges: set[tuple[int, int]] = set()
    rays: set[tuple[int, tuple[int, int]]] = set()

    def vertex_index(p: np.ndarray) -> int:
        for i, q in enumerate(vertices):
            if abs(p[0] - q[0]) <= tol and abs(p[1] - q[1]) <= tol:
                return i
        vertices.append(p.copy())
        return len(vertices) - 1

    for i in range(m):
        for j in range(i + 1, m):
            dv = exps[i] - exps[j]
            denom = float(dv @ dv)
            p0 = dv * (vals[j] - vals[i]) / denom
            d = np.array([-dv[1], dv[0]])
            t_lo, t_hi = -math.inf, math.inf
            empty = False
            for k in range(m):
                if k in (i, j):
                    continue
                grow = float((exps[i] - exps[k]) @ d)  # integer-valued, exact
                const = vals[i] - vals[k] + float((exps[i] - exps[k]) @ p0)
                if grow == 0.0:
                    if const < -tol:
                        empty = True
                        break
                elif grow > 0.0:
                    t_lo = max(t_lo, -const / grow)
                else:
                    t_hi = min(t_hi, -const / grow)
            if empty or t_lo > t_hi + tol:
                continue
            prim = _primitive(d)
            if t_lo == -math.inf and t_hi == math.inf:
                base = vertex_index(p0)
                rays.add((base, prim))
                rays.add((base, (-prim[0], -prim[1])))
            elif t_lo == -math.inf:
                base = vertex_index(p0 + t_hi * d)
                rays.add((base, (-prim[0], -prim[1])))
            elif t_hi == math.inf:
                base = vertex_index(p0 + t_lo * d)
                rays.add((base, prim))
            else:
                ia = vertex_index(p0 + t_lo * d)
                ib = vertex_index(p0 + t_hi * d)
                if ia != ib:
                    edges.add((min(ia, ib), max(ia, ib)))

    return PlanarPLSet(
        [(float(p[0]), float(p[1])) for p in vertices],
        sorted(edges),
        sorted(rays),
    )


# -- Hausdorff distance ------------------------------------------------------

def _clip_parametric(p0, d, t_max, window: Window):
    """Clip ``p0 + t·d`` for ``t ∈ [0, t_max]`` to the window (Liang-Barsky)."""
    t_lo, t_hi = 0.0, t_max
    for coord, lo, hi in ((0, window.xmin, window.xmax), (1, window.ymin, window.ymax)):
        p, delta = p0[coord], d[coord]
        if delta == 0.0:
            if p < lo or p > hi:
                return None
        else:
            ta, tb = (lo - p) / delta, (hi - p) / delta
            if ta > tb:
                ta, tb = tb, ta
            t_lo, t_hi = max(t_lo, ta), min(t_hi, tb)
            if t_lo > t_hi:
                return None
    if not math.isfinite(t_hi):
        return None
    return p0 + t_lo * d, p0 + t_hi * d


def _clipped_primitives(pl: PlanarPLSet, window: Window):
    """Clip a PL set to the window, returning a list of (a, b) segments."""
    segs = []
    verts = [np.asarray(v, dtype=float) for v in pl.vertices]
    for i, j in pl.edges:
        d = verts[j] - verts[i]
        clipped = _clip_parametric(verts[i], d, 1.0, window)
        if clipped is not None:
            segs.append(clipped)
    for base, direction in pl.rays:
        d = np.asarray(direction, dtype=float)
        clipped = _clip_parametric(verts[base], d, math.inf, window)
        if clipped is not None:
            segs.append(clipped)
    # isolated vertices still count as zero-length segments
    if not pl.edges and not pl.rays:
        for v in verts:
            if window.contains(v.reshape(1, 2))[0]:
                segs.append((v, v))
    return segs


def _points_to_segment(points: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    ab = b - a
    denom = float(ab @ ab)
    if denom == 0.0:
        return np.linalg.norm(points - a, axis=1)
    t = np.clip((points - a) @ ab / denom, 0.0, 1.0)
    proj = a + t[:, None] * ab
    return np.linalg.norm(points - proj, axis=1)


def hausdorff_distance(sample, target, window: Window, pitch: float | None = None) -> float:
    """Symmetric Hausdorff distance of two planar sets clipped to a window.

    ``sample`` is an :class:`AmoebaSample` or an ``(k, 2)`` point array;
    ``target`` is a :class:`PlanarPLSet` or a point array.  Point-to-segment
    distances are exact; the segment-to-points direction discretizes each
    clipped segment at ``pitch`` (default: window diagonal / 2000).

    Raises
    ------
    ValueError
        If either set is empty after clipping.
    """
    pts = sample.points if isinstance(sample, AmoebaSample) else np.asarray(sample, float)
    pts = pts.reshape(-1, 2)
    pts = pts[window.contains(pts)]
    if pts.shape[0] == 0:
        raise ValueError("sample is empty after clipping to the window")
    if pitch is None:
        pitch = window.diagonal / 2000.0

    if isinstance(target, PlanarPLSet):
        segs = _clipped_primitives(target, window)
        if not segs:
            raise ValueError("target set is empty after clipping to the window")
        dist_to_target = np.full(pts.shape[0], math.inf)
        probe_chunks = []
        for a, b in segs:
            np.minimum(dist_to_target, _points_to_segment(pts, a, b), out=dist_to_target)
            length = float(np.linalg.norm(b - a))
            n = max(2, int(math.ceil(length / pitch)) + 1)
            ts = np.linspace(0.0, 1.0, n)
            probe_chunks.append(a[None, :] + ts[:, None] * (b - a)[None, :])
        probes = np.concatenate(probe_chunks, axis=0)
    else:
        probes = np.asarray(target, dtype=float).reshape(-1, 2)
        probes = probes[window.contains(probes)]
        if probes.shape[0] == 0:
            raise ValueError("target is empty after clipping to the window")
        dist_to_target, _ = cKDTree(probes).query(pts)
    dist_to_sample, _ = cKDTree(pts).query(probes)
    return float(max(dist_to_target.max(), dist_to_sample.max()))


def convergence_study(
    f: SparsePolynomial,
    h_values,
    window: Window,
    slices: int = 200,
    angle_samples: int = 64,
) -> list[tuple[float, float]]:
    """Hausdorff distance of the deformed amoeba to the tropical limit per h.

    For each h the coefficients are deformed, the amoeba of the deformed
    polynomial is sampled under ``Log_h``, and its distance to the corner
    locus of the valuation data of ``f`` is measured inside the window.
    Returns ``[(h, distance), ...]`` in the order given.
    """
    spine = tropical_variety(tropical_data(f))
    rows = []
    for h in h_values:
        fh = deform_polynomial(f, float(h))
        sample = sample_amoeba(fh, float(h), window, slices, angle_samples)
        rows.append((float(h), hausdorff_distance(sample, spine, window)))
    return rows
