"""Dense matrices over tropical semirings: Kleene star and Bellman solvers.

Matrix addition and multiplication are the semiring lifts of ⊕ and ⊙; over
min-plus, ``mat_mul`` is the classical (min, +) product whose powers encode
shortest walks, and the Kleene star ``A* = I ⊕ A ⊕ A² ⊕ ...`` collects walks
of every length.  The stationary Bellman equation ``X = H ⊙ X ⊕ F`` has the
least solution ``X = H* ⊙ F``, reachable by simple iteration from ``X = F``;
both a Jacobi (simultaneous) and a Gauss-Seidel (in-place, ascending row
sweeps) scheme are provided.

Iterations over an idempotent semiring are monotone in the standard order, so
stabilization is detected by exact equality of consecutive iterates.  A
matrix with a ⊙-positive cycle (max-plus: positive cycle weight; min-plus:
negative cycle weight) never stabilizes; that is reported as
:class:`~tropkit.errors.DivergenceError` after the iteration budget plus one
verification pass.
"""
from __future__ import annotations

import numpy as np

from .errors import DivergenceError, InputFormatError
from .semiring import Semiring, minplus

__all__ = [
    "SemiringMatrix",
    "mat_add",
    "mat_mul",
    "kleene_star",
    "solve_bellman",
    "read_edge_list",
    "parse_edge_list",
    "shortest_path_distances",
]


class SemiringMatrix:
    """An immutable dense matrix with entries in one scalar semiring.

    Entries are stored row-major as a read-only float array; the carrier is
    enforced on construction (NaN and the opposite infinity are rejected).
    """

    __slots__ = ("entries", "spec")

    def __init__(self, entries, spec: Semiring):
        arr = np.array(entries, dtype=float, order="C")
        if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] == 0:
            raise ValueError("matrix entries must form a non-empty 2-D array")
        spec.validate(arr)
        arr.setflags(write=False)
        self.entries = arr
        self.spec = spec

    @classmethod
    def zeros(cls, rows: int, cols: int, spec: Semiring) -> "SemiringMatrix":
        """Matrix filled with the semiring zero (bottom)."""
        return cls(np.full((rows, cols), spec.zero), spec)

    @classmethod
    def identity(cls, n: int, spec: Semiring) -> "SemiringMatrix":
        """Semiring unit on the diagonal, bottom off it."""
        e = np.full((n, n), spec.zero)
        np.fill_diagonal(e, spec.one)
        return cls(e, spec)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    def __eq__(self, other):
        if not isinstance(other, SemiringMatrix):
            return NotImplemented
        return self.spec == other.spec and np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash((self.spec, self.entries.tobytes(), self.shape))

    def __add__(self, other):
        return mat_add(self, other)

    def __matmul__(self, other):
        return mat_mul(self, other)

    def __repr__(self):
        return f"SemiringMatrix({self.entries.tolist()!r}, {self.spec!r})"


def _require_same_spec(a: SemiringMatrix, b: SemiringMatrix) -> Semiring:
    if a.spec != b.spec:
        raise ValueError("operands live in different semirings")
    return a.spec


def _reduce(values: np.ndarray, axis, spec: Semiring) -> np.ndarray:
    """⊕-reduction of an array along the given axis/axes."""
    if spec.variant == "maxplus":
        return values.max(axis=axis)
    if spec.variant == "minplus":
        return values.min(axis=axis)
    from scipy.special import logsumexp

    with np.errstate(divide="ignore"):
        return spec.h * logsumexp(values / spec.h, axis=axis)


def _product_entries(a: np.ndarray, b: np.ndarray, spec: Semiring) -> np.ndarray:
    # Same-signed infinities add cleanly, so no guard is needed inside the
    # validated carrier: bottom rows/columns propagate as bottom.
    stacked = a[:, :, None] + b[None, :, :]
    return _reduce(stacked, 1, spec)


def mat_add(a: SemiringMatrix, b: SemiringMatrix) -> SemiringMatrix:
    """Entrywise ⊕ of two equal-shaped matrices over the same semiring."""
    spec = _require_same_spec(a, b)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    return SemiringMatrix(spec.add(a.entries, b.entries), spec)


def mat_mul(a: SemiringMatrix, b: SemiringMatrix) -> SemiringMatrix:
    """Semiring matrix product: C[i, j] = ⊕_k A[i, k] ⊙ B[k, j]."""
    spec = _require_same_spec(a, b)
    if a.cols != b.rows:
        raise ValueError(f"inner dimensions disagree: {a.shape} @ {b.shape}")
    return SemiringMatrix(_product_entries(a.entries, b.entries, spec), spec)


def kleene_star(a: SemiringMatrix, max_iter: int | None = None) -> SemiringMatrix:
    """Partial sums of ``I ⊕ A ⊕ A² ⊕ ...`` iterated to exact stabilization.

    Uses ``S ← A ⊙ S ⊕ I`` (so after k steps S holds the sum through A^k).
    Defaults to a budget of ``2·n`` iterations; stabilization is exact
    equality of consecutive iterates.  If the budget is exhausted, one extra
    iteration decides between a late fixed point and divergence.

    Raises
    ------
    DivergenceError
        If the extra iteration still changes an entry (a ⊙-positive cycle).
    """
    if a.rows != a.cols:
        raise ValueError("Kleene star requires a square matrix")
    n = a.rows
    if max_iter is None:
        max_iter = 2 * n
    eye = SemiringMatrix.identity(n, a.spec)
    s = eye
    for _ in range(max_iter):
        nxt = mat_add(mat_mul(a, s), eye)
        if np.array_equal(nxt.entries, s.entries):
            return s
        s = nxt
    nxt = mat_add(mat_mul(a, s), eye)
    if np.array_equal(nxt.entries, s.entries):
        return s
    raise DivergenceError(
        f"Kleene series did not stabilize within {max_iter} iterations; "
        "the matrix has a cycle that keeps improving path weights"
    )


def solve_bellman(
    h: SemiringMatrix,
    f: SemiringMatrix,
    method: str = "jacobi",
    max_iter: int | None = None,
) -> SemiringMatrix:
    """Least solution of the stationary Bellman equation ``X = H ⊙ X ⊕ F``.

    Parameters
    ----------
    h : SemiringMatrix
        Square system matrix.
    f : SemiringMatrix
        Right-hand side with as many rows as ``h``; any number of columns.
    method : str
        ``"jacobi"`` updates all rows simultaneously; ``"gauss-seidel"``
        sweeps rows in ascending index order, each row reading the freshest
        values.  Both stabilize on the same least solution ``H* ⊙ F``.
    max_iter : int, optional
        Iteration (sweep) budget, defaulting to ``2·n``.

    Raises
    ------
    DivergenceError
        If iterates are still changing after the budget plus one extra pass.
    """
    spec = _require_same_spec(h, f)
    if h.rows != h.cols:
        raise ValueError("Bellman system matrix must be square")
    if f.rows != h.rows:
        raise ValueError(f"right-hand side has {f.rows} rows, expected {h.rows}")
    method = method.lower().replace("_", "-")
    if method not in ("jacobi", "gauss-seidel"):
        raise ValueError(f"unknown method {method!r}")
    n = h.rows
    if max_iter is None:
        max_iter = 2 * n

    he = h.entries
    fe = f.entries

    if method == "jacobi":
        def step(x: np.ndarray) -> np.ndarray:
            return spec.add(_product_entries(he, x, spec), fe)
    else:
        def step(x: np.ndarray) -> np.ndarray:
            x = x.copy()
            for i in range(n):
                hx = spec.mul(he[i][:, None], x)
                x[i] = spec.add(_reduce(hx, 0, spec), fe[i])
            return x

    x = fe.copy()
    for _ in range(max_iter):
        nxt = step(x)
        if np.array_equal(nxt, x):
            return SemiringMatrix(x, spec)
        x = nxt
    nxt = step(x)
    if np.array_equal(nxt, x):
        return SemiringMatrix(x, spec)
    raise DivergenceError(
        f"Bellman iteration ({method}) did not stabilize within {max_iter} passes"
    )


# ---------------------------------------------------------------------------
# weighted digraphs as min-plus matrices
# ---------------------------------------------------------------------------

def parse_edge_list(lines, path: str | None = None):
    """Parse ``src dst weight`` lines into a min-plus adjacency matrix.

    Node names are arbitrary whitespace-free tokens, numbered in order of
    first appearance.  Blank lines and lines starting with ``#`` are skipped.
    Parallel edges combine by ⊕ (the smaller weight wins).  Returns
    ``(nodes, w)`` where ``w[i, j]`` is the weight of the lightest edge
    ``nodes[i] → nodes[j]`` and +inf marks an absent edge.

    Raises
    ------
    InputFormatError
        On a malformed line, with its 1-based line number.
    """
    order: dict[str, int] = {}
    edges: list[tuple[int, int, float]] = []
    for lineno, raw in enumerate(lines, start=1):
        text = raw.strip()
        if not text or text.startswith("#"):
            continue
        parts = text.split()
        if len(parts) != 3:
            raise InputFormatError(
                f"expected 'src dst weight', got {text!r}", path=path, line=lineno
            )
        src, dst, wtext = parts
        try:
            weight = float(wtext)
        except ValueError:
            raise InputFormatError(
                f"weight {wtext!r} is not a number", path=path, line=lineno
            ) from None
        if not np.isfinite(weight):
            raise InputFormatError(
                f"edge weight must be finite, got {wtext!r}", path=path, line=lineno
            )
        for name in (src, dst):
            if name not in order:
                order[name] = len(order)
        edges.append((order[src], order[dst], weight))
    if not order:
        raise InputFormatError("edge list contains no edges", path=path)
    nodes = list(order)
    w = np.full((len(nodes), len(nodes)), np.inf)
    for i, j, weight in edges:
        w[i, j] = min(w[i, j], weight)
    return nodes, SemiringMatrix(w, minplus())


def read_edge_list(path):
    """Read a ``src dst weight`` edge-list file.  See :func:`parse_edge_list`."""
    with open(path, "r", encoding="utf-8") as fh:
        return parse_edge_list(fh, path=str(path))


def shortest_path_distances(nodes, w: SemiringMatrix, source: str) -> list[float]:
    """Single-source shortest-path distances on a min-plus adjacency matrix.

    Solves ``X = H ⊙ X ⊕ F`` with ``H`` the transposed adjacency (so row i
    collects edges *into* node i) and ``F`` the indicator column of the
    source.  ``+inf`` marks unreachable nodes.

    Raises
    ------
    ValueError
        If ``source`` is not a known node.
    DivergenceError
        If the graph contains a negative cycle.
    """
    if w.spec != minplus():
        raise ValueError("shortest paths expect a min-plus adjacency matrix")
    try:
        src = nodes.index(source)
    except ValueError:
        raise ValueError(f"unknown source node {source!r}") from None
    h = SemiringMatrix(w.entries.T, minplus())
    f = np.full((len(nodes), 1), np.inf)
    f[src, 0] = 0.0
    x = solve_bellman(h, SemiringMatrix(f, minplus()))
    return [float(v) for v in x.entries[:, 0]]
