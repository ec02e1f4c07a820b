"""Extended-real tropical scalars and the deformation family connecting them.

Three concrete semirings share the carrier conventions of IEEE doubles:

* max-plus: carrier ``R ∪ {-inf}``, ``a ⊕ b = max(a, b)``, ``a ⊙ b = a + b``,
  zero ``-inf``, unit ``0.0``;
* min-plus: carrier ``R ∪ {+inf}``, ``a ⊕ b = min(a, b)``, ``a ⊙ b = a + b``,
  zero ``+inf``, unit ``0.0`` (the order dual of max-plus);
* subtropical(h): the max-plus carrier with the smoothed addition
  ``a ⊕_h b = h·log(exp(a/h) + exp(b/h))`` for a deformation parameter
  ``h > 0``.  As ``h → 0`` the smoothed sum collapses onto ``max``; the gap is
  bounded by ``h·log 2`` and is attained at ``a == b``.

Scalars are plain floats.  The semiring zero ("bottom") is a genuine IEEE
infinity, so absorption and neutrality mostly fall out of float arithmetic;
the one explicit guard is that bottom ⊙ x stays bottom even against an
(invalid) opposite infinity.  Values of the opposite sign of infinity are not
part of a carrier and are rejected by the container types, not by the scalar
operations.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Semiring",
    "maxplus",
    "minplus",
    "subtropical",
    "tropical_add",
    "tropical_mul",
    "subtropical_add",
    "standard_order_leq",
]

_VARIANTS = ("maxplus", "minplus", "subtropical")


def _maybe_float(x):
    """Collapse 0-d results back to plain floats, keep arrays as arrays."""
    if np.ndim(x) == 0:
        return float(x)
    return x


@dataclass(frozen=True)
class Semiring:
    """Descriptor of one scalar semiring: operations, constants, order.

    Use the factories :func:`maxplus`, :func:`minplus` and
    :func:`subtropical` rather than instantiating directly.
    """

    variant: str
    h: float | None = None

    def __post_init__(self):
        if self.variant not in _VARIANTS:
            raise ValueError(f"unknown semiring variant {self.variant!r}")
        if self.variant == "subtropical":
            if self.h is None or not self.h > 0:
                raise ValueError("subtropical deformation requires h > 0")
        elif self.h is not None:
            raise ValueError("h only applies to the subtropical variant")

    # -- constants ---------------------------------------------------------
    @property
    def zero(self) -> float:
        """The neutral element of ⊕ (absorbing for ⊙): -inf or +inf."""
        return math.inf if self.variant == "minplus" else -math.inf

    @property
    def one(self) -> float:
        """The neutral element of ⊙, always 0.0."""
        return 0.0

    @property
    def is_idempotent(self) -> bool:
        return self.variant != "subtropical"

    # -- operations --------------------------------------------------------
    def add(self, a, b):
        """⊕ on scalars or arrays (elementwise)."""
        if self.variant == "maxplus":
            return _maybe_float(np.maximum(a, b))
        if self.variant == "minplus":
            return _maybe_float(np.minimum(a, b))
        return subtropical_add(a, b, self.h)

    def mul(self, a, b):
        """⊙ on scalars or arrays (elementwise): ordinary addition.

        Bottom absorbs explicitly, so ``mul(zero, x) == zero`` even when
        ``x`` is the opposite infinity (which is not a carrier value).
        """
        a_arr = np.asarray(a, dtype=float)
        b_arr = np.asarray(b, dtype=float)
        with np.errstate(invalid="ignore"):
            out = a_arr + b_arr
        bottom = self.zero
        guard = (a_arr == bottom) | (b_arr == bottom)
        if guard.any():
            out = np.where(guard, bottom, out)
        return _maybe_float(out)

    def leq(self, a, b) -> bool:
        """The standard partial order: a ≼ b iff a ⊕ b == b.

        In max-plus this is the usual ≤ with -inf at the bottom; in min-plus
        it is the reversed order with +inf at the bottom.  Arrays compare
        elementwise and the result is the conjunction.  Undefined (raises) for
        the non-idempotent subtropical variant.
        """
        if not self.is_idempotent:
            raise ValueError("standard order requires idempotent addition")
        return bool(np.all(np.asarray(self.add(a, b)) == np.asarray(b, dtype=float)))

    def validate(self, values) -> None:
        """Reject values outside the carrier (NaN, opposite infinity)."""
        v = np.asarray(values, dtype=float)
        if np.isnan(v).any():
            raise ValueError("NaN is not a semiring scalar")
        bad = np.isneginf(v) if self.variant == "minplus" else np.isposinf(v)
        if bad.any():
            opp = "-inf" if self.variant == "minplus" else "+inf"
            raise ValueError(f"{opp} lies outside the {self.variant} carrier")

    def __repr__(self):
        if self.variant == "subtropical":
            return f"Semiring(subtropical, h={self.h!r})"
        return f"Semiring({self.variant})"


_MAXPLUS = Semiring("maxplus")
_MINPLUS = Semiring("minplus")


def maxplus() -> Semiring:
    """The max-plus semiring (R ∪ {-inf}, max, +)."""
    return _MAXPLUS


def minplus() -> Semiring:
    """The min-plus semiring (R ∪ {+inf}, min, +)."""
    return _MINPLUS


def subtropical(h: float) -> Semiring:
    """The smoothed max-plus semiring at deformation parameter ``h > 0``."""
    return Semiring("subtropical", float(h))


def tropical_add(a, b, spec: Semiring):
    """a ⊕ b in the given semiring (elementwise on arrays)."""
    return spec.add(a, b)


def tropical_mul(a, b, spec: Semiring):
    """a ⊙ b in the given semiring (elementwise on arrays)."""
    return spec.mul(a, b)


def subtropical_add(u, v, h: float):
    """Smoothed maximum ``h·log(exp(u/h) + exp(v/h))``, overflow-safe.

    Evaluated as ``max(u, v) + h·log1p(exp(-|u - v|/h))``, which never
    overflows and keeps full precision for large gaps.  Bottom (-inf)
    arguments drop out of the sum, so -inf stays neutral; when both arguments
    are -inf the result is -inf.

    Satisfies ``max(u, v) <= u ⊕_h v <= max(u, v) + h·log 2`` with equality
    on the right exactly at ``u == v``.
    """
    h = float(h)
    if not h > 0:
        raise ValueError("h must be positive")
    u_arr = np.asarray(u, dtype=float)
    v_arr = np.asarray(v, dtype=float)
    hi = np.maximum(u_arr, v_arr)
    lo = np.minimum(u_arr, v_arr)
    with np.errstate(invalid="ignore"):
        gap = hi - lo  # +inf when exactly one side is bottom, NaN when both
        out = hi + h * np.log1p(np.exp(-gap / h))
    out = np.where(np.isneginf(hi), -math.inf, out)
    return _maybe_float(out)


def standard_order_leq(a, b, spec: Semiring) -> bool:
    """a ≼ b in the standard order of an idempotent semiring (a ⊕ b == b)."""
    return spec.leq(a, b)
