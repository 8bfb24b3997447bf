"""Gram matrices, SPD solves, closed-form determinants, and Pascal algebra.

Every closed form here doubles as a test oracle against an independent dense
code path:

  det_brownian_closed / det_bridge_closed   product formulas, checked against
                                            a partial-pivot LU determinant
  pascal_lower / pascal_inverse             exact integer Pascal triangles with
                                            an exact alternating-sign inverse
  binomial_gram_inverse                     inverse binomial Gram assembled
                                            from the exact Pascal inverse

Continuous kernels live in IEEE doubles; binomial Gram entries are exact
Python integers, converted to doubles only at the linear-algebra boundary.
"""

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import CapacityError, SingularMatrixError, ValidationError
from .kernels import KernelSpec, SampleSet, eval_kernel, validate_sample_set

# Pivots at or below this are treated as a singular/indefinite factorization.
# An absolute floor (rather than one relative to the diagonal) is deliberate:
# binomial Grams have unit pivots under a diagonal of ~1e14 and must factor,
# while near-duplicate desk-scale points produce pivots ~1e-14 and must not.
# Data scaled so that legitimate pivots fall below 1e-12 is unsupported.
PIVOT_FLOOR = 1e-12

# Documented ceiling for the Pascal-matrix builders.  The integer arithmetic
# itself is arbitrary precision; the ceiling keeps every advertised product
# and inverse within the exactly-tested range.
PASCAL_CAPACITY = 60


@dataclass(frozen=True)
class GramMatrix:
    """Symmetric kernel Gram matrix K[i,j] = K(points[i], points[j]).

    `entries` is the float64 form used by all linear algebra and is frozen
    (non-writeable).  For the binomial kernel `exact_entries` additionally
    holds the same matrix as exact integers.  The Cholesky factor is cached
    on first use; recomputation is idempotent, so the lazy cache is safe
    under concurrent readers.
    """

    spec: KernelSpec
    sample_set: SampleSet
    entries: np.ndarray
    exact_entries: tuple[tuple[int, ...], ...] | None = field(default=None)

    def __post_init__(self):
        self.entries.flags.writeable = False
        object.__setattr__(self, "_chol", None)

    @property
    def order(self) -> int:
        return self.entries.shape[0]

    def cholesky(self) -> np.ndarray:
        cached = object.__getattribute__(self, "_chol")
        if cached is None:
            cached = cholesky_factor(self.entries)
            object.__setattr__(self, "_chol", cached)
        return cached


def build_gram(spec: KernelSpec, s: SampleSet) -> GramMatrix:
    """Full symmetric Gram matrix of the kernel over the sample set."""
    validate_sample_set(spec, s)
    n = len(s)
    pts = s.points
    if spec.kind == "binomial":
        exact = tuple(
            tuple(eval_kernel(spec, pts[i], pts[j]) for j in range(n)) for i in range(n)
        )
        entries = np.array(exact, dtype=float)
        return GramMatrix(spec, s, entries, exact_entries=exact)
    entries = np.empty((n, n), dtype=float)
    for i in range(n):
        for j in range(i, n):
            entries[i, j] = entries[j, i] = eval_kernel(spec, pts[i], pts[j])
    return GramMatrix(spec, s, entries)


def cholesky_factor(a: np.ndarray) -> np.ndarray:
    """Lower-triangular L with L L^T = a, or SingularMatrixError.

    Column-by-column elimination so the failing pivot index is visible.
    No jitter is ever added; callers wanting Tikhonov damping must add it
    explicitly.
    """
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    lower = np.zeros_like(a)
    for j in range(n):
        d = a[j, j] - lower[j, :j] @ lower[j, :j]
        if not d > PIVOT_FLOOR:
            raise SingularMatrixError(
                f"matrix is singular or indefinite: pivot {d:.3e} at index {j} "
                f"(floor {PIVOT_FLOOR:.0e})",
                pivot_index=j,
            )
        ljj = math.sqrt(d)
        lower[j, j] = ljj
        if j + 1 < n:
            lower[j + 1:, j] = (a[j + 1:, j] - lower[j + 1:, :j] @ lower[j, :j]) / ljj
    return lower


def cholesky_solve(a: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Solve a @ v = rhs for SPD a via fresh factorization plus substitution."""
    lower = cholesky_factor(a)
    return _substitute(lower, rhs)


def _substitute(lower: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    y = scipy.linalg.solve_triangular(lower, np.asarray(rhs, dtype=float), lower=True)
    return scipy.linalg.solve_triangular(lower.T, y, lower=False)


def solve_spd(g: GramMatrix, rhs) -> np.ndarray:
    """Solve G v = rhs through the cached SPD triangular factorization."""
    rhs = np.asarray(rhs, dtype=float)
    if rhs.shape != (g.order,):
        raise ValidationError(f"rhs length {rhs.shape} does not match Gram order {g.order}")
    return _substitute(g.cholesky(), rhs)


def det_lu(matrix) -> float:
    """Determinant via partial-pivot LU; the dense oracle side of the closed forms."""
    if isinstance(matrix, GramMatrix):
        matrix = matrix.entries
    a = np.asarray(matrix, dtype=float)
    lu, piv = scipy.linalg.lu_factor(a, check_finite=False)
    sign = 1.0 if np.count_nonzero(piv != np.arange(a.shape[0])) % 2 == 0 else -1.0
    return sign * float(np.prod(np.diag(lu)))


def det_brownian_closed(s: SampleSet) -> float:
    """x1 (x2-x1) ... (xn-x_{n-1}) for strictly positive increasing points."""
    validate_sample_set(KernelSpec.brownian(), s)
    pts = s.points
    det = pts[0]
    for a, b in zip(pts, pts[1:]):
        det *= b - a
    return det


def det_bridge_closed(s: SampleSet) -> float:
    """x1 (x2-x1) ... (xn-x_{n-1}) (1-xn) for points inside (0,1)."""
    validate_sample_set(KernelSpec.bridge(), s)
    pts = s.points
    det = pts[0]
    for a, b in zip(pts, pts[1:]):
        det *= b - a
    return det * (1.0 - pts[-1])


@dataclass(frozen=True)
class PascalMatrix:
    """Exact lower-triangular Pascal matrix: entry (x, y) = C(x, y)."""

    order: int
    entries: tuple[tuple[int, ...], ...]


def _check_pascal_order(n) -> int:
    if isinstance(n, float):
        if not n.is_integer():
            raise ValidationError(f"order must be a non-negative integer, got {n!r}")
        n = int(n)
    if not isinstance(n, int) or n < 0:
        raise ValidationError(f"order must be a non-negative integer, got {n!r}")
    if n > PASCAL_CAPACITY:
        raise CapacityError(
            f"order {n} exceeds the documented Pascal capacity ceiling {PASCAL_CAPACITY}"
        )
    return n


def pascal_lower(n: int) -> PascalMatrix:
    """(n+1) x (n+1) lower-triangular Pascal matrix as exact integers."""
    n = _check_pascal_order(n)
    rows = tuple(
        tuple(math.comb(x, y) if y <= x else 0 for y in range(n + 1)) for x in range(n + 1)
    )
    return PascalMatrix(order=n, entries=rows)


def pascal_inverse(n: int) -> tuple[tuple[int, ...], ...]:
    """Exact inverse of pascal_lower(n): entry (x, y) = (-1)^(x-y) C(x, y)."""
    n = _check_pascal_order(n)
    return tuple(
        tuple((-1) ** (x - y) * math.comb(x, y) if y <= x else 0 for y in range(n + 1))
        for x in range(n + 1)
    )


def binomial_gram_inverse_exact(n: int) -> tuple[tuple[int, ...], ...]:
    """Exact integer inverse of the binomial Gram over {0..n}.

    Assembled as (L^T)^-1 (L)^-1 from the exact Pascal inverse, so the
    diagonal entry at x is sum_{k=x}^{n} C(k,x)^2.
    """
    linv = pascal_inverse(n)
    m = n + 1
    return tuple(
        tuple(sum(linv[k][x] * linv[k][y] for k in range(max(x, y), m)) for y in range(m))
        for x in range(m)
    )


def binomial_gram_inverse(n: int) -> np.ndarray:
    """Float view of the exact binomial Gram inverse over {0..n}."""
    return np.array(binomial_gram_inverse_exact(n), dtype=float)


def gram_to_csv(g: GramMatrix) -> str:
    """Rows of the full symmetric matrix, one CSV line per row."""
    lines = [",".join(repr(v) for v in row) for row in g.entries.tolist()]
    return "\n".join(lines) + "\n"


def gram_report(g: GramMatrix) -> dict:
    """JSON-ready report: order, points, entries, and both determinant routes."""
    if g.spec.kind == "brownian":
        det_closed = det_brownian_closed(g.sample_set)
    elif g.spec.kind == "bridge":
        det_closed = det_bridge_closed(g.sample_set)
    else:
        det_closed = None
    return {
        "order": g.order,
        "points": list(g.sample_set.points),
        "entries": g.entries.tolist(),
        "det_closed": det_closed,
        "det_lu": det_lu(g),
    }
