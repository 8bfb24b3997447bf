"""Positive definite kernels and validated sample sets.

The kernel zoo:

  sinc       K(s,t) = sin(pi(s-t)) / (pi(s-t)) on the whole real line
  brownian   K(s,t) = min(s,t) for s,t >= 0 (Brownian motion covariance)
  bridge     K(s,t) = min(s,t) - s*t on the open interval (0,1)
  binomial   K(x,y) = sum_{n=0}^{min(x,y)} C(x,n) C(y,n) on the non-negative
             integers, evaluated in exact integer arithmetic
  tabulated  an explicit symmetric table over a finite point set, loaded
             from CSV

Domain checks are strict: out-of-domain arguments raise DomainError rather
than being clamped, since the closed-form identities downstream are only
valid on the stated domains.
"""

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ValidationError

KERNEL_KINDS = ("sinc", "brownian", "bridge", "binomial", "tabulated")

# Below this offset the direct sinc quotient loses digits to cancellation;
# the quadratic Taylor term keeps full double precision.
SINC_GUARD = 1e-8


@dataclass(frozen=True)
class TabulatedTable:
    """Symmetric kernel values over a finite, strictly increasing point set.

    The table is stored once per unordered pair: construction validates that
    the supplied rows are exactly symmetric (zero absolute difference) and
    keeps the mirrored upper triangle.
    """

    points: tuple[float, ...]
    values: tuple[tuple[float, ...], ...]
    source: str | None = None

    def __post_init__(self):
        n = len(self.points)
        if n == 0:
            raise ValidationError("tabulated kernel needs at least one point")
        if any(not math.isfinite(p) for p in self.points):
            raise ValidationError("tabulated points must be finite")
        if any(a >= b for a, b in zip(self.points, self.points[1:])):
            raise ValidationError("tabulated points must be strictly increasing")
        if len(self.values) != n or any(len(row) != n for row in self.values):
            raise ValidationError(f"tabulated table must be {n}x{n} to match its points")
        for i in range(n):
            for j in range(i + 1, n):
                if self.values[i][j] != self.values[j][i]:
                    raise ValidationError(
                        f"tabulated table must be exactly symmetric; "
                        f"entries ({i},{j}) and ({j},{i}) differ"
                    )

    def index_of(self, t: float) -> int:
        for i, p in enumerate(self.points):
            if p == t:
                return i
        raise DomainError(f"point {t!r} is not in the tabulated point set")

    @classmethod
    def from_rows(cls, points, rows, source=None) -> "TabulatedTable":
        pts = tuple(float(p) for p in points)
        n = len(pts)
        body = [[float(v) for v in row] for row in rows]
        if len(body) != n or any(len(r) != n for r in body):
            raise ValidationError(f"tabulated table must be {n}x{n} to match its points")
        # mirror the upper triangle after the symmetry check in __post_init__
        for i in range(n):
            for j in range(i):
                if body[i][j] != body[j][i]:
                    raise ValidationError(
                        f"tabulated table must be exactly symmetric; "
                        f"entries ({i},{j}) and ({j},{i}) differ"
                    )
                body[i][j] = body[j][i]
        return cls(points=pts, values=tuple(tuple(r) for r in body), source=source)

    @classmethod
    def from_csv(cls, path: str) -> "TabulatedTable":
        """Load a table from CSV: header row of points, then the symmetric body."""
        try:
            with open(path, newline="") as fh:
                rows = [row for row in csv.reader(fh) if row]
        except OSError as exc:
            raise ValidationError(f"cannot read tabulated kernel file {path!r}: {exc}")
        if not rows:
            raise ValidationError(f"tabulated kernel file {path!r} is empty")
        try:
            points = [float(v) for v in rows[0]]
            body = [[float(v) for v in row] for row in rows[1:]]
        except ValueError as exc:
            raise ValidationError(f"non-numeric entry in tabulated kernel file {path!r}: {exc}")
        return cls.from_rows(points, body, source=path)


@dataclass(frozen=True)
class KernelSpec:
    """Which kernel to evaluate; for kind 'tabulated' carries the value table."""

    kind: str
    table: TabulatedTable | None = field(default=None)

    def __post_init__(self):
        if self.kind not in KERNEL_KINDS:
            raise ValidationError(
                f"unknown kernel kind {self.kind!r}; expected one of {', '.join(KERNEL_KINDS)}"
            )
        if (self.kind == "tabulated") != (self.table is not None):
            raise ValidationError("a value table is required exactly when kind is 'tabulated'")

    @classmethod
    def sinc(cls):
        return cls("sinc")

    @classmethod
    def brownian(cls):
        return cls("brownian")

    @classmethod
    def bridge(cls):
        return cls("bridge")

    @classmethod
    def binomial(cls):
        return cls("binomial")

    @classmethod
    def tabulated(cls, table: TabulatedTable):
        return cls("tabulated", table)

    def to_text(self) -> str:
        """Serialize to the text form accepted by parse_kernel."""
        if self.kind == "tabulated":
            if self.table.source is None:
                raise ValidationError("tabulated kernel has no source path to serialize")
            return f"tabulated:{self.table.source}"
        return self.kind


def parse_kernel(text: str) -> KernelSpec:
    """Parse 'sinc | brownian | bridge | binomial | tabulated:<path>'."""
    if text.startswith("tabulated:"):
        return KernelSpec.tabulated(TabulatedTable.from_csv(text[len("tabulated:"):]))
    if text in ("sinc", "brownian", "bridge", "binomial"):
        return KernelSpec(text)
    raise ValidationError(
        f"unknown kernel {text!r}; expected sinc | brownian | bridge | binomial | tabulated:<path>"
    )


@dataclass(frozen=True)
class SampleSet:
    """Finite, non-empty, strictly increasing sequence of sample points."""

    points: tuple[float, ...]

    def __post_init__(self):
        if len(self.points) == 0:
            raise ValidationError("sample set must be non-empty")
        if any(not math.isfinite(p) for p in self.points):
            raise ValidationError("sample points must be finite")
        for i, (a, b) in enumerate(zip(self.points, self.points[1:])):
            if a >= b:
                raise ValidationError(
                    f"sample points must be strictly increasing; "
                    f"points[{i}]={a!r} >= points[{i + 1}]={b!r}"
                )

    @classmethod
    def of(cls, values) -> "SampleSet":
        return cls(tuple(float(v) for v in values))

    def __len__(self) -> int:
        return len(self.points)

    def prefix(self, n: int) -> "SampleSet":
        if not 1 <= n <= len(self.points):
            raise ValidationError(f"prefix length {n} outside 1..{len(self.points)}")
        return SampleSet(self.points[:n])

    def as_array(self) -> np.ndarray:
        return np.asarray(self.points, dtype=float)


def check_domain(spec: KernelSpec, t: float) -> None:
    """Raise DomainError unless t is a legal argument for the kernel."""
    if not math.isfinite(t):
        raise DomainError(f"kernel argument must be finite, got {t!r}")
    if spec.kind == "brownian":
        if t < 0:
            raise DomainError(f"brownian kernel requires arguments >= 0, got {t!r}")
    elif spec.kind == "bridge":
        if not 0 < t < 1:
            raise DomainError(f"bridge kernel requires arguments in the open (0,1), got {t!r}")
    elif spec.kind == "binomial":
        if t < 0 or t != int(t):
            raise DomainError(f"binomial kernel requires non-negative integer arguments, got {t!r}")
    elif spec.kind == "tabulated":
        spec.table.index_of(float(t))
    # sinc: any finite real


def validate_sample_set(spec: KernelSpec, s: SampleSet) -> None:
    """Check every point of s against the kernel's domain.

    Brownian motion additionally requires strictly positive points: the point
    0 makes every Gram containing it singular (its kernel section vanishes).
    """
    for p in s.points:
        check_domain(spec, p)
    if spec.kind == "brownian" and s.points[0] <= 0:
        raise DomainError("brownian sample sets require strictly positive points")


def binom(x: int, n: int) -> int:
    """Exact binomial coefficient C(x, n); returns 0 when n > x.

    Arbitrary-precision integer arithmetic, so no overflow is possible and no
    capacity ceiling applies here (the Pascal matrix builders enforce their
    own documented order ceiling).
    """
    x, n = _as_nonneg_int(x, "x"), _as_nonneg_int(n, "n")
    if n > x:
        return 0
    return math.comb(x, n)


def _as_nonneg_int(v, name: str) -> int:
    if isinstance(v, float):
        if not v.is_integer():
            raise DomainError(f"{name} must be a non-negative integer, got {v!r}")
        v = int(v)
    if not isinstance(v, int) or v < 0:
        raise DomainError(f"{name} must be a non-negative integer, got {v!r}")
    return v


def sinc_pi(x: float) -> float:
    """sin(pi x)/(pi x) with the removable singularity filled in near 0.

    Nonzero integer arguments return 0.0 exactly: those are true zeros of
    the function, and library sin(pi*k) would leave ~1e-16 residue that a
    Gram over integer nodes should not carry.
    """
    if abs(x) < SINC_GUARD:
        return 1.0 - (math.pi * x) ** 2 / 6.0
    if float(x).is_integer():
        return 0.0
    px = math.pi * x
    return math.sin(px) / px


def eval_kernel(spec: KernelSpec, s: float, t: float):
    """Evaluate K(s, t). Exact integer for the binomial kernel, float otherwise.

    Symmetric in (s, t) bit-for-bit; out-of-domain arguments raise DomainError.
    """
    if spec.kind == "binomial":
        xi = _as_nonneg_int(s, "s")
        yi = _as_nonneg_int(t, "t")
        return sum(math.comb(xi, n) * math.comb(yi, n) for n in range(min(xi, yi) + 1))
    check_domain(spec, s)
    check_domain(spec, t)
    if spec.kind == "sinc":
        return sinc_pi(s - t)
    if spec.kind == "brownian":
        return float(min(s, t))
    if spec.kind == "bridge":
        return min(s, t) - s * t
    # tabulated
    return spec.table.values[spec.table.index_of(float(s))][spec.table.index_of(float(t))]


def check_positive_definite(spec: KernelSpec, s: SampleSet, tol: float):
    """Smallest Gram eigenvalue over s and the flag (min_eigenvalue >= -tol).

    Pure diagnostic: builds the Gram locally, never caches anything.
    """
    validate_sample_set(spec, s)
    n = len(s)
    g = np.empty((n, n), dtype=float)
    for i, p in enumerate(s.points):
        for j in range(i, n):
            g[i, j] = g[j, i] = float(eval_kernel(spec, p, s.points[j]))
    min_eig = float(np.linalg.eigvalsh(g)[0])
    return (min_eig >= -tol, min_eig)
