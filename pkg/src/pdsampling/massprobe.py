"""Discrete-mass probes: does a point evaluation carry finite dual norm?

For a kernel K and a countable point set V, the squared dual norm of the
evaluation functional at x = V[i] over the first n points is

    q_n = (K_n^{-1} e_x)(x),

the x-diagonal entry of the inverse truncated Gram.  The sequence q_n is
non-decreasing; a finite sup means the point mass at x embeds in the sampled
function space with that norm, an unbounded one means it does not.  Brownian
and bridge kernels stabilize after one extra neighbor (closed forms below);
the binomial kernel diverges for every target, and the probe machinery is
generic enough to report either behavior with the closed forms as oracles.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import SingularMatrixError, ValidationError
from .gram import PIVOT_FLOOR, build_gram, cholesky_solve
from .kernels import KernelSpec, SampleSet, binom, eval_kernel, validate_sample_set

REL_INCREMENT_THRESHOLD = 1e-10
VERDICT_WINDOW = 5
DIVERGENCE_FACTOR = 1.5
MONOTONE_SLACK = 1e-12


@dataclass(frozen=True)
class Verdict:
    """Trend call on a probe sequence: bounded, diverging, or inconclusive."""

    kind: str
    limit: float | None = None

    def __post_init__(self):
        if self.kind not in ("bounded", "diverging", "inconclusive"):
            raise ValidationError(f"unknown verdict kind {self.kind!r}")
        if self.kind == "bounded" and self.limit is None:
            raise ValidationError("bounded verdict requires a limit value")


@dataclass(frozen=True)
class MassProbeReport:
    kernel: KernelSpec
    v_prefix: SampleSet
    target_index: int
    norms: tuple[float, ...]
    verdict: Verdict
    closed_form: float | None


def _check_index(name: str, value, upper: int) -> int:
    if isinstance(value, float):
        if not value.is_integer():
            raise ValidationError(f"{name} must be an integer, got {value!r}")
        value = int(value)
    if not isinstance(value, int) or value < 0 or value >= upper:
        raise ValidationError(f"{name} must be an integer in [0, {upper}), got {value!r}")
    return value


def projection_norm_sequence(
    spec: KernelSpec, v: SampleSet, x_index: int, n_max: int
) -> list[float]:
    """Squared projected norms of the point evaluation at v[x_index].

    Entry n-1 (prefix length n, n = 1..n_max) is the x-diagonal of the
    inverse Gram over the first n points.  While the prefix does not yet
    contain the target point the restricted functional is identically zero,
    so those entries are exactly 0.  Each prefix is solved against the same
    full Gram's leading principal submatrix.
    """
    validate_sample_set(spec, v)
    if isinstance(n_max, float) and n_max.is_integer():
        n_max = int(n_max)
    if not isinstance(n_max, int) or n_max < 1 or n_max > len(v):
        raise ValidationError(f"n_max must be in [1, {len(v)}], got {n_max!r}")
    x_index = _check_index("x_index", x_index, n_max)
    g = build_gram(spec, v.prefix(n_max))
    norms = []
    for n in range(1, n_max + 1):
        if n <= x_index:
            norms.append(0.0)
            continue
        if n == 1:
            # 1x1 inverse, taken literally so the reciprocal is exact; the
            # factorization's pivot floor still gates degenerate diagonals.
            d = float(g.entries[0, 0])
            if not d > PIVOT_FLOOR:
                raise SingularMatrixError(
                    f"1x1 Gram diagonal {d!r} at or below pivot floor", pivot_index=0
                )
            norms.append(1.0 / d)
            continue
        rhs = np.zeros(n)
        rhs[x_index] = 1.0
        z = cholesky_solve(g.entries[:n, :n], rhs)
        norms.append(float(z[x_index]))
    return norms


def brownian_delta_norm_closed(v: SampleSet, i: int) -> float:
    """Stabilized squared norm of the point mass at v[i] under min(s,t).

    First point: x2/(x1 (x2-x1)).  Interior point:
    (x_{i+1}-x_{i-1})/((x_i-x_{i-1})(x_{i+1}-x_i)).  The last point keeps
    growing as later points arrive, so it has no stabilized value.
    """
    validate_sample_set(KernelSpec.brownian(), v)
    n = len(v)
    i = _check_index("i", i, n)
    pts = v.points
    if i == n - 1:
        raise ValidationError(
            "last-point norm does not stabilize; need a neighbor beyond index "
            f"{i}"
        )
    if i == 0:
        return pts[1] / (pts[0] * (pts[1] - pts[0]))
    return (pts[i + 1] - pts[i - 1]) / ((pts[i] - pts[i - 1]) * (pts[i + 1] - pts[i]))


def bridge_delta_norm_closed(v: SampleSet, i: int) -> float:
    """Same stabilized norm for min(s,t) - st on (0,1); interior indices only.

    Blows up as the point approaches 1, where the bridge pins to zero.
    """
    validate_sample_set(KernelSpec.bridge(), v)
    n = len(v)
    i = _check_index("i", i, n)
    if i == 0 or i == n - 1:
        raise ValidationError(f"index {i} needs neighbors on both sides")
    pts = v.points
    return (pts[i + 1] - pts[i - 1]) / ((pts[i + 1] - pts[i]) * (pts[i] - pts[i - 1]))


def binomial_projection_norm_closed(x: int, n: int) -> int:
    """Exact sum_{k=x}^{n} C(k,x)^2, the probe value for target x at depth n.

    Strictly increasing in n without bound: under the binomial kernel no
    point evaluation has finite mass.
    """
    if isinstance(x, float) and x.is_integer():
        x = int(x)
    if isinstance(n, float) and n.is_integer():
        n = int(n)
    if not isinstance(x, int) or x < 0:
        raise ValidationError(f"target must be a non-negative integer, got {x!r}")
    if not isinstance(n, int) or n < x:
        raise ValidationError(f"depth must be an integer >= {x}, got {n!r}")
    return sum(binom(k, x) ** 2 for k in range(x, n + 1))


def mass_verdict(
    norms,
    closed_form: float | None = None,
    rel_increment_threshold: float = REL_INCREMENT_THRESHOLD,
    window: int = VERDICT_WINDOW,
) -> Verdict:
    """Classify a non-decreasing probe sequence by its tail behavior.

    Looks at the last `window` terms.  All relative increments at or below
    the threshold (and agreement with the closed form when one is supplied)
    is bounded.  Diverging means the window is strictly growing at every
    step and multiplies by at least the geometric divergence factor across
    the window.  Anything else, including a sequence shorter than the
    window, is inconclusive.
    """
    norms = [float(v) for v in norms]
    for a, b in zip(norms, norms[1:]):
        if b < a - MONOTONE_SLACK * max(1.0, abs(a)):
            raise ValidationError(
                f"probe sequence must be non-decreasing, saw {a!r} then {b!r}"
            )
    if len(norms) < window:
        return Verdict(kind="inconclusive")
    tail = norms[-window:]
    increments_small = all(
        b - a <= rel_increment_threshold * max(1.0, abs(a))
        for a, b in zip(tail, tail[1:])
    )
    if increments_small:
        last = tail[-1]
        if closed_form is not None and not (
            abs(last - closed_form) <= 1e-8 * abs(closed_form)
        ):
            return Verdict(kind="inconclusive")
        return Verdict(kind="bounded", limit=last)
    strictly_growing = all(b > a for a, b in zip(tail, tail[1:]))
    if strictly_growing and tail[0] > 0.0 and tail[-1] / tail[0] >= DIVERGENCE_FACTOR:
        return Verdict(kind="diverging")
    return Verdict(kind="inconclusive")


def membership_probe(spec: KernelSpec, v: SampleSet, f_values, n_max) -> list[float]:
    """Projected-norm sequence f_n^T K_n^{-1} f_n of sampled data.

    A bounded sup certifies the samples are consistent with some function of
    the kernel space restricted to v, with squared norm at most that sup.
    """
    validate_sample_set(spec, v)
    if isinstance(n_max, float) and n_max.is_integer():
        n_max = int(n_max)
    if not isinstance(n_max, int) or n_max < 1 or n_max > len(v):
        raise ValidationError(f"n_max must be in [1, {len(v)}], got {n_max!r}")
    f = np.asarray([float(t) for t in f_values], dtype=float)
    if f.size < n_max:
        raise ValidationError(f"{f.size} sample values for prefix length {n_max}")
    g = build_gram(spec, v.prefix(n_max))
    out = []
    for n in range(1, n_max + 1):
        z = cholesky_solve(g.entries[:n, :n], f[:n])
        out.append(float(f[:n] @ z))
    return out


def _auto_closed_form(spec: KernelSpec, v: SampleSet, x_index: int) -> float | None:
    pts = v.points
    n = len(v)
    if spec.kind == "brownian":
        if x_index < n - 1:
            return brownian_delta_norm_closed(v, x_index)
        return None
    if spec.kind == "bridge":
        if 0 < x_index < n - 1:
            return bridge_delta_norm_closed(v, x_index)
        return None
    if spec.kind == "binomial":
        if all(float(p) == k for k, p in enumerate(pts)):
            return float(binomial_projection_norm_closed(int(pts[x_index]), n - 1))
        return None
    return None


def probe_report(
    spec: KernelSpec, v: SampleSet, x_index: int, n_max: int | None = None
) -> MassProbeReport:
    """Run the projection probe and wrap norms, verdict, and oracle together.

    A Gram that turns singular after at least one successful prefix ends the
    sequence there with a diverging verdict (no finite mass); singular on the
    very first prefix is an input problem and propagates.
    """
    if n_max is None:
        n_max = len(v)
    vp = v.prefix(n_max) if n_max <= len(v) else v
    closed = _auto_closed_form(spec, vp, x_index) if x_index < len(vp) else None
    try:
        norms = projection_norm_sequence(spec, v, x_index, n_max)
    except SingularMatrixError as exc:
        if exc.pivot_index is None or exc.pivot_index <= x_index:
            raise
        truncated = projection_norm_sequence(spec, v, x_index, exc.pivot_index)
        return MassProbeReport(
            kernel=spec,
            v_prefix=vp,
            target_index=x_index,
            norms=tuple(truncated),
            verdict=Verdict(kind="diverging"),
            closed_form=closed,
        )
    verdict = mass_verdict(norms, closed_form=closed)
    return MassProbeReport(
        kernel=spec,
        v_prefix=vp,
        target_index=x_index,
        norms=tuple(norms),
        verdict=verdict,
        closed_form=closed,
    )


def probe_to_csv(norms) -> str:
    """CSV rows (n, norm), one per prefix length, for plotting."""
    return "\n".join(f"{n + 1},{repr(float(v))}" for n, v in enumerate(norms)) + "\n"


def report_json(report: MassProbeReport) -> dict:
    """JSON-ready view of a MassProbeReport."""
    verdict: dict = {"kind": report.verdict.kind}
    if report.verdict.limit is not None:
        verdict["limit"] = report.verdict.limit
    return {
        "kernel": report.kernel.to_text(),
        "V_prefix": list(report.v_prefix.points),
        "target_index": report.target_index,
        "norms": list(report.norms),
        "verdict": verdict,
        "closed_form": report.closed_form,
    }
