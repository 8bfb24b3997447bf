"""Sampling viewed as a frame: analysis, synthesis, bounds, and defects.

The sample map takes a function to its values on the sample set; its adjoint
sends coefficients to a kernel combination.  Over a finite sample set the
frame bounds of the sampled system are the extreme eigenvalue reciprocals of
the Gram matrix, and for integer sinc sampling the diagonal reproducing
identity K(t,t) = sum_s K(t,s)^2 holds exactly in the infinite limit, so its
truncated defect is a quality measure with an explicit tail bound.
"""

from dataclasses import dataclass

import numpy as np

from .errors import SingularMatrixError, ValidationError
from .gram import GramMatrix, build_gram, solve_spd
from .kernels import (
    KernelSpec,
    SampleSet,
    check_domain,
    eval_kernel,
    validate_sample_set,
)


@dataclass(frozen=True)
class FrameReport:
    """Frame diagnostics for one kernel/sample-set pair over a probe grid.

    lower_bound/upper_bound are the truncated frame constants (None when the
    caller skipped the eigenvalue pass), parseval_defect the worst diagonal
    reproducing-identity defect over the grid, and tail_bound the analytic
    truncation tail, available only for sinc sampling on integers.
    """

    lower_bound: float | None
    upper_bound: float | None
    parseval_defect: float
    truncation: SampleSet
    probe_grid: tuple[float, ...]
    tail_bound: float | None = None


@dataclass(frozen=True)
class CoefficientFunction:
    """Finite kernel combination t -> sum_i coefficients[i] * K(t, points[i]).

    Evaluation accumulates strictly left to right in index order, so two
    calls with identical inputs are bit-for-bit reproducible.
    """

    spec: KernelSpec
    sample_set: SampleSet
    coefficients: tuple[float, ...]

    def __post_init__(self):
        if len(self.coefficients) != len(self.sample_set):
            raise ValidationError(
                f"{len(self.coefficients)} coefficients for "
                f"{len(self.sample_set)} sample points"
            )

    def __call__(self, t: float) -> float:
        check_domain(self.spec, t)
        acc = 0.0
        for c, s in zip(self.coefficients, self.sample_set.points):
            acc = acc + c * eval_kernel(self.spec, t, s)
        return acc


def analysis(spec: KernelSpec, s: SampleSet, f) -> np.ndarray:
    """Sample map: evaluate f at each sample point, in index order."""
    validate_sample_set(spec, s)
    return np.array([float(f(p)) for p in s.points], dtype=float)


def synthesis(spec: KernelSpec, s: SampleSet, coefficients) -> CoefficientFunction:
    """Adjoint of the sample map: coefficients to a kernel combination."""
    coefficients = tuple(float(c) for c in coefficients)
    return CoefficientFunction(spec, s, coefficients)


def _bounds_of(g: GramMatrix) -> tuple[float, float]:
    # The factorization is the package-wide singularity gate (pivot floor,
    # index payload); run it before the eigensolve.
    g.cholesky()
    eigs = np.linalg.eigvalsh(g.entries)
    lo, hi = float(eigs[0]), float(eigs[-1])
    if lo <= 0.0:
        raise SingularMatrixError(
            f"Gram matrix has non-positive eigenvalue {lo:.3e}; frame bounds undefined"
        )
    return 1.0 / hi, 1.0 / lo


def frame_bounds_truncated(spec: KernelSpec, s: SampleSet) -> tuple[float, float]:
    """(a, b) with a |f|_samples^2 <= |f|^2 <= b |f|_samples^2 on the span.

    a = 1/lambda_max(G) and b = 1/lambda_min(G) over the truncated span:
    with f = sum c_s K(., s), the two quadratic forms are c'Gc and c'G^2c,
    and these are the extreme Rayleigh-quotient ratios.  A non-positive
    smallest eigenvalue means the sampled system is degenerate and there is
    no finite upper bound, reported as a singular-matrix failure.
    """
    return _bounds_of(build_gram(spec, s))


def _sinc_integer_tail(s: SampleSet, grid) -> float | None:
    """Analytic truncation tail for integer sinc sampling, else None.

    With samples covering the integers of [-N, N] and |t| < N, the discarded
    diagonal mass sum_{|s|>N} K(t,s)^2 is below 2 / (pi^2 (N - max|t|)).
    """
    pts = s.points
    if not all(float(p).is_integer() for p in pts):
        return None
    n_eff = min(-pts[0], pts[-1])
    t_max = max(abs(float(t)) for t in grid)
    if n_eff <= t_max:
        return None
    return 2.0 / (np.pi**2 * (n_eff - t_max))


def parseval_defect(
    spec: KernelSpec,
    s: SampleSet,
    grid,
    tail_budget: float | None = None,
    include_bounds: bool = False,
) -> FrameReport:
    """Worst diagonal reproducing-identity defect of the truncated system.

    For each grid point t computes |K(t,t) - sum_s K(t,s)^2| and reports the
    maximum.  For integer sinc sampling the analytic tail bound is attached;
    when tail_budget is given, a tail bound above it is rejected.  The
    eigenvalue-based frame bounds run only when include_bounds is set, since
    they cost a dense symmetric eigensolve.
    """
    grid = [float(t) for t in grid]
    if not grid:
        raise ValidationError("probe grid must contain at least one point")
    for t in grid:
        check_domain(spec, t)
    pts = s.points
    defect = 0.0
    for t in grid:
        total = 0.0
        for p in pts:
            v = eval_kernel(spec, t, p)
            total = total + v * v
        defect = max(defect, abs(eval_kernel(spec, t, t) - total))
    tail = _sinc_integer_tail(s, grid) if spec.kind == "sinc" else None
    if tail_budget is not None:
        if tail is None:
            raise ValidationError(
                "tail budget given but no analytic tail bound applies "
                "(needs sinc kernel, integer samples, grid inside the sampled range)"
            )
        if tail > tail_budget:
            raise ValidationError(
                f"truncation tail bound {tail:.3e} exceeds budget {tail_budget:.3e}"
            )
    lower = upper = None
    if include_bounds:
        lower, upper = _bounds_of(build_gram(spec, s))
    return FrameReport(
        lower_bound=lower,
        upper_bound=upper,
        parseval_defect=defect,
        truncation=s,
        probe_grid=tuple(grid),
        tail_bound=tail,
    )


def reconstruct(spec: KernelSpec, s: SampleSet, samples, t: float) -> float:
    """Value at t of the kernel combination whose coefficients are the samples.

    For sinc sampling on integers this is the classical cardinal-series
    reconstruction truncated to the sample set.
    """
    return synthesis(spec, s, samples)(t)


def dual_frame_coefficients(spec: KernelSpec, s: SampleSet, samples) -> CoefficientFunction:
    """Interpolating kernel combination: synthesis of G^{-1} samples.

    Evaluating the result at each sample point reproduces the input samples
    (to solver accuracy), since the sample map composed with synthesis acts
    as the Gram matrix on coefficients.
    """
    c = solve_spd(build_gram(spec, s), samples)
    return synthesis(spec, s, c)


def frame_report_json(report: FrameReport) -> dict:
    """JSON-ready view of a FrameReport.

    "N" is the symmetric integer radius when the sample set is exactly the
    integers of [-N, N]; otherwise it is the sample count.
    """
    pts = report.truncation.points
    if (
        all(float(p).is_integer() for p in pts)
        and pts[0] < 0 < pts[-1]
        and -pts[0] == pts[-1]
        and len(pts) == int(pts[-1] - pts[0]) + 1
    ):
        n = int(pts[-1])
    else:
        n = len(pts)
    return {
        "a": report.lower_bound,
        "b": report.upper_bound,
        "defect": report.parseval_defect,
        "tail_bound": report.tail_bound,
        "N": n,
        "grid": list(report.probe_grid),
    }
