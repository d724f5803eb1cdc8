"""Perimeter minimization over polygons with fixed angles.

``minimize`` runs projected gradient descent on the manifold of closed
convex polygons: the gradient of the perimeter (the all-ones vector) is
projected on the tangent space, a step is taken with Armijo backtracking
and the result is projected back onto the manifold by Newton's method.
``verify_theorem`` checks numerically that the polygon with an inscribed
circle is the unique minimizer. ``boundary_direction`` builds the
perimeter-decreasing deformation that pushes a polygon with collapsed
edges into the interior.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from hyperpolygon._tolerances import COPLANARITY_TOL
from hyperpolygon.angles import AngleSpec, as_angle_spec
from hyperpolygon.exceptions import (
    ConvexityViolation,
    GeometryError,
    HitBoundary,
    InvalidInput,
    LeftDomain,
    NotConvex,
    NotCoplanar,
    NotOnManifold,
    ProjectionFailed,
    SamplingFailed,
)
from hyperpolygon.incircle import criticality_residual, solve
from hyperpolygon.polygon import (
    ZERO_LENGTH,
    _newton_close,
    build,
    perimeter,
    project,
    sample,
    tangent_basis,
)

CONVERGED = "converged"
HIT_BOUNDARY = "hit-boundary"
MAX_ITERS = "max-iters"

#: smallest edge length the line search may reach
LENGTH_FLOOR = 1e-9


@dataclass(frozen=True)
class OptimizerConfig:
    max_iters: int = 10_000
    grad_tol: float = 1e-9
    step0: float = 0.1
    shrink: float = 0.5
    armijo: float = 1e-4

    def __post_init__(self):
        if not self.grad_tol > 0:
            raise InvalidInput("grad_tol must be positive")
        if not 0 < self.shrink < 1:
            raise InvalidInput("shrink must lie in (0, 1)")
        if not 0 < self.armijo < 1:
            raise InvalidInput("armijo must lie in (0, 1)")
        if not self.step0 > 0 or self.max_iters < 0:
            raise InvalidInput("step0 must be positive and max_iters non-negative")


@dataclass
class OptimizerTrace:
    """Iterates ``(lengths, perimeter, projected_gradient_norm)`` and status."""

    iterates: list = field(default_factory=list)
    status: str = MAX_ITERS

    @property
    def iterations(self):
        return max(len(self.iterates) - 1, 0)

    @property
    def perimeters(self):
        return np.array([it[1] for it in self.iterates])


def projected_gradient(p):
    """Projection of the perimeter gradient onto the tangent space at ``p``."""
    b = tangent_basis(p)
    return b @ (b.T @ np.ones(p.n))


def _resolution(per):
    return 10 * np.finfo(float).eps * max(per, 1.0)


def _model_step(alpha, drop, gnorm, low, grow=1.0):
    """Minimizer of the quadratic through the observed decrease.

    Along the projected path the perimeter behaves like
    ``-alpha |g|^2 + c alpha^2``; ``c`` is fitted from ``drop`` and the
    minimizer is clamped to ``[low * alpha, grow * alpha]``.
    """
    curv = (alpha * gnorm * gnorm - drop) / (alpha * alpha)
    if curv <= 0:
        return grow * alpha
    return float(np.clip(gnorm * gnorm / (2.0 * curv), low * alpha, grow * alpha))


def minimize(angles, start, cfg=None):
    """Minimize the perimeter over polygons with the given angles.

    Parameters
    ----------
    angles : AngleSpec or sequence of float
    start : Polygon
        Starting polygon with positive edge lengths.
    cfg : OptimizerConfig, optional

    Returns
    -------
    (Polygon, OptimizerTrace)

    Raises
    ------
    HitBoundary
        The line search stalled with edges clipped at ``LENGTH_FLOOR``.

    Notes
    -----
    Near the minimum the Armijo decrease ``armijo * step * |g|^2`` drops
    below the resolution of the perimeter in floating point. When a line
    search fails for that reason the iterate is stationary to working
    precision and the run is reported as converged.
    """
    spec = as_angle_spec(angles)
    cfg = OptimizerConfig() if cfg is None else cfg
    if np.any(start.lengths <= 0):
        raise InvalidInput("minimize needs a start polygon with positive edge lengths")
    trace = OptimizerTrace()
    p = start
    if spec.n == 3:
        trace.iterates.append((p.lengths.copy(), perimeter(p), 0.0))
        trace.status = CONVERGED
        return p, trace

    step = cfg.step0
    for _ in range(cfg.max_iters + 1):
        g = projected_gradient(p)
        gnorm = float(np.linalg.norm(g))
        per = perimeter(p)
        trace.iterates.append((p.lengths.copy(), per, gnorm))
        # the second test stops once the predicted decrease is rounding noise
        if gnorm < cfg.grad_tol or gnorm * gnorm * max(step, cfg.step0) < _resolution(per):
            trace.status = CONVERGED
            return p, trace
        if len(trace.iterates) > cfg.max_iters:
            break
        d = -g
        shrinking = d < 0
        cap = np.inf
        if np.any(shrinking):
            cap = float(np.min((p.lengths[shrinking] - LENGTH_FLOOR) / -d[shrinking]))
        # trial step from the quadratic model of the last accepted step
        alpha = min(step, cap)
        accepted = None
        while alpha > 1e-16:
            try:
                q = project(spec, p.lengths + alpha * d)
            except (ProjectionFailed, LeftDomain, NotConvex, NotOnManifold):
                q = None
            if q is not None:
                drop = math.fsum(p.lengths - q.lengths)
                if drop >= cfg.armijo * alpha * gnorm * gnorm:
                    accepted = q
                    break
                alpha = _model_step(alpha, drop, gnorm, cfg.shrink)
            else:
                alpha *= cfg.shrink
        if accepted is None:
            clipped = np.flatnonzero(p.lengths + cap * d <= 2 * LENGTH_FLOOR)
            if np.isfinite(cap) and cap < 1e-8 and len(clipped):
                trace.status = HIT_BOUNDARY
                raise HitBoundary(
                    f"descent stalled against the boundary at edges {clipped.tolist()}",
                    edges=clipped.tolist(),
                    trace=trace,
                )
            # decrease below floating-point resolution of the perimeter
            if gnorm * gnorm * cfg.step0 < 100 * _resolution(per):
                trace.status = CONVERGED
                return p, trace
            raise ProjectionFailed(f"line search failed with gradient norm {gnorm:.3g}")
        step = min(_model_step(alpha, drop, gnorm, 0.5, grow=4.0), np.inf)
        p = accepted
    trace.status = MAX_ITERS
    return p, trace


# boundary ---------------------------------------------------------------------

def collapsed_runs(lengths, tol=ZERO_LENGTH):
    """Maximal cyclic runs of consecutive collapsed edges."""
    zero = np.asarray(lengths) <= tol
    n = len(zero)
    if zero.all():
        raise InvalidInput("every edge is collapsed")
    if not zero.any():
        return []
    first = int(np.flatnonzero(~zero)[0])
    runs, current = [], []
    for k in range(1, n + 1):
        i = (first + k) % n
        if zero[i]:
            current.append(i)
        elif current:
            runs.append(current)
            current = []
    return runs


def boundary_direction(p, details=False):
    """Perimeter-decreasing deformation of a polygon with collapsed edges.

    For each run of collapsed edges, bounded by the positive edges ``prev``
    and ``next``, every collapsed dual decomposes as
    ``e_i* = a_i e_prev* + b_i e_next*`` with ``a_i, b_i > 0`` and
    ``a_i + b_i > 1`` (all these duals lie in the space-like plane
    orthogonal to the collapsed vertex). The deformation lengthens the run
    edges at unit speed and shortens ``prev`` and ``next`` by ``sum(a_i)``
    and ``sum(b_i)``; it is tangent to the manifold and the perimeter
    changes at rate ``sum(1 - a_i - b_i) < 0``.

    Returns the velocity vector, or ``(velocity, coefficients)`` with
    ``coefficients`` a list of ``(i, a_i, b_i)`` when ``details`` is set.
    """
    runs = collapsed_runs(p.lengths)
    if not runs:
        raise InvalidInput("boundary_direction needs at least one collapsed edge")
    n = p.n
    duals = p.centered[1]
    v = np.zeros(n)
    coefficients = []
    for run in runs:
        prev, nxt = (run[0] - 1) % n, (run[-1] + 1) % n
        basis = np.column_stack([duals[prev], duals[nxt]])
        for i in run:
            (a, b), *_ = np.linalg.lstsq(basis, duals[i], rcond=None)
            resid = float(np.linalg.norm(basis @ [a, b] - duals[i]))
            if resid > COPLANARITY_TOL:
                raise NotCoplanar(f"dual of edge {i} is off the collapsed vertex plane ({resid:.3g})")
            if a <= 0 or b <= 0:
                raise ConvexityViolation(f"edge {i}: coefficients a={a:.3g}, b={b:.3g} not positive")
            if a + b <= 1:
                raise ConvexityViolation(f"edge {i}: a + b = {a + b:.6g} is not above 1")
            coefficients.append((i, float(a), float(b)))
            v[i] += 1.0
            v[prev] -= a
            v[nxt] -= b
    if not v.sum() < 0:
        raise ConvexityViolation("boundary deformation does not decrease the perimeter")
    drift = float(np.linalg.norm(duals.T @ v))
    if drift > COPLANARITY_TOL:
        raise NotCoplanar(f"boundary deformation is not tangent (|sum v_i e_i*| = {drift:.3g})")
    return (v, coefficients) if details else v


def boundary_polygon(angles, collapsed, seed=0, attempts=20):
    """A closed convex polygon whose edges ``collapsed`` have length zero.

    The collapsed lengths are fixed at zero and the closure equations are
    solved for the remaining lengths by Newton's method, starting from the
    inscribed-circle polygon of the merged angles plus seeded noise.
    Non-convex solutions are rejected and retried.

    Raises
    ------
    InvalidInput
        The merged polygon has inadmissible angles.
    SamplingFailed
        No convex solution after ``attempts`` tries.
    """
    spec = as_angle_spec(angles)
    n = spec.n
    zero = np.zeros(n, dtype=bool)
    zero[list(collapsed)] = True
    if zero.all() or n - zero.sum() < 3:
        raise InvalidInput("at least three edges must keep positive length")
    # Merged polygon: a run of collapsed edges after edge j fuses its
    # vertices with vertex j, adding up their turning angles.
    beta = spec.array
    kept = np.flatnonzero(~zero)
    merged = []
    for j in kept:
        total, m = beta[j], (j + 1) % n
        while zero[m]:
            total += beta[m] - np.pi
            m = (m + 1) % n
        merged.append(total)
    t = solve(AngleSpec(merged)).tangent_lengths
    guess = np.zeros(n)
    guess[kept] = np.roll(t, 1) + t
    rng = np.random.default_rng(seed)
    free = ~zero
    for _ in range(attempts):
        start = guess.copy()
        start[free] *= 1.0 + 0.2 * rng.uniform(-1, 1, free.sum())
        try:
            l = _newton_close(spec, start, free=free)
            return build(spec, l)
        except (ProjectionFailed, LeftDomain, NotConvex, NotOnManifold):
            continue
    raise SamplingFailed("no convex boundary polygon found")


# theorem check ----------------------------------------------------------------

DEFAULT_STEPS = (0.4, 0.2, 0.1, 0.05, 0.025)


@dataclass
class TheoremReport:
    angles: tuple
    seed: int
    samples: int
    radius: float
    incircle_perimeter: float
    zero_dimensional: bool
    min_gap: float = 0.0
    max_gap: float = 0.0
    min_gap_by_step: dict = field(default_factory=dict)
    max_length_error: float = 0.0
    iterations: list = field(default_factory=list)
    violations: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.violations

    def iteration_histogram(self, bins=8):
        if not self.iterations:
            return {"edges": [], "counts": []}
        counts, edges = np.histogram(self.iterations, bins=bins)
        return {"edges": edges.tolist(), "counts": counts.tolist()}

    def to_dict(self):
        it = self.iterations
        return {
            "angles": list(self.angles),
            "n": len(self.angles),
            "seed": self.seed,
            "samples": self.samples,
            "zero_dimensional": self.zero_dimensional,
            "radius": self.radius,
            "incircle_perimeter": self.incircle_perimeter,
            "min_gap": self.min_gap,
            "max_gap": self.max_gap,
            "min_gap_by_step": {format(k, "g"): v for k, v in self.min_gap_by_step.items()},
            "max_length_error": self.max_length_error,
            "iterations": {
                "min": min(it) if it else 0,
                "max": max(it) if it else 0,
                "total": sum(it),
                "histogram": self.iteration_histogram(),
            },
            "violations": list(self.violations),
            "passed": self.passed,
        }


def verify_theorem(angles, samples, seed, cfg=None, steps=DEFAULT_STEPS):
    """Check that the inscribed-circle polygon minimizes the perimeter.

    Draws ``samples`` polygons on the manifold (cycling through ``steps``),
    checks each perimeter against the inscribed-circle polygon and runs
    :func:`minimize` from each, requiring convergence back to it.
    Failures are collected in ``report.violations`` rather than raised.
    """
    spec = as_angle_spec(angles)
    sol = solve(spec)
    best = sol.polygon
    p_star = perimeter(best)
    report = TheoremReport(
        angles=spec.beta,
        seed=int(seed),
        samples=int(samples),
        radius=sol.radius,
        incircle_perimeter=p_star,
        zero_dimensional=spec.n == 3,
    )
    seeds = np.random.SeedSequence(seed).generate_state(max(samples, 1))
    gaps = []
    for k in range(samples):
        step = steps[k % len(steps)]
        try:
            q = sample(spec, int(seeds[k]), step, start=best)
        except (SamplingFailed, GeometryError) as exc:
            report.violations.append(f"sample {k}: {type(exc).__name__}: {exc}")
            continue
        gap = perimeter(q) - p_star
        gaps.append(gap)
        report.min_gap_by_step[step] = min(report.min_gap_by_step.get(step, math.inf), gap)
        dist = float(np.linalg.norm(q.lengths - best.lengths))
        if gap < -1e-9:
            report.violations.append(f"sample {k}: perimeter below the minimum by {-gap:.3g}")
        elif dist > 1e-4 and gap <= 1e-8:
            report.violations.append(
                f"sample {k}: distinct polygon (distance {dist:.3g}) with gap {gap:.3g}"
            )
        try:
            result, trace = minimize(spec, q, cfg)
        except GeometryError as exc:
            report.violations.append(f"minimize {k}: {type(exc).__name__}: {exc}")
            continue
        report.iterations.append(trace.iterations)
        err = float(np.abs(result.lengths - best.lengths).max())
        report.max_length_error = max(report.max_length_error, err)
        if err > 1e-5:
            report.violations.append(f"minimize {k}: ended {err:.3g} away from the incircle lengths")
        if np.any(np.diff(trace.perimeters) > 0):
            report.violations.append(f"minimize {k}: perimeter increased along the trace")
        if criticality_residual(result) >= 1e-6:
            report.violations.append(f"minimize {k}: result is not critical")
    if gaps:
        report.min_gap, report.max_gap = float(min(gaps)), float(max(gaps))
    return report
