"""Convex polygons with prescribed angles as points of R^n.

A polygon with angles ``beta`` is recorded by its edge lengths. Edge ``i``
(0-based) runs from vertex ``i - 1`` to vertex ``i`` and the interior angle
at vertex ``i`` is ``beta[i]``; with tangent lengths ``t`` at the vertices
this gives ``l_i = t_{i-1} + t_i`` (indices mod n).
Developing starts at vertex ``n - 1`` which sits at ``(1, 0, 0)``.

The lengths of closed convex polygons form a smooth submanifold of
codimension three whose tangent space at ``p`` is the kernel of the
3 x n matrix of outward edge duals.
"""

from dataclasses import dataclass
from functools import cached_property
import math

import numpy as np

from hyperpolygon import serialize
from hyperpolygon._tolerances import (
    ANGLE_TOL,
    CLOSURE_TOL,
    CONVEXITY_TOL,
    GEOMETRY_TOL,
    PROJECTION_TOL,
)
from hyperpolygon.angles import AngleSpec, as_angle_spec, check_lengths
from hyperpolygon.developing import (
    _walk,
    centering,
    closure_residual,
    edge_normals,
    frame_at,
    frame_inverse,
    logm,
)
from hyperpolygon.exceptions import (
    BranchAmbiguity,
    DegenerateConfiguration,
    InvalidInput,
    LeftDomain,
    NotConvex,
    NotOnManifold,
    PreconditionViolation,
    ProjectionFailed,
    SamplingFailed,
)
from hyperpolygon.lorentz import is_dspoint, mcross, mdot, normalize_h

__all__ = [
    "AngleSpec",
    "Polygon",
    "build",
    "perimeter",
    "interior_angles",
    "tangent_basis",
    "project",
    "sample",
    "validate",
    "to_dict",
    "from_dict",
    "dumps",
    "loads",
]

#: lengths at or below this are treated as collapsed edges
ZERO_LENGTH = 1e-12
#: starting residual above which Newton projection is not attempted
PROJECTION_BASIN = 0.5
MAX_NEWTON_ITERS = 50
POLISH_TOL = 1e-14


@dataclass(frozen=True, eq=False)
class Polygon:
    """A closed convex polygon (possibly with collapsed edges).

    Attributes
    ----------
    angles : AngleSpec
    lengths : ndarray, shape (n,)
    vertices : ndarray, shape (n, 3)
        ``vertices[i]`` is the end point of edge ``i``.
    duals : ndarray, shape (n, 3)
        Outward unit normals ``e_i*`` in the de Sitter sphere.
    """

    angles: AngleSpec
    lengths: np.ndarray
    vertices: np.ndarray
    duals: np.ndarray

    @property
    def n(self):
        return self.angles.n

    @property
    def perimeter(self):
        return perimeter(self)

    @property
    def dual_matrix(self):
        """The 3 x n matrix with columns ``e_i*``."""
        return self.duals.T

    def barycenter(self):
        """Normalized Euclidean average of the vertices, a point inside."""
        return normalize_h(self.vertices.mean(axis=0))

    @cached_property
    def centering(self):
        """Isometry moving :meth:`barycenter` to ``(1, 0, 0)``."""
        return frame_inverse(frame_at(self.barycenter()))

    @cached_property
    def centered(self):
        """``(vertices, duals)`` of the polygon moved by :attr:`centering`.

        Obtained by developing again from the moved start frame rather than
        by multiplying the stored coordinates, so rounding stays at the
        scale of the polygon radius. Metric checks use these coordinates.
        """
        _, path, frames = _walk(self.angles, self.lengths, base=self.centering)
        return path[1:], -frames[:, :, 2]


def _support(vertices, duals):
    """Matrix of products ``e_i* . v_j``."""
    return duals @ (vertices * np.array([-1.0, 1.0, 1.0])).T


def _metric_tol(defect):
    # Long edges amplify rounding in the developed coordinates. The closure
    # defect of the plain (uncentered) development measures how much, so
    # the metric checks allow for it.
    return max(CONVEXITY_TOL, 10.0 * defect)


def _convexity_violation(vertices, duals, tol=CONVEXITY_TOL):
    """Return a message if the closed path is not convex and embedded.

    Expects coordinates centered on the polygon.
    """
    n = len(vertices)
    # support function: every vertex weakly inside every edge half plane
    s = _support(vertices, duals)
    if s.max() > tol:
        i, j = np.unravel_index(np.argmax(s), s.shape)
        return f"vertex {j} lies outside the half plane of edge {i} (e*.v = {s[i, j]:.3g})"
    # equality only at the endpoints of each edge, or at points merged with them
    i, j = np.nonzero(s >= -tol)
    if len(i):
        d_start = np.linalg.norm(vertices[j] - vertices[(i - 1) % n], axis=1)
        d_end = np.linalg.norm(vertices[j] - vertices[i], axis=1)
        bad = np.minimum(d_start, d_end) > 1e-9
        if bad.any():
            k = int(np.argmax(bad))
            return f"vertex {j[k]} lies on the line of edge {i[k]}"
    # winding number one around the barycenter, which sits at (1, 0, 0)
    ang = np.arctan2(vertices[:, 2], vertices[:, 1])
    turn = np.diff(np.concatenate([ang, ang[:1]]))
    turn = (turn + np.pi) % (2 * np.pi) - np.pi
    winding = turn.sum() / (2 * np.pi)
    if abs(winding - 1.0) > 1e-6:
        return f"path winds {winding:.3f} times around its barycenter"
    return None


def build(angles, lengths):
    """Develop ``lengths`` and check that they form a polygon.

    Parameters
    ----------
    angles : AngleSpec or sequence of float
    lengths : sequence of float
        Non-negative; zeros give polygons on the boundary of the space.

    Returns
    -------
    Polygon

    Raises
    ------
    NotOnManifold
        The path does not close up (residual above ``CLOSURE_TOL``).
    NotConvex
        The closed path is not a convex embedded polygon.
    """
    spec = as_angle_spec(angles)
    l = check_lengths(lengths, spec.n)
    end, path, frames = _walk(spec, l)
    try:
        res = float(np.linalg.norm(closure_residual(spec, l)))
        defect = float(np.linalg.norm(logm(end)))
    except BranchAmbiguity:
        res = defect = math.inf
    if res > CLOSURE_TOL:
        raise NotOnManifold(f"edge lengths do not close up (residual {res:.3g})")
    # Frame normals equal the duals of the edge lines and stay defined for
    # collapsed edges.
    p = Polygon(angles=spec, lengths=l.copy(), vertices=path[1:].copy(), duals=-frames[:, :, 2])
    msg = _convexity_violation(*p.centered, tol=_metric_tol(defect))
    if msg is not None:
        raise NotConvex(msg)
    return p


def perimeter(p):
    return math.fsum(p.lengths)


def _angle_between(v, a, b):
    """Angle at ``v`` between the geodesics towards ``a`` and ``b``."""
    u = a + mdot(a, v) * v
    w = b + mdot(b, v) * v
    cross = mcross(u, w)
    return math.atan2(math.sqrt(max(-mdot(cross, cross), 0.0)), mdot(u, w))


def interior_angles(p):
    """Interior angles recomputed from the vertices.

    At a vertex adjacent to a collapsed (or nearly collapsed) edge the
    angle is read from the consecutive outward duals instead, through
    ``e_i* . e_{i+1}* = -cos(beta_i)``.
    """
    vertices, duals = p.centered
    n = p.n
    out = np.empty(n)
    for i in range(n):
        nxt = (i + 1) % n
        if p.lengths[i] > 1e-6 and p.lengths[nxt] > 1e-6:
            out[i] = _angle_between(vertices[i], vertices[i - 1], vertices[nxt])
        else:
            c = -mdot(duals[i], duals[nxt])
            out[i] = math.acos(min(1.0, max(-1.0, c)))
    return out


def validate(p):
    """Check the polygon invariants and return them as a dict.

    Maps invariant names to ``(ok, worst_value)``. Metric invariants are
    evaluated in centered coordinates.
    """
    vertices, duals = p.centered
    res = float(np.linalg.norm(closure_residual(p.angles, p.lengths)))
    defect = float(np.linalg.norm(logm(_walk(p.angles, p.lengths)[0])))
    s = _support(vertices, duals)
    idx = np.arange(p.n)
    incidence = float(max(np.abs(s[idx, idx - 1]).max(), np.abs(s[idx, idx]).max()))
    angle_err = float(np.abs(interior_angles(p) - p.angles.array).max())
    tol = _metric_tol(defect)
    # rounding in a developed vertex scales with the largest coordinates of the path
    on_sheet = all(
        np.all(w[:, 0] > 0)
        and np.abs(mdot(w, w) + 1.0).max() <= 0.01 * tol * max(1.0, np.einsum("ij,ij->i", w, w).max())
        for w in (p.vertices, vertices)
    )
    return {
        "lengths_nonnegative": (bool(np.all(p.lengths >= 0)), float(p.lengths.min())),
        "closure": (res < CLOSURE_TOL, res),
        "vertices_on_hyperboloid": (on_sheet, None),
        "duals_on_de_sitter": (all(is_dspoint(e, tol) for e in duals), None),
        "dual_incidence": (incidence < tol, incidence),
        "convex": (_convexity_violation(vertices, duals, tol) is None, float(s.max())),
        "angles": (angle_err < max(ANGLE_TOL, tol), angle_err),
    }


def tangent_basis(p):
    """Orthonormal basis of the tangent space at an interior polygon.

    Returns an ``n x (n - 3)`` array whose columns span the kernel of the
    dual matrix; it is read off a complete QR factorization of the
    transposed (centered) dual matrix.
    """
    if np.any(p.lengths <= 0):
        raise PreconditionViolation("tangent_basis needs all edge lengths positive")
    a = p.centered[1].T
    q, r = np.linalg.qr(a.T, mode="complete")
    d = np.abs(np.diag(r))
    if d.min() <= 1e-12 * d.max():
        raise DegenerateConfiguration("edge duals do not span R^2_1")
    return q[:, 3:]


def _centered_residual(spec, l, h):
    return logm(_walk(spec, l, base=h)[0] @ frame_inverse(h))


def _newton_step(spec, l, r, free, h, halvings=30):
    """One damped minimum-norm Newton step; returns (lengths, residual)."""
    rn = np.linalg.norm(r)
    a = edge_normals(spec, l, base=h)[:, free]
    step = np.zeros_like(l)
    step[free] = -np.linalg.lstsq(a, r, rcond=None)[0]
    if np.any(l[free] + step[free] <= 0):
        raise LeftDomain("Newton projection drove an edge length to zero")
    t = 1.0
    for _ in range(halvings):
        trial = l + t * step
        try:
            r_new = _centered_residual(spec, trial, h)
        except BranchAmbiguity:
            r_new = None
        if r_new is not None and np.linalg.norm(r_new) < rn:
            return trial, r_new
        t *= 0.5
    raise ProjectionFailed(f"Newton projection stalled at residual {rn:.3g}")


def _newton_close(spec, lengths, free=None, tol=PROJECTION_TOL, max_iter=MAX_NEWTON_ITERS):
    """Minimum-norm Newton iteration on the closure residual.

    Only the coordinates flagged in ``free`` move. After reaching ``tol``
    up to three more steps bring the residual down to ``POLISH_TOL``.
    The iteration runs in coordinates centered on the polygon.
    """
    l = np.array(lengths, dtype=float)
    free = np.ones(len(l), dtype=bool) if free is None else np.asarray(free, dtype=bool)
    try:
        h = centering(spec, l)
        r = _centered_residual(spec, l, h)
    except (BranchAmbiguity, InvalidInput) as exc:
        raise ProjectionFailed(str(exc)) from exc
    if np.linalg.norm(r) >= PROJECTION_BASIN:
        raise ProjectionFailed(
            f"starting residual {np.linalg.norm(r):.3g} is outside the Newton basin"
        )
    iters = 0
    while np.linalg.norm(r) >= tol:
        if iters == max_iter:
            raise ProjectionFailed(
                f"no convergence in {max_iter} Newton iterations "
                f"(residual {np.linalg.norm(r):.3g})"
            )
        l, r = _newton_step(spec, l, r, free, h)
        iters += 1
    # polish to rounding level so that repeated projections do not drift
    for _ in range(3):
        if np.linalg.norm(r) <= POLISH_TOL:
            break
        try:
            l, r = _newton_step(spec, l, r, free, h, halvings=2)
        except (ProjectionFailed, LeftDomain):
            break
    return l


def project(angles, lengths_guess):
    """Newton-correct ``lengths_guess`` back onto the polygon manifold.

    Uses minimum-norm steps through the matrix of edge duals, so the
    correction is (to first order) orthogonal to the tangent space.

    Raises
    ------
    ProjectionFailed
        Starting residual too large or no convergence in 50 iterations.
    LeftDomain
        An edge length was driven to zero or below.
    """
    spec = as_angle_spec(angles)
    l = check_lengths(lengths_guess, spec.n)
    return build(spec, _newton_close(spec, l))


def sample(angles, seed, step, start=None):
    """Pseudo-random polygon at tangent distance ``step`` from ``start``.

    ``start`` defaults to the polygon with an inscribed circle. The step is
    halved (at most 20 times) whenever projection or validation fails.
    """
    spec = as_angle_spec(angles)
    if start is None:
        from hyperpolygon.incircle import solve

        start = solve(spec).polygon
    if step == 0 or spec.n == 3:
        return start
    rng = np.random.default_rng(seed)
    coef = rng.standard_normal(spec.n - 3)
    direction = tangent_basis(start) @ (coef / np.linalg.norm(coef))
    s = float(step)
    for _ in range(21):
        guess = start.lengths + s * direction
        if np.all(guess > 0):
            try:
                return project(spec, guess)
            except (ProjectionFailed, LeftDomain, NotConvex, NotOnManifold):
                pass
        s *= 0.5
    raise SamplingFailed(f"could not sample a polygon near step {step} (seed {seed})")


# JSON -----------------------------------------------------------------------

def to_dict(p):
    return {
        "angles": list(p.angles.beta),
        "lengths": p.lengths.tolist(),
        "vertices": p.vertices.tolist(),
        "duals": p.duals.tolist(),
    }


def dumps(p, extra=None):
    """Polygon JSON text; ``extra`` keys are appended after the schema keys."""
    d = to_dict(p)
    if extra:
        d.update(extra)
    return serialize.dumps(d)


def from_dict(d):
    """Rebuild a polygon from its JSON form.

    Angles and lengths are authoritative; stored vertices and duals, when
    present, must agree with the rebuilt ones.
    """
    try:
        angles, lengths = d["angles"], d["lengths"]
    except (KeyError, TypeError) as exc:
        raise InvalidInput("polygon JSON needs 'angles' and 'lengths'") from exc
    p = build(AngleSpec(angles), lengths)
    for key in ("vertices", "duals"):
        if key in d:
            stored = np.asarray(d[key], dtype=float)
            ours = getattr(p, key)
            if stored.shape != ours.shape:
                raise InvalidInput(f"'{key}' has shape {stored.shape}, expected {ours.shape}")
            err = np.abs(stored - ours).max() / (1.0 + np.abs(ours).max())
            if err > GEOMETRY_TOL:
                raise InvalidInput(f"stored '{key}' disagree with the developed polygon")
    return p


def loads(text):
    try:
        d = serialize.loads(text)
    except ValueError as exc:
        raise InvalidInput(f"invalid polygon JSON: {exc}") from exc
    return from_dict(d)
