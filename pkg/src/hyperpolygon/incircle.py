"""The polygon with an inscribed circle, and the criticality test.

Cutting a polygon with an inscribed circle of radius ``r`` along the
segments from the center to the tangency points and to the vertices
gives, at each vertex ``i``, a quadrilateral with angles
``beta_i, pi/2, theta_i(r), pi/2`` whose two sides at the center have
length ``r``. Its diagonal from the center to the vertex splits it into
two right triangles with legs ``r`` and ``t_i`` (the tangent length) and
acute angles ``beta_i / 2`` and ``theta_i / 2``. The right triangle
relations ``cos A = cosh(a) sin(B)`` and ``tan A = tanh(a) / sinh(b)``
give::

    theta(r, beta) = 2 asin(cos(beta / 2) / cosh(r))
    t(r, beta)     = asinh(tanh(r) / tan(beta / 2))

The quadrilaterals fit around the center exactly when
``sum(theta_i(r)) = 2 pi``; the left side decreases strictly from
``sum(pi - beta_i) > 2 pi`` at ``r = 0`` to ``0`` at infinity, so there is
one root.
"""

from dataclasses import dataclass

import numpy as np

from hyperpolygon._tolerances import CRITICALITY_TOL
from hyperpolygon.angles import as_angle_spec
from hyperpolygon.developing import frame_at, frame_inverse
from hyperpolygon.exceptions import NoInscribedCircle, PreconditionViolation
from hyperpolygon.lorentz import MINKOWSKI, classify, mdot, normalize_h, TIMELIKE
from hyperpolygon.polygon import Polygon, build

TWO_PI = 2 * np.pi


@dataclass(frozen=True, eq=False)
class IncircleSolution:
    """Radius, tangent lengths, polygon and center of the inscribed circle.

    ``tangent_lengths[i]`` is the distance from vertex ``i`` to the two
    tangency points next to it, so edge ``i`` has length
    ``tangent_lengths[i - 1] + tangent_lengths[i]``.
    """

    radius: float
    tangent_lengths: np.ndarray
    polygon: Polygon
    center: np.ndarray

    def to_dict(self):
        return {
            "radius": self.radius,
            "tangent_lengths": self.tangent_lengths.tolist(),
            "perimeter": self.polygon.perimeter,
            "center": self.center.tolist(),
        }


def theta(r, beta):
    """Angle at the center of the quadrilateral around a vertex of angle ``beta``.

    Evaluated as ``2 atan2(cos(beta/2), sqrt(sinh(r)^2 + sin(beta/2)^2))``,
    which equals the arcsine form but stays accurate when the arcsine
    argument is close to one.
    """
    half = np.asarray(beta) / 2.0
    sh = np.sinh(r)
    return 2.0 * np.arctan2(np.cos(half), np.sqrt(sh * sh + np.sin(half) ** 2))


def theta_derivative(r, beta):
    half = np.asarray(beta) / 2.0
    sh = np.sinh(r)
    return -2.0 * np.cos(half) * np.tanh(r) / np.sqrt(sh * sh + np.sin(half) ** 2)


def tangent_length(r, beta):
    """Distance from a vertex of angle ``beta`` to the adjacent tangency points."""
    return np.arcsinh(np.tanh(r) / np.tan(np.asarray(beta) / 2.0))


def _angle_gap(r, beta):
    return float(np.sum(theta(r, beta))) - TWO_PI


def solve_radius(beta, xtol=1e-12):
    """Root of ``sum(theta(r, beta_i)) = 2 pi``: bisection, then Newton."""
    lo, hi = 0.0, 1.0
    while _angle_gap(hi, beta) >= 0:
        lo, hi = hi, 2.0 * hi
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        if _angle_gap(mid, beta) > 0:
            lo = mid
        else:
            hi = mid
    r = 0.5 * (lo + hi)
    for _ in range(3):
        d = float(np.sum(theta_derivative(r, beta)))
        step = _angle_gap(r, beta) / d
        if not np.isfinite(step) or not lo <= r - step <= hi:
            break
        r -= step
    return r


def solve(angles):
    """The unique polygon with an inscribed circle.

    Parameters
    ----------
    angles : AngleSpec or sequence of float
        Admissible interior angles in radians.

    Returns
    -------
    IncircleSolution
    """
    spec = as_angle_spec(angles)
    beta = spec.array
    r = solve_radius(beta)
    t = tangent_length(r, beta)
    polygon = build(spec, np.roll(t, 1) + t)
    # The center satisfies e_i*.c = -sinh(r) for every edge, which is
    # linear in the coordinates of c; solved in centered coordinates.
    rows = polygon.centered[1] @ MINKOWSKI
    c = np.linalg.lstsq(rows, np.full(spec.n, -np.sinh(r)), rcond=None)[0]
    center = normalize_h(frame_inverse(polygon.centering) @ c)
    return IncircleSolution(radius=float(r), tangent_lengths=t, polygon=polygon, center=center)


def _augmented(duals, vertices):
    """Centering isometry and the 4 x n matrix of centered duals over ones."""
    g = frame_inverse(frame_at(normalize_h(np.mean(vertices, axis=0))))
    return g, np.vstack([g @ np.asarray(duals, dtype=float).T, np.ones(len(duals))])


def dual_plane_residual(duals, vertices):
    """Fourth over first singular value of the duals augmented by ones.

    The duals are first moved by the isometry taking the barycenter of
    ``vertices`` to ``(1, 0, 0)``, so the value does not depend on where
    the polygon sits in the plane. Zero for triangles.
    """
    _, a4 = _augmented(duals, vertices)
    s = np.linalg.svd(a4, compute_uv=False)
    return float(s[3] / s[0]) if len(s) > 3 else 0.0


def criticality_residual(p):
    """Distance of the perimeter from being critical at ``p``.

    The perimeter is critical exactly when appending a row of ones to the
    3 x n dual matrix keeps the rank at 3, i.e. when the duals lie on an
    affine plane. See :func:`dual_plane_residual`; it is evaluated on the
    centered development of ``p``.
    """
    vertices, duals = p.centered
    return dual_plane_residual(duals, vertices)


def incircle_center(p):
    """Center and radius of the inscribed circle of a critical polygon.

    Solves ``e_i*.c + s = 0`` for the null vector ``(c, s)``; the circle
    has center ``c / |c|`` and radius ``asinh(s / |c|)``.

    Raises
    ------
    PreconditionViolation
        ``criticality_residual(p)`` is not below ``CRITICALITY_TOL``.
    NoInscribedCircle
        The plane of the duals has a non time-like normal.
    """
    vertices, duals = p.centered
    g, a4 = _augmented(duals, vertices)
    if dual_plane_residual(duals, vertices) >= CRITICALITY_TOL:
        raise PreconditionViolation("polygon is not critical for the perimeter")
    # rows (J e_i*, 1) act on (c, s)
    m = np.column_stack([a4[:3].T @ MINKOWSKI, np.ones(p.n)])
    _, _, vh = np.linalg.svd(m)
    x = vh[-1]
    c, offset = x[:3], x[3]
    if classify(c) != TIMELIKE:
        raise NoInscribedCircle("edge duals lie on a plane with a non time-like normal")
    if c[0] < 0:
        c, offset = -c, -offset
    size = np.sqrt(-mdot(c, c))
    # back from the centered development to the coordinates of p
    center = normalize_h(frame_inverse(p.centering) @ frame_inverse(g) @ c)
    return center, float(np.arcsinh(offset / size))
