"""Frames, the developing map and its closure residual.

A unit tangent vector of H^2 is stored as an orientation preserving
isometry ``m`` in SO_0(2,1) (a 3x3 matrix): column 0 is the base point,
column 1 the unit direction and column 2 the unit normal to its left.
The identity frame sits at ``(1, 0, 0)`` pointing along ``(0, 1, 0)``.

Moving a frame is right multiplication: ``m @ translate(d)`` walks a
distance ``d`` along the direction, ``m @ rotate(phi)`` turns the
direction counter-clockwise (to the left) by ``phi``.

Developing a polygon walks its edges from the identity frame, turning
left by the exterior angle ``pi - beta_i`` after edge ``i``. The path
closes exactly when the final frame is the identity again.

Lie algebra chart
-----------------
Closure is measured by ``closure_residual``, the logarithm of the end
frame read as a vector of R^2_1. For ``z`` in R^2_1 let ``X_z`` be the
matrix ``w -> z (x) w`` of Lorentz cross product with ``z``. The residual
of a frame ``exp(M)`` is ``z`` with ``M = -X_z``. With this sign the
derivative of the residual with respect to the length of edge ``i`` is
the outward unit normal ``e_i*`` of that edge, so the Jacobian of closure
is the matrix of outward edge duals. A counter-clockwise rotation by
``phi`` about ``(1, 0, 0)`` reads as ``(-phi, 0, 0)``.
"""

from dataclasses import dataclass

import numpy as np

from hyperpolygon._tolerances import CLOSURE_TOL, LOG_BRANCH_TOL
from hyperpolygon.exceptions import BranchAmbiguity, InvalidInput, PreconditionViolation
from hyperpolygon.angles import AngleSpec, check_lengths
from hyperpolygon.lorentz import MINKOWSKI, normalize_h


@dataclass(frozen=True)
class PathResult:
    """End frame and the ``n + 1`` vertices of a developed polygonal path."""

    end_frame: np.ndarray
    vertices: np.ndarray


def base_frame():
    return np.eye(3)


def translate(d):
    """Hyperbolic translation of length ``d`` along the frame direction."""
    c, s = np.cosh(d), np.sinh(d)
    return np.array([[c, s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def rotate(phi):
    """Counter-clockwise rotation by ``phi`` about the frame base point."""
    c, s = np.cos(phi), np.sin(phi)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])


def frame_inverse(m):
    """Inverse of a Lorentz isometry, ``J m^T J``."""
    return MINKOWSKI @ m.T @ MINKOWSKI


def is_frame(m, tol=1e-10):
    m = np.asarray(m, dtype=float)
    if m.shape != (3, 3):
        return False
    scale = max(1.0, float(np.abs(m).max()) ** 2)
    return bool(
        np.allclose(m.T @ MINKOWSKI @ m, MINKOWSKI, rtol=0, atol=tol * scale)
        and abs(np.linalg.det(m) - 1.0) <= tol * scale
        and m[0, 0] > 0
    )


def frame_at(point, direction=None):
    """Frame based at ``point`` whose direction is ``direction``.

    ``direction`` is any tangent vector at ``point`` (it is projected and
    normalized); by default the frame is the pure boost carrying
    ``(1, 0, 0)`` to ``point``.
    """
    p = np.asarray(point, dtype=float)
    if direction is None:
        # boost with no rotational part: columns are the images of e0, e1, e2
        x = p[1:]
        m = np.empty((3, 3))
        m[:, 0] = p
        m[0, 1:] = x
        m[1:, 1:] = np.eye(2) + np.outer(x, x) / (1.0 + p[0])
        return m
    u = np.asarray(direction, dtype=float)
    u = u + (-p[0] * u[0] + p[1:] @ u[1:]) * p
    u = u / np.sqrt(-u[0] ** 2 + u[1:] @ u[1:])
    w = MINKOWSKI @ np.cross(p, u)
    return np.column_stack([p, u, w])


# Lie algebra chart -----------------------------------------------------------

def hat(z):
    """Matrix in so(2,1) represented by ``z`` (inverse of :func:`unhat`)."""
    z0, z1, z2 = z
    # X_z = [[0, z2, -z1], [z2, 0, -z0], [-z1, z0, 0]]; the chart is -X_z
    return -np.array([[0.0, z2, -z1], [z2, 0.0, -z0], [-z1, z0, 0.0]])


def unhat(m):
    return np.array([m[1, 2], m[0, 2], -m[0, 1]])


def expm(z):
    """Exponential of ``hat(z)``, in closed form."""
    x = hat(z)
    q = -z[0] ** 2 + z[1] ** 2 + z[2] ** 2
    x2 = x @ x
    if abs(q) < 1e-16:
        a, b = 1.0, 0.5
    elif q < 0:
        t = np.sqrt(-q)
        # half-angle forms avoid cancellation in 1 - cos and cosh - 1
        a, b = np.sin(t) / t, 2.0 * (np.sin(t / 2) / t) ** 2
    else:
        t = np.sqrt(q)
        a, b = np.sinh(t) / t, 2.0 * (np.sinh(t / 2) / t) ** 2
    return np.eye(3) + a * x + b * x2


def logm(g):
    """Logarithm of a frame as a vector of R^2_1 (see module docstring).

    Raises :class:`BranchAmbiguity` for rotations within ``LOG_BRANCH_TOL``
    of a half turn, where the principal branch jumps.
    """
    g = np.asarray(g, dtype=float)
    w = unhat(0.5 * (g - frame_inverse(g)))
    c = 0.5 * (np.trace(g) - 1.0)
    q = -w[0] ** 2 + w[1] ** 2 + w[2] ** 2
    if q < 0:
        s = np.sqrt(-q)
        phi = np.arctan2(s, c)
        if np.pi - phi < LOG_BRANCH_TOL:
            raise BranchAmbiguity(
                f"rotation angle {phi:.9f} is within {LOG_BRANCH_TOL:g} of pi"
            )
        ratio = phi / s if s > 1e-12 else 1.0
    elif q > 0:
        s = np.sqrt(q)
        ratio = np.arcsinh(s) / s if s > 1e-12 else 1.0
    else:
        if c < 0:
            raise BranchAmbiguity("frame is a half turn")
        ratio = 1.0
    return ratio * w


# developing map --------------------------------------------------------------

def _angle_array(angles):
    if isinstance(angles, AngleSpec):
        return angles.array
    beta = np.asarray(angles, dtype=float).ravel()
    if not np.all((beta > 0) & (beta < np.pi)):
        raise InvalidInput("every angle must lie strictly between 0 and pi")
    return beta


def _walk(angles, lengths, base=None):
    """Develop the path and return (end frame, vertices, edge frames).

    ``edge_frames[i]`` is the frame at the end of edge ``i`` before the
    turn, so its third column is the left normal of edge ``i``.
    """
    beta = _angle_array(angles)
    l = check_lengths(lengths, len(beta))
    m = base_frame() if base is None else np.asarray(base, dtype=float)
    n = len(beta)
    ch, sh = np.cosh(l), np.sinh(l)
    co, si = np.cos(np.pi - beta), np.sin(np.pi - beta)
    vertices = np.empty((n + 1, 3))
    edge_frames = np.empty((n, 3, 3))
    vertices[0] = m[:, 0]
    for i in range(n):
        # right multiplication by translate(l[i]) then rotate(pi - beta[i])
        c0, c1 = m[:, 0], m[:, 1]
        m = np.column_stack([ch[i] * c0 + sh[i] * c1, sh[i] * c0 + ch[i] * c1, m[:, 2]])
        vertices[i + 1] = m[:, 0]
        edge_frames[i] = m
        c1, c2 = m[:, 1], m[:, 2]
        m = np.column_stack([m[:, 0], co[i] * c1 + si[i] * c2, co[i] * c2 - si[i] * c1])
    return m, vertices, edge_frames


def develop(angles, lengths, base=None):
    """Develop the polygonal path with the given angles and edge lengths.

    Parameters
    ----------
    angles : AngleSpec or sequence of float
        Interior angles in radians, each in ``(0, pi)``.
    lengths : sequence of float
        Non-negative edge lengths, one per angle.
    base : ndarray, optional
        Starting frame; the identity by default.

    Returns
    -------
    PathResult
        ``vertices[0]`` is the start point and ``vertices[i]`` the point
        reached after ``i`` edges.
    """
    end, vertices, _ = _walk(angles, lengths, base)
    return PathResult(end_frame=end, vertices=vertices)


def edge_normals(angles, lengths, base=None):
    """Outward unit normals of the developed edges, as a 3 x n matrix.

    Defined for any lengths, closed or not: column ``i`` is the negated
    left normal of the frame travelling along edge ``i``. This is also
    the derivative of the end frame with respect to the length of edge
    ``i`` (right trivialized, in the chart of this module).
    """
    _, _, frames = _walk(angles, lengths, base)
    return -frames[:, :, 2].T


def centering(angles, lengths):
    """Isometry moving the vertex barycenter of the developed path to (1, 0, 0).

    Developing from this frame keeps coordinates of the size of the polygon
    radius instead of its diameter, which lowers rounding errors.
    """
    path = _walk(angles, lengths)[1]
    return frame_inverse(frame_at(normalize_h(path[1:].mean(axis=0))))


def closure_residual(angles, lengths):
    """Logarithm of the end frame in R^2_1; zero iff the path closes.

    Evaluated on the centered development: for an isometry ``h`` the chart
    satisfies ``logm(h E h^-1) = h logm(E)``, so the residual is moved back
    by ``h^-1`` after taking the logarithm.
    """
    h = centering(angles, lengths)
    end = _walk(angles, lengths, base=h)[0] @ frame_inverse(h)
    return frame_inverse(h) @ logm(end)


def jacobian(angles, lengths):
    """Jacobian of :func:`closure_residual` at a closed polygon.

    Column ``i`` is the outward dual ``e_i*`` of edge ``i``.
    """
    _, _, frames = _walk(angles, lengths)
    res = np.linalg.norm(closure_residual(angles, lengths))
    if res > CLOSURE_TOL:
        raise PreconditionViolation(
            f"jacobian needs a closed polygon (closure residual {res:.3g})"
        )
    return -frames[:, :, 2].T
