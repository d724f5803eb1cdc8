"""Linear algebra of the Lorentz space R^2_1.

Vectors are plain ``numpy`` arrays of shape ``(3,)`` with coordinates
``(x0, x1, x2)`` and bilinear form ``-x0*y0 + x1*y1 + x2*y2``.

Two quadrics carry the geometry:

* the hyperboloid sheet ``x.x = -1, x0 > 0`` (points of H^2, "HPoint");
* the de Sitter sphere ``x.x = 1`` (oriented geodesics of H^2, "DSPoint").

A de Sitter point ``l`` stands for the geodesic ``{x : x.l = 0}`` whose
normal points into the half plane ``x.l > 0``.
"""

import numpy as np

from hyperpolygon._tolerances import COINCIDENT_TOL, LIGHTLIKE_RTOL, QUADRIC_TOL
from hyperpolygon.exceptions import DegenerateInput, InvalidInput

#: Gram matrix of the Lorentz form
MINKOWSKI = np.diag([-1.0, 1.0, 1.0])

SPACELIKE = "spacelike"
TIMELIKE = "timelike"
LIGHTLIKE = "lightlike"


def vec3(a):
    """Coerce ``a`` to a finite float array of shape ``(3,)``."""
    v = np.asarray(a, dtype=float)
    if v.shape != (3,):
        raise InvalidInput(f"expected 3 coordinates, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise InvalidInput("coordinates must be finite")
    return v


def mdot(a, b):
    """Lorentz product ``-a0*b0 + a1*b1 + a2*b2``.

    Broadcasts over leading axes, so ``mdot(points, l)`` with ``points`` of
    shape ``(m, 3)`` returns ``m`` products.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return -a[..., 0] * b[..., 0] + a[..., 1] * b[..., 1] + a[..., 2] * b[..., 2]


def mnorm2(a):
    return mdot(a, a)


def classify(a):
    """Return ``"spacelike"``, ``"timelike"`` or ``"lightlike"``.

    Light-like detection is relative to the Euclidean norm, so the answer
    does not depend on the scale of ``a``.
    """
    a = vec3(a)
    e2 = float(a @ a)
    if e2 == 0.0:
        raise InvalidInput("the zero vector has no causal type")
    q = float(mdot(a, a))
    if abs(q) <= LIGHTLIKE_RTOL * e2:
        return LIGHTLIKE
    return SPACELIKE if q > 0 else TIMELIKE


def mcross(u, v):
    """Lorentz cross product: the vector ``z`` with ``z.w = det(u, v, w)``.

    Since ``det(u, v, w)`` is the Euclidean product of ``u x v`` with
    ``w``, ``z`` is the Euclidean cross product with its time component
    negated.
    """
    return MINKOWSKI @ np.cross(u, v)


def normalize_h(a):
    """Scale a time-like vector onto the upper sheet of the hyperboloid."""
    a = vec3(a)
    if classify(a) != TIMELIKE:
        raise InvalidInput("normalize_h needs a time-like vector")
    a = a / np.sqrt(-mdot(a, a))
    return -a if a[0] < 0 else a


def normalize_s(a):
    """Scale a space-like vector onto the de Sitter sphere."""
    a = vec3(a)
    if classify(a) != SPACELIKE:
        raise InvalidInput("normalize_s needs a space-like vector")
    return a / np.sqrt(mdot(a, a))


def is_hpoint(a, tol=QUADRIC_TOL):
    a = np.asarray(a, dtype=float)
    return bool(a[0] > 0 and abs(mdot(a, a) + 1.0) <= tol * max(1.0, a @ a))


def is_dspoint(a, tol=QUADRIC_TOL):
    a = np.asarray(a, dtype=float)
    return bool(abs(mdot(a, a) - 1.0) <= tol * max(1.0, a @ a))


def signed_distance(p, l):
    """Oriented distance from the point ``p`` to the geodesic dual to ``l``.

    Uses ``p.l = sinh(d)``; the distance is positive on the side the
    normal of ``l`` points to.
    """
    return float(np.arcsinh(mdot(p, l)))


def distance(p, q):
    """Hyperbolic distance between two points of H^2."""
    return float(np.arccosh(max(1.0, -mdot(p, q))))


def line_through(a, b):
    """Dual of the geodesic through ``a`` and ``b``, oriented by travel.

    The result is ``normalize_s(mcross(a, b))``: walking from ``a`` to
    ``b`` in the counter-clockwise oriented plane, its normal points to
    the left of the direction of travel. Polygon code flips it to obtain
    outward normals.
    """
    a = vec3(a)
    b = vec3(b)
    if np.linalg.norm(a - b) < COINCIDENT_TOL:
        raise DegenerateInput("line_through needs two distinct points")
    return normalize_s(mcross(a, b))


def hyperboloid_point(x1, x2):
    """Point of H^2 with given space coordinates."""
    return np.array([np.sqrt(1.0 + x1 * x1 + x2 * x2), x1, x2])
