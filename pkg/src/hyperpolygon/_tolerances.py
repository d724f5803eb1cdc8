"""Numerical tolerances shared across the package.

Every threshold used for a membership test or a geometric identity lives
here so that the policy can be audited in one place.
"""

#: |x.x - (-1)| or |x.x - 1| allowed for points of H^2 / S^2_1
QUADRIC_TOL = 1e-12
#: relative bound |x.x| <= LIGHTLIKE_RTOL * |x|_E^2 for light-like vectors
LIGHTLIKE_RTOL = 1e-12
#: generic geometric identities (incidence, orthogonality)
GEOMETRY_TOL = 1e-10
#: Euclidean distance below which two points are considered equal
COINCIDENT_TOL = 1e-12

#: closure residual accepted by ``build`` / ``jacobian``
CLOSURE_TOL = 1e-8
#: closure residual reached by Newton projection
PROJECTION_TOL = 1e-10
#: support-function slack for the convexity test
CONVEXITY_TOL = 1e-9
#: recomputed interior angles vs prescribed ones
ANGLE_TOL = 1e-8

#: log branch is refused when the rotation angle is this close to pi
LOG_BRANCH_TOL = 1e-6

#: singular-value ratio separating critical from non-critical polygons
CRITICALITY_TOL = 1e-8
#: residual allowed in the two-term dual decomposition at a collapsed vertex
COPLANARITY_TOL = 1e-9
