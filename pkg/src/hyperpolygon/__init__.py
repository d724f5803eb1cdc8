"""Convex hyperbolic polygons of minimal perimeter with prescribed angles.

Among convex polygons in the hyperbolic plane with fixed interior angles,
the perimeter is minimized by the one with an inscribed circle. The
package computes that polygon directly (:func:`solve`) and confirms it
numerically by descending the perimeter over the manifold of all closed
polygons with those angles (:func:`minimize`, :func:`verify_theorem`).
"""

__version__ = "0.1.0"

from hyperpolygon.angles import AngleSpec
from hyperpolygon.developing import closure_residual, develop, jacobian
from hyperpolygon.exceptions import GeometryError, InputError
from hyperpolygon.incircle import IncircleSolution, criticality_residual, incircle_center, solve
from hyperpolygon.optimizer import (
    OptimizerConfig,
    OptimizerTrace,
    boundary_direction,
    minimize,
    verify_theorem,
)
from hyperpolygon.polygon import Polygon, build, perimeter, project, sample, tangent_basis
from hyperpolygon.render import RenderOptions, render_svg

__all__ = [
    "AngleSpec",
    "GeometryError",
    "IncircleSolution",
    "InputError",
    "OptimizerConfig",
    "OptimizerTrace",
    "Polygon",
    "RenderOptions",
    "boundary_direction",
    "build",
    "closure_residual",
    "criticality_residual",
    "develop",
    "incircle_center",
    "jacobian",
    "minimize",
    "perimeter",
    "project",
    "render_svg",
    "sample",
    "solve",
    "tangent_basis",
    "verify_theorem",
]
