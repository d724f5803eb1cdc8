"""Prescribed interior angles of a convex hyperbolic polygon."""

from dataclasses import dataclass

import numpy as np

from hyperpolygon.exceptions import InvalidInput


@dataclass(frozen=True)
class AngleSpec:
    """Ordered interior angles ``beta_1, ..., beta_n`` in radians.

    A convex hyperbolic polygon with these angles exists exactly when every
    angle lies in ``(0, pi)`` and the exterior angles ``pi - beta_i`` add
    up to more than ``2*pi``.
    """

    beta: tuple

    def __post_init__(self):
        beta = tuple(float(b) for b in np.ravel(np.asarray(self.beta, dtype=float)))
        object.__setattr__(self, "beta", beta)
        if len(beta) < 3:
            raise InvalidInput(f"a polygon needs at least 3 angles, got {len(beta)}")
        if not all(np.isfinite(b) and 0.0 < b < np.pi for b in beta):
            raise InvalidInput("every angle must lie strictly between 0 and pi")
        excess = self.exterior_sum - 2 * np.pi
        if not excess > 0:
            raise InvalidInput(
                "angles are not admissible: the exterior angles pi - beta_i must sum "
                f"to more than 2*pi (sum is {self.exterior_sum:.6g})"
            )

    @classmethod
    def from_degrees(cls, degrees):
        return cls(np.radians(np.asarray(degrees, dtype=float)))

    @property
    def n(self):
        return len(self.beta)

    @property
    def array(self):
        return np.array(self.beta)

    @property
    def exterior_sum(self):
        return float(np.sum(np.pi - np.array(self.beta)))

    def __len__(self):
        return len(self.beta)

    def rolled(self, shift):
        """Cyclic relabelling ``beta_i -> beta_{i - shift}``."""
        return AngleSpec(np.roll(self.array, shift))


def as_angle_spec(angles):
    """Accept an :class:`AngleSpec` or any sequence of radians."""
    if isinstance(angles, AngleSpec):
        return angles
    return AngleSpec(angles)


def check_lengths(lengths, n):
    """Validate an edge-length vector against ``n`` edges."""
    l = np.asarray(lengths, dtype=float)
    if l.shape != (n,):
        raise InvalidInput(f"expected {n} edge lengths, got shape {l.shape}")
    if not np.all(np.isfinite(l)):
        raise InvalidInput("edge lengths must be finite")
    if np.any(l < 0):
        raise InvalidInput("edge lengths must be non-negative")
    return l
