"""Exception types with a fixed CLI exit-code mapping.

Argument problems (bad ranges, unknown identifiers) raise ValueError or a
subclass and exit with code 2; model precondition violations (equivariance,
pole singularities, off-manifold evaluations, non-conformal probes) raise
ModelError subclasses and exit with code 3.
"""

from __future__ import annotations


class ModelError(Exception):
    """A mathematical precondition of an operation is violated."""


class EquivarianceError(ModelError):
    """Projective-domain quadrature requested for a map that does not descend."""


class PoleError(ModelError):
    """Operation undefined at or too close to a pole of the construction."""


class TargetConsistencyError(ModelError):
    """Map evaluation landed off the target manifold beyond tolerance."""


class ConformalPreconditionError(ModelError):
    """Probe point is not conformal to the required tolerance."""
