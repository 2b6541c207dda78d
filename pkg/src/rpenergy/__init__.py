"""Numerical laboratory for the energy of maps between real projective
spaces: cross-validating Monte Carlo energy estimators, explicit
energy-reducing deformations, and the sharp bound constants they satisfy.
"""

from .bounds import (
    BoundsReport,
    HomotopyClassData,
    bounds_report,
    constant_C,
    constant_D,
    prop5_ratio,
    pu_predicate,
    upper_constant_identity,
)
from .deformations import (
    DeformedEnergy,
    DilationMap,
    GraphInflationRow,
    ProjectiveDeformation,
    RetractionLimit,
    deformed_energy,
    dilation_apply,
    dilation_energy_curve,
    graph_inflation_report,
    projective_deformation_apply,
    quadrature_identity_check,
    retraction_limit_energy,
    standard_dilation,
    standard_projective_deformation,
)
from .energy_estimators import (
    EnergyEstimate,
    area_2d,
    croke_energy,
    default_samples,
    direct_energy,
    slice_energy,
    slice_total_measure,
    split_slice_budget,
    total_conformal_defect,
)
from .errors import (
    ConformalPreconditionError,
    EquivarianceError,
    ModelError,
    PoleError,
    TargetConsistencyError,
)
from .map_model import (
    EmbeddedTarget,
    MapDifferential,
    SmoothMap,
    area_density_2d,
    catalog,
    conformal_defect_2d,
    conformal_residual,
    differential,
    energy_density,
    graph_map,
    precompose_frame,
    precompose_isometry,
    restrict_to_equator,
    tension_field,
)
from .spherical_geometry import (
    GrassmannPlane,
    SpherePoint,
    TangentFrame,
    UnitTangentSample,
    band_volume,
    canonical_lift,
    cos_power_integral,
    projective_volume,
    sample_grassmann,
    sample_uniform_sphere,
    sample_unit_tangent,
    sphere_volume,
    stereographic_forward,
    stereographic_inverse,
    tangent_frame,
)

__version__ = "0.1.0"

__all__ = [
    "BoundsReport",
    "ConformalPreconditionError",
    "DeformedEnergy",
    "DilationMap",
    "EmbeddedTarget",
    "EnergyEstimate",
    "EquivarianceError",
    "GraphInflationRow",
    "GrassmannPlane",
    "HomotopyClassData",
    "MapDifferential",
    "ModelError",
    "PoleError",
    "ProjectiveDeformation",
    "RetractionLimit",
    "SmoothMap",
    "SpherePoint",
    "TangentFrame",
    "TargetConsistencyError",
    "UnitTangentSample",
    "area_2d",
    "area_density_2d",
    "band_volume",
    "bounds_report",
    "canonical_lift",
    "catalog",
    "conformal_defect_2d",
    "conformal_residual",
    "constant_C",
    "constant_D",
    "cos_power_integral",
    "croke_energy",
    "default_samples",
    "deformed_energy",
    "differential",
    "dilation_apply",
    "dilation_energy_curve",
    "direct_energy",
    "energy_density",
    "graph_inflation_report",
    "graph_map",
    "precompose_frame",
    "precompose_isometry",
    "projective_deformation_apply",
    "projective_volume",
    "prop5_ratio",
    "pu_predicate",
    "quadrature_identity_check",
    "restrict_to_equator",
    "retraction_limit_energy",
    "sample_grassmann",
    "sample_uniform_sphere",
    "sample_unit_tangent",
    "slice_energy",
    "slice_total_measure",
    "sphere_volume",
    "split_slice_budget",
    "standard_dilation",
    "standard_projective_deformation",
    "stereographic_forward",
    "stereographic_inverse",
    "tangent_frame",
    "tension_field",
    "total_conformal_defect",
    "upper_constant_identity",
]
