"""Screw-symmetric tube surfaces in Euclidean space and Minkowski spacetime:
metric splits, curvature, geodesics and Fermi frames of the central helix."""

from .curvature import gaussian_curvature, principal_curvatures, scalar_curvature
from .errors import (
    AdmissibilityError,
    CavageoError,
    ChartDomainError,
    IntegrationStall,
    InvalidSpecError,
)
from .geodesic import (
    CausalClass,
    ConservedPair,
    GeodesicState,
    GeodesicTrace,
    InitialSpec,
    christoffel,
    conserved,
    initial_data,
    integrate,
    integrate_batch,
)
from .metric import (
    metric_closed_form,
    metric_oracle,
    slicing_split,
    surface_area_one_rev,
    threading_split,
)
from .orbits import (
    cumulative_zero_ell_azimuth,
    delta_u_per_revolution,
    null_pair_return,
    periodic_search,
    zero_ell_quadrature,
)
from .potential import OrbitClass, classify, effective_potential, turning_points
from .surface import Signature, SurfaceParams, embed, preset
from .validate import ValidationConfig, ValidationReport, run_suite, second_fundamental_form_oracle

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityError",
    "CausalClass",
    "CavageoError",
    "ChartDomainError",
    "ConservedPair",
    "GeodesicState",
    "GeodesicTrace",
    "InitialSpec",
    "IntegrationStall",
    "InvalidSpecError",
    "OrbitClass",
    "Signature",
    "SurfaceParams",
    "ValidationConfig",
    "ValidationReport",
    "christoffel",
    "classify",
    "conserved",
    "cumulative_zero_ell_azimuth",
    "delta_u_per_revolution",
    "effective_potential",
    "embed",
    "gaussian_curvature",
    "initial_data",
    "integrate",
    "integrate_batch",
    "metric_closed_form",
    "metric_oracle",
    "null_pair_return",
    "periodic_search",
    "preset",
    "principal_curvatures",
    "run_suite",
    "scalar_curvature",
    "second_fundamental_form_oracle",
    "slicing_split",
    "surface_area_one_rev",
    "threading_split",
    "turning_points",
    "zero_ell_quadrature",
]
