"""Gauge-invariant, path-dependent electromagnetic potentials.

Potentials are built directly from the field-strength tensor by integrating
along families of paths.  The package also computes electromagnetic fluxes,
checks phase quantization conditions, integrates classical world lines and
treats the 1+1 dimensional pair-flux problem.
"""
from .errors import (
    ConfigError,
    IntegrationError,
    PathError,
    PathGaugeError,
    QuadratureError,
    ShootingError,
    SingularFieldError,
)
from .fields import (
    FieldConfig,
    confined_electric_block,
    confined_magnetic_disk,
    monopole,
    uniform_electric,
    uniform_field,
    uniform_magnetic,
    zero_field,
)
from .flux import (
    FluxResult,
    SurfaceSpec,
    flux_loop,
    flux_open,
    flux_surface,
    full_sphere_flux,
    homotopy_surface,
    rectangle_surface,
    sphere_slice,
)
from .paths import LoopSpec, PathFamily, affine_path, builtin_path, concatenate_winding, waypoint_path
from .potential import (
    PotentialSample,
    gauge_compare,
    line_integral,
    nonintegrable_phase,
    path_transform,
    potential_at,
    potential_function,
    potential_grid,
)
from .quantization import QuantizationReport, check_phase, dirac_condition, scan_charges
from .spacetime import CGS, NATURAL, Constants, four_vector, lower, minkowski_dot, raise_index

__version__ = "0.1.0"
