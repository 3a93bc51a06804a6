"""atomech - Parameters

Laboratory inputs, the TOML loader and derived single quantities.
"""

from atomech.params.derive import (
    alpha_from_power,
    derive_all,
    derive_from,
    field_amplitude,
    zero_point_length,
)
from atomech.params.loader import (
    clear_params_cache,
    example_config,
    get_params,
    load_physical_params,
    parse_params,
)
from atomech.params.models import (
    AreaConvention,
    AtomParams,
    Conventions,
    DerivedQuantities,
    GeometryParams,
    LaserParams,
    MechParams,
    MechVariant,
    MimDiffusion,
    PhysicalParams,
    SearchBounds,
)

__all__ = [
    "AreaConvention",
    "AtomParams",
    "Conventions",
    "DerivedQuantities",
    "GeometryParams",
    "LaserParams",
    "MechParams",
    "MechVariant",
    "MimDiffusion",
    "PhysicalParams",
    "SearchBounds",
    "alpha_from_power",
    "clear_params_cache",
    "derive_all",
    "derive_from",
    "example_config",
    "field_amplitude",
    "get_params",
    "load_physical_params",
    "parse_params",
    "zero_point_length",
]
