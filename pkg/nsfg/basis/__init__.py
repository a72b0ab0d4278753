from nsfg.basis.galerkin import (
    GalerkinBasis,
    GalerkinVelocity,
    ScalarMode,
    build_basis,
    project,
    reconstruct,
    resolvable_mode_count,
    scalar_mode_field,
    sup_norm_constant,
)

__all__ = [
    "GalerkinBasis",
    "GalerkinVelocity",
    "ScalarMode",
    "build_basis",
    "project",
    "reconstruct",
    "resolvable_mode_count",
    "scalar_mode_field",
    "sup_norm_constant",
]
