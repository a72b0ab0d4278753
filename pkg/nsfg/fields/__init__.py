from nsfg.fields.field import ScalarField, VectorField
from nsfg.fields.grid import Grid
from nsfg.fields.ops import (
    dealias,
    dealias_vector,
    derivative,
    divergence,
    gradient,
    inner,
    integrate,
    jacobian,
    laplacian,
    laplacian_power,
    lp_norm,
    refine,
    spectral_coefficients,
    spectral_norm_squared,
    strain,
    tensor_contract,
)

__all__ = [
    "Grid",
    "ScalarField",
    "VectorField",
    "dealias",
    "dealias_vector",
    "derivative",
    "divergence",
    "gradient",
    "inner",
    "integrate",
    "jacobian",
    "laplacian",
    "laplacian_power",
    "lp_norm",
    "refine",
    "spectral_coefficients",
    "spectral_norm_squared",
    "strain",
    "tensor_contract",
]
