from nsfg.cutoffs.density import DensityCutoff, combined_cutoff, smoothstep, truncated_velocity
from nsfg.cutoffs.phi_n import (
    PhiN,
    phi_n_double_mat,
    phi_n_prime_vec,
    phi_tilde_n,
    phi_tilde_n_double,
    phi_tilde_n_prime,
)

__all__ = [
    "DensityCutoff",
    "PhiN",
    "combined_cutoff",
    "phi_n_double_mat",
    "phi_n_prime_vec",
    "phi_tilde_n",
    "phi_tilde_n_double",
    "phi_tilde_n_prime",
    "smoothstep",
    "truncated_velocity",
]
