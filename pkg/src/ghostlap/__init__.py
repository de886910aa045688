"""Ghost-point finite-difference Laplacian matrices: assembly, closed-form
inverse norms, spectral-distribution checks and convergence studies."""

from .errors import (DimensionError, DistributionTypeError, DomainError, GeometryError,
                     GhostLapError, NumericError, ResourceError, SingularityError,
                     UnsupportedError)
from .harness import convergence_study, lp_norm, min_eig_study, solve
from .model1d import (assemble_system_1d, bc_coefficients, consistency_error, grid_from_theta,
                      rank_one_decomposition, unit_grid)
from .model2d import (GhostGrid2D, assemble_system_2d, decompose_2d, numeric_norms_2d,
                      smw_inverse_2d)
from .norms1d import (norm_A_inv, norm_R, norm_report, norm_S_inv, norm_S_inv_2, r_entry,
                      smw_inverse)
from .spectra import (cluster_check, eigenvalues, empirical_vs_symbol, glt2_hypothesis_check,
                      zero_distribution_check)
from .toeplitz import (TrigSymbol, assemble_multilevel_toeplitz, assemble_toeplitz,
                       condition_number_S, diagonal_sampling, dst_eigendecomposition,
                       inverse_entry, lex_linearize, trace_norm_bound)

__version__ = "0.1.0"

__all__ = [
    "DimensionError",
    "DistributionTypeError",
    "DomainError",
    "GeometryError",
    "GhostLapError",
    "NumericError",
    "ResourceError",
    "SingularityError",
    "UnsupportedError",
    "convergence_study",
    "lp_norm",
    "min_eig_study",
    "solve",
    "assemble_system_1d",
    "bc_coefficients",
    "consistency_error",
    "grid_from_theta",
    "rank_one_decomposition",
    "unit_grid",
    "GhostGrid2D",
    "assemble_system_2d",
    "decompose_2d",
    "numeric_norms_2d",
    "smw_inverse_2d",
    "norm_A_inv",
    "norm_R",
    "norm_report",
    "norm_S_inv",
    "norm_S_inv_2",
    "r_entry",
    "smw_inverse",
    "cluster_check",
    "eigenvalues",
    "empirical_vs_symbol",
    "glt2_hypothesis_check",
    "zero_distribution_check",
    "TrigSymbol",
    "assemble_multilevel_toeplitz",
    "assemble_toeplitz",
    "condition_number_S",
    "diagonal_sampling",
    "dst_eigendecomposition",
    "inverse_entry",
    "lex_linearize",
    "trace_norm_bound",
]
