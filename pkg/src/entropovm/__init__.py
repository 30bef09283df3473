"""Entropic uncertainty for POVM pairs: numerical engine, scenarios, service."""

__version__ = "0.1.0"

from .linalg import (  # noqa: F401
    EigenDecomposition,
    eig_hermitian,
    gibbs_deficit,
    gibbs_state,
    golden_thompson_deficit,
    matrix_function,
    random_density,
    random_unitary,
    tensor,
    von_neumann_entropy,
)
from .povm import (  # noqa: F401
    FinitePOVM,
    WeightedMeasure,
    dft_basis,
    liouville_matrix,
    measurement_distribution,
    mub_pair,
    povm_coarsen,
    povm_compress,
    povm_from_basis,
    povm_tensor_pair,
    product_majorant,
)
from .uncertainty import (  # noqa: F401
    choi_jensen_deficit,
    constant_K,
    constant_Kprime,
    equality_diagnostics,
    refinement_gap,
    relative_entropy_term,
    uncertainty_deficit,
    trace_product_bound,
)
