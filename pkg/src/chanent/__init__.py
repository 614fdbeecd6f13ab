"""Entropy of unital completely positive maps on matrix algebras.

Modules:

- :mod:`chanent.matrix_kernel` -- Kronecker products, partial traces, Jacobi eigensolver
- :mod:`chanent.channels` -- channels in superoperator, Kraus, stochastic and state form
- :mod:`chanent.choi` -- representative operator, its properties, reconstruction, extremality
- :mod:`chanent.entropy` -- spectral entropies
- :mod:`chanent.decomposition` -- exact channel entropy of classical channels
- :mod:`chanent.cli` -- the ``chanent`` command
"""
from chanent.channels import (
    Channel,
    DensityOperator,
    check_completely_positive,
    check_unital,
    classical_embed,
    state_channel,
)
from chanent.choi import (
    RepresentativeOperator,
    is_extremal_choi,
    matrix_elements,
    reconstruct,
    representative_operator,
    verify_properties,
)
from chanent.decomposition import (
    DeterministicMap,
    EntropyReport,
    ExtremalDecomposition,
    channel_entropy_classical,
    decomposition_polytope,
    enumerate_deterministic,
    minimize_F_closed_form,
    state_channel_entropy_upper,
    verify_inequality,
)
from chanent.entropy import choi_entropy, eigen_entropy, ohya_entropy
from chanent.errors import (
    CapacityError,
    ChanentError,
    ContractViolation,
    DimensionError,
    ValidationError,
)
from chanent.matrix_kernel import Spectrum, hermitian_eig, is_psd, kron, partial_trace_second

__version__ = "0.1.0"
