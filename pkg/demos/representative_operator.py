"""
The representative operator of a channel
========================================

Every unital completely positive map ``T`` on ``n × n`` matrices is encoded by
an operator ``ρ_T = Σ T(e_ij) ⊗ e_ij`` on the doubled space. Positivity of
``ρ_T`` is complete positivity of ``T``, and tracing out the second factor
returns ``T(I) = I``.
"""

import numpy as np

from chanent.channels import Channel, random_unital_kraus
from chanent.choi import reconstruct, representative_operator, verify_properties
from chanent.matrix_kernel import partial_trace_second

rng = np.random.default_rng(0)

# A random unital channel with three Kraus operators.
t = random_unital_kraus(2, 3, rng)
rho = representative_operator(t)
print("spectrum of rho_T:", np.round(rho.spectrum, 4))
print("trace of rho_T:   ", round(rho.trace, 12))
print("tr_2(rho_T) = I:  ", np.allclose(partial_trace_second(rho.matrix, 2), np.eye(2)))

# The channel can be read back from the operator alone.
back = reconstruct(rho)
x = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
print("round trip error: ", np.max(np.abs(back(x) - t(x))))

# Matrix-element properties: positivity (A), Hermitian symmetry (B) and the
# unital sum rule (C).
print(verify_properties(t).as_dict())

# The transpose map is positive and unital but not completely positive: its
# representative operator is the swap, which has eigenvalue -1.
flip = Channel.transpose(2)
print("transpose spectrum:", np.round(representative_operator(flip).spectrum, 4))
print("transpose properties:", verify_properties(flip).as_dict())
