"""
Channels that prepare a state
=============================

The map ``T_φ(x) = φ(x) I`` forgets its input and outputs the expectation under
a state ``φ``. It is extremal exactly when ``φ`` is pure, and splitting a mixed
``φ`` into its eigenvectors gives a decomposition into extremal channels whose
mixing entropy is the von Neumann entropy of ``φ``.
"""

import numpy as np

from chanent import DensityOperator, ohya_entropy, state_channel
from chanent.choi import is_extremal_choi
from chanent.decomposition import state_channel_decomposition, state_channel_entropy_upper
from chanent.entropy import choi_entropy

pure = DensityOperator.pure([0.6, 0.8j])
mixed = DensityOperator(np.array([[0.7, 0.2], [0.2, 0.3]]))

for name, phi in (("pure", pure), ("mixed", mixed)):
    t = state_channel(phi)
    print(f"{name:>5s}: extremal {is_extremal_choi(t)}, h(phi) = {ohya_entropy(phi):.6f}")

weights, parts = state_channel_decomposition(mixed)
print("spectral weights:", np.round(weights, 6))
print("each part extremal:", all(is_extremal_choi(c) for c in parts))
print(f"upper bound on H(T): {state_channel_entropy_upper(mixed):.6f}")

# rho_T = I ⊗ θᵀ, so its entropy repeats that of the state once per input level.
print(f"d(rho_T) = {choi_entropy(state_channel(mixed)):.6f} = 2 h(phi)")
