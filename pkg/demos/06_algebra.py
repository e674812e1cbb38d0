# Kemmer algebra of the 5x5 spin-0 DKP matrices, and the curved-space versions.
import itertools

import numpy as np

from rainbow_dkp.algebra import Signature, beta_flat, curved_beta, kemmer_residual, tetrads
from rainbow_dkp.rainbow import RainbowPair, metric_at

print(beta_flat(0))
print("(beta^0)^3 == beta^0:", np.array_equal(beta_flat(0) @ beta_flat(0) @ beta_flat(0), beta_flat(0)))

# %% the algebra closes only with eta = diag(+, -, -, -)
for sig in Signature:
    ok = sum(not kemmer_residual(*t, sig).any() for t in itertools.product(range(4), repeat=3))
    print(f"{sig.value}: {ok}/64")
print(kemmer_residual(0, 0, 0, Signature.MOSTLY_PLUS))

# %% tetrads rebuild the rainbow cosmic-string metric
pair = RainbowPair("case1", 0.5)
print(tetrads(pair, 0.5, 1.0, 0.7).metric())
print(metric_at(pair, 0.5, 1.0, 0.7).as_tuple())
print(curved_beta("r", pair, 0.5, 1.0, 1.0))
