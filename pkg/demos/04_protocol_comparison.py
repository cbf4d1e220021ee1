# Cost models side by side, and where the dictionary encoding pulls ahead.
import numpy as np

from dictblock import frobenius_baseline, from_dense, verify_block_encoding
from dictblock.applications import gen_cyclic_laplacian
from dictblock.resources import compare, dictionary_cost, prep_unprep_cost, to_text

# unit weights: few distinct values, so the value-based protocol is competitive
A, d = gen_cyclic_laplacian(4, 1, 1, 1)
print(to_text(compare(A, d)))

# random weights on the same pattern: every entry distinct
rng = np.random.default_rng(3)
A, d = gen_cyclic_laplacian(4, *rng.uniform(0.5, 2, 3))
print(to_text(compare(A, d)))

# model depth ratio along s = 3 * 2^n, s0 = 3
print(" n   dictionary   prep-unprep   ratio")
for n in range(3, 17):
    dc = dictionary_cost(n, 3 * 2 ** n, 3).depth_model
    pu = prep_unprep_cost(n, 3, 2 ** n, 3, 3).depth_model
    print(f"{n:2d} {dc:12.2f} {pu:13.1f} {pu / dc:7.1f}")

# the Frobenius-norm baseline works for any matrix but pays ||A||_F
M = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
be = frobenius_baseline(from_dense(M))
print("alpha", be.alpha, "vs spectral norm", np.linalg.norm(M, 2))
print(verify_block_encoding(be, from_dense(M)))
