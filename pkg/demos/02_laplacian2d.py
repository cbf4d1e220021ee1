# Five-point Laplacian on a 4x4 grid: dictionary, encoding and the cost models.
import numpy as np

from dictblock import assemble, verify_block_encoding
from dictblock.applications import gen_laplacian2d
from dictblock.resources import compare, to_text

A, d = gen_laplacian2d(4, 4, 1.0, 1.0)
print("n =", A.n, " nnz =", A.nnz, " items =", d.s0, " s =", d.s)
for item in d.items:
    print(f"  value {item.value.real:+.1f} on {len(item)} columns")

be = assemble(d)
print("alpha =", be.alpha, " qubits =", be.circuit.num_qubits)
print(verify_block_encoding(be, A))

# the block times alpha reproduces A; look at one column
from dictblock.synthesis.verify import extract_block
col = extract_block(be, columns=[5])[:, 0] * be.alpha
print(np.round(col.real, 12))

# a stretched grid changes the values but not the structure
A2, d2 = gen_laplacian2d(4, 4, 0.5, 2.0)
print("dx=0.5 dy=2:", sorted({round(v.real, 4) for v in d2.values}), "alpha =", assemble(d2).alpha)

print(to_text(compare(A, d)))
