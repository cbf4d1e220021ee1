# Walk through one block encoding end to end on the 8x8 cyclic graph matrix.
import numpy as np

from dictblock import (assemble, build_dictionary, decompose, depth, export_qasm, import_qasm, to_dense,
                       verify_block_encoding)
from dictblock.applications import gen_cyclic_laplacian
from dictblock.synthesis import BlockEncoding

np.set_printoptions(precision=3, suppress=True, linewidth=120)

# vertex weight 3, edge weights 2 (forward) and 1 (backward)
A, d = gen_cyclic_laplacian(3, 3, 2, 1)
print(to_dense(A).real)

# the generator hands back its own dictionary: one item per diagonal
for l, item in enumerate(d.items):
    print(l, item.value.real, item.mapping)

# the automatic builder finds the same three items from the nonzeros alone
auto = build_dictionary(A)
print("auto items:", auto.s0, sorted(it.value.real for it in auto.items))

# assemble the circuit: PREP, O_c, select of the data values, O_c^dag, UNPREP
be = assemble(d)
print(be.layout)
print("alpha =", be.alpha, " qubits =", be.circuit.num_qubits)

rep = verify_block_encoding(be, A)
print(rep)

# lower to CX + single-qubit gates, then round-trip through OpenQASM
low = be.decomposed().circuit
print("decomposed qubits:", low.num_qubits, "gates:", len(low.gates), "depth:", depth(low))
text = export_qasm(low)
print(text.splitlines()[:6])
back = BlockEncoding(import_qasm(text, low.layout), be.alpha)
print(verify_block_encoding(back, A))

# a wrong alpha shows up as a large epsilon
bad = BlockEncoding(be.circuit, 2 * be.alpha)
print("corrupted alpha eps:", verify_block_encoding(bad, A).epsilon)
