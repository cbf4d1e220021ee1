# Ice/seawater generalized eigenproblem matrices built from their index tables.
from dictblock import assemble, validate, verify_block_encoding
from dictblock.applications import GepParameters, gen_gep_matrices, gep_stencil_mismatches, gep_subnormalizations
from dictblock.dictionary import subnormalization

p = GepParameters.random(2, 3, seed=1)
(A, dA), (B, dB) = gen_gep_matrices(p)
print("dimension", p.dim, "padded to", A.dim)
print("A: items", dA.s0, "nonzeros", A.nnz, " closed form 5+24N1+3N2 =", 5 + 24 * p.N1 + 3 * p.N2)
print("B: items", dB.s0, "nonzeros", B.nnz, " closed form 3+6N1+N2 =", 3 + 6 * p.N1 + p.N2)
# the tables give 20N1+3N2+7 and 6N1+N2+1 entries; the closed forms do not match them

print("valid:", validate(dA, A).ok, validate(dB, B).ok)
print("alpha A, B:", subnormalization(dA), subnormalization(dB))
print("closed-form sums:", gep_subnormalizations(p))

# tables against the drawn submatrix stencils
for which in "AB":
    bad = gep_stencil_mismatches(p, which)
    print(which, "mismatches:", len(bad))
    for m in bad[:6]:
        print("   ", m)

be = assemble(dA)
print("A encoding on", be.circuit.num_qubits, "qubits")
print(verify_block_encoding(be, A, tol=1e-8))
