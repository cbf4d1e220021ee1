"""Dictionary-based block encodings of sparse structured matrices."""

from .applications import (GepParameters, gen_cyclic_laplacian, gen_gep_matrices, gen_laplacian2d,
                           gep_stencil_mismatches, gep_subnormalizations)
from .circuit import Circuit, MustDecomposeError, RegisterLayout, decompose, depth
from .dictionary import (DataItem, Dictionary, DictionaryCapacityError, DictionaryError, DomainError,
                         HermitianDictionary, build_dictionary, hermitianize, subnormalization, to_matrix,
                         validate)
from .numerics import ConvergenceError, principal_sqrt, spectral_norm
from .qasm import export_qasm, import_qasm
from .resources import (ResourceReport, compare, csp_cost, dictionary_cost, prep_unprep_cost, sbm_cost)
from .simulate import apply_to_state, to_unitary
from .sparse import (CapacityError, MatrixMarketError, SparseMatrix, dump_matrix_market, frobenius_norm,
                     from_dense, load_matrix_market, to_dense)
from .synthesis import (BlockEncoding, BooleanFunctionTable, LcuForm, NotLcuExpressibleError,
                        VerificationReport, assemble, assemble_hermitian, build_oc, export_lcu,
                        frobenius_baseline, prepare_state, select_f, verify_block_encoding)

__version__ = "0.1.0"
