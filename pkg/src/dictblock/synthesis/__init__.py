from .encoding import (BlockEncoding, LcuForm, NotLcuExpressibleError, assemble, assemble_hermitian,
                       export_lcu, frobenius_baseline, lcu_circuit)
from .oracles import (BooleanFunctionTable, build_oc, build_oc_hermitian, general_layout, hermitian_layout,
                      oracle_tables, select_f)
from .stateprep import controlled_prepare_gates, dictionary_amplitudes, prepare_state, unprepare_state
from .verify import VerificationReport, extract_block, verify_block_encoding

__all__ = [
    "BlockEncoding", "BooleanFunctionTable", "LcuForm", "NotLcuExpressibleError", "VerificationReport",
    "assemble", "assemble_hermitian", "build_oc", "build_oc_hermitian", "controlled_prepare_gates",
    "dictionary_amplitudes", "export_lcu", "extract_block", "frobenius_baseline", "general_layout",
    "hermitian_layout", "lcu_circuit", "oracle_tables", "prepare_state", "select_f", "unprepare_state",
    "verify_block_encoding",
]
