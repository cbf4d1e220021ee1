"""Complete block encodings assembled from dictionaries (or dense rows)."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from ..circuit import MCX, Circuit, RegisterLayout, Swap, decompose
from ..dictionary import Dictionary, DictionaryError, HermitianDictionary, subnormalization, validate
from ..numerics import principal_sqrt
from ..sparse import SparseMatrix, frobenius_norm, qubits_for
from .oracles import (DEL0, DEL1, IDX, SYSTEM, build_oc, build_oc_hermitian, general_layout,
                      hermitian_layout)
from .stateprep import controlled_prepare_gates, dictionary_amplitudes, prepare_state, unprepare_state


@dataclass
class BlockEncoding:
    """``circuit`` holds ``A / alpha`` in the block where every non-system qubit is ``|0>``."""

    circuit: Circuit
    alpha: float
    source: object = None
    hermitian: bool = False
    system: str = SYSTEM

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError("subnormalization must be positive")

    @property
    def layout(self) -> RegisterLayout:
        return self.circuit.layout

    @property
    def n(self) -> int:
        return self.layout[self.system].size

    @property
    def ancilla_count(self) -> int:
        return self.circuit.num_qubits - self.n

    def decomposed(self) -> "BlockEncoding":
        return BlockEncoding(decompose(self.circuit), self.alpha, self.source, self.hermitian, self.system)

    def to_json(self) -> str:
        """``{qasm, layout, alpha}``; the circuit is decomposed first if needed."""
        from ..qasm import export_qasm

        c = self.circuit if self.circuit.is_elementary() else decompose(self.circuit)
        doc = {
            "alpha": self.alpha,
            "hermitian": self.hermitian,
            "system": self.system,
            "layout": c.layout.as_dict(),
            "qasm": export_qasm(c),
        }
        return json.dumps(doc, indent=1) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "BlockEncoding":
        from ..qasm import import_qasm

        doc = json.loads(text)
        layout = RegisterLayout.from_dict(doc["layout"])
        return cls(import_qasm(doc["qasm"], layout), float(doc["alpha"]), None,
                   bool(doc.get("hermitian", False)), doc.get("system", SYSTEM))


def _require_valid(d: Dictionary):
    report = validate(d)
    if not report.ok:
        raise DictionaryError(f"invalid dictionary:\n{report}")


def assemble(d: Dictionary) -> BlockEncoding:
    """``(UNPREP x I) O_c (PREP x I)`` with subnormalization ``sum |A_l|``."""
    _require_valid(d)
    layout = general_layout(d)
    idx = layout.qubits(IDX)
    amps = dictionary_amplitudes(d.values, d.m)
    c = prepare_state(amps, idx, layout)
    c.compose(build_oc(d, layout))
    c.compose(unprepare_state(amps, idx, layout))
    return BlockEncoding(c, subnormalization(d), d)


def assemble_hermitian(d: HermitianDictionary) -> BlockEncoding:
    """``PREP^dag O_c^dag (SWAP(del1, del0) x SWAP(idx, system)) O_c PREP``, Hermitian by construction."""
    if not isinstance(d, HermitianDictionary):
        raise DictionaryError("assemble_hermitian needs a HermitianDictionary (see hermitianize)")
    _require_valid(d)
    layout = hermitian_layout(d)
    idx = layout.qubits(IDX)
    amps = dictionary_amplitudes(d.values, d.m)
    prep = prepare_state(amps, idx[: d.m], layout)
    oc = build_oc_hermitian(d, layout)
    middle = Circuit(layout)
    middle.append(Swap(layout.qubits(DEL1)[0], layout.qubits(DEL0)[0]))
    for a, b in zip(idx, layout.qubits(SYSTEM)):
        middle.append(Swap(a, b))
    c = prep.copy()
    c.compose(oc).compose(middle).compose(oc.adjoint()).compose(prep.adjoint())
    return BlockEncoding(c, subnormalization(d), d, hermitian=True)


# -- LCU form -----------------------------------------------------------------------

class NotLcuExpressibleError(DictionaryError):
    def __init__(self, message, item=None, columns=None):
        super().__init__(message)
        self.item = item
        self.columns = columns


@dataclass
class LcuForm:
    """``sum_l values[l] * X^{masks[l]}`` on the system register."""

    n: int
    values: tuple[complex, ...]
    masks: tuple[int, ...]

    @property
    def coefficients(self) -> tuple[complex, ...]:
        return tuple(principal_sqrt(v) for v in self.values)

    def term(self, l: int, with_del: bool = False) -> np.ndarray:
        """Permutation matrix of ``X^{t_l}`` (identity on a leading del qubit if requested)."""
        dim = 1 << self.n
        P = np.zeros((dim, dim), dtype=complex)
        P[np.arange(dim) ^ self.masks[l], np.arange(dim)] = 1.0
        return np.kron(np.eye(2), P) if with_del else P

    def operator(self) -> np.ndarray:
        dim = 1 << self.n
        M = np.zeros((dim, dim), dtype=complex)
        cols = np.arange(dim)
        for v, t in zip(self.values, self.masks):
            M[cols ^ t, cols] += v
        return M


def export_lcu(d: Dictionary) -> LcuForm:
    """Read a dictionary as a linear combination of X-string unitaries.

    Every item must cover all ``2**n`` columns with ``c_l(j) XOR j`` constant.
    """
    dim = 1 << d.n
    masks = []
    for l, item in enumerate(d.items):
        if len(item) != dim:
            missing = next(j for j in range(dim) if j not in item.mapping)
            raise NotLcuExpressibleError(
                f"not-lcu-expressible: item {l} does not cover column {missing}", l, (missing,)
            )
        t0 = None
        j0 = None
        for j, i in item.pairs:
            t = i ^ j
            if t0 is None:
                t0, j0 = t, j
            elif t != t0:
                raise NotLcuExpressibleError(
                    f"not-lcu-expressible: item {l} shifts column {j0} by {t0} but column {j} by {t}",
                    l, (j0, j),
                )
        masks.append(t0)
    return LcuForm(d.n, tuple(d.values), tuple(masks))


def lcu_circuit(lcu: LcuForm) -> BlockEncoding:
    """PREP, SELECT over ``X^{t_l}``, UNPREP on registers (system, idx)."""
    m = qubits_for(len(lcu.values))
    layout = RegisterLayout([(SYSTEM, lcu.n), (IDX, m)])
    idx, sys_ = layout.qubits(IDX), layout.qubits(SYSTEM)
    amps = dictionary_amplitudes(lcu.values, m)
    c = prepare_state(amps, idx, layout)
    for l, t in enumerate(lcu.masks):
        targets = tuple(q for b, q in enumerate(sys_) if (t >> b) & 1)
        if targets:
            c.append(MCX(idx, tuple((l >> b) & 1 for b in range(m)), targets))
    c.compose(unprepare_state(amps, idx, layout))
    alpha = math.fsum(abs(v) for v in lcu.values)
    return BlockEncoding(c, alpha, lcu)


# -- Frobenius-norm baseline --------------------------------------------------------

ANC = "anc"


def frobenius_baseline(A: SparseMatrix) -> BlockEncoding:
    """``U_R^dag SWAP (U_L x I)`` with subnormalization ``||A||_F``.

    ``U_L`` loads the row norms on the ancilla register; ``U_R`` is the
    controlled preparation ``|0>|j> -> |conj(A_j)/||A_j||>|j>``. The conjugate
    is what makes the block equal to ``A`` rather than its entrywise conjugate.
    """
    if A.nnz == 0:
        raise ValueError("the zero matrix has no Frobenius-norm block encoding")
    n, dim = A.n, A.dim
    fro = frobenius_norm(A)
    rows = np.zeros((dim, dim), dtype=complex)
    for t in A.triplets:
        rows[t.row, t.col] = t.value
    norms = np.array([math.sqrt(math.fsum(abs(x) ** 2 for x in r)) for r in rows])
    states = np.zeros((dim, dim), dtype=complex)
    for j in range(dim):
        if norms[j] > 0:
            states[j] = np.conj(rows[j]) / norms[j]
        else:
            states[j, 0] = 1.0
    layout = RegisterLayout([(SYSTEM, n), (ANC, n)])
    anc, sys_ = layout.qubits(ANC), layout.qubits(SYSTEM)
    c = Circuit(layout)
    c.extend(controlled_prepare_gates((norms / fro)[None, :].astype(complex), anc))
    for a, b in zip(anc, sys_):
        c.append(Swap(a, b))
    ur = Circuit(layout).extend(controlled_prepare_gates(states, anc, sys_))
    c.compose(ur.adjoint())
    return BlockEncoding(c, fro, A)
