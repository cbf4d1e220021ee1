"""Simulation-backed checks of block encodings."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from ..simulate import STATE_CAP, apply_to_state, basis_columns, to_unitary
from ..sparse import CapacityError, SparseMatrix
from .encoding import BlockEncoding

DEFAULT_CAP = 14
FULL_UNITARY_CAP = 10  # above this the unitary is checked column by column
RESIDUAL_TOL = 1e-10
CHUNK_AMPLITUDES = 1 << 22


@dataclass
class VerificationReport:
    epsilon: float
    unitarity_residual: float
    hermiticity_residual: float | None
    tol: float
    alpha: float
    num_qubits: int
    columns: list[int] = field(default_factory=list)
    sampled: bool = False
    method: str = "columns"  # "unitary" when the full matrix was formed

    @property
    def passed(self) -> bool:
        ok = self.epsilon <= self.tol and self.unitarity_residual <= max(RESIDUAL_TOL, self.tol)
        if self.hermiticity_residual is not None:
            ok = ok and self.hermiticity_residual <= max(RESIDUAL_TOL, self.tol)
        return bool(ok)

    def to_dict(self) -> dict:
        doc = asdict(self)
        doc["passed"] = self.passed
        return doc

    def __str__(self):
        lines = [
            f"{'PASS' if self.passed else 'FAIL'}  epsilon={self.epsilon:.3e} (tol {self.tol:g})",
            f"alpha={self.alpha!r}  qubits={self.num_qubits}  columns={len(self.columns)}"
            + ("  [sampled]" if self.sampled else ""),
            f"unitarity residual={self.unitarity_residual:.3e} ({self.method})",
        ]
        if self.hermiticity_residual is not None:
            lines.append(f"hermiticity residual={self.hermiticity_residual:.3e}")
        return "\n".join(lines)


def _run_columns(circuit, inputs: np.ndarray, workers: int) -> np.ndarray:
    nq = circuit.num_qubits
    per = max(1, CHUNK_AMPLITUDES >> nq)
    chunks = [inputs[:, k:k + per] for k in range(0, inputs.shape[1], per)]
    if workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(workers) as pool:
            outs = list(pool.map(lambda ch: apply_to_state(circuit, ch), chunks))
    else:
        outs = [apply_to_state(circuit, ch) for ch in chunks]
    return np.concatenate(outs, axis=1)


def extract_block(be: BlockEncoding, columns=None, workers: int = 1) -> np.ndarray:
    """Columns of the top-left block (all ancillas ``|0>``), shape ``(2**n, len(columns))``."""
    out, _, rows = _simulate(be, columns, workers)
    return out[rows, :]


def _simulate(be, columns, workers):
    nq = be.circuit.num_qubits
    dim = 1 << be.n
    off = be.layout[be.system].offset
    columns = list(range(dim)) if columns is None else list(columns)
    basis = [j << off for j in columns]
    inputs = basis_columns(nq, basis)
    out = _run_columns(be.circuit, inputs, workers)
    rows = [i << off for i in range(dim)]
    return out, basis, rows


def verify_block_encoding(be: BlockEncoding, A: SparseMatrix, tol: float = 1e-9, cap: int = DEFAULT_CAP,
                          sample: int = 8, seed: int = 0, workers: int = 1) -> VerificationReport:
    """Compare ``alpha * block`` with ``A`` by simulating the columns ``|0>_anc |j>``.

    Circuits wider than ``cap`` qubits are checked on ``sample`` random
    columns only and the report is flagged as sampled.
    """
    if A.n != be.n:
        raise ValueError(f"matrix has n={A.n}, encoding has a {be.n}-qubit system register")
    nq = be.circuit.num_qubits
    dim = 1 << be.n
    sampled = nq > cap
    if sampled:
        if nq > STATE_CAP:
            raise CapacityError(f"{nq} qubits exceed even the sampled statevector cap of {STATE_CAP}")
        rng = np.random.default_rng(seed)
        columns = sorted(rng.choice(dim, size=min(sample, dim), replace=False).tolist())
    else:
        columns = list(range(dim))

    out, basis, rows = _simulate(be, columns, workers)
    block = out[rows, :]
    target = np.zeros((dim, len(columns)), dtype=complex)
    pos = {j: k for k, j in enumerate(columns)}
    for t in A.triplets:
        if t.col in pos:
            target[t.row, pos[t.col]] = t.value
    epsilon = float(np.max(np.abs(target - be.alpha * block))) if columns else 0.0

    herm = None
    if not sampled and nq <= FULL_UNITARY_CAP:
        U = to_unitary(be.circuit, cap=FULL_UNITARY_CAP)
        unit = float(np.max(np.abs(U.conj().T @ U - np.eye(1 << nq))))
        if be.hermitian:
            herm = float(np.max(np.abs(U - U.conj().T)))
        method = "unitary"
    else:
        gram = out.conj().T @ out
        unit = float(np.max(np.abs(gram - np.eye(len(columns)))))
        if be.hermitian:
            # for a unitary U, U = U^dag on a column exactly when U^2 fixes it
            twice = _run_columns(be.circuit, out, workers)
            herm = float(np.max(np.abs(twice - basis_columns(nq, basis))))
        method = "columns"
    return VerificationReport(epsilon, unit, herm, tol, be.alpha, nq, columns, sampled, method)
