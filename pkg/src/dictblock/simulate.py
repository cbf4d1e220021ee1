"""Dense statevector simulation of :class:`~dictblock.circuit.Circuit` objects."""

from __future__ import annotations

import numpy as np

from .circuit import CX, MCX, U2, Circuit, Multiplexed, Swap
from .sparse import CapacityError

UNITARY_CAP = 14
STATE_CAP = 26


def _apply(gates, psi: np.ndarray, nq: int) -> np.ndarray:
    """Apply ``gates`` to the C-contiguous column batch ``psi`` (shape ``(2**nq, B)``), mostly in place."""
    batch = psi.shape[1]
    psi = np.ascontiguousarray(psi)

    def ax(q):
        return nq - 1 - q

    for g in gates:
        if isinstance(g, U2):
            u = g.matrix
            v = psi.reshape(1 << (nq - 1 - g.qubit), 2, (1 << g.qubit) * batch)
            if u[0, 1] == 0 and u[1, 0] == 0:
                if u[0, 0] != 1:
                    v[:, 0, :] *= u[0, 0]
                if u[1, 1] != 1:
                    v[:, 1, :] *= u[1, 1]
            else:
                a = v[:, 0, :].copy()
                b = v[:, 1, :]
                v[:, 0, :] = u[0, 0] * a + u[0, 1] * b
                b *= u[1, 1]
                b += u[1, 0] * a
        elif isinstance(g, (CX, MCX)):
            if isinstance(g, CX):
                controls, pattern, targets = (g.control,), (g.polarity,), (g.target,)
            else:
                controls, pattern, targets = g.controls, g.pattern, g.targets
            s = psi.reshape((2,) * nq + (batch,))
            idx = [slice(None)] * (nq + 1)
            for c, b in zip(controls, pattern):
                idx[ax(c)] = slice(b, b + 1)
            sub = s[tuple(idx)]
            for t in targets:
                lo = [slice(None)] * (nq + 1)
                hi = [slice(None)] * (nq + 1)
                lo[ax(t)], hi[ax(t)] = 0, 1
                tmp = sub[tuple(lo)].copy()
                sub[tuple(lo)] = sub[tuple(hi)]
                sub[tuple(hi)] = tmp
        elif isinstance(g, Swap):
            s = psi.reshape((2,) * nq + (batch,))
            psi = np.ascontiguousarray(np.swapaxes(s, ax(g.a), ax(g.b))).reshape(1 << nq, batch)
        elif isinstance(g, Multiplexed):
            s = psi.reshape((2,) * nq + (batch,))
            k = len(g.selectors)
            axes = [ax(q) for q in reversed(g.selectors)] + [ax(g.target)]
            front = list(range(k + 1))
            t = np.moveaxis(s, axes, front)
            shape = t.shape
            t = np.einsum("kab,kbr->kar", g.payloads, t.reshape(1 << k, 2, -1))
            psi = np.ascontiguousarray(np.moveaxis(t.reshape(shape), front, axes)).reshape(1 << nq, batch)
        else:
            raise TypeError(f"unknown gate {g!r}")
    return psi


def apply_to_state(c: Circuit, psi, cap: int = STATE_CAP) -> np.ndarray:
    """Evolve one state (shape ``(2**q,)``) or a batch of column states (shape ``(2**q, B)``)."""
    nq = c.num_qubits
    if nq > cap:
        raise CapacityError(f"{nq} qubits exceed the statevector cap of {cap}")
    psi = np.asarray(psi, dtype=complex)
    single = psi.ndim == 1
    cols = psi.reshape(-1, 1) if single else psi
    if cols.shape[0] != 1 << nq:
        raise ValueError(f"state has dimension {cols.shape[0]}, circuit acts on {1 << nq}")
    out = _apply(c.gates, cols.copy(), nq) * np.exp(1j * c.global_phase)
    return out[:, 0] if single else out


def basis_columns(nq: int, indices) -> np.ndarray:
    indices = list(indices)
    psi = np.zeros((1 << nq, len(indices)), dtype=complex)
    psi[indices, range(len(indices))] = 1.0
    return psi


def to_unitary(c: Circuit, cap: int = UNITARY_CAP) -> np.ndarray:
    nq = c.num_qubits
    if nq > cap:
        raise CapacityError(
            f"{nq} qubits exceed the unitary cap of {cap}; use apply_to_state on selected columns instead"
        )
    return apply_to_state(c, np.eye(1 << nq, dtype=complex), cap=max(cap, STATE_CAP))
