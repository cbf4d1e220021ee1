"""Binary-tree state preparation with uniformly controlled rotations."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from ..circuit import Circuit, Multiplexed, RegisterLayout
from ..dictionary import DomainError
from ..numerics import principal_sqrt

NORM_TOL = 1e-10


def _column_unitary(a: complex, b: complex) -> np.ndarray:
    """A unitary whose first column is ``(a, b)`` (assumed normalized)."""
    return np.array([[a, -np.conj(b)], [b, np.conj(a)]], dtype=complex)


def controlled_prepare_gates(states, targets: Sequence[int], controls: Sequence[int] = ()) -> list[Multiplexed]:
    """Gates mapping ``|x>|0...0>`` to ``|x>|states[x]>``.

    ``states`` has shape ``(2**len(controls), 2**len(targets))``; row ``x``
    is the state prepared when the control register holds ``x``. Each tree
    level is one multiplexed single-qubit unitary on the next target qubit,
    selected by the controls and the target qubits already fixed.
    """
    states = np.asarray(states, dtype=complex)
    k, c = len(targets), len(controls)
    if states.shape != (1 << c, 1 << k):
        raise ValueError(f"states must have shape {(1 << c, 1 << k)}, got {states.shape}")
    gates = []
    for r in range(k):
        target = targets[k - 1 - r]
        selectors = tuple(controls) + tuple(targets[k - r:])
        width = 1 << (k - r)  # amplitudes under one prefix
        last = r == k - 1
        payloads = np.empty((1 << (c + r), 2, 2), dtype=complex)
        for x in range(1 << c):
            for p in range(1 << r):
                block = states[x, p * width:(p + 1) * width]
                lo, hi = block[: width // 2], block[width // 2:]
                if last:
                    a, b = lo[0], hi[0]
                else:
                    a, b = np.linalg.norm(lo), np.linalg.norm(hi)
                norm = np.hypot(abs(a), abs(b))
                if norm == 0.0:
                    u = np.eye(2, dtype=complex)
                else:
                    u = _column_unitary(a / norm, b / norm)
                payloads[x + (p << c)] = u
        gates.append(Multiplexed(selectors, target, payloads))
    return gates


def _normalized(amps, k: int) -> np.ndarray:
    amps = np.asarray(amps, dtype=complex).ravel()
    if len(amps) > 1 << k:
        raise ValueError(f"{len(amps)} amplitudes do not fit in {k} qubits")
    norm2 = float(np.sum(np.abs(amps) ** 2))
    if abs(norm2 - 1.0) > NORM_TOL:
        raise DomainError(f"amplitudes have squared norm {norm2}, expected 1")
    out = np.zeros(1 << k, dtype=complex)
    out[: len(amps)] = amps
    return out


def prepare_state(amps, register: Sequence[int] | None = None, layout: RegisterLayout | None = None) -> Circuit:
    """Circuit taking ``|0...0>`` on ``register`` to ``sum_k amps[k] |k>``.

    Without ``register``/``layout`` a fresh layout with one register of the
    smallest fitting width is used.
    """
    if register is None:
        k = max(0, (len(amps) - 1).bit_length())
        layout = layout or RegisterLayout([("reg", k)])
        register = layout.qubits("reg") if "reg" in layout else tuple(range(k))
    elif layout is None:
        layout = RegisterLayout([("reg", max(register) + 1 if register else 0)])
    vec = _normalized(amps, len(register))
    c = Circuit(layout).extend(controlled_prepare_gates(vec[None, :], register))
    if not register:
        # a zero-qubit register can only carry the amplitude's phase
        c.global_phase = float(np.angle(vec[0]))
    return c


def unprepare_state(amps, register: Sequence[int], layout: RegisterLayout) -> Circuit:
    """UNPREP with ``UNPREP^dagger |0> = sum_k conj(amps[k]) |k>``."""
    return prepare_state(np.conj(np.asarray(amps, dtype=complex)), register, layout).adjoint()


def dictionary_amplitudes(values, m: int) -> np.ndarray:
    """``sqrt(A_l) / sqrt(sum |A_l|)`` padded with zeros to ``2**m`` entries."""
    total = sum(abs(complex(v)) for v in values)
    amps = np.zeros(1 << m, dtype=complex)
    for l, v in enumerate(values):
        amps[l] = principal_sqrt(v) / np.sqrt(total)
    return amps
