"""OpenQASM 2 export/import for decomposed circuits."""

from __future__ import annotations

import math
import re

import numpy as np

from .circuit import CX, U2, Circuit, MustDecomposeError, RegisterLayout, zyz


def u_matrix(theta: float, phi: float, lam: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array(
        [[c, -np.exp(1j * lam) * s], [np.exp(1j * phi) * s, np.exp(1j * (phi + lam)) * c]], dtype=complex
    )


def u_angles(U: np.ndarray) -> tuple[float, float, float, float]:
    """``(theta, phi, lam, phase)`` with ``U = exp(i*phase) * u(theta, phi, lam)``."""
    phase, beta, gamma, delta = zyz(U)
    # Rz(b) Ry(g) Rz(d) = exp(-i(b+d)/2) u(g, b, d)
    return gamma, beta, delta, phase - (beta + delta) / 2


_SYMBOLIC = {k: s for k, s in [
    (0, "0"), (4, "pi"), (-4, "-pi"), (2, "pi/2"), (-2, "-pi/2"), (1, "pi/4"), (-1, "-pi/4"),
    (3, "3*pi/4"), (-3, "-3*pi/4"),
]}


def fmt_angle(x: float) -> str:
    q = x / (math.pi / 4)
    k = round(q)
    if abs(q - k) < 1e-12 and k in _SYMBOLIC:
        return _SYMBOLIC[k]
    return repr(float(x))


def export_qasm(c: Circuit) -> str:
    if not c.is_elementary():
        bad = next(g for g in c.gates if not g.elementary)
        raise MustDecomposeError(f"export needs a decomposed circuit; found a {bad.kind} gate")
    phase = c.global_phase
    body = []
    for g in c.gates:
        if isinstance(g, U2):
            theta, phi, lam, ph = u_angles(g.matrix)
            phase += ph
            body.append(f"u({fmt_angle(theta)},{fmt_angle(phi)},{fmt_angle(lam)}) q[{g.qubit}];")
        else:
            body.append(f"cx q[{g.control}],q[{g.target}];")
    phase = math.remainder(phase, 2 * math.pi)
    head = [
        "OPENQASM 2.0;",
        'include "qelib1.inc";',
        f"// global_phase: {phase!r}",
        f"qreg q[{c.num_qubits}];",
    ]
    return "\n".join(head + body) + "\n"


_NUM = re.compile(r"^\s*(-?)\s*(?:(\d+(?:\.\d*)?(?:[eE][-+]?\d+)?)\s*\*\s*)?pi\s*(?:/\s*(\d+(?:\.\d*)?))?\s*$")


def _parse_angle(tok: str) -> float:
    tok = tok.strip()
    m = _NUM.match(tok)
    if m:
        sign, mult, div = m.groups()
        v = math.pi * (float(mult) if mult else 1.0) / (float(div) if div else 1.0)
        return -v if sign else v
    return float(tok)


class QasmError(ValueError):
    pass


def import_qasm(text: str, layout: RegisterLayout | None = None) -> Circuit:
    """Parse the dialect written by :func:`export_qasm` (``u`` and ``cx`` only)."""
    phase = 0.0
    nq = None
    gates = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("//"):
            m = re.match(r"//\s*global_phase:\s*(\S+)", line)
            if m:
                phase = float(m.group(1))
            continue
        if line.startswith("OPENQASM") or line.startswith("include"):
            continue
        m = re.fullmatch(r"qreg\s+q\[(\d+)\];", line)
        if m:
            nq = int(m.group(1))
            continue
        m = re.fullmatch(r"u\(([^,]+),([^,]+),([^)]+)\)\s+q\[(\d+)\];", line)
        if m:
            th, ph, la = (_parse_angle(x) for x in m.groups()[:3])
            gates.append(U2(int(m.group(4)), u_matrix(th, ph, la)))
            continue
        m = re.fullmatch(r"cx\s+q\[(\d+)\]\s*,\s*q\[(\d+)\];", line)
        if m:
            gates.append(CX(int(m.group(1)), int(m.group(2))))
            continue
        raise QasmError(f"line {lineno}: cannot parse {line!r}")
    if nq is None:
        raise QasmError("missing qreg declaration")
    if layout is None:
        layout = RegisterLayout([("q", nq)])
    elif layout.num_qubits != nq:
        raise QasmError(f"layout has {layout.num_qubits} qubits, QASM declares {nq}")
    c = Circuit(layout, global_phase=phase)
    try:
        c.extend(gates)
    except ValueError as exc:
        raise QasmError(str(exc)) from exc
    return c
