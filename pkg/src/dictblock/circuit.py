"""Gate-level circuit representation.

Qubit ``q`` of a circuit is bit ``q`` of the computational-basis index, so
qubit 0 is the least significant. Registers are laid out least significant
first. Within a register, bit ``b`` of the register value lives on qubit
``offset + b``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .sparse import CapacityError

UNITARY_TOL = 1e-12

X = np.array([[0, 1], [1, 0]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
T = np.diag([1, np.exp(0.25j * np.pi)])
TDG = T.conj()


def rz(theta: float) -> np.ndarray:
    return np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])


def ry(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


class MustDecomposeError(ValueError):
    """An operation that needs {U(2), CNOT} gates met a composite gate."""


# -- registers ---------------------------------------------------------------

@dataclass(frozen=True)
class Register:
    name: str
    size: int
    offset: int

    @property
    def qubits(self) -> tuple[int, ...]:
        return tuple(range(self.offset, self.offset + self.size))


class RegisterLayout:
    """Named, disjoint qubit registers. Registers are listed least significant first."""

    def __init__(self, registers: Iterable[tuple[str, int]]):
        regs = []
        offset = 0
        for name, size in registers:
            if size < 0:
                raise ValueError(f"register {name!r} has negative size")
            if any(r.name == name for r in regs):
                raise ValueError(f"duplicate register {name!r}")
            regs.append(Register(name, int(size), offset))
            offset += int(size)
        self.registers: tuple[Register, ...] = tuple(regs)
        self.num_qubits = offset

    def __getitem__(self, name: str) -> Register:
        for r in self.registers:
            if r.name == name:
                return r
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(r.name == name for r in self.registers)

    def qubits(self, *names: str) -> tuple[int, ...]:
        return tuple(q for name in names for q in self[name].qubits)

    def with_register(self, name: str, size: int) -> "RegisterLayout":
        return RegisterLayout([*((r.name, r.size) for r in self.registers), (name, size)])

    def as_dict(self) -> dict:
        return {"registers": [{"name": r.name, "size": r.size, "offset": r.offset} for r in self.registers]}

    @classmethod
    def from_dict(cls, doc: dict) -> "RegisterLayout":
        regs = sorted(doc["registers"], key=lambda r: r["offset"])
        layout = cls((r["name"], r["size"]) for r in regs)
        for r in regs:
            if layout[r["name"]].offset != r["offset"]:
                raise ValueError(f"register {r['name']!r} offset does not match a contiguous layout")
        return layout

    def __eq__(self, other):
        return isinstance(other, RegisterLayout) and self.registers == other.registers

    def __repr__(self):
        inner = ", ".join(f"{r.name}[{r.size}]" for r in self.registers)
        return f"RegisterLayout({inner})"


# -- gates ---------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class U2:
    qubit: int
    matrix: np.ndarray

    kind = "u2"
    elementary = True

    @property
    def qubits(self):
        return (self.qubit,)

    def adjoint(self):
        return U2(self.qubit, self.matrix.conj().T)


@dataclass(frozen=True)
class CX:
    control: int
    target: int
    polarity: int = 1  # 0 fires on |0> (the 0-CNOT)

    kind = "cx"

    @property
    def elementary(self):
        return self.polarity == 1

    @property
    def qubits(self):
        return (self.control, self.target)

    def adjoint(self):
        return self


@dataclass(frozen=True)
class Swap:
    a: int
    b: int

    kind = "swap"
    elementary = False

    @property
    def qubits(self):
        return (self.a, self.b)

    def adjoint(self):
        return self


@dataclass(frozen=True)
class MCX:
    """X on every target when the controls read ``pattern`` (bit per control)."""

    controls: tuple[int, ...]
    pattern: tuple[int, ...]
    targets: tuple[int, ...]

    kind = "mcx"
    elementary = False

    @property
    def qubits(self):
        return self.controls + self.targets

    def adjoint(self):
        return self


@dataclass(frozen=True, eq=False)
class Multiplexed:
    """``sum_k |k><k|_selectors (x) payloads[k]`` acting on one target qubit.

    ``selectors[0]`` is the least significant bit of ``k``.
    """

    selectors: tuple[int, ...]
    target: int
    payloads: np.ndarray  # shape (2**len(selectors), 2, 2)

    kind = "mux"
    elementary = False

    @property
    def qubits(self):
        return self.selectors + (self.target,)

    def adjoint(self):
        return Multiplexed(self.selectors, self.target, np.conj(np.swapaxes(self.payloads, 1, 2)))


Gate = U2 | CX | Swap | MCX | Multiplexed


def _check_gate(g, nq):
    qs = g.qubits
    if len(set(qs)) != len(qs):
        raise ValueError(f"{g.kind} gate acts twice on a qubit: {qs}")
    if any(not (0 <= q < nq) for q in qs):
        raise ValueError(f"{g.kind} gate on {qs} outside a {nq}-qubit layout")
    if isinstance(g, U2):
        if g.matrix.shape != (2, 2) or np.max(np.abs(g.matrix.conj().T @ g.matrix - np.eye(2))) > UNITARY_TOL:
            raise ValueError("single-qubit payload is not a 2x2 unitary")
    elif isinstance(g, MCX):
        if len(g.pattern) != len(g.controls) or any(b not in (0, 1) for b in g.pattern):
            raise ValueError("control pattern must hold one bit per control")
    elif isinstance(g, Multiplexed):
        if g.payloads.shape != (1 << len(g.selectors), 2, 2):
            raise ValueError("multiplexor payload count does not match its selector width")
        eye = np.eye(2)
        for u in g.payloads:
            if np.max(np.abs(u.conj().T @ u - eye)) > UNITARY_TOL:
                raise ValueError("multiplexor payload is not unitary")
    elif isinstance(g, CX):
        if g.polarity not in (0, 1):
            raise ValueError("CNOT polarity must be 0 or 1")


@dataclass
class Circuit:
    layout: RegisterLayout
    gates: list = field(default_factory=list)
    global_phase: float = 0.0

    @property
    def num_qubits(self) -> int:
        return self.layout.num_qubits

    def append(self, gate) -> "Circuit":
        _check_gate(gate, self.num_qubits)
        self.gates.append(gate)
        return self

    def extend(self, gates) -> "Circuit":
        for g in gates:
            self.append(g)
        return self

    def compose(self, other: "Circuit") -> "Circuit":
        """Append ``other`` (same qubit count or fewer) after this circuit."""
        if other.num_qubits > self.num_qubits:
            raise ValueError("cannot compose a wider circuit onto a narrower one")
        self.extend(other.gates)
        self.global_phase += other.global_phase
        return self

    def adjoint(self) -> "Circuit":
        return Circuit(self.layout, [g.adjoint() for g in reversed(self.gates)], -self.global_phase)

    def copy(self) -> "Circuit":
        return Circuit(self.layout, list(self.gates), self.global_phase)

    # shorthands
    def u(self, q, matrix):
        return self.append(U2(q, np.asarray(matrix, dtype=complex)))

    def x(self, q):
        return self.u(q, X)

    def h(self, q):
        return self.u(q, H)

    def cx(self, control, target, polarity=1):
        return self.append(CX(control, target, polarity))

    def swap(self, a, b):
        return self.append(Swap(a, b))

    def mcx(self, controls: Sequence[int], pattern: Sequence[int], targets: Sequence[int]):
        return self.append(MCX(tuple(controls), tuple(int(b) for b in pattern), tuple(targets)))

    def mux(self, selectors: Sequence[int], target: int, payloads):
        return self.append(Multiplexed(tuple(selectors), target, np.asarray(payloads, dtype=complex)))

    def is_elementary(self) -> bool:
        return all(g.elementary for g in self.gates)

    def gate_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for g in self.gates:
            counts[g.kind] = counts.get(g.kind, 0) + 1
        return counts

    def to_json(self) -> str:
        """Debug dump mirroring the gate fields."""
        def enc(g):
            if isinstance(g, U2):
                return {"kind": "u2", "qubit": g.qubit, "matrix": _cplx(g.matrix)}
            if isinstance(g, CX):
                return {"kind": "cx", "control": g.control, "target": g.target, "polarity": g.polarity}
            if isinstance(g, Swap):
                return {"kind": "swap", "qubits": [g.a, g.b]}
            if isinstance(g, MCX):
                return {"kind": "mcx", "controls": list(g.controls), "pattern": list(g.pattern),
                        "targets": list(g.targets)}
            return {"kind": "mux", "selectors": list(g.selectors), "target": g.target,
                    "payloads": _cplx(g.payloads)}
        doc = {"layout": self.layout.as_dict(), "global_phase": self.global_phase,
               "gates": [enc(g) for g in self.gates]}
        return json.dumps(doc) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Circuit":
        doc = json.loads(text)
        c = cls(RegisterLayout.from_dict(doc["layout"]), global_phase=float(doc["global_phase"]))
        for g in doc["gates"]:
            k = g["kind"]
            if k == "u2":
                c.u(g["qubit"], _uncplx(g["matrix"]))
            elif k == "cx":
                c.cx(g["control"], g["target"], g["polarity"])
            elif k == "swap":
                c.swap(*g["qubits"])
            elif k == "mcx":
                c.mcx(g["controls"], g["pattern"], g["targets"])
            elif k == "mux":
                c.mux(g["selectors"], g["target"], _uncplx(g["payloads"]))
            else:
                raise ValueError(f"unknown gate kind {k!r}")
        return c


def _cplx(a):
    a = np.asarray(a)
    return np.stack([a.real, a.imag], axis=-1).tolist()


def _uncplx(a):
    a = np.asarray(a, dtype=float)
    return a[..., 0] + 1j * a[..., 1]


# -- depth ---------------------------------------------------------------------

def layers(c: Circuit) -> list[list]:
    """ASAP layering: each gate lands one layer after the last one touching its qubits."""
    if not c.is_elementary():
        bad = next(g for g in c.gates if not g.elementary)
        raise MustDecomposeError(f"depth needs a decomposed circuit; found a {bad.kind} gate")
    level = [0] * c.num_qubits
    out: list[list] = []
    for g in c.gates:
        k = max(level[q] for q in g.qubits)
        if k == len(out):
            out.append([])
        out[k].append(g)
        for q in g.qubits:
            level[q] = k + 1
    return out


def depth(c: Circuit) -> int:
    return len(layers(c))


# -- decomposition ---------------------------------------------------------------

POOL = "pool"


def zyz(U: np.ndarray) -> tuple[float, float, float, float]:
    """Angles with ``U = exp(i*phase) Rz(beta) Ry(gamma) Rz(delta)``; returns (phase, beta, gamma, delta)."""
    U = np.asarray(U, dtype=complex)
    phase = float(np.angle(np.linalg.det(U))) / 2
    V = U * np.exp(-1j * phase)
    a, b = V[0, 0], V[1, 0]
    gamma = 2 * float(np.arctan2(abs(b), abs(a)))
    s = -2 * float(np.angle(a)) if abs(a) > 1e-15 else 0.0  # beta + delta
    d = 2 * float(np.angle(b)) if abs(b) > 1e-15 else 0.0  # beta - delta
    if abs(a) <= 1e-15:
        s = -d  # only beta - delta is fixed; pick delta so that beta = 0
    beta, delta = (s + d) / 2, (s - d) / 2
    return phase, beta, gamma, delta


def _toffoli(a: int, b: int, t: int) -> list:
    return [
        U2(t, H), CX(b, t), U2(t, TDG), CX(a, t), U2(t, T), CX(b, t), U2(t, TDG), CX(a, t),
        U2(b, T), U2(t, T), U2(t, H), CX(a, b), U2(a, T), U2(b, TDG), CX(a, b),
    ]


def _mcx(g: MCX, pool: Sequence[int]) -> list:
    flips = [U2(q, X) for q, b in zip(g.controls, g.pattern) if b == 0]
    ctl = list(g.controls)
    k = len(ctl)
    body: list = []
    if k == 0:
        body = [U2(t, X) for t in g.targets]
    elif k == 1:
        body = [CX(ctl[0], t) for t in g.targets]
    elif k == 2 and len(g.targets) == 1:
        body = _toffoli(ctl[0], ctl[1], g.targets[0])
    else:
        # V-chain: AND of the controls accumulates on pool qubits
        single = len(g.targets) == 1
        n_anc = k - 2 if single else k - 1
        anc = list(pool[:n_anc])
        chain = []
        if n_anc:
            chain.append(_toffoli(ctl[0], ctl[1], anc[0]))
            for i in range(1, n_anc):
                chain.append(_toffoli(ctl[i + 1], anc[i - 1], anc[i]))
        compute = [g2 for blk in chain for g2 in blk]
        if single:
            middle = _toffoli(ctl[-1], anc[-1], g.targets[0])
        else:
            middle = [CX(anc[-1], t) for t in g.targets]
        uncompute = [g2 for blk in reversed(chain) for g2 in blk]
        body = compute + middle + uncompute
    return flips + body + flips


def _mux_rot(axis: str, selectors: list[int], target: int, angles: np.ndarray, out: list):
    """Uniformly controlled Ry/Rz by recursive split on the top selector."""
    if np.allclose(angles, angles[0], atol=1e-14, rtol=0):
        if abs(angles[0]) > 1e-14:
            out.append(U2(target, (ry if axis == "y" else rz)(float(angles[0]))))
        return
    # selectors non-empty here, since a single angle is trivially constant
    half = len(angles) // 2
    a0, a1 = angles[:half], angles[half:]
    top, rest = selectors[-1], selectors[:-1]
    _mux_rot(axis, rest, target, (a0 + a1) / 2, out)
    out.append(CX(top, target))
    _mux_rot(axis, rest, target, (a0 - a1) / 2, out)
    out.append(CX(top, target))


def _diagonal(qubits: list[int], phases: np.ndarray, out: list) -> float:
    """Diagonal ``exp(i*phases[k])`` on ``qubits`` (qubits[0] = LSB); returns the leftover global phase."""
    if not qubits:
        return float(phases[0])
    even, odd = phases[0::2], phases[1::2]
    _mux_rot("z", qubits[1:], qubits[0], odd - even, out)
    return _diagonal(qubits[1:], (even + odd) / 2, out)


def _multiplexed(g: Multiplexed) -> tuple[list, float]:
    sel = list(g.selectors)
    angles = np.array([zyz(u) for u in g.payloads])
    phase, beta, gamma, delta = angles.T
    out: list = []
    _mux_rot("z", sel, g.target, delta, out)
    _mux_rot("y", sel, g.target, gamma, out)
    _mux_rot("z", sel, g.target, beta, out)
    gphase = _diagonal(sel, phase, out)
    return out, gphase


def pool_demand(c: Circuit) -> int:
    need = 0
    for g in c.gates:
        if isinstance(g, MCX):
            k = len(g.controls)
            if k >= 3 or (k == 2 and len(g.targets) > 1):
                need = max(need, k - 2 if len(g.targets) == 1 else k - 1)
    return need


def decompose(c: Circuit, pool: int | None = None) -> Circuit:
    """Rewrite ``c`` over single-qubit unitaries and CNOTs.

    Multi-controlled X gates borrow clean qubits from the layout's ``pool``
    register. When the layout has no pool one is appended, sized ``pool`` or,
    if ``pool`` is None, exactly what the circuit needs. A pool that is too
    small raises :class:`CapacityError`.
    """
    need = pool_demand(c)
    layout = c.layout
    if POOL in layout:
        have = layout[POOL].size
    elif pool is not None:
        have = pool
        layout = layout.with_register(POOL, pool) if pool else layout
    else:
        have = need
        layout = layout.with_register(POOL, need) if need else layout
    if have < need:
        raise CapacityError(f"ancilla pool holds {have} qubits, needs {need} (short by {need - have})")
    pool_qubits = layout.qubits(POOL) if POOL in layout else ()

    out = Circuit(layout, global_phase=c.global_phase)
    for g in c.gates:
        if isinstance(g, U2):
            out.gates.append(g)
        elif isinstance(g, CX):
            if g.polarity == 1:
                out.gates.append(g)
            else:
                out.gates.extend([U2(g.control, X), CX(g.control, g.target), U2(g.control, X)])
        elif isinstance(g, Swap):
            out.gates.extend([CX(g.a, g.b), CX(g.b, g.a), CX(g.a, g.b)])
        elif isinstance(g, MCX):
            out.gates.extend(_mcx(g, pool_qubits))
        elif isinstance(g, Multiplexed):
            gates, phase = _multiplexed(g)
            out.gates.extend(gates)
            out.global_phase += phase
        else:
            raise TypeError(f"unknown gate {g!r}")
    return out
