"""Sparse Boolean selectors and the column oracles O_c."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..circuit import MCX, CX, Circuit, RegisterLayout
from ..dictionary import Dictionary, HermitianDictionary

SYSTEM, SCRATCH, DEL, DEL0, DEL1, IDX = "system", "scratch", "del", "del0", "del1", "idx"


@dataclass
class BooleanFunctionTable:
    """``f: {0,1}^index_bits -> {0,1}^word_bits`` stored by its nonzero outputs."""

    index_bits: int
    word_bits: int
    nonzeros: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        self.nonzeros = {int(k): int(v) for k, v in dict(self.nonzeros).items() if int(v) != 0}
        for k, v in self.nonzeros.items():
            if not 0 <= k < 1 << self.index_bits:
                raise ValueError(f"input {k} does not fit in {self.index_bits} index bits")
            if not 0 < v < 1 << self.word_bits:
                raise ValueError(f"output {v} does not fit in {self.word_bits} word bits")

    @property
    def sparsity(self) -> int:
        return len(self.nonzeros)

    def __call__(self, k: int) -> int:
        return self.nonzeros.get(k, 0)


def _bits(x: int, width: int) -> tuple[int, ...]:
    return tuple((x >> b) & 1 for b in range(width))


def select_f_gates(f: BooleanFunctionTable, selector: Sequence[int], word: Sequence[int]) -> list[MCX]:
    if len(selector) != f.index_bits or len(word) != f.word_bits:
        raise ValueError(
            f"registers of size {len(selector)}/{len(word)} do not match a "
            f"{f.index_bits}-index {f.word_bits}-word table"
        )
    gates = []
    for k in sorted(f.nonzeros):
        v = f.nonzeros[k]
        targets = tuple(word[b] for b in range(len(word)) if (v >> b) & 1)
        gates.append(MCX(tuple(selector), _bits(k, len(selector)), targets))
    return gates


def select_f(f: BooleanFunctionTable, selector: Sequence[int], word: Sequence[int],
             layout: RegisterLayout | None = None) -> Circuit:
    """``|k>|z> -> |k>|z XOR f(k)>``, one multi-controlled X group per table entry."""
    if layout is None:
        layout = RegisterLayout([("reg", max([*selector, *word], default=-1) + 1)])
    return Circuit(layout).extend(select_f_gates(f, selector, word))


def controlled_swap_gates(ctrl: int, a: Sequence[int], b: Sequence[int], polarity: int = 0) -> list:
    """Swap registers ``a`` and ``b`` when ``ctrl`` reads ``polarity``."""
    out = []
    for qa, qb in zip(a, b, strict=True):
        out += [CX(qb, qa), MCX((ctrl, qa), (polarity, 1), (qb,)), CX(qb, qa)]
    return out


# -- layouts --------------------------------------------------------------------

def general_layout(d: Dictionary) -> RegisterLayout:
    return RegisterLayout([(SYSTEM, d.n), (SCRATCH, d.n), (DEL, 1), (IDX, d.m)])


def hermitian_layout(d: Dictionary) -> RegisterLayout:
    return RegisterLayout([(SYSTEM, d.n), (SCRATCH, d.n), (DEL0, 1), (DEL1, 1), (IDX, d.n)])


# -- the three functions of the column oracle ----------------------------------

def oracle_tables(d: Dictionary) -> tuple[BooleanFunctionTable, BooleanFunctionTable, BooleanFunctionTable]:
    """Ranging, mapping and uncompute tables for the general column oracle.

    Index words are little-endian concatenations: ``(j, l)`` for the ranging
    function, ``(j, del, l)`` for the mapping function and ``(c_l(j), del, l)``
    for the uncompute function, with ``del = 0`` on every entry.
    """
    n, m = d.n, d.m
    f1, f2, f3 = {}, {}, {}
    for l, item in enumerate(d.items):
        for j, i in item.pairs:
            f1[j | l << n] = 1
            f2[j | l << (n + 1)] = i
            f3[i | l << (n + 1)] = j
    return (
        BooleanFunctionTable(n + m, 1, f1),
        BooleanFunctionTable(n + 1 + m, n, f2),
        BooleanFunctionTable(n + 1 + m, n, f3),
    )


def hermitian_oracle_tables(d: Dictionary):
    """Tables for the Hermitian oracle, where the system value ``j`` selects and idx is rewritten.

    Index words are ``(l, j)``, ``(l, del1, j)`` and ``(c_j(l), del1, j)``;
    idx is a full ``n``-qubit register.
    """
    n = d.n
    f1, f2, f3 = {}, {}, {}
    for l, item in enumerate(d.items):
        for j, i in item.pairs:
            f1[l | j << n] = 1
            f2[l | j << (n + 1)] = i
            f3[i | j << (n + 1)] = l
    return (
        BooleanFunctionTable(2 * n, 1, f1),
        BooleanFunctionTable(2 * n + 1, n, f2),
        BooleanFunctionTable(2 * n + 1, n, f3),
    )


def build_oc(d: Dictionary, layout: RegisterLayout | None = None) -> Circuit:
    """Column oracle: ``|l>|0>|j> -> |l>|0>|c_l(j)>`` when defined, else ``|l>|1>|j>``.

    Five stages: flag ``del``, clear it on valid ``(l, j)``, write ``c_l(j)``
    into scratch, erase ``j`` from the system, and swap system and scratch
    when ``del = 0``.
    """
    layout = layout or general_layout(d)
    sys_, scr, dl, idx = (layout.qubits(r) for r in (SYSTEM, SCRATCH, DEL, IDX))
    f1, f2, f3 = oracle_tables(d)
    c = Circuit(layout)
    c.x(dl[0])
    c.extend(select_f_gates(f1, sys_ + idx, dl))
    c.extend(select_f_gates(f2, sys_ + dl + idx, scr))
    c.extend(select_f_gates(f3, scr + dl + idx, sys_))
    c.extend(controlled_swap_gates(dl[0], sys_, scr, polarity=0))
    return c


def build_oc_hermitian(d: HermitianDictionary, layout: RegisterLayout | None = None) -> Circuit:
    """Hermitian column oracle: ``|l>|0>|j> -> |c_j(l)>|0>|j>`` when defined, else ``|l>|1>|j>``.

    The roles of the registers are exchanged relative to :func:`build_oc`:
    the system value selects and the idx register is rewritten.
    """
    layout = layout or hermitian_layout(d)
    sys_, scr, d1, idx = (layout.qubits(r) for r in (SYSTEM, SCRATCH, DEL1, IDX))
    f1, f2, f3 = hermitian_oracle_tables(d)
    c = Circuit(layout)
    c.x(d1[0])
    c.extend(select_f_gates(f1, idx + sys_, d1))
    c.extend(select_f_gates(f2, idx + d1 + sys_, scr))
    c.extend(select_f_gates(f3, scr + d1 + sys_, idx))
    c.extend(controlled_swap_gates(d1[0], idx, scr, polarity=0))
    return c

