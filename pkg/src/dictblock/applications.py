"""Generators for the worked examples: cyclic signless Laplacian, 2D Laplacian, ice/seawater GEP pair."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dictionary import DataItem, Dictionary, DictionaryError, DomainError, to_matrix, validate
from .sparse import SparseMatrix, qubits_for


def _checked(d: Dictionary) -> tuple[SparseMatrix, Dictionary]:
    report = validate(d)
    if not report.ok:
        raise DictionaryError(f"generated dictionary is invalid:\n{report}")
    return to_matrix(d), d


def gen_cyclic_laplacian(n: int, a1, a2, a3) -> tuple[SparseMatrix, Dictionary]:
    """Weighted directed cycle on ``2**n`` vertices.

    Items, in order: ``a1`` on the diagonal, ``a2`` at ``(j+1 mod N, j)`` and
    ``a3`` at ``(j-1 mod N, j)``.
    """
    if n < 2:
        raise DomainError("the cycle needs n >= 2 so that the three offsets are distinct")
    if 0 in (a1, a2, a3):
        raise DomainError("cycle weights must be nonzero")
    N = 1 << n
    items = [
        DataItem(a1, [(j, j) for j in range(N)]),
        DataItem(a2, [(j, (j + 1) % N) for j in range(N)]),
        DataItem(a3, [(j, (j - 1) % N) for j in range(N)]),
    ]
    return _checked(Dictionary(n, items))


def _power_of_two(x: int) -> bool:
    return x >= 2 and x & (x - 1) == 0


def gen_laplacian2d(Nx: int, Ny: int, dx: float = 1.0, dy: float = 1.0) -> tuple[SparseMatrix, Dictionary]:
    """Five-point Laplacian on an ``Nx x Ny`` grid, flattened as ``a + b*Nx``, with Dirichlet edges."""
    if not (_power_of_two(Nx) and _power_of_two(Ny)):
        raise DomainError(f"grid sides must be powers of two >= 2, got {Nx} x {Ny}")
    if not (dx > 0 and dy > 0):
        raise DomainError("grid spacings must be positive")
    N = Nx * Ny
    A0 = -2.0 * (1.0 / dx**2 + 1.0 / dy**2)
    A1 = 1.0 / dx**2
    A2 = 1.0 / dy**2
    items = [
        DataItem(A0, [(j, j) for j in range(N)]),
        DataItem(A1, [(j, j - 1) for j in range(N) if j % Nx != 0]),
        DataItem(A1, [(j, j + 1) for j in range(N) if j % Nx != Nx - 1]),
        DataItem(A2, [(j, j - Nx) for j in range(Nx, N)]),
        DataItem(A2, [(j, j + Nx) for j in range(N - Nx)]),
    ]
    return _checked(Dictionary(qubits_for(N), items))


# -- ice/seawater generalized eigenproblem ------------------------------------------------

@dataclass
class GepParameters:
    N1: int
    N2: int
    a: tuple  # a_0 .. a_12
    b: tuple  # b_0 .. b_5

    def __post_init__(self):
        self.a = tuple(complex(x) for x in self.a)
        self.b = tuple(complex(x) for x in self.b)
        if self.N1 < 2 or self.N2 < 2:
            raise DomainError(f"need N1 >= 2 and N2 >= 2, got N1={self.N1}, N2={self.N2}")
        if len(self.a) != 13 or len(self.b) != 6:
            raise DomainError("expected 13 values a_0..a_12 and 6 values b_0..b_5")
        for name, vals in (("a", self.a), ("b", self.b)):
            for k, v in enumerate(vals):
                if v == 0:
                    raise DomainError(f"{name}_{k} labels a data item and must be nonzero")

    @property
    def dim(self) -> int:
        return 4 * self.N1 + self.N2 + 5

    @property
    def n(self) -> int:
        return qubits_for(self.dim)

    @classmethod
    def random(cls, N1: int, N2: int, seed=None, complex_values: bool = False) -> "GepParameters":
        rng = np.random.default_rng(seed)

        def draw(k):
            # magnitudes bounded away from zero
            mag = rng.uniform(0.5, 2.0, k) * rng.choice([-1, 1], k)
            if complex_values:
                return mag * np.exp(1j * rng.uniform(0, 2 * np.pi, k))
            return mag

        return cls(N1, N2, tuple(draw(13)), tuple(draw(6)))


def _rng(lo, hi, mod=None, rem=()):
    return [j for j in range(lo, hi + 1) if mod is None or j % mod in rem]


def _gep_a_items(p: GepParameters) -> list[list[tuple[int, int]]]:
    """Column-to-row maps of the 19 items of A as ``(j, i)`` pairs, in key order."""
    N1, N2 = p.N1, p.N2
    K = 4 * N1
    return [
        [(j, j + 2) for j in _rng(0, K - 1)],
        [(j, j + 4) for j in _rng(0, K - 3, 4, (0, 1))],
        [(j, j) for j in _rng(4, K + 1, 4, (0, 1))],
        [(j, j + 1) for j in _rng(1, K - 3, 4, (1,))],
        [(j, j - 3) for j in _rng(5, K + 1, 4, (1,))],
        [(j, j + 1) for j in _rng(K + 4, K + N2 + 2)]
        + [(j, j) for j in (K + 2, K + 3)]
        + [(j, j - 2) for j in (2, 3)],
        [(j, j - 1) for j in _rng(K + 4, K + N2 + 4)],
        [(j, j) for j in _rng(2, K - 2, 4, (2,))],
        [(j, j - 4) for j in _rng(6, K + 2, 4, (2,))],
        [(j, j - 4) for j in _rng(7, K + 3, 4, (3,))],
        [(j, j) for j in _rng(3, K - 1, 4, (3,))],
        [(j, j - 3) for j in _rng(7, K + 3, 4, (3,))],
        [(j, j + 1) for j in _rng(3, K - 1, 4, (3,))],
        [(j, j - 2) for j in _rng(4, K + 3)],
        [(K + 1, K + 4)],
        [(K + 4, K + 4)],
        [(j, j) for j in _rng(K + 5, K + N2 + 3)],
        [(K + N2 + 3, K + N2 + 4)],
        [(K + N2 + 4, K + N2 + 4)],
    ]


# value index of each A item: a0, a1 a1, a2 a2, a3 a3, a4 a4, a5 a5, a6 a6, a7 .. a12
_GEP_A_VALUES = [0, 1, 1, 2, 2, 3, 3, 4, 4, 5, 5, 6, 6, 7, 8, 9, 10, 11, 12]


def _gep_b_items(p: GepParameters) -> list[list[tuple[int, int]]]:
    N1, N2 = p.N1, p.N2
    K = 4 * N1
    return [
        [(j, j + 3) for j in _rng(0, K - 4, 4, (0,))],
        [(j, j - 1) for j in _rng(4, K, 4, (0,))],
        [(j, j + 3) for j in _rng(2, K - 2, 4, (2,))],
        [(j, j - 1) for j in _rng(6, K + 2, 4, (2,))],
        [(j, j + 4) for j in _rng(0, K - 4, 4, (0,))],
        [(j, j) for j in _rng(4, K, 4, (0,))],
        [(K + 4, K + 4)],
        [(j, j) for j in _rng(K + 5, K + N2 + 3)],
        [(K + N2 + 4, K + N2 + 4)],
    ]


_GEP_B_VALUES = [0, 0, 1, 1, 2, 2, 3, 4, 5]


def _gep_dictionary(n, maps, values, label) -> Dictionary:
    owner: dict[tuple[int, int], int] = {}
    for key, pairs in enumerate(maps):
        for j, i in pairs:
            if (i, j) in owner:
                raise DictionaryError(
                    f"{label}: keys {owner[(i, j)]} and {key} both claim coordinate ({i}, {j})"
                )
            owner[(i, j)] = key
    d = Dictionary(n, [DataItem(v, pairs) for v, pairs in zip(values, maps)])
    report = validate(d)
    if not report.ok:
        raise DictionaryError(f"{label}: invalid dictionary\n{report}")
    return d


def gen_gep_matrices(p: GepParameters):
    """``((A, dict_A), (B, dict_B))`` built item by item from the index tables."""
    dA = _gep_dictionary(p.n, _gep_a_items(p), [p.a[k] for k in _GEP_A_VALUES], "A")
    dB = _gep_dictionary(p.n, _gep_b_items(p), [p.b[k] for k in _GEP_B_VALUES], "B")
    return (to_matrix(dA), dA), (to_matrix(dB), dB)


def gep_subnormalizations(p: GepParameters) -> tuple[float, float]:
    """Closed-form sums ``|a0| + 2(|a1|+..+|a6|) + |a7|+..+|a12|`` and ``2(|b0|+|b1|+|b2|) + |b3|+|b4|+|b5|``."""
    a = [abs(x) for x in p.a]
    b = [abs(x) for x in p.b]
    return a[0] + 2 * sum(a[1:7]) + sum(a[7:]), 2 * sum(b[:3]) + sum(b[3:])


# -- submatrix stencils -------------------------------------------------------------------

def _stencils(p: GepParameters, which: str):
    """Blocks ``(row0, col0, rows)`` of the submatrix layout, entries as value indices (None = 0)."""
    if which == "A":
        S0 = [[None, None, 3, None], [None, None, None, 3]]
        S1 = [[0, 2, 4, None, 7, 2, 4, None],
              [None, 0, None, 5, None, 7, None, 5],
              [1, None, 0, 6, 1, None, 7, 6],
              [None, 1, None, 0, None, 1, None, 7]]
        S2 = [[3, 10, 3]]
        S3 = [[None, None, 3, None, None, None],
              [None, None, None, 3, 3, None],
              [None, 8, None, None, 9, 3]]
        S4 = [[11, 12]]
    else:
        S0 = [[None] * 4, [None] * 4]
        S1 = [[None] * 8,
              [0, None, None, 0, None, None, None, None],
              [2, None, None, 2, None, None, None, None],
              [None, None, 1, None, None, 1, None, None]]
        S2 = [[None, 4, None]]
        S3 = [[None] * 6, [None] * 6, [None, None, None, None, 3, None]]
        S4 = [[None, 5]]
    K, N2 = 4 * p.N1, p.N2
    blocks = [(0, 0, S0)]
    blocks += [(2 + 4 * k, 4 * k, S1) for k in range(p.N1)]
    blocks += [(K + 2, K, S3)]
    blocks += [(r, r - 1, S2) for r in range(K + 5, K + N2 + 4)]
    blocks += [(K + N2 + 4, K + N2 + 3, S4)]
    return blocks


def gep_stencil_mismatches(p: GepParameters, which: str = "A") -> list[dict]:
    """Coordinates where the tables and the submatrix stencils disagree.

    Overlapping stencil placements are compared too; an empty list means the
    two descriptions agree everywhere.
    """
    vals = p.a if which == "A" else p.b
    (A, _), (B, _) = gen_gep_matrices(p)
    table = (A if which == "A" else B).entries()
    stencil: dict[tuple[int, int], int | None] = {}
    out = []
    for r0, c0, rows in _stencils(p, which):
        for di, row in enumerate(rows):
            for dj, k in enumerate(row):
                key = (r0 + di, c0 + dj)
                if key in stencil and stencil[key] != k and k is not None and stencil[key] is not None:
                    out.append({"coord": key, "table": None, "stencil": k, "note": "stencils overlap"})
                if k is not None or key not in stencil:
                    stencil[key] = k
    for key, k in sorted(stencil.items()):
        want = None if k is None else vals[k]
        have = table.get(key)
        if want != have:
            out.append({"coord": key, "table": have, "stencil": want, "note": "value differs"})
    for key, v in sorted(table.items()):
        if key not in stencil:
            out.append({"coord": key, "table": v, "stencil": None, "note": "outside every stencil"})
    return out
