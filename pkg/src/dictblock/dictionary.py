"""Dictionary representation of sparse matrices.

A dictionary groups the nonzeros of a matrix into data items. Every item has
one shared value ``A_l`` and a partial map from column ``j`` to row
``c_l(j)``. For the general (non-Hermitian) encoding each map must be
injective. The Hermitian variant only needs at most one row per column
within an item; injectivity in ``l`` for a fixed column follows from the
items being disjoint.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .sparse import SparseMatrix


class DictionaryError(ValueError):
    pass


class DomainError(DictionaryError):
    pass


class DictionaryCapacityError(DictionaryError):
    pass


@dataclass(frozen=True)
class DataItem:
    value: complex
    pairs: tuple[tuple[int, int], ...]  # sorted (column, row) pairs

    def __init__(self, value, mapping):
        if isinstance(mapping, Mapping):
            pairs = mapping.items()
        else:
            pairs = mapping
        pairs = tuple(sorted((int(j), int(i)) for j, i in pairs))
        cols = [j for j, _ in pairs]
        if len(set(cols)) != len(cols):
            raise DictionaryError("an item may hold at most one row per column")
        value = complex(value)
        if value == 0:
            raise DictionaryError("data values must be nonzero")
        object.__setattr__(self, "value", value)
        object.__setattr__(self, "pairs", pairs)

    @property
    def mapping(self) -> dict[int, int]:
        return dict(self.pairs)

    @property
    def columns(self) -> tuple[int, ...]:
        return tuple(j for j, _ in self.pairs)

    def coordinates(self) -> list[tuple[int, int]]:
        """``(row, col)`` pairs covered by the item."""
        return [(i, j) for j, i in self.pairs]

    def is_injective(self) -> bool:
        rows = [i for _, i in self.pairs]
        return len(set(rows)) == len(rows)

    def __len__(self):
        return len(self.pairs)


def _ceil_log2(k: int) -> int:
    return max(0, (k - 1).bit_length())


@dataclass(frozen=True)
class Dictionary:
    n: int
    items: tuple[DataItem, ...]

    def __init__(self, n: int, items: Iterable[DataItem]):
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "items", tuple(items))

    @property
    def s0(self) -> int:
        return len(self.items)

    @property
    def m(self) -> int:
        return _ceil_log2(self.s0)

    @property
    def s(self) -> int:
        return sum(len(it) for it in self.items)

    @property
    def values(self) -> list[complex]:
        return [it.value for it in self.items]


class HermitianDictionary(Dictionary):
    """Dictionary of a non-negative symmetric matrix."""


@dataclass
class Violation:
    kind: str  # injectivity | disjointness | coverage | value | bounds | capacity | symmetry
    item: int | None
    detail: str


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "valid"
        return "\n".join(f"[{v.kind}] item {v.item}: {v.detail}" for v in self.violations)


def validate(d: Dictionary, A: SparseMatrix | None = None, value_tol: float = 0.0) -> ValidationReport:
    """Collect every way ``d`` fails to be a dictionary of ``A``.

    Without ``A`` only the structural checks (bounds, injectivity,
    disjointness) run.
    """
    report = ValidationReport()
    add = report.violations.append
    dim = 1 << d.n
    hermitian = isinstance(d, HermitianDictionary)
    owner: dict[tuple[int, int], int] = {}
    for l, item in enumerate(d.items):
        if not hermitian and not item.is_injective():
            rows: dict[int, int] = {}
            for j, i in item.pairs:
                if i in rows:
                    add(Violation("injectivity", l, f"columns {rows[i]} and {j} both map to row {i}"))
                rows.setdefault(i, j)
        for i, j in item.coordinates():
            if not (0 <= i < dim and 0 <= j < dim):
                add(Violation("bounds", l, f"coordinate ({i}, {j}) outside {dim}x{dim}"))
                continue
            if (i, j) in owner:
                add(Violation("disjointness", l, f"coordinate ({i}, {j}) already held by item {owner[(i, j)]}"))
            else:
                owner[(i, j)] = l
    if hermitian:
        if d.s0 > dim:
            add(Violation("capacity", None, f"{d.s0} items exceed 2^n = {dim}"))
        for l, item in enumerate(d.items):
            if item.value.imag != 0 or item.value.real < 0:
                add(Violation("value", l, f"value {item.value} is not a non-negative real"))
    if A is not None:
        if A.n != d.n:
            add(Violation("bounds", None, f"dictionary has n={d.n}, matrix has n={A.n}"))
        entries = A.entries()
        for (i, j), l in owner.items():
            v = entries.get((i, j))
            if v is None:
                add(Violation("coverage", l, f"coordinate ({i}, {j}) is zero in the matrix"))
            elif abs(v - d.items[l].value) > value_tol:
                add(Violation("value", l, f"matrix holds {v} at ({i}, {j}), item holds {d.items[l].value}"))
        for (i, j) in entries:
            if (i, j) not in owner:
                add(Violation("coverage", None, f"nonzero ({i}, {j}) is not held by any item"))
    return report


def subnormalization(d: Dictionary) -> float:
    return math.fsum(abs(it.value) for it in d.items)


def to_matrix(d: Dictionary) -> SparseMatrix:
    coords: dict[tuple[int, int], complex] = {}
    for l, item in enumerate(d.items):
        for i, j in item.coordinates():
            if (i, j) in coords:
                raise DictionaryError(f"coordinate ({i}, {j}) appears in more than one item (item {l})")
            coords[(i, j)] = item.value
    return SparseMatrix(d.n, [(v, i, j) for (i, j), v in coords.items()])


def _order_items(items: list[DataItem]) -> list[DataItem]:
    return sorted(items, key=lambda it: (-abs(it.value), it.pairs[0]))


# -- value grouping and matching decomposition ------------------------------

def group_values(A: SparseMatrix, value_tol: float = 0.0) -> dict[complex, list[tuple[int, int]]]:
    """Partition the nonzeros of ``A`` by value.

    With ``value_tol > 0`` each triplet joins the first representative within
    ``value_tol`` (triplets visited in column-major order), otherwise a new
    class is opened.
    """
    classes: dict[complex, list[tuple[int, int]]] = {}
    reps: list[complex] = []
    for t in A.triplets:
        key = t.value
        if value_tol > 0:
            for r in reps:
                if abs(r - t.value) <= value_tol:
                    key = r
                    break
            else:
                reps.append(t.value)
        classes.setdefault(key, []).append((t.row, t.col))
    return classes


def max_degree(edges: Iterable[tuple[int, int]]) -> int:
    rdeg: dict[int, int] = {}
    cdeg: dict[int, int] = {}
    for r, c in edges:
        rdeg[r] = rdeg.get(r, 0) + 1
        cdeg[c] = cdeg.get(c, 0) + 1
    return max([0, *rdeg.values(), *cdeg.values()])


def edge_coloring(edges: list[tuple[int, int]]) -> list[list[tuple[int, int]]]:
    """Split a simple bipartite graph (row, col) into ``max_degree`` matchings.

    Koenig's construction: when the free colours at the two endpoints differ,
    the alternating path on those two colours is flipped first.
    """
    delta = max_degree(edges)
    at_row: dict[int, dict[int, int]] = {}  # row -> colour -> col
    at_col: dict[int, dict[int, int]] = {}  # col -> colour -> row

    def free(table, v):
        used = table.get(v, {})
        return next(k for k in range(delta) if k not in used)

    for r, c in edges:
        a = free(at_row, r)
        b = free(at_col, c)
        if a != b:
            # walk from c along colours a, b, a, ... and swap a <-> b on the path
            path = []
            node, side, colour = c, "col", a
            while True:
                table = at_col if side == "col" else at_row
                nxt = table.get(node, {}).get(colour)
                if nxt is None:
                    break
                path.append((node, side, nxt, colour))
                node = nxt
                side = "row" if side == "col" else "col"
                colour = b if colour == a else a
            for node, side, nxt, colour in path:
                if side == "col":
                    del at_col[node][colour]
                    del at_row[nxt][colour]
                else:
                    del at_row[node][colour]
                    del at_col[nxt][colour]
            for node, side, nxt, colour in path:
                other = b if colour == a else a
                if side == "col":
                    at_col[node][other] = nxt
                    at_row[nxt][other] = node
                else:
                    at_row[node][other] = nxt
                    at_col[nxt][other] = node
        at_row.setdefault(r, {})[a] = c
        at_col.setdefault(c, {})[a] = r

    out: list[list[tuple[int, int]]] = [[] for _ in range(delta)]
    for r, cols in at_row.items():
        for colour, c in cols.items():
            out[colour].append((r, c))
    return [sorted(m, key=lambda e: (e[1], e[0])) for m in out if m]


def greedy_matchings(edges: list[tuple[int, int]]) -> list[list[tuple[int, int]]]:
    """Repeatedly peel off a maximal matching; may use more than ``max_degree`` classes."""
    remaining = sorted(edges, key=lambda e: (e[1], e[0]))
    out = []
    while remaining:
        rows, cols, match, rest = set(), set(), [], []
        for r, c in remaining:
            if r in rows or c in cols:
                rest.append((r, c))
            else:
                rows.add(r)
                cols.add(c)
                match.append((r, c))
        out.append(match)
        remaining = rest
    return out


def build_dictionary(A: SparseMatrix, value_tol: float = 0.0, method: str = "exact") -> Dictionary:
    """Construct a valid dictionary for ``A``.

    ``method="exact"`` splits every value class into the minimum number of
    injective items (its maximum row/column degree). ``method="greedy"``
    peels maximal matchings instead.
    """
    if A.nnz == 0:
        raise DictionaryError("cannot build a dictionary for an empty matrix")
    split = {"exact": edge_coloring, "greedy": greedy_matchings}[method]
    items = []
    for value, coords in group_values(A, value_tol).items():
        for match in split(coords):
            items.append(DataItem(value, [(c, r) for r, c in match]))
    return Dictionary(A.n, _order_items(items))


def hermitianize(A: SparseMatrix) -> HermitianDictionary:
    """Dictionary for a symmetric matrix with non-negative real entries.

    Within one value class the ``k``-th entry of every column (rows ascending)
    goes to the class's ``k``-th item, so the class needs exactly its largest
    column count of items.
    """
    entries = A.entries()
    for (i, j), v in entries.items():
        if v.imag != 0 or v.real < 0:
            raise DomainError(f"entry ({i}, {j}) = {v} is not a non-negative real")
        if entries.get((j, i)) != v:
            raise DomainError(f"matrix is not symmetric at ({i}, {j})")
    items = []
    for value, coords in group_values(A).items():
        per_col: dict[int, list[int]] = {}
        for r, c in coords:
            per_col.setdefault(c, []).append(r)
        layers: list[list[tuple[int, int]]] = []
        for c in sorted(per_col):
            for k, r in enumerate(sorted(per_col[c])):
                if k == len(layers):
                    layers.append([])
                layers[k].append((c, r))
        items.extend(DataItem(value, layer) for layer in layers)
    if len(items) > A.dim:
        raise DictionaryCapacityError(f"{len(items)} items exceed 2^n = {A.dim}")
    return HermitianDictionary(A.n, _order_items(items))


# -- JSON -------------------------------------------------------------------

def to_json(d: Dictionary) -> str:
    doc = {
        "n": d.n,
        "items": [
            {"value": [it.value.real, it.value.imag], "map": [[j, i] for j, i in it.pairs]}
            for it in d.items
        ],
    }
    return json.dumps(doc, indent=1) + "\n"


def from_json(text, hermitian: bool = False, A: SparseMatrix | None = None) -> Dictionary:
    """Parse dictionary JSON and validate it (against ``A`` when given)."""
    try:
        doc = json.loads(text)
        n = int(doc["n"])
        items = [DataItem(complex(*it["value"]), [tuple(p) for p in it["map"]]) for it in doc["items"]]
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, DictionaryError):
            raise
        raise DictionaryError(f"malformed dictionary JSON: {exc}") from exc
    cls = HermitianDictionary if hermitian else Dictionary
    d = cls(n, items)
    report = validate(d, A)
    if not report.ok:
        raise DictionaryError(f"invalid dictionary:\n{report}")
    return d
