"""Coordinate-format sparse matrices and MatrixMarket ingestion."""

from __future__ import annotations

import io
import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

DENSE_CAP = 10


class MatrixMarketError(ValueError):
    """Malformed MatrixMarket input. ``line`` is 1-based when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class UnsupportedFormatError(MatrixMarketError):
    pass


class CapacityError(RuntimeError):
    """A size limit (simulation cap, ancilla pool) was exceeded."""


class Triplet(NamedTuple):
    value: complex
    row: int
    col: int


@dataclass(frozen=True)
class SparseMatrix:
    """A ``2**n x 2**n`` complex matrix stored as nonzero triplets.

    Triplets are kept sorted by ``(col, row)``. Zero values and repeated
    coordinates are rejected.
    """

    n: int
    triplets: tuple[Triplet, ...]

    def __init__(self, n: int, triplets: Iterable = ()):
        if n < 0:
            raise ValueError("qubit count must be non-negative")
        dim = 1 << n
        seen = set()
        out = []
        for t in triplets:
            value, row, col = complex(t[0]), int(t[1]), int(t[2])
            if value == 0:
                raise ValueError(f"zero value at ({row}, {col})")
            if not (math.isfinite(value.real) and math.isfinite(value.imag)):
                raise ValueError(f"non-finite value at ({row}, {col})")
            if not (0 <= row < dim and 0 <= col < dim):
                raise ValueError(f"coordinate ({row}, {col}) outside {dim}x{dim}")
            if (row, col) in seen:
                raise ValueError(f"duplicate coordinate ({row}, {col})")
            seen.add((row, col))
            out.append(Triplet(value, row, col))
        out.sort(key=lambda t: (t.col, t.row))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "triplets", tuple(out))

    @property
    def dim(self) -> int:
        return 1 << self.n

    @property
    def nnz(self) -> int:
        return len(self.triplets)

    def entries(self) -> dict:
        return {(t.row, t.col): t.value for t in self.triplets}

    def is_real(self) -> bool:
        return all(t.value.imag == 0 for t in self.triplets)

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.n == other.n and self.triplets == other.triplets

    def __hash__(self):
        return hash((self.n, self.triplets))


def qubits_for(dim: int) -> int:
    """Smallest ``n`` with ``2**n >= dim``."""
    return max(0, (int(dim) - 1).bit_length())


def from_dense(M, n: int | None = None) -> SparseMatrix:
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    if n is None:
        n = qubits_for(M.shape[0])
    rows, cols = np.nonzero(M)
    return SparseMatrix(n, [(M[i, j], i, j) for i, j in zip(rows.tolist(), cols.tolist())])


def to_dense(A: SparseMatrix, cap: int = DENSE_CAP) -> np.ndarray:
    if A.n > cap:
        raise CapacityError(f"n={A.n} exceeds the dense cap of {cap} qubits")
    M = np.zeros((A.dim, A.dim), dtype=complex)
    for t in A.triplets:
        M[t.row, t.col] = t.value
    return M


def frobenius_norm(A: SparseMatrix) -> float:
    """Frobenius norm, accumulated over triplets in stored order."""
    return math.sqrt(math.fsum(abs(t.value) ** 2 for t in A.triplets))


def column_sparsity(A: SparseMatrix) -> int:
    counts: dict[int, int] = {}
    for t in A.triplets:
        counts[t.col] = counts.get(t.col, 0) + 1
    return max(counts.values(), default=0)


def row_sparsity(A: SparseMatrix) -> int:
    counts: dict[int, int] = {}
    for t in A.triplets:
        counts[t.row] = counts.get(t.row, 0) + 1
    return max(counts.values(), default=0)


def distinct_values(A: SparseMatrix) -> int:
    return len({t.value for t in A.triplets})


# -- MatrixMarket -----------------------------------------------------------

def _parse_number(tok, lineno):
    try:
        return float(tok)
    except ValueError:
        raise MatrixMarketError(f"bad number {tok!r}", lineno) from None


def load_matrix_market(source) -> SparseMatrix:
    """Read a coordinate MatrixMarket file (real/integer/complex, general/symmetric).

    ``source`` may be bytes, text or a binary/text file object. The matrix is
    zero-padded up to the next power-of-two dimension and explicit zeros are
    dropped.
    """
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    lines = source.splitlines()
    if not lines:
        raise MatrixMarketError("empty input", 1)

    header = lines[0].split()
    if len(header) != 5 or header[0].lower() != "%%matrixmarket":
        raise MatrixMarketError("missing %%MatrixMarket header", 1)
    obj, fmt, field, symmetry = (h.lower() for h in header[1:])
    if obj != "matrix" or fmt != "coordinate":
        raise UnsupportedFormatError(f"only 'matrix coordinate' is supported, got {obj} {fmt}", 1)
    if field == "pattern":
        raise UnsupportedFormatError("pattern-only matrices carry no values", 1)
    if field not in ("real", "integer", "complex"):
        raise UnsupportedFormatError(f"unsupported field {field!r}", 1)
    if symmetry not in ("general", "symmetric"):
        raise UnsupportedFormatError(f"unsupported symmetry {symmetry!r}", 1)

    body = [(k + 1, ln.strip()) for k, ln in enumerate(lines) if k > 0]
    body = [(k, ln) for k, ln in body if ln and not ln.startswith("%")]
    if not body:
        raise MatrixMarketError("missing size line", len(lines))
    size_line, size_text = body[0]
    parts = size_text.split()
    if len(parts) != 3:
        raise MatrixMarketError("size line must hold 'rows cols nnz'", size_line)
    try:
        nrows, ncols, nnz = (int(p) for p in parts)
    except ValueError:
        raise MatrixMarketError("non-integer size line", size_line) from None
    if nrows <= 0 or ncols <= 0 or nnz < 0:
        raise MatrixMarketError("invalid matrix size", size_line)
    if len(body) - 1 != nnz:
        raise MatrixMarketError(f"expected {nnz} entries, found {len(body) - 1}", body[-1][0])

    width = 4 if field == "complex" else 3
    entries: dict[tuple[int, int], complex] = {}

    def put(i, j, v, lineno):
        if (i, j) in entries:
            raise MatrixMarketError(f"duplicate entry ({i + 1}, {j + 1})", lineno)
        entries[(i, j)] = v

    for lineno, text in body[1:]:
        toks = text.split()
        if len(toks) != width:
            raise MatrixMarketError(f"expected {width} fields, got {len(toks)}", lineno)
        try:
            i, j = int(toks[0]) - 1, int(toks[1]) - 1
        except ValueError:
            raise MatrixMarketError("non-integer index", lineno) from None
        if not (0 <= i < nrows and 0 <= j < ncols):
            raise MatrixMarketError(f"index ({i + 1}, {j + 1}) out of range", lineno)
        re = _parse_number(toks[2], lineno)
        im = _parse_number(toks[3], lineno) if field == "complex" else 0.0
        v = complex(re, im)
        put(i, j, v, lineno)
        if symmetry == "symmetric" and i != j:
            put(j, i, v, lineno)

    n = qubits_for(max(nrows, ncols))
    return SparseMatrix(n, [(v, i, j) for (i, j), v in entries.items() if v != 0])


def _fmt(x: float) -> str:
    return repr(float(x))


def dump_matrix_market(A: SparseMatrix, symmetric: bool = False) -> str:
    """Emit ``A`` as coordinate MatrixMarket text that ``load_matrix_market`` reads back exactly."""
    field = "real" if A.is_real() else "complex"
    trip = A.triplets
    if symmetric:
        ent = A.entries()
        if any(ent.get((c, r)) != v for (r, c), v in ent.items()):
            raise ValueError("matrix is not symmetric")
        trip = tuple(t for t in trip if t.row >= t.col)
    out = io.StringIO()
    out.write(f"%%MatrixMarket matrix coordinate {field} {'symmetric' if symmetric else 'general'}\n")
    out.write(f"{A.dim} {A.dim} {len(trip)}\n")
    for t in sorted(trip, key=lambda t: (t.col, t.row)):
        if field == "real":
            out.write(f"{t.row + 1} {t.col + 1} {_fmt(t.value.real)}\n")
        else:
            out.write(f"{t.row + 1} {t.col + 1} {_fmt(t.value.real)} {_fmt(t.value.imag)}\n")
    return out.getvalue()
