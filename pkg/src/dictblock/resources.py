"""Cost models for the block-encoding protocols and their comparison.

Every ``*_model`` number uses unit leading constants on the asymptotic
shapes, with the additive terms spelled out per function. Measured counts
from decomposed circuits are kept in separate fields and never mixed in.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

from .circuit import decompose, depth
from .dictionary import Dictionary, subnormalization
from .sparse import SparseMatrix, column_sparsity, distinct_values, frobenius_norm, row_sparsity

STAGE_CONSTANT = 2  # Stage 1 (X on del) and Stage 5 (controlled swap), one layer each by convention


class InapplicableError(ValueError):
    """A cost model's hypothesis does not hold for the given inputs."""


def _clog2(x: int) -> int:
    return max(0, (int(x) - 1).bit_length())


@dataclass
class ResourceReport:
    protocol: str
    depth_model: float | None
    ancilla_model: float | None
    subnormalization: float | None
    measured_depth: int | None = None
    measured_ancilla: int | None = None
    measured_gates: int | None = None
    warnings: list[str] = field(default_factory=list)

    @property
    def time_metric(self) -> float | None:
        if self.depth_model is None or self.subnormalization is None:
            return None
        return self.depth_model * self.subnormalization

    @property
    def measured_time_metric(self) -> float | None:
        if self.measured_depth is None or self.subnormalization is None:
            return None
        return self.measured_depth * self.subnormalization

    def to_dict(self) -> dict:
        return {
            "protocol": self.protocol,
            "depth_model": self.depth_model,
            "ancilla_model": self.ancilla_model,
            "subnormalization": self.subnormalization,
            "time_metric": self.time_metric,
            "measured_depth": self.measured_depth,
            "measured_ancilla": self.measured_ancilla,
            "measured_gates": self.measured_gates,
            "measured_time_metric": self.measured_time_metric,
            "warnings": list(self.warnings),
        }


def _positive(**kw):
    for k, v in kw.items():
        if not v > 0:
            raise ValueError(f"{k} must be positive, got {v}")


def sbm_cost(index_bits: int, word_bits: int, sparsity: int) -> tuple[float, int]:
    """Depth ``log2(index * sparsity * word)`` and as many ancillas."""
    _positive(index_bits=index_bits, word_bits=word_bits, sparsity=sparsity)
    size = index_bits * sparsity * word_bits
    return math.log2(size), size


def dictionary_cost(n: int, s: int, s0: int, subnorm: float | None = None) -> ResourceReport:
    """Three sparse selectors of ``(ceil(log s0) + n + 1)`` index bits plus state preparation."""
    _positive(n=n, s=s, s0=s0)
    L = _clog2(s0)
    depth_sbm, anc_sbm = sbm_cost(L + n + 1, n, s)
    rep = ResourceReport(
        "dictionary",
        3 * depth_sbm + L + STAGE_CONSTANT,
        3 * anc_sbm + 2 ** L,
        subnorm,
        warnings=[f"additive constant c0={STAGE_CONSTANT} is a modelling convention"],
    )
    if L > n:
        rep.warnings.append(f"ceil(log2 s0)={L} exceeds n={n}: outside the regime of the depth bound")
    return rep


def prep_unprep_cost(n: int, D: int, M: int, S_c: int, S_r: int, invalid: int = 0,
                     subnorm: float | None = None) -> ResourceReport:
    """Depth ``n 2^(n/2)`` and ``4^n / n`` ancillas; needs ``ceil(log D) <= ceil(log S_c), ceil(log S_r)``."""
    _positive(n=n, D=D, M=M, S_c=S_c, S_r=S_r)
    if _clog2(D) > _clog2(S_c) or _clog2(D) > _clog2(S_r):
        raise InapplicableError(
            f"inapplicable: ceil(log2 D)={_clog2(D)} exceeds ceil(log2 S_c)={_clog2(S_c)} "
            f"or ceil(log2 S_r)={_clog2(S_r)}"
        )
    return ResourceReport("prep-unprep", n * 2 ** (n / 2), 4 ** n / n, subnorm)


def prep_unprep_subnormalization(A: SparseMatrix) -> float:
    """``sqrt(S_c S_r) / D * sum_d |A_d|`` over the distinct nonzero values ``A_d``."""
    values = {t.value for t in A.triplets}
    return math.sqrt(column_sparsity(A) * row_sparsity(A)) / len(values) * math.fsum(abs(v) for v in values)


def csp_cost(n: int, s: int, subnorm: float | None = None) -> ResourceReport:
    """Controlled state preparation: depth ``n + log2(n s)``, ``4^n`` ancillas."""
    _positive(n=n, s=s)
    return ResourceReport("frobenius-csp", n + math.log2(n * s), 4 ** n, subnorm)


def compare(A: SparseMatrix, d: Dictionary, cap: int = 14, measure: bool = True) -> list[ResourceReport]:
    """One report per protocol for the pair ``(A, d)``.

    ``s`` is the nonzero count of ``A``. The dictionary row also carries the
    depth, ancilla and gate counts of the decomposed circuit when it fits in
    ``cap`` qubits.
    """
    n = max(A.n, 1)
    s = max(A.nnz, 1)
    rows = [dictionary_cost(n, s, d.s0, subnormalization(d))]
    if measure:
        from .synthesis import assemble

        circ = decompose(assemble(d).circuit)
        if circ.num_qubits <= cap:
            rows[0].measured_depth = depth(circ)
            rows[0].measured_ancilla = circ.num_qubits - A.n
            rows[0].measured_gates = len(circ.gates)
        else:
            rows[0].warnings.append(f"decomposed circuit has {circ.num_qubits} qubits > cap {cap}; not measured")
    D = distinct_values(A)
    try:
        rows.append(prep_unprep_cost(n, D, s, column_sparsity(A), row_sparsity(A), 0,
                                     prep_unprep_subnormalization(A)))
    except InapplicableError as exc:
        rows.append(ResourceReport("prep-unprep", None, None, prep_unprep_subnormalization(A),
                                   warnings=[str(exc)]))
    rows.append(csp_cost(n, s, frobenius_norm(A)))
    return rows


CSV_HEADER = ["protocol", "depth_model", "ancilla_model", "subnorm", "time_metric", "measured_depth",
              "measured_gates"]


def _cell(x):
    if x is None:
        return ""
    if isinstance(x, float):
        return repr(x)
    return str(x)


def to_csv(rows: list[ResourceReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow([r.protocol, _cell(r.depth_model), _cell(r.ancilla_model), _cell(r.subnormalization),
                    _cell(r.time_metric), _cell(r.measured_depth), _cell(r.measured_gates)])
    return buf.getvalue()


def to_text(rows: list[ResourceReport]) -> str:
    def f(x):
        if x is None:
            return "-"
        if isinstance(x, float):
            return f"{x:.4g}"
        return str(x)

    table = [CSV_HEADER] + [[r.protocol, f(r.depth_model), f(r.ancilla_model), f(r.subnormalization),
                             f(r.time_metric), f(r.measured_depth), f(r.measured_gates)] for r in rows]
    widths = [max(len(row[k]) for row in table) for k in range(len(CSV_HEADER))]
    lines = ["  ".join(c.rjust(w) if k else c.ljust(w) for k, (c, w) in enumerate(zip(row, widths)))
             for row in table]
    for r in rows:
        lines += [f"note ({r.protocol}): {w}" for w in r.warnings]
    return "\n".join(lines) + "\n"
