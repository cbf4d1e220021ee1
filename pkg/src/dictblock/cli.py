"""Command-line front end: encode, verify, compare, generate, export."""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import dictionary as dct
from .applications import GepParameters, gen_cyclic_laplacian, gen_gep_matrices, gen_laplacian2d
from .circuit import RegisterLayout, decompose, depth
from .qasm import QasmError, export_qasm, import_qasm
from .resources import compare, dictionary_cost, to_csv, to_text
from .sparse import CapacityError, MatrixMarketError, SparseMatrix, dump_matrix_market, load_matrix_market
from .synthesis import (BlockEncoding, assemble, assemble_hermitian, export_lcu, verify_block_encoding)

OUT_ENV = "DICTBLOCK_OUT"
EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAPACITY = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, code, kind, message, **extra):
        super().__init__(message)
        self.code, self.kind, self.extra = code, kind, extra


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    out: str = "."
    tol: float = 1e-9
    cap: int = 14
    hermitian: bool = False
    lcu: bool = False
    value_tol: float = 0.0
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.tol > 0:
            raise CliError(EXIT_INPUT, "config", "tolerance must be positive")
        if self.cap < 1:
            raise CliError(EXIT_INPUT, "config", "simulation cap must be at least 1")


def _dump(doc) -> str:
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def _write(out: Path, name: str, text: str) -> Path:
    out.mkdir(parents=True, exist_ok=True)
    path = out / name
    path.write_text(text)
    return path


def _read(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise CliError(EXIT_INPUT, "io", f"cannot read {path}: {exc.strerror}") from None


def _load_matrix(path) -> SparseMatrix:
    return load_matrix_market(_read(path))


def _stem(path) -> str:
    name = Path(path).name
    for suffix in (".dict.json", ".mtx", ".json"):
        if name.endswith(suffix):
            return name[: -len(suffix)]
    return Path(path).stem


def _dictionary_for(cfg: RunConfig, A: SparseMatrix) -> dct.Dictionary:
    if cfg.hermitian:
        return dct.hermitianize(A)
    return dct.build_dictionary(A, cfg.value_tol, cfg.extra.get("method", "exact"))


def _encoding(cfg: RunConfig, d) -> BlockEncoding:
    return assemble_hermitian(d) if cfg.hermitian else assemble(d)


# -- commands -----------------------------------------------------------------------------

def cmd_encode(cfg: RunConfig) -> int:
    A = _load_matrix(cfg.input)
    d = _dictionary_for(cfg, A)
    lcu = export_lcu(d) if cfg.lcu else None  # reject before anything is written
    be = _encoding(cfg, d)
    out, stem = Path(cfg.out), _stem(cfg.input)

    status = EXIT_OK
    report: dict = {"alpha": be.alpha, "n": A.n, "s0": d.s0, "s": d.s, "hermitian": cfg.hermitian}
    if cfg.extra.get("verify", True):
        if be.circuit.num_qubits > cfg.cap:
            raise CliError(EXIT_CAPACITY, "capacity",
                           f"assembled circuit has {be.circuit.num_qubits} qubits, cap is {cfg.cap}",
                           qubits=be.circuit.num_qubits, cap=cfg.cap)
        v = verify_block_encoding(be, A, cfg.tol, cap=cfg.cap)
        report["verification"] = v.to_dict()
        if not v.passed:
            status = EXIT_FAIL

    dec = decompose(be.circuit)
    cost = dictionary_cost(max(A.n, 1), max(A.nnz, 1), d.s0, be.alpha)
    cost.measured_depth = depth(dec)
    cost.measured_ancilla = dec.num_qubits - A.n
    cost.measured_gates = len(dec.gates)
    report["resources"] = cost.to_dict()
    layout = {"alpha": be.alpha, "hermitian": be.hermitian, "system": be.system, **dec.layout.as_dict()}

    _write(out, f"{stem}.dict.json", dct.to_json(d))
    _write(out, f"{stem}.qasm", export_qasm(dec))
    _write(out, f"{stem}.layout.json", _dump(layout))
    if lcu is not None:
        _write(out, f"{stem}.lcu.json", _dump({
            "n": lcu.n,
            "values": [[v.real, v.imag] for v in lcu.values],
            "masks": list(lcu.masks),
        }))
    _write(out, f"{stem}.report.json", _dump(report))
    print(f"alpha = {be.alpha!r}  s0 = {d.s0}  s = {d.s}  qubits = {dec.num_qubits}  depth = {cost.measured_depth}")
    if "verification" in report:
        v = report["verification"]
        print(f"verification: {'PASS' if v['passed'] else 'FAIL'}  epsilon = {v['epsilon']:.3e}")
    return status


def cmd_verify(cfg: RunConfig) -> int:
    A = _load_matrix(cfg.input)
    meta = json.loads(_read(cfg.extra["layout"]))
    layout = RegisterLayout.from_dict(meta)
    circuit = import_qasm(_read(cfg.extra["qasm"]), layout)
    be = BlockEncoding(circuit, float(meta["alpha"]), None, bool(meta.get("hermitian")), meta.get("system", "system"))
    sampled = cfg.extra.get("sampled", False)
    if circuit.num_qubits > cfg.cap and not sampled:
        raise CliError(EXIT_CAPACITY, "capacity",
                       f"circuit has {circuit.num_qubits} qubits, cap is {cfg.cap}; pass --sampled to check "
                       "a random subset of columns", qubits=circuit.num_qubits, cap=cfg.cap)
    v = verify_block_encoding(be, A, cfg.tol, cap=cfg.cap, sample=cfg.extra.get("columns", 8),
                              seed=cfg.extra.get("seed", 0))
    _write(Path(cfg.out), f"{_stem(cfg.input)}.verify.json", _dump(v.to_dict()))
    print(v)
    return EXIT_OK if v.passed else EXIT_FAIL


def cmd_compare(cfg: RunConfig) -> int:
    A = _load_matrix(cfg.input)
    d = _dictionary_for(cfg, A)
    rows = compare(A, d, cap=cfg.cap)
    _write(Path(cfg.out), f"{_stem(cfg.input)}.compare.csv", to_csv(rows))
    sys.stdout.write(to_text(rows))
    return EXIT_OK


def cmd_generate(cfg: RunConfig) -> int:
    x = cfg.extra
    out = Path(cfg.out)
    kind = x["kind"]
    if kind == "cyclic":
        pairs = {f"cyclic_n{x['n']}": gen_cyclic_laplacian(x["n"], *x["alphas"])}
    elif kind == "laplacian2d":
        pairs = {f"laplacian2d_{x['nx']}x{x['ny']}": gen_laplacian2d(x["nx"], x["ny"], x["dx"], x["dy"])}
    else:
        p = GepParameters.random(x["n1"], x["n2"], seed=x["seed"])
        (A, dA), (B, dB) = gen_gep_matrices(p)
        tag = f"gep_{x['n1']}_{x['n2']}"
        pairs = {f"{tag}_A": (A, dA), f"{tag}_B": (B, dB)}
    for name, (M, d) in pairs.items():
        _write(out, f"{name}.mtx", dump_matrix_market(M))
        _write(out, f"{name}.dict.json", dct.to_json(d))
        print(f"{name}: n = {M.n}, nonzeros = {M.nnz}, items = {d.s0}, alpha = {dct.subnormalization(d)!r}")
    return EXIT_OK


def cmd_export(cfg: RunConfig) -> int:
    text = _read(cfg.input)
    if cfg.input.endswith(".json"):
        d = dct.from_json(text, hermitian=cfg.hermitian)
    else:
        d = _dictionary_for(cfg, load_matrix_market(text))
    stem = _stem(cfg.input)
    fmt = cfg.extra.get("format", "qasm")
    if fmt == "lcu":
        lcu = export_lcu(d)
        doc = {"n": lcu.n, "values": [[v.real, v.imag] for v in lcu.values], "masks": list(lcu.masks)}
        path = _write(Path(cfg.out), f"{stem}.lcu.json", _dump(doc))
    else:
        be = _encoding(cfg, d)
        dec = decompose(be.circuit)
        if fmt == "qasm":
            path = _write(Path(cfg.out), f"{stem}.qasm", export_qasm(dec))
            layout = {"alpha": be.alpha, "hermitian": be.hermitian, "system": be.system, **dec.layout.as_dict()}
            _write(Path(cfg.out), f"{stem}.layout.json", _dump(layout))
        else:
            path = _write(Path(cfg.out), f"{stem}.encoding.json", be.to_json())
    print(path)
    return EXIT_OK


COMMANDS = {"encode": cmd_encode, "verify": cmd_verify, "compare": cmd_compare,
            "generate": cmd_generate, "export": cmd_export}


# -- argument parsing -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=os.environ.get(OUT_ENV, "."),
                        help=f"output directory (default: ${OUT_ENV} or the current directory)")
    common.add_argument("--tol", type=float, default=1e-9, help="verification tolerance on max |A - alpha*block|")
    common.add_argument("--cap", type=int, default=14, help="simulation cap in qubits")

    build = argparse.ArgumentParser(add_help=False)
    build.add_argument("--hermitian", action="store_true", help="use the Hermitian encoding")
    build.add_argument("--value-tol", type=float, default=0.0, help="merge values closer than this")
    build.add_argument("--method", choices=["exact", "greedy"], default="exact", help="item splitting")

    p = argparse.ArgumentParser(prog="dictblock", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("encode", parents=[common, build], help="build, verify and write an encoding")
    e.add_argument("input", help="MatrixMarket file")
    e.add_argument("--lcu", action="store_true", help="also write the LCU form")
    e.add_argument("--no-verify", dest="verify", action="store_false")

    v = sub.add_parser("verify", parents=[common], help="re-simulate written QASM against a matrix")
    v.add_argument("input", help="MatrixMarket file")
    v.add_argument("--qasm", required=True)
    v.add_argument("--layout", required=True)
    v.add_argument("--sampled", action="store_true", help="allow checking random columns above the cap")
    v.add_argument("--columns", type=int, default=8)
    v.add_argument("--seed", type=int, default=0)

    c = sub.add_parser("compare", parents=[common, build], help="cost-model comparison table")
    c.add_argument("input", help="MatrixMarket file")

    g = sub.add_parser("generate", help="write application instances")
    gs = g.add_subparsers(dest="kind", required=True)
    gc = gs.add_parser("cyclic", parents=[common])
    gc.add_argument("--n", type=int, default=3)
    gc.add_argument("--alphas", type=float, nargs=3, default=[3.0, 2.0, 1.0])
    gl = gs.add_parser("laplacian2d", parents=[common])
    gl.add_argument("--nx", type=int, default=4)
    gl.add_argument("--ny", type=int, default=4)
    gl.add_argument("--dx", type=float, default=1.0)
    gl.add_argument("--dy", type=float, default=1.0)
    gg = gs.add_parser("gep", parents=[common])
    gg.add_argument("--n1", type=int, default=2)
    gg.add_argument("--n2", type=int, default=3)
    gg.add_argument("--seed", type=int, default=0, help="seed for the a_k, b_k values")

    x = sub.add_parser("export", parents=[common, build], help="write QASM, encoding JSON or LCU form")
    x.add_argument("input", help="MatrixMarket file or dictionary JSON")
    x.add_argument("--format", choices=["qasm", "json", "lcu"], default="qasm")
    return p


_CONFIG_KEYS = {"command", "input", "out", "tol", "cap", "hermitian", "lcu", "value_tol"}


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    args = vars(ns)
    kw = {k: args[k] for k in _CONFIG_KEYS if k in args}
    extra = {k: v for k, v in args.items() if k not in _CONFIG_KEYS}
    return RunConfig(**kw, extra=extra)


def _error_kind(exc) -> tuple[int, str]:
    if isinstance(exc, (CapacityError, dct.DictionaryCapacityError)):
        return EXIT_CAPACITY, "capacity"
    if isinstance(exc, MatrixMarketError):
        return EXIT_INPUT, "parse"
    if isinstance(exc, QasmError):
        return EXIT_INPUT, "qasm"
    if isinstance(exc, dct.DictionaryError):
        return EXIT_INPUT, "dictionary"
    if isinstance(exc, (ValueError, KeyError, json.JSONDecodeError)):
        return EXIT_INPUT, "input"
    raise exc


def run(cfg: RunConfig) -> int:
    return COMMANDS[cfg.command](cfg)


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        return run(config_from_args(ns))
    except CliError as exc:
        code, kind, extra = exc.code, exc.kind, exc.extra
        msg = str(exc)
    except Exception as exc:  # mapped to exit codes below
        code, kind = _error_kind(exc)
        extra = {"line": exc.line} if isinstance(exc, MatrixMarketError) and exc.line else {}
        msg = str(exc)
    sys.stderr.write(json.dumps({"error": kind, "exit": code, "message": msg, **extra}, sort_keys=True) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
