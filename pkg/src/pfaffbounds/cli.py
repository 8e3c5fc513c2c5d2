"""Command-line entry point: ``pfaffbounds <subcommand> ...``.

Every command prints one JSON document (or CSV for ``table --format csv``).
Exit status: 0 success, 1 verification failure, 2 input or usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import sys
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, Optional

from . import asympbounds as ab
from . import exactbounds as eb
from . import fibered, homology, signcells
from .errors import BoundViolated, InequalityViolated, InvalidFormat
from .formats import (SCHEMAS, ChainFormat, CoupleFormat, QuantifierFormat, SetFormat,
                      quantifier_from_dict, set_from_dict)


class UsageError(Exception):
    def __init__(self, message: str, hint=None):
        super().__init__(message)
        self.hint = hint


# --------------------------------------------------------------------------
# parameter helpers


def _take(params: dict, required=(), optional=()) -> dict:
    unknown = set(params) - set(required) - set(optional)
    if unknown:
        raise UsageError(f"unknown parameters {sorted(unknown)}",
                         {"required": list(required), "optional": list(optional)})
    missing = [k for k in required if k not in params]
    if missing:
        raise UsageError(f"missing parameters {missing}",
                         {"required": list(required), "optional": list(optional)})
    return {k: params[k] for k in list(required) + list(optional) if k in params}


_SET_FLAT = ("n", "ell", "alpha", "gamma", "beta", "s")
_SET_OPT = ("m", "d", "r")


def _set(params: dict, extra=()) -> tuple:
    """SetFormat from nested (``chain``) or flat parameters, plus extra keys."""
    params = dict(params)
    more = {k: params.pop(k) for k in extra if k in params}
    if "chain" in params:
        p = _take(params, ("chain", "beta", "s"), _SET_OPT)
        return set_from_dict(p), more
    p = _take(params, _SET_FLAT, _SET_OPT)
    chain = ChainFormat(p["n"], p["ell"], p["alpha"], p["gamma"])
    return SetFormat(chain, p["beta"], p["s"], p.get("m"), p.get("d"), p.get("r")), more


def _couple(params: dict, extra=()) -> tuple:
    params = dict(params)
    more = {k: params.pop(k) for k in extra if k in params}
    p = _take(params, ("x", "y"), ("M", "N"))
    return CoupleFormat(_set(p["x"])[0], _set(p["y"])[0], p.get("M", 1), p.get("N", 1)), more


def _quantifier(params: dict) -> QuantifierFormat:
    """Full quantifier format, or the algebraic shorthand ``{n0, blocks|nu, d, s}``."""
    if "inner" in params:
        p = _take(params, ("n0", "blocks", "inner"), ("M",))
        inner = p["inner"]
        if "chain" not in inner:
            inner = {"chain": {k: inner[k] for k in ("n", "ell", "alpha", "gamma") if k in inner},
                     **{k: v for k, v in inner.items() if k not in ("n", "ell", "alpha", "gamma")}}
        return quantifier_from_dict({**p, "inner": inner})
    p = _take(params, ("n0", "d", "s"), ("blocks", "nu", "block_size", "M"))
    if "blocks" in p:
        blocks = p["blocks"]
    elif "nu" in p:
        blocks = [1] + [p.get("block_size", 1)] * (p["nu"] - 1)
    else:
        raise UsageError("give 'blocks' or 'nu'")
    return ab.algebraic_qf(p["n0"], blocks, p["d"], p["s"], p.get("M", 1))


def _plain(fn, names, optional=()):
    return lambda params: fn(**_take(params, names, optional))


EXACT: Dict[str, Callable[[dict], eb.ExactBound]] = {
    "khovanskii": _plain(eb.khovanskii, ("n", "ell", "alpha", "betas")),
    "khovanskii_uniform": _plain(eb.khovanskii_uniform, ("n", "ell", "alpha", "beta")),
    "khovanskii_domain": _plain(eb.khovanskii_domain, ("n", "ell", "alpha", "betas", "gamma")),
    "fewnomial_system": _plain(eb.fewnomial_system, ("n", "r")),
    "additive_complexity": _plain(eb.additive_complexity, ("k",)),
    "descartes": _plain(eb.descartes, ("r",)),
    "optm": _plain(eb.optm, ("n", "d")),
    "variety_V": _plain(eb.variety_V, ("n", "ell", "alpha", "beta", "gamma")),
    "variety_noncompact": _plain(eb.variety_noncompact, ("n", "ell", "alpha", "beta", "gamma")),
    "sigma": _plain(eb.sigma, ("s", "d")),
    "basic_set_B0": lambda p: eb.basic_set_B0(_set(p)[0]),
    "pclosed_recursive": lambda p: eb.pclosed_recursive(_set(p)[0]),
    "pclosed_closed": lambda p: (lambda f, x: eb.pclosed_closed(f, **x))(*_set(p, ("variant",))),
    "cells_bound": lambda p: eb.cells_bound(_set(p)[0]),
    "bm_composed": lambda p: eb.bm_composed(_set(p)[0]),
    "smooth_cc": lambda p: (lambda c, x: eb.smooth_cc(c, **x))(*_couple(p, ("d", "k"))),
    "singular_cc": lambda p: eb.singular_cc(_couple(p)[0]),
    "fewnomial_cc": lambda p: (lambda c, x: eb.fewnomial_cc(c, **x))(*_couple(p, ("r",))),
    "hausdorff_betti": lambda p: (lambda f, x: eb.hausdorff_betti(f, **x))(*_set(p, ("k",))),
}

_BLOCK = ("n0", "n1", "ell", "alpha", "beta", "s", "k")

ASYMPTOTIC: Dict[str, Callable[[dict], object]] = {
    "variety_asymptotic": _plain(ab.variety_asymptotic, ("n", "ell", "alpha", "beta")),
    "pclosed_asymptotic": lambda p: ab.pclosed_asymptotic(_set(p)[0]),
    "bm_asymptotic": lambda p: ab.bm_asymptotic(_set(p)[0]),
    "gv_qf": lambda p: ab.gv_qf(_set(p)[0]),
    "existential": _plain(ab.existential, _BLOCK),
    "universal": _plain(ab.universal, _BLOCK),
    "quantifier_bound": lambda p: ab.quantifier_bound(_quantifier(p)),
    "algebraic_quantifier": lambda p: ab.algebraic_quantifier(_quantifier(p)),
    "qe_comparison": lambda p: ab.qe_comparison(_quantifier(p)),
    "singular_cc_asymptotic": _plain(ab.singular_cc_asymptotic, ("n", "ell", "alpha", "beta"),
                                     ("M", "N")),
    "frontier_cc": _plain(ab.frontier_cc, ("n", "r", "s", "N")),
    "hausdorff_asymptotic": lambda p: (lambda f, x: ab.hausdorff_asymptotic(f, **x))(*_set(p, ("k",))),
}


def _descriptor(obj) -> ab.AsymptoticBound:
    # quantifier_bound returns engine + closed form; comparisons use the engine
    return obj.engine if isinstance(obj, ab.QuantifierBound) else obj


def _evaluate(formula: str, params: dict, asymptotic: bool):
    table = ASYMPTOTIC if asymptotic else EXACT
    if formula not in table:
        kind = "asymptotic" if asymptotic else "exact"
        raise UsageError(f"unknown {kind} formula {formula!r}", sorted(table))
    return table[formula](params)


# --------------------------------------------------------------------------
# commands


def _load_json(text: Optional[str], what: str):
    if text is None:
        raise UsageError(f"{what} is required")
    if text.startswith("@"):
        text = Path(text[1:]).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{what} is not valid JSON: {exc}") from None


def _load_file(path: str):
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise UsageError(f"no such file {path!r}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None


def cmd_bound(args) -> tuple:
    params = _load_json(args.params, "--params")
    result = _evaluate(args.formula, params, args.asymptotic)
    if args.asymptotic:
        return 0, result.to_dict(args.constant)
    return 0, result.to_dict()


def _operand(spec: dict):
    if not isinstance(spec, dict) or "formula" not in spec:
        raise UsageError("compare operands look like {\"formula\": id, \"params\": {...}}")
    return _descriptor(_evaluate(spec["formula"], spec.get("params", {}), True))


def cmd_compare(args) -> tuple:
    params = _load_json(args.params, "--params")
    p = _take(params, ("a", "b"))
    a, b = _operand(p["a"]), _operand(p["b"])
    cmp = ab.compare(a, b, args.constant)
    return 0, {"comparison": cmp.to_dict(), "a": a.to_dict(args.constant),
               "b": b.to_dict(args.constant)}


def _map_from(path: str) -> fibered.SimplicialMap:
    p = Path(path)
    if not p.exists():
        corpus = fibered.map_corpus()
        if p.stem in corpus:
            return corpus[p.stem]
        raise UsageError(f"no such file {path!r}", {"corpus": sorted(corpus)})
    return fibered.SimplicialMap.from_dict(_load_file(path))


def cmd_verify_ss(args) -> tuple:
    f = _map_from(args.map)
    report = fibered.verify_spectral_inequality(f, args.kmax, args.field, strict=False)
    return (0 if report.ok else 1), report.to_dict()


def cmd_verify_cells(args) -> tuple:
    system = signcells.PolynomialSystem.from_dict(_load_file(args.system))
    report = signcells.enumerate_signs(system, args.resolution)
    out = {"report": report.to_dict()}
    try:
        out["verdict"] = signcells.check_against_bound(system, report).to_dict()
    except BoundViolated as exc:
        out["verdict"] = {"status": "violated", "message": str(exc)}
        return 1, out
    return 0, out


def cmd_homology(args) -> tuple:
    K = homology.SimplicialComplex.from_dict(_load_file(args.complex))
    b = homology.betti(K, args.field)
    return 0, {"betti": list(b), "field": args.field, "f_vector": K.f_vector(),
               "euler_characteristic": K.euler_characteristic()}


def cmd_diagonal(args) -> tuple:
    d = _load_file(args.sample)
    if args.p is not None:
        d["p"] = args.p
    if args.delta is not None:
        d["delta"] = args.delta
    sample = fibered.DiagonalSample.from_dict(d)
    return 0, {"components": fibered.expanded_diagonal_components(sample),
               "nodes": len(fibered.diagonal_nodes(sample)),
               "p": sample.p, "delta": str(sample.delta), "points": len(sample.points)}


# ---- tables

FAMILIES = {
    "variety-beta": {"operation": "variety_V",
                     "fixed": {"n": 2, "ell": 1, "alpha": 1, "gamma": 2},
                     "sweep": {"beta": {"start": 1, "stop": 10}}},
    "ealg-vs-bqe": {"operation": "compare", "a": "algebraic_quantifier", "b": "qe_comparison",
                    "fixed": {"d": 2, "s": 2, "block_size": 2},
                    "sweep": {"n0": [2, 8], "nu": {"start": 1, "stop": 4}}},
    "pclosed": {"operation": "pclosed_recursive",
                "fixed": {"n": 2, "ell": 1, "alpha": 1, "beta": 2, "gamma": 2, "s": 4},
                "sweep": {"m": {"start": 0, "stop": 4}}},
}


def _values(spec) -> list:
    if isinstance(spec, list):
        return spec
    if isinstance(spec, dict) and {"start", "stop"} <= set(spec):
        return list(range(spec["start"], spec["stop"] + 1, spec.get("step", 1)))
    raise UsageError("sweep values are a list or {start, stop[, step]}")


def table(spec: dict, constant: float = 1) -> list:
    """Evaluate one operation over the Cartesian product of the sweep ranges."""
    spec = dict(spec)
    op = spec.get("operation")
    if op is None:
        raise UsageError("table spec needs 'operation'", sorted(FAMILIES))
    fixed = spec.get("fixed", {})
    sweep = spec.get("sweep", {})
    names = list(sweep)
    rows = []
    for combo in itertools.product(*(_values(sweep[k]) for k in names)):
        params = {**fixed, **dict(zip(names, combo))}
        row = dict(zip(names, combo))
        if op == "compare":
            a = _descriptor(_evaluate(spec["a"], params, True))
            b = _descriptor(_evaluate(spec["b"], params, True))
            c = ab.compare(a, b, constant)
            row.update({"log2_a": c.log2_a, "log2_b": c.log2_b,
                        "winner": {"a": spec["a"], "b": spec["b"]}.get(c.smaller, "equal")})
        elif op in EXACT and not spec.get("asymptotic"):
            r = EXACT[op](params)
            row.update({"value": str(r.value), "bit_length": r.bit_length})
        else:
            r = _descriptor(_evaluate(op, params, True))
            row.update({"log2_lower": r.log2_lower()})
            if constant != 1:
                row["log2_value"] = r.log2_value(constant)
        rows.append(row)
    return rows


def cmd_table(args) -> tuple:
    if args.family:
        if args.family not in FAMILIES:
            raise UsageError(f"unknown family {args.family!r}", sorted(FAMILIES))
        spec = FAMILIES[args.family]
    else:
        spec = _load_json(args.params, "--params (or a family name)")
    rows = table(spec, args.constant)
    return 0, {"operation": spec.get("operation"), "rows": rows}


# --------------------------------------------------------------------------
# plumbing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pfaffbounds", description=__doc__.splitlines()[0])
    parser.add_argument("--output", help="write the report to this path")
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("bound", help="evaluate one bound")
    p.add_argument("formula")
    p.add_argument("--params", required=True, help="JSON text or @file")
    p.add_argument("--asymptotic", action="store_true")
    p.add_argument("--constant", type=float, default=None)
    p.set_defaults(run=cmd_bound)

    p = sub.add_parser("compare", help="compare two asymptotic bounds")
    p.add_argument("--params", required=True)
    p.add_argument("--constant", type=float, default=1.0)
    p.set_defaults(run=cmd_compare)

    p = sub.add_parser("verify-ss", help="check the descent inequality on a simplicial map")
    p.add_argument("map", help="map JSON file, or the name of a built-in map")
    p.add_argument("--kmax", type=int, default=1)
    p.add_argument("--field", choices=homology.FIELDS, default="q")
    p.set_defaults(run=cmd_verify_ss)

    p = sub.add_parser("verify-cells", help="grid sign-cell count against the exact bound")
    p.add_argument("system")
    p.add_argument("--resolution", type=int, default=64)
    p.set_defaults(run=cmd_verify_cells)

    p = sub.add_parser("homology", help="Betti numbers of a simplicial complex")
    p.add_argument("complex")
    p.add_argument("--field", choices=homology.FIELDS, default="q")
    p.set_defaults(run=cmd_homology)

    p = sub.add_parser("diagonal", help="components of an expanded diagonal")
    p.add_argument("sample")
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--delta", default=None)
    p.set_defaults(run=cmd_diagonal)

    p = sub.add_parser("table", help="sweep an operation over a parameter grid")
    p.add_argument("family", nargs="?", help=f"built-in sweep: {', '.join(FAMILIES)}")
    p.add_argument("--params", help="sweep spec JSON (operation, fixed, sweep)")
    p.add_argument("--constant", type=float, default=1.0)
    p.set_defaults(run=cmd_table)

    # flags accepted after the subcommand too
    for action in sub.choices.values():
        action.add_argument("--output", default=argparse.SUPPRESS)
        action.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS)
    return parser


def _jsonable(x):
    if isinstance(x, float) and not math.isfinite(x):
        return "inf" if x > 0 else ("-inf" if x < 0 else "nan")
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _render(payload: dict, fmt: str) -> str:
    if fmt == "csv":
        rows = payload.get("rows")
        if rows is None:
            raise UsageError("--format csv is only available for 'table'")
        buf = io.StringIO()
        fields = list(dict.fromkeys(k for r in rows for k in r))
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        writer.writerows(_jsonable(rows))
        return buf.getvalue()
    return json.dumps(_jsonable(payload), indent=2, sort_keys=True) + "\n"


def run(argv=None) -> int:
    """Parse ``argv``, run the command, emit the report, return the exit status."""
    fmt, output = "json", None
    try:
        args = build_parser().parse_args(argv)
        fmt, output = args.format, args.output
        if not getattr(args, "command", None):
            raise UsageError("a subcommand is required",
                             ["bound", "compare", "verify-ss", "verify-cells", "homology",
                              "diagonal", "table"])
        status, payload = args.run(args)
        text = _render(payload, fmt)
    except UsageError as exc:
        status, fmt = 2, "json"
        text = _render({"error": str(exc), "hint": exc.hint}, "json")
    except (InvalidFormat, ValueError, KeyError, TypeError) as exc:
        status, fmt = 2, "json"
        hint = {"format_schemas": sorted(SCHEMAS)}
        if isinstance(exc, InvalidFormat):
            hint["invariant"] = exc.invariant
        text = _render({"error": f"{type(exc).__name__}: {exc}", "hint": hint}, "json")
    except InequalityViolated as exc:
        status = 1
        text = _render({"ok": False, "error": str(exc)}, "json")
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
