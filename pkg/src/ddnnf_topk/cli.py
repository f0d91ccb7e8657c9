"""``topk`` command line: preprocess, solutions, values, transform, check.

Exit codes: 0 success, 1 failed check, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional

from .algebra import (
    BUILTINS,
    SemigroupSpec,
    ValueFunction,
    WeightsError,
    builtin_semigroup,
    load_weights,
)
from .circuit import Circuit, NNFParseError, evaluate, parse_nnf, write_nnf
from .campaign import check_instance, run_campaign
from .oracle import brute_check_solutions, brute_check_transform
from .preprocess import is_prepared, prepare
from .topk import flatten, top_solutions, top_values, transform

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    circuit: Optional[str] = None
    weights: Optional[str] = None
    semigroup: str = "nat-plus"
    k: int = 1
    format: str = "json"
    out: Optional[str] = None
    trials: int = 0
    max_vars: int = 12
    max_nodes: int = 200
    seed: int = 0
    cap: int = 20
    verify: bool = False
    assume_prepared: bool = False
    candidate: Optional[str] = None
    transformed: Optional[str] = None

    def __post_init__(self):
        if self.k < 1:
            raise UsageError(f"--k must be a positive integer, got {self.k}")
        if self.semigroup not in BUILTINS:
            raise UsageError(f"unknown semigroup {self.semigroup!r}")


def _read(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_circuit(cfg: RunConfig) -> Circuit:
    if not cfg.circuit:
        raise UsageError("--circuit is required")
    try:
        return parse_nnf(_read(cfg.circuit))
    except NNFParseError as exc:
        raise UsageError(f"{cfg.circuit}: {exc}") from None


def _load_weights(cfg: RunConfig, spec: SemigroupSpec, n: int) -> ValueFunction:
    text = _read(cfg.weights) if cfg.weights else ""
    try:
        return load_weights(spec, text, n)
    except WeightsError as exc:
        raise UsageError(f"{cfg.weights}: {exc}") from None


def _ready(cfg: RunConfig, c: Circuit) -> Circuit:
    if cfg.assume_prepared:
        if not is_prepared(c):
            raise UsageError("--assume-prepared given but the circuit is not reduced, binary and smooth")
        return c
    return prepare(c)


def _emit(text: str, path: Optional[str] = None) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def cmd_preprocess(cfg: RunConfig) -> int:
    c = _load_circuit(cfg)
    _emit(write_nnf(prepare(c)), cfg.out)
    return EXIT_OK


def cmd_solutions(cfg: RunConfig) -> int:
    spec = builtin_semigroup(cfg.semigroup)
    c = _load_circuit(cfg)
    nu = _load_weights(cfg, spec, c.variable_count)
    p = _ready(cfg, c)
    sols = [(v, flatten(t)) for v, t in top_solutions(p, spec, nu, cfg.k)]
    status = EXIT_OK
    if cfg.verify:
        for _, lits in sols:
            omega = {abs(x): int(x > 0) for x in lits}
            if not evaluate(c, omega):
                print(f"solution {lits} does not satisfy the input circuit", file=sys.stderr)
                status = EXIT_FAIL
    if cfg.format == "text":
        lines = [f"k={cfg.k} semigroup={spec.name} count={len(sols)}"]
        lines += [f"{spec.format_value(v)}\t{' '.join(map(str, lits))}" for v, lits in sols]
        _emit("\n".join(lines) + "\n")
    else:
        _emit(_dump({
            "k": cfg.k,
            "semigroup": spec.name,
            "count": len(sols),
            "solutions": [{"value": spec.format_value(v), "literals": lits} for v, lits in sols],
        }))
    return status


def cmd_values(cfg: RunConfig) -> int:
    spec = builtin_semigroup(cfg.semigroup)
    c = _load_circuit(cfg)
    nu = _load_weights(cfg, spec, c.variable_count)
    p = _ready(cfg, c)
    values = [spec.format_value(v) for v in top_values(p, spec, nu, cfg.k)]
    if cfg.format == "text":
        _emit("\n".join(values) + ("\n" if values else ""))
    else:
        _emit(_dump({"k": cfg.k, "semigroup": spec.name, "count": len(values), "values": values}))
    return EXIT_OK


def cmd_transform(cfg: RunConfig) -> int:
    if not cfg.out:
        raise UsageError("transform needs --out for the resulting circuit")
    spec = builtin_semigroup(cfg.semigroup)
    c = _load_circuit(cfg)
    nu = _load_weights(cfg, spec, c.variable_count)
    p = _ready(cfg, c)
    kept = top_values(p, spec, nu, cfg.k)
    t = transform(p, spec, nu, cfg.k)
    _emit(write_nnf(t), cfg.out)
    _emit(_dump({
        "k": cfg.k,
        "semigroup": spec.name,
        "input_nodes": len(c),
        "prepared_nodes": len(p),
        "output_nodes": len(t),
        "values": [spec.format_value(v) for v in kept],
    }))
    return EXIT_OK


# --------------------------------------------------------------------------
# check


def _parse_candidate(spec: SemigroupSpec, text: str) -> list:
    try:
        data = json.loads(text)
        return [(spec.parse_value(s["value"]), list(s["literals"])) for s in data["solutions"]]
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"candidate file is not a solutions report: {exc}") from None


def cmd_check(cfg: RunConfig) -> int:
    if cfg.trials:
        report = run_campaign(cfg.trials, cfg.seed, min(cfg.max_vars, 16), cfg.max_nodes, cfg.cap)
        _emit(_dump(report))
        return EXIT_OK if report["passed"] else EXIT_FAIL
    spec = builtin_semigroup(cfg.semigroup)
    c = _load_circuit(cfg)
    if c.variable_count > cfg.cap:
        raise UsageError(f"{c.variable_count} variables exceed the oracle cap {cfg.cap}")
    nu = _load_weights(cfg, spec, c.variable_count)
    if cfg.candidate or cfg.transformed:
        checks = {}
        if cfg.candidate:
            cand = _parse_candidate(spec, _read(cfg.candidate))
            checks["candidate"] = brute_check_solutions(c, spec, nu, cfg.k, cand, cfg.cap)
        if cfg.transformed:
            try:
                t = parse_nnf(_read(cfg.transformed))
            except NNFParseError as exc:
                raise UsageError(f"{cfg.transformed}: {exc}") from None
            checks["transformed"] = brute_check_transform(c, t, spec, nu, cfg.k, cfg.cap)
        report = {"k": cfg.k, "semigroup": spec.name, "checks": checks, "ok": all(checks.values())}
    else:
        report = check_instance(c, spec, nu, cfg.k, cfg.cap)
    _emit(_dump(report))
    return EXIT_OK if report["ok"] else EXIT_FAIL


COMMANDS = {
    "preprocess": cmd_preprocess,
    "solutions": cmd_solutions,
    "values": cmd_values,
    "transform": cmd_transform,
    "check": cmd_check,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="topk", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--circuit", help="input circuit in NNF format")
    parser.add_argument("--weights", help="literal weights file")
    parser.add_argument("--semigroup", default="nat-plus", choices=sorted(BUILTINS))
    parser.add_argument("--k", type=int, default=1)
    parser.add_argument("--out", help="output NNF path")
    parser.add_argument("--format", default="json", choices=("json", "text"))
    parser.add_argument("--trials", type=int, default=0, help="random oracle campaign size (check)")
    parser.add_argument("--max-vars", type=int, default=12)
    parser.add_argument("--max-nodes", type=int, default=200)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--cap", type=int, default=20, help="variable cap for exhaustive checks")
    parser.add_argument("--verify", action="store_true", help="re-evaluate reported solutions")
    parser.add_argument("--assume-prepared", action="store_true")
    parser.add_argument("--candidate", help="solutions JSON to validate (check)")
    parser.add_argument("--transformed", help="transformed NNF to validate (check)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(**vars(args))
        return COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"topk: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OverflowError) as exc:
        print(f"topk: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
