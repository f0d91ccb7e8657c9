"""Random-instance campaign comparing every algorithm against the oracle."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .algebra import SemigroupSpec, ValueFunction, builtin_semigroup
from .circuit import Circuit, check_decomposability, check_determinism_bruteforce
from .oracle import (
    GeneratorParams,
    brute_check_solutions,
    brute_check_transform,
    brute_top_values,
    model_table,
    random_circuit,
)
from .preprocess import is_prepared, prepare
from .topk import top_solutions, top_values, transform

KS = (1, 2, 3, 5, 8, 16)


def check_instance(c: Circuit, spec: SemigroupSpec, nu: ValueFunction, k: int, cap: int) -> dict:
    """Run prepare and all three algorithms on one instance; one flag per oracle check."""
    p = prepare(c)
    values = top_values(p, spec, nu, k)
    sols = top_solutions(p, spec, nu, k)
    t = transform(p, spec, nu, k)
    checks = {
        "prepare_preserves_models": model_table(p, cap) == model_table(c, cap) and is_prepared(p),
        "values": values == brute_top_values(c, spec, nu, k, cap),
        "solutions": brute_check_solutions(c, spec, nu, k, sols, cap),
        "transform": brute_check_transform(c, t, spec, nu, k, cap),
        "transform_decomposable": check_decomposability(t).ok,
        "transform_deterministic": check_determinism_bruteforce(t, cap).ok,
        "transform_size": len(t) <= 16 * len(p) * k * k,
    }
    return {
        "k": k,
        "semigroup": spec.name,
        "variables": c.variable_count,
        "nodes": len(c),
        "prepared_nodes": len(p),
        "output_nodes": len(t),
        "values": [spec.format_value(v) for v in values],
        "checks": checks,
        "ok": all(checks.values()),
    }


def random_value_function(spec: SemigroupSpec, n: int, rng: random.Random) -> ValueFunction:
    if spec.least_absorptive is None:
        values = {lit: rng.randint(0, 10**6) for v in range(1, n + 1) for lit in (v, -v)}
    else:
        def draw():
            r = rng.random()
            if r < 0.15:
                return Fraction(0)
            if r < 0.25:
                return Fraction(1)
            q = rng.randint(1, 12)
            return Fraction(rng.randint(0, q), q)

        values = {lit: draw() for v in range(1, n + 1) for lit in (v, -v)}
    return ValueFunction.from_mapping(spec, n, values)


@dataclass
class Instance:
    trial: int
    circuit: Circuit
    k: int
    weights: dict  # semigroup name -> ValueFunction


def campaign_instances(trials: int, seed: int, max_vars: int = 12, max_nodes: int = 200):
    """Seeded stream of random circuits, each with a k and weights for both built-ins."""
    rng = random.Random(seed)
    for trial in range(trials):
        n = rng.randint(1, max_vars)
        target = rng.randint(max(1, max_nodes // 20), max(1, int(max_nodes / 1.25)))
        c = random_circuit(GeneratorParams(seed=rng.getrandbits(64), variable_count=n, target_nodes=target))
        k = rng.choice(KS)
        weights = {name: random_value_function(builtin_semigroup(name), n, rng) for name in ("nat-plus", "unit-product")}
        yield Instance(trial, c, k, weights)


def run_campaign(trials: int, seed: int, max_vars: int, max_nodes: int = 200, cap: int = 20) -> dict:
    """Check every algorithm against the oracle on a seeded random campaign."""
    results = []
    for inst in campaign_instances(trials, seed, max_vars, max_nodes):
        for name, nu in inst.weights.items():
            row = check_instance(inst.circuit, builtin_semigroup(name), nu, inst.k, cap)
            row["trial"] = inst.trial
            results.append(row)
    return {
        "trials": trials,
        "seed": seed,
        "max_vars": max_vars,
        "passed": all(r["ok"] for r in results),
        "results": results,
    }
