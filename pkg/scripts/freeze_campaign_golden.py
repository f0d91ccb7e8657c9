"""Regenerate tests/data/campaign_golden.json from the brute-force oracle.

Only rerun this when the generator or the campaign stream changes on purpose.
"""

import hashlib
import json
import sys
from pathlib import Path

from ddnnf_topk.algebra import builtin_semigroup
from ddnnf_topk.campaign import campaign_instances
from ddnnf_topk.circuit import write_nnf
from ddnnf_topk.oracle import brute_top_values

SEED, TRIALS = 20261014, 500
OUT = Path(__file__).resolve().parent.parent / "tests" / "data" / "campaign_golden.json"


def circuit_digest(c) -> str:
    return hashlib.sha1(write_nnf(c).encode()).hexdigest()[:12]


def main() -> int:
    rows = []
    for inst in campaign_instances(TRIALS, SEED):
        for name, nu in inst.weights.items():
            spec = builtin_semigroup(name)
            rows.append({
                "trial": inst.trial,
                "semigroup": name,
                "k": inst.k,
                "circuit_sha1": circuit_digest(inst.circuit),
                "values": [spec.format_value(v) for v in brute_top_values(inst.circuit, spec, nu, inst.k)],
            })
    OUT.write_text(json.dumps({"seed": SEED, "trials": TRIALS, "rows": rows}, indent=0) + "\n")
    print(f"wrote {len(rows)} rows to {OUT}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
