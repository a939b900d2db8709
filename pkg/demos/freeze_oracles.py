"""Compute reference values with the independent oracles and freeze them.

    python3 demos/freeze_oracles.py

Writes tests/data/oracle_values.json.  The loop-class counts come from the
naive enumerator in tests/oracles.py (every reduced Latin square, full
relabelling scan).  The order-8 Bol count uses the check-only Bol search with
pairwise isomorphism tests, a route that shares neither the forcing step nor
the canonical form with the default pipeline.
"""
import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))

import oracles  # noqa: E402
from loopforge.enumerate import EnumerationTask, corpus_read, enumerate_loops  # noqa: E402


def main():
    values = {}
    values["loop_classes"] = {n: len(oracles.loop_classes_naive(n)) for n in range(1, 6)}
    print("loop classes:", values["loop_classes"])

    task = EnumerationTask(8, "bol", iso_mode="pairwise", force=False, nonassociative=True)
    bol8 = enumerate_loops(task)
    values["nonassociative_bol_8"] = len(bol8)
    values["nonassociative_bruck_8"] = sum(oracles.has_aip_naive(X.table.tolist()) for X in bol8)
    print("nonassociative Bol loops of order 8:", len(bol8))

    envs = {}
    for X in corpus_read(ROOT / "tests" / "data" / "bol8"):
        T = X.table.tolist()
        envs[X.dumps()] = len(oracles.bfs_closure(oracles.right_translations(T), X.n))
    values["bol8_envelope_orders"] = sorted(envs.values())
    print("envelope orders:", values["bol8_envelope_orders"])

    with open(ROOT / "tests" / "data" / "oracle_values.json", "w") as fh:
        json.dump(values, fh, indent=1, sort_keys=True)
        fh.write("\n")


if __name__ == "__main__":
    main()
