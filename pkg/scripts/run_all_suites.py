"""Run every verification suite through the CLI and write one report per suite.

    python3 scripts/run_all_suites.py [outdir] [--seed N]
"""

import argparse
import json
import pathlib
import time

from shimlift.cli import main

SUITES = ["validate", "rho_lemma", "fiber", "majorant", "bessel", "kernel", "analytic", "disk", "ddc", "poisson", "constant", "enumeration"]


def run(outdir, seed):
    outdir = pathlib.Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    codes = {}
    for s in SUITES:
        path = outdir / f"{s}.jsonl"
        t0 = time.perf_counter()
        codes[s] = main(["--seed", str(seed), "--out", str(path), s])
        summary = json.loads(path.read_text().splitlines()[-1])
        print(f"{s:12s} exit={codes[s]} checks={summary.get('checks', 0):5d} failed={summary.get('failed', '-')} {time.perf_counter() - t0:6.1f}s")
    return codes


if __name__ == "__main__":
    p = argparse.ArgumentParser()
    p.add_argument("outdir", nargs="?", default="reports")
    p.add_argument("--seed", type=int, default=0)
    a = p.parse_args()
    codes = run(a.outdir, a.seed)
    raise SystemExit(max(codes.values()))
