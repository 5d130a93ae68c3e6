"""shimlift command line: run verification suites and write JSON-lines reports.

Exit codes: 0 when every record passes, 1 when any fails, 2 on a
configuration error or a violated instance assumption.
"""

from __future__ import annotations

import argparse
import json
import platform
import sys
import time
from fractions import Fraction

import numpy as np

from . import checks
from .config import ConfigError, InstanceConfig, apply_overrides, env_default, load_config
from .errors import InvalidInstance, ShimliftError
from .thetalift import NSParams

SECOND_KERNEL = (51, 10)


def _ints(s):
    return [int(x) for x in s.split(",") if x.strip()]


def _floats(s):
    return [float(x) for x in s.split(",") if x.strip()]


def _jsonable(o):
    if isinstance(o, np.generic):
        return o.item()
    if isinstance(o, Fraction):
        return str(o)
    if isinstance(o, complex):
        return [o.real, o.imag]
    if isinstance(o, (tuple, np.ndarray)):
        return list(o)
    raise TypeError(f"cannot serialize {type(o).__name__}")


def dumps(rec) -> str:
    return json.dumps(rec, sort_keys=True, default=_jsonable)


def _versions():
    import mpmath
    import scipy

    return {"python": platform.python_version(), "numpy": np.__version__, "scipy": scipy.__version__, "mpmath": mpmath.__version__}


def run_suite(name, args, cfg: InstanceConfig, inst):
    rng = np.random.default_rng(cfg.seed)
    tol = cfg.tol
    if name == "validate":
        return checks.validate(inst)
    if name == "rho_lemma":
        return checks.rho_identity(inst, args.n_max) + checks.rho_lemma(inst, args.max_m)
    if name == "fiber":
        return checks.fiber(inst, _ints(args.m), args.per_m)
    if name == "majorant":
        return checks.majorant(inst, args.samples, rng)
    if name == "bessel":
        return checks.bessel()
    if name == "kernel":
        params = [NSParams(inst.d_b, abs(inst.delta)), NSParams(*SECOND_KERNEL)]
        return checks.kernel(params, args.points, rng)
    if name == "analytic":
        zs = [complex(rng.uniform(-0.5, 0.5), rng.uniform(0.6, 1.6)) for _ in range(args.z_count)]
        return checks.analytic(inst, _ints(args.ell), _floats(args.eta), zs, tol.identity, tol.sum_tail, cfg.cutoff, cfg.budget)
    if name == "disk":
        return checks.disk_integral(inst)
    if name == "ddc":
        return checks.ddc(inst, rng=rng)
    if name == "poisson":
        return checks.poisson(inst)
    if name == "constant":
        return checks.constant(inst, tuple(_floats(args.eta)))
    if name == "enumeration":
        return checks.enumeration(args.trials, rng)
    raise ValueError(name)


def build_parser():
    p = argparse.ArgumentParser(prog="shimlift", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--config", default=env_default("config"), help="key=value file with [instance], [tolerances], [limits], [run]")
    p.add_argument("--tol", default=env_default("tol"), help="identity tolerance")
    p.add_argument("--cutoff", default=env_default("cutoff"), help="fixed majorant cutoff for theta sums")
    p.add_argument("--budget", default=env_default("budget"), help="lattice-point budget per enumeration")
    p.add_argument("--seed", default=env_default("seed"))
    p.add_argument("--out", default=env_default("out"), help="report path (default stdout)")
    p.add_argument("--timing", action="store_true", help="add wall time to the summary (breaks byte-identical reports)")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("validate")
    s = sub.add_parser("rho_lemma")
    s.add_argument("--max-m", type=int, default=1000)
    s.add_argument("--n-max", type=int, default=10 ** 4)
    s = sub.add_parser("fiber")
    s.add_argument("--m", default="2,4,6,10,12,14,20,30")
    s.add_argument("--per-m", type=int, default=3)
    s = sub.add_parser("majorant")
    s.add_argument("--samples", type=int, default=1000)
    sub.add_parser("bessel")
    s = sub.add_parser("kernel")
    s.add_argument("--points", type=int, default=20)
    s = sub.add_parser("analytic")
    s.add_argument("--ell", default="1,-1,2,-2,3,-3")
    s.add_argument("--eta", default="0.5,1,2")
    s.add_argument("--z-count", type=int, default=3)
    sub.add_parser("disk")
    sub.add_parser("ddc")
    sub.add_parser("poisson")
    s = sub.add_parser("constant")
    s.add_argument("--eta", default="0.5,1,2")
    s = sub.add_parser("enumeration")
    s.add_argument("--trials", type=int, default=100)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = open(args.out, "w") if args.out else sys.stdout
    t0 = time.perf_counter()
    try:
        try:
            cfg = load_config(args.config) if args.config else InstanceConfig()
            cfg = apply_overrides(cfg, args.tol, args.cutoff, args.budget, args.seed)
            inst = cfg.build()
            fp = inst.fingerprint()
        except (ConfigError, InvalidInstance, ValueError) as e:
            rec = {"record": "error", "suite": args.command, "error": type(e).__name__, "detail": str(e), "pass": False}
            if isinstance(e, InvalidInstance):
                rec["assumption"] = e.assumption
            out.write(dumps(rec) + "\n")
            return 2
        out.write(dumps({"record": "header", "suite": args.command, "fingerprint": fp, "seed": cfg.seed, "versions": _versions()}) + "\n")
        try:
            recs = run_suite(args.command, args, cfg, inst)
        except InvalidInstance as e:
            out.write(dumps({"record": "error", "suite": args.command, "assumption": e.assumption, "detail": str(e), "pass": False}) + "\n")
            return 2
        except ShimliftError as e:
            recs = [{"check": args.command, "error": type(e).__name__, "detail": str(e), "pass": False}]
        for r in recs:
            out.write(dumps(r) + "\n")
        ok = all(r["pass"] for r in recs)
        summary = {"record": "summary", "suite": args.command, "checks": len(recs), "failed": sum(1 for r in recs if not r["pass"]), "pass": ok}
        if args.timing:
            summary["wall_time"] = round(time.perf_counter() - t0, 3)
        out.write(dumps(summary) + "\n")
        return 0 if ok else 1
    finally:
        if out is not sys.stdout:
            out.close()


if __name__ == "__main__":
    sys.exit(main())
