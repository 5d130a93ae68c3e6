"""Acceptance criteria on the worked instance, one test per criterion.

Each test prints a single PASS/FAIL line with its worst residual and wall time.
Run with ``pytest tests/test_acceptance.py -v`` or directly as a script.
"""

import time

import numpy as np
import pytest

from shimlift import checks, worked_instance
from shimlift.cli import SECOND_KERNEL
from shimlift.thetalift import NSParams


@pytest.fixture(scope="module")
def inst():
    return worked_instance()


def _line(num, name, recs, elapsed, limit, extra=""):
    bad = [r for r in recs if not r["pass"]]
    ok = bool(recs) and not bad and elapsed <= limit
    res = [r["residual"] for r in recs if "residual" in r]
    worst = f" max_residual={max(res):.2e}" if res else ""
    return ok, f"criterion {num:>2} {'PASS' if ok else 'FAIL'} {name}: {len(recs)} checks, {len(bad)} failed,{worst} time={elapsed:.1f}s/{limit}s{extra}"


def _run(num, name, limit, fn, capsys=None, extra=None):
    t0 = time.perf_counter()
    recs = fn()
    elapsed = time.perf_counter() - t0
    ok, line = _line(num, name, recs, elapsed, limit, extra(recs) if extra else "")
    if capsys is not None:
        with capsys.disabled():
            print("\n" + line)
    else:
        print(line)
    return ok, recs, elapsed


def c1(inst):
    return checks.rho_identity(inst, 10 ** 4) + checks.rho_lemma(inst, 1000)


def c2(inst):
    return [r for r in checks.fiber(inst, [2, 4, 6, 10, 12, 14, 20, 30], 3) if "skipped" not in r]


def c3(inst):
    return checks.majorant(inst, 1000, np.random.default_rng(0))


def c4(inst):
    return checks.bessel(tol=1e-8)


def c5(inst):
    params = [NSParams(inst.d_b, abs(inst.delta)), NSParams(*SECOND_KERNEL)]
    return checks.kernel(params, 20, np.random.default_rng(0))


def c6(inst):
    rng = np.random.default_rng(0)
    zs = [complex(rng.uniform(-0.5, 0.5), rng.uniform(0.6, 1.6)) for _ in range(3)]
    return checks.analytic(inst, [1, -1, 2, -2, 3, -3], [0.5, 1.0, 2.0], zs, tol=1e-6)


def c7(inst):
    return checks.disk_integral(inst, per_sign=10)


def c8(inst):
    return checks.ddc(inst, per_side=5, rng=np.random.default_rng(0))


def c9(inst):
    return checks.constant(inst, (0.5, 1.0, 2.0)) + checks.poisson(inst)


def c10(inst):
    return checks.enumeration(100, np.random.default_rng(0))


CRITERIA = [
    (1, "rho identity and lemma", 30, c1),
    (2, "fiber counts", 120, c2),
    (3, "majorant lemma", 10, c3),
    (4, "Bessel closed forms", 30, c4),
    (5, "kernel cross-validation", 300, c5),
    (6, "analytic identity", 600, c6),
    (7, "disk integral", 120, c7),
    (8, "ddc Green equation", 60, c8),
    (9, "constant term", 60, c9),
    (10, "enumeration soundness", 60, c10),
]


def test_c1_rho(inst, capsys):
    ok, recs, _ = _run(1, "rho identity and lemma", 30, lambda: c1(inst), capsys)
    assert recs[0]["n_max"] == 10 ** 4 and len(recs) == 1001
    assert ok


def test_c2_fiber_counts(inst, capsys):
    ok, recs, _ = _run(2, "fiber counts", 120, lambda: c2(inst), capsys)
    assert len(recs) >= 10 and all(r["m"] <= 30 for r in recs)
    assert any(r["predicted"] for r in recs)
    assert ok


def test_c3_majorant(inst, capsys):
    ok, recs, _ = _run(3, "majorant lemma", 10, lambda: c3(inst), capsys)
    assert len(recs) == 1000
    assert ok


def test_c4_bessel(inst, capsys):
    ok, recs, _ = _run(4, "Bessel closed forms", 30, lambda: c4(inst), capsys)
    assert len(recs) == 300
    assert ok


def test_c5_kernel(inst, capsys):
    def extra(recs):
        return "".join(f" const({r['N']},{r['t']})={r['constant'][0]:.12f}" for r in recs if r["check"] == "calibration")

    ok, recs, _ = _run(5, "kernel cross-validation", 300, lambda: c5(inst), capsys, extra)
    pts = [r for r in recs if r["check"] == "kernel"]
    assert len({(r["N"], r["t"]) for r in pts}) == 2
    assert len(pts) >= 40
    assert ok


def test_c6_analytic_identity(inst, capsys):
    ok, recs, _ = _run(6, "analytic identity", 600, lambda: c6(inst), capsys)
    assert len(recs) == 54
    assert all(r["residual"] <= 1e-6 + r["budget"] for r in recs)
    assert ok


def test_c7_disk_integral(inst, capsys):
    ok, recs, _ = _run(7, "disk integral", 120, lambda: c7(inst), capsys)
    signs = {1 if r["ell"] > 0 else -1 for r in recs}
    assert signs == {1, -1}
    assert ok


def test_c8_ddc(inst, capsys):
    ok, recs, _ = _run(8, "ddc Green equation", 60, lambda: c8(inst), capsys)
    assert sorted(r["side"] for r in recs) == ["+"] * 5 + ["-"] * 5
    assert ok


def test_c9_constant_term(inst, capsys):
    ok, recs, _ = _run(9, "constant term", 60, lambda: c9(inst), capsys)
    assert [r["eta"] for r in recs if r["check"] == "constant_term"] == [0.5, 1.0, 2.0]
    assert all(r["residual"] <= 1e-8 for r in recs if r["check"] == "poisson")
    assert ok


def test_c10_enumeration(inst, capsys):
    ok, recs, _ = _run(10, "enumeration soundness", 60, lambda: c10(inst), capsys)
    assert len(recs) == 100
    assert ok


if __name__ == "__main__":
    I = worked_instance()
    results = [_run(n, name, limit, lambda f=f: f(I))[0] for n, name, limit, f in CRITERIA]
    raise SystemExit(0 if all(results) else 1)
