import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from shimlift import FieldInstance, InstanceConfig, Tolerances, load_config
from shimlift.cli import main
from shimlift.config import ConfigError, apply_overrides, to_text
from shimlift.errors import InvalidInstance


def run(tmp_path, *argv, name="out.jsonl"):
    path = tmp_path / name
    code = main(["--out", str(path), *argv])
    return code, [json.loads(l) for l in path.read_text().splitlines()], path


def test_validate_report(tmp_path):
    code, recs, _ = run(tmp_path, "validate")
    assert code == 0
    assert recs[0]["record"] == "header"
    assert recs[0]["fingerprint"] == "8e5873dd960634b9"
    assert recs[-1] == {"record": "summary", "suite": "validate", "checks": 3, "failed": 0, "pass": True}


def test_reports_are_byte_identical(tmp_path):
    _, _, a = run(tmp_path, "--seed", "3", "majorant", "--samples", "50", name="a.jsonl")
    _, _, b = run(tmp_path, "--seed", "3", "majorant", "--samples", "50", name="b.jsonl")
    assert a.read_bytes() == b.read_bytes()


def test_seed_changes_samples(tmp_path):
    _, a, _ = run(tmp_path, "--seed", "1", "enumeration", "--trials", "5", name="a.jsonl")
    _, b, _ = run(tmp_path, "--seed", "2", "enumeration", "--trials", "5", name="b.jsonl")
    assert a[1:-1] != b[1:-1]


def test_timing_flag(tmp_path):
    _, recs, _ = run(tmp_path, "--timing", "poisson")
    assert "wall_time" in recs[-1]
    _, recs, _ = run(tmp_path, "poisson")
    assert "wall_time" not in recs[-1]


def test_env_seed(tmp_path, monkeypatch):
    monkeypatch.setenv("SHIMLIFT_SEED", "11")
    _, recs, _ = run(tmp_path, "validate")
    assert recs[0]["seed"] == 11


@pytest.mark.parametrize(
    "body,assumption",
    [
        ("[instance]\ndelta = -2\nalgebra_a = -3\nalgebra_b = 11\n", "inert"),
        ("[instance]\ndelta = -3\n", "delta even"),
    ],
)
def test_assumption_violation_exits_2(tmp_path, body, assumption):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text(body)
    code, recs, _ = run(tmp_path, "--config", str(cfg), "validate")
    assert code == 2
    assert recs[0]["assumption"] == assumption
    assert recs[0]["pass"] is False


def test_malformed_config_exits_2(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("[instance]\norder_basis = 1 0 0 0; 0 1 0\n")
    code, recs, _ = run(tmp_path, "--config", str(cfg), "validate")
    assert code == 2
    assert recs[0]["error"] == "ConfigError"


def test_missing_config_exits_2(tmp_path):
    code, _, _ = run(tmp_path, "--config", str(tmp_path / "nope.cfg"), "validate")
    assert code == 2


def test_exhausted_budget_fails(tmp_path):
    code, recs, _ = run(tmp_path, "--budget", "1", "analytic", "--ell", "1", "--eta", "0.5", "--z-count", "1")
    assert code == 1
    assert recs[1]["error"] == "BudgetExceeded"
    assert recs[-1]["failed"] == 1


def test_instance_rejections():
    with pytest.raises(InvalidInstance) as e:
        FieldInstance(-2, Fraction(-3), Fraction(11))
    assert e.value.assumption == "inert"
    with pytest.raises(InvalidInstance):
        FieldInstance(-2, Fraction(1), Fraction(1))


def test_explicit_order_basis():
    rows = "1/2 0 1/2 1/2; 0 1/4 1/2 1/4; 0 0 1 0; 0 0 0 1"
    cfg = load_config(text=f"[instance]\ndelta = -2\nalgebra_a = -2\nalgebra_b = 35\norder_basis = {rows}\n")
    assert cfg.build().fingerprint() == "8e5873dd960634b9"


tols = st.builds(Tolerances, st.floats(1e-15, 1e-3), st.floats(1e-15, 1e-3), st.floats(1e-12, 1e-2))
configs = st.builds(
    InstanceConfig,
    delta=st.sampled_from([-2, -6, -10]),
    algebra_a=st.fractions(-50, 50, max_denominator=5).filter(bool),
    algebra_b=st.fractions(-50, 50, max_denominator=5).filter(bool),
    tol=tols,
    cutoff=st.none() | st.floats(1.0, 1e4),
    budget=st.integers(1, 10 ** 9),
    seed=st.integers(0, 2 ** 31),
)


@given(configs)
def test_config_text_round_trip(cfg):
    assert load_config(text=to_text(cfg)) == cfg


@given(st.integers(0, 1000), st.floats(1e-12, 1e-2))
def test_overrides_win(seed, tol):
    cfg = apply_overrides(InstanceConfig(), tol=str(tol), seed=str(seed))
    assert cfg.seed == seed and cfg.tol.identity == tol


def test_bad_values_raise_config_error():
    with pytest.raises(ConfigError):
        load_config(text="[limits]\nbudget = lots\n")
