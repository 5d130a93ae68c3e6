"""Instance configuration: flat key=value files with [section] headers."""

from __future__ import annotations

import configparser
import os
from dataclasses import dataclass, field, replace
from fractions import Fraction

ENV_PREFIX = "SHIMLIFT_"


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Tolerances:
    sum_tail: float = 1e-12
    quadrature: float = 1e-9
    identity: float = 1e-6


@dataclass(frozen=True)
class InstanceConfig:
    delta: int = -2
    algebra_a: Fraction = Fraction(-2)
    algebra_b: Fraction = Fraction(35)
    order_basis: tuple | None = None
    tol: Tolerances = field(default_factory=Tolerances)
    cutoff: float | None = None
    budget: int = 10 ** 7
    seed: int = 0

    def build(self):
        from .instance import FieldInstance

        basis = [list(r) for r in self.order_basis] if self.order_basis else None
        return FieldInstance(self.delta, self.algebra_a, self.algebra_b, basis)


def _parse_basis(text: str):
    rows = [r for r in text.split(";") if r.strip()]
    out = tuple(tuple(Fraction(x) for x in r.split()) for r in rows)
    if len(out) != 4 or any(len(r) != 4 for r in out):
        raise ConfigError("order_basis needs 4 rows of 4 rationals separated by ';'")
    return out


def load_config(path: str | None = None, text: str | None = None) -> InstanceConfig:
    cp = configparser.ConfigParser()
    try:
        if text is not None:
            cp.read_string(text)
        elif path is not None:
            with open(path) as fh:
                cp.read_file(fh)
    except (OSError, configparser.Error) as e:
        raise ConfigError(str(e)) from e
    inst = cp["instance"] if cp.has_section("instance") else {}
    tol = cp["tolerances"] if cp.has_section("tolerances") else {}
    lim = cp["limits"] if cp.has_section("limits") else {}
    run = cp["run"] if cp.has_section("run") else {}
    d = InstanceConfig()
    try:
        t = Tolerances(
            float(tol.get("sum_tail", d.tol.sum_tail)),
            float(tol.get("quadrature", d.tol.quadrature)),
            float(tol.get("identity", d.tol.identity)),
        )
        cut = lim.get("cutoff")
        return InstanceConfig(
            delta=int(inst.get("delta", d.delta)),
            algebra_a=Fraction(inst.get("algebra_a", str(d.algebra_a))),
            algebra_b=Fraction(inst.get("algebra_b", str(d.algebra_b))),
            order_basis=_parse_basis(inst["order_basis"]) if "order_basis" in inst else None,
            tol=t,
            cutoff=float(cut) if cut is not None else None,
            budget=int(lim.get("budget", d.budget)),
            seed=int(run.get("seed", d.seed)),
        )
    except (ValueError, ZeroDivisionError) as e:
        raise ConfigError(str(e)) from e


def apply_overrides(cfg: InstanceConfig, tol=None, cutoff=None, budget=None, seed=None) -> InstanceConfig:
    """Flag values win over the file. tol sets the identity tolerance."""
    if tol is not None:
        cfg = replace(cfg, tol=replace(cfg.tol, identity=float(tol)))
    if cutoff is not None:
        cfg = replace(cfg, cutoff=float(cutoff))
    if budget is not None:
        cfg = replace(cfg, budget=int(budget))
    if seed is not None:
        cfg = replace(cfg, seed=int(seed))
    return cfg


def env_default(name: str, default=None):
    return os.environ.get(ENV_PREFIX + name.upper(), default)


def to_text(cfg: InstanceConfig) -> str:
    lines = [
        "[instance]",
        f"delta = {cfg.delta}",
        f"algebra_a = {cfg.algebra_a}",
        f"algebra_b = {cfg.algebra_b}",
    ]
    if cfg.order_basis:
        lines.append("order_basis = " + "; ".join(" ".join(str(x) for x in r) for r in cfg.order_basis))
    lines += [
        "",
        "[tolerances]",
        f"sum_tail = {cfg.tol.sum_tail!r}",
        f"quadrature = {cfg.tol.quadrature!r}",
        f"identity = {cfg.tol.identity!r}",
        "",
        "[limits]",
        f"budget = {cfg.budget}",
    ]
    if cfg.cutoff is not None:
        lines.append(f"cutoff = {cfg.cutoff!r}")
    lines += ["", "[run]", f"seed = {cfg.seed}", ""]
    return "\n".join(lines)
