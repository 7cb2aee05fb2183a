"""Command-line front end: verify, psmap and unitary reports as JSON."""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, fields
from typing import List, Optional, Tuple

import click

from .bcvw import check_relations, full_presentation, printed_constants, standard_assignment
from .exactlin import GaussRat
from .hermforms import nonunitary_test
from .liealg import GroupSpec, SpecInvalid, build_algebra
from .psmodel import (DimensionMismatch, IntertwinerFails, PsSpec, analyse_model, build_generators,
                      cyclic_formula_check, discrepancy_rows, hecke_isomorphism_check, hecke_oracle)

SCHEMA = 1
SUITES = ("relations", "psmap", "unitary", "all")


class ConfigError(ValueError):
    pass


# ---------------------------------------------------------------- config

@dataclass
class RunConfig:
    command: str
    group: str
    k: Optional[int] = None
    delta: Optional[str] = None
    nu: Optional[str] = None
    side: str = "both"
    out: Optional[str] = None
    suite: str = "all"
    grid: Optional[str] = None

    def to_text(self) -> str:
        lines = []
        for f in fields(self):
            v = getattr(self, f.name)
            if v is not None:
                lines.append(f"{f.name}: {v}")
        return "\n".join(lines)

    @staticmethod
    def parse(text: str) -> "RunConfig":
        vals = {}
        names = {f.name for f in fields(RunConfig)}
        for line in text.strip().splitlines():
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            if ":" not in line:
                raise ConfigError(f"bad config line {line!r}")
            key, value = (x.strip() for x in line.split(":", 1))
            if key not in names:
                raise ConfigError(f"unknown key {key!r}")
            vals[key] = int(value) if key == "k" else value
        if "command" not in vals or "group" not in vals:
            raise ConfigError("config needs command and group")
        return RunConfig(**vals)

    def spec(self) -> GroupSpec:
        try:
            return GroupSpec.parse(self.group)
        except SpecInvalid as exc:
            raise ConfigError(str(exc)) from exc

    def delta_pair(self) -> Tuple[str, int]:
        """(sigma, deltaK) from --delta ("1", "triv:1", "det:1") or --k."""
        if self.delta is None:
            if self.k is None:
                raise ConfigError("need --delta or --k")
            return "triv", self.k
        text = self.delta.strip()
        sigma = "triv"
        if ":" in text:
            sigma, text = (x.strip() for x in text.split(":", 1))
            if sigma not in ("triv", "det"):
                raise ConfigError(f"bad delta tag {sigma!r}")
        try:
            return sigma, int(text)
        except ValueError as exc:
            raise ConfigError(f"bad delta {self.delta!r}") from exc

    def nu_vector(self, n: int) -> Tuple[GaussRat, ...]:
        if self.nu is None:
            return default_nu(n)
        return parse_nu(self.nu, n)

    def sides(self) -> List[str]:
        if self.side == "both":
            return ["mu", "mubar"]
        if self.side in ("mu", "mubar"):
            return [self.side]
        raise ConfigError(f"bad side {self.side!r}")


def parse_nu(text: str, n: int) -> Tuple[GaussRat, ...]:
    try:
        vals = tuple(GaussRat.parse(x) for x in text.split(",") if x.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad nu {text!r}") from exc
    if len(vals) != n:
        raise ConfigError(f"nu needs {n} entries, got {len(vals)}")
    return vals


def default_nu(n: int) -> Tuple[GaussRat, ...]:
    """A fixed generic parameter used when none is given."""
    base = ["3/2", "-1", "1/3+i", "2/5", "-7/4", "5/3"]
    return tuple(GaussRat.parse(x) for x in base[:n])


def parse_config_blocks(text: str) -> List[RunConfig]:
    """One case per blank-line separated block."""
    blocks = [b for b in text.split("\n\n") if b.strip()]
    return [RunConfig.parse(b) for b in blocks]


# ---------------------------------------------------------------- reports

def _s(x) -> Optional[str]:
    return None if x is None else str(x)


def relations_report(cfg: RunConfig) -> Tuple[dict, bool]:
    spec = cfg.spec()
    legs = cfg.k if cfg.k is not None else 2
    if not 0 <= legs <= 6:
        raise ConfigError("k must lie in 0..6")
    data = build_algebra(spec)
    a = standard_assignment(data, legs)
    rep = check_relations(full_presentation(legs), a)
    printed = printed_constants(spec)
    disc = []
    for key, val in sorted(printed.items()):
        got = rep.derived.get(key)
        if got is not None:
            disc.append({"quantity": key, "printed": str(val), "derived": str(got), "matches": got == val,
                         "abs_matches": got == val or got == -val})
    report = {
        "case": {"space": "tensor", "group": str(spec), "k": legs},
        "relations": [r.to_dict() for r in rep.results],
        "derived_constants": {k: _s(v) for k, v in sorted(rep.derived.items())},
        "paper_discrepancies": disc,
        "all_passed": rep.all_passed,
    }
    return report, rep.all_passed


def model_case(spec: GroupSpec, sigma: str, deltaK: int, nu, side: str) -> Tuple[dict, bool]:
    ps = PsSpec(spec, deltaK, nu, side, sigma)
    try:
        model = build_generators(ps)
    except DimensionMismatch as exc:
        return {"spec": ps.describe(), "error": str(exc)}, False
    mr = analyse_model(model)
    out = {"spec": ps.describe(), "dim": model.dim, "rShift": _s(mr.rShift), "cHecke": _s(mr.cHecke),
           "lambda": [str(x) for x in ps.lam],
           "relations_passed": mr.relations.all_passed,
           "quotient_relations_passed": mr.quotient.all_passed if mr.quotient else True,
           "paper_discrepancies": discrepancy_rows(ps, mr.rShift, mr.cHecke)}
    ok = out["relations_passed"] and out["quotient_relations_passed"]
    try:
        P = hecke_isomorphism_check(model, hecke_oracle(model, mr.cHecke), mr.rShift)
        out["isomorphic"] = True
        out["intertwiner"] = str(P)
    except IntertwinerFails as exc:
        out["isomorphic"] = False
        out["intertwiner_error"] = str(exc)
        ok = False
    if model.k:
        out["cyclic_formula_shifted"] = all(cyclic_formula_check(model, mr.rShift, "shifted").values())
        out["cyclic_formula_display"] = all(cyclic_formula_check(model, mr.rShift, "display").values())
    return out, ok


def psmap_report(cfg: RunConfig) -> Tuple[dict, bool]:
    spec = cfg.spec()
    sigma, dk = cfg.delta_pair()
    if not 0 <= dk <= spec.rank:
        raise ConfigError(f"delta index must lie in 0..{spec.rank}")
    nu = cfg.nu_vector(spec.rank)
    sides = {}
    ok = True
    for side in cfg.sides():
        sides[side], good = model_case(spec, sigma, dk, nu, side)
        ok = ok and good
    return {"case": {"group": str(spec), "deltaK": dk, "sigma": sigma, "nu": [str(x) for x in nu]},
            "sides": sides, "all_passed": ok}, ok


def unitary_report(cfg: RunConfig) -> dict:
    spec = cfg.spec()
    sigma, dk = cfg.delta_pair()
    if cfg.grid is not None:
        points = [p for p in cfg.grid.split(";") if p.strip()]
        nus = [parse_nu(p, spec.rank) for p in points]
    else:
        nus = [cfg.nu_vector(spec.rank)]
    cases = [nonunitary_test(spec, dk, nu, sigma) for nu in nus]
    return {"case": {"group": str(spec), "deltaK": dk, "sigma": sigma}, "verdicts": cases}


def dump(report: dict) -> str:
    return json.dumps({"schema": SCHEMA, **report}, sort_keys=True, indent=2, ensure_ascii=False)


def _emit(report: dict, out: Optional[str]):
    text = dump(report)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)


# ---------------------------------------------------------------- commands

def _common(f):
    f = click.option("--group", required=True, help="sp:2n or opq:p,q")(f)
    f = click.option("--k", "k", type=int, default=None, help="tensor legs (verify) or delta index")(f)
    f = click.option("--delta", default=None, help='delta index, optionally tagged: "1", "triv:1", "det:1"')(f)
    f = click.option("--nu", default=None, help='comma separated, e.g. "3/2,-1"')(f)
    f = click.option("--side", default="both", type=click.Choice(["mu", "mubar", "both"]))(f)
    f = click.option("--out", default=None, help="write the JSON report here")(f)
    f = click.option("--suite", default="all", type=click.Choice(list(SUITES)))(f)
    return f


def _run(fn):
    try:
        return fn()
    except ConfigError as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(2)
    except ValueError as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(2)


@click.group()
def main():
    """Exact checks for VW-algebra actions on principal series models."""


@main.command()
@_common
def verify(group, k, delta, nu, side, out, suite):
    """Relation suites on V^k and, unless --suite relations, on the models."""
    cfg = RunConfig("verify", group, k, delta, nu, side, out, suite)

    def go():
        report, ok = relations_report(cfg)
        if suite in ("all", "psmap"):
            pcfg = RunConfig("psmap", group, None, delta or str(min(cfg.k if cfg.k is not None else 1, cfg.spec().rank)),
                             nu, side, out, suite)
            prep, pok = psmap_report(pcfg)
            report["models"] = prep
            ok = ok and pok
        _emit(report, out)
        return ok

    sys.exit(0 if _run(go) else 1)


@main.command()
@_common
def psmap(group, k, delta, nu, side, out, suite):
    """Build both side models and match them with Hecke principal series."""
    cfg = RunConfig("psmap", group, k, delta, nu, side, out, suite)

    def go():
        report, ok = psmap_report(cfg)
        _emit(report, out)
        return ok

    sys.exit(0 if _run(go) else 1)


@main.command()
@_common
@click.option("--grid", default=None, help='semicolon separated nu vectors, e.g. "0;i;-i"')
def unitary(group, k, delta, nu, side, out, suite, grid):
    """Non-unitarity verdicts; verdicts never change the exit code."""
    cfg = RunConfig("unitary", group, k, delta, nu, side, out, suite, grid)

    def go():
        _emit(unitary_report(cfg), out)
        return True

    _run(go)
    sys.exit(0)


@main.command("run-config")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
def run_config(path):
    """Run every case of a block-structured config file; prints one JSON list."""

    def go():
        with open(path, encoding="utf-8") as fh:
            cfgs = parse_config_blocks(fh.read())
        results, ok = [], True
        for cfg in cfgs:
            if cfg.command == "verify":
                rep, good = relations_report(cfg)
            elif cfg.command == "psmap":
                rep, good = psmap_report(cfg)
            elif cfg.command == "unitary":
                rep, good = unitary_report(cfg), True
            else:
                raise ConfigError(f"unknown command {cfg.command!r}")
            results.append({"command": cfg.command, **rep})
            ok = ok and good
        click.echo(json.dumps({"schema": SCHEMA, "cases": results}, sort_keys=True, indent=2, ensure_ascii=False))
        return ok

    sys.exit(0 if _run(go) else 1)


if __name__ == "__main__":
    main()
