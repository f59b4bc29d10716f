"""Command-line frontend: sequence CSVs, per-spec verification, full report.

Exit codes: 0 all requested checks passed (or pure data command succeeded),
1 at least one verdict failed, 2 invalid configuration.  File outputs are
written atomically (temp file + rename).  Identical configurations produce
byte-identical output: floats are printed with 17 significant digits in CSV
and shortest round-trip form in JSON, orderings are fixed, and the report's
per-law "seconds" field is a deterministic 0.0 placeholder (measured wall
times go to stderr instead, so files stay reproducible).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
import tempfile
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import __version__, asymptotics, families, oracle, sobolev_eigen
from .asymptotics import TOL_EXACT, TOL_FLOAT, VerificationVerdict
from .errors import SobeigError
from .families import FamilySpec
from .sobolev_eigen import SobolevSpec

COMMANDS = ("eval", "kernel", "alpha", "eigen", "verify", "report")
SEQUENCE_COMMANDS = ("eval", "kernel", "alpha", "eigen")

CSV_HEADER = "n,lambda,alpha,lambda_tilde,ratio,predicted_constant,predicted_exponent"

# default full-index range for verification; symmetric specs get a branch of
# this length (full range 2*nmax + j) so both routings certify equally long
# subsequences
VERIFY_NMAX = 100_000

ORACLE_BOUNDS = {
    "orthonormality": 1e-10,
    "moment_exactness": 1e-12,
    "shift_identity": 1e-9,
    "exact_alpha": 1e-10,
}

REPORT_FAMILIES = (
    families.jacobi(0.0, 0.0),
    families.jacobi(0.5, -0.5),
    families.jacobi(1.5, 0.5),
    families.laguerre(0.0),
    families.laguerre(0.5),
    families.laguerre(1.5),
    families.hermite(),
    families.gegenbauer(0.0),
    families.gegenbauer(0.25),
)


class ConfigError(SobeigError):
    pass


@dataclass
class RunConfig:
    command: str
    family: Optional[str] = None
    alpha: Optional[float] = None
    beta: Optional[float] = None
    c: Optional[float] = None
    j: int = 0
    mass: float = 1.0
    nmax: Optional[int] = None
    tol: Optional[float] = None
    schedule_base: Optional[int] = None
    output: Optional[str] = None
    out: Optional[str] = None


_CONFIG_KEYS = (
    "family", "alpha", "beta", "c", "j", "mass", "nmax", "tol",
    "schedule_base", "output", "out",
)

_DEFAULT_C = {
    families.JACOBI: 1.0,
    families.LAGUERRE: 0.0,
    families.HERMITE: 0.0,
    families.GEGENBAUER: 0.0,
}


def _build_family(cfg: RunConfig) -> FamilySpec:
    kind = cfg.family
    if kind is None:
        raise ConfigError("--family is required for this command")
    if kind == families.HERMITE:
        if cfg.alpha is not None or cfg.beta is not None:
            raise ConfigError("hermite takes no --alpha/--beta")
        return families.hermite()
    if cfg.alpha is None:
        raise ConfigError(f"--alpha is required for {kind}")
    if kind == families.JACOBI:
        if cfg.beta is None:
            raise ConfigError("--beta is required for jacobi")
        return families.jacobi(cfg.alpha, cfg.beta)
    if cfg.beta is not None:
        raise ConfigError(f"{kind} takes no --beta")
    if kind == families.LAGUERRE:
        return families.laguerre(cfg.alpha)
    return families.gegenbauer(cfg.alpha)


def _build_spec(cfg: RunConfig) -> SobolevSpec:
    fam = _build_family(cfg)
    c = cfg.c if cfg.c is not None else _DEFAULT_C[fam.kind]
    spec = SobolevSpec(fam, float(c), cfg.j, cfg.mass)
    sobolev_eigen.validate_sobolev(spec)
    return spec


def parse_config(argv: list[str]) -> RunConfig:
    """Parse argv (and an optional JSON config file; flags win)."""
    parser = argparse.ArgumentParser(prog="sobeig", add_help=True, exit_on_error=False)
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--family", choices=families.KINDS)
    parser.add_argument("--alpha", type=float)
    parser.add_argument("--beta", type=float)
    parser.add_argument("--c", type=float)
    parser.add_argument("--j", type=int)
    parser.add_argument("--mass", type=float)
    parser.add_argument("--nmax", type=int)
    parser.add_argument("--tol", type=float)
    parser.add_argument("--schedule-base", dest="schedule_base", type=int)
    parser.add_argument("--output", choices=("csv", "json"))
    parser.add_argument("--out", type=str)
    parser.add_argument("--config", type=str)
    try:
        ns = parser.parse_args(argv)
    except (argparse.ArgumentError, SystemExit) as exc:
        raise ConfigError(f"invalid arguments: {exc}") from None

    cfg = RunConfig(command=ns.command)
    if ns.config is not None:
        try:
            with open(ns.config, "r", encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config file: {exc}") from None
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a JSON object")
        for key, value in data.items():
            if key not in _CONFIG_KEYS:
                raise ConfigError(f"unknown config key: {key}")
            setattr(cfg, key, value)
    for key in _CONFIG_KEYS:
        flag_value = getattr(ns, key)
        if flag_value is not None:
            setattr(cfg, key, flag_value)

    _validate_config(cfg)
    return cfg


def _validate_config(cfg: RunConfig) -> None:
    if cfg.j < 0:
        raise ConfigError("j must be >= 0")
    if not cfg.mass > 0:
        raise ConfigError("mass must be > 0")
    if cfg.tol is not None and not cfg.tol > 0:
        raise ConfigError("tol must be > 0")
    if cfg.schedule_base is not None and cfg.schedule_base < 2:
        raise ConfigError("schedule-base must be >= 2")
    if cfg.command in SEQUENCE_COMMANDS:
        if cfg.output not in (None, "csv"):
            raise ConfigError(f"{cfg.command} emits csv, not {cfg.output}")
        cfg.output = "csv"
        if cfg.nmax is None:
            cfg.nmax = 1000
        if cfg.nmax < 1:
            raise ConfigError("nmax must be >= 1")
    else:
        if cfg.output not in (None, "json"):
            raise ConfigError(f"{cfg.command} emits json, not {cfg.output}")
        cfg.output = "json"
        if cfg.nmax is None:
            cfg.nmax = VERIFY_NMAX
        if cfg.command == "verify" and cfg.nmax < 64 * (cfg.j + 1):
            raise ConfigError(f"verify needs nmax >= 64*(j+1) = {64 * (cfg.j + 1)}")
    if cfg.command != "report":
        _build_spec(cfg)  # re-validate all inner-product invariants at parse time


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _atomic_write(path: str, text: str) -> None:
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".sobeig-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out is None or cfg.out == "-":
        sys.stdout.write(text)
    else:
        _atomic_write(cfg.out, text)


def _sequence_csv(cfg: RunConfig) -> str:
    spec = _build_spec(cfg)
    sym = sobolev_eigen.is_symmetric_path(spec)
    cell = asymptotics.CellData(spec, cfg.nmax)
    kind = {"eval": "derivative", "kernel": "kernel", "alpha": "alpha", "eigen": "eigen"}[
        cfg.command
    ]
    law, full_all, values_all = _command_rows(cell, kind)
    lines = [CSV_HEADER + (",full_index" if sym else "")]
    for m, full in enumerate(full_all):
        full = int(full)
        if law.index_map == "identity":
            mapped = float(full)
            row_n = full
        else:
            mapped = (full - law.offset) / 2.0
            row_n = int(mapped)
        # ratio is defined wherever the law's index map lands at >= 1
        ratio = (
            _fmt(abs(values_all[m]) / (law.constant * mapped**law.exponent))
            if mapped >= 1.0
            else ""
        )
        cols = [
            str(row_n),
            _fmt(cell.lam[full]),
            _fmt(cell.alpha[full]),
            _fmt(cell.lam_tilde[full]),
            ratio,
            _fmt(law.constant),
            _fmt(law.exponent),
        ]
        if sym:
            cols.append(str(full))
        lines.append(",".join(cols))
    return "\n".join(lines) + "\n"


def _command_rows(cell, kind):
    """Full row index set (not just the geometric schedule) for one command."""
    spec, nmax = cell.spec, cell.nmax
    sym = sobolev_eigen.is_symmetric_path(spec)
    j = spec.j
    r = j // 2
    parity = ("even" if j % 2 == 0 else "odd") if sym else None
    if kind == "derivative":
        law = asymptotics.derivative_growth_law(spec.family, spec.c, r if sym else j, parity)
        if sym:
            par = j % 2
            full = np.arange(par, nmax + 1, 2)
        else:
            full = np.arange(0, nmax + 1)
        return law, full, cell.deriv[full]
    if kind == "kernel":
        law = asymptotics.kernel_growth_law(spec.family, spec.c, r if sym else j, parity)
        if sym:
            par = j % 2
            counts = np.arange(1, ((nmax + 1) // 2 if par == 0 else nmax // 2) + 1)
            full = 2 * counts - 1 if par == 0 else 2 * counts
        else:
            full = np.arange(1, nmax + 1)
        return law, full, cell.kernel.K[full] if sym else cell.kernel.K[full - 1]
    if kind == "alpha":
        if sym:
            elaw = asymptotics.eigen_law(spec)
            law = asymptotics.AsymptoticLaw(
                "alpha", elaw.exponent, elaw.constant / spec.mass,
                elaw.index_map, elaw.offset,
            )
            full = np.arange(j, nmax + 1, 2)
        else:
            law = asymptotics.alpha_growth_law(spec)
            full = np.arange(0, nmax + 1)
        return law, full, cell.alpha[full]
    law = asymptotics.eigen_law(spec)
    full = np.arange(j, nmax + 1, 2) if sym else np.arange(0, nmax + 1)
    return law, full, cell.lam_tilde[full]


def _law_entry(v: VerificationVerdict) -> dict:
    spec = v.spec
    return {
        "kind": v.law.kind,
        "family": spec.family.label(),
        "params": {
            "alpha": spec.family.alpha,
            "beta": spec.family.beta,
            "c": spec.c,
            "j": spec.j,
            "mass": spec.mass,
            "index_map": v.law.index_map,
            "n_used": list(v.n_used),
            "raw_tail": list(v.raw_tail),
        },
        "exponent": v.law.exponent,
        "constant": v.law.constant,
        "extrapolated_ratio": v.extrapolated_ratio,
        "deviation": v.deviation,
        "tol": v.tolerance,
        "pass": v.passed,
        "breakdown": v.breakdown,
        "seconds": 0.0,
    }


def _verify_json(cfg: RunConfig) -> tuple[str, bool]:
    spec = _build_spec(cfg)
    sym = sobolev_eigen.is_symmetric_path(spec)
    kinds = ["derivative", "kernel", "alpha", "eigen"] + (
        ["eigen_untouched"] if sym else []
    )
    tol = cfg.tol if cfg.tol is not None else TOL_FLOAT
    tols = {k: tol for k in kinds}
    if cfg.tol is None and "eigen_untouched" in tols:
        tols["eigen_untouched"] = TOL_EXACT
    t0 = time.perf_counter()
    verdicts = asymptotics.verify_cell(spec, cfg.nmax, kinds, tols, cfg.schedule_base)
    print(f"sobeig: verify {spec.family.label()} j={spec.j} "
          f"took {time.perf_counter() - t0:.3f}s", file=sys.stderr)
    ok = all(v.passed for v in verdicts)
    doc = {
        "version": __version__,
        "config": _config_echo(cfg),
        "laws": [_law_entry(v) for v in verdicts],
        "pass": ok,
    }
    return json.dumps(doc, indent=2, allow_nan=False) + "\n", ok


def _config_echo(cfg: RunConfig) -> dict:
    return {
        "command": cfg.command,
        "family": cfg.family,
        "alpha": cfg.alpha,
        "beta": cfg.beta,
        "c": cfg.c,
        "j": cfg.j,
        "mass": cfg.mass,
        "nmax": cfg.nmax,
        "tol": cfg.tol,
        "schedule_base": cfg.schedule_base,
        "output": cfg.output,
        "out": cfg.out,
    }


def report_grid() -> list[tuple[SobolevSpec, int, list[str], dict]]:
    """The acceptance grid: one cell per inner-product configuration."""
    cells = []

    def tols(eigen_tol):
        return {
            "derivative": 1e-2,
            "kernel": TOL_FLOAT,
            "alpha": TOL_FLOAT,
            "eigen": eigen_tol,
            "eigen_untouched": TOL_EXACT,
        }

    for al in (0.0, 0.5, 1.5):
        for j in (0, 1, 2):
            for mass in (1.0, 5.0):
                eigen_tol = TOL_EXACT if al == 0.0 and j == 0 else TOL_FLOAT
                cells.append((
                    SobolevSpec(families.laguerre(al), 0.0, j, mass),
                    VERIFY_NMAX,
                    ["derivative", "kernel", "alpha", "eigen"],
                    tols(eigen_tol),
                ))
    for al, be in ((0.0, 0.0), (0.5, -0.5), (1.5, 0.5)):
        for j in (0, 1):
            for c in (1.0, -1.0):
                cells.append((
                    SobolevSpec(families.jacobi(al, be), c, j, 1.0),
                    VERIFY_NMAX,
                    ["derivative", "kernel", "alpha", "eigen"],
                    tols(TOL_FLOAT),
                ))
    for j in (0, 1, 2, 3):
        cells.append((
            SobolevSpec(families.hermite(), 0.0, j, 1.0),
            2 * VERIFY_NMAX + j,
            ["derivative", "kernel", "alpha", "eigen", "eigen_untouched"],
            tols(TOL_FLOAT),
        ))
    for al in (0.0, 0.25):
        for j in (0, 1):
            cells.append((
                SobolevSpec(families.gegenbauer(al), 0.0, j, 1.0),
                2 * VERIFY_NMAX + j,
                ["derivative", "kernel", "alpha", "eigen", "eigen_untouched"],
                tols(TOL_FLOAT),
            ))
    return cells


def oracle_report() -> dict:
    """Residuals of every independent check, with their bounds."""
    ortho = {}
    moments = {}
    shifts = {}
    for fam in REPORT_FAMILIES:
        ortho[fam.label()] = oracle.orthonormality_residual(fam, 50)
        moments[fam.label()] = oracle.moment_exactness(fam, 20)
        shifts[fam.label()] = oracle.shift_identity_residual(fam, 200, 4)
    signs = {}
    for fam in (families.jacobi(0.0, 0.0), families.jacobi(0.3, 0.7)):
        for c in (1.0, -1.0):
            for k in (0, 1):
                signs[f"{fam.label()},c={c:g},k={k}"] = oracle.sign_pattern_check(
                    fam, c, k, 500
                )
    exact_dev = {}
    for spec in (
        SobolevSpec(families.laguerre(0.0), 0.0, 0, 1.0),
        SobolevSpec(families.laguerre(1.0), 0.0, 1, 1.0),
        SobolevSpec(families.jacobi(0.0, 0.0), 1.0, 0, 1.0),
        SobolevSpec(families.jacobi(0.0, 0.0), 1.0, 1, 1.0),
    ):
        case = oracle.exact_alpha(spec, 2000)
        got = sobolev_eigen.alpha_sequence(spec, 2000)
        dev = 0.0
        for n, exact in enumerate(case.values):
            ex = float(exact)
            dev = max(dev, abs(got[n] - ex) / max(1.0, abs(ex)))
        exact_dev[f"{spec.family.label()},j={spec.j}"] = dev

    ok = (
        all(v < ORACLE_BOUNDS["orthonormality"] for v in ortho.values())
        and all(v < ORACLE_BOUNDS["moment_exactness"] for v in moments.values())
        and all(v < ORACLE_BOUNDS["shift_identity"] for v in shifts.values())
        and all(signs.values())
        and all(v <= ORACLE_BOUNDS["exact_alpha"] for v in exact_dev.values())
    )
    return {
        "bounds": dict(ORACLE_BOUNDS),
        "orthonormality": ortho,
        "moment_exactness": moments,
        "shift_identity": shifts,
        "sign_pattern": signs,
        "exact_alpha": exact_dev,
        "pass": ok,
    }


def _report_json(cfg: RunConfig) -> tuple[str, bool]:
    laws = []
    ok = True
    for spec, nmax, kinds, tols in report_grid():
        t0 = time.perf_counter()
        verdicts = asymptotics.verify_cell(spec, nmax, kinds, tols, cfg.schedule_base)
        print(
            f"sobeig: {spec.family.label()} c={spec.c:g} j={spec.j} "
            f"mass={spec.mass:g} took {time.perf_counter() - t0:.3f}s",
            file=sys.stderr,
        )
        for v in verdicts:
            laws.append(_law_entry(v))
            ok = ok and v.passed
    orc = oracle_report()
    ok = ok and orc["pass"]
    doc = {
        "version": __version__,
        "config": {
            "command": "report",
            "nmax_nonsymmetric": VERIFY_NMAX,
            "branch_length_symmetric": VERIFY_NMAX,
            "schedule_base": cfg.schedule_base,
        },
        "laws": laws,
        "oracle": orc,
        "pass": ok,
    }
    return json.dumps(doc, indent=2, allow_nan=False) + "\n", ok


def run_command(cfg: RunConfig) -> int:
    """Execute a parsed configuration; return the process exit code."""
    if cfg.command in SEQUENCE_COMMANDS:
        _emit(cfg, _sequence_csv(cfg))
        return 0
    if cfg.command == "verify":
        text, ok = _verify_json(cfg)
    else:
        text, ok = _report_json(cfg)
    _emit(cfg, text)
    return 0 if ok else 1


def main(argv: Optional[list[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        cfg = parse_config(argv)
        return run_command(cfg)
    except ConfigError as exc:
        print(f"sobeig: {exc}", file=sys.stderr)
        return 2
    except SobeigError as exc:
        print(f"sobeig: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
