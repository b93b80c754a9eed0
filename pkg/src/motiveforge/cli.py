"""Command-line interface and randomized identity-testing harness.

Subcommands:

* ``verify-adhm``  - run the ADHM-formula identity test over a (g, r, d, p)
  grid and write a JSON report.  Exit code 0 iff every cell passes.
* ``motive``       - one moduli class, in the symbolic (hodge) realization or
  a seeded numeric (weil) one.
* ``epoly``        - the E-polynomial, from the closed extraction formulas.
* ``betti``        - the Betti numbers read off the E-polynomial.

Exit codes are a stable contract: 0 pass, 1 identity failure, 2 invalid
input, 3 internal arithmetic error.  Reports are reproducible given the same
flags and seed; only timing fields vary between reruns.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import export
from .adhm import adhm_class
from .base_rings import NotDivisible
from .curve_ring import (
    AtomEnvironment,
    h1_lambda_values,
    make_hodge_env,
    make_weil_env,
)
from .moduli_formulas import (
    InvalidSpec,
    ModuliSpec,
    NegativeBetti,
    epoly,
    motive,
    poincare,
)
from .series_engine import PoleAtOne

EXIT_PASS = 0
EXIT_IDENTITY_FAILURE = 1
EXIT_INVALID_INPUT = 2
EXIT_ARITHMETIC_ERROR = 3

_HODGE_GENUS_CUTOFF = 3
DEFAULT_TRIALS = 20


@dataclass
class VerificationReport:
    """Outcome of one identity test on one grid cell."""

    g: int
    r: int
    d: int
    p: int
    hodge_equal: Optional[bool]
    weil_trials: int
    weil_failures: int
    wall_time_ms: int
    seed: int

    @property
    def passed(self) -> bool:
        return self.weil_failures == 0 and self.hodge_equal is not False


def _trial_seed(seed: int, g: int, r: int, d: int, p: int, trial: int) -> int:
    # deterministic mixing, independent of PYTHONHASHSEED
    x = seed & 0xFFFFFFFFFFFF
    for part in (g, r, d & 0xFFFF, p, trial):
        x = (x * 1000003 + (part & 0xFFFF) + 0x9E3779B9) % (2 ** 61 - 1)
    return x


def identity_test(
    lhs: Callable[[AtomEnvironment], object],
    rhs: Callable[[AtomEnvironment], object],
    g: int,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    hodge: Optional[bool] = None,
    cell: Tuple[int, int, int, int] = (0, 0, 0, 0),
) -> VerificationReport:
    """Schwartz-Zippel style certification of a class identity.

    Evaluates both builders in ``trials`` deterministic weil environments; a
    single mismatch certifies inequality.  For g up to 3 (or when forced by
    ``hodge=True``) an exact polynomial comparison in the hodge environment
    runs as well.  Arithmetic errors from a builder are re-raised tagged
    with the failing environment's seed.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    start = time.monotonic()
    cg, cr, cd, cp = cell
    failures = 0
    for trial in range(trials):
        tseed = _trial_seed(seed, cg, cr, cd, cp, trial)
        env = make_weil_env(g, tseed)
        try:
            left = lhs(env)
            right = rhs(env)
        except (NotDivisible, PoleAtOne, ZeroDivisionError) as exc:
            raise type(exc)(f"{exc} [weil seed {tseed}]") from exc
        if left != right:
            failures += 1
    hodge_equal: Optional[bool] = None
    run_hodge = hodge if hodge is not None else g <= _HODGE_GENUS_CUTOFF
    if run_hodge:
        env = make_hodge_env(g)
        try:
            hodge_equal = lhs(env) == rhs(env)
        except (NotDivisible, PoleAtOne, ZeroDivisionError) as exc:
            raise type(exc)(f"{exc} [hodge environment, g={g}]") from exc
    elapsed_ms = int((time.monotonic() - start) * 1000)
    return VerificationReport(
        g=cg or g, r=cr, d=cd, p=cp,
        hodge_equal=hodge_equal,
        weil_trials=trials,
        weil_failures=failures,
        wall_time_ms=elapsed_ms,
        seed=seed,
    )


def _adhm_cell(args: Tuple[int, int, int, int, int, int, Optional[bool]]) -> VerificationReport:
    g, r, d, p, trials, seed, hodge = args
    spec = ModuliSpec.from_p(g, r, d, p)
    report = identity_test(
        lambda env: adhm_class(env, r, p),
        lambda env: motive(env, spec),
        g,
        trials=trials,
        seed=seed,
        hodge=hodge,
        cell=(g, r, d, p),
    )
    return report


def run_adhm_grid(
    gs: Sequence[int],
    rs: Sequence[int],
    ds: Sequence[int],
    ps: Sequence[int],
    trials: int,
    seed: int,
    hodge: Optional[bool] = None,
    threads: int = 1,
) -> Tuple[List[VerificationReport], List[Dict]]:
    """Run the ADHM identity over a grid.  Cells with gcd(r, d) != 1 are
    recorded as skipped rather than failed."""
    cells = []
    skipped = []
    for g in gs:
        for r in rs:
            for d in ds:
                for p in ps:
                    if math.gcd(r, d) != 1:
                        skipped.append({"g": g, "r": r, "d": d, "p": p,
                                        "reason": "gcd(r, d) != 1"})
                        continue
                    cells.append((g, r, d, p, trials, seed, hodge))
    if threads > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            reports = list(pool.map(_adhm_cell, cells))
    else:
        reports = [_adhm_cell(c) for c in cells]
    reports.sort(key=lambda rep: (rep.g, rep.r, rep.d, rep.p))
    return reports, skipped


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _parse_range(text: str) -> List[int]:
    """'2..4' -> [2, 3, 4]; '3' -> [3]; '1,2' -> [1, 2]."""
    out: List[int] = []
    for piece in text.split(","):
        piece = piece.strip()
        if ".." in piece:
            lo, hi = piece.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(piece))
    return out


def _spec_from_args(args) -> ModuliSpec:
    if args.dL is not None:
        spec = ModuliSpec(g=args.g, r=args.r, d=args.d, dL=args.dL)
    else:
        spec = ModuliSpec.from_p(args.g, args.r, args.d, args.p)
    return spec.validate()


def _add_spec_flags(sub) -> None:
    sub.add_argument("--g", type=int, required=True, help="genus, at least 2")
    sub.add_argument("--r", type=int, required=True, help="rank, 1..3")
    sub.add_argument("--d", type=int, default=1, help="degree, coprime to r")
    sub.add_argument("--p", type=int, default=1,
                     help="twist offset: twist degree is -(2g-2+p)")
    sub.add_argument("--dL", type=int, default=None,
                     help="twist degree directly (overrides --p)")
    sub.add_argument("--format", choices=("json", "csv", "latex"), default="json")
    sub.add_argument("--out", default=None, help="output file (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="motiveforge",
        description="Exact motivic classes and E-polynomials of twisted "
                    "moduli spaces on a curve, with randomized verification "
                    "of the ADHM formula.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    verify = subs.add_parser("verify-adhm", help="identity-test the ADHM formula on a grid")
    verify.add_argument("--g", type=_parse_range, default=[2], help="genus range, e.g. 2..3")
    verify.add_argument("--r", type=_parse_range, default=[1, 2, 3], help="rank range")
    verify.add_argument("--p", type=_parse_range, default=[1], help="twist offset range")
    verify.add_argument("--d", type=_parse_range, default=[1], help="degree list, e.g. 1,2")
    verify.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--hodge", choices=("auto", "on", "off"), default="auto",
                        help="exact symbolic comparison (auto: genus <= 3 only)")
    verify.add_argument("--threads", type=int,
                        default=int(os.environ.get("MOTIVE_FORGE_THREADS", "1")))
    verify.add_argument("--out", default=None, help="report file (default stdout)")

    motive_cmd = subs.add_parser("motive", help="motivic class of one moduli space")
    _add_spec_flags(motive_cmd)
    motive_cmd.add_argument("--realization", choices=("hodge", "weil"), default="hodge")
    motive_cmd.add_argument("--seed", type=int, default=0)

    epoly_cmd = subs.add_parser("epoly", help="E-polynomial of one moduli space")
    _add_spec_flags(epoly_cmd)

    betti_cmd = subs.add_parser("betti", help="Betti numbers of one moduli space")
    _add_spec_flags(betti_cmd)

    return parser


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_verify_adhm(args) -> int:
    hodge = {"auto": None, "on": True, "off": False}[args.hodge]
    reports, skipped = run_adhm_grid(
        args.g, args.r, args.d, args.p,
        trials=args.trials, seed=args.seed, hodge=hodge, threads=args.threads,
    )
    all_pass = all(rep.passed for rep in reports)
    payload = {
        "schema": export.SCHEMA_VERSION,
        "command": "verify-adhm",
        "seed": args.seed,
        "trials": args.trials,
        "grid": {"g": args.g, "r": args.r, "d": args.d, "p": args.p},
        "cells": [asdict(rep) for rep in reports],
        "skipped": skipped,
        "all_pass": all_pass,
    }
    _emit(export.dump_json(payload), args.out)
    if not all_pass:
        first = next(rep for rep in reports if not rep.passed)
        print(
            f"identity failure at cell g={first.g} r={first.r} d={first.d} p={first.p}",
            file=sys.stderr,
        )
        return EXIT_IDENTITY_FAILURE
    return EXIT_PASS


def _cmd_motive(args) -> int:
    spec = _spec_from_args(args)
    payload: Dict = {
        "schema": export.SCHEMA_VERSION,
        "command": "motive",
        "spec": {"g": spec.g, "r": spec.r, "d": spec.d, "dL": spec.dL, "p": spec.p},
    }
    if args.realization == "hodge":
        env = make_hodge_env(spec.g)
        value = motive(env, spec)
        if args.format == "csv":
            _emit(export.poly_to_csv(value), args.out)
        elif args.format == "latex":
            _emit(export.poly_to_latex(value) + "\n", args.out)
        else:
            payload["environment"] = {"base": "hodge", "genus": spec.g}
            payload["motive"] = export.poly_to_json(value)
            _emit(export.dump_json(payload), args.out)
        return EXIT_PASS
    env = make_weil_env(spec.g, args.seed)
    value = motive(env, spec)
    if args.format == "latex":
        lines = export.weil_env_latex(env, h1_lambda_values(env))
        lines.append(r"[\mathcal{M}] = %s" % export._frac_latex(value))
        _emit("\n".join(lines) + "\n", args.out)
    elif args.format == "csv":
        _emit("seed,value\n%d,%s\n" % (args.seed, value), args.out)
    else:
        payload["environment"] = {
            "base": "weil",
            "genus": spec.g,
            "seed": args.seed,
            "lefschetz": str(env.lefschetz),
            "betas": [str(b) for b in env.betas],
        }
        payload["motive"] = str(value)
        _emit(export.dump_json(payload), args.out)
    return EXIT_PASS


def _cmd_epoly(args) -> int:
    spec = _spec_from_args(args)
    value = epoly(spec)
    if args.format == "csv":
        _emit(export.poly_to_csv(value), args.out)
    elif args.format == "latex":
        _emit(export.poly_to_latex(value) + "\n", args.out)
    else:
        payload = {
            "schema": export.SCHEMA_VERSION,
            "command": "epoly",
            "spec": {"g": spec.g, "r": spec.r, "d": spec.d, "dL": spec.dL, "p": spec.p},
            "epoly": export.poly_to_json(value),
        }
        _emit(export.dump_json(payload), args.out)
    return EXIT_PASS


def _cmd_betti(args) -> int:
    spec = _spec_from_args(args)
    betti = poincare(epoly(spec))
    if args.format == "csv":
        _emit(export.betti_to_csv(betti), args.out)
    elif args.format == "latex":
        _emit(export.betti_to_latex(betti) + "\n", args.out)
    else:
        payload = {
            "schema": export.SCHEMA_VERSION,
            "command": "betti",
            "spec": {"g": spec.g, "r": spec.r, "d": spec.d, "dL": spec.dL, "p": spec.p},
            "betti": betti,
        }
        _emit(export.dump_json(payload), args.out)
    return EXIT_PASS


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {
        "verify-adhm": _cmd_verify_adhm,
        "motive": _cmd_motive,
        "epoly": _cmd_epoly,
        "betti": _cmd_betti,
    }[args.command]
    try:
        return handler(args)
    except InvalidSpec as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    except (NotDivisible, PoleAtOne, NegativeBetti, ZeroDivisionError) as exc:
        print(f"arithmetic error: {exc}", file=sys.stderr)
        return EXIT_ARITHMETIC_ERROR


if __name__ == "__main__":
    sys.exit(main())
