"""Command line front end: ``bhdimer <command> [options]``.

Every command writes one table as CSV (default) or JSON. Exit status is 0 on
success, 1 on bad input and 2 when a numerical check exceeds its tolerance.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import coherent as coh
from . import dynamics as dyn
from . import eigensystem as es
from .hamiltonian import build_hopping_matrix
from .oracle import dense_symmetric_eig
from .selftest import run_selftest

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2

DEFAULT_TIMES = (0.0, math.pi / 4, math.pi / 2, math.pi, 2 * math.pi)
CONFIG_KEYS = {"tail_epsilon": float, "k_max": int, "series_epsilon": float}


class UsageError(Exception):
    pass


@dataclass
class OutputRecord:
    schema_name: str
    columns: list[str]
    rows: list[list] = field(default_factory=list)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([_fmt(x) for x in row])
        return buf.getvalue()

    def to_json(self) -> str:
        objs = [dict(zip(self.columns, (_jsonable(x) for x in row))) for row in self.rows]
        return json.dumps(objs, indent=2) + "\n"


def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if x == 0.0:
            return "0"  # no negative zero
        return format(x, ".17g")
    return str(x)


def _jsonable(x):
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        return float(x) + 0.0
    return x


_COMPLEX_RE = re.compile(
    r"""^(?:
        (?P<re>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
        (?:(?P<sign>[+-])(?P<im>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?i)?
      |
        (?P<only_sign>[+-]?)(?P<only_im>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?i
    )$""",
    re.VERBOSE,
)


def parse_complex(text: str) -> complex:
    """Parse ``a``, ``bi``, ``a+bi`` or ``a-bi`` (no whitespace)."""
    m = _COMPLEX_RE.match(text)
    if m is None:
        raise UsageError(f"malformed complex literal {text!r} (expected forms like 1, 2i, 0.5-1.5i)")
    if m.group("re") is not None:
        re_part = float(m.group("re"))
        im_part = 0.0
        if m.group("sign") is not None:
            mag = float(m.group("im")) if m.group("im") else 1.0
            im_part = mag if m.group("sign") == "+" else -mag
        return complex(re_part, im_part)
    mag = float(m.group("only_im")) if m.group("only_im") else 1.0
    return complex(0.0, -mag if m.group("only_sign") == "-" else mag)


def parse_times(text: str) -> list[float]:
    try:
        times = [float(tok) for tok in text.split(",")]
    except ValueError:
        raise UsageError(f"malformed time list {text!r} (expected comma-separated reals)") from None
    if not all(math.isfinite(t) for t in times):
        raise UsageError("times must be finite")
    return times


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # values such as "-0.5i", "-1-2i" or "-0.3,1" are arguments; every option starts with "--"
        self._negative_number_matcher = re.compile(r"^-[\d.i]")

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--output", type=Path, default=None, help="write here instead of stdout")
    common.add_argument("--config", type=Path, default=None, help="JSON file presetting tail_epsilon, k_max, series_epsilon")
    common.add_argument("--tail-epsilon", type=float, default=None)
    common.add_argument("--k-max", type=int, default=None, help="truncation cap on particle number")

    amps = argparse.ArgumentParser(add_help=False)
    amps.add_argument("--w", default="0", help="complex amplitude of the c mode, e.g. 1+0.5i")
    amps.add_argument("--z", default="0", help="complex amplitude of the d mode")

    parser = _Parser(prog="bhdimer", description="Two-site Bose-Hubbard hopping: spectra, coherent states, cat-state dynamics.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("spectrum", parents=[common], help="closed-form vs oracle eigenvalues of one block")
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("eigvec", parents=[common], help="normalized closed-form eigenvector")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)

    p = sub.add_parser("coherent", parents=[common, amps], help="truncated coherent state amplitudes")
    p.add_argument("--convention", choices=("cd", "a23"), default="cd")

    p = sub.add_parser("energy-dist", parents=[common, amps], help="energy measurement distribution of a coherent state")
    p.add_argument("--alpha-min", type=int, default=None)
    p.add_argument("--alpha-max", type=int, default=None)

    p = sub.add_parser("evolve", parents=[common, amps], help="evolve a coherent state under H or H^2")
    p.add_argument("--t", type=float, default=None)
    p.add_argument("--times", default=None)
    p.add_argument("--generator", choices=("h2", "h"), default="h2")

    p = sub.add_parser("cat-check", parents=[common, amps], help="periodicity, sign flip and cat identities")
    p.add_argument("--times", default=None)

    p = sub.add_parser("selftest", parents=[common], help="run the invariant suite")
    p.add_argument("--quick", action="store_true", help="blocks up to k=8 only")
    p.add_argument("--inject-error", type=float, default=0.0, metavar="EPS",
                   help="scale the hopping amplitude by 1+EPS (negative control)")
    return parser


def _settings(args) -> dict:
    settings = {"tail_epsilon": 1e-12, "k_max": 512, "series_epsilon": 1e-17}
    if args.config is not None:
        try:
            cfg = json.loads(args.config.read_text())
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(cfg, dict):
            raise UsageError("config must be a JSON object")
        unknown = set(cfg) - set(CONFIG_KEYS)
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
        for key, typ in CONFIG_KEYS.items():
            if key in cfg:
                settings[key] = typ(cfg[key])
    if args.tail_epsilon is not None:
        settings["tail_epsilon"] = args.tail_epsilon
    if args.k_max is not None:
        settings["k_max"] = args.k_max
    return settings


def _policy(settings: dict) -> coh.TruncationPolicy:
    try:
        return coh.TruncationPolicy(settings["tail_epsilon"], settings["k_max"])
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _params(args, convention=coh.Convention.CD) -> coh.CoherentParams:
    return coh.CoherentParams(parse_complex(args.w), parse_complex(args.z), convention)


def cmd_spectrum(k: int) -> OutputRecord:
    if k < 0:
        raise UsageError("--k must be nonnegative")
    oracle = dense_symmetric_eig(build_hopping_matrix(k).dense()).eigenvalues
    rec = OutputRecord("spectrum", ["k", "m", "eigenvalue", "oracle_eigenvalue", "residual"])
    for m in range(k + 1):
        lam = es.eigenvalue(k, m)
        rec.rows.append([k, m, lam, float(oracle[m]), abs(float(oracle[m]) - lam)])
    return rec


def cmd_eigvec(k: int, m: int) -> OutputRecord:
    if k < 0 or not 0 <= m <= k:
        raise UsageError("need 0 <= m <= k")
    v = es.eigenvector_normalized(k, m)
    raw_norm_sq = math.factorial(m) * math.factorial(k - m)
    rec = OutputRecord("eigvec", ["k", "m", "eigenvalue", "raw_norm_sq", "alpha", "re_amp", "im_amp"])
    for alpha, a in enumerate(v.amps):
        rec.rows.append([k, m, es.eigenvalue(k, m), raw_norm_sq, alpha, a.real, a.imag])
    return rec


def _state_rows(rec: OutputRecord, state, prefix=()) -> None:
    for k, block in state.blocks.items():
        for alpha, a in enumerate(block.amps):
            rec.rows.append([*prefix, k, alpha, a.real, a.imag])


def cmd_coherent(p: coh.CoherentParams, trunc: coh.TruncationPolicy) -> OutputRecord:
    rec = OutputRecord("coherent", ["k", "alpha", "re_amp", "im_amp"])
    _state_rows(rec, coh.coherent_state(p, trunc))
    return rec


def cmd_energy_dist(p, alpha_min, alpha_max, trunc, series_epsilon=1e-17) -> OutputRecord:
    lo, hi = coh.default_alpha_window(p)
    lo = lo if alpha_min is None else alpha_min
    hi = hi if alpha_max is None else alpha_max
    if lo > hi:
        raise UsageError("--alpha-min must not exceed --alpha-max")
    closed = coh.energy_distribution_closed(p, lo, hi, series_epsilon)
    numeric = coh.energy_distribution_numeric(coh.coherent_state(p, trunc))
    rec = OutputRecord("energy_dist", ["alpha", "p_closed", "p_numeric", "abs_diff"])
    pc, pn = [], []
    for alpha in range(lo, hi + 1):
        pc.append(closed[alpha])
        pn.append(numeric[alpha])
        rec.rows.append([alpha, pc[-1], pn[-1], abs(pc[-1] - pn[-1])])
    tc, tn = math.fsum(pc), math.fsum(pn)
    rec.rows.append(["total", tc, tn, abs(tc - tn)])
    return rec


def cmd_evolve(p, times, generator, trunc) -> OutputRecord:
    cs = coh.coherent_state(p, trunc)
    step = dyn.evolve_h2 if generator == "h2" else dyn.evolve_h
    rec = OutputRecord("evolve", ["t", "k", "alpha", "re_amp", "im_amp"])
    for t in times:
        _state_rows(rec, step(cs, t), prefix=(float(t),))
    return rec


def cmd_cat_check(p, times, trunc) -> OutputRecord:
    rec = OutputRecord("cat_check", ["t", "fidelity_cat", "fidelity_period", "fidelity_signflip", "tail_mass"])
    for r in dyn.cat_check(p, times, trunc):
        rec.rows.append([r.time, r.fidelity_cat, r.fidelity_period, r.fidelity_signflip, r.tail_mass])
    return rec


def cmd_selftest(quick: bool = False, inject_error: float = 0.0) -> tuple[OutputRecord, int]:
    results = run_selftest(k_max=8 if quick else 20, hopping_scale=1.0 + inject_error)
    rec = OutputRecord("selftest", ["check", "measured", "tolerance", "status"])
    for r in results:
        rec.rows.append([r.name, r.measured, r.tolerance, "pass" if r.passed else "FAIL"])
    return rec, EXIT_OK if all(r.passed for r in results) else EXIT_NUMERIC


def _dispatch(args) -> tuple[OutputRecord, int]:
    settings = _settings(args)
    if args.command == "spectrum":
        return cmd_spectrum(args.k), EXIT_OK
    if args.command == "eigvec":
        return cmd_eigvec(args.k, args.m), EXIT_OK
    if args.command == "selftest":
        return cmd_selftest(args.quick, args.inject_error)
    trunc = _policy(settings)
    if args.command == "coherent":
        conv = coh.Convention.CD if args.convention == "cd" else coh.Convention.A23
        return cmd_coherent(_params(args, conv), trunc), EXIT_OK
    if args.command == "energy-dist":
        return cmd_energy_dist(_params(args), args.alpha_min, args.alpha_max, trunc, settings["series_epsilon"]), EXIT_OK
    if args.command == "evolve":
        if args.t is not None and args.times is not None:
            raise UsageError("give --t or --times, not both")
        if args.t is not None:
            times = [args.t]
        elif args.times is not None:
            times = parse_times(args.times)
        else:
            times = list(DEFAULT_TIMES)
        return cmd_evolve(_params(args), times, args.generator, trunc), EXIT_OK
    if args.command == "cat-check":
        times = parse_times(args.times) if args.times is not None else list(DEFAULT_TIMES)
        return cmd_cat_check(_params(args), times, trunc), EXIT_OK
    raise UsageError(f"unknown command {args.command}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        record, status = _dispatch(args)
    except (UsageError, coh.TruncationFailure) as exc:
        print(f"bhdimer: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = record.to_json() if args.format == "json" else record.to_csv()
    if args.output is None:
        sys.stdout.write(text)
    else:
        args.output.write_text(text, encoding="utf-8", newline="\n")
    return status


if __name__ == "__main__":
    sys.exit(main())
