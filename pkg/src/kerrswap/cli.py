"""``kerrswap`` command line: evolve, theta-scan, conditions, verify, figures.

Exit codes: 0 success, 2 usage or config error, 3 precondition violation,
4 verification failure.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__
from .conditions import (
    Method,
    closed_form_applicable,
    closed_form_times,
    find_maximal_times_numeric,
    maximality_residual,
    theta_scan,
)
from .config import (
    ConfigError,
    RunConfig,
    build_config,
    fmt_float,
    read_config_file,
    render_csv,
    write_atomic,
)
from .errors import NoMaximaFound, PreconditionDissipative
from .figures import FIGURE_IDS, PRESETS, Panel
from .evolution import normalized_amplitudes
from .swap import bsm_project, swap_outcome
from .verify import run_suites

EXIT_OK, EXIT_USAGE, EXIT_PRECONDITION, EXIT_VERIFY = 0, 2, 3, 4

EVOLVE_COLUMNS = ("gt", "concurrence", "P1", "P2", "Theta", "absA1", "absA2", "absA3", "absA4", "degenerate")
THETA_COLUMNS = ("theta", "Theta", "concurrence")
CONDITION_COLUMNS = ("n", "T_n", "method", "residual", "concurrence")
DEFAULT_THETA_SAMPLES = 361
DEFAULT_N_MAX = 5

_FLAG_KEYS = {
    "delta": "delta", "chi": "chi", "kappa": "kappa", "gamma": "gamma",
    "theta": "theta", "phi": "phi", "t_max": "t_max", "samples": "samples",
    "out": "out", "seed": "seed", "draws": "draws", "n": "n",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common(parser):
    parser.add_argument("--config", metavar="PATH", help="key = value file; flags override it")
    parser.add_argument("--delta", metavar="R", help="detuning delta/g")
    parser.add_argument("--chi", metavar="R", help="Kerr coefficient chi/g")
    parser.add_argument("--kappa", metavar="R", help="cavity loss kappa/g")
    parser.add_argument("--gamma", metavar="R", help="atomic decay gamma/g")
    parser.add_argument("--theta", metavar="EXPR", help="amplitude angle, e.g. pi/4 or '1/3 pi'")
    parser.add_argument("--phi", metavar="EXPR", help="relative phase, e.g. 3pi/2")
    parser.add_argument("--t-max", dest="t_max", metavar="R", help="largest scaled time gt")
    parser.add_argument("--samples", metavar="N", help="grid points")
    parser.add_argument("--out", metavar="PATH", help="output file (directory for figures)")
    parser.add_argument("--seed", metavar="N")
    parser.add_argument("--draws", metavar="N")
    parser.add_argument("--n", metavar="N", help="period index (theta-scan) or largest n (conditions)")


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kerrswap", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"kerrswap {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    _common(sub.add_parser("evolve", help="concurrence, occupations and phase vs gt"))
    scan = sub.add_parser("theta-scan", help="Bell phase vs theta at a maximal time")
    _common(scan)
    scan.add_argument("--unwrap", action="store_true", help="unwrap Theta along theta")
    _common(sub.add_parser("conditions", help="times of maximal entanglement"))
    ver = sub.add_parser("verify", help="run the oracle and invariant suites")
    _common(ver)
    ver.add_argument("--suite", action="append", help="run only this suite (repeatable)")
    ver.add_argument("--oracle-tol", type=float, default=None, help="comparison tolerance of the oracle suite")
    fig = sub.add_parser("figures", help="write CSV data for a figure panel or 'all'")
    _common(fig)
    fig.add_argument("figure_id")
    return parser


def load_config(args) -> RunConfig:
    entries = {}
    if args.config:
        try:
            entries.update(read_config_file(args.config))
        except OSError as exc:
            raise ConfigError(f"cannot read config file: {exc}") from None
    for attr, key in _FLAG_KEYS.items():
        value = getattr(args, attr, None)
        if value is not None:
            entries[key] = (value, None)
    return build_config(entries)


def _header(cfg: RunConfig, command: str, extra=()) -> list:
    return [f"kerrswap {__version__} {command}", *cfg.metadata(), *extra]


def _emit(text: str, out):
    if out:
        write_atomic(out, text)
    else:
        sys.stdout.write(text)


def evolve_csv(cfg: RunConfig, command: str = "evolve", extra=()) -> str:
    samples = cfg.samples or 3000
    grid = np.linspace(0.0, cfg.t_max, samples)
    s1, s2 = normalized_amplitudes(cfg.params, cfg.init, grid)
    o = bsm_project(s1, s2)
    moduli = np.abs([s1.a_e1, s1.a_g2, s2.a_e1, s2.a_g2])
    rows = [
        (t, o.concurrence[j], o.p1[j], o.p2[j], o.theta_phase[j], *moduli[:, j], str(int(o.degenerate[j])))
        for j, t in enumerate(grid)
    ]
    meta = _header(cfg, command, (f"t_max={fmt_float(cfg.t_max)} samples={samples}", *extra))
    return render_csv(EVOLVE_COLUMNS, rows, meta)


def cmd_evolve(cfg: RunConfig) -> int:
    _emit(evolve_csv(cfg), cfg.out)
    return EXIT_OK


def theta_scan_csv(cfg: RunConfig, unwrap: bool = False, label=None, extra=()) -> tuple[list, list]:
    n = cfg.n or 0
    samples = cfg.samples or DEFAULT_THETA_SAMPLES
    scan = theta_scan(cfg.params, cfg.init.phi, n=n, samples=samples)
    phase = scan.phase
    if unwrap:
        phase = phase.copy()
        ok = np.isfinite(phase)
        phase[ok] = np.unwrap(phase[ok])
    rows = [((label,) if label else ()) + (th, ph, c) for th, ph, c in zip(scan.theta, phase, scan.concurrence)]
    note = "T_n from the closed form" if scan.method is Method.CLOSED_FORM else (
        "closed form inapplicable; closest approach of the maximality equation")
    meta = [f"n={n} t={fmt_float(scan.time)} method={scan.method.value} ({note})"]
    return rows, meta


def cmd_theta_scan(cfg: RunConfig, unwrap: bool = False) -> int:
    if not cfg.params.ideal:
        raise PreconditionDissipative("theta-scan requires kappa == gamma")
    rows, meta = theta_scan_csv(cfg, unwrap)
    text = render_csv(THETA_COLUMNS, rows, _header(cfg, "theta-scan", meta))
    _emit(text, cfg.out)
    return EXIT_OK


def conditions_csv(cfg: RunConfig) -> str:
    p, init = cfg.params, cfg.init
    n_max = DEFAULT_N_MAX if cfg.n is None else cfg.n
    meta = _header(cfg, "conditions", [f"n_max={n_max} t_max={fmt_float(cfg.t_max)}"])
    if init.excited_free:
        rows = [("all", "all t > 0", Method.CLOSED_FORM.value, "nan", "1")]
        return render_csv(CONDITION_COLUMNS, rows, meta)
    if p.ideal and closed_form_applicable(p):
        times = closed_form_times(p, n_max)
        residual = np.abs(maximality_residual(p, times))
        conc = swap_outcome(p, init, times).concurrence
        rows = [(str(n), t, Method.CLOSED_FORM.value, r, c) for n, (t, r, c) in enumerate(zip(times, residual, conc))]
        return render_csv(CONDITION_COLUMNS, rows, meta)
    reason = ("kappa != gamma" if not p.ideal else "8 g^2 < (delta - 2 chi)^2")
    warning = f"warning: closed form inapplicable ({reason}); numeric root finding on (0, {fmt_float(cfg.t_max)}]"
    print(warning, file=sys.stderr)
    meta.append(warning)
    try:
        report = find_maximal_times_numeric(p, init, cfg.t_max)
    except NoMaximaFound as exc:
        meta.append(f"warning: {exc}")
        return render_csv(CONDITION_COLUMNS, [], meta)
    times = report.times[: n_max + 1]
    conc = swap_outcome(p, init, times).concurrence
    rows = [(str(n), t, Method.ROOT_FIND.value, r, c)
            for n, (t, r, c) in enumerate(zip(times, report.residuals, conc))]
    return render_csv(CONDITION_COLUMNS, rows, meta)


def cmd_conditions(cfg: RunConfig) -> int:
    _emit(conditions_csv(cfg), cfg.out)
    return EXIT_OK


def cmd_verify(cfg: RunConfig, suites=None, oracle_tol=None) -> int:
    options = {} if oracle_tol is None else {"tol": oracle_tol}
    results = run_suites(seed=cfg.seed, draws=cfg.draws, names=suites, **options)
    report = {
        "version": __version__,
        "seed": cfg.seed,
        "draws": cfg.draws,
        "passed": all(r.passed for r in results),
        "suites": [r.as_dict() for r in results],
    }
    _emit(json.dumps(report, indent=2, sort_keys=True, default=float) + "\n", cfg.out)
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'} {r.suite} max_error={r.max_error:.3e} tol={r.tolerance:.0e}",
              file=sys.stderr)
    return EXIT_OK if report["passed"] else EXIT_VERIFY


def figure_csv(figure_id: str, cfg: RunConfig) -> str:
    preset = PRESETS[figure_id]
    caption = [f"figure={figure_id}", f"caption: {preset.caption}"]
    if isinstance(preset, Panel):
        panel_cfg = RunConfig(
            params=preset.params, init=preset.init, t_max=cfg.t_max, samples=cfg.samples,
            theta_text=preset.theta_text, phi_text=preset.phi_text,
        )
        return evolve_csv(panel_cfg, "figures", caption)
    rows, meta = [], [*caption]
    for label, params in preset.curves:
        sub = RunConfig(params=params, samples=cfg.samples, n=cfg.n, phi_text=preset.phi_text)
        sub.init = type(sub.init)(0.0, preset.phi)
        curve_rows, curve_meta = theta_scan_csv(sub, label=label)
        rows.extend(curve_rows)
        meta.append(f"curve={label} " + " ".join(RunConfig(params=params).metadata()[:1]) + " " + curve_meta[0])
    head = [f"kerrswap {__version__} figures", f"phi={preset.phi_text} ({fmt_float(preset.phi)})", *meta]
    return render_csv(("curve",) + THETA_COLUMNS, rows, head)


def cmd_figures(figure_id: str, cfg: RunConfig) -> int:
    if figure_id != "all" and figure_id not in PRESETS:
        print(f"unknown figure id {figure_id!r}; valid: all, {', '.join(FIGURE_IDS)}", file=sys.stderr)
        return EXIT_USAGE
    out_dir = cfg.out or "figures"
    ids = FIGURE_IDS if figure_id == "all" else (figure_id,)
    for fid in ids:
        path = os.path.join(out_dir, f"{fid}.csv")
        write_atomic(path, figure_csv(fid, cfg))
        print(path)
    return EXIT_OK


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        cfg = load_config(args)
        if args.command == "evolve":
            return cmd_evolve(cfg)
        if args.command == "theta-scan":
            return cmd_theta_scan(cfg, args.unwrap)
        if args.command == "conditions":
            return cmd_conditions(cfg)
        if args.command == "verify":
            return cmd_verify(cfg, args.suite, args.oracle_tol)
        return cmd_figures(args.figure_id, cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PreconditionDissipative as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
