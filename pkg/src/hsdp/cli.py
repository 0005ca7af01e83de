"""Command-line front end: ``hsdp <command> [subcommand] [flags]``.

Exit codes: 0 success, 1 property failure, 2 I/O or parse error, 3 validation error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import bounds, divergences, privacy
from .channels import apply_iterated, depolarizing
from .contraction import containment_check, eta_upper_doeblin
from .errors import BadRange, HSDPError
from .io import FormatError, channel_from_json, channel_to_json, load_json, state_from_json, state_to_json
from .sampling import random_channel, random_density

EXIT_OK, EXIT_PROPERTY, EXIT_IO, EXIT_VALIDATION = 0, 1, 2, 3
DEFAULT_SEED = 0

# (gamma-space dest, eps-space dest) pairs; canonical form is gamma.
PAIRED = (("gamma", "eps"), ("gamma_prime", "eps_prime"))


class InputError(Exception):
    """File or parse failure; maps to exit code 2."""


def _fmt(x: float) -> str:
    return f"{x:#.12g}"


def _csv_field(x) -> str:
    if isinstance(x, float) and math.isinf(x):
        return ""
    return repr(float(x)) if isinstance(x, (float, np.floating)) else str(x)


def grid(start: float, stop: float, points: int) -> list[float]:
    """``points`` evenly spaced values from ``start`` to ``stop`` inclusive."""
    if points < 2:
        raise BadRange(f"grid needs at least 2 points, got {points}")
    return [start + (stop - start) * i / (points - 1) for i in range(points)]


def write_csv(header: list[str], rows: list[list], path: str) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_csv_field(x) for x in row])
    text = buf.getvalue()
    if path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc}") from exc


# Configuration.


@dataclass
class RunConfig:
    command: str
    subcommand: str | None
    values: dict = field(default_factory=dict)

    def get(self, key, default=None):
        v = self.values.get(key)
        return default if v is None else v


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(cfg, dict):
        raise InputError(f"config {path} must hold a JSON object")
    return {k.replace("-", "_"): v for k, v in cfg.items()}


def resolve(args: argparse.Namespace) -> RunConfig:
    """Merge flags over the JSON config over defaults, then convert eps-space to gamma-space."""
    flags = {k: v for k, v in vars(args).items() if k not in ("func", "config") and v is not None}
    cfg = _load_config(getattr(args, "config", None))
    values = dict(cfg)
    for g, e in PAIRED:
        if g in flags or e in flags:
            values.pop(g, None)
            values.pop(e, None)
    values.update(flags)
    for g, e in PAIRED:
        if values.get(g) is not None and values.get(e) is not None:
            raise BadRange(f"give only one of --{g.replace('_', '-')} and --{e.replace('_', '-')}")
        if values.get(e) is not None:
            values[g] = math.exp(float(values[e]))
    if values.get("seed") is None:
        env = os.environ.get("HSDP_SEED")
        try:
            values["seed"] = int(env) if env is not None else DEFAULT_SEED
        except ValueError as exc:
            raise BadRange(f"HSDP_SEED must be an integer, got {env!r}") from exc
    return RunConfig(args.command, getattr(args, "subcommand", None), values)


def _require(cfg: RunConfig, *keys: str) -> list:
    missing = [k for k in keys if cfg.get(k) is None]
    if missing:
        raise BadRange("missing parameter(s): " + ", ".join("--" + k.replace("_", "-") for k in missing))
    return [cfg.get(k) for k in keys]


def _load_state(path: str) -> np.ndarray:
    try:
        return state_from_json(load_json(path))
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except (json.JSONDecodeError, FormatError) as exc:
        raise InputError(f"malformed state file {path}: {exc}") from exc


def _load_channel(path: str):
    try:
        return channel_from_json(load_json(path))
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except (json.JSONDecodeError, FormatError) as exc:
        raise InputError(f"malformed channel file {path}: {exc}") from exc


# div


def cmd_divergence(cfg: RunConfig) -> int:
    rho_path, sigma_path = _require(cfg, "rho", "sigma")
    rho, sigma = _load_state(rho_path), _load_state(sigma_path)
    sub = cfg.subcommand
    if sub == "egamma":
        (gamma,) = _require(cfg, "gamma")
        val, method = divergences.hs_divergence(rho, sigma, gamma), "closed_form"
    elif sub == "trace":
        val, method = divergences.trace_distance(rho, sigma), "closed_form"
    elif sub == "dmax":
        val, method = divergences.d_max(rho, sigma), "closed_form"
    elif sub == "smooth-dmax":
        (delta,) = _require(cfg, "delta")
        val, method = divergences.smooth_d_max(rho, sigma, delta), "bisection"
    else:
        gen = divergences.get_generator(cfg.get("generator", "kl"))
        val = divergences.f_divergence(rho, sigma, gen, cfg.get("quad_tol", divergences.QUAD_TOL))
        method = "quadrature"
    print(f"{_fmt(val)}\tmethod={method}")
    return EXIT_OK


# check


def cmd_check(cfg: RunConfig) -> int:
    path, gamma, delta = _require(cfg, "channel", "gamma", "delta")
    cert = containment_check(_load_channel(path), gamma, delta, cfg.get("restarts", 64), seed=cfg.get("seed"))
    print(f"verdict={cert.verdict}\treason={cert.reason}\tevidence={_fmt(cert.numeric_evidence)}")
    return EXIT_OK


# figure


def cmd_figure_compare(cfg: RunConfig) -> int:
    gamma, gp, delta = cfg.get("gamma", 6.0), cfg.get("gamma_prime", 2.5), cfg.get("delta", 0.01)
    lin = bounds.linear_sdpi(gamma, gp, delta)
    rows = []
    for t in grid(cfg.get("start", 0.0), cfg.get("stop", 1.0), cfg.get("points", 201)):
        rows.append([t, t, lin * t, bounds.nonlinear_sdpi(gamma, gp, delta, t)])
    write_csv(["t", "dpi", "linear", "nonlinear"], rows, cfg.get("output", "-"))
    return EXIT_OK


def _nonlinear_mixing(gamma: float, gp: float, delta: float, beta: float) -> float:
    if delta == 0.0:
        return bounds.mixing_time_nonlinear(gamma, gp, beta)
    if beta >= 1.0:
        return 0
    if beta <= 0.0:
        return bounds.UNBOUNDED
    return bounds.mixing_time_delta(gamma, gp, delta, beta)


def cmd_figure_mixing(cfg: RunConfig) -> int:
    gamma, gp, delta = cfg.get("gamma", 8.0), cfg.get("gamma_prime", 3.0), cfg.get("delta", 0.0)
    rows = []
    for beta in grid(cfg.get("start", 0.0), cfg.get("stop", 1.0), cfg.get("points", 101)):
        rows.append([
            beta,
            bounds.mixing_time_linear(gamma, gp, delta, beta),
            _nonlinear_mixing(gamma, gp, delta, beta),
        ])
    write_csv(["beta", "linear", "nonlinear"], rows, cfg.get("output", "-"))
    return EXIT_OK


def _tag(name: str, v: float) -> str:
    return f"{name}{v:g}"


def cmd_figure_revpinsker(cfg: RunConfig) -> int:
    tau = cfg.get("tau", 0.25)
    mode = cfg.get("mode", "epsilon-sweep")
    if mode == "lambda-sweep":
        xs = grid(cfg.get("start", 0.02), cfg.get("stop", 0.5), cfg.get("points", 50))
        fams = cfg.get("family") or [1.0, 2.0, 3.0]
        delta = cfg.get("delta", 0.01)
        tags = [_tag("eps", e) for e in fams]

        def pair(x, e):
            return privacy.re_ldp_bound(e, delta, tau, x), privacy.dasgupta_bound(e, delta, tau, x)
    elif mode == "epsilon-sweep":
        xs = grid(cfg.get("start", 0.5), cfg.get("stop", 3.0), cfg.get("points", 50))
        fams = cfg.get("family") or [0.1, 0.2, 0.3]
        lam = cfg.get("lambda_", 0.1)
        tags = [_tag("delta", d) for d in fams]

        def pair(x, d):
            return privacy.re_ldp_bound(x, d, tau, lam), privacy.dasgupta_bound(x, d, tau, lam)
    else:
        raise BadRange(f"unknown mode {mode!r}")
    header = ["x"] + [f"{side}_{tag}" for tag in tags for side in ("ours", "prior")]
    rows = []
    for x in xs:
        row = [x]
        for f in fams:
            row.extend(pair(x, float(f)))
        rows.append(row)
    write_csv(header, rows, cfg.get("output", "-"))
    return EXIT_OK


GNUPLOT_SCRIPT = """\
set datafile separator ','
set key autotitle columnhead
set terminal pngcairo size 900,600
set output 'compare.png'
set xlabel 't'
plot 'compare.csv' using 1:2 with lines, '' using 1:3 with lines, '' using 1:4 with lines
set output 'mixing.png'
set xlabel 'beta'
plot 'mixing.csv' using 1:2 with steps, '' using 1:3 with steps
set output 'revpinsker.png'
set xlabel 'x'
plot for [i=2:7] 'revpinsker.csv' using 1:i with lines
"""


def cmd_figure_script(cfg: RunConfig) -> int:
    out = cfg.get("output", "-")
    if out == "-":
        sys.stdout.write(GNUPLOT_SCRIPT)
    else:
        try:
            with open(out, "w") as fh:
                fh.write(GNUPLOT_SCRIPT)
        except OSError as exc:
            raise InputError(f"cannot write {out}: {exc}") from exc
    return EXIT_OK


# verify


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: list = field(default_factory=list)

    def record(self, ok: bool, dump: Callable[[], dict]) -> None:
        self.checks += 1
        if not ok:
            self.failures.append(dump())


def _suite_dpi(rng, trials, fault):
    res = SuiteResult("dpi")
    # The injected fault claims a contraction by 1/4 that generic channels violate.
    scale = 0.25 if fault else 1.0
    for _ in range(trials):
        d = int(rng.integers(2, 4))
        ch = random_channel(rng, d, d, int(rng.integers(1, 4)))
        rho, sigma = random_density(rng, d), random_density(rng, d)
        gamma = float(rng.uniform(1.0, 5.0))
        before = divergences.hs_divergence(rho, sigma, gamma, method="lapack")
        after = divergences.hs_divergence(ch(rho), ch(sigma), gamma, validate=False, method="lapack")
        res.record(after <= scale * before + 1e-9, lambda: {
            "gamma": gamma, "rho": state_to_json(rho), "sigma": state_to_json(sigma),
            "channel": channel_to_json(ch), "input": before, "output": after,
        })
    return res


def _certified_channel(rng, d):
    """Random channel mixed with full depolarization; delta read off the Doeblin bound."""
    q = float(rng.uniform(0.2, 0.9))
    base = random_channel(rng, d, d, int(rng.integers(1, 4)))
    kraus = np.concatenate([math.sqrt(1.0 - q) * base.kraus, math.sqrt(q) * depolarizing(d, 1.0).kraus])
    ch = type(base)(kraus)
    return ch, min(eta_upper_doeblin(ch) + 1e-6, 1.0)


def _suite_sdpi(rng, trials, fault):
    res = SuiteResult("sdpi")
    scale = 0.25 if fault else 1.0
    for _ in range(trials):
        d = int(rng.integers(2, 5))
        ch, delta = _certified_channel(rng, d)
        gamma = float(rng.uniform(1.0, 8.0))
        gp = float(rng.uniform(1.0, gamma))
        if not containment_check(ch, gamma, delta, restarts=0).is_in:
            continue
        rho, sigma = random_density(rng, d), random_density(rng, d)
        t = divergences.hs_divergence(rho, sigma, gp, method="lapack")
        out = divergences.hs_divergence(ch(rho), ch(sigma), gp, validate=False, method="lapack")
        nl = scale * bounds.nonlinear_sdpi(gamma, gp, delta, min(t, 1.0))
        lin = bounds.linear_sdpi(gamma, gp, delta) * t
        res.record(out <= nl + 1e-8 and nl <= lin + 1e-8, lambda: {
            "gamma": gamma, "gamma_prime": gp, "delta": delta,
            "rho": state_to_json(rho), "sigma": state_to_json(sigma),
            "channel": channel_to_json(ch), "output": out, "nonlinear": nl, "linear": lin,
        })
    return res


def _suite_tightness(rng, trials, fault):
    res = SuiteResult("tightness")
    pairs = ((4.0, 2.0), (6.0, 2.5), (10.0, 1.5))
    for i in range(trials):
        gamma, gp = pairs[i % len(pairs)]
        delta = 0.0 if i % 2 == 0 else float(rng.uniform(0.0, 1.0))
        lo = 0.0 if delta == 0.0 else (gp - 1.0) / (gamma - 1.0)
        t = float(rng.uniform(lo, 1.0))
        rho, sigma = bounds.states_with_divergence(t, gp)
        rep = bounds.tightness_check(gamma, gp, delta, rho, sigma)
        res.record(rep.passed, lambda: {"gamma": gamma, "gamma_prime": gp, "delta": delta, "t": t,
                                        "channel_value": rep.channel_value, "bound": rep.bound})
    return res


def _suite_semigroup(rng, trials, fault):
    res = SuiteResult("semigroup")
    for _ in range(trials):
        gamma = float(rng.uniform(2.0, 10.0))
        gp = float(rng.uniform(1.05, gamma - 0.5))
        delta = float(rng.uniform(0.01, 0.9))
        t = float(rng.uniform(0.0, 1.0))
        m = int(rng.integers(1, 21))
        hp = bounds.hitting_params(gamma, gp, delta)
        lhs = bounds.g_n(hp, bounds.g_n(hp, t, m), 1)
        rhs = bounds.g_n(hp, t, m + 1)
        f_lhs = bounds.f_gamma_homog(gamma, 1, gp, bounds.f_gamma_homog(gamma, m, gp, t))
        f_rhs = bounds.f_gamma_homog(gamma, m + 1, gp, t)
        res.record(abs(lhs - rhs) <= 1e-10 and abs(f_lhs - f_rhs) <= 1e-10, lambda: {
            "gamma": gamma, "gamma_prime": gp, "delta": delta, "t": t, "m": m,
            "g_composed": lhs, "g_direct": rhs, "f_composed": f_lhs, "f_direct": f_rhs,
        })
    return res


def _suite_privacy(rng, trials, fault):
    res = SuiteResult("privacy")
    eps = math.log(3.0)
    for _ in range(trials):
        d = int(rng.integers(2, 4))
        p = d / (2.0 + d) + float(rng.uniform(0.0, 1.0 - d / (2.0 + d)))
        ch = depolarizing(d, p)
        if not privacy.qldp_check(ch, eps, 0.0, restarts=0).is_in:
            res.record(False, lambda: {"d": d, "p": p, "reason": "not certified"})
            continue
        n = int(rng.integers(1, 6))
        eps_prime = float(rng.uniform(0.05, eps))
        bound = privacy.compose_homogeneous(eps, n, eps_prime).delta_out
        rho, sigma = random_density(rng, d), random_density(rng, d)
        out = divergences.hs_divergence(
            apply_iterated(ch, rho, n), apply_iterated(ch, sigma, n), math.exp(eps_prime),
            validate=False, method="lapack",
        )
        res.record(out <= bound + 1e-8, lambda: {
            "d": d, "p": p, "n": n, "eps_prime": eps_prime, "measured": out, "bound": bound,
            "rho": state_to_json(rho), "sigma": state_to_json(sigma),
        })
    return res


SUITES = (_suite_dpi, _suite_sdpi, _suite_tightness, _suite_semigroup, _suite_privacy)


def run_suites(seed: int, trials: int, inject_fault: bool = False) -> list[SuiteResult]:
    out = []
    for k, suite in enumerate(SUITES):
        out.append(suite(np.random.default_rng([seed, k]), trials, inject_fault))
    return out


def cmd_verify(cfg: RunConfig) -> int:
    trials = int(cfg.get("trials", 50))
    if trials < 0:
        raise BadRange(f"trials must be >= 0, got {trials}")
    results = run_suites(int(cfg.get("seed")), trials, bool(cfg.get("inject_fault", False)))
    total = sum(r.checks for r in results)
    failed = sum(len(r.failures) for r in results)
    for r in results:
        status = "PASS" if not r.failures else "FAIL"
        print(f"{status} {r.name}: {r.checks - len(r.failures)}/{r.checks}")
    if total == 0:
        print("warning: 0 checks were run", file=sys.stderr)
    print(f"{total - failed}/{total} checks passed")
    if failed:
        for r in results:
            if r.failures:
                print(f"counterexample ({r.name}):", file=sys.stderr)
                print(json.dumps(r.failures[0], indent=1), file=sys.stderr)
        return EXIT_PROPERTY
    return EXIT_OK


# privacy


def _print_composition(res: privacy.CompositionResult) -> None:
    parts = [f"epsilon_out={_fmt(res.epsilon_out)}", f"delta_out={_fmt(res.delta_out)}", f"rule={res.rule}"]
    if res.raw_ratio is not None:
        parts.append(f"raw_ratio={_fmt(res.raw_ratio)}")
    print("\t".join(parts))


def cmd_privacy(cfg: RunConfig) -> int:
    sub = cfg.subcommand
    if sub == "compose":
        gamma, gp, n = _require(cfg, "gamma", "gamma_prime", "n")
        _print_composition(privacy.compose_homogeneous(math.log(gamma), n, math.log(gp)))
    elif sub == "compose-hetero":
        eps_list = list(cfg.get("eps_list") or []) + [math.log(g) for g in cfg.get("gamma_list") or []]
        if not eps_list:
            raise BadRange("give at least one --eps or --gamma")
        _print_composition(privacy.compose_heterogeneous(eps_list))
    elif sub == "compose-epsdelta":
        gamma, delta, gp, n = _require(cfg, "gamma", "delta", "gamma_prime", "n")
        _print_composition(privacy.compose_eps_delta(math.log(gamma), delta, n, math.log(gp)))
    elif sub == "purify":
        gamma, delta, gp, lam = _require(cfg, "gamma", "delta", "gamma_prime", "lambda_min")
        n = privacy.purify_delta(math.log(gamma), delta, math.log(gp), lam)
        print(f"n={n}\trule=purification")
    else:
        gamma, delta, tau, lam = _require(cfg, "gamma", "delta", "tau", "lambda_")
        eps = math.log(gamma)
        if cfg.get("generator"):
            gen = divergences.get_generator(cfg.get("generator"))
            print(f"{_fmt(privacy.f_div_privacy_bound(gen, eps, delta, tau, lam))}\trule=f_div_privacy")
        else:
            print(f"{_fmt(privacy.re_ldp_bound(eps, delta, tau, lam))}\trule=re_ldp")
        if cfg.get("m") is not None:
            print(f"{_fmt(privacy.dasgupta_bound(eps, delta, tau, cfg.get('m')))}\trule=prior")
    return EXIT_OK


# Parser.


def _paired(p: argparse.ArgumentParser, gamma: str, eps: str, what: str) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument(f"--{gamma}", dest=gamma.replace("-", "_"), type=float, help=f"{what} in gamma-space")
    g.add_argument(f"--{eps}", dest=eps.replace("-", "_"), type=float, help=f"{what} as ln(gamma)")


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON file of parameter defaults")
    p.add_argument("--seed", type=int)


def _grid_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--start", type=float)
    p.add_argument("--stop", type=float)
    p.add_argument("--points", type=int)
    p.add_argument("--output", "-o", help="output path, '-' for stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hsdp", description="Hockey-stick divergence toolkit.")
    cmds = parser.add_subparsers(dest="command", required=True)

    div = cmds.add_parser("div", help="evaluate a divergence between two state files")
    div_sub = div.add_subparsers(dest="subcommand", required=True)
    for name in ("egamma", "trace", "dmax", "smooth-dmax", "fdiv"):
        p = div_sub.add_parser(name)
        _common(p)
        p.add_argument("--rho")
        p.add_argument("--sigma")
        if name == "egamma":
            _paired(p, "gamma", "eps", "order")
        if name == "smooth-dmax":
            p.add_argument("--delta", type=float)
        if name == "fdiv":
            p.add_argument("--generator", help="kl, tv, chi2 or hockey_stick_<gamma>")
            p.add_argument("--quad-tol", type=float)
        p.set_defaults(func=cmd_divergence)

    chk = cmds.add_parser("check", help="containment certificate for a channel file")
    _common(chk)
    chk.add_argument("--channel")
    _paired(chk, "gamma", "eps", "order")
    chk.add_argument("--delta", type=float)
    chk.add_argument("--restarts", type=int)
    chk.set_defaults(func=cmd_check)

    fig = cmds.add_parser("figure", help="emit figure data as CSV")
    fig_sub = fig.add_subparsers(dest="subcommand", required=True)
    for name, func in (("compare", cmd_figure_compare), ("mixing", cmd_figure_mixing)):
        p = fig_sub.add_parser(name)
        _common(p)
        _grid_flags(p)
        _paired(p, "gamma", "eps", "ball order")
        _paired(p, "gamma-prime", "eps-prime", "divergence order")
        p.add_argument("--delta", type=float)
        p.set_defaults(func=func)
    p = fig_sub.add_parser("revpinsker")
    _common(p)
    _grid_flags(p)
    p.add_argument("--mode", choices=("lambda-sweep", "epsilon-sweep"))
    p.add_argument("--family", type=float, action="append", help="epsilon (lambda-sweep) or delta values")
    p.add_argument("--delta", type=float)
    p.add_argument("--lambda", dest="lambda_", type=float)
    p.add_argument("--tau", type=float)
    p.set_defaults(func=cmd_figure_revpinsker)
    p = fig_sub.add_parser("script", help="gnuplot script for the CSV files")
    _common(p)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_figure_script)

    ver = cmds.add_parser("verify", help="run the property suites")
    _common(ver)
    ver.add_argument("--trials", type=int)
    ver.add_argument("--inject-fault", action="store_true", default=None, help="harness self-test")
    ver.set_defaults(func=cmd_verify)

    prv = cmds.add_parser("privacy", help="privacy accounting calculators")
    prv_sub = prv.add_subparsers(dest="subcommand", required=True)
    for name in ("compose", "compose-hetero", "compose-epsdelta", "purify", "bound-re"):
        p = prv_sub.add_parser(name)
        _common(p)
        if name == "compose-hetero":
            p.add_argument("--eps", dest="eps_list", type=float, action="append")
            p.add_argument("--gamma", dest="gamma_list", type=float, action="append")
        else:
            _paired(p, "gamma", "eps", "privacy level")
        if name in ("compose", "compose-epsdelta", "purify"):
            _paired(p, "gamma-prime", "eps-prime", "target level")
        if name in ("compose", "compose-epsdelta"):
            p.add_argument("--n", type=int)
        if name in ("compose-epsdelta", "purify", "bound-re"):
            p.add_argument("--delta", type=float)
        if name == "purify":
            p.add_argument("--lambda-min", type=float)
        if name == "bound-re":
            p.add_argument("--tau", type=float)
            p.add_argument("--lambda", dest="lambda_", type=float)
            p.add_argument("--m", type=float, help="also print the earlier bound with this m")
            p.add_argument("--generator", help="use a general f-divergence generator")
        p.set_defaults(func=cmd_privacy)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_IO if exc.code else EXIT_OK
    try:
        return args.func(resolve(args))
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (HSDPError, ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
