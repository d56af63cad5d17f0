"""Command-line front end.

Subcommands ingest curve/family/parameter JSON files, run the library
analyses, and write deterministic CSV/JSON results plus PNG figures into
the output directory.  Exit codes: 0 success, 1 validation error (bad
input, singular curve, domain violation), 2 numerical failure (failed
integration, exhausted budget, failed invariant battery).
"""

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from . import ode as ode_mod
from . import reduction as red
from . import stationarity as st
from .curves import CurveSpec, eval_jet, periodic_grid
from .errors import (BudgetExhausted, CrossCheckMismatch, DomainError,
                     IntegrationFailure, OrientationError, ParseError,
                     RegularityViolation)
from .geometry import div_JH, mean_curvature, metric
from .output import read_json, write_csv, write_json
from .stationarity import DEFAULT_TOLERANCES
from .trig import TrigPoly

COMMANDS = ("analyze", "stationarity", "scan", "ode", "reduce", "intersections", "verify")

EXTRA_TOLERANCES = {
    "touch": 1e-9,      # tangent parallelism bound for Touch classification
    "symmetry": 1e-9,   # central symmetry detection bound
    "newton": 1e-12,    # double point residual target
}


@dataclass
class RunConfig:
    command: str
    input_path: Path = None
    output_dir: Path = Path("out")
    n_samples: int = 2048
    tolerances: dict = field(default_factory=dict)
    seed: int = 0
    figures: bool = True

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ParseError(f"unknown command {self.command!r}")
        if self.n_samples < 64 or self.n_samples & (self.n_samples - 1):
            raise ParseError("--samples must be a power of two and at least 64")
        known = set(DEFAULT_TOLERANCES) | set(EXTRA_TOLERANCES)
        for name in self.tolerances:
            if name not in known:
                raise ParseError(f"unknown tolerance {name!r}; known: {sorted(known)}")

    def tol(self, name: str) -> float:
        merged = {**DEFAULT_TOLERANCES, **EXTRA_TOLERANCES, **self.tolerances}
        return merged[name]


def _parse_tolerances(pairs) -> dict:
    out = {}
    for pair in pairs or ():
        if "=" not in pair:
            raise ParseError(f"--tol expects NAME=VALUE, got {pair!r}")
        name, _, value = pair.partition("=")
        try:
            out[name] = float(value)
        except ValueError as exc:
            raise ParseError(f"tolerance {name!r} has non-numeric value {value!r}") from exc
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twistedtori",
        description="Geometry and stationarity analysis of twisted tori over plane curves.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_input=True, input_optional=False):
        if needs_input:
            nargs = "?" if input_optional else None
            p.add_argument("input", nargs=nargs, help="input JSON file")
        p.add_argument("--out", default="out", help="output directory (default: out)")
        p.add_argument("--samples", type=int, default=2048,
                       help="grid size, power of two >= 64 (default: 2048)")
        p.add_argument("--tol", action="append", metavar="NAME=VAL",
                       help="override a named tolerance (repeatable)")
        p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
        p.add_argument("--no-figures", action="store_true", help="skip PNG rendering")

    common(sub.add_parser("analyze", help="full single-curve analysis"))
    common(sub.add_parser("stationarity", help="stationarity report and defect trace"))
    common(sub.add_parser("scan", help="defect landscape over a curve family"))
    p_ode = sub.add_parser("ode", help="oscillation period analysis and reconstruction")
    common(p_ode, input_optional=True)
    p_ode.add_argument("--c", type=float, default=None, help="stationarity constant, c > 2")
    p_ode.add_argument("--k", type=int, default=None, help="winding datum, 0 or 1")
    p_ode.add_argument("--steps", type=int, default=2048, help="profile sample count")
    common(sub.add_parser("reduce", help="reduced curve and pullback verification"))
    common(sub.add_parser("intersections", help="double point scan"))
    common(sub.add_parser("verify", help="run the full invariant battery"), needs_input=False)
    return parser


def _config(args) -> RunConfig:
    return RunConfig(
        command=args.command,
        input_path=Path(args.input) if getattr(args, "input", None) else None,
        output_dir=Path(args.out),
        n_samples=args.samples,
        tolerances=_parse_tolerances(args.tol),
        seed=args.seed,
        figures=not args.no_figures,
    )


def _load_curve(path: Path) -> CurveSpec:
    if path is None:
        raise ParseError("this command requires an input curve file")
    return CurveSpec.from_json(Path(path).read_text())


def _frame_columns(curve: CurveSpec, n_samples: int) -> dict:
    beta = periodic_grid(n_samples)
    jet = eval_jet(curve, beta)
    met = metric(jet)
    mc = mean_curvature(jet, 0.0)
    return {
        "beta": beta,
        "alpha": np.zeros_like(beta),
        "g_aa": met.g_aa,
        "g_bb": met.g_bb,
        "C": mc.C,
        "norm_H": mc.norm_H,
        "rho_norm_H": mc.rho_norm_H,
        "div_JH": div_JH(jet),
    }


def _write_defect_trace(curve: CurveSpec, config: RunConfig) -> dict:
    beta, s, rho_h = st.stationarity_trace(curve, config.n_samples)
    write_csv(config.output_dir / "defect_trace.csv",
              {"beta": beta, "s": s, "rho_norm_H": rho_h})
    return {"beta": beta, "s": s, "rho_norm_H": rho_h}


def cmd_stationarity(config: RunConfig, full: bool = False) -> int:
    curve = _load_curve(config.input_path)
    rep = st.report(curve, config.n_samples, config.tolerances)
    out = config.output_dir
    data = rep.to_dict()
    data["config"] = {"command": config.command, "n_samples": config.n_samples,
                      "seed": config.seed, "input": config.input_path.name}
    write_json(out / "report.json", data)
    trace = _write_defect_trace(curve, config)
    write_json(out / "curve.json", curve.to_dict())
    if full:
        write_csv(out / "frames.csv", _frame_columns(curve, config.n_samples))
        beta = trace["beta"]
        b = st.conserved_quantity(curve, rep.c_estimate, beta)
        write_csv(out / "conserved_trace.csv", {"beta": beta, "b": b})
    if config.figures:
        from . import figures
        figures.plot_defect_trace(trace["beta"], trace["s"], trace["rho_norm_H"],
                                  out / "defect_trace.png")
        figures.plot_curve(curve, out / "curve.png")
    print(f"verdict: {rep.verdict}  c_estimate: {rep.c_estimate:.6g}  "
          f"defect: {rep.defect:.6g}")
    return 0


def _family_from_dict(data: dict) -> st.CurveFamily:
    try:
        kind = data.get("family", "log_rho_harmonics")
        if kind != "log_rho_harmonics":
            raise ParseError(f"unknown family kind {kind!r}")
        terms = data["terms"]
        lo, hi, grid = data["lo"], data["hi"], data["grid"]
        if not (len(terms) == len(lo) == len(hi) == len(grid)):
            raise ParseError("terms/lo/hi/grid must have equal lengths")
        k = int(data.get("k", 1))
        modes = [(str(t["fn"]), int(t["mode"])) for t in terms]
        if any(fn not in ("cos", "sin") or mode < 1 for fn, mode in modes):
            raise ParseError("each term needs fn in {cos, sin} and mode >= 1")

        def make(params):
            n = max(mode for _, mode in modes)
            cos = [0.0] * n
            sin = [0.0] * n
            for (fn, mode), value in zip(modes, params):
                if fn == "cos":
                    cos[mode - 1] += float(value)
                else:
                    sin[mode - 1] += float(value)
            return CurveSpec(TrigPoly(0.0, tuple(cos), tuple(sin)), TrigPoly(), k)

        names = tuple(f"{fn}{mode}" for fn, mode in modes)
        return st.CurveFamily(make=make, lo=tuple(float(x) for x in lo),
                              hi=tuple(float(x) for x in hi),
                              grid_shape=tuple(int(g) for g in grid),
                              parameter_names=names,
                              min_rho_variance=data.get("min_rho_variance"))
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"not a valid family spec: {exc}") from exc


def cmd_scan(config: RunConfig) -> int:
    if config.input_path is None:
        raise ParseError("scan requires a family spec file")
    data = read_json(config.input_path)
    family = _family_from_dict(data)
    budget = int(data.get("budget", 400))
    scan = st.scan_family(family, budget=budget, seed=config.seed,
                          n_samples=min(config.n_samples, 1024))
    out = config.output_dir
    columns = {name: scan.parameters[:, i] for i, name in enumerate(scan.parameter_names)}
    columns["defect"] = scan.defects
    columns["c_estimate"] = scan.c_estimates
    write_csv(out / "landscape.csv", columns)
    write_json(out / "scan.json", {
        "parameter_names": list(scan.parameter_names),
        "argmin_parameters": list(scan.argmin_parameters),
        "argmin_defect": scan.argmin_defect,
        "polished_parameters": list(scan.polished_parameters),
        "polished_defect": scan.polished_defect,
        "n_evaluations": scan.n_evaluations,
        "n_members": int(len(scan.parameters)),
        "config": {"seed": config.seed, "budget": budget},
        "scope": "defect landscape over the scanned family of twisted tori only; "
                 "no statement about other tori in the same Hamiltonian isotopy class",
    })
    if config.figures:
        from . import figures
        figures.plot_landscape(scan, out / "landscape.png")
    print(f"argmin: {np.array2string(scan.polished_parameters, precision=6)}  "
          f"defect: {scan.polished_defect:.6g}")
    return 0


def cmd_ode(config: RunConfig, args) -> int:
    c, k, steps = args.c, args.k, args.steps
    if config.input_path is not None:
        data = read_json(config.input_path)
        c = data.get("c", c) if c is None else c
        k = data.get("k", k) if k is None else k
    if c is None:
        raise ParseError("ode requires --c (or an input file with a 'c' entry)")
    k = 0 if k is None else int(k)
    profile = ode_mod.integrate_profile(float(c), n_steps=steps, k=k)
    out = config.output_dir
    write_json(out / "ode.json", profile.header_dict())
    write_csv(out / "profile.csv", {"u": profile.u, "R": profile.R,
                                    "rho_candidate": profile.rho_candidate,
                                    "f": profile.f})
    if config.figures:
        from . import figures
        figures.plot_profile(profile, out / "profile.png")
    print(f"u_star: {profile.u_star:.6g}  required: {profile.required_u_star:.6g}  "
          f"closure_gap: {profile.closure_gap:.6g}  "
          f"angular_defect: {profile.angular_closure_defect:.6g}")
    return 0


def cmd_reduce(config: RunConfig) -> int:
    curve = _load_curve(config.input_path)
    reduced = red.reduced_curve(curve)
    pullbacks = red.verify_pullbacks(100, seed=config.seed)
    level_max = red.level_set_check(curve, config.n_samples)
    out = config.output_dir
    write_json(out / "reduced_curve.json", reduced.to_dict())
    write_json(out / "reduction.json", {
        "level_set_max": level_max,
        "pullbacks": pullbacks.to_dict(),
        "reduced_winding": 2 * curve.k,
    })
    if config.figures:
        from . import figures
        figures.plot_curve(reduced, out / "reduced_curve.png")
    worst = max(pullbacks.l_pullback_max, pullbacks.psi_pullback_max,
                pullbacks.phi_pullback_max)
    print(f"level_set_max: {level_max:.3e}  pullback_max: {worst:.3e}")
    return 0


def cmd_intersections(config: RunConfig) -> int:
    curve = _load_curve(config.input_path)
    scan = red.find_double_points(
        curve,
        newton_tol=config.tol("newton"),
        touch_tol=config.tol("touch"),
        symmetry_tol=config.tol("symmetry"),
    )
    out = config.output_dir
    write_json(out / "double_points.json", scan.to_dict())
    if config.figures:
        from . import figures
        figures.plot_curve(curve, out / "intersections.png", show_negation=True,
                           double_points=scan.points)
    if scan.centrally_symmetric:
        print("centrally symmetric: the torus is a 2:1 cover (continuum of double points)")
    else:
        print(f"double points: {len(scan.points)}"
              + "".join(f"\n  beta1={p.beta1:.6f} beta2={p.beta2:.6f} kind={p.kind}"
                        for p in scan.points))
    return 0


def cmd_verify(config: RunConfig) -> int:
    from .battery import run_battery
    results = run_battery(seed=config.seed)
    write_json(config.output_dir / "battery.json",
               {"checks": [{"name": r.name, "passed": r.passed, "detail": r.detail}
                           for r in results],
                "passed": all(r.passed for r in results),
                "seed": config.seed})
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name}  [{r.detail}]")
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 0 if failed == 0 else 2


def dispatch(config: RunConfig, args) -> int:
    config.output_dir.mkdir(parents=True, exist_ok=True)
    if config.command == "analyze":
        return cmd_stationarity(config, full=True)
    if config.command == "stationarity":
        return cmd_stationarity(config, full=False)
    if config.command == "scan":
        return cmd_scan(config)
    if config.command == "ode":
        return cmd_ode(config, args)
    if config.command == "reduce":
        return cmd_reduce(config)
    if config.command == "intersections":
        return cmd_intersections(config)
    return cmd_verify(config)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = _config(args)
        return dispatch(config, args)
    except (ParseError, RegularityViolation, DomainError, OrientationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (IntegrationFailure, BudgetExhausted, CrossCheckMismatch) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
