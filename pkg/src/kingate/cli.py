"""Command-line front end.

Exit codes: 0 success, 1 bad input, 2 numerical-validation failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from functools import partial

import numpy as np

from . import figures, oracle, scattering, spectral, tuning
from .config import ConfigError, RunConfig
from .core import GridCoverageError, Polarization, PulseSpec, SystemParams, make_grid

EXIT_OK, EXIT_BAD_INPUT, EXIT_VALIDATION = 0, 1, 2


class ValidationFailure(Exception):
    pass


# -- output ---------------------------------------------------------------------


def _fmt(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return "%.17g" % float(v)


def render_csv(columns, rows, meta: dict) -> str:
    buf = io.StringIO()
    for k, v in meta.items():
        buf.write(f"# {k}={_fmt(v) if not isinstance(v, (tuple, list)) else ','.join(_fmt(x) for x in v)}\n")
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _jsonable(v):
    if isinstance(v, (np.floating, float)):
        return float(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (tuple, list)):
        return [_jsonable(x) for x in v]
    return v


def render_json(columns, rows, meta: dict) -> str:
    doc = {"meta": {k: _jsonable(v) for k, v in meta.items()}, "columns": list(columns),
           "rows": [[_jsonable(v) for v in row] for row in rows]}
    return json.dumps(doc, indent=1) + "\n"


def emit(args, columns, rows, meta):
    text = render_json(columns, rows, meta) if args.json else render_csv(columns, rows, meta)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- config helpers -------------------------------------------------------------


def _system(cfg: RunConfig) -> SystemParams:
    g = cfg.get("g", 1.0)
    kappa = cfg.get("kappa", 1.0)
    if cfg.delta_h is not None or cfg.delta_v is not None:
        dh = cfg.get("delta_h", 0.0)
        dv = cfg.get("delta_v", dh - cfg.get("epsilon", 0.0))
    else:
        da = cfg.get("delta_a", tuning.sqrt_swap_delta_a(g, kappa, cfg.get("Delta", 0.0)))
        dh, dv = da, da - cfg.get("epsilon", 0.0)
    return SystemParams(g, kappa, dh, dv)


def _pulse(cfg: RunConfig) -> PulseSpec:
    try:
        pol = Polarization(cfg.get("polarization", "H").upper())
    except ValueError:
        raise ConfigError(f"polarization must be H or V, got {cfg.polarization!r}") from None
    return PulseSpec(cfg.get("T", 10.0), cfg.get("Delta", 0.0), pol)


def _grid_opts(cfg: RunConfig) -> dict:
    return {"points_per_sigma": cfg.get("points_per_sigma", 10), "halfwidth_sigmas": cfg.get("halfwidth_sigmas", 12)}


def _params_meta(params: SystemParams, pulse: PulseSpec, cfg: RunConfig) -> dict:
    meta = {"g": params.g, "kappa": params.kappa, "delta_h": params.delta_h, "delta_v": params.delta_v,
            "epsilon": params.epsilon(), "T": pulse.duration, "Delta": pulse.carrier_detuning,
            "polarization": pulse.polarization.value}
    meta.update(_grid_opts(cfg))
    return meta


# -- commands -------------------------------------------------------------------


def cmd_spectra(cfg: RunConfig, args):
    params, pulse = _system(cfg), _pulse(cfg)
    pol = pulse.polarization
    eps_in = params.detuning(pol) - params.detuning(pol.other)
    grid = make_grid(pulse, shift=eps_in, **_grid_opts(cfg))
    out = spectral.outgoing_spectra(params, pulse, grid)
    appendix = cfg.get("apply_appendix_phase", False)
    if appendix:
        out = spectral.apply_appendix_phase(out, params.kappa)
    c_in = spectral.gaussian_spectrum(pulse, grid.points)
    rows = [[w, ci.real, ci.imag, ch.real, ch.imag, cv.real, cv.imag]
            for w, ci, ch, cv in zip(grid.points, c_in.astype(complex), out.c_h, out.c_v)]
    cols = ["omega", "re_ch_in", "im_ch_in", "re_ch_out", "im_ch_out", "re_cv_out", "im_cv_out"]
    meta = _params_meta(params, pulse, cfg)
    meta["apply_appendix_phase"] = appendix
    meta["norm_out"] = out.norm()
    return cols, rows, meta


def cmd_fidelity(cfg: RunConfig, args):
    params, pulse = _system(cfg), _pulse(cfg)
    phi = cfg.get("phi_target", spectral.SQRT_SWAP_PHASE)
    meta = _params_meta(params, pulse, cfg)
    if params.is_degenerate:
        res = spectral.fidelity(params, pulse, make_grid(pulse, **_grid_opts(cfg)), phi)
    else:
        h = pulse.with_polarization(Polarization.H)
        eps = params.epsilon()
        v = h.shifted(eps).with_polarization(Polarization.V)
        grid = make_grid(h, shift=eps, **_grid_opts(cfg))
        # default theta is the one picked up at the tuned split-ground-state point
        theta = cfg.get("theta", 2 * math.atan(eps / (2 * params.kappa)))
        target = spectral.ideal_output(grid, h, v, phi, theta)
        meta["theta"] = theta
        res = spectral.fidelity_nondegenerate(params, h, grid, target, phi, v_pulse=v)
    meta["phi_target"] = phi
    cols = ["fidelity", "phase", "infidelity", "phase_error"]
    return cols, [[res.fidelity, res.phase, res.infidelity, res.phase_error]], meta


def cmd_figure(cfg: RunConfig, args):
    name = args.name
    kw = dict(_grid_opts(cfg))
    kw["workers"] = cfg.get("workers", 1)
    for key in ("kappa", "n_points"):
        if getattr(cfg, key) is not None:
            kw[key] = getattr(cfg, key)
    if name == "fig5":
        for key in ("T", "g2", "Delta_min", "Delta_max"):
            if getattr(cfg, key) is not None:
                kw[key] = getattr(cfg, key)
        if cfg.g is not None and cfg.g2 is None:
            kw["g2"] = cfg.g**2
    elif name in ("fig6", "fig9"):
        for key in ("g", "T_min", "T_max"):
            if getattr(cfg, key) is not None:
                kw[key] = getattr(cfg, key)
    else:
        for key in ("g_min", "g_max"):
            if getattr(cfg, key) is not None:
                kw[key] = getattr(cfg, key)
    table = figures.figure(name, **kw)
    meta = {"figure": name}
    meta.update({k: v for k, v in table.meta.items()})
    meta.update({k: v for k, v in kw.items() if k != "workers"})
    return table.columns, table.rows, meta


def cmd_tune(cfg: RunConfig, args):
    try:
        cond = tuning.Condition(args.condition)
    except ValueError:
        raise ConfigError(f"unknown condition {args.condition!r}") from None
    g, kappa = cfg.get("g", 1.0), cfg.get("kappa", 1.0)
    sols = tuning.solve(cond, g, kappa, cfg.get("Delta", 0.0), cfg.get("epsilon", 0.0))
    meta = {"condition": cond.value, "g": g, "kappa": kappa, "solutions": len(sols)}
    if cond is tuning.Condition.NONDEGENERATE_SQRT_SWAP:
        meta["epsilon"] = cfg.get("epsilon", 0.0)
        meta["theta"] = tuning.nondegenerate_sqrt_swap(g, kappa, cfg.get("epsilon", 0.0))[2]
    if not sols:
        if cond is tuning.Condition.SQRT_SWAP_NONADIABATIC:
            meta["diagnostic"] = (f"no real roots: 2g^2/kappa^2 = {2 * g * g / kappa**2:.6g} is below the "
                                  f"good-cavity threshold 12*sqrt(3)-20 = {tuning.good_cavity_threshold():.6g}")
        else:
            meta["diagnostic"] = f"no solution: requires 2g^2/kappa^2 > 1, got {2 * g * g / kappa**2:.6g}"
        sys.stderr.write(meta["diagnostic"] + "\n")
    cols = ["branch", "Delta", "delta_a", "max_residual"]
    rows = [[s.branch, s.carrier_detuning, s.atom_detuning, s.max_residual()] for s in sols]
    return cols, rows, meta


def cmd_oracle_check(cfg: RunConfig, args, spectral_fn=None):
    seed, draws = cfg.get("seed", 0), cfg.get("draws", 30)
    tol = cfg.get("tolerance", 1e-6)
    cases = oracle.random_suite(seed, draws, cfg.get("kappa", 1.0))
    errs = figures.parallel_map(partial(oracle.case_discrepancy, spectral_fn=spectral_fn), cases,
                                cfg.get("workers", 1))
    cols = ["case", "g", "delta_h", "delta_v", "T", "Delta", "polarization", "l2_distance"]
    rows = []
    for i, (c, e) in enumerate(zip(cases, errs)):
        d = c.as_dict()
        rows.append([i, d["g"], d["delta_h"], d["delta_v"], d["T"], d["Delta"], d["polarization"], e])
    worst = int(np.argmax(errs))
    meta = {"seed": seed, "draws": draws, "tolerance": tol, "max_l2_distance": max(errs), "worst_case": worst,
            "passed": bool(max(errs) < tol)}
    if not meta["passed"]:
        sys.stderr.write(f"oracle check FAILED: max L2 distance {max(errs):.3g} >= {tol:g}; "
                         f"worst case {cases[worst].as_dict()}\n")
    return cols, rows, meta


def cmd_scattering(cfg: RunConfig, args):
    try:
        m = scattering.MirrorPair(cfg.get("t1", 0.1), cfg.get("t2", 0.0), 1.0, cfg.get("c_over_l", 1.0))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    kl = cfg.get("kl", math.pi)
    k = kl / m.length
    left = scattering.scattering_amplitudes(m, k)
    right = scattering.scattering_amplitudes(m, k, from_right=True)
    split = scattering.mode_split(m)
    a_nr, d_nr = scattering.near_resonance_amplitudes(split)
    back, up = scattering.beamsplitter_network_output(split)
    back_x, up_x = scattering.beamsplitter_network_output(split, 1.0, (left.a, left.d, right.a, right.d))
    items = [
        ("kl", kl), ("resonant_kl", scattering.resonant_kl(kl)),
        ("A", left.a), ("B", left.b), ("C", left.c_amp), ("D", left.d),
        ("A_right", right.a), ("D_right", right.d),
        ("A_near_resonance", a_nr), ("D_near_resonance", d_nr),
        ("kappa", scattering.total_loss_rate(m)), ("tau1", split.tau1), ("tau2", split.tau2),
        ("failure_probability", scattering.uncoupled_failure_probability(split)),
        ("network_back", back), ("network_upward", up),
        ("network_back_exact", back_x), ("network_upward_exact", up_x),
    ]
    rows = [[name, complex(v).real, complex(v).imag] for name, v in items]
    return ["quantity", "re", "im"], rows, {"t1": m.t1, "t2": m.t2, "c_over_l": m.c}


COMMANDS = {
    "spectra": cmd_spectra,
    "fidelity": cmd_fidelity,
    "figure": cmd_figure,
    "tune": cmd_tune,
    "oracle-check": cmd_oracle_check,
    "scattering": cmd_scattering,
}

_FLOAT_FLAGS = ["g", "kappa", "delta_a", "delta_h", "delta_v", "epsilon", "T", "Delta", "phi_target", "theta",
                "g2", "Delta_min", "Delta_max", "T_min", "T_max", "g_min", "g_max", "tolerance", "t1", "t2", "kl",
                "c_over_l"]
_INT_FLAGS = ["n_points", "draws", "workers"]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat key = value config file; flags override it")
    common.add_argument("--json", action="store_true", help="write JSON instead of CSV")
    common.add_argument("--out", help="output file (default stdout)")
    common.add_argument("--seed", type=int)
    common.add_argument("--grid-points-per-sigma", dest="points_per_sigma", type=int)
    common.add_argument("--grid-halfwidth-sigmas", dest="halfwidth_sigmas", type=int)
    common.add_argument("--apply-appendix-phase", action="store_const", const=True, default=None)
    common.add_argument("--polarization", choices=["H", "V", "h", "v"])
    for name in _FLOAT_FLAGS:
        common.add_argument("--" + name.replace("_", "-"), dest=name, type=float)
    for name in _INT_FLAGS:
        common.add_argument("--" + name.replace("_", "-"), dest=name, type=int)

    parser = argparse.ArgumentParser(prog="kingate", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("spectra", parents=[common], help="incident and outgoing spectra")
    sub.add_parser("fidelity", parents=[common], help="gate fidelity and phase")
    p = sub.add_parser("figure", parents=[common], help="figure data")
    p.add_argument("name", choices=figures.FIGURES)
    p = sub.add_parser("tune", parents=[common], help="solve a detuning condition")
    p.add_argument("condition", help=", ".join(c.value for c in tuning.Condition))
    sub.add_parser("oracle-check", parents=[common], help="time-domain vs frequency-domain equivalence")
    sub.add_parser("scattering", parents=[common], help="two-sided cavity scattering summary")
    return parser


def _config_from_args(args) -> RunConfig:
    cfg = RunConfig.load(args.config) if args.config else RunConfig()
    flags = {k: getattr(args, k) for k in RunConfig.keys() if getattr(args, k, None) is not None}
    return cfg.merged(RunConfig.from_mapping(flags))


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
        cols, rows, meta = COMMANDS[args.command](cfg, args)
        emit(args, cols, rows, meta)
    except (ConfigError, GridCoverageError, ValueError, OSError) as exc:
        sys.stderr.write(f"kingate: error: {exc}\n")
        return EXIT_BAD_INPUT
    except ArithmeticError as exc:
        sys.stderr.write(f"kingate: numerical failure: {exc}\n")
        return EXIT_VALIDATION
    if args.command == "oracle-check" and not meta["passed"]:
        return EXIT_VALIDATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
