"""Batch command-line front end.

Subcommands reproduce the library's headline figures as CSV (or JSON)
data files and expose each operation for scripted use:

    covariance   stationary covariance by any route, with cross-route diff
    qfi          QFI / sensitivity sweep over temperature or coupling
    sensitivity  alias of qfi with an observable filter
    fig1a        relative error dT/T vs temperature per coupling strength
    fig1b        QFI vs coupling strength per temperature
    fig2         QFI and observable sensitivities vs temperature per coupling
    fig3         Ohmic vs super-Ohmic QFI vs temperature
    star         finite star-system surrogate vs the continuum solution

Output is deterministic: metadata lines are '#'-prefixed (no timestamps),
one header row, 17-significant-digit values.  Exit codes: 0 success,
1 numerical failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from .errors import ColdprobeError
from .metrology import (qfi_equilibrium_log, qfi_gaussian, relative_error,
                        sensitivity_report)
from .spectral import LORENTZ_DRUDE, SpectralModel, spectral_density
from .star import (discretize_bath, eigenvalue_coupling_derivatives,
                   normal_modes, reduced_probe_covariance, star_qfi)
from .steady_state import (ProbeSpec, covariance_analytic_ld,
                           covariance_lowT_approx, covariance_numeric,
                           thermal_covariance)

_BOUND_SLACK = 1.001


@dataclass(frozen=True)
class SweepSpec:
    """Validated sweep axis: endpoints, point count, spacing."""

    axis: str
    start: float
    stop: float
    points: int = 20
    log: bool = False

    def __post_init__(self):
        if self.start is None or self.stop is None:
            raise ColdprobeError("--from and --to must be given together")
        if self.start >= self.stop:
            raise ColdprobeError("--from must be smaller than --to")
        if self.points < 2:
            raise ColdprobeError("--points must be at least 2")
        if self.log and self.start <= 0.0:
            raise ColdprobeError("log spacing requires positive endpoints")

    def values(self) -> np.ndarray:
        if self.log:
            return np.geomspace(self.start, self.stop, self.points)
        return np.linspace(self.start, self.stop, self.points)


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _model_from_args(args) -> SpectralModel:
    if args.model == "lorentz-drude":
        return SpectralModel.lorentz_drude(args.gamma, args.omega_c)
    return SpectralModel.exp_cutoff(args.gamma, args.omega_c, args.s,
                                    numeric_only=(args.s not in (1.0, 2.0)))


def _grid(args, axis: str = "temp") -> np.ndarray:
    return SweepSpec(axis, args.start, args.stop, args.points,
                     args.log).values()


def _emit(args, meta: dict, header: list[str], rows: list[list]):
    for row in rows:
        for v in row:
            if not isinstance(v, str) and not math.isfinite(v):
                raise ColdprobeError(f"non-finite value in output row {row!r}")
    if args.format == "json":
        payload = [dict(zip(header, row)) for row in rows]
        text = json.dumps(payload, indent=2) + "\n"
    else:
        lines = [f"# coldprobe {meta.pop('command')} v{__version__}"]
        lines += [f"# {k} = {v}" for k, v in sorted(meta.items())]
        lines.append(",".join(header))
        lines += [",".join(v if isinstance(v, str) else _fmt(v) for v in row)
                  for row in rows]
        text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _check_bound_chain(qfi: float, f_energy: float, f_xsq: float):
    if f_energy > qfi * _BOUND_SLACK or f_xsq > qfi * _BOUND_SLACK:
        raise ColdprobeError(
            f"bound-chain violation: F(H)={f_energy}, F(x^2)={f_xsq}, QFI={qfi}")


def _sweep_record(model: SpectralModel, probe: ProbeSpec, T: float):
    if model.variant == LORENTZ_DRUDE:
        cov, _ = covariance_analytic_ld(model.gamma, model.omega_c, probe, T)
        err = (0.0, 0.0)
    else:
        cov, info = covariance_numeric(model, probe, T, full_output=True)
        err = (info.err_xx, info.err_pp)
    rep = sensitivity_report(model, probe, T)
    _check_bound_chain(rep.qfi, rep.f_energy, rep.f_xsq)
    return [T, cov.sigma_xx, cov.sigma_pp, rep.qfi, rep.f_energy, rep.f_xsq,
            rep.rel_error, err[0], err[1]]


_SWEEP_HEADER = ["temperature", "sigma_xx", "sigma_pp", "qfi", "f_energy",
                 "f_xsq", "delta_t_rel", "quad_err_xx", "quad_err_pp"]


def cmd_covariance(args) -> int:
    model = _model_from_args(args)
    probe = ProbeSpec(args.probe_freq)
    T = args.temp
    rows = []
    header = ["sigma_xx", "sigma_pp", "sigma_xp", "err_xx", "err_pp"]
    out: dict[str, tuple] = {}
    if args.route in ("numeric", "both"):
        cov, info = covariance_numeric(model, probe, T, full_output=True)
        out["numeric"] = (cov, info.err_xx, info.err_pp)
    if args.route in ("analytic", "both"):
        if model.variant != LORENTZ_DRUDE:
            raise ColdprobeError("the analytic route requires the Lorentz-Drude model")
        cov, _ = covariance_analytic_ld(model.gamma, model.omega_c, probe, T)
        out["analytic"] = (cov, 0.0, 0.0)
    if args.route == "lowT":
        if model.variant != LORENTZ_DRUDE:
            raise ColdprobeError("the low-T approximation requires the Lorentz-Drude model")
        cov = covariance_lowT_approx(model.gamma, model.omega_c, probe, T)
        out["lowT"] = (cov, 0.0, 0.0)
    for name, (cov, exx, epp) in out.items():
        rows.append([name, cov.sigma_xx, cov.sigma_pp, cov.sigma_xp, exx, epp])
    if args.route == "both":
        cn, ca = out["numeric"][0], out["analytic"][0]
        rows.append(["rel_diff",
                     abs(cn.sigma_xx - ca.sigma_xx) / abs(ca.sigma_xx),
                     abs(cn.sigma_pp - ca.sigma_pp) / abs(ca.sigma_pp),
                     0.0, 0.0, 0.0])
    header = ["route"] + header
    meta = {"command": "covariance", "model": model.variant,
            "gamma": model.gamma, "omega_c": model.omega_c, "s": model.s,
            "probe_freq": probe.omega0, "temp": T}
    _emit(args, meta, header, rows)
    return 0


def cmd_qfi(args, observable: str | None = None) -> int:
    model = _model_from_args(args)
    probe = ProbeSpec(args.probe_freq)
    if args.start is not None or args.stop is not None:
        axis = _grid(args, args.axis)
    else:
        axis = np.array([args.temp])
    rows = []
    for v in axis:
        if args.axis == "gamma":
            m = SpectralModel(model.variant, float(v), model.omega_c, model.s,
                              model.numeric_only)
            rows.append([float(v)] + _sweep_record(m, probe, args.temp)[1:])
        else:
            rows.append(_sweep_record(model, probe, float(v)))
    header = list(_SWEEP_HEADER)
    header[0] = args.axis if args.axis == "gamma" else "temperature"
    if observable is not None:
        keep = {"temperature", "gamma", "sigma_xx", "sigma_pp", "qfi",
                "delta_t_rel",
                "f_energy" if observable == "energy" else "f_xsq"}
        idx = [i for i, h in enumerate(header) if h in keep]
        header = [header[i] for i in idx]
        rows = [[r[i] for i in idx] for r in rows]
    meta = {"command": "qfi" if observable is None else "sensitivity",
            "model": model.variant, "gamma": model.gamma,
            "omega_c": model.omega_c, "s": model.s,
            "probe_freq": probe.omega0, "axis": args.axis, "temp": args.temp}
    _emit(args, meta, header, rows)
    return 0


def cmd_sensitivity(args) -> int:
    return cmd_qfi(args, observable=args.observable)


def cmd_fig1a(args) -> int:
    probe = ProbeSpec(1.0)
    gammas = (0.1, 1.0, 5.0)
    temps = np.geomspace(args.t_min, args.t_max, args.points)
    rows = []
    for T in temps:
        t = float(T)
        row = [t]
        for g in gammas:
            model = SpectralModel.lorentz_drude(g, args.omega_c)
            row.append(relative_error(qfi_gaussian(model, probe, t), t))
        # equilibrium reference in log space: the QFI underflows below
        # T ~ 1/700 while dT/T itself stays representable much longer
        log_rel = -math.log(t) - 0.5 * qfi_equilibrium_log(probe.omega0, t)
        if log_rel > 700.0:
            raise ColdprobeError(
                f"equilibrium dT/T overflows double precision at T = {t}")
        row.append(math.exp(log_rel))
        rows.append(row)
    header = ["temperature"] + [f"relerr_gamma_{g:g}" for g in gammas] \
        + ["relerr_equilibrium"]
    meta = {"command": "fig1a", "model": "lorentz_drude",
            "omega_c": args.omega_c, "gammas": "0.1|1|5", "probe_freq": 1.0}
    _emit(args, meta, header, rows)
    return 0


def cmd_fig1b(args) -> int:
    probe = ProbeSpec(1.0)
    temps = (1.0, 0.1, 0.01)
    gammas = np.geomspace(args.g_min, args.g_max, args.points)
    rows = []
    for g in gammas:
        model = SpectralModel.lorentz_drude(float(g), args.omega_c)
        rows.append([float(g)] + [qfi_gaussian(model, probe, T) for T in temps])
    header = ["gamma"] + [f"qfi_temp_{t:g}" for t in temps]
    meta = {"command": "fig1b", "model": "lorentz_drude",
            "omega_c": args.omega_c, "temps": "1|0.1|0.01", "probe_freq": 1.0}
    _emit(args, meta, header, rows)
    return 0


def cmd_fig2(args) -> int:
    probe = ProbeSpec(1.0)
    gammas = (5e-3, 5e-2, 0.5)
    temps = np.geomspace(args.t_min, args.t_max, args.points)
    rows = []
    for g in gammas:
        model = SpectralModel.lorentz_drude(g, args.omega_c)
        for T in temps:
            rep = sensitivity_report(model, probe, float(T))
            _check_bound_chain(rep.qfi, rep.f_energy, rep.f_xsq)
            rows.append([g, float(T), rep.qfi, rep.f_energy, rep.f_xsq])
    header = ["gamma", "temperature", "qfi", "f_energy", "f_xsq"]
    meta = {"command": "fig2", "model": "lorentz_drude",
            "omega_c": args.omega_c, "gammas": "0.005|0.05|0.5",
            "probe_freq": 1.0}
    _emit(args, meta, header, rows)
    return 0


def cmd_fig3(args) -> int:
    probe = ProbeSpec(1.0)
    temps = np.geomspace(args.t_min, args.t_max, args.points)
    ohmic = SpectralModel.exp_cutoff(args.gamma, args.omega_c, 1.0)
    super_ohmic = SpectralModel.exp_cutoff(args.gamma, args.omega_c, 2.0)
    rows = []
    for T in temps:
        t = float(T)
        # the j_* columns sample J_s at frequency equal to the row's
        # temperature value: on the shared log axis this exposes the
        # low-frequency weight difference between the two spectra
        rows.append([t,
                     qfi_gaussian(ohmic, probe, t),
                     qfi_gaussian(super_ohmic, probe, t),
                     spectral_density(ohmic, t),
                     spectral_density(super_ohmic, t)])
    header = ["temperature", "qfi_ohmic_s1", "qfi_super_ohmic_s2",
              "j_ohmic_at_t", "j_super_ohmic_at_t"]
    meta = {"command": "fig3", "model": "exp_cutoff", "gamma": args.gamma,
            "omega_c": args.omega_c, "probe_freq": 1.0}
    _emit(args, meta, header, rows)
    return 0


def cmd_star(args) -> int:
    model = _model_from_args(args)
    probe = ProbeSpec(args.probe_freq)
    base = discretize_bath(model, args.n_modes, args.omega_max, probe.omega0)
    if args.start is not None or args.stop is not None:
        scales = _grid(args, "scale")
    else:
        scales = np.array([1.0])
    rows = []
    for G in scales:
        G = float(G)
        star = base.with_scale(G)
        modes = normal_modes(star)
        cov = reduced_probe_covariance(star, args.temp, modes)
        qs = star_qfi(star, args.temp, modes)
        if G > 0.0:
            scaled = SpectralModel(model.variant, model.gamma * G * G,
                                   model.omega_c, model.s, model.numeric_only)
            ref = covariance_numeric(scaled, probe, args.temp)
        else:
            ref = thermal_covariance(probe, args.temp)
        violations = 0
        if G > 0.0:
            dl = eigenvalue_coupling_derivatives(star, modes)
            om2 = star.shifted_freq_sq
            for lam, d in zip(modes.eigenvalues, dl):
                if d > 0.0 and lam < om2 or d < 0.0 and lam > om2:
                    violations += 1
        rows.append([G, cov.sigma_xx, cov.sigma_pp, ref.sigma_xx,
                     ref.sigma_pp, qs, float(violations)])
    header = ["coupling_scale", "sigma_xx_star", "sigma_pp_star",
              "sigma_xx_continuum", "sigma_pp_continuum", "qfi_star",
              "deriv_sign_violations"]
    meta = {"command": "star", "model": model.variant, "gamma": model.gamma,
            "omega_c": model.omega_c, "s": model.s, "temp": args.temp,
            "n_modes": args.n_modes, "omega_max": args.omega_max}
    _emit(args, meta, header, rows)
    return 0


def _add_model_flags(p):
    p.add_argument("--model", choices=["lorentz-drude", "exp-cutoff"],
                   default="lorentz-drude")
    p.add_argument("--gamma", type=float, default=0.1)
    p.add_argument("--omega-c", type=float, default=100.0)
    p.add_argument("--s", type=float, default=1.0,
                   help="Ohmicity exponent (exp-cutoff only)")
    p.add_argument("--probe-freq", type=float, default=1.0)


def _add_output_flags(p):
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", default=None, help="output path (default stdout)")


def _add_grid_flags(p):
    p.add_argument("--from", dest="start", type=float, default=None)
    p.add_argument("--to", dest="stop", type=float, default=None)
    p.add_argument("--points", type=int, default=20)
    p.add_argument("--log", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="coldprobe",
        description="Steady state and thermometric precision of a quantum "
                    "Brownian probe (units: hbar = k_B = 1)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("covariance", help="stationary covariance matrix")
    _add_model_flags(p)
    _add_output_flags(p)
    p.add_argument("--temp", type=float, required=True)
    p.add_argument("--route", choices=["numeric", "analytic", "lowT", "both"],
                   default="both")
    p.set_defaults(func=cmd_covariance)

    p = sub.add_parser("qfi", help="QFI / sensitivity sweep")
    _add_model_flags(p)
    _add_output_flags(p)
    _add_grid_flags(p)
    p.add_argument("--temp", type=float, default=0.1)
    p.add_argument("--axis", choices=["temp", "gamma"], default="temp")
    p.set_defaults(func=cmd_qfi)

    p = sub.add_parser("sensitivity", help="observable thermal sensitivity")
    _add_model_flags(p)
    _add_output_flags(p)
    _add_grid_flags(p)
    p.add_argument("--temp", type=float, default=0.1)
    p.add_argument("--axis", choices=["temp", "gamma"], default="temp")
    p.add_argument("--observable", choices=["energy", "x-squared"],
                   default="energy")
    p.set_defaults(func=cmd_sensitivity,
                   observable_map={"energy": "energy", "x-squared": "x_squared"})

    p = sub.add_parser("fig1a", help="dT/T vs temperature")
    _add_output_flags(p)
    p.add_argument("--omega-c", type=float, default=100.0)
    p.add_argument("--t-min", type=float, default=1e-3)
    p.add_argument("--t-max", type=float, default=10.0)
    p.add_argument("--points", type=int, default=40)
    p.set_defaults(func=cmd_fig1a)

    p = sub.add_parser("fig1b", help="QFI vs coupling strength")
    _add_output_flags(p)
    p.add_argument("--omega-c", type=float, default=100.0)
    p.add_argument("--g-min", type=float, default=1e-2)
    p.add_argument("--g-max", type=float, default=10.0)
    p.add_argument("--points", type=int, default=40)
    p.set_defaults(func=cmd_fig1b)

    p = sub.add_parser("fig2", help="QFI and sensitivities vs temperature")
    _add_output_flags(p)
    p.add_argument("--omega-c", type=float, default=100.0)
    p.add_argument("--t-min", type=float, default=1e-2)
    p.add_argument("--t-max", type=float, default=1.0)
    p.add_argument("--points", type=int, default=20)
    p.set_defaults(func=cmd_fig2)

    p = sub.add_parser("fig3", help="Ohmic vs super-Ohmic QFI")
    _add_output_flags(p)
    p.add_argument("--gamma", type=float, default=0.1)
    p.add_argument("--omega-c", type=float, default=100.0)
    p.add_argument("--t-min", type=float, default=1e-3)
    p.add_argument("--t-max", type=float, default=1.0)
    p.add_argument("--points", type=int, default=20)
    p.set_defaults(func=cmd_fig3)

    p = sub.add_parser("star", help="finite star-system surrogate")
    _add_model_flags(p)
    _add_output_flags(p)
    _add_grid_flags(p)
    p.add_argument("--temp", type=float, default=0.1)
    p.add_argument("--n-modes", type=int, default=512)
    p.add_argument("--omega-max", type=float, default=2000.0)
    p.set_defaults(func=cmd_star)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.command == "sensitivity":
        args.observable = args.observable_map[args.observable]
    try:
        return args.func(args)
    except ColdprobeError as exc:
        print(f"coldprobe: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
