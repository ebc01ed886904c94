"""Command-line front end.

Unsuffixed flags take SI values (``--rc 1e-7`` is metres); flags with a unit
suffix take laboratory units (``--rc-cm 1e-5``, ``--t2-mk 10``,
``--pressure-mbar 1e-6``). Output is an aligned table, or CSV with ``--csv``.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import heating, spectrum, thermal
from .errors import CslHeatError, DomainError
from .heating import BUDGET_PRESETS, DESIGN_BUDGET, HeatingBudget
from .materials import builtin_registry, dump_materials, load_materials
from .quantities import DEFAULT_CONSTANTS, Constants
from .report import LAMBDA_SUGGESTED, reproduce_paper

COMMANDS = ("lambda-eff", "heating", "bound", "sphere", "rod", "sweep", "reproduce-paper", "materials")

# sweepable parameter -> (default command, argparse dest, needs this spectrum)
SWEEPABLE = {
    "tc": ("lambda-eff", "tc", "gaussian"),
    "omega-c": ("lambda-eff", "omega_c", "step"),
    "lambda": ("lambda-eff", "lam", None),
    "rc": ("lambda-eff", "rc", None),
    "vs": ("lambda-eff", "vs", None),
    "pressure": ("sphere", "pressure_mbar", None),
    "t2": ("sphere", "t2", None),
    "radius": ("sphere", "radius", None),
    "length": ("rod", "length", None),
    "q-abs": ("rod", "q_abs", None),
}


class Table:
    """Rows under a fixed header; the header carries units."""

    def __init__(self, columns):
        self.columns = list(columns)
        self.rows = []

    def add(self, *values):
        if len(values) != len(self.columns):
            raise ValueError("row length does not match header")
        self.rows.append(list(values))


def _cell(v, csv_mode):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "PASS" if v else "FAIL"
    if isinstance(v, (float, np.floating)):
        return repr(float(v)) if csv_mode else f"{float(v):.6g}"
    return str(v)


def emit(table, csv_path, stream=None):
    stream = stream or sys.stdout
    if csv_path is not None:
        out = stream if csv_path == "-" else open(csv_path, "w", newline="")
        try:
            w = csv.writer(out, lineterminator="\n")
            w.writerow(table.columns)
            for row in table.rows:
                w.writerow([_cell(v, True) for v in row])
        finally:
            if out is not stream:
                out.close()
        return
    cells = [table.columns] + [[_cell(v, False) for v in row] for row in table.rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(table.columns))]
    for n, r in enumerate(cells):
        stream.write("  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() + "\n")
        if n == 0:
            stream.write("  ".join("-" * w for w in widths) + "\n")


# -- argument helpers ------------------------------------------------------------

def _pick(args, name, lab_name, lab_factor, default=None):
    si, lab = getattr(args, name, None), getattr(args, lab_name, None)
    if si is not None and lab is not None:
        raise DomainError(f"give only one of --{name.replace('_', '-')} and --{lab_name.replace('_', '-')}")
    if lab is not None:
        return lab * lab_factor
    return default if si is None else si


def _registry(args):
    if getattr(args, "materials", None):
        return load_materials(Path(args.materials))
    return builtin_registry()


def _constants(args):
    hbar = getattr(args, "hbar", None)
    return Constants(hbar=hbar) if hbar is not None else DEFAULT_CONSTANTS


def _budget(text):
    if text in BUDGET_PRESETS:
        return BUDGET_PRESETS[text]
    try:
        return HeatingBudget(float(text), "custom")
    except ValueError:
        raise DomainError(f"budget must be a preset ({', '.join(BUDGET_PRESETS)}) or a number in W/kg") from None


def _rc(args):
    return _pick(args, "rc", "rc_cm", 1e-2, DEFAULT_CONSTANTS.r_c)


def _quad(args):
    if args.tol is None and getattr(args, "w_max", None) is None:
        return spectrum.QuadratureSettings()
    return spectrum.QuadratureSettings(
        rel_tol=args.tol if args.tol is not None else 1e-8,
        w_max=args.w_max if getattr(args, "w_max", None) is not None else 8.0,
    )


def _heating_H(args, material, constants):
    """Volumetric heating (W/m^3) from either --lambda-eff or --budget."""
    if args.lambda_eff is not None:
        if args.budget is not None:
            raise DomainError("give only one of --lambda-eff and --budget")
        return heating.volumetric_heating(args.lambda_eff, _rc(args), material.density, constants)
    budget = _budget(args.budget) if args.budget is not None else DESIGN_BUDGET
    return heating.budget_volumetric_heating(budget, material.density)


def _material(args, reg, default):
    name = args.material or default
    m = reg[name]
    if getattr(args, "density_g_cm3", None) is not None or getattr(args, "k0", None) is not None:
        from dataclasses import replace

        cond = m.conductivity
        if args.k0 is not None or args.beta is not None:
            if args.k0 is None or args.beta is None:
                raise DomainError("--k0 and --beta must be given together")
            cond = thermal.PowerLawConductivity(args.k0, args.beta)
        dens = args.density_g_cm3 * 1e3 if args.density_g_cm3 is not None else m.density
        m = replace(m, density=dens, conductivity=cond, name=f"{m.name} (modified)")
    return m


# -- commands --------------------------------------------------------------------

def _spectrum(args):
    kind = args.spectrum
    if kind == "white":
        return spectrum.White(args.lam)
    if kind == "gaussian":
        if args.tc is None:
            raise DomainError("--spectrum gaussian needs --tc")
        return spectrum.GaussianCutoff(args.lam, args.tc)
    if kind == "step":
        if args.omega_c is None:
            raise DomainError("--spectrum step needs --omega-c")
        return spectrum.StepCutoff(args.lam, args.omega_c)
    if args.spectrum_file is None:
        raise DomainError("--spectrum table needs --spectrum-file")
    return spectrum.TabulatedSpectrum.from_file(Path(args.spectrum_file))


def _dispersion(args):
    if args.dispersion_file is not None:
        return spectrum.TabulatedDispersion.from_file(Path(args.dispersion_file))
    if args.vs is not None:
        return spectrum.LinearDispersion(args.vs)
    m = _registry(args)[args.material or "copper"]
    if m.sound_speed is None:
        raise DomainError(f"material {m.name!r} has no sound speed; pass --vs")
    return spectrum.LinearDispersion(m.sound_speed)


LAMBDA_EFF_COLUMNS = (
    "spectrum", "lambda [1/s]", "r_c [m]", "v_s [m/s]", "lambda_eff [1/s]",
    "closed_form [1/s]", "rel_diff", "lambda_eff/lambda",
)


def row_lambda_eff(args):
    s, d, r_c = _spectrum(args), _dispersion(args), _rc(args)
    val = spectrum.lambda_eff(s, d, r_c, _quad(args))
    vs = getattr(d, "v_s", None)
    closed = None
    if vs is not None and isinstance(s, (spectrum.White, spectrum.GaussianCutoff)):
        closed = spectrum.lambda_eff_gaussian_closed_form(s.lam, vs, getattr(s, "t_c", 0.0), r_c)
    diff = abs(val - closed) / closed if closed else None
    ratio = val / s.supremum if s.supremum > 0 else None
    return [args.spectrum, s.supremum, r_c, vs, val, closed, diff, ratio]


HEATING_COLUMNS = (
    "lambda_eff [1/s]", "r_c [m]", "dE/dt/dM [W/kg]", "dE/dt/dM [MeV/(g*s)]", "M [kg]", "dE/dt [W]",
    "rho [kg/m3]", "H [W/cm3]",
)


def row_heating(args):
    c = _constants(args)
    r_c = _rc(args)
    lam = args.lambda_eff if args.lambda_eff is not None else LAMBDA_SUGGESTED
    per_mass = heating.specific_heating_rate(lam, r_c, c)
    rho = None
    if args.density_g_cm3 is not None:
        rho = args.density_g_cm3 * 1e3
    elif args.material:
        rho = _registry(args)[args.material].density
    H = heating.volumetric_heating(lam, r_c, rho, c) * 1e-6 if rho else None
    return [lam, r_c, per_mass, per_mass * 1e-3 * c.mev_per_joule, args.mass,
            heating.total_heating_rate(lam, r_c, args.mass, c), rho, H]


BOUND_COLUMNS = ("budget", "specific_power [W/kg]", "r_c [m]", "lambda_eff_max [1/s]", "lambda [1/s]",
                 "c = v_s t_c / r_c", "t_c [s]")


def row_bound(args):
    c = _constants(args)
    budget = _budget(args.budget or "cryostat-residual")
    r_c = _rc(args)
    bound = heating.invert_bound(budget, r_c, c)
    ratio = t_c = None
    if args.lam is not None:
        vs = args.vs if args.vs is not None else _registry(args)[args.material or "copper"].sound_speed
        if vs is None:
            raise DomainError("cutoff inversion needs a sound speed; pass --vs")
        ratio, t_c = spectrum.invert_gaussian_cutoff(args.lam, bound, vs, r_c)
    return [budget.label, budget.specific_power, r_c, bound, args.lam, ratio, t_c]


SPHERE_COLUMNS = (
    "material", "R [m]", "H [W/cm3]", "flux [W/cm2]", "T2 [mK]", "T1 [mK]", "T1-T2 [mK]",
    "T_center [mK]", "center gap [mK]", "residual [W/cm2]",
)


def row_sphere(args):
    c = _constants(args)
    m = _material(args, _registry(args), "lead")
    R = _pick(args, "radius", "radius_cm", 1e-2, 0.5)
    H = _heating_H(args, m, c)
    T1 = _pick(args, "t1", "t1_mk", 1e-3)
    T2 = _pick(args, "t2", "t2_mk", 1e-3, 0.0)
    residual = None
    if T1 is None:
        env = thermal.TransportEnv(
            emissivity=args.emissivity if args.emissivity is not None else m.emissivity,
            accommodation=args.accommodation,
            pressure=args.pressure_mbar * 100.0,
            wall_temperature=T2,
        )
        res = thermal.solve_surface_temperature(R, H, env, rtol=args.tol or 1e-10, constants=c)
        T1, residual = res.surface_or_far_temperature, res.residual * 1e-4
        dT = (T1 - T2) * 1e3
    else:
        dT = None
        T2 = None
    Tc = gap = None
    if m.conductivity is not None:
        Tc = thermal.sphere_center_temperature(R, H, m.conductivity, T1) * 1e3
        gap = thermal.sphere_center_temperature(R, H, m.conductivity, 0.0) * 1e3
    return [m.name, R, H * 1e-6, thermal.q_sphere_surface(R, H) * 1e-4,
            None if T2 is None else T2 * 1e3, T1 * 1e3, dT, Tc, gap, residual]


ROD_COLUMNS = ("material", "L [m]", "H [W/cm3]", "q_abs [W/cm2]", "T_near [mK]", "T_far [mK]", "far gap [mK]")


def row_rod(args):
    c = _constants(args)
    reg = _registry(args)
    m = _material(args, reg, "torlon 4203")
    if m.conductivity is None:
        raise DomainError(f"material {m.name!r} has no thermal conductivity; pass --k0 and --beta")
    L = _pick(args, "length", "length_cm", 1e-2, 0.5)
    H = _heating_H(args, m, c)
    T_near = _pick(args, "t_near", "t_near_mk", 1e-3, 0.0)
    q_abs = args.q_abs or 0.0
    if args.absorber_material is not None:
        if args.q_abs is not None:
            raise DomainError("give either --q-abs or an absorber, not both")
        if args.absorber_volume_cm3 is None or args.rod_area_cm2 is None:
            raise DomainError("an absorber needs --absorber-volume-cm3 and --rod-area-cm2")
        absorber = reg[args.absorber_material]
        H_abs = _heating_H(args, absorber, c)
        q_abs = thermal.absorber_flux(H_abs, args.absorber_volume_cm3 * 1e-6, args.rod_area_cm2 * 1e-4)
    far = thermal.rod_with_absorber_far_temperature(L, H, q_abs, m.conductivity, T_near)
    gap = thermal.rod_with_absorber_far_temperature(L, H, q_abs, m.conductivity, 0.0)
    return [m.name, L, H * 1e-6, q_abs * 1e-4, T_near * 1e3, far * 1e3, gap * 1e3]


ROWS = {
    "lambda-eff": (LAMBDA_EFF_COLUMNS, row_lambda_eff),
    "heating": (HEATING_COLUMNS, row_heating),
    "bound": (BOUND_COLUMNS, row_bound),
    "sphere": (SPHERE_COLUMNS, row_sphere),
    "rod": (ROD_COLUMNS, row_rod),
}


def cmd_single(args):
    columns, fn = ROWS[args.command]
    t = Table(columns)
    t.add(*fn(args))
    emit(t, args.csv)
    return 0


def sweep_values(scale, start, stop, count):
    if count < 2:
        raise DomainError("--count must be >= 2")
    if not start < stop:
        raise DomainError("--start must be < --stop")
    if scale == "log":
        if start <= 0:
            raise DomainError("log scale needs --start > 0")
        return np.geomspace(start, stop, count)
    return np.linspace(start, stop, count)


def _sweep_point(job):
    command, args = job
    return ROWS[command][1](args)


def cmd_sweep(args, rest, parser):
    command, dest, needs = SWEEPABLE[args.parameter]
    command = args.target or command
    sub = _subparsers(parser)[command]
    base = sub.parse_args(rest)
    base.command = command
    if needs is not None and getattr(base, "spectrum", needs) != needs:
        base.spectrum = needs
    if not hasattr(base, dest):
        raise DomainError(f"{command!r} has no parameter {args.parameter!r}")
    values = sweep_values(args.scale, args.start, args.stop, args.count)
    jobs = []
    for v in values:
        a = argparse.Namespace(**vars(base))
        setattr(a, dest, float(v))
        for lab in (dest + "_cm", dest + "_mk"):
            if hasattr(a, lab):
                setattr(a, lab, None)
        jobs.append((command, a))
    if args.jobs and args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            rows = list(ex.map(_sweep_point, jobs))
    else:
        rows = [_sweep_point(j) for j in jobs]
    t = Table(["index", f"{args.parameter} (swept)"] + list(ROWS[command][0]))
    for i, (v, row) in enumerate(zip(values, rows)):
        t.add(i, float(v), *row)
    emit(t, args.csv if args.csv is not None else "-")
    return 0


def cmd_reproduce(args):
    checks = reproduce_paper(_constants(args))
    t = Table(["name", "expected", "computed", "unit", "tolerance", "rel_error", "pass"])
    for ch in checks:
        t.add(ch.name, ch.expected, ch.computed, ch.unit, ch.tolerance, ch.rel_error, ch.passed)
    emit(t, args.csv)
    failed = sum(not ch.passed for ch in checks)
    if args.csv is None:
        print(f"\n{len(checks) - failed}/{len(checks)} checks pass")
    return 1 if failed else 0


def cmd_materials(args):
    reg = _registry(args)
    if args.dump:
        sys.stdout.write(dump_materials(reg))
        return 0
    t = Table(["name", "density [g/cm3]", "sound_speed [m/s]", "k0_hat [W/m]", "beta", "emissivity"])
    for name in reg:
        m = reg[name]
        k = m.conductivity
        t.add(m.name, m.density_g_cm3, m.sound_speed, k and k.k0_hat, k and k.beta, m.emissivity)
    emit(t, args.csv)
    return 0


# -- parser ----------------------------------------------------------------------

def _common():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--materials", metavar="PATH", help="material file merged over the builtins")
    p.add_argument("--csv", nargs="?", const="-", metavar="PATH", help="write CSV (to PATH or stdout)")
    p.add_argument("--tol", type=float, help="relative tolerance for quadrature / root finding")
    p.add_argument("--config", metavar="PATH", help="flat key = value file of defaults for this command")
    p.add_argument("--hbar", type=float, help=argparse.SUPPRESS)
    return p


def _add_rc(p):
    p.add_argument("--rc", type=float, help="noise correlation length, m (default 1e-7)")
    p.add_argument("--rc-cm", type=float, help="noise correlation length, cm")


def _add_heat_source(p):
    p.add_argument("--budget", help=f"heating budget: preset ({', '.join(BUDGET_PRESETS)}) or W/kg; default earth-unknown")
    p.add_argument("--lambda-eff", type=float, help="effective coupling, 1/s (instead of --budget)")
    _add_rc(p)


def _add_body(p, default):
    p.add_argument("--material", help=f"material name (default {default})")
    p.add_argument("--density-g-cm3", type=float, help="override density, g/cm^3")
    p.add_argument("--k0", type=float, help="override k0_hat, W m^-1 K^-(1+beta)")
    p.add_argument("--beta", type=float, help="override conductivity exponent")


def build_parser():
    parser = argparse.ArgumentParser(prog="cslheat", description=__doc__.split("\n")[0])
    subs = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)
    common = _common()

    p = subs.add_parser("lambda-eff", parents=[common], help="effective coupling for a noise spectrum")
    p.add_argument("--spectrum", choices=("white", "gaussian", "step", "table"), default="white")
    p.add_argument("--lambda", dest="lam", type=float, default=LAMBDA_SUGGESTED, help="coupling, 1/s")
    p.add_argument("--tc", type=float, help="Gaussian correlation time, s")
    p.add_argument("--omega-c", type=float, help="step cutoff angular frequency, rad/s")
    p.add_argument("--spectrum-file", metavar="PATH", help="two columns: omega [rad/s], lambda [1/s]")
    p.add_argument("--vs", type=float, help="sound speed, m/s (linear dispersion)")
    p.add_argument("--material", help="take the sound speed from a material (default copper)")
    p.add_argument("--dispersion-file", metavar="PATH", help="two columns: q [1/m], omega [rad/s]")
    p.add_argument("--w-max", type=float, help="radial truncation of the integral (default 8)")
    _add_rc(p)

    p = subs.add_parser("heating", parents=[common], help="heating rates for a coupling")
    p.add_argument("--lambda-eff", type=float, help="effective coupling, 1/s (default 10^-7.7)")
    p.add_argument("--mass", type=float, default=1.0, help="body mass, kg")
    p.add_argument("--material", help="material for the volumetric rate")
    p.add_argument("--density-g-cm3", type=float, help="density for the volumetric rate, g/cm^3")
    _add_rc(p)

    p = subs.add_parser("bound", parents=[common], help="largest coupling a heating budget allows")
    p.add_argument("--budget", help=f"preset ({', '.join(BUDGET_PRESETS)}) or W/kg; default cryostat-residual")
    p.add_argument("--lambda", dest="lam", type=float, help="white coupling to suppress: also invert a Gaussian cutoff")
    p.add_argument("--vs", type=float, help="sound speed, m/s (default: copper)")
    p.add_argument("--material", help="take the sound speed from a material")
    _add_rc(p)

    p = subs.add_parser("sphere", parents=[common], help="self-heated sphere in a cryostat")
    _add_body(p, "lead")
    p.add_argument("--radius", type=float, help="m (default 0.5)")
    p.add_argument("--radius-cm", type=float)
    _add_heat_source(p)
    p.add_argument("--t1", type=float, help="fix the surface temperature, K (skips the transport balance)")
    p.add_argument("--t1-mk", type=float)
    p.add_argument("--t2", type=float, help="wall temperature, K (default 0)")
    p.add_argument("--t2-mk", type=float)
    p.add_argument("--emissivity", type=float, help="default: material emissivity")
    p.add_argument("--accommodation", type=float, default=0.02)
    p.add_argument("--pressure-mbar", type=float, default=1e-6)

    p = subs.add_parser("rod", parents=[common], help="self-heated rod, optionally with an absorber")
    _add_body(p, "Torlon 4203")
    p.add_argument("--length", type=float, help="m (default 0.5)")
    p.add_argument("--length-cm", type=float)
    _add_heat_source(p)
    p.add_argument("--t-near", type=float, help="heat-sink temperature, K (default 0)")
    p.add_argument("--t-near-mk", type=float)
    p.add_argument("--q-abs", type=float, help="flux into the far end from an absorber, W/m^2")
    p.add_argument("--absorber-material")
    p.add_argument("--absorber-volume-cm3", type=float)
    p.add_argument("--rod-area-cm2", type=float)

    p = subs.add_parser(
        "sweep", parents=[common], help="sweep one parameter of another command; CSV out",
        description="Remaining arguments are passed to the swept command.",
    )
    p.add_argument("--parameter", required=True, choices=sorted(SWEEPABLE))
    p.add_argument("--target", choices=tuple(ROWS), help="command to sweep (default depends on the parameter)")
    p.add_argument("--scale", choices=("linear", "log"), default="linear")
    p.add_argument("--start", type=float, required=True)
    p.add_argument("--stop", type=float, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1, help="worker processes")

    subs.add_parser("reproduce-paper", parents=[common], help="check the published figures")

    p = subs.add_parser("materials", parents=[common], help="list known materials")
    p.add_argument("--dump", action="store_true", help="print in material-file format")
    return parser


def _subparsers(parser):
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            return action.choices
    raise LookupError


def _config_tokens(path):
    cp = configparser.ConfigParser(inline_comment_prefixes=("#", ";"), interpolation=None)
    try:
        cp.read_string("[config]\n" + Path(path).read_text())
    except (OSError, configparser.Error) as exc:
        raise DomainError(f"cannot read config {path}: {exc}") from None
    tokens = []
    for key, value in cp["config"].items():
        tokens += ["--" + key.replace("_", "-"), value]
    return tokens


def _split_config(argv):
    """Pull ``--config PATH`` out of argv; config values go before the flags so flags win."""
    argv = list(argv)
    for i, a in enumerate(argv):
        if a == "--config" and i + 1 < len(argv):
            path = argv[i + 1]
            del argv[i : i + 2]
            return argv, path
        if a.startswith("--config="):
            del argv[i]
            return argv, a.split("=", 1)[1]
    return argv, None


def run(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        argv, config = _split_config(argv)
        if config is not None and argv and argv[0] in COMMANDS:
            argv = argv[:1] + _config_tokens(config) + argv[1:]
        if argv and argv[0] == "sweep":
            args, rest = parser.parse_known_args(argv)
            return cmd_sweep(args, rest, parser)
        args = parser.parse_args(argv)
        if args.command == "reproduce-paper":
            return cmd_reproduce(args)
        if args.command == "materials":
            return cmd_materials(args)
        return cmd_single(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    except (CslHeatError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"cslheat: error: {msg}", file=sys.stderr)
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
