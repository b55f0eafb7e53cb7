"""Batch command-line front end.

Subcommands: density, localized, circuit, fresnel, momentum.  All output is
CSV/JSON written under --out; runs are deterministic for a given config and
seed.  Exit codes: 0 success, 2 input or validation error, 3 numerical
invariant violated.
"""

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import circuit as circ
from . import density as dens
from . import optics
from . import spectral as spec
from .errors import PhotonfluxError
from .units import UnitsConfig, units_for

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INVARIANT = 3


@dataclass(frozen=True)
class RunConfig:
    units: UnitsConfig
    grid: spec.KGrid1D
    out: Path
    seed: int


def _parse_grid(text: str) -> spec.KGrid1D:
    parts = text.split(",")
    if len(parts) != 3:
        raise PhotonfluxError("--grid expects N,dk,area")
    return spec.KGrid1D(n=int(parts[0]), dk=float(parts[1]), area=float(parts[2]))


def _parse_complex(text: str) -> complex:
    parts = [p.strip() for p in str(text).split(",")]
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise PhotonfluxError(f"cannot parse complex value {text!r} (use 're' or 're,im')")


def _write_json(path: Path, payload: dict) -> None:
    with open(path, "w") as fh:
        json.dump(payload, fh, sort_keys=True, indent=2)
        fh.write("\n")


def _load_state_spec(path: str, grid: spec.KGrid1D) -> spec.SpectralAmplitude:
    with open(path) as fh:
        obj = json.load(fh)
    return circ.state_from_spec(obj, grid)


def cmd_density(config: RunConfig, args) -> int:
    state = _load_state_spec(args.state, config.grid)
    t = args.time
    units = config.units
    field = dens.density_field(state, state, t, units)
    current = dens.current_field(state, state, t, units)
    fields = spec.synthesize_fields(state, t, units)

    number = spec.photon_number(state)
    if number > 0.0:
        # small enough that the centered-difference truncation error stays
        # below 1e-6 even for broadband pulses
        dt = config.grid.dx / (256.0 * units.c)
        residual = dens.continuity_residual(state, t, dt, units)
    else:
        residual = 0.0

    out = config.out
    out.mkdir(parents=True, exist_ok=True)
    dens.write_density_csv(
        out / "density.csv",
        field.x,
        field.rho,
        j=current.j,
        t=t,
        k_max=config.grid.k_max,
        units_mode=units.mode,
    )
    fields.write_csv(out / "fields.csv")

    total = field.total()
    summary = {
        "photon_number": number,
        "density_integral": total,
        "centroid": field.centroid(),
        "min_rho": float(field.rho.min()),
        "continuity_residual": residual,
        "time": t,
        "units": units.mode,
    }
    _write_json(out / "summary.json", summary)
    if number > 0.0 and abs(total - number) > 1e-8 * number:
        print(
            f"density integral {total!r} disagrees with photon number {number!r}",
            file=sys.stderr,
        )
        return EXIT_INVARIANT
    return EXIT_OK


def cmd_localized(config: RunConfig, args) -> int:
    if args.dim not in (1, 3):
        print("--dim must be 1 or 3", file=sys.stderr)
        return EXIT_INPUT
    k_max = args.k_max
    dt = args.delta_t
    units = config.units
    out = config.out
    out.mkdir(parents=True, exist_ok=True)

    if args.dim == 1:
        half = args.span / k_max
        u = np.linspace(-half, half, args.points)
        rho_plus = dens.localized_density_1d(u, k_max, config.grid.area)
        rho_phys = 2.0 * rho_plus.real
        dens.write_density_csv(
            out / "localized.csv",
            u,
            rho_phys,
            rho_plus=rho_plus,
            t=dt,
            k_max=k_max,
            units_mode=units.mode,
        )
        window = 50.0 / k_max
        summary = {
            "dim": 1,
            "k_max": k_max,
            "window_halfwidth": window,
            "tail_mass_physical": dens.tail_mass(rho_phys, u, window, center=0.0),
            "tail_mass_positive_frequency": dens.tail_mass(rho_plus, u, window, center=0.0),
            "rho_plus_at_zero": k_max / (2.0 * np.pi * config.grid.area),
            "units": units.mode,
        }
    else:
        shell = units.c * dt
        if shell <= 0:
            print("--delta-t must be positive for dim=3", file=sys.stderr)
            return EXIT_INPUT
        r = np.linspace(2.0 * shell / args.points, 2.0 * shell, args.points)
        rho_plus = dens.localized_density_3d_profile(r, dt, k_max, units.c)
        rho_phys = 2.0 * rho_plus.real
        dens.write_density_csv(
            out / "localized.csv",
            r,
            rho_phys,
            rho_plus=rho_plus,
            t=dt,
            k_max=k_max,
            units_mode=units.mode,
        )
        window = 10.0 / k_max
        summary = {
            "dim": 3,
            "k_max": k_max,
            "shell_radius": shell,
            "window_halfwidth": window,
            "shell_mass_fraction": dens.shell_mass_fraction(r, rho_phys, shell, window),
            "units": units.mode,
        }
    _write_json(out / "localized_summary.json", summary)
    return EXIT_OK


def cmd_circuit(config: RunConfig, args) -> int:
    netlist = circ.load_netlist(args.netlist, default_grid=config.grid)
    violations = circ.validate(netlist)
    if violations:
        for v in violations:
            print(f"violation: {v}", file=sys.stderr)
        return EXIT_INPUT
    pulse, ledger = circ.run_circuit(
        netlist, units=config.units, paper_convention=args.paper_convention
    )
    probs = circ.outcome_probabilities(pulse)
    conservation = pulse.total_probability() + pulse.absorbed
    result = {
        "detectors": {
            port: {"probability": rec.probability, "delay": rec.delay}
            for port, rec in pulse.ports.items()
        },
        "absorbed": pulse.absorbed,
        "conservation_sum": conservation,
        "conservation_defect": conservation - 1.0,
        "convention": "paper" if args.paper_convention else "default",
        "ledger": [
            {
                "element": row.element_id,
                "number_in": row.number_in,
                "number_out": row.number_out,
                "absorbed": row.absorbed,
            }
            for row in ledger.rows
        ],
        "units": config.units.mode,
    }
    if args.samples:
        result["samples"] = circ.sample_outcomes(pulse, config.seed, args.samples)
        result["seed"] = config.seed
    out = config.out
    out.mkdir(parents=True, exist_ok=True)
    _write_json(out / "circuit_result.json", result)
    if not args.paper_convention and abs(conservation - 1.0) > circ.CONSERVATION_TOL:
        print(
            f"conservation violated: detectors + absorbed = {conservation!r}",
            file=sys.stderr,
        )
        return EXIT_INVARIANT
    return EXIT_OK


def cmd_fresnel(config: RunConfig, args) -> int:
    n1 = _parse_complex(args.n1)
    n2 = _parse_complex(args.n2)
    budget = optics.interface_budget(n1, n2, paper_convention=args.paper_convention)
    result = {
        "n1": [n1.real, n1.imag],
        "n2": [n2.real, n2.imag],
        "r": [budget.r.real, budget.r.imag],
        "t": [budget.t.real, budget.t.imag],
        "reflectance": budget.reflectance,
        "transmittance": budget.transmittance,
        "conservation_sum": budget.total,
        "conservation_defect": budget.defect,
        "convention": budget.convention,
    }
    config.out.mkdir(parents=True, exist_ok=True)
    _write_json(config.out / "fresnel.json", result)
    if not args.paper_convention and n1.imag == 0.0 and n2.imag == 0.0:
        if abs(budget.defect) > 1e-12:
            print(f"flux conservation defect {budget.defect!r}", file=sys.stderr)
            return EXIT_INVARIANT
    return EXIT_OK


def cmd_momentum(config: RunConfig, args) -> int:
    state = _load_state_spec(args.state, config.grid)
    chi = _parse_complex(args.chi)
    report = optics.momentum_report(state, chi, config.units)
    result = {
        "photon_number": spec.photon_number(state),
        "p_abraham": report.p_abraham,
        "p_minkowski": report.p_minkowski,
        "minkowski_defined": report.minkowski_defined,
        "chi": [chi.real, chi.imag],
        "units": config.units.mode,
    }
    config.out.mkdir(parents=True, exist_ok=True)
    _write_json(config.out / "momentum.json", result)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="photonflux",
        description="One-photon density/current audits and optical-circuit runs.",
    )
    parser.add_argument("--units", choices=("natural", "si"), default="natural")
    parser.add_argument("--out", default="photonflux_out", help="output directory")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--grid", default="4096,1.0,1.0", help="N,dk,area")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("density", help="density/current arrays and conservation summary")
    p.add_argument("--state", required=True, help="state-spec JSON file")
    p.add_argument("--time", type=float, default=0.0)
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("localized", help="band-limited localized density closed forms")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--k-max", type=float, required=True)
    p.add_argument("--delta-t", type=float, default=0.0)
    p.add_argument("--points", type=int, default=4001)
    p.add_argument("--span", type=float, default=500.0, help="u-range in units of 1/k_max (dim=1)")
    p.set_defaults(func=cmd_localized)

    p = sub.add_parser("circuit", help="validate and run a netlist")
    p.add_argument("--netlist", required=True)
    p.add_argument("--samples", type=int, default=0)
    p.add_argument("--paper-convention", action="store_true")
    p.set_defaults(func=cmd_circuit)

    p = sub.add_parser("fresnel", help="interface coefficients and flux budget")
    p.add_argument("--n1", required=True)
    p.add_argument("--n2", required=True)
    p.add_argument("--paper-convention", action="store_true")
    p.set_defaults(func=cmd_fresnel)

    p = sub.add_parser("momentum", help="Abraham/Minkowski momentum report")
    p.add_argument("--state", required=True)
    p.add_argument("--chi", required=True)
    p.set_defaults(func=cmd_momentum)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = RunConfig(
            units=units_for(args.units),
            grid=_parse_grid(args.grid),
            out=Path(args.out),
            seed=args.seed,
        )
        return args.func(config, args)
    except (PhotonfluxError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
