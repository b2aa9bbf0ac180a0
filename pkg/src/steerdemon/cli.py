"""Command-line front end: figure data as CSV, steering verdicts as JSON.

Subcommands
    figure2     work of the general vs Pauli-restricted scheme over the
                state family (p sweep, one row per (p, eta))
    figure4     demon work and the unsteerable-demon bound, both
                normalized by the p = 1 maximum, over an eta sweep
    frontier    LP frontier of reachable (alpha, beta) vs the
                quarter-circle reference
    steer-check LHS feasibility verdict for a state and measurement pair
    work        one-shot demon work report
    concurrence Wootters concurrence of a two-qubit state

All CSV output carries a '#' metadata header echoing the configuration;
numbers are serialized with 12 significant digits, so identical configs
produce byte-identical files.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .lhs import analytic_bound, lhs_feasible, lhs_frontier, sphere_grid
from .machine import (
    DemonProtocol,
    Scheme,
    StateFamilyParams,
    assemblage,
    concurrence,
    demon_concurrence_gain,
    demon_work,
    state_family,
)
from .qubit import Hamiltonian, TwoQubitState, X_AXIS, Y_AXIS, Z_AXIS, pauli_decompose

AXES = {"x": X_AXIS, "y": Y_AXIS, "z": Z_AXIS}


class UsageError(ValueError):
    """Bad arguments or configuration; exits with code 1."""


@dataclass(frozen=True)
class RunConfig:
    """Sweep and solver settings shared by the subcommands."""

    omega0: float = 1.0
    eta_values: tuple[float, ...] = (-0.2, -0.5, -0.8)
    eta: float = 0.0
    p_values: tuple[float, ...] = (0.0, 0.7, 0.8, 0.9)
    p_steps: int = 101
    p_range: tuple[float, float] = (0.0, 1.0)
    eta_steps: int = 201
    eta_range: tuple[float, float] = (-1.0, 1.0)
    angle_steps: int = 21
    measurements: str = "xz"
    grid_n: int = 1000
    tolerance: float = 1e-9
    seed: int = 20260810
    out_dir: str = "out"

    def __post_init__(self):
        if self.omega0 <= 0:
            raise UsageError(f"omega0 must be positive, got {self.omega0}")
        if any(abs(e) > 1 for e in self.eta_values) or abs(self.eta) > 1:
            raise UsageError("eta values must lie in [-1, 1]")
        if self.p_steps < 2 or self.eta_steps < 2 or self.angle_steps < 2:
            raise UsageError("sweeps need at least 2 points")
        if self.grid_n < 6:
            raise UsageError("grid-n must be at least 6")
        if not self.tolerance > 0:
            raise UsageError("tolerance must be positive")
        if self.seed < 0:
            raise UsageError("seed must be a nonnegative integer")
        parse_measurements(self.measurements)

    def to_dict(self) -> dict:
        out = dataclasses.asdict(self)
        for key, val in out.items():
            if isinstance(val, tuple):
                out[key] = list(val)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        kwargs = {}
        for key, val in data.items():
            kwargs[key] = tuple(val) if isinstance(val, list) else val
        return cls(**kwargs)


def parse_measurements(spec: str) -> tuple[np.ndarray, np.ndarray]:
    """Parse a measurement pair like 'xz' or 'x,z' into unit vectors."""
    names = [s for s in spec.replace(",", "") if not s.isspace()]
    if len(names) != 2 or any(n not in AXES for n in names):
        raise UsageError(f"measurements must name two of x, y, z; got {spec!r}")
    return AXES[names[0]].copy(), AXES[names[1]].copy()


def _fmt(value: float) -> str:
    return f"{value:.12g}"


def _metadata(command: str, config: RunConfig) -> list[str]:
    cfg = json.dumps(config.to_dict(), sort_keys=True)
    return [
        f"# steerdemon {__version__}",
        f"# command: {command}",
        f"# config: {cfg}",
    ]


def _write_csv(path: Path, command: str, config: RunConfig, header: list[str], rows) -> Path:
    path = Path(path)
    if path.parent != Path(""):
        path.parent.mkdir(parents=True, exist_ok=True)
    lines = _metadata(command, config) + [",".join(header)]
    for row in rows:
        lines.append(",".join(cell if isinstance(cell, str) else _fmt(cell) for cell in row))
    path.write_text("\n".join(lines) + "\n", encoding="ascii", newline="\n")
    return path


def _dump_json(payload: dict, out: Path | None) -> str:
    text = json.dumps(payload, indent=2, sort_keys=True)
    if out is not None:
        out = Path(out)
        if out.parent != Path(""):
            out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text + "\n", encoding="ascii", newline="\n")
    return text


# ---------------------------------------------------------------------------
# Subcommand implementations
# ---------------------------------------------------------------------------

def cmd_figure2(config: RunConfig, out: Path | None = None) -> Path:
    """CSV of general vs restricted work over the family's p sweep."""
    n1, n2 = parse_measurements(config.measurements)
    H = Hamiltonian(config.omega0)
    ps = np.linspace(config.p_range[0], config.p_range[1], config.p_steps)
    rows = []
    for eta in config.eta_values:
        for p in ps:
            rho = state_family(StateFamilyParams(p=float(p), eta=float(eta)))
            general = demon_work(rho, DemonProtocol((n1, n2), Scheme.GENERAL_UNITARY), H)
            restricted = demon_work(rho, DemonProtocol((n1, n2), Scheme.PAULI_RESTRICTED), H)
            rows.append(
                (p, eta, general.total_work / config.omega0, restricted.total_work / config.omega0)
            )
    out = Path(out) if out else Path(config.out_dir) / "figure2.csv"
    return _write_csv(out, "figure2", config,
                      ["p", "eta", "work_general", "work_restricted"], rows)


def _family_work(p: float, eta: float, pair, omega0: float) -> float:
    rho = state_family(StateFamilyParams(p=p, eta=eta))
    H = Hamiltonian(omega0)
    return demon_work(rho, DemonProtocol(pair, Scheme.GENERAL_UNITARY), H).total_work


def cmd_figure4(config: RunConfig, out: Path | None = None) -> Path:
    """CSV of work and bound ratios, normalized by the p = 1 work.

    Both measurement pairs (x, z) and (x, y) are emitted.  Where the
    p = 1 normalizer vanishes (eta = -1) the ratios are written as nan.
    """
    etas = np.linspace(config.eta_range[0], config.eta_range[1], config.eta_steps)
    rows = []
    for pair_name in ("xz", "xy"):
        pair = parse_measurements(pair_name)
        for p in config.p_values:
            for eta in etas:
                top = _family_work(1.0, float(eta), pair, config.omega0)
                work = _family_work(float(p), float(eta), pair, config.omega0)
                bound = analytic_bound(float(eta), config.omega0)[0]
                if top > 1e-12:
                    ratio_work, ratio_bound = work / top, bound / top
                else:
                    ratio_work = ratio_bound = float("nan")
                rows.append((eta, p, ratio_work, ratio_bound, pair_name))
    out = Path(out) if out else Path(config.out_dir) / "figure4.csv"
    return _write_csv(out, "figure4", config,
                      ["eta", "p", "ratio_work", "ratio_bound", "measurement_pair"], rows)


def cmd_frontier(config: RunConfig, out: Path | None = None) -> Path:
    """CSV of the LP (alpha, beta) frontier against the cos/sin reference."""
    grid = sphere_grid(config.grid_n)
    angles = np.linspace(0.0, np.pi / 2, config.angle_steps)
    weights = [(float(np.cos(t)), float(np.sin(t))) for t in angles]
    cert = lhs_frontier(config.eta, X_AXIS, Y_AXIS, grid, weights)
    rows = [
        (pt.angle, pt.alpha, pt.beta, pt.alpha_ref, pt.beta_ref) for pt in cert.points
    ]
    out = Path(out) if out else Path(config.out_dir) / "frontier.csv"
    return _write_csv(out, "frontier", config,
                      ["weight_angle", "alpha", "beta", "alpha_ref", "beta_ref"], rows)


def load_state_file(path: Path) -> TwoQubitState:
    """Read a whitespace-separated 4x4 complex matrix and validate it."""
    try:
        mat = np.loadtxt(path, dtype=complex)
    except (OSError, UnicodeDecodeError):
        raise
    except Exception as exc:
        raise UsageError(f"could not parse state file {path}: {exc}") from None
    if mat.shape != (4, 4):
        raise UsageError(f"state file must hold a 4x4 matrix, got shape {mat.shape}")
    try:
        return pauli_decompose(mat)
    except ValueError as exc:
        raise UsageError(f"state file is not a density matrix: {exc}") from None


def resolve_state(family: tuple[float, float] | None, state_file: str | None) -> TwoQubitState:
    if (family is None) == (state_file is None):
        raise UsageError("provide exactly one of --family P ETA or --state-file PATH")
    if family is not None:
        return state_family(StateFamilyParams(p=family[0], eta=family[1]))
    return load_state_file(Path(state_file))


def cmd_steer_check(state: TwoQubitState, config: RunConfig, out: Path | None = None) -> dict:
    """LHS feasibility verdict for one state and measurement pair."""
    n1, n2 = parse_measurements(config.measurements)
    grid = sphere_grid(config.grid_n)
    result = lhs_feasible(
        (assemblage(state, n1), assemblage(state, n2)), grid, tol=config.tolerance
    )
    payload = {
        "verdict": result.verdict,
        "witness": None if result.witness is None else [float(v) for v in result.witness],
        "margin": result.margin,
        "grid_n": result.grid_n,
        "refined_grid_n": result.refined_grid_n,
        "refinement_confirmed": result.refinement_confirmed,
        "measurements": config.measurements,
    }
    text = _dump_json(payload, out)
    if out is None:
        print(text)
    return payload


def cmd_work(state: TwoQubitState, config: RunConfig, scheme: Scheme,
             out: Path | None = None) -> dict:
    """One-shot demon work and concurrence-gain report."""
    n1, n2 = parse_measurements(config.measurements)
    H = Hamiltonian(config.omega0)
    protocol = DemonProtocol((n1, n2), scheme)
    report = demon_work(state, protocol, H)
    ent = demon_concurrence_gain(state, protocol)
    payload = {
        "scheme": scheme.value,
        "omega0": config.omega0,
        "measurements": config.measurements,
        "total_work": report.total_work,
        "baseline_work": report.baseline_work,
        "work_gain": report.gain,
        "average_concurrence": ent.average_concurrence,
        "baseline_concurrence": ent.baseline_concurrence,
        "concurrence_gain": ent.gain,
    }
    text = _dump_json(payload, out)
    if out is None:
        print(text)
    return payload


def cmd_concurrence(state: TwoQubitState, out: Path | None = None) -> dict:
    payload = {"concurrence": concurrence(state.matrix)}
    text = _dump_json(payload, out)
    if out is None:
        print(text)
    return payload


# ---------------------------------------------------------------------------
# Argument handling
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); keep 1 for bad usage
        raise UsageError(message)


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", type=str, default=None, help="JSON config file")
    sub.add_argument("--omega0", type=float, default=None)
    sub.add_argument("--eta", type=float, nargs="+", default=None,
                     help="eta values (figure2) or a single eta (frontier)")
    sub.add_argument("--p-steps", type=int, default=None)
    sub.add_argument("--eta-steps", type=int, default=None)
    sub.add_argument("--angle-steps", type=int, default=None)
    sub.add_argument("--grid-n", type=int, default=None)
    sub.add_argument("--measurements", type=str, default=None)
    sub.add_argument("--seed", type=int, default=None)
    sub.add_argument("--out", type=str, default=None)


def _add_state_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--family", type=float, nargs=2, metavar=("P", "ETA"), default=None)
    sub.add_argument("--state-file", type=str, default=None)


def build_parser() -> _Parser:
    parser = _Parser(prog="steerdemon", description=__doc__.splitlines()[0])
    subs = parser.add_subparsers(dest="command", required=True)
    for name in ("figure2", "figure4", "frontier", "steer-check", "work", "concurrence"):
        sub = subs.add_parser(name)
        _add_common(sub)
        if name in ("steer-check", "work", "concurrence"):
            _add_state_args(sub)
        if name == "work":
            sub.add_argument("--scheme", choices=[s.value for s in Scheme],
                             default=Scheme.GENERAL_UNITARY.value)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    data: dict = {}
    if args.config:
        try:
            raw = Path(args.config).read_text()
        except OSError:
            raise
        try:
            loaded = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise UsageError(f"config file is not valid JSON: {exc}") from None
        if not isinstance(loaded, dict):
            raise UsageError("config file must hold a JSON object")
        data.update(loaded)
    overrides = {
        "omega0": args.omega0,
        "p_steps": args.p_steps,
        "eta_steps": args.eta_steps,
        "angle_steps": args.angle_steps,
        "grid_n": args.grid_n,
        "measurements": args.measurements,
        "seed": args.seed,
    }
    if args.eta is not None:
        overrides["eta_values"] = tuple(args.eta)
        overrides["eta"] = args.eta[0]
    data.update({k: v for k, v in overrides.items() if v is not None})
    return RunConfig.from_dict(data)


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = config_from_args(args)
    out = Path(args.out) if args.out else None
    if args.command == "figure2":
        print(cmd_figure2(config, out))
    elif args.command == "figure4":
        print(cmd_figure4(config, out))
    elif args.command == "frontier":
        print(cmd_frontier(config, out))
    elif args.command == "steer-check":
        state = resolve_state(tuple(args.family) if args.family else None, args.state_file)
        cmd_steer_check(state, config, out)
    elif args.command == "work":
        state = resolve_state(tuple(args.family) if args.family else None, args.state_file)
        cmd_work(state, config, Scheme(args.scheme), out)
    elif args.command == "concurrence":
        state = resolve_state(tuple(args.family) if args.family else None, args.state_file)
        cmd_concurrence(state, out)
    return 0


def main(argv=None) -> int:
    try:
        return run(argv)
    except OSError as exc:
        print(f"steerdemon: i/o error: {exc}", file=sys.stderr)
        return 2
    except (UsageError, ValueError) as exc:
        print(f"steerdemon: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
