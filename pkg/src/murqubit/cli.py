"""Command-line front end: ``murqubit {curve,simulate,oracle,pulses,verify,replay}``.

Every data command writes a CSV (comma separated, header row, floats with 12
significant digits, angles in radians unless ``--degrees``) plus a
``<out>.manifest.json`` sidecar that ``murqubit replay`` can re-run.

Exit codes: 0 success, 1 domain error, 2 I/O error, 3 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import math
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from ._svg import line_plot
from .errors import DegenerateTargets, DomainError, MurError
from .oracle import scan_region
from .pulses import RHO1_SETTINGS, RHO2_SETTINGS, compile_experiment, execute
from .simlab import NoiseModel, load_noise_config, sweep
from .bloch import prob
from .yuoh import additive_bound, mur_lower_bound, optimal_vectors, owc_errors, targets_for

EXIT_OK, EXIT_DOMAIN, EXIT_IO, EXIT_VERIFY = 0, 1, 2, 3

CURVE_COLUMNS = ["phi", "eps_a", "eps_b", "bound_eq1", "sum_ab", "bound_eq2", "h", "u_c", "u_d"]
SIM_COLUMNS = CURVE_COLUMNS + [
    "est_eps_a",
    "est_eps_b",
    "stderr_a",
    "stderr_b",
    "pA",
    "pB",
    "pS_pp",
    "pS_pm",
    "pS_mp",
    "pS_pp_rho2",
]
ORACLE_COLUMNS = [
    "eps_a",
    "min_eps_b",
    "analytic_eps_b",
    "deviation",
    "c_x",
    "c_y",
    "c_z",
    "d_x",
    "d_y",
    "d_z",
    "f_cd",
]
PULSE_COLUMNS = ["phi", "state", "setting", "theta1", "phi1", "theta2", "phi2", "p_pulse", "p_bloch", "status"]
ANGLE_COLUMNS = {"phi", "theta1", "phi1", "theta2", "phi2"}


class VerificationFailed(Exception):
    pass


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    v = float(v)
    return format(0.0 if v == 0.0 else v, ".12g")


def write_csv(path: Path, columns, rows, degrees: bool = False) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(columns)
        for row in rows:
            out = []
            for col, v in zip(columns, row):
                if degrees and col in ANGLE_COLUMNS and isinstance(v, float):
                    v = math.degrees(v)
                out.append(_fmt(v))
            w.writerow(out)


def sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def write_manifest(command: str, params: dict, outputs: list[Path], argv: list[str]) -> Path:
    manifest = {
        "command": command,
        "parameters": params,
        "seed": params.get("seed"),
        "tool_version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "argv": argv,
        "outputs": {str(p): sha256(p) for p in outputs},
    }
    path = outputs[0].with_name(outputs[0].name + ".manifest.json")
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


def phi_grid(steps: int) -> np.ndarray:
    if steps < 2:
        raise DomainError("--phi-steps must be at least 2")
    return np.linspace(0.0, np.pi / 2, steps)


def _curve_row(s, a, b, phi):
    ea, eb = owc_errors(s, phi)
    try:
        tp = optimal_vectors(a, b, phi)
        h, u_c, u_d = tp.h, tp.u_c, tp.u_d
    except DegenerateTargets:
        h, u_c, u_d = 1.0, 0.0, 0.0
    return [float(phi), ea, eb, mur_lower_bound(s, phi), ea + eb, additive_bound(s), h, u_c, u_d]


def cmd_curve(sin_chi: float, phi_steps: int, out: Path, degrees=False, svg=False) -> list[Path]:
    a, b = targets_for(sin_chi)
    rows = [_curve_row(sin_chi, a, b, phi) for phi in phi_grid(phi_steps)]
    write_csv(out, CURVE_COLUMNS, rows, degrees)
    outputs = [out]
    if svg:
        outputs.append(_svg(out, f"optimal errors, sin chi = {sin_chi:.4g}", "phi", "error", [
            ("eps_a", [r[0] for r in rows], [r[1] for r in rows], "line"),
            ("eps_b", [r[0] for r in rows], [r[2] for r in rows], "line"),
            ("eps_a + eps_b", [r[0] for r in rows], [r[4] for r in rows], "line"),
        ]))
    return outputs


def cmd_simulate(
    sin_chi: float,
    phi_steps: int,
    noise: NoiseModel,
    out: Path,
    exact=False,
    calibrate=True,
    bootstrap=False,
    workers=None,
    degrees=False,
    svg=False,
) -> list[Path]:
    if exact:
        noise = noise.replace(prep_fidelity=1.0, detection_flip=0.0, depolarize=0.0)
    data = sweep(sin_chi, phi_grid(phi_steps), noise, exact=exact, calibrate=calibrate, bootstrap=bootstrap, max_workers=workers)
    a, b = targets_for(sin_chi)
    rows = []
    for pt in data.points:
        est = pt.estimate
        rows.append(
            _curve_row(sin_chi, a, b, pt.tradeoff.phi)
            + [est.eps_a, est.eps_b, est.stderr_a, est.stderr_b]
            + [est.probability(k) for k in ("pA", "pB", "pS_pp@rho1", "pS_pm@rho1", "pS_mp@rho2", "pS_pp@rho2")]
        )
    write_csv(out, SIM_COLUMNS, rows, degrees)
    outputs = [out]
    if svg:
        phis = [r[0] for r in rows]
        outputs.append(_svg(out, f"simulated errors, sin chi = {sin_chi:.4g}", "phi", "error", [
            ("eps_a", phis, [r[1] for r in rows], "line"),
            ("eps_b", phis, [r[2] for r in rows], "line"),
            ("measured eps_a", phis, [r[9] for r in rows], "points"),
            ("measured eps_b", phis, [r[10] for r in rows], "points"),
        ]))
    return outputs


def cmd_oracle(sin_chi: float, n_ea: int, grid_res: float, out: Path, svg=False) -> list[Path]:
    a, b = targets_for(sin_chi)
    scan = scan_region(a, b, n_ea, grid_res)
    rows = []
    for p, ana in zip(scan.boundary, scan.analytic_eps_b):
        f = float(np.linalg.norm(p.c + p.d) + np.linalg.norm(p.c - p.d))
        rows.append([p.eps_a, p.eps_b, float(ana), p.eps_b - float(ana), *p.c, *p.d, f])
    write_csv(out, ORACLE_COLUMNS, rows)
    outputs = [out]
    if svg:
        outputs.append(_svg(out, f"admissible-region boundary, sin chi = {sin_chi:.4g}", "eps_a", "eps_b", [
            ("analytic", [r[0] for r in rows], [r[2] for r in rows], "line"),
            ("brute force", [r[0] for r in rows], [r[1] for r in rows], "points"),
        ]))
    return outputs


def cmd_pulses(sin_chi: float, phi_steps: int, out: Path, degrees=False) -> list[Path]:
    a, b = targets_for(sin_chi)
    rows = []
    for phi in phi_grid(phi_steps):
        programs = compile_experiment(a, b, phi)
        present = {p.state_label for p in programs}
        for state_label, labels in (("rho1", RHO1_SETTINGS), ("rho2", RHO2_SETTINGS)):
            if state_label not in present:
                rows.extend([float(phi), state_label, lbl, None, None, None, None, None, None, "degenerate"] for lbl in labels)
        for p in programs:
            rows.append([
                float(phi), p.state_label, p.label,
                p.prep.theta, p.prep.phase, p.measure.theta, p.measure.phase,
                execute(p), prob(p.effect, p.state), "ok",
            ])
    write_csv(out, PULSE_COLUMNS, rows, degrees)
    return [out]


def cmd_verify(as_json=False, numbers=None, stream=None) -> int:
    from .acceptance import run_all

    stream = stream or sys.stdout
    results = run_all(numbers)
    if as_json:
        payload = {"passed": all(r.passed for r in results), "criteria": [r.as_dict() for r in results]}
        stream.write(json.dumps(payload, indent=2) + "\n")
    else:
        for r in results:
            stream.write(r.line() + "\n")
        failed = [r for r in results if not r.passed]
        stream.write("all criteria passed\n" if not failed else f"failed: {', '.join(f'{r.number}. {r.name}' for r in failed)}\n")
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY


def _svg(out: Path, title, xlabel, ylabel, series) -> Path:
    path = out.with_suffix(".svg")
    path.write_text(line_plot(series, title, xlabel, ylabel), encoding="utf-8")
    return path


def _resolve_sin_chi(args) -> float:
    if args.chi is not None:
        if not 0.0 <= args.chi <= np.pi / 2:
            raise DomainError("--chi must lie in [0, pi/2]")
        return float(np.sin(args.chi))
    if not 0.0 <= args.sin_chi <= 1.0:
        raise DomainError("--sin-chi must lie in [0, 1]")
    return float(args.sin_chi)


def _resolve_noise(args) -> NoiseModel:
    noise = NoiseModel()
    if args.config:
        noise = load_noise_config(args.config, noise)
    overrides = {k: v for k, v in (("shots", args.shots), ("seed", args.seed)) if v is not None}
    return noise.replace(**overrides)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="murqubit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    target = argparse.ArgumentParser(add_help=False)
    grp = target.add_mutually_exclusive_group()
    grp.add_argument("--sin-chi", type=float, default=0.5, help="incompatibility sin chi of the targets (default 0.5)")
    grp.add_argument("--chi", type=float, default=None, help="angle between the targets in radians")
    target.add_argument("--out", type=Path, default=None, help="output CSV path")
    target.add_argument("--svg", action="store_true", help="also write an SVG plot next to the CSV")

    steps = argparse.ArgumentParser(add_help=False)
    steps.add_argument("--phi-steps", type=int, default=13, help="number of phi grid points on [0, pi/2]")
    steps.add_argument("--degrees", action="store_true", help="write angles in degrees")

    p = sub.add_parser("curve", parents=[target, steps], help="closed-form optimal error curve")
    p = sub.add_parser("simulate", parents=[target, steps], help="shot-noise simulation of the experiment")
    p.add_argument("--shots", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--config", type=Path, default=None, help="key=value noise configuration file")
    p.add_argument("--exact", action="store_true", help="noise-free exact probabilities, no sampling")
    p.add_argument("--raw", action="store_true", help="do not correct errors for the known SPAM contrast")
    p.add_argument("--bootstrap", action="store_true", help="bootstrap error bars instead of linear propagation")
    p.add_argument("--workers", type=int, default=None)

    p = sub.add_parser("oracle", parents=[target], help="brute-force scan of the admissible error region")
    p.add_argument("--n-ea", type=int, default=20)
    p.add_argument("--grid-res", type=float, default=1e-3)

    sub.add_parser("pulses", parents=[target, steps], help="carrier-pulse angles for every setting")

    p = sub.add_parser("verify", help="run the acceptance criteria")
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.add_argument("--only", type=str, default=None, help="comma-separated criterion numbers")

    p = sub.add_parser("replay", help="re-run a command from its manifest and compare digests")
    p.add_argument("manifest", type=Path)
    return parser


def _run(args, argv) -> int:
    if args.command == "verify":
        numbers = [int(x) for x in args.only.split(",")] if args.only else None
        return cmd_verify(args.json, numbers)
    if args.command == "replay":
        return replay(args.manifest)

    s = _resolve_sin_chi(args)
    out = args.out or Path(f"{args.command}.csv")
    params = {"sin_chi": s}
    if args.command == "curve":
        params.update(phi_steps=args.phi_steps, degrees=args.degrees, svg=args.svg)
        outputs = cmd_curve(s, args.phi_steps, out, args.degrees, args.svg)
    elif args.command == "simulate":
        noise = _resolve_noise(args)
        params.update(
            phi_steps=args.phi_steps, exact=args.exact, calibrate=not args.raw, bootstrap=args.bootstrap,
            degrees=args.degrees, svg=args.svg, **{k: getattr(noise, k) for k in noise.__dataclass_fields__},
        )
        outputs = cmd_simulate(
            s, args.phi_steps, noise, out, args.exact, not args.raw, args.bootstrap, args.workers, args.degrees, args.svg
        )
    elif args.command == "oracle":
        params.update(n_ea=args.n_ea, grid_res=args.grid_res, svg=args.svg)
        outputs = cmd_oracle(s, args.n_ea, args.grid_res, out, args.svg)
    else:
        params.update(phi_steps=args.phi_steps, degrees=args.degrees)
        outputs = cmd_pulses(s, args.phi_steps, out, args.degrees)
    write_manifest(args.command, params, outputs, _canonical_argv(argv, out))
    return EXIT_OK


def _canonical_argv(argv, out: Path) -> list[str]:
    argv = list(argv)
    if "--out" not in argv:
        argv += ["--out", str(out)]
    return argv


def replay(manifest_path: Path) -> int:
    manifest = json.loads(Path(manifest_path).read_text(encoding="utf-8"))
    argv = manifest["argv"]
    code = _run(build_parser().parse_args(argv), argv)
    if code != EXIT_OK:
        return code
    mismatched = [p for p, digest in manifest["outputs"].items() if sha256(Path(p)) != digest]
    for p in mismatched:
        print(f"digest mismatch: {p}", file=sys.stderr)
    return EXIT_VERIFY if mismatched else EXIT_OK


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(argv)
    try:
        return _run(args, argv)
    except MurError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
