"""Command line front end: solve, clone, sweep, pauli and verify.

Exit codes: 0 success, 1 usage or IO error, 2 infeasible scaling pair.
JSON numbers carry 12 significant digits, CSV numbers 9.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import cloner, pauli
from .gates import apply_circuit, apply_cnot, apply_hadamard, apply_ry, apply_rz, prepare_two_qubit
from .qstate import (
    StateVector,
    basis_state,
    bloch_vector,
    from_bloch,
    named_state,
    overlap,
    partial_trace,
    random_state,
    reorder,
    tensor,
    to_density,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INFEASIBLE = 2

CSV_HEADER = "s0,s1,feasible,margin,c1,c2,c4,theta2,theta4,fidelity0,fidelity1,residual_max"

_NAMED_SPECS = ("0", "1", "+", "-", "+i", "-i")


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default, which collides with the
    # infeasible-input code, so route usage failures to exit 1
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _parse_real(text: str) -> float:
    try:
        if "/" in text:
            num, den = text.split("/")
            return float(num) / float(den)
        return float(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a real number: {text!r}") from None


def _parse_state(text: str) -> StateVector:
    """Named state, 'theta,phi' Bloch angles, or 're0,im0,re1,im1' amplitudes."""
    if text in _NAMED_SPECS:
        return named_state(text, "a0")
    parts = text.split(",")
    try:
        values = [float(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad state spec {text!r}") from None
    if len(values) == 2:
        theta, phi = values
        amps = np.array([np.cos(theta / 2.0), np.exp(1j * phi) * np.sin(theta / 2.0)])
    elif len(values) == 4:
        amps = np.array([values[0] + 1j * values[1], values[2] + 1j * values[3]])
        norm = float(np.linalg.norm(amps))
        if norm < 1e-9:
            raise argparse.ArgumentTypeError(f"state spec {text!r} has zero norm")
        amps = amps / norm
    else:
        raise argparse.ArgumentTypeError(
            f"bad state spec {text!r}: use a named state, 'theta,phi' or 're0,im0,re1,im1'"
        )
    return StateVector(amps, ("a0",))


def _parse_complex(text: str) -> complex:
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"bad complex literal {text!r}: use 're' or 're,im'")


def _json_num(x: float) -> float:
    x = float(x)
    if x == 0.0:
        x = 0.0
    return float(f"{x:.12g}")


def _json_complex(z: complex) -> list[float]:
    return [_json_num(z.real), _json_num(z.imag)]


def _json_vector(values) -> list[list[float]]:
    return [_json_complex(complex(z)) for z in np.asarray(values).reshape(-1)]


def _json_matrix(matrix) -> list[list[list[float]]]:
    return [[_json_complex(complex(z)) for z in row] for row in np.asarray(matrix)]


def _csv_num(x: float) -> str:
    x = float(x)
    if x == 0.0:
        x = 0.0
    return format(x, ".9g")


def _emit_infeasible(pair: cloner.ScalingPair, fmt: str) -> int:
    if fmt == "json":
        print(
            json.dumps(
                {
                    "s0": _json_num(pair.s0),
                    "s1": _json_num(pair.s1),
                    "feasible": False,
                    "margin": _json_num(pair.margin),
                    "reason": pair.reason,
                },
                indent=2,
            )
        )
    else:
        print(
            f"infeasible: s0 = {_json_num(pair.s0)}, s1 = {_json_num(pair.s1)}, "
            f"margin = {_json_num(pair.margin)} ({pair.reason})"
        )
    return EXIT_INFEASIBLE


def _cmd_solve(args) -> int:
    pair = cloner.feasibility(args.s0, args.s1)
    if not pair.feasible:
        return _emit_infeasible(pair, args.format)
    prep = cloner.solve_prep(pair)
    if args.format == "json":
        payload = {
            "s0": _json_num(pair.s0),
            "s1": _json_num(pair.s1),
            "feasible": True,
            "margin": _json_num(pair.margin),
            "c1": _json_num(prep.c1),
            "c2": _json_num(prep.c2),
            "c4": _json_num(prep.c4),
            "theta1": _json_num(prep.theta1),
            "theta2": _json_num(prep.theta2),
            "theta4": _json_num(prep.theta4),
            "amplitudes": _json_vector(prep.as_amplitudes),
        }
        print(json.dumps(payload, indent=2))
    else:
        print(f"s0 = {_json_num(pair.s0)}  s1 = {_json_num(pair.s1)}  margin = {_json_num(pair.margin)}")
        print(f"c1 = {_json_num(prep.c1)}  theta1 = {_json_num(prep.theta1)}")
        print(f"c2 = {_json_num(prep.c2)}  theta2 = {_json_num(prep.theta2)}")
        print(f"c4 = {_json_num(prep.c4)}  theta4 = {_json_num(prep.theta4)}")
        amps = ", ".join(
            f"{_json_num(z.real)}{_json_num(z.imag):+}j" for z in prep.as_amplitudes
        )
        print(f"amplitudes: {amps}")
    return EXIT_OK


def _cmd_clone(args) -> int:
    pair = cloner.feasibility(args.s0, args.s1)
    if not pair.feasible:
        return _emit_infeasible(pair, "json")
    prep = cloner.solve_prep(pair)
    out = cloner.run_cloner(args.state, prep)
    payload = {
        "input": _json_vector(args.state.amplitudes),
        "s0_target": _json_num(pair.s0),
        "s1_target": _json_num(pair.s1),
        "margin": _json_num(pair.margin),
        "joint_labels": list(out.joint.labels),
        "joint": _json_vector(out.joint.amplitudes),
        "rho_a0": _json_matrix(out.rho_a0.entries),
        "rho_a1": _json_matrix(out.rho_a1.entries),
        "s0_est": _json_num(out.s0_est),
        "s1_est": _json_num(out.s1_est),
        "residual0": _json_num(out.residual0),
        "residual1": _json_num(out.residual1),
        "fidelity0": _json_num(out.fidelity0),
        "fidelity1": _json_num(out.fidelity1),
    }
    print(json.dumps(payload, indent=2))
    return EXIT_OK


def _sweep_values(step: float) -> list[float]:
    count = int(np.floor(1.0 / step + 1e-9))
    return [k * step for k in range(count + 1)]


def sweep_rows(step: float) -> list[str]:
    """CSV rows for the full grid, s0 outer and s1 inner, ascending."""
    probes = cloner.probe_states()
    rows = []
    for s0 in _sweep_values(step):
        for s1 in _sweep_values(step):
            pair = cloner.feasibility(s0, s1)
            lead = [_csv_num(s0), _csv_num(s1), "true" if pair.feasible else "false", _csv_num(pair.margin)]
            if not pair.feasible:
                rows.append(",".join(lead + [""] * 8))
                continue
            prep = cloner.solve_prep(pair)
            outs = [cloner.run_cloner(p, prep) for p in probes]
            residual_max = max(max(o.residual0, o.residual1) for o in outs)
            rows.append(
                ",".join(
                    lead
                    + [
                        _csv_num(prep.c1),
                        _csv_num(prep.c2),
                        _csv_num(prep.c4),
                        _csv_num(prep.theta2),
                        _csv_num(prep.theta4),
                        _csv_num(outs[0].fidelity0),
                        _csv_num(outs[0].fidelity1),
                        _csv_num(residual_max),
                    ]
                )
            )
    return rows


def _cmd_sweep(args) -> int:
    if not 0.0 < args.step <= 0.5:
        print("sweep: step must lie in (0, 0.5]", file=sys.stderr)
        return EXIT_USAGE
    text = "\n".join([CSV_HEADER] + sweep_rows(args.step)) + "\n"
    if args.out == "-":
        sys.stdout.write(text)
        return EXIT_OK
    try:
        with open(args.out, "w", newline="") as handle:
            handle.write(text)
    except OSError as exc:
        print(f"sweep: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def _cmd_pauli(args) -> int:
    raw = np.array([args.x1, args.x2, args.x3, args.x4], dtype=complex)
    norm = float(np.linalg.norm(raw))
    if norm < 1e-9:
        print("pauli: coefficients have zero norm", file=sys.stderr)
        return EXIT_USAGE
    if abs(norm - 1.0) > 1e-6:
        print(f"pauli: renormalizing input of norm {norm:.9g}", file=sys.stderr)
    coeffs = pauli.BellCoefficients(*(raw / norm))
    matrix = pauli.bell_decompose(pauli.run_pauli_cloner(coeffs))
    off_diagonal = matrix - np.diag(np.diag(matrix))
    max_off = float(np.max(np.abs(off_diagonal)))
    if max_off >= 1e-10:
        print(f"pauli: output is not Bell-diagonal (max off-diagonal {max_off:.3g})", file=sys.stderr)
        return EXIT_USAGE
    payload = {
        "input": _json_vector(coeffs.as_array()),
        "bell_order": list(pauli.BELL_NAMES),
        "coefficients": _json_matrix(matrix),
        "diagonal": _json_vector(np.diag(matrix)),
        "max_offdiagonal": _json_num(max_off),
    }
    print(json.dumps(payload, indent=2))
    return EXIT_OK


def _suite_state_algebra(rng: np.random.Generator, trials: int) -> tuple[int, int]:
    checks = failures = 0
    for _ in range(trials):
        single = random_state(("q0",), rng)
        double = random_state(("q1", "q2"), rng)
        joint = tensor(single, double)
        checks += 1
        failures += abs(float(np.linalg.norm(joint.amplitudes)) - 1.0) > 1e-12
        back = reorder(reorder(joint, ("q2", "q0", "q1")), joint.labels)
        checks += 1
        failures += float(np.max(np.abs(back.amplitudes - joint.amplitudes))) > 1e-12
        checks += 1
        failures += abs(abs(overlap(joint, back)) - 1.0) > 1e-12
        rho = to_density(single)
        rebuilt = from_bloch(bloch_vector(rho), "q0")
        checks += 1
        failures += float(np.max(np.abs(rebuilt.entries - rho.entries))) > 1e-12
        reduced = partial_trace(to_density(joint), ["q0", "q2"])
        checks += 1
        failures += reduced.labels != ("q0", "q2")
    return checks, failures


def _suite_gates(rng: np.random.Generator, trials: int) -> tuple[int, int]:
    checks = failures = 0
    for _ in range(trials):
        psi = random_state(("x", "y", "z"), rng)
        twice = apply_cnot(apply_cnot(psi, "x", "z"), "x", "z")
        checks += 1
        failures += float(np.max(np.abs(twice.amplitudes - psi.amplitudes))) > 1e-12
        squared = apply_hadamard(apply_hadamard(psi, "y"), "y")
        checks += 1
        failures += float(np.max(np.abs(squared.amplitudes - psi.amplitudes))) > 1e-12
        rotated = apply_rz(
            apply_ry(psi, "x", float(rng.uniform(-np.pi, np.pi))),
            "z",
            float(rng.uniform(-np.pi, np.pi)),
        )
        checks += 1
        failures += abs(float(np.linalg.norm(rotated.amplitudes)) - 1.0) > 1e-12
        raw = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        target, circuit = prepare_two_qubit(raw / np.linalg.norm(raw))
        built = apply_circuit(basis_state("00", ("a1", "b1")), circuit)
        checks += 1
        failures += abs(abs(overlap(target, built)) - 1.0) > 1e-10
    return checks, failures


def _suite_cloner(rng: np.random.Generator, trials: int) -> tuple[int, int]:
    checks = failures = 0
    for _ in range(trials):
        while True:
            s0, s1 = rng.uniform(0.0, 1.0, size=2)
            pair = cloner.feasibility(float(s0), float(s1))
            if pair.feasible:
                break
        prep = cloner.solve_prep(pair)
        for _ in range(2):
            out = cloner.run_cloner(random_state(("a0",), rng), prep)
            checks += 1
            failures += not cloner.verify_scaling(out, 1e-8).ok
            checks += 1
            failures += max(abs(out.s0_est - pair.s0), abs(out.s1_est - pair.s1)) > 1e-8
            checks += 1
            failures += (
                max(
                    abs(out.fidelity0 - 0.5 * (1.0 + out.s0_est)),
                    abs(out.fidelity1 - 0.5 * (1.0 + out.s1_est)),
                )
                > 1e-8
            )
    return checks, failures


def _suite_pauli(rng: np.random.Generator, trials: int) -> tuple[int, int]:
    checks = failures = 0
    for _ in range(trials):
        raw = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        raw = raw / np.linalg.norm(raw)
        matrix = pauli.bell_decompose(pauli.run_pauli_cloner(pauli.BellCoefficients(*raw)))
        off_diagonal = matrix - np.diag(np.diag(matrix))
        checks += 1
        failures += float(np.max(np.abs(off_diagonal))) > 1e-10
        checks += 1
        failures += float(np.max(np.abs(np.diag(matrix) - raw))) > 1e-10
    return checks, failures


_SUITES = (
    ("state-algebra", _suite_state_algebra),
    ("gates", _suite_gates),
    ("cloner", _suite_cloner),
    ("pauli", _suite_pauli),
)


def _cmd_verify(args) -> int:
    if args.trials < 1:
        print("verify: trials must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    rng = np.random.default_rng(args.seed)
    total_checks = total_failures = 0
    for name, suite in _SUITES:
        checks, failures = suite(rng, args.trials)
        total_checks += checks
        total_failures += failures
        print(f"suite {name}: {checks} checks, {failures} failures")
    print(
        f"verify: {total_checks} checks, {total_failures} failures "
        f"(seed {args.seed}, trials {args.trials})"
    )
    return EXIT_OK if total_failures == 0 else EXIT_USAGE


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="asymclone", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve the preparation state for target scalings")
    p_solve.add_argument("s0", type=_parse_real, help="scaling of the original (accepts fractions like 2/3)")
    p_solve.add_argument("s1", type=_parse_real, help="scaling of the copy")
    p_solve.add_argument("--format", choices=("text", "json"), default="text")
    p_solve.set_defaults(func=_cmd_solve)

    p_clone = sub.add_parser("clone", help="clone an input state at target scalings")
    p_clone.add_argument(
        "--state",
        type=_parse_state,
        required=True,
        help="named state (0 1 + - +i -i), 'theta,phi' Bloch angles, or 're0,im0,re1,im1'",
    )
    p_clone.add_argument("--s0", type=_parse_real, required=True)
    p_clone.add_argument("--s1", type=_parse_real, required=True)
    p_clone.set_defaults(func=_cmd_clone)

    p_sweep = sub.add_parser("sweep", help="tabulate the feasible region as CSV")
    p_sweep.add_argument("--step", type=_parse_real, required=True, help="grid step in (0, 0.5]")
    p_sweep.add_argument("--out", default="-", help="output path, '-' for stdout")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_pauli = sub.add_parser("pauli", help="run the Bell-basis cloner on a purified input")
    for name in ("x1", "x2", "x3", "x4"):
        p_pauli.add_argument(name, type=_parse_complex, help=f"{name} as 're' or 're,im'")
    p_pauli.set_defaults(func=_cmd_pauli)

    p_verify = sub.add_parser("verify", help="run the seeded invariant suites")
    p_verify.add_argument("--seed", type=int, default=42)
    p_verify.add_argument("--trials", type=int, default=1000)
    p_verify.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
