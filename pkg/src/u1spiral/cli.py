"""Command-line front end.

Subcommands: ``axioms``, ``spiral``, ``orbit``, ``jacobian``, ``classify``.
Exit codes: 0 success, 1 usage error (including unwritable output), 2 numeric
failure. Randomness comes only from ``numpy.random.default_rng(seed)``
(PCG64), so identical arguments give identical bytes.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Sequence

import numpy as np

from . import __version__
from .classifier import MODES, CriterionConfig, classify, render_report
from .coordgroups import BUILTINS, TransformFamily, jacobian
from .exceptions import DomainError, NumericError, RangeError
from .serialize import emit, format_number, to_csv, to_json
from .spiral import SpiralDeformation, deformed_defect
from .u1core import adjoint, compose, jacobi_residual, u1_element, unitarity_defect
from .wrapdyn import KINDS, WrapMap, lifted_orbit, orbit

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2
AXIOM_TOL = 1e-12


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _matrix(text: str) -> list[list[float]]:
    try:
        rows = json.loads(text)
        return [[float(v) for v in row] for row in rows]
    except (ValueError, TypeError):
        raise argparse.ArgumentTypeError(f"expected a JSON array of rows, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="u1spiral", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True, metavar="SUBCOMMAND")

    p = sub.add_parser("axioms", help="sample the U(1) axioms and print the worst defects")
    p.add_argument("--samples", type=int, default=1000, help="samples per check (default 1000)")
    p.add_argument("--seed", type=int, default=42, help="PCG64 seed (default 42)")
    p.add_argument("--theta-max", type=float, default=1e6,
                   help="unitarity samples theta in [-theta_max, theta_max] (default 1e6)")

    p = sub.add_parser("spiral", help="CSV of measured vs analytic deformed defect over theta")
    p.add_argument("--epsilon", type=float, default=0.01, help="spiral pitch (default 0.01)")
    p.add_argument("--theta-min", type=float, default=0.0, help="default 0")
    p.add_argument("--theta-max", type=float, default=2 * math.pi, help="default 2*pi")
    p.add_argument("--points", type=int, default=101, help="number of thetas (default 101)")
    p.add_argument("--log-spaced", action="store_true",
                   help="space thetas geometrically (needs theta-min > 0)")
    p.add_argument("--out", default="-", help="output path, '-' for stdout (default)")
    p.add_argument("--seed", type=int, default=42, help="accepted for uniformity; unused")

    p = sub.add_parser("orbit", help="orbit table: step, state, winding, spiral_radius")
    p.add_argument("--map", dest="map_kind", choices=KINDS, required=True)
    p.add_argument("--a", type=float, default=1.0, help="affine slope (default 1)")
    p.add_argument("--b", type=float, default=0.0, help="affine offset (default 0)")
    p.add_argument("--modulus", type=float, default=1.0, help="wrap modulus 2*K*pi (default 1)")
    p.add_argument("--x0", type=float, required=True, help="initial state")
    p.add_argument("--steps", type=int, default=100, help="number of steps (default 100)")
    p.add_argument("--lift", action="store_true",
                   help="place states on the spiral of pitch --epsilon")
    p.add_argument("--epsilon", type=float, default=0.01,
                   help="spiral pitch used with --lift (default 0.01)")
    p.add_argument("--csv", action="store_true", help="emit CSV instead of JSON")
    p.add_argument("--out", default="-", help="output path, '-' for stdout (default)")
    p.add_argument("--seed", type=int, default=42, help="accepted for uniformity; unused")

    family_help = f"one of {', '.join(BUILTINS)}, generator"

    p = sub.add_parser("jacobian", help="Jacobian matrix, determinant and eigenvalues")
    p.add_argument("--family", choices=BUILTINS + ("generator",), help=family_help)
    p.add_argument("--generator", type=_matrix, help="generator G as a JSON array of rows")
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--method", choices=("dual", "fd"), default="dual",
                   help="dual numbers or central finite differences (default dual)")
    p.add_argument("--point", type=_float_list,
                   help="comma-separated probe point (default (1,...,1)/sqrt(n))")
    p.add_argument("--seed", type=int, default=42, help="accepted for uniformity; unused")

    p = sub.add_parser("classify", help="run the spiral criterion and write a report")
    p.add_argument("--family", choices=BUILTINS + ("generator",), help=family_help)
    p.add_argument("--generator", type=_matrix, help="generator G as a JSON array of rows")
    p.add_argument("--mode", action="append", choices=MODES,
                   help="membership mode; repeat for several (default: all)")
    p.add_argument("--epsilon", type=float, help="spiral pitch (default 0.01)")
    p.add_argument("--finite-thetas", type=_float_list,
                   help="comma-separated finite thetas (default 0.5,1,2,2*pi)")
    p.add_argument("--infinitesimal-thetas", type=_float_list,
                   help="comma-separated infinitesimal thetas (default 1e-4,...,1e-8)")
    p.add_argument("--tol-membership", type=float, help="default 1e-9")
    p.add_argument("--finite-escape-factor", type=float, help="default 10")
    p.add_argument("--first-order-c", type=float, help="default 3")
    p.add_argument("--orbit-bound-steps", type=int, help="default 64")
    p.add_argument("--orbit-bound-B", type=float, help="default 1e3")
    p.add_argument("--config", help="JSON file with the same keys as the flags")
    p.add_argument("--format", choices=("json", "csv"), default="json",
                   help="report format (default json)")
    p.add_argument("--out", help="report path; '-' for stdout (default: no report file)")
    p.add_argument("--seed", type=int, default=42, help="accepted for uniformity; unused")
    return parser


def parse_args(argv: Sequence[str] | None = None) -> argparse.Namespace:
    """Parse ``argv``; raises :class:`UsageError` on invalid input."""
    args = build_parser().parse_args(argv)
    if args.subcommand in ("jacobian", "classify"):
        if args.generator is not None and args.family in (None, "generator"):
            args.family = "generator"
        if args.family is None:
            raise UsageError(f"--family is required; valid families: "
                             f"{', '.join(BUILTINS)}, generator")
        if args.family == "generator" and args.generator is None:
            raise UsageError("--family generator needs --generator")
        if args.family != "generator" and args.generator is not None:
            raise UsageError(f"--generator cannot be combined with --family {args.family}")
    if args.subcommand == "axioms" and args.samples < 1:
        raise UsageError("--samples must be positive")
    if args.subcommand == "spiral" and args.points < 1:
        raise UsageError("--points must be positive")
    if args.subcommand == "orbit" and args.steps < 0:
        raise UsageError("--steps must be non-negative")
    return args


def _family(args) -> TransformFamily:
    if args.family == "generator":
        return TransformFamily.from_generator(args.generator)
    return TransformFamily(args.family)


def _write(text: str, sink) -> None:
    try:
        emit(text, sink)
    except OSError as exc:
        raise UsageError(f"cannot write {sink}: {exc}")


def _run_axioms(args) -> int:
    rng = np.random.default_rng(args.seed)
    n = args.samples
    a, b, c = (rng.uniform(-10.0, 10.0, n) for _ in range(3))
    wide = rng.uniform(-args.theta_max, args.theta_max, n)
    closure = unitarity = inverse = assoc = 0.0
    for ta, tb, tc, tw in zip(a, b, c, wide):
        ga, gb, gc = u1_element(ta), u1_element(tb), u1_element(tc)
        closure = max(closure, abs(compose(ga, gb).value - ga.value * gb.value))
        unitarity = max(unitarity, unitarity_defect(u1_element(tw)))
        gw = u1_element(tw)
        inverse = max(inverse, abs(compose(gw, adjoint(gw)).value - 1.0))
        left = compose(compose(ga, gb), gc).value
        right = compose(ga, compose(gb, gc)).value
        assoc = max(assoc, abs(left - right))
    z = rng.uniform(-1.0, 1.0, (n, 3, 2)) @ np.array([1.0, 1j])
    scalar = max(jacobi_residual(*row) for row in z)
    mats = rng.uniform(-1.0, 1.0, (n, 3, 2, 2))
    matrix = max(jacobi_residual(x, y, w, relative=True) for x, y, w in mats)
    checks = [("closure", closure), ("unitarity", unitarity), ("adjoint_inverse", inverse),
              ("associativity", assoc), ("jacobi_scalar", scalar),
              ("jacobi_matrix_relative", matrix)]
    lines = [f"samples: {n}", f"seed: {args.seed}"]
    lines += [f"{name}_max: {format_number(v)}" for name, v in checks]
    ok = all(v <= AXIOM_TOL for _, v in checks)
    lines.append(f"status: {'PASS' if ok else 'FAIL'} (tolerance {AXIOM_TOL:g})")
    _write("\n".join(lines) + "\n", "-")
    return EXIT_OK if ok else EXIT_NUMERIC


def _run_spiral(args) -> int:
    d = SpiralDeformation(args.epsilon)
    if args.log_spaced:
        if args.theta_min <= 0 or args.theta_max <= 0:
            raise UsageError("--log-spaced needs positive --theta-min and --theta-max")
        thetas = np.geomspace(args.theta_min, args.theta_max, args.points)
    else:
        thetas = np.linspace(args.theta_min, args.theta_max, args.points)
    rows = [(float(t), *deformed_defect(float(t), d)) for t in thetas]
    _write(to_csv(("theta", "measured_defect", "analytic_defect"), rows), args.out)
    return EXIT_OK


def _run_orbit(args) -> int:
    m = WrapMap(args.map_kind, modulus=args.modulus, a=args.a, b=args.b)
    header = ("step", "state", "winding", "spiral_radius")
    if args.lift:
        lo = lifted_orbit(m, SpiralDeformation(args.epsilon), args.x0, args.steps)
        rows = [(i, s, w, r) for i, (s, w, r)
                in enumerate(zip(lo.states, lo.windings, lo.radii))]
    elif m.invertible:
        # without the lift the states sit on the undeformed circle of radius K
        lo = lifted_orbit(m, SpiralDeformation._unchecked(0.0), args.x0, args.steps)
        rows = [(i, s, w, m.k) for i, (s, w) in enumerate(zip(lo.states, lo.windings))]
    else:
        states = orbit(m, args.x0, args.steps).states
        rows = [(i, s, None, m.k) for i, s in enumerate(states)]
    if args.csv:
        text = to_csv(header, rows)
    else:
        text = to_json({"columns": list(header), "rows": [list(r) for r in rows]}) + "\n"
    _write(text, args.out)
    return EXIT_OK


def _run_jacobian(args) -> int:
    f = _family(args)
    method = "dual" if args.method == "dual" else "finite_diff"
    res = jacobian(f, args.theta, args.point, method)
    lines = [f"family: {f.id}", f"theta: {format_number(args.theta)}", f"method: {method}",
             "matrix:"]
    lines += ["  " + " ".join(format_number(v) for v in row) for row in res.matrix]
    lines.append(f"det: {format_number(res.det)}")
    lines.append("eigenvalues (re im):")
    lines += [f"  {format_number(z.real)} {format_number(z.imag)}" for z in res.eigenvalues]
    _write("\n".join(lines) + "\n", "-")
    return EXIT_OK


_CONFIG_FLAGS = ("epsilon", "finite_thetas", "infinitesimal_thetas", "tol_membership",
                 "finite_escape_factor", "first_order_c", "orbit_bound_steps", "orbit_bound_B")


def _config(args) -> CriterionConfig:
    values: dict = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                values.update(json.load(fh))
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}")
    for name in _CONFIG_FLAGS:
        v = getattr(args, name)
        if v is not None:
            values[name] = v
    if args.mode:
        values["modes"] = args.mode
    try:
        return CriterionConfig.from_dict(values)
    except (DomainError, TypeError) as exc:
        raise UsageError(str(exc))


def _run_classify(args) -> int:
    report = classify(_family(args), _config(args))
    if args.out:
        _write(render_report(report, args.format).decode("utf-8"), args.out)
    # keep stdout to the report alone when it is written there
    stream = sys.stderr if args.out == "-" else sys.stdout
    print(report.verdict_line(), file=stream)
    return EXIT_NUMERIC if report.inconclusive else EXIT_OK


RUNNERS = {"axioms": _run_axioms, "spiral": _run_spiral, "orbit": _run_orbit,
           "jacobian": _run_jacobian, "classify": _run_classify}


def run(args: argparse.Namespace) -> int:
    try:
        return RUNNERS[args.subcommand](args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except (RangeError, NumericError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
