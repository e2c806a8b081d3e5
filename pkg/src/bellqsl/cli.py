"""Command-line front end.

Subcommands:

* ``compute``  - QSLT, case/branch diagnostics and correlations for one state;
* ``sweep``    - coefficient-grid sweep of the closed form, CSV output;
* ``dynamics`` - QSLT/CC/QD traces along the evolution, CSV output;
* ``verify``   - randomized cross-validation suites with max-error report.

All numbers are serialized with 9 significant digits and a ``.`` decimal
separator; CSV comment and footer lines start with ``#``.  Output files
are byte-identical across repeated runs with the same arguments.

Exit codes: 0 success, 1 numerical or I/O failure, 2 invalid input.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .channels import ChannelKind, FlipChannel, apply_kraus, evolve_coeffs, p_of_t
from .correlations import correlation_triple, discord_oracle, quantum_discord
from .qslt import (QuadratureFailure, closed_form_from_time,
                   closed_form_initial, critical_time, numeric_qslt)
from .states import (BellCoefficients, InvalidState, is_valid,
                     random_valid_coefficients, to_density_matrix, werner)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INVALID = 2

_CHANNEL_CHOICES = [kind.value for kind in ChannelKind]


def _fmt(x: float) -> str:
    return f"{x:.9g}"


def _parse_triple(text: str) -> BellCoefficients:
    parts = text.split(",")
    if len(parts) != 3:
        raise ValueError(f"expected three comma-separated values, got {text!r}")
    return BellCoefficients(*(float(p) for p in parts))


def _state_from_args(args) -> BellCoefficients:
    if args.werner is not None:
        return werner(args.werner)
    if args.c is None:
        raise ValueError("one of --c or --werner is required")
    return _parse_triple(args.c)


def _channel_from_args(args) -> FlipChannel:
    return FlipChannel(ChannelKind(args.channel), args.gamma)


def _add_channel_options(parser, with_gamma: bool = True) -> None:
    parser.add_argument("--channel", choices=_CHANNEL_CHOICES,
                        default=ChannelKind.PHASE_FLIP.value,
                        help="noise channel (default: phase-flip)")
    if with_gamma:
        parser.add_argument("--gamma", type=float, default=1.0,
                            help="damping rate (default: 1)")


def _add_state_options(parser) -> None:
    parser.add_argument("--c", metavar="C1,C2,C3",
                        help="signed Bell-diagonal coefficients")
    parser.add_argument("--werner", type=float, metavar="C",
                        help="Werner state shorthand for --c C,-C,C")


def cmd_compute(args) -> int:
    try:
        state = _state_from_args(args)
        channel = _channel_from_args(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if not is_valid(state):
        print(f"error: invalid Bell-diagonal state {state}", file=sys.stderr)
        return EXIT_INVALID
    try:
        closed = closed_form_initial(state, channel, args.tau_d)
        numeric = numeric_qslt(state, channel, 0.0, args.tau_d,
                               steps=args.steps)
        corr = correlation_triple(state)
    except QuadratureFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE

    print(f"channel                {channel.kind.value} (gamma={_fmt(channel.gamma)})")
    print(f"coefficients           c1={_fmt(state.c1)} c2={_fmt(state.c2)} "
          f"c3={_fmt(state.c3)}")
    print(f"driving time           {_fmt(args.tau_d)}")
    print(f"closed-form QSLT       {_fmt(closed.value)}  (case {closed.case_label}, "
          f"branch {closed.branch})")
    print(f"numeric QSLT           {_fmt(numeric.value)}  (steps {args.steps}, "
          f"branch {numeric.branch})")
    print(f"distance               {_fmt(numeric.distance)}")
    print(f"mutual information     {_fmt(corr.mutual_info)} bits")
    print(f"classical correlation  {_fmt(corr.classical)} bits")
    print(f"quantum discord        {_fmt(corr.discord)} bits")
    tau_c = critical_time(state, channel)
    if tau_c is not None:
        print(f"critical time          {_fmt(tau_c)}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    channel = _channel_from_args(args)
    if args.grid < 2:
        print(f"error: --grid must be >= 2, got {args.grid}", file=sys.stderr)
        return EXIT_INVALID
    if not 0.0 <= args.fixed <= 1.0:
        print(f"error: --fixed must be in [0, 1], got {args.fixed}",
              file=sys.stderr)
        return EXIT_INVALID

    first_axis, second_axis = channel.decaying_axes
    grid = [i / (args.grid - 1) for i in range(args.grid)]
    lines = ["c1,c2,c3,valid,case,tau_qsl"]
    for x in grid:
        for y in grid:
            coeffs = [0.0, 0.0, 0.0]
            coeffs[first_axis] = x
            coeffs[second_axis] = y
            coeffs[channel.preserved_axis] = args.fixed
            state = BellCoefficients(*coeffs)
            result = closed_form_initial(state, channel, args.tau_d,
                                         check_state=False)
            valid = "true" if is_valid(state) else "false"
            lines.append(
                f"{_fmt(state.c1)},{_fmt(state.c2)},{_fmt(state.c3)},"
                f"{valid},{result.case_label},{_fmt(result.value)}")
    return _write_lines(args.out, lines)


def cmd_dynamics(args) -> int:
    try:
        state = _state_from_args(args)
        channel = _channel_from_args(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if not is_valid(state):
        print(f"error: invalid Bell-diagonal state {state}", file=sys.stderr)
        return EXIT_INVALID
    if args.points < 2:
        print(f"error: --points must be >= 2, got {args.points}",
              file=sys.stderr)
        return EXIT_INVALID

    taus = np.linspace(0.0, args.tau_max, args.points)
    lines = ["tau,tau_qsl_closed,tau_qsl_numeric,cc,qd,mutual_info"]
    try:
        for tau in taus:
            closed = closed_form_from_time(state, channel, float(tau),
                                           args.tau_d)
            if args.no_numeric:
                numeric_text = ""
            else:
                numeric = numeric_qslt(state, channel, float(tau), args.tau_d,
                                       steps=args.steps)
                numeric_text = _fmt(numeric.value)
            evolved = evolve_coeffs(state, channel,
                                    p_of_t(float(tau), channel.gamma))
            corr = correlation_triple(evolved)
            lines.append(f"{_fmt(float(tau))},{_fmt(closed.value)},"
                         f"{numeric_text},{_fmt(corr.classical)},"
                         f"{_fmt(corr.discord)},{_fmt(corr.mutual_info)}")
    except QuadratureFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    tau_c = critical_time(state, channel)
    if tau_c is not None:
        lines.append(f"# tau_c={_fmt(tau_c)}")
    return _write_lines(args.out, lines)


def _write_lines(path: str, lines: list[str]) -> int:
    if not path:
        print("error: output path must be non-empty", file=sys.stderr)
        return EXIT_INVALID
    try:
        with open(path, "w", encoding="ascii", newline="\n") as handle:
            handle.write("\n".join(lines) + "\n")
    except OSError as exc:
        print(f"error: cannot write {path}: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    return EXIT_OK


def _swap(c: BellCoefficients, i: int, j: int) -> BellCoefficients:
    values = [c.c1, c.c2, c.c3]
    values[i], values[j] = values[j], values[i]
    return BellCoefficients(*values)


def cmd_verify(args) -> int:
    if args.samples < 1:
        print(f"error: --samples must be >= 1, got {args.samples}",
              file=sys.stderr)
        return EXIT_INVALID
    rng = np.random.default_rng(args.seed)
    states = [random_valid_coefficients(rng) for _ in range(args.samples)]
    channels = [FlipChannel(kind, args.gamma) for kind in ChannelKind]
    tau_d = args.tau_d

    suites: list[tuple[str, float, float]] = []

    # Closed form against the numeric bound, from t=0 and from a random
    # later start; channels cycle across samples.
    err = 0.0
    for k, state in enumerate(states):
        channel = channels[k % 3]
        tau_start = 2.0 - float(rng.uniform(0.0, 2.0))  # in (0, 2]
        closed0 = closed_form_initial(state, channel, tau_d)
        numeric0 = numeric_qslt(state, channel, 0.0, tau_d, steps=args.steps)
        err = max(err, abs(closed0.value - numeric0.value))
        closed1 = closed_form_from_time(state, channel, tau_start, tau_d)
        numeric1 = numeric_qslt(state, channel, tau_start, tau_d,
                                steps=args.steps)
        err = max(err, abs(closed1.value - numeric1.value))
    suites.append(("closed-vs-numeric", err, args.tol * tau_d))

    err = 0.0
    for state in states:
        err = max(err, abs(quantum_discord(state) - discord_oracle(state)))
    suites.append(("discord-closed-vs-oracle", err, 1e-4))

    err = 0.0
    phase, bit, bit_phase = channels
    for state in states:
        err = max(err, abs(closed_form_initial(state, bit, tau_d).value
                           - closed_form_initial(_swap(state, 0, 2), phase,
                                                 tau_d).value))
        err = max(err, abs(closed_form_initial(state, bit_phase, tau_d).value
                           - closed_form_initial(_swap(state, 1, 2), phase,
                                                 tau_d).value))
    suites.append(("channel-symmetry", err, 0.0))

    err = 0.0
    for k, state in enumerate(states):
        channel = channels[k % 3]
        p = float(rng.uniform(0.0, 1.0))
        direct = apply_kraus(to_density_matrix(state), channel, p)
        closed = to_density_matrix(evolve_coeffs(state, channel, p))
        err = max(err, float(np.max(np.abs(direct - closed))))
    suites.append(("kraus-vs-coefficients", err, 1e-12))

    # Richardson step-doubling check on a random subset.  The trapezoid
    # drift is about 0.75 * value / (3 * steps^2), so a base of 8192
    # keeps every state below 1e-8 at unit rate and driving time.
    err = 0.0
    base_steps = max(args.steps, 8192)
    for k, state in enumerate(states[:min(args.samples, 25)]):
        channel = channels[k % 3]
        coarse = numeric_qslt(state, channel, 0.0, tau_d, steps=base_steps)
        fine = numeric_qslt(state, channel, 0.0, tau_d, steps=2 * base_steps)
        err = max(err, abs(coarse.value - fine.value))
    suites.append(("quadrature-richardson", err, 1e-8))

    failed = None
    for name, max_err, tol in suites:
        ok = max_err <= tol
        print(f"{name:<26s} samples={args.samples:<6d} "
              f"max_error={max_err:.3e}  tol={tol:.1e}  "
              f"{'PASS' if ok else 'FAIL'}")
        if not ok and failed is None:
            failed = name
    if failed is not None:
        print(f"verification failed: suite {failed} exceeded its tolerance",
              file=sys.stderr)
        return EXIT_FAILURE
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bellqsl",
        description="Quantum speed limit times for two-qubit Bell-diagonal "
                    "states under phase, bit, and bit-phase flip channels.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_compute = sub.add_parser(
        "compute", help="QSLT and correlations for a single state")
    _add_channel_options(p_compute)
    _add_state_options(p_compute)
    p_compute.add_argument("--tau-d", type=float, default=1.0,
                           help="driving time (default: 1)")
    p_compute.add_argument("--steps", type=int, default=2048,
                           help="quadrature intervals (default: 2048)")
    p_compute.set_defaults(func=cmd_compute)

    p_sweep = sub.add_parser(
        "sweep", help="closed-form QSLT over a coefficient grid (CSV)")
    _add_channel_options(p_sweep)
    p_sweep.add_argument("--fixed", type=float, default=0.4,
                         help="magnitude of the preserved coefficient "
                              "(default: 0.4)")
    p_sweep.add_argument("--grid", type=int, default=101,
                         help="grid points per decaying axis (default: 101)")
    p_sweep.add_argument("--tau-d", type=float, default=1.0,
                         help="driving time (default: 1)")
    p_sweep.add_argument("--out", required=True, help="output CSV path")
    p_sweep.set_defaults(func=cmd_sweep)

    p_dyn = sub.add_parser(
        "dynamics", help="QSLT/CC/QD traces along the evolution (CSV)")
    _add_channel_options(p_dyn)
    _add_state_options(p_dyn)
    p_dyn.add_argument("--tau-d", type=float, default=1.0,
                       help="driving time (default: 1)")
    p_dyn.add_argument("--tau-max", type=float, default=2.0,
                       help="trace end time (default: 2)")
    p_dyn.add_argument("--points", type=int, default=401,
                       help="trace grid points (default: 401)")
    p_dyn.add_argument("--steps", type=int, default=2048,
                       help="quadrature intervals (default: 2048)")
    p_dyn.add_argument("--no-numeric", action="store_true",
                       help="skip the numeric QSLT column")
    p_dyn.add_argument("--out", required=True, help="output CSV path")
    p_dyn.set_defaults(func=cmd_dynamics)

    p_verify = sub.add_parser(
        "verify", help="randomized cross-validation suites")
    p_verify.add_argument("--samples", type=int, default=1000,
                          help="random states per suite (default: 1000)")
    p_verify.add_argument("--seed", type=int, default=42,
                          help="RNG seed (default: 42)")
    p_verify.add_argument("--steps", type=int, default=2048,
                          help="quadrature intervals (default: 2048)")
    p_verify.add_argument("--tol", type=float, default=1e-6,
                          help="closed-vs-numeric tolerance per unit "
                               "driving time (default: 1e-6)")
    p_verify.add_argument("--gamma", type=float, default=1.0,
                          help="damping rate (default: 1)")
    p_verify.add_argument("--tau-d", type=float, default=1.0,
                          help="driving time (default: 1)")
    p_verify.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InvalidState, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (QuadratureFailure, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
