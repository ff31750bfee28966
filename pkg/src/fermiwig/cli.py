"""Command line: ``fermiwig verify | overlap | wigner | weyl | star``.

Exit status is 0 on success, 1 when a check fails and 2 for bad input.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from .expressions import ExpressionError, parse_operator
from .grassmann import REGISTRY
from .modes import ModeSet, ModeSetError
from .scenario import SUITES, WORKERS_ENV, Scenario, ScenarioError, load_scenario, run_scenario
from .serialize import ParseError, deserialize, serialize

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _modes_arg(text: str) -> tuple[int, int]:
    try:
        k, s = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected K,S such as 2,2") from None
    return k, s


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _sign(text: str) -> int:
    if text not in ("1", "+1", "-1"):
        raise argparse.ArgumentTypeError("expected +1 or -1")
    return int(text)


def _mode_set(args) -> ModeSet:
    k, s = args.modes
    return ModeSet(k, s)


# ---------------------------------------------------------------- commands ---

def cmd_verify(args) -> int:
    if args.config:
        config = load_scenario(args.config)
        overrides = {}
        if args.suite:
            overrides["suites"] = args.suite
        if args.seed is not None:
            overrides["seed"] = args.seed
        if overrides or args.out or args.workers or args.no_timing:
            config = Scenario(config.k_points, config.spins, config.weights, config.epsilon,
                              config.ring, overrides.get("suites", config.suites),
                              overrides.get("seed", config.seed), args.out or config.output,
                              args.workers or config.workers, config.timing and not args.no_timing)
    else:
        k, s = args.modes or (1, 2)
        config = Scenario(k, s, ring=args.ring, suites=args.suite, seed=args.seed or 0,
                          output=args.out, workers=args.workers, timing=not args.no_timing)
    report = run_scenario(config)
    if not args.quiet:
        print("\n".join(report.lines()))
    summary = report.summary()
    print(f"{summary['passed']}/{summary['checks']} checks passed"
          + (f"; report written to {config.output}" if config.output else ""))
    return report.exit_code


def cmd_overlap(args) -> int:
    from .grassmann import GrassmannElement, ParameterFunction
    from .overlaps import SingularityError, h_closed_form, overlap_analytic, overlap_direct
    from .samples import random_parameter

    modes = _mode_set(args)
    ring = modes.ring
    if args.params == "zero":
        A = ParameterFunction(modes, [GrassmannElement.zero(ring)] * modes.size)
        B = A
    elif args.params == "random":
        A = random_parameter(modes, "A", 2 * args.seed + 1, ring)
        B = random_parameter(modes, "B", 2 * args.seed + 2, ring)
    else:
        A = ParameterFunction.fresh(modes, "A", ring)
        B = ParameterFunction.fresh(modes, "B", ring)
    direct = overlap_direct(args.c1, args.c2, A, B, args.t, modes)
    print(f"<vac|exp(tA + c1 t R) exp(tB+ + c2 t R+)|vac> at c1={args.c1:+d} c2={args.c2:+d} "
          f"t={args.t}, Omega={modes.omega}")
    print(f"direct:   {direct.to_text()}")
    try:
        h = h_closed_form(args.c1, args.c2, args.t)
    except SingularityError as exc:
        print(f"closed form: singular ({exc})")
        return EXIT_OK
    analytic = overlap_analytic(args.c1, args.c2, A, B, args.t, modes.omega)
    print(f"analytic: {analytic.to_text()}")
    for name in ("h1", "h2", "h3", "h5", "h6", "h7"):
        print(f"  {name} = {getattr(h, name).to_text()}")
    print(f"  h0 = ({', '.join(x.to_text() for x in h.h0)})  h4 = -ln {h.h4_base.to_text()}")
    same = direct == analytic
    print("agree" if same else "DISAGREE")
    return EXIT_OK if same else EXIT_FAIL


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
        print(f"written to {out}")
    else:
        sys.stdout.write(text)


def cmd_wigner(args) -> int:
    from .wigner import wigner_transform

    modes = _mode_set(args)
    W = wigner_transform(parse_operator(args.op, modes), modes)
    if args.canonical or args.out:
        _emit(serialize(W), args.out)
    else:
        print(f"W[q, p] = {W.to_text()}")
    return EXIT_OK


def cmd_weyl(args) -> int:
    from .fock import operators_equal
    from .wigner import PhaseSpaceFunctional, weyl_transform, wigner_transform

    if args.file:
        W = deserialize(Path(args.file).read_text())
        if not isinstance(W, PhaseSpaceFunctional):
            raise ParseError("expected a phase-space document", 1, 1)
        op = weyl_transform(W)
        _emit(serialize(op), args.out)
        return EXIT_OK
    modes = _mode_set(args)
    op = parse_operator(args.op, modes)
    back = weyl_transform(wigner_transform(op, modes))
    same = operators_equal(back, op)
    _emit(serialize(back), args.out)
    print("roundtrip exact" if same else "roundtrip FAILED")
    return EXIT_OK if same else EXIT_FAIL


def cmd_star(args) -> int:
    from .wigner import phase_space, star2, star3, wigner_transform

    modes = _mode_set(args)
    texts = [t for t in args.ops.split(",") if t.strip()]
    if len(texts) not in (2, 3):
        raise ExpressionError("--ops takes two or three comma-separated expressions")
    ops = [parse_operator(t, modes) for t in texts]
    Ws = [wigner_transform(op, modes) for op in ops]
    q, p = phase_space(modes, "out")
    result = (star2 if len(Ws) == 2 else star3)(*Ws, q=q, p=p)
    product = ops[0]
    for op in ops[1:]:
        product = product * op
    expect = wigner_transform(product, modes, q, p)
    print(f"star product = {result.to_text()}")
    same = result.value == expect.value
    print("equals the Wigner functional of the operator product" if same else "MISMATCH")
    return EXIT_OK if same else EXIT_FAIL


# ------------------------------------------------------------------ parser ---

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fermiwig", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run verification suites and write a JSON report",
                       epilog=f"Suites: {', '.join(SUITES)}. {WORKERS_ENV} caps the worker count.")
    v.add_argument("--suite", action="append", choices=sorted(SUITES), metavar="NAME",
                   help="suite to run (repeatable); default is every suite fit for the ring")
    v.add_argument("--modes", type=_modes_arg, metavar="K,S", help="k-points and spins (default 1,2)")
    v.add_argument("--ring", default="rational-sqrt2",
                   help="rational, rational-sqrt2, laurent-eps or float")
    v.add_argument("--seed", type=int, help="seed for random parameters (default 0)")
    v.add_argument("--out", metavar="FILE.json", help="write the run report here")
    v.add_argument("--config", metavar="FILE.json", help="scenario config; flags override it")
    v.add_argument("--workers", type=int, help="worker processes")
    v.add_argument("--no-timing", action="store_true", help="zero all timings (for golden files)")
    v.add_argument("--quiet", action="store_true", help="print only the final count")
    v.set_defaults(func=cmd_verify)

    def with_modes(p):
        p.add_argument("--modes", type=_modes_arg, default=(1, 2), metavar="K,S")
        return p

    o = with_modes(sub.add_parser("overlap", help="closed-form and direct eigenstate overlap"))
    o.add_argument("--c1", type=_sign, required=True)
    o.add_argument("--c2", type=_sign, required=True)
    o.add_argument("--t", type=_fraction, required=True, metavar="RATIONAL")
    o.add_argument("--params", choices=("fresh", "random", "zero"), default="fresh",
                   help="A and B: fresh generators, random scaled ones, or zero")
    o.add_argument("--seed", type=int, default=0)
    o.set_defaults(func=cmd_overlap)

    w = with_modes(sub.add_parser("wigner", help="Wigner functional of an operator expression"))
    w.add_argument("--op", required=True, metavar="EXPR")
    w.add_argument("--canonical", action="store_true", help="print the canonical text document")
    w.add_argument("--out", metavar="FILE")
    w.set_defaults(func=cmd_wigner)

    y = with_modes(sub.add_parser("weyl", help="operator of a Wigner functional"))
    src = y.add_mutually_exclusive_group(required=True)
    src.add_argument("--file", metavar="FILE", help="canonical phase-space document")
    src.add_argument("--op", metavar="EXPR", help="roundtrip an operator through W and back")
    y.add_argument("--out", metavar="FILE")
    y.set_defaults(func=cmd_weyl)

    s = with_modes(sub.add_parser("star", help="star product of two or three operators"))
    s.add_argument("--ops", required=True, metavar="EXPR,EXPR[,EXPR]")
    s.set_defaults(func=cmd_star)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        # a fresh label scope keeps printed generator names independent of earlier calls
        with REGISTRY.scope():
            return args.func(args)
    except (ScenarioError, ModeSetError, ExpressionError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
