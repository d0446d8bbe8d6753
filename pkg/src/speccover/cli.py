"""Command-line surface tying the package together.

Exit codes: 0 success (or "true"), 1 negative result (no covering, not
satisfiable, no common tuple), 2 input or usage error, 3 inadmissible
trace step.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .core import BoolTuple, CnfMatrix
from .convert import cnf_to_decomposition, decomposition_to_cnf
from .covering import all_coverings, find_covering
from .errors import InadmissibleStep, SpecCoverError
from .formats import (
    emit_decomposition,
    emit_dimacs,
    emit_trace,
    parse_decomposition,
    parse_dimacs,
    parse_trace,
    random_instance,
)
from .sat import common_satisfying, satisfying_assignments
from .transform import generate_trace, generate_trace_extended, replay_steps

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_INADMISSIBLE = 3


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise SpecCoverError(f"cannot read {path}: {exc}") from None


def _write_out(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_decompose(args) -> int:
    f = parse_dimacs(_read(args.cnf))
    _write_out(emit_decomposition(cnf_to_decomposition(f)), args.output)
    return EXIT_OK


def _cmd_synthesize(args) -> int:
    d = parse_decomposition(_read(args.sdec))
    _write_out(emit_dimacs(decomposition_to_cnf(d)), args.output)
    return EXIT_OK


def _cmd_cover(args) -> int:
    d = parse_decomposition(_read(args.sdec))
    if args.all:
        witnesses = all_coverings(d)
        for w in witnesses:
            print(w.tuple)
        return EXIT_OK if witnesses else EXIT_NEGATIVE
    w = find_covering(d, prune=args.prune)
    if w is None:
        print("no covering")
        return EXIT_NEGATIVE
    print(w.tuple)
    return EXIT_OK


def _cmd_sat(args) -> int:
    f = parse_dimacs(_read(args.cnf))
    hits = satisfying_assignments(f)
    if args.all:
        for t in hits:
            print(t)
        return EXIT_OK if hits else EXIT_NEGATIVE
    if not hits:
        print("unsatisfiable")
        return EXIT_NEGATIVE
    print(hits[0])
    return EXIT_OK


def _cmd_transform(args) -> int:
    f = parse_dimacs(_read(args.f_cnf))
    h = parse_dimacs(_read(args.h_cnf))

    def pick(which: CnfMatrix, name: str) -> BoolTuple:
        hits = satisfying_assignments(which)
        if not hits:
            raise SpecCoverError(f"{name} is unsatisfiable")
        return hits[0]

    if args.extended:
        if args.sigma:
            sigma = BoolTuple.from_string(args.sigma)
            delta = BoolTuple.from_string(args.delta) if args.delta else pick(h, "h")
        elif args.auto:
            sigma, delta = pick(f, "f"), (
                BoolTuple.from_string(args.delta) if args.delta else pick(h, "h"))
        else:
            raise SpecCoverError("--extended needs --sigma (with --delta) or --auto")
        tr = generate_trace_extended(f, sigma, h, delta)
    else:
        if args.auto:
            sigma = common_satisfying(f, h)
            if sigma is None:
                print("no common satisfying tuple", file=sys.stderr)
                return EXIT_NEGATIVE
        elif args.sigma:
            sigma = BoolTuple.from_string(args.sigma)
        else:
            raise SpecCoverError("pass --sigma BITS or --auto")
        tr = generate_trace(f, h, sigma)
    if args.verbose:
        counts = tr.step_counts()
        print(f"steps={len(tr.steps)} " +
              " ".join(f"{k}={v}" for k, v in counts.items()) +
              f" elementary={tr.elementary.total}", file=sys.stderr)
        for k, op in enumerate(tr.steps, 1):
            print(f"  {k}: {op}", file=sys.stderr)
    _write_out(emit_trace(tr), args.output)
    return EXIT_OK


def _cmd_apply(args) -> int:
    f = parse_dimacs(_read(args.cnf))
    tr = parse_trace(_read(args.trace))
    final = f
    for _, _, cnf, _ in replay_steps(f, tr):
        final = cnf
    _write_out(emit_dimacs(final), args.output)
    return EXIT_OK


def _cmd_verify_trace(args) -> int:
    f = parse_dimacs(_read(args.cnf))
    tr = parse_trace(_read(args.trace))
    tuple_now = tr.sigma
    steps = 0
    for k, op, _, t in replay_steps(f, tr):
        steps, tuple_now = k, t
    print(f"trace ok: {steps} steps, final tuple {tuple_now}")
    return EXIT_OK


def _cmd_classes(args) -> int:
    sigma = BoolTuple.from_string(args.sigma)
    members: list[str] = []
    others: list[str] = []
    from .sat import evaluate

    paths = sorted(Path(args.directory).glob("*.cnf"))
    if not paths:
        raise SpecCoverError(f"no .cnf files under {args.directory}")
    for path in paths:
        try:
            f = parse_dimacs(path.read_text())
        except SpecCoverError as exc:
            print(f"{path.name}: skipped ({exc})", file=sys.stderr)
            continue
        if f.n != len(sigma):
            others.append(f"{path.name} (n={f.n})")
        elif evaluate(f, sigma):
            members.append(path.name)
        else:
            others.append(f"{path.name} (not satisfied)")
    print(f"class under {sigma}: {len(members)} function(s)")
    for name in members:
        print(f"  {name}")
    if others:
        print("outside the class:")
        for name in others:
            print(f"  {name}")
    return EXIT_OK


def _cmd_random(args) -> int:
    f = random_instance(args.n, args.m, args.seed, require_satisfiable=args.satisfiable)
    _write_out(emit_dimacs(f), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="speccover",
        description="Subset-pair decompositions and coverings of CNF clause sets")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="CNF file to decomposition file")
    p.add_argument("cnf")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("synthesize", help="decomposition file to CNF file")
    p.add_argument("sdec")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_synthesize)

    p = sub.add_parser("cover", help="search a covering selector tuple")
    p.add_argument("sdec")
    p.add_argument("--prune", action="store_true",
                   help="fix forced components before enumerating")
    p.add_argument("--all", action="store_true", help="list every covering")
    p.set_defaults(func=_cmd_cover)

    p = sub.add_parser("sat", help="exhaustive satisfiability check")
    p.add_argument("cnf")
    p.add_argument("--all", action="store_true", help="list every satisfying assignment")
    p.set_defaults(func=_cmd_sat)

    p = sub.add_parser("transform", help="emit a rewrite trace from one CNF to another")
    p.add_argument("f_cnf")
    p.add_argument("h_cnf")
    p.add_argument("--sigma", help="tuple satisfying both (or f, with --extended)")
    p.add_argument("--auto", action="store_true",
                   help="pick tuples by exhaustive search")
    p.add_argument("--extended", action="store_true",
                   help="allow component swaps; tuples may differ per function")
    p.add_argument("--delta", help="tuple satisfying h (with --extended)")
    p.add_argument("--trace-verbose", dest="verbose", action="store_true",
                   help="narrate every step to stderr")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_transform)

    p = sub.add_parser("apply", help="replay a trace and emit the final CNF")
    p.add_argument("cnf")
    p.add_argument("trace")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_apply)

    p = sub.add_parser("verify-trace", help="replay a trace, checking each step")
    p.add_argument("cnf")
    p.add_argument("trace")
    p.set_defaults(func=_cmd_verify_trace)

    p = sub.add_parser("classes", help="group .cnf files by satisfaction at a tuple")
    p.add_argument("directory")
    p.add_argument("--sigma", required=True)
    p.set_defaults(func=_cmd_classes)

    p = sub.add_parser("random", help="emit a random valid CNF")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--satisfiable", action="store_true",
                   help="redraw until the oracle finds a satisfying assignment")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_random)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InadmissibleStep as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INADMISSIBLE
    except SpecCoverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
