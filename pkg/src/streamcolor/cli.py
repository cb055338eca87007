"""Command-line entry point.

Subcommands: ``generate``, ``color``, ``verify`` for the streaming side;
``lb-params``, ``lb-compress``, ``lb-game`` for the lower-bound lab.
Every subcommand is deterministic given its flags and ``--seed``; no
command reads system entropy or the clock.

Exit codes: 0 success, 2 usage or parse failure, 3 declared-degree
violation, 4 internal budget violation, 5 improper coloring.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .engine import (
    StreamSource,
    iterative_coloring,
    two_pass_coloring,
    two_pass_unknown_delta,
)
from .errors import (
    DegreeViolationError,
    ImproperOutputError,
    MonoBudgetExceededError,
    NegativeCounterError,
    NonTerminationError,
    PaletteExhaustedError,
    RecoveryFailedError,
    RejectionOverflowError,
    StreamColorError,
    StreamFormatError,
    TooLargeError,
    UncoloredVertexError,
)
from .generator import generate_stream
from .graph import materialize, max_degree, validate_proper
from .lab.compression import (
    check_compression_lemma,
    identity_scheme,
    parity_scheme,
    scheme_from_file,
)
from .lab.distribution import RandomGraphDistribution
from .lab.game import (
    GameSpec,
    ProductStrategy,
    StoreAllEdgesAlgorithm,
    protocol_from_stream,
    run_game,
)
from .lab.lnscaled import LnScaled
from .lab.schedule import (
    color_lower_bound,
    corollary_check,
)
from .streamio import dumps_coloring, dumps_stream, read_coloring, read_stream

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DEGREE = 3
EXIT_INTERNAL_BOUND = 4
EXIT_IMPROPER = 5

_INTERNAL_BOUND_ERRORS = (
    MonoBudgetExceededError,
    NegativeCounterError,
    NonTerminationError,
    RecoveryFailedError,
    PaletteExhaustedError,
    RejectionOverflowError,
)


class _CliError(Exception):
    """Carries an exit code and a message to print on stderr."""

    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _fraction_flag(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _rat(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _scaled_dict(value: LnScaled) -> dict:
    return {
        "coeff": _rat(value.coeff),
        "ln2_power": value.power,
        "value": value.to_float(),
    }


def _emit(args, payload: dict) -> None:
    if not args.quiet:
        print(json.dumps(payload, indent=2))


def _write_text(path: str, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8", newline="")


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--seed", type=int, default=0, help="64-bit seed (default 0, never the clock)"
    )
    common.add_argument(
        "--quiet", action="store_true", help="suppress stdout reports"
    )

    parser = argparse.ArgumentParser(
        prog="streamcolor",
        description="Deterministic semi-streaming graph coloring toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser(
        "generate", parents=[common], help="write a seeded update stream"
    )
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--delta", type=int, required=True)
    group = gen.add_mutually_exclusive_group()
    group.add_argument("--edges", type=int, help="target insertion count")
    group.add_argument("--density", type=float, help="fraction of n*delta/2")
    gen.add_argument(
        "--dynamic",
        type=float,
        default=0.0,
        metavar="F",
        help="fraction of insertions later deleted",
    )
    gen.add_argument("--out", help="stream file (default stdout)")

    col = sub.add_parser(
        "color", parents=[common], help="run a coloring pass over a stream file"
    )
    col.add_argument("--in", dest="input", required=True, help="stream file")
    col.add_argument(
        "--alg",
        choices=["two-pass", "iterative"],
        default="two-pass",
    )
    col.add_argument(
        "--unknown-delta",
        action="store_true",
        help="ignore the header degree bound and discover it in pass 1",
    )
    col.add_argument(
        "--dynamic",
        action="store_true",
        help="treat the stream as dynamic (sketch deletions)",
    )
    col.add_argument("--out", help="coloring file (default stdout)")
    col.add_argument("--report", help="also write the JSON report here")

    ver = sub.add_parser(
        "verify", parents=[common], help="check a coloring file against a stream"
    )
    ver.add_argument("--in", dest="input", required=True, help="stream file")
    ver.add_argument("--coloring", required=True, help="coloring file")

    par = sub.add_parser(
        "lb-params", parents=[common], help="level parameters and color bounds"
    )
    par.add_argument("--n", type=int, required=True)
    par.add_argument("--delta", type=int, required=True)
    par.add_argument("--k", type=int, required=True)
    par.add_argument("--s", type=int, required=True)
    par.add_argument(
        "--corollary",
        metavar="q=<q>|alpha=<a>",
        help="also evaluate one headline instantiation at this n",
    )

    cmp_ = sub.add_parser(
        "lb-compress", parents=[common], help="missing-edge bound for a summary scheme"
    )
    cmp_.add_argument("--base", required=True, help="stream file for the base graph")
    cmp_.add_argument("--p", type=_fraction_flag, required=True)
    cmp_.add_argument("--d", type=_fraction_flag, required=True)
    cmp_.add_argument(
        "--scheme", required=True, help="parity | identity | file:<path>"
    )
    cmp_.add_argument("--s", type=int, required=True, help="summary width in bits")

    game = sub.add_parser(
        "lb-game", parents=[common], help="play the blackboard game over a stream"
    )
    game.add_argument("--k", type=int, required=True)
    game.add_argument(
        "--strategy", choices=["product", "forward-memory"], required=True
    )
    game.add_argument("--in", dest="input", required=True, help="stream file")

    return parser


def _load_stream(path: str):
    try:
        return read_stream(path)
    except FileNotFoundError:
        raise _CliError(EXIT_USAGE, f"no such file: {path}")


def cmd_generate(args) -> int:
    if args.n < 1 or args.delta < 0:
        raise _CliError(EXIT_USAGE, "need --n >= 1 and --delta >= 0")
    if not 0.0 <= args.dynamic <= 1.0:
        raise _CliError(EXIT_USAGE, "--dynamic must lie in [0, 1]")
    sf = generate_stream(
        args.n,
        args.delta,
        args.seed,
        edge_target=args.edges,
        density=args.density,
        deletion_fraction=args.dynamic,
    )
    text = dumps_stream(sf.n, sf.updates, sf.delta)
    if args.out:
        _write_text(args.out, text)
    elif not args.quiet:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_color(args) -> int:
    sf = _load_stream(args.input)
    src = StreamSource.from_stream_file(sf)
    if args.unknown_delta:
        report = two_pass_unknown_delta(src, dynamic=args.dynamic)
    else:
        if sf.delta is None:
            raise _CliError(
                EXIT_USAGE,
                "stream file has no delta header; pass --unknown-delta",
            )
        run = two_pass_coloring if args.alg == "two-pass" else iterative_coloring
        report = run(src, sf.delta, dynamic=args.dynamic)
    text = dumps_coloring(report.coloring)
    if args.out:
        _write_text(args.out, text)
    elif not args.quiet:
        sys.stdout.write(text)
    payload = report.to_json_dict()
    if args.report:
        _write_text(args.report, json.dumps(payload, indent=2) + "\n")
    elif args.out:
        # coloring went to a file, so the report may use stdout
        _emit(args, payload)
    return EXIT_OK


def cmd_verify(args) -> int:
    sf = _load_stream(args.input)
    try:
        coloring = read_coloring(args.coloring)
    except FileNotFoundError:
        raise _CliError(EXIT_USAGE, f"no such file: {args.coloring}")
    graph = materialize(sf.n, sf.updates)
    if coloring.n != sf.n:
        raise _CliError(
            EXIT_USAGE,
            f"coloring covers {coloring.n} vertices, stream has {sf.n}",
        )
    coloring.require_total()
    violations = validate_proper(graph, coloring)
    payload = {
        "proper": not violations,
        "violation_count": len(violations),
        "violations": [list(e) for e in violations[:10]],
    }
    _emit(args, payload)
    if violations:
        for e in violations[:10]:
            print(f"monochromatic edge: {e[0]} {e[1]}", file=sys.stderr)
        return EXIT_IMPROPER
    return EXIT_OK


def _parse_corollary(text: str, n: int):
    key, _, value = text.partition("=")
    if key == "q":
        try:
            return corollary_check(n, q=int(value))
        except ValueError as exc:
            raise _CliError(EXIT_USAGE, str(exc))
    if key == "alpha":
        try:
            return corollary_check(n, alpha=Fraction(value))
        except (ValueError, ZeroDivisionError) as exc:
            raise _CliError(EXIT_USAGE, str(exc))
    raise _CliError(EXIT_USAGE, f"--corollary must be q=<int> or alpha=<rational>")


def cmd_lb_params(args) -> int:
    try:
        report = color_lower_bound(args.n, args.delta, args.k, args.s)
    except ValueError as exc:
        raise _CliError(EXIT_USAGE, str(exc))
    sched = report.schedule
    corollary = None
    if args.corollary:
        chk = _parse_corollary(args.corollary, args.n)
        corollary = {
            "mode": chk.mode,
            "parameter": _rat(chk.parameter),
            "delta": chk.delta,
            "k": chk.k,
            "s": chk.s,
            "theorem_bound": _rat(chk.theorem_bound),
            "theorem_bound_ln": chk.theorem_bound_ln,
            "threshold_ln": chk.threshold_ln,
            "exceeds": chk.exceeds,
        }
    closed_form_ok = all(
        sched.d[i - 1] == sched.closed_form_d(i)
        and sched.p[i - 1] == sched.closed_form_p(i)
        for i in range(1, sched.k + 1)
    )
    payload = {
        "n": sched.n,
        "delta": sched.delta,
        "k": sched.k,
        "s": sched.s,
        "d_i": [_scaled_dict(v) for v in sched.d],
        "p_i": [_scaled_dict(v) for v in sched.p],
        "lemma49_bound": _scaled_dict(report.lemma_bound),
        "theorem_bound": _rat(report.theorem_bound),
        "corollary_bound": corollary,
        "hypotheses_ok": sched.hypotheses_ok,
        "closed_form_ok": closed_form_ok,
        "p_in_unit_interval": sched.p_in_unit_interval,
        "warnings": list(sched.warnings),
    }
    _emit(args, payload)
    return EXIT_OK


def cmd_lb_compress(args) -> int:
    sf = _load_stream(args.base)
    base = materialize(sf.n, sf.updates)
    if args.s < 1:
        raise _CliError(EXIT_USAGE, "--s must be at least 1")
    try:
        dist = RandomGraphDistribution(base, args.p, args.d, args.seed)
    except StreamColorError as exc:
        raise _CliError(EXIT_USAGE, str(exc))
    if args.scheme == "parity":
        scheme = parity_scheme(bits=args.s)
    elif args.scheme == "identity":
        scheme = identity_scheme(base, bits=args.s)
    elif args.scheme.startswith("file:"):
        path = args.scheme[len("file:") :]
        try:
            scheme = scheme_from_file(path, bits=args.s)
        except FileNotFoundError:
            raise _CliError(EXIT_USAGE, f"no such file: {path}")
    else:
        raise _CliError(
            EXIT_USAGE, f"--scheme must be parity, identity, or file:<path>"
        )
    result = check_compression_lemma(dist, scheme)
    payload = {
        "min_missing": result["min_missing"],
        "bound": result["bound"],
        "holds": result["holds"],
    }
    _emit(args, payload)
    return EXIT_OK


def cmd_lb_game(args) -> int:
    sf = _load_stream(args.input)
    if args.k < 1:
        raise _CliError(EXIT_USAGE, "--k must be at least 1")
    if any(upd.sign < 0 for upd in sf.updates):
        raise _CliError(EXIT_USAGE, "lb-game expects an insertion-only stream")
    graph = materialize(sf.n, sf.updates)
    delta = sf.delta if sf.delta is not None else max_degree(graph)
    spec = GameSpec(sf.n, delta, args.k)
    edges = graph.edges_sorted()
    k = args.k
    shares = tuple(
        tuple(edges[(len(edges) * i) // k : (len(edges) * (i + 1)) // k])
        for i in range(k)
    )
    if args.strategy == "product":
        strategy = ProductStrategy()
    else:
        strategy = protocol_from_stream(StoreAllEdgesAlgorithm())
    try:
        transcript = run_game(strategy, spec, shares)
    except ImproperOutputError as err:
        payload = err.transcript.to_json_dict()
        payload["proper"] = False
        payload["violations"] = [list(e) for e in err.violations[:10]]
        _emit(args, payload)
        for e in err.violations[:10]:
            print(f"monochromatic edge: {e[0]} {e[1]}", file=sys.stderr)
        return EXIT_IMPROPER
    except ValueError as exc:
        raise _CliError(EXIT_USAGE, str(exc))
    _emit(args, transcript.to_json_dict())
    return EXIT_OK


_DISPATCH = {
    "generate": cmd_generate,
    "color": cmd_color,
    "verify": cmd_verify,
    "lb-params": cmd_lb_params,
    "lb-compress": cmd_lb_compress,
    "lb-game": cmd_lb_game,
}


def main(argv=None) -> int:
    parser = _parser()
    args = parser.parse_args(argv)
    if not 0 <= args.seed < 1 << 64:
        parser.error("--seed must fit in 64 bits")  # exits 2
    try:
        return _DISPATCH[args.command](args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except DegreeViolationError as exc:
        print(f"degree violation: {exc}", file=sys.stderr)
        return EXIT_DEGREE
    except _INTERNAL_BOUND_ERRORS as exc:
        print(f"internal bound violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL_BOUND
    except (StreamFormatError, UncoloredVertexError, TooLargeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
