"""Canonical text formats for code-tuples and distributions, plus the CLI.

A code-tuple document looks like::

    codetuple v1
    alphabet a b c d
    tables 3
    table 0
    a 01 0
    b 10 1
    c 0100 0
    d 01 2
    table 1
    ...

'-' denotes the empty codeword.  A distribution document pairs each symbol
with an exact rational, written either as p/q or as a decimal string::

    distribution v1
    a 0.1
    b 0.2
    c 0.3
    d 0.4

Parsing ignores blank lines and '#' comments; serialization is canonical and
`parse(serialize(F))` is the identity.  Reports are byte-identical across
runs; rationals print in lowest terms with an optional decimal rendering
(`--decimals`, default 6 digits, trailing zeros trimmed).
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from math import lcm

from .core import EMPTY, Alphabet, BitString, CodeTuple, SourceDistribution
from .cost import average_length, bias_vector, table_length
from .decodability import is_k_delay_decodable
from .errors import (
    DelaycodeError,
    InconsistentBits,
    InfeasibleBounds,
    NotDecodable,
    ParseError,
    PreconditionFailed,
)
from .followsets import is_extendable, pbar_set, pk_set, build_follow_sets
from .markov import (
    is_irreducible,
    is_regular,
    r_set,
    stationary_distribution,
    transition_matrix,
)
from .optimality import check_necessary_condition
from .reduction import reduce_to_distinct
from .search import SearchBounds, search_optimal
from .semantics import decode_delayed, encode_star

FORMAT_HEADER = "codetuple v1"
DIST_HEADER = "distribution v1"


# --------------------------------------------------------------------------
# formatting helpers


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_decimal(q: Fraction, decimals: int = 6) -> str:
    """Exact fixed-point rendering (round half to even), trailing zeros
    trimmed."""
    if decimals < 0:
        raise ValueError("decimals must be nonnegative")
    sign = "-" if q < 0 else ""
    q = abs(q)
    scaled = q.numerator * 10**decimals
    quo, rem = divmod(scaled, q.denominator)
    if 2 * rem > q.denominator or (2 * rem == q.denominator and quo % 2 == 1):
        quo += 1
    if decimals == 0:
        return sign + str(quo)
    text = str(quo).rjust(decimals + 1, "0")
    whole, frac = text[:-decimals], text[-decimals:]
    frac = frac.rstrip("0")
    return sign + (f"{whole}.{frac}" if frac else whole)


def _format_bits(b: BitString) -> str:
    return str(b) if b.length else "-"


def _format_set(bits: frozenset[BitString]) -> str:
    return "{" + ", ".join(_format_bits(b) for b in sorted(bits)) + "}"


# --------------------------------------------------------------------------
# documents


def serialize_code_tuple(F: CodeTuple) -> str:
    lines = [FORMAT_HEADER, "alphabet " + " ".join(F.alphabet.labels)]
    lines.append(f"tables {F.num_tables}")
    for i in range(F.num_tables):
        lines.append(f"table {i}")
        for s, label in enumerate(F.alphabet.labels):
            lines.append(f"{label} {_format_bits(F.f(i, s))} {F.tau(i, s)}")
    return "\n".join(lines) + "\n"


def _content_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((no, line))
    return out


def parse_code_tuple(text: str) -> CodeTuple:
    lines = _content_lines(text)
    if not lines or lines[0][1] != FORMAT_HEADER:
        raise ParseError(lines[0][0] if lines else 1, f"expected '{FORMAT_HEADER}'")
    pos = 1

    def need(what: str) -> tuple[int, str]:
        if pos >= len(lines):
            raise ParseError(lines[-1][0] + 1, f"unexpected end of file, expected {what}")
        return lines[pos]

    no, line = need("alphabet")
    if not line.startswith("alphabet "):
        raise ParseError(no, "expected 'alphabet <labels...>'")
    try:
        alphabet = Alphabet(tuple(line.split()[1:]))
    except ValueError as exc:
        raise ParseError(no, str(exc)) from None
    pos += 1

    no, line = need("table count")
    parts = line.split()
    if len(parts) != 2 or parts[0] != "tables" or not parts[1].isdigit():
        raise ParseError(no, "expected 'tables <m>'")
    m = int(parts[1])
    if m < 1:
        raise ParseError(no, "table count must be at least 1")
    pos += 1

    code: list[tuple[BitString, ...]] = []
    succ: list[tuple[int, ...]] = []
    for i in range(m):
        no, line = need(f"'table {i}'")
        if line != f"table {i}":
            raise ParseError(no, f"expected 'table {i}', got {line!r}")
        pos += 1
        row_code: dict[int, BitString] = {}
        row_succ: dict[int, int] = {}
        for _ in range(alphabet.size):
            no, line = need("a symbol row")
            parts = line.split()
            if len(parts) != 3:
                raise ParseError(no, "expected '<symbol> <codeword|-> <next-table>'")
            label, word, nxt = parts
            try:
                s = alphabet.index_of(label)
            except KeyError:
                raise ParseError(no, f"unknown symbol {label!r}") from None
            if s in row_code:
                raise ParseError(no, f"duplicate row for symbol {label!r}")
            try:
                row_code[s] = EMPTY if word == "-" else BitString.from_text(word)
            except ValueError as exc:
                raise ParseError(no, str(exc)) from None
            if not nxt.isdigit() or not 0 <= int(nxt) < m:
                raise ParseError(no, f"next-table index {nxt!r} out of range 0..{m - 1}")
            row_succ[s] = int(nxt)
            pos += 1
        code.append(tuple(row_code[s] for s in range(alphabet.size)))
        succ.append(tuple(row_succ[s] for s in range(alphabet.size)))
    if pos != len(lines):
        raise ParseError(lines[pos][0], "unexpected trailing content")
    return CodeTuple(alphabet, tuple(code), tuple(succ))


def serialize_distribution(labels: tuple[str, ...], mu: SourceDistribution) -> str:
    lines = [DIST_HEADER]
    for label, p in zip(labels, mu.probs):
        lines.append(f"{label} {format_rational(p)}")
    return "\n".join(lines) + "\n"


def parse_distribution(text: str) -> tuple[tuple[str, ...], SourceDistribution]:
    lines = _content_lines(text)
    if not lines or lines[0][1] != DIST_HEADER:
        raise ParseError(lines[0][0] if lines else 1, f"expected '{DIST_HEADER}'")
    labels: list[str] = []
    values: list[Fraction] = []
    for no, line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(no, "expected '<symbol> <probability>'")
        if parts[0] in labels:
            raise ParseError(no, f"duplicate symbol {parts[0]!r}")
        labels.append(parts[0])
        try:
            values.append(Fraction(parts[1]))
        except (ValueError, ZeroDivisionError):
            raise ParseError(no, f"invalid probability {parts[1]!r}") from None
    try:
        mu = SourceDistribution(tuple(values))
    except ValueError as exc:
        raise ParseError(lines[0][0], str(exc)) from None
    return tuple(labels), mu


# --------------------------------------------------------------------------
# subcommands


def _load_tuple(path: str) -> CodeTuple:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_code_tuple(fh.read())


def _load_dist(path: str, F: CodeTuple | None) -> SourceDistribution:
    with open(path, "r", encoding="utf-8") as fh:
        labels, mu = parse_distribution(fh.read())
    if F is not None and labels != F.alphabet.labels:
        raise ParseError(1, "distribution symbols do not match the code-tuple alphabet")
    return mu


def _cmd_validate(args, out) -> int:
    F = _load_tuple(args.file)
    verdict = is_k_delay_decodable(F, args.delay)
    print(f"{args.delay}-bit delay decodable: {'yes' if verdict.decodable else 'no'}", file=out)
    if verdict.decodable:
        return 0
    w = verdict.witness
    print(f"witness condition = {w.condition}", file=out)
    print(f"witness table = {w.table}", file=out)
    labels = F.alphabet.labels
    syms = labels[w.symbol] if w.symbol2 is None else f"{labels[w.symbol]} {labels[w.symbol2]}"
    print(f"witness symbols = {syms}", file=out)
    print(f"witness bits = {_format_bits(w.clash)}", file=out)
    return 1


def _cmd_analyze(args, out) -> int:
    F = _load_tuple(args.file)
    mu = _load_dist(args.dist, F)
    dec = args.decimals
    print(f"tables = {F.num_tables}", file=out)
    print("alphabet = " + " ".join(F.alphabet.labels), file=out)
    q = transition_matrix(F, mu)
    for i, row in enumerate(q):
        print(f"Q[{i}] = " + " ".join(format_rational(v) for v in row), file=out)
    reachable = sorted(r_set(F))
    print("R = " + (" ".join(str(i) for i in reachable) if reachable else "(empty)"), file=out)
    regular = is_regular(F)
    irreducible = is_irreducible(F)
    print(f"regular = {'yes' if regular else 'no'}", file=out)
    print(f"irreducible = {'yes' if irreducible else 'no'}", file=out)
    print(f"extendable = {'yes' if is_extendable(F) else 'no'}", file=out)
    for i in range(F.num_tables):
        li = table_length(F, mu, i)
        print(f"L[{i}] = {format_rational(li)} ({format_decimal(li, dec)})", file=out)
    if regular:
        pi = stationary_distribution(F, mu)
        denom = lcm(*(v.denominator for v in pi))
        print(
            "pi = " + " ".join(f"{v.numerator * (denom // v.denominator)}/{denom}" for v in pi),
            file=out,
        )
        avg = average_length(F, mu)
        print(f"L = {format_rational(avg)} ({format_decimal(avg, dec)})", file=out)
    if irreducible:
        h = bias_vector(F, mu)
        print("h = " + " ".join(format_rational(v) for v in h), file=out)
    return 0


def _cmd_encode(args, out) -> int:
    F = _load_tuple(args.file)
    word = F.alphabet.parse_word(args.word)
    result = encode_star(F, args.table, word)
    print(f"codeword = {_format_bits(result.codeword)}", file=out)
    print(f"final table = {result.final_table}", file=out)
    return 0


def _cmd_decode(args, out) -> int:
    F = _load_tuple(args.file)
    bits = EMPTY if args.bits == "-" else BitString.from_text(args.bits)
    result = decode_delayed(F, args.table, args.delay, bits)
    rendered = F.alphabet.render_word(result.decoded)
    print(f"decoded = {rendered if rendered else '-'}", file=out)
    print(f"bits consumed = {result.bits_consumed}", file=out)
    print(f"ambiguous tail = {'yes' if result.ambiguous_tail else 'no'}", file=out)
    return 0


def _cmd_pk(args, out) -> int:
    F = _load_tuple(args.file)
    prefix = EMPTY if args.prefix in ("", "-") else BitString.from_text(args.prefix)
    follow = build_follow_sets(F, args.delay)
    tables = [args.table] if args.table is not None else list(range(F.num_tables))
    for i in tables:
        p = pk_set(F, i, args.delay, prefix, follow)
        pbar = pbar_set(F, i, args.delay, prefix, follow)
        print(f"P[{i}] = {_format_set(p)}", file=out)
        print(f"Pbar[{i}] = {_format_set(pbar)}", file=out)
    return 0


def _cmd_reduce(args, out) -> int:
    F = _load_tuple(args.file)
    mu = _load_dist(args.dist, F)
    result, trace = reduce_to_distinct(F, mu, args.delay)
    for n, step in enumerate(trace.steps, start=1):
        dropped = " ".join(str(i) for i in step.dropped) or "none"
        merged = " ".join(str(i) for i in step.merged) or "none"
        rep = "-" if step.representative is None else str(step.representative)
        print(
            f"step {n}: dropped = {dropped}; merged = {merged} -> {rep}; "
            f"L {format_rational(step.length_before)} -> {format_rational(step.length_after)}",
            file=out,
        )
    avg = average_length(result, mu)
    print(f"tables = {result.num_tables}", file=out)
    print(f"L = {format_rational(avg)} ({format_decimal(avg, args.decimals)})", file=out)
    print(serialize_code_tuple(result), end="", file=out)
    return 0


def _cmd_necessary(args, out) -> int:
    F = _load_tuple(args.file)
    verdict = check_necessary_condition(F, args.delay)
    if verdict.passes:
        print("necessary condition: satisfied", file=out)
        return 0
    table, bits = verdict.witness
    print("necessary condition: violated", file=out)
    print(f"witness table = {table}", file=out)
    print(f"witness bits = {_format_bits(bits)}", file=out)
    return 1


def _cmd_search(args, out) -> int:
    labels_mu = None
    with open(args.dist, "r", encoding="utf-8") as fh:
        labels_mu = parse_distribution(fh.read())
    labels, mu = labels_mu
    seed = None
    if args.seed:
        seed_tuple = _load_tuple(args.seed)
        if seed_tuple.alphabet.labels != labels:
            raise ParseError(1, "seed alphabet does not match the distribution")
        seed = seed_tuple
    bounds = SearchBounds(args.max_tables, args.max_len, exhaustive=args.exhaustive)
    result = search_optimal(mu, args.delay, bounds, seed=seed, budget=args.budget)
    best = CodeTuple(Alphabet(labels), result.best.code, result.best.succ)
    print(
        f"best L = {format_rational(result.best_length)} "
        f"({format_decimal(result.best_length, args.decimals)})",
        file=out,
    )
    print(f"explored = {result.explored}", file=out)
    print(f"complete = {'yes' if result.complete else 'no'}", file=out)
    print(serialize_code_tuple(best), end="", file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="delaycode",
        description="Build, validate, analyze, reduce and search k-bit delay decodable codes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, dist=False, delay=False, table=False):
        if delay:
            p.add_argument("--delay", type=int, required=True, help="delay bound k")
        if dist:
            p.add_argument("--dist", required=True, help="distribution file")
        if table:
            p.add_argument("--table", type=int, default=0, help="initial table index")
        p.add_argument("--decimals", type=int, default=6, help="decimal digits in reports")

    p = sub.add_parser("validate", help="test k-bit delay decodability")
    p.add_argument("file")
    add_common(p, delay=True)
    p.set_defaults(handler=_cmd_validate)

    p = sub.add_parser("analyze", help="transition matrix, stationary vector, lengths")
    p.add_argument("file")
    add_common(p, dist=True)
    p.set_defaults(handler=_cmd_analyze)

    p = sub.add_parser("encode", help="encode a source word")
    p.add_argument("file")
    p.add_argument("word")
    add_common(p, table=True)
    p.set_defaults(handler=_cmd_encode)

    p = sub.add_parser("decode", help="decode a complete bit sequence")
    p.add_argument("file")
    p.add_argument("bits")
    add_common(p, delay=True, table=True)
    p.set_defaults(handler=_cmd_decode)

    p = sub.add_parser("pk", help="print k-bit continuation sets")
    p.add_argument("file")
    add_common(p, delay=True)
    p.add_argument("--table", type=int, default=None, help="restrict to one table")
    p.add_argument("--prefix", default="", help="codeword prefix (default empty)")
    p.set_defaults(handler=_cmd_pk)

    p = sub.add_parser("reduce", help="merge tables with equal continuation sets")
    p.add_argument("file")
    add_common(p, dist=True, delay=True)
    p.set_defaults(handler=_cmd_reduce)

    p = sub.add_parser("necessary", help="check the optimality necessary condition")
    p.add_argument("file")
    add_common(p, delay=True)
    p.set_defaults(handler=_cmd_necessary)

    p = sub.add_parser("search", help="search for a minimum-L code-tuple within bounds")
    add_common(p, dist=True, delay=True)
    p.add_argument("--max-tables", type=int, required=True)
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--seed", default=None, help="code-tuple file seeding the search")
    p.add_argument("--budget", type=int, default=None, help="candidate cap when not exhaustive")
    p.add_argument("--jobs", type=int, default=1, help="accepted for compatibility; output is independent of it")
    p.set_defaults(handler=_cmd_search)

    return parser


def run_cli(argv: list[str], out=None, err=None) -> int:
    """Run one CLI invocation; returns the exit code (0 ok, 1 failed verdict,
    2 usage or input errors)."""
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args, out)
    except (NotDecodable, PreconditionFailed) as exc:
        print(f"error: {exc}", file=err)
        return 1
    except (ParseError, InconsistentBits, InfeasibleBounds) as exc:
        print(f"error: {exc}", file=err)
        return 2
    except (DelaycodeError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=err)
        return 2


def main() -> None:  # pragma: no cover - thin wrapper
    sys.exit(run_cli(sys.argv[1:]))
