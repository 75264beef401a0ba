"""The k-bit delay decodability test and the pair-classification cross-check.

A code-tuple is k-bit delay decodable when, after any already-identified
prefix, the k bits following the current position always discriminate between
the candidate interpretations of the pending codeword: continuations through a
completed codeword must not collide with continuations through a strict
extension of it (condition "extension"), and two symbols sharing the same
codeword must have disjoint continuation sets (condition "collision").

`classify_pair` is an independent cross-check used by the test-suite: it
re-derives decodability pair by pair, quantifying over candidate source
strings up to an explicit horizon, without touching the follow-set machinery.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .core import BitString, CodeTuple, SymbolString
from .errors import IndexOutOfRange
from .followsets import build_follow_sets, _continuations
from .semantics import encode_star

COND_EXTENSION = "extension"
COND_COLLISION = "collision"


@dataclass(frozen=True)
class Witness:
    """A concrete violation: at table i, symbol s (and s2 for collisions),
    the k-bit sequence clash lies in both continuation sets."""

    condition: str
    table: int
    symbol: int
    symbol2: int | None
    clash: BitString


@dataclass(frozen=True)
class DecodabilityVerdict:
    decodable: bool
    witness: Witness | None


def is_k_delay_decodable(F: CodeTuple, k: int) -> DecodabilityVerdict:
    """Decide k-bit delay decodability; on failure return the least witness.

    Violations are ordered by (table, symbol, second symbol, clash), with
    collision witnesses at a given symbol preceding extension witnesses.
    """
    if k < 0:
        raise ValueError("delay must be nonnegative")
    follow = build_follow_sets(F, k)
    full = [follow.achievable(j, k) for j in range(F.num_tables)]
    for i in range(F.num_tables):
        for s in range(F.sigma):
            w = F.f(i, s)
            for s2 in range(s + 1, F.sigma):
                if F.f(i, s2) == w:
                    inter = full[F.tau(i, s)] & full[F.tau(i, s2)]
                    if inter:
                        return DecodabilityVerdict(
                            False, Witness(COND_COLLISION, i, s, s2, min(inter))
                        )
            bar = _continuations(F, follow, i, k, w, strict=True)
            inter = full[F.tau(i, s)] & bar
            if inter:
                return DecodabilityVerdict(
                    False, Witness(COND_EXTENSION, i, s, None, min(inter))
                )
    return DecodabilityVerdict(True, None)


def is_prefix_free(F: CodeTuple, i: int) -> bool:
    """True iff no codeword of table i is a prefix of another one."""
    if not 0 <= i < F.num_tables:
        raise IndexOutOfRange(f"table {i} out of range")
    row = F.code[i]
    for s, w in enumerate(row):
        for s2, w2 in enumerate(row):
            if s != s2 and w.is_prefix_of(w2):
                return False
    return True


class PairClass(enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    NEITHER = "neither"


def classify_pair(
    F: CodeTuple, i: int, x: SymbolString, c: BitString, horizon: int
) -> PairClass:
    """Classify (x, c) by how candidate strings x' relate to x.

    Quantifying over x' of length at most `horizon` whose encoding from table
    i extends encode(x)+c: POSITIVE when every such x' extends x, NEGATIVE
    when none does, NEITHER when both kinds occur.  (When no x' qualifies,
    both conditions hold vacuously and POSITIVE is reported.)

    The search walks candidate strings breadth-first, tracking only the
    emitted-bit position inside the target, the current table, and whether the
    candidate is still on x's path; a state reached once need not be revisited
    deeper, so the walk is exact for the bounded quantifier.  For extendable,
    k-bit delay decodable tuples a horizon of |F| * (|target| + 1) symbols is
    enough to expose every witness, since every |F| consecutive symbols emit
    at least one bit.
    """
    if horizon < len(x):
        raise ValueError("horizon must be at least |x|")
    target = encode_star(F, i, x).codeword + c
    n = target.length
    extends_x = False  # some qualifying x' has x as a prefix
    avoids_x = False  # some qualifying x' does not

    def note(pos: int) -> None:
        # A qualifying candidate was found; pos encodes its relation to x.
        nonlocal extends_x, avoids_x
        if pos == -1:
            avoids_x = True
        elif pos >= len(x):
            extends_x = True
        else:
            # the candidate is a proper prefix of x, so it avoids x, and
            # prolonging it to x itself also qualifies (encodings only grow)
            avoids_x = True
            extends_x = True

    # state: (table, emitted bits o <= n, pos) where 0 <= pos < len(x) means
    # the candidate equals x[:pos] so far, pos == len(x) that it extends x,
    # and pos == -1 that it has diverged from x.
    start = (i, 0, 0)
    frontier = {start}
    seen = {start}
    for step in range(horizon + 1):
        if extends_x and avoids_x:
            break
        nxt: set[tuple[int, int, int]] = set()
        for j, o, pos in frontier:
            if o == n:
                note(pos)
                continue
            if step == horizon:
                continue
            rest = target.drop(o)
            for s in range(F.sigma):
                if pos == -1 or pos >= len(x):
                    npos = pos
                else:
                    npos = pos + 1 if s == x[pos] else -1
                w = F.f(j, s)
                if rest.is_prefix_of(w):
                    note(npos)
                    continue
                if not w.is_prefix_of(rest):
                    continue
                state = (F.tau(j, s), o + w.length, npos)
                if state not in seen:
                    seen.add(state)
                    nxt.add(state)
        if not nxt:
            break
        frontier = nxt

    if extends_x and avoids_x:
        return PairClass.NEITHER
    if extends_x:
        return PairClass.POSITIVE
    if avoids_x:
        return PairClass.NEGATIVE
    return PairClass.POSITIVE
