"""Achievable-prefix sets of a code-tuple.

For a table i and depth j, the follow set W(i, j) collects every j-bit
sequence that some encoding starting at table i can emit as a prefix.  The
sets satisfy a monotone recurrence (a codeword either covers the whole depth
or contributes its bits plus the follow set of its successor table) and are
computed as a least fixed point; codewords of length zero create same-depth
dependencies which the iteration resolves without special cases.

Everything else here is derived from the follow sets: the k-bit continuation
sets of a given codeword prefix, membership in the achievable-prefix language,
extendability, and the family of per-table continuation sets.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import EMPTY, BitString, CodeTuple
from .errors import IndexOutOfRange

MAX_DEPTH = 16  # follow sets hold up to 2^k elements; beyond this is out of scope


def _check_depth(k: int) -> None:
    if k < 0:
        raise ValueError("depth must be nonnegative")
    if k > MAX_DEPTH:
        raise ValueError(f"depth {k} exceeds the supported cap {MAX_DEPTH}")


@dataclass(frozen=True)
class FollowSetTable:
    """Per (table, depth j <= k): the set of achievable j-bit prefixes."""

    depth: int
    sets: tuple[tuple[frozenset[BitString], ...], ...]

    def achievable(self, table: int, j: int) -> frozenset[BitString]:
        return self.sets[table][j]


def build_follow_sets(F: CodeTuple, k: int) -> FollowSetTable:
    """Least fixed point of the follow-set recurrence up to depth k."""
    _check_depth(k)
    m = F.num_tables
    work: list[list[set[BitString]]] = [
        [{EMPTY}] + [set() for _ in range(k)] for _ in range(m)
    ]
    changed = True
    while changed:
        changed = False
        for j in range(1, k + 1):
            for i in range(m):
                acc: set[BitString] = set()
                for s in range(F.sigma):
                    w = F.f(i, s)
                    if w.length >= j:
                        acc.add(w.take(j))
                    else:
                        for tail in work[F.tau(i, s)][j - w.length]:
                            acc.add(w + tail)
                if acc != work[i][j]:
                    work[i][j] = acc
                    changed = True
    return FollowSetTable(
        k, tuple(tuple(frozenset(per_j) for per_j in per_i) for per_i in work)
    )


def _continuations(
    F: CodeTuple,
    follow: FollowSetTable,
    i: int,
    k: int,
    b: BitString,
    strict: bool,
) -> frozenset[BitString]:
    """k-bit continuations of prefix b through first codewords extending b.

    Only symbols whose first codeword extends b (strictly, when requested)
    contribute; a prefix b reachable only across several codewords therefore
    yields the empty set.
    """
    out: set[BitString] = set()
    for s in range(F.sigma):
        w = F.f(i, s)
        if not b.is_prefix_of(w):
            continue
        if strict and w.length == b.length:
            continue
        r = w.drop(b.length)
        if r.length >= k:
            out.add(r.take(k))
        else:
            for tail in follow.achievable(F.tau(i, s), k - r.length):
                out.add(r + tail)
    return frozenset(out)


def pk_set(
    F: CodeTuple,
    i: int,
    k: int,
    b: BitString = EMPTY,
    follow: FollowSetTable | None = None,
) -> frozenset[BitString]:
    """All k-bit sequences continuing b when the first codeword extends b."""
    if not 0 <= i < F.num_tables:
        raise IndexOutOfRange(f"table {i} out of range")
    _check_depth(k)
    if follow is None or follow.depth < k:
        follow = build_follow_sets(F, k)
    return _continuations(F, follow, i, k, b, strict=False)


def pbar_set(
    F: CodeTuple,
    i: int,
    k: int,
    b: BitString = EMPTY,
    follow: FollowSetTable | None = None,
) -> frozenset[BitString]:
    """Like pk_set, but the first codeword must extend b strictly."""
    if not 0 <= i < F.num_tables:
        raise IndexOutOfRange(f"table {i} out of range")
    _check_depth(k)
    if follow is None or follow.depth < k:
        follow = build_follow_sets(F, k)
    return _continuations(F, follow, i, k, b, strict=True)


def mem_pstar(F: CodeTuple, i: int, b: BitString) -> bool:
    """True iff some encoding starting at table i emits b as a prefix.

    Decided by reachability over (table, matched-offset) states, so b may be
    arbitrarily long.
    """
    if not 0 <= i < F.num_tables:
        raise IndexOutOfRange(f"table {i} out of range")
    n = b.length
    seen = {(i, 0)}
    stack = [(i, 0)]
    while stack:
        j, o = stack.pop()
        if o == n:
            return True
        rest = b.drop(o)
        for s in range(F.sigma):
            w = F.f(j, s)
            if rest.is_prefix_of(w):
                return True
            if w.is_prefix_of(rest):
                nxt = (F.tau(j, s), o + w.length)
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
    return False


def is_extendable(F: CodeTuple) -> bool:
    """True iff every table can eventually emit at least one bit."""
    follow = build_follow_sets(F, 1)
    return all(follow.achievable(i, 1) for i in range(F.num_tables))


def pk_family(F: CodeTuple, k: int) -> frozenset[frozenset[BitString]]:
    """The set of distinct per-table k-bit continuation sets."""
    _check_depth(k)
    follow = build_follow_sets(F, k)
    return frozenset(
        _continuations(F, follow, i, k, EMPTY, strict=False)
        for i in range(F.num_tables)
    )
