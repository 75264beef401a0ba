"""Shrink a code-tuple until its per-table continuation sets are distinct.

The pipeline alternates two moves that never increase the average length:
extract the irreducible part (dropping transient tables), and, while two
tables share the same k-bit continuation set, redirect every successor
pointing into that duplicate class onto its minimum-bias member.  The
redirection preserves all continuation sets and k-bit delay decodability, and
strictly reduces the table count once the irreducible part is taken again, so
the loop ends after at most the initial number of tables, with at most
2^(2^k) tables remaining.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import CodeTuple, SourceDistribution
from .cost import average_length, bias_vector
from .decodability import is_k_delay_decodable
from .errors import PreconditionFailed
from .followsets import build_follow_sets, is_extendable, pk_family, _continuations
from .core import EMPTY
from .markov import irreducible_part, is_irreducible, is_regular


@dataclass(frozen=True)
class ReductionStep:
    """One pass: tables dropped with the irreducible part, the duplicate class
    merged (empty on a final drop-only pass), its representative, and the
    average length before and after."""

    dropped: tuple[int, ...]
    merged: tuple[int, ...]
    representative: int | None
    length_before: Fraction
    length_after: Fraction


@dataclass(frozen=True)
class ReductionTrace:
    steps: tuple[ReductionStep, ...]


def _pk_sets(F: CodeTuple, k: int) -> list[frozenset]:
    follow = build_follow_sets(F, k)
    return [
        _continuations(F, follow, i, k, EMPTY, strict=False)
        for i in range(F.num_tables)
    ]


def reduce_to_distinct(
    F: CodeTuple, mu: SourceDistribution, k: int
) -> tuple[CodeTuple, ReductionTrace]:
    """Return an equivalent-or-better code-tuple with pairwise-distinct k-bit
    continuation sets, plus the trace of merges performed."""
    failed = []
    if not is_regular(F):
        failed.append("regular")
    if not is_extendable(F):
        failed.append("extendable")
    if not is_k_delay_decodable(F, k).decodable:
        failed.append(f"{k}-bit-delay-decodable")
    if failed:
        raise PreconditionFailed(tuple(failed))

    original_family = pk_family(F, k)
    original_length = average_length(F, mu)

    current = F
    steps: list[ReductionStep] = []
    for _ in range(F.num_tables + 1):
        part, embedding = irreducible_part(current)
        dropped = tuple(
            i for i in range(current.num_tables) if i not in set(embedding)
        )
        sets = _pk_sets(part, k)
        duplicate = None
        for a in range(part.num_tables):
            for b in range(a + 1, part.num_tables):
                if sets[a] == sets[b]:
                    duplicate = a
                    break
            if duplicate is not None:
                break
        if duplicate is None:
            if dropped:
                length = average_length(part, mu)
                steps.append(ReductionStep(dropped, (), None, length, length))
            current = part
            break

        merged = tuple(
            i for i in range(part.num_tables) if sets[i] == sets[duplicate]
        )
        h = bias_vector(part, mu)
        rep = min(merged, key=lambda i: (h[i], i))
        members = set(merged)
        succ = tuple(
            tuple(
                rep if part.tau(i, s) in members else part.tau(i, s)
                for s in range(part.sigma)
            )
            for i in range(part.num_tables)
        )
        redirected = part.with_successors(succ)

        # the redirection must leave every continuation set unchanged
        assert _pk_sets(redirected, k) == sets

        steps.append(
            ReductionStep(
                dropped,
                merged,
                rep,
                average_length(part, mu),
                average_length(redirected, mu),
            )
        )
        current = redirected
    else:  # pragma: no cover - table count strictly decreases
        raise RuntimeError("reduction failed to terminate")

    result = current
    verified = []
    if not is_irreducible(result):
        verified.append("irreducible")
    if not is_extendable(result):
        verified.append("extendable")
    if not is_k_delay_decodable(result, k).decodable:
        verified.append(f"{k}-bit-delay-decodable")
    family = pk_family(result, k)
    if average_length(result, mu) > original_length:
        verified.append("length-not-increased")
    if not family <= original_family:
        verified.append("family-contained")
    if len(family) != result.num_tables:
        verified.append("family-distinct")
    if result.num_tables > 2 ** (2**k):
        verified.append("table-bound")
    if verified:  # pragma: no cover - guards the pipeline's own guarantees
        raise RuntimeError(f"reduction output failed checks: {verified}")
    return result, ReductionTrace(tuple(steps))
