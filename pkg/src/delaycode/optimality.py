"""Recognizer for achievable bit prefixes and the optimality necessary check.

`prefix_dfa` builds, by subset construction, a deterministic automaton whose
language is exactly the bit strings some encoding from a given table emits as
a prefix; every state accepts (the language is prefix-closed) and transitions
are partial.

`check_necessary_condition` rejects code-tuples that waste a bit: an optimal
tuple must allow both continuations after any long-enough achievable prefix.
Concretely it demands that every DFA state reachable by a path of length at
least k has both a 0- and a 1-transition.  That finite condition is equivalent
to "every accepted b with |b| >= k has both one-bit extensions accepted":
a state reached by some b of length >= k with a missing transition gives a
rejected extension of an accepted string, and conversely a rejected extension
b'c of an accepted b' pins a deep state without a c-transition, by induction
on |b'|.  Dead-end states of non-extendable tuples would break the
equivalence, so extendability is part of the enforced precondition.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import BitString, CodeTuple
from .decodability import is_k_delay_decodable
from .errors import IndexOutOfRange, PreconditionFailed
from .followsets import is_extendable
from .markov import is_regular, r_set


@dataclass(frozen=True)
class PrefixDfa:
    """States are numbered from 0 (the start state); transitions[q] gives the
    successor on bit 0 and bit 1, or None where no achievable string
    continues.  Every state is accepting."""

    start: int
    transitions: tuple[tuple[int | None, int | None], ...]

    @property
    def num_states(self) -> int:
        return len(self.transitions)

    def accepts(self, b: BitString) -> bool:
        q = self.start
        for bit in b:
            nxt = self.transitions[q][bit]
            if nxt is None:
                return False
            q = nxt
        return True


def prefix_dfa(F: CodeTuple, i: int) -> PrefixDfa:
    """Deterministic recognizer of the achievable-prefix language of table i."""
    if not 0 <= i < F.num_tables:
        raise IndexOutOfRange(f"table {i} out of range")

    # NFA states: ("b", j) at a codeword boundary before table j, or
    # ("w", j, s, p) after p bits of codeword f_j(s).  Codewords of length
    # zero contribute epsilon-moves between boundary states.
    def closure(states: frozenset) -> frozenset:
        todo = list(states)
        out = set(states)
        while todo:
            st = todo.pop()
            if st[0] != "b":
                continue
            j = st[1]
            for s in range(F.sigma):
                if F.f(j, s).length == 0:
                    nxt = ("b", F.tau(j, s))
                    if nxt not in out:
                        out.add(nxt)
                        todo.append(nxt)
        return frozenset(out)

    def step(states: frozenset, bit: int) -> frozenset:
        out = set()
        for st in states:
            if st[0] == "b":
                j = st[1]
                for s in range(F.sigma):
                    w = F.f(j, s)
                    if w.length > 0 and w[0] == bit:
                        if w.length == 1:
                            out.add(("b", F.tau(j, s)))
                        else:
                            out.add(("w", j, s, 1))
            else:
                _, j, s, p = st
                w = F.f(j, s)
                if w[p] == bit:
                    if p + 1 == w.length:
                        out.add(("b", F.tau(j, s)))
                    else:
                        out.add(("w", j, s, p + 1))
        return closure(frozenset(out))

    start_set = closure(frozenset({("b", i)}))
    numbering = {start_set: 0}
    order = [start_set]
    transitions: list[list[int | None]] = []
    pos = 0
    while pos < len(order):
        cur = order[pos]
        row: list[int | None] = [None, None]
        for bit in (0, 1):
            nxt = step(cur, bit)
            if nxt:
                if nxt not in numbering:
                    numbering[nxt] = len(order)
                    order.append(nxt)
                row[bit] = numbering[nxt]
        transitions.append(row)
        pos += 1
    return PrefixDfa(0, tuple(tuple(r) for r in transitions))


@dataclass(frozen=True)
class OptimalityVerdict:
    passes: bool
    witness: tuple[int, BitString] | None  # (table, rejected extension)


def _deep_states(dfa: PrefixDfa, k: int) -> set[int]:
    """States reachable by some path of length >= k."""
    layer = {dfa.start}
    for _ in range(k):
        layer = {
            nxt
            for q in layer
            for nxt in dfa.transitions[q]
            if nxt is not None
        }
    deep = set(layer)
    todo = list(layer)
    while todo:
        q = todo.pop()
        for nxt in dfa.transitions[q]:
            if nxt is not None and nxt not in deep:
                deep.add(nxt)
                todo.append(nxt)
    return deep


def _least_witness(dfa: PrefixDfa, k: int) -> BitString | None:
    """Shortest, then lexicographically least, accepted string of length >= k
    whose final state misses a transition; None when every deep state has
    both.  Searches the product of DFA states with path length saturated at k,
    level by level, keeping the least label reaching each product node."""
    start = (dfa.start, 0)
    level: dict[tuple[int, int], BitString] = {start: BitString()}
    seen = {start}
    while level:
        candidates = [
            label + BitString((bit,))
            for (q, depth), label in level.items()
            if depth >= k
            for bit in (0, 1)
            if dfa.transitions[q][bit] is None
        ]
        if candidates:
            return min(candidates)
        nxt_level: dict[tuple[int, int], BitString] = {}
        for node, label in sorted(level.items(), key=lambda kv: kv[1]):
            q, depth = node
            for bit in (0, 1):
                target = dfa.transitions[q][bit]
                if target is None:
                    continue
                nxt = (target, min(depth + 1, k))
                if nxt not in seen:
                    seen.add(nxt)
                    nxt_level[nxt] = label + BitString((bit,))
        level = nxt_level
    return None


def check_necessary_condition(F: CodeTuple, k: int) -> OptimalityVerdict:
    """Test the bit-saturation condition every optimal tuple must satisfy.

    Fails (with a witness prefix whose k-bit head is achievable but which is
    itself not achievable) when some always-reachable table admits a deep
    one-way state; passing is necessary, not sufficient, for optimality.
    """
    failed = []
    if not is_regular(F):
        failed.append("regular")
    if not is_extendable(F):
        failed.append("extendable")
    if not is_k_delay_decodable(F, k).decodable:
        failed.append(f"{k}-bit-delay-decodable")
    if failed:
        raise PreconditionFailed(tuple(failed))

    for i in sorted(r_set(F)):
        witness = _least_witness(prefix_dfa(F, i), k)
        if witness is not None:
            return OptimalityVerdict(False, (i, witness))
    return OptimalityVerdict(True, None)
