"""Search for low average-length code-tuples within explicit bounds.

`huffman_baseline` builds the classical single-table prefix-free optimum and
serves as an oracle for exhaustive searches at delay zero.  `search_optimal`
enumerates code-tuples cell by cell (table-major, symbol-major), pruning
assignments that already violate the delay conditions or that cannot beat the
best average length found so far, and skipping table-permutation duplicates
by keeping only the least serialization of each equivalence class.
Completeness claims are always relative to the supplied bounds.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from fractions import Fraction

from .core import EMPTY, BitString, CodeTuple, SourceDistribution
from .cost import average_length
from .decodability import is_k_delay_decodable
from .errors import InfeasibleBounds
from .followsets import is_extendable
from .markov import ZERO, is_regular

DEFAULT_CANDIDATE_BUDGET = 20000


@dataclass(frozen=True)
class SearchBounds:
    max_tables: int
    max_codeword_len: int
    exhaustive: bool = True

    def __post_init__(self):
        if self.max_tables < 1:
            raise ValueError("max_tables must be at least 1")
        if self.max_codeword_len < 1:
            raise ValueError("max_codeword_len must be at least 1")


@dataclass(frozen=True)
class SearchResult:
    best: CodeTuple
    best_length: Fraction
    explored: int
    complete: bool


def huffman_baseline(mu: SourceDistribution) -> tuple[CodeTuple, Fraction]:
    """Minimum-average-length prefix-free single table for mu.

    Ties when merging are broken toward the node created earliest (symbols
    before merged nodes, in index order); the earlier-popped child of a merge
    receives bit 0.
    """
    from .core import Alphabet

    sigma = len(mu)
    heap: list[tuple[Fraction, int, object]] = [
        (mu[s], s, s) for s in range(sigma)
    ]
    heapq.heapify(heap)
    order = itertools.count(sigma)
    while len(heap) > 1:
        w0, _, left = heapq.heappop(heap)
        w1, _, right = heapq.heappop(heap)
        heapq.heappush(heap, (w0 + w1, next(order), (left, right)))
    codes: dict[int, BitString] = {}

    def assign(node, prefix: BitString) -> None:
        if isinstance(node, int):
            codes[node] = prefix
        else:
            assign(node[0], prefix + BitString((0,)))
            assign(node[1], prefix + BitString((1,)))

    assign(heap[0][2], EMPTY)
    if sigma == 1:  # pragma: no cover - alphabet size is at least 2
        codes[0] = BitString((0,))
    alphabet = Alphabet(tuple(f"s{t}" for t in range(sigma)))
    table = CodeTuple(
        alphabet,
        (tuple(codes[s] for s in range(sigma)),),
        ((0,) * sigma,),
    )
    length = sum((mu[s] * codes[s].length for s in range(sigma)), ZERO)
    return table, length


def _codeword_choices(max_len: int) -> list[BitString]:
    out = [EMPTY]
    for n in range(1, max_len + 1):
        for v in range(1 << n):
            out.append(BitString._raw(n, v))
    return out


def _prefix_conflict(row: list[BitString | None], w: BitString) -> bool:
    for other in row:
        if other is None:
            continue
        if other.is_prefix_of(w) or w.is_prefix_of(other):
            return True
    return False


def _partial_violates(code, succ, sigma, m, k) -> bool:
    """Manifest delay violations of a partially assigned tuple.

    Unassigned cells contribute nothing; since filling them only enlarges the
    continuation sets, a nonempty intersection found here persists in every
    completion, so pruning is sound.
    """
    follow = [[{EMPTY}] + [set() for _ in range(k)] for _ in range(m)]
    changed = True
    while changed:
        changed = False
        for j in range(1, k + 1):
            for i in range(m):
                acc = set()
                for s in range(sigma):
                    w = code[i][s]
                    if w is None:
                        continue
                    if w.length >= j:
                        acc.add(w.take(j))
                    else:
                        for tail in follow[succ[i][s]][j - w.length]:
                            acc.add(w + tail)
                if acc != follow[i][j]:
                    follow[i][j] = acc
                    changed = True
    full = [follow[i][k] for i in range(m)]
    for i in range(m):
        assigned = [s for s in range(sigma) if code[i][s] is not None]
        for s in assigned:
            w = code[i][s]
            for s2 in assigned:
                if s2 <= s or code[i][s2] != w:
                    continue
                if full[succ[i][s]] & full[succ[i][s2]]:
                    return True
            bar = set()
            for s2 in assigned:
                w2 = code[i][s2]
                if not w.is_proper_prefix_of(w2):
                    continue
                r = w2.drop(w.length)
                if r.length >= k:
                    bar.add(r.take(k))
                else:
                    bar.update(r + tail for tail in follow[succ[i][s2]][k - r.length])
            if full[succ[i][s]] & bar:
                return True
    return False


def _canonical(F: CodeTuple) -> bool:
    """True iff F is the least serialization among table permutations."""
    m = F.num_tables
    if m == 1:
        return True
    key = tuple(F.table_key(i) for i in range(m))
    for perm in itertools.permutations(range(m)):
        inv = [0] * m
        for new, old in enumerate(perm):
            inv[old] = new
        permuted = tuple(
            tuple(
                (w.length, w.value, inv[j])
                for w, j in zip(F.code[old], F.succ[old])
            )
            for old in perm
        )
        if permuted < key:
            return False
    return True


def _search_m(
    m: int,
    mu: SourceDistribution,
    k: int,
    bounds: SearchBounds,
    state: dict,
) -> None:
    """Depth-first enumeration of all m-table tuples, updating state in place."""
    from .core import Alphabet

    sigma = len(mu)
    alphabet = Alphabet(tuple(f"s{t}" for t in range(sigma)))
    choices = _codeword_choices(bounds.max_codeword_len)
    # delay-zero tables are prefix-free, hence never contain the empty word
    min_remaining = 1 if (k == 0 or m == 1) else 0
    code: list[list[BitString | None]] = [[None] * sigma for _ in range(m)]
    succ: list[list[int]] = [[0] * sigma for _ in range(m)]
    cells = [(i, s) for i in range(m) for s in range(sigma)]

    def optimistic() -> Fraction:
        # a lower bound on the average length of any completion: the weighted
        # mean of per-table lengths is at least the smallest of them
        best_table = None
        for i in range(m):
            acc = ZERO
            for s in range(sigma):
                w = code[i][s]
                if w is not None:
                    acc += mu[s] * w.length
                else:
                    acc += mu[s] * min_remaining
            if best_table is None or acc < best_table:
                best_table = acc
        return best_table

    def descend(cell: int) -> None:
        if state["stop"]:
            return
        if cell == len(cells):
            state["explored"] += 1
            if not state["unbounded"] and state["explored"] >= state["budget"]:
                state["stop"] = True
            candidate = CodeTuple(
                alphabet,
                tuple(tuple(row) for row in code),
                tuple(tuple(row) for row in succ),
            )
            if not _canonical(candidate):
                return
            if not (
                is_regular(candidate)
                and is_extendable(candidate)
                and is_k_delay_decodable(candidate, k).decodable
            ):
                return
            length = average_length(candidate, mu)
            key = (length, tuple(candidate.table_key(i) for i in range(m)))
            if state["best_key"] is None or key < state["best_key"]:
                state["best_key"] = key
                state["best"] = candidate
            return
        i, s = cells[cell]
        for w in choices:
            if k == 0 and _prefix_conflict(code[i], w):
                continue
            code[i][s] = w
            if state["best_key"] is not None and optimistic() > state["best_key"][0]:
                code[i][s] = None
                continue
            for j in range(m):
                succ[i][s] = j
                if k > 0 and _partial_violates(code, succ, sigma, m, k):
                    continue
                descend(cell + 1)
                if state["stop"]:
                    break
            code[i][s] = None
            succ[i][s] = 0
            if state["stop"]:
                break

    descend(0)


def search_optimal(
    mu: SourceDistribution,
    k: int,
    bounds: SearchBounds,
    seed: CodeTuple | None = None,
    budget: int | None = None,
) -> SearchResult:
    """Minimum average length over regular, extendable, k-bit delay decodable
    tuples within the bounds (when exhaustive); the table cap is clamped to
    2^(2^k), beyond which no additional tables can help.

    A seed tuple, validated to lie inside the search space, initializes the
    best candidate; in non-exhaustive mode enumeration stops after `budget`
    completed candidates (default 20000) and `complete` reports whether the
    space was exhausted anyway.
    """
    max_tables = min(bounds.max_tables, 2 ** (2**k))
    state: dict = {
        "best": None,
        "best_key": None,
        "explored": 0,
        "stop": False,
        "unbounded": bounds.exhaustive,
        "budget": DEFAULT_CANDIDATE_BUDGET if budget is None else budget,
    }

    if seed is not None:
        if len(mu) != seed.sigma:
            raise ValueError("seed alphabet size does not match distribution")
        if seed.num_tables > max_tables or any(
            seed.f(i, s).length > bounds.max_codeword_len
            for i in range(seed.num_tables)
            for s in range(seed.sigma)
        ):
            raise ValueError("seed lies outside the search bounds")
        if not (
            is_regular(seed)
            and is_extendable(seed)
            and is_k_delay_decodable(seed, k).decodable
        ):
            raise ValueError("seed is not a valid code-tuple for this delay")
        state["best"] = seed
        state["best_key"] = (
            average_length(seed, mu),
            tuple(seed.table_key(i) for i in range(seed.num_tables)),
        )

    for m in range(1, max_tables + 1):
        if state["stop"]:
            break
        _search_m(m, mu, k, bounds, state)

    if state["best"] is None:
        raise InfeasibleBounds("no valid code-tuple within the given bounds")
    return SearchResult(
        state["best"],
        state["best_key"][0],
        state["explored"],
        complete=not state["stop"],
    )
