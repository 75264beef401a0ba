"""Encoding and delayed decoding of source strings.

The encoder walks the successor maps, concatenating one codeword per symbol.
The decoder receives the complete transmitted bit sequence and replays every
parse of it simultaneously, emitting a source symbol as soon as all surviving
parses agree on it.  End of input is meaningful: once the whole sequence has
been read, parses that would require further bits to finish their current
codeword are discarded (the transmission is over), which is what lets the
final symbol be resolved without k bits of lookahead beyond it.
"""

from __future__ import annotations

from typing import NamedTuple

from .core import EMPTY, BitString, CodeTuple, SymbolString
from .errors import InconsistentBits, IndexOutOfRange, NotDecodable


class EncodeResult(NamedTuple):
    codeword: BitString
    final_table: int


class DecodeResult(NamedTuple):
    decoded: SymbolString
    bits_consumed: int
    ambiguous_tail: bool


def encode_star(F: CodeTuple, i: int, x: SymbolString) -> EncodeResult:
    """Encode x starting from table i; returns the codeword sequence and the
    table the encoder would use next."""
    if not 0 <= i < F.num_tables:
        raise IndexOutOfRange(f"table {i} out of range")
    out = EMPTY
    table = i
    for s in x:
        if not 0 <= s < F.sigma:
            raise IndexOutOfRange(f"symbol {s} out of range")
        out = out + F.f(table, s)
        table = F.tau(table, s)
    return EncodeResult(out, table)


def _stream_reach(F: CodeTuple, c: BitString) -> set[tuple[int, int]]:
    """States (table, offset) from which the rest of c can be covered.

    (j, o) is included iff some source string emits a bit sequence extending
    c[o:] when encoding starts at table j.  Computed as a least fixed point.
    """
    m = F.num_tables
    n = c.length
    reach: set[tuple[int, int]] = {(j, n) for j in range(m)}
    changed = True
    while changed:
        changed = False
        for j in range(m):
            for o in range(n - 1, -1, -1):
                if (j, o) in reach:
                    continue
                rest = c.drop(o)
                for s in range(F.sigma):
                    w = F.f(j, s)
                    if rest.is_prefix_of(w):
                        break
                    if w.is_prefix_of(rest) and (F.tau(j, s), o + w.length) in reach:
                        break
                else:
                    continue
                reach.add((j, o))
                changed = True
    return reach


def _exact_reach(F: CodeTuple, c: BitString) -> set[tuple[int, int]]:
    """States (table, offset) from which c[o:] equals f*_j(y) for some y."""
    m = F.num_tables
    n = c.length
    reach: set[tuple[int, int]] = {(j, n) for j in range(m)}
    changed = True
    while changed:
        changed = False
        for j in range(m):
            for o in range(n, -1, -1):
                if (j, o) in reach:
                    continue
                rest = c.drop(o)
                for s in range(F.sigma):
                    w = F.f(j, s)
                    if w.is_prefix_of(rest) and (F.tau(j, s), o + w.length) in reach:
                        break
                else:
                    continue
                reach.add((j, o))
                changed = True
    return reach


def decode_delayed(F: CodeTuple, i: int, k: int, c: BitString) -> DecodeResult:
    """Decode the complete bit sequence c, read from table i.

    Returns the longest source prefix on which every parse of c agrees,
    the number of input bits those symbols account for, and whether
    unresolved bits remain.
    """
    from .decodability import is_k_delay_decodable

    if not 0 <= i < F.num_tables:
        raise IndexOutOfRange(f"table {i} out of range")
    if not is_k_delay_decodable(F, k).decodable:
        raise NotDecodable(f"code-tuple is not {k}-bit delay decodable")

    stream = _stream_reach(F, c)
    if (i, 0) not in stream:
        raise InconsistentBits("input is not a prefix of any achievable sequence")
    exact = _exact_reach(F, c)

    decoded: list[int] = []
    table = i
    offset = 0
    emitted = 0  # |f*_i(decoded)|
    exact_mode = False
    guard = (c.length + 2) * (F.num_tables + 1)

    while True:
        if len(decoded) > guard:  # unreachable for valid inputs
            raise RuntimeError("decoder failed to terminate")
        rest = c.drop(offset)
        if not exact_mode and rest.length == 0:
            break

        candidates = []
        for s in range(F.sigma):
            w = F.f(table, s)
            if exact_mode:
                ok = w.is_prefix_of(rest) and (F.tau(table, s), offset + w.length) in exact
            else:
                ok = rest.is_prefix_of(w) or (
                    w.is_prefix_of(rest) and (F.tau(table, s), offset + w.length) in stream
                )
            if ok:
                candidates.append(s)

        if not exact_mode and len(candidates) != 1:
            # Stream-level ambiguity: the transmission is complete, so
            # re-filter against parses that finish on a codeword boundary.
            if (table, offset) in exact:
                exact_mode = True
                continue
            break
        if exact_mode:
            if rest.length == 0:
                break
            if len(candidates) != 1:
                break

        s = candidates[0]
        w = F.f(table, s)
        decoded.append(s)
        emitted += w.length
        if w.length >= rest.length and not exact_mode:
            # codeword covers all remaining input
            offset = c.length
        else:
            offset += w.length
        table = F.tau(table, s)

    bits_consumed = min(emitted, c.length)
    return DecodeResult(tuple(decoded), bits_consumed, bits_consumed < c.length)
