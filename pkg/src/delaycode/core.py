"""Foundational value types: bit strings, alphabets, code-tuples, distributions.

All types are immutable after construction and safe to share across threads.
Probabilities and expected lengths are exact rationals (``fractions.Fraction``);
binary floating point never enters the data path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple, Sequence, TypeVar

from .errors import EmptySequence, NotAPrefix

SymbolString = tuple[int, ...]


class BitString:
    """An immutable sequence over {0, 1}, stored as (length, integer value).

    The integer packs bits most-significant-first, so prefix tests, quotients
    and concatenation are O(1) big-int operations.  Equality and hashing are
    bitwise; ordering is lexicographic with a proper prefix sorting first.
    """

    __slots__ = ("length", "value")

    def __init__(self, bits: Iterable[int] = ()):
        length = 0
        value = 0
        for b in bits:
            if b not in (0, 1):
                raise ValueError(f"bit must be 0 or 1, got {b!r}")
            value = (value << 1) | b
            length += 1
        object.__setattr__(self, "length", length)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, val):  # pragma: no cover - guard rail
        raise AttributeError("BitString is immutable")

    @classmethod
    def _raw(cls, length: int, value: int) -> "BitString":
        bs = cls.__new__(cls)
        object.__setattr__(bs, "length", length)
        object.__setattr__(bs, "value", value)
        return bs

    @classmethod
    def from_text(cls, text: str) -> "BitString":
        """Parse a string of '0'/'1' characters; the empty string is allowed."""
        length = len(text)
        value = 0
        for ch in text:
            if ch not in "01":
                raise ValueError(f"invalid bit character {ch!r}")
            value = (value << 1) | (ch == "1")
        return cls._raw(length, value)

    def __len__(self) -> int:
        return self.length

    def __bool__(self) -> bool:
        return self.length > 0

    def __getitem__(self, idx: int) -> int:
        if not 0 <= idx < self.length:
            raise IndexError(idx)
        return (self.value >> (self.length - 1 - idx)) & 1

    def __iter__(self) -> Iterator[int]:
        for i in range(self.length):
            yield (self.value >> (self.length - 1 - i)) & 1

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitString)
            and self.length == other.length
            and self.value == other.value
        )

    def __hash__(self) -> int:
        return hash((self.length, self.value))

    def __lt__(self, other: "BitString") -> bool:
        common = min(self.length, other.length)
        a = self.value >> (self.length - common)
        b = other.value >> (other.length - common)
        if a != b:
            return a < b
        return self.length < other.length

    def __le__(self, other: "BitString") -> bool:
        return self == other or self < other

    def __add__(self, other: "BitString") -> "BitString":
        return BitString._raw(
            self.length + other.length, (self.value << other.length) | other.value
        )

    def is_prefix_of(self, other: "BitString") -> bool:
        return self.length <= other.length and (
            other.value >> (other.length - self.length)
        ) == self.value

    def is_proper_prefix_of(self, other: "BitString") -> bool:
        return self.length < other.length and self.is_prefix_of(other)

    def take(self, n: int) -> "BitString":
        """First n bits (n must not exceed the length)."""
        if n > self.length:
            raise ValueError("take beyond end")
        return BitString._raw(n, self.value >> (self.length - n))

    def drop(self, n: int) -> "BitString":
        """Everything after the first n bits."""
        if n > self.length:
            raise ValueError("drop beyond end")
        rest = self.length - n
        return BitString._raw(rest, self.value & ((1 << rest) - 1))

    def __str__(self) -> str:
        return "".join("01"[b] for b in self)

    def __repr__(self) -> str:
        return f"BitString({str(self) or 'λ'})"


EMPTY = BitString()


def is_prefix(x: BitString, y: BitString) -> bool:
    """True iff some z (possibly empty) satisfies xz = y."""
    return x.is_prefix_of(y)


def strip_prefix(x: BitString, y: BitString) -> BitString:
    """The unique z with xz = y; raises NotAPrefix when x is not a prefix of y."""
    if not x.is_prefix_of(y):
        raise NotAPrefix(f"{x!r} is not a prefix of {y!r}")
    return y.drop(x.length)


_Seq = TypeVar("_Seq", BitString, str, tuple)


def pref(x: _Seq) -> _Seq:
    """Drop the last element of a non-empty sequence."""
    if len(x) == 0:
        raise EmptySequence("pref of empty sequence")
    if isinstance(x, BitString):
        return x.take(x.length - 1)
    return x[:-1]


def suff(x: _Seq) -> _Seq:
    """Drop the first element of a non-empty sequence."""
    if len(x) == 0:
        raise EmptySequence("suff of empty sequence")
    if isinstance(x, BitString):
        return x.drop(1)
    return x[1:]


class Symbol(NamedTuple):
    id: int
    name: str


@dataclass(frozen=True)
class Alphabet:
    """An ordered source alphabet; symbols are handled as indices 0..size-1."""

    labels: tuple[str, ...]

    def __post_init__(self):
        if len(self.labels) < 2:
            raise ValueError("alphabet needs at least two symbols")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate symbol labels")
        for lab in self.labels:
            if not lab or any(ch.isspace() for ch in lab):
                raise ValueError(f"invalid symbol label {lab!r}")

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def symbols(self) -> tuple[Symbol, ...]:
        return tuple(Symbol(i, lab) for i, lab in enumerate(self.labels))

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown symbol {label!r}") from None

    def parse_word(self, text: str) -> SymbolString:
        """Parse a source string: space-separated labels, or one char per
        symbol when every label is a single character."""
        if text == "":
            return ()
        if " " in text:
            return tuple(self.index_of(tok) for tok in text.split())
        if all(len(lab) == 1 for lab in self.labels):
            return tuple(self.index_of(ch) for ch in text)
        return (self.index_of(text),)

    def render_word(self, word: Sequence[int]) -> str:
        if all(len(lab) == 1 for lab in self.labels):
            return "".join(self.labels[s] for s in word)
        return " ".join(self.labels[s] for s in word)


@dataclass(frozen=True)
class CodeTuple:
    """m code tables plus m successor maps over a shared alphabet.

    ``code[i][s]`` is the codeword table i assigns to symbol s and
    ``succ[i][s]`` the index of the table used for the following symbol.
    """

    alphabet: Alphabet
    code: tuple[tuple[BitString, ...], ...]
    succ: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        m = len(self.code)
        if m < 1 or len(self.succ) != m:
            raise ValueError("need one codeword row and one successor row per table")
        sigma = self.alphabet.size
        for row in self.code:
            if len(row) != sigma or not all(isinstance(w, BitString) for w in row):
                raise ValueError("each table must define a codeword for every symbol")
        for row in self.succ:
            if len(row) != sigma:
                raise ValueError("each table must define a successor for every symbol")
            if not all(isinstance(j, int) and 0 <= j < m for j in row):
                raise ValueError("successor index out of range")

    @property
    def num_tables(self) -> int:
        return len(self.code)

    @property
    def sigma(self) -> int:
        return self.alphabet.size

    def f(self, table: int, symbol: int) -> BitString:
        return self.code[table][symbol]

    def tau(self, table: int, symbol: int) -> int:
        return self.succ[table][symbol]

    def with_successors(self, succ: tuple[tuple[int, ...], ...]) -> "CodeTuple":
        return CodeTuple(self.alphabet, self.code, succ)

    def table_key(self, table: int) -> tuple:
        """Serialization key of one table, used for canonical comparisons."""
        return tuple(
            (w.length, w.value, j)
            for w, j in zip(self.code[table], self.succ[table])
        )


@dataclass(frozen=True)
class SourceDistribution:
    """Exact symbol probabilities: all positive, summing to one."""

    probs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.probs) < 2:
            raise ValueError("need at least two symbols")
        if any(not isinstance(p, Fraction) for p in self.probs):
            raise ValueError("probabilities must be Fractions")
        if any(p <= 0 for p in self.probs):
            raise ValueError("probabilities must be positive")
        if sum(self.probs) != 1:
            raise ValueError("probabilities must sum to exactly 1")

    @classmethod
    def from_strings(cls, values: Iterable[str]) -> "SourceDistribution":
        """Build from 'p/q' or decimal strings; decimals convert exactly."""
        return cls(tuple(Fraction(v) for v in values))

    def __len__(self) -> int:
        return len(self.probs)

    def __getitem__(self, s: int) -> Fraction:
        return self.probs[s]
