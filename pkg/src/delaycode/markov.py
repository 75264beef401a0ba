"""Table-index Markov chain of a code-tuple: transition matrix, stationary
distributions, reachability classification, homomorphisms, irreducible parts.

All linear algebra is exact rational Gaussian elimination, so stationary
vectors and averages are equality-testable, never tolerance-testable.
"""

from __future__ import annotations

from fractions import Fraction

from .core import CodeTuple, SourceDistribution
from .errors import IndexOutOfRange, NonRegular

Matrix = tuple[tuple[Fraction, ...], ...]
Vector = tuple[Fraction, ...]
IndexMap = tuple[int, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def transition_matrix(F: CodeTuple, mu: SourceDistribution) -> Matrix:
    """Row-stochastic matrix of table-to-table transition probabilities."""
    if len(mu) != F.sigma:
        raise ValueError("distribution size does not match alphabet")
    m = F.num_tables
    rows = []
    for i in range(m):
        row = [ZERO] * m
        for s in range(F.sigma):
            row[F.tau(i, s)] += mu[s]
        rows.append(tuple(row))
    return tuple(rows)


def r_set(F: CodeTuple) -> frozenset[int]:
    """Tables reachable from every starting table (the empty path counts)."""
    m = F.num_tables
    common: set[int] | None = None
    for j in range(m):
        seen = {j}
        stack = [j]
        while stack:
            cur = stack.pop()
            for s in range(F.sigma):
                nxt = F.tau(cur, s)
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        common = seen if common is None else common & seen
    return frozenset(common or ())


def is_regular(F: CodeTuple) -> bool:
    """True iff the chain has a unique stationary distribution."""
    return bool(r_set(F))


def is_irreducible(F: CodeTuple) -> bool:
    """True iff every table is reachable from every table."""
    return r_set(F) == frozenset(range(F.num_tables))


def is_closed(F: CodeTuple, indices: frozenset[int] | set[int]) -> bool:
    """True iff every successor of a table in the set stays in the set."""
    for i in indices:
        if not 0 <= i < F.num_tables:
            raise IndexOutOfRange(f"table {i} out of range")
        for s in range(F.sigma):
            if F.tau(i, s) not in indices:
                return False
    return True


def _eliminate(rows: list[list[Fraction]], n: int) -> list[list[Fraction]]:
    """Forward elimination with column pivoting by largest numerator magnitude.

    ``rows`` are length n+1 (augmented); returns the reduced rows in pivot
    order, one per pivot column actually used.
    """
    rows = [row[:] for row in rows]
    pivots: list[list[Fraction]] = []
    for col in range(n):
        best = None
        best_mag = -1
        for r, row in enumerate(rows):
            if row[col] != 0 and abs(row[col].numerator) > best_mag:
                best = r
                best_mag = abs(row[col].numerator)
        if best is None:
            pivots.append([])  # free column
            continue
        prow = rows.pop(best)
        inv = ONE / prow[col]
        prow = [v * inv for v in prow]
        for row in rows:
            factor = row[col]
            if factor != 0:
                for t in range(col, n + 1):
                    row[t] -= factor * prow[t]
        pivots.append(prow)
    for row in rows:
        # leftover rows are all-zero in the coefficient part by construction
        if row[n] != 0:
            raise ValueError("inconsistent linear system")
    return pivots


def solve_unique(rows: list[list[Fraction]], n: int) -> Vector:
    """Solve a consistent (possibly overdetermined) system with a unique
    solution, exactly."""
    pivots = _eliminate(rows, n)
    if any(not p for p in pivots):
        raise ValueError("system does not have a unique solution")
    x = [ZERO] * n
    for col in range(n - 1, -1, -1):
        row = pivots[col]
        acc = row[n]
        for t in range(col + 1, n):
            acc -= row[t] * x[t]
        x[col] = acc
    return tuple(x)


def null_space_basis(matrix: list[list[Fraction]], n: int) -> list[Vector]:
    """A basis of the null space of an n-column matrix, exactly."""
    rows = [row[:] + [ZERO] for row in matrix]
    pivots = _eliminate(rows, n)
    free_cols = [c for c in range(n) if not pivots[c]]
    basis = []
    for fc in free_cols:
        x = [ZERO] * n
        x[fc] = ONE
        for col in range(n - 1, -1, -1):
            row = pivots[col]
            if not row:
                continue
            acc = ZERO
            for t in range(col + 1, n):
                acc -= row[t] * x[t]
            x[col] = acc
        basis.append(tuple(x))
    return basis


def _stationary_directions(F: CodeTuple, mu: SourceDistribution) -> list[Vector]:
    q = transition_matrix(F, mu)
    m = F.num_tables
    # pi Q = pi  <=>  (Q^T - I) pi^T = 0
    mat = [
        [q[j][i] - (ONE if i == j else ZERO) for j in range(m)] for i in range(m)
    ]
    return null_space_basis(mat, m)


def nonnegative_stationary(F: CodeTuple, mu: SourceDistribution) -> Vector:
    """Some stationary distribution with no negative entry (always exists).

    Takes any nonzero fixed direction of the chain and normalizes its absolute
    values; closedness of the positive and negative supports makes the result
    stationary again.
    """
    direction = _stationary_directions(F, mu)[0]
    total = sum(abs(v) for v in direction)
    return tuple(abs(v) / total for v in direction)


def stationary_distribution(F: CodeTuple, mu: SourceDistribution) -> Vector:
    """The unique stationary distribution of a regular code-tuple."""
    if not is_regular(F):
        raise NonRegular("multiple stationary distributions exist")
    basis = _stationary_directions(F, mu)
    assert len(basis) == 1, "regular chain must have a one-dimensional fixed space"
    direction = basis[0]
    total = sum(direction)
    assert total != 0
    pi = tuple(v / total for v in direction)
    assert all(v >= 0 for v in pi)
    return pi


def is_homomorphism(Fsrc: CodeTuple, Fdst: CodeTuple, phi: IndexMap) -> bool:
    """True iff phi maps Fsrc onto matching codewords and commuting successors
    of Fdst."""
    if len(phi) != Fsrc.num_tables:
        raise ValueError("phi must be total on the source tables")
    if Fsrc.alphabet.labels != Fdst.alphabet.labels:
        return False
    if any(not 0 <= p < Fdst.num_tables for p in phi):
        raise IndexOutOfRange("phi image out of range")
    for i in range(Fsrc.num_tables):
        for s in range(Fsrc.sigma):
            if Fsrc.f(i, s) != Fdst.f(phi[i], s):
                return False
            if phi[Fsrc.tau(i, s)] != Fdst.tau(phi[i], s):
                return False
    return True


def irreducible_part(F: CodeTuple) -> tuple[CodeTuple, IndexMap]:
    """The sub-tuple induced on the always-reachable tables, plus the
    embedding of its indices back into F (an injective homomorphism)."""
    kept = sorted(r_set(F))
    if not kept:
        raise NonRegular("no irreducible part: chain is not regular")
    back = {orig: new for new, orig in enumerate(kept)}
    code = tuple(F.code[i] for i in kept)
    succ = tuple(
        tuple(back[F.tau(i, s)] for s in range(F.sigma)) for i in kept
    )
    part = CodeTuple(F.alphabet, code, succ)
    return part, tuple(kept)
