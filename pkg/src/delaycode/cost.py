"""Expected codeword lengths and the gain-bias vector.

The bias vector h solves the per-table balance equations
``L(F) = L_i(F) + sum_j (h_j - h_i) Q_ij`` exactly; it is unique up to an
additive constant on irreducible tuples, pinned here by h_0 = 0.  The merge
step of the reduction pipeline redirects successors toward small-bias tables,
which never increases the average length.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import CodeTuple, SourceDistribution
from .errors import IndexOutOfRange, NonIrreducible, NonRegular
from .markov import (
    ONE,
    ZERO,
    Vector,
    is_irreducible,
    is_regular,
    solve_unique,
    stationary_distribution,
    transition_matrix,
)


@dataclass(frozen=True)
class CostProfile:
    per_table: Vector
    average: Fraction
    bias: Vector


def table_length(F: CodeTuple, mu: SourceDistribution, i: int) -> Fraction:
    """Expected codeword length of table i alone."""
    if not 0 <= i < F.num_tables:
        raise IndexOutOfRange(f"table {i} out of range")
    if len(mu) != F.sigma:
        raise ValueError("distribution size does not match alphabet")
    return sum(
        (Fraction(F.f(i, s).length) * mu[s] for s in range(F.sigma)), ZERO
    )


def average_length(F: CodeTuple, mu: SourceDistribution) -> Fraction:
    """Stationary-weighted mean codeword length of a regular code-tuple."""
    if not is_regular(F):
        raise NonRegular("average length needs a unique stationary distribution")
    pi = stationary_distribution(F, mu)
    return sum(
        (pi[i] * table_length(F, mu, i) for i in range(F.num_tables)), ZERO
    )


def bias_vector(F: CodeTuple, mu: SourceDistribution) -> Vector:
    """The bias vector with h_0 = 0, solved exactly; irreducible tuples only."""
    if not is_irreducible(F):
        raise NonIrreducible("bias is only defined here on irreducible tuples")
    m = F.num_tables
    q = transition_matrix(F, mu)
    lengths = [table_length(F, mu, i) for i in range(m)]
    avg = average_length(F, mu)
    # (I - Q) h = L_i - L, plus the pin h_0 = 0
    rows = [
        [(ONE if i == j else ZERO) - q[i][j] for j in range(m)] + [lengths[i] - avg]
        for i in range(m)
    ]
    rows.append([ONE] + [ZERO] * (m - 1) + [ZERO])
    h = solve_unique(rows, m)
    for i in range(m):
        residual = avg - lengths[i] - sum(
            ((h[j] - h[i]) * q[i][j] for j in range(m)), ZERO
        )
        assert residual == 0
    return h


def cost_profile(F: CodeTuple, mu: SourceDistribution) -> CostProfile:
    """Per-table lengths, average length and bias in one bundle."""
    per_table = tuple(table_length(F, mu, i) for i in range(F.num_tables))
    return CostProfile(per_table, average_length(F, mu), bias_vector(F, mu))
