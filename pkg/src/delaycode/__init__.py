"""delaycode: build, validate, analyze, reduce and search time-variant
variable-length binary codes with bounded decoding delay, in exact rational
arithmetic."""

from .core import (
    Alphabet,
    BitString,
    CodeTuple,
    EMPTY,
    SourceDistribution,
    Symbol,
    is_prefix,
    pref,
    strip_prefix,
    suff,
)
from .cost import CostProfile, average_length, bias_vector, cost_profile, table_length
from .decodability import (
    COND_COLLISION,
    COND_EXTENSION,
    DecodabilityVerdict,
    PairClass,
    Witness,
    classify_pair,
    is_k_delay_decodable,
    is_prefix_free,
)
from .errors import (
    DelaycodeError,
    EmptySequence,
    InconsistentBits,
    IndexOutOfRange,
    InfeasibleBounds,
    NonIrreducible,
    NonRegular,
    NotAPrefix,
    NotDecodable,
    ParseError,
    PreconditionFailed,
)
from .followsets import (
    FollowSetTable,
    build_follow_sets,
    is_extendable,
    mem_pstar,
    pbar_set,
    pk_family,
    pk_set,
)
from .io_cli import (
    format_decimal,
    format_rational,
    parse_code_tuple,
    parse_distribution,
    run_cli,
    serialize_code_tuple,
    serialize_distribution,
)
from .markov import (
    IndexMap,
    irreducible_part,
    is_closed,
    is_homomorphism,
    is_irreducible,
    is_regular,
    nonnegative_stationary,
    r_set,
    stationary_distribution,
    transition_matrix,
)
from .optimality import (
    OptimalityVerdict,
    PrefixDfa,
    check_necessary_condition,
    prefix_dfa,
)
from .reduction import ReductionStep, ReductionTrace, reduce_to_distinct
from .search import (
    SearchBounds,
    SearchResult,
    huffman_baseline,
    search_optimal,
)
from .semantics import DecodeResult, EncodeResult, decode_delayed, encode_star

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
