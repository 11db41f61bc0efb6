"""Square-free extensions of words: potentials, greedy growth, searches.

The package revolves around one operation: inserting a single letter
into a word so that a forbidden repetition never appears.  core carries
the word type and the square machinery, properties generalizes to other
forbidden structures, nonchalant grows words greedily, constructions
holds explicit witness words, and search enumerates exhaustively.
"""

from .core import (
    Extension,
    PotentialReport,
    Word,
    find_square,
    insertion_is_square_free,
    is_square_free,
    parse_word,
    potential,
    square_free_extensions,
    word_from_bytes,
)
from .properties import (
    AbelianSquareFree,
    AvoidanceProperty,
    KPowerFree,
    OverlapFree,
    PatternFree,
    SQUARE_FREE,
    SquareFree,
    avoids,
    contains_abelian_square,
    contains_k_power,
    contains_overlap,
    parse_property,
    property_extensions,
    realizes_pattern,
)
from .nonchalant import (
    FULL,
    INTERNAL,
    NonchalantTrace,
    StepResult,
    backstep_histogram,
    gap_table,
    new_max_indexes,
    nonchalant_run,
    nonchalant_step,
    nonzero_backstep_events,
    potential_trace,
)
from .constructions import (
    Check,
    LazyWord,
    SHORTEST_EXTREMAL_TERNARY,
    SuffixBlockedComponents,
    VerificationReport,
    m_word,
    prop6_components,
    proposition_s_identities,
    proposition_s_words,
    theorem5_word,
    verify_proposition_s,
    verify_theorem5,
    zimin,
    zimin_insertion_count,
    zimin_letter,
    zimin_potential_closed,
)
from .search import (
    BudgetExhausted,
    MaxPotentialRow,
    SearchSpec,
    abelian_nonchalant_halt,
    bound_threshold,
    count_avoiding,
    enumerate_avoiding,
    find_extremal,
    max_potential_table,
    max_potentials,
    shortest_extremal,
)

__version__ = "1.0.0"
