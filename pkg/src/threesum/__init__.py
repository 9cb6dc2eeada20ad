"""Subset-query 3SUM engines over preprocessed integer universes.

Preprocess integer sets once (quadratic work), then answer, for arbitrary
subsets A' of A, B' of B and a target set C', exactly how many pairs
(a, b) in A' x B' sum to each target — in roughly n^1.5 work per query.
Three engines cover the design space: randomized with C known up front,
randomized with arbitrary targets, and fully deterministic with arbitrary
targets.  A brute-force oracle backs every result.
"""

from .convolution import MultiplicityVector, modular_sumset_multiplicities
from .core import AnswerEntry, QueryAnswer, WorkCounters, integer_set
from .errors import DomainError, InvariantError, ParseError, ResourceError, ThreesumError
from .known_c import KnownCState, preprocess_known_c, query_known_c
from .numtheory import (
    DivisorBudget,
    PrimeRange,
    divisor_budget,
    primes_in_range,
    sample_prime,
)
from .oracle import brute_force_all_numbers, count_false_positives, enumerate_false_positives
from .unknown_c_det import (
    ModuliPlan,
    UnknownCDetState,
    preprocess_unknown_c_det,
    query_unknown_c_det,
    select_modulus,
)
from .unknown_c_rand import UnknownCRandState, preprocess_unknown_c_rand, query_unknown_c_rand
from .witness import RemainderLists, WitnessTable

__version__ = "0.1.0"

__all__ = [
    "AnswerEntry",
    "DivisorBudget",
    "DomainError",
    "InvariantError",
    "KnownCState",
    "ModuliPlan",
    "MultiplicityVector",
    "ParseError",
    "PrimeRange",
    "QueryAnswer",
    "RemainderLists",
    "ResourceError",
    "ThreesumError",
    "UnknownCDetState",
    "UnknownCRandState",
    "WitnessTable",
    "WorkCounters",
    "brute_force_all_numbers",
    "count_false_positives",
    "divisor_budget",
    "enumerate_false_positives",
    "integer_set",
    "modular_sumset_multiplicities",
    "preprocess_known_c",
    "preprocess_unknown_c_det",
    "preprocess_unknown_c_rand",
    "primes_in_range",
    "query_known_c",
    "query_unknown_c_det",
    "query_unknown_c_rand",
    "sample_prime",
    "select_modulus",
]
