"""Primender sequence toolkit: generation, property checks, scoring and exports."""

from primender.errors import DomainError, PropertyViolation, ResourceError
from primender.primality import PrimeSieve, build_sieve, is_prime, largest_prime_leq
from primender.sequence import (
    GeneratorConfig,
    Term,
    generate,
    index_of,
    is_primender,
    nth_term,
    shortest_prime_suffix,
)

__all__ = [
    "DomainError",
    "GeneratorConfig",
    "PrimeSieve",
    "PropertyViolation",
    "ResourceError",
    "Term",
    "build_sieve",
    "generate",
    "index_of",
    "is_prime",
    "is_primender",
    "largest_prime_leq",
    "nth_term",
    "shortest_prime_suffix",
]

__version__ = "0.1.0"
