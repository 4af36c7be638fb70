"""Exact primality for 64-bit integers, plus bulk sieving.

``is_prime`` is a deterministic Miller-Rabin test: the first twelve primes as
witnesses are known to decide every n < 3.3e24, which covers the full
unsigned 64-bit range.  Small inputs are settled by trial division first.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from primender.errors import DomainError, ResourceError

U64_MAX = 2**64 - 1

MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)

SIEVE_CEILING_ENV = "PRIMENDER_SIEVE_CEILING"
DEFAULT_SIEVE_CEILING = 2**31


def _check_domain(n: int) -> int:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise DomainError(f"expected an integer, got {type(n).__name__}")
    n = int(n)
    if n < 0 or n > U64_MAX:
        raise DomainError(f"{n} is outside [0, 2**64 - 1]")
    return n


def _miller_rabin(n: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime(n: int) -> bool:
    n = _check_domain(n)
    if n < 2:
        return False
    for p in SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n < 97 * 97:
        return True
    return _miller_rabin(n)


def largest_prime_leq(n: int) -> int | None:
    """Largest prime p <= n by descending probe, or None when n < 2."""
    n = _check_domain(n)
    if n < 2:
        return None
    if n == 2:
        return 2
    if n % 2 == 0:
        n -= 1
    while n > 2:
        if is_prime(n):
            return n
        n -= 2
    return 2


def sieve_ceiling() -> int:
    raw = os.environ.get(SIEVE_CEILING_ENV)
    if raw is None:
        return DEFAULT_SIEVE_CEILING
    try:
        return int(raw)
    except ValueError:
        raise DomainError(f"{SIEVE_CEILING_ENV}={raw!r} is not an integer") from None


def _simple_sieve(limit: int) -> np.ndarray:
    mask = np.ones(limit + 1, dtype=bool)
    mask[: min(2, limit + 1)] = False
    for p in range(2, math.isqrt(limit) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return mask


@dataclass(frozen=True)
class PrimeSieve:
    """Primality table for [0, limit]; immutable once built."""

    limit: int
    mask: np.ndarray

    def __post_init__(self):
        self.mask.flags.writeable = False

    def __contains__(self, n) -> bool:
        return self.membership(n)

    def membership(self, n: int) -> bool:
        if n < 0 or n > self.limit:
            raise DomainError(f"{n} is outside the sieved range [0, {self.limit}]")
        return bool(self.mask[n])

    def primes(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    def count(self) -> int:
        return int(np.count_nonzero(self.mask))

    def previous_primes(self, lo: int, hi: int) -> np.ndarray:
        """Largest prime <= n for every n in [lo, hi); -1 where none exists."""
        if lo < 0 or hi - 1 > self.limit:
            raise DomainError(f"[{lo}, {hi}) is outside the sieved range")
        seed = -1
        if lo > 0:
            before = np.flatnonzero(self.mask[:lo])
            seed = int(before[-1]) if before.size else -1
        marks = np.where(self.mask[lo:hi], np.arange(lo, hi, dtype=np.int64), seed)
        return np.maximum.accumulate(marks)


def build_sieve(limit: int, ceiling: int | None = None) -> PrimeSieve:
    if limit < 0:
        raise DomainError("sieve limit must be nonnegative")
    ceiling = sieve_ceiling() if ceiling is None else ceiling
    if limit + 1 > ceiling:
        raise ResourceError(f"sieve of {limit + 1} candidates exceeds ceiling {ceiling}")
    try:
        mask = _simple_sieve(limit)
    except MemoryError as exc:
        raise ResourceError(f"cannot allocate sieve up to {limit}") from exc
    return PrimeSieve(limit, mask)


def segment_prime_mask(lo: int, hi: int, base_primes: np.ndarray | None = None) -> np.ndarray:
    """Boolean primality of every integer in [lo, hi).

    ``base_primes`` must contain all primes up to isqrt(hi - 1); pass it in to
    avoid resieving when walking consecutive segments.
    """
    if lo < 0 or hi < lo:
        raise DomainError(f"bad segment [{lo}, {hi})")
    size = hi - lo
    mask = np.ones(size, dtype=bool)
    if size == 0:
        return mask
    if lo < 2:
        mask[: 2 - lo] = False
    root = math.isqrt(hi - 1)
    if base_primes is None:
        base_primes = np.flatnonzero(_simple_sieve(root))
    for p in base_primes:
        p = int(p)
        if p > root:
            break
        start = max(p * p, -(-lo // p) * p)
        if start < hi:
            mask[start - lo :: p] = False
    return mask
