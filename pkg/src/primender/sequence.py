"""Primender membership and streaming generation.

A positive integer n is a member when some decimal suffix n mod 10**k
(1 <= k <= number of digits of n) is prime.  k equal to the digit count is
n itself, so every prime is a member; k = 1 admits every n ending in 2, 3, 5
or 7.

Generation walks the integers in fixed windows.  Each window is sieved once,
suffixes up to seven digits are looked up in a shared table, and longer
suffixes fall back to Miller-Rabin.  The previous prime and previous term are
carried across windows so every term is annotated without look-back probes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from primender.errors import DomainError, ResourceError
from primender.primality import (
    U64_MAX,
    _simple_sieve,
    is_prime,
    largest_prime_leq,
    segment_prime_mask,
)

WINDOW = 1 << 17
SUFFIX_TABLE_DIGITS = 7
DEFAULT_CEILING = 10**8


@dataclass(frozen=True, slots=True)
class Term:
    index: int
    value: int
    is_full_prime: bool
    suffix_len: int
    suffix_value: int
    lp: int
    pe_minus_lp: int
    delta: int | None


@dataclass(frozen=True)
class GeneratorConfig:
    """Either ``count`` terms or every term up to ``limit``, starting at ``start``.

    ``ceiling`` bounds the largest candidate value the generator will test.
    """

    count: int | None = None
    limit: int | None = None
    start: int = 1
    ceiling: int = DEFAULT_CEILING

    def __post_init__(self):
        if (self.count is None) == (self.limit is None):
            raise DomainError("exactly one of count or limit must be given")
        if self.count is not None and self.count < 1:
            raise DomainError("count must be positive")
        if self.limit is not None and self.limit < 1:
            raise DomainError("limit must be positive")
        if self.start < 1:
            raise DomainError("start must be >= 1")
        if self.limit is not None and self.limit > self.ceiling:
            raise ResourceError(f"limit {self.limit} exceeds generation ceiling {self.ceiling}")

    @property
    def mode(self) -> str:
        return "count" if self.count is not None else "limit"


@dataclass
class TermBlock:
    """Column-oriented batch of consecutive terms.

    ``delta`` holds 0 for the term at index 0, which has no predecessor.
    """

    index: np.ndarray
    value: np.ndarray
    is_prime: np.ndarray
    suffix_len: np.ndarray
    suffix_value: np.ndarray
    lp: np.ndarray
    delta: np.ndarray

    def __len__(self):
        return len(self.value)

    @property
    def pe_minus_lp(self) -> np.ndarray:
        return self.value - self.lp

    def head(self, n: int) -> TermBlock:
        return TermBlock(*(getattr(self, f)[:n] for f in _BLOCK_FIELDS))

    def term(self, i: int) -> Term:
        delta = int(self.delta[i])
        return Term(
            index=int(self.index[i]),
            value=int(self.value[i]),
            is_full_prime=bool(self.is_prime[i]),
            suffix_len=int(self.suffix_len[i]),
            suffix_value=int(self.suffix_value[i]),
            lp=int(self.lp[i]),
            pe_minus_lp=int(self.value[i] - self.lp[i]),
            delta=delta if self.index[i] > 0 else None,
        )

    def terms(self) -> Iterator[Term]:
        for i in range(len(self)):
            yield self.term(i)


_BLOCK_FIELDS = ("index", "value", "is_prime", "suffix_len", "suffix_value", "lp", "delta")


def _check_member_domain(n: int) -> int:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise DomainError(f"expected an integer, got {type(n).__name__}")
    n = int(n)
    if n < 1 or n > U64_MAX:
        raise DomainError(f"{n} is outside [1, 2**64 - 1]")
    return n


def shortest_prime_suffix(n: int) -> tuple[int, int] | None:
    """(k, n mod 10**k) for the smallest k giving a prime, or None."""
    n = _check_member_domain(n)
    k, p10 = 1, 10
    while True:
        m = n % p10
        if is_prime(m):
            return k, m
        if p10 > n:
            return None
        k += 1
        p10 *= 10


def is_primender(n: int) -> bool:
    return shortest_prime_suffix(n) is not None


@lru_cache(maxsize=1)
def _suffix_table() -> np.ndarray:
    return _simple_sieve(10**7 - 1)


class _Scanner:
    """Annotates windows of consecutive integers with membership data."""

    def __init__(self, ceiling: int):
        self.ceiling = ceiling
        self.table = _suffix_table()
        self.base_limit = 0
        self.base_primes = np.empty(0, dtype=np.int64)

    def _ensure_base(self, hi: int):
        root = math.isqrt(max(hi - 1, 0))
        if root > self.base_limit:
            self.base_limit = max(root, 2 * self.base_limit)
            self.base_primes = np.flatnonzero(_simple_sieve(self.base_limit))

    def window(self, lo: int, hi: int):
        """Return (values, prime_mask, suffix_len, suffix_value) over [lo, hi)."""
        self._ensure_base(hi)
        values = np.arange(lo, hi, dtype=np.int64)
        prime = segment_prime_mask(lo, hi, self.base_primes)
        slen = np.zeros(hi - lo, dtype=np.int8)
        sval = np.zeros(hi - lo, dtype=np.int64)
        digits = len(str(hi - 1))
        for k in range(1, digits + 1):
            p10 = 10**k
            cand = np.flatnonzero((slen == 0) & (values >= p10 // 10))
            if cand.size == 0:
                continue
            m = values[cand] % p10
            if p10 <= self.table.size and k <= SUFFIX_TABLE_DIGITS:
                hit = self.table[m]
            else:
                whole = values[cand] < p10
                hit = np.where(whole, prime[cand], False)
                for j in np.flatnonzero(~whole):
                    hit[j] = is_prime(int(m[j]))
            slen[cand[hit]] = k
            sval[cand[hit]] = m[hit]
        return values, prime, slen, sval


def _scan(start: int, ceiling: int) -> Iterator[tuple[int, int, np.ndarray, np.ndarray, np.ndarray, np.ndarray]]:
    scanner = _Scanner(ceiling)
    lo = start
    while True:
        if lo > ceiling:
            raise ResourceError(f"candidate {lo} exceeds generation ceiling {ceiling}")
        hi = min(lo + WINDOW, ceiling + 1)
        yield (lo, hi, *scanner.window(lo, hi))
        lo = hi


def _members_below(start: int, ceiling: int) -> tuple[int, int | None]:
    """(number of members < start, largest member < start or None)."""
    count, last = 0, None
    if start <= 1:
        return count, last
    for lo, hi, values, _, slen, _ in _scan(1, ceiling):
        member = slen > 0
        if hi > start:
            member &= values < start
        idx = np.flatnonzero(member)
        count += idx.size
        if idx.size:
            last = int(values[idx[-1]])
        if hi >= start:
            return count, last


def iter_blocks(config: GeneratorConfig) -> Iterator[TermBlock]:
    """Stream annotated terms as column blocks, honouring ``config``."""
    start = config.start
    index, prev = _members_below(start, config.ceiling)
    last_prime = -1
    if start > 2:
        last_prime = largest_prime_leq(start - 1) or -1
    remaining = config.count
    for lo, hi, values, prime, slen, sval in _scan(start, config.ceiling):
        marks = np.where(prime, values, last_prime)
        lp_all = np.maximum.accumulate(marks)
        last_prime = int(lp_all[-1])
        member = slen > 0
        if config.limit is not None and hi - 1 > config.limit:
            member &= values <= config.limit
        idx = np.flatnonzero(member)
        past_limit = config.limit is not None and hi > config.limit
        if idx.size == 0:
            if past_limit:
                return
            continue
        if remaining is not None and idx.size > remaining:
            idx = idx[:remaining]
        vals = values[idx]
        delta = np.empty(idx.size, dtype=np.int64)
        delta[1:] = np.diff(vals)
        delta[0] = vals[0] - prev if prev is not None else 0
        block = TermBlock(
            index=np.arange(index, index + idx.size, dtype=np.int64),
            value=vals,
            is_prime=prime[idx],
            suffix_len=slen[idx].astype(np.int64),
            suffix_value=sval[idx],
            lp=lp_all[idx],
            delta=delta,
        )
        index += idx.size
        prev = int(vals[-1])
        yield block
        if past_limit:
            return
        if remaining is not None:
            remaining -= idx.size
            if remaining == 0:
                return


def generate(config: GeneratorConfig) -> Iterator[Term]:
    for block in iter_blocks(config):
        yield from block.terms()


def first_terms(count: int, ceiling: int = DEFAULT_CEILING) -> TermBlock:
    """The first ``count`` terms gathered into a single block."""
    blocks = list(iter_blocks(GeneratorConfig(count=count, ceiling=ceiling)))
    return TermBlock(*(np.concatenate([getattr(b, f) for b in blocks]) for f in _BLOCK_FIELDS))


def nth_term(index: int, ceiling: int = DEFAULT_CEILING) -> Term:
    if index < 0:
        raise DomainError("index must be >= 0")
    for block in iter_blocks(GeneratorConfig(count=index + 1, ceiling=ceiling)):
        if block.index[-1] == index:
            return block.term(len(block) - 1)
    raise AssertionError("generator stopped early")  # pragma: no cover


def index_of(n: int, ceiling: int = DEFAULT_CEILING) -> int | None:
    """0-based ordinal of ``n`` in the sequence, or None for non-members."""
    if not is_primender(n):
        return None
    if n > ceiling:
        raise ResourceError(f"{n} exceeds generation ceiling {ceiling}")
    count, _ = _members_below(n, ceiling)
    return count


def count_members(limit: int, ceiling: int = DEFAULT_CEILING) -> int:
    """Number of members in [1, limit]."""
    if limit < 1:
        return 0
    if limit > ceiling:
        raise ResourceError(f"limit {limit} exceeds generation ceiling {ceiling}")
    count, _ = _members_below(limit + 1, ceiling)
    return count
