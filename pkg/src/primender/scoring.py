"""Order-insensitive comparison of integer lists.

Both inputs are treated as multisets.  A value counts as matched up to the
smaller of its two multiplicities; the error rate is the share of expected
items left unmatched.  Surplus items in the tested list do not raise the
error rate, but they are reported.
"""

from __future__ import annotations

import io
import json
import logging
import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import IO, Iterable

from primender.errors import DomainError
from primender.primality import U64_MAX
from primender.sequence import GeneratorConfig, iter_blocks

log = logging.getLogger(__name__)

_DIGITS = re.compile(r"[0-9]+")

DEFAULT_CONTINUATION = 100_000
PROMPT_TERMS = 100


@dataclass
class NumberList:
    values: Counter = field(default_factory=Counter)
    skipped_lines: int = 0

    @classmethod
    def of(cls, values: Iterable[int]) -> NumberList:
        return cls(Counter(int(v) for v in values))

    def __len__(self):
        return sum(self.values.values())


def parse_number_list(source: str | IO[str]) -> NumberList:
    """Read one nonnegative integer per line; anything else is skipped.

    ``source`` is either the text itself or a readable text stream.
    """
    stream = io.StringIO(source) if isinstance(source, str) else source
    out = NumberList()
    for lineno, raw in enumerate(stream, 1):
        line = raw.strip()
        if not _DIGITS.fullmatch(line):
            out.skipped_lines += 1
            continue
        value = int(line)
        if value > U64_MAX:
            log.warning("line %d: %s exceeds the 64-bit range, skipped", lineno, line[:40])
            out.skipped_lines += 1
            continue
        out.values[value] += 1
    return out


def read_number_file(path: str | Path) -> NumberList:
    with open(path, encoding="utf-8") as fh:
        return parse_number_list(fh)


@dataclass
class ComparisonReport:
    total_expected: int
    total_tested: int
    matched: int
    missing: Counter
    extra: Counter

    @property
    def total_errors(self) -> int:
        return self.total_expected - self.matched

    @property
    def error_ratio(self) -> Fraction:
        if not self.total_expected:
            return Fraction(0)
        return Fraction(self.total_errors * 100, self.total_expected)

    @property
    def error_percent(self) -> float:
        return float(self.error_ratio)

    @property
    def symmetric_difference(self) -> int:
        return sum(self.missing.values()) + sum(self.extra.values())

    def render(self, details: bool = False) -> str:
        lines = []
        if details:
            if self.missing:
                lines.append("Missing or less frequent in test file:")
                lines += [f"  {num} -> missing {count} time(s)" for num, count in sorted(self.missing.items())]
            if self.extra:
                lines.append("Extra or more frequent in test file:")
                lines += [f"  {num} -> extra {count} time(s)" for num, count in sorted(self.extra.items())]
        lines += [
            "===== Summary =====",
            "Method Used : Ignore Order - Compare Content",
            f"Total Expected = {self.total_expected}",
            f"Total Tested = {self.total_tested}",
            f"Correct Matches = {self.matched}",
            f"Total Errors = {self.total_errors}",
            f"Error Percentage = {self.error_percent:.2f}%",
        ]
        return "\n".join(lines) + "\n"

    def to_record(self) -> str:
        """Single-line JSON record."""
        return json.dumps({
            "total_expected": self.total_expected,
            "total_tested": self.total_tested,
            "matched": self.matched,
            "total_errors": self.total_errors,
            "error_percent": f"{self.error_percent:.2f}",
            "error_ratio": str(self.error_ratio),
            "missing": sum(self.missing.values()),
            "extra": sum(self.extra.values()),
            "symmetric_difference": self.symmetric_difference,
        }, sort_keys=True)


def compare_multisets(expected: NumberList, tested: NumberList) -> ComparisonReport:
    exp, got = expected.values, tested.values
    matched = sum(min(n, got[v]) for v, n in exp.items() if v in got)
    return ComparisonReport(
        total_expected=sum(exp.values()),
        total_tested=sum(got.values()),
        matched=matched,
        missing=exp - got,
        extra=got - exp,
    )


def continuation_values(continuation_count: int = DEFAULT_CONTINUATION, offset: int = PROMPT_TERMS) -> list[int]:
    """Ground-truth terms at indices offset .. offset + continuation_count - 1."""
    if continuation_count < 1:
        raise DomainError("continuation_count must be positive")
    if offset < 0:
        raise DomainError("offset must be >= 0")
    values: list[int] = []
    for block in iter_blocks(GeneratorConfig(count=offset + continuation_count)):
        values.extend(block.value[block.index >= offset].tolist())
    return values


def score_continuation(submission: NumberList, continuation_count: int = DEFAULT_CONTINUATION,
                       offset: int = PROMPT_TERMS) -> ComparisonReport:
    """Grade a submitted continuation of the 100-term prompt list.

    ``offset=0`` grades against the sequence from its first term instead.
    """
    expected = NumberList.of(continuation_values(continuation_count, offset))
    return compare_multisets(expected, submission)
