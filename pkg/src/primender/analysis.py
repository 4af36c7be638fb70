"""Delta statistics and property checks over prefixes of the sequence.

Every check returns a :class:`PropertyReport` instead of raising, so the
same code serves CI gates and exploratory runs.  Checks consume
:class:`~primender.sequence.TermBlock` streams, which lets several
properties share one generation pass and lets disjoint value ranges be
checked separately and merged.
"""

from __future__ import annotations

import enum
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

import numpy as np

from primender.errors import DomainError
from primender.sequence import (
    DEFAULT_CEILING,
    GeneratorConfig,
    Term,
    TermBlock,
    count_members,
    iter_blocks,
)

DEFAULT_MAX_VIOLATIONS = 10
MAX_DELTA = 5


class PropertyId(str, enum.Enum):
    H1 = "H1"
    MAX_DELTA = "MAX_DELTA"
    DELTA4_ENDS_1 = "DELTA4_ENDS_1"
    PELP_NO_7 = "PELP_NO_7"
    PRIME_SCATTER = "PRIME_SCATTER"
    PELP_RECORDS = "PELP_RECORDS"


CHECKABLE = (PropertyId.H1, PropertyId.MAX_DELTA, PropertyId.DELTA4_ENDS_1, PropertyId.PELP_NO_7)


@dataclass
class DeltaHistogram:
    counts: dict[int, int] = field(default_factory=dict)
    max_observed: int = 0
    total: int = 0

    def add(self, deltas: np.ndarray):
        if deltas.size == 0:
            return
        for d, c in enumerate(np.bincount(deltas)):
            if c:
                self.counts[d] = self.counts.get(d, 0) + int(c)
        self.max_observed = max(self.max_observed, int(deltas.max()))
        self.total += int(deltas.size)

    def merge(self, other: DeltaHistogram) -> DeltaHistogram:
        counts = Counter(self.counts)
        counts.update(other.counts)
        return DeltaHistogram(dict(sorted(counts.items())), max(self.max_observed, other.max_observed), self.total + other.total)


@dataclass
class PropertyReport:
    property_id: PropertyId
    term_count: int = 0
    final_value: int | None = None
    instances: int = 0
    violations: list[Term] = field(default_factory=list)
    violation_count: int = 0
    histogram: DeltaHistogram | None = None

    @property
    def passed(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = (
            f"{self.property_id.value}: {status} terms={self.term_count} final_value={self.final_value} "
            f"instances={self.instances} violations={self.violation_count}"
        )
        if self.histogram is not None:
            line += f" max_delta={self.histogram.max_observed}"
        return line


def _select(pid: PropertyId, block: TermBlock) -> tuple[np.ndarray, np.ndarray]:
    """Masks of (antecedent matches, violations) for one property."""
    has_delta = block.index >= 1
    if pid is PropertyId.H1:
        ante = has_delta & (block.pe_minus_lp == 1)
        return ante, ante & (block.delta != 1)
    if pid is PropertyId.MAX_DELTA:
        return has_delta, has_delta & (block.delta > MAX_DELTA)
    if pid is PropertyId.DELTA4_ENDS_1:
        ante = has_delta & (block.delta == 4)
        return ante, ante & (block.value % 10 != 1)
    if pid is PropertyId.PELP_NO_7:
        ante = np.ones(len(block), dtype=bool)
        return ante, block.pe_minus_lp % 10 == 7
    raise DomainError(f"{pid.value} is not a pass/fail property")


def run_checks(
    ids: Iterable[PropertyId],
    blocks: Iterable[TermBlock],
    max_violations: int = DEFAULT_MAX_VIOLATIONS,
) -> list[PropertyReport]:
    """Check every property in ``ids`` in a single pass over ``blocks``."""
    if max_violations < 1:
        raise DomainError("max_violations must be >= 1")
    ids = [PropertyId(i) for i in ids]
    reports = [PropertyReport(pid) for pid in ids]
    for r in reports:
        if r.property_id is PropertyId.MAX_DELTA:
            r.histogram = DeltaHistogram()
    for block in blocks:
        for r in reports:
            ante, bad = _select(r.property_id, block)
            r.term_count += len(block)
            r.final_value = int(block.value[-1])
            r.instances += int(np.count_nonzero(ante))
            bad_idx = np.flatnonzero(bad)
            r.violation_count += bad_idx.size
            room = max_violations - len(r.violations)
            r.violations.extend(block.term(int(i)) for i in bad_idx[:room])
            if r.histogram is not None:
                r.histogram.add(block.delta[block.index >= 1])
    return reports


def merge_reports(parts: list[PropertyReport], max_violations: int = DEFAULT_MAX_VIOLATIONS) -> PropertyReport:
    """Combine reports for consecutive ranges, given in range order."""
    if not parts:
        raise DomainError("nothing to merge")
    pid = parts[0].property_id
    merged = PropertyReport(pid)
    for part in parts:
        if part.property_id is not pid:
            raise DomainError("cannot merge reports for different properties")
        merged.term_count += part.term_count
        if part.final_value is not None:
            merged.final_value = part.final_value
        merged.instances += part.instances
        merged.violation_count += part.violation_count
        merged.violations.extend(part.violations)
        if part.histogram is not None:
            merged.histogram = part.histogram if merged.histogram is None else merged.histogram.merge(part.histogram)
    merged.violations = sorted(merged.violations, key=lambda t: t.index)[:max_violations]
    return merged


def verify(ids: Iterable[PropertyId], term_count: int, max_violations: int = DEFAULT_MAX_VIOLATIONS,
           ceiling: int = DEFAULT_CEILING) -> list[PropertyReport]:
    if term_count < 1:
        raise DomainError("term_count must be >= 1")
    return run_checks(ids, iter_blocks(GeneratorConfig(count=term_count, ceiling=ceiling)), max_violations)


def _verify_slice(args):
    ids, start, limit, max_violations = args
    return run_checks(ids, iter_blocks(GeneratorConfig(limit=limit, start=start)), max_violations)


def verify_upto(ids: Iterable[PropertyId], limit: int, workers: int = 1,
                max_violations: int = DEFAULT_MAX_VIOLATIONS) -> list[PropertyReport]:
    """Check every term with value <= ``limit``, split over ``workers`` processes.

    Output is identical to a single sequential pass.
    """
    ids = [PropertyId(i) for i in ids]
    workers = max(1, min(workers, limit))
    bounds = [1 + (limit * w) // workers for w in range(workers + 1)]
    jobs = [(ids, bounds[w], bounds[w + 1] - 1, max_violations) for w in range(workers) if bounds[w] < bounds[w + 1]]
    if workers == 1:
        parts = [_verify_slice(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_verify_slice, jobs))
    return [merge_reports([p[i] for p in parts], max_violations) for i in range(len(ids))]


def _need(term_count: int, minimum: int):
    if term_count < minimum:
        raise DomainError(f"term_count must be >= {minimum}")


def verify_h1(term_count: int, max_violations: int = DEFAULT_MAX_VIOLATIONS) -> PropertyReport:
    """Terms one above their largest prime must follow the previous term by 1."""
    _need(term_count, 2)
    return verify([PropertyId.H1], term_count, max_violations)[0]


def verify_max_delta(term_count: int, max_violations: int = DEFAULT_MAX_VIOLATIONS) -> PropertyReport:
    _need(term_count, 2)
    return verify([PropertyId.MAX_DELTA], term_count, max_violations)[0]


def verify_delta4_ends_1(term_count: int, max_violations: int = DEFAULT_MAX_VIOLATIONS) -> PropertyReport:
    _need(term_count, 2)
    return verify([PropertyId.DELTA4_ENDS_1], term_count, max_violations)[0]


def verify_pelp_no_7(term_count: int, max_violations: int = DEFAULT_MAX_VIOLATIONS) -> PropertyReport:
    _need(term_count, 1)
    return verify([PropertyId.PELP_NO_7], term_count, max_violations)[0]


def delta_histogram(term_count: int) -> DeltaHistogram:
    _need(term_count, 2)
    hist = DeltaHistogram()
    for block in iter_blocks(GeneratorConfig(count=term_count)):
        hist.add(block.delta[block.index >= 1])
    hist.counts = dict(sorted(hist.counts.items()))
    return hist


def prime_positions(term_count: int) -> list[int]:
    _need(term_count, 1)
    out: list[int] = []
    for block in iter_blocks(GeneratorConfig(count=term_count)):
        out.extend(block.index[block.is_prime].tolist())
    return out


def pelp_records(term_count: int) -> list[tuple[int, int, int]]:
    """(index, value, pe_minus_lp) wherever pe_minus_lp sets a new high."""
    _need(term_count, 1)
    records: list[tuple[int, int, int]] = []
    best = -1
    for block in iter_blocks(GeneratorConfig(count=term_count)):
        gaps = block.pe_minus_lp
        running = np.maximum.accumulate(np.concatenate(([best], gaps)))
        for i in np.flatnonzero(gaps > running[:-1]):
            records.append((int(block.index[i]), int(block.value[i]), int(gaps[i])))
        best = int(running[-1])
    return records


class DotRow(NamedTuple):
    index: int
    delta: int
    pe_minus_lp: int
    coincidence: bool


def dot_matrix_rows(term_count: int) -> list[DotRow]:
    _need(term_count, 2)
    rows = []
    for block in iter_blocks(GeneratorConfig(count=term_count)):
        gaps = block.pe_minus_lp
        for i in np.flatnonzero(block.index >= 1):
            d, g = int(block.delta[i]), int(gaps[i])
            rows.append(DotRow(int(block.index[i]), d, g, d == 1 and g == 1))
    return rows


def density_stats(limit: int) -> tuple[int, float]:
    """(members in [1, limit], members / limit)."""
    if limit < 2:
        raise DomainError("limit must be >= 2")
    count = count_members(limit)
    return count, count / limit
