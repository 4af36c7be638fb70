"""Streaming file emitters and their readers.

All writers take a text stream and emit UTF-8 text with LF line endings,
one block of terms at a time, so memory stays flat for any term count.
"""

from __future__ import annotations

import enum
import io
from typing import IO

import numpy as np

from primender.analysis import DeltaHistogram, MAX_DELTA
from primender.errors import DomainError, PropertyViolation
from primender.sequence import GeneratorConfig, first_terms, iter_blocks


class ExportKind(str, enum.Enum):
    BFILE = "bfile"
    DATASET_CSV = "dataset_csv"
    NUMBER_LIST = "number_list"
    PROMPT_PACK = "prompt_pack"
    HISTOGRAM_CSV = "histogram_csv"
    DOTMATRIX_CSV = "dotmatrix_csv"
    PELP_SERIES_CSV = "pelp_series_csv"


PLOT_KINDS = (ExportKind.HISTOGRAM_CSV, ExportKind.DOTMATRIX_CSV, ExportKind.PELP_SERIES_CSV)

DATASET_HEADER = "index,value,is_prime,lp,pe_minus_lp,delta"

# Regression guard for the prompt pack: the first 100 terms as published.
PINNED_FIRST_100 = (
    2, 3, 5, 7, 11, 12, 13, 15, 17, 19, 22, 23, 25, 27, 29, 31, 32, 33, 35, 37,
    41, 42, 43, 45, 47, 52, 53, 55, 57, 59, 61, 62, 63, 65, 67, 71, 72, 73, 75, 77,
    79, 82, 83, 85, 87, 89, 92, 93, 95, 97, 101, 102, 103, 105, 107, 109, 111, 112, 113, 115,
    117, 119, 122, 123, 125, 127, 129, 131, 132, 133, 135, 137, 139, 141, 142, 143, 145, 147, 149, 151,
    152, 153, 155, 157, 159, 161, 162, 163, 165, 167, 171, 172, 173, 175, 177, 179, 181, 182, 183, 185,
)

PROMPT_TEMPLATE = """\
I am working with a custom number sequence that I call the Primender sequence. It is defined by a specific rule.

Here are the first 100 terms of the sequence: {terms}

Prompt Title: Pattern Discovery, Hypothesis Evaluation, and Sequence Extension Task

Your task is to:

1. Identify the rule that generates this sequence. Explain the logic behind the rule.
2. Consider the following two derived series:
   - LP_n: For each number in the sequence, the largest prime less than or equal to it.
   - Delta: The difference between each number and the previous number in the sequence.
3. Evaluate the following hypothesis:
   > Whenever PE_n - LP_n = 1, the corresponding Delta is also 1. That is, whenever a number in the sequence is exactly one more than the largest prime less than or equal to it (i.e., PE_n - LP_n = 1), the difference between it and the previous number in the sequence (Delta) is also 1.
   Explain whether this hypothesis is true or false, and why.
4. Generate the next 100,000 terms of the sequence based on your inferred rule. Ensure that all generated numbers strictly follow the same logic, and describe how you verified the correctness of your output.

This task is part of a study evaluating how well language models can perform symbolic reasoning, validate hypotheses, and generalize patterns at scale.
"""


def _blocks(term_count: int, minimum: int = 1):
    if term_count < minimum:
        raise DomainError(f"term_count must be >= {minimum}")
    return iter_blocks(GeneratorConfig(count=term_count))


def write_bfile(term_count: int, out: IO[str]):
    """OEIS b-file lines "n a(n)" with offset 1."""
    for block in _blocks(term_count):
        out.write("".join(f"{i + 1} {v}\n" for i, v in zip(block.index.tolist(), block.value.tolist())))


def write_number_list(term_count: int, out: IO[str]):
    for block in _blocks(term_count):
        out.write("".join(f"{v}\n" for v in block.value.tolist()))


def write_dataset_csv(term_count: int, out: IO[str]):
    out.write(DATASET_HEADER + "\n")
    for block in _blocks(term_count):
        cols = zip(block.index.tolist(), block.value.tolist(), block.is_prime.tolist(), block.lp.tolist(), block.delta.tolist())
        out.write("".join(
            f"{i},{v},{int(p)},{lp},{v - lp},{d if i else ''}\n" for i, v, p, lp, d in cols
        ))


def write_plot_data(kind: ExportKind | str, term_count: int, out: IO[str]):
    kind = ExportKind(kind)
    if kind not in PLOT_KINDS:
        raise DomainError(f"{kind.value} is not a plot-data kind")
    blocks = _blocks(term_count, minimum=2)
    if kind is ExportKind.HISTOGRAM_CSV:
        hist = DeltaHistogram()
        for block in blocks:
            hist.add(block.delta[block.index >= 1])
        out.write("delta,count\n")
        for d in range(1, max(MAX_DELTA, hist.max_observed) + 1):
            out.write(f"{d},{hist.counts.get(d, 0)}\n")
        return
    dots = kind is ExportKind.DOTMATRIX_CSV
    out.write("index,delta,pe_minus_lp,coincidence\n" if dots else "index,delta,pe_minus_lp\n")
    for block in blocks:
        keep = block.index >= 1
        gaps = block.pe_minus_lp[keep]
        rows = zip(block.index[keep].tolist(), block.delta[keep].tolist(), gaps.tolist())
        if dots:
            out.write("".join(f"{i},{d},{g},{int(d == 1 and g == 1)}\n" for i, d, g in rows))
        else:
            out.write("".join(f"{i},{d},{g}\n" for i, d, g in rows))


def prompt_terms() -> list[int]:
    values = first_terms(len(PINNED_FIRST_100)).value.tolist()
    if tuple(values) != PINNED_FIRST_100:
        raise PropertyViolation("generator's first 100 terms differ from the pinned list")
    return values


def emit_prompt_pack(out: IO[str] | None = None) -> str:
    text = PROMPT_TEMPLATE.format(terms=", ".join(map(str, prompt_terms())))
    if out is not None:
        out.write(text)
    return text


def export(kind: ExportKind | str, term_count: int, out: IO[str]):
    """Dispatch one export by kind; ``term_count`` is ignored for the prompt pack."""
    kind = ExportKind(kind)
    if kind is ExportKind.BFILE:
        write_bfile(term_count, out)
    elif kind is ExportKind.DATASET_CSV:
        write_dataset_csv(term_count, out)
    elif kind is ExportKind.NUMBER_LIST:
        write_number_list(term_count, out)
    elif kind is ExportKind.PROMPT_PACK:
        emit_prompt_pack(out)
    else:
        write_plot_data(kind, term_count, out)


def read_bfile(source: str | IO[str]) -> list[tuple[int, int]]:
    """Parse "n a(n)" lines, skipping blanks and '#' comments."""
    stream = io.StringIO(source) if isinstance(source, str) else source
    rows = []
    for line in stream:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        n, value = line.split()
        rows.append((int(n), int(value)))
    return rows


def read_dataset_csv(source: str | IO[str]) -> np.ndarray:
    """Load the value column of a dataset CSV."""
    stream = io.StringIO(source) if isinstance(source, str) else source
    header = stream.readline().strip()
    if header != DATASET_HEADER:
        raise DomainError(f"unexpected dataset header {header!r}")
    return np.array([int(line.split(",", 2)[1]) for line in stream if line.strip()], dtype=np.int64)
