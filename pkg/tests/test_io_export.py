import io

import numpy as np
import pytest

from primender.errors import DomainError, PropertyViolation
from primender.io_export import (
    PINNED_FIRST_100,
    ExportKind,
    emit_prompt_pack,
    export,
    read_bfile,
    read_dataset_csv,
    write_bfile,
    write_dataset_csv,
    write_number_list,
    write_plot_data,
)
from primender.scoring import parse_number_list
from primender.sequence import first_terms


def render(fn, *args):
    buf = io.StringIO()
    fn(*args, buf)
    return buf.getvalue()


def test_bfile():
    assert render(write_bfile, 3) == "1 2\n2 3\n3 5\n"
    assert render(write_bfile, 1) == "1 2\n"
    assert render(write_bfile, 100).splitlines()[-1] == "100 185"


def test_bfile_round_trip():
    rows = read_bfile(render(write_bfile, 10_000))
    assert [n for n, _ in rows] == list(range(1, 10_001))
    assert [v for _, v in rows] == first_terms(10_000).value.tolist()


def test_dataset_csv():
    lines = render(write_dataset_csv, 10).splitlines()
    assert lines[0] == "index,value,is_prime,lp,pe_minus_lp,delta"
    assert lines[1] == "0,2,1,2,0,"
    assert lines[6] == "5,12,0,11,1,1"
    assert len(lines) == 11


def test_dataset_csv_round_trip():
    text = render(write_dataset_csv, 10_000)
    assert "\r" not in text
    assert np.array_equal(read_dataset_csv(text), first_terms(10_000).value)


def test_dataset_bad_header():
    with pytest.raises(DomainError):
        read_dataset_csv("a,b\n1,2\n")


def test_number_list_parses_clean():
    parsed = parse_number_list(render(write_number_list, 500))
    assert parsed.skipped_lines == 0 and sum(parsed.values.values()) == 500


def test_histogram_csv():
    lines = render(write_plot_data, "histogram_csv", 100).splitlines()
    assert lines[0] == "delta,count"
    assert [int(line.split(",")[0]) for line in lines[1:]] == [1, 2, 3, 4, 5]
    assert sum(int(line.split(",")[1]) for line in lines[1:]) == 99


def test_dotmatrix_csv():
    lines = render(write_plot_data, ExportKind.DOTMATRIX_CSV, 100).splitlines()
    assert lines[0] == "index,delta,pe_minus_lp,coincidence"
    rows = [tuple(map(int, line.split(","))) for line in lines[1:]]
    assert len(rows) == 99
    assert all(c == 1 and d == 1 for _, d, g, c in rows if g == 1)


def test_pelp_series_csv():
    assert render(write_plot_data, "pelp_series_csv", 2) == "index,delta,pe_minus_lp\n1,1,0\n"


def test_plot_data_rejects_other_kinds():
    with pytest.raises(DomainError):
        render(write_plot_data, "bfile", 10)
    with pytest.raises(DomainError):
        render(write_plot_data, "histogram_csv", 1)


def test_prompt_pack():
    text = emit_prompt_pack()
    assert "2, 3, 5, 7, 11, 12, 13" in text
    assert "Pattern Discovery, Hypothesis Evaluation, and Sequence Extension Task" in text
    assert "Generate the next 100,000 terms" in text
    assert ", ".join(map(str, PINNED_FIRST_100)) in text
    assert text.count("183, 185\n") == 1


def test_prompt_pack_guard(monkeypatch):
    import primender.io_export as mod

    monkeypatch.setattr(mod, "PINNED_FIRST_100", PINNED_FIRST_100[:-1] + (186,))
    with pytest.raises(PropertyViolation):
        emit_prompt_pack()


def test_export_dispatch():
    buf = io.StringIO()
    export("prompt_pack", 1, buf)
    assert buf.getvalue() == emit_prompt_pack()
    buf = io.StringIO()
    export("number_list", 3, buf)
    assert buf.getvalue() == "2\n3\n5\n"
