import json
import os
import subprocess
import sys

import pytest

from mobius_flows.catalog import (
    COLUMNS, EXPECTED, Catalog, ExpectedCell, build_catalog, diff_against_expected, export_diagram,
    load_catalog, render_counts_table, save_catalog, write_atomic,
)
from mobius_flows.cli import main
from mobius_flows.diagram import SeparatrixDiagram
from mobius_flows.equivalence import canonical_code
from mobius_flows.errors import ArgumentError, NotFoundError, StructuralError

from conftest import three_point_diagram


@pytest.fixture
def small():
    return build_catalog(4)


@pytest.fixture
def small_file(small, tmp_path):
    path = tmp_path / "cat.json"
    save_catalog(small, path)
    return path


def test_round_trip(catalog, tmp_path):
    path = tmp_path / "c.json"
    save_catalog(catalog, path)
    again = load_catalog(path)
    assert again == catalog
    assert again.dumps() == catalog.dumps()


def test_entries_sorted_by_code(catalog):
    for lv in catalog.levels:
        for group in (lv.morse, lv.saddle_node, lv.saddle_connection):
            codes = [e.code for e in group]
            assert codes == sorted(codes)


def test_table_row_for_three_points(small):
    lines = render_counts_table(small).splitlines()
    assert lines[0].split() == ["n", *COLUMNS]
    assert lines[1].split() == ["3", "1"] + ["0"] * 8
    assert lines[2].split() == ["4", "3", "0", "0", "2", "1", "2", "0", "2", "1"]


def test_render_and_diff_do_not_mutate(catalog):
    before = catalog.dumps()
    render_counts_table(catalog)
    diff_against_expected(catalog).render()
    assert catalog.dumps() == before


def test_each_table_cell_present_once():
    table = [(e.n, e.column) for e in EXPECTED if e.source == "table"]
    assert len(table) == len(set(table)) == 4 * len(COLUMNS)
    assert {e.source for e in EXPECTED} == {"table", "theorem", "figure-sum"}


def test_soft_cells_never_gate(catalog):
    report = diff_against_expected(catalog)
    hard = {(r.n, r.column) for r in report.hard_failures}
    for cell in [(4, "SN"), (5, "SN"), (5, "BSN"), (5, "SC"), (6, "SC")]:
        assert cell not in hard
    assert report.exit_status == (0 if not hard else 1)
    soft = {(r.n, r.column) for r in report.soft_mismatches}
    assert (4, "SN") in soft


def test_exit_zero_when_hard_cells_agree(small):
    counts = small.counts()
    expected = [ExpectedCell(n, col, counts[n][col], "table", True) for n in counts for col in COLUMNS]
    expected.append(ExpectedCell(4, "SN", 2, "table", False))
    report = diff_against_expected(small, expected)
    assert report.ok and report.exit_status == 0
    text = report.render()
    assert "n=4 SN" in text and "computed=0" in text and "MISMATCH (soft)" in text
    assert "hard failures: 0; soft mismatches: 1" in text


def test_verify_reports_both_sources(small_file, capsys):
    status = main(["verify", "--catalog", str(small_file)])
    out = capsys.readouterr().out
    sn = next(line for line in out.splitlines() if line.startswith("n=4 SN"))
    assert "table=2" in sn and "theorem=0" in sn
    # the hard n=4 Morse cells expect 4 classes; the census finds 3
    assert status == 1


def test_export_json_reimports(small, small_file, capsys):
    entry = small.level(4).morse[0]
    assert main(["export", "--catalog", str(small_file), "--code", entry.code, "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    d = SeparatrixDiagram.from_dict(data["diagram"])
    assert canonical_code(d).hex() == entry.code


def test_export_graph_text_of_three_point_diagram(small):
    code = canonical_code(three_point_diagram()).hex()
    text = export_diagram(small, code, "graph-text")
    assert text.startswith("digraph")
    edges = [line for line in text.splitlines() if "->" in line]
    verts = [line for line in text.splitlines() if "shape=" in line]
    assert len(verts) == 3 and len(edges) == 6
    colours = sorted(line.split("color=")[1].split(",")[0] for line in edges)
    assert colours == ["blue", "blue", "green", "green", "red", "red"]


def test_export_marks_marked_edge(small):
    entry = next(e for e in small.level(4).saddle_node if e.kind == "HN")
    text = export_diagram(small, entry.code, "graph-text")
    assert sum("penwidth=3" in line for line in text.splitlines()) == 1


def test_export_unknown_format(small):
    with pytest.raises(ArgumentError):
        export_diagram(small, small.level(3).morse[0].code, "svg")


def test_unknown_code(small, small_file, capsys):
    with pytest.raises(NotFoundError):
        small.find("00ff")
    status = main(["export", "--catalog", str(small_file), "--code", "00ff"])
    err = capsys.readouterr().err
    assert status == 3 and "00ff" in err


def test_bad_arguments(capsys, tmp_path):
    assert main(["census", "--max-points", "9"]) == 2
    assert "max_n" in capsys.readouterr().err
    assert main(["table", "--catalog", str(tmp_path / "missing.json")]) == 4
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["table", "--catalog", str(bad)]) == 4
    with pytest.raises(StructuralError):
        Catalog.loads(json.dumps({"format": 99, "levels": []}))


def test_table_verb(small_file, capsys):
    assert main(["table", "--catalog", str(small_file)]) == 0
    assert capsys.readouterr().out.splitlines()[1].split()[:2] == ["3", "1"]


def test_write_atomic_leaves_no_temp_on_failure(tmp_path):
    path = tmp_path / "out.json"
    write_atomic(path, "first\n")

    with pytest.raises(TypeError):
        write_atomic(path, 12)
    assert path.read_text() == "first\n"
    assert os.listdir(tmp_path) == ["out.json"]


def test_census_cli_deterministic(tmp_path):
    outs = []
    for i in range(2):
        out = tmp_path / f"c{i}.json"
        subprocess.run([sys.executable, "-m", "mobius_flows", "census", "--max-points", "5", "--out", str(out)],
                       check=True, capture_output=True, env={**os.environ, "SOURCE_DATE_EPOCH": ""})
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
    assert len(load_catalog(tmp_path / "c0.json").level(5).morse) == 15


def test_timestamp_pinned_by_environment(monkeypatch):
    monkeypatch.setenv("SOURCE_DATE_EPOCH", "0")
    assert build_catalog(3).generated == "1970-01-01T00:00:00+00:00"
    monkeypatch.delenv("SOURCE_DATE_EPOCH")
    assert build_catalog(3).generated is None
