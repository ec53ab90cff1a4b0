import json
import xml.etree.ElementTree as ET

import pytest

from tessel.cli import main


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_counts_csv(capsys):
    code, out, _ = run(capsys, "counts", "-p", "7", "-q", "3", "-n", "3", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["n,u,utilde", "0,1,", "1,7,1", "2,21,3", "3,56,8"]


def test_counts_json(capsys):
    code, out, _ = run(capsys, "counts", "-p", "4", "-q", "4", "-n", "3", "--format", "json")
    assert [r["u"] for r in json.loads(out)["rows"]] == [1, 4, 8, 12]


def test_counts_text_and_word_cap(capsys):
    code, out, _ = run(capsys, "counts", "-p", "4", "-q", "4", "-n", "2", "--format", "text")
    assert out.splitlines()[1].endswith("a1 a1 a1 a1")
    code, _, err = run(capsys, "counts", "-p", "7", "-q", "3", "-n", "5", "--format", "text",
                       "--word-cap", "100")
    assert code == 3 and "cap" in err


def test_unsupported_family(capsys):
    code, _, err = run(capsys, "counts", "-p", "5", "-q", "4", "-n", "3")
    assert code == 2 and "q=4 with p≥5 is not defined by the source construction" in err


@pytest.mark.parametrize("args", [["counts", "-p", "3", "-q", "3"], ["counts", "-p", "x", "-q", "3"],
                                  ["counts", "-p", "7", "-q", "3", "--bogus"],
                                  ["render", "-p", "7", "-q", "3", "--format", "csv"]])
def test_bad_input_exits_2(capsys, args):
    assert run(capsys, *args)[0] == 2


def test_spectrum(capsys):
    code, out, _ = run(capsys, "spectrum", "-p", "7", "-q", "3")
    doc = json.loads(out)
    assert doc["char_poly"] == [1, -3, 1]
    assert doc["perron"]["estimate"] == pytest.approx(2.6180339887, abs=1e-10)
    _, out, _ = run(capsys, "spectrum", "-p", "4", "-q", "4")
    assert json.loads(out)["growth"] == "linear"
    _, out, _ = run(capsys, "spectrum", "-p", "4", "-q", "6")
    assert json.loads(out)["closed_form_match"] is True


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "-p", "4", "-q", "5", "-n", "4")
    assert code == 0 and {r["status"] for r in json.loads(out)} == {"pass"}
    assert run(capsys, "verify", "-p", "5", "-q", "4")[0] == 2
    assert run(capsys, "verify", "-p", "3", "-q", "6", "-n", "3")[0] == 1


def test_render(tmp_path, capsys):
    out = tmp_path / "out.svg"
    assert run(capsys, "render", "-p", "7", "-q", "3", "-n", "4", "--color", "gen", "-o", str(out))[0] == 0
    root = ET.parse(out).getroot()
    tiles = [e for e in root.iter() if e.get("class") == "tile"]
    assert len(tiles) == 1 + 7 + 21 + 56 + 147
    code, svg, _ = run(capsys, "render", "-p", "4", "-q", "4", "-n", "5", "--color", "type", "--tree")
    root = ET.fromstring(svg)
    assert len([e for e in root.iter() if e.get("class") == "tree"]) == 60
    code, svg, _ = run(capsys, "render", "-p", "3", "-q", "8", "-n", "3")
    assert code == 0 and " A " in svg


def test_render_ceiling(capsys, monkeypatch):
    assert run(capsys, "render", "-p", "7", "-q", "3", "-n", "12")[0] == 3
    monkeypatch.setenv("TESSEL_CEILING", "2")
    assert run(capsys, "render", "-p", "7", "-q", "3", "-n", "3")[0] == 3


def test_dump_graph(capsys):
    code, out, _ = run(capsys, "dump-graph", "-p", "7", "-q", "3", "-n", "1")
    doc = json.loads(out)
    assert list(doc) == ["params", "max_gen", "vertices", "edges", "faces"]


def test_help_documents_schema(capsys):
    code, out, _ = run(capsys, "counts", "--help")
    assert code == 0 and "n,u,utilde" in out and "exit codes" in out
