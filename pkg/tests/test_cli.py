"""End-to-end checks of the command-line interface.

Every test drives ``main`` in-process and inspects the JSON payload,
the stderr summary, and the exit code.
"""

import io
import json

import pytest

import eulertrail as et
from eulertrail.cli import main
from instances import complete, t4, three_cycle


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def _digraph_file(tmp_path, d, name="d.json"):
    return _write(tmp_path, name, et.serialize_json(d))


def test_analyze_reports_connectivity_and_decomposition(tmp_path, capsys):
    path = _digraph_file(tmp_path, et.gen_d3())
    code = main(["analyze", path])
    out, err = capsys.readouterr()
    assert code == 0
    payload = json.loads(out)
    assert payload == {
        "n": 3,
        "m": 4,
        "strong": True,
        "lambda": 1,
        "cut_arcs": [[0, 1], [1, 2], [2, 0]],
        "decomposition": [[0], [2], [1]],
        "backward_ordering": [[1, 2], [2, 0]],
        "ignored_sets": [],
    }
    assert err.strip() == "n=3 m=4 strong=True lambda=1 cut_arcs=3"


def test_analyze_reads_stdin(tmp_path, capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(et.serialize_json(et.gen_d3())))
    code = main(["analyze", "-"])
    out, _ = capsys.readouterr()
    assert code == 0
    assert json.loads(out)["lambda"] == 1


def test_analyze_dot_format(tmp_path, capsys):
    path = _digraph_file(tmp_path, et.gen_d3())
    code = main(["analyze", path, "--format", "dot"])
    out, err = capsys.readouterr()
    assert code == 0
    assert out == (
        "digraph {\n"
        "  0;\n"
        "  1;\n"
        "  2;\n"
        "  0 -> 1;\n"
        "  1 -> 2;\n"
        "  2 -> 0;\n"
        "  2 -> 1;\n"
        "}"
    )
    assert err.strip() == "n=3 m=4 (dot)"


def test_quiet_suppresses_the_summary(tmp_path, capsys):
    path = _digraph_file(tmp_path, et.gen_d3())
    code = main(["analyze", path, "--quiet"])
    _, err = capsys.readouterr()
    assert code == 0
    assert err == ""


def test_classify_left_bad_arc(tmp_path, capsys):
    path = _digraph_file(tmp_path, t4())
    code = main(["classify", path, "--arc", "0", "2"])
    out, err = capsys.readouterr()
    assert code == 0
    row = json.loads(out)
    assert row["good"] is False
    assert row["bad_pattern"] == "left"
    assert row["witness"] is None
    assert row["unavoidable"] is False
    assert row["avoidance_witness"] == [[0, 1], [1, 2], [2, 3], [3, 0]]
    assert "bad (left)" in err and "avoidable" in err


def test_classify_exceptional_arc(tmp_path, capsys):
    path = _digraph_file(tmp_path, t4())
    code = main(["classify", path, "--arc", "1", "2"])
    out, _ = capsys.readouterr()
    assert code == 0
    row = json.loads(out)
    assert row["good"] is True
    assert row["witness"] == [[0, 1], [1, 2], [2, 3], [3, 0]]
    assert row["unavoidable"] == "exceptional"
    assert row["partition"] == {"r1": [0], "r2": [3], "y": [1, 2]}


def test_classify_all_arcs(tmp_path, capsys):
    path = _digraph_file(tmp_path, t4())
    code = main(["classify", path, "--all"])
    out, err = capsys.readouterr()
    assert code == 0
    payload = json.loads(out)
    assert payload["n"] == 4
    seen = [(tuple(r["arc"]), r["good"], r["bad_pattern"], r["unavoidable"]) for r in payload["arcs"]]
    assert seen == [
        ((0, 1), True, None, "cut"),
        ((0, 2), False, "left", False),
        ((1, 2), True, None, "exceptional"),
        ((1, 3), False, "right", False),
        ((2, 3), True, None, "cut"),
        ((3, 0), True, None, "cut"),
    ]
    assert err.strip() == "6 arcs: 4 good, 2 bad; 4 unavoidable"


def test_classify_generated_exceptional_tournament(tmp_path, capsys):
    path = _digraph_file(tmp_path, et.gen_exceptional(False))
    code = main(["classify", path, "--arc", "0", "3"])
    out, _ = capsys.readouterr()
    assert code == 0
    row = json.loads(out)
    assert row["unavoidable"] == "exceptional"
    assert row["partition"] == {"r1": [2], "r2": [1], "y": [0, 3]}


def test_trail_certificate(tmp_path, capsys):
    path = _digraph_file(tmp_path, complete(3))
    code = main(["trail", path, "--from", "0", "--to", "1"])
    out, _ = capsys.readouterr()
    assert code == 0
    payload = json.loads(out)
    assert payload["cut"] is None
    assert payload["trail"] == [0, 2, 0, 1]


def test_trail_cut_obstruction(tmp_path, capsys):
    path = _digraph_file(tmp_path, three_cycle())
    code = main(["trail", path, "--from", "0", "--to", "1"])
    out, _ = capsys.readouterr()
    assert code == 2
    payload = json.loads(out)
    assert payload["trail"] is None
    assert payload["cut"] == {
        "side_s": [0],
        "side_t": [1, 2],
        "crossing_arcs": [[0, 1]],
    }


def test_trail_rejects_bad_endpoints(tmp_path, capsys):
    path = _digraph_file(tmp_path, three_cycle())
    assert main(["trail", path, "--from", "0", "--to", "0"]) == 1
    assert main(["trail", path, "--from", "0", "--to", "7"]) == 1
    _, err = capsys.readouterr()
    assert "two distinct vertices" in err


def test_avoid_certificate(tmp_path, capsys):
    path = _digraph_file(tmp_path, complete(4))
    arcs = _write(tmp_path, "avoid.json", "[[0, 1]]")
    code = main(["avoid", path, "--arcs", arcs])
    out, _ = capsys.readouterr()
    assert code == 0
    payload = json.loads(out)
    assert payload["obstruction"] is None
    assert payload["certificate"] == [[0, 2], [1, 3], [2, 1], [3, 0]]
    assert [0, 1] not in payload["certificate"]


def test_avoid_cut_obstruction(tmp_path, capsys):
    path = _digraph_file(tmp_path, three_cycle())
    arcs = _write(tmp_path, "avoid.json", "[[0, 1]]")
    code = main(["avoid", path, "--arcs", arcs])
    out, _ = capsys.readouterr()
    assert code == 2
    payload = json.loads(out)
    assert payload["certificate"] is None
    assert payload["obstruction"]["kind"] == "cut"
    assert payload["obstruction"]["cut"] == {
        "side_s": [0],
        "side_t": [1, 2],
        "crossing_arcs": [],
    }


def test_avoid_partition_obstruction(tmp_path, capsys):
    path = _digraph_file(tmp_path, et.gen_exceptional(False))
    arcs = _write(tmp_path, "avoid.json", "[[0, 3]]")
    code = main(["avoid", path, "--arcs", arcs])
    out, _ = capsys.readouterr()
    assert code == 2
    payload = json.loads(out)
    assert payload["obstruction"] == {
        "kind": "partition",
        "partition": {"r1": [2], "r2": [1], "y": [0, 3]},
    }


def test_avoid_without_forbidden_arcs(tmp_path, capsys):
    path = _digraph_file(tmp_path, three_cycle())
    code = main(["avoid", path])
    out, _ = capsys.readouterr()
    assert code == 0
    assert json.loads(out)["certificate"] == [[0, 1], [1, 2], [2, 0]]


def test_arc_file_must_be_a_list_of_pairs(tmp_path, capsys):
    path = _digraph_file(tmp_path, three_cycle())
    arcs = _write(tmp_path, "avoid.json", '{"oops": 1}')
    assert main(["avoid", path, "--arcs", arcs]) == 1
    _, err = capsys.readouterr()
    assert "list of [tail, head] pairs" in err


def test_malformed_digraph_exits_one(tmp_path, capsys):
    path = _write(tmp_path, "broken.json", '{"arcs": []}')
    assert main(["analyze", path]) == 1
    _, err = capsys.readouterr()
    assert "eulertrail: error:" in err


def test_missing_input_file_exits_one(tmp_path, capsys):
    assert main(["analyze", str(tmp_path / "nope.json")]) == 1
    _, err = capsys.readouterr()
    assert "eulertrail: error:" in err


def test_usage_errors_exit_one(tmp_path, capsys):
    path = _digraph_file(tmp_path, three_cycle())
    with pytest.raises(SystemExit) as info:
        main(["analyze", path, "--bogus"])
    assert info.value.code == 1
    with pytest.raises(SystemExit) as info:
        main(["classify", path])
    assert info.value.code == 1


def test_conjecture_search_is_deterministic_across_jobs(capsys):
    argv = ["conjecture-search", "--k", "2", "--n", "6", "--trials", "20", "--seed", "7"]
    code = main(argv)
    first, _ = capsys.readouterr()
    assert code == 0
    report = json.loads(first)
    assert report["certificates"] == 20
    assert report["candidates"] == []

    assert main(argv) == 0
    second, _ = capsys.readouterr()
    assert second == first

    assert main(argv + ["--jobs", "2"]) == 0
    parallel, _ = capsys.readouterr()
    assert parallel == first


def test_conjecture_search_rejects_tiny_n(capsys):
    code = main(["conjecture-search", "--k", "3", "--n", "4", "--trials", "1", "--seed", "1"])
    _, err = capsys.readouterr()
    assert code == 1
    assert "at least 5 vertices" in err
