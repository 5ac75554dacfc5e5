import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from dyncolor import catalog
from dyncolor.cli import main
from dyncolor.coloring import is_dynamic, is_proper, parse_coloring, parse_lists, serialize_coloring
from dyncolor.drawing import parse_drawing, serialize_drawing
from dyncolor.graph import Graph, serialize_graph


@pytest.fixture()
def runner():
    return CliRunner()


def _write(path, text):
    Path(path).write_text(text)


# -- check -------------------------------------------------------------------------


def test_check_valid(runner):
    with runner.isolated_filesystem():
        _write("g.txt", serialize_graph(Graph.cycle(4)))
        _write("c.txt", serialize_coloring({0: 1, 1: 2, 2: 1, 3: 2}))
        res = runner.invoke(main, ["check", "g.txt", "c.txt"])
        assert res.exit_code == 0
        assert "valid" in res.output


def test_check_invalid_exits_1(runner):
    with runner.isolated_filesystem():
        _write("g.txt", serialize_graph(Graph.cycle(4)))
        _write("c.txt", serialize_coloring({0: 1, 1: 1, 2: 2, 3: 2}))
        res = runner.invoke(main, ["check", "g.txt", "c.txt"])
        assert res.exit_code == 1
        assert "invalid" in res.output


def test_check_dynamic_flag(runner):
    with runner.isolated_filesystem():
        _write("g.txt", serialize_graph(Graph.cycle(4)))
        # proper but every vertex sees only one color
        _write("c.txt", serialize_coloring({0: 1, 1: 2, 2: 1, 3: 2}))
        assert runner.invoke(main, ["check", "g.txt", "c.txt"]).exit_code == 0
        res = runner.invoke(main, ["check", "g.txt", "c.txt", "--dynamic", "--format", "json"])
        assert res.exit_code == 1
        data = json.loads(res.output)
        assert data["valid"] is False
        assert "monochromatic" in data["violation"]


def test_check_accepts_drawing_files(runner):
    with runner.isolated_filesystem():
        _write("d.txt", serialize_drawing(catalog.fixture("k4-crossed")))
        _write("c.txt", serialize_coloring({0: 1, 1: 2, 2: 3, 3: 4}))
        assert runner.invoke(main, ["check", "d.txt", "c.txt"]).exit_code == 0


def test_check_bad_file_exits_1(runner):
    with runner.isolated_filesystem():
        _write("g.txt", "not a graph\n")
        _write("c.txt", "c 0 1\n")
        res = runner.invoke(main, ["check", "g.txt", "c.txt"])
        assert res.exit_code == 1
        assert "error:" in res.output


# -- solve -------------------------------------------------------------------------


def test_solve_chromatic_with_witness(runner):
    with runner.isolated_filesystem():
        _write("g.txt", serialize_graph(Graph.cycle(5)))
        res = runner.invoke(main, ["solve", "g.txt", "--param", "chi", "--format", "json"])
        assert res.exit_code == 0
        data = json.loads(res.output)
        assert data["value"] == 3
        witness = parse_coloring(Path(data["witness"]).read_text())
        assert is_proper(Graph.cycle(5), witness)


def test_solve_dynamic_chromatic(runner):
    with runner.isolated_filesystem():
        _write("g.txt", serialize_graph(Graph.cycle(5)))
        res = runner.invoke(main, ["solve", "g.txt", "--param", "chid", "--format", "json"])
        assert json.loads(res.output)["value"] == 5


def test_solve_choosability_fixed_ell_with_counterexample(runner):
    with runner.isolated_filesystem():
        _write("g.txt", serialize_graph(Graph.cycle(5)))
        res = runner.invoke(main, ["solve", "g.txt", "--param", "ch", "--ell", "2", "--format", "json"])
        assert res.exit_code == 0
        data = json.loads(res.output)
        assert data["choosable"] is False
        lists = parse_lists(Path(data["counterexample"]).read_text())
        assert all(len(s) == 2 for s in lists.values())


def test_solve_choosability_search(runner):
    with runner.isolated_filesystem():
        _write("g.txt", serialize_graph(Graph.cycle(6)))
        res = runner.invoke(main, ["solve", "g.txt", "--param", "chd", "--format", "json"])
        assert res.exit_code == 0
        assert json.loads(res.output)["value"] == 3


def test_solve_cap_exits_3(runner):
    with runner.isolated_filesystem():
        _write("g.txt", serialize_graph(Graph.cycle(10)))
        res = runner.invoke(main, ["solve", "g.txt", "--param", "chd", "--ell", "3"])
        assert res.exit_code == 3
        assert "cap exceeded" in res.output


def test_usage_error_exits_2(runner):
    res = CliRunner().invoke(main, ["solve", "--no-such-flag"])
    assert res.exit_code == 2


# -- color11 -----------------------------------------------------------------------


def test_color11_uniform(runner):
    with runner.isolated_filesystem():
        d = catalog.fixture("k6-oneplane")
        _write("d.txt", serialize_drawing(d))
        res = runner.invoke(main, ["color11", "d.txt", "--uniform-lists", "11", "--format", "json"])
        assert res.exit_code == 0
        data = json.loads(res.output)
        c = parse_coloring(Path(data["coloring"]).read_text())
        assert is_dynamic(d.graph, c)


def test_color11_trace(runner):
    with runner.isolated_filesystem():
        d = catalog.fixture("k7-subdiv")
        _write("d.txt", serialize_drawing(d))
        res = runner.invoke(main, ["color11", "d.txt", "--uniform-lists", "11", "--trace"])
        assert res.exit_code == 0
        assert "reduce" in res.output or "base-solve" in res.output


def test_color11_lists_file(runner):
    with runner.isolated_filesystem():
        from dyncolor.coloring import serialize_lists
        from dyncolor.reduce import uniform_lists

        d = catalog.fixture("k4-crossed")
        _write("d.txt", serialize_drawing(d))
        _write("l.txt", serialize_lists(uniform_lists(d.graph, 12)))
        res = runner.invoke(main, ["color11", "d.txt", "l.txt"])
        assert res.exit_code == 0
        c = parse_coloring(Path("d.txt.coloring").read_text())
        assert is_dynamic(d.graph, c)


def test_color11_small_lists_exit_1(runner):
    with runner.isolated_filesystem():
        _write("d.txt", serialize_drawing(catalog.cycle_drawing(6)))
        res = runner.invoke(main, ["color11", "d.txt", "--uniform-lists", "10"])
        assert res.exit_code == 1
        assert "11" in res.output


def test_color11_needs_exactly_one_list_source(runner):
    with runner.isolated_filesystem():
        _write("d.txt", serialize_drawing(catalog.cycle_drawing(6)))
        assert runner.invoke(main, ["color11", "d.txt"]).exit_code == 1


# -- discharge ----------------------------------------------------------------------


def test_discharge_plain_report(runner):
    with runner.isolated_filesystem():
        _write("d.txt", serialize_drawing(catalog.fixture("pattern6")))
        res = runner.invoke(main, ["discharge", "d.txt"])
        assert res.exit_code == 0
        assert "six-face-special-limit" in res.output
        assert "R5" in res.output


def test_discharge_json_report(runner):
    with runner.isolated_filesystem():
        _write("d.txt", serialize_drawing(catalog.fixture("k6-oneplane")))
        res = runner.invoke(main, ["discharge", "d.txt", "--format", "json"])
        assert res.exit_code == 0
        data = json.loads(res.output)
        assert data["total_initial"] == "-8"


def test_discharge_invalid_drawing_exits_1(runner):
    with runner.isolated_filesystem():
        d = catalog.fixture("k4-plane")
        text = serialize_drawing(d).replace("r 0 ", "r 0 1 ", 1)  # corrupt a rotation
        _write("d.txt", text)
        res = runner.invoke(main, ["discharge", "d.txt"])
        assert res.exit_code == 1


# -- generate / fixture ---------------------------------------------------------------


def test_generate_cycle_stdout(runner):
    res = CliRunner().invoke(main, ["generate", "cycle", "7"])
    assert res.exit_code == 0
    assert parse_drawing(res.output).graph == Graph.cycle(7)


def test_generate_random_planar_to_file(runner):
    with runner.isolated_filesystem():
        res = runner.invoke(main, ["generate", "random-planar", "15", "--seed", "3", "--out", "d.txt"])
        assert res.exit_code == 0
        d = parse_drawing(Path("d.txt").read_text())
        assert d.graph.num_vertices() == 15 and d.validate().ok


def test_generate_k7_refused(runner):
    res = CliRunner().invoke(main, ["generate", "complete", "7"])
    assert res.exit_code == 1


def test_fixture_listing_and_emission(runner):
    res = CliRunner().invoke(main, ["fixture"])
    assert res.exit_code == 0
    assert "pattern6" in res.output
    res = CliRunner().invoke(main, ["fixture", "cycle6"])
    assert parse_drawing(res.output).graph == Graph.cycle(6)
    assert CliRunner().invoke(main, ["fixture", "no-such"]).exit_code == 1
