from __future__ import annotations

import io
import subprocess
import sys

import pytest

from nilpotent.cli import BAD_INPUT, EXCEEDED, FAILED, METHODS, OK, run
from nilpotent.digraph import NEG, POS, SignedDigraph
from nilpotent.dynamics import analyze, is_G_function
from nilpotent.textio import parse_fds, parse_graph, parse_report


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def report(text: str) -> dict[str, str]:
    """Key/value lines of a report, skipping any system printed before them."""
    keys = {}
    for line in text.splitlines():
        head, _, rest = line.partition(" ")
        if head in {"fds", "alphabet", "n", "inputs", "table"}:
            continue
        keys[head] = rest
    return keys


@pytest.fixture
def double_cycle(tmp_path):
    path = tmp_path / "dc.txt"
    assert call("gen", "double_cycle", 1, 3, "-o", path)[0] == OK
    return path


def test_gen_writes_a_graph(double_cycle):
    G = parse_graph(double_cycle.read_text())
    assert G.n == 3 and G.num_arcs == 4 and G.has_arc(1, 1)
    code, out, _ = call("gen", "double_cycle", 1, 3)
    assert code == OK and out == double_cycle.read_text()


def test_construct_and_verify(double_cycle):
    code, out, _ = call("construct", "strong_loop", "-g", double_cycle, "--verify")
    assert code == OK
    rep = report(out)
    assert rep["nilpotent"] == "true" and rep["class"] == "5"
    assert rep["verified"] == "true" and rep["graph_match"] == "true"


def test_construct_output_analyzes(double_cycle, tmp_path):
    path = tmp_path / "f.txt"
    code, out, _ = call("construct", "strong_loop", "-g", double_cycle, "-o", path)
    assert code == OK and report(out)["bound"] == "5"
    f = parse_fds(path.read_text())
    assert is_G_function(f, parse_graph(double_cycle.read_text()), signed=False)
    code, out, _ = call("analyze", "-f", path)
    assert code == OK
    assert parse_report(out) == {"nilpotent": "true", "class": "5", "fixed_point": "0 1 1", "states": "8"}
    assert call("igraph", "-f", path)[1] == call("igraph", "-f", path)[1]


def test_analyze_constant(tmp_path):
    path = tmp_path / "k.txt"
    path.write_text("fds\nalphabet 2\nn 1\ntable 1 1\n")
    code, out, _ = call("analyze", "-f", path)
    assert code == OK and parse_report(out)["nilpotent"] == "true" and parse_report(out)["class"] == "1"


def test_igraph_round_trip(tmp_path):
    path = tmp_path / "f.txt"
    path.write_text("fds\nalphabet 2\nn 2\ninputs 1 1 2\ntable 1 0 0 1 1\ninputs 2 1\ntable 2 1 0\n")
    code, out, _ = call("igraph", "-f", path)
    assert code == OK
    assert parse_graph(out) == SignedDigraph(2, [(1, 1, POS), (1, 2, NEG)])


def test_oracle_on_a_cycle(tmp_path):
    path = tmp_path / "c3.txt"
    call("gen", "cycle", 3, "-o", path)
    code, out, _ = call("oracle", "-g", path, "--alphabet", 2, "--unsigned")
    assert code == OK
    assert report(out)["verdict"] == "none"


def test_oracle_writes_a_witness(double_cycle, tmp_path):
    path = tmp_path / "w.txt"
    code, out, _ = call("oracle", "-g", double_cycle, "--unsigned", "-o", path)
    assert code == OK and report(out)["verdict"] == "exists" and report(out)["min_class"] == "5"
    f = parse_fds(path.read_text())
    assert analyze(f).class_ == 5
    assert is_G_function(f, parse_graph(double_cycle.read_text()), signed=False)


def test_check_graph(double_cycle):
    code, out, _ = call("check-graph", "-g", double_cycle)
    rep = report(out)
    assert code == OK
    assert rep["strong"] == "true" and rep["loops"] == "1" and rep["primitive"] == "true"
    assert rep["admits_boolean_function"] == "true"


def test_verify_table_passes():
    code, out, _ = call("verify-table")
    lines = out.splitlines()
    assert code == OK and lines and all(line.startswith("PASS") for line in lines)


@pytest.mark.parametrize("argv", [
    ("analyze", "-f", "/nonexistent/f.txt"),
    ("gen", "double_cycle", 1, 1),
    ("gen", "no_such_family", 3),
    ("construct", "no_such_method", "-g", "x"),
    ("analyze",),
])
def test_bad_input_exit_code(argv):
    assert call(*argv)[0] == BAD_INPUT


def test_method_preconditions_are_checked(tmp_path):
    path = tmp_path / "c3.txt"
    call("gen", "cycle", 3, "-o", path)
    code, _, err = call("construct", "complete_loops", "-g", path)
    assert code == BAD_INPUT and err.startswith("error:")
    # an unmet hypothesis is a failed construction, not bad input
    code, _, err = call("construct", "strong_loop", "-g", path)
    assert code == FAILED and "HYPOTHESIS_FAILED" in err


def test_caps_exit_code(double_cycle, tmp_path):
    path = tmp_path / "f.txt"
    call("construct", "strong_loop", "-g", double_cycle, "-o", path)
    assert call("analyze", "-f", path, "--max-states", 4)[0] == EXCEEDED
    code, out, _ = call("oracle", "-g", double_cycle, "--budget", 1)
    assert code == EXCEEDED and report(out)["verdict"] == "budget"


SUITABLE = {
    "loops_added": ("complete", 3),
    "undirected_class3": ("complete", 3),
    "universal_class3": ("complete", 3),
    "xor_class2": ("complete_loops", 2),
}


@pytest.mark.parametrize("method", sorted(METHODS))
def test_every_method_builds_on_a_suitable_graph(tmp_path, method):
    path = tmp_path / "g.txt"
    call("gen", *SUITABLE.get(method, ("complete_loops", 3)), "-o", path)
    code, out, _ = call("construct", method, "-g", path, "--alphabet", 3, "--verify")
    assert code == OK, method
    assert report(out)["verified"] == "true"


def test_console_entry_point(double_cycle):
    proc = subprocess.run([sys.executable, "-m", "nilpotent", "check-graph", "-g", str(double_cycle)],
                          capture_output=True, text=True)
    assert proc.returncode == OK and "strong true" in proc.stdout
