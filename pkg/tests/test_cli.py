import json
import os

from syzkit.cli import run_command


def _data(data_dir, name):
    return os.path.join(data_dir, name)


def test_pdim_infinite_cycle_certificate(data_dir, capsys):
    code, doc = run_command([
        "pdim", "--algebra", _data(data_dir, "ex23d.alg"),
        "--module", _data(data_dir, "s1.mod")])
    assert code == 0
    assert doc.results["pdim"].startswith("infinite")
    kinds = [c["kind"] for c in doc.certificates]
    assert "recurrence-cycle" in kinds
    out = capsys.readouterr().out
    assert "infinite" in out


def test_pdim_simple_shorthand(data_dir):
    code, doc = run_command([
        "pdim", "--algebra", _data(data_dir, "ex23d.alg"),
        "--module", "simple:3", "--budget", "8"])
    assert code == 0
    assert doc.results["pdim"].startswith("infinite")


def test_order_report_exit_and_values(data_dir, tmp_path):
    out = tmp_path / "report.json"
    code, doc = run_command([
        "order", "report", _data(data_dir, "ex46.ord"),
        "--budget", "8", "--out", str(out)])
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["results"]["report"]["order"]["left_fin_dim"] == 4
    assert payload["results"]["report"]["order"]["right_fin_dim"] == 1
    assert payload["status"] == "complete"


def test_resolve_zero_budget_is_open(data_dir):
    code, doc = run_command([
        "resolve", "--algebra", _data(data_dir, "ex23d.alg"),
        "--module", _data(data_dir, "s1.mod"), "--budget", "0"])
    assert code == 2
    assert doc.status == "open-at-budget"


def test_resolve_reports_degrees(data_dir):
    # the left simple at vertex 3 has projective dimension 2 here
    code, doc = run_command([
        "resolve", "--algebra", _data(data_dir, "ex33.alg"),
        "--module", "simple:3", "--budget", "6"])
    assert code == 0
    assert doc.results["terminated"] is True
    assert len(doc.results["degrees"]) == 3


def test_decompose_command(data_dir):
    code, doc = run_command([
        "decompose", "--algebra", _data(data_dir, "ex33.alg"),
        "--module", "simple:4", "--side", "left"])
    assert code == 0
    assert doc.results["summands"][0]["multiplicity"] == 1


def test_rep_index_command(data_dir):
    code, doc = run_command([
        "rep-index", "--algebra", _data(data_dir, "ex33.alg"), "--budget", "12"])
    assert code == 0
    assert doc.results["repetition_index"] == "finite(4)"


def test_syzygy_type_open_exit_two(data_dir):
    code, doc = run_command([
        "syzygy-type", "--algebra", _data(data_dir, "loc.alg"), "--budget", "4"])
    assert code == 2
    assert doc.results["syzygy_type"].startswith("open")


def test_bmatrix_command(data_dir):
    code, doc = run_command([
        "bmatrix", "--algebra", _data(data_dir, "ex33.alg"), "--budget", "12"])
    assert code == 0
    assert len(doc.results["matrix"]) == 7
    assert doc.results["stabilization_index"] == 5


def test_findim_with_probe(data_dir):
    code, doc = run_command([
        "findim", "--algebra", _data(data_dir, "ex33.alg"),
        "--probe", _data(data_dir, "ex33_w.mod"), "--budget", "10"])
    assert code == 0
    fin = doc.results["findim"]
    assert fin["left"]["certified_upper"] == 4
    assert fin["left"]["certified_lower"] == 4


def test_graph_command(data_dir, capsys):
    code, _ = run_command([
        "graph", "--algebra", _data(data_dir, "ex23d.alg"),
        "--module", _data(data_dir, "s1.mod")])
    assert code == 0
    assert "layer 0" in capsys.readouterr().out
    code, _ = run_command([
        "graph", "--algebra", _data(data_dir, "ex23d.alg"),
        "--module", "simple:1", "--dot"])
    assert code == 0
    assert "digraph" in capsys.readouterr().out


def test_order_ingest_writes_alg(data_dir, tmp_path):
    out_alg = tmp_path / "derived.alg"
    code, doc = run_command([
        "order", "ingest", _data(data_dir, "ex46.ord"),
        "--out-alg", str(out_alg)])
    assert code == 0
    from syzkit.formats import parse_algebra

    derived = parse_algebra(out_alg.read_text())
    assert derived.dim == 36


def test_order_gldim_cert(data_dir):
    code, doc = run_command([
        "order", "gldim-cert", _data(data_dir, "ex47.ord"),
        "--probe", "simple:6", "--budget", "8"])
    assert code == 0
    assert doc.results["certificate"]["status"] == "infinite-certified"


def test_missing_file_is_error(data_dir):
    code, doc = run_command([
        "pdim", "--algebra", "/nonexistent.alg", "--module", "simple:1"])
    assert code == 1 and doc is None


def test_usage_error_exit_one(capsys):
    code, doc = run_command(["pdim"])  # missing required arguments
    assert code == 1 and doc is None
    assert "usage" in capsys.readouterr().err
