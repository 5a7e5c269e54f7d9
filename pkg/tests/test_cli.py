import json
import subprocess
import sys

import pytest

from spectral_turan.cli import InputError, read_graph_input, run
from spectral_turan.graph import graph_from_edges


def report(tmp_path, *argv, name="out.json"):
    out = tmp_path / name
    status = run([*argv, "--out", str(out)])
    return status, (json.loads(out.read_text()) if out.exists() else None)


# input ------------------------------------------------------------------------

def test_read_inline_graph6():
    assert read_graph_input("A_") == [graph_from_edges(2, [(0, 1)])]


def test_read_empty_file(tmp_path):
    p = tmp_path / "empty.g6"
    p.write_text("")
    assert read_graph_input(str(p)) == []


def test_read_reports_bad_line(tmp_path):
    p = tmp_path / "bad.g6"
    p.write_text("A_\n<garbage>\n")
    with pytest.raises(InputError, match="line 2"):
        read_graph_input(str(p))
    with pytest.raises(InputError, match="line 2"):
        read_graph_input("A_\n<garbage>")


def test_read_edge_list_json(tmp_path):
    p = tmp_path / "g.json"
    p.write_text(json.dumps({"n": 5, "edges": [[0, 1], [1, 2]]}))
    (g,) = read_graph_input(str(p))
    assert (g.n, g.m) == (5, 2)
    (h,) = read_graph_input(str(p), strip_isolated=True)
    assert (h.n, h.m) == (3, 2)
    many = read_graph_input(json.dumps([{"edges": [[0, 1]]}, [[0, 1], [1, 2]]]))
    assert [g.m for g in many] == [1, 2]
    with pytest.raises(InputError):
        read_graph_input('{"edges": [[0, 0]]}')


# commands ---------------------------------------------------------------------

def test_spectral_c4(tmp_path):
    status, doc = report(tmp_path, "spectral", "--graph6", "Cr", "--matrix", "adjacency")
    assert status == 0
    (entry,) = doc["result"]["graphs"]
    assert entry["value"] == pytest.approx(2.0, abs=1e-10)
    assert entry["residual"] <= 1e-10
    assert doc["version"] and doc["config"]["graph6"] == "Cr" and "seconds" in doc["timing"]


def test_spectral_family_signless(tmp_path):
    status, doc = report(tmp_path, "spectral", "--family", "star", "--m", "4", "--matrix", "signless", "--vector")
    assert status == 0
    assert doc["result"]["graphs"][0]["value"] == pytest.approx(5.0, abs=1e-10)
    assert len(doc["result"]["graphs"][0]["vector"]) == 5


def test_verify_t15(tmp_path):
    status, doc = report(tmp_path, "verify", "--theorem", "1.5", "--m", "4")
    assert status == 0
    assert len(doc["result"]["witnesses"]["equality"]) == 1
    assert doc["result"]["counts"]["violations"] == 0


def test_conjecture_f5(tmp_path):
    status, doc = report(tmp_path, "conjecture", "--s", "1", "--n", "5")
    assert status == 0
    assert doc["result"]["counterexamples"] == []
    assert doc["result"]["c4_free_extremal_witnesses"] == ["DK{"]


def test_families(tmp_path):
    status, doc = report(tmp_path, "families", "--family", "friendship_odd", "--n", "9")
    assert status == 0
    (f,) = doc["result"]["families"]
    assert f["rho"] == pytest.approx((1 + 33 ** 0.5) / 2, abs=1e-9)
    status, doc = report(tmp_path, "families", "--certify", "--m", "27", name="cert.json")
    assert status == 0 and doc["result"]["ok"]


def test_enumerate(tmp_path):
    lines = tmp_path / "m5.g6"
    status, doc = report(tmp_path, "enumerate", "--m", "5", "--graphs-out", str(lines))
    assert status == 0 and doc["result"]["count"] == 26
    assert len(lines.read_text().splitlines()) == 26
    status, doc = report(tmp_path, "enumerate", "--n", "5", name="n5.json")
    assert doc["result"]["count"] == 34


def test_search(tmp_path):
    status, doc = report(tmp_path, "search", "--m", "9", "--restarts", "4", "--iters", "100")
    assert status == 0
    assert doc["result"]["c4_free"] and doc["result"]["rho"] <= 3 + 1e-9


def test_violations_exit_two(tmp_path):
    # the non-strict reading of the C4 theorem at m = 9 is violated by K_{1,9}
    status, doc = report(tmp_path, "verify", "--theorem", "1.1", "--m", "9", "--nonstrict")
    assert status == 2
    assert doc["result"]["counts"]["violations"] > 0


def test_below_threshold_violations_are_informational(tmp_path):
    status, doc = report(tmp_path, "verify", "--theorem", "1.3", "--m", "8")
    assert status == 0
    assert doc["result"]["below_threshold"] and doc["result"]["counts"]["violations"] > 0


# errors -----------------------------------------------------------------------

@pytest.mark.parametrize(
    "argv",
    [
        ["bogus"],
        ["spectral", "--graph6", "A_\n<garbage>"],
        ["spectral"],
        ["verify", "--theorem", "1.1", "--m", "13"],
        ["verify", "--theorem", "1.9", "--m", "4"],
        ["conjecture", "--s", "1", "--n", "11"],
        ["enumerate", "--m", "3", "--n", "3"],
        ["search", "--m", "20", "--n", "4"],
        ["spectral", "--graph6", "A_", "--jobs", "0"],
    ],
)
def test_errors_exit_one(argv, capsys):
    assert run(argv) == 1
    assert "error" in capsys.readouterr().err


def test_unwritable_output(tmp_path):
    assert run(["spectral", "--graph6", "A_", "--out", str(tmp_path / "missing" / "x.json")]) == 1


def test_cap_flag_and_env(tmp_path, monkeypatch):
    assert run(["enumerate", "--m", "6", "--max-edges", "5"]) == 1
    monkeypatch.setenv("SPECTRAL_TURAN_CAP", "5")
    assert run(["enumerate", "--m", "6"]) == 1


# reproducibility ----------------------------------------------------------------

@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--theorem", "1.4", "--m", "8"],
        ["search", "--m", "8", "--seed", "3", "--restarts", "3"],
        ["conjecture", "--s", "1", "--n", "6", "--jobs", "2"],
    ],
)
def test_identical_reports_modulo_timing(tmp_path, argv):
    out = tmp_path / "r.json"
    texts = []
    for _ in range(2):
        run([*argv, "--out", str(out)])
        doc = json.loads(out.read_text())
        doc.pop("timing")
        doc["result"].pop("timing", None)
        texts.append(json.dumps(doc, sort_keys=True))
    assert texts[0] == texts[1]


def test_recheck_reproduces_classifications(tmp_path):
    out = tmp_path / "t13.json"
    assert run(["verify", "--theorem", "1.3", "--m", "9", "--out", str(out)]) == 0
    rc = tmp_path / "rc.json"
    assert run(["verify", "--recheck", str(out), "--out", str(rc)]) == 0
    doc = json.loads(rc.read_text())["result"]
    assert doc["mismatches"] == [] and doc["witnesses_checked"] > 0


def test_recheck_flags_tampering(tmp_path):
    out = tmp_path / "t15.json"
    run(["verify", "--theorem", "1.5", "--m", "5", "--out", str(out)])
    doc = json.loads(out.read_text())
    doc["result"]["witnesses"]["violations"] = ["DK{"]
    out.write_text(json.dumps(doc))
    assert run(["verify", "--recheck", str(out), "--out", str(tmp_path / "rc.json")]) == 1


def test_recheck_conjecture(tmp_path):
    out = tmp_path / "c.json"
    run(["conjecture", "--s", "1", "--n", "6", "--out", str(out)])
    assert run(["verify", "--recheck", str(out), "--out", str(tmp_path / "rc.json")]) == 0


def test_batch_appends_and_resumes(tmp_path):
    out = tmp_path / "sweep.jsonl"
    assert run(["verify", "--theorem", "1.5", "--m", "4-6", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert [json.loads(x)["result"]["spec"]["m"] for x in lines] == [4, 5, 6]
    # rerunning skips finished cells and appends only new ones
    assert run(["verify", "--theorem", "1.5", "--m", "4-7", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert [json.loads(x)["result"]["spec"]["m"] for x in lines] == [4, 5, 6, 7]
    assert run(["verify", "--recheck", str(out), "--out", str(tmp_path / "rc.json")]) == 0


def test_batch_exit_two_on_violation(tmp_path):
    out = tmp_path / "sweep.jsonl"
    assert run(["verify", "--theorem", "1.1", "--m", "9", "--batch", "--nonstrict", "--out", str(out)]) == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "spectral_turan", "spectral", "--graph6", "A_"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["graphs"][0]["value"] == pytest.approx(1.0)
