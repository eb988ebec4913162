import json
import subprocess
import sys

import pytest

from graphprod.cli import main
from graphprod.document import dumps, loads
from graphprod.lec import integer_chart, reduction_mod

FREE = {"version": "1",
        "presentation": {"graph": {"vertices": ["u", "v"], "edges": []},
                         "groups": {"u": "C2", "v": "C2"}},
        "words": {"abab": [["u", 1], ["v", 1], ["u", 1], ["v", 1]]}}


def call(command, doc, *flags, tmp_path):
    src = tmp_path / "in.json"
    out = tmp_path / "out.json"
    src.write_text(json.dumps(doc))
    code = main([command, str(src), "-o", str(out), *flags])
    text = out.read_text()
    return code, loads(text), text


def test_wp_empty_word(tmp_path):
    doc = dict(FREE, words={"e": []})
    code, out, _ = call("wp", doc, "--expect-trivial", tmp_path=tmp_path)
    assert code == 0 and out["result"]["words"]["e"] == {"trivial": True, "oracle_trivial": True}


def test_wp_expect_trivial_fails(tmp_path):
    code, out, _ = call("wp", FREE, "--expect-trivial", tmp_path=tmp_path)
    assert code == 1 and out["result"]["words"]["abab"]["trivial"] is False


def test_separate_then_check(tmp_path):
    code, out, text = call("separate", FREE, tmp_path=tmp_path)
    assert code == 0
    assert out["settings"] == {"seed": 0, "budget_order": 128, "budget_candidates": 250000,
                               "oracle_cap": 8}
    code, checked, _ = call("check-cert", out, tmp_path=tmp_path)
    assert code == 0 and checked["result"]["certificates"]["abab"]["valid"]
    # determinism and round trip
    _, _, again = call("separate", FREE, tmp_path=tmp_path)
    assert again == text
    assert dumps(loads(text)) == text


def test_check_cert_corrupted(tmp_path):
    _, out, _ = call("separate", FREE, tmp_path=tmp_path)
    cert = out["result"]["certificates"]["abab"]
    cert["vertex_homs"]["u"][0] = 1
    code, checked, _ = call("check-cert", cert, tmp_path=tmp_path)
    assert code == 1
    diag = checked["result"]["certificates"]["certificate"]["diagnostics"][0]
    assert diag["category"] == "HomomorphismViolated"


def test_budget_exit_code(tmp_path):
    code, out, _ = call("separate", FREE, "--budget-order", "4", tmp_path=tmp_path)
    assert code == 3 and out["error"]["type"] == "BudgetExceeded"
    assert out["settings"]["budget_order"] == 4


def test_input_errors(tmp_path):
    code, out, _ = call("nf", {"words": {}}, tmp_path=tmp_path)
    assert code == 2 and out["error"]["type"] == "SchemaError"
    bad = dict(FREE, words={"w": [["x", 1]]})
    code, out, _ = call("nf", bad, tmp_path=tmp_path)
    assert code == 2
    bad_table = dict(FREE, presentation={"graph": {"vertices": ["u"]},
                                         "groups": {"u": {"table": [[0, 1], [1, 1]]}}})
    code, out, _ = call("nf", bad_table, tmp_path=tmp_path)
    assert code == 2 and out["error"]["type"] == "NoInverse"


def test_structure_commands(tmp_path):
    doc = dict(FREE, vertex="u", X=["u"])
    _, out, _ = call("nf", doc, tmp_path=tmp_path)
    assert out["result"]["words"]["abab"]["normal_form"] == FREE["words"]["abab"]
    _, out, _ = call("supp", doc, tmp_path=tmp_path)
    assert out["result"]["words"]["abab"] == {"support": ["u", "v"], "length": 4}
    _, out, _ = call("retract", doc, tmp_path=tmp_path)
    assert out["result"]["words"]["abab"] == []
    _, out, _ = call("split", doc, tmp_path=tmp_path)
    assert out["result"]["split"] == {"v": "u", "A": ["v"], "B": [], "C": ["u"]}
    _, out, _ = call("amalgam", doc, tmp_path=tmp_path)
    assert out["result"]["words"]["abab"]["n"] == 2


def test_closure_and_obstruct(tmp_path):
    from graphprod.catalog import by_name

    S3 = by_name("S3")
    rot = next(x for x in S3 if S3.element_order(x) == 3)
    doc = {"group": "S3", "subgroup": [rot], "tag": "PGroup(2)"}
    code, out, _ = call("closure", doc, tmp_path=tmp_path)
    assert code == 0 and out["result"]["closed"]
    code, out, _ = call("closure", dict(doc, tag="PGroup(3)"), tmp_path=tmp_path)
    assert code == 1 and not out["result"]["closed"]
    am = {"amalgam": {"A": "S3", "B": [rot], "C": "C3"}, "tag": "PGroup(3)"}
    code, out, _ = call("obstruct", am, tmp_path=tmp_path)
    assert code == 0 and out["result"]["witness"]["g"][0][0] == "A"
    code, out, _ = call("obstruct", dict(am, tag="PGroup(2)"), tmp_path=tmp_path)
    assert code == 1 and out["result"]["verdict"] == "NoneFound"


def lec_doc(n=5, lo=-2, hi=2):
    c = integer_chart(lo, hi)
    m = reduction_mod(c, n).to_dict()
    return {"graph": {"vertices": ["u", "v"], "edges": []}, "vertex_maps": {"u": m, "v": m},
            "K": [[["u", 1]], [["v", 1]], [["u", 1], ["v", 1]], [["v", 1], ["u", 1]]]}


def test_lec_commands(tmp_path):
    code, out, _ = call("lec-assemble", lec_doc(), tmp_path=tmp_path)
    assert code == 0 and out["result"]["verified"]
    code, out, _ = call("lec-finitize", dict(lec_doc(), tag="PGroup(5)"), tmp_path=tmp_path)
    assert code == 0
    images = [img for _, img in out["result"]["finitized"]["images"]]
    assert len(set(images)) == 4
    code, out, _ = call("lec-assemble", lec_doc(n=2, lo=-3, hi=3), tmp_path=tmp_path)
    assert code == 1 and not out["result"]["verified"]


def test_console_script_pipe():
    sep = subprocess.run([sys.executable, "-m", "graphprod.cli", "separate"], input=json.dumps(FREE),
                         capture_output=True, text=True)
    assert sep.returncode == 0
    chk = subprocess.run([sys.executable, "-m", "graphprod.cli", "check-cert"], input=sep.stdout,
                         capture_output=True, text=True)
    assert chk.returncode == 0


def test_unknown_command():
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2
