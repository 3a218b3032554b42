import json

import pytest

from symsys.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def _walk(x):
    if isinstance(x, dict):
        for v in x.values():
            yield from _walk(v)
    elif isinstance(x, list):
        for v in x:
            yield from _walk(v)
    else:
        yield x


def assert_no_floats(doc):
    assert not any(isinstance(v, float) for v in _walk(doc))


def test_verify_identities(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "identities")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == 1 and doc["results"]["failed"] == []
    refuted = [it for it in doc["results"]["items"] if not it["asserted"]]
    assert refuted and not refuted[0]["passed"]


def test_verify_all(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "all", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "suite,name,passed,asserted,detail"


def test_patterns_csv(capsys):
    code, out, _ = run(capsys, "patterns", "--q", "3", "--n", "2", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["lambda,total,squarefree", "1^2,6,3", "2^1,3,3"]


def test_patterns_bounds_json(capsys):
    code, out, _ = run(capsys, "patterns", "--q", "7", "--n", "5", "--prescribe", "a4=1", "--bounds")
    assert code == 0
    doc = json.loads(out)
    assert_no_floats(doc)
    res = doc["results"]
    assert res["size"] == 7**4
    assert res["hypotheses"]["A1"] == "pass-exact"
    assert all(r["total_ok"] for r in res["rows"])


def test_patterns_lambda_filter(capsys):
    code, out, _ = run(capsys, "patterns", "--q", "5", "--n", "3", "--lambda", "3", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["lambda,total,squarefree", "3^1,40,40"]


def test_deep_holes_search(capsys):
    code, out, _ = run(capsys, "deep-holes", "--q", "7", "--k", "3", "--d", "1", "--mode", "search", "--tail", "[0]")
    assert code == 0
    assert json.loads(out)["results"]["good_zero"] == [2, 3, 4, 5]


def test_deep_holes_verify_and_criteria(capsys):
    code, out, _ = run(capsys, "deep-holes", "--q", "7", "--k", "3", "--d", "1", "--mode", "verify", "--tail", "[0]")
    assert code == 0
    res = json.loads(out)["results"]
    assert res["distance"] <= 7 - 3 - 2 and not res["deep_hole"]
    code, out, _ = run(capsys, "deep-holes", "--q", "331", "--k", "10", "--d", "3", "--mode", "criteria", "--eps", "1")
    assert code == 0
    doc = json.loads(out)
    assert_no_floats(doc)
    crit = doc["results"]["criteria"]
    assert [crit[c]["k_threshold"] for c in ("sharpened", "constant-14", "constant-1")] == [3, 9, 19]


def test_field(capsys):
    code, out, _ = run(capsys, "field", "--field", "9=3^2", "--op", "t", "*", "t")
    assert code == 0
    res = json.loads(out)["results"]
    assert res["modulus_text"] == "t^2+1" and res["op"]["result"] == "2"


def test_subdisc(capsys):
    code, out, _ = run(capsys, "subdisc", "--f", "T^3 - T", "--j", "1")
    assert code == 0 and json.loads(out)["results"]["value"] == -6
    code, out, _ = run(capsys, "subdisc", "--generic", "3", "--j", "1")
    assert json.loads(out)["results"]["elementary"] == "2*E1^2-6*E2"


def test_bounds(capsys):
    code, out, _ = run(capsys, "bounds", "--m", "5", "--s", "1", "--k", "2", "--q", "11", "--delta", "2", "--D", "1")
    assert code == 0
    doc = json.loads(out)
    assert_no_floats(doc)
    res = doc["results"]
    assert res["main-k2"] == {"q": 11, "rational": 81312, "sqrt_coeff": 0}
    assert res["slice"] == 2662 and res["nonempty_threshold"] == 144


def test_count_inline_and_file(capsys, tmp_path):
    code, out, _ = run(capsys, "count", "--field", "7", "--m", "4", "--k", "2", "--G", "E1+E2-3")
    assert code == 0
    res = json.loads(out)["results"]
    assert res["A1"] == "pass-exact" and res["failed"] == []
    f = tmp_path / "sys.json"
    f.write_text(json.dumps({"m": 4, "k": 2, "s": 1, "G": ["E1+E2-3"], "field": "7"}))
    code, out2, _ = run(capsys, "count", "--system", str(f))
    assert code == 0
    assert json.loads(out2)["results"] == res


@pytest.mark.parametrize("fmt", ["json", "csv"])
def test_count_shard_byte_stability(capsys, fmt):
    outs = set()
    for shards in ("1", "4", "16"):
        code, out, _ = run(capsys, "count", "--field", "7", "--m", "5", "--k", "2", "--G", "E3-2",
                           "--shards", shards, "--format", fmt)
        assert code == 0
        outs.add(out)
    assert len(outs) == 1


def test_reports_are_reproducible(capsys):
    a = run(capsys, "verify", "--suite", "subdisc", "--seed", "3")[1]
    b = run(capsys, "verify", "--suite", "subdisc", "--seed", "3")[1]
    assert a == b


@pytest.mark.parametrize("argv", [
    ["field", "--field", "6"],
    ["count", "--field", "7", "--m", "4", "--k", "2", "--G", "E1 +"],
    ["count", "--field", "7", "--m", "4", "--k", "2", "--G", "E3"],
    ["patterns", "--q", "5", "--n", "3", "--prescribe", "b1=2"],
    ["patterns", "--q", "5", "--n", "3", "--prescribe", "a3=2"],
    ["deep-holes", "--q", "7", "--k", "3", "--d", "2", "--tail", "[0]"],
    ["field", "--field", "7", "--op", "1", "/", "0"],
    ["subdisc", "--f", "2*T^2", "--j", "0"],
    ["nosuch"],
])
def test_malformed_input_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_budget_exit_3(capsys):
    code, _, err = run(capsys, "count", "--field", "7", "--m", "5", "--k", "2", "--G", "E1", "--budget", "100")
    assert code == 3 and "budget" in err


def test_check_failure_exit_1(capsys, monkeypatch):
    from symsys import cli

    monkeypatch.setitem(cli.SUITES, "appendix", lambda: [cli._item("forced", False)])
    code, out, err = run(capsys, "verify", "--suite", "appendix")
    assert code == 1 and "forced" in err
    assert json.loads(out)["results"]["failed"] == ["forced"]
