import json
import subprocess
import sys

import pytest

from qborcherds.cli import EXIT_ARGS, EXIT_DEPTH, EXIT_DOMAIN, EXIT_FAIL, EXIT_OK, EXIT_PARSE, run


def test_validate_samples():
    for name in ["sl2", "osp12", "a2", "odd_isotropic", "borcherds_mixed"]:
        code, text = run(["validate", "--datum", name])
        assert code == EXIT_OK, text


def test_invalid_datum_file(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(dict(index=["1", "2"], A=[[2, 0], [-1, 2]], s=[1, 1], m=[1, 1],
                                 theta=[[1, 1], [1, 1]])))
    code, text = run(["validate", "--datum", str(p)])
    assert code in (EXIT_FAIL, EXIT_DOMAIN)
    assert "zero-pattern" in text


def test_malformed_json(tmp_path):
    p = tmp_path / "broken.json"
    p.write_text("{oops")
    code, text = run(["validate", "--datum", str(p)])
    assert code == EXIT_PARSE


def test_bad_element_is_parse_error():
    code, _ = run(["mul", "--datum", "sl2", "--x", "e[1,1", "--y", "f[1,1]"])
    assert code == EXIT_PARSE


def test_depth_overflow():
    code, _ = run(["mul", "--datum", "sl2", "--depth", "1", "--x", "e[1,1]*e[1,1]", "--y", "1"])
    assert code == EXIT_DEPTH


def test_r_on_large_module_needs_depth():
    # the 3-dimensional tensor square reaches height 4
    code, _ = run(["rmat", "--datum", "osp12", "--depth", "3", "--lambda", "h1=2"])
    assert code == EXIT_DEPTH


def test_missing_argument():
    code, _ = run(["char", "--datum", "sl2"])
    assert code == EXIT_ARGS
    assert run(["frobnicate"])[0] == EXIT_ARGS


def test_pair_value():
    code, text = run(["pair", "--datum", "sl2", "--x", "e[1,1]*e[1,1]", "--y", "f[1,1]*f[1,1]"])
    assert code == EXIT_OK
    assert "(q^4 + q^2)/(q^4 - 2*q^2 + 1)" in text


def test_ybe_report():
    code, text = run(["ybe", "--datum", "sl2", "--lambda", "h1=1"])
    assert code == EXIT_OK
    assert "0 nonzero residual entries / 64" in text


def test_json_output_is_deterministic():
    argv = ["dims", "--datum", "a2", "--depth", "3", "--format", "json"]
    first = run(argv)[1]
    assert first == run(argv)[1]
    doc = json.loads(first)
    assert doc["verb"] == "dims"
    assert doc["data"]["dims"]["(1,1)"] == 2


@pytest.mark.parametrize("verb,extra", [
    ("gram", []),
    ("hopf-test", ["--count", "5"]),
    ("char", ["--lambda", "h1=2"]),
    ("center-check", []),
    ("hc", []),
    ("flambda", ["--lambda", "h1=2"]),
    ("rmat", ["--lambda", "h1=2"]),
])
def test_verbs_pass_on_osp(verb, extra):
    code, text = run([verb, "--datum", "osp12", *extra])
    assert code == EXIT_OK, text
    assert "checks passed" in text


def test_json_checks_shape():
    code, text = run(["hc", "--datum", "sl2", "--format", "json"])
    doc = json.loads(text)
    assert code == EXIT_OK
    assert {"name", "ref", "pass", "detail"} <= set(doc["checks"][0])


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "qborcherds", "validate", "--datum", "sl2"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert "PASS" in out.stdout


def test_ybe_at_depth_four():
    code, text = run(["ybe", "--datum", "sl2", "--depth", "4", "--lambda", "h1=1"])
    assert code == EXIT_OK
    assert "0 nonzero residual entries / 64" in text


def kostant_a2(a, b):
    # ways to write a*a1 + b*a2 as a sum over the positive roots a1, a2, a1+a2
    return min(a, b) + 1


def test_a2_dims_match_pbw_counts():
    code, text = run(["dims", "--datum", "a2", "--depth", "4", "--format", "json"])
    assert code == EXIT_OK
    dims = json.loads(text)["data"]["dims"]
    assert len(dims) == 15
    for label, n in dims.items():
        a, b = (int(x) for x in label.strip("()").split(","))
        assert n == kostant_a2(a, b)
