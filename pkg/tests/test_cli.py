import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from signed_eulerian.cli import DEFAULT_SEED, SEED_ENV, main, rational


def schema(name):
    return json.loads(resources.files("signed_eulerian").joinpath(f"schemas/{name}.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_table_rows(capsys):
    assert run(capsys, "table", "A", "4", "negative")[:2] == (0, "0,6,6,0\n")
    assert run(capsys, "table", "B", "1", "all")[:2] == (0, "1,1\n")


def test_table_oracle(capsys):
    code, out, _ = run(capsys, "table", "A", "5", "positive", "--oracle")
    assert code == 0 and out.splitlines() == ["1,14,30,14,1", "oracle: match"]


def test_table_oracle_over_cap(capsys):
    code, _, err = run(capsys, "table", "B", "9", "all", "--oracle")
    assert code == 2 and "enumeration cap" in err


def test_table_json_and_csv(capsys):
    code, out, _ = run(capsys, "table", "B", "4", "negative", "--format", "json")
    d = json.loads(out)
    jsonschema.validate(d, schema("table"))
    assert d["counts"] == [0, 40, 112, 40, 0]
    code, out, _ = run(capsys, "table", "A", "3", "all", "--format", "csv")
    assert out.splitlines() == ["n,k,count", "3,1,1", "3,2,4", "3,3,1"]


@pytest.mark.parametrize("n", ["0", "-2"])
def test_table_bad_n(capsys, n):
    assert run(capsys, "table", "A", n, "all")[0] == 2


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as e:
        main(["verify", "no-such-identity"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main(["table", "C", "3", "all"])
    assert e.value.code == 2


@pytest.mark.parametrize("argv", [
    ["verify", "seriesApm", "--n", "12"],
    ["verify", "b-minus-one", "--n", "8"],
    ["verify", "necklace", "--n", "2", "--order", "20"],
    ["verify", "seriesA"], ["verify", "seriesB"], ["verify", "seriesBpm"],
    ["verify", "desarmenien-foata"], ["verify", "reiner-delta", "--n", "5"],
    ["verify", "reiner-eta", "--n", "5"], ["verify", "fnp-product"],
    ["verify", "symmetry", "--n", "20"], ["verify", "recurrence"],
    ["verify", "moment-match", "--n", "20"], ["verify", "eigenfunction", "--n", "6", "--param", "3"],
])
def test_verify_passes(capsys, argv):
    code, out, _ = run(capsys, *argv)
    d = json.loads(out)
    jsonschema.validate(d, schema("verify"))
    assert code == 0 and d["passed"], d


def test_verify_echoes_defaults(capsys):
    _, out, _ = run(capsys, "verify", "necklace", "--n", "3")
    assert json.loads(out)["params"]["order"] == 32
    assert json.loads(out)["params"]["bound"] == 24


def test_verify_reports_failure(capsys, monkeypatch):
    from signed_eulerian import cli
    from signed_eulerian.identities import VerificationReport

    def broken(n, bound):
        return VerificationReport("seriesA", False, {"n": n}, 1, 3, 27, 28)

    monkeypatch.setattr(cli, "verify_series_a", broken)
    code, out, _ = run(capsys, "verify", "seriesA", "--n", "3")
    d = json.loads(out)
    jsonschema.validate(d, schema("verify"))
    assert code == 1 and d["mismatch"]["index"] == 3 and d["mismatch"]["expected"] == 27


def test_roots_text(capsys):
    code, out, _ = run(capsys, "roots", "A+", "--max-n", "10")
    lines = out.splitlines()
    assert code == 0
    assert sum("all_real" in l for l in lines if l.startswith("A+ n=")) == 10
    code, out, _ = run(capsys, "roots", "A-", "--max-n", "2")
    assert code == 0 and out.splitlines()[0].startswith("A- n=2 all_real degree=2 zero_roots=2")


def test_roots_interlacing_json(capsys):
    code, out, _ = run(capsys, "roots", "A+", "--max-n", "20", "--interlacing", "--format", "json")
    d = json.loads(out)
    jsonschema.validate(d, schema("roots"))
    assert code == 0
    assert d["interlacing"]["smallest_not_interlacing"] == 4
    for cert in d["certificates"]:
        jsonschema.validate(cert, schema("certificate"))


def test_roots_budget(capsys):
    code, out, _ = run(capsys, "roots", "B+", "--max-n", "30", "--budget", "0")
    assert code == 3 and "budget exceeded" in out


def test_roots_bad_family(capsys):
    assert run(capsys, "roots", "C+")[0] == 2


@pytest.mark.parametrize("argv,expected", [
    (["shuffle", "gsr", "--n", "3", "--param", "2", "--iters", "1", "--exact-only"], "3/4"),
    (["shuffle", "typeb", "--n", "2", "--param", "3", "--iters", "1", "--exact-only"], "5/9"),
    (["shuffle", "gsr", "--n", "52", "--param", "2", "--iters", "1", "--exact-only"], "67108865/134217728"),
    (["shuffle", "shelf", "--n", "5", "--param", "2"], "1/2"),
])
def test_shuffle_exact(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    d = json.loads(out)
    jsonschema.validate(d, schema("shuffle"))
    assert code == 0 and d["exact_probability"]["fraction"] == expected


def test_shuffle_decimal_format():
    assert rational(0.5) == {"fraction": "1/2", "decimal": "0.5", "numerator": "1", "denominator": "2"}
    from fractions import Fraction
    assert rational(Fraction(1, 2) + Fraction(1, 2 ** 27))["decimal"] == "0.500000007450581"
    assert rational(Fraction(5, 9))["decimal"] == "0.555555555555556"


def test_shuffle_type_b_even_param(capsys):
    assert run(capsys, "shuffle", "typeb", "--n", "2", "--param", "4")[0] == 2


def test_shuffle_simulation_seed_env(capsys, monkeypatch, tmp_path):
    monkeypatch.setenv(SEED_ENV, "77")
    out1 = tmp_path / "a.json"
    man = tmp_path / "m.json"
    code = main(["--out", str(out1), "--manifest", str(man), "shuffle", "gsr", "--n", "4",
                 "--param", "2", "--trials", "5000"])
    assert code == 0
    d = json.loads(out1.read_text())
    jsonschema.validate(d, schema("shuffle"))
    assert d["seed"] == 77 and d["trials"] == 5000
    m = json.loads(man.read_text())
    jsonschema.validate(m, schema("manifest"))
    # re-running with the same flags reproduces the payload byte for byte
    out2 = tmp_path / "b.json"
    main(["--out", str(out2), "shuffle", "gsr", "--n", "4", "--param", "2", "--trials", "5000"])
    assert out1.read_bytes() == out2.read_bytes()
    import hashlib
    assert m["output_digest"] == "sha256:" + hashlib.sha256(out1.read_bytes()).hexdigest()


def test_default_seed(capsys, monkeypatch):
    monkeypatch.delenv(SEED_ENV, raising=False)
    _, out, _ = run(capsys, "shuffle", "gsr", "--n", "3", "--param", "2", "--trials", "100")
    assert json.loads(out)["seed"] == DEFAULT_SEED


def test_moments_and_normality(capsys):
    code, out, _ = run(capsys, "moments", "A+", "6", "--r", "2")
    d = json.loads(out)
    jsonschema.validate(d, schema("moments"))
    assert d["rows"][0]["variance"] == "7/12"
    code, out, _ = run(capsys, "normality", "B+", "6", "12", "24")
    assert code == 0 and len(out.splitlines()) == 4
    assert run(capsys, "normality", "A+", "1")[0] == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "signed_eulerian", "table", "A", "7", "all"],
                         capture_output=True, text=True, check=True)
    assert res.stdout == "1,120,1191,2416,1191,120,1\n"
