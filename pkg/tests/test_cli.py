import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from weilsurf import classify
from weilsurf.cli import build_parser, canonical, document, dumps, main, render_text


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, err = run("--json", *argv)
    return code, (json.loads(out) if out else None), err


# ------------------------------------------------------------------ elliptic


def test_elliptic_q9():
    code, doc, _ = run_json("elliptic", "--q", "9")
    assert code == 0
    rows = {r["beta"]: r for r in doc["results"]["rows"]}
    assert rows[6]["aut_group"] == rows[-6]["aut_group"] == "Dic12"
    assert rows[6]["kind"] == "ss_all_endos"
    assert doc["schema_version"] == "1" and doc["command"] == "elliptic"


def test_elliptic_q2_zero_trace():
    code, doc, _ = run_json("elliptic", "--q", "2")
    assert code == 0
    assert 0 in {r["beta"] for r in doc["results"]["rows"]}


@pytest.mark.parametrize("q", ["12", "1", "abc", "0"])
def test_elliptic_rejects_non_prime_powers(q):
    code, out, err = run("elliptic", "--q", q)
    assert code == 2
    assert "prime power" in err and out == ""


def test_elliptic_upper_bound():
    assert run("elliptic", "--q", str(2**31 + 11))[0] == 2


# --------------------------------------------------------------------- weil


def test_weil_surd():
    code, doc, _ = run_json("weil", "--q", "7", "--pi", "surd:5,2")
    r = doc["results"]
    assert code == 0
    assert r["g"] == 2 and r["d"] == 1
    assert r["center"] == "Q(sqrt 5, sqrt -2)"
    assert set(r["invariants"].values()) == {"0/1"}


def test_weil_zeta8():
    code, doc, _ = run_json("weil", "--q", "4", "--pi", "zeta:8")
    r = doc["results"]
    assert code == 0 and r["g"] == 2
    assert set(r["invariants"].values()) == {"0/1"}
    assert r["h"] == [1, 0, 0, 0, 16]


def test_weil_sqrt_even_exponent():
    code, doc, _ = run_json("weil", "--q", "4", "--pi", "sqrt")
    r = doc["results"]
    assert code == 0
    assert (r["d"], r["g"]) == (2, 1)
    assert set(r["invariants"].values()) == {"1/2"}


def test_weil_not_weil():
    code, out, err = run("weil", "--q", "7", "--pi", "poly:1,0,0,0,1")
    assert code == 3 and "rejected" in err and out == ""


@pytest.mark.parametrize("spec", ["nonsense", "surd:x,1", "zeta:", "poly:"])
def test_weil_bad_spec(spec):
    assert run("weil", "--q", "7", "--pi", spec)[0] == 2


def test_weil_unsupported_center():
    # Q(zeta_15) has degree 8: its Weil numbers belong to fourfolds
    assert run("weil", "--q", "4", "--pi", "zeta:15")[0] == 3


# ------------------------------------------------------------------- tables


@pytest.mark.parametrize("table,count", [(2, 5), (10, 11), (11, 14), (12, 9), (13, 20)])
def test_tables(table, count):
    code, doc, _ = run_json("tables", "--table", str(table))
    r = doc["results"]
    assert code == 0
    assert r["count"] == count and r["golden_match"] is True
    assert doc["witnesses"] == []


def test_table10_ends_with_istar():
    code, doc, _ = run_json("tables", "--table", "10")
    assert doc["results"]["rows"][-1]["group"] == "Istar"


def test_table13_verified():
    code, doc, _ = run_json("tables", "--table", "13", "--verify-witnesses")
    assert code == 0
    assert doc["results"]["identity"] == "6+2+5+2+5=20"
    assert len(doc["witnesses"]) == 20
    assert all(w["checks"] for w in doc["witnesses"])


def test_table11_exclusion_and_table2_constraints():
    _, doc, _ = run_json("tables", "--table", "11")
    assert doc["results"]["excluded"] == [["Dic12", "Tstar"]]
    _, doc, _ = run_json("tables", "--table", "2")
    assert doc["results"]["p_constraint"] == {
        "Cyclic(2)": "-", "Cyclic(4)": "-", "Cyclic(6)": "-", "Dic12": 3, "Tstar": 2,
    }


def test_tables_bad_number():
    assert run("tables", "--table", "7")[0] == 2


def test_golden_mismatch_exit_code(tmp_path, monkeypatch):
    text = classify.render_golden_tables().replace("12 9 TstarSemiZ4", "12 9 Ostar")
    (tmp_path / classify.GOLDEN_TABLES).write_text(text)
    monkeypatch.setenv("WEILSURF_GOLDEN_DIR", str(tmp_path))
    code, out, err = run("tables", "--table", "12")
    assert code == 4 and "golden" in err
    assert "golden_match: False" in out
    assert run("tables", "--table", "10")[0] == 0


def test_missing_golden_file(tmp_path, monkeypatch):
    monkeypatch.setenv("WEILSURF_GOLDEN_DIR", str(tmp_path))
    code, _, err = run("tables", "--table", "2")
    assert code == 4 and "not found" in err


def test_witness_error_exit_code(monkeypatch):
    rows = list(classify.ELLIPTIC_ROWS)
    rows[4] = ("Tstar", 4, 3)
    monkeypatch.setattr(classify, "ELLIPTIC_ROWS", tuple(rows))
    code, _, err = run("tables", "--table", "2", "--verify-witnesses")
    assert code == 4 and "row 5" in err


# ------------------------------------------------------------ embed / units


def test_embed_ostar_sqrt2():
    code, doc, _ = run_json("embed", "--group", "Ostar", "--center", "Qsqrt2")
    assert code == 0
    assert doc["results"]["verdict"] == "admissible"
    assert doc["results"]["maximal"] is True


def test_embed_dic16_sqrt5_trace():
    code, doc, _ = run_json("embed", "--group", "Dic16", "--center", "Q(sqrt 5)")
    assert code == 0
    assert doc["results"]["verdict"] == "not admissible"
    assert any("order 8" in t and "larger real subfield" in t for t in doc["results"]["trace"])


@pytest.mark.parametrize("args", [("--group", "Nope", "--center", "Q"), ("--group", "Ostar", "--center", "junk"),
                                  ("--group", "GL2F3", "--center", "Q")])
def test_embed_usage_errors(args):
    assert run("embed", *args)[0] == 2


@pytest.mark.parametrize("key,count,group", [("hurwitz_D2", 24, "Tstar"), ("icosian_over_golden", 120, "Istar"),
                                             ("max_D3", 12, "Dic12")])
def test_units(key, count, group):
    code, doc, _ = run_json("units", "--order", key)
    r = doc["results"]
    assert code == 0
    assert (r["count"], r["group"], r["maximal"]) == (count, group, True)


def test_units_unknown_order():
    code, _, err = run("units", "--order", "max_D999")
    assert code == 2 and "unknown order" in err


def test_usage_without_command():
    assert run()[0] == 2


# ------------------------------------------------------------------- output


@pytest.mark.parametrize(
    "argv",
    [
        ("elliptic", "--q", "5"),
        ("weil", "--q", "9", "--pi", "zeta:12"),
        ("tables", "--table", "11"),
        ("embed", "--group", "Dic24", "--center", "Qsqrt3"),
        ("units", "--order", "max_D5"),
    ],
)
def test_json_round_trip_and_text_agree(argv):
    code, out, _ = run("--json", *argv)
    assert code == 0
    doc = json.loads(out)
    assert json.loads(dumps(doc)) == doc
    assert dumps(doc) + "\n" == out
    # the subcommand flag position gives the same document
    assert run(*argv, "--json")[1] == out
    code, text, _ = run(*argv)
    assert text.strip() == render_text(doc)
    for key, value in doc["results"].items():
        if key != "rows":
            assert f"{key}: " in text
    for row in doc["results"].get("rows", []):
        assert any(all(f"{k}=" in line for k in row) for line in text.splitlines())


def test_canonical_rationals():
    doc = document("x", {"a": Fraction(1, 2)}, {"b": (Fraction(-3, 4), 2), 5: "k"})
    assert doc["inputs"] == {"a": "1/2"}
    assert doc["results"] == {"b": ["-3/4", 2], "5": "k"}
    assert canonical(Fraction(2)) == "2/1"


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "weilsurf", "--json", "units", "--order", "max_D3"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["group"] == "Dic12"


def test_help_documents_grammar(capsys):
    with pytest.raises(SystemExit):
        build_parser().parse_args(["--help"])
    out = capsys.readouterr().out
    assert "Q(sqrt D)" in out and "(a,b / F)" in out
