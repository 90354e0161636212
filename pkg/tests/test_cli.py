import json

import pytest
from hypothesis import given, settings, strategies as st

from transversal.cli import SessionError, main, parse_session, run_session, selftest

EX3 = """
ring B = QQ[z,t] / (z*t);   # the node
ideal I = (z);
ideal J = (t);
run transversality I J;
"""


def strip_times(doc):
    if isinstance(doc, dict):
        return {k: strip_times(v) for k, v in doc.items() if k != "wall_time"}
    if isinstance(doc, list):
        return [strip_times(v) for v in doc]
    return doc


def test_parse_examples():
    s = parse_session("ring A = QQ[x,y]; ideal I = (x^2, x*y, y^2); run relation_type I;")
    assert len(s.commands) == 1
    s = parse_session("ring B = QQ[z,t] / (z*t);")
    assert s.statements[0].relations == ("z*t",)


def test_undefined_name_has_location():
    text = "ring A = QQ[x,y];\nideal I = (x);\nrun transversality I J pmax=3 qmax=3 dmax=8;"
    with pytest.raises(SessionError) as e:
        parse_session(text)
    assert e.value.kind == "undefined name"
    assert (e.value.line, e.value.col) == (3, 22)


def test_syntax_errors():
    for text, line in [("ring A = QQ[x];\nideal I = (x +* 1);", 2), ("ring A = QQ[x]", 1),
                       ("ring A = QQ[x];\nrun frobnicate;", 2), ("ideal I = (x);", 1),
                       ("ring A = QQ[x];\nmodule M = submodule(A^2; [x]);", 2)]:
        with pytest.raises(SessionError) as e:
            parse_session(text)
        assert e.value.line == line


def test_ring_mismatch():
    text = "ring A = QQ[x];\nideal I = (x);\nring C = QQ[y];\nideal J = (y);\nrun intersect I J;"
    with pytest.raises(SessionError) as e:
        parse_session(text)
    assert e.value.kind == "ring mismatch" and e.value.line == 5


def test_node_report():
    reports, code = run_session(parse_session(EX3))
    r = reports[0]["result"]
    assert code == 0
    assert r["agree"] is True
    assert r["condition_i"]["status"] == "FAILS"
    assert r["condition_ii"]["status"] == "FAILS"
    assert reports[0]["engine_version"] and len(reports[0]["inputs_fingerprint"]) == 64


def test_artin_rees_command():
    text = "ring A = QQ[x]; ideal m = (x); ideal N = (x^2); run artin_rees m A N nmax=6;"
    reports, _ = run_session(parse_session(text))
    assert reports[0]["result"]["s"] == 2


def test_empty_script():
    assert run_session(parse_session("# nothing\n")) == ([], 0)


def test_other_commands():
    text = """
    ring A = QQ[x,y];
    ideal I = (x, y);
    ideal K = (x^2, x*y);
    module F = cokernel(A^2; [x, y]);
    run rees_ideal I;
    run assoc_graded I;
    run hilbert K dmax=3;
    run hilbert F dmax=2;
    run groebner K order=lex;
    run intersect I K;
    run tor I K dmax=4;
    run sigma_iso I K nmax=2 dmax=4;
    run pi_iso I K pmax=1 qmax=1 dmax=4;
    run rt_bound I K;
    run intersection_condition I K pmax=1 qmax=1;
    run sample_maximal_rt A points=[(0,0),(1/2,-3)];
    run flatness K I;
    run tor2_clause I K pmax=1 qmax=1 dmax=4;
    """
    reports, code = run_session(parse_session(text))
    assert [r["status"] for r in reports].count("error") == 0, [r.get("error") for r in reports]
    by = {r["command"].split()[1] + str(i): r["result"] for i, r in enumerate(reports)}
    assert by["hilbert2"]["dims"] == [1, 2, 1, 1]
    assert by["hilbert3"]["dims"] == [2, 3, 4]
    assert by["sample_maximal_rt11"]["max"] == 1


def test_type_errors_are_reported_with_index():
    text = "ring A = QQ[x]; ideal I = (x + 1); run sigma_iso I I;"
    reports, code = run_session(parse_session(text))
    assert code == 1 and reports[0]["status"] == "error"
    assert reports[0]["error"].startswith("command 1")


def test_main_exit_codes(tmp_path, capsys):
    good = tmp_path / "ex3.tv"
    good.write_text(EX3)
    assert main(["run", str(good), "--json", "--pmax", "2", "--qmax", "2", "--dmax", "8"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["schema"] == 1 and doc["reports"][0]["result"]["agree"]
    bad = tmp_path / "bad.tv"
    bad.write_text("ring A = QQ[x];\nrun hilbert J;\n")
    assert main(["run", str(bad)]) == 1
    assert "2:13" in capsys.readouterr().err


def test_run_is_deterministic(tmp_path, capsys):
    f = tmp_path / "s.tv"
    f.write_text(EX3 + "run relation_type I;\nrun tor I J index=2;\n")
    outs = []
    for _ in range(2):
        main(["run", str(f), "--json"])
        outs.append(strip_times(json.loads(capsys.readouterr().out)))
    assert outs[0] == outs[1]


def test_selftest_passes():
    results, code = selftest()
    assert code == 0 and all(r["passed"] for r in results)


# round trip ------------------------------------------------------------

names = st.sampled_from(["I", "J", "K"])
mono = st.sampled_from(["x", "y", "x^2", "x*y", "3*y^2", "1/2*x", "x - y", "x^2 + 2*x*y"])


@st.composite
def scripts(draw):
    lines = ["ring A = QQ[x,y]" + (" / (x*y)" if draw(st.booleans()) else "") + ";"]
    declared = []
    for name in draw(st.lists(names, min_size=1, max_size=3, unique=True)):
        gens = draw(st.lists(mono, min_size=1, max_size=3))
        lines.append(f"ideal {name} = ({', '.join(gens)});")
        declared.append(name)
    if draw(st.booleans()):
        a, b = draw(mono), draw(mono)
        lines.append(f"module M = submodule(A^2; [{a}, {b}], [{b}, 0]);  # comment")
    for _ in range(draw(st.integers(0, 3))):
        args = draw(st.lists(st.sampled_from(declared), min_size=1, max_size=2))
        opts = draw(st.dictionaries(st.sampled_from(["pmax", "dmax"]), st.integers(1, 9), max_size=2))
        lines.append("run hilbert " + " ".join(args + [f"{k}={v}" for k, v in opts.items()]) + ";")
    return "\n".join(lines)


@given(scripts())
@settings(max_examples=40, deadline=None)
def test_print_parse_round_trip(text):
    s = parse_session(text)
    again = parse_session(s.text())
    assert again.statements == s.statements
    assert again.text() == s.text()
