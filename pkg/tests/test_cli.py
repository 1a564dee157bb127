import itertools
import os
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from endotype import cli
from endotype.bw_monoid import Endotype
from endotype.cli import ParseError, Report, emit, main, parse_query, parse_report, run
from endotype.scalars import G

from conftest import gaussian

EXAMPLE3 = "algebra=gl(1|2) borel=edd form=unitary(1,i,i) weight=1+1i, 3/2, -5/2"


def test_parse_worked_query():
    q = parse_query(EXAMPLE3)
    assert (q.family, q.m, q.n, q.borel) == ("gl", 1, 2, "edd")
    assert q.weight == (G(1, 1), G.parse("3/2"), G.parse("-5/2"))
    assert q.route == "auto"


def test_parse_q2():
    q = parse_query("algebra=q(2) form=split weight=1,2")
    assert (q.family, q.m) == ("q", 2)
    assert q.weight == (G(1), G(2))


def test_parse_reductive_and_sl():
    assert parse_query("algebra=gl(3) form=u(3,0|0,0) weight=1,0,0").family == "reductive_gl"
    q = parse_query("algebra=sl(3) form=u(3,0|0,0) weight=1,0,0")
    assert (q.family, q.m, q.n) == ("sl", 3, 0)


def test_parse_rejects_zero_size():
    with pytest.raises(ParseError, match="unsupported size"):
        parse_query("algebra=gl(0|0)")


@pytest.mark.parametrize("text, culprit", [
    ("algebra=gl(1|1) form=split weight=1,2x", "2x"),
    ("algebra=gl(1|1) borel=eed form=split weight=1,2", "eed"),
    ("algebra=gl(1|1) form=split weight=1", "1"),
    ("algebra=gl(1|1) form=u(1,1|0,0) weight=1,2", "u(1"),
    ("algebra=osp(1|2) form=split weight=1,2", "osp"),
    ("stray algebra=gl(1|1) form=split weight=1,2", "stray"),
    ("algebra=gl(1|1) form=split weight=1,2 route=fast", "fast"),
])
def test_position_annotated_errors(text, culprit):
    column = text.rindex(culprit) + 1
    with pytest.raises(ParseError) as info:
        parse_query(text)
    assert info.value.position + 1 == column
    assert "column %d" % column in str(info.value)
    assert info.value.pointer().splitlines()[1].index("^") == column - 1


@pytest.mark.parametrize("text", [
    "algebra=gl(1|1) algebra=gl(1|1) form=split weight=1,2",
    "algebra=gl(1|1) weight=1,2",
    "form=split weight=1,2",
    "algebra=gl(1|1) form=unitary(1,2) weight=1,2",
    "algebra=gl(1|1) form=hyperbolic(1,0|0,0) weight=1,2",
    "algebra=q(2|1) form=split weight=1,2",
    "",
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_query(text)


@pytest.mark.parametrize("token", ["1", "-3", "+2/5", "1+1i", "-1/2-3/4i", "0+1i", "7/3+0i"])
def test_weight_grammar_accepts(token):
    q = parse_query("algebra=gl(1|1) form=split weight=%s, 1" % token)
    assert q.weight[0] == G.parse(token)


@pytest.mark.parametrize("token", ["i", "1.5", "1/0", "1+i", "2i", "--1"])
def test_weight_grammar_rejects(token):
    with pytest.raises(ParseError):
        parse_query("algebra=gl(1|1) form=split weight=%s, 1" % token)


def test_gl11_split_report():
    rep = run(parse_query("algebra=gl(1|1) form=split weight=5,7"))
    assert rep.endotype == "0R"
    assert rep.summary == "# endotype=0R; restriction stays irreducible? no (F(W)=V+V)"


def test_worked_query_report():
    rep = run(parse_query(EXAMPLE3))
    assert rep.endotype == "4R"
    assert rep.r == "2"
    assert G.parse(rep.c_lambda) == G.parse("-29/4")


def test_q2_report():
    assert run(parse_query("algebra=q(2) form=split weight=1,2")).endotype == "6R"


_labels = st.sampled_from([str(e) for e in Endotype])
_weights = st.lists(gaussian, min_size=1, max_size=4).map(lambda ws: ", ".join(map(str, ws)))


@given(_labels, _weights, st.integers(0, 6), st.one_of(st.just("none"), gaussian.map(str)))
def test_report_round_trip(label, lam, r, c):
    rep = Report(label, "R", "V+V", lam, str(r), c, "# endotype=%s; x" % label)
    assert parse_report(emit(rep)) == rep


def test_emit_key_order():
    rep = run(parse_query("algebra=gl(1|1) form=split weight=5,7"))
    keys = [ln.split(":")[0] for ln in emit(rep).splitlines()[:6]]
    assert keys == list(cli.REPORT_KEYS)
    assert parse_report(emit(rep)) == rep


def test_parse_report_rejects_garbage():
    with pytest.raises(ParseError):
        parse_report("endotype: 0R\n")
    with pytest.raises(ParseError):
        parse_report("what is this\n")


def test_exit_codes(capsys):
    assert main(["algebra=gl(1|1)", "form=split", "weight=5,7"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("endotype: 0R\n")
    assert main(["algebra=gl(0|0)"]) == 1
    assert "unsupported size" in capsys.readouterr().err
    code = main(["algebra=gl(1|2)", "borel=edd", "form=hyperbolic(1,0|1,1)",
                 "weight=1,0,0", "route=cascade"])
    assert code == 2
    assert "precondition" in capsys.readouterr().err
    assert main([]) == 1


def test_exit_code_for_invariant_violation(monkeypatch, capsys):
    def wrong(model, tau, b, lam):
        return Endotype.R7, None, 0, None, []
    monkeypatch.setattr(cli, "_cascade", wrong)
    assert main(["--verify", "algebra=gl(1|1)", "form=split", "weight=5,7"]) == 3
    assert "internal error" in capsys.readouterr().err


def test_negative_weights_are_not_options(capsys):
    assert main(["algebra=gl(1|1)", "form=split", "weight=-5/2,", "-7"]) == 0
    assert "lambdaB: " in capsys.readouterr().out


def test_verify_agrees():
    queries = [
        "algebra=gl(1|1) form=u(1,0|1,0) weight=1/2+1i, -1/2+2i",
        "algebra=gl(1|2) borel=edd form=u(1,0|2,0) weight=1+1i, 3/2+1/3i, -5/2+1/3i",
        "algebra=sl(4) form=u(4,0|0,0) weight=1,1,0,0",
        "algebra=sl(2) form=u(2,0|0,0) weight=1,0 route=cascade",
    ]
    for text in queries:
        plain = run(parse_query(text))
        assert run(parse_query(text), verify=True) == plain


def test_verbose_trace(capsys):
    main(["--verbose", EXAMPLE3])
    err = capsys.readouterr().err
    assert "trace:" in err


def _su4_rows():
    for lam in itertools.product(range(5), repeat=3):
        if list(lam) == sorted(lam, reverse=True) and sum(lam) <= 4:
            yield list(lam) + [0]


def _su4_rule(lam):
    if lam != lam[::-1] and any(lam[i] - lam[i + 1] != lam[2 - i] - lam[3 - i]
                                for i in range(3)):
        return "0C"
    return "4R" if (2 * (lam[1] - lam[2])) % 2 else "0R"


def test_batch_rule_table(tmp_path, capsys):
    rows = list(_su4_rows())
    path = tmp_path / "su4.txt"
    lines = ["# su(4) rule table"]
    lines += ["algebra=sl(4) form=u(4,0|0,0) weight=%s" % ",".join(map(str, lam))
              for lam in rows]
    path.write_text("\n".join(lines) + "\n")
    assert main(["--batch", str(path), "--jobs", "4"]) == 0
    blocks = capsys.readouterr().out.strip().split("\n\n")
    assert len(blocks) == len(rows)
    for lam, block in zip(rows, blocks):
        head, body = block.split("\n", 1)
        assert head.endswith("weight=%s" % ",".join(map(str, lam)))
        diffs = [lam[i] - lam[i + 1] for i in range(3)]
        if diffs != diffs[::-1]:
            want = "0C"
        else:
            want = "4R" if (2 * diffs[1]) % 2 else "0R"
        assert parse_report(body).endotype == want


def test_batch_mixed_exit_code(tmp_path, capsys):
    path = tmp_path / "mixed.txt"
    path.write_text("algebra=gl(1|1) form=split weight=5,7\nalgebra=gl(0|0)\n")
    assert main(["--batch", str(path)]) == 1
    out = capsys.readouterr().out
    assert out.index("query: algebra=gl(1|1)") < out.index("query: algebra=gl(0|0)")


def test_console_entry_point():
    env = dict(os.environ, ENDOTYPE_SEED="7")
    proc = subprocess.run([sys.executable, "-m", "endotype", "algebra=q(1)", "form=split",
                           "weight=-1"], capture_output=True, text=True, env=env)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "endotype: 1R"
