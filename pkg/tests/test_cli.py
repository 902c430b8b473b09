"""The script language: parsing, running, JSON output and exit codes."""
import json
import subprocess
import sys
from pathlib import Path

import pytest

from hasse_jets.cli import ScriptError, main, parse, render_report, run

GOLDEN = Path(__file__).parent / "golden"

HEADER = "system HSD(e=1) cap 2\nfield Q = Q\noperators zero\n"


def _run(src):
    reports, code = run(parse(src))
    return reports, code


def test_empty_script():
    sess = parse("")
    assert sess.commands == []
    assert run(sess) == ([], 0)


def test_comments_and_blank_lines():
    assert parse("# nothing here\n\n   \n").commands == []


def test_prolong_cusp():
    reports, code = _run(HEADER + "variety X in A^2 vars x,y : y^2 - x^3\nprolong X 1\n")
    assert code == 0
    assert reports[0]["gens"] == ["y^2 - x^3", "2*y*x1_b - 3*x^2*x1_a"]


def test_check_iterativity():
    reports, code = _run("system HSD(e=2) cap 3\ncheck iterativity\n")
    assert reports == [{"line": 2, "command": "check iterativity", "verdict": "ok"}]
    assert code == 0


def test_dangling_equation_is_a_syntax_error():
    with pytest.raises(ScriptError) as err:
        parse(HEADER + "equation Z on A^1 : D1(x) = ")
    assert (err.value.line, err.value.col) == (4, 28)


@pytest.mark.parametrize(
    "src,line,col",
    [
        ("field K = Fp(4)", 1, 11),
        ("frobnicate", 1, 1),
        ("system HSD(e=1) cap 2\nfield Q = Q\noperators zero\nseparability W", 4, 14),
        ("system HSD(e=1) cap 2\nfield Q = Q\noperators zero\nvariety X in A^2 vars x,y : y^2 - ", 4, 34),
        ("system HSD(e=1) cap 2\nequation Z on A^1 : D1(x) = x", 2, 1),
    ],
)
def test_error_positions(src, line, col):
    with pytest.raises(ScriptError) as err:
        parse(src)
    assert (err.value.line, err.value.col) == (line, col)


def test_negative_verdict_exit_code():
    src = HEADER + "variety X in A^2 vars x,y : y^2 - x^3\ndominance X 2 1\n"
    reports, code = _run(src)
    assert code == 1 and reports[0]["kind"] == "not-dominant"


def test_command_error_is_reported_with_index():
    src = HEADER + "variety X in A^2 vars x,y : y - x^2\npoint p = (1, 2) on X\njet X p 1\n"
    reports, code = _run(src)
    assert code == 2 and reports[0]["index"] == 0 and "PointError" in reports[0]["error"]


def test_constants_and_full_tower_session():
    src = (
        "system HSD(e=1) cap 2\nfield Qt = Q(t)\noperators divided_power on t\n"
        "equation C on A^1 : D1(x) = 0\ntower F = full on A^1\npoint a = (1) on C\n"
        "hsmember C a (t) 1 rcap 1\nhsmember C a (3) 1 rcap 1\ndetermine F C at a mcap 1 rcap 1\n"
    )
    reports, code = _run(src)
    assert reports[0]["member"] is False and reports[1]["member"] is True
    assert reports[2]["verdict"] == "distinguished" and (reports[2]["m"], reports[2]["r"]) == (1, 1)
    assert code == 1


def test_nondom_script_separability():
    reports, _ = run(parse((GOLDEN / "nondom.hs").read_text()))
    sep = next(r for r in reports if r["command"].startswith("separability"))
    assert (sep["verdict"], sep["witness"]) == ("inseparable", "level 1")


def test_render_report_is_stable():
    reports, _ = run(parse((GOLDEN / "nondom.hs").read_text()))
    assert render_report(reports) == (GOLDEN / "nondom.json").read_text()


def test_main_golden_match(capsys):
    assert main([str(GOLDEN / "nondom.hs"), "--golden", str(GOLDEN / "nondom.json")]) == 0


def test_main_golden_mismatch(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("[]\n")
    assert main([str(GOLDEN / "nondom.hs"), "--golden", str(bad)]) == 2


def test_main_line_output(tmp_path, capsys):
    script = tmp_path / "s.hs"
    script.write_text("system HSD(e=1) cap 2\ncheck iterativity\n")
    assert main([str(script)]) == 0
    assert json.loads(capsys.readouterr().out) == {"line": 2, "command": "check iterativity", "verdict": "ok"}


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "hasse_jets", "-", "--json"],
        input="system Trivial cap 2\ncheck iterativity\n",
        capture_output=True,
        text=True,
    )
    assert out.returncode == 0
    assert json.loads(out.stdout)[0]["verdict"] == "ok"
