"""End-to-end command-line coverage through run(argv)."""

import re

import pytest

from pressing_lab.cli import run


EDGE_BW = "n 2\nc BW\ne 1 2\n"
TRIANGLE = "n 3\nc BBB\ne 1 2\ne 1 3\ne 2 3\n"
EDGE_WW = "n 2\nc WW\ne 1 2\n"


@pytest.fixture
def bcg(tmp_path):
    def write(text, name="g.bcg"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return write


def out_lines(capsys):
    return capsys.readouterr().out.splitlines()


# --- verify ---------------------------------------------------------------------


def test_verify_all_five_true(bcg, capsys):
    code = run(["verify", bcg(EDGE_BW), "1,2", "--method", "all"])
    assert out_lines(capsys) == ["true"] * 5
    assert code == 0


def test_verify_default_is_simulation(bcg, capsys):
    code = run(["verify", bcg(EDGE_BW), "2,1"])
    assert out_lines(capsys) == ["false witness=1"]
    assert code == 1


def test_verify_each_method(bcg, capsys):
    f = bcg(EDGE_BW)
    for m in ("sim", "minors", "matchings", "cholesky", "psi"):
        assert run(["verify", f, "1,2", "--method", m]) == 0
        assert out_lines(capsys) == ["true"]


def test_verify_psi_skips_when_inapplicable(bcg, capsys):
    code = run(["verify", bcg("n 2\nc WW\n"), "", "--method", "all"])
    lines = out_lines(capsys)
    assert len(lines) == 5
    assert lines[:4] == ["true"] * 4
    assert lines[4].startswith("skip ")
    assert code == 0


def test_verify_psi_error_goes_to_stderr(bcg, capsys):
    code = run(["verify", bcg("n 2\nc WW\n"), "", "--method", "psi"])
    captured = capsys.readouterr()
    assert code == 2
    assert captured.out == ""
    assert captured.err.startswith("error:")


def test_verify_bad_sequence_is_usage_error(bcg, capsys):
    assert run(["verify", bcg(EDGE_BW), "1,9"]) == 2
    assert capsys.readouterr().err.startswith("error:")


# --- basic verbs -----------------------------------------------------------------


def test_press_prints_bcg(bcg, capsys):
    assert run(["press", bcg(EDGE_BW), "1"]) == 0
    assert capsys.readouterr().out == "n 2\nc WB\n"
    assert run(["press", bcg(EDGE_BW), "2"]) == 2


def test_rank_reachable(bcg, capsys):
    assert run(["rank", bcg(EDGE_BW)]) == 0
    assert out_lines(capsys) == ["2"]
    assert run(["rank", bcg(TRIANGLE)]) == 0
    assert out_lines(capsys) == ["1"]


def test_rank_unreachable(bcg, capsys):
    assert run(["rank", bcg(EDGE_WW)]) == 1
    assert out_lines(capsys) == ["2", "unreachable"]


def test_cholesky_success(bcg, capsys):
    assert run(["cholesky", bcg(EDGE_BW)]) == 0
    assert capsys.readouterr().out == "2 2\n10\n11\n"


def test_cholesky_stall(bcg, capsys):
    assert run(["cholesky", bcg(EDGE_WW)]) == 1
    assert out_lines(capsys) == ["no decomposition"]


def test_minors(bcg, capsys):
    assert run(["minors", bcg(EDGE_BW)]) == 0
    assert out_lines(capsys) == ["11"]
    assert run(["minors", bcg(TRIANGLE)]) == 0
    assert out_lines(capsys) == ["100"]


def test_enumerate(bcg, capsys):
    assert run(["enumerate", bcg(TRIANGLE)]) == 0
    assert out_lines(capsys) == ["1", "2", "3"]
    assert run(["enumerate", bcg(TRIANGLE), "--limit", "2"]) == 0
    assert out_lines(capsys) == ["1", "2"]
    assert run(["enumerate", bcg(TRIANGLE), "--count-only"]) == 0
    assert out_lines(capsys) == ["3"]
    assert run(["enumerate", bcg(EDGE_WW)]) == 1
    assert out_lines(capsys) == []


def test_enumerate_empty_sequence_prints_blank(bcg, capsys):
    assert run(["enumerate", bcg("n 1\nc W\n")]) == 0
    assert capsys.readouterr().out == "\n"


def test_count(bcg, capsys):
    assert run(["count", bcg(TRIANGLE)]) == 0
    assert out_lines(capsys) == ["3"]
    assert run(["count", bcg(EDGE_WW)]) == 1
    assert out_lines(capsys) == ["0"]


def test_unique_coloring(bcg, capsys):
    f = bcg(EDGE_WW)  # colors in the file must not matter
    assert run(["unique-coloring", f, "1,2"]) == 0
    assert out_lines(capsys) == ["BW"]
    assert run(["unique-coloring", f, "2,1"]) == 0
    assert out_lines(capsys) == ["WB"]
    assert run(["unique-coloring", f, "1"]) == 2


def test_average(bcg, capsys):
    assert run(["average", bcg(TRIANGLE)]) == 0
    assert out_lines(capsys) == ["3/4"]
    assert run(["average", bcg(EDGE_BW)]) == 0
    assert out_lines(capsys) == ["1/2"]


# --- explorer verbs ---------------------------------------------------------------


def test_pi_export(bcg, capsys):
    assert run(["pi", bcg(TRIANGLE)]) == 0
    assert capsys.readouterr().out == "0: 1\n1: 2\n2: 3\n0 1\n0 2\n1 2\n"
    assert run(["pi", bcg(TRIANGLE), "--max-edit", "0"]) == 0
    assert capsys.readouterr().out == "0: 1\n1: 2\n2: 3\n"


def test_pi_check_connected(bcg, capsys):
    assert run(["pi", bcg(TRIANGLE), "--check-connected"]) == 0
    assert out_lines(capsys) == ["true"]
    assert run(["pi", bcg(TRIANGLE), "--max-edit", "0", "--check-connected"]) == 1
    assert out_lines(capsys) == ["false"]


def test_walk(bcg, capsys):
    assert run(["walk", bcg(TRIANGLE), "--steps", "0"]) == 0
    assert out_lines(capsys) == ["1"]
    assert run(["walk", bcg(TRIANGLE), "--steps", "25", "--seed", "5"]) == 0
    first = out_lines(capsys)
    assert run(["walk", bcg(TRIANGLE), "--steps", "25", "--seed", "5"]) == 0
    assert out_lines(capsys) == first
    assert run(["walk", bcg(EDGE_WW)]) == 2


def test_uniquely_pressable(capsys):
    assert run(["uniquely-pressable", "--n", "1"]) == 0
    assert capsys.readouterr().out == "# 1 graphs\nn 1\nc B\n"
    assert run(["uniquely-pressable", "--n", "2", "--count-only"]) == 0
    lines = out_lines(capsys)
    assert len(lines) == 1 and lines[0].isdigit()
    assert run(["uniquely-pressable", "--n", "9"]) == 2


# --- bench ------------------------------------------------------------------------


def test_bench_small(capsys):
    assert run(["bench", "--n", "64", "--seed", "1"]) == 0
    lines = out_lines(capsys)
    assert lines[0] == "n 64 seed 1"
    assert re.match(r"rank: value \d+, \d+ ns, \d", lines[1])
    assert re.match(r"lu: success (true|false), \d+ ns, \d", lines[2])
    assert re.match(r"cholesky: success true, \d+ ns, \d", lines[3])
    assert re.match(r"psi: \d+ ns, \d", lines[4])


def test_bench_deterministic_values(capsys):
    def fields():
        run(["bench", "--n", "48", "--seed", "9"])
        vals = []
        for ln in out_lines(capsys):
            m = re.match(r"(rank: value \d+|lu: success \w+|cholesky: success \w+)", ln)
            if m:
                vals.append(m.group(1))
        return vals

    assert fields() == fields()
    assert run(["bench", "--n", str((1 << 14) + 1)]) == 2


# --- plumbing ---------------------------------------------------------------------


def test_malformed_bcg_diagnostic(bcg, capsys):
    assert run(["rank", bcg("n 2\nc BW\ne 1 5\n")]) == 2
    err = capsys.readouterr().err
    assert err.startswith("error:") and "line 3" in err


def test_missing_file(capsys):
    assert run(["rank", "/nonexistent/g.bcg"]) == 2
    assert capsys.readouterr().err.startswith("error:")


def test_usage_errors(capsys):
    assert run([]) == 2
    assert run(["not-a-verb"]) == 2
    assert run(["press"]) == 2
    capsys.readouterr()


def test_help_exits_zero(capsys):
    assert run(["--help"]) == 0
    assert "press" in capsys.readouterr().out
