"""System-file parsing/rendering, family generators, and the CLI driver."""

import csv
import io
import json

import pytest

from janetbasis import (
    ParseError,
    Polynomial,
    Q,
    degrevlex,
    generate,
    parse_system,
    render_system,
)
from janetbasis.cli import EXIT_CERTIFICATE, EXIT_OK, EXIT_TIMEOUT, EXIT_USAGE, main


def test_parse_basic_system():
    sysf = parse_system("vars: x y\norder: degrevlex\nx^2 - y\ny^2 - 1\n")
    assert sysf.variables == ["x", "y"]
    assert sysf.order.kind == "degrevlex"
    o = sysf.order
    x, y = Polynomial.variable(o, 0), Polynomial.variable(o, 1)
    one = Polynomial.one(o)
    assert sysf.polynomials == [x * x - y, y * y - one]


def test_parse_rational_coefficient():
    sysf = parse_system("vars: x\nx + 1/2\n")
    assert sysf.polynomials[0].terms[-1][1] == Q(1, 2)


def test_parse_defaults_and_comments():
    text = "# a comment\nvars: a b  # trailing comment\n\na*b - 2 # tail\n"
    sysf = parse_system(text)
    assert sysf.order.kind == "degrevlex"
    assert len(sysf.polynomials) == 1


def test_parse_deglex():
    sysf = parse_system("vars: x y\norder: deglex\nx*y + y\n")
    assert sysf.order.kind == "deglex"


def test_parse_unknown_variable():
    with pytest.raises(ParseError) as info:
        parse_system("vars: x\nz + 1\n")
    assert info.value.line == 2
    assert info.value.col == 1
    assert "unknown variable" in str(info.value)


def test_parse_errors():
    with pytest.raises(ParseError, match="duplicate vars"):
        parse_system("vars: x\nvars: y\nx\n")
    with pytest.raises(ParseError, match="no polynomials"):
        parse_system("vars: x\n")
    with pytest.raises(ParseError, match="missing vars"):
        parse_system("# nothing\n")
    with pytest.raises(ParseError, match="malformed exponent"):
        parse_system("vars: x\nx^-2\n")
    with pytest.raises(ParseError, match="malformed exponent"):
        parse_system("vars: x\nx^\n")
    with pytest.raises(ParseError, match="duplicate variable"):
        parse_system("vars: x x\nx\n")
    with pytest.raises(ParseError, match="zero denominator"):
        parse_system("vars: x\n1/0*x\n")
    with pytest.raises(ParseError, match="is zero"):
        parse_system("vars: x\nx - x\n")
    with pytest.raises(ParseError, match="before the vars"):
        parse_system("x + 1\nvars: x\n")
    # implicit products are rejected
    with pytest.raises(ParseError, match="expected"):
        parse_system("vars: x\n2x\n")
    with pytest.raises(ParseError) as info:
        parse_system("vars: x y\nx + + y\n")
    assert info.value.line == 2


def test_parse_error_column_points_at_token():
    with pytest.raises(ParseError) as info:
        parse_system("vars: x\nx + qq\n")
    assert (info.value.line, info.value.col) == (2, 5)


def test_render_round_trip():
    text = "vars: x y\norder: degrevlex\nx^2 - y\n3*x*y^2 + 1/2\n"
    sysf = parse_system(text)
    assert parse_system(render_system(sysf)) == sysf


def test_generate_cyclic2():
    sysf = generate("cyclic", 2)
    o = sysf.order
    x1, x2 = Polynomial.variable(o, 0), Polynomial.variable(o, 1)
    assert sysf.variables == ["x1", "x2"]
    assert sysf.polynomials == [x1 + x2, x1 * x2 - Polynomial.one(o)]


def test_generate_cyclic3():
    sysf = generate("cyclic", 3)
    o = sysf.order
    x1, x2, x3 = (Polynomial.variable(o, i) for i in range(3))
    assert sysf.polynomials == [
        x1 + x2 + x3,
        x1 * x2 + x1 * x3 + x2 * x3,
        x1 * x2 * x3 - Polynomial.one(o),
    ]


def test_generate_noon2():
    sysf = generate("noon", 2)
    o = sysf.order
    x1, x2 = Polynomial.variable(o, 0), Polynomial.variable(o, 1)
    ten = Polynomial.constant(o, 10)
    assert sysf.polynomials == [
        10 * x1 * x2 * x2 - 11 * x1 + ten,
        10 * x2 * x1 * x1 - 11 * x2 + ten,
    ]


def test_generate_katsura_conventions():
    sysf = generate("katsura", 2)
    assert sysf.variables == ["x0", "x1", "x2"]
    o = sysf.order
    x0, x1, x2 = (Polynomial.variable(o, i) for i in range(3))
    one = Polynomial.one(o)
    assert sysf.polynomials == [
        x0 * x0 + 2 * x1 * x1 + 2 * x2 * x2 - x0,
        2 * x0 * x1 + 2 * x1 * x2 - x1,
        x0 + 2 * x1 + 2 * x2 - one,
    ]


def test_generate_eco_and_reimer():
    eco = generate("eco", 3)
    o = eco.order
    x1, x2, x3 = (Polynomial.variable(o, i) for i in range(3))
    one = Polynomial.one(o)
    assert eco.polynomials == [
        x3 * (x1 + x1 * x2) - one,
        x3 * x2 - 2 * one,
        x1 + x2 + one,
    ]
    reimer = generate("reimer", 2)
    o = reimer.order
    y1, y2 = Polynomial.variable(o, 0), Polynomial.variable(o, 1)
    one = Polynomial.one(o)
    assert reimer.polynomials == [
        2 * y1 * y1 - 2 * y2 * y2 - one,
        2 * y1 * y1 * y1 - 2 * y2 * y2 * y2 - one,
    ]


def test_generate_validation():
    with pytest.raises(ValueError):
        generate("mystery", 4)
    with pytest.raises(ValueError):
        generate("cyclic", 1)


def test_generated_files_round_trip():
    for family in ("cyclic", "katsura", "eco", "noon", "reimer"):
        sysf = generate(family, 3)
        assert parse_system(render_system(sysf)) == sysf


def test_cli_gen_and_solve(tmp_path, capsys):
    out = tmp_path / "sys.txt"
    assert main(["gen", "cyclic", "3", "-o", str(out)]) == EXIT_OK
    text1 = out.read_text()
    assert main(["gen", "cyclic", "3"]) == EXIT_OK
    assert capsys.readouterr().out == text1  # deterministic bytes

    assert main(["solve", str(out), "--strategy", "II-low", "--verify"]) == EXIT_OK
    captured = capsys.readouterr()
    basis_lines = [l for l in captured.out.splitlines() if l.strip()]
    assert len(basis_lines) == 4  # cyclic-3 Janet basis
    assert "strategy=II-low" in captured.err


def test_cli_solve_all_strategies_csv(tmp_path, capsys):
    path = tmp_path / "sys.txt"
    path.write_text("vars: x y\nx^2 - y\ny^2 - 1\n")
    assert main(["solve", str(path), "--strategy", "all", "--output", "both",
                 "--stats", "csv"]) == EXIT_OK
    captured = capsys.readouterr()
    janet, gb = captured.out.split("\n\n")
    assert len(janet.splitlines()) == 3
    assert len([l for l in gb.splitlines() if l]) == 2
    rows = list(csv.DictReader(io.StringIO(captured.err)))
    assert [r["strategy"] for r in rows] == ["baseline", "I", "II-high", "II-low"]
    assert all(r["status"] == "ok" for r in rows)
    assert all(int(r["basis_size"]) == 3 for r in rows)


def test_cli_solve_cyclic4_all_verified(tmp_path, capsys):
    path = tmp_path / "cyclic4.txt"
    assert main(["gen", "cyclic", "4", "-o", str(path)]) == EXIT_OK
    assert main(["solve", str(path), "--strategy", "all", "--output", "groebner",
                 "--verify", "--stats", "csv"]) == EXIT_OK
    captured = capsys.readouterr()
    gb_lines = [l for l in captured.out.splitlines() if l.strip()]
    assert len(gb_lines) == 7  # reduced GB of cyclic-4
    rows = list(csv.DictReader(io.StringIO(captured.err)))
    assert len(rows) == 4 and all(r["status"] == "ok" for r in rows)
    assert len({r["basis_size"] for r in rows}) == 1


def test_cli_stats_json(tmp_path, capsys):
    path = tmp_path / "sys.txt"
    path.write_text("vars: x\nx^2\n")
    assert main(["solve", str(path), "--stats", "json"]) == EXIT_OK
    rows = json.loads(capsys.readouterr().err)
    assert rows[0]["displacements"] == 0
    assert set(rows[0]) >= {"prolongations_enqueued", "wall_time", "max_q_size"}


def test_cli_order_override(tmp_path, capsys):
    path = tmp_path / "sys.txt"
    path.write_text("vars: x y\nx^2 - y\ny^2 - 1\n")
    assert main(["solve", str(path), "--order", "deglex", "--verify"]) == EXIT_OK
    capsys.readouterr()


def test_cli_usage_and_parse_errors(tmp_path, capsys):
    assert main(["solve", str(tmp_path / "missing.txt")]) == EXIT_USAGE
    assert main(["bogus"]) == EXIT_USAGE
    assert main(["gen", "cyclic", "1"]) == EXIT_USAGE
    bad = tmp_path / "bad.txt"
    bad.write_text("vars: x\nz + 1\n")
    assert main(["solve", str(bad)]) == EXIT_USAGE
    err = capsys.readouterr().err
    assert "line 2" in err


def test_cli_timeout(tmp_path, capsys):
    path = tmp_path / "sys.txt"
    path.write_text(render_system(generate("cyclic", 5)))
    assert main(["solve", str(path), "--timeout", "0"]) == EXIT_TIMEOUT
    captured = capsys.readouterr()
    assert "timed out" in captured.err
    assert "status=timeout" in captured.err


def test_cli_bench(tmp_path, capsys):
    spec = tmp_path / "bench.txt"
    sysfile = tmp_path / "noon2.txt"
    sysfile.write_text(render_system(generate("noon", 2)))
    spec.write_text(f"# demo jobs\ncyclic:3 baseline,II-high\n{sysfile} all\n")
    assert main(["bench", str(spec)]) == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert len(rows) == 6
    assert rows[0]["system"] == "cyclic:3"
    assert {r["status"] for r in rows} == {"ok"}
    assert all(r["gb_size"] for r in rows)


def test_cli_bench_parallel(tmp_path, capsys):
    spec = tmp_path / "bench.txt"
    spec.write_text("cyclic:3\ncyclic:4 I\n")
    assert main(["bench", str(spec), "--jobs", "2"]) == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert len(rows) == 5
    assert {r["status"] for r in rows} == {"ok"}


def test_cli_bench_bad_spec(tmp_path, capsys):
    spec = tmp_path / "bench.txt"
    spec.write_text("cyclic:3 warp-speed\n")
    assert main(["bench", str(spec)]) == EXIT_USAGE
