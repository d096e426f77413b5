import json
import math

import numpy as np
import pytest

from skewinfo.cli import main
from skewinfo.errors import ParseError, ValidationError
from skewinfo.report import (
    CSV_COLUMNS,
    SweepRow,
    emit_csv,
    read_csv,
    run_sweep,
    table1_rows,
)
from skewinfo.scenario import BUILTIN_SCENARIOS, builtin_path, load_scenario, parse_bloch_term, parse_scenario
from skewinfo.verify import verify


def write(tmp_path, obj, name="sc.json"):
    p = tmp_path / name
    p.write_text(json.dumps(obj) if not isinstance(obj, str) else obj)
    return p


def base(**overrides):
    sc = {
        "id": "t",
        "state": {"bloch": ["0.5*cos(theta)", "0.5*sin(theta)", 0]},
        "channels": [{"preset": {"name": n, "q": 0.3}} for n in ("phase_damping", "amplitude_damping", "bit_flip")],
    }
    sc.update(overrides)
    return sc


# --- loading -----------------------------------------------------------------------


@pytest.mark.parametrize("name", BUILTIN_SCENARIOS)
def test_builtins_load(name):
    sc = load_scenario(builtin_path(name))
    assert sc.id == name
    assert load_scenario(name) == sc


def test_table1_scenario_setup():
    sc = load_scenario("table1")
    assert [c.name for c in sc.channels] == ["phase_damping", "amplitude_damping", "bit_flip"]
    assert all(c.q == 0.5 for c in sc.channels)
    assert sc.sweep.param == "theta"
    rho, _ = sc.build(theta=math.pi / 2)
    np.testing.assert_allclose(rho.rho, 0.5 * np.array([[1, -1j * math.sqrt(3) / 2], [1j * math.sqrt(3) / 2, 1]]), atol=1e-15)


@pytest.mark.parametrize("raw, expected", [
    (0.25, (0.25, "const")),
    ("0.5", (0.5, "const")),
    ("0.866*cos(theta)", (0.866, "cos")),
    (" -1e-1 * sin( theta ) ", (-0.1, "sin")),
])
def test_bloch_terms(raw, expected):
    t = parse_bloch_term(raw, "x")
    assert (t.coef, t.func) == expected


@pytest.mark.parametrize("raw", ["cos(theta)", "0.5*tan(theta)", "theta", "0.5*cos(2*theta)", True, None])
def test_bloch_terms_rejected(raw):
    with pytest.raises(ParseError):
        parse_bloch_term(raw, "x")


def test_non_cptp_kraus_rejected(tmp_path):
    bad = base(channels=[{"kraus": [[[[1, 0], [0, 0]], [[0, 0], [1, 0]]], [[[0.5, 0], [0, 0]], [[0, 0], [0, 0]]]]}])
    with pytest.raises(ValidationError):
        load_scenario(write(tmp_path, bad))


def test_bloch_too_long_rejected(tmp_path):
    with pytest.raises(ValidationError):
        load_scenario(write(tmp_path, base(state={"bloch": [2, 0, 0]})))
    with pytest.raises(ValidationError):
        load_scenario(write(tmp_path, base(state={"bloch": ["1.2*cos(theta)", 0, 0]})))


def test_dimension_mismatch_rejected(tmp_path):
    qutrit = [[[1 / 3, 0], [0, 0], [0, 0]], [[0, 0], [1 / 3, 0], [0, 0]], [[0, 0], [0, 0], [1 / 3, 0]]]
    with pytest.raises(ValidationError):
        load_scenario(write(tmp_path, base(state={"matrix": qutrit})))


def test_malformed_files(tmp_path):
    with pytest.raises(ParseError):
        load_scenario(write(tmp_path, "{not json"))
    with pytest.raises(ParseError):
        load_scenario(write(tmp_path, {"id": "x"}))
    with pytest.raises(ParseError):
        parse_scenario(base(channels=[{"preset": {"name": "depolarizing", "q": 0.1}}]))
    with pytest.raises(ParseError):
        parse_scenario(base(channels=[{"preset": {"name": "bit_flip", "q": 0.1}, "kraus": []}]))
    with pytest.raises(ParseError):
        parse_scenario(base(sweep={"param": "phi", "from": 0, "to": 1, "steps": 3}))
    with pytest.raises(ValidationError):
        parse_scenario(base(sweep={"param": "theta", "from": 0, "to": 1, "steps": 1}))


def test_explicit_matrix_state_and_unitary_channels():
    sc = parse_scenario({
        "id": "explicit",
        "state": {"matrix": [[[0.75, 0], [0, 0.25]], [[0, -0.25], [0.25, 0]]]},
        "channels": [
            {"unitary": {"matrix": [[[0, 0], [1, 0]], [[1, 0], [0, 0]]]}},
            {"unitary": {"pauli_rotation": {"axis": "y", "angle": 0.3}}},
            {"unitary": {"pauli_rotation": {"axis": "z", "angle": 0.3}}},
        ],
    })
    rows = run_sweep(sc)
    assert len(rows) == 1 and rows[0].theta is None and rows[0].q is None
    assert rows[0].lb1 is not None


def test_q_sweep_overrides_presets():
    sc = parse_scenario(base(sweep={"param": "q", "from": 0.0, "to": 0.9, "steps": 4}, theta=1.0))
    rows = run_sweep(sc)
    assert [r.q for r in rows] == pytest.approx([0.0, 0.3, 0.6, 0.9])
    assert all(r.theta == 1.0 for r in rows)


def test_mixed_unitary_and_kraus_scenario():
    sc = parse_scenario(base(channels=[
        {"preset": {"name": "amplitude_damping", "q": 0.2}},
        {"unitary": {"pauli_rotation": {"axis": "x", "angle": 0.4}}},
        {"kraus": [[[[1, 0], [0, 0]], [[0, 0], [1, 0]]]]},
    ]))
    (row,) = run_sweep(sc)
    assert row.lb3 <= row.sum + 1e-9


# --- sweeps and CSV ----------------------------------------------------------------


def test_table1_sweep_grid_contains_reference_angles():
    rows = run_sweep(load_scenario("table1"))
    thetas = [r.theta for r in rows]
    assert thetas == pytest.approx([math.pi / 6, math.pi / 4, math.pi / 3, 5 * math.pi / 12, math.pi / 2])
    row = rows[1]
    assert row.lb2 == pytest.approx(row.sum, abs=1e-5)
    assert row.lb3 == pytest.approx(row.sum, abs=1e-5)


def test_fig2_sweep_sum_constant():
    rows = run_sweep(load_scenario("fig2_unitary"))
    assert len(rows) == 100
    assert max(abs(r.sum - (1 - math.sqrt(2) / 2)) for r in rows) <= 1e-9


def test_csv_empty_and_single_row(tmp_path):
    p = tmp_path / "empty.csv"
    emit_csv([], p)
    assert p.read_bytes() == (",".join(CSV_COLUMNS) + "\n").encode()
    emit_csv([SweepRow("x", theta=0.5, sum=0.25, lb2=0.125)], p)
    lines = p.read_text().split("\n")
    assert lines == [",".join(CSV_COLUMNS), "x,0.5,,0.25,,,,0.125,,,", ""]


def test_csv_round_trip_and_row_invariants(tmp_path):
    rows = run_sweep(load_scenario("table1"))
    p = tmp_path / "t1.csv"
    emit_csv(rows, p)
    back = read_csv(p)
    assert len(back) == len(rows)
    for a, b in zip(rows, back):
        for col in CSV_COLUMNS[1:]:
            x, y = getattr(a, col), getattr(b, col)
            assert (x is None) == (y is None)
            if x is not None:
                assert float(f"{x:.12g}") == y
        for col in ("lbbar1", "lbbar2", "lb1", "lb2", "lb3"):
            assert getattr(b, col) <= b.sum + 1e-9
        assert b.thm2_rhs <= b.thm2_lhs + 1e-9


def test_csv_is_byte_reproducible(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    emit_csv(run_sweep(load_scenario("fig1_sweep")), a)
    emit_csv(run_sweep(load_scenario("fig1_sweep")), b)
    assert a.read_bytes() == b.read_bytes()
    assert b"\r" not in a.read_bytes()


# --- CLI ---------------------------------------------------------------------------


def test_cli_table1(capsys):
    assert main(["table1"]) == 0
    out = capsys.readouterr().out
    assert "0.271447" in out and "theta=pi/6" in out


def test_cli_bounds(capsys):
    assert main(["bounds", "spot_q01"]) == 0
    out = capsys.readouterr().out
    assert "lb1       0.449135" in out
    assert "dominance: ok" in out
    assert main(["bounds", "table1", "--theta", str(math.pi / 4), "--q", "0.5"]) == 0
    assert "0.271446609407" in capsys.readouterr().out


def test_cli_sweep(tmp_path, capsys):
    out = tmp_path / "fig2.csv"
    assert main(["sweep", "fig2_unitary", "--out", str(out)]) == 0
    assert len(read_csv(out)) == 100


def test_cli_exit_codes(tmp_path, capsys):
    assert main(["bounds", str(write(tmp_path, base(state={"bloch": [2, 0, 0]})))]) == 1
    assert main(["bounds", str(write(tmp_path, "{oops"))]) == 1
    assert main(["bounds", str(tmp_path / "missing.json")]) == 3
    assert main(["sweep", "table1", "--out", str(tmp_path / "no" / "dir.csv")]) == 3
    assert main(["verify", "--seed", "1", "--trials", "1", "--corrupt"]) == 2
    assert main(["verify", "--seed", "1", "--trials", "2"]) == 0


def test_verify_negative_control():
    s = verify(seed=3, trials=1, corrupt=True)
    assert s.counts["cptp_certificate"] == [0, 1]
    assert not s.ok


def test_verify_is_deterministic():
    a, b = verify(seed=9, trials=5), verify(seed=9, trials=5)
    assert a.ok
    assert a.format().encode() == b.format().encode()


def test_table1_rows_use_reference_angles():
    results = table1_rows(load_scenario("table1"))
    assert [label for label, _ in results] == ["pi/6", "pi/4", "pi/2"]
