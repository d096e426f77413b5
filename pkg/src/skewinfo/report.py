"""Sweeps over a scenario, CSV export and the text reports printed by the CLI."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, fields
from typing import Optional

import numpy as np

from .bounds import BoundReport, PermSearchPolicy, full_report, unitary_bounds
from .errors import SkewInfoError
from .quantum import UnitaryChannel, as_kraus
from .scenario import Scenario

CSV_COLUMNS = (
    "scenario_id", "theta", "q", "sum", "lbbar1", "lbbar2",
    "lb1", "lb2", "lb3", "thm2_lhs", "thm2_rhs",
)
BOUND_COLUMNS = CSV_COLUMNS[3:]

# Reference comparison angles for q = 0.5.
TABLE1_THETAS = (("pi/6", math.pi / 6), ("pi/4", math.pi / 4), ("pi/2", math.pi / 2))


@dataclass
class SweepRow:
    scenario_id: str
    theta: Optional[float] = None
    q: Optional[float] = None
    sum: Optional[float] = None
    lbbar1: Optional[float] = None
    lbbar2: Optional[float] = None
    lb1: Optional[float] = None
    lb2: Optional[float] = None
    lb3: Optional[float] = None
    thm2_lhs: Optional[float] = None
    thm2_rhs: Optional[float] = None


def evaluate_point(sc: Scenario, theta=None, q=None, search: Optional[PermSearchPolicy] = None) -> BoundReport:
    rho, channels = sc.build(theta=theta, q=q)
    if all(isinstance(c, UnitaryChannel) for c in channels):
        return unitary_bounds(rho, channels)
    kraus = [as_kraus(c) if isinstance(c, UnitaryChannel) else c for c in channels]
    return full_report(rho, kraus, search)


def _row(sc: Scenario, theta, q, rep: BoundReport) -> SweepRow:
    row = SweepRow(sc.id, theta=theta if sc.state.uses_theta else None, q=q)
    for name in BOUND_COLUMNS:
        setattr(row, name, getattr(rep, name))
    return row


def sweep_points(sc: Scenario) -> list[tuple[Optional[float], Optional[float]]]:
    theta, q = sc.theta, sc.default_q
    if sc.sweep is None:
        return [(theta, q)]
    if sc.sweep.param == "theta":
        return [(float(t), q) for t in sc.sweep.grid()]
    return [(theta, float(v)) for v in sc.sweep.grid()]


def run_sweep(sc: Scenario, search: Optional[PermSearchPolicy] = None) -> list[SweepRow]:
    """One row per sweep point (a single row when the scenario has no sweep)."""
    rows = []
    for k, (theta, q) in enumerate(sweep_points(sc)):
        try:
            rep = evaluate_point(sc, theta, q, search)
        except SkewInfoError as exc:
            raise type(exc)(f"sweep point {k} (theta={theta}, q={q}): {exc}") from exc
        rows.append(_row(sc, theta, q, rep))
    return rows


def format_number(x: Optional[float]) -> str:
    return "" if x is None else format(x, ".12g")


def emit_csv(rows, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(rows_to_csv(rows))


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        w.writerow([r.scenario_id] + [format_number(getattr(r, c)) for c in CSV_COLUMNS[1:]])
    return buf.getvalue()


def read_csv(path) -> list[SweepRow]:
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
            raise ValueError(f"unexpected CSV header {reader.fieldnames}")
        return [
            SweepRow(rec["scenario_id"], **{c: float(rec[c]) if rec[c] else None for c in CSV_COLUMNS[1:]})
            for rec in reader
        ]


def format_report(sc: Scenario, theta, q, rep: BoundReport) -> str:
    lines = [f"scenario: {sc.id}"]
    if sc.state.uses_theta:
        lines.append(f"theta:    {theta:.12g}")
    if q is not None:
        lines.append(f"q:        {q:.12g}")
    width = 10
    for f in fields(rep):
        if f.name in ("argmax_perms", "sign_choice_lb3"):
            continue
        v = getattr(rep, f.name)
        text = "n/a" if v is None else f"{v:.12g}"
        perm = rep.argmax_perms.get(f.name)
        extra = f"   argmax {perm}" if perm is not None and perm.perms and len(perm.perms[0]) > 1 else ""
        if f.name == "lb3" and rep.sign_choice_lb3:
            extra += f"   signs {rep.sign_choice_lb3}"
        lines.append(f"{f.name:<{width}}{text}{extra}")
    bad = rep.violations()
    lines.append("dominance: " + ("ok" if not bad else "; ".join(bad)))
    return "\n".join(lines)


def table1_rows(sc: Scenario) -> list[tuple[str, BoundReport]]:
    return [(label, evaluate_point(sc, theta=theta)) for label, theta in TABLE1_THETAS]


def format_table1(results) -> str:
    cols = ("lbbar1", "lbbar2", "lb1", "lb2", "lb3", "sum")
    header = f"{'q=0.5':<12}" + "".join(f"{c:>12}" for c in cols)
    out = [header, "-" * len(header)]
    for label, rep in results:
        out.append(f"{'theta=' + label:<12}" + "".join(f"{getattr(rep, c):>12.6f}" for c in cols))
    return "\n".join(out)


def as_array(rows, column: str) -> np.ndarray:
    return np.array([np.nan if getattr(r, column) is None else getattr(r, column) for r in rows])
