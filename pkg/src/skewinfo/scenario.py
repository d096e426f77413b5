"""JSON scenario files: a state, a list of channels and an optional sweep.

Example::

    {
      "id": "table1",
      "state": {"bloch": ["0.8660254037844386*cos(theta)",
                          "0.8660254037844386*sin(theta)", 0]},
      "channels": [{"preset": {"name": "phase_damping", "q": 0.5}},
                   {"kraus": [[[[1, 0], [0, 0]], [[0, 0], [0, 0]]], ...]},
                   {"unitary": {"pauli_rotation": {"axis": "x", "angle": 0.39}}}],
      "sweep": {"param": "theta", "from": 0.5235987755982988,
                "to": 1.5707963267948966, "steps": 5},
      "theta": 1.5707963267948966
    }

Matrices are arrays of rows of ``[re, im]`` pairs. A Bloch component is a
number or one of the strings ``c``, ``c*cos(theta)``, ``c*sin(theta)``. The
optional top-level ``theta`` is the angle used when no sweep or command-line
value fixes it (default 0).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path
from typing import Optional, Union

import numpy as np

from .errors import ParseError, SkewInfoError, ValidationError
from .quantum import (
    PRESETS,
    DensityMatrix,
    KrausChannel,
    UnitaryChannel,
    bloch_state,
    pauli_rotation_unitary,
)

BUILTIN_SCENARIOS = ("table1", "spot_q01", "fig1_sweep", "fig2_unitary")

_NUM = r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?"
_TERM = re.compile(rf"^\s*({_NUM})\s*(?:\*\s*(cos|sin)\s*\(\s*theta\s*\))?\s*$")


@dataclass(frozen=True)
class BlochTerm:
    coef: float
    func: str = "const"  # const | cos | sin

    def __call__(self, theta: float) -> float:
        if self.func == "cos":
            return self.coef * np.cos(theta)
        if self.func == "sin":
            return self.coef * np.sin(theta)
        return self.coef


@dataclass(frozen=True)
class StateSpec:
    bloch: Optional[tuple] = None  # three BlochTerm
    matrix: Optional[np.ndarray] = None

    @property
    def uses_theta(self) -> bool:
        return self.bloch is not None and any(t.func != "const" for t in self.bloch)

    @property
    def dim(self) -> int:
        return 2 if self.bloch is not None else self.matrix.shape[0]

    def build(self, theta: float) -> DensityMatrix:
        if self.bloch is not None:
            return bloch_state([t(theta) for t in self.bloch])
        return DensityMatrix.from_matrix(self.matrix)


@dataclass(frozen=True)
class ChannelSpec:
    kind: str  # preset | kraus | unitary
    name: str = ""
    q: Optional[float] = None
    matrices: tuple = ()
    axis: Optional[str] = None
    angle: Optional[float] = None

    def build(self, q: Optional[float] = None) -> Union[KrausChannel, UnitaryChannel]:
        if self.kind == "preset":
            return PRESETS[self.name](self.q if q is None else q)
        if self.kind == "kraus":
            return KrausChannel(self.name or "kraus", self.matrices)
        if self.axis is not None:
            return pauli_rotation_unitary(self.axis, self.angle)
        return UnitaryChannel(self.name or "unitary", self.matrices[0])


@dataclass(frozen=True)
class Sweep:
    param: str
    start: float
    stop: float
    steps: int

    def grid(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)


@dataclass(frozen=True)
class Scenario:
    id: str
    state: StateSpec
    channels: tuple
    sweep: Optional[Sweep] = None
    theta: float = 0.0

    @property
    def has_presets(self) -> bool:
        return any(c.kind == "preset" for c in self.channels)

    @property
    def default_q(self) -> Optional[float]:
        qs = [c.q for c in self.channels if c.kind == "preset"]
        return qs[0] if qs else None

    def build(self, theta: Optional[float] = None, q: Optional[float] = None):
        """State and channel objects at one point of the parameter space.

        ``q``, when given, replaces the parameter of every preset channel.
        """
        theta = self.theta if theta is None else theta
        try:
            rho = self.state.build(theta)
            channels = [c.build(q) for c in self.channels]
        except SkewInfoError as exc:
            raise ValidationError(f"scenario {self.id!r}: {exc}") from exc
        return rho, channels

    def with_sweep(self, sweep: Optional[Sweep]) -> Scenario:
        return replace(self, sweep=sweep)


def _require(obj, key, kind, where):
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"{where}: missing key {key!r}")
    value = obj[key]
    if kind is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ParseError(f"{where}.{key}: expected a number, got {value!r}")
        return float(value)
    if not isinstance(value, kind):
        raise ParseError(f"{where}.{key}: expected {kind.__name__}, got {type(value).__name__}")
    return value


def _one_of(obj, keys, where):
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object")
    present = [k for k in keys if k in obj]
    if len(present) != 1:
        raise ParseError(f"{where}: expected exactly one of {keys}, found {present or 'none'}")
    return present[0]


def parse_matrix(raw, where: str) -> np.ndarray:
    try:
        arr = np.array(raw, dtype=float)
    except (TypeError, ValueError):
        raise ParseError(f"{where}: matrix must be rows of [re, im] pairs") from None
    if arr.ndim != 3 or arr.shape[2] != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise ParseError(f"{where}: expected a square array of [re, im] pairs, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ParseError(f"{where}: non-finite matrix entry")
    return arr[..., 0] + 1j * arr[..., 1]


def parse_bloch_term(raw, where: str) -> BlochTerm:
    if isinstance(raw, bool):
        raise ParseError(f"{where}: expected a number or expression")
    if isinstance(raw, (int, float)):
        return BlochTerm(float(raw))
    if isinstance(raw, str):
        m = _TERM.match(raw)
        if m:
            return BlochTerm(float(m.group(1)), m.group(2) or "const")
    raise ParseError(f"{where}: unsupported Bloch component {raw!r}")


def _parse_state(raw) -> StateSpec:
    key = _one_of(raw, ("bloch", "matrix"), "state")
    if key == "bloch":
        comps = raw["bloch"]
        if not isinstance(comps, list) or len(comps) != 3:
            raise ParseError("state.bloch: expected three components")
        return StateSpec(bloch=tuple(parse_bloch_term(c, f"state.bloch[{i}]") for i, c in enumerate(comps)))
    return StateSpec(matrix=parse_matrix(raw["matrix"], "state.matrix"))


def _parse_channel(raw, i: int) -> ChannelSpec:
    where = f"channels[{i}]"
    key = _one_of(raw, ("preset", "kraus", "unitary"), where)
    body = raw[key]
    if key == "preset":
        name = _require(body, "name", str, f"{where}.preset")
        if name not in PRESETS:
            raise ParseError(f"{where}.preset.name: unknown preset {name!r}")
        return ChannelSpec("preset", name=name, q=_require(body, "q", float, f"{where}.preset"))
    if key == "kraus":
        if not isinstance(body, list) or not body:
            raise ParseError(f"{where}.kraus: expected a non-empty list of matrices")
        mats = tuple(parse_matrix(m, f"{where}.kraus[{j}]") for j, m in enumerate(body))
        return ChannelSpec("kraus", name=raw.get("name", f"kraus{i}"), matrices=mats)
    ukey = _one_of(body, ("matrix", "pauli_rotation"), f"{where}.unitary")
    if ukey == "matrix":
        return ChannelSpec("unitary", name=raw.get("name", f"unitary{i}"),
                           matrices=(parse_matrix(body["matrix"], f"{where}.unitary.matrix"),))
    rot = body["pauli_rotation"]
    axis = _require(rot, "axis", str, f"{where}.unitary.pauli_rotation")
    if axis not in ("x", "y", "z"):
        raise ParseError(f"{where}.unitary.pauli_rotation.axis: expected x, y or z")
    angle = _require(rot, "angle", float, f"{where}.unitary.pauli_rotation")
    return ChannelSpec("unitary", axis=axis, angle=angle)


def _parse_sweep(raw) -> Sweep:
    param = _require(raw, "param", str, "sweep")
    if param not in ("theta", "q"):
        raise ParseError(f"sweep.param: expected 'theta' or 'q', got {param!r}")
    steps = raw.get("steps")
    if isinstance(steps, bool) or not isinstance(steps, int):
        raise ParseError("sweep.steps: expected an integer")
    if steps < 2:
        raise ValidationError("sweep.steps must be at least 2")
    return Sweep(param, _require(raw, "from", float, "sweep"), _require(raw, "to", float, "sweep"), steps)


def _validate(sc: Scenario) -> None:
    d = sc.state.dim
    for i, c in enumerate(sc.channels):
        if c.kind != "preset":
            if any(m.shape != (d, d) for m in c.matrices):
                raise ValidationError(f"channels[{i}]: dimension does not match the state (d={d})")
        elif d != 2:
            raise ValidationError(f"channels[{i}]: preset channels act on qubits, state has d={d}")
    if sc.sweep is not None and sc.sweep.param == "q" and not sc.has_presets:
        raise ValidationError("q sweep needs at least one preset channel")

    thetas = [sc.theta]
    if sc.state.uses_theta:
        # |r(theta)| must stay in the Bloch ball everywhere, not just on the grid
        thetas += list(np.linspace(0.0, 2 * np.pi, 721))
        if sc.sweep is not None and sc.sweep.param == "theta":
            thetas += list(sc.sweep.grid())
    qs = [None]
    if sc.sweep is not None and sc.sweep.param == "q":
        qs += list(sc.sweep.grid())
    for theta in thetas:
        try:
            sc.state.build(theta)
        except SkewInfoError as exc:
            raise ValidationError(f"state at theta={theta:.6g}: {exc}") from exc
    for q in qs:
        for i, c in enumerate(sc.channels):
            try:
                c.build(q)
            except SkewInfoError as exc:
                raise ValidationError(f"channels[{i}]: {exc}") from exc


def parse_scenario(raw: dict) -> Scenario:
    if not isinstance(raw, dict):
        raise ParseError("scenario must be a JSON object")
    sid = _require(raw, "id", str, "scenario")
    state = _parse_state(_require(raw, "state", dict, "scenario"))
    chans = _require(raw, "channels", list, "scenario")
    if not chans:
        raise ParseError("scenario.channels: empty")
    channels = tuple(_parse_channel(c, i) for i, c in enumerate(chans))
    sweep = _parse_sweep(raw["sweep"]) if raw.get("sweep") is not None else None
    theta = _require(raw, "theta", float, "scenario") if "theta" in raw else 0.0
    sc = Scenario(sid, state, channels, sweep, theta)
    _validate(sc)
    return sc


def builtin_path(name: str) -> Path:
    return Path(str(resources.files("skewinfo") / "scenarios" / f"{name}.json"))


def load_scenario(path) -> Scenario:
    """Load and validate a scenario file; bare built-in names are accepted too."""
    p = Path(path)
    if not p.exists() and str(path) in BUILTIN_SCENARIOS:
        p = builtin_path(str(path))
    text = p.read_text(encoding="utf-8")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{p}: {exc}") from exc
    return parse_scenario(raw)
