"""Sum-uncertainty lower bounds for N channels, maximized over Kraus orderings.

Notation used in comments: for channels ``Phi_1..Phi_N`` with Kraus operators
``K^s_i`` and a permutation ``pi_s`` per channel,

    P_st = sum_i I(K^s_{pi_s(i)} + K^t_{pi_t(i)})     (pair sums, plus)
    M_st = sum_i I(K^s_{pi_s(i)} - K^t_{pi_t(i)})     (pair sums, minus)
    A    = sum_i I(sum_s K^s_{pi_s(i)})              (all-channel sum)

Every bound is a closed expression in these quantities (or in their per-``i``
summands for the two earlier bounds ``lbbar1``/``lbbar2``), maximized over the
permutation assignments. Skew information is linear in the stacked
commutators ``[sqrt(rho), K]``, so each term is half a squared Frobenius norm
of a sum of precomputed commutators.

Assignments are enumerated in lexicographic order with the first channel's
permutation fixed to the identity; relabeling all channels by one common
permutation leaves every bound unchanged, so nothing is lost. The first
maximizer found wins ties.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import SearchBudgetExceeded, ShapeMismatch, TooFewChannels
from .quantum import DensityMatrix, KrausChannel, UnitaryChannel
from .skew import skew_channel, skew_operator

DEFAULT_BUDGET = 10**6
DOMINANCE_TOL = 1e-9

LB3_SIGNS = ("minus_plus", "plus_minus")


@dataclass(frozen=True)
class PermSearchPolicy:
    """Exhaustive search over ``(n!)^(N-1)`` assignments, capped at ``budget``."""

    budget: int = DEFAULT_BUDGET


@dataclass(frozen=True)
class PermutationAssignment:
    """One permutation of ``range(n)`` per channel (0-based indices)."""

    perms: tuple

    def __post_init__(self):
        perms = tuple(tuple(int(i) for i in p) for p in self.perms)
        for p in perms:
            if sorted(p) != list(range(len(p))):
                raise ValueError(f"{p} is not a permutation")
        object.__setattr__(self, "perms", perms)

    def __str__(self):
        return " ".join("(" + ",".join(str(i + 1) for i in p) + ")" for p in self.perms)


@dataclass
class BoundReport:
    """All bounds for one (state, channels) point.

    ``None`` marks a bound that does not apply (e.g. the ``N - 2``
    denominators when ``N = 2``).
    """

    sum: float
    lb1: Optional[float] = None
    lb2: Optional[float] = None
    lb3: Optional[float] = None
    lbbar1: Optional[float] = None
    lbbar2: Optional[float] = None
    fu2: Optional[float] = None
    thm2_lhs: Optional[float] = None
    thm2_rhs: Optional[float] = None
    argmax_perms: dict = field(default_factory=dict)
    sign_choice_lb3: Optional[str] = None

    def violations(self, tol: float = DOMINANCE_TOL) -> list[str]:
        bad = []
        for name in ("lb1", "lb2", "lb3", "lbbar1", "lbbar2", "fu2"):
            v = getattr(self, name)
            if v is not None and not v <= self.sum + tol:
                bad.append(f"{name}={v!r} exceeds sum={self.sum!r}")
        if self.thm2_rhs is not None and not self.thm2_rhs <= self.thm2_lhs + tol:
            bad.append(f"thm2_rhs={self.thm2_rhs!r} exceeds thm2_lhs={self.thm2_lhs!r}")
        return bad


def _check_channels(rho: DensityMatrix, channels: Sequence[KrausChannel], min_n: int) -> None:
    if len(channels) < min_n:
        raise TooFewChannels(f"need at least {min_n} channels, got {len(channels)}")
    for ch in channels:
        if ch.dim != rho.dim:
            raise ShapeMismatch(f"channel {ch.name!r} has dim {ch.dim}, state has dim {rho.dim}")


def sum_skew(rho: DensityMatrix, channels: Sequence[KrausChannel]) -> float:
    return sum(skew_channel(rho, ch) for ch in channels)


def normalize_channels(channels: Sequence[KrausChannel]) -> list[KrausChannel]:
    """Pad every channel with zero Kraus operators up to the largest count."""
    if not channels:
        raise ValueError("no channels given")
    d = channels[0].dim
    if any(ch.dim != d for ch in channels):
        raise ShapeMismatch("channels act on different dimensions")
    n = max(ch.n for ch in channels)
    zero = np.zeros((d, d), dtype=np.complex128)
    return [
        ch if ch.n == n else KrausChannel(ch.name, ch.kraus + (zero,) * (n - ch.n))
        for ch in channels
    ]


# --- the search engine -------------------------------------------------------


@dataclass
class _Terms:
    """Aggregates for one assignment; see module docstring."""

    plus: list  # P_st over pairs s<t
    minus: list  # M_st
    total: float  # A
    plus_i: list  # per i: list over pairs of I(K^s + K^t)
    minus_i: list
    total_i: list  # per i: I(sum_s K^s)


class _Engine:
    def __init__(self, rho: DensityMatrix, channels: Sequence[KrausChannel]):
        self.N = len(channels)
        self.n = channels[0].n
        s = rho.sqrt_rho
        self.comm = [[s @ k - k @ s for k in ch.kraus] for ch in channels]
        self.pairs = list(itertools.combinations(range(self.N), 2))
        self._pair_cache: dict = {}
        self._total_cache: dict = {}

    def _half_sq(self, x: np.ndarray) -> float:
        return 0.5 * float(np.vdot(x, x).real)

    def pair(self, s, a, t, b, sign):
        key = (s, a, t, b, sign)
        v = self._pair_cache.get(key)
        if v is None:
            v = self._half_sq(self.comm[s][a] + sign * self.comm[t][b])
            self._pair_cache[key] = v
        return v

    def total(self, idx: tuple) -> float:
        v = self._total_cache.get(idx)
        if v is None:
            v = self._half_sq(sum(self.comm[s][a] for s, a in enumerate(idx)))
            self._total_cache[idx] = v
        return v

    def terms(self, perms) -> _Terms:
        plus_i, minus_i, total_i = [], [], []
        for i in range(self.n):
            idx = tuple(p[i] for p in perms)
            plus_i.append([self.pair(s, idx[s], t, idx[t], 1) for s, t in self.pairs])
            minus_i.append([self.pair(s, idx[s], t, idx[t], -1) for s, t in self.pairs])
            total_i.append(self.total(idx))
        plus = [sum(col) for col in zip(*plus_i)]
        minus = [sum(col) for col in zip(*minus_i)]
        return _Terms(plus, minus, sum(total_i), plus_i, minus_i, total_i)


def _sqrt_sum(values) -> float:
    return sum(math.sqrt(max(v, 0.0)) for v in values)


def _lb1(N, t: _Terms):
    return (sum(t.plus) - _sqrt_sum(t.plus) ** 2 / (N - 1) ** 2) / (N - 2)


def _lb2(N, t: _Terms):
    return (t.total + 2.0 / (N * (N - 1)) * _sqrt_sum(t.minus) ** 2) / N


def _lb3(first, bracket, N):
    return (sum(first) + 2.0 / (N * (N - 1)) * _sqrt_sum(bracket) ** 2) / (2 * N - 2)


def _lb3_minus_plus(N, t: _Terms):
    return _lb3(t.minus, t.plus, N)


def _lb3_plus_minus(N, t: _Terms):
    return _lb3(t.plus, t.minus, N)


def _lbbar1(N, t: _Terms):
    return sum(
        (sum(p) - _sqrt_sum(p) ** 2 / (N - 1) ** 2) / (N - 2) for p in t.plus_i
    )


def _lbbar2(N, t: _Terms):
    return sum(
        (a + 2.0 / (N * (N - 1)) * _sqrt_sum(m) ** 2) / N
        for a, m in zip(t.total_i, t.minus_i)
    )


def _thm2_rhs(N, t: _Terms):
    return (_sqrt_sum(t.plus) - math.sqrt(max(t.total, 0.0))) / (N - 2)


OBJECTIVES: dict[str, Callable] = {
    "lb1": _lb1,
    "lb2": _lb2,
    "lb3_minus_plus": _lb3_minus_plus,
    "lb3_plus_minus": _lb3_plus_minus,
    "lbbar1": _lbbar1,
    "lbbar2": _lbbar2,
    "thm2_rhs": _thm2_rhs,
}


def assignment_count(N: int, n: int) -> int:
    return math.factorial(n) ** (N - 1)


def iter_assignments(N: int, n: int):
    """Lexicographic assignments with the first permutation fixed."""
    ident = tuple(range(n))
    for rest in itertools.product(itertools.permutations(range(n)), repeat=N - 1):
        yield (ident,) + rest


def _search(rho, channels, names, policy: Optional[PermSearchPolicy]):
    policy = policy or PermSearchPolicy()
    channels = normalize_channels(channels)
    N, n = len(channels), channels[0].n
    count = assignment_count(N, n)
    if count > policy.budget:
        raise SearchBudgetExceeded(f"{count} assignments exceed the budget of {policy.budget}")
    engine = _Engine(rho, channels)
    best = {name: (-math.inf, None) for name in names}
    for perms in iter_assignments(N, n):
        t = engine.terms(perms)
        for name in names:
            v = OBJECTIVES[name](N, t)
            if v > best[name][0]:
                best[name] = (v, perms)
    return {name: (v, PermutationAssignment(p)) for name, (v, p) in best.items()}


def _pick_lb3(found):
    # ties keep the first entry of LB3_SIGNS
    sign = max(LB3_SIGNS, key=lambda s: (found[f"lb3_{s}"][0], -LB3_SIGNS.index(s)))
    value, perms = found[f"lb3_{sign}"]
    return value, perms, sign


def bound_lb1(rho, channels, search: Optional[PermSearchPolicy] = None):
    _check_channels(rho, channels, 3)
    return _search(rho, channels, ["lb1"], search)["lb1"]


def bound_lb2(rho, channels, search: Optional[PermSearchPolicy] = None):
    _check_channels(rho, channels, 2)
    return _search(rho, channels, ["lb2"], search)["lb2"]


def bound_lb3(rho, channels, search: Optional[PermSearchPolicy] = None):
    """Both coherent readings of the paired signs, returning the larger.

    ``minus_plus`` puts ``K^s - K^t`` in the plain sum and ``K^s + K^t`` under
    the square roots; ``plus_minus`` is the opposite.
    """
    _check_channels(rho, channels, 2)
    found = _search(rho, channels, [f"lb3_{s}" for s in LB3_SIGNS], search)
    return _pick_lb3(found)


def bound_lbbar1(rho, channels, search: Optional[PermSearchPolicy] = None):
    _check_channels(rho, channels, 3)
    return _search(rho, channels, ["lbbar1"], search)["lbbar1"]


def bound_lbbar2(rho, channels, search: Optional[PermSearchPolicy] = None):
    _check_channels(rho, channels, 2)
    return _search(rho, channels, ["lbbar2"], search)["lbbar2"]


def bound_thm2(rho, channels, search: Optional[PermSearchPolicy] = None):
    """Square-root bound: returns ``(sum_s sqrt(I(Phi_s)), rhs, argmax)``."""
    _check_channels(rho, channels, 3)
    rhs, perms = _search(rho, channels, ["thm2_rhs"], search)["thm2_rhs"]
    lhs = sum(math.sqrt(skew_channel(rho, ch)) for ch in channels)
    return lhs, rhs, perms


def bound_fu2(rho, ch1: KrausChannel, ch2: KrausChannel) -> float:
    """Two-channel bound ``max_{pi, +/-} 1/2 sum_i I(K1_i +/- K2_pi(i))``."""
    _check_channels(rho, [ch1, ch2], 2)
    ch1, ch2 = normalize_channels([ch1, ch2])
    best = -math.inf
    for perm in itertools.permutations(range(ch1.n)):
        for sign in (1, -1):
            v = 0.5 * sum(
                skew_operator(rho, ch1.kraus[i] + sign * ch2.kraus[perm[i]])
                for i in range(ch1.n)
            )
            best = max(best, v)
    return best


def full_report(rho, channels, search: Optional[PermSearchPolicy] = None) -> BoundReport:
    """Every applicable bound for one point, sharing a single search pass."""
    _check_channels(rho, channels, 2)
    channels = normalize_channels(channels)
    N = len(channels)
    names = ["lb2", "lbbar2"] + [f"lb3_{s}" for s in LB3_SIGNS]
    if N >= 3:
        names += ["lb1", "lbbar1", "thm2_rhs"]
    found = _search(rho, channels, names, search)
    skews = [skew_channel(rho, ch) for ch in channels]
    lb3, lb3_perms, sign = _pick_lb3(found)
    report = BoundReport(
        sum=sum(skews),
        lb2=found["lb2"][0],
        lb3=lb3,
        lbbar2=found["lbbar2"][0],
        sign_choice_lb3=sign,
        argmax_perms={"lb2": found["lb2"][1], "lb3": lb3_perms, "lbbar2": found["lbbar2"][1]},
    )
    if N >= 3:
        report.lb1 = found["lb1"][0]
        report.lbbar1 = found["lbbar1"][0]
        report.thm2_lhs = sum(math.sqrt(v) for v in skews)
        report.thm2_rhs = found["thm2_rhs"][0]
        for name in ("lb1", "lbbar1", "thm2_rhs"):
            report.argmax_perms[name] = found[name][1]
    else:
        report.fu2 = bound_fu2(rho, *channels)
    return report


def unitary_bounds(rho: DensityMatrix, unitaries: Sequence[UnitaryChannel]) -> BoundReport:
    """Bounds for unitary channels, evaluated directly on ``U_s +/- U_t``.

    With one Kraus operator per channel there is nothing to permute, and the
    per-``i`` and aggregated forms coincide, so ``lbbar*`` equal ``lb1``/``lb2``.
    """
    N = len(unitaries)
    if N < 2:
        raise TooFewChannels(f"need at least 2 unitaries, got {N}")
    for u in unitaries:
        if u.dim != rho.dim:
            raise ShapeMismatch(f"unitary {u.name!r} has dim {u.dim}, state has dim {rho.dim}")
    us = [u.u for u in unitaries]
    pairs = list(itertools.combinations(range(N), 2))
    plus = [skew_operator(rho, us[s] + us[t]) for s, t in pairs]
    minus = [skew_operator(rho, us[s] - us[t]) for s, t in pairs]
    total = skew_operator(rho, sum(us))
    t = _Terms(plus, minus, total, [plus], [minus], [total])
    skews = [skew_operator(rho, u) for u in us]
    ident = PermutationAssignment(((0,),) * N)

    lb3_vals = {s: OBJECTIVES[f"lb3_{s}"](N, t) for s in LB3_SIGNS}
    sign = max(LB3_SIGNS, key=lambda s: (lb3_vals[s], -LB3_SIGNS.index(s)))
    report = BoundReport(
        sum=sum(skews),
        lb2=_lb2(N, t),
        lb3=lb3_vals[sign],
        lbbar2=_lbbar2(N, t),
        sign_choice_lb3=sign,
    )
    if N >= 3:
        report.lb1 = _lb1(N, t)
        report.lbbar1 = _lbbar1(N, t)
        report.thm2_lhs = sum(math.sqrt(v) for v in skews)
        report.thm2_rhs = _thm2_rhs(N, t)
    else:
        report.fu2 = max(0.5 * p for p in (plus[0], minus[0]))
    names = [k for k in ("lb1", "lb2", "lb3", "lbbar1", "lbbar2", "thm2_rhs") if getattr(report, k) is not None]
    report.argmax_perms = {k: ident for k in names}
    return report
