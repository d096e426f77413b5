"""Seeded randomized checks of the package's invariants.

Each trial draws fresh instances from one ``numpy`` generator seeded once, so
a given ``(seed, trials)`` pair always produces the same summary text.
"""

from __future__ import annotations

from collections import OrderedDict
from dataclasses import dataclass, field

import numpy as np

from .bounds import full_report, normalize_channels
from .errors import SkewInfoError
from .linalg import (
    BlockVector,
    block_norm_identities_check,
    dagger,
    frobenius_norm,
    hermitian_eigen,
    hlawka_holds,
    psd_sqrt,
)
from .quantum import (
    KrausChannel,
    amplitude_damping,
    apply_channel,
    bit_flip,
    completeness_error,
    phase_damping,
)
from .sampling import (
    ginibre,
    mix_kraus,
    random_channel,
    random_density_matrix,
    random_hermitian,
    random_kraus_ops,
    random_pure_state,
    random_unitary,
    random_unital_channel,
    random_unitary_matrix,
)
from .skew import fidelity_pure, skew_channel, skew_operator, unitary_variance_pure

PROPERTIES = (
    "eigen_reconstruction",
    "psd_sqrt",
    "cptp_certificate",
    "apply_channel",
    "kraus_invariance",
    "complementarity",
    "complementarity_general",
    "variance_identity",
    "norm_identities",
    "hlawka",
    "dominance",
    "relabeling_invariance",
)


@dataclass
class VerificationSummary:
    seed: int
    trials: int
    counts: "OrderedDict[str, list[int]]" = field(
        default_factory=lambda: OrderedDict((p, [0, 0]) for p in PROPERTIES)
    )
    failures: list = field(default_factory=list)

    def record(self, name: str, ok: bool, detail: str = "") -> None:
        self.counts[name][0 if ok else 1] += 1
        if not ok and len(self.failures) < 20:
            self.failures.append(f"{name}: {detail}")

    @property
    def ok(self) -> bool:
        return all(fail == 0 for _, fail in self.counts.values())

    def format(self) -> str:
        lines = [f"verify seed={self.seed} trials={self.trials}"]
        for name, (passed, failed) in self.counts.items():
            status = "PASS" if failed == 0 else "FAIL"
            lines.append(f"  {status} {name:<24} passed={passed} failed={failed}")
        lines.extend(f"  ! {f}" for f in self.failures)
        lines.append("all properties passed" if self.ok else "property failures detected")
        return "\n".join(lines)


def _random_channels(rng, d, N):
    return [random_channel(d, int(rng.integers(1, 4)), rng) for _ in range(N)]


def _preset(rng):
    q = float(rng.uniform(0, 0.999))
    return [phase_damping, amplitude_damping, bit_flip][int(rng.integers(3))](q)


def _trial(rng, summary: VerificationSummary, corrupt: bool) -> None:
    d = int(rng.integers(2, 5))

    a = random_hermitian(d, rng)
    eig = hermitian_eigen(a)
    scale = max(1.0, frobenius_norm(a))
    rec = frobenius_norm(eig.reconstruct() - a) / scale
    orth = frobenius_norm(dagger(eig.eigenvectors) @ eig.eigenvectors - np.eye(d))
    summary.record("eigen_reconstruction", rec <= 1e-10 and orth <= 1e-10, f"rec={rec:.3e} orth={orth:.3e}")

    rho = random_density_matrix(d, rng, rank=int(rng.integers(1, d + 1)))
    s = psd_sqrt(rho.rho)
    res = frobenius_norm(s @ s - rho.rho)
    comm = frobenius_norm(s @ rho.rho - rho.rho @ s)
    summary.record("psd_sqrt", res <= 1e-9 and comm <= 1e-9, f"res={res:.3e} comm={comm:.3e}")

    ops = random_kraus_ops(d, int(rng.integers(1, 4)), rng)
    if corrupt:
        ops[0] = 1.1 * ops[0]
    err = completeness_error(ops)
    summary.record("cptp_certificate", err <= 1e-8, f"|sum K^dag K - I|={err:.3e}")

    ch = random_channel(d, int(rng.integers(1, 4)), rng)
    try:
        out = apply_channel(ch, rho)
        ok = out.eigenvalues[0] >= -1e-9
        detail = f"min eig {out.eigenvalues[0]:.3e}"
    except SkewInfoError as exc:
        ok, detail = False, str(exc)
    summary.record("apply_channel", ok, detail)

    u = random_unitary_matrix(ch.n, rng)
    diff = abs(skew_channel(rho, ch) - skew_channel(rho, mix_kraus(ch, u)))
    summary.record("kraus_invariance", diff <= 1e-9, f"diff={diff:.3e}")

    # I + F = 1 needs sum K K^dag = I on psi; in general I + F = (1 + <psi|Phi(I)|psi>) / 2
    dp = int(rng.integers(2, 4))
    psi = random_pure_state(dp, rng)
    if dp == 2 and rng.random() < 0.5:
        uch = (phase_damping, bit_flip)[int(rng.integers(2))](float(rng.uniform(0, 0.999)))
    else:
        uch = random_unital_channel(dp, int(rng.integers(1, 4)), rng)
    gap = abs(skew_channel(psi, uch) + fidelity_pure(psi, uch) - 1.0)
    summary.record("complementarity", gap <= 1e-9, f"{uch.name}: |I+F-1|={gap:.3e}")

    gch = _preset(rng) if dp == 2 and rng.random() < 0.5 else random_channel(dp, int(rng.integers(1, 4)), rng)
    v = psi.state_vector()
    unit_out = sum(k @ dagger(k) for k in gch.kraus)
    expected = 0.5 * (1.0 + np.vdot(v, unit_out @ v).real)
    gap = abs(skew_channel(psi, gch) + fidelity_pure(psi, gch) - expected)
    summary.record("complementarity_general", gap <= 1e-9, f"{gch.name}: gap={gap:.3e}")

    uc = random_unitary(dp, rng)
    gap = abs(unitary_variance_pure(psi, uc) - skew_operator(psi, uc.u))
    summary.record("variance_identity", gap <= 1e-10, f"|var-skew|={gap:.3e}")

    N = int(rng.integers(3, 6))
    blocks = int(rng.integers(1, 4))
    fam = [BlockVector(tuple(ginibre(d, rng) for _ in range(blocks))) for _ in range(N)]
    summary.record("norm_identities", block_norm_identities_check(fam), "identity residual above 1e-9")
    summary.record("hlawka", hlawka_holds(fam), "Hlawka inequality violated")

    N = int(rng.integers(3, 5))
    chans = _random_channels(rng, d, N)
    rep = full_report(rho, chans)
    bad = rep.violations()
    summary.record("dominance", not bad, "; ".join(bad))

    padded = normalize_channels(chans)
    n = padded[0].n
    sigma = [int(j) for j in rng.permutation(n)]
    relabeled = [KrausChannel(c.name, tuple(c.kraus[j] for j in sigma)) for c in padded]
    rep2 = full_report(rho, relabeled)
    worst = max(
        abs(getattr(rep, k) - getattr(rep2, k))
        for k in ("lb1", "lb2", "lb3", "lbbar1", "lbbar2", "thm2_rhs")
    )
    summary.record("relabeling_invariance", worst <= 1e-12, f"max diff={worst:.3e}")


def verify(seed: int, trials: int, corrupt: bool = False) -> VerificationSummary:
    """Run every property ``trials`` times; ``corrupt`` breaks one Kraus set
    per trial so the CPTP check must fail (negative control)."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = np.random.default_rng(seed)
    summary = VerificationSummary(seed, trials)
    for _ in range(trials):
        _trial(rng, summary, corrupt)
    return summary
