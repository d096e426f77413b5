"""Reference computations that share no code with the package.

Square roots go through ``numpy.linalg.eigh``; skew information is formed from
explicit operator sums; permutations are enumerated for every channel,
including the first.
"""

import itertools
import math

import numpy as np


def sqrtm_psd(rho):
    w, v = np.linalg.eigh(rho)
    w = np.clip(w, 0.0, None)
    return (v * np.sqrt(w)) @ v.conj().T


def skew(rho, a):
    s = sqrtm_psd(rho)
    c = s @ a - a @ s
    return 0.5 * np.trace(c.conj().T @ c).real


def bloch_rho(r):
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sy = np.array([[0, -1j], [1j, 0]])
    sz = np.diag([1.0, -1.0]).astype(complex)
    return 0.5 * (np.eye(2) + r[0] * sx + r[1] * sy + r[2] * sz)


def equatorial_rho(theta):
    c = math.sqrt(3) / 2
    return bloch_rho((c * math.cos(theta), c * math.sin(theta), 0.0))


def preset_kraus(q):
    k0 = np.diag([1.0, math.sqrt(1 - q)]).astype(complex)
    phase = [k0, np.diag([0.0, math.sqrt(q)]).astype(complex)]
    amp = [k0, np.array([[0, math.sqrt(q)], [0, 0]], dtype=complex)]
    flip = [math.sqrt(q) * np.eye(2, dtype=complex),
            math.sqrt(1 - q) * np.array([[0, 1], [1, 0]], dtype=complex)]
    return [phase, amp, flip]


def _pad(channels):
    n = max(len(c) for c in channels)
    d = channels[0][0].shape[0]
    return [list(c) + [np.zeros((d, d), complex)] * (n - len(c)) for c in channels]


def brute_force_bounds(rho, channels, fix_first=False):
    """Maximize every bound by full enumeration; returns a dict of maxima."""
    chans = _pad(channels)
    N, n = len(chans), len(chans[0])
    pairs = list(itertools.combinations(range(N), 2))
    perms_all = list(itertools.permutations(range(n)))
    first = [tuple(range(n))] if fix_first else perms_all
    best = {}

    def keep(name, value):
        best[name] = max(best.get(name, -math.inf), value)

    for p0 in first:
        for rest in itertools.product(perms_all, repeat=N - 1):
            P = (p0,) + rest
            K = [[chans[s][P[s][i]] for i in range(n)] for s in range(N)]
            plus_i = [[skew(rho, K[s][i] + K[t][i]) for s, t in pairs] for i in range(n)]
            minus_i = [[skew(rho, K[s][i] - K[t][i]) for s, t in pairs] for i in range(n)]
            all_i = [skew(rho, sum(K[s][i] for s in range(N))) for i in range(n)]
            Sp = [sum(plus_i[i][k] for i in range(n)) for k in range(len(pairs))]
            Sm = [sum(minus_i[i][k] for i in range(n)) for k in range(len(pairs))]
            A = sum(all_i)
            rs = lambda xs: sum(math.sqrt(max(x, 0)) for x in xs)
            c2 = 2.0 / (N * (N - 1))
            keep("lb2", (A + c2 * rs(Sm) ** 2) / N)
            keep("lb3", (sum(Sm) + c2 * rs(Sp) ** 2) / (2 * N - 2))
            keep("lb3", (sum(Sp) + c2 * rs(Sm) ** 2) / (2 * N - 2))
            keep("lbbar2", sum((all_i[i] + c2 * rs(minus_i[i]) ** 2) / N for i in range(n)))
            if N >= 3:
                keep("lb1", (sum(Sp) - rs(Sp) ** 2 / (N - 1) ** 2) / (N - 2))
                keep("lbbar1", sum((sum(p) - rs(p) ** 2 / (N - 1) ** 2) / (N - 2) for p in plus_i))
                keep("thm2_rhs", (rs(Sp) - math.sqrt(max(A, 0))) / (N - 2))
    best["sum"] = sum(skew(rho, k) for c in channels for k in c)
    return best


def fu2_brute(rho, k1, k2):
    k1, k2 = _pad([k1, k2])
    n = len(k1)
    return max(
        0.5 * sum(skew(rho, k1[i] + sign * k2[p[i]]) for i in range(n))
        for p in itertools.permutations(range(n))
        for sign in (1, -1)
    )
