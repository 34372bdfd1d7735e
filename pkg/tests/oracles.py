"""Reference implementations that share no code with the package under test.

* SU(2) fusion from the closed-form truncated Clebsch-Gordan rule and from the
  sine S-matrix.
* Frobenius-Schur indicators of SU(n) by quadrature of chi(t^2) against the
  Weyl density on the maximal torus, with characters from Jacobi-Trudi.
* The Real Spin^c rule rewritten in terms of p - r.
* The case formulas for products of V' generators, written out directly.
"""

from __future__ import annotations

import itertools
import math

import numpy as np


def su2_fusion_closed_form(k: int, a: int, b: int) -> dict[int, int]:
    return {
        c: 1
        for c in range(abs(a - b), min(a + b, 2 * k - a - b) + 1)
        if (c - a - b) % 2 == 0
    }


def su2_fusion_sine(k: int, a: int, b: int) -> dict[int, int]:
    n = k + 1
    s = np.array([[math.sqrt(2 / (k + 2)) * math.sin(math.pi * (i + 1) * (j + 1) / (k + 2))
                   for j in range(n)] for i in range(n)])
    out = {}
    for c in range(n):
        v = sum(s[a, m] * s[b, m] * s[c, m] / s[0, m] for m in range(n))
        if round(v):
            out[c] = round(v)
    return out


# -- Frobenius-Schur indicators of SU(n) ----------------------------------------


def _partition(dynkin) -> list[int]:
    return [sum(dynkin[i:]) for i in range(len(dynkin))] + [0]


def _complete_homogeneous(z: np.ndarray, kmax: int) -> list[np.ndarray]:
    """h_0..h_kmax evaluated on a batch of points (rows of z) via Newton's identities."""
    p = [None] + [np.sum(z ** i, axis=1) for i in range(1, kmax + 1)]
    h = [np.ones(z.shape[0], dtype=complex)]
    for m in range(1, kmax + 1):
        h.append(sum(p[i] * h[m - i] for i in range(1, m + 1)) / m)
    return h


def schur(dynkin, z: np.ndarray) -> np.ndarray:
    lam = _partition(dynkin)
    n = len(lam)
    kmax = max(lam) + n
    h = _complete_homogeneous(z, kmax)
    zero = np.zeros(z.shape[0], dtype=complex)

    def H(m):
        return h[m] if 0 <= m <= kmax else zero

    mat = np.empty((z.shape[0], n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            mat[:, i, j] = H(lam[i] - i + j)
    return np.linalg.det(mat)


def su_frobenius_schur(dynkin, grid: int = 24) -> float:
    """(1/n!) * integral over the torus of SU(n) of s_lam(t^2) |V(t)|^2."""
    n = len(dynkin) + 1
    axes = [np.arange(grid) / grid] * (n - 1)
    th = np.array(list(itertools.product(*axes)))
    theta = np.hstack([th, -th.sum(axis=1, keepdims=True)])
    z = np.exp(2j * np.pi * theta)
    vdm = np.ones(len(z), dtype=complex)
    for i in range(n):
        for j in range(i + 1, n):
            vdm *= z[:, i] - z[:, j]
    vals = schur(dynkin, z ** 2) * np.abs(vdm) ** 2
    return float(np.real(vals.mean()) / math.factorial(n))


def su_dimension(dynkin) -> int:
    lam = _partition(dynkin)
    n = len(lam)
    num = den = 1
    for i in range(n):
        for j in range(i + 1, n):
            num *= lam[i] - lam[j] + j - i
            den *= j - i
    return num // den


# -- Real Spin^c -----------------------------------------------------------------


def spinc_rule(r: int, s: int, p: int, q: int) -> str:
    # with p + q = r + s the invariant p - q - (r - s) equals 2 (p - r)
    if (q - s) % 2:
        return "NotOrientable"
    return "Spinc" if (p - r) % 4 == 0 else "OrientableNotSpinc"


# -- product case formulas ----------------------------------------------------------


def fixed_fixed_case_formula(fusion: dict, eps: dict, sigma, lam, gam):
    """V'_lam . V'_gam from the case analysis on (eps(lam), eps(gam)).

    Returns (fixed, orbit) with fixed: nu -> list of (coefficient, symbol) and
    orbit: nu -> (coefficient, beta power).  Symbols: "1", "b", "mu".
    """
    fixed, orbit = {}, {}
    case = (eps[lam], eps[gam])
    for nu, c in fusion.items():
        if nu in eps:
            if case == (1, 1):
                term = (c, "1") if eps[nu] == 1 else (c // 2, "mu")
            elif case in ((1, -1), (-1, 1)):
                term = (c // 2, "mu") if eps[nu] == 1 else (c, "1")
            else:
                term = (c, "b") if eps[nu] == 1 else (c // 2, "mu")
            fixed[nu] = term
        elif nu <= sigma(nu):
            power = {(1, 1): 0, (1, -1): 2, (-1, 1): 2, (-1, -1): 4}[case]
            orbit[nu] = (c, power)
    return fixed, orbit


def quaternionic_orbit_case_formula(fusion: dict, eps: dict, sigma, i: int):
    """V'_lam . r(V_nu beta^i) for quaternionic lam, summand by summand.

    Quaternionic gamma -> V'_gam r(beta^i); real gamma -> V'_gam r(beta^{i+2});
    orbit gamma (either member) -> r(V_gam beta^{i+2}).
    """
    fixed, orbit = {}, {}
    for g, c in fusion.items():
        if g in eps:
            fixed[g] = (c, i if eps[g] == -1 else i + 2)
        else:
            orbit[g] = (c, i + 2)
    return fixed, orbit
