"""Level-k fusion rings: exact Kac-Walton fusion plus floating-point oracles.

The exact route (``fusion_coeffs``) decomposes the classical tensor product with
the Brauer-Klimyk rule and folds every constituent into the fundamental alcove
at shifted level ``k + h^vee``.  The S-matrix, Weyl characters and the
vanishing-ideal test are numerical cross-checks only; nothing exported is
derived from them.
"""

from __future__ import annotations

import cmath
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement

import numpy as np

from .errors import InputError, NumericConsistencyError, ResourceError
from .root_system import (
    RootDatum,
    Weight,
    build_root_datum,
    dominant_multiplicities,
    dominant_reduce_shifted,
    is_dominant,
    level_of,
    signed_regular_orbit,
    weight_multiplicities,
    weyl_dimension,
)

MAX_REFLECTION_STEPS = 10_000
MAX_ALCOVE_SIZE = 5000
# Weyl-sum evaluation is used up to this group order; above it the weight-diagram route
WEYL_SUM_LIMIT = 50_000

ROUNDING_TOL = 1e-6
VANISHING_TOL = 1e-8
UNITARITY_TOL = 1e-9
SINGULAR_TOL = 1e-10


@dataclass(frozen=True)
class LevelKWeightSet:
    datum: RootDatum
    level: int
    weights: tuple[Weight, ...]

    def __len__(self):
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)

    def __contains__(self, lam):
        return tuple(lam) in self._index

    def index(self, lam) -> int:
        try:
            return self._index[tuple(lam)]
        except KeyError:
            raise InputError(f"{tuple(lam)} is not a level-{self.level} weight") from None

    @property
    def _index(self) -> dict[Weight, int]:
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = {w: i for i, w in enumerate(self.weights)}
            object.__setattr__(self, "_idx", idx)
        return idx


@lru_cache(maxsize=256)
def level_weights(datum: RootDatum, k: int) -> LevelKWeightSet:
    """Dominant weights with <lam, alpha_max^vee> <= k, lexicographically sorted."""
    if k < 0:
        raise InputError(f"level must be non-negative, got {k}")
    out: list[Weight] = []
    comarks = datum.comarks

    def rec(prefix: list[int], budget: int):
        i = len(prefix)
        if i == datum.rank:
            out.append(tuple(prefix))
            return
        for v in range(budget // comarks[i] + 1):
            prefix.append(v)
            rec(prefix, budget - v * comarks[i])
            prefix.pop()

    rec([], k)
    return LevelKWeightSet(datum, k, tuple(sorted(out)))


def level_set_size(datum: RootDatum, k: int) -> int:
    """|Lambda*_k| without enumerating it (coin-change count over the comarks)."""
    ways = [1] + [0] * k
    for c in datum.comarks:
        for t in range(c, k + 1):
            ways[t] += ways[t - c]
    return sum(ways)


def _check_level_weight(datum, k, lam):
    lam = tuple(lam)
    if len(lam) != datum.rank or not is_dominant(lam) or level_of(datum, lam) > k:
        raise InputError(f"{lam} is not in the level-{k} weight set of {datum.cartan_type}")
    return lam


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


@lru_cache(maxsize=65536)
def _tensor_cached(datum: RootDatum, lam: Weight, mu: Weight) -> tuple[tuple[Weight, int], ...]:
    # iterate over the weights of the smaller representation
    if weyl_dimension(datum, lam) > weyl_dimension(datum, mu):
        lam, mu = mu, lam
    rho = datum.rho
    shifted = _add(mu, rho)
    out: dict[Weight, int] = {}
    for nu, m in weight_multiplicities(datum, lam).items():
        delta, s = dominant_reduce_shifted(datum, _add(shifted, nu))
        if s:
            key = _sub(delta, rho)
            out[key] = out.get(key, 0) + s * m
    result = tuple(sorted((w, n) for w, n in out.items() if n))
    if any(n < 0 for _, n in result):
        raise NumericConsistencyError(f"negative tensor multiplicity in {lam} x {mu}")
    return result


def tensor_decompose(datum: RootDatum, lam, mu) -> dict[Weight, int]:
    """Classical tensor product multiplicities V_lam (x) V_mu = sum_nu N_nu V_nu."""
    lam, mu = tuple(lam), tuple(mu)
    for w in (lam, mu):
        if len(w) != datum.rank or not is_dominant(w):
            raise InputError(f"{w} is not a dominant weight of {datum.cartan_type}")
    return dict(_tensor_cached(datum, lam, mu))


def affine_reduce(datum: RootDatum, k: int, xi, max_steps: int = MAX_REFLECTION_STEPS):
    """Fold a rho-shifted weight into the fundamental alcove at level ``k + h^vee``.

    Returns ``(delta, sign)``; ``sign`` is 0 when ``xi`` is fixed by an affine reflection.
    """
    big_k = k + datum.dual_coxeter
    theta = datum.alpha_max_labels
    simple = datum.simple_root_labels
    xi = tuple(xi)
    sign = 1
    for _ in range(max_steps):
        for i, c in enumerate(xi):
            if c < 0:
                xi = tuple(x - c * a for x, a in zip(xi, simple[i]))
                sign = -sign
                break
        else:
            excess = level_of(datum, xi) - big_k
            if excess <= 0:
                if excess == 0 or 0 in xi:
                    return xi, 0
                return xi, sign
            xi = tuple(x - excess * t for x, t in zip(xi, theta))
            sign = -sign
    raise ResourceError(f"affine reduction exceeded {max_steps} reflection steps")


def fusion_coeffs(datum: RootDatum, k: int, lam, mu, max_steps: int = MAX_REFLECTION_STEPS
                  ) -> dict[Weight, int]:
    """Level-k fusion coefficients c_{lam mu}^nu by Kac-Walton reduction."""
    lam = _check_level_weight(datum, k, lam)
    mu = _check_level_weight(datum, k, mu)
    rho = datum.rho
    out: dict[Weight, int] = {}
    for nu, m in _tensor_cached(datum, lam, mu):
        delta, s = affine_reduce(datum, k, _add(nu, rho), max_steps)
        if s:
            key = _sub(delta, rho)
            out[key] = out.get(key, 0) + s * m
    result = {w: n for w, n in sorted(out.items()) if n}
    if any(n < 0 for n in result.values()):
        raise NumericConsistencyError(f"negative fusion coefficient in {lam} * {mu} at level {k}")
    return result


@dataclass(frozen=True)
class FusionTable:
    """Fusion structure constants, stored for index pairs ``i <= j`` of the weight list."""

    datum: RootDatum
    level: int
    weights: tuple[Weight, ...]
    coeffs: dict[tuple[int, int], dict[int, int]] = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {w: i for i, w in enumerate(self.weights)})

    def index(self, lam) -> int:
        try:
            return self._index[tuple(lam)]
        except KeyError:
            raise InputError(f"{tuple(lam)} is not a level-{self.level} weight") from None

    def __contains__(self, lam):
        return tuple(lam) in self._index

    def product(self, lam, mu) -> dict[Weight, int]:
        i, j = self.index(lam), self.index(mu)
        if i > j:
            i, j = j, i
        return {self.weights[t]: n for t, n in self.coeffs[(i, j)].items()}

    def coefficient(self, lam, mu, nu) -> int:
        return self.product(lam, mu).get(tuple(nu), 0)

    def to_json_dict(self) -> dict:
        ct = self.datum.cartan_type
        return {
            "type": ct.family,
            "rank": ct.rank,
            "level": self.level,
            "weights": [list(w) for w in self.weights],
            "coeffs": [
                {"l": i, "m": j, "entries": [{"n": t, "c": n} for t, n in sorted(e.items())]}
                for (i, j), e in sorted(self.coeffs.items())
            ],
        }

    @classmethod
    def from_json_dict(cls, payload: dict) -> "FusionTable":
        try:
            datum = build_root_datum(f"{payload['type']}{payload['rank']}")
            weights = tuple(tuple(int(x) for x in w) for w in payload["weights"])
            coeffs = {
                (int(e["l"]), int(e["m"])): {int(t["n"]): int(t["c"]) for t in e["entries"]}
                for e in payload["coeffs"]
            }
            level = int(payload["level"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed fusion table payload: {exc}") from exc
        if weights != level_weights(datum, level).weights:
            raise InputError("fusion table weights do not match the level set")
        return cls(datum, level, weights, coeffs)


def _pair_worker(args):
    datum, k, lam, mu, max_steps = args
    return fusion_coeffs(datum, k, lam, mu, max_steps)


def fusion_table(datum: RootDatum, k: int, *, workers: int | None = None,
                 max_steps: int = MAX_REFLECTION_STEPS,
                 max_alcove: int = MAX_ALCOVE_SIZE) -> FusionTable:
    n = level_set_size(datum, k)
    if n > max_alcove:
        raise ResourceError(f"level set has {n} weights (guard {max_alcove})")
    ws = level_weights(datum, k).weights
    pairs = list(combinations_with_replacement(range(len(ws)), 2))
    jobs = [(datum, k, ws[i], ws[j], max_steps) for i, j in pairs]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_pair_worker, jobs, chunksize=16))
    else:
        results = [_pair_worker(j) for j in jobs]
    index = {w: i for i, w in enumerate(ws)}
    coeffs = {
        pair: {index[w]: n for w, n in res.items()} for pair, res in zip(pairs, results)
    }
    return FusionTable(datum, k, ws, coeffs)


# ---------------------------------------------------------------------------
# numeric oracles


@dataclass(frozen=True)
class SpecialPointSet:
    """Points B#((lam + rho)/(k + h^vee)) in simple-coroot coordinates, one per level-k weight."""

    level: int
    weights: tuple[Weight, ...]
    points: tuple[tuple[Fraction, ...], ...]


def special_points(datum: RootDatum, k: int) -> SpecialPointSet:
    lk = level_weights(datum, k)
    big_k = k + datum.dual_coxeter
    g = datum.gram_B
    l = datum.rank
    pts = []
    for lam in lk:
        shifted = _add(lam, datum.rho)
        # <omega_i, B#(v)> = B(omega_i, v)
        pts.append(tuple(sum(g[i][j] * shifted[j] for j in range(l)) / big_k for i in range(l)))
    return SpecialPointSet(k, lk.weights, tuple(pts))


def _weyl_denominator(datum: RootDatum, x) -> complex:
    """prod_{alpha > 0} (e^{i pi <alpha, x>} - e^{-i pi <alpha, x>})."""
    out = 1 + 0j
    for r in datum.positive_root_labels:
        t = sum(a * float(b) for a, b in zip(r, x))
        out *= 2j * math.sin(math.pi * t)
    return out


@lru_cache(maxsize=4096)
def _orbit_arrays(datum: RootDatum, xi: Weight):
    orbit = signed_regular_orbit(datum, xi)
    pts = np.array([w for w, _ in orbit], dtype=float)
    signs = np.array([s for _, s in orbit], dtype=float)
    return pts, signs


@lru_cache(maxsize=4096)
def _weight_arrays(datum: RootDatum, lam: Weight):
    mult = weight_multiplicities(datum, lam)
    pts = np.array(list(mult.keys()), dtype=float)
    m = np.array(list(mult.values()), dtype=float)
    return pts, m


def _use_weyl_sum(datum: RootDatum, method: str) -> bool:
    if method not in ("auto", "weyl", "weights"):
        raise InputError(f"unknown evaluation method {method!r}")
    if method == "auto":
        return datum.weyl_group_order <= WEYL_SUM_LIMIT
    return method == "weyl"


def character_eval(datum: RootDatum, lam, point, method: str = "auto") -> complex:
    """Character of V_lam at exp(2 pi i x), ``x`` in simple-coroot coordinates."""
    lam = tuple(lam)
    if len(lam) != datum.rank or not is_dominant(lam):
        raise InputError(f"{lam} is not a dominant weight")
    x = np.array([float(v) for v in point])
    if _use_weyl_sum(datum, method):
        denom = _weyl_denominator(datum, point)
        if abs(denom) < SINGULAR_TOL:
            if method == "weyl":
                raise NumericConsistencyError(f"point {tuple(point)} is singular for the Weyl quotient")
        else:
            pts, signs = _orbit_arrays(datum, _add(lam, datum.rho))
            num = np.sum(signs * np.exp(2j * np.pi * (pts @ x)))
            return complex(num / denom)
    pts, m = _weight_arrays(datum, lam)
    return complex(np.sum(m * np.exp(2j * np.pi * (pts @ x))))


@lru_cache(maxsize=64)
def _s_matrix_cached(datum: RootDatum, k: int, method: str, max_alcove: int):
    n = level_set_size(datum, k)
    if n > max_alcove:
        raise ResourceError(f"S-matrix of size {n} exceeds the guard {max_alcove}")
    lk = level_weights(datum, k)
    big_k = k + datum.dual_coxeter
    g = np.array([[float(v) for v in row] for row in datum.gram_B])
    shifted = np.array([_add(w, datum.rho) for w in lk], dtype=float)
    raw = np.zeros((n, n), dtype=complex)
    if _use_weyl_sum(datum, method):
        for a, lam in enumerate(lk):
            pts, signs = _orbit_arrays(datum, _add(lam, datum.rho))
            phases = (pts @ g @ shifted.T) / big_k
            raw[a] = signs @ np.exp(-2j * np.pi * phases)
    else:
        sp = special_points(datum, k)
        for b, x in enumerate(sp.points):
            xf = np.array([float(v) for v in x])
            denom = 1 + 0j
            for r in datum.positive_root_labels:
                denom *= -2j * math.sin(math.pi * float(np.dot(r, xf)))
            for a, lam in enumerate(lk):
                pts, m = _weight_arrays(datum, lam)
                chi = np.sum(m * np.exp(2j * np.pi * (pts @ xf)))
                raw[a, b] = np.conj(chi) * denom
    scale = np.linalg.norm(raw[0])
    s = raw / scale
    phase = s[0, 0] / abs(s[0, 0])
    s = s / phase
    s.setflags(write=False)
    return lk.weights, s


def s_matrix(datum: RootDatum, k: int, method: str = "auto",
             max_alcove: int = MAX_ALCOVE_SIZE) -> tuple[tuple[Weight, ...], np.ndarray]:
    """Unitary modular S-matrix, rows/columns indexed by the sorted level-k weights."""
    weights, s = _s_matrix_cached(datum, k, method, max_alcove)
    return weights, s


def unitarity_defect(s: np.ndarray) -> float:
    return float(np.max(np.abs(s @ s.conj().T - np.eye(len(s)))))


def fusion_via_smatrix(datum: RootDatum, k: int, lam, mu, method: str = "auto",
                       return_deviation: bool = False):
    """Verlinde-formula fusion coefficients, rounded after a 1e-6 integrality check."""
    lam = _check_level_weight(datum, k, lam)
    mu = _check_level_weight(datum, k, mu)
    weights, s = s_matrix(datum, k, method)
    index = {w: i for i, w in enumerate(weights)}
    a, b = index[lam], index[mu]
    vals = (s[a] * s[b] / s[0]) @ s.conj().T
    out: dict[Weight, int] = {}
    worst = 0.0
    for w, v in zip(weights, vals):
        n = round(v.real)
        dev = abs(v - n)
        worst = max(worst, dev)
        if dev > ROUNDING_TOL:
            raise NumericConsistencyError(
                f"Verlinde value {v} for {lam}*{mu} -> {w} is not within {ROUNDING_TOL} of an integer"
            )
        if n:
            out[w] = n
    if return_deviation:
        return out, worst
    return out


def _vc_terms(vc) -> list[tuple[Weight, int]]:
    return [(tuple(w), int(c)) for w, c in sorted(dict(vc).items()) if c]


def virtual_character_residuals(datum: RootDatum, k: int, vc, method: str = "auto"
                                ) -> list[tuple[float, float]]:
    """(|sum c chi(p)|, scale) at every special point; scale is the largest term magnitude, >= 1."""
    terms = _vc_terms(vc)
    for w, _ in terms:
        if len(w) != datum.rank or not is_dominant(w):
            raise InputError(f"{w} is not a dominant weight of {datum.cartan_type}")
    out = []
    for p in special_points(datum, k).points:
        vals = [c * character_eval(datum, w, p, method) for w, c in terms]
        scale = max([1.0] + [abs(v) for v in vals])
        out.append((abs(sum(vals)), scale))
    return out


def in_verlinde_ideal(datum: RootDatum, k: int, virtual_character, method: str = "auto") -> bool:
    """Whether a virtual character vanishes at every level-k special point."""
    return all(
        res < VANISHING_TOL * scale
        for res, scale in virtual_character_residuals(datum, k, virtual_character, method)
    )


def quotient_residual(table: FusionTable, method: str = "auto") -> float:
    """max over pairs and special points of |chi_l chi_m - sum_n c chi_n| / scale."""
    datum, k = table.datum, table.level
    pts = special_points(datum, k).points
    chis = {w: [character_eval(datum, w, p, method) for p in pts] for w in table.weights}
    worst = 0.0
    for (i, j), entries in table.coeffs.items():
        a, b = chis[table.weights[i]], chis[table.weights[j]]
        for t, p in enumerate(pts):
            lhs = a[t] * b[t]
            terms = [n * chis[table.weights[u]][t] for u, n in entries.items()]
            scale = max([1.0, abs(lhs)] + [abs(z) for z in terms])
            worst = max(worst, abs(lhs - sum(terms)) / scale)
    return worst


def weyl_character_polynomial(datum: RootDatum, lam) -> dict[Weight, int]:
    """Dominant part of the character; convenience alias used by the exporters."""
    return dict(dominant_multiplicities(datum, tuple(lam)))
