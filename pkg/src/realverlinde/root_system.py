"""Root data, weight lattices and Weyl-group combinatorics for simple types A-G.

Weights are tuples of integer Dynkin labels (coordinates in the fundamental
weight basis).  Roots are stored in simple-root coordinates.  Every quantity
derived from the invariant form is an exact :class:`fractions.Fraction`.

Simple roots follow Bourbaki numbering:

* ``B_l``: ``alpha_l`` is short; ``C_l``: ``alpha_l`` is long.
* ``D_l``: ``alpha_{l-2}`` is the branch node joined to ``alpha_{l-1}`` and ``alpha_l``.
* ``E_l``: chain ``1-3-4-...-l`` with ``alpha_2`` attached to ``alpha_4``.
* ``F_4``: ``alpha_1, alpha_2`` long, ``alpha_3, alpha_4`` short.
* ``G_2``: ``alpha_1`` short, ``alpha_2`` long.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import InputError

Weight = tuple[int, ...]

_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}
_FIXED_RANKS = {"E": (6, 7, 8), "F": (4,), "G": (2,)}


@dataclass(frozen=True, order=True)
class CartanType:
    family: str
    rank: int

    def __post_init__(self):
        fam = self.family
        if not isinstance(fam, str) or fam not in "ABCDEFG" or len(fam) != 1:
            raise InputError(f"unknown Cartan family {fam!r}")
        if not isinstance(self.rank, int) or isinstance(self.rank, bool):
            raise InputError(f"rank must be an integer, got {self.rank!r}")
        if fam in _MIN_RANK:
            ok = self.rank >= _MIN_RANK[fam]
        else:
            ok = self.rank in _FIXED_RANKS[fam]
        if not ok:
            raise InputError(f"invalid rank {self.rank} for family {fam}")

    @classmethod
    def parse(cls, text: str) -> "CartanType":
        """Parse strings such as ``"A3"``, ``"e8"`` or ``"G_2"``."""
        s = text.strip().replace("_", "")
        if len(s) < 2 or not s[1:].isdigit():
            raise InputError(f"cannot parse Cartan type {text!r}")
        return cls(s[0].upper(), int(s[1:]))

    def __str__(self):
        return f"{self.family}{self.rank}"


def _symmetric_form(ct: CartanType) -> list[list[Fraction]]:
    """Matrix of (alpha_i, alpha_j) with long roots of squared length 2."""
    l = ct.rank
    F = Fraction
    form = [[F(0)] * l for _ in range(l)]
    lengths = [F(2)] * l
    edges: list[tuple[int, int, Fraction]] = []
    fam = ct.family
    if fam == "A":
        edges = [(i, i + 1, F(-1)) for i in range(l - 1)]
    elif fam == "B":
        lengths[l - 1] = F(1)
        edges = [(i, i + 1, F(-1)) for i in range(l - 1)]
    elif fam == "C":
        lengths = [F(1)] * (l - 1) + [F(2)]
        edges = [(i, i + 1, F(-1, 2)) for i in range(l - 2)] + [(l - 2, l - 1, F(-1))]
    elif fam == "D":
        edges = [(i, i + 1, F(-1)) for i in range(l - 2)] + [(l - 3, l - 1, F(-1))]
    elif fam == "E":
        edges = [(0, 2, F(-1)), (1, 3, F(-1))] + [(i, i + 1, F(-1)) for i in range(2, l - 1)]
    elif fam == "F":
        lengths = [F(2), F(2), F(1), F(1)]
        edges = [(0, 1, F(-1)), (1, 2, F(-1)), (2, 3, F(-1, 2))]
    elif fam == "G":
        lengths = [F(2, 3), F(2)]
        edges = [(0, 1, F(-1))]
    for i in range(l):
        form[i][i] = lengths[i]
    for i, j, v in edges:
        form[i][j] = form[j][i] = v
    return form


def _inverse(m: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    a = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def _weyl_order(ct: CartanType) -> int:
    l = ct.rank
    return {
        "A": lambda: factorial(l + 1),
        "B": lambda: 2**l * factorial(l),
        "C": lambda: 2**l * factorial(l),
        "D": lambda: 2 ** (l - 1) * factorial(l),
        "E": lambda: {6: 51840, 7: 2903040, 8: 696729600}[l],
        "F": lambda: 1152,
        "G": lambda: 12,
    }[ct.family]()


@dataclass(frozen=True, eq=False)
class RootDatum:
    """Immutable root datum of one simple type.

    ``cartan_matrix[i][j] = <alpha_i^vee, alpha_j>``, so row ``i`` pairs with the
    simple coroot ``i`` and column ``j`` holds the Dynkin labels of ``alpha_j``.
    ``gram_B[i][j] = B(omega_i, omega_j)``.  Equality and hashing go through the
    Cartan type only, which keeps the datum usable as an ``lru_cache`` key.
    """

    cartan_type: CartanType
    cartan_matrix: tuple[tuple[int, ...], ...]
    root_lengths: tuple[Fraction, ...]
    positive_roots: tuple[tuple[int, ...], ...]
    positive_root_labels: tuple[Weight, ...]
    simple_root_labels: tuple[Weight, ...]
    rho: Weight
    alpha_max: tuple[int, ...]
    alpha_max_labels: Weight
    comarks: tuple[int, ...]
    two_rho_vee: tuple[int, ...]
    gram_B: tuple[tuple[Fraction, ...], ...]
    dual_coxeter: int
    weyl_group_order: int = field(default=0)

    @property
    def rank(self) -> int:
        return self.cartan_type.rank

    @property
    def symmetrizers(self) -> tuple[Fraction, ...]:
        return tuple(x / 2 for x in self.root_lengths)

    def __eq__(self, other):
        return isinstance(other, RootDatum) and other.cartan_type == self.cartan_type

    def __hash__(self):
        return hash(("RootDatum", self.cartan_type))

    def __repr__(self):
        return f"RootDatum({self.cartan_type})"


@lru_cache(maxsize=None)
def build_root_datum(ct: CartanType | str) -> RootDatum:
    if isinstance(ct, str):
        ct = CartanType.parse(ct)
    l = ct.rank
    form = _symmetric_form(ct)
    lengths = tuple(form[i][i] for i in range(l))
    cartan = tuple(tuple(int(2 * form[i][j] / form[i][i]) for j in range(l)) for i in range(l))
    for i in range(l):
        for j in range(l):
            assert 2 * form[i][j] / form[i][i] == cartan[i][j]
    simple_labels = tuple(tuple(cartan[i][j] for i in range(l)) for j in range(l))

    # positive roots by reflection closure, in root coordinates
    simple = [tuple(int(i == j) for i in range(l)) for j in range(l)]
    found = set(simple)
    queue = deque(simple)
    while queue:
        beta = queue.popleft()
        for i in range(l):
            if beta == simple[i]:
                continue
            pairing = sum(cartan[i][j] * beta[j] for j in range(l))
            image = tuple(b - pairing * int(i == j) for j, b in enumerate(beta))
            if min(image) >= 0 and image not in found:
                found.add(image)
                queue.append(image)
    roots = tuple(sorted(found, key=lambda r: (sum(r), r)))
    root_labels = tuple(
        tuple(sum(r[j] * simple_labels[j][i] for j in range(l)) for i in range(l)) for r in roots
    )
    theta = roots[-1]
    assert all(sum(r) < sum(theta) for r in roots[:-1]), "highest root not unique"

    # theta^vee = sum_i theta_i (|alpha_i|^2 / |theta|^2) alpha_i^vee
    comarks_f = [theta[i] * lengths[i] / 2 for i in range(l)]
    assert all(c.denominator == 1 for c in comarks_f)
    comarks = tuple(int(c) for c in comarks_f)

    # 2 rho^vee as a sum of positive coroots, simple-coroot coordinates
    two_rho_vee = [Fraction(0)] * l
    for r in roots:
        norm = sum(r[i] * r[j] * form[i][j] for i in range(l) for j in range(l))
        for i in range(l):
            two_rho_vee[i] += r[i] * lengths[i] / norm
    assert all(c.denominator == 1 for c in two_rho_vee)

    # Gram matrix of B on fundamental weights: omega_i = sum_j (A^-1)_{ji}... via root coords
    a_inv = _inverse([[Fraction(x) for x in row] for row in cartan])
    # root coordinates of omega_i are column i of A^{-1} (labels = A c)
    omega = [[a_inv[j][i] for j in range(l)] for i in range(l)]
    gram = tuple(
        tuple(
            sum(omega[i][a] * form[a][b] * omega[j][b] for a in range(l) for b in range(l))
            for j in range(l)
        )
        for i in range(l)
    )
    theta_norm = sum(theta[i] * theta[j] * form[i][j] for i in range(l) for j in range(l))
    assert theta_norm == 2
    rho = (1,) * l
    theta_labels = root_labels[-1]
    b_rho_theta = sum(
        rho[i] * gram[i][j] * theta_labels[j] for i in range(l) for j in range(l)
    )
    assert b_rho_theta.denominator == 1
    return RootDatum(
        cartan_type=ct,
        cartan_matrix=cartan,
        root_lengths=lengths,
        positive_roots=roots,
        positive_root_labels=root_labels,
        simple_root_labels=simple_labels,
        rho=rho,
        alpha_max=theta,
        alpha_max_labels=theta_labels,
        comarks=comarks,
        two_rho_vee=tuple(int(c) for c in two_rho_vee),
        gram_B=gram,
        dual_coxeter=1 + int(b_rho_theta),
        weyl_group_order=_weyl_order(ct),
    )


def _check_rank(datum: RootDatum, *weights) -> None:
    for w in weights:
        if len(w) != datum.rank:
            raise InputError(f"weight {tuple(w)} has length {len(w)}, expected {datum.rank}")


def inner_product(datum: RootDatum, lam, mu) -> Fraction:
    """Basic inner product B of two weights given by Dynkin labels."""
    _check_rank(datum, lam, mu)
    g = datum.gram_B
    l = datum.rank
    return sum(
        (lam[i] * g[i][j] * mu[j] for i in range(l) if lam[i] for j in range(l) if mu[j]),
        Fraction(0),
    )


def root_coordinates(datum: RootDatum, lam) -> tuple[Fraction, ...]:
    """Coordinates of a weight in the simple-root basis (exact)."""
    _check_rank(datum, lam)
    l = datum.rank
    # B(lam, alpha_j) = lam_j |alpha_j|^2 / 2, and c = form^{-1} (B(lam, alpha_j))_j
    form = _symmetric_form(datum.cartan_type)
    inv = _inverse(form)
    rhs = [lam[j] * datum.root_lengths[j] / 2 for j in range(l)]
    return tuple(sum(inv[i][j] * rhs[j] for j in range(l)) for i in range(l))


def level_of(datum: RootDatum, lam) -> int:
    """<lam, alpha_max^vee>."""
    return sum(c * x for c, x in zip(datum.comarks, lam))


def reflect(datum: RootDatum, xi: Weight, i: int) -> Weight:
    """Simple reflection s_i applied to a weight."""
    c = xi[i]
    if c == 0:
        return tuple(xi)
    a = datum.simple_root_labels[i]
    return tuple(x - c * y for x, y in zip(xi, a))


def to_dominant(datum: RootDatum, xi) -> tuple[Weight, int]:
    """Move ``xi`` into the dominant chamber; return (image, det of the Weyl element used)."""
    xi = tuple(xi)
    _check_rank(datum, xi)
    sign = 1
    simple = datum.simple_root_labels
    while True:
        for i, c in enumerate(xi):
            if c < 0:
                a = simple[i]
                xi = tuple(x - c * y for x, y in zip(xi, a))
                sign = -sign
                break
        else:
            return xi, sign


def dominant_reduce_shifted(datum: RootDatum, xi) -> tuple[Weight, int]:
    """Weyl reduction with determinant tracking for rho-shifted weights.

    Returns ``(delta, s)`` with ``delta`` dominant, ``delta = w(xi)`` and
    ``s = det(w)``; ``s = 0`` when ``xi`` lies on a reflection wall.
    """
    delta, sign = to_dominant(datum, xi)
    if 0 in delta:
        return delta, 0
    return delta, sign


def conjugate_weight(datum: RootDatum, lam) -> Weight:
    """The dual highest weight ``-w_0 lam``."""
    return to_dominant(datum, tuple(-x for x in lam))[0]


def is_dominant(lam) -> bool:
    return all(x >= 0 for x in lam)


def weyl_orbit(datum: RootDatum, lam) -> list[Weight]:
    """Weyl orbit of a dominant weight (dominant element first)."""
    lam = tuple(lam)
    if not is_dominant(lam):
        lam = to_dominant(datum, lam)[0]
    seen = {lam}
    out = [lam]
    queue = deque([lam])
    while queue:
        nu = queue.popleft()
        for i, c in enumerate(nu):
            if c > 0:
                img = reflect(datum, nu, i)
                if img not in seen:
                    seen.add(img)
                    out.append(img)
                    queue.append(img)
    return out


def signed_regular_orbit(datum: RootDatum, xi) -> list[tuple[Weight, int]]:
    """Orbit ``(w xi, det w)`` of a regular dominant weight; one entry per Weyl element."""
    xi = tuple(xi)
    if not all(x > 0 for x in xi):
        raise InputError(f"{xi} is not regular dominant")
    seen = {xi: 1}
    queue = deque([xi])
    while queue:
        nu = queue.popleft()
        s = seen[nu]
        for i, c in enumerate(nu):
            if c > 0:
                img = reflect(datum, nu, i)
                if img not in seen:
                    seen[img] = -s
                    queue.append(img)
    return list(seen.items())


def weyl_dimension(datum: RootDatum, lam) -> int:
    _check_rank(datum, lam)
    if not is_dominant(lam):
        raise InputError(f"weight {tuple(lam)} is not dominant")
    num = Fraction(1)
    lengths = datum.root_lengths
    for r in datum.positive_roots:
        # B(lam + rho, alpha) / B(rho, alpha) with B(omega_j, alpha_j') = delta |alpha_j|^2 / 2
        top = sum((lam[j] + 1) * r[j] * lengths[j] for j in range(datum.rank))
        bottom = sum(r[j] * lengths[j] for j in range(datum.rank))
        num *= Fraction(top) / bottom
    assert num.denominator == 1
    return int(num)


def _dominant_weights(datum: RootDatum, lam: Weight) -> list[Weight]:
    """Dominant weights of V_lam, ordered by depth below lam."""
    depth = {lam: 0}
    queue = deque([lam])
    roots = datum.positive_root_labels
    heights = [sum(r) for r in datum.positive_roots]
    while queue:
        mu = queue.popleft()
        for r, h in zip(roots, heights):
            nu = tuple(x - y for x, y in zip(mu, r))
            if min(nu) >= 0 and nu not in depth:
                depth[nu] = depth[mu] + h
                queue.append(nu)
    return sorted(depth, key=lambda w: (depth[w], w))


@lru_cache(maxsize=4096)
def dominant_multiplicities(datum: RootDatum, lam: Weight) -> dict[Weight, int]:
    """Freudenthal recursion restricted to dominant weights."""
    lam = tuple(lam)
    _check_rank(datum, lam)
    if not is_dominant(lam):
        raise InputError(f"weight {lam} is not dominant")
    l = datum.rank
    g = datum.gram_B

    def norm(w):
        return sum(w[i] * g[i][j] * w[j] for i in range(l) if w[i] for j in range(l) if w[j])

    # B(nu, alpha) for nu in labels, alpha in root coords: sum_j nu_j r_j |alpha_j|^2/2
    half_len = [x / 2 for x in datum.root_lengths]
    roots = list(zip(datum.positive_roots, datum.positive_root_labels))
    rho = datum.rho
    top = norm(tuple(a + b for a, b in zip(lam, rho)))
    mult: dict[Weight, int] = {lam: 1}
    for mu in _dominant_weights(datum, lam)[1:]:
        total = Fraction(0)
        for r, rl in roots:
            nu = mu
            while True:
                nu = tuple(x + y for x, y in zip(nu, rl))
                dom = to_dominant(datum, nu)[0]
                m = mult.get(dom)
                if not m:
                    break
                total += m * sum(nu[j] * r[j] * half_len[j] for j in range(l))
        denom = top - norm(tuple(a + b for a, b in zip(mu, rho)))
        value = 2 * total / denom
        assert value.denominator == 1, (lam, mu, value)
        if value:
            mult[mu] = int(value)
    return mult


def weight_multiplicities(datum: RootDatum, lam) -> dict[Weight, int]:
    """Full weight diagram of the irreducible representation with highest weight ``lam``."""
    lam = tuple(lam)
    out: dict[Weight, int] = {}
    for mu, m in dominant_multiplicities(datum, lam).items():
        for nu in weyl_orbit(datum, mu):
            out[nu] = m
    return out
