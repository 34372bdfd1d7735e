"""Coefficient rings KR_*(pt) and K_*(+), the maps c and r, and the Real Spin^c rule.

KR_*(pt) = Z[eta, mu, b^{+-1}] / (2 eta, eta^3, mu eta, mu^2 - 4 b) with
|eta| = -1, |mu| = -4 and the Bott generator |b| = -8 carried explicitly, so
every element is a sum of homogeneous pieces with honest integer degrees.

K_*(+) is modelled as Z[beta^{+-1}] with |beta| = -2; ``beta^4`` is the image
of ``b`` under the forgetful map and is printed as ``b``.  Complex conjugation
acts by ``beta -> -beta`` (degree preserving).
"""

from __future__ import annotations

import enum
from itertools import product

from .errors import InputError

# KR basis monomials are keyed by the magnitude of their degree: 0 -> 1, 1 -> eta, 2 -> eta^2, 4 -> mu
ONE, ETA, ETA2, MU = 0, 1, 2, 4
_GEN_SYMBOL = {ONE: "", ETA: "η", ETA2: "η²", MU: "μ"}
_GEN_ORDER = (ONE, ETA, ETA2, MU)

# gen x gen -> (scalar, bott shift, gen) or None when the product vanishes
_GEN_PRODUCT = {}
for _g in _GEN_ORDER:
    _GEN_PRODUCT[(ONE, _g)] = _GEN_PRODUCT[(_g, ONE)] = (1, 0, _g)
_GEN_PRODUCT[(ETA, ETA)] = (1, 0, ETA2)
_GEN_PRODUCT[(MU, MU)] = (4, 1, ONE)
for _a, _b in [(ETA, ETA2), (ETA2, ETA), (ETA2, ETA2), (ETA, MU), (MU, ETA), (ETA2, MU), (MU, ETA2)]:
    _GEN_PRODUCT[(_a, _b)] = None


def _power(symbol: str, m: int) -> str:
    if m == 1:
        return symbol
    return f"{symbol}^{m}"


def _join(coeff: int, parts: list[str]) -> str:
    mono = "·".join(p for p in parts if p)
    if not mono:
        return str(coeff)
    if coeff == 1:
        return mono
    if coeff == -1:
        return "-" + mono
    return f"{coeff}{mono}"


def _render_sum(terms: list[str]) -> str:
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return out


class KRCoefficient:
    """An element of KR_*(pt) in canonical form.

    Stored as ``{(m, gen): n}`` meaning ``sum n * b^m * gen``; eta-type coefficients
    live in {0, 1}.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean = {}
        for (m, g), n in (terms or {}).items():
            if g not in _GEN_SYMBOL:
                raise InputError(f"unknown KR generator {g!r}")
            n = int(n)
            if g in (ETA, ETA2):
                n %= 2
            if n:
                clean[(int(m), g)] = n
        self._terms = dict(sorted(clean.items(), key=lambda kv: (_degree(kv[0]) * -1, kv[0])))

    # constructors
    @classmethod
    def integer(cls, n: int) -> "KRCoefficient":
        return cls({(0, ONE): n})

    @classmethod
    def one(cls):
        return cls.integer(1)

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def eta(cls):
        return cls({(0, ETA): 1})

    @classmethod
    def eta2(cls):
        return cls({(0, ETA2): 1})

    @classmethod
    def mu(cls):
        return cls({(0, MU): 1})

    @classmethod
    def bott(cls, m: int = 1):
        return cls({(m, ONE): 1})

    @classmethod
    def basis(cls) -> list["KRCoefficient"]:
        """1, eta, eta^2, mu (one period modulo b)."""
        return [cls.one(), cls.eta(), cls.eta2(), cls.mu()]

    @property
    def terms(self) -> dict[tuple[int, int], int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degrees(self) -> set[int]:
        return {_degree(k) for k in self._terms}

    def homogeneous_components(self) -> dict[int, "KRCoefficient"]:
        out: dict[int, dict] = {}
        for k, n in self._terms.items():
            out.setdefault(_degree(k), {})[k] = n
        return {d: KRCoefficient(t) for d, t in out.items()}

    def __add__(self, other):
        other = _as_kr(other)
        if other is NotImplemented:
            return other
        t = dict(self._terms)
        for k, n in other._terms.items():
            t[k] = t.get(k, 0) + n
        return KRCoefficient(t)

    __radd__ = __add__

    def __neg__(self):
        return KRCoefficient({k: -n for k, n in self._terms.items()})

    def __sub__(self, other):
        return self + (-_as_kr(other))

    def __rsub__(self, other):
        return _as_kr(other) - self

    def __mul__(self, other):
        other = _as_kr(other)
        if other is NotImplemented:
            return other
        t: dict[tuple[int, int], int] = {}
        for (m1, g1), n1 in self._terms.items():
            for (m2, g2), n2 in other._terms.items():
                rule = _GEN_PRODUCT[(g1, g2)]
                if rule is None:
                    continue
                s, dm, g = rule
                key = (m1 + m2 + dm, g)
                t[key] = t.get(key, 0) + s * n1 * n2
        return KRCoefficient(t)

    __rmul__ = __mul__

    def __eq__(self, other):
        other = _as_kr(other)
        if other is NotImplemented:
            return False
        return self._terms == other._terms

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    def __bool__(self):
        return bool(self._terms)

    def __str__(self):
        parts = []
        for (m, g), n in self._terms.items():
            bits = [_GEN_SYMBOL[g]]
            if m:
                bits.append(_power("b", m))
            parts.append(_join(n, bits))
        return _render_sum(parts)

    def __repr__(self):
        return f"KRCoefficient({str(self)!r})"


def _degree(key: tuple[int, int]) -> int:
    m, g = key
    return -g - 8 * m


def _as_kr(x):
    if isinstance(x, KRCoefficient):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return KRCoefficient.integer(x)
    return NotImplemented


class KPlusCoefficient:
    """An element of K_*(+) = Z[beta^{+-1}], stored as ``{n: coeff}`` for ``beta^n``."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        self._terms = {int(n): int(c) for n, c in sorted((terms or {}).items()) if c}

    @classmethod
    def beta(cls, n: int = 1, coeff: int = 1) -> "KPlusCoefficient":
        return cls({n: coeff})

    @classmethod
    def integer(cls, n: int):
        return cls({0: n})

    @classmethod
    def one(cls):
        return cls.integer(1)

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def basis(cls) -> list["KPlusCoefficient"]:
        return [cls.beta(i) for i in range(4)]

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def is_zero(self):
        return not self._terms

    def degrees(self) -> set[int]:
        return {-2 * n for n in self._terms}

    def shift(self, n: int) -> "KPlusCoefficient":
        """Multiply by beta^n."""
        return KPlusCoefficient({k + n: c for k, c in self._terms.items()})

    def conjugate(self) -> "KPlusCoefficient":
        return KPlusCoefficient({n: c if n % 2 == 0 else -c for n, c in self._terms.items()})

    def __add__(self, other):
        other = _as_kplus(other)
        if other is NotImplemented:
            return other
        t = dict(self._terms)
        for n, c in other._terms.items():
            t[n] = t.get(n, 0) + c
        return KPlusCoefficient(t)

    __radd__ = __add__

    def __neg__(self):
        return KPlusCoefficient({n: -c for n, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-_as_kplus(other))

    def __mul__(self, other):
        other = _as_kplus(other)
        if other is NotImplemented:
            return other
        t: dict[int, int] = {}
        for n1, c1 in self._terms.items():
            for n2, c2 in other._terms.items():
                t[n1 + n2] = t.get(n1 + n2, 0) + c1 * c2
        return KPlusCoefficient(t)

    __rmul__ = __mul__

    def __eq__(self, other):
        other = _as_kplus(other)
        if other is NotImplemented:
            return False
        return self._terms == other._terms

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    def __bool__(self):
        return bool(self._terms)

    def __str__(self):
        parts = []
        for n, c in self._terms.items():
            m, i = divmod(n, 4)
            bits = [{0: "", 1: "β", 2: "β²", 3: "β³"}[i]]
            if m:
                bits.append(_power("b", m))
            parts.append(_join(c, bits))
        return _render_sum(parts)

    def __repr__(self):
        return f"KPlusCoefficient({str(self)!r})"


def _as_kplus(x):
    if isinstance(x, KPlusCoefficient):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return KPlusCoefficient.integer(x)
    return NotImplemented


def kr_mul(x: KRCoefficient, y: KRCoefficient) -> KRCoefficient:
    return x * y


def coeff_c(x: KRCoefficient) -> KPlusCoefficient:
    """Forget the Real structure: c(1) = 1, c(eta) = 0, c(mu) = 2 beta^2, c(b) = beta^4."""
    out = KPlusCoefficient()
    for (m, g), n in x.terms.items():
        if g == ONE:
            out = out + KPlusCoefficient.beta(4 * m, n)
        elif g == MU:
            out = out + KPlusCoefficient.beta(4 * m + 2, 2 * n)
    return out


_R_IMAGE = {
    0: KRCoefficient.integer(2),
    1: KRCoefficient.eta2(),
    2: KRCoefficient.mu(),
    3: KRCoefficient.zero(),
}


def coeff_r(y: KPlusCoefficient) -> KRCoefficient:
    """Realification: r(1) = 2, r(beta) = eta^2, r(beta^2) = mu, r(beta^3) = 0, b-periodic."""
    out = KRCoefficient()
    for n, c in y.terms.items():
        m, i = divmod(n, 4)
        out = out + c * _R_IMAGE[i] * KRCoefficient.bott(m)
    return out


class SpincClassification(enum.Enum):
    NotOrientable = "NotOrientable"
    OrientableNotSpinc = "OrientableNotSpinc"
    Spinc = "Spinc"

    def __str__(self):
        return self.value


def spin_c_classify(r: int, s: int, p: int, q: int) -> SpincClassification:
    """Real (p, q)-orientability / Spin^c-ability of R^{r,s} over a point."""
    for name, v in zip("rspq", (r, s, p, q)):
        if not isinstance(v, int) or v < 0:
            raise InputError(f"{name} must be a non-negative integer, got {v!r}")
    if p + q != r + s:
        raise InputError(f"need p + q = r + s, got p+q={p + q}, r+s={r + s}")
    d = p - q - (r - s)
    if (d // 2) % 2:
        return SpincClassification.NotOrientable
    if (d // 4) % 2:
        return SpincClassification.OrientableNotSpinc
    return SpincClassification.Spinc


def relation_table() -> list[tuple[str, bool]]:
    """Exhaustive check of the defining relations and of the r/c identities on basis elements."""
    kr = KRCoefficient
    rows = []
    eta, eta2, mu = kr.eta(), kr.eta2(), kr.mu()
    rows.append(("2η = 0", (2 * eta).is_zero()))
    rows.append(("η³ = 0", (eta * eta * eta).is_zero()))
    rows.append(("μη = 0", (mu * eta).is_zero()))
    rows.append(("μ² = 4b", mu * mu == 4 * kr.bott()))
    kr_basis = [g * kr.bott(m) for g in kr.basis() for m in (-1, 0, 1)]
    kp_basis = [KPlusCoefficient.beta(n) for n in range(-4, 8)]
    for x, y in product(kr_basis, repeat=2):
        prod_ = x * y
        expected = {a + b for a in x.degrees() for b in y.degrees()}
        if not prod_.is_zero():
            rows.append((f"deg({x}·{y})", prod_.degrees() <= expected))
        rows.append((f"c({x}·{y}) = c({x})c({y})", coeff_c(prod_) == coeff_c(x) * coeff_c(y)))
    for y in kr_basis:
        rows.append((f"rc({y}) = 2·{y}", coeff_r(coeff_c(y)) == 2 * y))
    for x in kp_basis:
        rows.append((f"cr({x}) = {x} + conj", coeff_c(coeff_r(x)) == x + x.conjugate()))
    for x, y in product(kp_basis, kr_basis):
        rows.append((f"r({x}·c({y})) = r({x})·{y}", coeff_r(x * coeff_c(y)) == coeff_r(x) * y))
    return rows
