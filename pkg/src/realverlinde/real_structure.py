"""Involution data (sigma_+, epsilon) on the weight lattice.

``sigma_plus`` is a permutation of the fundamental-weight indices; it is stored
0-based here and read/written 1-based in config files.  ``epsilon`` decides
whether a sigma-fixed irreducible is of real (+1) or quaternionic (-1) type and
is given either by an integral coweight ``x0`` (eps(lam) = (-1)^<lam, x0>) or by
a +-1 table on the generators of the fixed sublattice.

A generator of the fixed sublattice is ``omega_i`` for a fixed index ``i`` or
``omega_i + omega_{sigma i}`` for a swapped pair; both are named by the sorted
index tuple of their sigma-orbit.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import InputError, ValidationError
from .fusion_ring import LevelKWeightSet, level_weights
from .root_system import RootDatum, Weight, build_root_datum, to_dominant

try:
    import tomllib
except ModuleNotFoundError:  # python < 3.11
    import tomli as tomllib

PRESETS = ("trivial_involution", "su_even_quaternionic")


@dataclass(frozen=True)
class RealInvolutionDatum:
    name: str
    sigma_plus: tuple[int, ...]
    epsilon_coweight: tuple[int, ...] | None = None
    # ((orbit indices, sign), ...) sorted by orbit
    epsilon_table: tuple[tuple[tuple[int, ...], int], ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "sigma_plus", tuple(int(i) for i in self.sigma_plus))
        if (self.epsilon_coweight is None) == (self.epsilon_table is None):
            raise InputError("give exactly one of an epsilon coweight or an epsilon table")
        if self.epsilon_coweight is not None:
            object.__setattr__(self, "epsilon_coweight", tuple(int(x) for x in self.epsilon_coweight))
        else:
            table = tuple(sorted((tuple(sorted(k)), int(v)) for k, v in dict(self.epsilon_table).items()))
            object.__setattr__(self, "epsilon_table", table)

    @property
    def rank(self) -> int:
        return len(self.sigma_plus)

    def orbits(self) -> list[tuple[int, ...]]:
        """sigma-orbits of the index set, each as a sorted tuple."""
        seen, out = set(), []
        for i in range(self.rank):
            if i in seen:
                continue
            orb = tuple(sorted({i, self.sigma_plus[i]}))
            seen.update(orb)
            out.append(orb)
        return out

    def fixed_indices(self) -> list[int]:
        return [i for i in range(self.rank) if self.sigma_plus[i] == i]

    def to_config(self) -> dict:
        out = {"name": self.name, "permutation": [s + 1 for s in self.sigma_plus]}
        if self.epsilon_coweight is not None:
            out["epsilon"] = {"coweight": list(self.epsilon_coweight)}
        else:
            out["epsilon"] = {
                "table": {"+".join(str(i + 1) for i in k): v for k, v in self.epsilon_table}
            }
        return out


@dataclass(frozen=True)
class TypeDecomposition:
    fixed_real: tuple[Weight, ...]
    fixed_quaternionic: tuple[Weight, ...]
    orbit_pairs: tuple[Weight, ...]

    def epsilon_of(self, lam) -> int:
        lam = tuple(lam)
        if lam in self.fixed_real:
            return 1
        if lam in self.fixed_quaternionic:
            return -1
        raise InputError(f"{lam} is not a sigma-fixed weight of this decomposition")


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class ValidationReport:
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, detail: str = ""):
        self.checks.append(CheckResult(name, bool(passed), detail))

    def failed(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def raise_if_failed(self):
        bad = self.failed()
        if bad:
            msg = "; ".join(f"{c.name}: {c.detail}" if c.detail else c.name for c in bad)
            raise ValidationError(f"involution datum failed checks: {msg}")

    def lines(self) -> list[str]:
        return [
            f"{'PASS' if c.passed else 'FAIL'} {c.name}" + (f" ({c.detail})" if c.detail else "")
            for c in self.checks
        ]


def dual_permutation(datum: RootDatum) -> tuple[int, ...]:
    """Index permutation induced by lam -> -w0 lam."""
    perm = []
    for i in range(datum.rank):
        neg = tuple(-1 if j == i else 0 for j in range(datum.rank))
        dom, _ = to_dominant(datum, neg)
        perm.append(dom.index(1))
    return tuple(perm)


def preset(datum: RootDatum, name: str) -> RealInvolutionDatum:
    if name == "trivial_involution":
        inv = RealInvolutionDatum(name, dual_permutation(datum), epsilon_coweight=datum.two_rho_vee)
    elif name == "su_even_quaternionic":
        ct = datum.cartan_type
        if ct.family != "A" or ct.rank % 2 == 0:
            raise InputError(f"preset {name} needs type A with odd rank (SU(2n)), got {ct}")
        # eps(omega_i) = (-1)^i with 1-based i
        x0 = tuple((i + 1) % 2 for i in range(ct.rank))
        inv = RealInvolutionDatum(name, tuple(range(ct.rank)), epsilon_coweight=x0)
    else:
        raise InputError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
    validate(inv, datum, 2).raise_if_failed()
    return inv


def apply_sigma_plus(inv: RealInvolutionDatum, lam) -> Weight:
    lam = tuple(lam)
    if len(lam) != inv.rank:
        raise InputError(f"weight {lam} has the wrong length for rank {inv.rank}")
    out = [0] * inv.rank
    for i, v in enumerate(lam):
        out[inv.sigma_plus[i]] = v
    return tuple(out)


def is_fixed(inv: RealInvolutionDatum, lam) -> bool:
    return apply_sigma_plus(inv, lam) == tuple(lam)


def epsilon(inv: RealInvolutionDatum, lam) -> int:
    """+1 (real type) or -1 (quaternionic type) for a sigma-fixed weight."""
    lam = tuple(lam)
    if not is_fixed(inv, lam):
        raise InputError(f"epsilon is only defined on sigma-fixed weights, {lam} is not fixed")
    if inv.epsilon_coweight is not None:
        if len(inv.epsilon_coweight) != len(lam):
            raise ValidationError("epsilon coweight length does not match the rank")
        return -1 if sum(a * b for a, b in zip(lam, inv.epsilon_coweight)) % 2 else 1
    table = dict(inv.epsilon_table)
    sign = 1
    for orb in inv.orbits():
        mult = lam[orb[0]]
        if mult == 0:
            continue
        if orb not in table:
            raise ValidationError(
                f"epsilon table has no value for generator {'+'.join(str(i + 1) for i in orb)}"
            )
        if table[orb] == -1 and mult % 2:
            sign = -sign
    return sign


def classify(inv: RealInvolutionDatum, weights: LevelKWeightSet) -> TypeDecomposition:
    real, quat, pairs = [], [], []
    for lam in weights:
        mu = apply_sigma_plus(inv, lam)
        if mu == lam:
            (real if epsilon(inv, lam) == 1 else quat).append(lam)
        elif lam < mu:
            pairs.append(lam)
    return TypeDecomposition(tuple(real), tuple(quat), tuple(pairs))


def canonical_representative(inv: RealInvolutionDatum, lam) -> Weight:
    lam = tuple(lam)
    return min(lam, apply_sigma_plus(inv, lam))


def _fixed_generators(inv: RealInvolutionDatum) -> list[Weight]:
    gens = []
    for orb in inv.orbits():
        gens.append(tuple(1 if i in orb else 0 for i in range(inv.rank)))
    return gens


def validate(inv: RealInvolutionDatum, datum: RootDatum, k_max: int) -> ValidationReport:
    """Run every admissibility check and report pass/fail per named check."""
    rep = ValidationReport()
    l = datum.rank
    sigma = inv.sigma_plus
    perm_ok = sorted(sigma) == list(range(l))
    rep.add("sigma_permutation", perm_ok,
            "" if perm_ok else f"{[s + 1 for s in sigma]} is not a permutation of 1..{l}")
    if not perm_ok:
        return rep
    invol = all(sigma[sigma[i]] == i for i in range(l))
    rep.add("sigma_involution", invol, "" if invol else "sigma_plus squared is not the identity")
    a = datum.cartan_matrix
    cartan = all(a[sigma[i]][sigma[j]] == a[i][j] for i in range(l) for j in range(l))
    rep.add("cartan_preserved", cartan, "" if cartan else "sigma_plus is not a diagram automorphism")

    bad_level = None
    for k in range(k_max + 1):
        lk = level_weights(datum, k)
        if any(apply_sigma_plus(inv, lam) not in lk for lam in lk):
            bad_level = k
            break
    rep.add("level_sets_preserved", bad_level is None,
            "" if bad_level is None else f"sigma_plus does not preserve the level-{bad_level} weights")

    gens = _fixed_generators(inv) if invol else []
    if inv.epsilon_coweight is not None:
        dom_ok = len(inv.epsilon_coweight) == l
        rep.add("epsilon_domain", dom_ok, "" if dom_ok else "coweight length differs from the rank")
        rep.add("epsilon_values", dom_ok)
    else:
        keys = {k for k, _ in inv.epsilon_table}
        want = set(inv.orbits()) if invol else set()
        missing, extra = want - keys, keys - want

        def fmt(s):
            return ", ".join("+".join(str(i + 1) for i in k) for k in sorted(s))

        detail = []
        if missing:
            detail.append(f"missing generators {fmt(missing)}")
        if extra:
            detail.append(f"not fixed-lattice generators {fmt(extra)}")
        dom_ok = invol and not missing and not extra
        rep.add("epsilon_domain", dom_ok, "; ".join(detail))
        vals_ok = all(v in (1, -1) for _, v in inv.epsilon_table)
        rep.add("epsilon_values", vals_ok, "" if vals_ok else "table values must be +1 or -1")
        dom_ok = dom_ok and vals_ok

    if dom_ok and invol:
        mult = True
        for g in gens:
            for h in gens:
                s = tuple(x + y for x, y in zip(g, h))
                if epsilon(inv, s) != epsilon(inv, g) * epsilon(inv, h):
                    mult = False
        rep.add("epsilon_multiplicative", mult)
        sig = True
        for k in range(k_max + 1):
            for lam in level_weights(datum, k):
                if is_fixed(inv, lam) and epsilon(inv, apply_sigma_plus(inv, lam)) != epsilon(inv, lam):
                    sig = False
        rep.add("epsilon_sigma_invariant", sig)
    else:
        rep.add("epsilon_multiplicative", False, "skipped: sigma_plus or epsilon domain invalid")
        rep.add("epsilon_sigma_invariant", False, "skipped: sigma_plus or epsilon domain invalid")
    return rep


# ---------------------------------------------------------------------------
# config files


def _key_line(text: str, key: str) -> int | None:
    pat = re.compile(rf'^\s*"?{re.escape(key)}"?\s*[=:]|^\s*\[\s*{re.escape(key)}[\].]')
    for n, line in enumerate(text.splitlines(), 1):
        if pat.search(line):
            return n
    return None


def _where(path, text, key) -> str:
    n = _key_line(text, key)
    return f"{path}:{n}" if n else str(path)


def _parse_text(path: Path, text: str) -> dict:
    if path.suffix.lower() == ".json":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}:{exc.lineno}: invalid JSON: {exc.msg}") from None
    else:
        try:
            data = tomllib.loads(text)
        except tomllib.TOMLDecodeError as exc:
            raise InputError(f"{path}: invalid TOML: {exc}") from None
    if not isinstance(data, dict):
        raise InputError(f"{path}: top level must be a table")
    return data


def involution_from_config(data: dict, datum: RootDatum, path="<config>", text: str = "",
                           k_max: int = 4) -> RealInvolutionDatum:
    """Build and validate an involution datum from a parsed config mapping."""
    ct = data.get("type")
    if ct is not None and str(ct) != str(datum.cartan_type):
        raise InputError(f"{_where(path, text, 'type')}: config is for {ct}, not {datum.cartan_type}")
    perm = data.get("permutation")
    if not isinstance(perm, list) or not all(isinstance(p, int) for p in perm):
        raise InputError(f"{_where(path, text, 'permutation')}: permutation must be a list of integers")
    if len(perm) != datum.rank or sorted(perm) != list(range(1, datum.rank + 1)):
        raise ValidationError(
            f"{_where(path, text, 'permutation')}: sigma_permutation: {perm} is not a permutation of 1..{datum.rank}"
        )
    eps = data.get("epsilon")
    if not isinstance(eps, dict) or len(eps) != 1 or next(iter(eps)) not in ("coweight", "table"):
        raise InputError(f"{_where(path, text, 'epsilon')}: epsilon must hold exactly one of coweight/table")
    kw = {}
    if "coweight" in eps:
        cw = eps["coweight"]
        if not isinstance(cw, list) or not all(isinstance(x, int) for x in cw):
            raise InputError(f"{_where(path, text, 'coweight')}: coweight must be a list of integers")
        kw["epsilon_coweight"] = tuple(cw)
    else:
        table = {}
        for key, val in eps["table"].items():
            try:
                idx = tuple(sorted(int(s) - 1 for s in str(key).split("+")))
            except ValueError:
                raise InputError(f"{_where(path, text, key)}: bad generator name {key!r}") from None
            if not isinstance(val, int):
                raise InputError(f"{_where(path, text, key)}: epsilon value must be +1 or -1")
            table[idx] = val
        kw["epsilon_table"] = table
    inv = RealInvolutionDatum(str(data.get("name", Path(str(path)).stem)), tuple(p - 1 for p in perm), **kw)
    rep = validate(inv, datum, k_max)
    if not rep.ok:
        anchor = {"sigma_involution": "permutation", "cartan_preserved": "permutation",
                  "level_sets_preserved": "permutation"}
        c = rep.failed()[0]
        key = anchor.get(c.name, "epsilon")
        raise ValidationError(f"{_where(path, text, key)}: {c.name}: {c.detail or 'check failed'}")
    return inv


def load_involution_config(path, datum: RootDatum | None = None, k_max: int = 4) -> RealInvolutionDatum:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    data = _parse_text(path, text)
    if datum is None:
        if "type" not in data:
            raise InputError(f"{path}: no Cartan type given (set 'type' or pass --family/--rank)")
        datum = build_root_datum(str(data["type"]))
    return involution_from_config(data, datum, path, text, k_max)
