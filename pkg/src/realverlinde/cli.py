"""Command-line front end.

    realverlinde describe --family A --rank 3
    realverlinde fusion --family A --rank 1 --level 4 [--json out.json] [--no-cache]
    realverlinde real --family A --rank 3 --level 2 --preset su_even_quaternionic
    realverlinde validate --family A --rank 2 --level 3 [--involution cfg.toml]
    realverlinde spinc --r 0 --s 4 --p 2 --q 2

Exit codes: 0 success, 1 input error, 2 numeric-consistency error, 3 resource guard.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .cache import SCHEMA_VERSION, CacheKey, FusionCache, canonical_json
from .errors import InputError, NumericConsistencyError, ResourceError, VerlindeError
from .fusion_ring import (
    MAX_ALCOVE_SIZE,
    MAX_REFLECTION_STEPS,
    FusionTable,
    fusion_table,
    fusion_via_smatrix,
    level_set_size,
)
from .kr_algebra import spin_c_classify
from .real_structure import PRESETS, RealInvolutionDatum, load_involution_config, preset, validate
from .real_verlinde import (
    RealVerlindeRing,
    builtin_ik_generators,
    enumerate_S,
    monomial_name,
    real_ideal_generators,
    verify_module_structure,
)
from .root_system import RootDatum, build_root_datum

log = logging.getLogger("realverlinde")

FORMATS = ("table", "json", "csv")


@dataclass
class JobConfig:
    command: str
    family: str | None = None
    rank: int | None = None
    level: int = 0
    preset: str = "trivial_involution"
    involution: str | None = None
    ik_generators: str | None = None
    fmt: str = "table"
    json_out: str | None = None
    use_cache: bool = True
    cache_dir: str | None = None
    max_alcove: int = MAX_ALCOVE_SIZE
    max_steps: int = MAX_REFLECTION_STEPS
    workers: int | None = None

    def __post_init__(self):
        if self.level < 0:
            raise InputError(f"level must be non-negative, got {self.level}")
        if self.fmt not in FORMATS:
            raise InputError(f"unknown format {self.fmt!r}")

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> "JobConfig":
        fields = {f: getattr(ns, f) for f in cls.__dataclass_fields__ if hasattr(ns, f)}
        fields["use_cache"] = not getattr(ns, "no_cache", False)
        fields["json_out"] = getattr(ns, "json", None)
        return cls(**fields)

    def datum(self) -> RootDatum:
        if self.family is None or self.rank is None:
            raise InputError("--family and --rank are required")
        return build_root_datum(f"{self.family.upper()}{self.rank}")

    def guarded_datum(self) -> RootDatum:
        # refuse oversized level sets before anything enumerates them
        d = self.datum()
        n = level_set_size(d, self.level)
        if n > self.max_alcove:
            raise ResourceError(f"level set has {n} weights (guard {self.max_alcove}; see --max-alcove)")
        return d


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _w(w) -> str:
    return "(" + ",".join(str(x) for x in w) + ")"


def _header(datum: RootDatum, **extra) -> dict:
    out = {
        "schema_version": SCHEMA_VERSION,
        "numbering": "bourbaki",
        "family": datum.cartan_type.family,
        "rank": datum.rank,
    }
    out.update(extra)
    return out


# ---------------------------------------------------------------------------
# table loading


def load_fusion_table(cfg: JobConfig, datum: RootDatum, k: int) -> FusionTable:
    key = CacheKey(datum.cartan_type.family, datum.rank, k)
    cache = FusionCache(cfg.cache_dir) if cfg.use_cache else None
    if cache is not None:
        table = cache.load(key)
        if table is not None:
            return table
    table = fusion_table(datum, k, workers=cfg.workers, max_steps=cfg.max_steps,
                         max_alcove=cfg.max_alcove)
    if cache is not None:
        try:
            cache.store(key, table)
        except OSError as exc:
            log.warning("could not write cache entry: %s", exc)
    return table


def load_involution(cfg: JobConfig, datum: RootDatum) -> RealInvolutionDatum:
    if cfg.involution:
        return load_involution_config(cfg.involution, datum, k_max=max(cfg.level, 2))
    return preset(datum, cfg.preset)


def _load_ik_generators(path: str) -> list[dict]:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        return [{tuple(t["weight"]): int(t["c"]) for t in gen} for gen in data]
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise InputError(f"cannot read I_k generators from {path}: {exc}") from None


# ---------------------------------------------------------------------------
# commands; each returns (json-able payload, table lines, csv rows)


def cmd_describe(cfg: JobConfig):
    d = cfg.datum()
    payload = _header(
        d,
        cartan_matrix=[list(r) for r in d.cartan_matrix],
        positive_roots=[list(r) for r in d.positive_roots],
        gram_B=[[_frac(x) for x in r] for r in d.gram_B],
        dual_coxeter=d.dual_coxeter,
        rho=list(d.rho),
        alpha_max=list(d.alpha_max_labels),
        positive_root_count=len(d.positive_roots),
        weyl_group_order=d.weyl_group_order,
    )
    lines = [
        f"type            {d.cartan_type}",
        f"rank            {d.rank}",
        f"positive roots  {len(d.positive_roots)}",
        f"dual Coxeter    {d.dual_coxeter}",
        f"alpha_max       {_w(d.alpha_max_labels)}",
        f"rho             {_w(d.rho)}",
        f"|W|             {d.weyl_group_order}",
    ]
    rows = [["key", "value"]] + [[ln[:16].strip(), ln[16:]] for ln in lines]
    return payload, lines, rows


def cmd_fusion(cfg: JobConfig):
    d = cfg.guarded_datum()
    table = load_fusion_table(cfg, d, cfg.level)
    payload = _header(d, **{k: v for k, v in table.to_json_dict().items() if k not in ("rank",)})
    payload["type"] = d.cartan_type.family
    lines, rows = [], [["lambda", "mu", "nu", "c"]]
    for (i, j), entries in sorted(table.coeffs.items()):
        a, b = table.weights[i], table.weights[j]
        rhs = " + ".join(
            (f"{n}·" if n != 1 else "") + _w(table.weights[t]) for t, n in sorted(entries.items())
        ) or "0"
        lines.append(f"{_w(a)} × {_w(b)} = {rhs}")
        for t, n in sorted(entries.items()):
            rows.append([_w(a), _w(b), _w(table.weights[t]), str(n)])
    return payload, lines, rows


def _ideal_section(cfg: JobConfig, d: RootDatum, inv, k):
    if cfg.ik_generators:
        gens = _load_ik_generators(cfg.ik_generators)
    elif d.cartan_type.family == "A":
        gens = builtin_ik_generators(d, k)
    else:
        return None
    return real_ideal_generators(gens, inv, d, k)


def cmd_real(cfg: JobConfig):
    d = cfg.guarded_datum()
    inv = load_involution(cfg, d)
    k = cfg.level
    table = load_fusion_table(cfg, d, k)
    ring = RealVerlindeRing(d, inv, k, table)
    basis = ring.basis()
    gens = [ring.element_of(b) for b in basis]
    products = []
    for i, x in enumerate(gens):
        for j in range(i, len(gens)):
            products.append((str(basis[i]), str(basis[j]), ring.multiply(x, gens[j])))
    ideal = _ideal_section(cfg, d, inv, k)
    S = enumerate_S(d, inv)
    t = ring.types
    payload = _header(
        d,
        level=k,
        involution=inv.to_config(),
        types={
            "fixed_real": [list(w) for w in t.fixed_real],
            "fixed_quaternionic": [list(w) for w in t.fixed_quaternionic],
            "orbit_pairs": [list(w) for w in t.orbit_pairs],
        },
        basis=[b.to_json() for b in basis],
        rr_rank=len(basis),
        products=[{"x": a, "y": b, "product": p.to_json()} for a, b, p in products],
        S=[[i + 1 for i in m] for m in S],
        ideal_generators=None if ideal is None else [g.to_json() for g in ideal],
    )
    lines = [f"{d.cartan_type} level {k}, involution {inv.name}", "", "basis:"]
    lines += [f"  {b}  degree {b.degree}" for b in basis]
    lines += ["", f"RR_k rank {len(basis)}", "", "products:"]
    lines += [f"  {a} · {b} = {p}" for a, b, p in products]
    lines += ["", "S = {" + ", ".join(monomial_name(m) for m in S) + "}", "", "ideal generators:"]
    if ideal is None:
        lines.append("  (none: supply --ik-generators for non-A types)")
    else:
        lines += [f"  {g}" for g in ideal] or ["  (none)"]
    rows = [["kind", "weight", "epsilon", "degree"]]
    rows += [[b.kind, _w(b.weight), "" if b.epsilon is None else str(b.epsilon), str(b.degree)] for b in basis]
    return payload, lines, rows


def cmd_validate(cfg: JobConfig):
    d = cfg.guarded_datum()
    k = cfg.level
    inv = load_involution(cfg, d)
    rep = validate(inv, d, k)
    # inspect the cache before loading, which would overwrite a damaged entry
    cache_status = None
    if cfg.use_cache:
        cache_status = FusionCache(cfg.cache_dir).check(CacheKey(d.cartan_type.family, d.rank, k))
    # cross-method fusion check at the requested size
    ok, worst, detail = True, 0.0, ""
    try:
        table = load_fusion_table(cfg, d, k)
        for (i, j), entries in table.coeffs.items():
            exact = {table.weights[t]: n for t, n in entries.items()}
            num, dev = fusion_via_smatrix(d, k, table.weights[i], table.weights[j], return_deviation=True)
            worst = max(worst, dev)
            if num != exact:
                ok, detail = False, f"mismatch at {_w(table.weights[i])} × {_w(table.weights[j])}"
                break
    except NumericConsistencyError as exc:
        ok, detail = False, str(exc)
    rep.add("cross_method_fusion", ok, detail or f"max deviation {worst:.2e}")
    if cache_status is not None:
        status, where = cache_status
        rep.add("cache_integrity", status in ("ok", "missing"), f"{status}: {where}")
    if rep.ok:
        for c in verify_module_structure(d, inv, k, RealVerlindeRing(d, inv, k, table)).checks:
            rep.checks.append(c)
    payload = _header(d, level=k, involution=inv.name,
                      checks=[{"name": c.name, "passed": c.passed, "detail": c.detail} for c in rep.checks],
                      ok=rep.ok)
    rows = [["check", "passed", "detail"]] + [[c.name, str(c.passed), c.detail] for c in rep.checks]
    return payload, rep.lines(), rows, (0 if rep.ok else 1)


def cmd_spinc(ns):
    cls = spin_c_classify(ns.r, ns.s, ns.p, ns.q)
    payload = {"r": ns.r, "s": ns.s, "p": ns.p, "q": ns.q, "classification": str(cls)}
    return payload, [str(cls)], [["r", "s", "p", "q", "classification"],
                                 [str(ns.r), str(ns.s), str(ns.p), str(ns.q), str(cls)]]


# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="realverlinde", description="Level-k Verlinde rings and their Real refinements.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, level=True):
        sp.add_argument("--family", required=True, choices=list("ABCDEFG"), type=str.upper)
        sp.add_argument("--rank", required=True, type=int)
        if level:
            sp.add_argument("--level", type=int, default=0)
        sp.add_argument("--format", dest="fmt", choices=FORMATS, default="table")
        sp.add_argument("--json", metavar="OUT", help="also write the JSON export to OUT")

    def engine(sp):
        sp.add_argument("--no-cache", action="store_true")
        sp.add_argument("--cache-dir", help="cache directory (default $REALVERLINDE_CACHE or ~/.cache)")
        sp.add_argument("--max-alcove", type=int, default=MAX_ALCOVE_SIZE,
                        help="largest level set to accept; raising it costs memory and time")
        sp.add_argument("--max-steps", type=int, default=MAX_REFLECTION_STEPS,
                        help="reflection-step guard per constituent")
        sp.add_argument("--workers", type=int, default=None, help="worker processes for table fill")

    def involution(sp):
        sp.add_argument("--preset", choices=PRESETS, default="trivial_involution")
        sp.add_argument("--involution", metavar="CONFIG", help="TOML or JSON involution config")

    common(sub.add_parser("describe", help="root datum summary"), level=False)
    sp = sub.add_parser("fusion", help="level-k fusion table")
    common(sp)
    engine(sp)
    sp = sub.add_parser("real", help="Real basis, products and ideal generators")
    common(sp)
    engine(sp)
    involution(sp)
    sp.add_argument("--ik-generators", metavar="FILE", help="JSON list of I_k generators")
    sp = sub.add_parser("validate", help="check involution data and cross-method fusion")
    common(sp)
    engine(sp)
    involution(sp)
    sp = sub.add_parser("spinc", help="Real Spin^c classification of R^{r,s} with a (p,q) structure")
    for name in ("r", "s", "p", "q"):
        sp.add_argument(f"--{name}", type=int, required=True)
    sp.add_argument("--format", dest="fmt", choices=FORMATS, default="table")
    sp.add_argument("--json", metavar="OUT")
    return p


def _emit(fmt: str, payload, lines, rows, out):
    if fmt == "json":
        out.write(canonical_json(payload))
    elif fmt == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(rows)
        out.write(buf.getvalue())
    else:
        out.write("\n".join(lines) + "\n")


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    ns = build_parser().parse_args(argv)
    try:
        code = 0
        if ns.command == "spinc":
            payload, lines, rows = cmd_spinc(ns)
        else:
            cfg = JobConfig.from_args(ns)
            if ns.command == "describe":
                payload, lines, rows = cmd_describe(cfg)
            elif ns.command == "fusion":
                payload, lines, rows = cmd_fusion(cfg)
            elif ns.command == "real":
                payload, lines, rows = cmd_real(cfg)
            else:
                payload, lines, rows, code = cmd_validate(cfg)
        if getattr(ns, "json", None):
            Path(ns.json).write_text(canonical_json(payload), encoding="utf-8")
        _emit(ns.fmt, payload, lines, rows, out)
        return code
    except VerlindeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
