"""Verification runs: a fixed list of checks, each producing one record."""
from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass, field
from typing import Callable

from . import aut, curve, numsg, polyid, quotients
from .tower import build_tower, prime_power

FORMATS = ("json", "csv", "md", "text")


@dataclass
class RunConfig:
    n: int
    checks: tuple[str, ...] = ()
    format: str = "text"
    emit: str | None = None
    output: str | None = None
    max_field_size: int = curve.DEFAULT_MAX_ENUM_FIELD
    max_closure: int = aut.DEFAULT_MAX_CLOSURE
    timing: bool = True
    m: int | None = None

    def __post_init__(self):
        pp = prime_power(self.n)
        if pp is None:
            raise ValueError(f"n = {self.n} is not a prime power")
        self.p, self.h = pp
        if self.format not in FORMATS:
            raise ValueError(f"unknown format {self.format!r}")
        if self.max_field_size <= 0 or self.max_closure <= 0:
            raise ValueError("caps must be positive")
        unknown = set(self.checks) - set(CHECKS)
        if unknown:
            raise ValueError(f"unknown checks: {sorted(unknown)}")


@dataclass
class Record:
    name: str
    statement: str
    expected: object
    observed: object
    passed: bool
    runtime: float = 0.0
    detail: dict | None = None  # informational, not compared

    def as_dict(self, timing: bool = True) -> dict:
        d = {
            "name": self.name,
            "statement": self.statement,
            "expected": self.expected,
            "observed": self.observed,
            "pass": self.passed,
        }
        if self.detail:
            d["detail"] = self.detail
        if timing:
            d["runtime"] = round(self.runtime, 4)
        return d


@dataclass
class VerificationReport:
    n: int
    tower: dict
    records: list[Record] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def as_dict(self, timing: bool = True) -> dict:
        return {
            "n": self.n,
            "tower": self.tower,
            "records": [r.as_dict(timing) for r in self.records],
            "pass": self.passed,
        }

    def render(self, fmt: str, timing: bool = True) -> str:
        rows = [r.as_dict(timing) for r in self.records]
        if fmt == "json":
            return json.dumps(self.as_dict(timing), indent=2, sort_keys=True) + "\n"
        if fmt == "csv":
            buf = io.StringIO()
            cols = ["name", "statement", "expected", "observed", "pass"] + (["runtime"] if timing else [])
            w = csv.DictWriter(buf, cols, lineterminator="\n")
            w.writeheader()
            for r in rows:
                w.writerow({k: _flat(v) for k, v in r.items()})
            return buf.getvalue()
        if fmt == "md":
            cols = ["name", "statement", "expected", "observed", "pass"] + (["runtime"] if timing else [])
            lines = [f"# n = {self.n}, tower {_flat(self.tower)}", ""]
            lines.append("| " + " | ".join(cols) + " |")
            lines.append("|" + "---|" * len(cols))
            for r in rows:
                lines.append("| " + " | ".join(_flat(r[c]).replace("|", "\\|") for c in cols) + " |")
            lines += ["", f"overall: {'PASS' if self.passed else 'FAIL'}"]
            return "\n".join(lines) + "\n"
        lines = [f"n = {self.n}  tower {_flat(self.tower)}"]
        for r in rows:
            tag = "PASS" if r["pass"] else "FAIL"
            extra = f"  [{r['runtime']:.3f}s]" if timing else ""
            lines.append(f"{tag}  {r['name']}: {_flat(r['observed'])} (expected {_flat(r['expected'])}){extra}")
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines) + "\n"


def _flat(v) -> str:
    if isinstance(v, (dict, list, tuple)):
        return json.dumps(v, sort_keys=True)
    return str(v)


class Context:
    """Lazily built shared inputs, so each check only pays for what it needs."""

    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.n = cfg.n
        self.tower = build_tower(cfg.p, cfg.h)
        self._points = None

    @property
    def points(self) -> curve.CurvePointSet:
        if self._points is None:
            self._points = curve.enumerate_points(self.tower, self.cfg.max_field_size)
        return self._points


# Each check returns (statement, expected, observed[, detail]); pass means expected == observed.
CheckFn = Callable[[Context], tuple]


def _identities(ctx):
    r = polyid.verify_h_identities(ctx.tower)
    return "h(X) polynomial identities", {"factor": True, "power": True, "difference": True}, {
        "factor": r.factor,
        "power": r.power,
        "difference": r.difference,
    }


def _maximality(ctx):
    return "rational point count attains q^2+1+2gq", curve.expected_point_count(ctx.n), len(ctx.points)


def _hermitian(ctx):
    return "curve lies on the Hermitian surface", True, curve.verify_on_hermitian_surface(ctx.points)


def _smoothness(ctx):
    rep = curve.smoothness_affine(ctx.points)
    return "Jacobian rank 2 at affine points", {"all_rank2": True, "checked": len(ctx.points) - 1}, {
        "all_rank2": rep.all_rank2,
        "checked": rep.checked,
    }


def _genus(ctx):
    g = curve.genus(ctx.n)
    return "genus: closed form = telescopic = gap count", [g, g, g], list(numsg.genus_three_ways(ctx.n))


def _hurwitz(ctx):
    fixed = sorted({aut.fixed_points(c, ctx.points) for c in aut.cyclic_generators(ctx.tower)[1:]})
    return "Hurwitz arithmetic and fixed points of C_{n^2-n+1}", {
        "identity": True,
        "fixed_points": [ctx.n**3 + 1],
    }, {"identity": aut.hurwitz_genus_check(ctx.n), "fixed_points": fixed}


def _aut_preserves(ctx):
    gens = aut.all_generators(ctx.tower)
    return "all generator collineations permute the points", True, aut.verify_preserves(gens, ctx.points)


def _aut_order(ctx):
    try:
        order = aut.group_closure(aut.all_generators(ctx.tower), ctx.cfg.max_closure).order
    except aut.ClosureLimitError as exc:
        order = f"limit exceeded: {exc}"
    return "automorphism group order n^3(n^3+1)(n^2-1)(n^2-n+1)", aut.aut_order(ctx.n), order


def _covering(ctx):
    try:
        count = len(ctx.points)
    except curve.ResourceLimitError:
        count = curve.expected_point_count(ctx.n)
    ob = curve.covering_obstruction(ctx.n, count)
    detail = {"m_max_genus": ob.m_max_genus, "m_min_count": ob.m_min_count, "point_count": count}
    return "no cover by the Hermitian curve for n > 2", {"contradiction": ctx.n > 2}, {"contradiction": ob.contradiction}, detail


def _semigroup(ctx):
    n = ctx.n
    gens = numsg.weierstrass_generators(n)
    data = numsg.is_telescopic(gens)
    sg = numsg.weierstrass_semigroup(n)
    decomp_ok = all(
        sum(j * a for j, a in zip(numsg.decompose(gens, m), gens)) == m for m in sg.nongaps(sg.conductor + 20)
    )
    expected = {"order_sequence": [0, 1, n * n - n + 1, n**3 + 1], "telescopic": True, "decompose": True}
    observed = {"order_sequence": list(numsg.order_sequence(n)), "telescopic": data.telescopic, "decompose": decomp_ok}
    return "Weierstrass semigroup at infinity and order sequence", expected, observed


def _rr_values(ctx) -> list[int]:
    g = curve.genus(ctx.n)
    if ctx.cfg.m is not None:
        return [ctx.cfg.m]
    if ctx.n <= 3:
        return list(range(0, 2 * g + 11))
    return [0, g, 2 * g - 1, 2 * g + 10]


def _rr(ctx):
    n, g = ctx.n, curve.genus(ctx.n)
    sg = numsg.weierstrass_semigroup(n)
    ms = _rr_values(ctx)
    sizes_ok = all(
        len(numsg.rr_basis(n, m)) == len(sg.nongaps(m)) and (m < 2 * g - 1 or len(numsg.rr_basis(n, m)) == m + 1 - g)
        for m in ms
    )
    indep = all(numsg.rr_independence_check(n, m, ctx.points) for m in ms)
    return f"Riemann-Roch bases for m in {ms[0]}..{ms[-1]}", {"sizes": True, "independent": True}, {
        "sizes": sizes_ok,
        "independent": indep,
    }


def _quotients(ctx):
    rows = quotients.quotient_table(ctx.n)
    return "quotients by C_d: Hurwitz exact, d >= 7 gives |G1| > 24 g1^2", {"hurwitz": True, "large_for_d_ge_7": True}, {
        "hurwitz": all(r.hurwitz_ok for r in rows),
        "large_for_d_ge_7": all(r.large for r in rows if r.d >= 7),
    }


CHECKS: dict[str, CheckFn] = {
    "identities": _identities,
    "maximality": _maximality,
    "hermitian": _hermitian,
    "smoothness": _smoothness,
    "genus": _genus,
    "hurwitz": _hurwitz,
    "aut-preserves": _aut_preserves,
    "aut-order": _aut_order,
    "covering": _covering,
    "semigroup": _semigroup,
    "rr": _rr,
    "quotients": _quotients,
}


def run(cfg: RunConfig) -> VerificationReport:
    ctx = Context(cfg)
    report = VerificationReport(cfg.n, ctx.tower.fingerprint())
    selected = cfg.checks or tuple(CHECKS)
    for name in CHECKS:  # declaration order, whatever order they were requested in
        if name not in selected:
            continue
        t0 = time.perf_counter()
        try:
            statement, expected, observed, *detail = CHECKS[name](ctx)
        except (curve.ResourceLimitError, aut.ClosureLimitError, numsg.SemigroupError) as exc:
            statement, expected, observed, detail = name, "completed", f"error: {exc}", []
        elapsed = time.perf_counter() - t0
        report.records.append(
            Record(name, statement, expected, observed, expected == observed, elapsed, detail[0] if detail else None)
        )
    return report
