"""Positivity checks for the dimension difference D = d(g) - d(h) - d(l).

Each case record fixes an ambient family, a pair of subalgebra
archetypes, their d-polynomials in (a, b, n), the stated lower bound for
D, and the declared exceptional regions.  Verification scans every
integer point of the constrained region and demands D > 0 away from the
exceptions, D = 0 exactly on the zero-regions, and the recorded special
value on the positive ones.  Claimed bounds are checked separately and
can only produce warnings.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Optional

from .catalog import CatalogError, data_path, load_catalog, parse_cat_lines
from .exprs import ConstraintSet, Expr, parse, poly_equal

VARS = ("a", "b", "n")

EXPECTED_RECORDS = 36


@dataclass(frozen=True)
class CaseException:
    region: ConstraintSet
    kind: str  # "positive" or "zero"
    flavor: str  # "special", "split" or "symmetric"
    value: Optional[Expr]
    reason: str


@dataclass(frozen=True)
class CaseRecord:
    family: str
    pair: str
    dg: Expr
    dh: Expr
    dl: Expr
    difference: Expr
    constraints: ConstraintSet
    bound: Optional[Expr]
    bound_raw: Optional[str]
    relation: str  # "ge", "eq" or "none"
    exceptions: tuple[CaseException, ...]
    note: str

    @property
    def key(self) -> tuple[str, str]:
        return (self.family, self.pair)


def _equality_substitution(constraints: ConstraintSet) -> dict[str, Expr]:
    """{var: expr} for every `x = expr` or `expr = x` equality atom."""
    out: dict[str, Expr] = {}
    for lhs, rhs in constraints.equalities():
        if rhs.node[0] == "var":
            out[rhs.node[1]] = lhs
        elif lhs.node[0] == "var":
            out[lhs.node[1]] = rhs
    return out


def _parse_exceptions(text: str) -> tuple[CaseException, ...]:
    out = []
    for clause in text.split("|"):
        clause = clause.strip()
        if not clause:
            continue
        head, _, reason = clause.partition("::")
        region_text, sep, action = head.partition("=>")
        if not sep:
            raise CatalogError(f"exception clause without '=>': {clause!r}")
        tokens = action.split()
        if tokens[0] == "positive":
            out.append(
                CaseException(
                    ConstraintSet(region_text.replace("&", ",")),
                    "positive",
                    "special",
                    parse(tokens[1]),
                    reason.strip(),
                )
            )
        elif tokens[0] == "zero" and tokens[1] in ("split", "symmetric"):
            out.append(
                CaseException(
                    ConstraintSet(region_text.replace("&", ",")),
                    "zero",
                    tokens[1],
                    None,
                    reason.strip(),
                )
            )
        else:
            raise CatalogError(f"unknown exception action {action!r}")
    return tuple(out)


def _substituted(record: CaseRecord, e: Expr) -> Expr:
    sub = _equality_substitution(record.constraints)
    return e.substitute(sub) if sub else e


@lru_cache(maxsize=None)
def _load_cases_from(path: str) -> tuple[CaseRecord, ...]:
    text = Path(path).read_text(encoding="utf-8")
    records = []
    for rec in parse_cat_lines(text):
        bound = parse(rec["bound"]) if "bound" in rec else None
        record = CaseRecord(
            family=rec["family"],
            pair=rec["pair"],
            dg=parse(rec["dg"]),
            dh=parse(rec["dh"]),
            dl=parse(rec["dl"]),
            difference=parse(rec["D"]),
            constraints=ConstraintSet(rec["constraints"]),
            bound=bound,
            bound_raw=rec.get("bound_raw"),
            relation=rec.get("rel", "none"),
            exceptions=_parse_exceptions(rec.get("exceptions", "")),
            note=rec.get("note", ""),
        )
        if record.bound is None and record.bound_raw is None:
            raise CatalogError(f"{record.key}: no bound and no raw bound text")
        # the stored difference must agree with the stored components
        if not poly_equal(
            _substituted(record, record.difference),
            _substituted(record, record.dh),
            _substituted(record, record.dl),
            minus=[_substituted(record, record.dg)],
        ):
            raise CatalogError(f"{record.key}: D does not equal dg - dh - dl")
        records.append(record)
    if len(records) != EXPECTED_RECORDS:
        raise CatalogError(f"expected {EXPECTED_RECORDS} case records, found {len(records)}")
    return tuple(records)


def load_cases(data_dir=None) -> tuple[CaseRecord, ...]:
    return _load_cases_from(str(data_path("cases531.cat", data_dir)))


def region_points(record: CaseRecord, n: int) -> list[tuple[int, int]]:
    """Integer points (a, b) of the constrained region at this n."""
    sat = record.constraints.compile(VARS)
    return [
        (a, b)
        for a in range(1, n + 2)
        for b in range(1, n + 2)
        if sat(a, b, n)
    ]


def verify_case(record: CaseRecord, n_max: int = 60, n_min: int = 2) -> dict:
    """Scan the region; return points checked, failures, exception usage."""
    diff = record.difference.compile(VARS)
    sat = record.constraints.compile(VARS)
    exc = [(e.region.compile(VARS), e) for e in record.exceptions]
    points = 0
    failures: list[dict] = []
    hits = [0] * len(exc)
    for n in range(n_min, n_max + 1):
        for a in range(1, n + 2):
            for b in range(1, n + 2):
                if not sat(a, b, n):
                    continue
                points += 1
                value = diff(a, b, n)
                matched = [i for i, (fn, _) in enumerate(exc) if fn(a, b, n)]
                if len(matched) > 1:
                    failures.append({"point": (a, b, n), "why": "overlapping exception regions"})
                    continue
                if matched:
                    i = matched[0]
                    hits[i] += 1
                    e = exc[i][1]
                    if e.kind == "zero":
                        if value != 0:
                            failures.append(
                                {"point": (a, b, n), "why": f"expected zero, got {value}"}
                            )
                    else:
                        expected = e.value.evaluate({"a": a, "b": b, "n": n})
                        if value != expected or value <= 0:
                            failures.append(
                                {
                                    "point": (a, b, n),
                                    "why": f"expected positive {expected}, got {value}",
                                }
                            )
                elif value <= 0:
                    failures.append({"point": (a, b, n), "why": f"non-positive D = {value}"})
    for i, count in enumerate(hits):
        if count == 0:
            failures.append(
                {"point": None, "why": f"exception region {i} never met in the scanned range"}
            )
    return {
        "family": record.family,
        "pair": record.pair,
        "points": points,
        "failures": failures,
        "exception_hits": hits,
        "ok": not failures,
    }


def check_claimed_bound(record: CaseRecord, n_max: int = 40, n_min: int = 2) -> dict:
    """Compare D against the stated lower bound; warnings only, never failures."""
    if record.bound is None:
        return {
            "family": record.family,
            "pair": record.pair,
            "status": "unparseable",
            "raw": record.bound_raw,
            "warnings": [],
        }
    warnings: list[str] = []
    exact = poly_equal(
        _substituted(record, record.difference),
        minus=[_substituted(record, record.bound)],
    )
    if record.relation == "eq" and not exact:
        warnings.append("stated as an equality but the difference is not identically zero")
    if exact:
        return {
            "family": record.family,
            "pair": record.pair,
            "status": "exact",
            "warnings": warnings,
        }
    diff = record.difference.compile(VARS)
    bound = record.bound.compile(VARS)
    sat = record.constraints.compile(VARS)
    bad = []
    for n in range(n_min, n_max + 1):
        for a in range(1, n + 2):
            for b in range(1, n + 2):
                if sat(a, b, n) and diff(a, b, n) < bound(a, b, n):
                    bad.append((a, b, n))
    if bad:
        warnings.append(f"bound exceeds D at {len(bad)} points, first {bad[0]}")
    return {
        "family": record.family,
        "pair": record.pair,
        "status": "pointwise",
        "warnings": warnings,
    }


_AMBIENT_MAP = {
    "A2n_su": ("su", None, {"a": "a+b", "t": "2*n"}),
    "A2n1_sustar": ("su_star", None, {"t": "2*n+1"}),
    "A2n1_su": ("su", None, {"a": "a+b", "t": "2*n+1"}),
    "Cn_sp": ("sp", None, {"a": "a+b", "t": "n"}),
    "Bn_so": ("so", "B", {"a": "a+b", "t": "n"}),
    "Dn_sostar": ("so_star", None, {"t": "n"}),
    "Dn_so": ("so", "D", {"a": "a+b", "t": "n"}),
}


def cross_check_ambient(record: CaseRecord, catalog=None) -> bool:
    """Does the stored d(g) match the catalog entry for the ambient family?"""
    catalog = catalog or load_catalog()
    template, family, mapping = _AMBIENT_MAP[record.family]
    entry = catalog.get(template, family)
    formula = entry.d_formula.substitute({k: parse(v) for k, v in mapping.items()})
    return poly_equal(
        _substituted(record, formula), minus=[_substituted(record, record.dg)]
    )


def _verify_one(args: tuple) -> tuple[int, dict, dict]:
    index, n_max, data_dir = args
    record = load_cases(data_dir)[index]
    return (index, verify_case(record, n_max=n_max), check_claimed_bound(record))


def verify_all_cases(n_max: int = 60, data_dir=None, jobs: Optional[int] = None) -> dict:
    """Scan all records; report per-case results plus bound statuses."""
    records = load_cases(data_dir)
    tasks = [(i, n_max, str(data_dir) if data_dir is not None else None) for i in range(len(records))]
    if jobs and jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = sorted(pool.map(_verify_one, tasks))
    else:
        results = [_verify_one(t) for t in tasks]
    cases = [r for _, r, _ in results]
    bounds = [b for _, _, b in results]
    unparseable = [b for b in bounds if b["status"] == "unparseable"]
    return {
        "cases": cases,
        "bounds": bounds,
        "records": len(records),
        "unparseable_bounds": [(b["family"], b["pair"]) for b in unparseable],
        "ok": all(c["ok"] for c in cases),
    }
