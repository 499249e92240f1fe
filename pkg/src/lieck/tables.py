"""Cataloged dimension tables and their mechanical cross-checks.

Two kinds of rows live in the data files.  ``table2.cat`` and ``table3.cat``
describe irreducible inclusions between classical algebras together with a
dimension formula for an attached family of modules; the consistency report
evaluates every formula on an integer grid and flags values that fail the
checks a dimension must pass (integrality, positivity, and --- where the row
names its ambient algebra --- agreement with the size of the defining
module).  ``table4.cat`` holds closed forms for the dimensions of fundamental
modules of the classical types; :func:`closed_fundamental_dim` resolves them
and is the reference the Weyl-formula check in :mod:`.roots` compares
against.

Rows carry an ``expect`` field ("clean" or "flagged") recording which rows
are supposed to survive the checks, so a report is ``ok`` exactly when the
computed flags reproduce the expected pattern.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Optional

from .catalog import CatalogError, data_path, parse_cat_lines
from .exprs import ConstraintSet, Expr, parse
from .regular import VIOLATION, rank_bound_check
from .roots import CartanType, InternalError, fundamental_dim_check

_EXPECTED_ROWS = {2: 6, 3: 3, 4: 7}

TypeTerm = tuple[str, Expr]  # (family letter, rank expression in n)


@dataclass(frozen=True)
class DimRow:
    """One inclusion row with its dimension formula."""

    table: int
    row: int
    sub: Optional[TypeTerm]
    ambient: Optional[TypeTerm]
    dim: Expr
    cond: ConstraintSet
    indicator: Optional[str]
    expect: str
    note: str = ""


@dataclass(frozen=True)
class FundamentalRow:
    """Closed form for fundamental-module dimensions on one branch."""

    row: int
    family: str
    dim: Expr
    cond: ConstraintSet
    indicator: str


def _parse_term(text: str) -> Optional[TypeTerm]:
    if text == "-":
        return None
    m = re.fullmatch(r"([A-G])\((.+)\)", text)
    if m is None:
        raise CatalogError(f"bad type term {text!r}")
    return (m.group(1), parse(m.group(2)))


def _term_str(term: Optional[TypeTerm]) -> Optional[str]:
    return None if term is None else f"{term[0]}({term[1]})"


@lru_cache(maxsize=None)
def _load_dim_file(path_str: str) -> tuple[DimRow, ...]:
    rows = []
    for rec in parse_cat_lines(Path(path_str).read_text()):
        rows.append(
            DimRow(
                table=int(rec["table"]),
                row=int(rec["row"]),
                sub=_parse_term(rec["sub"]),
                ambient=_parse_term(rec["amb"]),
                dim=parse(rec["dim"]),
                cond=ConstraintSet(rec.get("cond", "")),
                indicator=rec.get("indicator"),
                expect=rec["expect"],
                note=rec.get("note", ""),
            )
        )
    return tuple(rows)


def load_dim_rows(data_dir=None) -> tuple[DimRow, ...]:
    """All inclusion/dimension rows, in file order."""
    out: list[DimRow] = []
    for name, table in (("table2.cat", 2), ("table3.cat", 3)):
        rows = _load_dim_file(str(data_path(name, data_dir)))
        if len(rows) != _EXPECTED_ROWS[table]:
            raise CatalogError(
                f"{name}: expected {_EXPECTED_ROWS[table]} rows, got {len(rows)}"
            )
        if any(r.table != table for r in rows):
            raise CatalogError(f"{name}: rows tagged with the wrong table number")
        out.extend(rows)
    return tuple(out)


@lru_cache(maxsize=None)
def _load_fundamental_file(path_str: str) -> tuple[FundamentalRow, ...]:
    rows = []
    for rec in parse_cat_lines(Path(path_str).read_text()):
        family = rec["family"]
        if family not in "ABCD":
            raise CatalogError(f"closed forms cover classical families, got {family!r}")
        rows.append(
            FundamentalRow(
                row=int(rec["row"]),
                family=family,
                dim=parse(rec["dim"]),
                cond=ConstraintSet(rec["cond"]),
                indicator=rec["indicator"],
            )
        )
    return tuple(rows)


def load_fundamental_rows(data_dir=None) -> tuple[FundamentalRow, ...]:
    rows = _load_fundamental_file(str(data_path("table4.cat", data_dir)))
    if len(rows) != _EXPECTED_ROWS[4]:
        raise CatalogError(f"table4.cat: expected {_EXPECTED_ROWS[4]} rows, got {len(rows)}")
    return rows


def closed_fundamental_dim(t: CartanType, r: int, data_dir=None) -> int:
    """Closed-form dimension of the ``r``-th fundamental module of ``t``.

    Exactly one cataloged branch must apply; the value must be a positive
    integer.  Defined for the classical families only.
    """
    if t.family not in "ABCD":
        raise ValueError(f"no closed form for {t}")
    if not 1 <= r <= t.rank:
        raise ValueError(f"node index {r} out of range for {t}")
    env = {"t": t.rank, "r": r}
    hits = [
        row
        for row in load_fundamental_rows(data_dir)
        if row.family == t.family and row.cond.satisfies(env)
    ]
    if len(hits) != 1:
        raise InternalError(f"{len(hits)} closed forms apply to {t} node {r}")
    value = hits[0].dim.evaluate(env)
    if value.denominator != 1 or value <= 0:
        raise InternalError(f"closed form for {t} node {r} gave {value}")
    return value.numerator


def fundamental_table_check(rank_bound: int = 8) -> dict:
    """Compare every closed form with the Weyl dimension formula."""
    reports = []
    for family, lo in (("A", 1), ("B", 2), ("C", 2), ("D", 3)):
        for rank in range(lo, rank_bound + 1):
            reports.append(fundamental_dim_check(CartanType(family, rank)))
    return {
        "rank_bound": rank_bound,
        "types": reports,
        "ok": all(rep["all_match"] for rep in reports),
    }


# ---------------------------------------------------------------------------
# grid evaluation of the inclusion rows

def evaluate_dim(row: DimRow, n: int, k: Optional[int] = None) -> Fraction:
    """Evaluate a row's dimension formula at one grid point."""
    env: dict[str, int] = {"n": n}
    if k is not None:
        env["k"] = k
    missing = (row.dim.free_vars | row.cond.free_vars) - env.keys()
    if missing:
        raise ValueError(f"row {row.table}.{row.row} needs {sorted(missing)}")
    if not row.cond.satisfies(env):
        raise ValueError(f"({n}, {k}) is outside the checked range {row.cond}")
    return row.dim.evaluate(env)


def _uses_k(row: DimRow) -> bool:
    return "k" in (row.dim.free_vars | row.cond.free_vars)


def _grid(row: DimRow, n_max: int, k_max: int):
    ks = range(1, k_max + 1) if _uses_k(row) else (None,)
    for n in range(1, n_max + 1):
        for k in ks:
            env = {"n": n} if k is None else {"n": n, "k": k}
            if row.cond.satisfies(env):
                yield n, k, env


def _ambient_rank(row: DimRow, n: int) -> int:
    rank = row.ambient[1].evaluate({"n": n})
    if rank.denominator != 1 or rank < 1:
        raise InternalError(f"row {row.table}.{row.row}: ambient rank {rank} at n={n}")
    return rank.numerator


def _defining_size(family: str, rank: int) -> int:
    return {"A": rank + 1, "B": 2 * rank + 1, "C": 2 * rank, "D": 2 * rank}[family]


def _defining_check(row: DimRow, n_max: int) -> Optional[dict]:
    """At k=1 the formula should give the size of the ambient defining module."""
    if row.ambient is None:
        return None
    k = 1 if _uses_k(row) else None
    points = 0
    mismatches = []
    for n in range(1, n_max + 1):
        env = {"n": n} if k is None else {"n": n, "k": k}
        if not row.cond.satisfies(env):
            continue
        target = _defining_size(row.ambient[0], _ambient_rank(row, n))
        value = row.dim.evaluate(env)
        points += 1
        if value != target:
            mismatches.append([n, str(value), target])
    return {"points": points, "mismatches": mismatches[:4], "ok": not mismatches}


def _spin_check(row: DimRow, n_max: int) -> Optional[dict]:
    """For an even orthogonal ambient, also compare k=1 with its half-spin size."""
    if row.ambient is None or row.ambient[0] != "D" or not _uses_k(row):
        return None
    points = 0
    mismatches = []
    for n in range(1, n_max + 1):
        env = {"n": n, "k": 1}
        if not row.cond.satisfies(env):
            continue
        rank = _ambient_rank(row, n)
        if rank < 3:
            continue
        spin = closed_fundamental_dim(CartanType("D", rank), rank)
        value = row.dim.evaluate(env)
        points += 1
        if value != spin:
            mismatches.append([n, str(value), spin])
    return {"points": points, "mismatches": mismatches[:4], "ok": not mismatches}


def table_consistency_report(n_max: int = 8, k_max: int = 6, data_dir=None) -> dict:
    """Evaluate every inclusion row on a grid and compare flags with ``expect``.

    A row is flagged when any grid value is non-integral or non-positive, or
    when the k=1 value disagrees with the ambient defining size.  The spin
    comparison is reported alongside but does not change the flag on its own.
    """
    rows_out = []
    for row in load_dim_rows(data_dir):
        values = [(n, k, row.dim.evaluate(env)) for n, k, env in _grid(row, n_max, k_max)]
        non_integral = [[n, k, str(v)] for n, k, v in values if v.denominator != 1]
        non_positive = [[n, k, str(v)] for n, k, v in values if v <= 0]
        defining = _defining_check(row, n_max)
        spin = _spin_check(row, n_max)
        flagged = bool(non_integral or non_positive) or (
            defining is not None and not defining["ok"]
        )
        status = "flagged" if flagged else "clean"
        rows_out.append(
            {
                "table": row.table,
                "row": row.row,
                "sub": _term_str(row.sub),
                "ambient": _term_str(row.ambient),
                "dim": str(row.dim),
                "indicator": row.indicator,
                "points": len(values),
                "non_integral": non_integral[:4],
                "non_positive": non_positive[:4],
                "defining_check": defining,
                "spin_check": spin,
                "status": status,
                "expect": row.expect,
                "ok": status == row.expect,
            }
        )
    return {
        "n_max": n_max,
        "k_max": k_max,
        "rows": rows_out,
        "flagged": [[r["table"], r["row"]] for r in rows_out if r["status"] == "flagged"],
        "ok": all(r["ok"] for r in rows_out),
    }


# ---------------------------------------------------------------------------
# rank pairs read off the inclusion rows

def derive_rank_pairs(rank_bound: int = 8, data_dir=None) -> dict:
    """Instantiate every fully named inclusion and run the rank-bound check.

    Bindings are skipped when a rank expression is non-integral, out of the
    family's range, above ``rank_bound``, or gives no proper containment.
    """
    pairs = []
    for row in load_dim_rows(data_dir):
        if row.sub is None or row.ambient is None:
            continue
        sub_fam, sub_expr = row.sub
        amb_fam, amb_expr = row.ambient
        for n in range(1, 4 * rank_bound + 1):
            sub_rank = sub_expr.evaluate({"n": n})
            amb_rank = amb_expr.evaluate({"n": n})
            if sub_rank.denominator != 1 or amb_rank.denominator != 1:
                continue
            si, ai = sub_rank.numerator, amb_rank.numerator
            if ai > rank_bound or si > ai:
                continue
            if si == ai and sub_fam == amb_fam:
                continue  # the identity embedding, not a proper subalgebra
            try:
                g = CartanType(amb_fam, ai)
                h = CartanType(sub_fam, si)
            except ValueError:
                continue
            pairs.append(
                {
                    "table": row.table,
                    "row": row.row,
                    "n": n,
                    "ambient": str(g),
                    "sub": str(h),
                    "status": rank_bound_check(g, h),
                }
            )
    statuses: dict[str, int] = {}
    for p in pairs:
        statuses[p["status"]] = statuses.get(p["status"], 0) + 1
    violations = [p for p in pairs if p["status"] == VIOLATION]
    return {
        "rank_bound": rank_bound,
        "pairs": pairs,
        "statuses": statuses,
        "violations": violations,
        "ok": not violations,
    }
