"""Command-line interface.

Three subcommands: ``roots`` describes one root system, ``check-triple``
tests the two additivity identities on a concrete triple of real forms, and
``verify`` runs a named verification suite (or ``all`` of them).

Exit codes: 0 every check passed, 1 a verification failed, 2 bad usage or
unreadable data, 3 an internal invariant broke.
"""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import criteria, inequalities, regular, tables
from .catalog import CatalogError, load_catalog
from .exprs import EvalError, ParseError
from .report import SCHEMA, render
from .roots import (
    CartanType,
    InternalError,
    build_root_system,
    cartan_matrix,
    extended_diagram,
    two_hyperplane_cover_check,
    weyl_dim,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3

_TYPE_RE = re.compile(r"^\s*([A-Ga-g])\s*\(?\s*(\d+)\s*\)?\s*$")


def _parse_type(text: str) -> CartanType:
    m = _TYPE_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse type {text!r} (expected something like B4 or E(8))")
    return CartanType(m.group(1).upper(), int(m.group(2)))


def _catalog_for(args):
    if args.data_dir:
        return load_catalog(Path(args.data_dir) / "realforms.cat")
    return load_catalog()


def _indecomposable_types(rank_bound: int) -> list[CartanType]:
    out = [CartanType("A", rank) for rank in range(1, rank_bound + 1)]
    for family, lo in (("B", 2), ("C", 2), ("D", 3)):
        out.extend(CartanType(family, rank) for rank in range(lo, rank_bound + 1))
    for family, rank in (("G", 2), ("F", 4), ("E", 6), ("E", 7), ("E", 8)):
        if rank <= rank_bound:
            out.append(CartanType(family, rank))
    return out


# ---------------------------------------------------------------------------
# subcommand payloads

def _run_roots(args) -> dict:
    t = _parse_type(args.type)
    rs = build_root_system(t)
    ext = extended_diagram(rs)
    npos = len(rs.positive_roots)
    rows = []
    for i in range(1, t.rank + 1):
        weight = [1 if j == i - 1 else 0 for j in range(t.rank)]
        rows.append(
            {
                "node": i,
                "mark": ext.marks[i],
                "length": "short" if rs.d[i - 1] == min(rs.d) else "long",
                "fundamental_dim": weyl_dim(t, weight),
                "cartan_row": list(cartan_matrix(t)[i - 1]),
            }
        )
    return {
        "type": str(t),
        "rank": t.rank,
        "roots": 2 * npos,
        "positive_roots": npos,
        "coxeter_number": 2 * npos // t.rank,
        "extended_edges": [list(e) for e in ext.edges],
        "rows": rows,
    }


def _run_check_triple(args) -> dict:
    raw = criteria.check_triple(_catalog_for(args), args.g, args.h, args.l, n=args.n)
    return {
        "cocompact": raw["cocompact"],
        "rank_additive": raw["rank_additive"],
        "ok": raw["ok"],
        "rows": [{"part": part, **raw[part]} for part in ("g", "h", "l")],
    }


# ---------------------------------------------------------------------------
# verification targets

def _run_table1(args) -> dict:
    return criteria.verify_table1(
        catalog=_catalog_for(args), n_max=args.n_max, data_dir=args.data_dir
    )


def _run_inequalities(args) -> dict:
    res = inequalities.verify_all_cases(
        n_max=args.n_max, data_dir=args.data_dir, jobs=args.jobs
    )
    catalog = _catalog_for(args)
    records = inequalities.load_cases(args.data_dir)
    ambient = [inequalities.cross_check_ambient(rec, catalog) for rec in records]
    for case, bound, amb in zip(res["cases"], res["bounds"], ambient):
        case["bound_status"] = bound["status"]
        case["bound_warnings"] = bound["warnings"]
        case["ambient_match"] = amb
    res["ambient_ok"] = all(ambient)
    res["ok"] = res["ok"] and res["ambient_ok"]
    return res


def _run_lemma4(args) -> dict:
    rank_bound = args.rank_bound if args.rank_bound is not None else 4
    rows = []
    for t in _indecomposable_types(rank_bound):
        covered = two_hyperplane_cover_check(build_root_system(t))
        rows.append({"type": str(t), "covered": covered, "ok": not covered})
    return {"rank_bound": rank_bound, "rows": rows, "ok": all(r["ok"] for r in rows)}


def _run_tables(args) -> dict:
    consistency = tables.table_consistency_report(data_dir=args.data_dir)
    fundamental = tables.fundamental_table_check(
        rank_bound=args.rank_bound if args.rank_bound is not None else 8
    )
    rows = list(consistency["rows"])
    for rep in fundamental["types"]:
        rows.append(
            {
                "type": rep["type"],
                "all_match": rep["all_match"],
                "mismatches": [e for e in rep["entries"] if not e["match"]],
            }
        )
    return {
        "n_max": consistency["n_max"],
        "k_max": consistency["k_max"],
        "flagged": consistency["flagged"],
        "fundamental_rank_bound": fundamental["rank_bound"],
        "rows": rows,
        "ok": consistency["ok"] and fundamental["ok"],
    }


def _run_maximal_rank(args) -> dict:
    return regular.maximal_rank_table_check(
        data_dir=args.data_dir,
        l_max=args.rank_bound if args.rank_bound is not None else 8,
    )


def _run_rank_bound(args) -> dict:
    return tables.derive_rank_pairs(
        rank_bound=args.rank_bound if args.rank_bound is not None else 8,
        data_dir=args.data_dir,
    )


def _run_substitutions(args) -> dict:
    return criteria.substitution_check(catalog=_catalog_for(args))


def _run_g2(args) -> dict:
    return criteria.g2_elimination(catalog=_catalog_for(args), data_dir=args.data_dir)


_VERIFY = {
    "table1": _run_table1,
    "inequalities": _run_inequalities,
    "lemma4": _run_lemma4,
    "tables": _run_tables,
    "maximal-rank": _run_maximal_rank,
    "rank-bound": _run_rank_bound,
    "substitutions": _run_substitutions,
    "g2": _run_g2,
}

_ALL_ORDER = (
    "table1",
    "inequalities",
    "lemma4",
    "tables",
    "maximal-rank",
    "rank-bound",
    "substitutions",
    "g2",
)


def _run_verify(args) -> dict:
    if args.target == "all":
        targets = {}
        rows = []
        for name in _ALL_ORDER:
            payload = _VERIFY[name](args)
            targets[name] = payload
            rows.append({"target": name, "ok": payload["ok"]})
        return {"targets": targets, "rows": rows, "ok": all(r["ok"] for r in rows)}
    return _VERIFY[args.target](args)


# ---------------------------------------------------------------------------
# parser and entry point

def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")


def _add_data(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--data-dir",
        default=None,
        help="directory holding the .cat data files "
        "(default: $LIECK_DATA_DIR, else the packaged data)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lieck", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("roots", help="describe the root system of one simple type")
    p.add_argument("type", help="a simple type, e.g. B4 or E(8)")
    _add_output(p)
    p.set_defaults(run=_run_roots, target_name="roots")

    p = sub.add_parser(
        "check-triple", help="test both additivity identities on one triple g, h, l"
    )
    p.add_argument("g")
    p.add_argument("h")
    p.add_argument("l")
    p.add_argument("--n", type=int, default=None, help="value for the free parameter n")
    _add_output(p)
    _add_data(p)
    p.set_defaults(run=_run_check_triple, target_name="check-triple")

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("target", choices=("all",) + tuple(_ALL_ORDER))
    p.add_argument("--n-max", type=int, default=60, help="parameter scan limit (default 60)")
    p.add_argument(
        "--rank-bound",
        type=int,
        default=None,
        help="rank limit for enumerations (default 8; lemma4 defaults to 4, "
        "its cost grows steeply with rank)",
    )
    p.add_argument("--jobs", type=int, default=None, help="worker processes where supported")
    _add_output(p)
    _add_data(p)
    p.set_defaults(run=_run_verify, target_name=None)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        payload = args.run(args)
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (CatalogError, ParseError, EvalError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # pragma: no cover - last-resort classification
        print(f"internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL
    report = {"schema": SCHEMA, "target": args.target_name or args.target}
    report.update(payload)
    sys.stdout.write(render(report, args.format))
    return EXIT_OK if report.get("ok", True) else EXIT_FAILED


if __name__ == "__main__":
    raise SystemExit(main())
