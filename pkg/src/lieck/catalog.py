"""Catalog of simple real forms of non-compact type.

Each catalog entry records a template (``su``, ``so``, ``sp_R``, ``g2_2``,
...), the complex type it belongs to, the non-compact dimension formula
``d`` and the real-rank formula ``r`` in the parameters ``a`` (real rank,
where applicable) and ``t`` (complex rank), plus admissibility constraints.
The data lives in ``data/realforms.cat``; nothing numeric is hard-coded here.

Complex simple algebras viewed as real Lie algebras (``sl(m,C)`` and
friends) are entries flagged ``doubled``: they are simple but not absolutely
simple, and the catalog follows the rank-halving convention that classifies
them by the complex type of one factor (so ``sl(n+1,C)`` is "type A_n").

Notation accepted by :meth:`Catalog.resolve` (also the CLI's form grammar)::

    su(2,2*n)  so(1,4)  sp(1,n)        signature forms (args may use n)
    su*(8)  sl(3,R)  sl(4,C)  sp(3,R)  sp(3,C)  so(7,C)  so(8,C)
    so*(6)                             the D_6 form  (see note below)
    g2(2) g2(C) f4(4) f4(-2) f4(C) e6(6) e6(-14) ... e8(C)
    so(3)  sp(1)  u(1)  compact        compact factors, d = r = 0
    u(1,n)                             = su(1,n) plus a compact line
    A x B                              products, e.g. "sp(1,n) x sp(1)"

Note on ``so*``: this catalog writes ``so*(t)`` for the non-split form of
D_t with d = t^2 - t and r = floor(t/2).  Much of the literature calls the
same algebra so*(2t); the entry carries ``flag=convention`` as a reminder.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence, Union

from .exprs import ConstraintSet, EvalError, Expr, ParseError, parse
from .roots import CartanType


class CatalogError(ValueError):
    """Malformed catalog data or an unresolvable form specification."""


class ConstraintViolation(ValueError):
    """A parameter binding violates an entry's admissibility constraints."""


# ---------------------------------------------------------------------------
# generic .cat line format: `key=value; key=value; ...`, '#' comments

def parse_cat_lines(source: str) -> list[dict[str, str]]:
    """Parse the shared data-file format into one dict per record line."""
    records = []
    for lineno, raw in enumerate(source.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        rec: dict[str, str] = {"_lineno": str(lineno)}
        for chunk in line.split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            if "=" not in chunk:
                raise CatalogError(f"line {lineno}: field without '=': {chunk!r}")
            key, value = chunk.split("=", 1)
            key = key.strip()
            if key in rec:
                raise CatalogError(f"line {lineno}: duplicate field {key!r}")
            rec[key] = value.strip()
        records.append(rec)
    return records


DATA_DIR = Path(__file__).parent / "data"


def data_path(name: str, data_dir: "str | Path | None" = None) -> Path:
    """Resolve a data file: explicit dir > LIECK_DATA_DIR > packaged data."""
    import os

    base = data_dir or os.environ.get("LIECK_DATA_DIR") or DATA_DIR
    return Path(base) / name


# ---------------------------------------------------------------------------
# entries

@dataclass(frozen=True)
class RealForm:
    """One catalog entry (a template, not a concrete algebra)."""

    template: str
    family: str                  # complex family letter A..G, or "-" for compact
    crank: Optional[Expr]        # complex rank; None only for compact
    doubled: bool                # complex algebra viewed as real ("type n" convention)
    d_formula: Expr
    r_formula: Expr
    params: tuple[str, ...]
    param_constraints: ConstraintSet
    display: str
    simplest_rep: Optional[str] = None
    subst: Optional[str] = None       # printed archetype substitution, if any
    subst_printed_d: Optional[int] = None
    flag: str = ""
    note: str = ""

    @property
    def key(self) -> tuple[str, str]:
        return (self.template, self.family)

    @property
    def compact(self) -> bool:
        return self.template == "compact"

    def check_env(self, env: Mapping[str, int]) -> None:
        missing = set(self.params) - set(env)
        if missing:
            raise ConstraintViolation(
                f"{self.template}: unbound parameters {sorted(missing)}"
            )
        if not self.param_constraints.satisfies(env):
            raise ConstraintViolation(
                f"{self.template}: constraints '{self.param_constraints}' "
                f"fail at {dict(env)}"
            )

    def d(self, env: Mapping[str, int] | None = None) -> int:
        env = dict(env or {})
        self.check_env(env)
        value = self.d_formula.evaluate(env)
        if value.denominator != 1 or value < 0:
            raise CatalogError(f"{self.template}: bad d value {value} at {env}")
        return int(value)

    def r(self, env: Mapping[str, int] | None = None) -> int:
        env = dict(env or {})
        self.check_env(env)
        value = self.r_formula.evaluate(env)
        if value.denominator != 1 or value < 0:
            raise CatalogError(f"{self.template}: bad r value {value} at {env}")
        return int(value)

    def complex_rank(self, env: Mapping[str, int] | None = None) -> int:
        if self.crank is None:
            return 0
        return int(self.crank.evaluate(dict(env or {})))

    def instance_name(self, env: Mapping[str, int] | None = None) -> str:
        """Render the display pattern, e.g. so(a,2*t+1-a) at a=4,t=6 -> so(4,9)."""
        env = dict(env or {})
        m = re.fullmatch(r"([a-z0-9_*]+)\((.*)\)", self.display)
        if not m:
            return self.display
        name, args = m.groups()
        rendered = []
        for arg in args.split(","):
            arg = arg.strip()
            if arg in ("R", "C"):
                rendered.append(arg)
            else:
                rendered.append(str(int(parse(arg).evaluate(env))))
        return f"{name}({','.join(rendered)})"


BoundFactor = tuple  # (RealForm, dict env)


@dataclass(frozen=True)
class ReductiveForm:
    """A product of catalog entries, each with a concrete parameter binding."""

    factors: tuple[BoundFactor, ...]

    def __post_init__(self) -> None:
        if not self.factors:
            raise CatalogError("ReductiveForm needs at least one factor")

    @property
    def noncompact_factors(self) -> tuple[BoundFactor, ...]:
        return tuple(f for f in self.factors if not f[0].compact)

    def name(self) -> str:
        return " x ".join(form.instance_name(env) for form, env in self.factors)


def d_of(f: Union[RealForm, ReductiveForm], env: Mapping[str, int] | None = None) -> int:
    """Non-compact dimension; for products, the sum over factors."""
    if isinstance(f, ReductiveForm):
        return sum(form.d(fenv) for form, fenv in f.factors)
    return f.d(env)


def real_rank(f: Union[RealForm, ReductiveForm], env: Mapping[str, int] | None = None) -> int:
    """Real (restricted) rank; for products, the sum over factors."""
    if isinstance(f, ReductiveForm):
        return sum(form.r(fenv) for form, fenv in f.factors)
    return f.r(env)


# ---------------------------------------------------------------------------
# catalog

_REQUIRED_FIELDS = ("template", "complex", "d", "r")

_COMPLEX_RE = re.compile(r"([A-G])\(([^)]*)\)")


@dataclass
class Catalog:
    entries: tuple[RealForm, ...]
    by_key: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        for entry in self.entries:
            if entry.key in self.by_key:
                raise CatalogError(f"duplicate catalog entry {entry.key}")
            self.by_key[entry.key] = entry

    def get(self, template: str, family: str | None = None) -> RealForm:
        if family is not None:
            try:
                return self.by_key[(template, family)]
            except KeyError:
                raise CatalogError(f"no entry ({template}, {family})") from None
        hits = [e for e in self.entries if e.template == template]
        if len(hits) != 1:
            raise CatalogError(
                f"template {template!r} is {'ambiguous' if hits else 'unknown'}"
                + (f" (families {[e.family for e in hits]})" if hits else "")
            )
        return hits[0]

    # -- enumeration ----------------------------------------------------

    def bindings(self, entry: RealForm, rank: int) -> Iterable[dict]:
        """All admissible parameter bindings of `entry` at complex rank `rank`."""
        if entry.compact:
            return
        if entry.crank is not None and not entry.crank.free_vars:
            if entry.complex_rank() != rank:
                return
            env: dict = {}
            if not entry.params:
                yield env
            return
        base = {"t": rank}
        if "a" not in entry.params:
            if entry.param_constraints.satisfies(base):
                yield base
            return
        for a in range(1, rank + 2):
            env = {"t": rank, "a": a}
            if entry.param_constraints.satisfies(env):
                yield env

    def enumerate_real_forms(
        self,
        t: CartanType,
        targets: Mapping[str, int] | None = None,
    ) -> list[tuple[RealForm, dict]]:
        """All (entry, binding) pairs of complex type ``t``.

        ``targets`` optionally restricts to given values of ``r`` and/or
        ``d``.  Doubled entries are returned under the rank-halving
        convention (their ``t`` is the single-factor rank).
        """
        out = []
        targets = dict(targets or {})
        for entry in self.entries:
            if entry.family != t.family:
                continue
            for env in self.bindings(entry, t.rank):
                if "r" in targets and entry.r(env) != targets["r"]:
                    continue
                if "d" in targets and entry.d(env) != targets["d"]:
                    continue
                out.append((entry, env))
        return out

    def scan_forms(self, max_rank: int, r: int, d: int) -> list[tuple[RealForm, dict]]:
        """All bindings of any family with complex rank <= max_rank, given (r, d)."""
        out = []
        for entry in self.entries:
            if entry.compact:
                continue
            if entry.crank is not None and not entry.crank.free_vars:
                ranks: Sequence[int] = (entry.complex_rank(),)
            else:
                ranks = range(1, max_rank + 1)
            for rank in ranks:
                if rank > max_rank:
                    continue
                for env in self.bindings(entry, rank):
                    if entry.r(env) == r and entry.d(env) == d:
                        out.append((entry, env))
        return out

    # -- substitutions ---------------------------------------------------

    def archetype_substitute(self, f: RealForm) -> Optional[tuple[RealForm, dict]]:
        """The recorded type-I/II stand-in for an exceptional form, if any.

        The substitute has the same real rank and d at least as large; the
        recorded pairs are data, this just resolves and sanity-checks them.
        """
        if f.family not in ("E", "F", "G"):
            raise CatalogError(f"archetype_substitute expects an exceptional form, got {f.template}")
        if not f.subst:
            return None
        resolved = self.resolve(f.subst)
        (entry, env), = resolved.factors
        if entry.r(env) != f.r({}) or entry.d(env) < f.d({}):
            raise CatalogError(
                f"recorded substitution {f.subst} for {f.template} fails its contract"
            )
        return entry, env

    # -- form-spec notation ----------------------------------------------

    def resolve(self, spec: str, n: int | None = None) -> ReductiveForm:
        """Parse a form spec (see module docstring) into a ReductiveForm."""
        env = {} if n is None else {"n": n}
        factors: list[BoundFactor] = []
        for part in re.split(r"\s*[x×]\s*", spec.strip()):
            if part:
                factors.extend(self._resolve_factor(part, env))
        if not factors:
            raise CatalogError(f"empty form spec {spec!r}")
        return ReductiveForm(tuple(factors))

    def _resolve_factor(self, text: str, env: Mapping[str, int]) -> list[BoundFactor]:
        text = text.strip()
        compact_entry = self.get("compact", "-")
        exceptional = _EXCEPTIONAL_ALIASES.get(_normalize_alias(text))
        if exceptional is not None:
            if exceptional == "compact":
                return [(compact_entry, {})]
            family = exceptional[0].upper()
            return [(self.get(exceptional, family), {})]
        m = re.fullmatch(r"(su\*|so\*|su|sl|so|sp|u)\((.*)\)", text)
        if not m:
            raise CatalogError(f"cannot parse form spec {text!r}")
        name, argtext = m.groups()
        args = [a.strip() for a in argtext.split(",")]

        def num(arg: str) -> int:
            try:
                value = parse(arg).evaluate(env)
            except (ParseError, EvalError) as exc:
                raise CatalogError(f"bad argument {arg!r} in {text!r}: {exc}") from None
            if value.denominator != 1 or value < 0:
                raise CatalogError(f"argument {arg!r} in {text!r} is not a non-negative integer")
            return int(value)

        if len(args) == 1:
            if name in ("su", "so", "sp", "u"):
                return [(compact_entry, {})]  # compact factor like so(3), sp(1)
            if name == "su*":
                mval = num(args[0])
                if mval % 2 or mval < 4:
                    raise CatalogError(f"su*({mval}): argument must be even and >= 4")
                return [(self.get("su_star", "A"), {"t": mval - 1})]
            if name == "so*":
                tval = num(args[0])
                return [(self.get("so_star", "D"), {"t": tval})]
            raise CatalogError(f"{name} needs two arguments in {text!r}")

        if len(args) != 2:
            raise CatalogError(f"too many arguments in {text!r}")

        if args[1] in ("R", "C"):
            mval = num(args[0])
            if name == "sl":
                return [(self.get("sl_R" if args[1] == "R" else "sl_C", "A"), {"t": mval - 1})]
            if name == "sp":
                if args[1] == "R":
                    return [(self.get("sp_R", "C"), {"t": mval})]
                return [(self.get("sp_C", "C"), {"t": mval})]
            if name == "so" and args[1] == "C":
                if mval % 2:
                    return [(self.get("so_C", "B"), {"t": (mval - 1) // 2})]
                return [(self.get("so_C", "D"), {"t": mval // 2})]
            raise CatalogError(f"cannot parse form spec {text!r}")

        p, q = num(args[0]), num(args[1])
        if name == "u":
            out = self._resolve_factor(f"su({p},{q})", {})
            return out + [(compact_entry, {})]
        if min(p, q) == 0:
            return [(compact_entry, {})]
        a, total = min(p, q), p + q
        if name == "su":
            return [(self.get("su", "A"), {"a": a, "t": total - 1})]
        if name == "sp":
            return [(self.get("sp", "C"), {"a": a, "t": total})]
        if name == "so":
            if total % 2:
                return [(self.get("so", "B"), {"a": a, "t": (total - 1) // 2})]
            return [(self.get("so", "D"), {"a": a, "t": total // 2})]
        raise CatalogError(f"cannot parse form spec {text!r}")


def _normalize_alias(text: str) -> str:
    return re.sub(r"[\s_()−-]", "", text.lower())


_EXCEPTIONAL_ALIASES: dict[str, str] = {}
for _tmpl, _aliases in {
    "g2_2": ("g2_2", "g2(2)", "g22"),
    "g2_C": ("g2_C", "g2(C)", "g2C"),
    "f4_4": ("f4_4", "f4(4)"),
    "f4_rank1": ("f4_rank1", "f4(-2)", "f4rank1"),
    "f4_C": ("f4_C", "f4(C)", "f4C"),
    "e6_6": ("e6_6", "e6(6)"),
    "e6_2": ("e6_2", "e6(2)"),
    "e6_m14": ("e6_m14", "e6(-14)"),
    "e6_m26": ("e6_m26", "e6(-26)"),
    "e6_C": ("e6_C", "e6(C)", "e6C"),
    "e7_7": ("e7_7", "e7(7)"),
    "e7_m5": ("e7_m5", "e7(-5)"),
    "e7_m25": ("e7_m25", "e7(-25)"),
    "e7_C": ("e7_C", "e7(C)", "e7C"),
    "e8_8": ("e8_8", "e8(8)"),
    "e8_m24": ("e8_m24", "e8(-24)"),
    "e8_C": ("e8_C", "e8(C)", "e8C"),
    "compact": ("compact",),
}.items():
    for _alias in _aliases:
        _EXCEPTIONAL_ALIASES[_normalize_alias(_alias)] = _tmpl


def load_catalog(source: "str | Path | None" = None) -> Catalog:
    """Load the real-form catalog from text, a path, or the packaged data."""
    if source is None or isinstance(source, Path) or "\n" not in str(source):
        path = data_path("realforms.cat") if source is None else Path(source)
        text = path.read_text(encoding="utf-8")
    else:
        text = source
    entries = []
    for rec in parse_cat_lines(text):
        for fieldname in _REQUIRED_FIELDS:
            if fieldname not in rec:
                raise CatalogError(
                    f"line {rec['_lineno']}: missing field {fieldname!r}"
                )
        if rec["complex"] == "-":
            family, crank = "-", None
        else:
            m = _COMPLEX_RE.fullmatch(rec["complex"])
            if not m:
                raise CatalogError(
                    f"line {rec['_lineno']}: bad complex type {rec['complex']!r}"
                )
            family = m.group(1)
            crank = parse(m.group(2))
        params = tuple(p for p in rec.get("params", "").split(",") if p.strip())
        entries.append(
            RealForm(
                template=rec["template"],
                family=family,
                crank=crank,
                doubled=rec.get("doubled", "0") == "1",
                d_formula=parse(rec["d"]),
                r_formula=parse(rec["r"]),
                params=tuple(p.strip() for p in params),
                param_constraints=ConstraintSet(rec.get("constraints", "")),
                display=rec.get("display", rec["template"]),
                simplest_rep=rec.get("simplest_rep") or None,
                subst=rec.get("subst") or None,
                subst_printed_d=int(rec["subst_printed_d"]) if "subst_printed_d" in rec else None,
                flag=rec.get("flag", ""),
                note=rec.get("note", ""),
            )
        )
    return Catalog(tuple(entries))
