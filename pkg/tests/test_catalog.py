"""Real-form catalog: data-file parsing, d/r formulas, form-spec resolution."""

from __future__ import annotations

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from lieck.catalog import (
    CatalogError,
    ConstraintViolation,
    d_of,
    data_path,
    load_catalog,
    parse_cat_lines,
    real_rank,
)


def test_parse_cat_lines():
    recs = parse_cat_lines(
        "# comment\n"
        "a=1; b=x=y; c=p,q  # trailing comment\n"
        "\n"
        "a=2\n"
    )
    assert len(recs) == 2
    assert recs[0]["a"] == "1"
    assert recs[0]["b"] == "x=y"  # values may contain '='
    assert recs[0]["c"] == "p,q"
    assert recs[1]["_lineno"] == "4"
    with pytest.raises(CatalogError, match="without '='"):
        parse_cat_lines("a=1; nonsense")
    with pytest.raises(CatalogError, match="duplicate"):
        parse_cat_lines("a=1; a=2")


def test_data_path_precedence(tmp_path, monkeypatch):
    packaged = data_path("realforms.cat")
    assert packaged.is_file()
    monkeypatch.setenv("LIECK_DATA_DIR", str(tmp_path))
    assert data_path("realforms.cat") == tmp_path / "realforms.cat"
    explicit = tmp_path / "sub"
    assert data_path("realforms.cat", explicit) == explicit / "realforms.cat"
    monkeypatch.delenv("LIECK_DATA_DIR")
    assert data_path("realforms.cat") == packaged


def test_missing_data_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_catalog(tmp_path / "realforms.cat")


# recorded d and restricted-rank values for a sample of forms
_KNOWN = [
    ("su(2,3)", 12, 2),
    ("su(1,1)", 2, 1),
    ("sl(4,R)", 9, 3),
    ("sl(3,C)", 8, 2),
    ("su*(6)", 14, 2),
    ("so(3,4)", 12, 3),
    ("so(4,4)", 16, 4),
    ("so(2,7)", 14, 2),
    ("sp(1,5)", 20, 1),
    ("sp(3,R)", 12, 3),
    ("sp(2,C)", 10, 2),
    ("so(9,C)", 36, 4),
    ("so(8,C)", 28, 4),
    ("so*(4)", 12, 2),
    ("so*(5)", 20, 2),
    ("g2(2)", 8, 2),
    ("g2(C)", 14, 2),
    ("f4(4)", 28, 4),
    ("f4(-2)", 16, 1),
    ("e6(-26)", 26, 2),
    ("e7(7)", 70, 7),
    ("e8(C)", 248, 8),
]


@pytest.mark.parametrize("spec,d,r", _KNOWN, ids=[k[0] for k in _KNOWN])
def test_known_forms(catalog, spec, d, r):
    form = catalog.resolve(spec)
    assert d_of(form) == d
    assert real_rank(form) == r
    assert form.name() == spec


def test_compact_and_product_factors(catalog):
    assert d_of(catalog.resolve("so(3)")) == 0
    assert d_of(catalog.resolve("so(0,5)")) == 0
    prod = catalog.resolve("sp(1,2) x sp(1)")
    assert d_of(prod) == 8
    assert real_rank(prod) == 1
    # u(p,q) is su(p,q) plus a compact center
    assert d_of(catalog.resolve("u(1,3)")) == d_of(catalog.resolve("su(1,3)"))


def test_resolve_with_parameter(catalog):
    form = catalog.resolve("su(1,2*n)", n=3)
    assert form.name() == "su(1,6)"
    assert d_of(form) == 12
    with pytest.raises(CatalogError):
        catalog.resolve("su(1,2*n)")  # n unbound


def test_resolve_errors(catalog):
    with pytest.raises(CatalogError):
        catalog.resolve("xyz(2,3)")
    with pytest.raises(CatalogError):
        catalog.resolve("su*(5)")  # odd argument
    with pytest.raises(CatalogError):
        catalog.resolve("su(1,2,3)")
    with pytest.raises(CatalogError):
        catalog.resolve("")


def test_entry_constraints(catalog):
    su = catalog.get("su", "A")
    with pytest.raises(ConstraintViolation):
        su.d({"a": 5, "t": 4})  # real rank above half the size
    with pytest.raises(ConstraintViolation):
        su.d({"a": 1})  # t unbound


def test_get(catalog):
    assert catalog.get("so", "B").display == "so(a,2*t+1-a)"
    assert catalog.get("g2_C").complex_rank() == 2
    with pytest.raises(CatalogError, match="ambiguous"):
        catalog.get("so")
    with pytest.raises(CatalogError, match="unknown"):
        catalog.get("nope")


def test_enumerate_real_forms(catalog):
    from lieck.roots import CartanType

    hits = catalog.enumerate_real_forms(CartanType("D", 4), targets={"r": 2})
    names = sorted(entry.instance_name(env) for entry, env in hits)
    assert names == ["so(2,6)", "so*(4)"]


def test_scan_forms(catalog):
    names = sorted(
        entry.instance_name(env) for entry, env in catalog.scan_forms(6, 2, 14)
    )
    assert "so(2,7)" in names
    assert "g2(C)" in names
    for entry, env in catalog.scan_forms(6, 2, 14):
        assert entry.r(env) == 2
        assert entry.d(env) == 14
        assert entry.complex_rank(env) <= 6


def test_archetype_substitute(catalog):
    entry, env = catalog.archetype_substitute(catalog.get("f4_4"))
    assert entry.instance_name(env) == "so(4,9)"
    assert entry.d(env) == 36
    assert catalog.archetype_substitute(catalog.get("e6_6")) is None
    with pytest.raises(CatalogError, match="exceptional"):
        catalog.archetype_substitute(catalog.get("su", "A"))


@settings(max_examples=100, deadline=None)
@given(
    p=st.integers(min_value=1, max_value=30),
    q=st.integers(min_value=1, max_value=30),
    name=st.sampled_from(["su", "so", "sp"]),
)
def test_signature_forms_oracle(catalog, p, q, name):
    # d counts the off-diagonal block of the Cartan decomposition:
    # pq for orthogonal, 2pq for unitary, 4pq for quaternionic forms
    assume(not (name == "so" and p + q < 3))  # so(1,1) is abelian, not cataloged
    form = catalog.resolve(f"{name}({p},{q})")
    factor = {"so": 1, "su": 2, "sp": 4}[name]
    assert d_of(form) == factor * p * q
    assert real_rank(form) == min(p, q)
