"""Expression language: parsing, exact evaluation, compilation, constraints.

The random-expression properties compare against plain Python arithmetic
over ``Fraction`` values, which is an oracle independent of the parser and
the compiler.
"""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lieck.exprs import (
    ALLOWED_VARS,
    Constraint,
    ConstraintSet,
    EvalError,
    ParseError,
    evaluate,
    parse,
    poly_equal,
)


def ev(text, **env):
    return evaluate(text, env)


def test_arithmetic():
    assert ev("2+3*4") == 14
    assert ev("(2+3)*4") == 20
    assert ev("2^3^2") == 512  # right-associative
    assert ev("-3^2") == -9
    assert ev("7/2") == Fraction(7, 2)
    assert ev("7/2+1/2") == 4
    assert ev("floor_div(7,2)") == 3
    assert ev("floor_div(-7,2)") == -4


def test_binom():
    assert ev("binom(5,2)") == 10
    assert ev("binom(5,0)") == 1
    assert ev("binom(5,7)") == 0
    assert ev("binom(5,-1)") == 0
    assert ev("binom(2*n+1,k)", n=3, k=2) == 21
    with pytest.raises(EvalError):
        ev("binom(-1,2)")
    with pytest.raises(EvalError):
        ev("binom(1/2,0)")


def test_prod():
    assert ev("prod(s,1,4,s)") == 24
    assert ev("prod(s,3,2,s)") == 1  # empty range
    assert ev("prod(s,1,n,2*s)", n=5) == 32 * 120
    # the loop variable shadows an outer binding only inside the body
    assert ev("prod(s,1,2,s)+s", s=10) == 12


def test_power_and_division_errors():
    with pytest.raises(ParseError):
        parse("2^-1")
    with pytest.raises(EvalError):
        ev("2^(1-2)")
    with pytest.raises(EvalError):
        ev("1/(2-2)")
    with pytest.raises(EvalError):
        ev("floor_div(1,0)")


def test_variables():
    e = parse("2*a*t+2*a-2*a^2")
    assert e.free_vars == {"a", "t"}
    assert e.evaluate({"a": 2, "t": 4}) == 12
    with pytest.raises(EvalError):
        e.evaluate({"a": 2})
    assert "l" not in ALLOWED_VARS
    with pytest.raises(ParseError):
        parse("l+1")
    with pytest.raises(ParseError):
        parse("binom(x,2)")
    with pytest.raises(ParseError):
        parse("a b")


def test_substitute():
    e = parse("a^2+b")
    assert e.substitute({"a": parse("n+1"), "b": 3}).evaluate({"n": 2}) == 12
    # prod loop variables are bound, not substituted
    f = parse("prod(s,1,n,s+a)").substitute({"s": 99, "a": 1})
    assert f.evaluate({"n": 3}) == 24


def test_poly_equal():
    assert poly_equal(parse("(a+b)^2"), minus=[parse("a^2+2*a*b+b^2")])
    assert not poly_equal(parse("(a+b)^2"), minus=[parse("a^2+b^2")])
    assert poly_equal(parse("a+b"), parse("a-b"), minus=[parse("2*a")])
    assert poly_equal(parse("a/2"), parse("a/2"), minus=[parse("a")])
    with pytest.raises(EvalError):
        parse("a/b").poly()
    with pytest.raises(EvalError):
        parse("binom(n,2)").poly()


def test_constraints():
    c = Constraint("2*a <= t+1")
    assert c.satisfies({"a": 2, "t": 3})
    assert not c.satisfies({"a": 3, "t": 3})
    assert Constraint("n even").satisfies({"n": 4})
    assert Constraint("n odd").satisfies({"n": 3})
    assert Constraint("a = b").satisfies({"a": 1, "b": 1})  # single '=' is equality
    assert Constraint("a != b").satisfies({"a": 1, "b": 2})
    with pytest.raises(ParseError):
        Constraint("a ?? b")
    with pytest.raises(ParseError):
        Constraint("x even")


def test_constraint_set():
    cs = ConstraintSet("a>=1, b>=1, a+b<=n")
    assert cs.satisfies({"a": 1, "b": 2, "n": 3})
    assert not cs.satisfies({"a": 1, "b": 3, "n": 3})
    assert len(cs) == 3
    # commas inside parentheses belong to the expression, not the list
    cs2 = ConstraintSet("binom(n,2) >= 1")
    assert len(cs2) == 1
    assert cs2.satisfies({"n": 2})
    assert ConstraintSet("").satisfies({})
    eqs = ConstraintSet("a>=1, a+b=n").equalities()
    assert len(eqs) == 1
    assert str(eqs[0][0]) == "a+b"


def test_compiled_constraints_match_satisfies():
    cs = ConstraintSet("a>=1, b>=1, 2*(a+b)<=n, n even")
    fn = cs.compile(("a", "b", "n"))
    for a in range(1, 5):
        for b in range(1, 5):
            for n in range(2, 12):
                assert fn(a, b, n) == cs.satisfies({"a": a, "b": b, "n": n})


def test_compile_rejects_missing_names():
    with pytest.raises(EvalError):
        parse("a+b").compile(("a",))
    with pytest.raises(EvalError):
        ConstraintSet("a>=1").compile(("b",))


# --- randomized agreement with plain Python arithmetic ---------------------

_leaf = st.one_of(
    st.integers(min_value=0, max_value=9).map(str),
    st.sampled_from(["a", "b", "n"]),
)


def _binop(children):
    return st.one_of(
        st.tuples(children, st.sampled_from("+-*"), children).map(
            lambda t: f"({t[0]}{t[1]}{t[2]})"
        ),
        st.tuples(children, st.integers(min_value=0, max_value=3)).map(
            lambda t: f"({t[0]})^{t[1]}"
        ),
    )


_texts = st.recursive(_leaf, _binop, max_leaves=10)
_envs = st.fixed_dictionaries(
    {v: st.integers(min_value=1, max_value=20) for v in ("a", "b", "n")}
)


@settings(max_examples=120, deadline=None)
@given(text=_texts, env=_envs)
def test_evaluate_matches_python(text, env):
    expected = eval(  # independent oracle: Python ints, ** for ^
        text.replace("^", "**"), {"__builtins__": {}}, dict(env)
    )
    assert evaluate(text, env) == expected


@settings(max_examples=120, deadline=None)
@given(text=_texts, env=_envs)
def test_str_round_trip_and_compile(text, env):
    e = parse(text)
    again = parse(str(e))
    value = e.evaluate(env)
    assert again.evaluate(env) == value
    fn = e.compile(("a", "b", "n"))
    assert fn(env["a"], env["b"], env["n"]) == value
