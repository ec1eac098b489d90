from __future__ import annotations

from fractions import Fraction

import pytest

from spin7ac.errors import InputError
from spin7ac.linkexpr import (
    Atom,
    LinkExpr,
    Relations,
    d_link,
    dstar_link,
    laplacian_link,
    normalize,
    star_link,
)
from spin7ac.scalars import Scalar


def test_degree_bookkeeping():
    a = Atom("a", 3)
    x = LinkExpr.atom(a)
    assert d_link(x).degree == 4
    assert star_link(x).degree == 4
    assert dstar_link(x).degree == 2
    assert laplacian_link(x).degree == 3


def test_dd_and_tt_vanish():
    # degree 8 included: the inner codifferential stays a primitive letter
    # there, and the identity must hold across the primitive/bridged seam
    for degree in range(0, 9):
        x = LinkExpr.atom(Atom("a", degree))
        if degree <= 7:
            assert d_link(d_link(x)).is_zero()
        assert dstar_link(dstar_link(x)).is_zero()


def test_star_involution():
    for degree in range(0, 8):
        x = LinkExpr.atom(Atom("a", degree))
        assert star_link(star_link(x)) == x


def test_codifferential_bridge():
    # t = (-1)^k s d s on degree k in 1..7; t kills functions.
    f = LinkExpr.atom(Atom("f", 0))
    assert dstar_link(f).is_zero()
    x = LinkExpr.atom(Atom("a", 3))
    bridged = star_link(d_link(star_link(x))).scale(-1)
    assert dstar_link(x) == bridged


def test_star_rejects_formal_degree_eight():
    x = LinkExpr.atom(Atom("top", 8))
    with pytest.raises(InputError):
        star_link(x)
    # but the codifferential is a legal primitive there
    assert dstar_link(x).degree == 7


def test_closed_relation():
    rules = Relations(closed={"a"})
    x = LinkExpr.atom(Atom("a", 2))
    assert d_link(x, rules).is_zero()
    assert not dstar_link(x, rules).is_zero()


def test_coclosed_relation():
    rules = Relations(coclosed={"a"})
    x = LinkExpr.atom(Atom("a", 2))
    assert dstar_link(x, rules).is_zero()
    assert not d_link(x, rules).is_zero()
    # d* of the star also dies: d s a = 0 for co-closed a.
    assert d_link(star_link(x, rules), rules).is_zero()


def test_harmonic_is_closed_and_coclosed():
    rules = Relations(harmonic={"a"})
    x = LinkExpr.atom(Atom("a", 4))
    assert d_link(x, rules).is_zero()
    assert dstar_link(x, rules).is_zero()
    assert laplacian_link(x, rules).is_zero()


def test_eigenform_relation_function():
    mu = Scalar(Fraction(7))
    rules = Relations(eigen={"f": mu})
    f = LinkExpr.atom(Atom("f", 0))
    assert laplacian_link(f, rules) == f.scale(mu)


def test_eigenform_relation_all_supported_degrees():
    mu = Scalar(Fraction(5, 2))
    for degree in range(0, 7):
        rules = Relations(eigen={"a": mu})
        a = LinkExpr.atom(Atom("a", degree))
        assert laplacian_link(a, rules) == a.scale(mu)
        # the rule also fires inside a previously normalized expression
        assert normalize(laplacian_link(a), rules) == a.scale(mu)
        # iterating the Laplacian squares the eigenvalue
        assert laplacian_link(laplacian_link(a, rules), rules) == a.scale(mu * mu)


def test_duality_relation():
    phi = Atom("phi", 3)
    rules = Relations()
    rules.declare_nearly_parallel(phi, 4)
    x = LinkExpr.atom(phi)
    assert d_link(x, rules) == star_link(x, rules).scale(4)
    # derived consequences: d(*phi) = 0 and d*(phi) = 0 and d*(*phi) = 4 phi
    assert d_link(star_link(x, rules), rules).is_zero()
    assert dstar_link(x, rules).is_zero()
    assert dstar_link(star_link(x, rules), rules) == x.scale(4)


def test_zero_atom_rule():
    rules = Relations(zero={"a"})
    x = LinkExpr.atom(Atom("a", 2)) + LinkExpr.atom(Atom("b", 2))
    n = normalize(x, rules)
    assert n == LinkExpr.atom(Atom("b", 2))


def test_monomial_zero_rule():
    beta8 = Atom("beta8", 8)
    rules = Relations(monomial_zeros={(("d",), beta8)})
    x = d_link(LinkExpr.atom(beta8), rules)
    assert x.is_zero()
    # longer words built on a killed monomial also die
    y = dstar_link(d_link(LinkExpr.atom(beta8), rules), rules)
    assert y.is_zero()


def test_linearity_and_equality():
    a = LinkExpr.atom(Atom("a", 2))
    b = LinkExpr.atom(Atom("b", 2))
    s = Scalar(Fraction(3, 7))
    assert d_link(a.scale(s) + b) == d_link(a).scale(s) + d_link(b)
    assert (a - a).is_zero()
    with pytest.raises(InputError):
        a + LinkExpr.atom(Atom("c", 3))


def test_json_round_trip():
    a = Atom("alpha3", 3)
    expr = d_link(star_link(LinkExpr.atom(a))).scale(Scalar(Fraction(-2, 3)))
    again = LinkExpr.from_json(expr.to_json())
    assert again == expr


def test_json_canonicalizes_unreduced_words():
    payload = {
        "degree": 3,
        "terms": [
            {
                "coeff": {"1": "2/1"},
                "ops": ["s", "s"],
                "atom": {"name": "a", "degree": 3},
            },
            {"coeff": {"1": "1/1"}, "ops": ["d", "d"], "atom": {"name": "b", "degree": 1}},
        ],
    }
    expr = LinkExpr.from_json(payload)
    assert expr == LinkExpr.atom(Atom("a", 3)).scale(2)
