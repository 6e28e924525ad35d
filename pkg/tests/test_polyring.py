import pytest
from hypothesis import given, settings, strategies as st

from beckdiff.errors import MixedContext, NegativeExponent, NonFieldBase, PolynomialSyntaxError, ResourceLimit, UnknownVariable
from beckdiff.exactnum import GF, QQ, ZZ
from beckdiff.oracles import macaulay_member, macaulay_quotient_dimension
from beckdiff.polyring import (
    INFINITE,
    DegRevLex,
    Lex,
    Limits,
    Polynomial,
    buchberger,
    division,
    ideal_member,
    jacobian,
    limits_scope,
    normal_form,
    parse_poly,
    quotient_basis,
    s_polynomial,
)

from conftest import FIELD_IDS, FIELDS, XY, polynomials, zero_dim_ideals

F2, F5 = GF(2), GF(5)


def P(text, base=QQ, variables=("x",)):
    return parse_poly(text, variables, base)


# parsing and arithmetic


def test_parse_examples():
    f = P("x^2 - 2")
    assert f.terms == {(2,): 1, (0,): -2}
    g = parse_poly("x*y + 3*x", XY, F5)
    assert g.terms == {(1, 1): 1, (1, 0): 3}


@pytest.mark.parametrize("text", ["x + + y", "x^", "2*", "(x", ""])
def test_parse_malformed(text):
    with pytest.raises(PolynomialSyntaxError):
        parse_poly(text, XY, QQ)


def test_parse_negative_exponent():
    with pytest.raises(NegativeExponent):
        parse_poly("x^-1", XY, QQ)


def test_parse_unknown_variable():
    with pytest.raises(UnknownVariable):
        parse_poly("z + 1", XY, QQ)


def test_multiplication_examples():
    assert P("x+1") * P("x-1") == P("x^2-1")
    assert (P("x+1") * P("0")).is_zero()
    xy = parse_poly("x+y", XY, F2)
    assert xy * xy == parse_poly("x^2+y^2", XY, F2)


def test_no_zero_coefficients_stored():
    f = parse_poly("x + 2*x", ("x",), GF(3))
    assert f.is_zero() and f.terms == {}


def test_mixed_context():
    with pytest.raises(MixedContext):
        P("x") + P("x", base=F5)


def test_roundtrip_text(field):
    f = parse_poly("3*x^2*y - x + 4", XY, field)
    assert parse_poly(f.to_text(), XY, field) == f


# normal forms and bases


def test_normal_form_examples():
    G = buchberger([P("x-1")])
    assert normal_form(P("x^2"), G) == P("1")
    assert normal_form(P("0"), G).is_zero()
    E = buchberger([], variables=XY, base=QQ)
    f = parse_poly("x^2+y", XY, QQ)
    assert normal_form(f, E) == f


def test_buchberger_examples():
    assert buchberger([P("x")]).elements == (P("x"),)
    assert buchberger([P("x^2-1"), P("x^3-1")]).elements == (P("x-1"),)
    assert buchberger([], variables=("x",), base=QQ).elements == ()


def test_membership_examples():
    assert ideal_member(P("x^2-1"), [P("x-1")])
    assert not ideal_member(P("1"), [P("x")])
    assert ideal_member(P("0"), [P("x^3+x")])


def test_quotient_basis_examples():
    V = lambda t: parse_poly(t, XY, QQ)
    assert quotient_basis(buchberger([P("x^2")])) == [(0,), (1,)]
    G = buchberger([V("x^2"), V("x*y"), V("y^3")])
    assert quotient_basis(G) == [(0, 0), (1, 0), (0, 1), (0, 2)]
    assert quotient_basis(buchberger([V("x")])) is INFINITE


def test_unit_ideal_has_empty_basis():
    assert quotient_basis(buchberger([P("x"), P("x+1")])) == []


def test_jacobian_examples():
    assert jacobian([P("x^2-2")], ("x",)) == [[P("2*x")]]
    V = lambda t: parse_poly(t, XY, QQ)
    assert jacobian([V("x^2+y^2"), V("x*y")], XY) == [[V("2*x"), V("y")], [V("2*y"), V("x")]]
    assert jacobian([], ("x",)) == [[]]


def test_integers_rejected():
    with pytest.raises(NonFieldBase):
        buchberger([parse_poly("2*x", ("x",), ZZ)])


def test_resource_limit():
    gens = [parse_poly(t, XY, QQ) for t in ("x^5*y - y^3 + 1", "x*y^4 - x^2 + y")]
    with limits_scope(Limits(max_degree=4)):
        with pytest.raises(ResourceLimit):
            buchberger(gens)


def test_lex_and_degrevlex_agree_on_ideal():
    V = lambda t: parse_poly(t, XY, QQ)
    gens = [V("x^2 + y - 1"), V("x*y - 2")]
    A, B = buchberger(gens, DegRevLex()), buchberger(gens, Lex())
    for g in A:
        assert B.contains(g)
    for g in B:
        assert A.contains(g)


# property tests: at least 1000 randomized cases per base field

N = 1000


def _check_basis(gens, f):
    G = buchberger(gens, track_cofactors=True)
    for i, g in enumerate(G.elements):
        assert g.leading_coefficient(G.order) == G.base.one()
        for h in G.elements[i + 1:]:
            assert normal_form(s_polynomial(g, h, G.order), G).is_zero()
        # cofactors express each basis element in the input generators
        total = Polynomial.zero(f.variables, f.base)
        for c, q in zip(G.cofactors[i], gens):
            total = total + c * q
        assert total == g
    r = normal_form(f, G)
    assert normal_form(r, G) == r
    qs, r2 = division(f, G)
    assert r2 == r
    total = r
    for q, g in zip(qs, G.elements):
        total = total + q * g
    assert total == f
    lead = G.leading_monomials
    for m in r.terms:
        assert not any(all(a <= b for a, b in zip(l, m)) for l in lead)
    return G, r


@pytest.mark.parametrize("base", FIELDS, ids=FIELD_IDS)
def test_groebner_properties(base):
    @settings(max_examples=N, derandomize=True)
    @given(st.lists(polynomials(base), min_size=1, max_size=3), polynomials(base, max_degree=4))
    def run(gens, f):
        _check_basis(gens, f)

    run()


@pytest.mark.parametrize("base", FIELDS, ids=FIELD_IDS)
def test_membership_matches_macaulay(base):
    @settings(max_examples=N, derandomize=True)
    @given(zero_dim_ideals(base), polynomials(base, max_degree=4), polynomials(base, max_degree=2))
    def run(gens, f, h):
        G, r = _check_basis(gens, f)
        dim, D = macaulay_quotient_dimension(gens, 2, base)
        assert dim == len(quotient_basis(G))
        member = r.is_zero()
        assert macaulay_member(f, gens, degree=D + 2) == member
        # a known member: h * g plus a combination already in the ideal
        g = h * gens[0] + (f - r)
        assert G.contains(g)
        assert macaulay_member(g, gens, degree=D + 2)

    run()
