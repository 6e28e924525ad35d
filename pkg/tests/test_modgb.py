import pytest
from hypothesis import given, settings, strategies as st

from beckdiff.errors import InputError, MixedContext, NonFieldBase, RankMismatch, ShapeMismatch
from beckdiff.exactnum import GF, QQ, ZZ
from beckdiff.fpalg import AlgebraPresentation
from beckdiff.modgb import (
    FpModulePresentation,
    FreeModuleElement,
    cokernel_presentation,
    is_zero_module,
    module_buchberger,
    module_normal_form,
)
from beckdiff.oracles import module_quotient_dimension
from beckdiff.polyring import INFINITE, Polynomial, jacobian, parse_poly

from conftest import FIELD_IDS, FIELDS, XY, polynomials

X = ("x",)


def vec(*texts, base=QQ, variables=X):
    return FreeModuleElement(parse_poly(t, variables, base) for t in texts)


def test_buchberger_examples():
    G = module_buchberger([vec("x", "0"), vec("0", "x")])
    assert set(G.elements) == {vec("x", "0"), vec("0", "x")}
    assert module_buchberger([vec("x^2", "0"), vec("x", "0")]).elements == (vec("x", "0"),)
    assert module_buchberger([], rank=2, variables=X, base=QQ).elements == ()


def test_normal_form_examples():
    G = module_buchberger([vec("x", "0")])
    assert module_normal_form(vec("x^2", "0"), G).is_zero()
    assert module_normal_form(vec("0", "0"), G).is_zero()
    assert module_normal_form(vec("1", "0"), G) == vec("1", "0")


def test_rank_mismatch():
    with pytest.raises(RankMismatch):
        module_buchberger([vec("x"), vec("x", "1")])
    G = module_buchberger([vec("x", "0")])
    with pytest.raises(RankMismatch):
        module_normal_form(vec("x"), G)


def test_mixed_context():
    with pytest.raises(MixedContext):
        FreeModuleElement([parse_poly("x", X, QQ), parse_poly("x", X, GF(5))])


def test_empty_generators_need_context():
    with pytest.raises(InputError):
        module_buchberger([])


def test_integers_rejected():
    with pytest.raises(NonFieldBase):
        module_buchberger([vec("x", base=ZZ)])


def test_unit_relation_is_zero():
    A = AlgebraPresentation.parse(QQ, ["x"], [])
    P = FpModulePresentation(A, ["e"], [vec("1")])
    r = is_zero_module(P)
    assert r.is_zero and r.verify()


def test_qx2_omega_nonzero():
    A = AlgebraPresentation.parse(QQ, ["x"], ["x^2"])
    P = FpModulePresentation(A, ["dx"], [vec("2*x")])
    r = is_zero_module(P)
    assert not r.is_zero and r.verify()
    assert r.remainder == vec("1")
    assert module_quotient_dimension(P) == len(P.standard_terms()) == 1


def test_f5_omega_zero_with_inverse():
    F5 = GF(5)
    A = AlgebraPresentation.parse(F5, ["x"], ["x^2-2"])
    P = FpModulePresentation(A, ["dx"], [vec("2*x", base=F5)])
    r = is_zero_module(P)
    assert r.is_zero and r.verify()
    (g,) = r.relation_coefficients(0)
    assert A.reduce(g * parse_poly("2*x", X, F5)) == parse_poly("1", X, F5)
    # 2x * 3x = 6x^2 = 12 = 2 mod 5, so the inverse of 2x is 4x
    assert g == parse_poly("4*x", X, F5)


def test_cokernel_examples():
    A = AlgebraPresentation.parse(QQ, ["x"], ["x^2"])
    P = cokernel_presentation([[parse_poly("2*x", X, QQ)]], A)
    assert P.generators == ("dx",) and P.relations == (vec("2*x"),)
    free = AlgebraPresentation.parse(QQ, ["x"], [])
    P = cokernel_presentation([[]], free)
    assert P.generators == ("dx",) and P.relations == ()
    assert P.standard_terms() is INFINITE
    B = AlgebraPresentation.parse(QQ, XY, [])
    J = jacobian([parse_poly(t, XY, QQ) for t in ("x^2+y^2", "x*y")], XY)
    P = cokernel_presentation(J, B)
    assert P.generators == ("dx", "dy")
    assert P.relations == (vec("2*x", "2*y", variables=XY), vec("y", "x", variables=XY))


def test_cokernel_shape_mismatch():
    A = AlgebraPresentation.parse(QQ, ["x"], [])
    with pytest.raises(ShapeMismatch):
        cokernel_presentation([[], []], A)


def test_zero_test_invariant_under_reordering():
    A = AlgebraPresentation.parse(QQ, XY, ["x^2", "y^2"])
    J = jacobian([parse_poly(t, XY, QQ) for t in ("x^2", "y^2", "x*y-1")], XY)
    P = cokernel_presentation(J, A)
    base = is_zero_module(P).is_zero
    assert is_zero_module(P.permuted([1, 0], [2, 0, 1])).is_zero == base


# property tests over random finite-dimensional algebras


@st.composite
def modules(draw, base):
    a, b = draw(st.integers(1, 3)), draw(st.integers(1, 3))
    rels = [
        Polynomial.monomial((a, 0), XY, base) + draw(polynomials(base, max_degree=a - 1, max_terms=2)),
        Polynomial.monomial((0, b), XY, base) + draw(polynomials(base, max_degree=b - 1, max_terms=2)),
    ]
    A = AlgebraPresentation(base, XY, rels)
    rank = draw(st.integers(1, 2))
    vecs = draw(st.lists(st.lists(polynomials(base, max_degree=2, max_terms=3), min_size=rank, max_size=rank), max_size=3))
    return FpModulePresentation(A, [f"e{i}" for i in range(rank)], [FreeModuleElement(v) for v in vecs])


@pytest.mark.parametrize("base", FIELDS, ids=FIELD_IDS)
def test_module_properties(base):
    @settings(max_examples=200, derandomize=True)
    @given(modules(base), st.data())
    def run(P, data):
        G = P.submodule_basis
        for g in P.submodule_generators:
            assert P.reduce(g).is_zero()
        for k, e in enumerate(G.elements):
            total = P.zero_vector()
            for c, g in zip(G.cofactors[k], P.submodule_generators):
                total = total + g.scale(c)
            assert total == e
        v = FreeModuleElement(data.draw(polynomials(base, max_degree=3)) for _ in range(P.rank))
        r = P.reduce(v)
        assert P.reduce(r) == r
        assert len(P.standard_terms()) == module_quotient_dimension(P)
        z = is_zero_module(P)
        assert z.verify()
        assert z.is_zero == (module_quotient_dimension(P) == 0)

    run()
