import itertools
import random

import numpy as np
import pytest

from beckdiff import corpus
from beckdiff.beck import (
    adjunction_cardinalities,
    find_ring_sections,
    kahler,
    lift_check,
    pullback_module,
    torsor_fiber_bijection,
    trivial_extension,
    unramified_check,
    verify_torsor,
)
from beckdiff.errors import KernelSquareNonzero, NonFieldBase, NotSurjective
from beckdiff.exactnum import GF, QQ, ZZ
from beckdiff.fpalg import (
    AlgebraHom,
    AlgebraPresentation,
    FiniteModule,
    TableMap,
    enumerate_homs,
    integer_ring_mod,
    to_finite_table,
)
from beckdiff.oracles import derivation_dimension, hom_omega_dimension, module_quotient_dimension
from beckdiff.polyring import parse_poly

from test_fpalg import isomorphic

F2, F3, F5 = GF(2), GF(3), GF(5)
ALGEBRAS = corpus.load_algebras()


def alg(base, gens, rels):
    return AlgebraPresentation.parse(base, gens, rels)


def table(base, gens, rels):
    return to_finite_table(alg(base, gens, rels))


def residue_map(n, m):
    return TableMap(integer_ring_mod(n), integer_ring_mod(m), [i % m for i in range(n)])


# trivial extensions


def test_trivial_extension_z2():
    C = integer_ring_mod(2)
    E = trivial_extension(C, FiniteModule.regular(C))
    assert E.total.size == 4
    eps = E.pair(0, 1)
    assert E.total.mul[eps, eps] == E.total.zero
    assert isomorphic(E.total, table(F2, ["e"], ["e^2"]))


def test_trivial_extension_zero_module():
    for C in corpus.ring_corpus()[:8]:
        E = trivial_extension(C, FiniteModule.zero_module(C))
        assert E.total.size == C.size
        assert (E.projection.mapping == np.arange(C.size)).all()


def test_trivial_extension_f3():
    C = table(F3, [], [])
    E = trivial_extension(C, FiniteModule.regular(C))
    assert E.total.size == 9
    assert isomorphic(E.total, table(F3, ["e"], ["e^2"]))


def test_beck_module_invariants():
    for E in corpus.beck_module_corpus():
        C, M, T = E.base, E.module, E.total
        n = C.size
        assert (E.projection.mapping[E.unit_section.mapping] == np.arange(n)).all()
        for m1, m2 in itertools.product(range(M.size), repeat=2):
            assert T.mul[E.pair(C.zero, m1), E.pair(C.zero, m2)] == T.zero
        c = C.one
        for m1, m2 in itertools.product(range(M.size), repeat=2):
            assert E.fiber_add(E.pair(c, m1), E.pair(c, m2)) == E.fiber_add(E.pair(c, m2), E.pair(c, m1))


# Kähler differentials


def test_kahler_examples():
    O = kahler(alg(QQ, ["x"], ["x^2"]))
    assert O.presentation.generators == ("dx",)
    assert [r.coords[0].to_text() for r in O.presentation.relations] == ["2*x"]
    assert not O.is_zero
    assert O.dimension() == 1
    assert kahler(alg(QQ, [], [])).is_zero
    assert kahler(alg(QQ, [], [])).presentation.generators == ()
    assert kahler(alg(F5, ["x"], ["x^2-2"])).is_zero


def test_kahler_needs_field():
    with pytest.raises(NonFieldBase):
        kahler(alg(ZZ, ["x"], ["x^2"]))


def test_kahler_dimension_matches_oracle():
    for B in ALGEBRAS:
        O = kahler(B)
        assert O.dimension() == module_quotient_dimension(O.presentation), B


def test_adjunction_dimensions():
    # Der(B, B) and Hom_B(Omega, B) computed independently
    for B in ALGEBRAS:
        assert derivation_dimension(B) == hom_omega_dimension(B), B


@pytest.mark.parametrize("B", ALGEBRAS, ids=lambda B: B.name)
def test_leibniz_and_scalars(B):
    O = kahler(B)
    rng = random.Random(B.name)
    one = B.constant(1)
    for c in (0, 1, 2, 3):
        d = O.d(B.constant(c))
        assert d is None or d.is_zero()
    gens = [B.var(g) for g in B.generators] + [one]
    samples = gens + [corpus.random_polynomial(rng, B.generators, B.base) for _ in range(6)]
    for f, g in itertools.product(samples, repeat=2):
        lhs = O.d(f * g)
        if lhs is None:
            continue
        rhs = O.scale(f, O.d(g)) + O.scale(g, O.d(f))
        assert O.presentation.reduce(lhs - rhs).is_zero()
    # d kills the relations
    for r in B.relations:
        if O.d(r) is not None:
            assert O.d(r).is_zero()


# unramified check


def test_unramified_qx2_witness():
    r = unramified_check(alg(QQ, ["x"], ["x^2"]))
    assert not r.unramified
    w = r.witness
    assert w is not None and w.verify()
    d = r.to_json()
    assert d["nonzero_generator"] == "dx"
    assert d["witness"]["s0"] == [["x", []]]
    assert d["witness"]["s1"] == [["x", ["1"]]]


def test_unramified_examples():
    assert unramified_check(alg(QQ, [], [])).unramified
    r = unramified_check(alg(F2, ["x"], ["x^2+x"]))
    assert r.unramified and r.certificate.verify()
    (c,) = r.certificate.relation_coefficients(0)
    B = r.algebra
    assert B.reduce(c * parse_poly("2*x+1", ("x",), F2)) == B.constant(1)


def test_unramified_verdicts_cover_corpus():
    verdicts = [unramified_check(B).unramified for B in ALGEBRAS]
    assert any(verdicts) and not all(verdicts)
    for B, v in zip(ALGEBRAS, verdicts):
        r = unramified_check(B)
        assert r.certificate.verify()
        if not v:
            assert r.witness.verify()


# torsors


def test_torsor_z4_z2():
    T = verify_torsor(residue_map(4, 2))
    assert all(T.checks.values())
    assert not T.split and T.section is None
    assert T.fiber_product_size == 8
    # no section exists: search every map Z/2 -> Z/4
    Z2, Z4 = integer_ring_mod(2), integer_ring_mod(4)
    for images in itertools.product(range(4), repeat=2):
        s = TableMap(Z2, Z4, images, verify=False)
        ok = s.mapping[Z2.one] == Z4.one and all(
            s.mapping[Z2.add[a, b]] == Z4.add[s.mapping[a], s.mapping[b]]
            and s.mapping[Z2.mul[a, b]] == Z4.mul[s.mapping[a], s.mapping[b]]
            for a in range(2)
            for b in range(2)
        )
        assert not ok


def test_torsor_f2_split():
    D = table(F2, ["x"], ["x^2"])
    C = table(F2, ["x"], ["x"])
    T = verify_torsor(corpus.quotient_map(D, C))
    assert T.split and T.section is not None
    assert (T.map.mapping[T.section.mapping] == np.arange(C.size)).all()


def test_torsor_z8_z2_rejected():
    with pytest.raises(KernelSquareNonzero) as info:
        verify_torsor(residue_map(8, 2))
    a, b = info.value.witness
    assert integer_ring_mod(8).mul[a, b] != 0


def test_torsor_not_surjective():
    D, C = table(F2, [], []), table(F2, ["t"], ["t^2"])
    with pytest.raises(NotSurjective):
        verify_torsor(TableMap(D, C, [C.zero, C.one]))


def test_split_matches_section_search():
    for nt in corpus.torsor_corpus(include_beck_modules=False):
        T = nt.torsor
        assert T.split == nt.expected_split == bool(find_ring_sections(T.map))


def test_shear_map_bijective_by_count():
    for nt in corpus.torsor_corpus():
        T = nt.torsor
        n = T.base.size
        images = set()
        K = T.kernel.elements
        for d in range(T.total.size):
            for k in range(len(K)):
                e = T.act(T.beck_module.pair(int(T.map.mapping[d]), k), d)
                assert T.map.mapping[e] == T.map.mapping[d]
                images.add((e, d))
        kernel_pair = sum(int((T.map.mapping == y).sum()) ** 2 for y in range(n))
        assert len(images) == kernel_pair == T.fiber_product_size


# fiber bijection


def _expected_sizes(X, T):
    """Sum over Hom(X, Y) of |fiber in M| * |fiber in Z| and |fiber in Z|^2."""
    HY = list(enumerate_homs(X, T.base))
    M = T.beck_module
    fm = dict.fromkeys(HY, 0)
    fz = dict.fromkeys(HY, 0)
    for h in enumerate_homs(X, M.total):
        fm[tuple(int(M.projection.mapping[v]) for v in h)] += 1
    for h in enumerate_homs(X, T.total):
        fz[tuple(int(T.map.mapping[v]) for v in h)] += 1
    return sum(fm[y] * fz[y] for y in HY), sum(fz[y] ** 2 for y in HY)


def test_fiber_bijection_examples():
    T = verify_torsor(residue_map(4, 2))
    r = torsor_fiber_bijection(alg(ZZ, [], []), T)
    assert r.bijective and r.left_size == r.right_size == 1
    r = torsor_fiber_bijection(alg(F2, [], []), T)
    assert r.bijective and r.left_size == r.right_size == 0
    S = verify_torsor(corpus.quotient_map(table(F2, ["x"], ["x^2"]), table(F2, ["x"], ["x"])))
    X = alg(F2, ["t"], ["t^2"])
    r = torsor_fiber_bijection(X, S)
    assert r.bijective and (r.left_size, r.right_size) == _expected_sizes(X, S)


def test_fiber_bijection_corpus():
    for nt in corpus.torsor_corpus(include_beck_modules=False):
        for X in corpus.test_objects():
            r = torsor_fiber_bijection(X, nt.torsor)
            assert r.bijective, (nt.name, X)
            assert (r.left_size, r.right_size) == _expected_sizes(X, nt.torsor)


# lift checks


def test_lift_qx2_reduced_mod_3():
    Bp = alg(F3, ["x"], ["x^2"])
    C = to_finite_table(Bp)
    # K = F3 with x acting as zero
    x = C.encode(Bp.var("x"))
    E = trivial_extension(C, FiniteModule.quotient(C, set(C.mul[:, x].tolist())))
    assert E.module.size == 3
    r = lift_check(Bp, E)
    assert not r.injective
    a, b = r.colliding_pair
    assert a != b


def test_lift_base_only_bijective():
    B = alg(F2, [], [])
    for E in corpus.beck_module_corpus():
        if E.base.characteristic == 2:
            r = lift_check(B, E)
            assert r.bijective and r.hom_counts["Hom(B,Z)"] == r.hom_counts["Hom(B,Y)"] == 1


def test_lift_split_idempotent():
    B = alg(F2, ["x"], ["x^2+x"])
    S = verify_torsor(corpus.quotient_map(table(F2, ["x"], ["x^2"]), table(F2, ["x"], ["x"])))
    r = lift_check(B, S)
    assert r.injective and r.surjective


def test_lift_accepts_torsor_and_module():
    B = alg(F2, ["x"], ["x^2"])
    E = trivial_extension(table(F2, [], []), FiniteModule.regular(table(F2, [], [])))
    a = lift_check(B, E)
    b = lift_check(B, E.as_torsor())
    assert (a.injective, a.surjective) == (b.injective, b.surjective) == (False, True)


# pullback


def test_pullback_identity():
    C = integer_ring_mod(2)
    M = trivial_extension(C, FiniteModule.regular(C))
    P = pullback_module(TableMap.identity(C), M)
    assert P.pullback.total.size == 4
    assert P.pullback.total.same_table(M.total)
    assert all(u["all_unique"] for u in P.universal_property(corpus.test_objects()))


def test_pullback_zero_module():
    X = table(F2, ["t"], ["t^2"])
    Y = table(F2, ["t"], ["t"])
    M = trivial_extension(Y, FiniteModule.zero_module(Y))
    P = pullback_module(corpus.quotient_map(X, Y), M)
    assert P.pullback.module.size == 1
    assert P.pullback.total.size == X.size


def test_pullback_from_algebra_hom():
    X = alg(F2, ["t"], ["t^2"])
    Y = table(F2, [], [])
    psi = AlgebraHom(X, Y, [Y.zero]).verify()
    M = trivial_extension(Y, FiniteModule.regular(Y))
    P = pullback_module(psi, M)
    assert P.pullback.total.size == 8
    assert all(u["all_unique"] for u in P.universal_property(corpus.test_objects()))


# adjunction


def test_adjunction_cardinalities_small():
    for B in ALGEBRAS:
        if B.base == QQ or B.base.p ** B.dimension > 16:
            continue
        BT = to_finite_table(B)
        # cyclic modules B/(a), which include B itself and zero
        ideals = {frozenset(BT.mul[:, a].tolist()) for a in range(BT.size)}
        for J in sorted(ideals, key=sorted):
            M = FiniteModule.quotient(BT, J)
            left, right = adjunction_cardinalities(B, M, BT)
            assert left == right, (B, M)
