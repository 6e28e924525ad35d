"""Fixture corpora: algebras, finite rings, modules, Beck modules and torsors.

The algebra corpus is shipped as JSON; ring-side objects are built from
small presentations and products so that every table is reproducible.
All lists come back in a fixed canonical order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .beck import TorsorCandidate, trivial_extension, verify_torsor
from .data import read_fixture
from .exactnum import GF, ZZ, PrimeField
from .fpalg import (
    AlgebraPresentation,
    FiniteModule,
    FiniteRingTable,
    TableMap,
    integer_ring_mod,
    product_ring,
    to_finite_table,
)

__all__ = [
    "RING_BOUND",
    "MODULE_BOUND",
    "load_algebras",
    "ring_corpus",
    "module_corpus",
    "beck_module_corpus",
    "torsor_corpus",
    "test_objects",
    "presentation_table",
    "quotient_map",
    "NamedTorsor",
    "quotient_group",
    "group_torsor_corpus",
    "random_polynomial",
]

RING_BOUND = 16
MODULE_BOUND = 9


@lru_cache(maxsize=None)
def load_algebras() -> tuple:
    return tuple(AlgebraPresentation.from_json(obj) for obj in read_fixture("algebras.json"))


def presentation_table(p, gens, rels, name) -> FiniteRingTable:
    T = to_finite_table(AlgebraPresentation.parse(GF(p), gens, rels, name))
    T.name = name
    return T


def quotient_map(source: FiniteRingTable, target: FiniteRingTable) -> TableMap:
    """The map between presentation tables on the same generators sending each class to its image."""
    mapping = np.array([target.encode(source.element_poly(a)) for a in range(source.size)], dtype=np.int64)
    return TableMap(source, target, mapping)


def _product(R, S, name):
    T = product_ring(R, S, name)
    return T


@lru_cache(maxsize=None)
def _rings() -> tuple:
    F2 = presentation_table(2, [], [], "F2")
    F3 = presentation_table(3, [], [], "F3")
    F4 = presentation_table(2, ["x"], ["x^2+x+1"], "F4")
    F2e = presentation_table(2, ["x"], ["x^2"], "F2[x]/(x^2)")
    out = [
        integer_ring_mod(1),
        F2,
        F3,
        integer_ring_mod(4),
        F4,
        F2e,
        _product(F2, F2, "F2xF2"),
        presentation_table(5, [], [], "F5"),
        integer_ring_mod(6),
        presentation_table(2, ["x"], ["x^3+x+1"], "F8"),
        presentation_table(2, ["x"], ["x^3"], "F2[x]/(x^3)"),
        presentation_table(2, ["x", "y"], ["x^2", "x*y", "y^2"], "F2[x,y]/(x,y)^2"),
        integer_ring_mod(8),
        _product(F2, F4, "F2xF4"),
        _product(_product(F2, F2, "F2xF2"), F2, "F2xF2xF2"),
        _product(F2, F2e, "F2xF2[x]/(x^2)"),
        presentation_table(3, ["x"], ["x^2+1"], "F9"),
        presentation_table(3, ["x"], ["x^2"], "F3[x]/(x^2)"),
        integer_ring_mod(9),
        _product(F3, F3, "F3xF3"),
        presentation_table(2, ["x"], ["x^4+x+1"], "F16"),
        presentation_table(2, ["x"], ["x^4"], "F2[x]/(x^4)"),
        presentation_table(2, ["x", "y"], ["x^2", "y^2"], "F2[x,y]/(x^2,y^2)"),
        presentation_table(2, ["x", "y"], ["x^2+x+1", "y^2"], "F4[y]/(y^2)"),
        _product(F4, F4, "F4xF4"),
    ]
    return tuple(out)


def ring_corpus(max_size: int = RING_BOUND) -> list:
    """Finite commutative rings of size at most ``max_size``, smallest first."""
    return [R for R in _rings() if R.size <= max_size]


def _ideal(C: FiniteRingTable, gens):
    J = {C.zero}
    frontier = [int(C.mul[c, g]) for g in gens for c in range(C.size)]
    J.update(frontier)
    changed = True
    while changed:
        changed = False
        cur = list(J)
        for a in cur:
            for b in cur:
                s = int(C.add[a, b])
                if s not in J:
                    J.add(s)
                    changed = True
    return frozenset(J)


@lru_cache(maxsize=None)
def _modules(ring_index: int) -> tuple:
    C = _rings()[ring_index]
    ideals = {}
    for a in range(C.size):
        for b in range(a, C.size):
            J = _ideal(C, (a, b))
            if C.size // len(J) <= MODULE_BOUND:
                ideals.setdefault(J, (a, b))
    out = []
    for J in sorted(ideals, key=lambda J: (-len(J), sorted(J))):
        M = FiniteModule.quotient(C, J)
        M.name = f"{C.name}/({', '.join(C.label(g) for g in sorted(set(ideals[J])))})"
        out.append(M)
    # squares of the small cyclic quotients
    for M in list(out):
        if 1 < M.size and M.size**2 <= MODULE_BOUND:
            S = M.direct_sum(M)
            S.name = f"({M.name})^2"
            out.append(S)
    return tuple(out)


def module_corpus(C: FiniteRingTable, max_size: int = MODULE_BOUND) -> list:
    """Modules over a corpus ring: quotients by 2-generated ideals and small squares."""
    for i, R in enumerate(_rings()):
        if R is C:
            return [M for M in _modules(i) if M.size <= max_size]
    raise ValueError("ring is not part of the corpus")


@lru_cache(maxsize=None)
def _beck_modules() -> tuple:
    return tuple(trivial_extension(C, M) for C in _rings() for M in module_corpus(C))


def beck_module_corpus(max_ring: int = RING_BOUND, max_module: int = MODULE_BOUND) -> list:
    return [E for E in _beck_modules() if E.base.size <= max_ring and E.module.size <= max_module]


@dataclass(frozen=True)
class NamedTorsor:
    name: str
    torsor: TorsorCandidate
    expected_split: bool | None = None


@lru_cache(maxsize=None)
def _curated_torsors() -> tuple:
    Z = integer_ring_mod
    specs = [
        ("Z/4 -> Z/2", TableMap(Z(4), Z(2), np.arange(4) % 2), False),
        ("Z/8 -> Z/4", TableMap(Z(8), Z(4), np.arange(8) % 4), False),
        ("Z/9 -> Z/3", TableMap(Z(9), Z(3), np.arange(9) % 3), False),
    ]
    pairs = [
        (2, ["x"], ["x^2"], [], "F2[x]/(x^2) -> F2", True),
        (3, ["x"], ["x^2"], [], "F3[x]/(x^2) -> F3", True),
        (2, ["x", "y"], ["x^2", "x*y", "y^2"], [], "F2[x,y]/(x,y)^2 -> F2", True),
        (2, ["x"], ["x^3"], ["x^2"], "F2[x]/(x^3) -> F2[x]/(x^2)", False),
        (3, ["x"], ["x^3"], ["x^2"], "F3[x]/(x^3) -> F3[x]/(x^2)", False),
        (2, ["x"], ["x^4"], ["x^2"], "F2[x]/(x^4) -> F2[x]/(x^2)", False),
        (2, ["x"], ["x^4"], ["x^3"], "F2[x]/(x^4) -> F2[x]/(x^3)", False),
        (2, ["x", "y"], ["x^2", "y^2"], ["x^2", "y"], "F2[x,y]/(x^2,y^2) -> F2[x]/(x^2)", True),
        (2, ["x", "y"], ["x^2+x+1", "y^2"], ["x^2+x+1", "y"], "F4[y]/(y^2) -> F4", True),
    ]
    for p, gens, rels, extra, name, split in pairs:
        D = presentation_table(p, gens, rels, name.split(" -> ")[0])
        tgt = rels + extra if extra else [*gens]
        C = presentation_table(p, gens, tgt, name.split(" -> ")[1])
        specs.append((name, quotient_map(D, C), split))
    return tuple(NamedTorsor(name, verify_torsor(q, name=name), split) for name, q, split in specs)


def torsor_corpus(*, include_beck_modules=True) -> list:
    """Curated torsors (split and non-split) followed by every Beck module as a self-torsor."""
    out = list(_curated_torsors())
    if include_beck_modules:
        for E in beck_module_corpus():
            out.append(NamedTorsor(f"{E.total.name} -> {E.base.name}", E.as_torsor(), True))
    return out


@lru_cache(maxsize=None)
def test_objects() -> tuple:
    """Test objects X for the Hom-level fiber bijection, with finite Hom sets into tables."""
    return (
        AlgebraPresentation.parse(ZZ, [], [], "Z"),
        AlgebraPresentation.parse(ZZ, ["t"], ["t^2"], "Z[t]/(t^2)"),
        AlgebraPresentation.parse(ZZ, ["t"], ["t^2-t"], "Z[t]/(t^2-t)"),
        AlgebraPresentation.parse(ZZ, ["t"], ["2*t"], "Z[t]/(2t)"),
        AlgebraPresentation.parse(GF(2), [], [], "F2"),
        AlgebraPresentation.parse(GF(2), ["t"], ["t^2"], "F2[t]/(t^2)"),
        AlgebraPresentation.parse(GF(2), ["t"], ["t^2+t"], "F2[t]/(t^2+t)"),
        AlgebraPresentation.parse(GF(2), ["s", "t"], ["s^2", "s*t", "t^2"], "F2[s,t]/(s,t)^2"),
        AlgebraPresentation.parse(GF(3), ["t"], ["t^2"], "F3[t]/(t^2)"),
    )


# ---------------------------------------------------------------------------
# groups


def quotient_group(G, normal_gens, name=""):
    """``G / N`` for the normal subgroup generated by ``normal_gens``, with the quotient map."""
    from .grpbeck import FiniteGroupTable

    N = G.generated(list(normal_gens))
    cls_of = np.full(G.size, -1, dtype=np.int64)
    reps = []
    for g in range(G.size):
        if cls_of[g] < 0:
            coset = G.mul[g, N]
            cls_of[coset] = len(reps)
            reps.append(g)
    reps = np.array(reps, dtype=np.int64)
    mul = cls_of[G.mul[reps[:, None], reps[None, :]]]
    labels = [f"{G.label(int(r))}N" for r in reps]
    Q = FiniteGroupTable(mul, int(cls_of[G.identity]), labels, name or f"{G.name}/N")
    return Q, cls_of


@lru_cache(maxsize=None)
def group_torsor_corpus() -> tuple:
    """Curated group extensions with abelian kernel, verified as torsors.

    Contains quotient maps of fixture groups, ``G x Z/p -> G`` for every
    fixture group and prime ``p`` dividing ``|G|`` (``p = 2`` for the trivial
    group), and two semidirect products with nontrivial action.
    """
    from .grpbeck import (
        GModuleTable,
        GroupExtensionCandidate,
        cyclic_group,
        direct_product,
        load_fixture_groups,
        semidirect_product,
        verify_group_torsor,
    )

    G = load_fixture_groups()
    out = []

    def center_gen(H):
        for z in range(H.size):
            if z != H.identity and (H.mul[z] == H.mul[:, z]).all():
                return z
        raise ValueError("trivial center")

    def a3(H):
        return next(g for g in range(H.size) if H.order(g) == 3)

    quotients = [
        ("Z4", [2], "Z2"),
        ("Z8", [4], "Z4"),
        ("Z8", [2], "Z2"),
        ("Z6", [3], "Z3"),
        ("Z6", [2], "Z2"),
        ("S3", [a3(G["S3"])], "Z2"),
        ("Q8", [center_gen(G["Q8"])], "Z2xZ2"),
        ("D4", [center_gen(G["D4"])], "Z2xZ2"),
        ("Z2xZ2", [1], "Z2"),
        ("Z4xZ2", [1], "Z4"),
        ("Z4xZ2", [4], "Z2xZ2"),
        ("Z2xZ2xZ2", [1], "Z2xZ2"),
    ]
    for src, gens, tgt in quotients:
        Q, q = quotient_group(G[src], gens, tgt)
        ext = GroupExtensionCandidate(G[src], Q, q, name=f"{src} -> {tgt}")
        out.append(verify_group_torsor(ext))
    for name, H in G.items():
        primes = [p for p in (2, 3, 5, 7) if H.size % p == 0] or [2]
        for p in primes:
            Zp = cyclic_group(p)
            E = direct_product(H, Zp, f"{name} x Z{p}")
            # (h, a) has index h + |H| a, so projection is index mod |H|
            ext = GroupExtensionCandidate(E, H, np.arange(E.size) % H.size, section=np.arange(H.size), name=f"{name} x Z{p} -> {name}")
            out.append(verify_group_torsor(ext))
    Z2, Z3, Z4 = cyclic_group(2), cyclic_group(3), cyclic_group(4)
    for M, label in (
        (GModuleTable(Z2, Z3, [[0, 1, 2], [0, 2, 1]], "Z3"), "Z3x|Z2 -> Z2"),
        (GModuleTable(Z2, Z4, [[0, 1, 2, 3], [0, 3, 2, 1]], "Z4"), "Z4x|Z2 -> Z2"),
    ):
        ext = semidirect_product(M)
        ext.name = label
        out.append(verify_group_torsor(ext))
    return tuple(out)


# ---------------------------------------------------------------------------
# random sampling


def random_polynomial(rng, variables, base, *, max_degree=3, max_terms=4):
    """A random polynomial; ``rng`` is a :class:`random.Random`."""
    from .polyring import Polynomial

    n = len(variables)
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        d = rng.randint(0, max_degree)
        cuts = sorted(rng.randint(0, d) for _ in range(max(n - 1, 0)))
        exps = tuple(b - a for a, b in zip([0] + cuts, cuts + [d])) if n else ()
        if isinstance(base, PrimeField):
            c = base.from_int(rng.randrange(base.p))
        else:
            c = base.from_fraction(rng.randint(-5, 5), rng.randint(1, 4))
        terms[exps] = base.add(terms.get(exps, base.zero()), c)
    return Polynomial(variables, base, terms)
