"""Finitely presented modules over ``k[x]/I`` via module Gröbner bases.

Submodules of ``B^n`` are handled in the free module ``k[x]^n`` by adjoining
the vectors ``g * e_i`` for every ``g`` in a Gröbner basis of ``I``.  Terms
are ordered position-over-term: a lower coordinate index is larger than any
term in a higher one, and terms within a coordinate follow degrevlex.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from . import _gbcore
from ._gbcore import Limits
from .errors import InputError, MixedContext, NonFieldBase, RankMismatch, ShapeMismatch
from .fpalg import AlgebraPresentation
from .polyring import INFINITE, DegRevLex, MonomialOrder, Polynomial, PositionOverTerm, standard_monomials

__all__ = [
    "FreeModuleElement",
    "FpModulePresentation",
    "ModuleGroebnerBasis",
    "ZeroTestResult",
    "module_buchberger",
    "module_normal_form",
    "is_zero_module",
    "cokernel_presentation",
]


class FreeModuleElement:
    """Immutable vector of polynomials sharing variables and base."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        coords = tuple(coords)
        if not coords:
            raise RankMismatch("free module elements need rank >= 1")
        first = coords[0]
        for c in coords[1:]:
            if c.variables != first.variables or c.base != first.base:
                raise MixedContext("coordinates over different rings")
        self.coords = coords

    @classmethod
    def unit(cls, i, rank, variables, base):
        return cls(
            Polynomial.constant(1 if j == i else 0, variables, base) for j in range(rank)
        )

    @classmethod
    def zero(cls, rank, variables, base):
        return cls(Polynomial.zero(variables, base) for _ in range(rank))

    @classmethod
    def from_vec(cls, vec, rank, variables, base):
        parts = [dict() for _ in range(rank)]
        for (pos, m), c in vec.items():
            parts[pos][m] = c
        return cls(Polynomial(variables, base, p) for p in parts)

    @property
    def rank(self):
        return len(self.coords)

    @property
    def variables(self):
        return self.coords[0].variables

    @property
    def base(self):
        return self.coords[0].base

    def to_vec(self):
        return {(i, m): c for i, p in enumerate(self.coords) for m, c in p.terms.items()}

    def is_zero(self):
        return all(c.is_zero() for c in self.coords)

    def _check(self, other):
        if self.rank != other.rank:
            raise RankMismatch(f"rank {self.rank} vs {other.rank}")

    def __add__(self, other):
        self._check(other)
        return FreeModuleElement(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other):
        self._check(other)
        return FreeModuleElement(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self):
        return FreeModuleElement(-a for a in self.coords)

    def scale(self, f: Polynomial):
        return FreeModuleElement(f * a for a in self.coords)

    __rmul__ = scale

    def __eq__(self, other):
        if not isinstance(other, FreeModuleElement):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __repr__(self):
        return "(" + ", ".join(c.to_text() for c in self.coords) + ")"


@dataclass(frozen=True, eq=False)
class ModuleGroebnerBasis:
    order: MonomialOrder
    rank: int
    variables: tuple
    base: object
    elements: tuple
    generators: tuple = ()
    cofactors: tuple | None = None
    _cores: list = field(default=None, repr=False)

    def core_elements(self):
        if self._cores is None:
            key = self.order.term_key
            cores = [_gbcore.Element(e.to_vec(), key, 0) for e in self.elements]
            object.__setattr__(self, "_cores", cores)
        return self._cores

    @cached_property
    def leading_terms(self):
        return tuple(c.lead for c in self.core_elements())

    def standard_terms(self):
        """``(position, exponents)`` pairs outside the leading submodule, or INFINITE."""
        nvars = len(self.variables)
        out = []
        for pos in range(self.rank):
            leads = [m for p, m in self.leading_terms if p == pos]
            if not leads:
                return INFINITE
            std = standard_monomials(leads, nvars)
            if std is INFINITE:
                return INFINITE
            out.extend((pos, m) for m in std)
        return out

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def _pot(order):
    if order is None:
        return PositionOverTerm(DegRevLex())
    if not isinstance(order, PositionOverTerm):
        return PositionOverTerm(order)
    return order


def module_buchberger(
    gens,
    order: MonomialOrder | None = None,
    *,
    rank=None,
    variables=None,
    base=None,
    track_cofactors=False,
    limits: Limits | None = None,
) -> ModuleGroebnerBasis:
    """Reduced Gröbner basis of the submodule spanned by ``gens``."""
    order = _pot(order)
    gens = list(gens)
    if gens:
        rank, variables, base = gens[0].rank, gens[0].variables, gens[0].base
        for g in gens[1:]:
            if g.rank != rank:
                raise RankMismatch(f"rank {g.rank} vs {rank}")
            if g.variables != variables or g.base != base:
                raise MixedContext("generators over different rings")
    elif rank is None or variables is None or base is None:
        raise InputError("empty generator list needs rank, variables and base")
    if not base.is_field:
        raise NonFieldBase(f"module Gröbner bases need a field base, got {base!r}")
    core = _gbcore.groebner(
        [g.to_vec() for g in gens],
        order.term_key,
        base,
        product_criterion=False,
        track=track_cofactors,
        limits=limits,
    )
    elements = tuple(FreeModuleElement.from_vec(e.vec, rank, variables, base) for e in core)
    cofactors = None
    if track_cofactors:
        cofactors = tuple(
            tuple(Polynomial(variables, base, dict(h)) for h in e.cof) for e in core
        )
    return ModuleGroebnerBasis(order, rank, tuple(variables), base, elements, tuple(gens), cofactors, core)


def module_normal_form(v: FreeModuleElement, basis: ModuleGroebnerBasis, *, limits=None) -> FreeModuleElement:
    if v.rank != basis.rank:
        raise RankMismatch(f"rank {v.rank} vs {basis.rank}")
    if v.variables != basis.variables or v.base != basis.base:
        raise MixedContext("vector and basis live over different rings")
    rem = _gbcore.reduce_vector(v.to_vec(), basis.core_elements(), basis.order.term_key, basis.base, limits=limits)
    return FreeModuleElement.from_vec(rem, v.rank, v.variables, v.base)


def _reduce_with_cofactors(v, basis, ngens):
    """Remainder of ``v`` and coefficients ``c`` with ``v - rem = sum c_j * gen_j``."""
    quotients = [dict() for _ in basis.elements]
    rem = _gbcore.reduce_vector(
        v.to_vec(), basis.core_elements(), basis.order.term_key, basis.base, quotients=quotients
    )
    variables, base = basis.variables, basis.base
    combo = [Polynomial.zero(variables, base) for _ in range(ngens)]
    for q, cof in zip(quotients, basis.cofactors):
        if not q:
            continue
        qp = Polynomial(variables, base, q)
        for j, h in enumerate(cof):
            if h:
                combo[j] = combo[j] + qp * h
    return FreeModuleElement.from_vec(rem, v.rank, variables, base), combo


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True, eq=False)
class FpModulePresentation:
    """Module over ``ambient`` with named generators and relation vectors."""

    ambient: AlgebraPresentation
    generators: tuple
    relations: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relations", tuple(self.relations))
        n = len(self.generators)
        for r in self.relations:
            if r.rank != n:
                raise RankMismatch(f"relation of rank {r.rank} for {n} generators")
            if r.variables != self.ambient.generators or r.base != self.ambient.base:
                raise MixedContext("relation is not over the ambient ring")

    @property
    def rank(self):
        return len(self.generators)

    @cached_property
    def ideal_vectors(self):
        """``g * e_i`` for ``g`` in the ambient Gröbner basis."""
        n = self.rank
        out = []
        zero = Polynomial.zero(self.ambient.generators, self.ambient.base)
        for i in range(n):
            for g in self.ambient.groebner.elements:
                out.append(FreeModuleElement(g if j == i else zero for j in range(n)))
        return tuple(out)

    @cached_property
    def submodule_generators(self):
        return self.relations + self.ideal_vectors

    @cached_property
    def submodule_basis(self) -> ModuleGroebnerBasis:
        return module_buchberger(
            self.submodule_generators,
            rank=self.rank,
            variables=self.ambient.generators,
            base=self.ambient.base,
            track_cofactors=True,
        )

    def reduce(self, v: FreeModuleElement) -> FreeModuleElement:
        if self.rank == 0:
            return v
        return module_normal_form(v, self.submodule_basis)

    def unit(self, i) -> FreeModuleElement:
        return FreeModuleElement.unit(i, self.rank, self.ambient.generators, self.ambient.base)

    def zero_vector(self) -> FreeModuleElement | None:
        if self.rank == 0:
            return None
        return FreeModuleElement.zero(self.rank, self.ambient.generators, self.ambient.base)

    def standard_terms(self):
        """k-basis of the module as ``(position, exponents)`` pairs, or INFINITE."""
        if self.rank == 0:
            return []
        return self.submodule_basis.standard_terms()

    def permuted(self, gen_perm, rel_perm):
        """Same module with generators and relations reordered."""
        gens = tuple(self.generators[i] for i in gen_perm)
        rels = tuple(
            FreeModuleElement(self.relations[j].coords[i] for i in gen_perm) for j in rel_perm
        )
        return FpModulePresentation(self.ambient, gens, rels)

    def to_json(self):
        return {
            "generators": list(self.generators),
            "relations": [[c.to_text() for c in r.coords] for r in self.relations],
        }

    @classmethod
    def from_json(cls, ambient: AlgebraPresentation, obj):
        try:
            gens = obj["generators"]
            rels = [FreeModuleElement(ambient.poly(t) for t in row) for row in obj.get("relations", [])]
        except KeyError as exc:
            raise InputError(f"module JSON is missing {exc}") from exc
        return cls(ambient, gens, rels)

    def __repr__(self):
        rels = ", ".join(repr(r) for r in self.relations)
        return f"<{', '.join(self.generators)} | {rels}>"


@dataclass
class ZeroTestResult:
    """Outcome of :func:`is_zero_module` with its certificate.

    For a zero module, ``combinations[i]`` lists one coefficient per entry
    of ``generators`` such that the combination equals ``e_i``.  Otherwise
    ``failing_index`` names a generator whose class is nonzero and
    ``remainder`` is its normal form.
    """

    is_zero: bool
    presentation: FpModulePresentation
    generators: tuple
    combinations: dict = field(default_factory=dict)
    failing_index: int | None = None
    remainder: FreeModuleElement | None = None

    def __bool__(self):
        return self.is_zero

    def verify(self) -> bool:
        """Recheck the certificate by direct multiplication.

        A positive answer is confirmed by recombining the stored
        coefficients; a negative one by checking that the remainder differs
        from ``e_i`` by an explicit member of the submodule and is itself
        irreducible.
        """
        P = self.presentation
        if not self.is_zero:
            i = self.failing_index
            if i is None or self.remainder is None or self.remainder.is_zero():
                return False
            return P.reduce(self.remainder) == self.remainder
        for i in range(P.rank):
            coeffs = self.combinations.get(i)
            if coeffs is None or len(coeffs) != len(self.generators):
                return False
            total = P.zero_vector()
            for c, g in zip(coeffs, self.generators):
                if c:
                    total = total + g.scale(c)
            if total != P.unit(i):
                return False
        return True

    def relation_coefficients(self, i):
        """Coefficients on the presentation's own relations, reduced modulo the ideal."""
        P = self.presentation
        m = len(P.relations)
        return [P.ambient.reduce(c) for c in self.combinations[i][:m]]


def is_zero_module(P: FpModulePresentation) -> ZeroTestResult:
    if not P.ambient.base.is_field:
        raise NonFieldBase(f"zero test needs a field base, got {P.ambient.base!r}")
    gens = P.submodule_generators
    if P.rank == 0:
        return ZeroTestResult(True, P, gens)
    basis = P.submodule_basis
    combos = {}
    for i in range(P.rank):
        rem, combo = _reduce_with_cofactors(P.unit(i), basis, len(gens))
        if not rem.is_zero():
            return ZeroTestResult(False, P, gens, failing_index=i, remainder=rem)
        combos[i] = combo
    return ZeroTestResult(True, P, gens, combos)


def cokernel_presentation(J, ambient: AlgebraPresentation, names=None) -> FpModulePresentation:
    """Module generated by ``d<x_i>`` with one relation per column of ``J``."""
    n = ambient.ngens
    if len(J) != n:
        raise ShapeMismatch(f"matrix has {len(J)} rows, ambient ring has {n} generators")
    ncols = {len(row) for row in J}
    if len(ncols) > 1:
        raise ShapeMismatch("ragged matrix")
    m = ncols.pop() if ncols else 0
    names = tuple(names) if names is not None else tuple(f"d{g}" for g in ambient.generators)
    rels = tuple(FreeModuleElement(J[i][j] for i in range(n)) for j in range(m)) if n else ()
    return FpModulePresentation(ambient, names, rels)
