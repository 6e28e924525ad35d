"""Independent brute-force oracles used to cross-check the symbolic engine.

Everything here is plain linear algebra over the base field: Macaulay
matrices for ideal membership, explicit coordinate spaces for module
dimensions, and linear systems for derivations.  None of it calls
Buchberger on the object being checked, except where a k-basis of the
ambient quotient ring is needed to write coordinates.
"""

from __future__ import annotations

import itertools

from .errors import InputError, NonFieldBase
from .fpalg import AlgebraPresentation
from .polyring import Polynomial, jacobian

__all__ = [
    "RowSpace",
    "monomials_up_to",
    "macaulay_space",
    "macaulay_quotient_dimension",
    "macaulay_member",
    "module_quotient_dimension",
    "derivation_dimension",
    "hom_omega_dimension",
]


class RowSpace:
    """Incremental reduced echelon form of sparse rows ``{column: value}``.

    Columns are compared by the ``rank`` callable (smaller pivots first).
    """

    def __init__(self, base, rank=None):
        if not base.is_field:
            raise NonFieldBase("linear algebra needs a field")
        self.base = base
        self.rank_of = rank or (lambda c: c)
        self.pivots = {}

    def __len__(self):
        return len(self.pivots)

    def reduce(self, row):
        """Remainder of ``row`` after elimination by the stored pivots."""
        b = self.base
        row = {c: v for c, v in row.items() if not b.is_zero(v)}
        rem = {}
        while row:
            col = min(row, key=self.rank_of)
            f = row.pop(col)
            pr = self.pivots.get(col)
            if pr is None:
                rem[col] = f
                continue
            # pivot rows are monic at their smallest column
            for c, v in pr.items():
                if c == col:
                    continue
                nv = b.sub(row.get(c, b.zero()), b.mul(f, v))
                if b.is_zero(nv):
                    row.pop(c, None)
                else:
                    row[c] = nv
        return rem

    def add(self, row) -> bool:
        """Insert ``row``; returns True when it increased the rank."""
        r = self.reduce(row)
        if not r:
            return False
        b = self.base
        col = min(r, key=self.rank_of)
        inv = b.inv(r[col])
        self.pivots[col] = {c: b.mul(inv, v) for c, v in r.items()}
        return True

    def contains(self, row) -> bool:
        return not self.reduce(row)


def monomials_up_to(nvars: int, degree: int):
    return [m for m in itertools.product(range(degree + 1), repeat=nvars) if sum(m) <= degree]


def _shift(f: Polynomial, m):
    return {tuple(a + b for a, b in zip(k, m)): v for k, v in f.terms.items()}


def macaulay_space(gens, nvars, base, degree):
    """Span of ``m * g`` over monomials ``m`` with ``deg(m g) <= degree``."""
    space = RowSpace(base, rank=lambda c: (-sum(c), tuple(-e for e in c)))
    for g in gens:
        if g.is_zero():
            continue
        dg = g.degree
        for m in monomials_up_to(nvars, degree - dg) if dg <= degree else []:
            space.add(_shift(g, m))
    return space


def macaulay_quotient_dimension(gens, nvars, base, *, start=None, stable=3, max_degree=24):
    """Stabilized ``#monomials(<=D) - rank(Macaulay_D)`` and the degree where it settled.

    Returns ``(dimension, D)``, or ``(None, max_degree)`` when the values
    never settle (for instance when the quotient is infinite).
    """
    d = start if start is not None else max((g.degree for g in gens if not g.is_zero()), default=0)
    history = []
    while d <= max_degree:
        space = macaulay_space(gens, nvars, base, d)
        codim = len(monomials_up_to(nvars, d)) - len(space)
        history.append(codim)
        if len(history) >= stable and len(set(history[-stable:])) == 1:
            return codim, d
        d += 1
    return None, max_degree


def macaulay_member(f: Polynomial, gens, *, degree=None) -> bool:
    """Whether ``f`` lies in the span of the degree-``D`` Macaulay matrix.

    ``D`` defaults to the degree at which the quotient dimension stabilizes,
    lifted to at least ``deg f``.
    """
    nvars, base = f.nvars, f.base
    if degree is None:
        _, degree = macaulay_quotient_dimension(gens, nvars, base)
    degree = max(degree, f.degree)
    return macaulay_space(gens, nvars, base, degree).contains(dict(f.terms))


# ---------------------------------------------------------------------------
# modules and derivations over a finite-dimensional quotient


def _basis_coords(B: AlgebraPresentation):
    std = B.standard_monomials
    if not isinstance(std, list):
        raise InputError("the algebra is not finite dimensional")
    index = {m: i for i, m in enumerate(std)}

    def coords(p: Polynomial):
        r = B.reduce(p)
        return {index[m]: c for m, c in r.terms.items()}

    return std, coords


def module_quotient_dimension(P) -> int:
    """``dim_k B^n / (relations)`` from the k-span of ``s * r`` over a k-basis ``s`` of ``B``."""
    B = P.ambient
    std, coords = _basis_coords(B)
    n, N = P.rank, len(std)
    space = RowSpace(B.base)
    for r in P.relations:
        for s in std:
            mono = Polynomial.monomial(s, B.generators, B.base)
            row = {}
            for i, c in enumerate(r.coords):
                for j, v in coords(c * mono).items():
                    row[i * N + j] = v
            space.add(row)
    return n * N - len(space)


def _structure_constants(B: AlgebraPresentation):
    std, coords = _basis_coords(B)
    polys = [Polynomial.monomial(s, B.generators, B.base) for s in std]
    table = [[coords(a * b) for b in polys] for a in polys]
    return std, coords, table


def _nullity(rows, ncols, base):
    space = RowSpace(base)
    for r in rows:
        space.add(r)
    return ncols - len(space)


def derivation_dimension(B: AlgebraPresentation) -> int:
    """``dim_k Der_k(B, B)`` from the Leibniz rule on structure constants.

    Unknowns are ``D(s_a)_c`` for basis monomials ``s_a``; the equations are
    ``D(s_a s_b) = s_a D(s_b) + s_b D(s_a)`` for all pairs.
    """
    std, coords, table = _structure_constants(B)
    N = len(std)
    b = B.base
    var = lambda a, c: a * N + c  # noqa: E731
    rows = []
    for a in range(N):
        for bb in range(N):
            prod = table[a][bb]
            for c in range(N):
                row = {}
                # D(s_a s_b)_c = sum_e prod_e D(s_e)_c
                for e, v in prod.items():
                    row[var(e, c)] = b.add(row.get(var(e, c), b.zero()), v)
                # - (s_a D(s_b))_c - (s_b D(s_a))_c
                for e in range(N):
                    for src, tgt in ((a, bb), (bb, a)):
                        w = table[src][e].get(c)
                        if w is not None:
                            key = var(tgt, e)
                            row[key] = b.sub(row.get(key, b.zero()), w)
                rows.append(row)
    # k-linear: D(1) = 0 (Leibniz alone does not force this in characteristic 2)
    one = std.index(tuple(0 for _ in B.generators))
    rows.extend({var(one, c): b.one()} for c in range(N))
    return _nullity(rows, N * N, b)


def hom_omega_dimension(B: AlgebraPresentation) -> int:
    """``dim_k Hom_B(Omega_B, B)`` from the Jacobian presentation.

    A hom is a choice of ``v_i`` in ``B`` for each ``dx_i`` killing every
    relation column: ``sum_i J_ij v_i = 0``.
    """
    std, coords, table = _structure_constants(B)
    N, n = len(std), B.ngens
    b = B.base
    J = jacobian(B.relations, B.generators)
    rows = []
    for j in range(len(B.relations)):
        jac = [coords(J[i][j]) for i in range(n)]
        for c in range(N):
            row = {}
            for i in range(n):
                for e, v in jac[i].items():
                    for f in range(N):
                        w = table[e][f].get(c)
                        if w is not None:
                            key = i * N + f
                            row[key] = b.add(row.get(key, b.zero()), b.mul(v, w))
            rows.append(row)
    return _nullity(rows, n * N, b)
