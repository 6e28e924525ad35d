"""Buchberger machinery over sparse vectors of polynomials.

A *vector* is a dict ``{(position, exponents): coefficient}``; an ideal is
the rank-one case with every position equal to 0.  Order keys are flat
tuples of ints so that negating them componentwise reverses the order, which
lets reduction keep a max-heap of pending terms.

Cofactor tracking is optional: every basis element then carries a list of
ring elements (dicts ``{exponents: coefficient}``), one per input generator,
expressing the element as a combination of the generators.
"""

from __future__ import annotations

import contextlib
import contextvars
import heapq
from dataclasses import dataclass

from .errors import ResourceLimit


@dataclass(frozen=True)
class Limits:
    """Resource bounds for symbolic and enumerative work."""

    max_degree: int = 64
    max_terms: int = 100_000
    max_homs: int = 10**7


DEFAULT_LIMITS = Limits()
_ACTIVE = contextvars.ContextVar("beckdiff_limits", default=DEFAULT_LIMITS)


def current_limits() -> Limits:
    """Limits in force for the current context."""
    return _ACTIVE.get()


@contextlib.contextmanager
def limits_scope(limits: Limits):
    """Make ``limits`` the default for every computation inside the block."""
    token = _ACTIVE.set(limits)
    try:
        yield limits
    finally:
        _ACTIVE.reset(token)


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def vec_lead(vec, key):
    return max(vec, key=key)


def vec_degree(vec):
    return max((sum(m) for _, m in vec), default=-1)


def check_limits(vec, limits=None):
    limits = limits or current_limits()
    if len(vec) > limits.max_terms:
        raise ResourceLimit(f"intermediate result has {len(vec)} terms (limit {limits.max_terms})")
    deg = vec_degree(vec)
    if deg > limits.max_degree:
        raise ResourceLimit(f"intermediate result has degree {deg} (limit {limits.max_degree})")


def _axpy(dst, coef, shift, src, base):
    """dst += coef * x^shift * src for vectors keyed by (pos, mono)."""
    add, mul, is_zero = base.add, base.mul, base.is_zero
    created = []
    for (pos, m), c in src.items():
        t = (pos, mono_mul(m, shift))
        old = dst.get(t)
        if old is None:
            dst[t] = mul(coef, c)
            created.append(t)
            continue
        v = add(old, mul(coef, c))
        if is_zero(v):
            del dst[t]
        else:
            dst[t] = v
    return created


def _poly_axpy(dst, coef, shift, src, base):
    """dst += coef * x^shift * src for ring elements keyed by mono."""
    add, mul, is_zero = base.add, base.mul, base.is_zero
    for m, c in src.items():
        t = mono_mul(m, shift)
        v = add(dst.get(t, base.zero()), mul(coef, c))
        if is_zero(v):
            dst.pop(t, None)
        else:
            dst[t] = v


class Element:
    """Basis element: vector, its leading term and (optionally) cofactors."""

    __slots__ = ("vec", "lead", "lead_coef", "sugar", "cof")

    def __init__(self, vec, key, sugar, cof=None):
        self.vec = vec
        self.lead = vec_lead(vec, key)
        self.lead_coef = vec[self.lead]
        self.sugar = sugar
        self.cof = cof


def _neg_key(key, term):
    return tuple(-k for k in key(term))


def reduce_vector(vec, basis, key, base, *, cof=None, quotients=None, limits=None):
    """Full reduction of ``vec`` by ``basis`` (a list of :class:`Element`).

    Returns the remainder.  When ``cof`` is a list of ring elements it is
    updated in place alongside the reduction; when ``quotients`` is a list of
    ring elements (one per basis element) the quotient of each division step
    is accumulated there.
    """
    p = dict(vec)
    rem = {}
    heap = [(_neg_key(key, t), t) for t in p]
    heapq.heapify(heap)
    neg = base.neg
    steps = 0
    while heap:
        _, t = heapq.heappop(heap)
        c = p.get(t)
        if c is None:
            continue
        while heap and heap[0][1] == t:
            heapq.heappop(heap)
        pos, m = t
        for idx, g in enumerate(basis):
            gpos, gm = g.lead
            if gpos == pos and mono_divides(gm, m):
                shift = mono_div(m, gm)
                coef = base.div(c, g.lead_coef)
                for nt in _axpy(p, neg(coef), shift, g.vec, base):
                    heapq.heappush(heap, (_neg_key(key, nt), nt))
                if cof is not None:
                    for j, gc in enumerate(g.cof):
                        if gc:
                            _poly_axpy(cof[j], neg(coef), shift, gc, base)
                if quotients is not None:
                    q = quotients[idx]
                    v = base.add(q.get(shift, base.zero()), coef)
                    if base.is_zero(v):
                        q.pop(shift, None)
                    else:
                        q[shift] = v
                steps += 1
                if steps % 256 == 0:
                    check_limits(p, limits)
                break
        else:
            rem[t] = p.pop(t)
            continue
        # the leading term cancelled; t is no longer present in p
        p.pop(t, None)
    return rem


def _spoly(f, g, key, base):
    pos, fm = f.lead
    _, gm = g.lead
    lcm = mono_lcm(fm, gm)
    s = {}
    one = base.one()
    _axpy(s, base.div(one, f.lead_coef), mono_div(lcm, fm), f.vec, base)
    _axpy(s, base.neg(base.div(one, g.lead_coef)), mono_div(lcm, gm), g.vec, base)
    cof = None
    if f.cof is not None:
        cof = [dict() for _ in f.cof]
        for j in range(len(cof)):
            if f.cof[j]:
                _poly_axpy(cof[j], base.div(one, f.lead_coef), mono_div(lcm, fm), f.cof[j], base)
            if g.cof[j]:
                _poly_axpy(cof[j], base.neg(base.div(one, g.lead_coef)), mono_div(lcm, gm), g.cof[j], base)
    return s, cof


def _make_monic(vec, cof, key, base):
    lead = vec_lead(vec, key)
    inv = base.inv(vec[lead])
    if base.is_one(inv):
        return vec, cof
    vec = {t: base.mul(inv, c) for t, c in vec.items()}
    if cof is not None:
        cof = [{m: base.mul(inv, c) for m, c in h.items()} for h in cof]
    return vec, cof


def groebner(gens, key, base, *, product_criterion, track=False, limits=None):
    """Reduced Gröbner basis of the span of ``gens``.

    Pairs are selected by the sugar strategy (ties broken by the lcm in the
    term order, then by index).  Buchberger's coprime criterion is applied
    only when ``product_criterion`` is set (it is invalid for modules of
    rank above one); the chain criterion is always applied.
    """
    ngens = len(gens)
    basis: list[Element] = []
    pending: dict[tuple[int, int], tuple] = {}
    heap = []

    def add_element(vec, cof, sugar):
        new = len(basis)
        basis.append(Element(vec, key, sugar, cof))
        npos, nm = basis[new].lead
        for i in range(new):
            ipos, im = basis[i].lead
            if ipos != npos:
                continue
            lcm = mono_lcm(im, nm)
            d = sum(lcm)
            s = max(basis[i].sugar + d - sum(im), sugar + d - sum(nm))
            entry = (s, key((npos, lcm)), i, new)
            pending[(i, new)] = entry
            heapq.heappush(heap, entry)

    for j, g in enumerate(gens):
        if not g:
            continue
        cof = None
        if track:
            cof = [dict() for _ in range(ngens)]
            zero_mono = next(iter(g))[1]
            cof[j] = {tuple(0 for _ in zero_mono): base.one()}
        r = reduce_vector(g, basis, key, base, cof=cof, limits=limits)
        if r:
            check_limits(r, limits)
            r, cof = _make_monic(r, cof, key, base)
            add_element(r, cof, vec_degree(g))

    while heap:
        entry = heapq.heappop(heap)
        _, _, i, j = entry
        if pending.get((i, j)) is not entry:
            continue
        del pending[(i, j)]
        fi, fj = basis[i], basis[j]
        _, mi = fi.lead
        _, mj = fj.lead
        if product_criterion and all(a == 0 or b == 0 for a, b in zip(mi, mj)):
            continue
        lcm = mono_lcm(mi, mj)
        pos = fi.lead[0]
        chained = False
        for k, fk in enumerate(basis):
            if k in (i, j) or fk.lead[0] != pos or not mono_divides(fk.lead[1], lcm):
                continue
            if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                chained = True
                break
        if chained:
            continue
        s, cof = _spoly(fi, fj, key, base)
        if not s:
            continue
        check_limits(s, limits)
        r = reduce_vector(s, basis, key, base, cof=cof, limits=limits)
        if r:
            check_limits(r, limits)
            r, cof = _make_monic(r, cof, key, base)
            add_element(r, cof, entry[0])

    return interreduce(basis, key, base, limits=limits)


def interreduce(basis, key, base, *, limits=None):
    """Minimal, tail-reduced, monic basis sorted by descending leading term."""
    keep = []
    for i, g in enumerate(basis):
        redundant = False
        for j, h in enumerate(basis):
            if i == j or h.lead[0] != g.lead[0] or not mono_divides(h.lead[1], g.lead[1]):
                continue
            if h.lead != g.lead or j < i:
                redundant = True
                break
        if not redundant:
            keep.append(g)
    out = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        cof = [dict(h) for h in g.cof] if g.cof is not None else None
        r = reduce_vector(g.vec, others, key, base, cof=cof, limits=limits)
        r, cof = _make_monic(r, cof, key, base)
        out.append(Element(r, key, g.sugar, cof))
    out.sort(key=lambda e: key(e.lead), reverse=True)
    return out
