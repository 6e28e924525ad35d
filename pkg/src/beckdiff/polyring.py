"""Multivariate polynomials over exact scalars, term orders and Gröbner bases."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

from . import _gbcore
from ._gbcore import DEFAULT_LIMITS, Limits, current_limits, limits_scope, mono_divides
from .errors import (
    InputError,
    MixedContext,
    NegativeExponent,
    NonFieldBase,
    PolynomialSyntaxError,
    UnknownVariable,
)
from .exactnum import QQ, Scalar, ScalarKind

__all__ = [
    "Limits",
    "DEFAULT_LIMITS",
    "current_limits",
    "limits_scope",
    "MonomialOrder",
    "DegRevLex",
    "Lex",
    "PositionOverTerm",
    "Polynomial",
    "GroebnerBasis",
    "INFINITE",
    "parse_poly",
    "poly_mul",
    "normal_form",
    "buchberger",
    "ideal_member",
    "quotient_basis",
    "jacobian",
]


# ---------------------------------------------------------------------------
# term orders


class MonomialOrder:
    """A term order, exposed through a sort key on exponent tuples.

    Keys are flat tuples of ints; larger key means larger monomial.
    """

    name = "?"

    def key(self, m):
        raise NotImplementedError

    def term_key(self, term):
        """Key on ``(position, exponents)`` pairs; rank-one use ignores position."""
        return self.key(term[1])

    def compare(self, a, b) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def __eq__(self, other):
        return type(self) is type(other) and self.__dict__ == other.__dict__

    def __hash__(self):
        return hash((type(self).__name__, tuple(sorted(self.__dict__.items()))))

    def __repr__(self):
        return f"{type(self).__name__}()"


class DegRevLex(MonomialOrder):
    name = "degrevlex"

    def key(self, m):
        return (sum(m),) + tuple(-e for e in reversed(m))


class Lex(MonomialOrder):
    name = "lex"

    def key(self, m):
        return tuple(m)


class PositionOverTerm(MonomialOrder):
    """Module order: a lower position index beats any term comparison."""

    def __init__(self, inner: MonomialOrder | None = None):
        self.inner = inner if inner is not None else DegRevLex()

    @property
    def name(self):
        return f"pot({self.inner.name})"

    def key(self, m):
        return self.inner.key(m)

    def term_key(self, term):
        return (-term[0],) + self.inner.key(term[1])

    def __repr__(self):
        return f"PositionOverTerm({self.inner!r})"


# ---------------------------------------------------------------------------
# polynomials


class Polynomial:
    """Immutable sparse polynomial.

    ``terms`` maps exponent tuples to nonzero raw coefficients of ``base``.
    """

    __slots__ = ("variables", "base", "terms", "_hash")

    def __init__(self, variables, base: ScalarKind, terms=None):
        self.variables = tuple(variables)
        self.base = base
        n = len(self.variables)
        clean = {}
        if terms:
            for m, c in terms.items():
                m = tuple(m)
                if len(m) != n:
                    raise InputError(f"monomial {m} does not match {n} variables")
                if any(e < 0 for e in m):
                    raise NegativeExponent(f"negative exponent in {m}")
                if not base.is_zero(c):
                    clean[m] = c
        self.terms = clean
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def _raw(cls, variables, base, terms):
        obj = cls.__new__(cls)
        obj.variables = variables
        obj.base = base
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, variables, base):
        return cls(variables, base)

    @classmethod
    def constant(cls, value, variables, base):
        if isinstance(value, Scalar):
            value = value.value
        elif isinstance(value, int):
            value = base.from_int(value)
        return cls(variables, base, {(0,) * len(tuple(variables)): value})

    @classmethod
    def variable(cls, name, variables, base):
        variables = tuple(variables)
        if name not in variables:
            raise UnknownVariable(name)
        m = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, base, {m: base.one()})

    @classmethod
    def monomial(cls, exps, variables, base, coef=None):
        return cls(variables, base, {tuple(exps): base.one() if coef is None else coef})

    # -- basic queries ------------------------------------------------------

    @property
    def nvars(self):
        return len(self.variables)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not any(m) for m in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, self.base.zero())

    @property
    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def leading_monomial(self, order: MonomialOrder | None = None):
        order = order or DegRevLex()
        return max(self.terms, key=order.key) if self.terms else None

    def leading_coefficient(self, order: MonomialOrder | None = None):
        lm = self.leading_monomial(order)
        return None if lm is None else self.terms[lm]

    def monic(self, order: MonomialOrder | None = None):
        if not self.terms:
            return self
        inv = self.base.inv(self.leading_coefficient(order))
        return self.scale(inv)

    def sorted_terms(self, order: MonomialOrder | None = None):
        order = order or DegRevLex()
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    # -- arithmetic ---------------------------------------------------------

    def _same_context(self, other):
        if self.variables != other.variables or self.base != other.base:
            raise MixedContext(
                f"{self.variables}/{self.base!r} vs {other.variables}/{other.base!r}"
            )

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self._same_context(other)
            return other
        if isinstance(other, Scalar):
            if other.kind != self.base:
                raise MixedContext(f"scalar over {other.kind!r} vs polynomial over {self.base!r}")
            return Polynomial.constant(other.value, self.variables, self.base)
        if isinstance(other, int) and not isinstance(other, bool):
            return Polynomial.constant(other, self.variables, self.base)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        base = self.base
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = base.add(out.get(m, base.zero()), c)
            if base.is_zero(v):
                out.pop(m, None)
            else:
                out[m] = v
        return Polynomial._raw(self.variables, base, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(
            self.variables, self.base, {m: self.base.neg(c) for m, c in self.terms.items()}
        )

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        base = self.base
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = base.add(out.get(m, base.zero()), base.mul(c1, c2))
                if base.is_zero(v):
                    out.pop(m, None)
                else:
                    out[m] = v
        return Polynomial._raw(self.variables, base, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise NegativeExponent(f"bad exponent {n!r}")
        result = Polynomial.constant(1, self.variables, self.base)
        acc = self
        while n:
            if n & 1:
                result = result * acc
            acc = acc * acc
            n >>= 1
        return result

    def scale(self, coef):
        if isinstance(coef, Scalar):
            coef = coef.value
        base = self.base
        if base.is_zero(coef):
            return Polynomial.zero(self.variables, base)
        return Polynomial._raw(
            self.variables, base, {m: base.mul(coef, c) for m, c in self.terms.items()}
        )

    def shift(self, exps):
        """Multiply by the monomial with exponents ``exps``."""
        return Polynomial._raw(
            self.variables,
            self.base,
            {tuple(a + b for a, b in zip(m, exps)): c for m, c in self.terms.items()},
        )

    def derivative(self, var):
        """Formal partial derivative with respect to ``var`` (name or index)."""
        i = var if isinstance(var, int) else self.variables.index(var) if var in self.variables else None
        if i is None:
            raise UnknownVariable(var)
        base = self.base
        out = {}
        for m, c in self.terms.items():
            e = m[i]
            if e == 0:
                continue
            v = base.mul(base.from_int(e), c)
            if base.is_zero(v):
                continue
            nm = m[:i] + (e - 1,) + m[i + 1:]
            out[nm] = v
        return Polynomial._raw(self.variables, base, out)

    def evaluate(self, values, *, add, mul, power, scalar, zero):
        """Evaluate in an arbitrary commutative ring given its operations.

        ``scalar`` maps a raw coefficient into the target ring.
        """
        total = zero
        for m, c in self.terms.items():
            term = scalar(c)
            for v, e in zip(values, m):
                if e:
                    term = mul(term, power(v, e))
            total = add(total, term)
        return total

    def with_base(self, base: ScalarKind):
        """Reinterpret coefficients in another base (e.g. reduce mod p)."""
        out = {}
        for m, c in self.terms.items():
            if isinstance(c, int):
                v = base.from_int(c)
            else:
                v = base.from_fraction(c.numerator, c.denominator)
            if not base.is_zero(v):
                out[m] = v
        return Polynomial._raw(self.variables, base, out)

    # -- comparison and printing -------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return (
                self.variables == other.variables
                and self.base == other.base
                and self.terms == other.terms
            )
        if isinstance(other, int) and not isinstance(other, bool):
            return self.terms == Polynomial.constant(other, self.variables, self.base).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, self.base, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def to_text(self, order: MonomialOrder | None = None) -> str:
        if not self.terms:
            return "0"
        base = self.base
        parts = []
        for m, c in self.sorted_terms(order):
            negative = False
            if base is QQ or base.characteristic == 0:
                negative = c < 0
                mag = -c if negative else c
            else:
                mag = c
            powers = []
            for v, e in zip(self.variables, m):
                if e == 1:
                    powers.append(v)
                elif e > 1:
                    powers.append(f"{v}^{e}")
            pp = "*".join(powers)
            coef = base.fmt(mag)
            if not pp:
                body = coef
            elif coef == "1":
                body = pp
            else:
                body = f"{coef}*{pp}"
            if not parts:
                parts.append(f"-{body}" if negative else body)
            else:
                parts.append(f"- {body}" if negative else f"+ {body}")
        return " ".join(parts)

    __str__ = to_text

    def __repr__(self):
        return f"Polynomial({self.to_text()!r}, {list(self.variables)!r}, {self.base!r})"


def _check_same(polys):
    polys = list(polys)
    for p in polys[1:]:
        polys[0]._same_context(p)
    return polys


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    f._same_context(g)
    return f * g


# ---------------------------------------------------------------------------
# parsing


class _Parser:
    def __init__(self, text, variables, base):
        self.text = text
        self.variables = tuple(variables)
        self.base = base
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def error(self, msg):
        raise PolynomialSyntaxError(msg, self.pos)

    def number(self):
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected a number")
        return int(self.text[start:self.pos])

    def name(self):
        self.skip()
        start = self.pos
        t = self.text
        if self.pos < len(t) and (t[self.pos].isalpha() or t[self.pos] == "_"):
            self.pos += 1
            while self.pos < len(t) and (t[self.pos].isalnum() or t[self.pos] == "_"):
                self.pos += 1
        if start == self.pos:
            self.error("expected a variable")
        return self.text[start:self.pos], start

    def coefficient(self):
        num = self.number()
        if self.peek() == "/":
            self.pos += 1
            if self.peek() == "-":
                self.error("sign inside a rational literal")
            den = self.number()
            return self.base.from_fraction(num, den)
        return self.base.from_int(num)

    def factor(self, exps):
        name, at = self.name()
        if name not in self.variables:
            raise UnknownVariable(f"unknown variable {name!r} at position {at}")
        e = 1
        if self.peek() == "^":
            self.pos += 1
            if self.peek() == "-":
                raise NegativeExponent(f"negative exponent at position {self.pos}")
            e = self.number()
        exps[self.variables.index(name)] += e

    def powerprod(self, exps):
        self.factor(exps)
        while self.peek() == "*":
            self.pos += 1
            self.factor(exps)

    def term(self):
        base = self.base
        negative = False
        if self.peek() == "-":
            negative = True
            self.pos += 1
        exps = [0] * len(self.variables)
        ch = self.peek()
        if ch.isdigit():
            coef = self.coefficient()
            if self.peek() == "*":
                self.pos += 1
                self.powerprod(exps)
        elif ch.isalpha() or ch == "_":
            coef = base.one()
            self.powerprod(exps)
        else:
            self.error("expected a term")
        if negative:
            coef = base.neg(coef)
        return tuple(exps), coef

    def poly(self):
        base = self.base
        terms = {}

        def add(m, c):
            v = base.add(terms.get(m, base.zero()), c)
            if base.is_zero(v):
                terms.pop(m, None)
            else:
                terms[m] = v

        add(*self.term())
        while True:
            ch = self.peek()
            if ch == "":
                break
            if ch not in "+-":
                self.error(f"unexpected character {ch!r}")
            self.pos += 1
            m, c = self.term()
            add(m, c if ch == "+" else base.neg(c))
        return Polynomial._raw(self.variables, base, terms)


def parse_poly(text: str, variables, base: ScalarKind) -> Polynomial:
    """Parse the ASCII polynomial grammar.

    >>> from beckdiff.exactnum import GF
    >>> str(parse_poly("x*y + 8*x", ["x", "y"], GF(5)))
    'x*y + 3*x'
    """
    variables = tuple(variables)
    if len(set(variables)) != len(variables):
        raise InputError(f"repeated variable in {variables}")
    return _Parser(text, variables, base).poly()


# ---------------------------------------------------------------------------
# Gröbner bases


def _to_vec(f: Polynomial):
    return {(0, m): c for m, c in f.terms.items()}


def _from_vec(vec, variables, base):
    return Polynomial._raw(variables, base, {m: c for (_, m), c in vec.items()})


def _cof_poly(d, variables, base):
    return Polynomial._raw(variables, base, dict(d))


@dataclass(frozen=True, eq=False)
class GroebnerBasis:
    """Reduced Gröbner basis; ``cofactors[k]`` expresses ``elements[k]`` in ``generators``."""

    order: MonomialOrder
    variables: tuple
    base: ScalarKind
    elements: tuple
    generators: tuple = ()
    cofactors: tuple | None = None
    _cores: list = field(default=None, repr=False, compare=False)

    @cached_property
    def leading_monomials(self):
        return tuple(g.leading_monomial(self.order) for g in self.elements)

    def core_elements(self):
        if self._cores is None:
            key = self.order.term_key
            cores = [_gbcore.Element(_to_vec(g), key, g.degree) for g in self.elements]
            object.__setattr__(self, "_cores", cores)
        return self._cores

    def reduce(self, f: Polynomial, limits: Limits | None = None) -> Polynomial:
        return normal_form(f, self, limits=limits)

    def contains(self, f: Polynomial) -> bool:
        return normal_form(f, self).is_zero()

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        if not isinstance(other, GroebnerBasis):
            return NotImplemented
        return (
            self.order == other.order
            and self.variables == other.variables
            and self.base == other.base
            and self.elements == other.elements
        )

    def __hash__(self):
        return hash((self.order, self.variables, self.base, self.elements))


def _context_of(gens, variables, base):
    gens = list(gens)
    if gens:
        _check_same(gens)
        return gens[0].variables, gens[0].base
    if variables is None or base is None:
        raise InputError("empty generator list needs explicit variables and base")
    return tuple(variables), base


def buchberger(
    gens,
    order: MonomialOrder | None = None,
    *,
    variables=None,
    base=None,
    track_cofactors: bool = False,
    limits: Limits | None = None,
) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal generated by ``gens``."""
    order = order or DegRevLex()
    gens = list(gens)
    variables, base = _context_of(gens, variables, base)
    if not base.is_field:
        raise NonFieldBase(f"Gröbner bases need a field base, got {base!r}")
    vecs = [_to_vec(g) for g in gens]
    core = _gbcore.groebner(
        vecs, order.term_key, base, product_criterion=True, track=track_cofactors, limits=limits
    )
    elements = tuple(_from_vec(e.vec, variables, base) for e in core)
    cofactors = None
    if track_cofactors:
        cofactors = tuple(tuple(_cof_poly(h, variables, base) for h in e.cof) for e in core)
    return GroebnerBasis(order, variables, base, elements, tuple(gens), cofactors, core)


def normal_form(f: Polynomial, G: GroebnerBasis, *, limits: Limits | None = None) -> Polynomial:
    """Remainder of ``f`` on full reduction by ``G``."""
    if f.variables != G.variables or f.base != G.base:
        raise MixedContext("polynomial and basis live in different rings")
    if not f.terms or not G.elements:
        return f
    rem = _gbcore.reduce_vector(_to_vec(f), G.core_elements(), G.order.term_key, G.base, limits=limits)
    return _from_vec(rem, G.variables, G.base)


def division(f: Polynomial, G: GroebnerBasis):
    """Quotients ``q`` and remainder ``r`` with ``f = sum(q_k * g_k) + r``."""
    if f.variables != G.variables or f.base != G.base:
        raise MixedContext("polynomial and basis live in different rings")
    quotients = [dict() for _ in G.elements]
    rem = _gbcore.reduce_vector(
        _to_vec(f), G.core_elements(), G.order.term_key, G.base, quotients=quotients
    )
    qs = [_cof_poly(q, G.variables, G.base) for q in quotients]
    return qs, _from_vec(rem, G.variables, G.base)


def ideal_member(f: Polynomial, gens, order: MonomialOrder | None = None) -> bool:
    gens = list(gens)
    G = buchberger(gens, order, variables=f.variables, base=f.base)
    return normal_form(f, G).is_zero()


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder | None = None) -> Polynomial:
    order = order or DegRevLex()
    mf, mg = f.leading_monomial(order), g.leading_monomial(order)
    lcm = tuple(max(a, b) for a, b in zip(mf, mg))
    base = f.base
    a = f.shift(tuple(x - y for x, y in zip(lcm, mf))).scale(base.inv(f.terms[mf]))
    b = g.shift(tuple(x - y for x, y in zip(lcm, mg))).scale(base.inv(g.terms[mg]))
    return a - b


class _Infinite:
    def __repr__(self):
        return "Infinite"

    def __bool__(self):
        return False


INFINITE = _Infinite()


def standard_monomials(leads, nvars):
    """Monomials outside the monomial ideal spanned by ``leads``; INFINITE if unbounded."""
    if any(not any(m) for m in leads):
        return []
    bounds = []
    for i in range(nvars):
        pure = [m[i] for m in leads if m[i] > 0 and sum(m) == m[i]]
        if not pure:
            return INFINITE
        bounds.append(min(pure))
    out = [
        m
        for m in itertools.product(*(range(b) for b in bounds))
        if not any(mono_divides(l, m) for l in leads)
    ]
    out.sort(key=lambda m: (sum(m), tuple(-e for e in m)))
    return out


def quotient_basis(G: GroebnerBasis):
    """Standard monomials of ``G`` as exponent tuples, or :data:`INFINITE`.

    Sorted by degree, then with earlier variables first.
    """
    return standard_monomials(G.leading_monomials, len(G.variables))


def jacobian(relations, variables):
    """Matrix ``J[i][j] = d relations[j] / d variables[i]``."""
    relations = list(relations)
    variables = tuple(variables)
    for f in relations:
        if f.variables != variables:
            raise MixedContext(f"relation over {f.variables}, expected {variables}")
    return [[f.derivative(i) for f in relations] for i in range(len(variables))]
