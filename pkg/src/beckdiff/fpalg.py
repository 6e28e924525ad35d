"""Finitely presented algebras, finite ring tables and the homs between them.

Symbolic objects (:class:`AlgebraPresentation`) are bridged to finite ones
(:class:`FiniteRingTable`) by :func:`to_finite_table` whenever the quotient
is zero-dimensional over a prime field.  Hom sets from a presentation into a
finite ring are enumerated exhaustively, one generator at a time, discarding
partial assignments as soon as a relation involving only assigned generators
fails.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import (
    BaseMismatch,
    DuplicateGenerator,
    InfiniteDimensional,
    InputError,
    InvalidTable,
    NonFieldBase,
    NonFiniteBase,
    NotAModule,
    NotARingHom,
    NotSurjective,
    ResourceLimit,
    UnknownVariable,
    UnknownVariableInRelation,
)
from .exactnum import QQ, ZZ, PrimeField, ScalarKind, kind_from_json
from .polyring import (
    current_limits,
    INFINITE,
    GroebnerBasis,
    Limits,
    Polynomial,
    buchberger,
    normal_form,
    parse_poly,
    quotient_basis,
)

__all__ = [
    "AlgebraPresentation",
    "FiniteRingTable",
    "FiniteModule",
    "TableMap",
    "AlgebraHom",
    "HomSet",
    "KernelData",
    "validate_presentation",
    "to_finite_table",
    "enumerate_homs",
    "kernel_of_surjection",
    "integer_ring_mod",
    "product_ring",
]


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True, eq=False)
class AlgebraPresentation:
    """``base[generators] / (relations)``."""

    base: ScalarKind
    generators: tuple
    relations: tuple = ()
    name: str = ""

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relations", tuple(self.relations))
        seen = set()
        for g in gens:
            if g in seen:
                raise DuplicateGenerator(f"generator {g!r} listed twice")
            seen.add(g)
        for f in self.relations:
            if f.variables != gens:
                raise UnknownVariableInRelation(
                    f"relation {f} is over {f.variables}, expected {gens}"
                )
            if f.base != self.base:
                raise BaseMismatch(f"relation {f} is over {f.base!r}, expected {self.base!r}")

    @classmethod
    def parse(cls, base, generators, relations, name=""):
        gens = tuple(generators)
        if len(set(gens)) != len(gens):
            raise DuplicateGenerator(f"repeated generator in {gens}")
        rels = []
        for text in relations:
            try:
                rels.append(parse_poly(text, gens, base))
            except UnknownVariable as exc:
                raise UnknownVariableInRelation(str(exc)) from exc
        return cls(base, gens, tuple(rels), name)

    # -- ring plumbing ----------------------------------------------------

    def poly(self, text: str) -> Polynomial:
        return parse_poly(text, self.generators, self.base)

    def var(self, name) -> Polynomial:
        return Polynomial.variable(name, self.generators, self.base)

    def constant(self, value) -> Polynomial:
        return Polynomial.constant(value, self.generators, self.base)

    @cached_property
    def groebner(self) -> GroebnerBasis:
        if not self.base.is_field:
            raise NonFieldBase(f"no Gröbner basis over {self.base!r}")
        return buchberger(self.relations, variables=self.generators, base=self.base)

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self.groebner)

    @cached_property
    def standard_monomials(self):
        return quotient_basis(self.groebner)

    @property
    def is_finite_dimensional(self) -> bool:
        return self.standard_monomials is not INFINITE

    @property
    def dimension(self):
        sm = self.standard_monomials
        return None if sm is INFINITE else len(sm)

    @property
    def ngens(self):
        return len(self.generators)

    def with_base(self, base: ScalarKind, name=None):
        """Same generators and relations with coefficients read in ``base``."""
        return AlgebraPresentation(
            base,
            self.generators,
            tuple(f.with_base(base) for f in self.relations),
            self.name if name is None else name,
        )

    def to_json(self):
        return {
            "base": self.base.json(),
            "generators": list(self.generators),
            "relations": [f.to_text() for f in self.relations],
        }

    @classmethod
    def from_json(cls, obj, name=""):
        try:
            base = kind_from_json(obj["base"])
            return cls.parse(base, obj.get("generators", []), obj.get("relations", []), name or obj.get("name", ""))
        except KeyError as exc:
            raise InputError(f"algebra JSON is missing {exc}") from exc

    def __repr__(self):
        rels = ", ".join(f.to_text() for f in self.relations)
        gens = ", ".join(self.generators)
        if not gens:
            return self.base.name
        return f"{self.base.name}[{gens}]/({rels})"


def validate_presentation(P: AlgebraPresentation) -> AlgebraPresentation:
    """Check ``P`` and warm its Gröbner basis when the base is a field."""
    if P.base.is_field:
        P.groebner
    return P


# ---------------------------------------------------------------------------
# finite ring tables


def _assoc_witness(op, n):
    idx = np.arange(n)
    for a in range(n):
        left = op[op[a][:, None], idx[None, :]]
        right = op[a][op]
        bad = np.argwhere(left != right)
        if bad.size:
            b, c = bad[0]
            return int(a), int(b), int(c)
    return None


class FiniteRingTable:
    """A finite commutative unital ring given by addition and multiplication tables.

    All ring axioms are verified exhaustively at construction (unless
    ``verify=False`` is passed by a constructor that guarantees them).  The
    scalar map from ``base`` is the unique ring map, so a table over
    ``GF(p)`` must have characteristic dividing ``p``.
    """

    def __init__(self, add, mul, zero=0, one=1, base: ScalarKind = ZZ, labels=None, name="", verify=True):
        self.add = np.asarray(add, dtype=np.int64)
        self.mul = np.asarray(mul, dtype=np.int64)
        n = self.add.shape[0]
        if self.add.shape != (n, n) or self.mul.shape != (n, n):
            raise InvalidTable("add and mul must be square tables of equal size")
        if n == 0:
            raise InvalidTable("empty ring")
        if self.add.min() < 0 or self.add.max() >= n or self.mul.min() < 0 or self.mul.max() >= n:
            raise InvalidTable("table entry out of range")
        self.size = n
        self.zero = int(zero)
        self.one = int(one)
        self.base = base
        self.name = name
        self.labels = list(labels) if labels is not None else None
        self.presentation = None
        self.generator_indices = None
        neg = np.full(n, -1, dtype=np.int64)
        rows, cols = np.nonzero(self.add == self.zero)
        neg[rows] = cols
        self.neg = neg
        if verify:
            self.verify()
        mults = [self.zero]
        while True:
            nxt = int(self.add[mults[-1], self.one])
            if nxt == self.zero:
                break
            mults.append(nxt)
        self.characteristic = len(mults)
        self._multiples = np.array(mults, dtype=np.int64)
        if verify:
            self._verify_base()

    # -- verification -----------------------------------------------------

    def verify(self):
        n, add, mul, z, o = self.size, self.add, self.mul, self.zero, self.one
        idx = np.arange(n)
        if not (0 <= z < n and 0 <= o < n):
            raise InvalidTable("zero/one index out of range")
        if (add != add.T).any():
            a, b = np.argwhere(add != add.T)[0]
            raise InvalidTable("addition not commutative", (int(a), int(b)))
        if (add[z] != idx).any():
            raise InvalidTable("zero is not an additive identity")
        if (self.neg < 0).any():
            raise InvalidTable("missing additive inverse", int(np.argmin(self.neg)))
        w = _assoc_witness(add, n)
        if w:
            raise InvalidTable("addition not associative", w)
        if (mul != mul.T).any():
            a, b = np.argwhere(mul != mul.T)[0]
            raise InvalidTable("multiplication not commutative", (int(a), int(b)))
        if (mul[o] != idx).any():
            raise InvalidTable("one is not a multiplicative identity")
        w = _assoc_witness(mul, n)
        if w:
            raise InvalidTable("multiplication not associative", w)
        for a in range(n):
            left = mul[a][add]  # a * (b + c)
            right = add[mul[a][:, None], mul[a][None, :]]
            if (left != right).any():
                b, c = np.argwhere(left != right)[0]
                raise InvalidTable("distributivity fails", (a, int(b), int(c)))

    def _verify_base(self):
        base = self.base
        if isinstance(base, PrimeField) and self.characteristic not in (1, base.p):
            raise InvalidTable(
                f"characteristic {self.characteristic} incompatible with base {base!r}"
            )
        if base == QQ and self.size != 1:
            raise InvalidTable("a finite ring over Q must be the zero ring")

    # -- element helpers --------------------------------------------------

    def int_image(self, k: int) -> int:
        """Index of ``k * 1``."""
        return int(self._multiples[k % self.characteristic])

    def scalar(self, raw) -> int:
        """Image of a raw base coefficient under the structure map."""
        if self.base == QQ:
            return self.zero
        return self.int_image(int(raw))

    def power(self, a: int, e: int) -> int:
        r = self.one
        for _ in range(e):
            r = int(self.mul[r, a])
        return r

    def power_table(self, emax: int):
        tabs = [np.full(self.size, self.one, dtype=np.int64)]
        idx = np.arange(self.size)
        for _ in range(emax):
            tabs.append(self.mul[tabs[-1], idx])
        return tabs

    def sub(self, a, b):
        return self.add[a, self.neg[b]]

    def label(self, i: int) -> str:
        if self.labels is not None:
            return self.labels[i]
        return str(i)

    @property
    def elements(self):
        return range(self.size)

    def units(self):
        return [a for a in range(self.size) if (self.mul[a] == self.one).any()]

    def is_zero_ring(self):
        return self.size == 1

    def same_table(self, other) -> bool:
        return (
            self.size == other.size
            and self.zero == other.zero
            and self.one == other.one
            and np.array_equal(self.add, other.add)
            and np.array_equal(self.mul, other.mul)
        )

    def subring_generators(self):
        """Small set of elements generating the ring (with 1) under + and *."""
        gens = []
        reached = _closure(self, [])
        for a in range(self.size):
            if a not in reached:
                gens.append(a)
                reached = _closure(self, gens)
        return gens

    # -- bridge to presentations ----------------------------------------

    def encode(self, f: Polynomial) -> int:
        """Index of the class of ``f``; only for tables built by :func:`to_finite_table`."""
        P = self.presentation
        if P is None:
            raise InputError("table was not built from a presentation")
        r = P.reduce(f)
        p = P.base.p
        idx = 0
        for k, m in enumerate(P.standard_monomials):
            idx += int(r.terms.get(m, 0)) * p**k
        return idx

    def element_poly(self, idx: int) -> Polynomial:
        """Standard-monomial representative of element ``idx``."""
        P = self.presentation
        if P is None:
            raise InputError("table was not built from a presentation")
        p = P.base.p
        terms = {}
        for m in P.standard_monomials:
            c = idx % p
            idx //= p
            if c:
                terms[m] = c
        return Polynomial(P.generators, P.base, terms)

    def to_json(self):
        out = {
            "size": self.size,
            "add": self.add.tolist(),
            "mul": self.mul.tolist(),
            "zero": self.zero,
            "one": self.one,
            "base": self.base.json(),
        }
        if self.labels is not None:
            out["labels"] = list(self.labels)
        return out

    @classmethod
    def from_json(cls, obj, name=""):
        try:
            base = kind_from_json(obj.get("base", {"kind": "Z"}))
            table = cls(obj["add"], obj["mul"], obj.get("zero", 0), obj.get("one", 1), base, obj.get("labels"), name or obj.get("name", ""))
        except KeyError as exc:
            raise InputError(f"ring table JSON is missing {exc}") from exc
        if "size" in obj and obj["size"] != table.size:
            raise InputError(f"declared size {obj['size']} but tables have {table.size} rows")
        return table

    def __repr__(self):
        return f"FiniteRingTable({self.name or '?'}, size={self.size})"


def _closure(R: FiniteRingTable, gens):
    reached = {R.zero, R.one, *gens}
    frontier = list(reached)
    while frontier:
        new = []
        cur = list(reached)
        for a in frontier:
            for b in cur:
                for c in (int(R.add[a, b]), int(R.mul[a, b])):
                    if c not in reached:
                        reached.add(c)
                        new.append(c)
            c = int(R.neg[a])
            if c not in reached:
                reached.add(c)
                new.append(c)
        frontier = new
    return reached


def integer_ring_mod(n: int) -> FiniteRingTable:
    """The ring Z/n as a table over ZZ, elements labelled 0..n-1."""
    idx = np.arange(n)
    add = (idx[:, None] + idx[None, :]) % n
    mul = (idx[:, None] * idx[None, :]) % n
    return FiniteRingTable(add, mul, 0, 1 % n, ZZ, [str(i) for i in range(n)], f"Z/{n}")


def product_ring(R: FiniteRingTable, S: FiniteRingTable, name="") -> FiniteRingTable:
    """R x S; element (r, s) has index r + |R| * s."""
    n, m = R.size, S.size
    r = np.tile(np.arange(n), m)
    s = np.repeat(np.arange(m), n)
    add = R.add[r[:, None], r[None, :]] + n * S.add[s[:, None], s[None, :]]
    mul = R.mul[r[:, None], r[None, :]] + n * S.mul[s[:, None], s[None, :]]
    base = R.base if R.base == S.base else ZZ
    labels = [f"({R.label(a)}, {S.label(b)})" for a, b in zip(r, s)]
    return FiniteRingTable(add, mul, R.zero + n * S.zero, R.one + n * S.one, base, labels, name or f"{R.name} x {S.name}")


def to_finite_table(P: AlgebraPresentation) -> FiniteRingTable:
    """Multiplication table of a zero-dimensional quotient over a prime field.

    Elements are coefficient vectors ``c`` on the standard monomials
    ``s_0 = 1, s_1, ...``, with index ``sum(c_k * p**k)``.
    """
    if not isinstance(P.base, PrimeField):
        raise NonFiniteBase(f"{P.base!r} is not a finite base")
    std = P.standard_monomials
    if std is INFINITE:
        raise InfiniteDimensional(f"{P!r} is not finite dimensional")
    p = P.base.p
    d = len(std)
    pos = {m: k for k, m in enumerate(std)}
    size = p**d
    digits = np.array(list(itertools.product(range(p), repeat=d)), dtype=np.int64)[:, ::-1] if d else np.zeros((1, 0), dtype=np.int64)
    weights = p ** np.arange(d, dtype=np.int64)
    struct = np.zeros((d, d, d), dtype=np.int64)
    for a, ma in enumerate(std):
        for b, mb in enumerate(std):
            prod = P.reduce(Polynomial.monomial(tuple(x + y for x, y in zip(ma, mb)), P.generators, P.base))
            for m, c in prod.terms.items():
                struct[a, b, pos[m]] = c
    add_vec = (digits[:, None, :] + digits[None, :, :]) % p
    add = add_vec @ weights
    mul_vec = np.einsum("ia,jb,abk->ijk", digits, digits, struct) % p
    mul = mul_vec @ weights
    labels = []
    for row in digits:
        poly = Polynomial(P.generators, P.base, {std[k]: int(c) for k, c in enumerate(row) if c})
        labels.append(poly.to_text())
    one = 1 % size if d else 0
    table = FiniteRingTable(add, mul, 0, one, P.base, labels, P.name or repr(P))
    table.presentation = P
    table.generator_indices = tuple(table.encode(P.var(g)) for g in P.generators) if d else tuple(0 for _ in P.generators)
    return table


# ---------------------------------------------------------------------------
# maps between tables


class TableMap:
    """A map of finite rings given elementwise; ``verify`` checks it is a ring hom."""

    def __init__(self, source: FiniteRingTable, target: FiniteRingTable, mapping, verify=True):
        self.source = source
        self.target = target
        self.mapping = np.asarray(mapping, dtype=np.int64)
        if self.mapping.shape != (source.size,):
            raise InputError(f"map needs {source.size} images, got {self.mapping.shape}")
        if source.size and (self.mapping.min() < 0 or self.mapping.max() >= target.size):
            raise InputError("map image out of range")
        if verify:
            self.verify()

    def verify(self):
        S, T, f = self.source, self.target, self.mapping
        if f[S.one] != T.one:
            raise NotARingHom("1 is not sent to 1", ("one",))
        for name, s_op, t_op in (("+", S.add, T.add), ("*", S.mul, T.mul)):
            lhs = f[s_op]
            rhs = t_op[f[:, None], f[None, :]]
            if (lhs != rhs).any():
                a, b = np.argwhere(lhs != rhs)[0]
                raise NotARingHom(f"f(a {name} b) != f(a) {name} f(b)", (name, int(a), int(b)))

    def __call__(self, a):
        return int(self.mapping[a])

    def is_surjective(self) -> bool:
        return len(np.unique(self.mapping)) == self.target.size

    def is_injective(self) -> bool:
        return len(np.unique(self.mapping)) == self.source.size

    def compose(self, other: "TableMap") -> "TableMap":
        """``other`` after ``self``."""
        return TableMap(self.source, other.target, other.mapping[self.mapping], verify=False)

    @classmethod
    def identity(cls, R: FiniteRingTable):
        return cls(R, R, np.arange(R.size), verify=False)

    def to_json(self):
        return {"source": self.source.to_json(), "target": self.target.to_json(), "map": self.mapping.tolist()}

    def __repr__(self):
        return f"TableMap({self.source.name} -> {self.target.name})"


def _structure_images(base: ScalarKind, D: FiniteRingTable):
    """Scalar evaluation ``raw -> index`` for the unique ring map base -> D, or None."""
    if base == QQ:
        if D.size != 1:
            return None
        return lambda raw: D.zero
    if isinstance(base, PrimeField):
        if base.p % D.characteristic:
            return None
    return lambda raw: D.int_image(int(raw))


@dataclass(frozen=True)
class AlgebraHom:
    """Hom from a presentation to a finite ring, fixed by generator images."""

    domain: AlgebraPresentation
    codomain: FiniteRingTable
    images: tuple

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(int(i) for i in self.images))
        if len(self.images) != self.domain.ngens:
            raise InputError("one image per generator is required")

    def evaluate(self, f: Polynomial) -> int:
        D = self.codomain
        scalar = _structure_images(f.base, D)
        if scalar is None:
            raise BaseMismatch(f"no ring map {f.base!r} -> {D.name}")
        return f.evaluate(
            self.images,
            add=lambda a, b: int(D.add[a, b]),
            mul=lambda a, b: int(D.mul[a, b]),
            power=D.power,
            scalar=scalar,
            zero=D.zero,
        )

    def is_valid(self) -> bool:
        if _structure_images(self.domain.base, self.codomain) is None:
            return False
        return all(self.evaluate(f) == self.codomain.zero for f in self.domain.relations)

    def verify(self):
        if not self.is_valid():
            raise NotARingHom("a relation does not vanish under the assignment")
        return self

    def then(self, q: TableMap) -> "AlgebraHom":
        return AlgebraHom(self.domain, q.target, tuple(int(q.mapping[i]) for i in self.images))

    def table_map(self, source: FiniteRingTable | None = None) -> TableMap:
        """The induced map on the finite table of the domain."""
        source = source or to_finite_table(self.domain)
        mapping = []
        for lab_idx in range(source.size):
            mapping.append(self.evaluate(source.element_poly(lab_idx)))
        return TableMap(source, self.codomain, mapping)

    def to_json(self):
        return {"domain": self.domain.to_json(), "codomain": self.codomain.to_json(), "images": list(self.images)}


@dataclass(frozen=True)
class HomSet:
    """Materialized, sorted hom set; each hom is a tuple of images."""

    source: object
    target: object
    homs: tuple

    @cached_property
    def _index(self):
        return {h: i for i, h in enumerate(self.homs)}

    def index(self, images) -> int | None:
        return self._index.get(tuple(images))

    def __len__(self):
        return len(self.homs)

    def __iter__(self):
        return iter(self.homs)

    def __getitem__(self, i):
        return self.homs[i]

    def __contains__(self, images):
        return tuple(images) in self._index

    def postcompose(self, q, other: "HomSet"):
        """Index in ``other`` of ``q`` after each hom; ``q`` maps target elements."""
        mapping = q.mapping if hasattr(q, "mapping") else np.asarray(q)
        out = []
        for h in self.homs:
            j = other.index(tuple(int(mapping[i]) for i in h))
            if j is None:
                raise NotARingHom("post-composite is missing from the target hom set")
            out.append(j)
        return out

    def as_algebra_homs(self):
        return [AlgebraHom(self.source, self.target, h) for h in self.homs]


def enumerate_homs(B: AlgebraPresentation, D: FiniteRingTable, *, limits: Limits | None = None) -> HomSet:
    """All A-algebra homs ``B -> D``, sorted lexicographically by generator images."""
    scalar = _structure_images(B.base, D)
    n = B.ngens
    if scalar is None:
        return HomSet(B, D, ())
    total = D.size**n
    limits = limits or current_limits()
    if total > limits.max_homs:
        raise ResourceLimit(f"{D.size}^{n} = {total} assignments exceed the bound {limits.max_homs}")
    emax = max((max(m) for f in B.relations for m in f.terms if m), default=0)
    powers = D.power_table(emax)
    # check a relation as soon as all its variables are assigned
    stage = [[] for _ in range(max(n, 1))]
    for f in B.relations:
        used = [i for i in range(n) if any(m[i] for m in f.terms)]
        stage[max(used) if used else 0].append(f)
    if n == 0:
        ok = all(_eval_vec(f, np.zeros((1, 0), dtype=np.int64), D, powers, scalar)[0] == D.zero for f in B.relations)
        return HomSet(B, D, ((),) if ok else ())
    cand = np.zeros((1, 0), dtype=np.int64)
    for k in range(n):
        m = cand.shape[0]
        cand = np.hstack([np.repeat(cand, D.size, axis=0), np.tile(np.arange(D.size), m)[:, None]])
        for f in stage[k]:
            vals = _eval_vec(f, cand, D, powers, scalar)
            cand = cand[vals == D.zero]
        if cand.shape[0] == 0:
            break
    homs = tuple(tuple(int(v) for v in row) for row in cand)
    return HomSet(B, D, homs)


def _eval_vec(f: Polynomial, cand, D: FiniteRingTable, powers, scalar):
    acc = np.full(cand.shape[0], D.zero, dtype=np.int64)
    for m, c in f.terms.items():
        term = np.full(cand.shape[0], scalar(c), dtype=np.int64)
        for i, e in enumerate(m):
            if e:
                term = D.mul[term, powers[e][cand[:, i]]]
        acc = D.add[acc, term]
    return acc


# ---------------------------------------------------------------------------
# modules over finite rings


class FiniteModule:
    """A finite module over a :class:`FiniteRingTable`.

    ``add`` is the addition table of the underlying abelian group and
    ``action[c, m]`` the index of ``c * m``.
    """

    def __init__(self, ring: FiniteRingTable, add, zero, action, labels=None, name="", verify=True):
        self.ring = ring
        self.add = np.asarray(add, dtype=np.int64)
        self.action = np.asarray(action, dtype=np.int64)
        self.size = self.add.shape[0]
        self.zero = int(zero)
        self.labels = list(labels) if labels is not None else None
        self.name = name
        if self.add.shape != (self.size, self.size):
            raise NotAModule("addition table must be square")
        if self.action.shape != (ring.size, self.size):
            raise NotAModule(f"action table must have shape {(ring.size, self.size)}")
        neg = np.full(self.size, -1, dtype=np.int64)
        rows, cols = np.nonzero(self.add == self.zero)
        neg[rows] = cols
        self.neg = neg
        if verify:
            self.verify()

    def verify(self):
        A, act, R, z = self.add, self.action, self.ring, self.zero
        n = self.size
        idx = np.arange(n)
        if (A != A.T).any():
            a, b = np.argwhere(A != A.T)[0]
            raise NotAModule("addition not commutative", ("comm", int(a), int(b)))
        if (A[z] != idx).any():
            raise NotAModule("zero is not an identity", ("zero",))
        if (self.neg < 0).any():
            raise NotAModule("missing additive inverse", ("neg", int(np.argmin(self.neg))))
        w = _assoc_witness(A, n)
        if w:
            raise NotAModule("addition not associative", ("assoc",) + w)
        if (act[R.one] != idx).any():
            m = int(np.argmax(act[R.one] != idx))
            raise NotAModule("1 * m != m", ("unit", m))
        # c (m + m') = c m + c m'
        lhs = act[:, A]  # (c, m, m')
        rhs = A[act[:, :, None], act[:, None, :]]
        if (lhs != rhs).any():
            c, m, m2 = np.argwhere(lhs != rhs)[0]
            raise NotAModule("c(m + m') != cm + cm'", ("linear", int(c), int(m), int(m2)))
        # (c + c') m = c m + c' m
        lhs = act[R.add]  # (c, c', m)
        rhs = A[act[:, None, :], act[None, :, :]]
        if (lhs != rhs).any():
            c, c2, m = np.argwhere(lhs != rhs)[0]
            raise NotAModule("(c + c')m != cm + c'm", ("additive", int(c), int(c2), int(m)))
        # (c c') m = c (c' m)
        lhs = act[R.mul]
        rhs = np.stack([act[c][act] for c in range(R.size)])
        if (lhs != rhs).any():
            c, c2, m = np.argwhere(lhs != rhs)[0]
            raise NotAModule("(cc')m != c(c'm)", ("assoc-action", int(c), int(c2), int(m)))

    def label(self, i):
        return self.labels[i] if self.labels is not None else str(i)

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero_module(cls, R: FiniteRingTable):
        return cls(R, [[0]], 0, np.zeros((R.size, 1), dtype=np.int64), ["0"], "0")

    @classmethod
    def regular(cls, R: FiniteRingTable):
        return cls(R, R.add, R.zero, R.mul, R.labels, f"{R.name} (regular)")

    @classmethod
    def quotient(cls, R: FiniteRingTable, ideal):
        """``R / J`` for an ideal ``J`` given as a collection of element indices."""
        J = sorted(set(int(j) for j in ideal))
        Jset = set(J)
        if R.zero not in Jset:
            raise NotAModule("ideal must contain zero")
        for a in J:
            for b in J:
                if int(R.add[a, b]) not in Jset:
                    raise NotAModule("subset is not closed under addition")
            for r in range(R.size):
                if int(R.mul[r, a]) not in Jset:
                    raise NotAModule("subset is not closed under multiplication by R")
        cosets = {}
        reps = []
        for a in range(R.size):
            key = frozenset(int(R.add[a, j]) for j in J)
            if key not in cosets:
                cosets[key] = len(reps)
                reps.append(a)
        cls_of = np.empty(R.size, dtype=np.int64)
        for key, k in cosets.items():
            for a in key:
                cls_of[a] = k
        reps = np.array(reps, dtype=np.int64)
        add = cls_of[R.add[reps[:, None], reps[None, :]]]
        action = cls_of[R.mul[:, reps]]
        labels = [R.label(int(a)) for a in reps]
        return cls(R, add, int(cls_of[R.zero]), action, labels, f"{R.name}/J")

    def restrict(self, q: TableMap) -> "FiniteModule":
        """Restriction of scalars along ``q: S -> R``."""
        if q.target is not self.ring and not q.target.same_table(self.ring):
            raise InputError("map target is not the module's ring")
        return FiniteModule(q.source, self.add, self.zero, self.action[q.mapping], self.labels, f"{self.name}|{q.source.name}")

    def direct_sum(self, other: "FiniteModule") -> "FiniteModule":
        if not self.ring.same_table(other.ring):
            raise InputError("modules over different rings")
        n, m = self.size, other.size
        a = np.tile(np.arange(n), m)
        b = np.repeat(np.arange(m), n)
        add = self.add[a[:, None], a[None, :]] + n * other.add[b[:, None], b[None, :]]
        action = self.action[:, a] + n * other.action[:, b]
        labels = [f"({self.label(x)}, {other.label(y)})" for x, y in zip(a, b)]
        return FiniteModule(self.ring, add, self.zero + n * other.zero, action, labels, f"{self.name}+{other.name}")

    def to_json(self):
        out = {"size": self.size, "add": self.add.tolist(), "zero": self.zero, "action": self.action.tolist()}
        if self.labels is not None:
            out["labels"] = list(self.labels)
        return out

    @classmethod
    def from_json(cls, ring: FiniteRingTable, obj):
        try:
            return cls(ring, obj["add"], obj.get("zero", 0), obj["action"], obj.get("labels"))
        except KeyError as exc:
            raise InputError(f"module JSON is missing {exc}") from exc

    def __repr__(self):
        return f"FiniteModule({self.name or '?'}, size={self.size}, over {self.ring.name})"


# ---------------------------------------------------------------------------
# kernels


@dataclass
class KernelData:
    """Kernel of a surjection ``q: D -> C`` of finite rings.

    ``elements`` lists the kernel as sorted indices of ``D``.  When the kernel
    squares to zero, ``module`` is the induced ``C``-module whose element
    ``k`` corresponds to ``elements[k]``.
    """

    map: TableMap
    elements: list
    is_square_zero: bool
    square_witness: tuple | None = None
    module: FiniteModule | None = None
    position: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.elements)


def kernel_of_surjection(q: TableMap) -> KernelData:
    q.verify()
    if not q.is_surjective():
        missing = sorted(set(range(q.target.size)) - set(int(v) for v in q.mapping))
        raise NotSurjective(f"{q.target.name} element {missing[0]} has no preimage")
    D, C = q.source, q.target
    K = [int(d) for d in np.nonzero(q.mapping == C.zero)[0]]
    Karr = np.array(K, dtype=np.int64)
    sq = D.mul[Karr[:, None], Karr[None, :]]
    if (sq != D.zero).any():
        a, b = np.argwhere(sq != D.zero)[0]
        return KernelData(q, K, False, (K[a], K[b]))
    position = {d: k for k, d in enumerate(K)}
    pos = np.full(D.size, -1, dtype=np.int64)
    pos[Karr] = np.arange(len(K))
    add = pos[D.add[Karr[:, None], Karr[None, :]]]
    action = np.full((C.size, len(K)), -1, dtype=np.int64)
    prods = pos[D.mul[:, Karr]]  # (d, k)
    for d in range(D.size):
        c = int(q.mapping[d])
        if (action[c] < 0).all():
            action[c] = prods[d]
        elif (action[c] != prods[d]).any():
            k = int(np.argmax(action[c] != prods[d]))
            raise NotAModule("induced action depends on the preimage", ("preimage", c, d, k))
    labels = [D.label(d) for d in K]
    module = FiniteModule(C, add, position[D.zero], action, labels, f"ker({D.name}->{C.name})")
    return KernelData(q, K, True, None, module, position)
