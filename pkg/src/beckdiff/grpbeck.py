"""Beck modules and torsors in the category of groups.

Beck modules over ``G`` are ``G``-modules realized as split extensions
``M x| G -> G``; torsors are surjections with abelian kernel.  Groups are
Cayley tables on indices ``0..n-1``.  In a semidirect product the element
``(m, g)`` has index ``g + |G| * m``, so the section ``g -> (0, g)`` is the
identity on indices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from ._gbcore import Limits, current_limits
from .errors import (
    ActionIllDefined,
    InputError,
    InvalidTable,
    KernelNonAbelian,
    NoIdentity,
    NoInverse,
    NotAGroupHom,
    NotAModule,
    NotAssociative,
    NotSurjective,
    ResourceLimit,
)
from .data import read_fixture
from .fpalg import HomSet

__all__ = [
    "FiniteGroupTable",
    "GModuleTable",
    "GroupExtensionCandidate",
    "GroupTorsor",
    "GroupLiftReport",
    "validate_group",
    "cyclic_group",
    "direct_product",
    "semidirect_product",
    "enumerate_group_homs",
    "verify_group_torsor",
    "group_lift_check",
    "group_kahler_rank",
    "load_fixture_groups",
]


class FiniteGroupTable:
    """A finite group given by its Cayley table, verified exhaustively."""

    def __init__(self, mul, identity=None, labels=None, name="", verify=True):
        self.mul = np.asarray(mul, dtype=np.int64)
        n = self.mul.shape[0] if self.mul.ndim == 2 else 0
        if self.mul.ndim != 2 or self.mul.shape != (n, n) or n == 0:
            raise InvalidTable("a group table must be a nonempty square table")
        if self.mul.min() < 0 or self.mul.max() >= n:
            raise InvalidTable("table entry out of range")
        self.size = n
        self.name = name
        self.labels = list(labels) if labels is not None else None
        idx = np.arange(n)
        if identity is None:
            cands = [e for e in range(n) if (self.mul[e] == idx).all() and (self.mul[:, e] == idx).all()]
            if not cands:
                raise NoIdentity("no two-sided identity element")
            identity = cands[0]
        self.identity = int(identity)
        if verify:
            self.verify()
        self.inverse = np.argmax(self.mul == self.identity, axis=1).astype(np.int64)

    def verify(self):
        n, mul, e = self.size, self.mul, self.identity
        idx = np.arange(n)
        if not ((mul[e] == idx).all() and (mul[:, e] == idx).all()):
            raise NoIdentity(f"element {e} is not a two-sided identity")
        has_right = (mul == e).any(axis=1)
        has_left = (mul == e).any(axis=0)
        bad = np.nonzero(~(has_right & has_left))[0]
        if len(bad):
            raise NoInverse(f"element {int(bad[0])} has no inverse", int(bad[0]))
        lhs = mul[mul[:, :, None], idx[None, None, :]]  # (ab)c
        rhs = mul[idx[:, None, None], mul[None, :, :]]  # a(bc)
        diff = np.argwhere(lhs != rhs)
        if len(diff):
            a, b, c = (int(v) for v in diff[0])
            raise NotAssociative(f"({a}*{b})*{c} != {a}*({b}*{c})", (a, b, c))
        return self

    def label(self, i):
        return self.labels[i] if self.labels else str(i)

    @property
    def is_abelian(self):
        return bool((self.mul == self.mul.T).all())

    def order(self, g):
        k, x = 1, int(g)
        while x != self.identity:
            x = int(self.mul[x, g])
            k += 1
        return k

    def generated(self, gens):
        """Sorted list of the elements of the subgroup generated by ``gens``."""
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            new = []
            for x in frontier:
                for g in gens:
                    y = int(self.mul[x, g])
                    if y not in seen:
                        seen.add(y)
                        new.append(y)
            frontier = new
        return sorted(seen)

    def generating_set(self):
        """Greedy generating set: add the first element not yet generated."""
        gens = []
        span = {self.identity}
        for g in range(self.size):
            if g not in span:
                gens.append(g)
                span = set(self.generated(gens))
        return gens

    def same_table(self, other):
        return self.size == other.size and self.identity == other.identity and bool((self.mul == other.mul).all())

    def to_json(self):
        out = {"size": self.size, "mul": self.mul.tolist(), "identity": self.identity}
        if self.labels:
            out["labels"] = list(self.labels)
        if self.name:
            out["name"] = self.name
        return out

    @classmethod
    def from_json(cls, obj, name=""):
        if not isinstance(obj, dict) or "mul" not in obj:
            raise InputError("group JSON needs a 'mul' table")
        G = cls(obj["mul"], obj.get("identity"), obj.get("labels"), obj.get("name", name))
        if "size" in obj and obj["size"] != G.size:
            raise InvalidTable(f"declared size {obj['size']} does not match the table")
        return G

    def __repr__(self):
        return f"FiniteGroupTable({self.name or self.size})"


def validate_group(table) -> FiniteGroupTable:
    """Accept a table, a JSON dict or a :class:`FiniteGroupTable` and verify it."""
    if isinstance(table, FiniteGroupTable):
        return table.verify()
    if isinstance(table, dict):
        return FiniteGroupTable.from_json(table)
    return FiniteGroupTable(table)


def cyclic_group(n: int, name="") -> FiniteGroupTable:
    idx = np.arange(n)
    return FiniteGroupTable((idx[:, None] + idx[None, :]) % n, 0, name=name or f"Z{n}")


def direct_product(G: FiniteGroupTable, H: FiniteGroupTable, name="") -> FiniteGroupTable:
    """``G x H`` with ``(g, h)`` at index ``g + |G| h``."""
    n, m = G.size, H.size
    g = np.tile(np.arange(n), m)
    h = np.repeat(np.arange(m), n)
    mul = G.mul[g[:, None], g[None, :]] + n * H.mul[h[:, None], h[None, :]]
    labels = [f"({G.label(a)},{H.label(b)})" for a, b in zip(g, h)]
    return FiniteGroupTable(mul, G.identity + n * H.identity, labels, name or f"{G.name}x{H.name}")


def _group_hom_check(src: FiniteGroupTable, dst: FiniteGroupTable, f):
    lhs = f[src.mul]
    rhs = dst.mul[f[:, None], f[None, :]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        a, b = (int(v) for v in bad[0])
        raise NotAGroupHom(f"f({a}*{b}) != f({a})*f({b})", (a, b))


# ---------------------------------------------------------------------------
# G-modules


class GModuleTable:
    """An abelian group ``M`` with an action of ``G`` by automorphisms.

    ``action[g, m]`` is ``g . m``.  The group law of ``M`` is written
    additively.
    """

    def __init__(self, group: FiniteGroupTable, module: FiniteGroupTable, action, name="", verify=True):
        self.group = group
        self.module = module
        self.action = np.asarray(action, dtype=np.int64)
        self.name = name
        if self.action.shape != (group.size, module.size):
            raise InvalidTable("action table must have shape |G| x |M|")
        if verify:
            self.verify()

    @property
    def size(self):
        return self.module.size

    def verify(self):
        G, M, act = self.group, self.module, self.action
        if not M.is_abelian:
            a, b = (int(v) for v in np.argwhere(M.mul != M.mul.T)[0])
            raise NotAModule("module group is not abelian", ("commute", a, b))
        if act.min() < 0 or act.max() >= M.size:
            raise InvalidTable("action entry out of range")
        if (act[G.identity] != np.arange(M.size)).any():
            m = int(np.argmax(act[G.identity] != np.arange(M.size)))
            raise NotAModule("identity does not act trivially", ("identity", m))
        # g(m + m') = gm + gm'
        lhs = act[:, M.mul]
        rhs = M.mul[act[:, :, None], act[:, None, :]]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            raise NotAModule("action is not additive", ("additive",) + tuple(int(v) for v in bad[0]))
        # (gh)m = g(hm)
        lhs = act[G.mul]  # [g, h, m] -> (gh) m
        rhs = act[np.arange(G.size)[:, None, None], act[None, :, :]]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            raise NotAModule("action is not compatible with the group law", ("compose",) + tuple(int(v) for v in bad[0]))
        return self

    @classmethod
    def trivial(cls, G: FiniteGroupTable, M: FiniteGroupTable, name=""):
        return cls(G, M, np.tile(np.arange(M.size), (G.size, 1)), name or M.name)

    def to_json(self):
        return {"group": self.group.to_json(), "module": self.module.to_json(), "action": self.action.tolist()}

    @classmethod
    def from_json(cls, obj):
        try:
            G = FiniteGroupTable.from_json(obj["group"])
            M = FiniteGroupTable.from_json(obj["module"])
            return cls(G, M, obj["action"], obj.get("name", ""))
        except KeyError as exc:
            raise InputError(f"G-module JSON is missing {exc}") from exc


# ---------------------------------------------------------------------------
# extensions and torsors


@dataclass(eq=False)
class GroupExtensionCandidate:
    """A surjective group hom ``q: E -> G`` with kernel ``q^{-1}(e)``."""

    total: FiniteGroupTable
    base: FiniteGroupTable
    map: np.ndarray
    kernel: list = field(default_factory=list)
    section: np.ndarray | None = None
    module: GModuleTable | None = None
    name: str = ""

    def __post_init__(self):
        self.map = np.asarray(self.map, dtype=np.int64)
        E, G = self.total, self.base
        if self.map.shape != (E.size,) or self.map.min() < 0 or self.map.max() >= G.size:
            raise InvalidTable("map must send every element of the total group into the base")
        _group_hom_check(E, G, self.map)
        if len(set(self.map.tolist())) != G.size:
            missing = sorted(set(range(G.size)) - set(self.map.tolist()))
            raise NotSurjective(f"base element {missing[0]} has no preimage")
        self.kernel = [int(e) for e in np.nonzero(self.map == G.identity)[0]]
        if not self.name:
            self.name = f"{E.name}->{G.name}"

    @classmethod
    def from_json(cls, obj):
        try:
            E = FiniteGroupTable.from_json(obj["total"])
            G = FiniteGroupTable.from_json(obj["base"])
            return cls(E, G, obj["map"], name=obj.get("name", ""))
        except KeyError as exc:
            raise InputError(f"extension JSON is missing {exc}") from exc

    def to_json(self):
        return {"name": self.name, "total": self.total.to_json(), "base": self.base.to_json(), "map": self.map.tolist()}


def semidirect_product(M: GModuleTable, name="") -> GroupExtensionCandidate:
    """``M x| G -> G`` with ``(m, g)(m', g') = (m + g.m', gg')``."""
    G, A, act = M.group, M.module, M.action
    n, k = G.size, A.size
    g = np.tile(np.arange(n), k)
    m = np.repeat(np.arange(k), n)
    gm2 = act[g[:, None], m[None, :]]  # g . m'
    mul = G.mul[g[:, None], g[None, :]] + n * A.mul[m[:, None], gm2]
    labels = [f"({A.label(b)},{G.label(a)})" for a, b in zip(g, m)]
    E = FiniteGroupTable(mul, G.identity + n * A.identity, labels, name or f"{A.name or k}x|{G.name}")
    ext = GroupExtensionCandidate(E, G, g, section=np.arange(n), module=M, name=f"{E.name}->{G.name}")
    # fiberwise addition is the group law of M on each fiber
    for c in range(n):
        fiber_sum = c + n * A.mul
        if (fiber_sum != fiber_sum.T).any():
            raise NotAModule("fiberwise addition is not commutative", ("fiber", c))
    return ext


def extend_group_hom(src: FiniteGroupTable, dst: FiniteGroupTable, gens, images):
    """The hom ``src -> dst`` with ``gens -> images``, or None if none exists."""
    f = np.full(src.size, -1, dtype=np.int64)
    f[src.identity] = dst.identity
    frontier = [src.identity]
    while frontier:
        new = []
        for x in frontier:
            for g, v in zip(gens, images):
                y, w = int(src.mul[x, g]), int(dst.mul[f[x], v])
                if f[y] < 0:
                    f[y] = w
                    new.append(y)
                elif f[y] != w:
                    return None
        frontier = new
    if (f < 0).any():
        return None
    try:
        _group_hom_check(src, dst, f)
    except NotAGroupHom:
        return None
    return f


def enumerate_group_homs(H: FiniteGroupTable, E: FiniteGroupTable, *, limits: Limits | None = None) -> HomSet:
    """All group homs ``H -> E`` as tuples of images of every element, sorted."""
    gens = H.generating_set()
    orders_E = np.array([E.order(x) for x in range(E.size)])
    choices = [[int(x) for x in range(E.size) if H.order(g) % orders_E[x] == 0] for g in gens]
    total = 1
    for c in choices:
        total *= len(c)
    limits = limits or current_limits()
    if total > limits.max_homs:
        raise ResourceLimit(f"{total} generator assignments exceed the bound {limits.max_homs}")
    homs = []
    for images in itertools.product(*choices):
        f = extend_group_hom(H, E, gens, images)
        if f is not None:
            homs.append(tuple(int(v) for v in f))
    return HomSet(H, E, tuple(sorted(homs)))


@dataclass(eq=False)
class GroupTorsor:
    """Verified group torsor: ``q`` with its kernel as a Beck module over the base."""

    extension: GroupExtensionCandidate
    module: GModuleTable
    beck: GroupExtensionCandidate
    split: bool
    section: np.ndarray | None
    checks: dict
    fiber_product_size: int
    kernel_pair_size: int

    @property
    def total(self):
        return self.extension.total

    @property
    def base(self):
        return self.extension.base

    @property
    def map(self):
        return self.extension.map

    @property
    def name(self):
        return self.extension.name

    def act(self, z, e):
        """``tau((k, g), e) = k e`` for ``q(e) = g``."""
        n = self.base.size
        g, k = int(z) % n, int(z) // n
        if g != int(self.map[e]):
            raise InputError("element and point lie over different points")
        return int(self.total.mul[self.extension.kernel[k], e])

    def to_json(self):
        return {
            "name": self.name,
            "total_size": self.total.size,
            "base_size": self.base.size,
            "kernel_size": len(self.extension.kernel),
            "split": self.split,
            "fiber_product_size": self.fiber_product_size,
            "kernel_pair_size": self.kernel_pair_size,
            "checks": dict(self.checks),
        }


def _find_group_section(q: GroupExtensionCandidate):
    E, G = q.total, q.base
    gens = G.generating_set()
    fibers = [np.nonzero(q.map == g)[0] for g in gens]
    for images in itertools.product(*fibers):
        s = extend_group_hom(G, E, gens, [int(v) for v in images])
        if s is not None and (q.map[s] == np.arange(G.size)).all():
            return s
    return None


def verify_group_torsor(q: GroupExtensionCandidate) -> GroupTorsor:
    """Check that ``q`` is a torsor for its kernel, a ``G``-module by conjugation."""
    E, G = q.total, q.base
    K = np.array(q.kernel, dtype=np.int64)
    Kmul = E.mul[K[:, None], K[None, :]]
    bad = np.argwhere(Kmul != Kmul.T)
    if len(bad):
        a, b = (int(K[v]) for v in bad[0])
        raise KernelNonAbelian(f"kernel elements {E.label(a)} and {E.label(b)} do not commute", (a, b))
    pos = np.full(E.size, -1, dtype=np.int64)
    pos[K] = np.arange(len(K))
    add = pos[Kmul]
    # conjugation e k e^-1 must depend only on q(e)
    conj = pos[E.mul[E.mul[np.arange(E.size)[:, None], K[None, :]], E.inverse[:, None]]]
    if (conj < 0).any():
        e, k = (int(v) for v in np.argwhere(conj < 0)[0])
        raise ActionIllDefined("kernel is not normal", (e, int(K[k])))
    action = np.full((G.size, len(K)), -1, dtype=np.int64)
    for e in range(E.size):
        g = int(q.map[e])
        if (action[g] < 0).all():
            action[g] = conj[e]
        elif (action[g] != conj[e]).any():
            k = int(np.argmax(action[g] != conj[e]))
            raise ActionIllDefined("conjugation action depends on the preimage", (g, e, int(K[k])))
    Ktab = FiniteGroupTable(add, int(pos[E.identity]), [E.label(int(k)) for k in K], f"ker({q.name})")
    module = GModuleTable(G, Ktab, action, Ktab.name)
    beck = semidirect_product(module)
    n, nK, nE = G.size, len(K), E.size
    checks = {}

    # fiber product M x_G E as pairs (k, e); its M-element is (k, q(e))
    kk = np.repeat(np.arange(nK), nE)
    ee = np.tile(np.arange(nE), nK)
    tau = E.mul[K[kk], ee]
    checks["over_base"] = bool((q.map[tau] == q.map[ee]).all())
    checks["unit_acts_trivially"] = bool((E.mul[K[Ktab.identity], np.arange(nE)] == np.arange(nE)).all())
    lhs = E.mul[K[:, None, None], E.mul[K[None, :, None], np.arange(nE)[None, None, :]]]
    rhs = E.mul[K[add][:, :, None], np.arange(nE)[None, None, :]]
    checks["action_associative"] = bool((lhs == rhs).all())
    # tau is a group hom on the fiber product M x_G E
    g_of = q.map[ee]
    k_prod = add[kk[:, None], action[g_of[:, None], kk[None, :]]]
    prod_tau = E.mul[K[k_prod], E.mul[ee[:, None], ee[None, :]]]
    checks["action_multiplicative"] = bool((prod_tau == E.mul[tau[:, None], tau[None, :]]).all())
    codes = tau * nE + ee
    fiber_sizes = np.bincount(q.map, minlength=n)
    pair_size = int((fiber_sizes**2).sum())
    checks["shear_bijective"] = bool(
        len(np.unique(codes)) == len(codes) and checks["over_base"] and len(codes) == pair_size
    )
    failed = [k for k, v in checks.items() if not v]
    if failed:
        raise NotAModule(f"torsor axioms fail: {', '.join(failed)}", tuple(failed))
    section = q.section if q.section is not None else _find_group_section(q)
    return GroupTorsor(q, module, beck, section is not None, section, checks, len(codes), pair_size)


@dataclass
class GroupLiftReport:
    injective: bool
    colliding_pair: tuple | None
    hom_counts: dict

    def to_json(self):
        out = {"injective": self.injective, "hom_counts": dict(self.hom_counts)}
        if self.colliding_pair is not None:
            out["colliding_pair"] = [list(h) for h in self.colliding_pair]
        return out


def group_lift_check(H: FiniteGroupTable, T, *, limits: Limits | None = None) -> GroupLiftReport:
    """Injectivity of ``Hom(H, E) -> Hom(H, G)`` for a torsor or extension ``E -> G``."""
    ext = T.extension if isinstance(T, GroupTorsor) else T
    HE = enumerate_group_homs(H, ext.total, limits=limits)
    HG = enumerate_group_homs(H, ext.base, limits=limits)
    down = HE.postcompose(ext.map, HG)
    seen = {}
    collision = None
    for a, y in enumerate(down):
        if y in seen:
            collision = (HE[seen[y]], HE[a])
            break
        seen[y] = a
    return GroupLiftReport(collision is None, collision, {"Hom(H,E)": len(HE), "Hom(H,G)": len(HG)})


def group_kahler_rank(G: FiniteGroupTable) -> int:
    """Rank of the augmentation ideal of ``Z[G]``, free on ``g - e`` for ``g != e``."""
    return G.size - 1


def load_fixture_groups() -> dict:
    """The shipped Cayley tables of all groups of order at most 8, keyed by name."""
    raw = read_fixture("groups.json")
    return {name: FiniteGroupTable.from_json(obj, name) for name, obj in raw.items()}
