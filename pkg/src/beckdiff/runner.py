"""Case reports and the corpus suites behind ``beckdiff corpus run``.

Each case is a pure function of its inputs and a per-case seed derived
from the run seed and the case id, so reports do not depend on how cases
are scheduled.  Results are always assembled in case-id order.
"""

from __future__ import annotations

import contextvars
import hashlib
import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import corpus
from .beck import (
    adjunction_cardinalities,
    lift_check,
    torsor_fiber_bijection,
    unramified_check,
    verify_torsor,
)
from .exactnum import PrimeField
from .errors import BeckDiffError, InputError, KernelSquareNonzero
from .fpalg import FiniteModule, TableMap, integer_ring_mod, to_finite_table
from .grpbeck import group_kahler_rank, group_lift_check, load_fixture_groups
from .oracles import derivation_dimension, hom_omega_dimension, macaulay_member, module_quotient_dimension
from .polyring import s_polynomial

__all__ = ["CaseReport", "RunReport", "corpus_run", "max_threads", "run_cases"]

PASS, FAIL, ERROR = "Pass", "Fail", "Error"
ADJUNCTION_BOUND = 16  # largest |B| for the cardinality form of the adjunction


@dataclass
class CaseReport:
    case_id: str
    command: str
    verdict: str
    details: dict = field(default_factory=dict)
    elapsed_ms: int = 0

    def to_json(self, timings=False):
        out = {"case": self.case_id, "command": self.command, "verdict": self.verdict, "details": self.details}
        if timings:
            out["elapsed_ms"] = self.elapsed_ms
        return out


@dataclass
class RunReport:
    command: str
    cases: list
    summary: dict = field(default_factory=dict)

    @property
    def failed(self):
        return any(c.verdict != PASS for c in self.cases)

    @property
    def exit_code(self):
        if any(c.verdict == ERROR for c in self.cases):
            return 2
        return 3 if self.failed else 0

    def to_json(self, timings=False):
        return {
            "command": self.command,
            "cases": [c.to_json(timings) for c in self.cases],
            "summary": self.summary,
        }

    def to_text(self, timings=False):
        width = max([len(c.case_id) for c in self.cases] + [4])
        lines = [f"{'case'.ljust(width)}  verdict  note"]
        for c in self.cases:
            note = c.details.get("note", "")
            tail = f"  ({c.elapsed_ms} ms)" if timings else ""
            lines.append(f"{c.case_id.ljust(width)}  {c.verdict:<7}  {note}{tail}")
        for k in sorted(self.summary):
            lines.append(f"{k}: {self.summary[k]}")
        return "\n".join(lines) + "\n"


def max_threads() -> int:
    raw = os.environ.get("BECKDIFF_MAX_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError as exc:
        raise InputError(f"BECKDIFF_MAX_THREADS must be an integer, got {raw!r}") from exc


def case_seed(seed: int, case_id: str) -> int:
    digest = hashlib.sha256(f"{seed}:{case_id}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def _timed(case_id, command, fn):
    start = time.perf_counter()
    try:
        verdict, details = fn()
    except BeckDiffError as exc:
        verdict, details = ERROR, {"error": type(exc).__name__, "message": str(exc)}
    ms = int((time.perf_counter() - start) * 1000)
    return CaseReport(case_id, command, verdict, details, ms)


def run_cases(command, cases, threads=None):
    """Run ``(case_id, fn)`` pairs, possibly in parallel; reports come back sorted by id."""
    threads = threads or max_threads()
    ids = [cid for cid, _ in cases]
    if len(set(ids)) != len(ids):
        raise ValueError("case ids must be unique")
    if threads == 1 or len(cases) < 2:
        reports = [_timed(cid, command, fn) for cid, fn in cases]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            # each task runs in a copy of the caller's context so resource limits carry over
            futures = [pool.submit(contextvars.copy_context().run, _timed, cid, command, fn) for cid, fn in cases]
            reports = [f.result() for f in futures]
    return sorted(reports, key=lambda r: r.case_id)


# ---------------------------------------------------------------------------
# rings suite


def _lift_targets():
    """Corpus torsors as lift-check targets; self-torsors are checked as Beck modules."""
    out = []
    for nt in corpus.torsor_corpus():
        T = nt.torsor
        target = T.beck_module if T.beck_module.total is T.total else T
        out.append((nt.name, target))
    return out


def _algebra_case(B, seed, samples):
    rng = random.Random(seed)
    report = unramified_check(B)
    K = report.kahler
    details = {
        "dimension": B.dimension,
        "omega_zero": report.unramified,
        "omega_dimension": K.dimension(),
        "certificate_verified": report.certificate.verify(),
    }
    problems = []
    if not details["certificate_verified"]:
        problems.append("certificate")
    if not report.unramified:
        ok = report.witness is not None and report.witness.verify()
        details["witness_verified"] = ok
        if not ok:
            problems.append("witness")

    # linear-algebra oracles
    oracle_dim = module_quotient_dimension(K.presentation)
    details["oracle_omega_dimension"] = oracle_dim
    if oracle_dim != K.dimension():
        problems.append("omega dimension")
    der, hom = derivation_dimension(B), hom_omega_dimension(B)
    details["der_dimension"], details["hom_omega_dimension"] = der, hom
    if der != hom:
        problems.append("adjunction (linear)")

    # Gröbner engine: S-polynomials and random membership against the Macaulay oracle
    G = B.groebner
    spolys_ok = all(
        G.reduce(s_polynomial(f, g, G.order)).is_zero() for i, f in enumerate(G.elements) for g in G.elements[i + 1 :]
    )
    details["spolys_reduce_to_zero"] = spolys_ok
    if not spolys_ok:
        problems.append("s-polynomials")
    agree = 0
    for _ in range(samples):
        f = corpus.random_polynomial(rng, B.generators, B.base)
        if rng.random() < 0.5 and B.relations:
            f = f * B.relations[rng.randrange(len(B.relations))]
        if G.contains(f) == macaulay_member(f, B.relations):
            agree += 1
    details["membership_agreement"] = f"{agree}/{samples}"
    if agree != samples:
        problems.append("membership")

    # derivation: scalars die, Leibniz holds
    leibniz = 0
    for _ in range(samples):
        f = corpus.random_polynomial(rng, B.generators, B.base)
        g = corpus.random_polynomial(rng, B.generators, B.base)
        lhs = K.d(f * g)
        if lhs is None:
            leibniz += 1
            continue
        rhs = K.presentation.reduce(K.d(g).scale(f) + K.d(f).scale(g))
        if lhs == rhs and K.d(B.constant(rng.randint(1, 9))).is_zero():
            leibniz += 1
    details["leibniz"] = f"{leibniz}/{samples}"
    if leibniz != samples:
        problems.append("leibniz")

    # lifting oracle over corpus torsors and Beck modules
    violations, non_bijective, checked, first = 0, 0, 0, None
    for name, target in _lift_targets():
        lr = lift_check(B, target)
        checked += 1
        if not lr.injective:
            violations += 1
            if first is None:
                first = {"torsor": name, "pair": [list(h) for h in lr.colliding_pair]}
        if lr.for_module and not lr.bijective:
            non_bijective += 1
    details["lift"] = {
        "targets": checked,
        "injectivity_violations": violations,
        "non_bijective_beck_modules": non_bijective,
    }
    if first is not None:
        details["lift"]["first_collision"] = first
    if report.unramified and (violations or non_bijective):
        problems.append("unramified but a lift collides")

    # adjunction by cardinality on the regular module
    if isinstance(B.base, PrimeField) and B.base.p**B.dimension <= ADJUNCTION_BOUND:
        BT = to_finite_table(B)
        left, right = adjunction_cardinalities(B, FiniteModule.regular(BT), BT)
        details["adjunction_counts"] = [left, right]
        if left != right:
            problems.append("adjunction (counts)")

    details["consistent"] = not problems
    if problems:
        details["problems"] = problems
    details["note"] = ("Omega = 0" if report.unramified else "Omega != 0") + (
        "" if not problems else "; " + ", ".join(problems)
    )
    return (PASS if not problems else FAIL), details


def _torsor_case(nt):
    T = nt.torsor
    details = {
        "split": T.split,
        "expected_split": nt.expected_split,
        "checks": dict(T.checks),
        "fiber_product_size": T.fiber_product_size,
        "kernel_pair_size": int(sum(int((T.map.mapping == c).sum()) ** 2 for c in range(T.base.size))),
    }
    ok = all(T.checks.values()) and details["fiber_product_size"] == details["kernel_pair_size"]
    if nt.expected_split is not None:
        ok = ok and T.split == nt.expected_split
    details["note"] = ("split" if T.split else "non-split") + f", |M x_Y Z| = {details['fiber_product_size']}"
    return (PASS if ok else FAIL), details


def _rejection_case():
    q = TableMap(integer_ring_mod(8), integer_ring_mod(2), [i % 2 for i in range(8)])
    try:
        verify_torsor(q)
    except KernelSquareNonzero as exc:
        return PASS, {"error": "KernelSquareNonzero", "witness": list(exc.witness), "note": "rejected: KernelSquareNonzero"}
    return FAIL, {"note": "accepted a non-square-zero kernel"}


def _fiber_case(X):
    total, bijective, sizes = 0, 0, []
    for nt in corpus.torsor_corpus():
        r = torsor_fiber_bijection(X, nt.torsor)
        total += 1
        bijective += bool(r.bijective and r.left_size == r.right_size)
        sizes.append([nt.name, r.left_size, r.right_size])
    details = {"torsors": total, "bijective": bijective, "sizes": sizes, "note": f"{bijective}/{total} bijective"}
    return (PASS if bijective == total else FAIL), details


def _ring_cases(max_size, seed, samples):
    cases = []
    algebras = [B for B in corpus.load_algebras() if B.dimension is not None and B.dimension <= max_size]
    for B in algebras:
        cid = f"algebra/{B.name}"
        cases.append((cid, lambda B=B, s=case_seed(seed, cid): _algebra_case(B, s, samples)))
    if max_size >= 1:
        for nt in corpus.torsor_corpus():
            cases.append((f"torsor/{nt.name}", lambda nt=nt: _torsor_case(nt)))
        cases.append(("torsor/reject Z/8 -> Z/2", _rejection_case))
        for X in corpus.test_objects():
            cases.append((f"fiber/{X.name}", lambda X=X: _fiber_case(X)))
    return cases


# ---------------------------------------------------------------------------
# groups suite


def _group_case(H, torsors):
    rank = group_kahler_rank(H)
    collisions = []
    for T in torsors:
        r = group_lift_check(H, T)
        if not r.injective:
            collisions.append({"torsor": T.name, "pair": [list(h) for h in r.colliding_pair]})
    unramified = not collisions
    details = {
        "order": H.size,
        "kahler_rank": rank,
        "lift_unramified": unramified,
        "torsors": len(torsors),
        "non_injective": len(collisions),
    }
    if collisions:
        details["first_collision"] = collisions[0]
    consistent = (rank == 0) == unramified
    details["note"] = ("unramified" if unramified else f"{len(collisions)} colliding torsors") + (
        "" if consistent else "; inconsistent with Kähler rank"
    )
    return (PASS if consistent else FAIL), details


def _group_torsor_case(T):
    ok = all(T.checks.values()) and T.fiber_product_size == T.kernel_pair_size
    details = {
        "split": T.split,
        "checks": dict(T.checks),
        "fiber_product_size": T.fiber_product_size,
        "kernel_pair_size": T.kernel_pair_size,
        "note": ("split" if T.split else "non-split") + f", |M x_G E| = {T.fiber_product_size}",
    }
    return (PASS if ok else FAIL), details


def _group_cases(max_size):
    groups = [(n, H) for n, H in load_fixture_groups().items() if H.size <= max_size]
    torsors = list(corpus.group_torsor_corpus())
    cases = [(f"group/{H.size}/{n}", lambda H=H: _group_case(H, torsors)) for n, H in groups]
    if groups:
        cases += [(f"gtorsor/{T.name}", lambda T=T: _group_torsor_case(T)) for T in torsors]
    return cases


# ---------------------------------------------------------------------------


def corpus_run(suite: str, max_size: int, seed: int = 0, *, threads=None, samples: int = 8) -> RunReport:
    """Run one suite over the fixture corpus and summarize."""
    if suite == "rings":
        cases = _ring_cases(max_size, seed, samples)
    elif suite == "groups":
        cases = _group_cases(max_size)
    else:
        raise InputError(f"unknown suite {suite!r}; expected 'rings' or 'groups'")
    reports = run_cases(f"corpus run --suite {suite}", cases, threads)
    summary = {
        "suite": suite,
        "max_size": max_size,
        "seed": seed,
        "cases": len(reports),
        "passed": sum(r.verdict == PASS for r in reports),
        "failed": sum(r.verdict == FAIL for r in reports),
        "errors": sum(r.verdict == ERROR for r in reports),
    }
    if suite == "rings":
        alg = [r for r in reports if r.case_id.startswith("algebra/")]
        summary["inconsistencies"] = sum(not r.details.get("consistent", False) for r in alg)
        summary["unramified algebras"] = sum(bool(r.details.get("omega_zero")) for r in alg)
    else:
        grp = [r for r in reports if r.case_id.startswith("group/")]
        summary["unramified groups found"] = "[" + ", ".join(
            r.case_id.split("/")[-1] for r in grp if r.details.get("lift_unramified")
        ) + "]"
        summary["torsor bijections"] = "all pass" if all(
            r.verdict == PASS for r in reports if r.case_id.startswith("gtorsor/")
        ) else "failures"
    return RunReport(f"corpus run --suite {suite} --max-size {max_size} --seed {seed}", reports, summary)
