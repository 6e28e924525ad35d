import json

import numpy as np
import pytest

from beckdiff import corpus
from beckdiff.errors import InputError, ResourceLimit
from beckdiff.polyring import Limits, current_limits, limits_scope
from beckdiff.runner import ERROR, FAIL, PASS, CaseReport, RunReport, case_seed, corpus_run, max_threads, run_cases
from beckdiff.serialize import dumps, load_json, read_surjection


def test_case_seed_stable():
    assert case_seed(0, "algebra/Q") == case_seed(0, "algebra/Q")
    assert case_seed(0, "algebra/Q") != case_seed(1, "algebra/Q")
    assert case_seed(0, "a") != case_seed(0, "b")


def test_run_cases_sorted_and_parallel():
    cases = [(f"c{i}", lambda i=i: (PASS, {"i": i})) for i in (3, 1, 2)]
    a = run_cases("t", cases, threads=1)
    b = run_cases("t", cases, threads=3)
    assert [r.case_id for r in a] == ["c1", "c2", "c3"]
    assert [r.to_json() for r in a] == [r.to_json() for r in b]


def test_run_cases_rejects_duplicates():
    with pytest.raises(ValueError):
        run_cases("t", [("a", lambda: (PASS, {})), ("a", lambda: (PASS, {}))])


def test_errors_are_captured():
    def boom():
        raise ResourceLimit("too big")

    (r,) = run_cases("t", [("x", boom)])
    assert r.verdict == ERROR and r.details["error"] == "ResourceLimit"


def test_limits_carry_into_threads():
    seen = []
    cases = [(f"c{i}", lambda: (seen.append(current_limits().max_homs), (PASS, {}))[1]) for i in range(4)]
    with limits_scope(Limits(max_homs=7)):
        run_cases("t", cases, threads=4)
    assert seen == [7] * 4


def test_exit_codes():
    ok = CaseReport("a", "t", PASS)
    assert RunReport("t", [ok]).exit_code == 0
    assert RunReport("t", [ok, CaseReport("b", "t", FAIL)]).exit_code == 3
    assert RunReport("t", [CaseReport("b", "t", FAIL), CaseReport("c", "t", ERROR)]).exit_code == 2
    assert RunReport("t", []).exit_code == 0


def test_max_threads_env(monkeypatch):
    monkeypatch.setenv("BECKDIFF_MAX_THREADS", "3")
    assert max_threads() == 3
    monkeypatch.setenv("BECKDIFF_MAX_THREADS", "many")
    with pytest.raises(InputError):
        max_threads()


def test_unknown_suite():
    with pytest.raises(InputError):
        corpus_run("fields", 3)


def test_small_ring_run():
    r = corpus_run("rings", 1, 0)
    assert r.exit_code == 0
    assert r.summary["inconsistencies"] == 0
    ids = [c.case_id for c in r.cases]
    assert ids == sorted(ids)
    assert any(i.startswith("algebra/") for i in ids)


def test_dumps_canonical():
    text = dumps({"b": np.int64(2), "a": (1, np.bool_(True)), "c": {3, 1}})
    assert text == json.dumps({"a": [1, True], "b": 2, "c": [1, 3]}, sort_keys=True, indent=2) + "\n"


def test_load_json_errors(tmp_path):
    with pytest.raises(InputError):
        load_json(tmp_path / "nope.json")
    p = tmp_path / "bad.json"
    p.write_text("[1,")
    with pytest.raises(InputError):
        load_json(p)


def test_read_surjection_size_mismatch():
    from beckdiff.fpalg import integer_ring_mod

    obj = {"total": integer_ring_mod(4).to_json(), "base": integer_ring_mod(2).to_json(), "map": [0, 1]}
    with pytest.raises(InputError):
        read_surjection(obj)


def test_corpus_bounds():
    rings = corpus.ring_corpus()
    assert len(rings) == 25 and all(R.size <= 16 for R in rings)
    modules = corpus.beck_module_corpus()
    assert all(E.module.size <= 9 and E.base.size <= 16 for E in modules)
    names = [nt.name for nt in corpus.torsor_corpus(include_beck_modules=False)]
    assert len(names) == len(set(names))
