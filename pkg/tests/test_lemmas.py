import pytest

from rank3hecke import _kernels
from rank3hecke import lemmas as L
from rank3hecke.coxeter import CoxeterSystem
from rank3hecke.lemmas import (lemma_status, run_section, suite_hecke_lemmas,
                               suite_length_lemmas, suite_word_lemmas)

from systems import A3, C2, C3, C4, C5

C5_M7 = CoxeterSystem(7, 3, 2, (1, 1, 1))


def ids(rep):
    return [c.id for c in rep.clauses]


# --- positive runs on modest balls


def test_case3_word():
    rep = suite_word_lemmas(C3, 8)
    assert rep.status == "PASS" and len(rep.clauses) == 6
    assert all(c.checked > 0 for c in rep.clauses)


def test_case4_word():
    rep = suite_word_lemmas(C4, 8)
    assert rep.status == "PASS" and len(rep.clauses) == 9
    assert "L5.1(7)" in ids(rep)


def test_case5_word():
    rep = suite_word_lemmas(C5, 8)
    assert rep.status == "PASS" and len(rep.clauses) == 5


@pytest.mark.parametrize("S", [C3, C4, C5], ids=["c3", "c4", "c5"])
def test_length_lemmas(S):
    rep = suite_length_lemmas(S, 6)
    assert rep.status == "PASS"
    assert sum(c.checked for c in rep.clauses) > 0


@pytest.mark.parametrize("S", [C4, C5], ids=["c4", "c5"])
def test_hecke_lemmas(S):
    rep = suite_hecke_lemmas(S, 5)
    assert rep.status == "PASS"
    assert rep.counterexamples == []


def test_hecke_backends_agree():
    if len(_kernels.available_backends()) < 2:
        pytest.skip("numba not installed")
    a = suite_hecke_lemmas(C4, 5, backend="numba").to_json()
    b = suite_hecke_lemmas(C4, 5, backend="numpy").to_json()
    assert a == b


def test_relabeled_system_runs_case3_suite():
    # m_rt = inf, m_st = 4, m_sr = 2 is the section-4 shape after swapping r and s
    S = CoxeterSystem(2, 4, 0, (3, 1, 2))
    rep = suite_word_lemmas(S, 6)
    assert rep.status == "PASS"
    assert rep.universe["relabeling"] != {"r": "r", "s": "s", "t": "t"}


# --- applicability


@pytest.mark.parametrize("S,section", [(C2, "4"), (C3, "5"), (C4, "6"), (A3, "5"), (C5_M7, "6")])
def test_not_applicable(S, section):
    for rep in run_section(S, section, 4, 3):
        assert rep.status == "NOT_APPLICABLE"
        assert rep.note
        assert rep.clauses == []


def test_no_suites_for_case2():
    reps = run_section(C2)
    assert len(reps) == 1 and reps[0].status == "NOT_APPLICABLE"


# --- negative controls: the checks must be able to fail


def test_wrong_case_word_clauses_fail():
    ctx = L._Ctx(C4, 6)
    clauses = L._word_clauses(ctx, L.WORD_4_1)
    assert any(c.count for c in clauses)
    cex = next(c for c in clauses if c.count).counterexamples[0]
    assert set(cex) == {"w", "R", "L"}


class _Tight(L._Shifted):
    def run(self, cl, pairs, shift, exact=None):
        return super().run(cl, pairs, None if shift is None else shift - 1, exact)


def test_tightened_shift_fails_case4(monkeypatch):
    monkeypatch.setattr(L, "_Shifted", _Tight)
    clauses = L._hecke_5(L._Ctx(C4, 5), None)
    failing = {c.id for c in clauses if c.count}
    assert {"L5.3", "L5.4"} <= failing


def test_tightened_shift_fails_case5(monkeypatch):
    monkeypatch.setattr(L, "_Shifted", _Tight)
    clauses = L._hecke_6(L._Ctx(C5, 7), None)
    failing = {c.id for c in clauses if c.count}
    assert {"L6.3(2)", "L6.5"} <= failing


def test_exact_clause_detects_wrong_target():
    ctx = L._Ctx(C5, 4)
    cl = L.ClauseResult("probe", "")
    e, s = ctx.el(""), ctx.el("s")
    L._Shifted(ctx).run(cl, [(e, e, s, s)], None, exact=lambda x, y: s)  # T_s T_s is not T_s
    assert cl.count == 1


# --- report plumbing


def test_status_and_json():
    reps = run_section(C4, None, 6, 4)
    st = lemma_status(reps)
    assert set(st) == {"L5.1", "L5.2", "L5.3", "L5.4", "L5.5", "L5.6"}
    assert all(st.values())
    js = reps[0].to_json()
    assert "elapsed_s" not in js and "elapsed_s" in reps[0].to_json(timing=True)
    for r in reps:
        assert r.passed == (r.counterexamples == [])


def test_counterexample_cap():
    cl = L.ClauseResult("x", "")
    for i in range(L.CEX_LIMIT + 5):
        cl.fail(i=i)
    assert cl.count == L.CEX_LIMIT + 5 and len(cl.counterexamples) == L.CEX_LIMIT
