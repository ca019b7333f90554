import dataclasses

import pytest
from hypothesis import given, strategies as st

from clusterword.cluster import build, minimum
from clusterword.corpus import fixture, u2, worthy_pairs
from clusterword.factorization import HypothesisError
from clusterword.omegaterm import evaluate, parse, sample_terms
from clusterword.recognition import (SearchCapExceeded, canonical_recognizer, check_worthy, fg_all,
                                     recognized_set, recognizer_failures, report_line, search_recognizer,
                                     stabilization_index, verify_recognition)
from clusterword.semigroup import from_table, from_transformations

E, Z = 0, 1   # U2: idempotent e, zero z
TERMS = sample_terms(5, 40, max_depth=2)


def test_stabilization_index():
    assert stabilization_index(u2(), E) == 1
    S = from_transformations([(2, 3, 3)])
    assert stabilization_index(S, 0) == 2


@pytest.mark.parametrize("src,phi,s", [
    ("(a)^w", {"a": E}, E),
    ("(a)^w", {"a": Z}, Z),
    ("a(b)^w", {"a": E, "b": Z}, Z),
    ("ab", {"a": E, "b": E}, E),
])
def test_u2_recognition(src, phi, s):
    ce = build(parse(src))
    S = u2()
    assert recognized_set(ce, S, phi) == [s]
    for x in range(S.size):
        assert verify_recognition(ce, S, phi, x) == (x == s)
    assert search_recognizer(ce, S, phi, s).found
    other = 1 - s
    assert not search_recognizer(ce, S, phi, other).found


def test_wrong_target_fails_r1_r2():
    ce = build(parse("(a)^w"))
    rec = canonical_recognizer(ce, u2(), {"a": Z})
    assert recognizer_failures(rec, rec.s) == []
    kinds = {k for k, _ in recognizer_failures(rec, E)}
    assert {"R.1", "R.2"} <= kinds


def test_values_and_cofinal_sets():
    S = u2()
    ce = build(parse("((a)^w b)^w"))
    rec = canonical_recognizer(ce, S, {"a": E, "b": Z})
    assert rec.value(minimum(ce)) == (S.one, Z)
    assert all(c.balanced for c in fg_all(rec))
    # outer block plus the inner one in fwd[0], fwd tail, bwd[0], bwd tail
    assert len(fg_all(rec)) == 5


def test_hypothesis_errors():
    ce = build(parse("(a)^w"))
    with pytest.raises(HypothesisError):
        verify_recognition(ce, fixture("LRB2"), {"a": 0}, 0)
    C2 = from_table("2\n2 1\n1 2\n")
    with pytest.raises(HypothesisError):
        verify_recognition(ce, C2, {"a": 0}, 0)


def test_search_cap():
    ce = build(parse("((a)^w b)^w"))
    S = fixture("B2")
    with pytest.raises(SearchCapExceeded):
        search_recognizer(ce, S, dict(S.generators), 0, cap=3)


def test_report_line():
    ce = build(parse("(a)^w"))
    assert report_line(ce, u2(), {"a": E}) == "(a)^w | U2 | e | {e} | RECOGNIZED"


@given(t=st.sampled_from(TERMS))
def test_agreement(t, pairs):
    ce = build(t)
    for S, phi in pairs:
        v = evaluate(t, S, phi)
        assert recognized_set(ce, S, phi) == [v]
        rec = canonical_recognizer(ce, S, phi)
        assert recognizer_failures(rec, v) == []


@given(t=st.sampled_from(TERMS))
def test_search_matches_checker(t, pairs):
    ce = build(t)
    for S, phi in pairs:
        if S.size > 6:
            continue
        found = [s for s in range(S.size) if search_recognizer(ce, S, phi, s).found]
        assert found == recognized_set(ce, S, phi)


@pytest.fixture(scope="module")
def wpairs(small_corpus):
    return worthy_pairs(small_corpus[:14])


@pytest.mark.parametrize("src", ["ab", "(a)^w", "a(b)^w"])
def test_worthy_pass(src, wpairs):
    rep = check_worthy(build(parse(src)), wpairs)
    assert rep.verdict == "PASS-at-scale", rep.text()
    assert rep.text().splitlines()[-1] == "overall | PASS-at-scale"


def test_worthy_refutes_bad_representative():
    ce = build(parse("(a)^w"))
    bad = dataclasses.replace(ce, jrep=parse("(b)^w"), term=parse("(a)^w"))
    rep = check_worthy(bad, [(u2(), {"a": E, "b": Z})], search_size=0)
    assert rep.verdict == "REFUTED"
    assert "J:" in rep.witness
