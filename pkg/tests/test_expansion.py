import pytest
from hypothesis import given, strategies as st

from clusterword.corpus import fixture, fixtures
from clusterword.expansion import CoverCapExceeded, is_homomorphism, rhodes_expansion, unambiguous_cover
from clusterword.semigroup import (SemigroupError, ambiguity_witness, from_table, from_transformations,
                                   is_aperiodic, is_unambiguous)


def _check_cover(S, C, proj):
    assert is_homomorphism(C, S, proj)
    assert set(proj) == set(range(S.size))
    for a, g in C.generators.items():
        assert proj[g] == S.generators[a]
    assert is_unambiguous(C)


@pytest.mark.parametrize("S", fixtures(), ids=lambda S: S.name)
def test_fixture_covers(S):
    C, proj, rounds = unambiguous_cover(S)
    _check_cover(S, C, proj)
    if is_unambiguous(S):
        assert rounds == 0 and C is S
    else:
        assert rounds >= 1


@pytest.mark.parametrize("name,side,fix", [("LRB2", "L", "right"), ("RRB2", "R", "left")])
def test_regular_bands_one_side(name, side, fix):
    S = fixture(name)
    assert ambiguity_witness(S)[0] == side
    E, proj = rhodes_expansion(S, fix)
    assert is_homomorphism(E, S, proj)
    w = ambiguity_witness(E)
    assert w is None or w[0] != side


def test_expansion_sides():
    S = fixture("SL2")
    for side in ("left", "right"):
        E, proj = rhodes_expansion(S, side)
        assert is_homomorphism(E, S, proj)
        assert E.size >= S.size
    with pytest.raises(ValueError):
        rhodes_expansion(S, "up")
    with pytest.raises(SemigroupError):
        rhodes_expansion(from_table("2\n1 2\n2 2\n"), "left")


def test_cap_reported():
    S = fixture("LRB2")
    with pytest.raises(CoverCapExceeded) as e:
        unambiguous_cover(S, cap=0)
    assert e.value.rounds == 0


def test_corpus_covers(small_corpus):
    for m in small_corpus:
        assert m.cap_report is None
        _check_cover(m.S, m.cover, m.projection)
        assert is_aperiodic(m.cover)


maps2 = st.integers(2, 4).flatmap(
    lambda k: st.lists(st.lists(st.integers(1, k), min_size=k, max_size=k).map(tuple), min_size=2, max_size=2))


@given(maps2)
def test_random_covers(maps):
    S = from_transformations(maps)
    if not is_aperiodic(S):
        return
    try:
        C, proj, _ = unambiguous_cover(S)
    except CoverCapExceeded:
        return
    _check_cover(S, C, proj)


@pytest.mark.parametrize("name,w1,w2", [("LRB2", "ab", "aba"), ("RRB2", "ab", "bab"), ("SL2", "ab", "ba")])
def test_cover_separates_curated_pair(name, w1, w2):
    from clusterword.omegaterm import evaluate, parse
    S = fixture(name)
    C, proj, _ = unambiguous_cover(S)
    t1, t2 = parse(w1), parse(w2)
    assert evaluate(t1, S, S.generators) == evaluate(t2, S, S.generators)
    assert evaluate(t1, C, C.generators) != evaluate(t2, C, C.generators)
