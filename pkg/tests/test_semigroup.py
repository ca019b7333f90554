import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from clusterword import _pykernels, kernels
from clusterword.corpus import fixture, fixtures, free_band2, u2
from clusterword.semigroup import (AssociativityError, SemigroupError, adjoin_identity,
                                   ambiguity_witness, equidivisibility_witness, from_table,
                                   from_transformations, has_transition, is_aperiodic,
                                   is_equidivisible, is_stable, is_unambiguous, omega_power, to_table)


def test_u2_from_file_text():
    S = from_table("# U2\n2\n1 2\n2 2\n")
    assert S.size == 2
    assert S.table.tolist() == [[0, 1], [1, 1]]
    assert is_aperiodic(S)


def test_c2_not_aperiodic():
    C2 = from_table("2\n2 1\n1 2\n")
    assert not is_aperiodic(C2)
    assert omega_power(C2, 0) == 1 and omega_power(C2, 1) == 1


def test_semilattice_table_is_associative():
    # [[1,1],[1,2]] is the two-element semilattice {min}
    S = from_table("2\n1 1\n1 2\n")
    assert S.size == 2


def test_associativity_witness_reported():
    with pytest.raises(AssociativityError) as e:
        from_table("2\n2 1\n2 2\n")
    x, y, z = e.value.witness
    T = np.array([[1, 0], [1, 1]])
    assert T[T[x, y], z] != T[x, T[y, z]]


@pytest.mark.parametrize("text", ["", "2\n1 2\n", "2\n1 2\n3 1\n", "2\n1 x\n2 2\n", "2\n1 2\n2 2\ngens a=5\n"])
def test_parse_errors(text):
    with pytest.raises(SemigroupError):
        from_table(text)


def test_gens_line_and_roundtrip():
    S = from_table("2\n1 2\n2 2\ngens a=2 b=1\n")
    assert S.generators == {"a": 1, "b": 0}
    assert from_table(to_table(S)).table.tolist() == S.table.tolist()


def test_from_transformations_examples():
    RZ = from_transformations([(1, 1), (2, 2)])
    assert RZ.size == 2 and RZ.table.tolist() == [[0, 1], [0, 1]]
    assert from_transformations([(1, 2)]).size == 1
    C2 = from_transformations([(2, 1)])
    assert C2.size == 2 and not is_aperiodic(C2)
    with pytest.raises(ValueError):
        from_transformations([])


def test_adjoin_identity_sizes():
    assert adjoin_identity(u2()).size == 3
    assert adjoin_identity(from_transformations([(1, 2)])).size == 2
    B = adjoin_identity(free_band2())
    assert B.size == 7
    one = 6
    assert all(B.mul(one, x) == x == B.mul(x, one) for x in range(7))


def test_omega_power_of_index_two_element():
    S = from_transformations([(2, 3, 3)])
    s = 0
    s2 = S.mul(s, s)
    assert S.mul(s2, s) == s2 != s
    assert omega_power(S, s) == s2


def test_free_band_predicates():
    B = free_band2()
    assert is_unambiguous(B)
    assert not is_equidivisible(B)
    a, b, ab = 0, 1, 2
    assert B.mul(a, b) == B.mul(ab, ab)
    assert not has_transition(B, a, b, ab, ab)
    x, y, u, v = equidivisibility_witness(B)
    assert B.mul(x, y) == B.mul(u, v) and not has_transition(B, x, y, u, v)


# frozen brute-force values: (unambiguous, equidivisible, #idempotents of S^I, #J-classes of S^I)
FIXTURE_TABLE = {
    "U2": (True, True, 3, 3), "B2": (True, False, 7, 4), "LRB2": (False, False, 5, 4),
    "RRB2": (False, False, 5, 4), "RECT2": (True, True, 5, 2), "SL2": (False, False, 4, 4),
    "LZ2": (True, True, 3, 2), "RZ2": (True, True, 3, 2), "SYN_A*abA*": (False, False, 4, 5),
    "SYN_(ab)+": (False, False, 4, 3), "SYN_a*b*": (False, False, 4, 5),
    "SYN_A*ab": (True, False, 4, 3), "SYN_b*ab*": (True, False, 3, 4),
    "SYN_A*aA*aA*aA*": (True, False, 3, 5),
}


@pytest.mark.parametrize("name", sorted(FIXTURE_TABLE))
def test_fixture_oracles(name):
    S = fixture(name)
    G = S.green
    assert (is_unambiguous(S), is_equidivisible(S), len(G.idempotents), len(G.classesJ)) == FIXTURE_TABLE[name]
    assert is_aperiodic(S) and is_stable(S)


def test_groups_are_equidivisible():
    C3 = from_transformations([(2, 3, 1)])
    assert is_equidivisible(C3)
    assert is_equidivisible(from_table("2\n2 1\n1 2\n"))


def _naive_leq(S):
    m = S.size + 1
    R = np.zeros((m, m), bool)
    L = np.zeros((m, m), bool)
    J = np.zeros((m, m), bool)
    for s in range(m):
        for t in range(m):
            R[s, t] = any(S.mul(t, x) == s for x in range(m))
            L[s, t] = any(S.mul(x, t) == s for x in range(m))
            J[s, t] = any(S.mul(S.mul(x, t), y) == s for x in range(m) for y in range(m))
    return R, L, J


def test_green_matches_naive_definitions(small_corpus):
    for m in small_corpus:
        S = m.S
        R, L, J = _naive_leq(S)
        G = S.green
        assert (G.leqR == R).all() and (G.leqL == L).all() and (G.leqJ == J).all()
        assert is_stable(S)


def test_equidivisible_implies_unambiguous(small_corpus):
    for m in small_corpus:
        if is_equidivisible(m.S):
            assert is_unambiguous(m.S)


# at most 4 points and 2 maps keeps semigroups small enough for the dense fallback
tables = st.integers(1, 4).flatmap(
    lambda k: st.lists(st.lists(st.integers(1, k), min_size=k, max_size=k).map(tuple), min_size=1, max_size=2))


@given(tables)
def test_kernels_agree_with_fallback(maps):
    S = from_transformations(maps)
    assume(S.size <= 60)
    T = S.ext
    n = S.size
    for name in ("leq_right", "leq_left", "leq_two_sided"):
        assert (getattr(kernels, name)(T) == getattr(_pykernels, name)(T)).all()
    assert kernels.associativity_witness(T) == _pykernels.associativity_witness(T) is None
    leq = kernels.leq_right(T)
    assert kernels.ambiguity_witness(leq, n + 1) == _pykernels.ambiguity_witness(leq, n + 1)
    assert kernels.equidivisibility_witness(T, n) == _pykernels.equidivisibility_witness(T, n)
    for s in range(n):
        v1, e1 = kernels.factorization_edges(T, s)
        v2, e2 = _pykernels.factorization_edges(T, s)
        assert np.array_equal(v1, v2) and np.array_equal(e1, e2)


@given(tables)
def test_ambiguity_witness_is_genuine(maps):
    S = from_transformations(maps)
    w = ambiguity_witness(S)
    if w is not None:
        side, x, y, z = w
        G = S.green
        leq = G.leqR if side == "R" else G.leqL
        assert leq[x, y] and leq[x, z] and not leq[y, z] and not leq[z, y]


def test_every_fixture_generated():
    for S in fixtures():
        assert S.closure(S.generators.values()) == set(range(S.size))
