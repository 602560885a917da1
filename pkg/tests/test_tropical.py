from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from symdelta.complex import validate_complex
from symdelta.errors import PreconditionError
from symdelta.matching import validate_matching
from symdelta.permissibility import oracle_for
from symdelta.tropical import (
    Matroid,
    certify_coloop,
    coloop_matching,
    coloops,
    cone_rank_check,
    connected_graphs,
    deflate,
    delete,
    direct_sum,
    enumerate_coloop_complex,
    in_coloop_locus,
    incidence_matrix,
    inflate,
    is_simple,
    is_simple_representation,
    is_totally_unimodular,
    labeled_id,
    matroid_automorphisms,
    matroid_from_matrix,
    matroid_isomorphic,
    rank,
    uniform_free,
)

TRIANGLE = incidence_matrix(((0, 1), (0, 2), (1, 2)), 3, 2)
K4 = incidence_matrix(((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)), 4, 3)


def graphic(edges, n, g=None):
    return matroid_from_matrix(incidence_matrix(edges, n, g or n - 1))


def test_tu_examples():
    assert is_totally_unimodular(TRIANGLE)
    assert not is_totally_unimodular([[1, 1], [1, -1]])
    assert is_totally_unimodular([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert is_totally_unimodular(K4)
    assert not is_totally_unimodular([[2]])


def test_simple_representation():
    assert is_simple_representation(TRIANGLE)
    assert not is_simple_representation([[1, -1], [0, 0]])
    assert not is_simple_representation([[1, 0], [0, 0]])


def test_matroid_from_matrix():
    assert matroid_from_matrix(TRIANGLE).circuits == {frozenset({0, 1, 2})}
    assert matroid_from_matrix([[1, 0], [0, 1]]).circuits == frozenset()
    with pytest.raises(PreconditionError):
        matroid_from_matrix([[1, 1], [1, -1]])


def test_appending_a_last_unit_vector_keeps_circuits():
    A = incidence_matrix(((0, 1), (0, 2), (1, 2)), 3, 3)
    B = [list(row) + [1 if i == 2 else 0] for i, row in enumerate(A)]
    M, N = matroid_from_matrix(A), matroid_from_matrix(B)
    assert N.circuits == M.circuits
    assert coloops(N) == {3}


def test_rank_coloops_simple():
    tri = matroid_from_matrix(TRIANGLE)
    assert (rank(tri), coloops(tri), is_simple(tri)) == (2, frozenset(), True)
    u11 = uniform_free(1)
    assert (rank(u11), coloops(u11)) == (1, {0})
    path = graphic(((0, 1), (1, 2)), 3)
    assert (rank(path), coloops(path)) == (2, {0, 1})
    assert not is_simple(Matroid.make(range(2), [{0, 1}]))


def test_rank_agrees_with_matrix_rank():
    from symdelta import linalg

    for n in range(2, 5):
        for edges in connected_graphs(n):
            A = incidence_matrix(edges, n, n - 1)
            assert rank(matroid_from_matrix(A)) == linalg.rank(A) == n - 1


def test_delete_and_direct_sum():
    K = matroid_from_matrix(K4)
    D = delete(K, 5)
    assert all(5 not in c for c in D.circuits) and len(D) == 5
    with pytest.raises(KeyError):
        delete(K, 9)
    S = direct_sum(matroid_from_matrix(TRIANGLE), uniform_free(1))
    assert S.ground == {0, 1, 2, 3} and S.circuits == {frozenset({0, 1, 2})}


def test_axioms_hold_for_every_graph():
    for n in range(2, 5):
        for edges in connected_graphs(n):
            matroid_from_matrix(incidence_matrix(edges, n, n - 1)).check_axioms()


def test_axiom_failures():
    with pytest.raises(ValueError):
        Matroid.make(range(3), [{0}, {0, 1}]).check_axioms()
    with pytest.raises(ValueError):
        Matroid.make(range(4), [{0, 1, 2}, {1, 2, 3}]).check_axioms()


def test_isomorphism():
    p4 = graphic(((0, 1), (1, 2), (2, 3)), 4)
    star = graphic(((0, 1), (0, 2), (0, 3)), 4)
    assert matroid_isomorphic(p4, star) is not None
    tri = matroid_from_matrix(TRIANGLE)
    assert matroid_isomorphic(tri, uniform_free(2)) is None
    assert len(matroid_automorphisms(tri)) == 6
    assert len(matroid_automorphisms(matroid_from_matrix(K4))) == 24
    c4 = graphic(((0, 1), (1, 2), (2, 3), (0, 3)), 4)
    assert matroid_isomorphic(c4, matroid_from_matrix(K4)) is None
    with pytest.raises(ValueError):
        matroid_isomorphic(uniform_free(11), uniform_free(11))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_isomorphism_is_relabelling_invariant(seed):
    import random

    rng = random.Random(seed)
    n = rng.randint(2, 4)
    edges = rng.choice(list(connected_graphs(n)))
    M = matroid_from_matrix(incidence_matrix(edges, n, n - 1))
    lam = list(M.ground)
    rng.shuffle(lam)
    N = Matroid.make(M.ground, ({lam[e] for e in c} for c in M.circuits))
    phi = matroid_isomorphic(M, N)
    assert phi is not None
    assert {frozenset(phi[e] for e in c) for c in M.circuits} == N.circuits
    assert len(matroid_automorphisms(M)) == len(matroid_automorphisms(N))


def test_inflate_deflate():
    tri = matroid_from_matrix(TRIANGLE)
    up = inflate(tri, 3)
    assert rank(up) == 3 and coloops(up) == {3}
    assert deflate(up) == tri
    with pytest.raises(PreconditionError):
        inflate(uniform_free(1), 3)
    with pytest.raises(PreconditionError):
        inflate(tri, 2)
    with pytest.raises(PreconditionError):
        deflate(tri)
    with pytest.raises(PreconditionError):
        deflate(uniform_free(2))


def test_cone_rank_examples():
    assert cone_rank_check(TRIANGLE)
    assert cone_rank_check([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert cone_rank_check([[1], [0]])


def test_cone_rank_on_every_enumerated_matrix():
    for g in (2, 3):
        X, census = enumerate_coloop_complex(g)
        assert census.representations
        for A in census.representations:
            assert is_totally_unimodular(A) and is_simple_representation(A)
            assert cone_rank_check(A)


def test_locus():
    tri = matroid_from_matrix(TRIANGLE)
    assert not in_coloop_locus(tri, 2)
    assert in_coloop_locus(tri, 3)
    assert in_coloop_locus(inflate(tri, 3), 3)
    assert not in_coloop_locus(matroid_from_matrix(K4), 3)


def census_rows(g):
    X, census = enumerate_coloop_complex(g)
    return X, census, sorted((e.dim, e.name, e.rank, e.coloops, e.aut_order) for e in census.entries)


def test_census_g2():
    X, census, rows = census_rows(2)
    assert rows == [(0, "U(1,1)", 1, 1, 1), (1, "U(2,2)", 2, 2, 2)]
    assert validate_complex(X).ok


def test_census_g3():
    X, census, rows = census_rows(3)
    assert rows == [
        (0, "U(1,1)", 1, 1, 1),
        (1, "U(2,2)", 2, 2, 2),
        (2, "M[3]", 2, 0, 6),
        (2, "U(3,3)", 3, 3, 3 * 2),
        (3, "M[3]+U(1,1)", 3, 1, 6),
    ]
    assert validate_complex(X).ok
    names = {e.name for e in census.entries}
    # K4, the 4-cycle and the diamond have rank 3 and no coloop
    assert not names & {"M[3,3,3,3,4,4,4]", "M[4]", "M[3,3,4]"}


def test_simplex_automorphisms_are_matroid_automorphisms():
    for g in (2, 3):
        X, census = enumerate_coloop_complex(g)
        for orb, cls in census.classes.items():
            assert len(X.automorphisms(orb.rep)) == cls.aut_order
            assert len(orb.members) * cls.aut_order == len(list(permutations(range(orb.dim + 1))))


def test_faces_are_deletions():
    X, census = enumerate_coloop_complex(3)
    for x, L in census.labeled.items():
        for m in range(X.dim(x) + 1 if X.dim(x) else 0):
            D = delete(L, m)
            shifted = {frozenset(e - (e > m) for e in c) for c in D.circuits}
            assert X.face(x, m) == labeled_id(len(L) - 1, shifted)


def test_matchings():
    assert len(coloop_matching(2)) == 0
    X, census = enumerate_coloop_complex(3)
    S = coloop_matching(3)
    assert [(census.classes[a].name, census.classes[b].name) for a, b in S] == [("M[3]", "M[3]+U(1,1)")]
    assert validate_matching(X, S).valid
    for lo, up in S:
        cert = oracle_for(X).certificate(lo, up)
        assert cert.permissible
        assert len(X.automorphisms(lo.rep)) == len(X.automorphisms(up.rep))
        assert census.classes[up].coloops == 1


@pytest.mark.parametrize("g", [2, 3])
def test_certificates(g):
    cert = certify_coloop(g)
    assert cert.ok, cert.to_dict()
    assert set(cert.clauses) == {"a", "b", "c", "d"}


def test_certificate_g3_unmatched():
    cert = certify_coloop(3)
    detail = cert.clauses["b"][1]
    assert "U(2,2)" in detail and "U(3,3)" in detail and "M[3]" not in detail


def test_g_out_of_range():
    with pytest.raises(PreconditionError):
        enumerate_coloop_complex(1)
    with pytest.raises(PreconditionError):
        enumerate_coloop_complex(4)
    with pytest.raises(PreconditionError):
        enumerate_coloop_complex(5, True)


def test_g4_behind_flag():
    X, census = enumerate_coloop_complex(4, allow_g4=True)
    assert validate_complex(X).ok
    assert census.counts() == [1, 1, 2, 3, 3, 2, 1]
    assert certify_coloop(4, allow_g4=True).ok
