import random

import pytest
from hypothesis import given, settings, strategies as st

from symdelta.collapse import (
    Attach,
    Collapse,
    GroupFingerprint,
    certify_contractible_by_collapse,
    collapse_by_dmf,
    collapse_by_matching,
    morse_inequalities_hold,
    prefix_complexes,
)
from symdelta.complex import validate_complex
from symdelta.errors import InvalidDMFError
from symdelta.fixtures import DMF_VALID, DMF_TWO_FACES, half_triangle
from symdelta.homology import betti
from symdelta.matching import Matching, search_matching
from symdelta.morse import DiscreteMorseFunction

from _support import fixture_complexes, random_dmf

FIXTURES = fixture_complexes()
X = half_triangle()


def test_half_triangle_trace():
    f = DiscreteMorseFunction.from_simplices(X, DMF_VALID)
    trace, model = collapse_by_dmf(X, f, check_levels=True)
    assert [str(e) for e in trace] == ["0: Attach([v], 0, |G|=1)", "1: Collapse([w], [a0])", "2: Collapse([c], [T0])"]
    assert certify_contractible_by_collapse(trace)
    assert [(c.dim, str(c.orbit)) for c in model.cells] == [(0, "[v]")]


def test_invalid_function_rejected():
    with pytest.raises(InvalidDMFError):
        collapse_by_dmf(X, DiscreteMorseFunction.from_simplices(X, DMF_TWO_FACES))


def test_empty_matching_attaches_everything():
    trace, model = collapse_by_matching(X, Matching())
    assert all(isinstance(e, Attach) for e in trace)
    assert len(model.cells) == 5
    assert not certify_contractible_by_collapse(trace)
    groups = {str(c.orbit): c.group for c in model.cells}
    assert groups["[T0]"] == GroupFingerprint(2, True, (1, 2), True)
    assert groups["[c]"].has_odd and not groups["[a0]"].has_odd


def test_circle_model():
    Y = FIXTURES["circle"]
    trace, model = collapse_by_matching(Y, search_matching(Y, 3))
    assert (model.count(0), model.count(1)) == (1, 1)
    assert not certify_contractible_by_collapse(trace)


def test_fingerprint():
    g = GroupFingerprint.of([(0, 1, 2), (1, 2, 0), (2, 0, 1)])
    assert g == GroupFingerprint(3, True, (1, 3, 3), False)
    s3 = GroupFingerprint.of([(0, 1, 2), (1, 0, 2), (0, 2, 1), (2, 1, 0), (1, 2, 0), (2, 0, 1)])
    assert s3.order == 6 and not s3.abelian and s3.has_odd


def _check_trace(Y, trace, model):
    # every orbit appears exactly once, collapses are covers
    seen = []
    for e in trace:
        if isinstance(e, Collapse):
            assert e.lower in Y.lower_covers(e.upper)
            seen += [e.lower, e.upper]
        else:
            seen.append(e.orbit)
    assert sorted(seen) == Y.orbits()
    b = betti(Y)
    assert morse_inequalities_hold(b, model)
    # Euler characteristic of the model counts only cells without odd symmetry
    chi = sum((-1) ** p * model.count(p, without_odd=True) for p in range(Y.max_dim + 1))
    assert chi == sum((-1) ** p * n for p, n in enumerate(b))
    prefixes = prefix_complexes(Y, trace)
    assert prefixes[-1] == Y
    for e, K in zip(trace, prefixes):
        assert validate_complex(K).ok
        if isinstance(e, Collapse) and e.step:
            # an elementary collapse does not change homology
            assert _same_betti(prefixes[e.step - 1], K)


def _same_betti(A, B):
    a, b = betti(A), betti(B)
    n = max(len(a), len(b))
    return a + [0] * (n - len(a)) == b + [0] * (n - len(b))


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_collapse_all_fixtures(name):
    Y = FIXTURES[name]
    for seed in range(3):
        trace, model = collapse_by_matching(Y, search_matching(Y, seed))
        _check_trace(Y, trace, model)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32))
def test_random_functions(seed):
    rng = random.Random(seed)
    Y = FIXTURES[rng.choice(sorted(FIXTURES))]
    trace, model = collapse_by_dmf(Y, random_dmf(Y, rng), check_levels=True)
    _check_trace(Y, trace, model)
