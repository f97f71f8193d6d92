from functools import lru_cache
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hellysat.collapse import (
    CollapseStep,
    Status,
    apply_step,
    find_collapse_sequence,
    replay,
    sequence_from_json,
    sequence_to_json,
    verify_collapse_sequence,
)
from hellysat.complex_core import build_complex, full_simplex
from hellysat.errors import SigmaNotAFace, SizeMismatch, TauNotUniqueMaximal
from hellysat.geometry import gen_family, nerve

from .test_complex_core import complexes

SIMPLEX_SEQ = [CollapseStep((0,), (0, 1, 2, 3)), CollapseStep((1,), (1, 2, 3)),
               CollapseStep((2,), (2, 3)), CollapseStep((3,), (3,))]


def naive_collapsible(K, d):
    """Definition-level oracle on explicit face sets, no shared code."""
    start = frozenset(K.faces)

    @lru_cache(maxsize=None)
    def go(faces):
        if all(len(f) < d for f in faces):
            return True
        maximal = [f for f in faces if not any(set(f) < set(g) for g in faces)]
        for sigma in (f for f in faces if len(f) == d):
            over = [t for t in maximal if set(sigma) <= set(t)]
            if len(over) == 1:
                tau = set(over[0])
                rest = frozenset(f for f in faces if not (set(sigma) <= set(f) <= tau))
                if go(rest):
                    return True
        return False

    return go(start)


def test_apply_step_deletes_star():
    K = apply_step(full_simplex(3), CollapseStep((0,), (0, 1, 2)), 1)
    assert K.maximal_faces == ((1, 2),)


def test_apply_step_path(path4):
    K = apply_step(path4, CollapseStep((0,), (0, 1)), 1)
    expected = {f for f in path4.faces if not {0} <= set(f) <= {0, 1}}
    assert set(K.faces) == expected
    assert K.maximal_faces == ((1, 2), (2, 3))


def test_apply_step_errors(c3, path4):
    with pytest.raises(TauNotUniqueMaximal):
        apply_step(c3, CollapseStep((0,), (0, 1)), 1)
    with pytest.raises(SizeMismatch):
        apply_step(path4, CollapseStep((0, 1), (0, 1)), 1)
    with pytest.raises(SigmaNotAFace):
        apply_step(path4, CollapseStep((0, 2), (0, 2)), 2)


def test_simplex_collapses_vertex_by_vertex():
    out = find_collapse_sequence(full_simplex(4), 1)
    assert out.status is Status.COLLAPSIBLE
    assert list(out.sequence) == SIMPLEX_SEQ


def test_c3_not_collapsible(c3):
    assert find_collapse_sequence(c3, 1, "exhaustive").status is Status.NOT_COLLAPSIBLE
    assert find_collapse_sequence(c3, 1, "greedy").status is Status.UNKNOWN


def test_sphere_not_2_collapsible():
    sphere = build_complex(4, list(combinations(range(4), 3)))
    assert find_collapse_sequence(sphere, 2).status is Status.NOT_COLLAPSIBLE
    assert find_collapse_sequence(sphere, 3).status is Status.COLLAPSIBLE


def test_interval_nerve_sequence(path4):
    out = find_collapse_sequence(path4, 1)
    assert list(out.sequence) == [CollapseStep((0,), (0, 1)), CollapseStep((1,), (1, 2)),
                                  CollapseStep((2,), (2, 3)), CollapseStep((3,), (3,))]
    final = list(replay(path4, out.sequence, 1))[-1]
    assert final.faces == {()}


def test_verify_examples(c3):
    K = full_simplex(4)
    assert verify_collapse_sequence(K, 1, SIMPLEX_SEQ).ok
    swapped = [SIMPLEX_SEQ[1], SIMPLEX_SEQ[0]] + SIMPLEX_SEQ[2:]
    res = verify_collapse_sequence(K, 1, swapped)
    assert not res.ok and res.index == 0 and "tau-not-unique-maximal" in res.reason
    res = verify_collapse_sequence(c3, 1, [])
    assert not res.ok and res.index == 0


def test_budget_gives_unknown():
    out = find_collapse_sequence(full_simplex(5), 1, budget=2)
    assert out.status is Status.UNKNOWN
    assert find_collapse_sequence(full_simplex(5), 1, "greedy", budget=2).status is Status.UNKNOWN


def test_already_finished():
    K = build_complex(3, [[0], [1]])
    out = find_collapse_sequence(K, 2)
    assert out.status is Status.COLLAPSIBLE and out.sequence == ()


def test_sequence_json_roundtrip():
    assert sequence_from_json(sequence_to_json(SIMPLEX_SEQ)) == SIMPLEX_SEQ


@settings(max_examples=120, deadline=None)
@given(complexes(max_n=6), st.integers(1, 3))
def test_exhaustive_matches_oracle(K, d):
    out = find_collapse_sequence(K, d)
    assert out.status is not Status.UNKNOWN
    assert out.collapsible == naive_collapsible(K, d)
    g = find_collapse_sequence(K, d, "greedy")
    assert g.status is not Status.NOT_COLLAPSIBLE
    if g.collapsible:
        assert out.collapsible


@settings(max_examples=120, deadline=None)
@given(complexes(max_n=6), st.integers(1, 3))
def test_replay_soundness_and_monotonicity(K, d):
    out = find_collapse_sequence(K, d)
    if not out.collapsible:
        return
    assert verify_collapse_sequence(K, d, out.sequence).ok
    prev = K
    small = {f for f in K.faces if len(f) < d}
    for cur in replay(K, out.sequence, d):
        assert len(cur.faces) < len(prev.faces)
        assert small <= cur.faces
        prev = cur
    assert set(prev.faces) == small


@pytest.mark.parametrize("k", [1, 2])
@pytest.mark.parametrize("seed", range(25))
def test_wegner_boxes(k, seed):
    fam = gen_family("boxes", k, 2 + seed % 5, seed)
    out = find_collapse_sequence(nerve(fam), k, "exhaustive")
    assert out.status is Status.COLLAPSIBLE
