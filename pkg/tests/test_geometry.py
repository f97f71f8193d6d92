from fractions import Fraction
from itertools import combinations

import pytest

from hellysat.collapse import Status, find_collapse_sequence
from hellysat.complex_core import VertexPartition, build_complex, faces_of_size
from hellysat.errors import CapExceeded, ParameterRange, RejectionBudgetExceeded
from hellysat.geometry import Box, equality_constructions, gen_family, intersects, nerve


def brute_nerve(family):
    """All 2^n subfamilies, with the common point found per axis independently."""
    n = len(family)
    faces = []
    for s in range(n + 1):
        for sub in combinations(range(n), s):
            ok = True
            for a in range(family[0].k if family else 0):
                lo = max((family[i].intervals[a][0] for i in sub), default=None)
                hi = min((family[i].intervals[a][1] for i in sub), default=None)
                if sub and lo > hi:
                    ok = False
            if ok:
                faces.append(sub)
    return build_complex(n, faces)


def test_nerve_of_path_intervals():
    K = nerve([Box.of((i, i + 1)) for i in range(4)])
    assert K.maximal_faces == ((0, 1), (1, 2), (2, 3))


def test_nerve_of_three_boxes():
    fam = [Box.of((0, 2), (0, 2)), Box.of((1, 3), (0, 2)), Box.of((0, 2), (1, 3))]
    assert nerve(fam).maximal_faces == ((0, 1, 2),)


def test_nerve_of_disjoint_intervals():
    assert nerve([Box.of((0, 1)), Box.of((2, 3))]).maximal_faces == ((0,), (1,))


def test_nerve_cap():
    fam = [Box.of((0, 2)), Box.of((1, 3)), Box.of((Fraction(3, 2), 4))]
    assert nerve(fam, 3).dim == 2
    with pytest.raises(CapExceeded):
        nerve(fam, 2)


def test_tangency_counts():
    assert intersects([Box.of((0, 1)), Box.of((1, 2))])
    assert not intersects([Box.of((0, 1)), Box.of((Fraction(257, 256), 2))])


@pytest.mark.parametrize("kind,k", [("intervals", 1), ("boxes", 2), ("boxes", 3)])
@pytest.mark.parametrize("seed", range(15))
def test_nerve_matches_brute_force(kind, k, seed):
    fam = gen_family(kind, k, 1 + seed % 8, seed)
    assert nerve(fam) == brute_nerve(fam)


@pytest.mark.parametrize("seed", range(30))
def test_box_helly_number_two(seed):
    fam = gen_family("boxes", 2, 5, seed, max_length=4)
    if all(intersects([a, b]) for a, b in combinations(fam, 2)):
        assert intersects(fam)


def test_gen_is_deterministic():
    a = gen_family("intervals", n=4, seed=1)
    assert a == gen_family("intervals", n=4, seed=1)
    assert len(a) == 4 and all(b.k == 1 for b in a)
    assert all((b.intervals[0][0] * 256).denominator == 1 for b in a)
    assert a != gen_family("intervals", n=4, seed=2)


def test_gen_max_overlap():
    for seed in range(10):
        fam = gen_family("intervals", n=6, seed=seed, max_overlap=2)
        assert nerve(fam).dim <= 1


def test_gen_rejection_budget():
    with pytest.raises(RejectionBudgetExceeded):
        gen_family("intervals", n=6, seed=0, max_overlap=1, extent=0, attempts=5)


@pytest.mark.parametrize("seed", range(10))
def test_generated_boxes_are_2_collapsible(seed):
    fam = gen_family("boxes", 2, 6, seed)
    assert find_collapse_sequence(nerve(fam), 2).status is Status.COLLAPSIBLE


def test_box_json_roundtrip():
    b = Box.of((0, Fraction(1, 2)), (Fraction(3, 4), 1))
    doc = b.to_json()
    assert doc == {"k": 2, "intervals": [["0/1", "1/2"], ["3/4", "1/1"]]}
    assert Box.from_json(doc) == b
    with pytest.raises(ParameterRange):
        Box.of((1, 0))


def test_equality_constructions():
    H = equality_constructions(4, 1, 1)
    assert H.edges == {(1, 2), (1, 3), (2, 3)}
    P = VertexPartition.from_parts([[0, 1], [2, 3]])
    H = equality_constructions(P, r=(1, 1))
    assert H.edges == {(1, 3)}
    assert len(equality_constructions(5, 2, 0)) == 10
    assert len(equality_constructions(P, r=(0, 0))) == 4
    with pytest.raises(ParameterRange):
        equality_constructions(4, 1, 4)
