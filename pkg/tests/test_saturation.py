import random
from itertools import combinations, permutations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hellysat.collapse import find_collapse_sequence
from hellysat.complex_core import VertexPartition, build_complex
from hellysat.errors import HostTooLarge, NotRainbow, NotSubhypergraph, WrongSize
from hellysat.geometry import clique_construction, partite_construction
from hellysat.reduction import reduce_fractional
from hellysat.saturation import (
    Hypergraph,
    SaturationInstance,
    StarPattern,
    WitnessCopy,
    addable,
    closure,
    closure_sequence,
    colorful_patterns,
    verify_saturation_sequence,
    wsat_bruteforce,
)

K4 = Hypergraph.complete(4, 2)
M3 = [StarPattern(2, 3)]


def copy_exists(n, edges, e, fam, partition=None):
    """Enumerate every (core, apex set) star in the vertex set; no shortcuts."""
    present = edges | {e}
    d = len(e) - 1
    for p in fam:
        for core in combinations(range(n), d):
            pool = [u for u in range(n) if u not in core]
            if p.color is not None:
                part = set(partition.parts[p.color])
                if set(core) & part:
                    continue
                pool = [u for u in pool if u in part]
            for apexes in combinations(pool, p.m):
                star = {tuple(sorted(core + (u,))) for u in apexes}
                if e in star and star <= present:
                    return True
    return False


def naive_closure(n, start, fam, host_edges, partition=None):
    cur = set(start)
    grew = True
    while grew:
        grew = False
        for e in sorted(host_edges - cur):
            if copy_exists(n, cur, e, fam, partition):
                cur.add(e)
                grew = True
    return cur


def test_addable_examples():
    tri = K4.with_edges([(0, 1), (0, 2), (1, 2)])
    w = addable(tri, (0, 3), M3)
    assert w == WitnessCopy((0,), (1, 2, 3), 3)
    assert addable(K4.with_edges([(0, 1), (1, 2), (1, 3)]), (0, 2), M3) is None


def test_addable_directed_example():
    P = VertexPartition.from_parts([[0, 1], [2, 3]])
    host = Hypergraph.complete_partite(P)
    fam = colorful_patterns((2, 2), (1, 1))
    w = addable(host.with_edges([(0, 2)]), (1, 2), fam)
    # color 0 here is V_1 in 1-based naming
    assert w == WitnessCopy((2,), (0, 1), 1, 0)


def test_addable_errors():
    with pytest.raises(WrongSize):
        addable(K4.with_edges([]), (0, 1, 2), M3)
    P = VertexPartition.from_parts([[0, 1], [2, 3]])
    host = Hypergraph.complete_partite(P)
    with pytest.raises(NotRainbow):
        addable(host.with_edges([]), (0, 1), colorful_patterns((2, 2), (1, 1)))


def test_closure_examples():
    tri = K4.with_edges([(0, 1), (0, 2), (1, 2)])
    assert closure(tri, M3, K4) == K4
    path = K4.with_edges([(0, 1), (1, 2)])
    assert closure(path, M3, K4).edges == {(0, 1), (1, 2), (1, 3)}
    assert closure(K4.with_edges([]), [StarPattern(2, 2), StarPattern(2, 3)], K4).edges == frozenset()


def test_closure_rejects_foreign_edges():
    with pytest.raises(NotSubhypergraph):
        closure(Hypergraph.complete(5, 2), M3, K4)


def _path_instance():
    K = build_complex(4, [[0, 1], [1, 2], [2, 3]])
    return reduce_fractional(K, 1, 1, find_collapse_sequence(K, 1).sequence)


def test_verify_examples():
    inst = _path_instance()
    assert verify_saturation_sequence(inst).ok
    rev = SaturationInstance(inst.host, inst.start_edges, inst.patterns,
                             inst.order[::-1], inst.witnesses[::-1])
    rep = verify_saturation_sequence(rev)
    assert not rep.ok and rep.index == 0
    short = SaturationInstance(inst.host, inst.start_edges, inst.patterns,
                               inst.order[:-1], inst.witnesses[:-1])
    rep = verify_saturation_sequence(short)
    assert not rep.ok and "permutation" in rep.reason


def test_verify_does_not_search_for_witnesses():
    inst = _path_instance()
    bad = WitnessCopy((1,), (0, 2, 3), 0)  # needs edge 12, not present yet
    ws = (WitnessCopy((0,), (1, 2), 1),) + inst.witnesses[1:]
    rep = verify_saturation_sequence(SaturationInstance(inst.host, inst.start_edges, inst.patterns, inst.order, ws))
    assert not rep.ok and rep.index == 0
    ws = (bad,) + inst.witnesses[1:]
    rep = verify_saturation_sequence(SaturationInstance(inst.host, inst.start_edges, inst.patterns, inst.order, ws))
    assert not rep.ok and rep.index == 0


def test_instance_json_roundtrip():
    inst = _path_instance()
    assert SaturationInstance.from_json(inst.to_json()) == inst


def test_wsat_k4():
    k, start = wsat_bruteforce(K4, M3)
    assert k == 3
    assert start.edges == {(0, 1), (0, 2), (1, 2)}  # lexicographically least 3-set
    assert closure(start, M3, K4) == K4


def test_wsat_k5_uniform3():
    host = Hypergraph.complete(5, 3)
    k, start = wsat_bruteforce(host, [StarPattern(3, 3)])
    assert k == 4  # C(4, 3)


def test_wsat_k33_directed():
    host = Hypergraph.complete_partite(VertexPartition.blocks((3, 3)))
    fam = colorful_patterns((3, 3), (1, 1))
    assert [p.m for p in fam] == [3, 3]
    k, start = wsat_bruteforce(host, fam, directed=True)
    assert k == 4  # (3-1)(3-1)


def test_wsat_parallel_matches_serial():
    host = Hypergraph.complete(5, 2)
    fam = [StarPattern(2, 3)]
    assert wsat_bruteforce(host, fam, jobs=3) == wsat_bruteforce(host, fam)


def test_wsat_cap():
    with pytest.raises(HostTooLarge):
        wsat_bruteforce(Hypergraph.complete(7, 2), M3)


def test_wsat_matches_naive_oracle():
    host = Hypergraph.complete(5, 2)
    for m in (2, 3, 4):
        fam = [StarPattern(2, m)]
        k, _ = wsat_bruteforce(host, fam)
        edges = host.sorted_edges()
        best = next(s for s in range(len(edges) + 1) for sub in combinations(edges, s)
                    if naive_closure(5, set(sub), fam, host.edges) == host.edges)
        assert k == best


def test_equivalence_all_subgraphs_of_k4():
    edges = K4.sorted_edges()
    for s in range(len(edges) + 1):
        for sub in combinations(edges, s):
            H = K4.with_edges(sub)
            saturated = closure(H, M3, K4) == K4
            assert saturated == (naive_closure(4, set(sub), M3, K4.edges) == K4.edges)
            inst = closure_sequence(H, M3, K4)
            assert verify_saturation_sequence(inst).ok == saturated
            if not saturated:
                missing = sorted(K4.edges - H.edges)
                for order in permutations(missing):
                    cur, ok = set(sub), True
                    for e in order:
                        if addable(K4.with_edges(cur), e, M3) is None:
                            ok = False
                            break
                        cur.add(e)
                    assert not ok


HOSTS = [
    (Hypergraph.complete(5, 2), [StarPattern(2, 3)]),
    (Hypergraph.complete(5, 3), [StarPattern(3, 2)]),
    (Hypergraph.complete(6, 3), [StarPattern(3, 3)]),
    (Hypergraph.complete_partite(VertexPartition.blocks((3, 3))), colorful_patterns((3, 3), (1, 2))),
    (Hypergraph.complete_partite(VertexPartition.blocks((2, 2, 2))), colorful_patterns((2, 2, 2), (1, 1, 1))),
]


@st.composite
def host_and_subsets(draw):
    host, fam = draw(st.sampled_from(HOSTS))
    edges = host.sorted_edges()
    a = draw(st.sets(st.sampled_from(edges)))
    b = draw(st.sets(st.sampled_from(edges)))
    return host, fam, a, a | b


@settings(max_examples=150, deadline=None)
@given(host_and_subsets())
def test_closure_monotone_idempotent(args):
    host, fam, small, big = args
    c_small = closure(host.with_edges(small), fam, host)
    c_big = closure(host.with_edges(big), fam, host)
    assert c_small.edges <= c_big.edges
    assert closure(c_small, fam, host) == c_small
    if host.partition is None:
        assert c_small.edges == naive_closure(host.n, small, fam, host.edges)
    else:
        assert c_small.edges == naive_closure(host.n, small, fam, host.edges, host.partition)


def random_order_closure(host, fam, start, rng):
    cur = set(start)
    while True:
        cands = [e for e in host.edges - cur if addable(host.with_edges(cur), e, fam) is not None]
        if not cands:
            return cur
        cur.add(rng.choice(sorted(cands)))


@pytest.mark.parametrize("idx", range(len(HOSTS)))
def test_closure_order_independent(idx):
    host, fam = HOSTS[idx]
    rng = random.Random(idx)
    edges = host.sorted_edges()
    for trial in range(3):
        start = set(rng.sample(edges, rng.randint(0, len(edges) // 2)))
        target = closure(host.with_edges(start), fam, host).edges
        for _ in range(50):
            assert random_order_closure(host, fam, start, rng) == target


@pytest.mark.parametrize("n,d,r", [(n, d, r) for d in (1, 2) for n in range(d + 1, 8) for r in range(0, n - d + 1)])
def test_clique_construction_saturates(n, d, r):
    host = Hypergraph.complete(n, d + 1)
    fam = [StarPattern(d + 1, n - d - r + 1)]
    H = clique_construction(n, d, r)
    assert closure(H, fam, host) == host
    assert verify_saturation_sequence(closure_sequence(H, fam, host)).ok


@pytest.mark.parametrize("sizes", [(2, 2), (3, 2), (3, 3), (4, 2), (2, 2, 2), (3, 2, 2)])
def test_partite_construction_saturates(sizes):
    P = VertexPartition.blocks(sizes)
    host = Hypergraph.complete_partite(P)
    for r_vec in product(*(range(s + 1) for s in sizes)):
        fam = colorful_patterns(sizes, r_vec)
        H = partite_construction(P, r_vec)
        assert closure(H, fam, host) == host, r_vec
