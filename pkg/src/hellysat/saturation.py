"""Weak saturation for star-shaped complete multipartite patterns.

Every pattern used here is ``K_{1,...,1,m}``: a (d+1)-graph whose edges all
share one d-set (the *core*) and differ in one vertex (the *apex*).  A new
edge ``e`` then has a witness copy iff some d-subset ``core`` of ``e`` has at
least ``m`` apexes ``u`` with ``core + {u}`` already present (``e`` itself
counts).  For a directed pattern of color ``i`` the apexes must lie in part
``V_i`` and the core is forced to ``e - V_i``.

This replaces general subgraph matching by one count per core.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .complex_core import Face, VertexPartition
from .errors import (
    HostTooLarge,
    NotRainbow,
    NotSubhypergraph,
    ParameterRange,
    WrongSize,
)

DEFAULT_CAP = 20


@dataclass(frozen=True)
class Hypergraph:
    n: int
    uniformity: int
    edges: frozenset
    partition: Optional[VertexPartition] = None

    def __post_init__(self):
        for e in self.edges:
            if len(e) != self.uniformity:
                raise WrongSize(f"edge {list(e)} does not have size {self.uniformity}")
            if tuple(sorted(set(e))) != e or (e and (e[0] < 0 or e[-1] >= self.n)):
                raise WrongSize(f"edge {list(e)} is not a sorted face of range({self.n})")
        if self.partition is not None:
            if self.partition.n != self.n:
                raise ParameterRange("partition does not match vertex count")
            for e in self.edges:
                if not self.partition.is_rainbow(e):
                    raise NotRainbow(f"edge {list(e)} is not rainbow")

    @classmethod
    def of(cls, n: int, uniformity: int, edges: Iterable[Sequence[int]], partition=None) -> "Hypergraph":
        return cls(n, uniformity, frozenset(tuple(sorted(e)) for e in edges), partition)

    @classmethod
    def complete(cls, n: int, uniformity: int) -> "Hypergraph":
        return cls(n, uniformity, frozenset(combinations(range(n), uniformity)))

    @classmethod
    def complete_partite(cls, partition: VertexPartition) -> "Hypergraph":
        k = len(partition.parts)
        return cls(partition.n, k, frozenset(partition.rainbow_sets(k)), partition)

    def with_edges(self, edges: Iterable[Face]) -> "Hypergraph":
        return Hypergraph(self.n, self.uniformity, frozenset(edges), self.partition)

    def sorted_edges(self) -> list[Face]:
        return sorted(self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    def to_json(self) -> dict:
        doc = {"n": self.n, "uniformity": self.uniformity, "edges": [list(e) for e in self.sorted_edges()]}
        if self.partition is not None:
            doc["parts"] = [list(p) for p in self.partition.parts]
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "Hypergraph":
        parts = doc.get("parts")
        partition = VertexPartition.from_parts(parts) if parts else None
        return cls.of(int(doc["n"]), int(doc["uniformity"]), doc["edges"], partition)


def host_descriptor(host: Hypergraph) -> dict:
    """Compact JSON for complete hosts; falls back to the full edge list."""
    if host.partition is not None and host == Hypergraph.complete_partite(host.partition):
        return {"kind": "complete-partite", "n": host.n, "uniformity": host.uniformity,
                "parts": [list(p) for p in host.partition.parts]}
    if host.partition is None and host == Hypergraph.complete(host.n, host.uniformity):
        return {"kind": "complete", "n": host.n, "uniformity": host.uniformity}
    return host.to_json()


def host_from_descriptor(doc: dict) -> Hypergraph:
    kind = doc.get("kind")
    if kind == "complete":
        return Hypergraph.complete(int(doc["n"]), int(doc["uniformity"]))
    if kind == "complete-partite":
        return Hypergraph.complete_partite(VertexPartition.from_parts(doc["parts"]))
    return Hypergraph.from_json(doc)


@dataclass(frozen=True)
class StarPattern:
    """``K_{1,...,1,m}`` of the given uniformity; directed when ``color`` is set."""

    uniformity: int
    m: int
    color: Optional[int] = None

    def __post_init__(self):
        if self.m < 1:
            raise ParameterRange(f"big part size must be >= 1, got {self.m}")

    def to_json(self) -> dict:
        return {"m": self.m, "color": self.color}

    @classmethod
    def from_json(cls, doc: dict, uniformity: int) -> "StarPattern":
        color = doc.get("color")
        return cls(uniformity, int(doc["m"]), None if color is None else int(color))


def fractional_pattern(n: int, d: int, r: int) -> StarPattern:
    return StarPattern(d + 1, n - d - r + 1)


def colorful_patterns(sizes: Sequence[int], r_vec: Sequence[int]) -> list[StarPattern]:
    k = len(sizes)
    return [StarPattern(k, n_i - r_i + 1, i) for i, (n_i, r_i) in enumerate(zip(sizes, r_vec))]


@dataclass(frozen=True)
class WitnessCopy:
    core: Face
    apexes: tuple[int, ...]
    new_apex: int
    color: Optional[int] = None

    @property
    def edge(self) -> Face:
        return tuple(sorted(self.core + (self.new_apex,)))

    def copy_edges(self) -> list[Face]:
        return [tuple(sorted(self.core + (u,))) for u in self.apexes]

    def to_json(self) -> dict:
        return {"core": list(self.core), "apexes": list(self.apexes),
                "new_apex": self.new_apex, "color": self.color}

    @classmethod
    def from_json(cls, doc: dict) -> "WitnessCopy":
        color = doc.get("color")
        return cls(tuple(sorted(doc["core"])), tuple(sorted(doc["apexes"])),
                   int(doc["new_apex"]), None if color is None else int(color))


def _check_edge(H: Hypergraph, e: Face, fam: Sequence[StarPattern]) -> Face:
    e = tuple(sorted(e))
    if len(e) != H.uniformity or len(set(e)) != len(e):
        raise WrongSize(f"edge {list(e)} does not have size {H.uniformity}")
    if any(p.color is not None for p in fam):
        if H.partition is None:
            raise ParameterRange("directed patterns need a partitioned hypergraph")
        if not H.partition.is_rainbow(e):
            raise NotRainbow(f"edge {list(e)} is not rainbow")
    return e


def _pick_apexes(cands: list[int], own: int, m: int) -> tuple[int, ...]:
    others = [u for u in cands if u != own][: m - 1]
    return tuple(sorted(others + [own]))


def _cores(e: Face, pattern: StarPattern, partition: Optional[VertexPartition]):
    """Yield ``(core, own_apex, allowed_apexes)``; cores in lexicographic order."""
    if pattern.color is None:
        for x in reversed(e):
            yield tuple(v for v in e if v != x), x, None
        return
    part = partition.parts[pattern.color]
    inside = [v for v in e if v in partition.color_of and partition.color_of[v] == pattern.color]
    if len(inside) != 1:
        return
    x = inside[0]
    yield tuple(v for v in e if v != x), x, part


def addable(H: Hypergraph, e: Sequence[int], fam: Sequence[StarPattern]) -> Optional[WitnessCopy]:
    """Witness copy created by adding ``e`` to ``H``, or ``None``.

    Patterns are tried in family order, cores in lexicographic order; apexes
    are ``e``'s own apex plus the lexicographically least others.
    """
    e = _check_edge(H, e, fam)
    edges = H.edges
    for pattern in fam:
        for core, own, allowed in _cores(e, pattern, H.partition):
            pool = range(H.n) if allowed is None else allowed
            core_set = set(core)
            cands = [u for u in pool if u not in core_set
                     and (u == own or tuple(sorted(core + (u,))) in edges)]
            if len(cands) >= pattern.m:
                return WitnessCopy(core, _pick_apexes(cands, own, pattern.m), own, pattern.color)
    return None


def witness_problem(edges: frozenset, e: Face, w: WitnessCopy, fam: Sequence[StarPattern],
                    partition: Optional[VertexPartition]) -> Optional[str]:
    """Reason why ``w`` does not justify adding ``e`` to ``edges``; None if valid.

    A witness may list more apexes than the pattern needs: any ``m`` of them,
    including the new apex, form a copy.
    """
    if w.edge != tuple(sorted(e)):
        return f"witness edge {list(w.edge)} differs from {list(e)}"
    if w.new_apex not in w.apexes:
        return "new apex is not among the apexes"
    if set(w.core) & set(w.apexes):
        return "core and apexes overlap"
    if len(set(w.apexes)) != len(w.apexes):
        return "repeated apex"
    present = edges | {tuple(sorted(e))}
    missing = [f for f in w.copy_edges() if f not in present]
    if missing:
        return f"copy edge {list(missing[0])} not present yet"
    for p in fam:
        if p.color != w.color or len(w.apexes) < p.m:
            continue
        if p.color is not None:
            part = set(partition.parts[p.color])
            if not set(w.apexes) <= part or set(w.core) & part:
                continue
        return None
    return f"no pattern of the family matches a copy with {len(w.apexes)} apexes, color {w.color}"


class _Kernel:
    """Bitmask form of a host plus family, for fast repeated closures."""

    def __init__(self, host: Hypergraph, fam: Sequence[StarPattern]):
        self.edges = host.sorted_edges()
        index = {e: i for i, e in enumerate(self.edges)}
        self.full = (1 << len(self.edges)) - 1
        self.rules: list[list[tuple[int, int]]] = []
        for e in self.edges:
            rules = []
            for p in fam:
                for core, own, allowed in _cores(e, p, host.partition):
                    pool = range(host.n) if allowed is None else allowed
                    star = 0
                    for u in pool:
                        j = index.get(tuple(sorted(core + (u,)))) if u not in core else None
                        if j is not None:
                            star |= 1 << j
                    rules.append((p.m - 1, star))
            self.rules.append(rules)

    def closure(self, cur: int) -> int:
        rules = self.rules
        changed = True
        while changed:
            changed = False
            for i, rs in enumerate(rules):
                bit = 1 << i
                if cur & bit:
                    continue
                for need, star in rs:
                    if bin(cur & star).count("1") >= need:
                        cur |= bit
                        changed = True
                        break
        return cur

    def mask(self, edges: Iterable[Face]) -> int:
        index = {e: i for i, e in enumerate(self.edges)}
        m = 0
        for e in edges:
            m |= 1 << index[e]
        return m

    def unmask(self, m: int) -> list[Face]:
        return [e for i, e in enumerate(self.edges) if m >> i & 1]


def _check_sub(H: Hypergraph, host: Hypergraph):
    if H.n != host.n or H.uniformity != host.uniformity or not H.edges <= host.edges:
        raise NotSubhypergraph("start hypergraph is not contained in the host")


def closure(H: Hypergraph, fam: Sequence[StarPattern], host: Hypergraph) -> Hypergraph:
    """Bootstrap closure of ``H`` inside ``host``."""
    _check_sub(H, host)
    kernel = _Kernel(host, fam)
    return host.with_edges(kernel.unmask(kernel.closure(kernel.mask(H.edges))))


@dataclass(frozen=True)
class SaturationInstance:
    host: Hypergraph
    start_edges: frozenset
    patterns: tuple[StarPattern, ...]
    order: tuple[Face, ...]
    witnesses: tuple[WitnessCopy, ...]

    def start(self) -> Hypergraph:
        return self.host.with_edges(self.start_edges)

    def to_json(self) -> dict:
        return {
            "host": host_descriptor(self.host),
            "patterns": [p.to_json() for p in self.patterns],
            "start_edges": [list(e) for e in sorted(self.start_edges)],
            "order": [list(e) for e in self.order],
            "witnesses": [w.to_json() for w in self.witnesses],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "SaturationInstance":
        host = host_from_descriptor(doc["host"])
        return cls(
            host,
            frozenset(tuple(sorted(e)) for e in doc["start_edges"]),
            tuple(StarPattern.from_json(p, host.uniformity) for p in doc["patterns"]),
            tuple(tuple(sorted(e)) for e in doc["order"]),
            tuple(WitnessCopy.from_json(w) for w in doc["witnesses"]),
        )


def closure_sequence(H: Hypergraph, fam: Sequence[StarPattern], host: Hypergraph) -> SaturationInstance:
    """Record the addition order of a lexicographic-sweep closure.

    The instance is a valid saturation sequence iff the closure is the host.
    """
    _check_sub(H, host)
    cur = set(H.edges)
    order, witnesses = [], []
    changed = True
    while changed:
        changed = False
        for e in host.sorted_edges():
            if e in cur:
                continue
            w = addable(host.with_edges(cur), e, fam)
            if w is not None:
                cur.add(e)
                order.append(e)
                witnesses.append(w)
                changed = True
    return SaturationInstance(host, H.edges, tuple(fam), tuple(order), tuple(witnesses))


@dataclass(frozen=True)
class SaturationReport:
    ok: bool
    index: Optional[int] = None
    reason: Optional[str] = None

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {"ok": self.ok, "index": self.index, "reason": self.reason}


def verify_saturation_sequence(inst: SaturationInstance) -> SaturationReport:
    host = inst.host
    if not inst.start_edges <= host.edges:
        return SaturationReport(False, None, "start edges are not host edges")
    if len(inst.witnesses) != len(inst.order):
        return SaturationReport(False, None, "one witness per ordered edge is required")
    missing = host.edges - inst.start_edges
    if len(set(inst.order)) != len(inst.order) or set(inst.order) != missing:
        extra = set(inst.order) - missing
        lost = missing - set(inst.order)
        return SaturationReport(
            False, None,
            f"order is not a permutation of host minus start "
            f"({len(lost)} missing, {len(extra)} foreign, {len(inst.order) - len(set(inst.order))} repeated)",
        )
    cur = frozenset(inst.start_edges)
    for i, (e, w) in enumerate(zip(inst.order, inst.witnesses)):
        problem = witness_problem(cur, e, w, inst.patterns, host.partition)
        if problem is not None:
            return SaturationReport(False, i, problem)
        cur = cur | {e}
    if cur != host.edges:
        return SaturationReport(False, len(inst.order), "final edge set differs from host")
    return SaturationReport(True)


def _first_success(kernel: _Kernel, k: int, first: int) -> Optional[tuple[int, ...]]:
    n_edges = len(kernel.edges)
    for rest in combinations(range(first + 1, n_edges), k - 1):
        m = 1 << first
        for j in rest:
            m |= 1 << j
        if kernel.closure(m) == kernel.full:
            return (first,) + rest
    return None


def wsat_bruteforce(
    host: Hypergraph,
    fam: Sequence[StarPattern],
    directed: bool = False,
    cap: int = DEFAULT_CAP,
    jobs: int = 1,
) -> tuple[int, Hypergraph]:
    """Smallest start hypergraph whose closure is the whole host.

    Subsets are tried by increasing size, lexicographically (on sorted host
    edges) within a size; the first success is returned.  With ``jobs > 1``
    each size class is split by its least edge across worker processes, and
    the answer with the least leading edge wins, so the result does not
    depend on scheduling.
    """
    if len(host.edges) > cap:
        raise HostTooLarge(f"host has {len(host.edges)} edges, cap is {cap}")
    if directed != any(p.color is not None for p in fam):
        raise ParameterRange("directed flag disagrees with pattern colors")
    if directed and host.partition is None:
        raise ParameterRange("directed saturation needs a partitioned host")
    kernel = _Kernel(host, fam)
    n_edges = len(kernel.edges)
    if kernel.closure(0) == kernel.full:
        return 0, host.with_edges(())
    for k in range(1, n_edges + 1):
        firsts = range(0, n_edges - k + 1)
        found = None
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(_first_success, [kernel] * len(firsts), [k] * len(firsts), firsts))
            found = next((r for r in results if r is not None), None)
        else:
            for f in firsts:
                found = _first_success(kernel, k, f)
                if found is not None:
                    break
        if found is not None:
            return k, host.with_edges(kernel.edges[i] for i in found)
    raise AssertionError("the full host is always weakly saturated")
