"""Linear-algebra lower bounds for weak saturation.

Every host edge ``e`` gets the polynomial ``prod_{v in e} p(v)``, where the
linear forms ``p(v)`` sit on the moment curve ``(1, t, t^2, ...)``.  If each
edge of every pattern copy lies in the span of the copy's other edges, then
no saturation sequence can raise the span, so a weakly saturated start graph
needs at least ``rank`` edges.

All arithmetic is exact.  Rows are scaled to integers and eliminated without
division (each reduced row is divided by the gcd of its entries to keep the
numbers small).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, product
from math import comb, gcd, lcm, prod
from typing import Iterable, Optional, Sequence

from .complex_core import Face, VertexPartition
from .errors import ParameterRange, RankMismatch
from .saturation import Hypergraph, SaturationInstance, WitnessCopy

Monomial = tuple[int, ...]


def fraction_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class LinearForm:
    coeffs: tuple[Fraction, ...]

    @property
    def nvars(self) -> int:
        return len(self.coeffs)

    def to_json(self) -> list[str]:
        return [fraction_str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, doc: Sequence[str]) -> "LinearForm":
        return cls(tuple(Fraction(c) for c in doc))


def moment_forms(count: int, dim: int, offset: int = 0, nvars: Optional[int] = None) -> list[LinearForm]:
    """``count`` forms ``(1, j, j^2, ..., j^(dim-1))`` for ``j = 0..count-1``.

    Any ``dim`` of them are independent (Vandermonde).  ``offset`` and
    ``nvars`` embed the block into a larger variable set.
    """
    nvars = dim if nvars is None else nvars
    if count < 0 or dim < 0 or offset + dim > nvars:
        raise ParameterRange(f"bad moment form shape count={count} dim={dim}")
    forms = []
    for j in range(count):
        coeffs = [Fraction(0)] * nvars
        for a in range(dim):
            coeffs[offset + a] = Fraction(j) ** a
        forms.append(LinearForm(tuple(coeffs)))
    return forms


def monomial_basis(nvars: int, degree: int) -> tuple[Monomial, ...]:
    """Degree-``degree`` monomials as sorted variable tuples, graded lex order."""
    return tuple(combinations_with_replacement(range(nvars), degree))


def rainbow_basis(dims: Sequence[int]) -> tuple[Monomial, ...]:
    """Monomials using one variable from each block, lex on block indices."""
    offsets = [sum(dims[:i]) for i in range(len(dims))]
    return tuple(tuple(o + j for o, j in zip(offsets, js)) for js in product(*(range(k) for k in dims)))


@dataclass(frozen=True)
class FormAssignment:
    """One linear form per vertex together with the monomial basis of U."""

    forms: tuple[LinearForm, ...]
    basis: tuple[Monomial, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)


def fractional_assignment(n: int, d: int, r: int) -> FormAssignment:
    dim = n - d - r
    if dim < 0:
        raise ParameterRange(f"need r <= n - d (n={n}, d={d}, r={r})")
    return FormAssignment(tuple(moment_forms(n, dim)), monomial_basis(dim, d + 1))


def colorful_assignment(P: VertexPartition, dims: Sequence[int]) -> FormAssignment:
    """Forms for part ``i`` live in their own block of ``dims[i]`` variables."""
    if len(dims) != len(P.parts) or any(k < 0 for k in dims):
        raise ParameterRange(f"bad block dimensions {list(dims)}")
    total = sum(dims)
    forms: list[Optional[LinearForm]] = [None] * P.n
    for i, part in enumerate(P.parts):
        block = moment_forms(len(part), dims[i], offset=sum(dims[:i]), nvars=total)
        for v, f in zip(part, block):
            forms[v] = f
    return FormAssignment(tuple(forms), rainbow_basis(dims))


@dataclass(frozen=True)
class MonomialVector:
    coords: dict
    basis: tuple[Monomial, ...]

    def dense(self) -> list[Fraction]:
        extra = set(self.coords) - set(self.basis)
        if extra:
            raise ParameterRange(f"monomial {min(extra)} is outside the basis")
        return [self.coords.get(b, Fraction(0)) for b in self.basis]

    def is_zero(self) -> bool:
        return not self.coords


def _multiply(poly: dict, form: LinearForm) -> dict:
    out: dict = {}
    for key, c in poly.items():
        for var, a in enumerate(form.coeffs):
            if a:
                k2 = tuple(sorted(key + (var,)))
                out[k2] = out.get(k2, 0) + c * a
    return {k: v for k, v in out.items() if v}


def edge_vector(e: Sequence[int], forms: Sequence[LinearForm], basis: Optional[Sequence[Monomial]] = None) -> MonomialVector:
    """Coordinates of the product of the vertex forms of ``e``."""
    poly: dict = {(): Fraction(1)}
    for v in e:
        poly = _multiply(poly, forms[v])
    if basis is None:
        basis = monomial_basis(forms[0].nvars if forms else 0, len(e))
    return MonomialVector(poly, tuple(basis))


def _integer_row(vec: Sequence[Fraction]) -> list[int]:
    den = lcm(*(q.denominator for q in vec)) if vec else 1
    return [int(q * den) for q in vec]


class ExactSpan:
    """Incremental row echelon form over the integers."""

    def __init__(self, width: int):
        self.width = width
        self.pivots: dict[int, list[int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _reduce(self, vec: Sequence[Fraction]) -> list[int]:
        row = _integer_row(vec)
        for col in sorted(self.pivots):
            a = row[col]
            if not a:
                continue
            p = self.pivots[col]
            b = p[col]
            row = [b * x - a * y for x, y in zip(row, p)]
            g = gcd(*row)
            if g > 1:
                row = [x // g for x in row]
        return row

    def contains(self, vec: Sequence[Fraction]) -> bool:
        return not any(self._reduce(vec))

    def add(self, vec: Sequence[Fraction]) -> bool:
        """Insert ``vec``; True iff the rank went up."""
        row = self._reduce(vec)
        lead = next((i for i, x in enumerate(row) if x), None)
        if lead is None:
            return False
        self.pivots[lead] = row
        return True


@dataclass(frozen=True)
class CertificateReport:
    rank: int
    bound: int
    basis_edges: tuple[Face, ...]

    def to_json(self) -> dict:
        return {"rank": self.rank, "bound": self.bound, "basis_edges": [list(e) for e in self.basis_edges]}


def span_rank(edges: Iterable[Face], assign: FormAssignment) -> tuple[int, list[Face]]:
    span = ExactSpan(assign.dimension)
    basis_edges = []
    for e in edges:
        if span.add(edge_vector(e, assign.forms, assign.basis).dense()):
            basis_edges.append(e)
    return span.rank, basis_edges


def certificate_rank(host: Hypergraph, d: int, r) -> CertificateReport:
    """Exact rank of all host edge vectors, checked against the closed form.

    ``r`` is an int for the complete host ``K_n^(d+1)`` and a sequence of
    per-part values for the complete (d+1)-partite host.
    """
    if host.uniformity != d + 1:
        raise ParameterRange(f"host uniformity {host.uniformity} is not d + 1 = {d + 1}")
    if host.partition is None:
        if host != Hypergraph.complete(host.n, d + 1):
            raise ParameterRange("certificate needs the complete host")
        assign = fractional_assignment(host.n, d, int(r))
        bound = comb(host.n - int(r), d + 1)
    else:
        P = host.partition
        r_vec = list(r)
        if len(r_vec) != len(P.parts) or host != Hypergraph.complete_partite(P):
            raise ParameterRange("certificate needs the complete multipartite host")
        if any(ri < 0 or ri > ni for ni, ri in zip(P.sizes, r_vec)):
            raise ParameterRange(f"need 0 <= r_i <= n_i, got r={r_vec}")
        dims = [ni - ri for ni, ri in zip(P.sizes, r_vec)]
        assign = colorful_assignment(P, dims)
        bound = prod(dims)
    rank, basis_edges = span_rank(host.sorted_edges(), assign)
    if rank != bound:
        raise RankMismatch(f"rank {rank} differs from bound {bound}")
    return CertificateReport(rank, bound, tuple(basis_edges))


def verify_span_condition(copy: WitnessCopy, forms: Sequence[LinearForm],
                          basis: Optional[Sequence[Monomial]] = None) -> bool:
    """Each edge of the star copy lies in the span of the copy's other edges."""
    edges = copy.copy_edges()
    vecs = [edge_vector(e, forms, basis).dense() for e in edges]
    width = len(vecs[0]) if vecs else 0
    for i, v in enumerate(vecs):
        span = ExactSpan(width)
        for j, u in enumerate(vecs):
            if j != i:
                span.add(u)
        if not span.contains(v):
            return False
    return True


def assignment_for(inst: SaturationInstance) -> FormAssignment:
    """Forms matching the instance patterns: ``m - 1`` variables per block."""
    host = inst.host
    if host.partition is None:
        (pattern,) = inst.patterns
        d = host.uniformity - 1
        return fractional_assignment(host.n, d, host.n - d - pattern.m + 1)
    by_color = {p.color: p.m for p in inst.patterns}
    dims = [by_color[i] - 1 for i in range(len(host.partition.parts))]
    return colorful_assignment(host.partition, dims)


@dataclass(frozen=True)
class LemmaReport:
    ok: bool
    index: Optional[int] = None
    rank: int = 0

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {"ok": self.ok, "index": self.index, "rank": self.rank}


def replay_lemma(inst: SaturationInstance, assign: Optional[FormAssignment] = None) -> LemmaReport:
    """Check that no step of the sequence enlarges the span of the start edges."""
    if assign is None:
        assign = assignment_for(inst)
    span = ExactSpan(assign.dimension)
    for e in sorted(inst.start_edges):
        span.add(edge_vector(e, assign.forms, assign.basis).dense())
    for i, e in enumerate(inst.order):
        if not span.contains(edge_vector(e, assign.forms, assign.basis).dense()):
            return LemmaReport(False, i, span.rank)
    return LemmaReport(True, None, span.rank)
