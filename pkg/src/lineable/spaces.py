"""Lazy infinite-dimensional subspaces of the space of finitely supported sequences.

A ``Subspace`` is a stream of linearly independent vectors together with a
provenance node describing how it was obtained (full space, kernel,
exclusion, refinement, recursive vanishing). Streams are single-owner;
pulling from a derived stream pulls from its parents.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterator, Sequence

from .errors import DependentSeed, MathematicalFailure, StreamExhausted, ZeroVector
from .polynomials import HomPoly, SparseVector, evaluate
from .scalars import Field, magnitude

MAX_INDEX = 10**6
RANK_THRESHOLD = 1e-9


@dataclass(eq=False)
class Node:
    """One step of a subspace's derivation."""

    kind: str  # full | kernel | exclude | refine | vanishing
    parent: "Node | None" = None
    functionals: tuple = ()
    coordinate: int | None = None
    poly: HomPoly | None = None
    label: str = ""
    extra: dict = dc_field(default_factory=dict)

    def ancestors(self):
        node = self
        while node is not None:
            yield node
            node = node.parent

    def conditions_hold(self, v: SparseVector, epsilon: float = 0.0) -> bool:
        """Re-evaluate every checkable condition along the ancestor chain."""
        return not list(membership_failures(self, v, epsilon))


def membership_failures(node: Node, v: SparseVector, epsilon: float = 0.0):
    scale = v.norm_inf()
    for n in node.ancestors():
        if n.kind == "kernel":
            for f in n.functionals:
                val = f.dot(v)
                if not _negligible(val, epsilon, f.norm1() * scale):
                    yield n, val
        elif n.kind == "exclude":
            val = v[n.coordinate]
            if not _negligible(val, epsilon, scale):
                yield n, val
        elif n.kind == "vanishing":
            val = evaluate(n.poly, v)
            if not _negligible(val, epsilon, n.poly.norm1() * scale ** n.poly.degree):
                yield n, val


def _negligible(value, epsilon, scale):
    if value == 0:
        return True
    return epsilon > 0 and magnitude(value) <= epsilon * max(scale, 1.0)


class Subspace:
    """A stream of independent vectors spanning an infinite-dimensional subspace."""

    def __init__(self, field: Field, source: Iterator[SparseVector], node: Node, debug: bool = False):
        self.field = field
        self._source = source
        self.node = node
        self.history: list[SparseVector] = []
        self.debug = debug

    def next(self) -> SparseVector:
        try:
            v = next(self._source)
        except StopIteration:
            raise StreamExhausted("subspace stream ended", node=self.node.kind) from None
        self.history.append(v)
        if self.debug and exact_rank(self.history) != len(self.history):
            raise MathematicalFailure("stream yielded a dependent vector", node=self.node.kind)
        return v

    __next__ = next

    def __iter__(self):
        return self

    def take(self, k: int) -> list[SparseVector]:
        return [self.next() for _ in range(k)]


def full_space(field: Field = Field.RATIONAL, max_index: int = MAX_INDEX, debug: bool = False) -> Subspace:
    def gen():
        for j in itertools.count(1):
            if j > max_index:
                raise StreamExhausted(f"ambient index bound {max_index} reached")
            yield SparseVector.basis(j, field)

    return Subspace(field, gen(), Node("full", extra={"field": field.value}), debug)


def _pivot(row: list, exact: bool):
    """Index of the entry to eliminate with, or None when the row is zero."""
    if exact:
        for i, x in enumerate(row):
            if x != 0:
                return i
        return None
    best, where = 0.0, None
    for i, x in enumerate(row):
        if magnitude(x) > best:
            best, where = magnitude(x), i
    return where


def _kernel_stream(parent: Subspace, functionals: Sequence[SparseVector], exact: bool):
    held: list[tuple[int, list, SparseVector]] = []  # (pivot column, value row, vector)
    while True:
        s = parent.next()
        row = [f.dot(s) for f in functionals]
        scale = max((magnitude(x) for x in row), default=0.0)
        for col, prow, w in held:
            c = row[col]
            if c == 0:
                continue
            coef = c / prow[col]
            row = [a - coef * b for a, b in zip(row, prow)]
            row[col] = 0
            s = s.axpy(-coef, w)
        if not exact:
            row = [0 if magnitude(x) <= RANK_THRESHOLD * max(scale, 1.0) else x for x in row]
        col = _pivot(row, exact)
        if col is None:
            if s.is_zero():
                raise MathematicalFailure("kernel elimination produced the zero vector")
            yield s
        else:
            held.append((col, row, s))


def kernel_within(S: Subspace, functionals: Sequence[SparseVector], label: str = "") -> Subspace:
    """Vectors of S annihilated by every functional, by pull-and-eliminate."""
    functionals = tuple(f for f in functionals if not f.is_zero())
    field = S.field.join(*(f.field for f in functionals))
    node = Node("kernel", S.node, functionals=functionals, label=label)
    if not functionals:
        return Subspace(field, _passthrough(S), node, S.debug)
    return Subspace(field, _kernel_stream(S, functionals, field.exact), node, S.debug)


def _passthrough(S: Subspace):
    while True:
        yield S.next()


def exclusion_coordinate(v: SparseVector) -> int:
    """The coordinate j whose functional separates v from the excluded subspace."""
    if v.is_zero():
        raise ZeroVector("cannot exclude the zero vector")
    if v.exact:
        return v.support()[0]
    return max(v.items(), key=lambda kv: (magnitude(kv[1]), -kv[0]))[0]


def exclude_vector(S: Subspace, v: SparseVector) -> Subspace:
    """A codimension-at-most-one subspace of S not containing v."""
    j = exclusion_coordinate(v)
    psi = SparseVector.basis(j, Field.RATIONAL)
    inner = kernel_within(S, [psi])
    inner.node = Node("exclude", S.node, functionals=(psi,), coordinate=j)
    return inner


def refine_vanishing(
    S: Subspace,
    conditions: Sequence[HomPoly],
    vanisher: Callable[[HomPoly, Subspace], Subspace],
) -> Subspace:
    """Nest ``vanisher`` over the conditions; consecutive degree-1 conditions share one kernel."""
    if not conditions:
        return S
    current = S
    batch: list[SparseVector] = []
    for q in conditions:
        if q.degree == 1 and q.tail is None:
            batch.append(q.as_functional())
            continue
        if batch:
            current = kernel_within(current, batch)
            batch = []
        current = vanisher(q, current)
    if batch:
        current = kernel_within(current, batch)
    out = Subspace(current.field, _passthrough(current), Node("refine", current.node,
                   extra={"conditions": len(conditions)}), S.debug)
    return out


# -- linear algebra ----------------------------------------------------------------

def _eliminate(vectors: Sequence[SparseVector], threshold: float = RANK_THRESHOLD):
    """Sparse row reduction; returns the list of (pivot column, reduced row) kept."""
    exact = all(v.exact for v in vectors)
    rows = [dict(v.items()) for v in vectors]
    top = max((magnitude(x) for r in rows for x in r.values()), default=0.0)
    cutoff = threshold * top
    basis: list[tuple[int, dict]] = []
    for row in rows:
        row = dict(row)
        for col, prow in basis:
            c = row.get(col)
            if c is None or c == 0:
                continue
            coef = c / prow[col]
            for k, x in prow.items():
                val = row.get(k, 0) - coef * x
                row[k] = val
            row.pop(col, None)
        if exact:
            row = {k: x for k, x in row.items() if x != 0}
            if not row:
                continue
            col = min(row)
        else:
            row = {k: x for k, x in row.items() if magnitude(x) > cutoff}
            if not row:
                continue
            col = max(row, key=lambda k: magnitude(row[k]))
        basis.append((col, row))
    return basis


def exact_rank(vectors: Sequence[SparseVector], threshold: float = RANK_THRESHOLD) -> int:
    """Rank by exact elimination; approximate vectors use a relative pivot threshold."""
    return len(_eliminate(vectors, threshold))


class SeedSpace:
    """A finite-dimensional subspace given by an independent basis."""

    def __init__(self, basis: Sequence[SparseVector] = ()):
        basis = list(basis)
        for b in basis:
            if b.is_zero():
                raise ZeroVector("seed basis contains the zero vector")
        if exact_rank(basis) != len(basis):
            raise DependentSeed(f"seed basis of {len(basis)} vectors is dependent")
        self.basis = basis

    @property
    def n(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)


def dual_functionals(W: SeedSpace) -> list[SparseVector]:
    """Functionals psi_i, supported on pivot coordinates, with psi_i(x_j) = delta_ij."""
    n = W.n
    if n == 0:
        return []
    pivots = [col for col, _ in _eliminate(W.basis)]
    # B[j][k] = (x_j)[pivot_k]; psi_i = sum_k G[i][k] e_{pivot_k}* with G B^T = I.
    B = [[x[p] for p in pivots] for x in W.basis]
    G = _inverse([[B[j][k] for j in range(n)] for k in range(n)])
    field = Field.RATIONAL.join(*(x.field for x in W.basis))
    return [SparseVector({pivots[k]: G[i][k] for k in range(n)}, field) for i in range(n)]


def _inverse(M):
    """Inverse of a square matrix by Gauss-Jordan elimination with largest pivots."""
    n = len(M)
    A = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        p = max(range(c, n), key=lambda r: (A[r][c] != 0, magnitude(A[r][c])))
        if A[p][c] == 0:
            raise DependentSeed("singular pivot block")
        A[c], A[p] = A[p], A[c]
        inv = 1 / A[c][c]
        A[c] = [x * inv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return [row[n:] for row in A]


def direct_complement(W: SeedSpace, field: Field = Field.RATIONAL, max_index: int = MAX_INDEX,
                      debug: bool = False) -> Subspace:
    """The kernel of the dual functionals of W inside the full space."""
    base = full_space(field, max_index, debug)
    if W.n == 0:
        return base
    return kernel_within(base, dual_functionals(W), label="complement")


def decompose(W: SeedSpace, z: SparseVector) -> tuple[SparseVector, SparseVector]:
    """Split z = w + y with w in span(W) and y in the complement."""
    w = SparseVector({}, z.field)
    for psi, x in zip(dual_functionals(W), W.basis):
        w = w.axpy(psi.dot(z), x)
    return w, z - w
