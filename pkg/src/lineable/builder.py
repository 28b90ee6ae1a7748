"""Building infinite-dimensional subspaces inside zero sets.

The construction extends a seed basis x1..xn (on whose span P vanishes) by
vectors y1, y2, ... chosen one at a time. Before y_k is picked, the working
subspace is cut down so that every polynomial obtained from P by fixing
some arguments of its symmetric form at x's and y's vanishes on it; then the
previous witness is excluded and a zero of P is found in what remains. The
span of seed and witnesses then lies in the zero set of P.
"""

from __future__ import annotations

import itertools
import math
import sys
from dataclasses import asdict, dataclass, field as dc_field, fields
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import (
    ArityMismatch,
    DepthExceeded,
    FieldMismatch,
    InputError,
    LineableError,
    NoRealZero,
    PointNotAZero,
    SeedNotInZeroSet,
    ZeroVector,
)
from .polynomials import (
    HomPoly,
    MultiIndex,
    MultilinearForm,
    SparseVector,
    directional_derivative,
    evaluate,
    finite_type_functionals,
    vanishes_on_span,
)
from .scalars import EXACT, Field, Tolerance, magnitude
from .spaces import (
    MAX_INDEX,
    Node,
    SeedSpace,
    Subspace,
    direct_complement,
    exclude_vector,
    full_space,
    kernel_within,
    refine_vanishing,
)
from .zerofind import (
    DEFAULT_BUDGET,
    DEFAULT_EPSILON,
    ZeroWitness,
    find_zero_complex,
    find_zero_finite_type,
    probe_real_definite,
    value_scale,
)

# Each construction step nests a few generator frames; deep builds need room.
if sys.getrecursionlimit() < 20000:
    sys.setrecursionlimit(20000)


@dataclass
class RunConfig:
    """Knobs for a build. ``epsilon = 0`` forbids approximate roots."""

    field: str | None = None
    epsilon: float = DEFAULT_EPSILON
    budget: int = DEFAULT_BUDGET
    max_index: int = MAX_INDEX
    table_threshold: int = 10**4
    sample_count: int = 100
    sample_seed: int = 0
    divisor_bound: int = 10**6
    probe_pairs: int = 5
    debug: bool = False

    def __post_init__(self):
        if self.epsilon < 0:
            raise InputError("epsilon must be nonnegative")
        for name in ("budget", "max_index", "table_threshold", "sample_count", "divisor_bound", "probe_pairs"):
            if getattr(self, name) < 1:
                raise InputError(f"{name} must be positive")
        if self.field is not None:
            Field(self.field)

    @property
    def tolerance(self) -> Tolerance:
        return Tolerance(self.epsilon)

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise InputError(f"unknown config keys: {sorted(unknown)}")
        try:
            return cls(**data)
        except (TypeError, ValueError) as exc:
            raise InputError(f"bad config: {exc}") from None

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class BuildContext:
    config: RunConfig
    exact: bool = True
    max_depth: int = 1

    @property
    def tol(self) -> Tolerance:
        return self.config.tolerance


# -- derived families ------------------------------------------------------------

@dataclass(frozen=True, order=True)
class DerivedKey:
    """Which arguments of the symmetric form are fixed.

    ``seed`` lists seed indices (1-based, nondecreasing, with repetition);
    ``alpha[l]`` is the multiplicity of witness y_(l+1).
    """

    t: int
    seed: tuple[int, ...]
    alpha: tuple[int, ...]

    def to_json(self):
        return {"t": self.t, "seed": list(self.seed), "alpha": list(self.alpha)}


@dataclass
class DerivedFamily:
    members: list[tuple[DerivedKey, HomPoly]] = dc_field(default_factory=list)

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def keys(self):
        return [k for k, _ in self.members]

    def polys(self):
        return [q for _, q in self.members]


def enumerate_derived(
    P: HomPoly,
    seed: Sequence[SparseVector],
    witnesses: Sequence[SparseVector],
    prune: bool = True,
    memo: dict | None = None,
) -> DerivedFamily:
    """Every nonzero Q(x) = P^(fixed args, x^t), 1 <= t <= m-1, needed at the next step.

    Fixed arguments come from the seed and the witnesses; with ``prune`` the
    last witness must appear at least once, since the other members already
    vanish on the subspace carried over from earlier steps.
    """
    m = P.degree
    n, k = len(seed), len(witnesses)
    args = list(seed) + list(witnesses)
    memo = {} if memo is None else memo
    memo.setdefault((), P)

    def derivative(combo):
        D = memo.get(combo)
        if D is None:
            D = directional_derivative(derivative(combo[:-1]), args[combo[-1]])
            memo[combo] = D
        return D

    family = DerivedFamily()
    for t in range(1, m):
        r = m - t
        for combo in itertools.combinations_with_replacement(range(n + k), r):
            alpha = [0] * k
            for i in combo:
                if i >= n:
                    alpha[i - n] += 1
            if prune and k and alpha[-1] == 0:
                continue
            D = derivative(combo)
            if D.is_zero():
                continue
            Q = D.scaled(Fraction(math.factorial(t), math.factorial(m)))
            key = DerivedKey(t, tuple(i + 1 for i in combo if i < n), tuple(alpha))
            fixed = [(args[i], c) for i, c in sorted(_counts(combo).items())]
            Q.provenance = tuple(fixed)
            family.members.append((key, Q))
    family.members.sort(key=lambda kq: kq[0])
    return family


def _counts(combo):
    out: dict[int, int] = {}
    for i in combo:
        out[i] = out.get(i, 0) + 1
    return out


def check_seed(P: HomPoly, seed: Sequence[SparseVector], tol: Tolerance = EXACT):
    if not seed:
        return
    res = vanishes_on_span(P, seed, tol)
    if not res:
        raise SeedNotInZeroSet(
            "the polynomial does not vanish on the span of the seed",
            gamma={str(i): e for i, e in res.gamma}, coefficient=str(res.coefficient),
        )


# -- zero finding and vanishing subspaces -------------------------------------------

def find_zero(P: HomPoly, S: Subspace, ctx: BuildContext) -> ZeroWitness:
    """Dispatch to the kernel, real finite-type, real probe or complex slice method."""
    cfg = ctx.config
    if P.degree == 1 and P.tail is None:
        K = kernel_within(S, [P.as_functional()])
        y = K.next()
        return ZeroWitness(y, y.exact, "kernel", K.node)
    if P.field.is_real:
        if finite_type_functionals(P) is not None:
            return find_zero_finite_type(P, S)
        diag = probe_real_definite(P, S, cfg.probe_pairs)
        if diag.kind != "RootFound":
            raise NoRealZero("no real zero found on the probed slices", diagnosis=diag.kind, probe=diag)
        if diag.slices and diag.slices[-1].root is not None:
            return ZeroWitness(diag.witness, True, "slice", S.node, diag.slices[-1])
        return ZeroWitness(diag.witness, True, "direct", S.node)
    w = find_zero_complex(P, S, cfg.budget, ctx.tol, cfg.divisor_bound)
    if not w.exact:
        ctx.exact = False
    return w


def vanishing_subspace(Q: HomPoly, S: Subspace, ctx: BuildContext, depth: int = 1) -> Subspace:
    """An infinite-dimensional subspace of S on which Q vanishes identically."""
    if depth > ctx.max_depth:
        raise DepthExceeded(f"vanishing recursion reached depth {depth}")
    if Q.degree == 1 and Q.tail is None:
        return kernel_within(S, [Q.as_functional()])
    if Q.field.is_real and S.field.is_real:
        functionals = finite_type_functionals(Q)
        if functionals is not None:
            return kernel_within(S, functionals, label="finite-type")
    inner = _Construction(Q, [], S, ctx, depth)
    node = Node("vanishing", S.node, poly=Q)
    return Subspace(S.field.join(Q.field), _witness_vectors(inner), node, S.debug)


def _witness_vectors(cons: "_Construction") -> Iterator[SparseVector]:
    while True:
        yield cons.step().vector


@dataclass
class StepRecord:
    step: int
    witness: ZeroWitness
    family: DerivedFamily
    values: list


class _Construction:
    """The step machine: refine, exclude, pick a zero, repeat."""

    def __init__(self, P: HomPoly, seed: Sequence[SparseVector], base: Subspace, ctx: BuildContext,
                 depth: int, poly_index: int | None = None, record: bool = False):
        self.P = P
        self.seed = list(seed)
        self.current = base
        self.ctx = ctx
        self.depth = depth
        self.poly_index = poly_index
        self.record = record
        self.witnesses: list[SparseVector] = []
        self.memo: dict = {}
        self.log: list[StepRecord] = []

    def step(self) -> ZeroWitness:
        k = len(self.witnesses) + 1
        try:
            family = enumerate_derived(self.P, self.seed, self.witnesses, memo=self.memo)
            S = refine_vanishing(
                self.current, family.polys(),
                lambda q, s: vanishing_subspace(q, s, self.ctx, self.depth + 1),
            )
            if self.witnesses:
                S = exclude_vector(S, self.witnesses[-1])
            w = find_zero(self.P, S, self.ctx)
        except LineableError as exc:
            if self.poly_index is not None:
                exc.annotate(step=k, poly_index=self.poly_index)
            raise
        if not w.exact:
            self.ctx.exact = False
        self.current = S
        if self.record:
            values = [evaluate(q, w.vector) for q in family.polys()]
            self.log.append(StepRecord(k, w, family, values))
        self.witnesses.append(w.vector)
        return w


# -- top-level builders --------------------------------------------------------------

def _prepare(P: HomPoly, config: RunConfig) -> HomPoly:
    if not isinstance(P, HomPoly):
        raise InputError(f"expected HomPoly, got {type(P).__name__}")
    if P.degree < 1:
        raise InputError("the polynomial must have degree at least 1")
    if config.field is None:
        return P
    target = Field(config.field)
    if target.rank < P.field.rank:
        raise FieldMismatch(f"cannot restrict a {P.field.value} polynomial to {target.value}")
    if target is P.field:
        return P
    return HomPoly(P.degree, P.terms, target, P.tail, P.functionals)


def _seed_space(P_list, seed, config: RunConfig, tol) -> SeedSpace:
    W = SeedSpace(seed)
    for idx, P in enumerate(P_list):
        for x in W.basis:
            if P.field.is_real and not x.field.is_real:
                raise FieldMismatch("a real polynomial cannot take a non-real seed vector")
        try:
            check_seed(P, W.basis, tol)
        except SeedNotInZeroSet as exc:
            raise exc.annotate(poly_index=idx)
    return W


def _run(constructions_base, P: HomPoly, W: SeedSpace, L: int, ctx: BuildContext, poly_index: int):
    cons = _Construction(P, W.basis, constructions_base, ctx, 1, poly_index, record=True)
    for _ in range(L):
        cons.step()
    return cons


def build_zero_space(P: HomPoly, seed: Sequence[SparseVector] = (), count: int = 8,
                     config: RunConfig | None = None):
    """Extend ``seed`` by ``count`` vectors so that P vanishes on the whole span."""
    return build_intersection([P], seed, count, config, kind="zero_space")


def build_intersection(polys: Sequence[HomPoly], seed: Sequence[SparseVector] = (), count: int = 8,
                       config: RunConfig | None = None, kind: str = "intersection"):
    """Common version for several polynomials: each construction runs inside the previous one."""
    from .certificate import assemble_certificate

    config = config or RunConfig()
    if not polys:
        raise InputError("need at least one polynomial")
    if count < 1:
        raise InputError("count must be positive")
    polys = [_prepare(P, config) for P in polys]
    ctx = BuildContext(config, max_depth=max(P.degree for P in polys) + 1)
    W = _seed_space(polys, seed, config, ctx.tol if config.epsilon else EXACT)
    base = direct_complement(W, Field.RATIONAL, config.max_index, config.debug)
    for idx, P in enumerate(polys[:-1]):
        inner = _Construction(P, W.basis, base, ctx, 1, idx)
        base = Subspace(base.field.join(P.field), _witness_vectors(inner),
                        Node("vanishing", base.node, poly=P, label="intersection"), config.debug)
    cons = _run(base, polys[-1], W, count, ctx, len(polys) - 1)
    return assemble_certificate(kind, polys, W.basis, cons, ctx)


def build_through_point(P: HomPoly, x: SparseVector, count: int = 8, config: RunConfig | None = None):
    """A subspace of the zero set containing the given zero x."""
    config = config or RunConfig()
    P = _prepare(P, config)
    if x.is_zero():
        raise ZeroVector("the point must be nonzero")
    val = evaluate(P, x)
    if val != 0 and (x.exact or magnitude(val) > config.epsilon * value_scale(P, x)):
        raise PointNotAZero("P(x) is not zero", value=str(val))
    return build_intersection([P], [x], count, config, kind="through_point")


def build_multilinear(A: MultilinearForm, count: int = 6, config: RunConfig | None = None,
                      slot: int | None = None, slot_spaces: Sequence[Subspace | None] | None = None):
    """Vectors z in one slot with A(..., z, ...) = 0 whatever the other arguments are."""
    from .certificate import assemble_multilinear

    config = config or RunConfig()
    if A.arity < 2:
        raise ArityMismatch("multilinear construction needs arity at least 2")
    if slot is None:
        infinite = [i for i, d in enumerate(A.slot_dims) if d is None]
        if not infinite:
            raise InputError("no slot is infinite-dimensional")
        slot = infinite[0]
    if not 0 <= slot < A.arity or A.slot_dims[slot] is not None:
        raise InputError(f"slot {slot} is not an infinite-dimensional slot")
    base = None
    if slot_spaces is not None and slot_spaces[slot] is not None:
        base = slot_spaces[slot]
    if base is None:
        base = full_space(Field.RATIONAL, config.max_index, config.debug)
    rows = A.slot_functionals(slot)
    conditions = [HomPoly(1, {MultiIndex({j: 1}): c for j, c in f.items()}, A.field) for _, f in rows]
    S = refine_vanishing(base, conditions, lambda q, s: kernel_within(s, [q.as_functional()]))
    produced = S.take(count)
    return assemble_multilinear(A, slot, rows, produced, S.node, config)
