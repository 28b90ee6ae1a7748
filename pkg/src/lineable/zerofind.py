"""Finding a nonzero zero of a homogeneous polynomial inside a lazy subspace.

Over the complex numbers every two-dimensional slice t -> P(u + t v) has a
root, so pulling two vectors and solving a univariate equation always works;
the only question is whether the root is Gaussian-rational. Over the reals
the engine handles polynomials in finitely many functionals by intersecting
kernels, and otherwise only probes slices and reports what it saw.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import sympy

from .errors import BudgetExhausted, NoConvergence, RealFieldRejected
from .polynomials import (
    FiniteTypePoly,
    HomPoly,
    SparseVector,
    directional_derivative,
    evaluate,
    finite_type_functionals,
)
from .scalars import (
    DIVISOR_BOUND,
    Field,
    Tolerance,
    UniPoly,
    find_approx_roots,
    find_exact_roots,
    is_exact_value,
    magnitude,
    root_key,
)
from .spaces import Node, Subspace, kernel_within

DEFAULT_BUDGET = 8
DEFAULT_EPSILON = 1e-9


@dataclass
class SliceReport:
    u: SparseVector
    v: SparseVector
    slice: UniPoly
    root: object = None
    exact: bool = True

    def point(self) -> SparseVector:
        return self.u.axpy(self.root, self.v)


@dataclass
class ZeroWitness:
    """A nonzero vector y with P(y) = 0 and how it was obtained."""

    vector: SparseVector
    exact: bool
    method: str  # direct | slice | approx-slice | kernel
    node: Node | None = None
    report: SliceReport | None = None
    residual: float = 0.0


def binary_slice(P: HomPoly, u: SparseVector, v: SparseVector) -> SliceReport:
    """The univariate polynomial t -> P(u + t v).

    The coefficient of t^s is C(m, s) * P^(u^(m-s), v^s) = (D_v^s P)(u) / s!;
    derivatives are taken once and reused across s.
    """
    coeffs = [evaluate(P, u)]
    D = P
    for s in range(1, P.degree + 1):
        D = directional_derivative(D, v)
        coeffs.append(evaluate(D, u) / math.factorial(s))
    field = P.field.join(u.field, v.field)
    return SliceReport(u, v, UniPoly(coeffs, field), exact=field.exact)


def _is_zero_value(value, tol: Tolerance, scale: float) -> bool:
    if value == 0:
        return True
    return not is_exact_value(value) and not tol.exact and magnitude(value) <= tol.epsilon * max(scale, 1.0)


def value_scale(P: HomPoly, y: SparseVector) -> float:
    return P.norm1(y.max_index) * max(y.norm_inf(), 1e-300) ** P.degree


def find_zero_complex(
    P: HomPoly,
    S: Subspace,
    budget: int = DEFAULT_BUDGET,
    tol: Tolerance = Tolerance(DEFAULT_EPSILON),
    divisor_bound: int = DIVISOR_BOUND,
) -> ZeroWitness:
    """Pull vectors from S until a zero is found directly or on a slice."""
    if P.field.is_real:
        raise RealFieldRejected("the slice method needs a complex field; use the real pathways")
    pulled: list[SparseVector] = []
    first: SliceReport | None = None
    pairs = 0
    exact_search = P.field.exact
    while True:
        w = S.next()
        if _is_zero_value(evaluate(P, w), tol, value_scale(P, w)):
            return ZeroWitness(w, w.exact and P.field.exact, "direct", S.node)
        for u in pulled:
            rep = binary_slice(P, u, w)
            if first is None:
                first = rep
            if exact_search and rep.exact:
                roots = find_exact_roots(rep.slice, divisor_bound)
                if roots:
                    rep.root = min(roots, key=root_key)
                    return ZeroWitness(rep.point(), True, "slice", S.node, rep)
            pairs += 1
            if pairs >= budget or not exact_search or not rep.exact:
                return _approx_fallback(P, S, first, tol)
        pulled.append(w)


def _approx_fallback(P: HomPoly, S: Subspace, rep: SliceReport, tol: Tolerance) -> ZeroWitness:
    if tol.exact:
        raise BudgetExhausted("no Gaussian-rational slice root within the budget and epsilon is 0",
                              u=str(rep.u), v=str(rep.v))
    p = UniPoly([complex(c) for c in rep.slice.coeffs], Field.COMPLEX)
    try:
        roots = find_approx_roots(p, tol)
    except NoConvergence as exc:
        raise BudgetExhausted(f"approximate root search failed: {exc}") from exc
    root = min(roots, key=root_key)
    out = SliceReport(rep.u, rep.v, p, root, exact=False)
    y = out.point()
    residual = magnitude(evaluate(P, y)) / max(value_scale(P, y), 1e-300)
    return ZeroWitness(y, False, "approx-slice", S.node, out, residual)


def find_zero_finite_type(F: FiniteTypePoly | HomPoly, S: Subspace) -> ZeroWitness:
    """First vector of S annihilated by every functional of a finite-type form."""
    if isinstance(F, FiniteTypePoly):
        functionals = F.functionals()
    else:
        functionals = finite_type_functionals(F)
        if functionals is None:
            raise RealFieldRejected("polynomial has no finite functional description")
    K = kernel_within(S, functionals)
    y = K.next()
    return ZeroWitness(y, y.exact, "kernel", K.node)


@dataclass
class Diagnosis:
    kind: str  # RootFound | NoRealRootOnProbedSlices | NoExactRealRootOnProbedSlices
    slices: list = dc_field(default_factory=list)
    witness: SparseVector | None = None
    certified: list = dc_field(default_factory=list)

    def to_json(self):
        from .serial import vector_to_json, unipoly_to_json

        out = {
            "diagnosis": self.kind,
            "slices": [
                {"u": vector_to_json(r.u), "v": vector_to_json(r.v), "slice": unipoly_to_json(r.slice),
                 "no_real_root_certified": c}
                for r, c in zip(self.slices, self.certified)
            ],
        }
        if self.witness is not None:
            out["witness"] = vector_to_json(self.witness)
        return out


def _no_real_root(p: UniPoly) -> bool:
    """Exact certificate that a rational univariate polynomial has no real root."""
    c = p.coeffs
    if p.degree == 2:
        return c[1] * c[1] - 4 * c[2] * c[0] < 0
    if p.degree % 2:
        return False
    t = sympy.Symbol("t")
    poly = sympy.Poly([sympy.Rational(x.numerator, x.denominator) for x in reversed(c)], t)
    return poly.count_roots() == 0


def probe_real_definite(P: HomPoly, S: Subspace, pairs: int = 5) -> Diagnosis:
    """Look for a real zero on ``pairs`` slices; report certified root-free slices otherwise."""
    if not P.field.is_real:
        raise RealFieldRejected("probe_real_definite expects a real polynomial")
    diag = Diagnosis("NoRealRootOnProbedSlices")
    pulled: list[SparseVector] = []
    while len(diag.slices) < pairs:
        w = S.next()
        if evaluate(P, w) == 0:
            diag.kind, diag.witness = "RootFound", w
            return diag
        for u in pulled:
            rep = binary_slice(P, u, w)
            roots = find_exact_roots(rep.slice)
            if roots:
                rep.root = min(roots, key=root_key)
                diag.slices.append(rep)
                diag.certified.append(False)
                diag.kind, diag.witness = "RootFound", rep.point()
                return diag
            diag.slices.append(rep)
            diag.certified.append(_no_real_root(rep.slice))
            if len(diag.slices) >= pairs:
                break
        pulled.append(w)
    if not all(diag.certified):
        diag.kind = "NoExactRealRootOnProbedSlices"
    return diag
