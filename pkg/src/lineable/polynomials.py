"""Sparse homogeneous polynomials in countably many variables.

Variables are numbered from 1. A polynomial is a finite table of monomials,
optionally followed by a shift-periodic tail so that forms like
``x1^2 + x2^2 + x3^2 + ...`` are representable. The symmetric multilinear
form of a polynomial is never stored; it is reached through iterated
directional derivatives, using

    P^(v1, ..., vr, x, ..., x) = ((m - r)! / m!) * (D_v1 ... D_vr P)(x).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import ArityMismatch, EmptyBasis, FieldMismatch, InputError
from .scalars import (
    EXACT,
    Field,
    Tolerance,
    field_of,
    gauss,
    is_exact_value,
    magnitude,
)


class MultiIndex(tuple):
    """Sorted ``(variable, exponent)`` pairs with positive exponents."""

    __slots__ = ()

    def __new__(cls, pairs=()):
        if isinstance(pairs, Mapping):
            pairs = pairs.items()
        merged: dict[int, int] = {}
        for var, exp in pairs:
            var, exp = int(var), int(exp)
            if var < 1 or exp < 0:
                raise InputError(f"bad monomial entry x{var}^{exp}")
            merged[var] = merged.get(var, 0) + exp
        return tuple.__new__(cls, sorted((v, e) for v, e in merged.items() if e))

    @property
    def degree(self) -> int:
        return sum(e for _, e in self)

    def support(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self)

    def shift(self, s: int) -> "MultiIndex":
        return _mi(tuple((v + s, e) for v, e in self))

    def to_dict(self) -> dict[int, int]:
        return dict(self)

    def __repr__(self):
        if not self:
            return "1"
        return "*".join(f"x{v}" if e == 1 else f"x{v}^{e}" for v, e in self)


def _mi(pairs) -> MultiIndex:
    return tuple.__new__(MultiIndex, pairs)


_ONE = _mi(())


def _check_fields(poly_field: Field, vec_field: Field) -> Field:
    if poly_field.is_real and not vec_field.is_real:
        raise FieldMismatch(f"real polynomial applied to a {vec_field.value} vector")
    return poly_field.join(vec_field)


class SparseVector:
    """A finitely supported vector; ``v[j]`` is the j-th coordinate (1-based)."""

    __slots__ = ("_entries", "field")

    def __init__(self, entries: Mapping[int, object] | Iterable = (), field: Field = Field.RATIONAL):
        if isinstance(entries, Mapping):
            entries = entries.items()
        clean = {}
        for idx, val in entries:
            idx = int(idx)
            if idx < 1:
                raise InputError(f"coordinate index {idx} < 1")
            if is_exact_value(val):
                field = field.join(field_of(val))
            else:
                field = Field.COMPLEX
            if val != 0:
                clean[idx] = val
        if field is Field.COMPLEX:
            clean = {k: complex(v) for k, v in clean.items()}
        else:
            clean = {k: field.coerce(v) for k, v in clean.items()}
        self._entries = dict(sorted(clean.items()))
        self.field = field

    @classmethod
    def _raw(cls, entries: dict, field: Field) -> "SparseVector":
        out = object.__new__(cls)
        out._entries = entries
        out.field = field
        return out

    @classmethod
    def basis(cls, j: int, field: Field = Field.RATIONAL) -> "SparseVector":
        return cls._raw({j: field.one()}, field)

    @classmethod
    def from_dense(cls, values: Sequence, field: Field = Field.RATIONAL) -> "SparseVector":
        return cls({i + 1: v for i, v in enumerate(values)}, field)

    def __getitem__(self, j: int):
        return self._entries.get(j, 0)

    def get(self, j, default=None):
        return self._entries.get(j, default)

    def items(self):
        return self._entries.items()

    def support(self) -> tuple[int, ...]:
        return tuple(self._entries)

    @property
    def max_index(self) -> int:
        return next(reversed(self._entries), 0)

    def is_zero(self) -> bool:
        return not self._entries

    @property
    def exact(self) -> bool:
        return self.field.exact

    def norm_inf(self) -> float:
        return max((magnitude(v) for v in self._entries.values()), default=0.0)

    def norm1(self) -> float:
        return sum(magnitude(v) for v in self._entries.values())

    def _combine(self, other: "SparseVector", c) -> "SparseVector":
        # self + c * other
        field = self.field.join(other.field, field_of(c))
        out = dict(self._entries)
        for k, v in other._entries.items():
            s = out.get(k, 0) + c * v
            if s == 0:
                out.pop(k, None)
            else:
                out[k] = s
        if field is Field.COMPLEX:
            out = {k: complex(v) for k, v in out.items()}
        return SparseVector._raw(dict(sorted(out.items())), field)

    def __add__(self, other):
        if not isinstance(other, SparseVector):
            return NotImplemented
        return self._combine(other, 1)

    def __sub__(self, other):
        if not isinstance(other, SparseVector):
            return NotImplemented
        return self._combine(other, -1)

    def axpy(self, c, other: "SparseVector") -> "SparseVector":
        """Return ``self + c * other``."""
        return self._combine(other, c)

    def __mul__(self, c):
        if isinstance(c, SparseVector):
            return NotImplemented
        field = self.field.join(field_of(c))
        if c == 0:
            return SparseVector._raw({}, field)
        out = {k: v * c for k, v in self._entries.items()}
        if field is Field.COMPLEX:
            out = {k: complex(v) for k, v in out.items()}
        return SparseVector._raw(out, field)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def dot(self, other: "SparseVector"):
        """Bilinear pairing (no conjugation): a functional applied to a vector."""
        a, b = self._entries, other._entries
        if len(a) > len(b):
            a, b = b, a
        total = 0
        for k, v in a.items():
            w = b.get(k)
            if w is not None:
                total += v * w
        return total

    def __eq__(self, other):
        if not isinstance(other, SparseVector):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self):
        return hash(tuple(self._entries.items()))

    def __repr__(self):
        if not self._entries:
            return "0"
        return " + ".join(f"{v}*e{k}" for k, v in self._entries.items())


@dataclass(frozen=True)
class TailRule:
    """The infinite part ``sum_{k>=0} sum_g coeff(g) * shift(g, offset + k*period)``."""

    offset: int
    period: int
    generators: tuple[tuple[MultiIndex, object], ...]
    window: int

    def __post_init__(self):
        if self.offset < 0 or self.period < 1:
            raise InputError("tail needs offset >= 0 and period >= 1")
        if not self.generators:
            raise InputError("tail needs at least one generator")
        for mono, _ in self.generators:
            if not mono or mono[-1][0] > self.window:
                raise InputError(f"tail generator {mono!r} outside window {self.window}")

    @property
    def min_support(self) -> int:
        return min(mono[0][0] for mono, _ in self.generators)

    def shifts_upto(self, n: int):
        s = self.offset
        lo = self.min_support
        while s + lo <= n:
            yield s
            s += self.period

    def terms_upto(self, n: int):
        for s in self.shifts_upto(n):
            for mono, c in self.generators:
                if s + mono[0][0] <= n:
                    yield mono.shift(s), c

    def shifts_touching(self, indices: Iterable[int]) -> list[int]:
        out = set()
        for mono, _ in self.generators:
            for var, _ in mono:
                for i in indices:
                    s = i - var
                    if s >= self.offset and (s - self.offset) % self.period == 0:
                        out.add(s)
        return sorted(out)


class HomPoly:
    """An m-homogeneous polynomial.

    ``functionals``, when present, lists linear functionals that P is a
    polynomial in; P and everything derived from it vanish on their common
    kernel. ``provenance`` records the fixed vectors of a derived polynomial.
    """

    __slots__ = ("degree", "field", "terms", "tail", "functionals", "provenance")

    def __init__(
        self,
        degree: int,
        terms: Mapping | Iterable = (),
        field: Field = Field.RATIONAL,
        tail: TailRule | None = None,
        functionals: Sequence[SparseVector] | None = None,
        provenance=None,
    ):
        if degree < 0:
            raise InputError("degree must be nonnegative")
        if isinstance(terms, Mapping):
            terms = terms.items()
        acc: dict[MultiIndex, object] = {}
        for mono, c in terms:
            if not isinstance(mono, MultiIndex):
                mono = MultiIndex(mono)
            if mono.degree != degree:
                raise InputError(f"monomial {mono!r} has degree {mono.degree}, expected {degree}")
            field = field.join(field_of(c)) if is_exact_value(c) else Field.COMPLEX
            acc[mono] = acc.get(mono, 0) + c
        if tail is not None:
            for mono, c in tail.generators:
                if mono.degree != degree:
                    raise InputError(f"tail generator {mono!r} has wrong degree")
                if not is_exact_value(c):
                    field = Field.COMPLEX
                else:
                    field = field.join(field_of(c))
            top = max((m[-1][0] for m in acc if m), default=0)
            if tail.offset < top:
                raise InputError("tail offset must be at least the largest finite-part index")
            tail = TailRule(tail.offset, tail.period,
                            tuple((mono, field.coerce(c)) for mono, c in tail.generators), tail.window)
        self.degree = degree
        self.field = field
        self.terms = {k: field.coerce(v) for k, v in sorted(acc.items()) if v != 0}
        self.tail = tail
        self.functionals = tuple(functionals) if functionals is not None else None
        self.provenance = provenance

    @classmethod
    def _raw(cls, degree, terms: dict, field, functionals=None, provenance=None) -> "HomPoly":
        out = object.__new__(cls)
        out.degree = degree
        out.field = field
        if field is Field.COMPLEX:
            out.terms = {k: complex(v) for k, v in sorted(terms.items()) if v != 0}
        else:
            out.terms = {k: v for k, v in sorted(terms.items()) if v != 0}
        out.tail = None
        out.functionals = functionals
        out.provenance = provenance
        return out

    @classmethod
    def constant(cls, value, field: Field = Field.RATIONAL) -> "HomPoly":
        return cls(0, {_ONE: value}, field)

    def is_zero(self) -> bool:
        return not self.terms and self.tail is None

    @property
    def value(self):
        """The constant of a degree-0 polynomial."""
        if self.degree != 0:
            raise ArityMismatch("only degree-0 polynomials have a constant value")
        return self.terms.get(_ONE, self.field.zero())

    def support(self) -> tuple[int, ...]:
        if self.tail is not None:
            raise InputError("a tail polynomial has infinite support")
        return tuple(sorted({v for mono in self.terms for v, _ in mono}))

    def as_functional(self) -> SparseVector:
        if self.degree != 1 or self.tail is not None:
            raise ArityMismatch("only finite degree-1 polynomials are functionals")
        return SparseVector._raw({mono[0][0]: c for mono, c in self.terms.items()}, self.field)

    def materialize(self, n: int) -> "HomPoly":
        """The finite polynomial agreeing with self on vectors supported in [1..n]."""
        if self.tail is None:
            return self
        acc = dict(self.terms)
        for mono, c in self.tail.terms_upto(n):
            acc[mono] = acc.get(mono, 0) + c
        return HomPoly._raw(self.degree, acc, self.field, self.functionals)

    def norm1(self, n: int | None = None) -> float:
        poly = self.materialize(n) if self.tail is not None else self
        return sum(magnitude(c) for c in poly.terms.values())

    def scaled(self, c) -> "HomPoly":
        field = self.field.join(field_of(c))
        if self.tail is not None:
            tail = TailRule(self.tail.offset, self.tail.period,
                            tuple((m, v * c) for m, v in self.tail.generators), self.tail.window)
            return HomPoly(self.degree, {m: v * c for m, v in self.terms.items()}, field, tail,
                           self.functionals, self.provenance)
        return HomPoly._raw(self.degree, {m: v * c for m, v in self.terms.items()}, field,
                            self.functionals, self.provenance)

    def __add__(self, other):
        if not isinstance(other, HomPoly):
            return NotImplemented
        if self.degree != other.degree:
            raise ArityMismatch("cannot add polynomials of different degrees")
        if self.tail is not None and other.tail is not None:
            raise InputError("cannot add two tail polynomials")
        acc = dict(self.terms)
        for m, v in other.terms.items():
            acc[m] = acc.get(m, 0) + v
        return HomPoly(self.degree, acc, self.field.join(other.field), self.tail or other.tail)

    def __neg__(self):
        return self.scaled(-1)

    def __sub__(self, other):
        if not isinstance(other, HomPoly):
            return NotImplemented
        return self + (-other)

    def __call__(self, x: SparseVector):
        return evaluate(self, x)

    def __eq__(self, other):
        if not isinstance(other, HomPoly):
            return NotImplemented
        return self.degree == other.degree and self.terms == other.terms and self.tail == other.tail

    def __hash__(self):
        return hash((self.degree, tuple(self.terms.items())))

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = [f"{c}*{m!r}" for m, c in self.terms.items()]
        if self.tail is not None:
            gens = " + ".join(f"{c}*{m!r}" for m, c in self.tail.generators)
            parts.append(f"shifts[{self.tail.offset}+{self.tail.period}k]({gens})")
        return " + ".join(parts)


_TERM_RE = re.compile(
    r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)?(i)?\s*\*?\s*)?((?:x\d+(?:\^\d+)?\s*\*?\s*)*)"
)


def parse_hompoly(text: str, field: Field = Field.RATIONAL) -> HomPoly:
    """Parse a small textual form such as ``"x1^2 - 3/2*x1*x3 + 2i*x2^2"``."""
    terms = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or m.end() == pos:
            raise InputError(f"cannot parse polynomial near {text[pos:]!r}")
        sign, num, imag, body = m.groups()
        pos = m.end()
        c = Fraction(num) if num else Fraction(1)
        if imag:
            c = gauss(0, c)
        if sign == "-":
            c = -c
        mono = MultiIndex(
            (int(v), int(e) if e else 1) for v, e in re.findall(r"x(\d+)(?:\^(\d+))?", body or "")
        )
        terms.append((mono, c))
    if not terms:
        raise InputError("empty polynomial")
    degree = terms[0][0].degree
    return HomPoly(degree, _sum_terms(terms), field)


def _sum_terms(terms):
    acc = {}
    for mono, c in terms:
        acc[mono] = acc.get(mono, 0) + c
    return acc


# -- operations -----------------------------------------------------------------

def evaluate(P: HomPoly, x: SparseVector):
    """P(x), including every tail shift that can meet the support of x."""
    field = _check_fields(P.field, x.field)
    e = x._entries
    total = field.zero()
    terms = P.terms.items()
    if P.tail is not None:
        terms = list(terms) + list(P.tail.terms_upto(x.max_index))
    for mono, c in terms:
        val = c
        for var, exp in mono:
            xv = e.get(var)
            if xv is None:
                break
            val = val * (xv if exp == 1 else xv**exp)
        else:
            total = total + val
    return total


def _diff_term(mono: MultiIndex, c, v: dict, acc: dict):
    for pos, (var, exp) in enumerate(mono):
        vv = v.get(var)
        if vv is None:
            continue
        if exp == 1:
            lower = mono[:pos] + mono[pos + 1:]
        else:
            lower = mono[:pos] + ((var, exp - 1),) + mono[pos + 1:]
        lower = _mi(lower)
        acc[lower] = acc.get(lower, 0) + c * exp * vv


def directional_derivative(P: HomPoly, v: SparseVector) -> HomPoly:
    """D_v P, a finite polynomial of degree m - 1.

    For tail polynomials only the shifts touching supp(v) survive.
    """
    if P.degree < 1:
        raise ArityMismatch("cannot differentiate a constant")
    field = _check_fields(P.field, v.field)
    ve = v._entries
    acc: dict = {}
    for mono, c in P.terms.items():
        _diff_term(mono, c, ve, acc)
    if P.tail is not None:
        for s in P.tail.shifts_touching(ve):
            for mono, c in P.tail.generators:
                _diff_term(mono.shift(s), c, ve, acc)
    return HomPoly._raw(P.degree - 1, acc, field, P.functionals)


def derived_poly(P: HomPoly, fixed: Sequence[tuple[SparseVector, int]], t: int) -> HomPoly:
    """Q(x) = P^(v1^b1, ..., vr^br, x^t), a t-homogeneous polynomial.

    With t == 0 the result is a constant polynomial; read it with ``.value``.
    """
    m = P.degree
    if t < 0 or any(beta < 1 for _, beta in fixed) or sum(b for _, b in fixed) + t != m:
        raise ArityMismatch(f"multiplicities {[b for _, b in fixed]} plus t={t} do not add up to {m}")
    Q = P
    for v, beta in fixed:
        for _ in range(beta):
            Q = directional_derivative(Q, v)
    if fixed:
        Q = Q.scaled(Fraction(math.factorial(t), math.factorial(m)))
    else:
        Q = HomPoly(Q.degree, Q.terms, Q.field, Q.tail, Q.functionals)
    Q.provenance = tuple((v, beta) for v, beta in fixed)
    return Q


def full_polarization(P: HomPoly, args: Sequence[SparseVector]):
    """P^(x1, ..., xm) for m explicit arguments."""
    if len(args) != P.degree:
        raise ArityMismatch(f"expected {P.degree} arguments, got {len(args)}")
    groups: dict[SparseVector, int] = {}
    for a in args:
        groups[a] = groups.get(a, 0) + 1
    return derived_poly(P, list(groups.items()), 0).value


def restrict_to_span(P: HomPoly, basis: Sequence[SparseVector]) -> dict[MultiIndex, object]:
    """Coefficients of the polynomial c -> P(c1*b1 + ... + cq*bq).

    The coefficient of c^gamma is multinomial(m; gamma) * P^(b1^g1, ..., bq^gq),
    i.e. (D_b^gamma P) / gamma!. Derivatives are shared along common prefixes.
    Zero coefficients are omitted; keys use variables 1..q.
    """
    if not basis:
        raise EmptyBasis("restrict_to_span needs at least one basis vector")
    q = len(basis)
    table: dict[MultiIndex, object] = {}
    gamma = [0] * q

    def walk(Q: HomPoly, start: int):
        if Q.is_zero():
            return
        if Q.degree == 0:
            c = Q.value
            if c != 0:
                denom = math.prod(math.factorial(g) for g in gamma)
                table[_mi(tuple((i + 1, g) for i, g in enumerate(gamma) if g))] = c / denom if denom > 1 else c
            return
        for i in range(start, q):
            gamma[i] += 1
            walk(directional_derivative(Q, basis[i]), i)
            gamma[i] -= 1

    walk(P, 0)
    return dict(sorted(table.items()))


@dataclass
class VanishingResult:
    holds: bool
    gamma: MultiIndex | None = None
    coefficient: object = None
    exact: bool = True

    def __bool__(self):
        return self.holds


def coefficient_scale(P: HomPoly, basis: Sequence[SparseVector], gamma: MultiIndex) -> float:
    """Upper bound on |coefficient of c^gamma| used for relative tolerances."""
    n = max((b.max_index for b in basis), default=0)
    bound = P.norm1(n) * math.factorial(P.degree)
    for i, g in gamma:
        bound *= basis[i - 1].norm_inf() ** g / math.factorial(g)
    return bound


def vanishes_on_span(P: HomPoly, basis: Sequence[SparseVector], tol: Tolerance = EXACT) -> VanishingResult:
    """Whether P is identically zero on span(basis); on failure, the offending coefficient."""
    table = restrict_to_span(P, basis)
    exact = P.field.exact and all(b.field.exact for b in basis)
    for gamma, c in table.items():
        if exact:
            if c != 0:
                return VanishingResult(False, gamma, c, True)
        elif not tol.negligible(c, coefficient_scale(P, basis, gamma)):
            return VanishingResult(False, gamma, c, False)
    return VanishingResult(True, exact=exact)


# -- multilinear and finite-type forms -------------------------------------------

class MultilinearForm:
    """A(x1, ..., xm) = sum over entries (j1..jm) -> c of c * x1[j1] * ... * xm[jm]."""

    __slots__ = ("arity", "entries", "field", "slot_dims")

    def __init__(self, arity: int, entries: Mapping, field: Field = Field.RATIONAL,
                 slot_dims: Sequence[int | None] | None = None):
        if arity < 1:
            raise ArityMismatch("arity must be positive")
        clean = {}
        for idx, c in entries.items():
            idx = tuple(int(j) for j in idx)
            if len(idx) != arity or min(idx) < 1:
                raise ArityMismatch(f"index tuple {idx} does not fit arity {arity}")
            field = field.join(field_of(c)) if is_exact_value(c) else Field.COMPLEX
            if c != 0:
                clean[idx] = c
        if slot_dims is None:
            slot_dims = [None] * arity
        slot_dims = list(slot_dims)
        if len(slot_dims) != arity:
            raise ArityMismatch("slot_dims must have one entry per slot")
        for idx in clean:
            for j, d in zip(idx, slot_dims):
                if d is not None and j > d:
                    raise InputError(f"index {j} exceeds the dimension {d} of its slot")
        self.arity = arity
        self.field = field
        self.entries = {k: field.coerce(v) for k, v in sorted(clean.items())}
        self.slot_dims = slot_dims

    def __call__(self, *args):
        return multilinear_eval(self, args)

    def slot_functionals(self, slot: int) -> list[tuple[tuple[int, ...], SparseVector]]:
        """For each index pattern of the other slots, the induced functional on ``slot``."""
        grouped: dict[tuple, dict] = {}
        for idx, c in self.entries.items():
            rest = idx[:slot] + idx[slot + 1:]
            row = grouped.setdefault(rest, {})
            row[idx[slot]] = row.get(idx[slot], 0) + c
        out = []
        for rest, row in sorted(grouped.items()):
            f = SparseVector(row, self.field)
            if not f.is_zero():
                out.append((rest, f))
        return out


def multilinear_eval(A: MultilinearForm, args: Sequence[SparseVector]):
    if len(args) != A.arity:
        raise ArityMismatch(f"expected {A.arity} arguments, got {len(args)}")
    field = A.field
    for a in args:
        field = _check_fields(A.field, a.field).join(field)
    total = field.zero()
    for idx, c in A.entries.items():
        val = c
        for j, a in zip(idx, args):
            xv = a.get(j)
            if xv is None:
                break
            val = val * xv
        else:
            total = total + val
    return total


class FiniteTypePoly:
    """P(x) = sum_j a_j * <phi_j, x>^m."""

    __slots__ = ("exponent", "terms", "field")

    def __init__(self, exponent: int, terms: Sequence[tuple[object, SparseVector]], field: Field = Field.RATIONAL):
        if exponent < 1:
            raise InputError("exponent must be positive")
        clean = []
        for a, phi in terms:
            field = field.join(field_of(a), phi.field) if is_exact_value(a) else Field.COMPLEX
            clean.append((a, phi))
        self.exponent = exponent
        self.field = field
        self.terms = tuple((field.coerce(a), phi) for a, phi in clean)

    def __call__(self, x: SparseVector):
        _check_fields(self.field, x.field)
        return sum((a * phi.dot(x) ** self.exponent for a, phi in self.terms), self.field.zero())

    def functionals(self) -> tuple[SparseVector, ...]:
        return tuple(phi for a, phi in self.terms if a != 0 and not phi.is_zero())


def _power_expansion(phi: SparseVector, m: int):
    """Yield (MultiIndex, coefficient) of <phi, x>^m by the multinomial theorem."""
    items = list(phi.items())
    k = len(items)

    def rec(i, left, pairs, coeff):
        if i == k - 1:
            var, c = items[i]
            full = pairs + ((var, left),) if left else pairs
            yield _mi(full), coeff * c**left / math.factorial(left)
            return
        var, c = items[i]
        for e in range(left, -1, -1):
            nxt = pairs + ((var, e),) if e else pairs
            yield from rec(i + 1, left - e, nxt, coeff * c**e / math.factorial(e))

    if not items:
        return
    for mono, c in rec(0, m, (), Fraction(math.factorial(m))):
        yield mono, c


def finite_type_to_hompoly(F: FiniteTypePoly) -> HomPoly:
    acc: dict = {}
    for a, phi in F.terms:
        if a == 0:
            continue
        for mono, c in _power_expansion(phi, F.exponent):
            acc[mono] = acc.get(mono, 0) + a * c
    return HomPoly(F.exponent, acc, F.field, functionals=F.functionals())


def finite_type_functionals(P: HomPoly) -> tuple[SparseVector, ...] | None:
    """Functionals whose common kernel kills P and every polynomial derived from it.

    A recorded finite-type representation is preferred; otherwise a finite
    polynomial is a polynomial in its own coordinate functionals. Tail
    polynomials have no such finite description and give ``None``.
    """
    if P.functionals is not None:
        return P.functionals
    if P.tail is not None:
        return None
    return tuple(SparseVector.basis(j, P.field) for j in P.support())
