"""Deterministic random fixtures for tests and the acceptance campaign."""

from __future__ import annotations

import random
from fractions import Fraction

from .errors import UnknownKind
from .polynomials import (
    FiniteTypePoly,
    HomPoly,
    MultiIndex,
    MultilinearForm,
    SparseVector,
    TailRule,
)
from .scalars import Field, gauss

KINDS = ("complex-sparse", "seeded", "finite-type-real", "positive-definite-real-tail", "multilinear")


def _gaussian_int(rng: random.Random, bound: int = 3):
    while True:
        z = gauss(rng.randint(-bound, bound), rng.randint(-bound, bound))
        if z != 0:
            return z


def _monomial(rng: random.Random, m: int, variables: list[int]) -> MultiIndex:
    return MultiIndex((rng.choice(variables), 1) for _ in range(m))


def complex_sparse(m: int = 2, nvars: int = 4, rng: int = 0, terms: int | None = None) -> HomPoly:
    """A few Gaussian-integer monomials in x1..x_nvars."""
    r = random.Random(rng)
    terms = terms or r.randint(2, max(2, nvars))
    acc = {}
    for _ in range(terms):
        mono = _monomial(r, m, list(range(1, nvars + 1)))
        acc[mono] = acc.get(mono, 0) + _gaussian_int(r)
    P = HomPoly(m, acc, Field.GAUSSIAN)
    return P if not P.is_zero() else complex_sparse(m, nvars, rng + 7919, terms)


def seeded(n: int = 1, m: int = 2, nvars: int = 6, rng: int = 0, terms: int | None = None) -> HomPoly:
    """Gaussian polynomial vanishing on span{e1..en}: every monomial meets an index above n.

    Each variable above n carries a pure power with coefficient u * (+-k^m),
    u in {1, i} fixed per fixture, so P(e_j) != 0 there and slices between
    two such variables have roots in Q(i). ``terms`` extra mixed monomials
    (default 0-2) make the derived polynomials nontrivial.
    """
    if nvars <= n:
        raise ValueError("need more variables than seed vectors")
    r = random.Random(rng)
    unit = r.choice([Fraction(1), gauss(0, 1)])
    acc = {}
    for j in range(n + 1, nvars + 1):
        acc[MultiIndex({j: m})] = unit * r.choice([1, -1]) * r.randint(1, 2) ** m
    extra = r.randint(0, 2) if terms is None else terms
    every = list(range(1, nvars + 1))
    for _ in range(extra):
        mono = MultiIndex([(r.randint(n + 1, nvars), 1)] + [(r.choice(every), 1) for _ in range(m - 1)])
        acc[mono] = acc.get(mono, 0) + _gaussian_int(r, 2)
    P = HomPoly(m, acc, Field.GAUSSIAN)
    return P if not P.is_zero() else seeded(n, m, nvars, rng + 7919, terms)


def seed_basis(n: int) -> list[SparseVector]:
    return [SparseVector.basis(j) for j in range(1, n + 1)]


def finite_type_real(k: int = 3, m: int = 2, nvars: int = 5, rng: int = 0) -> FiniteTypePoly:
    """sum_j a_j <phi_j, x>^m with small rational data."""
    r = random.Random(rng)
    terms = []
    for _ in range(k):
        a = Fraction(r.choice([-3, -2, -1, 1, 2, 3]), r.randint(1, 3))
        support = r.sample(range(1, nvars + 1), r.randint(1, min(3, nvars)))
        phi = SparseVector({j: Fraction(r.choice([-2, -1, 1, 2, 3]), r.randint(1, 2)) for j in support})
        terms.append((a, phi))
    return FiniteTypePoly(m, terms, Field.RATIONAL)


def positive_definite_tail(field: Field = Field.RATIONAL) -> HomPoly:
    """x1^2 + x2^2 + x3^2 + ... as a shift-periodic tail."""
    return HomPoly(2, {}, field, TailRule(0, 1, ((MultiIndex({1: 2}), Fraction(1)),), 1))


def multilinear(m: int = 2, nvars: int = 4, rng: int = 0, terms: int | None = None) -> MultilinearForm:
    r = random.Random(rng)
    terms = terms or r.randint(1, 2 * nvars)
    entries = {}
    for _ in range(terms):
        idx = tuple(r.randint(1, nvars) for _ in range(m))
        entries[idx] = entries.get(idx, 0) + Fraction(r.choice([-3, -2, -1, 1, 2, 3]))
    entries = {k: v for k, v in entries.items() if v}
    return MultilinearForm(m, entries, Field.RATIONAL)


def generate(kind: str, n: int = 1, m: int = 2, nvars: int = 6, rng: int = 0, terms: int | None = None):
    """Dispatch by kind name; returns (form, seed basis). ``terms`` is k for finite-type forms."""
    if kind == "complex-sparse":
        return complex_sparse(m, nvars, rng, terms), []
    if kind == "seeded":
        return seeded(n, m, nvars, rng, terms), seed_basis(n)
    if kind == "finite-type-real":
        return finite_type_real(terms or 3, m, nvars, rng), []
    if kind == "positive-definite-real-tail":
        return positive_definite_tail(), []
    if kind == "multilinear":
        return multilinear(m, nvars, rng, terms), []
    raise UnknownKind(f"unknown fixture kind {kind!r}; choose from {', '.join(KINDS)}")
