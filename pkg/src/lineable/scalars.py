"""Scalar fields and univariate root finding.

Three backends are supported. The exact ones use Python's own rationals:
``Fraction`` for Q and :class:`GaussianRational` for Q(i). The approximate
one uses built-in ``complex``. Values are plain Python numbers, so the usual
operators work across them and anything touched by a float becomes a float.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

import numpy as np
from sympy import factorint
from sympy.ntheory import sqrt_mod

from .errors import (
    BackendMismatch,
    FieldMismatch,
    NoConvergence,
    ZeroDegree,
    ZeroPolynomial,
)

_ZERO = Fraction(0)

DIVISOR_BOUND = 10**6
ITERATION_BUDGET = 200


class GaussianRational:
    """An element ``re + im*i`` of Q(i) with ``Fraction`` parts.

    Build values through :func:`gauss`, which collapses a zero imaginary
    part to a plain ``Fraction``; arithmetic does the same.
    """

    __slots__ = ("_re", "_im")

    def __init__(self, re=0, im=0):
        self._re = re if type(re) is Fraction else Fraction(re)
        self._im = im if type(im) is Fraction else Fraction(im)

    @property
    def real(self) -> Fraction:
        return self._re

    @property
    def imag(self) -> Fraction:
        return self._im

    def conjugate(self):
        return gauss(self._re, -self._im)

    def norm(self) -> Fraction:
        return self._re * self._re + self._im * self._im

    def __repr__(self):
        return f"GaussianRational({self._re!s}, {self._im!s})"

    def __str__(self):
        sign = "-" if self._im < 0 else "+"
        return f"({self._re}{sign}{abs(self._im)}i)"

    def __complex__(self):
        return complex(float(self._re), float(self._im))

    def __abs__(self):
        return math.sqrt(float(self.norm()))

    def __bool__(self):
        return bool(self._re) or bool(self._im)

    def __hash__(self):
        if not self._im:
            return hash(self._re)
        return hash((self._re, self._im))

    def __eq__(self, other):
        parts = _parts(other)
        if parts is not None:
            return self._re == parts[0] and self._im == parts[1]
        if isinstance(other, (complex, float)):
            return complex(self) == other
        return NotImplemented

    def __neg__(self):
        return GaussianRational(-self._re, -self._im)

    def __pos__(self):
        return self

    def __add__(self, other):
        parts = _parts(other)
        if parts is None:
            if isinstance(other, (complex, float)):
                return complex(self) + other
            return NotImplemented
        return gauss(self._re + parts[0], self._im + parts[1])

    __radd__ = __add__

    def __sub__(self, other):
        parts = _parts(other)
        if parts is None:
            if isinstance(other, (complex, float)):
                return complex(self) - other
            return NotImplemented
        return gauss(self._re - parts[0], self._im - parts[1])

    def __rsub__(self, other):
        parts = _parts(other)
        if parts is None:
            if isinstance(other, (complex, float)):
                return other - complex(self)
            return NotImplemented
        return gauss(parts[0] - self._re, parts[1] - self._im)

    def __mul__(self, other):
        parts = _parts(other)
        if parts is None:
            if isinstance(other, (complex, float)):
                return complex(self) * other
            return NotImplemented
        c, d = parts
        a, b = self._re, self._im
        return gauss(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def _inverse(self):
        n = self.norm()
        return GaussianRational(self._re / n, -self._im / n)

    def __truediv__(self, other):
        parts = _parts(other)
        if parts is None:
            if isinstance(other, (complex, float)):
                return complex(self) / other
            return NotImplemented
        if not parts[1]:
            return gauss(self._re / parts[0], self._im / parts[0])
        return self * GaussianRational(*parts)._inverse()

    def __rtruediv__(self, other):
        parts = _parts(other)
        if parts is None:
            if isinstance(other, (complex, float)):
                return other / complex(self)
            return NotImplemented
        return gauss(*parts) * self._inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return complex(self) ** n
        base = self if n >= 0 else self._inverse()
        result = Fraction(1)
        for _ in range(abs(n)):
            result = result * base
        return result


def _parts(x):
    if type(x) is Fraction:
        return x, _ZERO
    if isinstance(x, GaussianRational):
        return x._re, x._im
    if isinstance(x, int):
        return Fraction(x), _ZERO
    if isinstance(x, Fraction):
        return x, _ZERO
    return None


def gauss(re, im=0):
    """Return ``re + im*i`` as a ``Fraction`` when real, else a GaussianRational."""
    if not im:
        return re if type(re) is Fraction else Fraction(re)
    return GaussianRational(re, im)


def is_exact_value(x) -> bool:
    return isinstance(x, (int, Fraction, GaussianRational))


class Field(enum.Enum):
    RATIONAL = "rational"
    GAUSSIAN = "gaussian_rational"
    COMPLEX = "complex64"

    @property
    def exact(self) -> bool:
        return self is not Field.COMPLEX

    @property
    def is_real(self) -> bool:
        return self is Field.RATIONAL

    @property
    def rank(self) -> int:
        return _FIELD_RANK[self]

    def join(self, *others: "Field") -> "Field":
        return max((self, *others), key=_FIELD_RANK.__getitem__)

    def coerce(self, value):
        """Convert ``value`` into this field's representation."""
        if self is Field.COMPLEX:
            return complex(value)
        if not is_exact_value(value):
            raise BackendMismatch(f"inexact value {value!r} in exact field {self.value}")
        if self is Field.RATIONAL:
            if value.imag:
                raise FieldMismatch(f"non-real value {value} in the rational field")
            return Fraction(value.real)
        return gauss(value.real, value.imag)

    def zero(self):
        return 0j if self is Field.COMPLEX else Fraction(0)

    def one(self):
        return 1 + 0j if self is Field.COMPLEX else Fraction(1)


_FIELD_RANK = {Field.RATIONAL: 0, Field.GAUSSIAN: 1, Field.COMPLEX: 2}


def field_of(value) -> Field:
    if isinstance(value, GaussianRational):
        return Field.RATIONAL if not value.imag else Field.GAUSSIAN
    if isinstance(value, (int, Fraction)):
        return Field.RATIONAL
    return Field.COMPLEX


@dataclass(frozen=True)
class Tolerance:
    """Relative residual bound; zero means every comparison is exact."""

    epsilon: float = 0.0

    def __post_init__(self):
        if not self.epsilon >= 0:
            raise ValueError("epsilon must be nonnegative")

    @property
    def exact(self) -> bool:
        return self.epsilon == 0

    def negligible(self, value, scale=1.0) -> bool:
        if is_exact_value(value):
            return value == 0
        return abs(value) <= self.epsilon * scale


EXACT = Tolerance(0.0)


def magnitude(value) -> float:
    return abs(complex(value)) if not isinstance(value, (int, Fraction)) else abs(float(value))


# -- serialization ------------------------------------------------------------

def _frac_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _parse_frac(text) -> Fraction:
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"expected 'num/den' string, got {text!r}")
    return Fraction(text)


def scalar_to_json(value):
    if is_exact_value(value):
        return {"re": _frac_str(Fraction(value.real)), "im": _frac_str(Fraction(value.imag))}
    value = complex(value)
    return {"re": value.real, "im": value.imag}


def scalar_from_json(data, field: Field):
    if isinstance(data, (int, str)):
        data = {"re": data, "im": "0/1"}
    if not isinstance(data, dict) or "re" not in data:
        raise ValueError(f"malformed scalar {data!r}")
    re, im = data["re"], data.get("im", 0)
    if field is Field.COMPLEX:
        if isinstance(re, str) or isinstance(im, str):
            return complex(float(_parse_frac(re)), float(_parse_frac(im)))
        return complex(float(re), float(im))
    if isinstance(re, float) or isinstance(im, float):
        raise BackendMismatch(f"decimal scalar {data!r} in exact field {field.value}")
    return field.coerce(gauss(_parse_frac(re), _parse_frac(im)))


# -- univariate polynomials ---------------------------------------------------

class UniPoly:
    """Dense univariate polynomial, coefficients indexed by power."""

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs, field: Field | None = None):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if field is None:
            field = Field.RATIONAL.join(*(field_of(c) for c in coeffs))
        self.coeffs = tuple(coeffs)
        self.field = field

    @property
    def degree(self) -> int:
        return max(len(self.coeffs) - 1, 0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __repr__(self):
        return f"UniPoly({list(self.coeffs)!r})"

    def scale(self) -> float:
        return max((magnitude(c) for c in self.coeffs), default=0.0)


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def exact_sqrt(q):
    """Square root of ``q`` inside Q(i), or ``None`` when there is none.

    Uses sqrt(a+bi) = x + yi with x = sqrt((|q|+a)/2), y = sign(b) sqrt((|q|-a)/2),
    which is exact precisely when |q| and both halves are rational squares.
    """
    if not is_exact_value(q):
        raise BackendMismatch("exact_sqrt needs an exact scalar")
    a, b = Fraction(q.real), Fraction(q.imag)
    if not b:
        if a >= 0:
            return _rational_sqrt(a)
        r = _rational_sqrt(-a)
        return None if r is None else gauss(0, r)
    modulus = _rational_sqrt(a * a + b * b)
    if modulus is None:
        return None
    x = _rational_sqrt((modulus + a) / 2)
    y = _rational_sqrt((modulus - a) / 2)
    if x is None or y is None:
        return None
    root = gauss(x, y if b > 0 else -y)
    assert root * root == q
    return root


def root_key(r):
    """Deterministic preference order on roots.

    Exact roots: smaller numerator norm, then smaller denominator, then the
    larger (re, im). Approximate roots: smaller modulus, then larger (re, im).
    """
    if is_exact_value(r):
        re, im = Fraction(r.real), Fraction(r.imag)
        den = re.denominator * im.denominator // math.gcd(re.denominator, im.denominator)
        a, b = re * den, im * den
        return (int(a * a + b * b), den * den, -re, -im)
    r = complex(r)
    return (abs(r), 0, -r.real, -r.imag)


def _deflate(coeffs, r):
    # synthetic division by (t - r); coeffs ascending
    d = len(coeffs) - 1
    out = [0] * d
    acc = coeffs[d]
    for k in range(d - 1, -1, -1):
        out[k] = acc
        acc = coeffs[k] + acc * r
    return out


def _quadratic_roots(coeffs):
    c, b, a = coeffs
    s = exact_sqrt(b * b - 4 * a * c)
    if s is None:
        return []
    return [(-b + s) / (2 * a), (-b - s) / (2 * a)]


def _divisors(n: int, bound: int) -> list[int]:
    n = abs(n)
    divs = [1]
    for p, e in factorint(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1) if d * p**k <= bound]
    return sorted(divs)


def _gi_mul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _gi_divmod(a, b):
    """Gaussian-integer division with rounded quotient."""
    n = b[0] * b[0] + b[1] * b[1]
    re = a[0] * b[0] + a[1] * b[1]
    im = a[1] * b[0] - a[0] * b[1]
    q = ((2 * re + n) // (2 * n), (2 * im + n) // (2 * n))
    qb = _gi_mul(q, b)
    return q, (a[0] - qb[0], a[1] - qb[1])


def _gi_gcd(a, b):
    while b != (0, 0):
        a, b = b, _gi_divmod(a, b)[1]
    return a


def _gi_normalize(z):
    """The associate of z with x > 0 and y >= 0."""
    x, y = z
    for _ in range(4):
        if x > 0 and y >= 0:
            return (x, y)
        x, y = -y, x
    return (x, y)


def _gaussian_primes(z: tuple[int, int]) -> list[tuple[tuple[int, int], int]]:
    """Factor z over Z[i]; units are dropped."""
    a, b = z
    out = []
    for p, _ in sorted(factorint(a * a + b * b).items()):
        if p == 2:
            primes = [(1, 1)]
        elif p % 4 == 3:
            primes = [(p, 0)]
        else:
            pi = _gi_normalize(_gi_gcd((p, 0), (sqrt_mod(-1, p), 1)))
            primes = [pi, _gi_normalize((pi[0], -pi[1]))]
        for pi in primes:
            e = 0
            while True:
                q, r = _gi_divmod(z, pi)
                if r != (0, 0):
                    break
                z, e = q, e + 1
            if e:
                out.append((pi, e))
    return out


def _gaussian_divisors(z: tuple[int, int], bound: int) -> list[tuple[int, int]]:
    """Divisors of the Gaussian integer ``z``, one per associate class, with norm <= bound."""
    divs = [((1, 0), 1)]
    for pi, e in _gaussian_primes(z):
        npi = pi[0] * pi[0] + pi[1] * pi[1]
        grown = []
        for d, nd in divs:
            power, npow = (1, 0), 1
            for _ in range(e + 1):
                if nd * npow > bound:
                    break
                grown.append((_gi_mul(d, power), nd * npow))
                power, npow = _gi_mul(power, pi), npow * npi
        divs = grown
    return sorted({_gi_normalize(d) for d, _ in divs})


def _integral(coeffs):
    """Scale exact coefficients to Gaussian integers, returned as (re, im) int pairs."""
    dens = [Fraction(c.real).denominator for c in coeffs] + [Fraction(c.imag).denominator for c in coeffs]
    lcm = reduce(lambda x, y: x * y // math.gcd(x, y), dens, 1)
    return [(int(Fraction(c.real) * lcm), int(Fraction(c.imag) * lcm)) for c in coeffs]


_UNITS = (Fraction(1), Fraction(-1), GaussianRational(0, 1), GaussianRational(0, -1))


def _candidate_roots(coeffs, real: bool, bound: int, screen=None):
    """Rational-root-theorem candidates, optionally pre-screened on complex floats."""
    ints = _integral(coeffs)
    lead, const = ints[-1], ints[0]
    screen = screen or (lambda z: True)
    cands = set()
    if real:
        for n in _divisors(const[0], bound):
            for d in _divisors(lead[0], bound):
                for s in (1, -1):
                    if screen(complex(s * n / d)):
                        cands.add(Fraction(s * n, d))
    else:
        units = ((1, 0), (-1, 0), (0, 1), (0, -1))
        for n in _gaussian_divisors(const, bound):
            for d in _gaussian_divisors(lead, bound):
                base = complex(*n) / complex(*d)
                for u, (ur, ui) in zip(_UNITS, units):
                    if screen(base * complex(ur, ui)):
                        cands.add(gauss(*n) / gauss(*d) * u)
    return sorted(cands, key=root_key)


def find_exact_roots(p: UniPoly, divisor_bound: int = DIVISOR_BOUND) -> list:
    """Roots of ``p`` in its exact field that the bounded search can certify.

    Degree one and two are solved directly; higher degrees go through a
    rational-root style search over divisors of the constant and leading
    coefficients, deflating after each hit. Irrational algebraic roots are
    not found, so the result may be incomplete. Roots repeat with multiplicity.
    """
    if p.is_zero():
        raise ZeroPolynomial("cannot take roots of the zero polynomial")
    if not p.field.exact:
        raise BackendMismatch("find_exact_roots needs an exact backend")
    real = p.field.is_real
    coeffs = list(p.coeffs)
    roots = []
    while len(coeffs) > 1 and coeffs[0] == 0:
        roots.append(Fraction(0))
        coeffs.pop(0)
    while len(coeffs) > 1:
        d = len(coeffs) - 1
        if d == 1:
            roots.append(-coeffs[0] / coeffs[1])
            break
        if d == 2:
            roots.extend(_quadratic_roots(coeffs))
            break
        hit = None
        current = UniPoly(coeffs)
        approx = UniPoly([complex(c) for c in coeffs])
        lead = magnitude(coeffs[-1])
        cauchy = 1 + max(magnitude(c) for c in coeffs[:-1]) / lead
        size = max(magnitude(c) for c in coeffs)
        def screen(z, d=d):
            return abs(z) <= cauchy and abs(approx(z)) <= 1e-6 * size * (1 + abs(z)) ** d

        for cand in _candidate_roots(coeffs, real, divisor_bound, screen):
            if current(cand) == 0:
                hit = cand
                break
        if hit is None:
            break
        roots.append(hit)
        coeffs = _deflate(coeffs, hit)
    if real:
        roots = [r for r in roots if not r.imag]
    return [r for r in roots if p(r) == 0]


def find_approx_roots(p: UniPoly, tol: Tolerance, max_iter: int = ITERATION_BUDGET) -> list[complex]:
    """All roots of ``p`` by Aberth-Ehrlich simultaneous iteration.

    Starts from a fixed rotated circle, so the output is deterministic. Each
    returned root satisfies ``|p(r)| <= eps * max|c| * (1 + |r|)**d``.
    """
    if p.is_zero():
        raise ZeroPolynomial("cannot take roots of the zero polynomial")
    d = p.degree
    if d == 0:
        raise ZeroDegree("a nonzero constant has no roots")
    if tol.exact:
        raise BackendMismatch("approximate roots need a positive tolerance")
    c = np.array([complex(x) for x in p.coeffs])
    monic = c / c[-1]
    radius = 1.0 + float(np.max(np.abs(monic[:-1])))
    z = radius * np.exp(1j * (2 * np.pi * np.arange(d) / d + 0.4))
    desc = monic[::-1]
    ddesc = np.polyder(desc) if d > 1 else np.array([1.0 + 0j])
    for _ in range(max_iter):
        pz = np.polyval(desc, z)
        dpz = np.polyval(ddesc, z)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        sums = inv.sum(axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(dpz != 0, pz / dpz, pz)
            step = ratio / (1.0 - ratio * sums)
        step = np.where(np.isfinite(step), step, 0.0)
        z = z - step
        if np.all(np.abs(step) <= 4e-16 * np.maximum(1.0, np.abs(z))):
            break
    scale = float(np.max(np.abs(c)))
    roots = [complex(r) for r in z]
    for r in roots:
        resid = abs(p(r))
        if not resid <= tol.epsilon * scale * (1 + abs(r)) ** d:
            raise NoConvergence(f"root {r} has residual {resid:.3e} after {max_iter} iterations")
    return sorted(roots, key=root_key)
