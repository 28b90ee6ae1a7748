"""Independent re-checking of certificates.

Checks run in a fixed order and every failure is reported; the first one
names the verdict:

    seed -> rank -> vanishes_on_span -> witness -> checks -> membership
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field

from .certificate import Certificate, node_from_json
from .errors import LineableError
from .polynomials import (
    HomPoly,
    SparseVector,
    evaluate,
    multilinear_eval,
    vanishes_on_span,
)
from .scalars import Field, Tolerance, magnitude, scalar_from_json
from .serial import unipoly_from_json, vector_from_json
from .spaces import exact_rank, exclusion_coordinate, membership_failures
from .zerofind import binary_slice, value_scale

CHECK_ORDER = ("seed", "rank", "vanishes_on_span", "witness", "checks", "membership")
METHODS = ("direct", "slice", "approx-slice", "kernel")
NODE_KINDS = ("full", "kernel", "exclude", "refine", "vanishing")


@dataclass
class VerifyReport:
    failures: list[tuple[str, str]] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def name(self) -> str | None:
        return self.failures[0][0] if self.failures else None

    @property
    def names(self) -> list[str]:
        return [n for n, _ in self.failures]

    def fail(self, name: str, message: str):
        self.failures.append((name, message))

    def to_json(self):
        return {"ok": self.ok, "failed": self.name, "failures": [{"check": n, "message": m} for n, m in self.failures]}


def _small(value, tol: Tolerance, scale: float) -> bool:
    if value == 0:
        return True
    return not tol.exact and magnitude(value) <= tol.epsilon * max(scale, 1.0)


def _vectors_close(a: SparseVector, b: SparseVector, tol: Tolerance) -> bool:
    if tol.exact:
        return a == b
    d = a - b
    return d.norm_inf() <= tol.epsilon * max(a.norm_inf(), b.norm_inf(), 1.0)


def verify_certificate(cert: Certificate) -> VerifyReport:
    report = VerifyReport()
    checkers = (_check_seed, _check_rank, _check_vanishing, _check_witnesses, _check_checks, _check_membership)
    tol = Tolerance(cert.epsilon)
    for checker in checkers:
        try:
            checker(cert, tol, report)
        except (LineableError, KeyError, TypeError, ValueError, IndexError, ZeroDivisionError) as exc:
            name = checker.__name__.replace("_check_", "")
            name = {"vanishing": "vanishes_on_span", "witnesses": "witness"}.get(name, name)
            report.fail(name, f"could not evaluate: {exc!r}")
    report.failures.sort(key=lambda f: CHECK_ORDER.index(f[0]))
    return report


def _check_seed(cert, tol, report):
    seed = cert.seed
    if any(v.is_zero() for v in seed) or exact_rank(seed) != len(seed):
        report.fail("seed", "seed basis is not independent")
        return
    if cert.exact and not all(v.exact for v in cert.basis):
        report.fail("seed", "certificate is flagged exact but holds approximate vectors")
    for idx, P in enumerate(cert.polynomials):
        if seed and not vanishes_on_span(P, seed, tol):
            report.fail("seed", f"polynomial {idx} does not vanish on the seed span")


def _check_rank(cert, tol, report):
    basis = cert.basis
    r = exact_rank(basis)
    if r != len(basis):
        report.fail("rank", f"rank {r} but {len(basis)} basis vectors")


def _check_vanishing(cert, tol, report):
    basis = cert.basis
    if cert.form is not None:
        A = cert.form
        for tup in itertools.product(cert.produced, repeat=A.arity):
            val = multilinear_eval(A, list(tup))
            scale = sum(magnitude(c) for c in A.entries.values()) * max(v.norm_inf() for v in tup) ** A.arity
            if not _small(val, tol, scale):
                report.fail("vanishes_on_span", f"form is {val} on a tuple of produced vectors")
                return
        return
    policy = cert.verification.get("policy", "full")
    for idx, P in enumerate(cert.polynomials):
        if policy == "full":
            res = vanishes_on_span(P, basis, tol)
            if not res:
                report.fail("vanishes_on_span",
                            f"polynomial {idx}: coefficient {res.coefficient} at {res.gamma!r}")
        else:
            rng = random.Random(cert.verification.get("sample_seed", 0))
            for _ in range(int(cert.verification.get("sample_count", 100))):
                x = SparseVector({}, Field.RATIONAL)
                for b in basis:
                    x = x.axpy(rng.randint(-9, 9), b)
                if x.is_zero():
                    continue
                val = evaluate(P, x)
                if not _small(val, tol, value_scale(P, x)):
                    report.fail("vanishes_on_span", f"polynomial {idx} is {val} at a sampled point")
                    break


def _check_witnesses(cert, tol, report):
    ws = cert.zero_witnesses
    if len(ws) != len(cert.produced):
        report.fail("witness", f"{len(ws)} witnesses for {len(cert.produced)} produced vectors")
        return
    P = cert.polynomials[-1] if cert.polynomials else None
    for k, (w, y) in enumerate(zip(ws, cert.produced), start=1):
        if w.get("step") != k:
            report.fail("witness", f"witness {k} has step {w.get('step')}")
            continue
        recorded = vector_from_json(w["vector"])
        if not _vectors_close(recorded, y, tol):
            report.fail("witness", f"produced vector {k} differs from its witness record")
            continue
        if w.get("method") not in METHODS or (cert.exact and w["method"] == "approx-slice"):
            report.fail("witness", f"witness {k} has method {w.get('method')!r}")
            continue
        if cert.exact and not w.get("exact", False):
            report.fail("witness", f"witness {k} is approximate in an exact certificate")
        if P is None:
            continue
        val = evaluate(P, y)
        if not _small(val, tol, value_scale(P, y)):
            report.fail("witness", f"P(y{k}) = {val}")
            continue
        if w["method"] in ("slice", "approx-slice"):
            u, v = vector_from_json(w["u"]), vector_from_json(w["v"])
            field = Field.COMPLEX if w["method"] == "approx-slice" else Field.GAUSSIAN
            root = scalar_from_json(w["root"], field)
            if not _vectors_close(u.axpy(root, v), y, tol):
                report.fail("witness", f"y{k} is not u + t*v for the recorded root")
                continue
            stored = unipoly_from_json(w["slice"])
            fresh = binary_slice(P, u, v).slice
            if tol.exact:
                if stored != fresh or fresh(root) != 0:
                    report.fail("witness", f"slice record of y{k} does not replay")
            else:
                scale = max(fresh.scale(), 1.0)
                coeffs = itertools.zip_longest(stored.coeffs, fresh.coeffs, fillvalue=0)
                if any(magnitude(a - b) > tol.epsilon * scale for a, b in coeffs):
                    report.fail("witness", f"slice record of y{k} does not replay")


def _family_keys(P: HomPoly, seed, witnesses):
    from .builder import enumerate_derived

    return [(k, q) for k, q in enumerate_derived(P, seed, witnesses)]


def _check_checks(cert, tol, report):
    recorded = {}
    prefix = "z" if cert.form is not None else "y"
    for c in cert.checks:
        if c.get("on") != f"{prefix}{c['step']}":
            report.fail("checks", f"check at step {c['step']} names vector {c.get('on')!r}")
            return
        if cert.form is not None:
            key = (c["step"], tuple(c["tau"]))
        else:
            key = (c["step"], c["t"], tuple(c["seed"]), tuple(c["alpha"]))
        recorded[key] = c
    if cert.form is not None:
        rows = cert.form.slot_functionals(cert.slot)
        for k, z in enumerate(cert.produced, start=1):
            for tau, f in rows:
                if (k, tuple(tau)) not in recorded:
                    report.fail("checks", f"missing check for z{k} and index pattern {tau}")
                    return
                val = f.dot(z)
                if not _small(val, tol, f.norm1() * z.norm_inf()):
                    report.fail("checks", f"functional for {tau} does not vanish on z{k}")
                    return
                if not _record_matches(recorded[(k, tuple(tau))], val, tol):
                    report.fail("checks", f"recorded value for z{k} and {tau} does not replay")
                    return
        if len(recorded) != len(cert.checks) or len(recorded) != len(rows) * len(cert.produced):
            report.fail("checks", "unexpected or duplicated check entries")
        return
    P = cert.polynomials[-1]
    expected = 0
    for k, y in enumerate(cert.produced, start=1):
        for key, q in _family_keys(P, cert.seed, cert.produced[: k - 1]):
            expected += 1
            rkey = (k, key.t, key.seed, key.alpha)
            if rkey not in recorded:
                report.fail("checks", f"missing check at step {k} for {key.to_json()}")
                return
            val = evaluate(q, y)
            if not _small(val, tol, value_scale(q, y)):
                report.fail("checks", f"derived polynomial {key.to_json()} is {val} at y{k}")
                return
            entry = recorded[rkey]
            if not _record_matches(entry, val, tol) or entry.get("poly_index") != len(cert.polynomials) - 1:
                report.fail("checks", f"recorded check at step {k} for {key.to_json()} does not replay")
                return
    if expected != len(cert.checks) or len(recorded) != len(cert.checks):
        report.fail("checks", f"expected {expected} checks, certificate lists {len(cert.checks)}")


def _record_matches(c: dict, val, tol: Tolerance) -> bool:
    if c.get("outcome") != ("zero" if val == 0 else "within_tolerance"):
        return False
    field = Field.GAUSSIAN if tol.exact else Field.COMPLEX
    stored = scalar_from_json(c["value"], field)
    if tol.exact:
        return stored == val
    return magnitude(stored - val) <= tol.epsilon * max(magnitude(val), 1.0)


def _check_membership(cert, tol, report):
    nodes = node_from_json(cert.provenance)
    for i, node in nodes.items():
        if node.kind not in NODE_KINDS:
            report.fail("membership", f"provenance node {i} has unknown kind {node.kind!r}")
            return
        if node.kind == "exclude" and node.functionals != (SparseVector.basis(node.coordinate),):
            report.fail("membership", f"exclusion node {i} does not use coordinate {node.coordinate}")
            return
    for k, (w, y) in enumerate(zip(cert.zero_witnesses, cert.produced), start=1):
        node = nodes.get(w.get("node"))
        if node is None:
            report.fail("membership", f"witness {k} refers to unknown node {w.get('node')}")
            continue
        points = [("y", y)]
        if "u" in w:
            points += [("u", vector_from_json(w["u"])), ("v", vector_from_json(w["v"]))]
        for label, p in points:
            bad = next(iter(membership_failures(node, p, tol.epsilon)), None)
            if bad is not None:
                report.fail("membership", f"{label} of step {k} violates a {bad[0].kind} condition")
                break
        if k >= 2 and cert.form is None:
            # chain discipline: step k works inside a subspace that excludes y_(k-1)
            j = exclusion_coordinate(cert.produced[k - 2])
            if not any(n.kind == "exclude" and n.coordinate == j for n in node.ancestors()):
                report.fail("membership", f"step {k} does not exclude y{k - 1} through coordinate {j}")
