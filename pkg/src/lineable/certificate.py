"""Certificates: what was built, how, and what a verifier should re-check."""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

from .errors import InputError, VerificationFailure
from .polynomials import MultilinearForm, SparseVector
from .scalars import scalar_to_json
from .serial import (
    form_from_json,
    form_to_json,
    poly_from_json,
    unipoly_to_json,
    vector_from_json,
    vector_to_json,
)
from .spaces import Node

FORMAT_VERSION = 1


def table_size(basis_len: int, degree: int) -> int:
    """Number of coefficients of a degree-m form in basis_len variables."""
    return math.comb(basis_len + degree - 1, degree)


@dataclass
class Certificate:
    kind: str  # zero_space | intersection | through_point | multilinear
    polynomials: list = dc_field(default_factory=list)
    form: MultilinearForm | None = None
    slot: int | None = None
    seed: list = dc_field(default_factory=list)
    produced: list = dc_field(default_factory=list)
    zero_witnesses: list = dc_field(default_factory=list)
    checks: list = dc_field(default_factory=list)
    exact: bool = True
    provenance: list = dc_field(default_factory=list)
    verification: dict = dc_field(default_factory=dict)
    config: dict = dc_field(default_factory=dict)

    @property
    def basis(self) -> list[SparseVector]:
        return list(self.seed) + list(self.produced)

    @property
    def epsilon(self) -> float:
        return 0.0 if self.exact else float(self.verification.get("epsilon", 1e-9))

    def to_json(self) -> dict:
        out = {
            "format": FORMAT_VERSION,
            "kind": self.kind,
            "seed": [vector_to_json(v) for v in self.seed],
            "produced": [vector_to_json(v) for v in self.produced],
            "zero_witnesses": self.zero_witnesses,
            "checks": self.checks,
            "exact": self.exact,
            "provenance": self.provenance,
            "verification": self.verification,
            "config": self.config,
        }
        if self.form is not None:
            out["form"] = form_to_json(self.form)
            out["slot"] = self.slot
        else:
            out["polynomials"] = [form_to_json(P) for P in self.polynomials]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Certificate":
        try:
            form = None
            polys = []
            if "form" in data:
                form = form_from_json(data["form"])
            else:
                polys = [poly_from_json(p) for p in data["polynomials"]]
            return cls(
                kind=data["kind"],
                polynomials=polys,
                form=form,
                slot=data.get("slot"),
                seed=[vector_from_json(v) for v in data["seed"]],
                produced=[vector_from_json(v) for v in data["produced"]],
                zero_witnesses=list(data["zero_witnesses"]),
                checks=list(data["checks"]),
                exact=bool(data["exact"]),
                provenance=list(data["provenance"]),
                verification=dict(data["verification"]),
                config=dict(data.get("config", {})),
            )
        except (KeyError, TypeError, AttributeError) as exc:
            raise InputError(f"malformed certificate: {exc!r}") from None


# -- provenance --------------------------------------------------------------------

def _node_json(node: Node, ids: dict) -> dict:
    out = {"id": ids[id(node)], "kind": node.kind,
           "parent": ids[id(node.parent)] if node.parent is not None else None}
    if node.label:
        out["label"] = node.label
    if node.functionals:
        out["functionals"] = [vector_to_json(f) for f in node.functionals]
    if node.coordinate is not None:
        out["coordinate"] = node.coordinate
    if node.poly is not None:
        out["poly"] = form_to_json(node.poly)
    if node.extra:
        out.update({k: v for k, v in node.extra.items() if k not in out})
    return out


def flatten_nodes(nodes) -> tuple[list[dict], dict]:
    """Number every ancestor of the given nodes, roots first, and serialize."""
    ids: dict[int, int] = {}
    order: list[Node] = []
    for node in nodes:
        chain = list(node.ancestors())[::-1]
        for n in chain:
            if id(n) not in ids:
                ids[id(n)] = len(order)
                order.append(n)
    return [_node_json(n, ids) for n in order], ids


def node_from_json(entries: list[dict]) -> dict[int, Node]:
    """Rebuild provenance nodes (for membership replay) from their JSON list."""
    out: dict[int, Node] = {}
    for e in entries:
        parent = out.get(e["parent"]) if e.get("parent") is not None else None
        if e.get("parent") is not None and parent is None:
            raise InputError(f"provenance node {e['id']} refers to an unknown parent")
        functionals = tuple(vector_from_json(f) for f in e.get("functionals", []))
        poly = poly_from_json(e["poly"]) if "poly" in e else None
        out[e["id"]] = Node(e["kind"], parent, functionals, e.get("coordinate"), poly, e.get("label", ""))
    return out


# -- assembly --------------------------------------------------------------------------

def _witness_json(step: int, w, node_id: int) -> dict:
    out = {"step": step, "vector": vector_to_json(w.vector), "method": w.method,
           "exact": w.exact, "node": node_id}
    if w.report is not None:
        rep = w.report
        out["u"] = vector_to_json(rep.u)
        out["v"] = vector_to_json(rep.v)
        out["slice"] = unipoly_to_json(rep.slice)
        out["root"] = scalar_to_json(rep.root)
    if not w.exact:
        out["residual"] = w.residual
    return out


def _outcome(value) -> str:
    return "zero" if value == 0 else "within_tolerance"


def assemble_certificate(kind, polys, seed, cons, ctx):
    from .verify import verify_certificate

    config = ctx.config
    log = cons.log
    provenance, ids = flatten_nodes([r.witness.node for r in log])
    witnesses = [_witness_json(r.step, r.witness, ids[id(r.witness.node)]) for r in log]
    checks = []
    for r in log:
        for (key, _), value in zip(r.family, r.values):
            checks.append({
                "step": r.step, **key.to_json(), "on": f"y{r.step}", "poly_index": len(polys) - 1,
                "outcome": _outcome(value), "value": scalar_to_json(value),
            })
    produced = [r.witness.vector for r in log]
    exact = ctx.exact and all(v.exact for v in produced) and all(P.field.exact for P in polys)
    n_basis = len(seed) + len(produced)
    size = max(table_size(n_basis, P.degree) for P in polys)
    policy = "full" if size <= config.table_threshold else "sampled"
    verification = {
        "policy": policy,
        "table_threshold": config.table_threshold,
        "sample_count": config.sample_count,
        "sample_seed": config.sample_seed,
        "epsilon": 0.0 if exact else config.epsilon,
    }
    cert = Certificate(kind, list(polys), None, None, list(seed), produced, witnesses, checks, exact,
                       provenance, verification, config.to_dict())
    report = verify_certificate(cert)
    if not report.ok:
        raise VerificationFailure(f"built certificate failed its own {report.name} check",
                                  failures=report.failures)
    return cert


def assemble_multilinear(A, slot, rows, produced, node, config):
    from .verify import verify_certificate

    provenance, ids = flatten_nodes([node])
    witnesses = [{"step": k + 1, "vector": vector_to_json(z), "method": "kernel", "exact": z.exact,
                  "node": ids[id(node)]} for k, z in enumerate(produced)]
    checks = []
    for k, z in enumerate(produced):
        for tau, f in rows:
            value = f.dot(z)
            checks.append({"step": k + 1, "slot": slot, "tau": list(tau), "on": f"z{k + 1}",
                           "outcome": _outcome(value), "value": scalar_to_json(value)})
    exact = A.field.exact and all(z.exact for z in produced)
    verification = {"policy": "exhaustive", "epsilon": 0.0 if exact else config.epsilon}
    cert = Certificate("multilinear", [], A, slot, [], list(produced), witnesses, checks, exact,
                       provenance, verification, config.to_dict())
    report = verify_certificate(cert)
    if not report.ok:
        raise VerificationFailure(f"built certificate failed its own {report.name} check",
                                  failures=report.failures)
    return cert
