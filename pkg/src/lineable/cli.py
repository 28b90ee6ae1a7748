"""Command-line front end.

Exit codes: 0 success, 1 input error, 2 mathematical failure (diagnosis as
JSON on stderr), 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .builder import RunConfig, build_intersection, build_multilinear, build_through_point
from .certificate import Certificate
from .errors import InputError, LineableError, MathematicalFailure, VerificationFailure
from .fixtures import KINDS, generate
from .polynomials import MultilinearForm
from .serial import (
    as_hompoly,
    dumps,
    form_from_json,
    form_to_json,
    read_json,
    seed_from_json,
    seed_to_json,
    unipoly_to_json,
    vector_from_json,
    write_json,
)
from .verify import verify_certificate
from .zerofind import binary_slice

EXIT_OK, EXIT_INPUT, EXIT_MATH, EXIT_VERIFY = 0, 1, 2, 3


def _emit(obj, out: str | None):
    if out:
        write_json(out, obj)
    else:
        sys.stdout.write(dumps(obj))


def _load_config(args) -> RunConfig:
    data = read_json(args.config) if args.config else {}
    if not isinstance(data, dict):
        raise InputError("config file must hold a JSON object")
    for key in ("field", "epsilon", "budget"):
        val = getattr(args, key, None)
        if val is not None:
            data[key] = val
    if args.rng is not None:
        data["sample_seed"] = args.rng
    return RunConfig.from_dict(data)


def cmd_build(args) -> int:
    config = _load_config(args)
    forms = [form_from_json(read_json(p)) for p in args.poly]
    seed = seed_from_json(read_json(args.seed)) if args.seed else []
    if any(isinstance(f, MultilinearForm) for f in forms):
        if len(forms) != 1 or seed or args.point:
            raise InputError("a multilinear form is built alone, without seed or point")
        cert = build_multilinear(forms[0], args.count, config, slot=args.slot)
    else:
        polys = [as_hompoly(f) for f in forms]
        if args.point:
            if len(polys) != 1 or seed:
                raise InputError("--point takes one polynomial and no seed")
            cert = build_through_point(polys[0], vector_from_json(read_json(args.point)), args.count, config)
        else:
            kind = "intersection" if len(polys) > 1 else "zero_space"
            cert = build_intersection(polys, seed, args.count, config, kind=kind)
    _emit(cert.to_json(), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    cert = Certificate.from_json(read_json(args.cert))
    report = verify_certificate(cert)
    _emit(report.to_json(), None)
    return EXIT_OK if report.ok else EXIT_VERIFY


def cmd_gen(args) -> int:
    form, seed = generate(args.kind, args.n, args.m, args.vars, args.rng, args.terms)
    data = form_to_json(form)
    if args.out:
        write_json(args.out, data)
        if seed:
            out = Path(args.out)
            write_json(out.with_name(out.stem + ".seed.json"), seed_to_json(seed))
    else:
        _emit({"form": data, "seed": seed_to_json(seed)} if seed else data, None)
    return EXIT_OK


def cmd_slice(args) -> int:
    form = form_from_json(read_json(args.poly))
    if isinstance(form, MultilinearForm):
        raise InputError("slices are defined for homogeneous polynomials")
    P = as_hompoly(form)
    u = vector_from_json(read_json(args.u))
    v = vector_from_json(read_json(args.v))
    rep = binary_slice(P, u, v)
    _emit({"slice": unipoly_to_json(rep.slice), "exact": rep.exact}, None)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lineable", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build a certified subspace of a zero set")
    b.add_argument("--poly", action="append", required=True,
                   help="polynomial/form JSON; repeat for an intersection")
    b.add_argument("--seed", help="seed basis JSON")
    b.add_argument("--point", help="a zero x to build through")
    b.add_argument("--count", type=int, default=8, help="number of vectors to add")
    b.add_argument("--out", help="certificate path (default: stdout)")
    b.add_argument("--config", help="RunConfig JSON")
    b.add_argument("--rng", type=int, help="seed for sampled verification")
    b.add_argument("--field", choices=["rational", "gaussian_rational", "complex64"],
                   help="work over a larger field than the polynomial's")
    b.add_argument("--epsilon", type=float, help="tolerance for approximate roots (0 = exact only)")
    b.add_argument("--budget", type=int, help="slice pairs tried before going approximate")
    b.add_argument("--slot", type=int, help="slot of a multilinear form to fill (0-based)")
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="re-check a certificate")
    v.add_argument("--cert", required=True)
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("gen", help="generate a fixture")
    g.add_argument("--kind", required=True, help=f"one of: {', '.join(KINDS)}")
    g.add_argument("--n", type=int, default=1, help="seed dimension (seeded kind)")
    g.add_argument("--m", type=int, default=2, help="degree or arity")
    g.add_argument("--vars", type=int, default=6, help="number of variables")
    g.add_argument("--terms", type=int, help="number of terms (k for finite-type)")
    g.add_argument("--rng", type=int, default=0)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("slice", help="print the slice t -> P(u + t v)")
    s.add_argument("--poly", required=True)
    s.add_argument("--u", required=True)
    s.add_argument("--v", required=True)
    s.set_defaults(func=cmd_slice)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except VerificationFailure as exc:
        sys.stderr.write(json.dumps(exc.to_json(), sort_keys=True, default=str) + "\n")
        return EXIT_VERIFY
    except MathematicalFailure as exc:
        sys.stderr.write(json.dumps(exc.to_json(), sort_keys=True, default=str) + "\n")
        return EXIT_MATH
    except (InputError, LineableError) as exc:
        sys.stderr.write(json.dumps(exc.to_json(), sort_keys=True, default=str) + "\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
