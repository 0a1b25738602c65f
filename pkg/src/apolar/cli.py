"""The ``apolar`` command line.

Every subcommand prints one JSON document on stdout; logs go to stderr.
Exit codes: 0 success, 1 usage error, 2 degenerate input, 3 precision
exhausted.  Settings come from flags, then ``APOLAR_*`` environment
variables, then defaults.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
from dataclasses import dataclass

from . import apolarity, cone, io, sections
from .errors import (ApolarError, DegenerateInputError, FieldMismatchError,
                     InconsistentSystem, PrecisionExhausted)
from .fields import CC, field_from_tag

log = logging.getLogger("apolar")

DEFAULT_BITS = 256
DEFAULT_TOL = cone.DEFAULT_TOL


@dataclass
class RunConfig:
    field: object = None     # None: take the field written in the input
    bits: int = DEFAULT_BITS
    tol: str = DEFAULT_TOL
    seed: int = 0

    @classmethod
    def resolve(cls, args, environ=None):
        env = os.environ if environ is None else environ

        def pick(flag, name, default, conv):
            if flag is not None:
                return conv(flag)
            if name in env:
                return conv(env[name])
            return default

        field = field_from_tag(args.field) if getattr(args, "field", None) else None
        return cls(field=field,
                   bits=pick(getattr(args, "precision", None), "APOLAR_PRECISION", DEFAULT_BITS, int),
                   tol=pick(getattr(args, "tol", None), "APOLAR_TOL", DEFAULT_TOL, str),
                   seed=pick(getattr(args, "seed", None), "APOLAR_SEED", 0, int))

    def tolerance(self, field):
        if field.exact:
            return None
        return field.ctx.mpf(self.tol)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read_json(path):
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def _unwrap(data):
    """Accept ``decompose`` output in place of the certificate it carries."""
    if isinstance(data, dict) and "certificate" in data:
        return data["certificate"]
    return data


def _read_poly(path, cfg):
    data = _unwrap(_read_json(path))
    if "target" in data:          # a certificate: verify its target
        data = data["target"]
    f = io.poly_from_json(data)
    if cfg.field is not None and cfg.field != f.field:
        f = f.change_field(cfg.field)
    return f


def _section(X, cfg):
    rng = random.Random(cfg.seed)
    L = sections.sample_section(X, rng)
    return L, rng


def cmd_perp(args, cfg):
    f = _read_poly(args.poly, cfg)
    basis = apolarity.apolar_ideal_piece(f, args.degree)
    return {"degree": args.degree, "dim": len(basis), "basis": [io.poly_to_json(b) for b in basis]}


def cmd_hf(args, cfg):
    f = _read_poly(args.poly, cfg)
    return {"hilbert_function": list(apolarity.hilbert_function(f))}


def cmd_dual_socle(args, cfg):
    ideal = io.ideal_from_json(_read_json(args.ideal))
    return io.poly_to_json(apolarity.dual_socle_generator(ideal, args.socle))


def cmd_verify(args, cfg):
    f = _read_poly(args.poly, cfg)
    pdata = _unwrap(_read_json(args.points))
    if cfg.field is not None:
        field = cfg.field
    elif isinstance(pdata, dict) and "field" in pdata:
        field = field_from_tag(pdata["field"])
    else:
        field = f.field
    if f.field != field:
        f = f.change_field(field)
    pts = io.points_from_json(pdata, field)
    tol = cfg.tolerance(field)
    verdict = apolarity.is_apolar(pts, f, tol=tol)
    out = {"apolar": verdict}
    if verdict:
        try:
            out["certificate"] = io.certificate_to_json(apolarity.solve_powersum(pts, f, tol=tol))
        except InconsistentSystem as exc:
            out["apolar"] = False
            out["detail"] = exc.detail
    return out


def cmd_rank(args, cfg):
    return {"rank": apolarity.generic_rank(args.d, args.n)}


def cmd_special(args, cfg):
    r = apolarity.specialness_report(args.genus)
    return {"construction": r.construction_count, "generic": r.generic_count,
            "special": r.is_special, "genus": r.genus,
            "grassmannian_dim": r.grassmannian_dim, "cubic_moduli_dim": r.cubic_moduli_dim,
            "image_deficient": r.image_deficient}


def cmd_section(args, cfg):
    X = sections.load_fixture(args.fixture)
    L, _ = _section(X, cfg)
    f = sections.apolar_hypersurface(X, L)
    return {"fixture": X.name, "seed": cfg.seed, "L": L.to_json(),
            "hilbert_function": list(sections.reduction_hilbert_function(X, L)),
            "f_L": io.poly_to_json(f)}


def _tangent_json(datum, field):
    return {"p": [field.format(c, 40) for c in datum.p],
            "hyperplane": io.poly_to_json(datum.hyperplane),
            "parameter": field.format(datum.parameter, 40),
            "multiplicity": datum.multiplicity}


def cmd_decompose(args, cfg):
    X = sections.load_fixture(args.fixture)
    L, rng = _section(X, cfg)
    f = sections.apolar_hypersurface(X, L)
    tol = CC(cfg.bits).ctx.mpf(cfg.tol)
    out = {"fixture": X.name, "seed": cfg.seed, "L": L.to_json()}
    if args.method == "cone":
        candidates = [p for p in X.witness_points
                      if any(h.evaluate(p) != 0 for h in L.forms)]
        if not candidates:
            raise DegenerateInputError("every witness point lies in L")
        p = rng.choice(candidates)
        log.info("cone construction at witness %s", [str(c) for c in p])
        dec = cone.cone_decomposition(X, L, p, bits=cfg.bits, tol=tol, rng=rng, f_L=f)
        out["certificate"] = io.certificate_to_json(dec)
        return out
    log.info("locating tangent hyperplanes through L")
    pencil = cone.tangent_pencil(X, L, bits=cfg.bits, rng=rng)
    data = pencil.data if args.all_tangents else pencil.data[:1]
    certs = []
    for k, datum in enumerate(data):
        log.info("tangent construction %d/%d", k + 1, len(data))
        dec = cone.tangent_decomposition(X, L, datum, bits=cfg.bits, tol=tol, rng=rng, f_L=f)
        certs.append(io.certificate_to_json(dec))
    if args.all_tangents:
        out["accounting"] = pencil.accounting
        out["certificates"] = certs
    else:
        out["certificate"] = certs[0]
    return out


def cmd_tangents(args, cfg):
    X = sections.load_fixture(args.fixture)
    L, rng = _section(X, cfg)
    pencil = cone.tangent_pencil(X, L, bits=cfg.bits, rng=rng)
    field = CC(2 * cfg.bits)
    return {"fixture": X.name, "seed": cfg.seed, "L": L.to_json(),
            "count_with_multiplicity": pencil.total_multiplicity,
            "accounting": pencil.accounting,
            "tangents": [_tangent_json(t, field) for t in pencil]}


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--field", help="Q, Fp:<p> or C:<bits>")
    common.add_argument("--precision", type=int, help="working precision in bits")
    common.add_argument("--tol", help="relative residual tolerance for float backends")
    common.add_argument("--seed", type=int, help="random seed")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")

    parser = _Parser(prog="apolar", description="Apolarity and powersum decompositions of forms.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("perp", parents=[common], help="a graded piece of the apolar ideal")
    p.add_argument("poly")
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(run=cmd_perp)

    p = sub.add_parser("hf", parents=[common], help="Hilbert function of the apolar algebra")
    p.add_argument("poly")
    p.set_defaults(run=cmd_hf)

    p = sub.add_parser("dual-socle", parents=[common], help="dual socle generator of an ideal")
    p.add_argument("ideal")
    p.add_argument("--socle", type=int, required=True)
    p.set_defaults(run=cmd_dual_socle)

    p = sub.add_parser("verify", parents=[common], help="check apolarity and solve for a decomposition")
    p.add_argument("poly")
    p.add_argument("points")
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("rank", parents=[common], help="generic Waring rank")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(run=cmd_rank)

    p = sub.add_parser("special", parents=[common], help="tangent construction vs generic rank")
    p.add_argument("--genus", type=int, required=True)
    p.set_defaults(run=cmd_special)

    p = sub.add_parser("section", parents=[common], help="f_L for a sampled section of a fixture")
    p.add_argument("fixture")
    p.set_defaults(run=cmd_section)

    p = sub.add_parser("decompose", parents=[common], help="cone or tangent decomposition of f_L")
    p.add_argument("fixture")
    p.add_argument("--method", choices=["cone", "tangent"], required=True)
    p.add_argument("--all-tangents", action="store_true")
    p.set_defaults(run=cmd_decompose)

    p = sub.add_parser("tangents", parents=[common], help="tangent hyperplanes through L")
    p.add_argument("fixture")
    p.set_defaults(run=cmd_tangents)
    return parser


def _error(kind, detail, **info):
    err = {"kind": kind, "detail": detail}
    if info:
        err["info"] = {k: v if isinstance(v, (int, float, str, bool, list)) else str(v)
                       for k, v in info.items()}
    return {"error": err}


def run_command(argv, environ=None):
    """Run one subcommand; returns ``(exit_code, json_payload)``."""
    try:
        args = build_parser().parse_args(argv)
        cfg = RunConfig.resolve(args, environ)
    except UsageError as exc:
        return 1, _error("usage", str(exc))
    except (ValueError, KeyError) as exc:
        return 1, _error("usage", str(exc))
    if getattr(args, "verbose", False):
        logging.basicConfig(level=logging.INFO, stream=sys.stderr, format="%(message)s")
    try:
        return 0, args.run(args, cfg)
    except PrecisionExhausted as exc:
        return 3, _error(exc.kind, exc.detail, **exc.info)
    except FieldMismatchError as exc:
        return 1, _error(exc.kind, exc.detail)
    except (DegenerateInputError, InconsistentSystem) as exc:
        return 2, _error(exc.kind, exc.detail, **exc.info)
    except ApolarError as exc:
        return 2, _error(exc.kind, exc.detail, **exc.info)
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        return 1, _error("usage", f"{type(exc).__name__}: {exc}")


def main(argv=None):
    code, payload = run_command(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(io.dumps(payload) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
