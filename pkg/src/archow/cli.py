"""Batch command-line front end.

Every command prints one JSON document (sorted keys, deterministic
values) to stdout and a short human summary to stderr.  Exit codes:
0 success, 1 usage/parse error, 2 mathematical failure (admissibility,
rank deficit, quadrature tolerance).

Numeric values carry error-estimate fields; symbolic values carry
``"exact": true``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

import mpmath as mp

from .cubical import AdmissibilityError, FormalCycle, UnsupportedShapeError, boundary, is_normalized
from .field import Fe, FactorBoundExceeded, parse_element
from .k2 import DecompositionError, decompose
from .pairing import (
    DEFAULT_DENOM_BOUND,
    group_shape,
    pair_11,
    pair_1_2_standard,
    qi_weight2_generator,
    reduce_mod_regulator,
    _regulator_dispatch,
)
from .parsing import ParseError, parse_cycle
from .polylog import PrecisionPolicy, bloch_wigner, li, trilog_sv
from .quadrature import QuadratureError, QuadratureParams
from .regulator import lemma19_check

USAGE_ERROR, MATH_ERROR = 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        print(f"usage error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)


def _decimal(x, digits):
    return mp.nstr(mp.mpf(x) if not isinstance(x, (mp.mpf, mp.mpc)) else x, digits)


def _class_doc(cls, digits=20, error=None, exact=False):
    doc = {
        "twist": cls.twist,
        "embeddings": {
            lbl: _decimal(v, digits) for lbl, v in zip(cls.field.embeddings, cls.values)
        },
        "exact": bool(exact),
    }
    doc["error_estimate"] = None if error in (None, 0.0) else float(error)
    return doc


def _emit(doc, args, summary):
    text = json.dumps(doc, sort_keys=True, indent=2)
    if getattr(args, "json_out", None):
        with open(args.json_out, "w") as fh:
            fh.write(text + "\n")
    print(text)
    print(summary, file=sys.stderr)


def _config_doc(args):
    keys = ("field", "precision", "tol", "max_depth", "factor_bound", "height", "denom_bound")
    return {k: getattr(args, k) for k in keys if hasattr(args, k)}


def _quad(args):
    return QuadratureParams(tol=args.tol, max_depth=args.max_depth)


def _policy(args):
    return PrecisionPolicy(bits=args.precision)


def cmd_boundary(args):
    fc = parse_cycle(args.cycle)
    b = boundary(fc)
    doc = {
        "command": "boundary",
        "inputs": {"cycle": str(fc), "dimension": fc.n, "codimension": fc.p},
        "config": _config_doc(args),
        "result": {
            "boundary": [{"generator": str(g), "multiplicity": m} for g, m in
                         sorted(b.terms.items(), key=lambda t: str(t[0]))],
            "is_zero": b.is_zero(),
            "normalized_input": is_normalized(fc),
            "exact": True,
        },
    }
    _emit(doc, args, f"boundary has {len(b.terms)} generator(s)")
    return 0


def cmd_regulator(args):
    fc = parse_cycle(args.cycle)
    val = _regulator_dispatch(fc, _policy(args), _quad(args))
    doc = {
        "command": "regulator",
        "inputs": {"cycle": str(fc)},
        "config": _config_doc(args),
        "result": {
            "class": _class_doc(
                val.klass,
                digits=args.digits,
                error=val.error,
                exact=val.provenance != "numeric",
            ),
            "provenance": val.provenance,
        },
    }
    _emit(doc, args, f"regulator class ({val.provenance})")
    return 0


def cmd_polylog(args):
    policy = _policy(args)
    z = parse_element(args.z)
    from .field import embed_principal

    with mp.workprec(policy.bits):
        zc = embed_principal(z, policy.bits)
        if args.func == "li2":
            val = li(2, zc, policy)
        elif args.func == "li3":
            val = li(3, zc, policy)
        elif args.func == "l2":
            val = bloch_wigner(zc, policy)
        else:
            val = trilog_sv(zc, policy)
        digits = min(args.digits, policy.claimed_digits)
        doc = {
            "command": "polylog",
            "inputs": {"function": args.func, "z": str(z)},
            "config": _config_doc(args),
            "result": {
                "value": _decimal(val, digits),
                "claimed_digits": digits,
                "exact": False,
                "error_estimate": float(mp.mpf(10) ** -digits),
            },
        }
    _emit(doc, args, f"{args.func}({z}) to {digits} digits")
    return 0


def cmd_decompose(args):
    alpha = parse_element(args.alpha)
    beta = parse_element(args.beta)
    S = None
    if args.primes:
        S = [parse_element(p) for p in args.primes.split(",")]
    dec = decompose(alpha, beta, S=S, height=args.height, bound=args.factor_bound)
    doc = {
        "command": "decompose",
        "inputs": {"alpha": str(alpha), "beta": str(beta)},
        "config": _config_doc(args),
        "result": {
            "denominator": dec.denominator,
            "atoms": [{"gamma": str(g), "coefficient": str(c)} for g, c in dec.atoms],
            "certificate_verified": dec.verify(args.factor_bound),
            "exact": True,
        },
    }
    _emit(doc, args, f"decomposition with {len(dec.atoms)} atom(s), N = {dec.denominator}")
    return 0


def cmd_pair(args):
    policy = _policy(args)
    if args.p == 1 and args.q == 1:
        if not (args.alpha and args.beta):
            raise SystemExit(USAGE_ERROR)
        alpha = parse_element(args.alpha)
        beta = parse_element(args.beta)
        S = [parse_element(p) for p in args.primes.split(",")] if args.primes else None
        res = pair_11(
            alpha, beta, S=S, height=args.height,
            denom_bound=args.denom_bound, policy=policy,
        )
        atoms = [{"gamma": str(g), "coefficient": str(c)} for g, c in res.certificate.atoms]
        cert = {"atoms": atoms, "certificate_verified": True}
    elif args.p == 1 and args.q == 2:
        if not args.standard_zi:
            print("(1,2)-pairing supports --standard-zi only", file=sys.stderr)
            raise SystemExit(USAGE_ERROR)
        res = pair_1_2_standard(policy, _quad(args), args.denom_bound)
        cert = dict(res.certificate)
    else:
        print("supported pairings: --p 1 --q 1, --p 1 --q 2 --standard-zi", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)
    doc = {
        "command": "pair",
        "inputs": {"p": args.p, "q": args.q,
                   "alpha": args.alpha, "beta": args.beta,
                   "standard_zi": bool(args.standard_zi)},
        "config": _config_doc(args),
        "result": {
            "raw_class": _class_doc(res.raw, args.digits, res.error,
                                    res.provenance != "numeric"),
            "N": res.N,
            "q_hats": [str(q) for q in res.q_hats],
            "residue_class": _class_doc(res.residue, args.digits, res.error, False),
            "residue_norm": res.residue_norm,
            "provenance": res.provenance,
            "certificate": cert,
        },
    }
    _emit(doc, args, f"({args.p},{args.q}) pairing, residue norm {res.residue_norm:.3e}")
    return 0


def cmd_ranks(args):
    shape = group_shape(args.p, args.n)
    doc = {
        "command": "ranks",
        "inputs": {"p": args.p, "n": args.n},
        "config": _config_doc(args),
        "result": {
            "chow": shape.ch,
            "chow_rank": shape.ch_rank,
            "deligne": shape.deligne,
            "arithmetic_chow": shape.arithmetic,
            "exact": True,
        },
    }
    _emit(doc, args, str(shape))
    return 0


def cmd_verify(args):
    if args.what != "lemma19":
        print("verify supports: lemma19", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)
    fc = parse_cycle(args.curve)
    gens = list(fc.terms)
    if len(gens) != 1 or fc.terms[gens[0]] != 1:
        print("verify lemma19 expects a single curve generator", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)
    out = lemma19_check(gens[0], _quad(args))
    passed = out["total"] <= args.tol_accept and out["residue_check"] <= args.tol_accept
    doc = {
        "command": "verify",
        "inputs": {"what": "lemma19", "curve": str(gens[0])},
        "config": _config_doc(args),
        "result": {
            "total": out["total"],
            "residue_check": out["residue_check"],
            "error_estimate": out["error_estimate"],
            "tolerance": args.tol_accept,
            "passed": bool(passed),
            "exact": False,
        },
    }
    _emit(doc, args, f"lemma19 total={out['total']:.3e} residue={out['residue_check']:.3e}")
    return 0 if passed else MATH_ERROR


def build_parser():
    default_prec = int(os.environ.get("ARCHOW_PRECISION", "256"))
    common = _Parser(add_help=False)
    common.add_argument("--field", default="Q(i)", help="base field (only Q(i) is supported)")
    common.add_argument("--precision", type=int, default=default_prec,
                        help="working precision in bits (env ARCHOW_PRECISION)")
    common.add_argument("--tol", type=float, default=1e-6, help="quadrature tolerance")
    common.add_argument("--max-depth", type=int, default=26, dest="max_depth")
    common.add_argument("--factor-bound", type=int, default=10**12, dest="factor_bound")
    common.add_argument("--primes", default=None, help="comma-separated prime list")
    common.add_argument("--height", type=int, default=20, help="harvest height bound")
    common.add_argument("--denom-bound", type=int, default=DEFAULT_DENOM_BOUND, dest="denom_bound")
    common.add_argument("--json-out", default=None, dest="json_out")
    common.add_argument("--digits", type=int, default=20, help="printed decimal digits")

    top = _Parser(prog="archow", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("boundary", parents=[common], help="cubical boundary of a cycle literal")
    p.add_argument("--cycle", required=True)
    p.set_defaults(handler=cmd_boundary)

    p = sub.add_parser("regulator", parents=[common], help="Goncharov regulator of a cycle")
    p.add_argument("--cycle", required=True)
    p.set_defaults(handler=cmd_regulator)

    p = sub.add_parser("polylog", parents=[common], help="polylogarithm values")
    p.add_argument("--func", choices=("li2", "li3", "l2", "l3"), required=True)
    p.add_argument("--z", required=True, help="field element literal")
    p.set_defaults(handler=cmd_polylog)

    p = sub.add_parser("decompose", parents=[common], help="Steinberg decomposition of alpha ^ beta")
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.set_defaults(handler=cmd_decompose)

    p = sub.add_parser("pair", parents=[common], help="higher intersection pairings")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--alpha")
    p.add_argument("--beta")
    p.add_argument("--standard-zi", action="store_true", dest="standard_zi")
    p.set_defaults(handler=cmd_pair)

    p = sub.add_parser("ranks", parents=[common], help="group shapes CH/Deligne/arithmetic-CH")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(handler=cmd_ranks)

    p = sub.add_parser("verify", parents=[common], help="verification suites")
    p.add_argument("what", choices=("lemma19",))
    p.add_argument("--curve", required=True)
    p.add_argument("--tol-accept", type=float, default=1e-6, dest="tol_accept")
    p.set_defaults(handler=cmd_verify)
    return top


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if e.code is not None else USAGE_ERROR
    if args.field not in ("Q(i)", "QI", "q(i)"):
        print("only the field Q(i) is supported", file=sys.stderr)
        return USAGE_ERROR
    try:
        with mp.workprec(args.precision):
            return args.handler(args)
    except (ParseError, ValueError) as e:
        if isinstance(e, (AdmissibilityError, UnsupportedShapeError,
                          FactorBoundExceeded, DecompositionError)):
            print(json.dumps({"error": str(e), "kind": type(e).__name__}, sort_keys=True))
            print(f"mathematical failure: {e}", file=sys.stderr)
            return MATH_ERROR
        print(json.dumps({"error": str(e), "kind": type(e).__name__}, sort_keys=True))
        print(f"parse/usage error: {e}", file=sys.stderr)
        return USAGE_ERROR
    except (QuadratureError, ArithmeticError) as e:
        print(json.dumps({"error": str(e), "kind": type(e).__name__}, sort_keys=True))
        print(f"mathematical failure: {e}", file=sys.stderr)
        return MATH_ERROR


if __name__ == "__main__":
    sys.exit(main())
