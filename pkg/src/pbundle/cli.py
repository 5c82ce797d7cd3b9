"""Command-line front end.

One command per invocation; all reports are deterministic.  Run
metadata (the command name and RNG seed) goes into a leading comment
line so the JSON payload below it is byte-identical across runs.
Certificates and proofs are emitted as JSON lines; everything else is
a single JSON document.  Exact numeric values are rendered as decimal
strings.

Exit codes: 0 success, 1 verification failure, 2 parse or parameter
error.
"""

import argparse
import json
import os
import sys

from .bundles import atiyah_tensor, jordan_type_oracle, sym_decompose, transition_matrix
from .cascade import (
    CertificateError,
    DEFAULT_LAMBDA,
    conclude_common_zero,
    nonexistence_verdict,
    parse_certificate,
    parse_proof,
    replay_certificate,
    replay_proof,
)
from .dyn import PicLattice, dyn_report
from .encoding import bundle_from_json, candidate_from_json
from .endo import VerifyReport, check_compatibility, check_no_common_zero


class UsageError(ValueError):
    """Bad input file or parameter (exit code 2)."""


def _seed():
    raw = os.environ.get("PBUNDLE_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise UsageError("PBUNDLE_SEED must be an integer, got %r" % raw)


def _emit(args, command, seed, lines):
    """Write the header line followed by the payload lines."""
    out = ["# pbundle %s seed=%d" % (command, seed)]
    out.extend(lines)
    text = "\n".join(out) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_report(args, command, seed, report):
    _emit(args, command, seed, [json.dumps(report, indent=2, sort_keys=True)])


def _interval_json(iv):
    return {"lo": str(iv.lo), "hi": str(iv.hi)}


def _load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError("cannot read %s: %s" % (path, exc))


# ---------------------------------------------------------------------------
# commands


def cmd_verify(args):
    seed = _seed()
    data = _load_json(args.candidate)
    try:
        cand = candidate_from_json(data)
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError("bad candidate file %s: %s" % (args.candidate, exc))
    compat = check_compatibility(cand)
    common = check_no_common_zero(cand.F, seed=seed)
    report = VerifyReport(compat.compat_ok, common, cand.fibre_degree, seed=seed)
    payload = {
        "command": "verify",
        "compatibility": report.compat_ok,
        "common_zero": {
            "status": common[0],
            "witness": None if common[1] is None else [str(c) for c in common[1]],
        },
        "fibre_degree": cand.fibre_degree,
        "seed": seed,
        "verified": report.passes(),
    }
    _emit_report(args, "verify", seed, payload)
    return 0 if report.passes() else 1


def cmd_prove(args):
    seed = _seed()
    if args.degree < 2:
        raise UsageError("cascade requires degree >= 2")
    if args.descriptor is not None:
        try:
            desc = bundle_from_json(_load_json(args.descriptor))
        except (ValueError, KeyError, TypeError) as exc:
            raise UsageError("bad descriptor file %s: %s" % (args.descriptor, exc))
        verdict = nonexistence_verdict(desc, args.degree, char=args.char)
        lines = [
            json.dumps(
                {
                    "kind": "nonexistence-verdict",
                    "verdict": verdict.verdict(),
                    "degree": verdict.fibre_degree,
                    "char": verdict.char,
                    "reason": verdict.reason,
                },
                sort_keys=True,
            )
        ]
        if verdict.proof is not None:
            lines.extend(verdict.proof.to_lines())
        _emit(args, "prove", seed, lines)
        return 0 if verdict.excluded else 1
    if args.rank is None:
        raise UsageError("prove needs --rank or --descriptor")
    if args.rank < 1:
        raise UsageError("rank must be at least 1")
    proof = conclude_common_zero(args.rank, args.degree, char=args.char)
    _emit(args, "prove", seed, proof.to_lines())
    return 0 if proof.concluded else 1


def cmd_decompose(args):
    seed = _seed()
    if args.tensor is not None:
        r, s = args.tensor
        if r < 1 or s < 1:
            raise UsageError("tensor factors need positive ranks")
        parts = atiyah_tensor(r, s)
        payload = {"command": "decompose", "input": {"tensor": [r, s]}}
    else:
        r, d = args.sym
        if r < 1 or d < 1:
            raise UsageError("symmetric powers need positive rank and degree")
        parts = sym_decompose(r, d)
        payload = {"command": "decompose", "input": {"sym": [r, d]}}
    payload["parts"] = list(parts)
    _emit_report(args, "decompose", seed, payload)
    return 0


def cmd_sym(args):
    seed = _seed()
    if args.rank < 1 or args.degree < 1:
        raise UsageError("need positive rank and degree")
    parts = sym_decompose(args.rank, args.degree)
    payload = {
        "command": "sym",
        "rank": args.rank,
        "degree": args.degree,
        "parts": list(parts),
    }
    agree = True
    if args.check:
        from .bundles import BundleDescriptor
        from .curve import make_curve
        from .field import Rationals

        curve = make_curve(Rationals(), DEFAULT_LAMBDA)
        desc = BundleDescriptor([(args.rank, ("trivial",))])
        M = transition_matrix(desc, curve)
        oracle = jordan_type_oracle(M, args.degree)
        agree = oracle == parts
        payload["oracle_parts"] = list(oracle)
        payload["agree"] = agree
    _emit_report(args, "sym", seed, payload)
    return 0 if agree else 1


def cmd_dyn(args):
    seed = _seed()
    data = _load_json(args.lattice)
    try:
        lattice = PicLattice(
            data["generators"],
            data["action"],
            torsion=data.get("torsion"),
            lambda1_g=data.get("lambda1_g"),
        )
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError("bad lattice file %s: %s" % (args.lattice, exc))
    if args.degree < 1:
        raise UsageError("fibre degree must be positive")
    report = dyn_report(lattice, args.degree)
    payload = {
        "command": "dyn",
        "fibre_degree": report.fibre_degree,
        "lambda1_g": _interval_json(report.lambda1_g),
        "lambda1_f": _interval_json(report.lambda1_f),
        "spectral_radius_V": _interval_json(report.spectral_radius_V),
        "bound_ok": report.bound_ok,
    }
    _emit_report(args, "dyn", seed, payload)
    return 0 if report.bound_ok else 1


def cmd_verify_certificate(args):
    seed = _seed()
    try:
        with open(args.certificate, "r", encoding="utf-8") as fh:
            lines = [ln for ln in fh if ln.strip() and not ln.startswith("#")]
    except OSError as exc:
        raise UsageError("cannot read %s: %s" % (args.certificate, exc))
    if not lines:
        raise UsageError("empty certificate file %s" % args.certificate)
    try:
        head = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise UsageError("bad certificate file %s: %s" % (args.certificate, exc))
    kind = head.get("kind") if isinstance(head, dict) else None
    try:
        if kind == "vanishing-certificate":
            cert = parse_certificate(lines)
        elif kind == "common-zero-proof":
            proof = parse_proof(lines)
        else:
            raise UsageError("unknown certificate kind %r" % kind)
    except (CertificateError, json.JSONDecodeError, KeyError, TypeError) as exc:
        raise UsageError("bad certificate file %s: %s" % (args.certificate, exc))

    valid = True
    detail = None
    payload = {"command": "verify-certificate", "kind": kind}
    try:
        if kind == "vanishing-certificate":
            replayed = replay_certificate(cert)
            payload["zeros"] = len(replayed.zero_list())
        else:
            replayed = replay_proof(proof)
            payload["concluded"] = replayed.concluded
    except CertificateError as exc:
        valid = False
        detail = str(exc)
    payload["valid"] = valid
    if detail is not None:
        payload["error"] = detail
    _emit_report(args, "verify-certificate", seed, payload)
    return 0 if valid else 1


# ---------------------------------------------------------------------------
# parser


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pbundle",
        description="Exact tools for endomorphisms of projective bundles "
        "over elliptic curves.",
    )
    parser.add_argument(
        "--jobs",
        type=int,
        default=1,
        help="worker-count hint (accepted for compatibility; all "
        "computations here are deterministic and single-pass)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="verify a candidate endomorphism")
    p.add_argument("candidate", help="candidate JSON file")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("prove", help="emit a vanishing/nonexistence certificate")
    p.add_argument("--rank", type=int, help="projective fibre dimension")
    p.add_argument("--degree", type=int, required=True, help="fibre degree")
    p.add_argument("--char", type=int, default=0, help="base-field characteristic")
    p.add_argument("--descriptor", help="bundle descriptor JSON file")
    p.add_argument("--out", help="write the certificate here instead of stdout")
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("decompose", help="decompose tensor or symmetric powers")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--tensor", nargs=2, type=int, metavar=("R", "S"))
    group.add_argument("--sym", nargs=2, type=int, metavar=("R", "D"))
    p.add_argument("--out", help="write the report here instead of stdout")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("sym", help="symmetric-power block structure")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument(
        "--check",
        action="store_true",
        help="cross-check against the Jordan-type oracle on the transition matrix",
    )
    p.add_argument("--out", help="write the report here instead of stdout")
    p.set_defaults(func=cmd_sym)

    p = sub.add_parser("dyn", help="dynamical-degree report for a Picard lattice")
    p.add_argument("--lattice", required=True, help="lattice JSON file")
    p.add_argument("--degree", type=int, required=True, help="fibre degree")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.set_defaults(func=cmd_dyn)

    p = sub.add_parser("verify-certificate", help="replay a certificate or proof")
    p.add_argument("certificate", help="JSON-lines certificate file")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.set_defaults(func=cmd_verify_certificate)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage already; normalize other codes
        return 2 if exc.code else 0
    if args.jobs < 1:
        print("pbundle: --jobs must be at least 1", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except UsageError as exc:
        print("pbundle: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
