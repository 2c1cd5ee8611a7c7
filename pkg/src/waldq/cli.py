"""Command-line front ends.

``wald`` runs verification campaigns and emits deterministic reports;
``hecke`` convolves basis elements of the spherical algebra; ``quadform``
classifies a symmetric matrix over the power-series ring.  Every flag of
``wald`` can also be set through a ``WALDQ_``-prefixed environment variable
(the flag wins when both are given).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .campaigns import (
    CAMPAIGNS,
    ConfigInvalid,
    SessionConfig,
    render_report,
    run_campaign,
    single_eigen_report,
)
from .hecke import HeckeElement, convolve
from .lattice import Coweight
from .quadform import PrecisionExhausted, SymMatrixO, covering_type, diagonalize

_CAMPAIGN_HELP = {
    "min-orbit": "count closed-orbit sublattices from each orbit representative",
    "stratum-dim": "fit orbit-stratum counts to polynomials in q and cross-check",
    "counts": "check sublattice counts against the closed-form formula",
    "hecke-tables": "convolution identities, ring axioms, structure constants",
    "ic-basis": "support, monomial counts and central twist of the basis functions",
    "multone": "triangularity of the algebra action on the unit delta",
    "cs-matrix": "shape of the basis-function matrix in the delta basis",
    "module-axiom": "compatibility of the action with convolution on random data",
    "eigen": "truncated eigenfunction window checks (batch or single run)",
    "quadform-orbits": "symmetric-form invariants: constancy, parity, completeness",
    "isotropic": "isotropic line counts against a direct projective scan",
}


def _env(name):
    return os.environ.get("WALDQ_" + name)


def _env_int(name, fallback):
    raw = _env(name)
    if raw is None:
        return fallback
    try:
        return int(raw)
    except ValueError:
        raise ConfigInvalid(f"WALDQ_{name} must be an integer, got {raw!r}") from None


def _env_str(name, fallback):
    raw = _env(name)
    return fallback if raw is None else raw


def _add_common(sub):
    sub.add_argument("--q", type=int, default=_env_int("Q", 3), help="odd prime residue size")
    sub.add_argument(
        "--kind",
        default=_env_str("KIND", "split"),
        help="algebra kind: split or ramified",
    )
    sub.add_argument("--dmax", type=int, default=_env_int("DMAX", 5), help="degree bound")
    sub.add_argument("--mmax", type=int, default=_env_int("MMAX", 5), help="orbit-index bound")
    sub.add_argument(
        "--D",
        "--depth",
        dest="depth",
        type=int,
        default=_env_int("D", 6),
        help="truncation depth for matrix/eigen campaigns",
    )
    sub.add_argument("--seed", type=int, default=_env_int("SEED", 0), help="RNG seed for planned draws")
    sub.add_argument(
        "--workers", type=int, default=_env_int("WORKERS", 1), help="process-pool size"
    )
    sub.add_argument("--out", default=_env_str("OUT", None), help="write the report to this path")
    sub.add_argument(
        "--format",
        dest="fmt",
        choices=("ndjson", "json", "csv"),
        default=_env_str("FORMAT", "ndjson"),
        help="report serialization (json is an alias for ndjson)",
    )


def _build_wald_parser():
    parser = argparse.ArgumentParser(
        prog="wald",
        description="Batch verification campaigns for lattice-orbit combinatorics.",
    )
    sub = parser.add_subparsers(dest="campaign", required=True, metavar="CAMPAIGN")
    for name in CAMPAIGNS:
        p = sub.add_parser(name, help=_CAMPAIGN_HELP[name])
        _add_common(p)
        if name == "min-orbit":
            alias = sub.add_parser(
                "verify-min-orbit", help="alias for the min-orbit campaign"
            )
            _add_common(alias)
        if name == "ic-basis":
            p.add_argument(
                "--d", dest="dmax", type=int, help="alias for --dmax", default=argparse.SUPPRESS
            )
        if name == "eigen":
            p.add_argument("--e1", default=None, help="first eigenvalue (a rational) for a single run")
            p.add_argument("--alpha", default=None, help="split character value (single run)")
            p.add_argument("--beta", default=None, help="split character value (single run)")
            p.add_argument("--gamma", default=None, help="ramified character value (single run)")
    return parser


def _single_eigen(cfg, args):
    rows = []
    if cfg.kind == "split":
        if args.alpha is None or args.beta is None:
            raise ConfigInvalid("a single split eigen run needs --alpha and --beta")
        if args.gamma is not None:
            raise ConfigInvalid("--gamma does not apply to the split kind")
        rows = [("alpha", args.alpha), ("beta", args.beta)]
    else:
        if args.gamma is None:
            raise ConfigInvalid("a single ramified eigen run needs --gamma")
        if args.alpha is not None or args.beta is not None:
            raise ConfigInvalid("--alpha/--beta do not apply to the ramified kind")
        rows = [("gamma", args.gamma)]
    try:
        for _name, text in rows:
            Fraction(text)
        Fraction(args.e1)
    except (ValueError, ZeroDivisionError):
        raise ConfigInvalid("eigen parameters must be rationals like 5 or 7/2") from None
    return single_eigen_report(cfg, args.e1, rows)


def _emit(report, cfg) -> int:
    text = render_report(report, cfg.fmt)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if report["summary"]["pass"] else 1


def wald_main(argv=None) -> int:
    try:
        parser = _build_wald_parser()
        args = parser.parse_args(argv)
        name = args.campaign
        if name == "verify-min-orbit":
            name = "min-orbit"
        cfg = SessionConfig(
            q=args.q,
            kind=args.kind,
            dmax=args.dmax,
            mmax=args.mmax,
            depth=args.depth,
            seed=args.seed,
            workers=args.workers,
            out=args.out,
            fmt=args.fmt,
        ).validate()
        if name == "eigen" and getattr(args, "e1", None) is not None:
            report = _single_eigen(cfg, args)
        else:
            report = run_campaign(name, cfg)
        return _emit(report, cfg)
    except (ConfigInvalid, ValueError) as exc:
        print(f"wald: error: {exc}", file=sys.stderr)
        return 2


def hecke_main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="hecke", description="Spherical convolution of basis elements."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    conv = sub.add_parser("convolve", help="convolve two basis elements")
    conv.add_argument("--q", type=int, default=_env_int("Q", 3))
    conv.add_argument("--lhs", required=True, help='dominant pair like "(2,0)"')
    conv.add_argument("--rhs", required=True, help='dominant pair like "(1,1)"')
    try:
        args = parser.parse_args(argv)
        lhs = Coweight.parse(args.lhs)
        rhs = Coweight.parse(args.rhs)
        out = convolve(
            HeckeElement.basis(args.q, lhs), HeckeElement.basis(args.q, rhs)
        )
        print(json.dumps(out.to_json(), sort_keys=True, separators=(",", ":")))
        return 0
    except ValueError as exc:
        print(f"hecke: error: {exc}", file=sys.stderr)
        return 2


def quadform_main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="quadform",
        description="Classify a symmetric matrix over the power-series ring.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    cls = sub.add_parser("classify", help="diagonal invariant and covering type")
    cls.add_argument("--q", type=int, default=_env_int("Q", 3))
    cls.add_argument(
        "--matrix",
        required=True,
        help='JSON rows [[b11,b12],[b12,b22]], entries {"offset":k,"coeffs":[...]}',
    )
    cls.add_argument("--precision", type=int, default=None)
    try:
        args = parser.parse_args(argv)
        mat = SymMatrixO.from_json(args.q, json.loads(args.matrix))
        inv, _a, _eps = diagonalize(mat, args.precision)
        cover, in_scope = covering_type(inv, args.q)
        print(
            json.dumps(
                {
                    "a": inv.a,
                    "b": inv.b,
                    "delta": inv.delta.value,
                    "cover": cover.value,
                    "in_scope": in_scope,
                },
                sort_keys=True,
                separators=(",", ":"),
            )
        )
        return 0
    except PrecisionExhausted as exc:
        print(f"quadform: undetermined: {exc}", file=sys.stderr)
        return 1
    except (ValueError, json.JSONDecodeError) as exc:
        print(f"quadform: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(wald_main())
