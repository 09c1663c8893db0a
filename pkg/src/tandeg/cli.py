"""Command-line interface: construct, verify, sweep.

Exit codes: 0 pass, 1 verified failure, 2 hypothesis violation, 3 I/O or schema error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .artin_schreier import ASField, build_main
from .constructors import (
    CHECK_NAMES,
    Theorem1Params,
    VerifyConfig,
    esteves_homma,
    theorem1,
    theorem1_sigmas,
    verify_all,
)
from .curves import ParamCurve
from .errors import HypothesisViolation, MalformedInput, TandegError
from .fields import FieldSpec, make_field, prime_power
from .poly import Poly
from .report import build_report, summary_lines
from .serialize import asfield_to_dict, curve_to_dict, read_file, write_file
from .sweep import sweep, write_csv
from .vspace import Automorphism

EXIT_PASS, EXIT_FAIL, EXIT_HYPOTHESIS, EXIT_IO = 0, 1, 2, 3


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tandeg", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    con = sub.add_parser("construct", help="write a curve file")
    csub = con.add_subparsers(dest="family", required=True)
    eh = csub.add_parser("esteves-homma")
    eh.add_argument("--p", type=int, required=True)
    th = csub.add_parser("theorem1")
    th.add_argument("--p", type=int, required=True)
    th.add_argument("--q", type=int, required=True)
    th.add_argument("--n", type=int, required=True)
    am = csub.add_parser("as-main")
    am.add_argument("--p", type=int, required=True)
    am.add_argument("--q", type=int, required=True)
    am.add_argument("--g", type=_ints, required=True, help="coefficients of g(y), low degree first")
    am.add_argument("--alpha", type=int, required=True)
    am.add_argument("--N", type=int, required=True)
    for p in (eh, th, am):
        p.add_argument("-o", "--output", help="curve file path")

    ver = sub.add_parser("verify", help="run the checks on a curve file")
    ver.add_argument("-i", "--input", required=True)
    ver.add_argument("-o", "--output", help="report path (default: <input>.report.json)")
    ver.add_argument("--checks", type=lambda s: [x for x in s.split(",") if x],
                     help=f"subset of {','.join(CHECK_NAMES)}")
    ver.add_argument("--samples", type=int, default=50)
    ver.add_argument("--ext-deg", type=int, default=None)
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--symbolic-cap", type=int, default=2000)
    ver.add_argument("--alpha", type=_ints, action="append",
                     help="translation amount as power-basis digits (repeatable)")

    sw = sub.add_parser("sweep", help="tabulate the theorem1 family")
    sw.add_argument("--p", type=_ints, required=True)
    sw.add_argument("--n-max", type=int, required=True)
    sw.add_argument("--q-max", type=int, default=None)
    sw.add_argument("--max-degree", type=int, default=None)
    sw.add_argument("--symbolic-cap", type=int, default=2000)
    sw.add_argument("--samples", type=int, default=50)
    sw.add_argument("--seed", type=int, default=0)
    sw.add_argument("--csv", default="sweep.csv")
    sw.add_argument("--json", default="sweep.json")
    return ap


def _construct(args) -> int:
    if args.family == "esteves-homma":
        c = esteves_homma(args.p)
        obj, default, desc = curve_to_dict(c), f"esteves_homma_p{args.p}.json", f"degree {c.degree}"
    elif args.family == "theorem1":
        c = theorem1(Theorem1Params(args.p, args.q, args.n))
        obj, default, desc = curve_to_dict(c), f"theorem1_{args.p}_{args.q}_{args.n}.json", f"degree {c.degree}"
    else:
        F = make_field(args.p)
        spec = _as_spec(args.p, args.q)
        asf = ASField(spec, args.q, Poly.from_coeffs(F, args.g).lift(spec))
        alpha = spec.elem(args.alpha)
        if not alpha or not asf.in_fq(alpha):
            raise HypothesisViolation(f"alpha = {args.alpha} must be a nonzero element of GF({args.q})")
        if args.N < 3:
            raise HypothesisViolation("N >= 3 is required")
        if args.p == 2:
            raise HypothesisViolation("p > 2 is required")
        obj = asfield_to_dict(asf, {"alpha": list(alpha.coeffs), "N": args.N, "n": 1})
        default, desc = f"as_main_p{args.p}_q{args.q}.json", f"Artin-Schreier, N = {args.N}, genus {asf.genus}"
    path = args.output or default
    write_file(path, obj, indent=None)
    print(path)
    print(desc)
    return EXIT_PASS


def _as_spec(p: int, q: int) -> FieldSpec:
    pp = prime_power(q)
    if pp is None or pp[0] != p:
        raise HypothesisViolation(f"q = {q} is not a power of p = {p}")
    return make_field(p, pp[1])


def _default_sigmas(c: ParamCurve, alphas) -> list[Automorphism]:
    if alphas:
        return [Automorphism.translation(c.spec.elem(a if len(a) > 1 else a[0])) for a in alphas]
    if c.meta.get("family") == "theorem1":
        return theorem1_sigmas(Theorem1Params(int(c.meta["p"]), int(c.meta["q"]), int(c.meta["n"])))
    return [Automorphism.translation(c.spec.one)]


def _verify(args) -> int:
    parsed = read_file(args.input)
    cfg = VerifyConfig(symbolic_cap=args.symbolic_cap, samples=args.samples, ext_deg=args.ext_deg,
                       seed=args.seed, checks=args.checks)
    if isinstance(parsed, ParamCurve):
        c = parsed
        unknown = set(args.checks or ()) - set(CHECK_NAMES)
        if unknown:
            raise MalformedInput(f"unknown checks: {sorted(unknown)}")
        cert = verify_all(c, _default_sigmas(c, args.alpha), cfg)
        curve_desc = curve_to_dict(c)
    else:
        asf, build = parsed
        alpha = asf.spec.elem(tuple(build.get("alpha", [1] + [0] * (asf.spec.m - 1))))
        if args.alpha:
            a = args.alpha[0]
            alpha = asf.spec.elem(a if len(a) > 1 else a[0])
        cert = build_main(asf, alpha, int(build.get("N", 3)), n=int(build.get("n", 1)),
                          ext_deg=args.ext_deg, seed=args.seed)
        curve_desc = asfield_to_dict(asf, build)
        if args.checks:
            cert.checks = {k: v for k, v in cert.checks.items() if any(k.startswith(w) for w in args.checks)}
    report = build_report(cert, curve_desc, cfg.to_dict())
    out = args.output or str(Path(args.input).with_suffix("")) + ".report.json"
    write_file(out, report)
    for line in summary_lines(report):
        print(line)
    print(f"report: {out}")
    return EXIT_PASS if report["verdict"] == "pass" else EXIT_FAIL


def _sweep(args) -> int:
    rows = sweep(args.p, args.n_max, args.q_max, args.symbolic_cap, args.samples, args.seed, args.max_degree)
    write_csv(rows, args.csv)
    with open(args.json, "w", encoding="utf-8") as fh:
        json.dump(rows, fh, indent=2, sort_keys=True)
        fh.write("\n")
    if not rows:
        print("no valid (p, q, n) in range")
    for r in rows:
        print(f"({r['p']},{r['q']},{r['n']}) degree={r['degree']} count={r.get('generic_count')} "
              f"sampled={r.get('sampled_count')} gauss={r.get('gauss_degree')} {r['status']} {r.get('wall_s')}s")
    print(f"csv: {args.csv}  json: {args.json}")
    return EXIT_PASS


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if args.command == "construct":
            return _construct(args)
        if args.command == "verify":
            return _verify(args)
        return _sweep(args)
    except MalformedInput as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    except HypothesisViolation as e:
        print(f"hypothesis violation: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except TandegError as e:
        print(f"invalid parameters: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_HYPOTHESIS


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
