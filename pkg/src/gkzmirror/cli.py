"""Command-line front end: series export, integrality checks, lemma sweeps.

Exit codes: 0 all checks passed, 1 a check failed (witnesses in the report),
2 usage or input error, 3 internal error.  All output is deterministic for
fixed inputs and seeds: JSON keys are sorted, series terms are emitted in
graded lexicographic order, and sweep witnesses are canonically ordered.
"""

import argparse
import json
import os
import sys

from . import congruence, exact, gkz
from .congruence import LEMMA_TOKENS, SweepRange, run_verifier
from .reports import merge_reports
from .series import P_INTEGRALITY_MODES, Substitution, is_integral, \
    is_p_integral


class UsageError(ValueError):
    pass


WHAT_CHOICES = ("F", "G-L", "G-i", "q-i", "q-L")
CHECK_CHOICES = ("integrality", "p-integrality", "reduction", "pipeline")


def resolve_spec(token):
    """Catalog name, then JSON file path, then inline JSON object."""
    if token in gkz.CATALOG_NAMES:
        return gkz.catalog(token)
    text = None
    if token.lstrip().startswith("{"):
        text = token
    elif os.path.exists(token):
        with open(token) as fh:
            text = fh.read()
    if text is None:
        raise UsageError(f"unknown spec {token!r}: not a catalog name "
                         f"({', '.join(gkz.CATALOG_NAMES)}), file, or inline JSON")
    try:
        rec = json.loads(text)
        return gkz.GkzSpec.from_dict(rec), None
    except (ValueError, KeyError, TypeError) as e:
        raise UsageError(f"bad spec {token!r}: {e}")


def parse_primes(text):
    out = []
    for piece in text.split(","):
        piece = piece.strip()
        if not piece:
            continue
        try:
            p = int(piece)
        except ValueError:
            raise UsageError(f"bad prime {piece!r}")
        if not exact.is_prime(p):
            raise UsageError(f"{p} is not prime")
        out.append(p)
    if not out:
        raise UsageError("empty prime list")
    return tuple(out)


def parse_vector(text, d, what="vector"):
    try:
        vec = tuple(int(x) for x in text.replace("(", "").replace(")", "").split(","))
    except ValueError:
        raise UsageError(f"bad {what} {text!r}")
    if len(vec) != d:
        raise UsageError(f"{what} {text!r} needs {d} entries")
    return vec


def build_parser():
    parser = argparse.ArgumentParser(
        prog="gkzmirror",
        description="exact hypergeometric mirror-type maps: build series, "
                    "certify integrality, verify congruences")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output(p):
        p.add_argument("--out", help="write to this file instead of stdout")
        p.add_argument("--format", default="json", choices=("json", "csv", "table"))

    p = sub.add_parser("series", help="export series coefficients")
    p.add_argument("spec", help="catalog name, spec file, or inline JSON")
    p.add_argument("--what", default="F", choices=WHAT_CHOICES)
    p.add_argument("--degree", type=int, default=6)
    p.add_argument("--L", help="weight vector, e.g. 3,0")
    p.add_argument("--i", type=int, help="variable index (1-based)")
    add_output(p)

    p = sub.add_parser("check", help="run an integrality or congruence check")
    p.add_argument("spec")
    p.add_argument("--check", default="pipeline", choices=CHECK_CHOICES)
    p.add_argument("--primes", default="2,3,5")
    p.add_argument("--degree", type=int, default=6)
    p.add_argument("--L")
    p.add_argument("--i", type=int)
    p.add_argument("--mode", default="Zp", help="p-integrality class "
                   f"({', '.join(sorted(P_INTEGRALITY_MODES))})")
    p.add_argument("--allow-inadmissible", action="store_true",
                   help="run even when L is not dominated by any weight vector")
    add_output(p)

    p = sub.add_parser("verify", help="brute-force verify a lemma on a sweep")
    p.add_argument("--lemma", required=True, choices=LEMMA_TOKENS)
    p.add_argument("--spec", help="catalog name, spec file, or inline JSON")
    p.add_argument("--L")
    p.add_argument("--p", type=int, help="single prime (overrides --primes)")
    p.add_argument("--primes", default="2,3")
    p.add_argument("--r", type=int, default=3, help="levels for the box decomposition")
    p.add_argument("--d", type=int, default=2, help="dimension for map-based sweeps")
    p.add_argument("--s-max", type=int, default=1)
    p.add_argument("--box", type=int, default=4)
    p.add_argument("--m-bound", type=int, default=2)
    p.add_argument("--degree", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=5)
    p.add_argument("--j-max", type=int, default=500)
    add_output(p)

    p = sub.add_parser("specialize", help="equate or weight variables in a series")
    p.add_argument("spec")
    p.add_argument("--map", required=True, dest="map_text",
                   help='e.g. "z1=z2" or "z1=2*z2^3"')
    p.add_argument("--degree", type=int, default=6)
    p.add_argument("--what", default="F", choices=WHAT_CHOICES)
    p.add_argument("--L")
    p.add_argument("--i", type=int)
    add_output(p)

    p = sub.add_parser("catalog", help="list built-in example names")
    add_output(p)

    return parser


def build_series(spec, substitution, what, degree, L_text, i_arg):
    """Resolve one of the exportable series, applying the substitution last."""
    if degree < 0:
        raise UsageError("--degree must be nonnegative")
    L = None
    if what in ("G-L", "q-L"):
        if L_text is not None:
            L = parse_vector(L_text, spec.d, "--L")
        elif spec.L is not None:
            L = spec.L
        else:
            raise UsageError(f"--what {what} needs --L (or a spec with L)")
    i = None
    if what in ("G-i", "q-i"):
        if i_arg is None:
            raise UsageError(f"--what {what} needs --i")
        if not 1 <= i_arg <= spec.d:
            raise UsageError(f"--i must be in 1..{spec.d}")
        i = i_arg - 1
    if what == "F":
        s = gkz.gkz_series(spec, degree)
    elif what == "G-L":
        s = gkz.harmonic_series(spec, L, degree)
    elif what == "G-i":
        s = gkz.log_companion(spec, i, degree)
    elif what == "q-i":
        s = gkz.canonical_coordinate(spec, i, degree)
    else:
        s = gkz.mirror_type_map(spec, L, degree)
    if substitution is not None:
        s = s.specialize(substitution)
    return s


def render_series(series, fmt):
    rec = series.to_record()
    if fmt == "json":
        return json.dumps(rec, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        header = ",".join([f"m{j + 1}" for j in range(rec["d"])] + ["num", "den"])
        rows = [header]
        for t in rec["terms"]:
            rows.append(",".join([str(x) for x in t["m"]] + [t["num"], t["den"]]))
        return "\n".join(rows) + "\n"
    lines = [f"d={rec['d']} D={rec['D']}"]
    for t in rec["terms"]:
        mono = " ".join(f"m{j + 1}^{e}" for j, e in enumerate(t["m"]) if e) or "1"
        value = t["num"] if t["den"] == "1" else f"{t['num']}/{t['den']}"
        lines.append(f"{mono:24} {value}")
    return "\n".join(lines) + "\n"


def render_report(report, fmt):
    rec = report.to_record()
    if fmt == "json":
        return json.dumps(rec, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        rows = ["params,num,den,required_valuation,actual_valuation"]
        for w in rec["witnesses"]:
            params = json.dumps(w["params"], sort_keys=True).replace('"', "'")
            rows.append(",".join(['"' + params + '"', w["value"]["num"],
                                  w["value"]["den"], str(w["required_valuation"]),
                                  str(w["actual_valuation"])]))
        return "\n".join(rows) + "\n"
    lines = [report.summary()]
    for w in rec["witnesses"][:50]:
        value = w["value"]["num"]
        if w["value"]["den"] != "1":
            value += "/" + w["value"]["den"]
        lines.append(f"  witness {json.dumps(w['params'], sort_keys=True)}: "
                     f"value {value}, required v>={w['required_valuation']}, "
                     f"got {w['actual_valuation']}")
    if len(rec["witnesses"]) > 50:
        lines.append(f"  ... {len(rec['witnesses']) - 50} more witnesses")
    return "\n".join(lines) + "\n"


def emit(text, out_path):
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_series(args):
    spec, sub = resolve_spec(args.spec)
    series = build_series(spec, sub, args.what, args.degree, args.L, args.i)
    emit(render_series(series, args.format), args.out)
    return 0


def cmd_specialize(args):
    spec, _ = resolve_spec(args.spec)
    series = build_series(spec, None, args.what, args.degree, args.L, args.i)
    try:
        submap = Substitution.parse(args.map_text, spec.d)
    except ValueError as e:
        raise UsageError(str(e))
    emit(render_series(series.specialize(submap), args.format), args.out)
    return 0


def _check_targets(spec, sub, degree, L, i):
    """(label, series) pairs whose coefficients the check inspects."""
    if L is not None:
        s = gkz.mirror_type_map(spec, L, degree)
        if sub is not None:
            s = s.specialize(sub)
        return [(f"mirror-type L={list(L)}", s)]
    if i is not None:
        s = gkz.canonical_coordinate(spec, i, degree)
        if sub is not None:
            s = s.specialize(sub)
        return [(f"canonical-coordinate i={i + 1}", s)]
    out = []
    for j in range(spec.d):
        s = gkz.canonical_coordinate(spec, j, degree)
        if sub is not None:
            s = s.specialize(sub)
        out.append((f"canonical-coordinate i={j + 1}", s))
    return out


def _reduction_pairs(spec, sub, degree, L, i):
    f = gkz.gkz_series(spec, degree)
    if L is not None:
        pairs = [(f"L={list(L)}", gkz.harmonic_series(spec, L, degree))]
    elif i is not None:
        pairs = [(f"i={i + 1}", gkz.log_companion(spec, i, degree))]
    else:
        pairs = [(f"i={j + 1}", gkz.log_companion(spec, j, degree))
                 for j in range(spec.d)]
    if sub is not None:
        f = f.specialize(sub)
        pairs = [(label, g.specialize(sub)) for label, g in pairs]
    return f, pairs


def cmd_check(args):
    spec, sub = resolve_spec(args.spec)
    primes = parse_primes(args.primes)
    if args.degree < 0:
        raise UsageError("--degree must be nonnegative")
    L = parse_vector(args.L, spec.d, "--L") if args.L is not None else spec.L
    i = None
    if args.i is not None:
        if not 1 <= args.i <= spec.d:
            raise UsageError(f"--i must be in 1..{spec.d}")
        i = args.i - 1
    if L is not None and not args.allow_inadmissible and args.check != "p-integrality":
        gkz.require_admissible(spec, L)

    if args.check == "pipeline":
        report = congruence.check_pipeline(spec, L, primes, args.degree, sub,
                                           allow_inadmissible=True)
    elif args.check == "integrality":
        reports = []
        for label, series in _check_targets(spec, sub, args.degree, L, i):
            rep = is_integral(series)
            rep.params["target"] = label
            reports.append(rep)
        report = merge_reports("integrality", _base_params(args, spec), reports)
    elif args.check == "p-integrality":
        if args.mode not in P_INTEGRALITY_MODES:
            raise UsageError(f"unknown mode {args.mode!r}")
        reports = []
        for label, series in _check_targets(spec, sub, args.degree, L, i):
            for p in primes:
                rep = is_p_integral(series, p, args.mode)
                rep.params["target"] = label
                reports.append(rep)
        report = merge_reports("p-integrality", _base_params(args, spec), reports)
    else:  # reduction
        f, pairs = _reduction_pairs(spec, sub, args.degree, L, i)
        reports = []
        for label, g in pairs:
            for p in primes:
                rep = congruence.check_reduction(f, g, p)
                rep.params["target"] = label
                reports.append(rep)
        report = merge_reports("reduction", _base_params(args, spec), reports)

    emit(render_report(report, args.format), args.out)
    return 0 if report.passed else 1


def _base_params(args, spec):
    return {"spec": spec.to_dict(), "check": args.check, "primes": args.primes,
            "degree": args.degree, "L": args.L, "i": args.i}


def cmd_verify(args):
    primes = (args.p,) if args.p is not None else None
    if primes is not None and not exact.is_prime(args.p):
        raise UsageError(f"{args.p} is not prime")
    if primes is None:
        primes = parse_primes(args.primes)
    spec = None
    L = None
    if args.spec is not None:
        spec, _ = resolve_spec(args.spec)
        if args.L is not None:
            L = parse_vector(args.L, spec.d, "--L")
    rng = SweepRange(primes=primes, s_max=args.s_max, d=args.d, box=args.box,
                     m_bound=args.m_bound, degree=args.degree, seed=args.seed,
                     count=args.count, r=args.r, j_max=args.j_max)
    report = run_verifier(args.lemma, rng, spec=spec, L=L)
    emit(render_report(report, args.format), args.out)
    return 0 if report.passed else 1


def cmd_catalog(args):
    names = gkz.CATALOG_NAMES
    if args.format == "json":
        entries = []
        for name in names:
            spec, sub = gkz.catalog(name)
            entries.append({"name": name, "spec": spec.to_dict(),
                            "specialized": sub is not None})
        emit(json.dumps(entries, sort_keys=True, indent=2) + "\n", args.out)
    else:
        emit("\n".join(names) + "\n", args.out)
    return 0


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    handlers = {"series": cmd_series, "check": cmd_check, "verify": cmd_verify,
                "specialize": cmd_specialize, "catalog": cmd_catalog}
    try:
        return handlers[args.command](args)
    except gkz.InadmissibleWeightError as e:
        print(f"error: {e} (use --allow-inadmissible to force)", file=sys.stderr)
        return 2
    except ValueError as e:
        # UsageError plus input-contract violations raised by the library
        print(f"error: {e}", file=sys.stderr)
        return 2
    except Exception as e:  # noqa: BLE001 - exit-code contract
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
