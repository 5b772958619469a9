"""diagfrob command line.

Exit codes: 0 verified result, 2 certified negative answer (no slack point
or infeasible), 1 any other error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import discrepancy, frobenius, linalg, oracles, reductions, serialize
from .basefind import DEFAULT_MAXDET_CAP, DEFAULT_SWEEP_K_CAP
from .errors import DiagFrobError, Infeasible, NoSlackPoint, ParseError, PipelineFailed
from .systems import StandardSystem, format_system, parse_system, parse_system_raw

EXIT_OK, EXIT_ERROR, EXIT_NEGATIVE = 0, 1, 2


def _read(path):
    if path == '-':
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise DiagFrobError(f"cannot read {path}: {exc.strerror}") from None


def _positive(text):
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _tight_params(text):
    """``p=4``, ``4`` or ``p=4,n=2``."""
    out = {'n': 1}
    for i, part in enumerate(text.split(',')):
        key, _, val = part.partition('=')
        if not val:
            key, val = ('p', 'n')[i] if i < 2 else '', key
        if key not in ('p', 'n'):
            raise argparse.ArgumentTypeError(f"bad tight-instance parameters {text!r}")
        out[key] = int(val)
    if 'p' not in out:
        raise argparse.ArgumentTypeError("tight-instance parameters need p")
    return out['p'], out['n']


def cmd_forms(args):
    M = linalg.parse_matrix(_read(args.input))
    if args.snf:
        f = linalg.snf(M)
        ok = linalg.matmul(linalg.matmul(f.P, f.original), f.Q) == f.S
        print("S =\n" + linalg.format_matrix(f.S), end='')
        print("P =\n" + linalg.format_matrix(f.P), end='')
        print("Q =\n" + linalg.format_matrix(f.Q), end='')
        print(f"invariant factors: {' '.join(map(str, f.invariant_factors))}")
        print(f"reconstruction S = P M Q: {'ok' if ok else 'FAILED'}")
    else:
        f = linalg.hnf(M)
        ok = linalg.matmul(f.H, f.Q) == f.original
        print("H =\n" + linalg.format_matrix(f.H), end='')
        print("Q =\n" + linalg.format_matrix(f.Q), end='')
        print(f"reconstruction M = H Q: {'ok' if ok else 'FAILED'}")
    return EXIT_OK if ok else EXIT_ERROR


def _emit_certificate(cert, fmt):
    if fmt == 'structured':
        print(serialize.certificate_to_text(cert))
        return
    print(f"form: {cert.form}")
    print(f"mode: {cert.mode}")
    print(f"Delta: {cert.delta}")
    if cert.base is not None:
        print(f"base rows: {' '.join(map(str, cert.base.indices))} (|det| = {cert.base.det_abs})")
    if cert.slack_input is not None:
        print(f"available slack: {cert.slack_input.min_slack}")
    if cert.rounding is not None:
        print(f"rounding error: {cert.rounding.achieved} ({cert.rounding.method})")
    if cert.threshold_t is not None:
        print(f"required slack t: {cert.threshold_t}")
    print(f"z: {' '.join(map(str, cert.z))}")
    print(f"verified: {cert.verified}")


def cmd_solve(args):
    system = parse_system(_read(args.input))
    kwargs = dict(seed=args.seed, rounding_cap=args.rounding_cap, k_cap=args.k_cap,
                  maxdet_cap=args.maxdet_cap)
    try:
        if isinstance(system, StandardSystem):
            if not system.normalized:
                system, _ = reductions.normalize_gcd(system)
                print("# right-hand side normalized: maximal minors made coprime", file=sys.stderr)
            cert = frobenius.solve_standard_with_slack(system, args.mode, **kwargs)
        else:
            cert = frobenius.solve_canonical_with_slack(system, args.mode, **kwargs)
    except NoSlackPoint as exc:
        print(f"no slack point: available slack {exc.available}, required {exc.required}")
        return EXIT_NEGATIVE
    except Infeasible as exc:
        print(f"infeasible: {exc}")
        return EXIT_NEGATIVE
    except PipelineFailed as exc:
        print(f"pipeline failed: {exc}", file=sys.stderr)
        if exc.certificate is not None:
            _emit_certificate(exc.certificate, args.format)
        return EXIT_ERROR
    _emit_certificate(cert, args.format)
    return EXIT_OK if cert.verified else EXIT_ERROR


def cmd_oracle(args):
    if args.gen_tight is not None:
        p, n = args.gen_tight
        tight = frobenius.gen_tight_instance(p, n)
        form, A, b = 'canonical', tight.A, tight.b
    elif args.input is not None:
        form, A, b = parse_system_raw(_read(args.input))
    else:
        raise DiagFrobError("oracle needs an input file or --gen-tight")
    box = [(v - args.box, v + args.box) for v in b]
    if form == 'canonical':
        report = oracles.oracle_slackfrob_box(A, box, limit=args.point_limit)
    else:
        report = oracles.oracle_diagfrob_box(A, box, limit=args.point_limit)
    print(serialize.oracle_report_to_csv(report), end='')
    for line in serialize.oracle_summary(report).splitlines():
        print(f"# {line}")
    return EXIT_OK


def cmd_gen(args):
    system = frobenius.gen_tight_instance(args.p, args.n)
    text = format_system(system, comment=f"tight instance p={args.p} n={args.n}")
    if args.output:
        Path(args.output).write_text(text)
    else:
        print(text, end='')
    return EXIT_OK


def cmd_bound(args):
    text = _read(args.input)
    try:
        system = parse_system(text)
        M = system.A
    except ParseError:
        M = linalg.parse_matrix(text)
    stats = linalg.delta_stats(M, cap=args.minor_cap)
    print(f"rank: {stats.rank}")
    print(f"Delta_j: {' '.join(map(str, stats.delta_j))}")
    print(f"gcd_j: {' '.join(map(str, stats.gcd_j))}")
    t, dt = stats.detlb
    print(f"detlb attained at order {t}: |minor| = {dt}")
    bound = discrepancy.disc_bound(M, stats)
    print(f"smallest bound shape: {bound.bound_form}")
    print(f"Beck-Fiala envelope: {bound.numeric_envelope}")
    return EXIT_OK


def build_parser():
    ap = argparse.ArgumentParser(prog='diagfrob', description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest='command', required=True)

    p = sub.add_parser('forms', help='Hermite or Smith normal form of a matrix')
    p.add_argument('input')
    g = p.add_mutually_exclusive_group()
    g.add_argument('--hnf', action='store_true', help='column Hermite form (default)')
    g.add_argument('--snf', action='store_true', help='Smith form')
    p.set_defaults(func=cmd_forms)

    p = sub.add_parser('solve', help='certify an integer point through slack rounding')
    p.add_argument('input')
    p.add_argument('--mode', choices=frobenius.MODES, default='maxdet')
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--rounding-cap', type=_positive, default=discrepancy.DEFAULT_EXHAUSTIVE_CAP)
    p.add_argument('--k-cap', type=_positive, default=DEFAULT_SWEEP_K_CAP)
    p.add_argument('--maxdet-cap', type=_positive, default=DEFAULT_MAXDET_CAP)
    p.add_argument('--format', choices=('text', 'structured'), default='text')
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser('oracle', help='brute-force threshold scan over a box of right-hand sides')
    p.add_argument('input', nargs='?')
    p.add_argument('--gen-tight', type=_tight_params, metavar='p=P[,n=N]')
    p.add_argument('--box', type=int, default=2, help='scan b_i - R .. b_i + R (default 2)')
    p.add_argument('--point-limit', type=_positive, default=oracles.DEFAULT_POINT_LIMIT)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser('gen', help='write a tight instance')
    p.add_argument('--p', type=int, required=True)
    p.add_argument('--n', type=int, default=1)
    p.add_argument('-o', '--output')
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser('bound', help='subdeterminant statistics and discrepancy envelope')
    p.add_argument('input')
    p.add_argument('--minor-cap', type=_positive, default=linalg.DEFAULT_MINOR_CAP)
    p.set_defaults(func=cmd_bound)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
    except (DiagFrobError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == '__main__':
    sys.exit(main())
