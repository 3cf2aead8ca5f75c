#!/usr/bin/env python3
"""
Command-Line Interface for the ternary DHT toolkit
Field inspection, sequence generation, DHT spectra and pair search, verification suites
"""

import argparse
import json
import os
import sys
from typing import List, Optional

from config import get_setting
from console import error, log

EPILOG = """
EXAMPLES:
  python3 cli_interface.py field info --n 5
  python3 cli_interface.py seq gen --family lin --n 5 --out sequences/lin5.json
  python3 cli_interface.py seq autocorr sequences/lin5.json --json
  python3 cli_interface.py dht spectrum --n 3 --v 16 --t 7 --gamma 0 --csv
  python3 cli_interface.py dht check-pair --n 3 --v 16 --t 7
  python3 cli_interface.py dht search --n 3 --screen both --jobs 4 --json
  python3 cli_interface.py verify lin --n 7
  python3 cli_interface.py verify hamming --n 11 --timing --json
  python3 cli_interface.py verify lemmas --n 9 --samples 20000 --seed 7
  python3 cli_interface.py gauss check --n 5 --tol 1e-6

Exit status: 0 when every check passes, 1 when a check fails, 2 on rejected input.
"""


def _fmt(args) -> str:
    if getattr(args, "csv", False):
        return "csv"
    return "json" if args.json else "text"


def _emit(payload, args) -> None:
    from harness import emit_report

    sys.stdout.write(emit_report(payload, _fmt(args), include_timing=True if args.timing else None))
    sys.stdout.flush()


def _exit_code(passed: bool) -> int:
    return 0 if passed else 1


def cmd_field_info(args) -> int:
    from field import build_field, field_info

    poly = [int(c) for c in args.poly.split(",")] if args.poly else None
    sys.stdout.write(json.dumps(field_info(build_field(args.n, poly))) + "\n")
    return 0


def cmd_seq_gen(args) -> int:
    from dht import check_realizable, lin_pair, trace_function
    from field import build_field
    from sequence_io import save_sequence
    from sequences import build_realized_sequence, lin_sequence, m_sequence

    ctx = build_field(args.n)
    if args.family == "m":
        seq = m_sequence(ctx)
    elif args.family == "lin":
        seq = lin_sequence(ctx)
    else:
        v, t = lin_pair(args.n) if args.v is None or args.t is None else (args.v, args.t)
        report = check_realizable(ctx, trace_function(ctx), v, t)
        if not report.realizable:
            error(f"(v={v}, t={t}) is not realizable at n={args.n}: {report.witness}")
            return 1
        seq = build_realized_sequence(report, ctx)

    out = args.out or os.path.join(get_setting("sequence_dir", "sequences"), f"{args.family}_n{args.n}.json")
    save_sequence(seq, out)
    log("SEQ", f"wrote {seq.period} digits to {out}")
    if args.json:
        sys.stdout.write(json.dumps({"path": out, "n": seq.n, "family": seq.family, "period": seq.period}) + "\n")
    else:
        print(f"Sequence saved: {out} (family={seq.family}, period={seq.period})")
    return 0


def cmd_seq_autocorr(args) -> int:
    from sequence_io import autocorrelation_csv, autocorrelation_rows, load_sequence

    seq = load_sequence(args.file)
    jobs = args.jobs or int(get_setting("jobs", 1))
    rows = autocorrelation_rows(seq, jobs)
    two_level = rows[0]["re"] == seq.period and all(
        r["re"] == -1 and r["omegaCoeff"] == 0 for r in rows[1:])

    if args.csv_out:
        autocorrelation_csv(seq, args.csv_out, jobs)
        log("SEQ", f"wrote {len(rows)} rows to {args.csv_out}")
    payload = {
        "schema": get_setting("report.schema", "ternary-dht/1"),
        "command": "seq autocorr",
        "n": seq.n,
        "period": seq.period,
        "family": seq.family,
        "pass": two_level,
        "twoLevel": two_level,
    }
    if args.json:
        payload["rows"] = rows
        _emit(payload, args)
    elif args.csv:
        _emit(rows, args)
    else:
        _emit(payload, args)
    return _exit_code(two_level)


def cmd_dht_spectrum(args) -> int:
    from dht import first_order_mdht, second_order_mdht, spectrum_rows, trace_function
    from field import build_field

    ctx = build_field(args.n)
    gamma = int(ctx.exp_table[args.gamma % ctx.order])
    f = trace_function(ctx)
    if args.t is None:
        spectrum = first_order_mdht(ctx, f, args.v, gamma)
    else:
        spectrum = second_order_mdht(ctx, f, args.v, args.t, gamma)
    rows = spectrum_rows(spectrum)
    if args.json:
        _emit({"schema": get_setting("report.schema", "ternary-dht/1"), "command": "dht spectrum",
               "params": {"n": args.n, "v": args.v, "t": args.t, "gamma": args.gamma}, "rows": rows}, args)
    else:
        _emit(rows, args)
    return 0


def cmd_dht_check_pair(args) -> int:
    from math import gcd

    from dht import check_realizable, trace_function
    from field import build_field
    from harness import VerificationReport
    from weights import weight_criterion

    ctx = build_field(args.n)
    report = VerificationReport("dht check-pair", {"n": args.n, "v": args.v, "t": args.t})
    pair = check_realizable(ctx, trace_function(ctx), args.v, args.t)
    report.add_check("exact", pair.realizable, d=pair.d, witness=pair.witness)

    if gcd(args.t, ctx.order) == 1 and pair.d > 1:
        screen = weight_criterion(args.v, args.t, args.n)
        report.add_check("weightsAgree", screen.realizable == pair.realizable,
                         screen=screen.realizable, cosetReps=screen.coset_representatives())
    _emit(report.finish(), args)
    return _exit_code(report.passed)


def cmd_dht_search(args) -> int:
    from harness import run_search

    q1 = 3 ** args.n - 1
    v_range = range(args.v_from or 1, (args.v_to or q1 - 1) + 1)
    t_range = range(args.t_from or 1, (args.t_to or q1 - 1) + 1)
    jobs = args.jobs or int(get_setting("jobs", 1))
    result = run_search(args.n, v_range, t_range, args.screen, jobs)
    _emit(result, args)
    return _exit_code(result.passed)


def cmd_verify_lin(args) -> int:
    from harness import verify_lin

    report = verify_lin(args.n)
    _emit(report, args)
    return _exit_code(report.passed)


def cmd_verify_hamming(args) -> int:
    from harness import verify_hamming

    report = verify_hamming(args.n)
    _emit(report, args)
    return _exit_code(report.passed)


def cmd_verify_lemmas(args) -> int:
    from harness import verify_lemmas

    report = verify_lemmas(args.n, args.samples, args.seed)
    _emit(report, args)
    return _exit_code(report.passed)


def cmd_gauss_check(args) -> int:
    from harness import gauss_check

    report = gauss_check(args.n, args.tol)
    _emit(report, args)
    return _exit_code(report.passed)


def _add_common_flags(parser: argparse.ArgumentParser, defaults: bool):
    # leaf parsers suppress defaults so flags given before the subcommand survive
    unset = {} if defaults else {"default": argparse.SUPPRESS}
    parser.add_argument("--json", action="store_true", help="JSON output", **unset)
    parser.add_argument("--jobs", type=int, help="worker processes (default from config)", **unset)
    parser.add_argument("--seed", type=int, help="seed for randomized suites", **unset)
    parser.add_argument("--timing", action="store_true", help="include elapsedMs in reports", **unset)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    _add_common_flags(common, defaults=False)

    parser = argparse.ArgumentParser(
        prog="cli_interface.py",
        description="Ternary DHT toolkit - Command Interface",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    _add_common_flags(parser, defaults=True)
    groups = parser.add_subparsers(dest="group", required=True)

    field_p = groups.add_parser("field", help="finite field inspection").add_subparsers(dest="action", required=True)
    p = field_p.add_parser("info", parents=[common], help="print {n, q, modulus, alphaOrder}")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--poly", help="override modulus coefficients c0,c1,...,cn")
    p.set_defaults(handler=cmd_field_info)

    seq_p = groups.add_parser("seq", help="sequence generation and correlation").add_subparsers(dest="action", required=True)
    p = seq_p.add_parser("gen", parents=[common], help="generate an m, lin or dht-realized sequence")
    p.add_argument("--family", choices=["m", "lin", "dht"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--v", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--out")
    p.set_defaults(handler=cmd_seq_gen)

    p = seq_p.add_parser("autocorr", parents=[common], help="exact autocorrelation profile of a sequence file")
    p.add_argument("file")
    p.add_argument("--csv", action="store_true", help="CSV rows on stdout")
    p.add_argument("--csv-out", help="also write tau,re,omegaCoeff rows to this file")
    p.set_defaults(handler=cmd_seq_autocorr)

    dht_p = groups.add_parser("dht", help="decimation-Hadamard transforms").add_subparsers(dest="action", required=True)
    p = dht_p.add_parser("spectrum", parents=[common], help="exact multiplexing DHT spectrum of Tr")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--t", type=int)
    p.add_argument("--gamma", type=int, default=0, help="gamma = alpha^GAMMA")
    p.add_argument("--csv", action="store_true")
    p.set_defaults(handler=cmd_dht_spectrum)

    p = dht_p.add_parser("check-pair", parents=[common], help="exact realizability of (v, t)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.set_defaults(handler=cmd_dht_check_pair)

    p = dht_p.add_parser("search", parents=[common], help="sweep (v, t) ranges for realizable pairs")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--v-from", type=int)
    p.add_argument("--v-to", type=int)
    p.add_argument("--t-from", type=int)
    p.add_argument("--t-to", type=int)
    p.add_argument("--screen", choices=["weights", "exact", "both"], default="both")
    p.add_argument("--csv", action="store_true")
    p.set_defaults(handler=cmd_dht_search)

    verify_p = groups.add_parser("verify", help="verification suites").add_subparsers(dest="action", required=True)
    p = verify_p.add_parser("lin", parents=[common], help="Lin sequence and its realizable pair")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(handler=cmd_verify_lin)

    p = verify_p.add_parser("hamming", parents=[common], help="H(j) weight theorem")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(handler=cmd_verify_hamming)

    p = verify_p.add_parser("lemmas", parents=[common], help="digit-combinatorics lemma checks")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int)
    p.set_defaults(handler=cmd_verify_lemmas)

    gauss_p = groups.add_parser("gauss", help="Gauss-sum rails").add_subparsers(dest="action", required=True)
    p = gauss_p.add_parser("check", parents=[common], help="numeric Gauss-sum identities")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--tol", type=float)
    p.set_defaults(handler=cmd_gauss_check)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    if not argv:
        parser.print_help()
        return 0
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ValueError, ArithmeticError, FileNotFoundError) as exc:
        error(f"{type(exc).__name__}: {exc}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
