"""
Verification harness for the ternary DHT toolkit
Builds verification reports, runs the parallel (v, t) realizable-pair search
and renders reports as JSON, CSV or text
"""

import csv
import io
import json
import time
from math import gcd
from multiprocessing import Pool
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from charsums import check_gauss_identities, check_power_sum, exact_power_sum
from config import get_setting
from console import log, warn
from dht import (
    calibrate_unit,
    calibrated_unit,
    check_realizable,
    lin_pair,
    lin_trace_form,
    table_matches_report,
    trace_function,
)
from field import build_field
from sequences import build_realized_sequence, equivalent_up_to_shift_decimation, is_ideal_two_level, lin_sequence
from weights import (
    BadDegreeError,
    H,
    RunBlock,
    check_add_two_delta,
    check_block_delta,
    check_one_digit_delta,
    check_run_balance,
    check_run_sum,
    check_shift_congruence,
    lin_equality_set,
    modulus,
    one_digit_edits,
    sigma,
    verify_lin_weight_theorem,
    weight_criterion,
    weight_table,
    wt,
)

SCREEN_MODES = ("weights", "exact", "both")
FORMATS = ("json", "csv", "text")


class UnknownFormatError(ValueError):
    """Report format other than json, csv or text"""


class VerificationReport:
    """Named checks with counters; passes when every check passes"""

    def __init__(self, command: str, params: Dict, seed: Optional[int] = None):
        self.command = command
        self.params = params
        self.seed = seed
        self.details: List[Dict] = []
        self.summary: Dict = {}
        self.elapsed_ms: Optional[int] = None
        self._started = time.perf_counter()

    def add_check(self, name: str, status: bool, **counters) -> bool:
        self.details.append({"name": name, "status": bool(status), "counters": counters})
        if not status:
            log("VERIFY", f"{self.command}: check '{name}' failed {counters}")
        return bool(status)

    @property
    def passed(self) -> bool:
        return all(d["status"] for d in self.details)

    def finish(self) -> "VerificationReport":
        self.elapsed_ms = int((time.perf_counter() - self._started) * 1000)
        return self

    def to_dict(self, include_timing: Optional[bool] = None) -> Dict:
        if include_timing is None:
            include_timing = bool(get_setting("report.include_timing", False))
        out = {
            "schema": get_setting("report.schema", "ternary-dht/1"),
            "command": self.command,
            "params": self.params,
            "pass": self.passed,
            "seed": self.seed,
            **self.summary,
            "details": self.details,
        }
        if include_timing and self.elapsed_ms is not None:
            out["elapsedMs"] = self.elapsed_ms
        return out


class SearchResult:
    """Outcome of a (v, t) sweep"""

    def __init__(self, n: int, screen_mode: str):
        self.n = n
        self.screen_mode = screen_mode
        self.screened = 0
        self.skipped = 0
        self.confirmed: List[Dict] = []
        self.disagreements: List[Dict] = []
        self.elapsed_ms: Optional[int] = None

    @property
    def passed(self) -> bool:
        return not self.disagreements

    def to_dict(self, include_timing: Optional[bool] = None) -> Dict:
        if include_timing is None:
            include_timing = bool(get_setting("report.include_timing", False))
        out = {
            "schema": get_setting("report.schema", "ternary-dht/1"),
            "command": "dht search",
            "n": self.n,
            "screen": self.screen_mode,
            "pass": self.passed,
            "screened": self.screened,
            "skipped": self.skipped,
            "confirmed": self.confirmed,
            "disagreements": self.disagreements,
        }
        if include_timing and self.elapsed_ms is not None:
            out["elapsedMs"] = self.elapsed_ms
        return out


_worker_state: Dict = {}


def _init_search_worker(n: int, modulus_coeffs: List[int], screen_mode: str):
    ctx = build_field(n, modulus_coeffs)
    _worker_state.clear()
    _worker_state.update({
        "ctx": ctx,
        "f": trace_function(ctx),
        "table": weight_table(n),
        "mode": screen_mode,
    })


def _search_pair(pair: Tuple[int, int]) -> Dict:
    v, t = pair
    ctx = _worker_state["ctx"]
    mode = _worker_state["mode"]
    d = gcd(v, ctx.order)
    row = {"v": v, "t": t, "d": d, "screen": None, "exact": None, "cosetReps": None}
    if mode in ("weights", "both"):
        screen = weight_criterion(v, t, ctx.n, _worker_state["table"])
        row["screen"] = screen.realizable
        row["cosetReps"] = screen.coset_representatives()
    if mode in ("exact", "both"):
        row["exact"] = check_realizable(ctx, _worker_state["f"], v, t).realizable
    return row


def _clip(values: Iterable[int], order: int) -> List[int]:
    return [x for x in values if 0 < x < order]


def run_search(n: int, v_range: Sequence[int], t_range: Sequence[int],
               screen_mode: str = "both", jobs: int = 1) -> SearchResult:
    """
    Weight-screen and/or exactly test every (v, t) with gcd(t, q-1) = 1 and d > 1

    Pairs are processed in (v, t) order and merged in that order whatever the job count.
    """
    if screen_mode not in SCREEN_MODES:
        raise ValueError(f"screen mode must be one of {SCREEN_MODES}")
    started = time.perf_counter()
    ctx = build_field(n)
    order = ctx.order
    result = SearchResult(n, screen_mode)

    pairs = []
    for v in _clip(v_range, order):
        for t in _clip(t_range, order):
            if gcd(t, order) != 1 or gcd(v, order) == 1:
                result.skipped += 1
                continue
            pairs.append((v, t))
    log("SEARCH", f"n={n}: {len(pairs)} pairs to test, {result.skipped} skipped, jobs={jobs}")

    if jobs <= 1:
        _init_search_worker(n, ctx.modulus, screen_mode)
        rows = [_search_pair(p) for p in pairs]
    else:
        chunksize = max(1, len(pairs) // (jobs * 8))
        with Pool(processes=jobs, initializer=_init_search_worker,
                  initargs=(n, ctx.modulus, screen_mode)) as pool:
            rows = list(pool.imap(_search_pair, pairs, chunksize=chunksize))

    for row in rows:
        if row["screen"] is not None:
            result.screened += 1
        verdict = row["exact"] if row["exact"] is not None else row["screen"]
        if screen_mode == "both" and row["screen"] != row["exact"]:
            result.disagreements.append(
                {"v": row["v"], "t": row["t"], "screen": row["screen"], "exact": row["exact"]})
            warn("SEARCH", f"screen and exact spectrum disagree at (v={row['v']}, t={row['t']})")
        if verdict:
            result.confirmed.append({"v": row["v"], "t": row["t"], "d": row["d"], "cosetReps": row["cosetReps"]})

    result.elapsed_ms = int((time.perf_counter() - started) * 1000)
    log("SEARCH", f"n={n}: {len(result.confirmed)} realizable, {len(result.disagreements)} disagreements")
    return result


def _require_lin_degree(n: int, top: int):
    if n < 3 or n > top or n % 2 == 0:
        raise BadDegreeError(f"n={n} must be odd with 3 <= n <= {top}")


def verify_lin(n: int) -> VerificationReport:
    """Two-level autocorrelation of the Lin sequence plus the realizable-pair construction behind it"""
    _require_lin_degree(n, 9)
    report = VerificationReport("verify lin", {"n": n})
    ctx = build_field(n)
    q = ctx.q

    lin = lin_sequence(ctx)
    report.add_check("linTwoLevel", is_ideal_two_level(lin), period=lin.period)

    v, t = lin_pair(n)
    pair = check_realizable(ctx, trace_function(ctx), v, t)
    report.add_check("linPairRealizable", pair.realizable, v=v, t=t, d=pair.d)

    target = q ** 3
    report.add_check("energy", all(e == target for e in pair.energies),
                     expected=target, gammas=len(pair.energies))

    screen = weight_criterion(v, t, n)
    report.add_check("weightScreen", screen.realizable and screen.equality_set == lin_equality_set(n),
                     equalitySetSize=len(screen.equality_set))

    if not pair.realizable:
        report.add_check("traceFormMatch", False, points=0)
        return report.finish()

    report.add_check("traceFormMatch", table_matches_report(ctx, pair, lin_trace_form(ctx)),
                     points=q * pair.d)
    unit = calibrate_unit(ctx, pair)
    report.add_check("unitStable", unit == calibrated_unit(n), unit=unit)

    realized = build_realized_sequence(pair, ctx)
    report.add_check("realizedTwoLevel", is_ideal_two_level(realized), period=realized.period)

    match = equivalent_up_to_shift_decimation(lin, realized.scaled(2))
    if match is None:
        report.add_check("doubledMatchesLin", False)
    else:
        report.add_check("doubledMatchesLin", True, shift=match[0], decimation=match[1])
    return report.finish()


def verify_hamming(n: int) -> VerificationReport:
    """H(j) >= 1 everywhere with equality exactly on C_1 and C_{2*3^m+1}"""
    report = VerificationReport("verify hamming", {"n": n})
    outcome = verify_lin_weight_theorem(n)
    report.summary.update(n=n, equalitySetSize=outcome["equalitySetSize"])
    report.add_check("equalitySet", outcome["pass"], equalitySetSize=outcome["equalitySetSize"],
                     firstViolation=outcome["firstViolation"])
    report.add_check("screenAgrees", outcome["screenAgrees"])
    report.add_check("shiftInvariant", outcome["shiftInvariant"])
    report.add_check("hOfTwo", outcome["hOfTwo"] is not None and outcome["hOfTwo"] >= 2, value=outcome["hOfTwo"])
    return report.finish()


class _Tally:
    def __init__(self):
        self.checked = 0
        self.failed = 0
        self.first_failure = None

    def record(self, ok: bool, instance):
        self.checked += 1
        if not ok:
            self.failed += 1
            if self.first_failure is None:
                self.first_failure = instance

    def counters(self) -> Dict:
        return {"checked": self.checked, "failed": self.failed, "firstFailure": self.first_failure}


def verify_lemmas(n: int, samples: Optional[int] = None, seed: Optional[int] = None) -> VerificationReport:
    """
    Run every digit-combinatorics lemma check at degree n

    Exhaustive up to exhaustive_lemma_max_n, otherwise on random residues drawn with seed.
    """
    if n < 2:
        raise BadDegreeError(f"n={n} must be at least 2")
    if samples is None:
        samples = int(get_setting("lemma_samples", 100000))
    if seed is None:
        seed = int(get_setting("seed", 0))
    exhaustive = n <= int(get_setting("exhaustive_lemma_max_n", 8))

    Q = modulus(n)
    all_ones = Q // 2
    if exhaustive:
        residues = np.arange(Q, dtype=np.int64)
        report = VerificationReport("verify lemmas", {"n": n, "mode": "exhaustive"})
    else:
        rng = np.random.default_rng(seed)
        residues = rng.integers(0, Q, size=samples, dtype=np.int64)
        report = VerificationReport("verify lemmas", {"n": n, "mode": "sampled", "samples": samples}, seed=seed)
    log("VERIFY", f"lemma suite at n={n} over {residues.size} residues")

    run_sum, balance, add_two, edits, shifts = _Tally(), _Tally(), _Tally(), _Tally(), _Tally()
    positions = range(n)
    for a in (int(x) for x in residues):
        for i in positions:
            add_two.record(check_add_two_delta(a, i, n), [a, i])
        if a == all_ones:
            continue
        run_sum.record(check_run_sum(a, n), a)
        balance.record(check_run_balance(a, n), a)
        for edit in one_digit_edits(a, n):
            edits.record(check_one_digit_delta(a, edit, n), [a, edit.case, edit.k, edit.r1])
        shifts.record(wt(3 * a, n) == wt(a, n) and sigma(3 * a, n) == sigma(a, n), a)

    blocks = _Tally()
    for r in range(19):
        for terminator in (0, 2):
            blocks.record(check_block_delta(RunBlock(terminator, r)), [r, terminator])

    report.add_check("runSum", run_sum.failed == 0, **run_sum.counters())
    report.add_check("blockDelta", blocks.failed == 0, **blocks.counters())
    report.add_check("runBalance", balance.failed == 0, **balance.counters())
    report.add_check("addTwoDelta", add_two.failed == 0, **add_two.counters())
    report.add_check("oneDigitDelta", edits.failed == 0, **edits.counters())
    report.add_check("shiftInvariance", shifts.failed == 0, **shifts.counters())

    if n % 2 == 1:
        congruence, h_shift = _Tally(), _Tally()
        for j in (int(x) for x in residues):
            if j == 0:
                continue
            h_shift.record(H(3 * j, n) == H(j, n), j)
            for i in positions:
                congruence.record(check_shift_congruence(j, i, n), [j, i])
        report.add_check("shiftCongruence", congruence.failed == 0, **congruence.counters())
        report.add_check("hShiftInvariance", h_shift.failed == 0, **h_shift.counters())
    return report.finish()


def gauss_check(n: int, tol: Optional[float] = None) -> VerificationReport:
    """Gauss-sum identities, the trace expansion and the d-th power sums at GF(3^n)"""
    if tol is None:
        tol = float(get_setting("tolerance", 1e-6))
    ctx = build_field(n)
    report = VerificationReport("gauss check", {"n": n, "tol": tol})

    for name, c in check_gauss_identities(ctx, tol).items():
        report.add_check(name, c["passed"] == c["total"], **c)

    power, bridge = _Tally(), _Tally()
    gammas = [int(g) for g in ctx.exp_table[:min(ctx.order, 8)]]
    for v in range(1, ctx.order):
        if gcd(v, ctx.order) == 1:
            continue
        for gamma in gammas:
            power.record(check_power_sum(ctx, v, gamma, tol), [v, gamma])
            args = ctx.mul_codes(gamma, ctx.pow_codes(ctx.exp_table, v))
            numeric = np.sum(np.exp(2j * np.pi * ctx.trace_table[args] / 3.0))
            bridge.record(abs(exact_power_sum(ctx, v, gamma).to_complex() - numeric) <= tol, [v, gamma])
    report.add_check("powerSum", power.failed == 0, **power.counters())
    report.add_check("exactBridge", bridge.failed == 0, **bridge.counters())
    return report.finish()


Renderable = Union[VerificationReport, SearchResult, Dict, List[Dict]]


def _as_rows(payload: Renderable) -> List[Dict]:
    if isinstance(payload, list):
        return payload
    if isinstance(payload, VerificationReport):
        return [
            {"name": d["name"], "status": "pass" if d["status"] else "fail",
             "counters": json.dumps(d["counters"], sort_keys=True)}
            for d in payload.details
        ]
    if isinstance(payload, SearchResult):
        return [
            {"v": c["v"], "t": c["t"], "d": c["d"], "cosetReps": json.dumps(c["cosetReps"])}
            for c in payload.confirmed
        ]
    return [payload]


def _as_dict(payload: Renderable, include_timing: Optional[bool]):
    if isinstance(payload, (VerificationReport, SearchResult)):
        return payload.to_dict(include_timing)
    return payload


def emit_report(payload: Renderable, fmt: str = "json", include_timing: Optional[bool] = None) -> str:
    """Render a report in a stable field order"""
    if fmt not in FORMATS:
        raise UnknownFormatError(f"unknown format {fmt!r}; expected one of {FORMATS}")

    if fmt == "json":
        return json.dumps(_as_dict(payload, include_timing), indent=2) + "\n"

    if fmt == "csv":
        rows = _as_rows(payload)
        buffer = io.StringIO()
        if rows:
            writer = csv.DictWriter(buffer, fieldnames=list(rows[0].keys()), lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
        return buffer.getvalue()

    data = _as_dict(payload, include_timing)
    lines = ["=" * 60]
    if isinstance(data, dict):
        lines.append(f"{data.get('command', 'report').upper()}  [{'PASS' if data.get('pass', True) else 'FAIL'}]")
        lines.append("=" * 60)
        for key, value in data.items():
            if key in ("details", "command", "pass", "schema"):
                continue
            lines.append(f"  {key}: {value}")
        for d in data.get("details", []):
            lines.append(f"  [{'PASS' if d['status'] else 'FAIL'}] {d['name']}: {d['counters']}")
    else:
        for row in data:
            lines.append("  " + ", ".join(f"{k}={v}" for k, v in row.items()))
    lines.append("=" * 60)
    return "\n".join(lines) + "\n"


if __name__ == "__main__":
    print(emit_report(verify_lin(3), "text"))
    print(emit_report(run_search(3, range(1, 26), range(1, 26), "both"), "json"))
