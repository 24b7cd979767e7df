"""Command-line entry point exposing every operation in the package.

Machine-readable output only: JSON lines (default) or RFC-4180 CSV via
--format.  Identical argv and seed produce byte-identical primary output;
long scans checkpoint with --checkpoint and can be time-sliced with
--stop-at, resuming to the same bytes.  Every flag can also be supplied
through the environment as DIGITCOLLIDE_<FLAG>.

Exit codes: 0 success, 1 domain error (structured JSON on stderr),
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__, arithmetic, collisions, correlations, digits, diophantine, distribution
from ._runio import (Checkpoint, RecordWriter, open_output, params_hash,
                     utc_now, write_manifest)
from .errors import DomainError

ENV_PREFIX = "DIGITCOLLIDE_"
CHUNK = digits.SCAN_CHUNK


def _env_name(flag: str) -> str:
    return ENV_PREFIX + flag.lstrip("-").upper().replace("-", "_")


def _add(parser, flag: str, **kw):
    """add_argument with DIGITCOLLIDE_<FLAG> environment fallback."""
    env = os.environ.get(_env_name(flag))
    if env is not None:
        if kw.get("action") == "store_true":
            kw["default"] = env.strip().lower() in ("1", "true", "yes", "on")
            kw.pop("required", None)
        else:
            typ = kw.get("type", str)
            if kw.get("action") == "append":
                kw["default"] = [typ(v) for v in env.split(";") if v]
            else:
                kw["default"] = typ(env)
            kw.pop("required", None)
    parser.add_argument(flag, **kw)


def _common(parser, scan: bool = False):
    _add(parser, "--format", choices=("json", "csv"), default="json",
         help="output format (default json lines)")
    _add(parser, "--out", default=None, help="write primary output to PATH "
         "(a manifest is placed beside it)")
    _add(parser, "--seed", type=int, default=0,
         help="seed for randomized searches (default 0)")
    _add(parser, "--checkpoint", default=None,
         help="checkpoint file for resumable scans")
    _add(parser, "--threads", type=int, default=1,
         help="scan range partitions processed concurrently, merged in order")
    if scan:
        _add(parser, "--stop-at", type=int, default=None, dest="stop_at",
             help="process the range only up to this n, saving the checkpoint")


def _pairs(values, what: str) -> list:
    out = []
    for item in values or ():
        try:
            idx, val = item.split(":")
            out.append((int(idx), int(val)))
        except ValueError:
            raise ValueError(f"malformed {what} constraint {item!r}; expected INDEX:VALUE")
    return out


def _emit_record(args, fields, record) -> int:
    started = utc_now()
    stream, opened = open_output(args.out, resume=False)
    try:
        writer = RecordWriter(args.format, list(fields), stream)
        writer.write(record)
    finally:
        if opened:
            stream.close()
    if args.out:
        write_manifest(args.out, _command_name(args), vars(args), started, __version__)
    return 0


def _emit_stream(args, fields, records) -> int:
    started = utc_now()
    stream, opened = open_output(args.out, resume=False)
    try:
        writer = RecordWriter(args.format, list(fields), stream)
        for rec in records:
            writer.write(rec)
    finally:
        if opened:
            stream.close()
    if args.out:
        write_manifest(args.out, _command_name(args), vars(args), started, __version__)
    return 0


def _command_name(args) -> str:
    return f"{args.group} {args.command}"


def _chunk_bounds(lo: int, hi: int, chunk: int):
    return [(a, min(a + chunk, hi)) for a in range(lo, hi, chunk)]


def _scan_stream(args, lo: int, hi: int, fields, chunk_records) -> int:
    """Run a record-streaming range scan with checkpoint/resume, optional
    early stop, and ordered multi-threaded chunk processing."""
    started = utc_now()
    phash = params_hash(vars(args))
    ckpt = Checkpoint(args.checkpoint, phash) if args.checkpoint else None
    start_n = lo
    resume = False
    if ckpt and ckpt.load():
        start_n = max(lo, ckpt.last_n + 1)
        resume = True
    stop = hi if args.stop_at is None else max(start_n, min(hi, args.stop_at))
    stream, opened = open_output(args.out, resume=resume)
    try:
        writer = RecordWriter(args.format, list(fields), stream)
        if resume and start_n > lo:
            writer.mark_resumed()
        bounds = _chunk_bounds(start_n, stop, CHUNK)
        threads = max(1, args.threads)
        if threads == 1:
            produced = map(lambda ab: chunk_records(*ab), bounds)
            for (a, b), recs in zip(bounds, produced):
                for rec in recs:
                    writer.write(rec)
                if ckpt:
                    ckpt.save(b - 1)
        else:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                for (a, b), recs in zip(bounds, pool.map(lambda ab: chunk_records(*ab), bounds)):
                    for rec in recs:
                        writer.write(rec)
                    if ckpt:
                        ckpt.save(b - 1)
    finally:
        if opened:
            stream.close()
    if args.out:
        write_manifest(args.out, _command_name(args), vars(args), started, __version__)
    return 0


# --------------------------------------------------------------- digits ----

def cmd_digits_sum(args) -> int:
    return _emit_record(args, ("n", "base", "digit_sum"),
                        {"n": args.n, "base": args.base,
                         "digit_sum": digits.digit_sum(args.n, args.base)})


def cmd_digits_at(args) -> int:
    return _emit_record(args, ("n", "base", "index", "digit"),
                        {"n": args.n, "base": args.base, "index": args.index,
                         "digit": digits.digit_at(args.n, args.base, args.index)})


def cmd_digits_block(args) -> int:
    return _emit_record(args, ("n", "lo", "hi", "block"),
                        {"n": args.n, "lo": args.lo, "hi": args.hi,
                         "block": digits.block_extract(args.n, args.lo, args.hi)})


def cmd_digits_runs(args) -> int:
    prof = digits.run_profile(args.n)
    return _emit_record(args, ("n", "max_run", "one_block_count"),
                        {"n": args.n, "max_run": prof.max_run,
                         "one_block_count": prof.one_block_count})


# -------------------------------------------------------------- collide ----

def cmd_collide_scan(args) -> int:
    a, b = args.a, args.b
    if a < 1 or b < 1:
        raise ValueError("weights must be >= 1")

    def chunk_records(lo, hi):
        s2, s3 = digits.digit_sums_block(lo, hi)
        hits = np.nonzero(a * s2 == b * s3)[0]
        return [{"n": lo + int(i), "s2": int(s2[i]), "s3": int(s3[i])} for i in hits]

    return _scan_stream(args, args.lo, args.hi, ("n", "s2", "s3"), chunk_records)


def cmd_collide_pair(args) -> int:
    if args.search:
        witness = collisions.pair_witness_search(args.k1, args.k2, args.budget,
                                                 seed=args.seed)
        return _emit_record(args, ("k1", "k2", "witness", "budget"),
                            {"k1": args.k1, "k2": args.k2,
                             "witness": witness, "budget": args.budget})
    result = collisions.pair_witness_enumerate(args.k1, args.k2, args.bound,
                                               budget=args.budget)
    if args.format == "csv":
        return _emit_stream(args, ("n",), ({"n": w} for w in result.witnesses))
    return _emit_record(args, ("k1", "k2", "bound", "witnesses", "complete"),
                        {"k1": args.k1, "k2": args.k2, "bound": args.bound,
                         "witnesses": result.witnesses, "complete": result.complete})


def cmd_collide_ratio(args) -> int:
    n = collisions.ratio_approach(args.rho, args.eps, args.budget)
    rec = {"rho": args.rho, "eps": args.eps, "budget": args.budget,
           "n": n, "s2": None, "s3": None}
    if n is not None:
        rec["s2"] = digits.digit_sum(n, 2)
        rec["s3"] = digits.digit_sum(n, 3)
    return _emit_record(args, ("rho", "eps", "budget", "n", "s2", "s3"), rec)


def cmd_collide_gaps(args) -> int:
    stats = collisions.gap_statistics(args.lo, args.hi)
    rec = {"lo": args.lo, "hi": args.hi, "count": stats.count,
           "mean": stats.mean, "min": stats.min, "max": stats.max,
           "dhl_fraction": stats.dhl_fraction, "c": stats.c}
    if args.format == "json":
        rec["histogram"] = {str(k): v for k, v in stats.histogram.items()}
        return _emit_record(args, tuple(rec.keys()), rec)
    return _emit_record(args, ("lo", "hi", "count", "mean", "min", "max",
                               "dhl_fraction", "c"), rec)


# ------------------------------------------------------------------ llt ----

def cmd_llt_hist(args) -> int:
    """Histogram scan with stateful checkpointing: counts accumulate
    across time slices; records are emitted once the range completes."""
    started = utc_now()
    N, K, parity = args.n_max, args.k, args.parity
    if parity not in ("0", "1", "both"):
        raise ValueError("parity must be 0, 1 or both")
    par = "both" if parity == "both" else int(parity)
    phash = params_hash(vars(args))
    ckpt = Checkpoint(args.checkpoint, phash) if args.checkpoint else None
    counts: dict = {}
    start_n = 0
    if ckpt and ckpt.load():
        start_n = ckpt.last_n + 1
        counts = {(int(k1), int(k2)): c
                  for k1, k2, c in ckpt.state.get("counts", [])}
    stop = N if args.stop_at is None else max(start_n, min(N, args.stop_at))
    mult = 3**K
    for a in range(start_n, stop, CHUNK):
        b = min(a + CHUNK, stop)
        s2, s3 = digits.digit_sums_block(a, b, mult)
        if par != "both":
            keep = (np.arange(a, b) & 1) == par
            s2, s3 = s2[keep], s3[keep]
        if s2.size:
            packed = s2 * 10000 + s3
            vals, cnts = np.unique(packed, return_counts=True)
            for v, c in zip(vals, cnts):
                key = (int(v) // 10000, int(v) % 10000)
                counts[key] = counts.get(key, 0) + int(c)
        if ckpt:
            ckpt.save(b - 1, {"counts": [[k1, k2, c] for (k1, k2), c
                                         in sorted(counts.items())]})
    if stop < N:
        return 0  # time slice done; resume later
    stream, opened = open_output(args.out, resume=False)
    try:
        writer = RecordWriter(args.format, ["k1", "k2", "count"], stream)
        for (k1, k2) in sorted(counts):
            writer.write({"k1": k1, "k2": k2, "count": counts[(k1, k2)]})
    finally:
        if opened:
            stream.close()
    if args.out:
        write_manifest(args.out, _command_name(args), vars(args), started, __version__)
    return 0


def cmd_llt_predict(args) -> int:
    density = distribution.llt_prediction(args.n_max, args.k, args.k1, args.k2)
    d1, d2 = distribution.deltas(args.n_max, args.k, args.k1, args.k2)
    return _emit_record(args, ("N", "K", "k1", "k2", "predicted",
                               "expected_count", "delta1", "delta2"),
                        {"N": args.n_max, "K": args.k, "k1": args.k1, "k2": args.k2,
                         "predicted": density, "expected_count": density * args.n_max,
                         "delta1": d1, "delta2": d2})


def cmd_llt_compare(args) -> int:
    report = distribution.compare_llt(args.n_max, args.k)
    if args.format == "csv":
        return _emit_stream(args, ("k1", "k2", "empirical", "predicted",
                                   "abs_err", "rel_err"),
                            (c._asdict() for c in report.cells))
    return _emit_record(args, ("report",), {"report": report.as_dict()})


def cmd_llt_moments(args) -> int:
    parity = "both" if args.parity == "both" else int(args.parity)
    cmp_ = distribution.joint_moments(args.n_max, args.k, parity,
                                      args.d1, args.d2, eta=args.eta)
    return _emit_record(args, ("N", "K", "d1", "d2", "eta", "empirical", "gaussian"),
                        {"N": args.n_max, "K": args.k, "d1": args.d1, "d2": args.d2,
                         "eta": args.eta, "empirical": cmp_.empirical,
                         "gaussian": cmp_.gaussian})


def cmd_llt_constraints(args) -> int:
    res = distribution.digit_constraint_count(
        args.n_max, args.k, int(args.parity),
        base2=_pairs(args.bit, "base-2"), base3=_pairs(args.trit, "base-3"))
    return _emit_record(args, ("N", "K", "parity", "count", "expected",
                               "empirical", "deviation", "mid_range_ok"),
                        {"N": args.n_max, "K": args.k, "parity": int(args.parity),
                         "count": res.count, "expected": res.expected,
                         "empirical": res.empirical, "deviation": res.deviation,
                         "mid_range_ok": res.mid_range_ok})


# ---------------------------------------------------------------- gamma ----

def cmd_gamma_eval(args) -> int:
    exact = correlations.gamma_exact(args.t, args.theta)
    rec = {"t": args.t, "theta": args.theta, "re": exact.real, "im": exact.imag,
           "modulus": abs(exact), "brute_re": None, "brute_im": None}
    if args.samples is not None:
        brute = correlations.gamma_bruteforce(args.t, args.theta, args.samples)
        rec["brute_re"] = brute.real
        rec["brute_im"] = brute.imag
    return _emit_record(args, ("t", "theta", "re", "im", "modulus",
                               "brute_re", "brute_im"), rec)


def cmd_gamma_tail(args) -> int:
    res = correlations.gamma_tail_check(args.t, args.theta)
    return _emit_record(args, ("t", "theta", "bound", "value_modulus", "pass"),
                        {"t": args.t, "theta": args.theta, "bound": res.bound,
                         "value_modulus": res.value_modulus, "pass": res.passed})


def cmd_gamma_gowers(args) -> int:
    val = correlations.gowers_correlation(args.base, args.order, args.theta,
                                          args.mu, budget=args.budget)
    return _emit_record(args, ("base", "order", "theta", "mu", "re", "im", "modulus"),
                        {"base": args.base, "order": args.order, "theta": args.theta,
                         "mu": args.mu, "re": val.real, "im": val.imag,
                         "modulus": abs(val)})


# ------------------------------------------------------------------ dio ----

def cmd_dio_baker(args) -> int:
    heights = [float(x) for x in args.log_heights.split(",") if x]
    u = diophantine.baker_bound(heights, d=args.degree, B=args.max_exponent)
    return _emit_record(args, ("n", "degree", "max_exponent", "U"),
                        {"n": len(heights), "degree": args.degree,
                         "max_exponent": args.max_exponent, "U": u})


def cmd_dio_corx(args) -> int:
    res = diophantine.corx_gap(args.q1, args.q2, args.m1, args.m2,
                               args.k0, args.k1, args.k2)
    return _emit_record(args, ("gap_num", "gap_den", "gap", "max_term_num",
                               "max_term_den", "max_term", "effective_c"),
                        {"gap_num": res.gap.numerator, "gap_den": res.gap.denominator,
                         "gap": float(res.gap),
                         "max_term_num": res.max_term.numerator,
                         "max_term_den": res.max_term.denominator,
                         "max_term": float(res.max_term),
                         "effective_c": res.effective_C})


def cmd_dio_supl(args) -> int:
    res = diophantine.sup_run_length(args.k, args.eta)
    return _emit_record(args, ("K", "eta", "sup", "argmax", "ratio"),
                        {"K": args.k, "eta": args.eta, "sup": res.sup,
                         "argmax": res.argmax,
                         "ratio": res.ratio if math.isfinite(res.ratio) else None})


_WITNESS_FIELDS = ("A", "K", "a", "b", "omega", "d", "k", "eta", "eps", "verified")


def cmd_dio_eliminate(args) -> int:
    omegas = range(1 << (args.hi - args.lo)) if args.all_omega else [args.omega]
    if not args.all_omega and args.omega is None:
        raise ValueError("pass --omega VALUE or --all-omega")

    def records():
        for om in omegas:
            w = diophantine.odd_eliminate(args.power, args.lo, args.hi, om,
                                          args.residue, args.modulus,
                                          args.eta, args.eps)
            rec = w.as_dict()
            rec["verified"] = diophantine.verify_witness(w)
            yield rec

    return _emit_stream(args, _WITNESS_FIELDS, records())


def cmd_dio_verify(args) -> int:
    ok = 0
    bad = 0
    with open(args.witness) as fh:
        text = fh.read()
    try:
        objs = [json.loads(text)]
    except json.JSONDecodeError:
        objs = [json.loads(line) for line in text.splitlines() if line.strip()]
    if len(objs) == 1 and isinstance(objs[0], list):
        objs = objs[0]
    results = []
    for obj in objs:
        w = diophantine.witness_from_dict(obj)
        verified = diophantine.verify_witness(w)
        ok += verified
        bad += not verified
        rec = w.as_dict()
        rec["verified"] = verified
        results.append(rec)
    rc = _emit_stream(args, _WITNESS_FIELDS, results)
    return 1 if bad else rc


# ----------------------------------------------------------------- fact ----

def cmd_fact_profile(args) -> int:
    prof = arithmetic.factorial_profile(args.n)
    return _emit_record(args, ("n", "nu2", "nu3", "nu12", "last12"),
                        prof.as_dict())


def cmd_fact_equiv(args) -> int:
    res = arithmetic.equivalence_check(args.n)
    rec = {"n": args.n}
    rec.update(res._asdict())
    return _emit_record(args, ("n",) + tuple(res._asdict()), rec)


# -------------------------------------------------------------- catalan ----

def cmd_catalan_val(args) -> int:
    return _emit_record(args, ("n", "p", "valuation"),
                        {"n": args.n, "p": args.p,
                         "valuation": arithmetic.catalan_valuation(args.n, args.p)})


def cmd_catalan_scan(args) -> int:
    a, b, positive = args.a, args.b, args.require_positive
    if a < 1 or b < 1:
        raise ValueError("weights must be >= 1")

    def chunk_records(lo, hi):
        return [{"n": r.n, "nu2": r.nu2, "nu3": r.nu3}
                for r in arithmetic.catalan_collision_scan(
                    lo, hi, a, b, require_positive=positive)]

    return _scan_stream(args, args.lo, args.hi, ("n", "nu2", "nu3"), chunk_records)


# --------------------------------------------------------------- expsum ----

def cmd_expsum_eval(args) -> int:
    res = distribution.exp_sum(args.n_max, args.k, int(args.parity),
                               base2_pairs=_pairs(args.bit, "base-2"),
                               base3_pairs=_pairs(args.trit, "base-3"))
    return _emit_record(args, ("N", "K", "parity", "re", "im", "modulus",
                               "alpha_distance", "bound", "within_bound"),
                        {"N": args.n_max, "K": args.k, "parity": int(args.parity),
                         "re": res.value.real, "im": res.value.imag,
                         "modulus": abs(res.value),
                         "alpha_distance": res.alpha_distance,
                         "bound": res.bound, "within_bound": res.within_bound})


# --------------------------------------------------------------- parser ----

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="digitcollide",
        description="Digit sums in bases 2 and 3: collisions, joint "
                    "distributions, correlations, and valuation arithmetic.")
    p.add_argument("--version", action="version", version=__version__)
    groups = p.add_subparsers(dest="group", required=True)

    g = groups.add_parser("digits", help="digit-level primitives")
    sub = g.add_subparsers(dest="command", required=True)
    s = sub.add_parser("sum")
    _add(s, "--n", type=int, required=True)
    _add(s, "--base", type=int, required=True)
    _common(s)
    s.set_defaults(func=cmd_digits_sum)
    s = sub.add_parser("at")
    _add(s, "--n", type=int, required=True)
    _add(s, "--base", type=int, required=True)
    _add(s, "--index", type=int, required=True)
    _common(s)
    s.set_defaults(func=cmd_digits_at)
    s = sub.add_parser("block")
    _add(s, "--n", type=int, required=True)
    _add(s, "--lo", type=int, required=True)
    _add(s, "--hi", type=int, required=True)
    _common(s)
    s.set_defaults(func=cmd_digits_block)
    s = sub.add_parser("runs")
    _add(s, "--n", type=int, required=True)
    _common(s)
    s.set_defaults(func=cmd_digits_runs)

    g = groups.add_parser("collide", help="collision scans and witnesses")
    sub = g.add_subparsers(dest="command", required=True)
    s = sub.add_parser("scan")
    _add(s, "--lo", type=int, required=True)
    _add(s, "--hi", type=int, required=True)
    _add(s, "--a", type=int, default=1)
    _add(s, "--b", type=int, default=1)
    _common(s, scan=True)
    s.set_defaults(func=cmd_collide_scan)
    s = sub.add_parser("pair")
    _add(s, "--k1", type=int, required=True)
    _add(s, "--k2", type=int, required=True)
    _add(s, "--bound", type=int, default=10**6)
    _add(s, "--budget", type=int, default=10**7)
    _add(s, "--search", action="store_true",
         help="randomized single-witness search instead of enumeration")
    _common(s)
    s.set_defaults(func=cmd_collide_pair)
    s = sub.add_parser("ratio")
    _add(s, "--rho", type=float, required=True)
    _add(s, "--eps", type=float, required=True)
    _add(s, "--budget", type=int, required=True)
    _common(s)
    s.set_defaults(func=cmd_collide_ratio)
    s = sub.add_parser("gaps")
    _add(s, "--lo", type=int, required=True)
    _add(s, "--hi", type=int, required=True)
    _common(s)
    s.set_defaults(func=cmd_collide_gaps)

    g = groups.add_parser("llt", help="joint distribution vs the product-Gaussian")
    sub = g.add_subparsers(dest="command", required=True)
    s = sub.add_parser("hist")
    _add(s, "--n-max", type=int, required=True, dest="n_max")
    _add(s, "--k", type=int, default=0)
    _add(s, "--parity", default="both")
    _common(s, scan=True)
    s.set_defaults(func=cmd_llt_hist)
    s = sub.add_parser("predict")
    _add(s, "--n-max", type=int, required=True, dest="n_max")
    _add(s, "--k", type=int, default=0)
    _add(s, "--k1", type=int, required=True)
    _add(s, "--k2", type=int, required=True)
    _common(s)
    s.set_defaults(func=cmd_llt_predict)
    s = sub.add_parser("compare")
    _add(s, "--n-max", type=int, required=True, dest="n_max")
    _add(s, "--k", type=int, default=0)
    _common(s)
    s.set_defaults(func=cmd_llt_compare)
    s = sub.add_parser("moments")
    _add(s, "--n-max", type=int, required=True, dest="n_max")
    _add(s, "--k", type=int, default=0)
    _add(s, "--d1", type=int, required=True)
    _add(s, "--d2", type=int, required=True)
    _add(s, "--eta", type=float, default=distribution.DEFAULT_ETA)
    _add(s, "--parity", default="both")
    _common(s)
    s.set_defaults(func=cmd_llt_moments)
    s = sub.add_parser("constraints")
    _add(s, "--n-max", type=int, required=True, dest="n_max")
    _add(s, "--k", type=int, default=0)
    _add(s, "--parity", default="0")
    _add(s, "--bit", action="append", help="base-2 digit constraint INDEX:VALUE "
         "on 3**K * n (repeatable)")
    _add(s, "--trit", action="append", help="base-3 digit constraint INDEX:VALUE "
         "on n (repeatable)")
    _common(s)
    s.set_defaults(func=cmd_llt_constraints)

    g = groups.add_parser("gamma", help="digit-sum shift correlations")
    sub = g.add_subparsers(dest="command", required=True)
    s = sub.add_parser("eval")
    _add(s, "--t", type=int, required=True)
    _add(s, "--theta", type=float, required=True)
    _add(s, "--samples", type=int, default=None,
         help="also report the brute-force average over this many n")
    _common(s)
    s.set_defaults(func=cmd_gamma_eval)
    s = sub.add_parser("tail")
    _add(s, "--t", type=int, required=True)
    _add(s, "--theta", type=float, required=True)
    _common(s)
    s.set_defaults(func=cmd_gamma_tail)
    s = sub.add_parser("gowers")
    _add(s, "--base", type=int, default=2)
    _add(s, "--order", type=int, required=True)
    _add(s, "--theta", type=float, required=True)
    _add(s, "--mu", type=int, required=True)
    _add(s, "--budget", type=int, default=correlations.GOWERS_TERM_BUDGET)
    _common(s)
    s.set_defaults(func=cmd_gamma_gowers)

    g = groups.add_parser("dio", help="Diophantine calculators")
    sub = g.add_subparsers(dest="command", required=True)
    s = sub.add_parser("baker")
    _add(s, "--log-heights", required=True, dest="log_heights",
         help="comma-separated log A_j values, each >= 1")
    _add(s, "--degree", type=int, default=1)
    _add(s, "--max-exponent", type=int, default=2, dest="max_exponent")
    _common(s)
    s.set_defaults(func=cmd_dio_baker)
    s = sub.add_parser("corx")
    for flag in ("--q1", "--q2", "--m1", "--m2", "--k0", "--k1", "--k2"):
        _add(s, flag, type=int, required=True)
    _common(s)
    s.set_defaults(func=cmd_dio_corx)
    s = sub.add_parser("supL")
    _add(s, "--k", type=int, required=True)
    _add(s, "--eta", type=float, required=True)
    _common(s)
    s.set_defaults(func=cmd_dio_supl)
    s = sub.add_parser("eliminate")
    _add(s, "--power", type=int, required=True, help="exponent K of 3**K")
    _add(s, "--lo", type=int, required=True, help="window base a")
    _add(s, "--hi", type=int, required=True, help="window top b")
    _add(s, "--omega", type=int, default=None)
    _add(s, "--all-omega", action="store_true", dest="all_omega")
    _add(s, "--residue", type=int, required=True, help="required A mod modulus")
    _add(s, "--modulus", type=int, required=True)
    _add(s, "--eta", type=float, required=True)
    _add(s, "--eps", type=float, required=True)
    _common(s)
    s.set_defaults(func=cmd_dio_eliminate)
    s = sub.add_parser("verify")
    _add(s, "--witness", required=True, help="witness JSON file to re-check")
    _common(s)
    s.set_defaults(func=cmd_dio_verify)

    g = groups.add_parser("fact", help="factorial valuation profiles")
    sub = g.add_subparsers(dest="command", required=True)
    s = sub.add_parser("profile")
    _add(s, "--n", type=int, required=True)
    _common(s)
    s.set_defaults(func=cmd_fact_profile)
    s = sub.add_parser("equiv")
    _add(s, "--n", type=int, required=True)
    _common(s)
    s.set_defaults(func=cmd_fact_equiv)

    g = groups.add_parser("catalan", help="Catalan number valuations")
    sub = g.add_subparsers(dest="command", required=True)
    s = sub.add_parser("val")
    _add(s, "--n", type=int, required=True)
    _add(s, "--p", type=int, required=True)
    _common(s)
    s.set_defaults(func=cmd_catalan_val)
    s = sub.add_parser("scan")
    _add(s, "--lo", type=int, required=True)
    _add(s, "--hi", type=int, required=True)
    _add(s, "--a", type=int, default=1)
    _add(s, "--b", type=int, default=1)
    _add(s, "--require-positive", action="store_true", dest="require_positive")
    _common(s, scan=True)
    s.set_defaults(func=cmd_catalan_scan)

    g = groups.add_parser("expsum", help="phase sums and their bound")
    sub = g.add_subparsers(dest="command", required=True)
    s = sub.add_parser("eval")
    _add(s, "--n-max", type=int, required=True, dest="n_max")
    _add(s, "--k", type=int, default=0)
    _add(s, "--parity", default="0")
    _add(s, "--bit", action="append",
         help="base-2 phase pair INDEX:ODD_COEFF (repeatable)")
    _add(s, "--trit", action="append",
         help="base-3 phase pair INDEX:COEFF, coeff not divisible by 3 (repeatable)")
    _common(s)
    s.set_defaults(func=cmd_expsum_eval)

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, ValueError, OverflowError) as exc:
        json.dump({"error": {"type": type(exc).__name__, "message": str(exc)}},
                  sys.stderr)
        sys.stderr.write("\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
