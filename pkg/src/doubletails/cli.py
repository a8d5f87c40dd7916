"""Command-line frontend.

    python -m doubletails zeta "(2,1,3,2)" --digits 100 --algorithm series
    python -m doubletails table 8 --digits 100 --format json
    python -m doubletails tails 0011 2 1 --digits 15
    python -m doubletails relations 6 --certify
    python -m doubletails bench --target "(2,1,3,2)" --digits 100

Exit status: 0 on success, 1 when the input cannot be parsed, 2 when a
mathematical precondition fails (invalid tail index, bad N override, ...).
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import time
from dataclasses import asdict, dataclass, fields
from decimal import ROUND_CEILING, Context, Decimal
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import __version__, dp, relations, series
from .fixnum import FixedReal, to_decimal
from .tails import check_index, reduce_word, tail_value
from .words import (
    composition_of_word,
    depth,
    enumerate_admissible,
    format_composition,
    is_admissible,
    parse_composition,
    word_of_composition,
)

ALGORITHMS = ("dp", "series", "baseline")


class ParseError(ValueError):
    """Input that does not describe a valid job."""


class PreconditionError(ValueError):
    """A well-formed job whose mathematical hypotheses fail."""


@dataclass(frozen=True)
class ResultRecord:
    composition: str
    word: str
    weight: int
    depth: int
    digits: int
    value: str
    algorithm: str
    N: int
    error: str
    wall_ms: float
    check: str = ""
    m: int | None = None
    n: int | None = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), ensure_ascii=False)

    @classmethod
    def from_json(cls, text: str) -> ResultRecord:
        obj = json.loads(text)
        names = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in obj.items() if k in names})

    def to_text(self) -> str:
        head = f"zeta{self.composition} [{self.word}]" if self.composition else f"zeta[{self.word}]"
        if self.m is not None:
            head += f"_{{{self.m},{self.n}}}"
        tail = f"  ({self.algorithm}, N={self.N}, err<={self.error}, {self.wall_ms:.1f} ms)"
        extra = f"\n  check: {self.check}" if self.check else ""
        return f"{head} = {self.value}{tail}{extra}"


def format_error(err: Fraction) -> str:
    """Upward-rounded 3-digit decimal form of a certificate."""
    if err == 0:
        return "0"
    ctx = Context(prec=3, rounding=ROUND_CEILING)
    return str(ctx.divide(Decimal(err.numerator), Decimal(err.denominator)))


def certified_digits(err: Fraction, wanted: int) -> int:
    """Largest d <= wanted with err < 10^-d (0 if none)."""
    d = wanted
    while d > 0 and err >= Fraction(1, 10**d):
        d -= 1
    return d


def parse_target(text: str) -> tuple[int, ...]:
    try:
        c = parse_composition(text)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    if not c:
        raise ParseError("empty composition: zeta() = 1 needs no computation")
    if not is_admissible(c):
        raise ParseError(f"{format_composition(c)} is not admissible: the first part a_1 must be >= 2")
    return c


def _record(
    word: str,
    value: FixedReal,
    err: Fraction,
    digits: int,
    algorithm: str,
    N: int,
    t0: float,
    check: str = "",
    index: tuple[int, int] | None = None,
) -> ResultRecord:
    d = certified_digits(err, digits)
    try:
        comp = format_composition(composition_of_word(word))
    except ValueError:
        comp = ""
    return ResultRecord(
        composition=comp,
        word=word,
        weight=len(word),
        depth=depth(word),
        digits=d,
        value=to_decimal(value, d, err),
        algorithm=algorithm,
        N=N,
        error=format_error(err),
        wall_ms=round((time.perf_counter() - t0) * 1000, 3),
        check=check,
        m=None if index is None else index[0],
        n=None if index is None else index[1],
    )


# cache -------------------------------------------------------------------------


class Cache:
    """Append-only JSON-lines store keyed by (composition, digits, algorithm, version)."""

    def __init__(self, path: str | Path | None):
        self.path = Path(path) if path else None
        self._data: dict[tuple, ResultRecord] = {}
        if self.path and self.path.exists():
            for line in self.path.read_text(encoding="utf-8").splitlines():
                if not line.strip():
                    continue
                obj = json.loads(line)
                rec = ResultRecord.from_json(json.dumps(obj["record"]))
                self._data[tuple(obj["key"])] = rec

    @staticmethod
    def key(composition: str, digits: int, algorithm: str, n_max: int | None) -> tuple:
        return (composition, digits, algorithm, n_max, __version__)

    def get(self, key: tuple) -> ResultRecord | None:
        return self._data.get(key)

    def put(self, key: tuple, rec: ResultRecord) -> None:
        self._data[key] = rec
        if self.path is None:
            return
        line = json.dumps({"key": list(key), "record": asdict(rec)}, ensure_ascii=False) + "\n"
        with self.path.open("a", encoding="utf-8") as fh:
            fh.write(line)


# commands ----------------------------------------------------------------------


def cmd_zeta(target: str, digits: int, algorithm: str = "series", n_max: int | None = None, cache: Cache | None = None) -> ResultRecord:
    c = parse_target(target)
    word = word_of_composition(c)
    comp = format_composition(c)
    key = Cache.key(comp, digits, algorithm, n_max)
    if cache is not None and (hit := cache.get(key)) is not None:
        return hit
    t0 = time.perf_counter()
    if algorithm == "dp":
        plan = _dp_plan([word], digits, n_max)
        res = dp.run(plan)
        rec = _record(word, res[word], res.error, digits, "dp", plan.N, t0)
    elif algorithm == "series":
        ev = series.zeta_series(word, digits, n_max)
        rec = _record(word, ev.value, ev.error, digits, "series", ev.steps, t0)
    elif algorithm == "baseline":
        if n_max is not None:
            raise PreconditionError("the baseline chooses its own term count")
        ev = series.baseline_chasles(word, digits)
        rec = _record(word, ev.value, ev.error, digits, "baseline", ev.steps, t0)
    else:
        raise ParseError(f"unknown algorithm {algorithm!r}")
    if cache is not None:
        cache.put(key, rec)
    return rec


def _dp_plan(words: Sequence[str], digits: int, n_max: int | None) -> dp.DpPlan:
    try:
        return dp.make_plan(words, digits=digits, N=n_max)
    except ValueError as exc:
        raise PreconditionError(str(exc)) from None


def cmd_table(k: int, digits: int, n_max: int | None = None) -> list[ResultRecord]:
    if k < 2:
        raise PreconditionError("table weight must be >= 2")
    t0 = time.perf_counter()
    words = enumerate_admissible(k)
    plan = _dp_plan(words, digits, n_max)
    res = dp.run(plan)
    return [_record(w, res[w], res.error, digits, "dp", plan.N, t0) for w in words]


def cmd_tails(word: str, m: int, n: int, digits: int, n_max: int | None = None) -> ResultRecord:
    if not word or any(ch not in "01" for ch in word):
        raise ParseError(f"tails needs a binary word, got {word!r}")
    try:
        check_index(word, m, n)
    except ValueError as exc:
        raise PreconditionError(str(exc)) from None
    t0 = time.perf_counter()
    coef, core = reduce_word(word, m, n)
    if not core:
        exact = coef * Fraction(1, math.comb(m + n, m))
        scale = digits * 4 + 16
        value = FixedReal((exact.numerator << scale) // exact.denominator, scale)
        return _record(word, value, Fraction(1, 1 << scale), digits, "exact", 0, t0, index=(m, n))
    ev = series.general_tail_series(core, m, n, digits, n_max)
    # coef = 1/(n^a m^b) <= 1, one extra truncation
    mant = ev.value.mantissa * coef.numerator // coef.denominator
    value = FixedReal(mant, ev.value.scale)
    err = coef * ev.error + ev.value.ulp
    check = _oracle_check(word, m, n, value.to_fraction(), err, digits)
    return _record(word, value, err, digits, "series", ev.steps, t0, check, index=(m, n))


def _oracle_check(word: str, m: int, n: int, value: Fraction, err: Fraction, digits: int) -> str:
    """Compare against the nested-series oracle when it is cheap."""
    target = Fraction(1, 10 ** min(digits, 9))
    try:
        ref = tail_value(word, m, n, target, max_terms=200_000)
    except ValueError:
        return "oracle skipped (too slow at this index)"
    diff = abs(ref.value - value)
    ok = diff <= ref.error + err
    return f"oracle {'agrees' if ok else 'DISAGREES'}: |diff| = {format_error(diff)} vs budget {format_error(ref.error + err)}"


def cmd_relations(k: int, certify: bool = False, digits: int = 30, n_max: int = 5) -> dict:
    if k < 2:
        raise PreconditionError("weight must be >= 2")
    tm = relations.build_matrix(k)
    kr = relations.kernel(k)
    br = relations.bridge(k)
    report = {
        "k": k,
        "rows": tm.row_labels,
        "cols": tm.col_labels,
        "matrix": tm.A,
        "rank": kr.rank,
        "nullity": kr.nullity,
        "kernel": [list(v) for v in kr.basis],
        "d_k": kr.d_k,
        "relations": [list(v) for v in kr.relations],
        "bridge": None if br is None else {"L": list(br.L), "c": br.c},
    }
    if br is not None:
        report["identity"] = _bridge_identity(tm, br)
    if certify:
        report["certificates"] = []
        for L in kr.relations:
            cert = relations.certify_vanishing(L, k, n_max, digits)
            report["certificates"].append(
                {"L": list(L), "max_residual": format_error(cert.max_residual), "bound": format_error(cert.bound), "ok": cert.ok}
            )
    return report


def _bridge_identity(tm: relations.TailMatrix, br: relations.BridgeResult) -> str:
    terms = " ".join(f"{'+' if x > 0 else '-'} {abs(x)} zeta{lab}" for x, lab in zip(br.L, tm.row_labels) if x)
    return f"{terms.lstrip('+ ')} = {br.c} sum_n n^-{tm.k} C(2n,n)^-1"


def cmd_bench(targets: Sequence[str], table_weights: Sequence[int], digits: int, algorithms: Sequence[str], cache: Cache | None = None) -> list[dict]:
    rows = []
    for t in targets:
        for alg in algorithms:
            t0 = time.perf_counter()
            rec = cmd_zeta(t, digits, alg, cache=cache)
            rows.append({"job": f"zeta {rec.composition}", "algorithm": alg, "digits": digits, "steps": rec.N,
                         "wall_ms": round((time.perf_counter() - t0) * 1000, 3)})
    for k in table_weights:
        t0 = time.perf_counter()
        recs = cmd_table(k, digits)
        rows.append({"job": f"table {k} ({len(recs)} values)", "algorithm": "dp", "digits": digits, "steps": recs[0].N,
                     "wall_ms": round((time.perf_counter() - t0) * 1000, 3)})
    return rows


# argument handling -------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="doubletails", description="Certified multiple zeta values and double tails.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, algorithm=False):
        sp.add_argument("--digits", type=_positive, default=30)
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--n-max", type=_positive, default=None, help="override the iteration count N")
        if algorithm:
            sp.add_argument("--algorithm", choices=ALGORITHMS, default="series")
            sp.add_argument("--cache", default=None, help="JSON-lines result cache")

    z = sub.add_parser("zeta", help="one multiple zeta value")
    z.add_argument("target", help='composition like "(3,1)" or binary word like 0011')
    common(z, algorithm=True)

    t = sub.add_parser("table", help="all values up to a weight in one dp run")
    t.add_argument("weight", type=_positive)
    common(t)

    tl = sub.add_parser("tails", help="double tail zeta(w)_{m,n}")
    tl.add_argument("word")
    tl.add_argument("m", type=_nonneg)
    tl.add_argument("n", type=_nonneg)
    common(tl)

    r = sub.add_parser("relations", help="tail matrix, kernels and bridge for one weight")
    r.add_argument("weight", type=_positive)
    r.add_argument("--format", choices=("text", "json"), default="text")
    r.add_argument("--certify", action="store_true", help="check vanishing numerically with dp tails")
    r.add_argument("--digits", type=_positive, default=30)
    r.add_argument("--n-max", type=_nonneg, default=5, help="largest n for --certify")

    b = sub.add_parser("bench", help="timing and step counts")
    b.add_argument("--target", action="append", default=[], help="composition (repeatable)")
    b.add_argument("--table", action="append", type=_positive, default=[], help="table weight (repeatable)")
    b.add_argument("--algorithms", default="series,baseline,dp")
    b.add_argument("--digits", type=_positive, default=100)
    b.add_argument("--format", choices=("text", "json"), default="text")
    b.add_argument("--cache", default=None)
    return p


def _emit_records(recs: Sequence[ResultRecord], fmt: str, out) -> None:
    for rec in recs:
        print(rec.to_json() if fmt == "json" else rec.to_text(), file=out)


def _emit_relations(rep: dict, fmt: str, out) -> None:
    if fmt == "json":
        print(json.dumps(rep), file=out)
        return
    tm = relations.build_matrix(rep["k"])
    print(tm.to_text(), file=out)
    print(f"rank {rep['rank']}, left kernel dimension {rep['nullity']}, d_k {rep['d_k']}", file=out)
    for v in rep["kernel"]:
        print(f"  L A = 0: {tuple(v)}", file=out)
    extra = [v for v in rep["relations"] if v not in rep["kernel"]]
    if rep["d_k"] > rep["nullity"]:
        print(f"  relation basis (includes lower-weight lifts): {len(rep['relations'])} vectors", file=out)
        for v in extra:
            print(f"    {tuple(v)}", file=out)
    if rep["bridge"]:
        print(f"bridge: L = {tuple(rep['bridge']['L'])}, c = {rep['bridge']['c']}", file=out)
        print(f"  {rep['identity']}", file=out)
    else:
        print("bridge: none (last column depends on the others)", file=out)
    for c in rep.get("certificates", []):
        print(f"  certify {tuple(c['L'])}: max |L X_n| = {c['max_residual']} <= {c['bound']}: {c['ok']}", file=out)


def _emit_bench(rows: list[dict], fmt: str, out) -> None:
    if fmt == "json":
        for r in rows:
            print(json.dumps(r), file=out)
        return
    for r in rows:
        print(f"{r['job']:<28} {r['algorithm']:<9} d={r['digits']:<5} steps={r['steps']:<6} {r['wall_ms']:>10.1f} ms", file=out)
    by_job: dict[str, dict] = {}
    for r in rows:
        by_job.setdefault(r["job"], {})[r["algorithm"]] = r
    for job, algs in by_job.items():
        if "series" in algs and "baseline" in algs:
            s, b = algs["series"], algs["baseline"]
            print(f"{job}: series/baseline steps = {s['steps'] / b['steps']:.3f}", file=out)


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # argparse: bad flags exit 1, --help/--version 0
        return int(exc.code or 0)
    try:
        if args.command == "zeta":
            cache = Cache(args.cache) if args.cache else None
            _emit_records([cmd_zeta(args.target, args.digits, args.algorithm, args.n_max, cache)], args.format, out)
        elif args.command == "table":
            _emit_records(cmd_table(args.weight, args.digits, args.n_max), args.format, out)
        elif args.command == "tails":
            _emit_records([cmd_tails(args.word, args.m, args.n, args.digits, args.n_max)], args.format, out)
        elif args.command == "relations":
            _emit_relations(cmd_relations(args.weight, args.certify, args.digits, args.n_max), args.format, out)
        elif args.command == "bench":
            algs = [a.strip() for a in args.algorithms.split(",") if a.strip()]
            bad = [a for a in algs if a not in ALGORITHMS]
            if bad:
                raise ParseError(f"unknown algorithm(s): {', '.join(bad)}")
            targets = args.target or ([] if args.table else ["(2,1,3,2)"])
            cache = Cache(args.cache) if args.cache else None
            _emit_bench(cmd_bench(targets, args.table, args.digits, algs, cache), args.format, out)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
