"""Command-line entry point: ``fibchain <subcommand> [flags]``.

Exit status: 0 success, 1 a checked property failed, 2 usage error,
3 a floating-point result failed its own accuracy check.
"""

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass

from . import analytic, chains, figures, sigma_ord, verify
from ._validation import AlphaError, DomainError, PrecisionError
from .fib_core import fib_at, fib_range
from .primes import PrimalityConfig
from .zeckendorf import InvalidRepresentationError, ZeckRep, zeck_decode, zeck_encode, zeck_validate

ENV_THREADS = "FIBCHAIN_THREADS"
EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_PRECISION = 0, 1, 2, 3
FULL_FIGURE_N = 80_000


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    alpha: int = 3
    fmt: str | None = None      # None means plain text for scalar results
    threads: int = 1
    rounds: int = 40
    rng_seed: int = 0
    out: str | None = None

    def __post_init__(self):
        if self.fmt not in (None, "csv", "json"):
            raise UsageError(f"format must be csv or json, got {self.fmt!r}")
        if self.threads < 1:
            raise UsageError("--threads must be >= 1")

    @property
    def primality(self):
        return PrimalityConfig(rounds=self.rounds, seed=self.rng_seed)


# -- flag parsing -----------------------------------------------------------


def _count(text):
    """Positive integer; accepts ``10000``, ``1e7`` and ``10**7``."""
    try:
        if "**" in text:
            base, exp = text.split("**")
            value = int(base) ** int(exp)
        else:
            try:
                value = int(text)
            except ValueError:
                f = float(text)
                if not f.is_integer():
                    raise ValueError
                value = int(f)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def _kind(text):
    table = {"1": 1, "+1": 1, "first": 1, "-1": -1, "second": -1}
    if text not in table:
        raise argparse.ArgumentTypeError(f"kind must be +1 or -1, got {text!r}")
    return table[text]


def _alphas(text):
    try:
        return tuple(int(a) for a in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _default_threads():
    raw = os.environ.get(ENV_THREADS)
    if raw is None:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        raise UsageError(f"{ENV_THREADS} must be an integer, got {raw!r}") from None


FLAGS = {
    "n": (("--n",), dict(type=int, help="input value (or sequence index with --fib)")),
    "seed": (("--seed",), dict(type=int, help="chain seed prime")),
    "kind": (("--kind",), dict(type=_kind, default=1, help="+1 for p -> 2p+1, -1 for p -> 2p-1")),
    "limit": (("--limit",), dict(type=_count, help="upper bound of the range")),
    "min_len": (("--min-len",), dict(type=_count, default=1, help="report chains at least this long")),
    "k": (("--k",), dict(type=_count, help="chain length / number of polynomials")),
    "cutoff": (("--cutoff",), dict(type=_count, help="largest prime in the truncated product")),
    "s": (("--s",), dict(type=float, help="real exponent s > 2")),
    "terms": (("--terms",), dict(type=_count, help="truncation point T")),
    "starts_only": (("--starts-only",), dict(action="store_true",
                                             help="count only seeds with no prime predecessor")),
    "fib": (("--fib",), dict(action="store_true", help="treat --n as an index m and use F_m")),
}


def _common(parser, alpha_default=3):
    g = parser.add_argument_group("common")
    g.add_argument("--alpha", type=int, default=alpha_default, help="sequence parameter (default %(default)s)")
    g.add_argument("--format", dest="fmt", choices=("csv", "json"), help="output format")
    g.add_argument("--out", metavar="FILE", help="write output here instead of stdout")
    g.add_argument("--threads", type=int, help=f"worker processes (default ${ENV_THREADS} or 1)")
    g.add_argument("--rounds", type=int, default=40, help="random rounds for large primality tests")
    g.add_argument("--rng-seed", type=int, default=0, help="seed for primality witness selection")


def _sub(subparsers, name, summary, description, flags):
    p = subparsers.add_parser(name, help=summary, description=description,
                              formatter_class=argparse.RawDescriptionHelpFormatter)
    for flag in flags:
        args, kwargs = FLAGS[flag]
        p.add_argument(*args, **kwargs)
    _common(p)
    return p


def build_parser():
    parser = argparse.ArgumentParser(
        prog="fibchain",
        description="Generalized Fibonacci divisor iteration and Cunningham chains.",
        epilog=f"Exit status: 0 ok, 1 property violation, 2 usage error, 3 precision failure. "
               f"Default worker count comes from ${ENV_THREADS}.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    _sub(sub, "fib", "F_n by fast doubling",
         "F_0 = 0, F_1 = 1, F_(n+1) = alpha F_n + F_(n-1); negative n allowed.\n"
         "With --limit prints rows n,value for n = 0..limit.", ["n", "limit"])
    p = _sub(sub, "zeck", "Zeckendorf digits of n",
             "Greedy representation n = sum a_i F_(c_i), printed as c:a pairs in ascending c.\n"
             "--decode parses such a string; --check validates one. CSV columns: index,digit.",
             ["n"])
    p.add_argument("--decode", metavar="DIGITS", help="decode a c:a,c:a string")
    p.add_argument("--check", metavar="DIGITS", help="validate a c:a,c:a string (exit 1 if invalid)")
    _sub(sub, "sigma", "sum of sequence members dividing n",
         "sigma(n) = sum of F_i (i >= 1) dividing n. --fib uses sigma(F_m) = sum_{d|m} F_d.\n"
         "With --limit prints rows n,sigma.", ["n", "limit", "fib"])
    _sub(sub, "ord", "iterations of sigma needed to reach 1",
         "ord(n) = least k with sigma^k(n) = 1. With --limit prints rows n,ord.", ["n", "limit", "fib"])
    _sub(sub, "trace", "the iterates n, sigma(n), ..., 1",
         "Text output joins the iterates with ' -> '. CSV columns: step,value.", ["n", "fib"])
    _sub(sub, "chain", "Cunningham chain from one prime seed",
         "Follows p -> 2p + kind until the first composite (the breaker).\n"
         "CSV columns: kind,seed,length,breaker,elements,certain.", ["seed", "kind"])
    _sub(sub, "scan", "chain lengths for every prime seed <= limit",
         "Every prime is a seed unless --starts-only. Output is independent of --threads.\n"
         "CSV columns: kind,seed,length,breaker. Totals (k(N), counts) go to stderr.",
         ["limit", "kind", "min_len", "starts_only"])
    p = _sub(sub, "bk", "truncated chain-density constant B_k",
             "B_k(x) = 2^(k-1) prod_{2<p<=x} (1 - min(k, ord(p;2))/p) / (1 - 1/p)^k.\n"
             "delta = |B_k(x) - B_k(x/2)|. --bracket compares log B_k(x)/k with the\n"
             "leading terms loglog k + gamma - 2 and log k + gamma + loglog 2 - 1.\n"
             "CSV columns: k,cutoff,value,log_value,delta (bracket: k,lower,ratio,upper,within).",
             ["k", "cutoff"])
    p.add_argument("--bracket", action="store_true", help="report the log B_k / k bracket")
    p.add_argument("--slack", type=float, default=1.0, help="slack added to each bracket end")
    _sub(sub, "density", "observed chain counts against B_k times the density integral",
         "Counts primes p <= limit with chain length >= k and compares with\n"
         "B_k * int_2^N dx / (log x log 2x ... log 2^(k-1) x).\n"
         "CSV columns: k,N,kind,bk,integral,predicted,observed,relative_error.",
         ["k", "limit", "kind", "cutoff", "starts_only"])
    _sub(sub, "dirichlet", "truncated zeta(s) zeta_alpha(s-1) = sum sigma(n)/n^s",
         "Both sides cut at T; exit 1 if the gap exceeds the tail bound.\n"
         "CSV columns: alpha,s,terms,lhs,rhs,gap,tail_bound,within.", ["s", "terms"])

    p = sub.add_parser("verify", help="run a named property suite",
                       formatter_class=argparse.RawDescriptionHelpFormatter,
                       description="Suites:\n" + "\n".join(f"  {name:22s} {SUITE_HELP[name]}"
                                                            for name in verify.SUITES)
                                   + "\n  all                    every suite above")
    p.add_argument("suite", choices=[*verify.SUITES, "all"], metavar="SUITE")
    p.add_argument("--alphas", type=_alphas, help="comma-separated alpha values")
    for flag in ("pmax", "kmax", "mmax", "nmax"):
        p.add_argument(f"--{flag}", type=_count)
    p.add_argument("--limit", type=_count)
    _common(p, alpha_default=None)

    p = _sub(sub, "figure", "ord(F_n) rows for plotting",
             "--which 1: rows n,ord,bound with bound = log n/log 2 + 2 (exit 1 on any violation).\n"
             "--which 2: rows n,ratio,limit with ratio = ord(F_n)/log(n+1), limit = 1/log 2.\n"
             "The smallest n beyond which every ratio is below the limit goes to stderr.", [])
    p.add_argument("--which", type=int, choices=(1, 2), default=1)
    p.add_argument("--n-max", type=_count, default=5000)
    p.add_argument("--full", action="store_true", help=f"use n_max = {FULL_FIGURE_N} (hours)")
    return parser


SUITE_HELP = {
    "facts22": "recurrence, addition law, closed form, partial sums, divisibility and gcd",
    "lemma27": "sigma(n) sandwiched between F_k' and (1 + 2/alpha) F_k'",
    "thm28": "ord(n) <= log n / log phi + 2",
    "lemma32": "sigma(F_(m+1) + F_(m-1)) closed form",
    "thm33": "sigma(F_(m+p) + F_(m-p)) closed form",
    "cor34": "chain length from the difference of ord values",
    "thm35": "p = 2q +- 1 iff sigma^2(F_p) = sigma(F_q)",
    "lemma42": "F_(ak+i) reduced modulo F_k",
    "thm43": "F_i | a in the sigma image forces i <= (ind(a) + 1)/2",
    "thm44": "ord(n) <= log2(ind(n)) + 2",
    "thm45": "ord(n) < log2(log n) + 3 and the large-alpha threshold",
    "remark15": "l(p) < p/2 and l(p) <= ord(p; 2)",
    "zeckendorf-uniqueness": "round trip and exhaustive uniqueness of representations",
    "limsup": "running maxima of ord(F_p)/log p and ord(n)/loglog n (report only)",
}


# -- output -----------------------------------------------------------------


class Emitter:
    def __init__(self, cfg):
        self.cfg = cfg

    def _open(self):
        if self.cfg.out:
            return open(self.cfg.out, "w", newline="", encoding="utf-8")
        return None

    def _write(self, text):
        handle = self._open()
        try:
            (handle or sys.stdout).write(text)
        finally:
            if handle:
                handle.close()

    def value(self, text, record):
        """A single result: ``text`` for plain output, ``record`` (a dict) for csv/json."""
        if self.cfg.fmt is None:
            self._write(f"{text}\n")
        else:
            self.table(list(record), [list(record.values())])

    def table(self, header, rows, meta=None):
        meta = meta or {}
        if self.cfg.fmt == "json":
            doc = {**meta, "columns": list(header), "rows": [list(r) for r in rows]}
            self._write(json.dumps(doc, default=_json_default) + "\n")
            return
        handle = self._open()
        try:
            writer = csv.writer(handle or sys.stdout, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(rows)
        finally:
            if handle:
                handle.close()
        for key, val in meta.items():
            print(f"# {key}: {val}", file=sys.stderr)


def _json_default(obj):
    if hasattr(obj, "item"):
        return obj.item()
    raise TypeError(type(obj).__name__)


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.command} needs " + ", ".join("--" + m.replace("_", "-") for m in missing))


# -- subcommands ------------------------------------------------------------


def cmd_fib(args, cfg, out):
    if args.limit is not None:
        out.table(("n", "value"), list(enumerate(fib_range(cfg.alpha, args.limit + 1))))
        return EXIT_OK
    _need(args, "n")
    value = fib_at(cfg.alpha, args.n)
    out.value(value, {"alpha": cfg.alpha, "n": args.n, "value": value})
    return EXIT_OK


def cmd_zeck(args, cfg, out):
    if args.check is not None:
        v = zeck_validate(ZeckRep.parse(cfg.alpha, args.check))
        text = "valid" if v.ok else f"invalid: condition {v.condition} at index {v.position}"
        out.value(text, {"valid": v.ok, "condition": v.condition, "position": v.position})
        return EXIT_OK if v.ok else EXIT_VIOLATION
    if args.decode is not None:
        n = zeck_decode(ZeckRep.parse(cfg.alpha, args.decode))
        out.value(n, {"alpha": cfg.alpha, "digits": args.decode, "n": n})
        return EXIT_OK
    _need(args, "n")
    rep = zeck_encode(cfg.alpha, args.n)
    if cfg.fmt is None:
        out.value(str(rep), {})
    else:
        out.table(("index", "digit"), rep.digits, {"alpha": cfg.alpha, "n": args.n})
    return EXIT_OK


def _start(args, cfg):
    _need(args, "n")
    return fib_at(cfg.alpha, args.n) if args.fib else args.n


def cmd_sigma(args, cfg, out):
    if args.limit is not None:
        sig = sigma_ord.sigma_range(cfg.alpha, args.limit)
        out.table(("n", "sigma"), ((n, int(sig[n])) for n in range(1, args.limit + 1)))
        return EXIT_OK
    _need(args, "n")
    if args.fib:
        value = sigma_ord.sigma_of_fib(cfg.alpha, args.n)
    else:
        value = sigma_ord.sigma(cfg.alpha, args.n)
    out.value(value, {"alpha": cfg.alpha, "n": _start(args, cfg), "sigma": value})
    return EXIT_OK


def _trace(args, cfg):
    if args.fib:
        return sigma_ord.ord_of_fib(cfg.alpha, args.n)
    return sigma_ord.ord_trace(cfg.alpha, _start(args, cfg))


def cmd_ord(args, cfg, out):
    if args.limit is not None:
        orders = sigma_ord.ord_range(cfg.alpha, args.limit)
        out.table(("n", "ord"), ((n, int(orders[n])) for n in range(1, args.limit + 1)))
        return EXIT_OK
    _need(args, "n")
    tr = _trace(args, cfg)
    out.value(tr.order, {"alpha": cfg.alpha, "n": tr.start, "ord": tr.order})
    return EXIT_OK


def cmd_trace(args, cfg, out):
    _need(args, "n")
    tr = _trace(args, cfg)
    if cfg.fmt is None:
        out.value(" -> ".join(map(str, tr.iterates)), {})
    else:
        out.table(("step", "value"), list(enumerate(tr.iterates)), {"alpha": cfg.alpha, "ord": tr.order})
    return EXIT_OK


def _chain_row(rec):
    return [rec.kind, rec.seed, rec.length, rec.breaker]


def cmd_chain(args, cfg, out):
    _need(args, "seed")
    rec = chains.chain(args.seed, args.kind, cfg.primality)
    elements = " ".join(map(str, rec.elements))
    if cfg.fmt is None:
        note = "" if rec.certain else "\nprobabilistic (large elements)"
        out.value(f"length {rec.length}\nelements {elements}\nbreaker {rec.breaker}{note}", {})
    else:
        out.table(("kind", "seed", "length", "breaker", "elements", "certain"),
                  [_chain_row(rec) + [elements, rec.certain]])
    return EXIT_OK


def cmd_scan(args, cfg, out):
    _need(args, "limit")
    res = chains.scan_chains(args.limit, args.kind, args.min_len, cfg.primality,
                             starts_only=args.starts_only, workers=cfg.threads)
    meta = {"k_max": res.k_max, "length_counts": res.length_counts}
    if args.limit >= 16:
        meta["log_N_over_loglog_N"] = round(analytic.log_over_loglog(args.limit), 6)
    out.table(("kind", "seed", "length", "breaker"), [_chain_row(r) for r in res.records], meta)
    return EXIT_OK


def cmd_bk(args, cfg, out):
    _need(args, "k")
    cutoff = args.cutoff or 10 ** 6
    if args.bracket:
        lower, ratio, upper = analytic.prop16_bracket(args.k, cutoff)
        ok = lower - args.slack <= ratio <= upper + args.slack
        text = f"{lower:.6f} <= {ratio:.6f} <= {upper:.6f}" + ("" if ok else "  (outside slack)")
        out.value(text, {"k": args.k, "lower": lower, "ratio": ratio, "upper": upper, "within": ok})
        # outside the slack is a diagnostic, not a failure
        return EXIT_OK
    est = analytic.bk_truncated(args.k, cutoff)
    out.value(f"{est.value:.12g}", {"k": args.k, "cutoff": cutoff, "value": est.value,
                                     "log_value": est.log_value, "delta": est.delta})
    return EXIT_OK


def cmd_density(args, cfg, out):
    _need(args, "k", "limit")
    pred = analytic.compare_density(args.k, args.limit, args.kind, cfg.primality, cutoff_x=args.cutoff,
                                    starts_only=args.starts_only, workers=cfg.threads)
    record = {"k": pred.k, "N": pred.N, "kind": pred.kind, "bk": pred.bk,
              "integral": pred.integral_value, "predicted": pred.predicted_count,
              "observed": pred.observed_count, "relative_error": pred.relative_error}
    text = (f"observed {pred.observed_count}  predicted {pred.predicted_count:.1f}  "
            f"relative error {pred.relative_error:+.4%}")
    out.value(text, record)
    return EXIT_OK


def cmd_dirichlet(args, cfg, out):
    _need(args, "s", "terms")
    chk = analytic.dirichlet_check(cfg.alpha, args.s, args.terms)
    record = {"alpha": chk.alpha, "s": chk.s, "terms": chk.terms, "lhs": chk.lhs, "rhs": chk.rhs,
              "gap": chk.gap, "tail_bound": chk.tail_bound, "within": chk.within}
    text = f"lhs {chk.lhs:.15g}  rhs {chk.rhs:.15g}  gap {chk.gap:.3e}  tail bound {chk.tail_bound:.3e}"
    out.value(text, record)
    return EXIT_OK if chk.within else EXIT_VIOLATION


def cmd_verify(args, cfg, out):
    params = {"pmax": args.pmax, "kmax": args.kmax, "mmax": args.mmax, "nmax": args.nmax,
              "limit": args.limit, "cfg": cfg.primality}
    if args.alphas is not None:
        params["alphas"] = args.alphas
    if args.alpha is not None:
        params["alpha"] = args.alpha
        params.setdefault("alphas", (args.alpha,))
    names = list(verify.SUITES) if args.suite == "all" else [args.suite]
    reports = [verify.run_suite(name, **params) for name in names]
    if cfg.fmt == "json":
        doc = [{"suite": r.name, "passed": r.passed,
                "checks": [vars(c) for c in r.checks]} for r in reports]
        out._write(json.dumps(doc) + "\n")
    elif cfg.fmt == "csv":
        out.table(("suite", "statement", "passed", "detail"),
                  [(r.name, c.statement, c.passed, c.detail) for r in reports for c in r.checks])
    else:
        out._write("".join(line + "\n" for r in reports for line in r.lines()))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_VIOLATION


def cmd_figure(args, cfg, out):
    n_max = FULL_FIGURE_N if args.full else args.n_max
    if n_max < 2:
        raise UsageError("--n-max must be >= 2")
    data = figures.figure_data(args.which, n_max, cfg.alpha, workers=cfg.threads)
    meta = {"alpha": cfg.alpha, "figure": args.which, "violations": len(data.violations)}
    if args.which == 2:
        meta["ratio_below_limit_from_n"] = data.ratio_threshold
        meta["exceptions"] = list(data.violations)
    rows = [(n, v, _fmt_float(b)) if args.which == 1 else (n, _fmt_float(v), _fmt_float(b))
            for n, v, b in data.rows]
    out.table(data.header, rows, meta)
    return EXIT_VIOLATION if args.which == 1 and data.violations else EXIT_OK


def _fmt_float(x):
    return float(f"{x:.12g}")


COMMANDS = {
    "fib": cmd_fib, "zeck": cmd_zeck, "sigma": cmd_sigma, "ord": cmd_ord, "trace": cmd_trace,
    "chain": cmd_chain, "scan": cmd_scan, "bk": cmd_bk, "density": cmd_density,
    "dirichlet": cmd_dirichlet, "verify": cmd_verify, "figure": cmd_figure,
}

TABLE_COMMANDS = {"scan", "figure"}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        threads = args.threads if args.threads is not None else _default_threads()
        fmt = args.fmt
        if fmt is None and args.command in TABLE_COMMANDS:
            fmt = "csv"
        if fmt is None and args.command in ("fib", "sigma", "ord") and args.limit is not None:
            fmt = "csv"
        cfg = RunConfig(alpha=args.alpha, fmt=fmt, threads=threads, rounds=args.rounds,
                        rng_seed=args.rng_seed, out=args.out)
        return COMMANDS[args.command](args, cfg, Emitter(cfg))
    except PrecisionError as exc:
        print(f"fibchain: precision failure: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except (UsageError, AlphaError, DomainError, InvalidRepresentationError, TypeError) as exc:
        print(f"fibchain: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
