"""Finite verification suites behind ``fibchain verify``.

Each suite returns a :class:`SuiteReport`; a report fails if any of its
checks fails. Range suites use the vectorized ``*_range`` helpers and
spot-check them against the per-value scanner.
"""

import math
import random
from dataclasses import dataclass, field
from itertools import product
from math import gcd

import mpmath
import numpy as np

from .analytic import mult_order
from .chains import chain, verify_cor34, verify_remark15
from .fib_core import fib_at, fib_closed_form, fib_range, fib_table_upto, ind, phi_alpha
from .figures import empirical_c_alpha, empirical_d_alpha
from .primes import DEFAULT_CONFIG, primes_upto
from .sigma_ord import (
    Scanner, crossover_alpha, ind_range, log_threshold, max_divisor_index_range, ord_range,
    order, shifted_value, sigma, sigma_range, sigma_shifted, sigma_wing, verify_thm35,
    wing_value,
)
from .zeckendorf import zeck_decode, zeck_encode, zeck_validate


@dataclass
class Check:
    statement: str
    passed: bool
    detail: str = ""


@dataclass
class SuiteReport:
    name: str
    checks: list = field(default_factory=list)

    def add(self, statement, passed, detail=""):
        self.checks.append(Check(statement, bool(passed), detail))

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def lines(self):
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            tail = f"  [{c.detail}]" if c.detail else ""
            yield f"{mark}  {self.name}: {c.statement}{tail}"


def _first_bad(mask, values):
    idx = np.flatnonzero(~mask)
    return "none" if idx.size == 0 else f"first failure at {int(values[idx[0]])}"


def _spot_check_sigma(alpha, sig, rng, samples=200):
    scanner = Scanner(alpha, len(sig))
    picks = rng.sample(range(1, len(sig)), min(samples, len(sig) - 1))
    return all(scanner.sigma(n) == int(sig[n]) for n in picks)


# -- sequence facts ---------------------------------------------------------


def suite_facts22(alphas=(3, 4, 5), nmax=120, **_):
    rep = SuiteReport("facts22")
    for a in alphas:
        naive = fib_range(a, 502)
        ok = all(fib_at(a, n) == naive[n] for n in range(501))
        ok &= all(fib_at(a, n + 1) == a * fib_at(a, n) + fib_at(a, n - 1) for n in range(-500, 500))
        rep.add(f"alpha={a}: fast doubling matches the recurrence for |n| <= 500", ok)

        ok = all(fib_at(a, -n) == (-1) ** (n + 1) * naive[n] for n in range(300))
        rep.add(f"alpha={a}: F_(-n) = (-1)^(n+1) F_n for n < 300", ok)

        ok = all(naive[m + n] == naive[m + 1] * naive[n] + naive[m] * fib_at(a, n - 1)
                 for m in range(0, 301, 3) for n in range(0, 201))
        rep.add(f"alpha={a}: F_(m+n) = F_(m+1) F_n + F_m F_(n-1)", ok)

        worst = 0
        for n in range(0, 201):
            dps = 40 + len(str(naive[n]))
            with mpmath.workdps(dps):
                worst = max(worst, abs(fib_closed_form(a, n, dps) - naive[n]))
        rep.add(f"alpha={a}: closed form within 1/2 for n <= 200", worst < 0.5, f"max err {float(worst):.2e}")

        ok, partial = True, 0
        for n in range(1, 301):
            partial += naive[n]
            ok &= a * partial == (a + 1) * naive[n] + naive[n - 1] - 1
            ok &= a * partial < (a + 2) * naive[n]
        rep.add(f"alpha={a}: partial sums exact and below (1+2/alpha) F_n for n <= 300", ok)

        ok_div = all((n % m == 0) == (naive[n] % naive[m] == 0)
                     for m in range(1, nmax + 1) for n in range(1, nmax + 1))
        rep.add(f"alpha={a}: m | n iff F_m | F_n for m, n <= {nmax}", ok_div)
        ok_gcd = all(gcd(naive[m], naive[n]) == naive[gcd(m, n)]
                     for m in range(1, nmax + 1) for n in range(1, nmax + 1))
        rep.add(f"alpha={a}: gcd(F_m, F_n) = F_gcd(m,n) for m, n <= {nmax}", ok_gcd)

        table = fib_table_upto(a, naive[200])
        ok = all(ind(a, naive[k]) == k == ind(a, naive[k], table) for k in range(1, 201))
        rep.add(f"alpha={a}: ind(F_k) = k for k <= 200 (both lookup paths)", ok)
        phi = phi_alpha(a)
        rep.add(f"alpha={a}: phi^2 = alpha*phi + 1 within the precision bound",
                abs(phi.residual()) <= 4 * phi.error * phi.value and phi.value > a)
    return rep


# -- sigma bounds -----------------------------------------------------------


def suite_lemma27(alphas=(3, 4, 5), limit=10 ** 5, **_):
    rep = SuiteReport("lemma27")
    rng = random.Random(0)
    n = np.arange(1, limit + 1)
    for a in alphas:
        sig = sigma_range(a, limit)
        rep.add(f"alpha={a}: vectorized sigma agrees with the direct scan (sample)",
                _spot_check_sigma(a, sig, rng))
        s = sig[1:]
        fibs = np.array(fib_table_upto(a, int(s.max())).values, dtype=np.int64)
        kp = ind_range(a, s)
        fk = fibs[kp - 1]
        nontrivial = s != 1
        sandwich = (fk < s) & (a * s < (a + 2) * fk) & (s % fk != 0)
        ok = ~nontrivial | sandwich
        rep.add(f"alpha={a}: F_k' < sigma(n) < (1+2/alpha) F_k' and F_k' does not divide sigma(n), n <= {limit}",
                ok.all(), _first_bad(ok, n))
        ok = kp <= ind_range(a, n)
        rep.add(f"alpha={a}: ind(sigma(n)) <= ind(n) for n <= {limit}", ok.all(), _first_bad(ok, n))
    return rep


def suite_thm28(alphas=(3, 4, 5), limit=10 ** 5, **_):
    rep = SuiteReport("thm28")
    n = np.arange(1, limit + 1)
    for a in alphas:
        orders = ord_range(a, limit)[1:]
        bound = np.log(n) / float(phi_alpha(a).log()) + 2
        ok = orders <= bound
        rep.add(f"alpha={a}: ord(n) <= log n / log phi + 2 for n <= {limit}", ok.all(), _first_bad(ok, n))
        sample = range(1, limit + 1, max(1, limit // 300))
        rep.add(f"alpha={a}: vectorized ord agrees with full traces (sample)",
                all(order(a, int(m)) == int(orders[m - 1]) for m in sample))
    return rep


def suite_thm43(alphas=(3, 4, 5), limit=10 ** 5, **_):
    rep = SuiteReport("thm43")
    for a in alphas:
        image = np.unique(sigma_range(a, limit)[1:])
        top = max_divisor_index_range(a, int(image.max()))[image]
        ok = 2 * top <= ind_range(a, image) + 1
        rep.add(f"alpha={a}: F_i | a implies i <= (ind(a)+1)/2 on {image.size} sigma values",
                ok.all(), _first_bad(ok, image))
        # the image of small n is tiny, so also sample sigma of large inputs
        rng = random.Random(a)
        F = fib_range(a, 81)
        inputs = {F[m] + j for m in range(2, 80) for j in (-1, 1, 2)}
        inputs |= {F[m] for m in range(2, 80)}
        inputs |= {rng.randrange(2, 10 ** 15) for _ in range(500)}
        scanner = Scanner(a, 2 * max(inputs))
        sampled = {scanner.sigma(x) for x in inputs}
        bad = [v for v in sorted(sampled) if v > 1
               and 2 * scanner.divisor_set(v).max_index > scanner.table.ind(v) + 1]
        rep.add(f"alpha={a}: same bound on {len(sampled)} sigma values of large inputs", not bad,
                f"failures {bad[:3]}" if bad else "")
    # the bound is attained at a = F_(2p-1) + 1 with p = 3
    for a in alphas:
        value = fib_at(a, 5) + 1
        rep.add(f"alpha={a}: F_3 divides F_5 + 1 and ind(F_5 + 1) = 5 (bound attained)",
                value % fib_at(a, 3) == 0 and ind(a, value) == 5)
    return rep


def suite_thm44(alphas=(3, 4, 5), limit=10 ** 5, **_):
    rep = SuiteReport("thm44")
    n = np.arange(1, limit + 1)
    for a in alphas:
        orders = ord_range(a, limit)[1:]
        ok = orders <= np.log2(ind_range(a, n)) + 2
        rep.add(f"alpha={a}: ord(n) <= log2(ind(n)) + 2 for n <= {limit}", ok.all(), _first_bad(ok, n))
    return rep


def suite_thm45(alphas=(3, 4, 5), limit=10 ** 5, **_):
    rep = SuiteReport("thm45")
    n = np.arange(2, limit + 1)
    for a in alphas:
        orders = ord_range(a, limit)[2:]
        ok = orders < np.log2(np.log(n)) + 3
        rep.add(f"alpha={a}: ord(n) < log2(log n) + 3 for 2 <= n <= {limit}", ok.all(), _first_bad(ok, n))
    la3 = log_threshold(3, 2)
    rep.add("log A_3(2) < 1", la3 < 1, f"{float(la3):.6f}")
    rep.add("log A_55(1/4) reported", True, f"{float(log_threshold(55, 0.25)):.4f}")
    cross = crossover_alpha()
    rep.add("smallest alpha >= 55 with alpha > A_alpha(1/4) reported", True, f"{cross}")
    big = 2981
    orders = ord_range(big, limit)
    small_ok = all(orders[m] == 1 for m in range(2, 8))
    m = np.arange(8, limit + 1)
    ok = orders[8:] < np.log2(np.log(m))
    rep.add(f"alpha={big}: ord(n) = 1 for 2 <= n <= 7 and ord(n) < log2(log n) for 8 <= n <= {limit}",
            small_ok and ok.all(), _first_bad(ok, m))
    return rep


# -- closed forms ---------------------------------------------------------


def suite_lemma32(alphas=(3, 4, 5), mmax=60, **_):
    rep = SuiteReport("lemma32")
    for a in alphas:
        bad = [m for m in range(1, mmax + 1) if sigma(a, wing_value(a, m)) != sigma_wing(a, m)]
        rep.add(f"alpha={a}: sigma(F_(m+1) + F_(m-1)) closed form for m <= {mmax}", not bad,
                f"failures {bad[:5]}" if bad else "")
        bad = []
        for m in range(1, mmax + 1):
            ds = Scanner(a, wing_value(a, m)).divisor_set(wing_value(a, m)).divisors
            if not set(ds) <= {1, a}:
                bad.append(m)
        rep.add(f"alpha={a}: only 1 and alpha can divide F_(m+1) + F_(m-1), m <= {mmax}", not bad)
        bad = [m for m in range(1, mmax + 1) if wing_value(a, m) * fib_at(a, m) != fib_at(a, 2 * m)]
        rep.add(f"alpha={a}: F_(m+1) + F_(m-1) = F_2m / F_m for m <= {mmax}", not bad)
    return rep


def suite_thm33(alphas=(3, 4, 5), pmax=31, **_):
    rep = SuiteReport("thm33")
    for a in alphas:
        bad, count = [], 0
        for p in (int(q) for q in primes_upto(pmax)):
            for m in range(1, 2 * p):
                if m == p:
                    continue
                count += 1
                if sigma(a, shifted_value(a, p, m)) != sigma_shifted(a, p, m):
                    bad.append((p, m))
        rep.add(f"alpha={a}: sigma(F_(m+p) + F_(m-p)) closed form, p <= {pmax}, m < 2p",
                not bad, f"{count} cases" + (f", failures {bad[:5]}" if bad else ""))
        ok = all(shifted_value(a, p, m) == fib_at(a, p) * wing_value(a, m)
                 for p in (3, 5, 7, 11) for m in range(1, 2 * p) if m % 2 == 0)
        rep.add(f"alpha={a}: even m factorization F_(m+p) + F_(m-p) = F_p (F_(m+1) + F_(m-1)) for odd p", ok)
    return rep


def suite_cor34(alpha=3, pmax=300, cfg=DEFAULT_CONFIG, **_):
    rep = SuiteReport("cor34")
    for kind in (1, -1):
        bad, count = [], 0
        for p in (int(q) for q in primes_upto(pmax) if q > 2):
            count += 1
            if not verify_cor34(alpha, p, kind, cfg):
                bad.append(p)
        sign = "+" if kind == 1 else "-"
        rep.add(f"alpha={alpha}, kind {sign}1: l(p) - 1 = ord(F_last) - ord(F_p) and "
                f"sigma(F_(2p{sign}1) + 1) = F_p + 1 for odd primes p <= {pmax}",
                not bad, f"{count} primes" + (f", failures {bad[:5]}" if bad else ""))
    return rep


def suite_thm35(alphas=(3, 4, 5), pmax=200, **_):
    rep = SuiteReport("thm35")
    primes = [int(p) for p in primes_upto(pmax) if p > 2]
    bad, related = [], 0
    for p, q in product(primes, primes):
        flags = verify_thm35(alphas, p, q)
        related += flags.arithmetic
        if not flags.agree:
            bad.append((p, q))
    rep.add(f"p = 2q +- 1 iff sigma^2(F_p) = sigma(F_q), for some / all alpha in {tuple(alphas)}, "
            f"odd primes <= {pmax}", not bad,
            f"{len(primes) ** 2} pairs, {related} related" + (f", failures {bad[:5]}" if bad else ""))
    return rep


def suite_lemma42(alphas=(3, 4), kmax=60, abmax=12, **_):
    rep = SuiteReport("lemma42")
    for a in alphas:
        F = fib_range(a, (abmax + 1) * kmax + kmax + 2)
        bad = []
        for k in range(2, kmax + 1):
            fk = F[k]
            for i in range(1, k):
                ok = (F[k + i] - (-1) ** (i + 1) * F[k - i]) % fk == 0
                ok &= (F[2 * k + i] - (-1) ** k * F[i]) % fk == 0
                ok &= (F[3 * k + i] - (-1) ** (k + i + 1) * F[k - i]) % fk == 0
                ok &= (F[4 * k + i] - F[i]) % fk == 0
                for x in range(abmax + 1):
                    for y in range(x % 4, abmax + 1, 4):
                        ok &= (F[x * k + i] - F[y * k + i]) % fk == 0
                if not ok:
                    bad.append((k, i))
        rep.add(f"alpha={a}: reduction of F_(ak+i) modulo F_k for 1 <= i < k <= {kmax}, a, b <= {abmax}",
                not bad, f"failures {bad[:5]}" if bad else "")
    return rep


# -- chains -----------------------------------------------------------------


def suite_remark15(limit=10 ** 4, cfg=DEFAULT_CONFIG, **_):
    rep = SuiteReport("remark15")
    rep.add(f"l(p) < p/2 for both kinds and every prime 7 <= p <= {limit}", verify_remark15(limit, cfg))
    primes = [int(p) for p in primes_upto(min(limit, 2000)) if p > 2]
    bad = [(p, kind) for p in primes for kind in (1, -1)
           if chain(p, kind, cfg).length > mult_order(p, 2)]
    rep.add(f"l(p) <= ord(p; 2) for odd primes p <= {min(limit, 2000)}", not bad)
    return rep


def suite_zeckendorf(alphas=(3, 4), nmax=2000, limit=10 ** 5, **_):
    rep = SuiteReport("zeckendorf-uniqueness")
    for a in alphas:
        table = fib_table_upto(a, limit)
        ok = all(zeck_decode(zeck_encode(a, n, table)) == n for n in range(1, limit + 1))
        rep.add(f"alpha={a}: decode(encode(n)) = n for n <= {limit}", ok)
        reps = enumerate_representations(a, nmax)
        bad = [n for n in range(1, nmax + 1)
               if len(reps.get(n, ())) != 1 or reps[n][0] != zeck_encode(a, n).digits]
        rep.add(f"alpha={a}: exhaustive enumeration finds exactly the encoder's representation, n <= {nmax}",
                not bad, f"failures {bad[:5]}" if bad else "")
        sig = sigma_range(a, min(limit, 10 ** 4))
        scanner = Scanner(a, len(sig))
        ok = True
        for n in range(1, len(sig)):
            expected = tuple((i, 1) for i in scanner.divisor_indices(n))
            got = zeck_encode(a, int(sig[n]), table)
            ok &= got.digits == expected and bool(zeck_validate(got))
        rep.add(f"alpha={a}: the divisor sum is the representation of sigma(n), n < {len(sig)}", ok)
    return rep


def enumerate_representations(alpha, nmax):
    """Every digit string meeting the representation rules with value <= nmax.

    Independent of the encoder: digits are assigned top-down over indices
    ``1..ind(nmax)+1`` with the rules checked inline.
    """
    F = fib_range(alpha, 64)
    top = 1
    while F[top + 1] <= nmax:
        top += 1
    top += 1
    found = {}

    def walk(k, value, upper, digits):
        if k == 0:
            if 0 < value <= nmax:
                found.setdefault(value, []).append(tuple(reversed(digits)))
            return
        for d in range(alpha + 1):
            v = value + d * F[k]
            if v > nmax:
                break
            if d and k == 1 and d >= alpha:
                continue
            if d and upper == alpha:
                continue
            walk(k - 1, v, d, digits + ([(k, d)] if d else []))

    walk(top, 0, 0, [])
    return found


# -- reports ---------------------------------------------------------------


def suite_limsup(alphas=(3,), pmax=2000, limit=10 ** 5, **_):
    rep = SuiteReport("limsup")
    for a in alphas:
        c = empirical_c_alpha(a, pmax)
        rep.add(f"alpha={a}: running max of ord(F_p)/log p over p <= {pmax} (empirical only)", True,
                f"overall {c.overall:.4f} at p={c.overall_at}; upper half {c.tail:.4f} at p={c.tail_at}; "
                f"1/log 2 = {1 / math.log(2):.4f}")
        d = empirical_d_alpha(a, limit)
        rep.add(f"alpha={a}: running max of ord(n)/loglog n over n <= {limit} (empirical only)", True,
                f"overall {d.overall:.4f} at n={d.overall_at}; upper half {d.tail:.4f} at n={d.tail_at}")
    return rep


SUITES = {
    "facts22": suite_facts22,
    "lemma27": suite_lemma27,
    "thm28": suite_thm28,
    "lemma32": suite_lemma32,
    "thm33": suite_thm33,
    "cor34": suite_cor34,
    "thm35": suite_thm35,
    "lemma42": suite_lemma42,
    "thm43": suite_thm43,
    "thm44": suite_thm44,
    "thm45": suite_thm45,
    "remark15": suite_remark15,
    "zeckendorf-uniqueness": suite_zeckendorf,
    "limsup": suite_limsup,
}


def run_suite(name, **params):
    try:
        suite = SUITES[name]
    except KeyError:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}") from None
    return suite(**{k: v for k, v in params.items() if v is not None})
