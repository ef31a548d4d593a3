"""Slow, independently written reference computations used by the tests."""

import math

import mpmath


def sieve(limit):
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p::p] = bytes(len(range(p * p, limit + 1, p)))
    return [i for i in range(limit + 1) if flags[i]]


def order_of_two_capped(p, k):
    x = 1
    for e in range(1, k):
        x = 2 * x % p
        if x == 1:
            return e
    return k


def bk_product(k, primes, dps=30):
    """Direct product over odd primes, in mpmath at ``dps`` digits."""
    with mpmath.workdps(dps):
        acc = mpmath.mpf(2) ** (k - 1)
        for p in primes:
            if p == 2:
                continue
            w = order_of_two_capped(p, k)
            acc *= (1 - mpmath.mpf(w) / p) / (1 - mpmath.mpf(1) / p) ** k
        return float(acc)


def li_offset(N):
    return float(mpmath.li(N) - mpmath.li(2))


def representations(alpha, nmax):
    """Map value -> list of dense digit vectors meeting the digit rules, for values <= nmax.

    Digits are enumerated bottom-up over indices 1..top, independently of
    the encoder's greedy order.
    """
    F = [0, 1]
    while F[-1] <= nmax:
        F.append(alpha * F[-1] + F[-2])
    top = len(F) - 2
    found = {}
    digits = [0] * (top + 2)

    def rec(i, value):
        if value > nmax:
            return
        if i > top:
            if value and digits[1] < alpha and all(
                    not (digits[j] and digits[j + 1] == alpha) for j in range(1, top)):
                found.setdefault(value, []).append(
                    tuple((j, digits[j]) for j in range(1, top + 1) if digits[j]))
            return
        for d in range(alpha + 1):
            digits[i] = d
            rec(i + 1, value + d * F[i])
        digits[i] = 0

    rec(1, 0)
    return found
