"""Optional GMP acceleration for the divisor scans.

Trial division of a few-thousand-digit integer by every sequence member is
the hot loop of ``ord`` traces; gmpy2 makes it roughly ten times faster.
Results never depend on whether gmpy2 is installed.
"""

try:
    import gmpy2
except ImportError:  # pragma: no cover - exercised only without gmpy2
    gmpy2 = None

HAVE_GMPY2 = gmpy2 is not None


def big(x):
    return gmpy2.mpz(x) if HAVE_GMPY2 else int(x)


def divides(d, n):
    if HAVE_GMPY2:
        return gmpy2.is_divisible(n, d)
    return n % d == 0
