"""Generalized Zeckendorf digits ``n = sum a_i * F_{c_i}``.

A representation is valid when

(i)   every digit satisfies ``0 < a_i <= alpha``, and the digit on ``F_1`` is below alpha;
(ii)  indices are strictly increasing and start at 1 or above;
(iii) whenever two used indices are adjacent, the upper digit is below alpha.

Digits are kept sparse (non-zero only) and ordered by ascending index.
"""

from dataclasses import dataclass
from typing import NamedTuple

from ._validation import check_alpha, check_natural
from .fib_core import fib_table_upto


class InvalidRepresentationError(ValueError):
    pass


@dataclass(frozen=True)
class ZeckRep:
    alpha: int
    digits: tuple  # ((index, coefficient), ...), ascending by index

    def __str__(self):
        return ",".join(f"{c}:{a}" for c, a in self.digits)

    @classmethod
    def parse(cls, alpha, text):
        """Inverse of ``str``: ``"1:1,7:1"`` -> ZeckRep."""
        digits = []
        for part in text.split(","):
            c, a = part.split(":")
            digits.append((int(c), int(a)))
        return cls(alpha, tuple(digits))


class Validation(NamedTuple):
    ok: bool
    condition: str | None  # "i", "ii" or "iii" for the first violated rule
    position: int | None = None

    def __bool__(self):
        return self.ok


def zeck_validate(rep):
    """Check conditions (i)-(iii); returns the first violation found."""
    alpha = rep.alpha
    digits = list(rep.digits)
    if not digits:
        return Validation(False, "ii", None)
    prev = 0
    for pos, (c, a) in enumerate(digits):
        if c <= prev:
            return Validation(False, "ii", pos)
        if not 0 < a <= alpha or (c == 1 and a >= alpha):
            return Validation(False, "i", pos)
        if pos and c == prev + 1 and a >= alpha:
            return Validation(False, "iii", pos)
        prev = c
    return Validation(True, None)


def zeck_decode(rep):
    """Return ``sum a_i F_{c_i}``; raises :class:`InvalidRepresentationError` on invalid input.

    >>> zeck_decode(ZeckRep(3, ((1, 2), (3, 1))))
    12
    """
    check_alpha(rep.alpha)
    result = zeck_validate(rep)
    if not result:
        raise InvalidRepresentationError(
            f"condition ({result.condition}) fails at digit {result.position}: {rep}"
        )
    top = rep.digits[-1][0]
    values = [0, 1]
    while len(values) <= top:
        values.append(rep.alpha * values[-1] + values[-2])
    return sum(a * values[c] for c, a in rep.digits)


def zeck_encode(alpha, n, table=None):
    """Greedy encoding from the largest index down.

    >>> str(zeck_encode(3, 1190))
    '1:1,7:1'
    """
    alpha = check_alpha(alpha)
    n = check_natural(n)
    if table is None or not table.covers(n):
        table = fib_table_upto(alpha, n)
    digits = []
    remaining = n
    while remaining:
        k = table.ind(remaining)
        a, remaining = divmod(remaining, table[k])
        digits.append((k, a))
    rep = ZeckRep(alpha, tuple(reversed(digits)))
    if not zeck_validate(rep):
        rep = _search(alpha, n, table)
    return rep


def _search(alpha, n, table):
    # Depth-first fallback over admissible digit strings; greedy is not
    # expected to ever need it.
    def walk(k, remaining, upper):
        # upper: digit already placed on index k + 1
        if remaining == 0:
            return []
        if k == 0:
            return None
        for a in range(min(alpha, remaining // table[k]), -1, -1):
            if a and (k == 1 and a >= alpha or upper == alpha):
                continue
            rest = walk(k - 1, remaining - a * table[k], a)
            if rest is not None:
                return rest + ([(k, a)] if a else [])
        return None

    found = walk(table.ind(n), n, 0)
    if not found:
        raise InvalidRepresentationError(f"no representation found for {n}")
    return ZeckRep(alpha, tuple(found))
