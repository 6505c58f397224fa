"""Brute-force ground truth and counting bounds.

Everything here works on raw runs (``itertools.groupby`` on the bits) rather
than the run-profile helpers, so it can certify them.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterable, Sequence
from fractions import Fraction

from .channel import ChannelSpec
from .galois import smallest_prime_at_least

Bits = tuple[int, ...]


def runs(x: Sequence[int]) -> list[tuple[int, int]]:
    """(bit, length) for each run of ``x``."""
    return [(b, sum(1 for _ in g)) for b, g in itertools.groupby(x)]


def ball_of(x: Sequence[int], spec: ChannelSpec) -> set[Bits]:
    """All outputs of the channel on ``x``, built run by run."""
    rs = runs(x)
    out = set()
    for size in range(0, spec.t + 1):
        for chosen in itertools.combinations(range(len(rs)), size):
            ranges = [range(1, min(spec.l, rs[i][1] - 1) + 1) for i in chosen]
            for mags in itertools.product(*ranges):
                cut = dict(zip(chosen, mags))
                y: list[int] = []
                for i, (b, L) in enumerate(rs):
                    y.extend([b] * (L - cut.get(i, 0)))
                out.add(tuple(y))
    return out


def reachable(x: Sequence[int], y: Sequence[int], spec: ChannelSpec) -> bool:
    """True iff ``y`` is in the ball of ``x``."""
    rx, ry = runs(x), runs(y)
    if len(rx) != len(ry):
        return False
    hit = 0
    for (bx, lx), (by, ly) in zip(rx, ry):
        if bx != by or ly > lx or lx - ly > spec.l:
            return False
        hit += lx != ly
    return hit <= spec.t


def brute_force_decode(codebook: Iterable[Sequence[int]], received: Sequence[int], spec: ChannelSpec) -> set[Bits]:
    return {tuple(x) for x in codebook if reachable(x, received, spec)}


class BallIndex:
    """received word -> codewords whose ball contains it, for a whole codebook."""

    def __init__(self, codebook: Iterable[Sequence[int]], spec: ChannelSpec):
        self.spec = spec
        self.owners: dict[Bits, set[Bits]] = {}
        for x in codebook:
            x = tuple(x)
            for y in ball_of(x, spec):
                self.owners.setdefault(y, set()).add(x)

    def decode(self, received: Sequence[int]) -> set[Bits]:
        return set(self.owners.get(tuple(received), ()))

    def collisions(self) -> list[tuple[Bits, set[Bits]]]:
        return [(y, s) for y, s in self.owners.items() if len(s) > 1]


def confusable(x: Sequence[int], y: Sequence[int], spec: ChannelSpec) -> bool:
    return bool(ball_of(x, spec) & ball_of(y, spec))


def confusable_fast(x: Sequence[int], y: Sequence[int], spec: ChannelSpec) -> bool:
    """Closed form of :func:`confusable`: same run skeleton, run lengths within
    l of each other, and at most t runs longer on either side."""
    rx, ry = runs(x), runs(y)
    if len(rx) != len(ry) or any(a[0] != b[0] for a, b in zip(rx, ry)):
        return False
    more_x = more_y = 0
    for (_, a), (_, b) in zip(rx, ry):
        if abs(a - b) > spec.l:
            return False
        more_x += a > b
        more_y += b > a
    return more_x <= spec.t and more_y <= spec.t


def find_confusable_pair(codebook: Sequence[Sequence[int]], spec: ChannelSpec) -> tuple[Bits, Bits] | None:
    idx = BallIndex(codebook, spec)
    for _, owners in idx.collisions():
        a, b = sorted(owners)[:2]
        return a, b
    return None


# ---------------------------------------------------------------------------
# Bounds


def log2_fraction(q: Fraction) -> float:
    """log2 of a positive rational, accurate for huge numerators/denominators."""
    if q <= 0:
        raise ValueError("log of a non-positive number")
    return math.log2(q.numerator) - math.log2(q.denominator)


def levenshtein_bound(n: int, r: int) -> Fraction:
    """Upper bound on the size of an r-sticky-deletion-correcting code."""
    if not n > r >= 1:
        raise ValueError("need n > r >= 1")
    if r % 2:
        return Fraction(2 ** (n + r) * math.factorial(r), n**r)
    h = r // 2
    return Fraction(2 ** (n + 3 * h) * math.factorial(h) ** 2, n**r)


def levenshtein_redundancy(n: int, r: int) -> float:
    """log2(2^n / bound): the least redundancy allowed by the bound."""
    return n - log2_fraction(levenshtein_bound(n, r))


def meets_primary_bound(size: int, n: int, t: int, p: int) -> bool:
    """size >= 2^n / (p (n+1)^(2t(1-1/p))), compared in exact integers.

    Raising both sides to the p-th power clears the fractional exponent.
    """
    return (size * p) ** p * (n + 1) ** (2 * t * (p - 1)) >= 2 ** (n * p)


def meets_secondary_bound(size: int, n: int, t: int, l: int) -> bool:  # noqa: E741
    """size >= 2^n / ((2l+2)(n+1)^(t(2l+1)/(l+1))), in exact integers."""
    q = l + 1
    return (size * 2 * q) ** q * (n + 1) ** (t * (2 * l + 1)) >= 2 ** (n * q)


def primary_bound_log2(n: int, t: int, p: int) -> float:
    return n - math.log2(p) - 2 * t * (1 - 1 / p) * math.log2(n + 1)


def secondary_bound_log2(n: int, t: int, l: int) -> float:  # noqa: E741
    return n - math.log2(2 * l + 2) - t * (2 * l + 1) / (l + 1) * math.log2(n + 1)


def secondary_exponent(t: int, l: int) -> Fraction:  # noqa: E741
    return Fraction(t * (2 * l + 1), l + 1)


def size_bounds_report(n: int, spec: ChannelSpec, size: int | None = None, sizes: dict[int, int] | None = None) -> dict:
    """Both size bounds for each prime convention, plus the r = t*l comparison.

    ``size`` is an enumerated codebook size (checked against the p >= l+1
    bound); ``sizes`` maps a prime to the codebook size built with it.
    """
    t, l = spec.t, spec.l  # noqa: E741
    sizes = dict(sizes or {})
    branches = []
    for label, p in (("p>=l+1", smallest_prime_at_least(l + 1)), ("p>l+1", smallest_prime_at_least(l + 2))):
        entry = {
            "convention": label,
            "p": p,
            "primary_log2": primary_bound_log2(n, t, p),
            "redundancy_formula": 2 * t * (1 - 1 / p) * math.log2(n + 1) + math.log2(p),
        }
        got = sizes.get(p, size if label == "p>=l+1" else None)
        if got is not None:
            entry["size"] = got
            entry["size_log2"] = math.log2(got) if got else float("-inf")
            entry["meets_primary"] = meets_primary_bound(got, n, t, p)
            entry["meets_secondary"] = meets_secondary_bound(got, n, t, l)
        branches.append(entry)
    rep = {
        "n": n,
        "t": t,
        "l": l,
        "branches": branches,
        "secondary_log2": secondary_bound_log2(n, t, l),
        "secondary_exponent": float(secondary_exponent(t, l)),
        "corollary_redundancy": t * (2 * l + 1) / (l + 1) * math.log2(n + 1) + math.log2(2 * l + 2),
    }
    r = t * l
    if n > r:
        rep["levenshtein_r"] = r
        rep["levenshtein_log2"] = round(log2_fraction(levenshtein_bound(n, r)), 6)
        rep["levenshtein_redundancy"] = round(levenshtein_redundancy(n, r), 6)
    return rep
