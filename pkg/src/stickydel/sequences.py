"""Binary words and their run profiles.

A bit word is a tuple of 0/1 ints.  The run profile of ``x`` is the vector of
run lengths of ``x + (1,)`` minus one, obtained by taking the derivative
(adjacent XOR, last bit copied) and reading off the zero-run lengths in front
of every 1.
"""

from __future__ import annotations

import operator
from itertools import compress
from collections.abc import Iterable, Sequence

Bits = tuple[int, ...]


def parse_bits(text: str) -> Bits:
    """Parse an ASCII string of '0'/'1' characters; whitespace is ignored."""
    out = []
    for pos, ch in enumerate(text):
        if ch == "0" or ch == "1":
            out.append(ord(ch) - 48)
        elif not ch.isspace():
            raise ValueError(f"invalid bit character {ch!r} at position {pos}")
    return tuple(out)


def format_bits(x: Iterable[int]) -> str:
    return "".join("1" if b else "0" for b in x)


def parse_profile(text: str) -> tuple[int, ...]:
    """Comma-separated integers, or a bare digit string with one digit per entry."""
    text = text.strip()
    if not text:
        return ()
    if "," not in text and text.isdigit():
        return tuple(int(ch) for ch in text)
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise ValueError(f"malformed run profile {text!r}") from None


def format_profile(v: Iterable[int]) -> str:
    return ",".join(str(int(a)) for a in v)


def num_runs(x: Sequence[int]) -> int:
    if not x:
        return 0
    return 1 + sum(1 for a, b in zip(x, x[1:]) if a != b)


def derivative(x: Sequence[int]) -> Bits:
    """Adjacent XOR of ``x`` with the last bit copied through."""
    if not x:
        raise ValueError("derivative of the empty word is undefined")
    return tuple(map(operator.xor, x, x[1:])) + (x[-1],)


def integrate(y: Sequence[int]) -> Bits:
    """Inverse of :func:`derivative`, computed right to left."""
    if not y:
        raise ValueError("integral of the empty word is undefined")
    out = [0] * len(y)
    acc = 0
    for i in range(len(y) - 1, -1, -1):
        acc ^= y[i]
        out[i] = acc
    return tuple(out)


def zero_run_profile(y: Sequence[int]) -> tuple[int, ...]:
    """Lengths of the zero runs preceding each 1 of ``y`` (which must end in 1)."""
    if not y or y[-1] != 1:
        raise ValueError("word must be non-empty and end with 1")
    out = []
    run = 0
    for b in y:
        if b:
            out.append(run)
            run = 0
        else:
            run += 1
    return tuple(out)


def from_zero_runs(profile: Iterable[int]) -> Bits:
    out: list[int] = []
    for r in profile:
        if r < 0:
            raise ValueError("zero-run lengths must be non-negative")
        out.extend([0] * r)
        out.append(1)
    return tuple(out)


def run_profile(x: Sequence[int]) -> tuple[int, ...]:
    """Run lengths of ``x`` followed by a 1, each reduced by one.

    The empty word maps to ``(0,)``.
    """
    # Run boundaries of x + (1,); equivalent to zero_run_profile(derivative(x + (1,))).
    xs = list(x)
    xs.append(1)
    edges = [0]
    edges.extend(compress(range(1, len(xs)), map(operator.ne, xs, xs[1:])))
    edges.append(len(xs))
    return tuple(map(_gap, edges[1:], edges))


def _gap(b: int, a: int) -> int:
    return b - a - 1


def from_run_profile(profile: Sequence[int]) -> Bits:
    """Inverse of :func:`run_profile`.

    The last run is the one holding the appended 1, so runs alternate in value
    backwards from it and the trailing bit is dropped.
    """
    if not profile:
        raise ValueError("a run profile has at least one entry")
    if min(profile) < 0:
        raise ValueError("run profile entries must be non-negative")
    w = len(profile)
    out: list[int] = []
    for i, u in enumerate(profile):
        out.extend([(w - i) & 1] * (u + 1))
    out.pop()
    return tuple(out)


def support(v: Iterable[int]) -> Bits:
    return tuple(1 if a else 0 for a in v)


def reduce_mod(v: Iterable[int], a: int) -> tuple[int, ...]:
    if a < 2:
        raise ValueError("modulus must be at least 2")
    return tuple(x % a for x in v)
