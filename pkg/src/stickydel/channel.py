"""The t-sticky-deletion, l-limited-magnitude channel.

An error pattern ``e`` lives in run-profile coordinates: entry ``e[i]`` is the
number of bits removed from run ``i`` of ``x + (1,)``.  A pattern is valid for
``x`` under ``ChannelSpec(t, l)`` when at most ``t`` entries are nonzero,
every entry is at most ``l``, and no run of ``x`` is wiped out.

For most runs that last condition is ``e[i] <= u[i]``.  When ``x`` ends in 1
its final run shares the profile entry with the appended 1, so the cap there
is ``u[-1] - 1``; otherwise the whole trailing run could vanish.
"""

from __future__ import annotations

import itertools
import operator
import random
from collections.abc import Iterator, Sequence
from dataclasses import dataclass

from .sequences import Bits, from_run_profile, run_profile


class InvalidPattern(ValueError):
    pass


def run_caps(x: Sequence[int]) -> list[int]:
    """Most bits each profile entry may lose without deleting a whole run."""
    return _caps(x, run_profile(x))


def _caps(x: Sequence[int], u: Sequence[int]) -> list[int]:
    caps = list(u)
    if x and x[-1] == 1:
        caps[-1] -= 1
    return caps


@dataclass(frozen=True)
class ChannelSpec:
    t: int
    l: int  # noqa: E741

    def __post_init__(self) -> None:
        if self.t < 0 or self.l < 0:
            raise ValueError("t and l must be non-negative")

    @property
    def budget(self) -> int:
        """Largest number of bits the channel can remove."""
        return self.t * self.l


def check_pattern(x: Sequence[int], e: Sequence[int], spec: ChannelSpec | None = None) -> None:
    """Raise :class:`InvalidPattern` naming the first violated constraint."""
    _check(x, run_profile(x), e, spec)


def _check(x: Sequence[int], u: Sequence[int], e: Sequence[int], spec: ChannelSpec | None) -> None:
    if len(e) != len(u):
        raise InvalidPattern(f"pattern length {len(e)} != number of runs {len(u)}")
    if min(e) < 0:
        raise InvalidPattern("negative entry: the channel only deletes")
    if spec is not None:
        nz = len(e) - e.count(0) if isinstance(e, (tuple, list)) else sum(1 for v in e if v)
        if nz > spec.t:
            raise InvalidPattern(f"{nz} affected runs exceeds t={spec.t}")
        if max(e) > spec.l:
            i = next(i for i, v in enumerate(e) if v > spec.l)
            raise InvalidPattern(f"entry {i} deletes {e[i]} bits, more than l={spec.l}")
    for i, (v, cap) in enumerate(zip(e, _caps(x, u))):
        if v > cap:
            raise InvalidPattern(f"entry {i} would delete a whole run (at most {cap} removable)")


def is_valid(x: Sequence[int], e: Sequence[int], spec: ChannelSpec | None = None) -> bool:
    try:
        check_pattern(x, e, spec)
    except InvalidPattern:
        return False
    return True


def apply(x: Sequence[int], e: Sequence[int], spec: ChannelSpec | None = None) -> Bits:
    u = run_profile(x)
    _check(x, u, e, spec)
    return from_run_profile(list(map(operator.sub, u, e)))


def pattern_count(x: Sequence[int], spec: ChannelSpec) -> int:
    caps = [min(spec.l, a) for a in run_caps(x)]
    caps = [c for c in caps if c]
    # elementary symmetric sums of the caps up to degree t
    esym = [1] + [0] * spec.t
    for c in caps:
        for j in range(spec.t, 0, -1):
            esym[j] += esym[j - 1] * c
    return sum(esym)


def enumerate_patterns(x: Sequence[int], spec: ChannelSpec) -> Iterator[tuple[int, ...]]:
    """Every valid pattern for ``x`` exactly once, the zero pattern first."""
    u = run_caps(x)
    w = len(u)
    eligible = [i for i in range(w) if min(spec.l, u[i]) > 0]
    for size in range(0, min(spec.t, len(eligible)) + 1):
        for chosen in itertools.combinations(eligible, size):
            ranges = [range(1, min(spec.l, u[i]) + 1) for i in chosen]
            for mags in itertools.product(*ranges):
                e = [0] * w
                for i, v in zip(chosen, mags):
                    e[i] = v
                yield tuple(e)


def sample_pattern(x: Sequence[int], spec: ChannelSpec, rng: random.Random | int | None = None) -> tuple[int, ...]:
    """Draw a valid pattern: support size uniform in [0, min(t, #eligible)],
    then a uniform support of that size, then uniform magnitudes."""
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    u = run_caps(x)
    eligible = [i for i in range(len(u)) if min(spec.l, u[i]) > 0]
    size = rng.randint(0, min(spec.t, len(eligible)))
    e = [0] * len(u)
    for i in rng.sample(eligible, size):
        e[i] = rng.randint(1, min(spec.l, u[i]))
    return tuple(e)


def ball(x: Sequence[int], spec: ChannelSpec) -> set[Bits]:
    u = run_profile(x)
    out = set()
    for e in enumerate_patterns(x, spec):
        out.add(from_run_profile([a - b for a, b in zip(u, e)]))
    return out
