"""Non-systematic sticky-deletion codes.

``NonSysCode`` keeps the words whose run profile, reduced mod p and
zero-padded to the BCH length, lies in a fixed coset of a narrow-sense BCH
code of designed distance 2t+1 (the zero coset by default).  Sticky deletions
lower at most t profile entries by at most l < p each, which the BCH decoder
sees as t symbol errors.

``SingleErrorCode`` is the checksum family for one limited-magnitude error
and ``SingleLiftCode`` carries it to binary words through the run profile.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field

from . import bch as bchmod
from .bch import BchCode
from .channel import ChannelSpec
from .errors import DecodeError
from .galois import smallest_prime_at_least
from .sequences import Bits, from_run_profile, run_profile


@dataclass(frozen=True)
class NonSysCode:
    n: int
    spec: ChannelSpec
    p: int
    bch: BchCode
    coset: tuple[int, ...] = ()
    _target: tuple[int, ...] = field(default=(), repr=False, compare=False)

    @property
    def redundancy_bound_bits(self) -> float:
        """log2 of p^(deg g): the pigeonhole redundancy of the best coset."""
        return self.bch.redundancy * math.log2(self.p)

    def residues(self, x: Sequence[int]) -> tuple[int, ...]:
        z = [u % self.p for u in run_profile(x)]
        return tuple(z) + (0,) * (self.bch.n - len(z))


def build(n: int, spec: ChannelSpec, *, strict_prime: bool = False, coset: Sequence[int] = ()) -> NonSysCode:
    """Code of length n correcting ``spec``.

    p is the least prime >= l+1, or > l+1 with ``strict_prime``.  ``coset`` is
    an optional representative (zero-padded) selecting a translate of the BCH
    code.
    """
    if spec.t < 1 or spec.l < 1:
        raise ValueError("need t >= 1 and l >= 1")
    p = smallest_prime_at_least(spec.l + 2 if strict_prime else spec.l + 1)
    d = 2 * spec.t + 1
    m = bchmod.smallest_m_for_length(p, max(n + 1, d))
    code = bchmod.design(p, m, d)
    rep = tuple(c % p for c in coset)
    if len(rep) > code.n:
        raise ValueError("coset representative longer than the BCH code")
    rep = rep + (0,) * (code.n - len(rep))
    target = tuple(bchmod.syndromes(code, rep)) if any(rep) else ()
    return NonSysCode(n=n, spec=spec, p=p, bch=code, coset=rep if any(rep) else (), _target=target)


def _shift(code: NonSysCode, word: Sequence[int], sign: int) -> tuple[int, ...]:
    if not code.coset:
        return tuple(word)
    p = code.p
    return tuple((w + sign * c) % p for w, c in zip(word, code.coset))


def is_codeword(code: NonSysCode, x: Sequence[int]) -> bool:
    if len(x) != code.n:
        raise ValueError(f"expected a word of length {code.n}")
    synd = bchmod.syndromes(code.bch, code.residues(x))
    if code._target:
        return tuple(synd) == code._target
    return not any(synd)


def decode(code: NonSysCode, received: Sequence[int]) -> Bits:
    """Recover the codeword from a channel output (run-profile BCH decoding)."""
    return decode_with_correction(code, received)[0]


def decode_with_correction(code: NonSysCode, received: Sequence[int]) -> tuple[Bits, tuple[int, ...]]:
    """Like :func:`decode` but also returns the profile correction added back."""
    p, spec = code.p, code.spec
    deficit = code.n - len(received)
    if deficit < 0 or deficit > spec.budget:
        raise DecodeError("length", f"received length {len(received)} incompatible with n={code.n}")
    v = run_profile(received)
    nr = len(v)
    if nr > code.bch.n:
        raise DecodeError("length", "too many runs for the BCH length")
    z = tuple(u % p for u in v) + (0,) * (code.bch.n - nr)
    res = bchmod.decode(code.bch, _shift(code, z, -1))
    if res is None:
        raise DecodeError("bch", "no codeword within the decoding radius")
    zstar = _shift(code, res[0], +1)
    eps = [(a - b) % p for a, b in zip(zstar, z)]
    if any(eps[nr:]):
        raise DecodeError("padding", "error located outside the run profile")
    eps = eps[:nr]
    if any(e > spec.l for e in eps) or sum(eps) != deficit:
        raise DecodeError("magnitude", f"correction {eps} does not match the channel")
    return from_run_profile([a + b for a, b in zip(v, eps)]), tuple(eps)


def enumerate_codebook(code: NonSysCode) -> Iterator[Bits]:
    if code.n > 24:
        raise ValueError("codebook enumeration is limited to n <= 24")
    for x in itertools.product((0, 1), repeat=code.n):
        if is_codeword(code, x):
            yield x


def codeword_classes(code: NonSysCode) -> dict[tuple[int, ...], int]:
    """Sizes of all coset classes of Σ_2^n (keyed by syndrome vector)."""
    sizes: dict[tuple[int, ...], int] = {}
    for x in itertools.product((0, 1), repeat=code.n):
        key = tuple(bchmod.syndromes(code.bch, code.residues(x)))
        sizes[key] = sizes.get(key, 0) + 1
    return sizes


# ---------------------------------------------------------------------------
# Single limited-magnitude error


def smallest_prime_above(n: int) -> int:
    return smallest_prime_at_least(n + 1)


@dataclass(frozen=True)
class SingleErrorCode:
    n_r: int
    l: int  # noqa: E741
    a: int
    b: int

    @property
    def q(self) -> int:
        return self.l + 1

    @property
    def p(self) -> int:
        return smallest_prime_above(self.n_r)

    def checksums(self, u: Sequence[int]) -> tuple[int, int]:
        return (sum(i * x for i, x in enumerate(u, 1)) % self.p, sum(u) % self.q)

    def contains(self, u: Sequence[int]) -> bool:
        return len(u) == self.n_r and self.checksums(u) == (self.a, self.b)


def single_build(n_r: int, l: int, a: int, b: int) -> SingleErrorCode:  # noqa: E741
    if n_r < 1 or l < 1:
        raise ValueError("need n_r >= 1 and l >= 1")
    p = smallest_prime_above(n_r)
    if not 0 <= a < p:
        raise ValueError(f"a must lie in [0, {p - 1}]")
    if not 0 <= b <= l:
        raise ValueError(f"b must lie in [0, {l}]")
    return SingleErrorCode(n_r=n_r, l=l, a=a, b=b)


def single_candidates(code: SingleErrorCode, v: Sequence[int], *, bounded: bool = True) -> list[int]:
    """0-based indices i0 consistent with the checksums of ``v``.

    ``bounded`` restricts to symbols staying inside Σ_q.
    """
    p, q = code.p, code.q
    tau = (code.b - sum(v)) % q
    if tau == 0:
        return []
    target = (code.a - sum(i * x for i, x in enumerate(v, 1))) % p
    out = []
    for i in range(1, len(v) + 1):
        if i * tau % p == target and (not bounded or v[i - 1] + tau <= code.l):
            out.append(i - 1)
    return out


def single_decode(code: SingleErrorCode, v: Sequence[int], *, bounded: bool = True) -> tuple[int, ...]:
    """Undo one decrease of magnitude <= l in ``v``."""
    if len(v) != code.n_r:
        raise ValueError(f"expected length {code.n_r}")
    tau = (code.b - sum(v)) % code.q
    if tau == 0:
        if code.checksums(v)[0] != code.a:
            raise DecodeError("checksum", "weighted checksum mismatch with zero magnitude")
        return tuple(v)
    cands = single_candidates(code, v, bounded=bounded)
    if len(cands) != 1:
        raise DecodeError("checksum", f"{len(cands)} candidate positions")
    out = list(v)
    out[cands[0]] += tau
    return tuple(out)


def partition_check(n_r: int, l: int) -> bool:  # noqa: E741
    """True iff the (a, b) classes are disjoint and cover Σ_q^{n_r}."""
    q = l + 1
    p = smallest_prime_above(n_r)
    codes = [single_build(n_r, l, a, b) for a in range(p) for b in range(q)]
    for u in itertools.product(range(q), repeat=n_r):
        if sum(1 for c in codes if c.contains(u)) != 1:
            return False
    return True


@dataclass(frozen=True)
class SingleLiftCode:
    """Binary words of length n whose run profile meets the (a, b) checksums.

    The checksums are taken on the integer run profile; reducing entries mod
    l+1 first would make the weighted checksum wrap and lose uniqueness.
    """

    n: int
    l: int  # noqa: E741
    a: int
    b: int

    @property
    def inner(self) -> SingleErrorCode:
        # profiles of length-n words have up to n+1 entries
        return SingleErrorCode(n_r=self.n + 1, l=self.l, a=self.a, b=self.b)

    @property
    def p(self) -> int:
        return self.inner.p

    def contains(self, x: Sequence[int]) -> bool:
        return len(x) == self.n and self.inner.checksums(run_profile(x)) == (self.a, self.b)


def single_lift_build(n: int, l: int, a: int, b: int) -> SingleLiftCode:  # noqa: E741
    single_build(n + 1, l, a, b)  # range checks
    return SingleLiftCode(n=n, l=l, a=a, b=b)


def single_lift_decode(code: SingleLiftCode, received: Sequence[int]) -> Bits:
    deficit = code.n - len(received)
    if not 0 <= deficit <= code.l:
        raise DecodeError("length", f"received length {len(received)} incompatible with n={code.n}")
    v = run_profile(received)
    inner = code.inner
    tau = (code.b - sum(v)) % inner.q
    if tau != deficit:
        raise DecodeError("checksum", "magnitude checksum disagrees with the length deficit")
    if tau == 0:
        if inner.checksums(v)[0] != code.a:
            raise DecodeError("checksum", "weighted checksum mismatch")
        return tuple(received)
    target = (code.a - sum(i * x for i, x in enumerate(v, 1))) % inner.p
    cands = [i for i in range(1, len(v) + 1) if i * tau % inner.p == target]
    if len(cands) != 1:
        raise DecodeError("checksum", f"{len(cands)} candidate runs")
    u = list(v)
    u[cands[0] - 1] += tau
    return from_run_profile(u)


def single_lift_classes(n: int, l: int) -> dict[tuple[int, int], int]:  # noqa: E741
    """Class sizes of the (a, b) partition of Σ_2^n."""
    inner = SingleErrorCode(n_r=n + 1, l=l, a=0, b=0)
    sizes: dict[tuple[int, int], int] = {}
    for x in itertools.product((0, 1), repeat=n):
        key = inner.checksums(run_profile(x))
        sizes[key] = sizes.get(key, 0) + 1
    return sizes

