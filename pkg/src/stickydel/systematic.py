"""Systematic encoder/decoder for t sticky deletions of l-limited magnitude.

Codeword layout: ``Enc(c) = c + integrate(h1 + h2)`` where, in the
derivative domain,

* ``h1`` is the balanced image of the bit-serialised BCH parity of the
  message's run profile (mod p), and
* ``h2`` is the (2T+1)-fold repetition of the balanced image of ``f0(h1)``,
  a label that lets ``h1`` survive up to T = t*l zero deletions.

Both blocks start with a 1 and have a balanced remainder, so the decoder can
find them by counting 1s from the end of the derivative of the received word;
sticky deletions only remove 0s there.
"""

from __future__ import annotations

import functools
import itertools
import math
from collections.abc import Sequence
from dataclasses import dataclass

from . import bch as bchmod
from .bch import BchCode
from .channel import ChannelSpec
from .errors import DecodeError
from .galois import smallest_prime_at_least
from .sequences import Bits, derivative, from_run_profile, integrate, run_profile, zero_run_profile

# ---------------------------------------------------------------------------
# Knuth balancing with a first-bit marker


def suffix_length(length: int) -> int:
    """Even length s of the balanced word carrying the flip index."""
    s = 0
    while math.comb(s, s // 2) < length + 1:
        s += 2
    return s


def rank_balanced(w: Sequence[int]) -> int:
    """Lexicographic rank of a balanced word among those of its length."""
    n = len(w)
    ones_left = n // 2
    rank = 0
    for i, b in enumerate(w):
        rem = n - i - 1
        if b:
            # every word with a 0 here comes first
            if ones_left <= rem:
                rank += math.comb(rem, ones_left)
            ones_left -= 1
    return rank


def unrank_balanced(rank: int, n: int) -> Bits:
    if n % 2:
        raise ValueError("balanced words have even length")
    if not 0 <= rank < math.comb(n, n // 2):
        raise ValueError(f"rank {rank} out of range for length {n}")
    ones_left = n // 2
    out = []
    for i in range(n):
        rem = n - i - 1
        with_zero = math.comb(rem, ones_left) if ones_left <= rem else 0
        if rank < with_zero:
            out.append(0)
        else:
            rank -= with_zero
            out.append(1)
            ones_left -= 1
    return tuple(out)


def balance(x: Sequence[int]) -> Bits:
    """``1 + flip(x, i) + suffix(i)`` with the least i making the middle balanced."""
    L = len(x)
    if L % 2:
        raise ValueError("balance() needs an even-length input")
    half = L // 2
    weight = sum(x)
    i = 0
    while weight != half:
        weight += 1 - 2 * x[i]
        i += 1
    flipped = tuple(1 - b for b in x[:i]) + tuple(x[i:])
    return (1,) + flipped + unrank_balanced(i, suffix_length(L))


def unbalance(w: Sequence[int], length: int) -> Bits:
    s = suffix_length(length)
    if len(w) != 1 + length + s or w[0] != 1:
        raise ValueError("not a balanced word for this length")
    suffix = w[1 + length :]
    if sum(suffix) * 2 != s:
        raise ValueError("suffix is not balanced")
    i = rank_balanced(suffix)
    if i > length:
        raise ValueError(f"flip index {i} exceeds length {length}")
    body = w[1 : 1 + length]
    return tuple(1 - b for b in body[:i]) + tuple(body[i:])


def is_marked_balanced(w: Sequence[int]) -> bool:
    return len(w) % 2 == 1 and w[0] == 1 and 2 * sum(w[1:]) == len(w) - 1


# ---------------------------------------------------------------------------
# Symbols <-> bits


def symbol_width(p: int) -> int:
    return max(1, math.ceil(math.log2(p)))


def to_bits(symbols: Sequence[int], p: int) -> Bits:
    w = symbol_width(p)
    out = []
    for s in symbols:
        if not 0 <= s < p:
            raise ValueError(f"symbol {s} outside [0, {p - 1}]")
        out.extend((s >> (w - 1 - j)) & 1 for j in range(w))
    return tuple(out)


def from_bits(bits: Sequence[int], p: int) -> tuple[int, ...]:
    w = symbol_width(p)
    if len(bits) % w:
        raise ValueError(f"bit length {len(bits)} not a multiple of {w}")
    out = []
    for i in range(0, len(bits), w):
        v = 0
        for b in bits[i : i + w]:
            v = 2 * v + b
        if v >= p:
            raise ValueError(f"field value {v} >= p={p}")
        out.append(v)
    return tuple(out)


# ---------------------------------------------------------------------------
# f0: a label protecting a word against up to T zero deletions
#
# The zero-run vector m(x) = zero_run_profile(x + (1,)) drops by a non-negative
# vector of total weight <= T under zero deletions.  Two originals that can
# produce the same output differ by a vector of weight <= 2T with entries in
# [-T, T], so a BCH parity over GF(p') with p' > 2T+1 and designed distance
# 4T+1 separates them.


def f0_prime(T: int) -> int:
    return smallest_prime_at_least(2 * T + 2)


@functools.cache
def f0_code(length: int, T: int) -> BchCode:
    """BCH code whose dimension covers zero-run vectors of length-``length`` words."""
    p = f0_prime(T)
    d = 4 * T + 1
    m = 1
    while True:
        n = p**m - 1
        if n >= d and n - bchmod.generator_degree(p, m, d) >= length + 1:
            return bchmod.design(p, m, d)
        m += 1


def _zero_runs_mod(x: Sequence[int], p: int) -> tuple[int, ...]:
    return tuple(r % p for r in zero_run_profile(tuple(x) + (1,)))


def label_f0(x: Sequence[int], T: int) -> Bits:
    return _label_f0(tuple(x), T)


@functools.lru_cache(maxsize=1 << 16)
def _label_f0(x: Bits, T: int) -> Bits:
    code = f0_code(len(x), T)
    return to_bits(bchmod.parity(code, _zero_runs_mod(x, code.p)), code.p)


def label_bits(length: int, T: int) -> int:
    code = f0_code(length, T)
    return code.redundancy * symbol_width(code.p)


def _reinsert(x: Sequence[int], extra: Sequence[int]) -> Bits:
    m = zero_run_profile(tuple(x) + (1,))
    out: list[int] = []
    for r, e in zip(m, extra):
        out.extend([0] * (r + e))
        out.append(1)
    out.pop()
    return tuple(out)


def decode_f0_candidates(corrupted: Sequence[int], label: Sequence[int], length: int, T: int) -> tuple[list[Bits], int]:
    """Brute force: every way to put the missing zeros back.

    Returns ``(matches, candidates_tried)``.
    """
    deficit = length - len(corrupted)
    if deficit < 0 or deficit > T:
        return [], 0
    slots = len(zero_run_profile(tuple(corrupted) + (1,)))
    label = tuple(label)
    matches = []
    tried = 0
    for combo in itertools.combinations_with_replacement(range(slots), deficit):
        extra = [0] * slots
        for s in combo:
            extra[s] += 1
        tried += 1
        cand = _reinsert(corrupted, extra)
        if label_f0(cand, T) == label:
            matches.append(cand)
    return matches, tried


def decode_f0(corrupted: Sequence[int], label: Sequence[int], length: int, T: int, method: str = "algebraic") -> Bits:
    """Recover the length-``length`` word whose label is ``label``.

    ``method="brute"`` tries every reinsertion; ``"algebraic"`` hands the
    zero-run vector and the label to the BCH decoder as a noisy codeword.
    """
    deficit = length - len(corrupted)
    if deficit < 0 or deficit > T:
        raise DecodeError("f0", f"deficit {deficit} outside [0, {T}]")
    if deficit == 0:
        if label_f0(corrupted, T) != tuple(label):
            raise DecodeError("f0", "label mismatch")
        return tuple(corrupted)
    if method == "brute":
        matches, _ = decode_f0_candidates(corrupted, label, length, T)
        if len(matches) != 1:
            raise DecodeError("f0", f"{len(matches)} candidates match the label")
        return matches[0]
    if method != "algebraic":
        raise ValueError(f"unknown method {method!r}")
    code = f0_code(length, T)
    p = code.p
    try:
        par = from_bits(label, p)
    except ValueError as exc:
        raise DecodeError("f0", str(exc)) from None
    if len(par) != code.redundancy:
        raise DecodeError("f0", "label has the wrong length")
    mz = zero_run_profile(tuple(corrupted) + (1,))
    word = tuple(r % p for r in mz) + (0,) * (code.k - len(mz)) + par
    res = bchmod.decode(code, word, error_span=len(mz))
    if res is None:
        raise DecodeError("f0", "label decoding failed")
    err = res[1]
    extra = [(-v) % p for v in err[: len(mz)]]
    if sum(extra) != deficit:
        raise DecodeError("f0", "recovered zeros do not match the deficit")
    return _reinsert(corrupted, extra)


# ---------------------------------------------------------------------------
# Repetition framing


def rep_encode(x: Sequence[int], r: int) -> Bits:
    return tuple(b for b in x for _ in range(r))


def rep_decode(seg: Sequence[int], r: int, T: int) -> Bits:
    """Undo <= T zero deletions in an r-fold repetition (r > T)."""
    if r <= T:
        raise ValueError("need r > T")
    out: list[int] = []
    restored = 0
    for bit, grp in itertools.groupby(seg):
        L = sum(1 for _ in grp)
        if bit:
            if L % r:
                raise DecodeError("repetition", "run of 1s is not a multiple of r")
            blocks = L // r
        else:
            blocks = -(-L // r)
            restored += blocks * r - L
        out.extend([bit] * blocks)
    if restored > T:
        raise DecodeError("repetition", f"restored {restored} zeros, budget {T}")
    return tuple(out)


# ---------------------------------------------------------------------------
# Parameters


def _ceil_frac(num: int, den: int) -> int:
    return -(-num // den)


@dataclass(frozen=True)
class CodecParams:
    k: int
    spec: ChannelSpec
    p: int
    m: int
    bch: BchCode
    parity_symbols: int  # n''_1
    symbol_bits: int  # ceil(log p)
    parity_bits: int  # n'_1
    pad1: int
    sigma1: int
    n1: int
    f0: BchCode
    label_bits: int  # n''_2
    pad2: int
    sigma2: int
    n2_prime: int
    n2: int

    @property
    def T(self) -> int:  # noqa: N802
        return self.spec.t * self.spec.l

    @property
    def reps(self) -> int:
        return 2 * self.T + 1

    @property
    def N(self) -> int:  # noqa: N802
        return self.k + self.n1 + self.n2

    @property
    def redundancy(self) -> int:
        return self.n1 + self.n2

    @property
    def h1_body(self) -> int:
        return self.parity_bits + self.pad1

    @property
    def h2_body(self) -> int:
        return self.label_bits + self.pad2

    @property
    def ones_h2(self) -> int:
        return (self.n2 + self.reps) // 2

    @property
    def ones_h(self) -> int:
        return (self.n1 + 1) // 2 + self.ones_h2

    def formula_parity_symbols(self) -> int:
        t, p = self.spec.t, self.p
        return _ceil_frac(2 * t * (p - 1), p) * self.m

    def leading_coefficient(self) -> float:
        t, p = self.spec.t, self.p
        return _ceil_frac(2 * t * (p - 1), p) * symbol_width(p) / math.log2(p)

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "t": self.spec.t,
            "l": self.spec.l,
            "T": self.T,
            "p": self.p,
            "m": self.m,
            "bch_n": self.bch.n,
            "bch_k": self.bch.k,
            "bch_d": self.bch.d,
            "n1_pp": self.parity_symbols,
            "n1_pp_formula": self.formula_parity_symbols(),
            "symbol_bits": self.symbol_bits,
            "n1_p": self.parity_bits,
            "pad1": self.pad1,
            "sigma1": self.sigma1,
            "n1": self.n1,
            "f0_p": self.f0.p,
            "f0_m": self.f0.m,
            "f0_n": self.f0.n,
            "f0_k": self.f0.k,
            "f0_d": self.f0.d,
            "n2_pp": self.label_bits,
            "pad2": self.pad2,
            "sigma2": self.sigma2,
            "n2_p": self.n2_prime,
            "reps": self.reps,
            "n2": self.n2,
            "N": self.N,
            "redundancy": self.redundancy,
            "leading_coefficient": self.leading_coefficient(),
        }


@functools.cache
def derive_params(k: int, spec: ChannelSpec) -> CodecParams:
    if k < 4:
        raise ValueError("message length must be at least 4")
    if spec.t < 1 or spec.l < 1:
        raise ValueError("need t >= 1 and l >= 1")
    t, l = spec.t, spec.l  # noqa: E741
    T = t * l
    p = smallest_prime_at_least(l + 1)
    d = 2 * t + 1
    m = 1
    while p**m - 1 < d or p**m - 1 - bchmod.generator_degree(p, m, d) < k + 1:
        m += 1
    code = bchmod.design(p, m, d)
    width = symbol_width(p)
    parity_bits = code.redundancy * width
    # pad1 makes the h1 body even; extra pairs of pad bits fix the parity of
    # the number of 1s in h so that integrate(h) starts with a 1.
    pad1 = parity_bits % 2
    while True:
        body1 = parity_bits + pad1
        sigma1 = suffix_length(body1)
        n1 = 1 + body1 + sigma1
        f0 = f0_code(n1, T)
        lbits = f0.redundancy * symbol_width(f0.p)
        pad2 = lbits % 2
        body2 = lbits + pad2
        sigma2 = suffix_length(body2)
        n2_prime = 1 + body2 + sigma2
        ones = (1 + body1 // 2 + sigma1 // 2) + (2 * T + 1) * (1 + body2 // 2 + sigma2 // 2)
        if ones % 2 == 1:
            break
        pad1 += 2
    return CodecParams(
        k=k,
        spec=spec,
        p=p,
        m=m,
        bch=code,
        parity_symbols=code.redundancy,
        symbol_bits=width,
        parity_bits=parity_bits,
        pad1=pad1,
        sigma1=sigma1,
        n1=n1,
        f0=f0,
        label_bits=lbits,
        pad2=pad2,
        sigma2=sigma2,
        n2_prime=n2_prime,
        n2=(2 * T + 1) * n2_prime,
    )


# ---------------------------------------------------------------------------
# Encoder / decoder


def message_residues(params: CodecParams, c: Sequence[int]) -> tuple[int, ...]:
    """c-bar: run profile of c mod p, zero-padded to k+1."""
    z = [u % params.p for u in run_profile(c)]
    return tuple(z) + (0,) * (params.k + 1 - len(z))


def redundancy_blocks(params: CodecParams, c: Sequence[int]) -> tuple[Bits, Bits]:
    """(h1, h2) in the derivative domain."""
    g = bchmod.parity(params.bch, message_residues(params, c))
    h1 = balance(to_bits(g, params.p) + (0,) * params.pad1)
    label = label_f0(h1, params.T)
    h2 = rep_encode(balance(label + (0,) * params.pad2), params.reps)
    return h1, h2


def encode(params: CodecParams, c: Sequence[int]) -> Bits:
    if len(c) != params.k:
        raise ValueError(f"message must have {params.k} bits, got {len(c)}")
    if any(b not in (0, 1) for b in c):
        raise ValueError("message must be binary")
    h1, h2 = redundancy_blocks(params, c)
    tail = integrate(h1 + h2)
    if tail[0] != 1:
        raise AssertionError("parity padding failed to start the redundancy with 1")
    return tuple(c) + tail


def locate_markers(params: CodecParams, y: Sequence[int]) -> tuple[int, int]:
    """Indices (0-based) of the first 1 of h1 and of h2 in derivative ``y``."""
    ones = [i for i, b in enumerate(y) if b]
    if len(ones) < params.ones_h:
        raise DecodeError("markers", f"found {len(ones)} ones, need {params.ones_h}")
    return ones[-params.ones_h], ones[-params.ones_h2]


@functools.lru_cache(maxsize=1 << 13)
def _recover_parity(params: CodecParams, tail: Bits, f0_method: str) -> tuple[int, ...]:
    """BCH parity g(c-bar) from the derivative-domain redundancy ``h1 + h2``
    after zero deletions.  Pure, so cached: many messages share a parity."""
    T = params.T
    split = params.ones_h - params.ones_h2
    i_r2 = [i for i, b in enumerate(tail) if b][split]
    seg1, seg2 = tail[:i_r2], tail[i_r2:]
    if not 0 <= params.n2 - len(seg2) <= T or not 0 <= params.n1 - len(seg1) <= T:
        raise DecodeError("markers", "block lengths exceed the deletion budget")

    framed = rep_decode(seg2, params.reps, T)
    if len(framed) != params.n2_prime or not is_marked_balanced(framed):
        raise DecodeError("repetition", "recovered label frame is malformed")
    label = unbalance(framed, params.h2_body)[: params.label_bits]

    h1 = decode_f0(seg1, label, params.n1, T, method=f0_method)
    if not is_marked_balanced(h1):
        raise DecodeError("f0", "recovered h1 is not balanced")
    try:
        return from_bits(unbalance(h1, params.h1_body)[: params.parity_bits], params.p)
    except ValueError as exc:
        raise DecodeError("h1", str(exc)) from None


def decode(params: CodecParams, d: Sequence[int], f0_method: str = "algebraic") -> Bits:
    k, T, p = params.k, params.T, params.p
    deficit = params.N - len(d)
    if not 0 <= deficit <= T:
        raise DecodeError("length", f"received {len(d)} bits, expected {params.N - T}..{params.N}")
    y = derivative(d)
    i_r1, _ = locate_markers(params, y)
    tail = y[i_r1:]
    if params.n1 + params.n2 - len(tail) > deficit:
        raise DecodeError("markers", "block lengths inconsistent with the deficit")
    g = _recover_parity(params, tail, f0_method)

    prefix = d[:i_r1]
    v = run_profile(prefix)
    rc = len(v)
    if rc > k + 1:
        raise DecodeError("message", "too many runs in the message part")
    msg_deficit = k - len(prefix)
    if not 0 <= msg_deficit <= T:
        raise DecodeError("message", "message part has the wrong length")
    code = params.bch
    word = tuple(u % p for u in v) + (0,) * (code.k - rc) + g
    if not any(bchmod.syndromes(code, word)):
        # nothing to correct; the profile must already be the message's
        if msg_deficit:
            raise DecodeError("bch", "length deficit with a clean syndrome")
        return tuple(prefix)
    res = bchmod.decode(code, word, error_span=rc)
    if res is None:
        raise DecodeError("bch", "message profile outside the decoding radius")
    eps = [(-e) % p for e in res[1][:rc]]
    if any(e > params.spec.l for e in eps) or sum(eps) != msg_deficit:
        raise DecodeError("bch", f"correction {eps} does not match the channel")
    c = from_run_profile([a + b for a, b in zip(v, eps)])
    if len(c) != k:
        raise DecodeError("message", "decoded message has the wrong length")
    return c
