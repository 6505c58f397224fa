"""Primitive narrow-sense BCH codes over GF(p).

Word convention: position ``j`` of a length-n word is the coefficient of
``x^(n-1-j)``.  Systematic codewords are ``(message, parity)``; a message
shorter than k is zero-padded on the right before encoding (shortening).
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass, field

from .galois import ExtField, cyclotomic_coset, ext_field, poly_lcm


@dataclass(frozen=True)
class BchCode:
    p: int
    m: int
    d: int
    generator: tuple[int, ...]  # ascending coefficients over GF(p), monic
    ext: ExtField = field(repr=False, compare=False)

    @property
    def n(self) -> int:
        return self.p**self.m - 1

    @property
    def redundancy(self) -> int:
        return len(self.generator) - 1

    @property
    def k(self) -> int:
        return self.n - self.redundancy

    @property
    def t(self) -> int:
        return (self.d - 1) // 2

    def formula_redundancy(self) -> int:
        """ceil((d-1)(1-1/p)) * m, exact when d <= p^(ceil(m/2)-1)."""
        return -(-(self.d - 1) * (self.p - 1) // self.p) * self.m

    def formula_applies(self) -> bool:
        return 2 <= self.d <= self.p ** (math.ceil(self.m / 2) - 1)


def generator_degree(p: int, m: int, d: int) -> int:
    """Degree of the narrow-sense generator, from cyclotomic cosets alone."""
    n = p**m - 1
    roots: set[int] = set()
    for j in range(1, d):
        roots |= cyclotomic_coset(p, n, j)
    return len(roots)


def design(p: int, m: int, d: int) -> BchCode:
    """Narrow-sense BCH code of length p^m - 1 with roots alpha^1..alpha^(d-1)."""
    if d < 2:
        raise ValueError("designed distance must be at least 2")
    n = p**m - 1
    if d > n:
        raise ValueError(f"designed distance {d} exceeds code length {n}")
    F = ext_field(p, m)
    gen = [1]
    done: set[int] = set()
    for j in range(1, d):
        if j in done:
            continue
        coset = cyclotomic_coset(p, n, j)
        done |= coset
        gen = poly_lcm(gen, list(F.minimal_polynomial(F.alpha_pow(j))), p)
    return BchCode(p=p, m=m, d=d, generator=tuple(gen), ext=F)


def smallest_m_for_length(p: int, length: int) -> int:
    m = 1
    while p**m - 1 < length:
        m += 1
    return m


def parity(code: BchCode, msg: Sequence[int]) -> tuple[int, ...]:
    """Parity symbols for ``msg`` (zero-padded to k)."""
    k, p = code.k, code.p
    if len(msg) > k:
        raise ValueError(f"message length {len(msg)} exceeds dimension {k}")
    g = code.generator
    r = code.redundancy
    # LFSR division of x^r * m(x) by the monic generator.
    reg = [0] * r
    neg_g = [(-c) % p for c in g[:r]]
    for s in msg:
        fb = (s + reg[-1]) % p if r else 0
        if fb:
            reg = [0] + reg[:-1]
            for i in range(r):
                if neg_g[i]:
                    reg[i] = (reg[i] + fb * neg_g[i]) % p
        else:
            reg = [0] + reg[:-1]
    if r:
        for _ in range(k - len(msg)):
            fb = reg[-1]
            reg = [0] + reg[:-1]
            if fb:
                for i in range(r):
                    if neg_g[i]:
                        reg[i] = (reg[i] + fb * neg_g[i]) % p
    # reg holds -(x^r m(x) mod g) with reg[i] the coefficient of x^i; negate it
    # back and emit highest degree first.
    return tuple((-c) % p for c in reversed(reg))


def encode_systematic(code: BchCode, msg: Sequence[int]) -> tuple[int, ...]:
    if any(not 0 <= s < code.p for s in msg):
        raise ValueError("message symbols must lie in [0, p-1]")
    padded = tuple(msg) + (0,) * (code.k - len(msg))
    return padded + parity(code, msg)


def syndromes(code: BchCode, word: Sequence[int]) -> list[int]:
    """S_j = r(alpha^j) for j = 1..d-1, elements of GF(p^m)."""
    F = code.ext
    n = code.n
    exp, log, order = F.exp, F.log, F.order
    if len(word) > n:
        raise ValueError("word longer than code length")
    out = []
    nz = [(n - 1 - j, s) for j, s in enumerate(word) if s]
    for i in range(1, code.d):
        acc = 0
        for e, s in nz:
            acc = F.add(acc, exp[(log[s] + i * e) % order])
        out.append(acc)
    return out


def is_codeword(code: BchCode, word: Sequence[int]) -> bool:
    if len(word) != code.n:
        raise ValueError(f"expected length {code.n}, got {len(word)}")
    return not any(syndromes(code, word))


def berlekamp_massey(F: ExtField, synd: Sequence[int]) -> list[int]:
    """Error-locator polynomial (ascending, constant term 1)."""
    C = [1]
    B = [1]
    L = 0
    m = 1
    b = 1
    for nidx in range(len(synd)):
        delta = synd[nidx]
        for i in range(1, L + 1):
            if i < len(C) and C[i]:
                delta = F.add(delta, F.mul(C[i], synd[nidx - i]))
        if delta == 0:
            m += 1
            continue
        coef = F.div(delta, b)
        T = list(C)
        shifted = [0] * m + [F.mul(coef, c) for c in B]
        if len(shifted) > len(C):
            C = C + [0] * (len(shifted) - len(C))
        for i, c in enumerate(shifted):
            if c:
                C[i] = F.sub(C[i], c)
        if 2 * L <= nidx:
            L = nidx + 1 - L
            B = T
            b = delta
            m = 1
        else:
            m += 1
    while len(C) > 1 and C[-1] == 0:
        C.pop()
    return C


def locate_errors(code: BchCode, synd: Sequence[int], exponents: range | None = None) -> dict[int, int] | None:
    """Solve for the error vector from syndromes.

    Returns ``{exponent: value}`` with values in GF(p), or ``None`` when no
    error pattern of weight <= t explains the syndromes.  ``exponents``
    restricts the Chien search (errors elsewhere count as failure).
    """
    F = code.ext
    if not any(synd):
        return {}
    lam = berlekamp_massey(F, synd)
    nu = len(lam) - 1
    if nu > code.t or nu == 0:
        return None
    order = F.order
    roots = []
    for e in range(code.n) if exponents is None else exponents:
        # Lambda(alpha^-e)
        x = F.exp[(order - e) % order]
        if F.poly_eval(lam, x) == 0:
            roots.append(e)
            if len(roots) == nu:
                break
    if len(roots) != nu:
        return None
    # Forney with first consecutive root alpha^1
    two_t = len(synd)
    S = list(synd)
    omega = F.poly_mul(S, lam)[:two_t]
    dlam = [F.mul(i % code.p, lam[i]) for i in range(1, len(lam))]
    errors = {}
    for e in roots:
        xinv = F.exp[(order - e) % order]
        den = F.poly_eval(dlam, xinv)
        if den == 0:
            return None
        val = F.neg(F.div(F.poly_eval(omega, xinv), den))
        if not F.in_subfield(val) or val == 0:
            return None
        errors[e] = val
    return errors


def decode(
    code: BchCode, word: Sequence[int], error_span: int | None = None
) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Bounded-distance decode.

    Returns ``(codeword, error)`` with ``error = word - codeword (mod p)``, or
    ``None`` if no codeword lies within distance t.  With ``error_span`` only
    errors among the first ``error_span`` positions are accepted.
    """
    n, p = code.n, code.p
    if len(word) != n:
        raise ValueError(f"expected length {n}, got {len(word)}")
    synd = syndromes(code, word)
    span = None if error_span is None else range(n - error_span, n)
    errors = locate_errors(code, synd, span)
    if errors is None:
        return None
    err = [0] * n
    for e, v in errors.items():
        err[n - 1 - e] = v
    cw = tuple((w - v) % p for w, v in zip(word, err))
    if errors and any(syndromes(code, cw)):
        return None
    return cw, tuple(err)
