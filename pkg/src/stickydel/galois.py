"""Prime fields GF(p), extension fields GF(p^m) and polynomials over them.

Extension-field elements are ints whose base-p digits are the coefficients of
the residue polynomial (digit i is the coefficient of x^i).  The subfield GF(p)
therefore embeds as the ints 0..p-1.  Arithmetic goes through exp/log tables
plus a Zech table for addition, which keeps everything O(1) per operation.

Polynomials are lists of coefficients in ascending degree with no trailing
zeros (the zero polynomial is ``[]``).
"""

from __future__ import annotations

import functools
import math


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def smallest_prime_at_least(bound: int) -> int:
    n = max(bound, 2)
    while not is_prime(n):
        n += 1
    return n


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


class PrimeField:
    """GF(p) with elements 0..p-1."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("GF", self.p))

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in GF(p)")
        return pow(a, -1, self.p)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)


# ---------------------------------------------------------------------------
# Polynomials over GF(p), coefficient lists in ascending degree.


def poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_add(a: list[int], b: list[int], p: int) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return poly_trim(out)


def poly_sub(a: list[int], b: list[int], p: int) -> list[int]:
    return poly_add(a, [-c % p for c in b], p)


def poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return poly_trim(out)


def poly_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    db = len(b) - 1
    inv_lead = pow(b[-1], -1, p)
    if len(rem) <= db:
        return [], poly_trim(rem)
    quot = [0] * (len(rem) - db)
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i] * inv_lead % p
        if c:
            quot[i - db] = c
            for j in range(db + 1):
                rem[i - db + j] = (rem[i - db + j] - c * b[j]) % p
    return poly_trim(quot), poly_trim(rem[:db])


def poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    return poly_divmod(a, b, p)[1]


def poly_eval(a: list[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def poly_powmod(base: list[int], e: int, mod: list[int], p: int) -> list[int]:
    result = [1]
    base = poly_mod(base, mod, p)
    while e:
        if e & 1:
            result = poly_mod(poly_mul(result, base, p), mod, p)
        base = poly_mod(poly_mul(base, base, p), mod, p)
        e >>= 1
    return result


def poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = poly_trim(list(a)), poly_trim(list(b))
    while b:
        a, b = b, poly_mod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def poly_lcm(a: list[int], b: list[int], p: int) -> list[int]:
    g = poly_gcd(a, b, p)
    return poly_divmod(poly_mul(a, b, p), g, p)[0]


def poly_to_int(a: list[int], p: int) -> int:
    return sum(c * p**i for i, c in enumerate(a))


def int_to_poly(v: int, p: int) -> list[int]:
    out = []
    while v:
        out.append(v % p)
        v //= p
    return out


def _monic_candidates(p: int, m: int):
    """Monic degree-m polynomials in increasing integer encoding."""
    for low in range(p**m):
        f = int_to_poly(low, p)
        yield f + [0] * (m - len(f)) + [1]


def is_irreducible(f: list[int], p: int) -> bool:
    """Rabin-style test: x^(p^m) = x mod f and no common factor below."""
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    x = [0, 1]
    for r in prime_factors(m):
        h = poly_sub(poly_powmod(x, p ** (m // r), f, p), x, p)
        if poly_gcd(f, h, p) != [1]:
            return False
    return poly_sub(poly_powmod(x, p**m, f, p), x, p) == []


@functools.cache
def find_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically least (by integer encoding) monic irreducible of degree m."""
    if m < 1:
        raise ValueError("degree must be positive")
    for f in _monic_candidates(p, m):
        if is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("unreachable: irreducibles exist in every degree")


def is_primitive_poly(f: list[int], p: int) -> bool:
    m = len(f) - 1
    if not is_irreducible(f, p):
        return False
    order = p**m - 1
    if m == 1:
        # x is a root of x - c; c must generate GF(p)*
        c = -f[0] % p
        if c == 0:
            return False
        return all(pow(c, order // r, p) != 1 for r in prime_factors(order)) if order > 1 else True
    x = [0, 1]
    return all(poly_powmod(x, order // r, f, p) != [1] for r in prime_factors(order))


@functools.cache
def find_primitive_poly(p: int, m: int) -> tuple[int, ...]:
    """Least monic primitive polynomial of degree m (its root generates GF(p^m)*)."""
    for f in _monic_candidates(p, m):
        if is_primitive_poly(f, p):
            return tuple(f)
    raise AssertionError("unreachable: primitive polynomials exist in every degree")


def cyclotomic_coset(p: int, n: int, s: int) -> frozenset[int]:
    if math.gcd(p, n) != 1:
        raise ValueError("p and n must be coprime")
    s %= n
    out = set()
    while s not in out:
        out.add(s)
        s = s * p % n
    return frozenset(out)


class ExtField:
    """GF(p^m) built on the least primitive polynomial, so alpha = x."""

    def __init__(self, p: int, m: int):
        if m < 1:
            raise ValueError("extension degree must be positive")
        self.base = PrimeField(p)
        self.p = p
        self.m = m
        self.q = p**m
        self.order = self.q - 1
        self.modulus = find_primitive_poly(p, m)
        self._build_tables()

    def __repr__(self) -> str:
        return f"ExtField({self.p}, {self.m})"

    def _build_tables(self) -> None:
        p, m, q = self.p, self.m, self.q
        order = self.order
        exp = [0] * (2 * order + 1)
        log = [-1] * q
        low = [(-c) % p for c in self.modulus[:m]]  # x^m = sum low[i] x^i
        if m == 1:
            gen = low[0]
            v = 1
            for i in range(order):
                exp[i] = v
                log[v] = i
                v = v * gen % p
        else:
            digits = [0] * m
            digits[0] = 1
            v = 1
            for i in range(order):
                exp[i] = v
                log[v] = i
                # multiply by x
                carry = digits[-1]
                digits = [0] + digits[:-1]
                if carry:
                    for j in range(m):
                        digits[j] = (digits[j] + carry * low[j]) % p
                v = 0
                for d in reversed(digits):
                    v = v * p + d
        for i in range(order, 2 * order + 1):
            exp[i] = exp[i - order]
        self.exp = exp
        self.log = log
        # zech[k] = log(1 + alpha^k), or -1 when 1 + alpha^k = 0
        zech = [-1] * order
        for k in range(order):
            v = exp[k]
            v = v - (p - 1) if v % p == p - 1 else v + 1
            zech[k] = log[v] if v else -1
        self.zech = zech

    @property
    def alpha(self) -> int:
        return self.exp[1] if self.order > 1 else 1

    # element arithmetic -------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if a == 0:
            return b
        if b == 0:
            return a
        if self.p == 2:
            return a ^ b
        la = self.log[a]
        d = self.log[b] - la
        if d < 0:
            d += self.order
        z = self.zech[d]
        if z < 0:
            return 0
        return self.exp[la + z]

    def neg(self, a: int) -> int:
        if a == 0 or self.p == 2:
            return a
        # -1 = alpha^(order/2) for odd p
        return self.exp[self.log[a] + self.order // 2] if self.order > 1 else (-a) % self.p

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(p^m)")
        return self.exp[(self.order - self.log[a]) % self.order]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 1 if e == 0 else 0
        return self.exp[(self.log[a] * e) % self.order]

    def alpha_pow(self, e: int) -> int:
        return self.exp[e % self.order]

    def elements(self) -> range:
        return range(self.q)

    def in_subfield(self, a: int) -> bool:
        return 0 <= a < self.p

    # polynomials with coefficients in GF(p^m) ----------------------------

    def poly_mul(self, a: list[int], b: list[int]) -> list[int]:
        if not a or not b:
            return []
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = self.add(out[i + j], self.mul(x, y))
        return poly_trim(out)

    def poly_eval(self, a: list[int], x: int) -> int:
        acc = 0
        for c in reversed(a):
            acc = self.add(self.mul(acc, x), c)
        return acc

    def minimal_polynomial(self, e: int) -> tuple[int, ...]:
        """Monic minimal polynomial over GF(p) of the element ``e``."""
        if e == 0:
            return (0, 1)
        s = self.log[e]
        poly = [1]
        for c in sorted(cyclotomic_coset(self.p, self.order, s)):
            poly = self.poly_mul(poly, [self.neg(self.alpha_pow(c)), 1])
        if any(c >= self.p for c in poly):
            raise AssertionError("minimal polynomial left the prime subfield")
        return tuple(poly)


@functools.cache
def ext_field(p: int, m: int) -> ExtField:
    """Shared, immutable field context."""
    return ExtField(p, m)
