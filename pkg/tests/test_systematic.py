import itertools
import math
import random
from fractions import Fraction

import pytest

from stickydel import bch as bchmod
from stickydel import systematic as S
from stickydel.channel import ChannelSpec, apply, enumerate_patterns, sample_pattern
from stickydel.errors import DecodeError
from stickydel.sequences import derivative, parse_bits

B = parse_bits


def words(n):
    return itertools.product((0, 1), repeat=n)


def delete_zeros(x, count, rng):
    """Remove ``count`` zeros of x at random positions."""
    zeros = [i for i, b in enumerate(x) if b == 0]
    drop = set(rng.sample(zeros, min(count, len(zeros))))
    return tuple(b for i, b in enumerate(x) if i not in drop)


def zero_deletion_outputs(x, T):
    """Every word reachable by deleting at most T zeros (oracle for f0)."""
    zeros = [i for i, b in enumerate(x) if b == 0]
    out = set()
    for k in range(T + 1):
        for drop in itertools.combinations(zeros, k):
            out.add(tuple(b for i, b in enumerate(x) if i not in drop))
    return out


# --- balancing -------------------------------------------------------------


def test_suffix_length():
    # least even s with C(s, s/2) >= length + 1
    for L in range(0, 200):
        s = S.suffix_length(L)
        assert s % 2 == 0 and math.comb(s, s // 2) >= L + 1
        assert s == 0 or math.comb(s - 2, s // 2 - 1) < L + 1


def test_rank_unrank_round_trip():
    for n in range(0, 13, 2):
        ws = sorted(w for w in words(n) if 2 * sum(w) == n)
        for r, w in enumerate(ws):
            assert S.rank_balanced(w) == r
            assert S.unrank_balanced(r, n) == w
    with pytest.raises(ValueError):
        S.unrank_balanced(6, 4)


def test_balance_exhaustive():
    for L in range(0, 15, 2):
        for x in words(L):
            w = S.balance(x)
            assert w[0] == 1
            assert 2 * sum(w[1:]) == len(w) - 1
            assert len(w) == 1 + L + S.suffix_length(L)
            assert S.is_marked_balanced(w)
            assert S.unbalance(w, L) == x


def test_balance_of_balanced_word_uses_index_zero():
    x = B("0110")
    w = S.balance(x)
    assert w[1:5] == x
    assert S.rank_balanced(w[5:]) == 0


def test_balance_rejects_odd_length():
    with pytest.raises(ValueError):
        S.balance(B("011"))


def test_unbalance_rejects():
    w = S.balance(B("0001"))
    with pytest.raises(ValueError):
        S.unbalance((0,) + w[1:], 4)
    with pytest.raises(ValueError):
        S.unbalance(w[:-1], 4)


# --- symbols ----------------------------------------------------------------


def test_to_bits_example():
    assert S.to_bits((0, 2, 1), 3) == B("001001")
    assert S.to_bits((0, 0, 0), 5) == (0,) * 9
    assert S.symbol_width(2) == 1 and S.symbol_width(3) == 2 and S.symbol_width(5) == 3


def test_to_bits_round_trip():
    rng = random.Random(0)
    for _ in range(10_000):
        p = rng.choice([2, 3, 5, 7, 11])
        v = tuple(rng.randrange(p) for _ in range(rng.randint(0, 12)))
        assert S.from_bits(S.to_bits(v, p), p) == v


def test_from_bits_rejects():
    with pytest.raises(ValueError):
        S.from_bits(B("11"), 3)
    with pytest.raises(ValueError):
        S.from_bits(B("101"), 3)
    with pytest.raises(ValueError):
        S.to_bits((3,), 3)


# --- repetition -------------------------------------------------------------


def test_rep_examples():
    assert S.rep_encode(B("101"), 3) == B("111000111")
    assert S.rep_decode(B("111000111"), 3, 1) == B("101")
    assert S.rep_decode(B("11100111"), 3, 1) == B("101")
    with pytest.raises(DecodeError):
        S.rep_decode(B("1110111"), 3, 1)
    with pytest.raises(ValueError):
        S.rep_decode(B("111"), 3, 3)


@pytest.mark.parametrize("T", [1, 2])
def test_rep_decode_exhaustive(T):
    r = 2 * T + 1
    rng = random.Random(T)
    for n in range(1, 9):
        for x in words(n):
            enc = S.rep_encode(x, r)
            for y in zero_deletion_outputs(enc, T) if n <= 5 else [delete_zeros(enc, T, rng)]:
                assert S.rep_decode(y, r, T) == x


# --- f0 label ---------------------------------------------------------------


def test_f0_prime_and_code():
    assert S.f0_prime(1) == 5 and S.f0_prime(2) == 7
    code = S.f0_code(16, 2)
    assert code.p == 7 and code.d == 9 and code.k >= 17


def test_f0_label_deterministic_and_sized():
    x = B("1011000110")
    assert S.label_f0(x, 1) == S.label_f0(list(x), 1)
    assert len(S.label_f0(x, 1)) == S.label_bits(len(x), 1)


@pytest.mark.parametrize("T", [1, 2])
def test_f0_decode_after_zero_deletions(T):
    n = 12 if T == 1 else 10
    for x in words(n):
        label = S.label_f0(x, T)
        for y in zero_deletion_outputs(x, T):
            assert S.decode_f0(y, label, n, T) == x


def test_f0_brute_and_algebraic_agree():
    rng = random.Random(9)
    T = 2
    for _ in range(300):
        n = rng.randint(4, 16)
        x = tuple(rng.getrandbits(1) for _ in range(n))
        y = delete_zeros(x, rng.randint(0, T), rng)
        label = S.label_f0(x, T)
        assert S.decode_f0(y, label, n, T, method="brute") == x
        assert S.decode_f0(y, label, n, T, method="algebraic") == x


def test_f0_candidate_count_bound():
    rng = random.Random(4)
    T = 2
    for _ in range(200):
        x = tuple(rng.getrandbits(1) for _ in range(16))
        y = delete_zeros(x, T, rng)
        matches, tried = S.decode_f0_candidates(y, S.label_f0(x, T), 16, T)
        slots = sum(y) + 1
        assert matches == [x]
        assert tried <= math.comb(slots + T - 1, T)


def test_f0_rejects():
    x = B("100100")
    label = S.label_f0(x, 1)
    with pytest.raises(DecodeError):
        S.decode_f0(B("1001"), label, 6, 1)
    with pytest.raises(DecodeError):
        S.decode_f0(B("1110"), label, 6, 1)
    with pytest.raises(ValueError):
        S.decode_f0(B("10100"), label, 6, 1, method="nope")


# --- parameters --------------------------------------------------------------


@pytest.mark.parametrize("k,t,l", [(8, 1, 1), (8, 1, 2), (64, 1, 2), (64, 2, 2), (128, 2, 3), (1000, 1, 1)])
def test_params_consistency(k, t, l):  # noqa: E741
    P = S.derive_params(k, ChannelSpec(t, l))
    assert P.p >= l + 1
    assert P.bch.d == 2 * t + 1 and P.bch.k >= k + 1
    assert P.parity_symbols == P.bch.redundancy
    assert P.parity_bits == P.parity_symbols * P.symbol_bits
    assert (P.n1 - 1) % 2 == 0 and (P.n2_prime - 1) % 2 == 0
    assert P.n1 == 1 + P.parity_bits + P.pad1 + P.sigma1
    assert P.n2 == (2 * t * l + 1) * P.n2_prime
    assert P.N == k + P.n1 + P.n2
    # marker arithmetic as fractions
    assert P.ones_h == Fraction(P.n1, 2) + Fraction(P.n2, 2) + t * l + 1
    assert P.ones_h2 == Fraction(P.n2 + 2 * t * l + 1, 2)
    d = P.to_dict()
    assert d["N"] == P.N and d["redundancy"] == P.N - k


def test_params_binary_single():
    P = S.derive_params(8, ChannelSpec(1, 1))
    assert P.p == 2 and P.symbol_bits == 1
    assert P.parity_symbols == P.m == P.formula_parity_symbols()
    assert P.leading_coefficient() == 1


def test_params_reject():
    with pytest.raises(ValueError):
        S.derive_params(3, ChannelSpec(1, 1))
    with pytest.raises(ValueError):
        S.derive_params(8, ChannelSpec(0, 1))


# --- codec --------------------------------------------------------------------


@pytest.mark.parametrize("t,l", [(1, 1), (1, 2), (2, 1)])
def test_encode_layout(t, l):  # noqa: E741
    P = S.derive_params(16, ChannelSpec(t, l))
    rng = random.Random(t * 10 + l)
    for _ in range(1000):
        c = tuple(rng.getrandbits(1) for _ in range(16))
        x = S.encode(P, c)
        assert len(x) == P.N and x[:16] == c
        h1, h2 = S.redundancy_blocks(P, c)
        assert len(h1) == P.n1 and len(h2) == P.n2
        assert derivative(x)[16:] == h1 + h2
        assert sum(h2) == P.ones_h2 and sum(h1 + h2) == P.ones_h


def test_encode_rejects():
    P = S.derive_params(8, ChannelSpec(1, 1))
    with pytest.raises(ValueError):
        S.encode(P, (0,) * 7)
    with pytest.raises(ValueError):
        S.encode(P, (0, 2) * 4)


@pytest.mark.parametrize("t,l", [(1, 1), (1, 2), (2, 2)])
def test_round_trip_no_errors(t, l):  # noqa: E741
    rng = random.Random(5)
    for k in range(4, 21):
        P = S.derive_params(k, ChannelSpec(t, l))
        msgs = words(k) if k <= 10 else (tuple(rng.getrandbits(1) for _ in range(k)) for _ in range(200))
        for c in msgs:
            assert S.decode(P, S.encode(P, c)) == c


@pytest.mark.parametrize("t,l", [(1, 1), (1, 2)])
def test_every_pattern_small_k(t, l):  # noqa: E741
    spec = ChannelSpec(t, l)
    for k in range(4, 9):
        P = S.derive_params(k, spec)
        for c in words(k):
            x = S.encode(P, c)
            for e in enumerate_patterns(x, spec):
                assert S.decode(P, apply(x, e)) == c


@pytest.mark.parametrize("t,l", [(1, 1), (1, 2)])
def test_markers_survive_the_channel(t, l):  # noqa: E741
    # the located h1 start in the corrupted word sits after exactly the
    # surviving message bits
    spec = ChannelSpec(t, l)
    k = 7
    P = S.derive_params(k, spec)
    for c in words(k):
        x = S.encode(P, c)
        for e in enumerate_patterns(x, spec):
            y = apply(x, e)
            i1, i2 = S.locate_markers(P, derivative(y))
            lost_in_msg = k - i1
            assert 0 <= lost_in_msg <= t * l
            assert len(y) - i2 <= P.n2


def test_random_trials_larger_channel():
    rng = random.Random(11)
    for k, t, l in [(32, 2, 2), (64, 2, 3)]:  # noqa: E741
        spec = ChannelSpec(t, l)
        P = S.derive_params(k, spec)
        for _ in range(150):
            c = tuple(rng.getrandbits(1) for _ in range(k))
            x = S.encode(P, c)
            y = apply(x, sample_pattern(x, spec, rng))
            assert S.decode(P, y) == c
            assert S.decode(P, y, f0_method="brute") == c


def test_decode_rejects_wrong_length():
    P = S.derive_params(8, ChannelSpec(1, 1))
    x = S.encode(P, B("01101001"))
    with pytest.raises(DecodeError) as ei:
        S.decode(P, x + (0,))
    assert ei.value.stage == "length"
    with pytest.raises(DecodeError):
        S.decode(P, x[:-2])


def test_decode_reports_out_of_channel_damage():
    # flipping bits is not a sticky deletion; the decoder must refuse or
    # return some message, never crash
    P = S.derive_params(8, ChannelSpec(1, 1))
    x = list(S.encode(P, B("01101001")))
    for i in range(len(x)):
        y = list(x)
        y[i] ^= 1
        try:
            out = S.decode(P, y)
        except DecodeError:
            continue
        assert len(out) == 8


def test_message_parity_matches_bch():
    P = S.derive_params(10, ChannelSpec(1, 2))
    c = B("0011101000")
    z = S.message_residues(P, c)
    assert len(z) == 11
    g = bchmod.parity(P.bch, z)
    assert bchmod.is_codeword(P.bch, z + (0,) * (P.bch.k - len(z)) + g)
