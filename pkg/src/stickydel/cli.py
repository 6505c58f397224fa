"""Command-line front end.

Bit words are read one per line (ASCII 0/1) from a file or stdin; ``--hex``
switches to ``<nbits>:<hex>`` packed lines.  Exit status: 0 success, 1 decode
failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import random
import sys
from collections.abc import Callable, Iterable
from concurrent.futures import ProcessPoolExecutor

from . import nonsystematic as ns
from . import oracle, suites
from . import systematic as sysc
from .channel import ChannelSpec, apply, sample_pattern
from .errors import DecodeError
from .sequences import Bits, format_bits, format_profile, parse_bits, parse_profile

WORKERS_ENV = "STICKYDEL_THREADS"


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# I/O helpers


def pack_hex(x: Bits) -> str:
    if not x:
        return "0:"
    v = int(format_bits(x), 2)
    return f"{len(x)}:{v:0{(len(x) + 3) // 4}x}"


def unpack_hex(text: str) -> Bits:
    try:
        n_s, hx = text.strip().split(":", 1)
        n = int(n_s)
        v = int(hx, 16) if hx else 0
    except ValueError:
        raise ValueError(f"malformed hex word {text.strip()!r}; expected <nbits>:<hex>") from None
    if n < 0 or v >> n:
        raise ValueError(f"hex value does not fit in {n} bits")
    return tuple((v >> (n - 1 - i)) & 1 for i in range(n))


def read_words(args) -> list[Bits]:
    src = open(args.input) if args.input and args.input != "-" else sys.stdin
    try:
        lines = src.read().splitlines()
    finally:
        if src is not sys.stdin:
            src.close()
    out = []
    for lineno, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            out.append(unpack_hex(line) if args.hex else parse_bits(line))
        except ValueError as exc:
            raise UsageError(f"line {lineno}: {exc}") from None
    return out


def fmt(x: Bits, args) -> str:
    return pack_hex(x) if args.hex else format_bits(x)


def write_lines(lines: Iterable[str], args) -> None:
    if args.output and args.output != "-":
        with open(args.output, "w") as fh:
            for line in lines:
                fh.write(line + "\n")
    else:
        for line in lines:
            print(line)


def workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise UsageError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None


def batch_map(fn: Callable, items: list) -> list:
    """Order-preserving map, in worker processes when asked for."""
    n = workers()
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * n))))


def spec_of(args) -> ChannelSpec:
    if args.t < 1 or args.l < 1:
        raise UsageError("--t and --l must be at least 1")
    return ChannelSpec(args.t, args.l)


def codec_params(args) -> sysc.CodecParams:
    spec = spec_of(args)
    if args.k < 4:
        raise UsageError("--k must be at least 4")
    return sysc.derive_params(args.k, spec)


def nonsys_code(args, spec: ChannelSpec) -> ns.NonSysCode:
    try:
        coset = parse_profile(args.coset) if args.coset else ()
        return ns.build(args.n, spec, strict_prime=args.strict_prime, coset=coset)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# Module-level workers so they pickle.


class _Encode:
    def __init__(self, params):
        self.params = params

    def __call__(self, c):
        return sysc.encode(self.params, c)


class _Decode:
    def __init__(self, params, method):
        self.params = params
        self.method = method

    def __call__(self, d):
        try:
            return sysc.decode(self.params, d, f0_method=self.method)
        except DecodeError as exc:
            return exc


# ---------------------------------------------------------------------------
# Commands


def cmd_encode(args) -> int:
    params = codec_params(args)
    words = read_words(args)
    for i, c in enumerate(words, 1):
        if len(c) != params.k:
            raise UsageError(f"message {i} has {len(c)} bits, expected {params.k}")
    write_lines((fmt(x, args) for x in batch_map(_Encode(params), words)), args)
    return 0


def cmd_decode(args) -> int:
    params = codec_params(args)
    words = read_words(args)
    results = batch_map(_Decode(params, args.f0_method), words)
    status = 0
    lines = []
    for i, r in enumerate(results, 1):
        if isinstance(r, DecodeError):
            status = 1
            print(f"word {i}: decode failed at stage {r.stage}: {r.detail}", file=sys.stderr)
            lines.append(json.dumps({"ok": False, "stage": r.stage}) if args.json else "-")
        else:
            lines.append(json.dumps({"ok": True, "message": format_bits(r)}) if args.json else fmt(r, args))
    write_lines(lines, args)
    return status


def cmd_decode_ns(args) -> int:
    spec = spec_of(args)
    code = nonsys_code(args, spec)
    status = 0
    lines = []
    for i, y in enumerate(read_words(args), 1):
        try:
            x, eps = ns.decode_with_correction(code, y)
        except DecodeError as exc:
            status = 1
            print(f"word {i}: decode failed at stage {exc.stage}: {exc.detail}", file=sys.stderr)
            lines.append(json.dumps({"ok": False, "stage": exc.stage}) if args.json else "-")
            continue
        if args.json:
            lines.append(json.dumps({"ok": True, "word": format_bits(x), "correction": format_profile(eps), "p": code.p}))
        else:
            lines.append(fmt(x, args))
    write_lines(lines, args)
    return status


def cmd_corrupt(args) -> int:
    spec = spec_of(args)
    rng = random.Random(args.seed)
    lines = []
    for x in read_words(args):
        e = sample_pattern(x, spec, rng)
        y = apply(x, e, spec)
        record = {"input": format_bits(x), "pattern": list(e), "output": format_bits(y)}
        if args.json:
            lines.append(json.dumps(record))
        else:
            lines.append(fmt(y, args))
            print(json.dumps({"pattern": list(e)}), file=sys.stderr)
    write_lines(lines, args)
    return 0


def cmd_codebook(args) -> int:
    if args.n > 24:
        raise UsageError("codebook enumeration is limited to --n <= 24")
    if args.single:
        try:
            code = ns.single_lift_build(args.n, args.l, args.a, args.b)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        words = (x for x in itertools.product((0, 1), repeat=args.n) if code.contains(x))
    else:
        code = nonsys_code(args, spec_of(args))
        words = ns.enumerate_codebook(code)
    words = list(words)
    if args.count:
        print(len(words))
    else:
        write_lines((fmt(x, args) for x in words), args)
    return 0


def cmd_params(args) -> int:
    params = codec_params(args)
    d = params.to_dict()
    if args.json:
        print(json.dumps(d, indent=2))
    else:
        for key, val in d.items():
            print(f"{key:>20}  {val}")
    return 0


def cmd_stats(args) -> int:
    spec = spec_of(args)
    sizes = None
    if args.n <= args.enumerate_limit:
        sizes = {}
        for strict in (False, True):
            code = ns.build(args.n, spec, strict_prime=strict)
            sizes[code.p] = sum(1 for _ in ns.enumerate_codebook(code))
    print(json.dumps(oracle.size_bounds_report(args.n, spec, sizes=sizes), indent=2))
    return 0


def cmd_verify(args) -> int:
    kw = {}
    if args.max_n is not None:
        if args.suite in ("mappings", "nonsys", "bounds"):
            kw["max_n"] = args.max_n
        elif args.suite == "systematic":
            kw["max_k"] = args.max_n
        elif args.suite == "single":
            kw["max_nr"] = args.max_n
    rep = suites.run(args.suite, **kw)
    print(json.dumps(rep, indent=2))
    return 0 if rep["ok"] else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="stickydel", description="Codes for sticky deletions of limited magnitude.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def io(p, json_flag=True):
        p.add_argument("-i", "--input", help="input file (default stdin)")
        p.add_argument("-o", "--output", help="output file (default stdout)")
        p.add_argument("--hex", action="store_true", help="packed <nbits>:<hex> words")
        if json_flag:
            p.add_argument("--json", action="store_true", help="JSON lines output")

    def channel(p, need_k=False):
        if need_k:
            p.add_argument("--k", type=int, required=True, help="message length")
        p.add_argument("--t", type=int, required=True, help="affected runs")
        p.add_argument("--l", type=int, required=True, help="deletions per run")

    p = sub.add_parser("encode", help="systematic encoding")
    channel(p, True)
    io(p, json_flag=False)
    p.set_defaults(fn=cmd_encode)

    p = sub.add_parser("decode", help="systematic decoding")
    channel(p, True)
    io(p)
    p.add_argument("--f0-method", choices=("algebraic", "brute"), default="algebraic")
    p.set_defaults(fn=cmd_decode)

    p = sub.add_parser("decode-ns", help="non-systematic decoding")
    p.add_argument("--n", type=int, required=True, help="codeword length")
    channel(p)
    p.add_argument("--coset", help="coset representative: digits (001211) or comma-separated")
    p.add_argument("--strict-prime", action="store_true", help="use the least prime > l+1")
    io(p)
    p.set_defaults(fn=cmd_decode_ns)

    p = sub.add_parser("corrupt", help="apply a random valid error pattern")
    channel(p)
    p.add_argument("--seed", type=int, default=None)
    io(p)
    p.set_defaults(fn=cmd_corrupt)

    p = sub.add_parser("codebook", help="enumerate a non-systematic codebook")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--single", action="store_true", help="single-error checksum family")
    p.add_argument("--a", type=int, default=0)
    p.add_argument("--b", type=int, default=0)
    p.add_argument("--coset")
    p.add_argument("--strict-prime", action="store_true")
    p.add_argument("--count", action="store_true", help="print only the size")
    io(p, json_flag=False)
    p.set_defaults(fn=cmd_codebook)

    p = sub.add_parser("params", help="systematic code parameters")
    channel(p, True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_params)

    p = sub.add_parser("stats", help="size bounds and enumerated sizes")
    p.add_argument("--n", type=int, required=True)
    channel(p)
    p.add_argument("--enumerate-limit", type=int, default=16)
    p.set_defaults(fn=cmd_stats)

    p = sub.add_parser("verify", help="run a certification sweep")
    p.add_argument("--suite", choices=suites.SUITES, required=True)
    p.add_argument("--max-n", type=int, help="size knob (n, k or n_r depending on suite)")
    p.set_defaults(fn=cmd_verify)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"stickydel {args.cmd}: error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
