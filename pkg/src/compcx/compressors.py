"""Compression functions: maps x -> program p with U(p) = x.

Codecs here emit toy-machine programs, so each compressed string is its own
self-extracting decompressor.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import groupby
from typing import Callable, Optional

from compcx import oracle
from compcx.oracle import CeilingError, RunTable
from compcx.toyvm import all_strings, exec_program, gamma_code, gamma_len, u_eval

K_PRINT = 2
NOMINAL_DRIVER_BITS = 4
K_DRIVER = 2 * NOMINAL_DRIVER_BITS + 1

CODEC_CF_CEILING = 16
PROGRAM_CF_CEILING = 8

# Emits "00" then copies its input: the Print compressor as a genuine program.
Q_LIT = "0100101100"


@dataclass(frozen=True)
class Compressor:
    """A named compression map with the size |q| used in theorem checks.

    ``program`` is set when the compressor is a genuine machine program, in
    which case ``declared_length == len(program)``.
    """

    name: str
    declared_length: int
    compress: Callable[[str], str]
    program: Optional[str] = None

    @property
    def backing(self) -> str:
        return "program" if self.program is not None else "host"

    def __call__(self, x: str) -> str:
        return self.compress(x)


@dataclass(frozen=True)
class MeasuredConstants:
    k_print: int = K_PRINT
    k_driver: int = K_DRIVER
    k_min_thm1: Optional[int] = None
    k_min_thm2: Optional[int] = None
    tight: tuple = ()

    def to_dict(self) -> dict:
        return {"k_print": self.k_print, "k_driver": self.k_driver,
                "k_min_thm1": self.k_min_thm1, "k_min_thm2": self.k_min_thm2,
                "tight": [dict(t) for t in self.tight]}


# ---------------------------------------------------------------------------
# codecs


def literal_compress(x: str) -> str:
    return "00" + x


def _runs(x: str) -> list[tuple[str, int]]:
    return [(b, len(list(g))) for b, g in groupby(x)]


def _emit_runs(x: str) -> str:
    return "".join("01" + b + gamma_code(n) for b, n in _runs(x))


def rle_compress(x: str) -> str:
    prog = _emit_runs(x)
    return prog if len(prog) < len(x) + 2 else literal_compress(x)


def _copy_cost(d: int, n: int) -> int:
    return 2 + gamma_len(d) + gamma_len(n)


def _min_useful_match() -> int:
    # shortest match length whose cheapest COPY_BACK (d = 1) beats raw bits
    n = 1
    while _copy_cost(1, n) >= n:
        n += 1
    return n


MIN_MATCH = _min_useful_match()


def _flush(pending: str, final: bool, at_start: bool) -> str:
    """Cheapest encoding of unmatched bits; ties favour the literal forms.

    U reads any string opening with ``1...10`` as a pair, so a program must
    not start with LIT_CHUNK; at the start a leading EMIT_RUN stands in.
    """
    options = []
    if final:
        options.append("00" + pending)
    if not at_start:
        options.append("1101" + gamma_code(len(pending)) + pending)
    b, n = _runs(pending)[0]
    if n < len(pending):
        rest = pending[n:]
        options.append("01" + b + gamma_code(n) + "1101" + gamma_code(len(rest)) + rest)
    options.append(_emit_runs(pending))
    return min(options, key=len)


def _longest_match(x: str, pos: int) -> tuple[int, int]:
    """(distance, length) of the longest back-reference at ``pos``, or (0, 0).

    Only matches of at least MIN_MATCH bits are reported; shorter ones can
    never be accepted.  Ties go to the smallest distance.
    """
    if len(x) - pos < MIN_MATCH:
        return 0, 0
    probe = x[pos:pos + MIN_MATCH]
    best_d, best_n = 0, 0
    # overlapping copies: candidate starts j < pos, matched text may run past pos
    j = x.rfind(probe, 0, pos - 1 + MIN_MATCH)
    while j >= 0:
        if j < pos:
            d = pos - j
            n = MIN_MATCH
            limit = len(x) - pos
            while n < limit and x[pos + n] == x[j + n]:
                n += 1
            if n > best_n:  # scanning from the nearest start, so ties keep smaller d
                best_d, best_n = d, n
        if j == 0:
            break
        j = x.rfind(probe, 0, j - 1 + MIN_MATCH)
    return best_d, best_n


def lz_compress(x: str) -> str:
    """Greedy LZ77: longest match, nearest on ties, taken only if it saves bits."""
    out = []
    pending_start = 0
    pos = 0
    while pos < len(x):
        d, n = _longest_match(x, pos)
        if n and _copy_cost(d, n) < n:
            if pending_start < pos:
                out.append(_flush(x[pending_start:pos], final=False, at_start=not out))
            out.append("10" + gamma_code(d) + gamma_code(n))
            pos += n
            pending_start = pos
        else:
            pos += 1
    if pending_start < len(x):
        out.append(_flush(x[pending_start:], final=True, at_start=not out))
    return "".join(out)


def best_compress(x: str) -> str:
    best = literal_compress(x)
    for cand in (rle_compress(x), lz_compress(x)):
        if len(cand) < len(best):
            best = cand
    return best


LITERAL = Compressor("literal", K_DRIVER, literal_compress)
RLE = Compressor("rle", K_DRIVER, rle_compress)
LZ = Compressor("lz", K_DRIVER, lz_compress)
BEST = Compressor("best", K_DRIVER, best_compress)
CODECS = {c.name: c for c in (LITERAL, RLE, LZ, BEST)}


# ---------------------------------------------------------------------------
# compressors built from the oracle and from machine programs


def theorem1_compressor(m: int, table: Optional[RunTable] = None) -> Compressor:
    """The optimal-below-m compressor: search every program no longer than z
    for one printing z within BB(m) steps, else fall back to Print.

    The machine search is delegated to the oracle's run table; its size is
    booked as |p_m| + K_DRIVER (p_m hardwired into a fixed driver).
    """
    rec = oracle.busy_beaver(m, table)
    t = rec.bb
    tab = oracle.resolve_table(table)

    def compress(z: str) -> str:
        if len(z) > oracle.COMPLEXITY_CEILING:
            raise CeilingError(f"|z|={len(z)} exceeds the search ceiling {oracle.COMPLEXITY_CEILING}")
        for n in range(len(z) + 1):
            for p, _ in tab.producers(z, n, t):
                return p
        return literal_compress(z)

    return Compressor(f"thm1(m={m})", len(rec.p_m) + K_DRIVER, compress)


def program_as_compressor(q: str, n: Optional[int] = None) -> Compressor:
    """Treat program q as the compressor z -> q(z) = U(<q, z>)."""

    def compress(z: str) -> str:
        return exec_program(q, z).output

    name = f"program({q or '_'})" if n is None else f"program({q or '_'}, n={n})"
    return Compressor(name, len(q), compress, program=q)


def is_compression_function(c: Compressor, n: int, ceiling: Optional[int] = None) -> bool:
    """True iff U(c(z)) = z for every z of length n."""
    if ceiling is None:
        ceiling = PROGRAM_CF_CEILING if c.backing == "program" else CODEC_CF_CEILING
    if n > ceiling:
        raise CeilingError(f"n={n} exceeds the exhaustive-check ceiling {ceiling}")
    return all(u_eval(c.compress(z)).output == z for z in all_strings(n))
