"""Exhaustive checks of the upper and lower bounds on compressor size.

Upper bound: the BB(m)-bounded search compressor reaches C(x) whenever
C(x) <= m and never expands beyond the Print overhead.  Lower bound: the
first string of A^n_{BB(m)} cannot be compressed below n by any short
compression function for length n, because decompressing it would take
longer than BB(m) steps.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Iterable, Optional

from compcx import oracle
from compcx.compressors import (
    K_DRIVER,
    K_PRINT,
    Compressor,
    MeasuredConstants,
    is_compression_function,
    program_as_compressor,
    theorem1_compressor,
)
from compcx.oracle import CeilingError, RunTable
from compcx.toyvm import all_strings, exec_program, show_bits, u_eval

THM2_N_CEILING = 6
THM2_QLEN_CEILING = 12
K_SEARCH_LIMIT = 64


class NotACompressionFunction(ValueError):
    pass


def adversarial_string(m: int, n: int, table: Optional[RunTable] = None) -> str:
    """First string of length n that no shorter program prints within BB(m) steps."""
    if m > n:
        raise ValueError(f"need m <= n, got m={m}, n={n}")
    t = oracle.busy_beaver(m, table).bb
    return oracle.a_set(t, n, table).members[0]


# ---------------------------------------------------------------------------
# upper bound: q_m is optimal up to m, Print beyond


@dataclass(frozen=True)
class Thm1Outcome:
    x: str
    c: int
    q_len: int
    case: int  # 1: C(x) <= m, 2: otherwise


@dataclass
class Thm1Report:
    m: int
    n_max: int
    bb: int
    p_m: str
    declared_length: int
    outcomes: list[Thm1Outcome]
    corollary_slack: Optional[int]
    k_print_measured: int
    passed: bool
    k_print: int = K_PRINT
    k_driver: int = K_DRIVER

    @property
    def k_min(self) -> int:
        """Smallest k for which |q| <= m + k, case 2 and the corollary all hold."""
        return max(self.declared_length - self.m, self.k_print_measured, self.corollary_slack or 0)

    def to_dict(self, outcomes: bool = False) -> dict:
        d = {
            "m": self.m, "n_max": self.n_max, "bb": self.bb, "p_m": show_bits(self.p_m),
            "declared_length": self.declared_length,
            "strings_checked": len(self.outcomes),
            "case1_count": sum(o.case == 1 for o in self.outcomes),
            "corollary_slack": self.corollary_slack,
            "k_print_measured": self.k_print_measured, "k_min": self.k_min,
            "constants": {"k_print": self.k_print, "k_driver": self.k_driver,
                          "size_convention": "|p_m| + k_driver (host-backed search)"},
            "pass": self.passed,
        }
        if outcomes:
            d["outcomes"] = [{"x": show_bits(o.x), "C": o.c, "q_len": o.q_len, "case": o.case}
                             for o in self.outcomes]
        return d


def verify_theorem1(m: int, n_max: int, table: Optional[RunTable] = None) -> Thm1Report:
    if n_max > oracle.COMPLEXITY_CEILING:
        raise CeilingError(f"n_max={n_max} exceeds the complexity ceiling {oracle.COMPLEXITY_CEILING}")
    bb = oracle.busy_beaver(m, table)
    q = theorem1_compressor(m, table)
    outcomes = []
    passed = True
    slack: Optional[int] = None
    k_print = 0
    for n in range(n_max + 1):
        for x in all_strings(n):
            c = oracle.complexity(x, table).value
            qx = q(x)
            if u_eval(qx).output != x:
                passed = False
            case = 1 if c <= m else 2
            if case == 1:
                passed &= len(qx) == c
            else:
                passed &= len(qx) <= len(x) + K_PRINT
                k_print = max(k_print, len(qx) - len(x))
            if n >= m:
                s = (len(qx) - c) - (n - m)
                slack = s if slack is None else max(slack, s)
            outcomes.append(Thm1Outcome(x, c, len(qx), case))
    return Thm1Report(m, n_max, bb.bb, bb.p_m, q.declared_length, outcomes, slack, k_print, passed)


# ---------------------------------------------------------------------------
# lower bound: short outputs on x_adv need more than BB(m) steps


@dataclass(frozen=True)
class Violation:
    q: str
    compressed_len: int
    decompression_steps: int
    exceeds_bb: bool

    def to_dict(self) -> dict:
        return {"q": show_bits(self.q), "compressed_len": self.compressed_len,
                "decompression_steps": self.decompression_steps, "exceeds_bb": self.exceeds_bb}


@dataclass
class Thm2Report:
    m: int
    n: int
    q_len_max: int
    t: int
    x_adv: str
    c_x_adv: int
    programs_enumerated: int
    compression_functions: list[tuple[str, int]]  # (q, |q(x_adv)|), shortlex by q
    violations: list[Violation]
    degenerate: bool
    item2_holds: Optional[bool]  # only set for degenerate instances (k drops out)
    k_min_items: Optional[int]
    vacuous_at_k_min: Optional[bool]

    @property
    def mechanism_holds(self) -> bool:
        return all(v.exceeds_bb for v in self.violations)

    def to_dict(self) -> dict:
        return {
            "m": self.m, "n": self.n, "q_len_max": self.q_len_max, "t": self.t,
            "x_adv": show_bits(self.x_adv), "C_x_adv": self.c_x_adv,
            "programs_enumerated": self.programs_enumerated,
            "compression_function_count": len(self.compression_functions),
            "compression_functions": [{"q": show_bits(q), "compressed_len": n}
                                      for q, n in self.compression_functions],
            "violations": [v.to_dict() for v in self.violations],
            "mechanism_holds": self.mechanism_holds,
            "degenerate": self.degenerate, "item2_holds": self.item2_holds,
            "k_min_items": self.k_min_items, "vacuous_at_k_min": self.vacuous_at_k_min,
        }


@functools.lru_cache(maxsize=None)
def compression_functions_for_length(n: int, q_len_max: int) -> tuple[str, ...]:
    """Every program of length <= q_len_max that is a compression function for length n."""
    if n > THM2_N_CEILING or q_len_max > THM2_QLEN_CEILING:
        raise CeilingError(f"(n={n}, q_len_max={q_len_max}) exceeds ({THM2_N_CEILING}, {THM2_QLEN_CEILING})")
    return tuple(q for q in oracle.enumerate_programs(q_len_max)
                 if is_compression_function(program_as_compressor(q), n))


def _log2(n: int) -> float:
    return math.log2(n)


def _items_hold(k: int, m: int, n: int, c_x: int, cfs: list[tuple[str, int]]) -> bool:
    bound = m - k * _log2(n)
    if c_x > m + k * _log2(n):
        return False
    for q, qx in cfs:
        if len(q) <= bound and (qx < n or qx - c_x < n - m - k * _log2(n)):
            return False
    return True


def verify_theorem2(m: int, n: int, q_len_max: int, table: Optional[RunTable] = None) -> Thm2Report:
    if n > THM2_N_CEILING or q_len_max > THM2_QLEN_CEILING:
        raise CeilingError(f"(n={n}, q_len_max={q_len_max}) exceeds ({THM2_N_CEILING}, {THM2_QLEN_CEILING})")
    t = oracle.busy_beaver(m, table).bb
    x = adversarial_string(m, n, table)
    c_x = oracle.complexity(x, table).value
    cfs, violations = [], []
    for q in compression_functions_for_length(n, q_len_max):
        qx = exec_program(q, x).output
        cfs.append((q, len(qx)))
        if len(qx) < n:
            steps = u_eval(qx).steps
            violations.append(Violation(q, len(qx), steps, steps > t))

    degenerate = n <= 1
    if degenerate:
        # log n = 0: k drops out of every item
        item2 = c_x <= m
        return Thm2Report(m, n, q_len_max, t, x, c_x, (1 << (q_len_max + 1)) - 1, cfs, violations,
                          True, item2, None, None)
    k_min = next((k for k in range(K_SEARCH_LIMIT) if _items_hold(k, m, n, c_x, cfs)), None)
    vacuous = None
    if k_min is not None:
        bound = m - k_min * _log2(n)
        vacuous = not any(len(q) <= bound for q, _ in cfs)
    return Thm2Report(m, n, q_len_max, t, x, c_x, (1 << (q_len_max + 1)) - 1, cfs, violations,
                      False, None, k_min, vacuous)


# ---------------------------------------------------------------------------
# extraction of a random string from a short compressor


@dataclass(frozen=True)
class Extraction:
    z: str
    t_prime: int
    bb_m: int
    conditional_applies: bool
    expected: Optional[str]  # shortlex-least random string of length m, when it applies

    @property
    def holds(self) -> bool:
        return not self.conditional_applies or self.z == self.expected

    def to_dict(self) -> dict:
        return {"z": show_bits(self.z), "t_prime": self.t_prime, "bb_m": self.bb_m,
                "conditional_applies": self.conditional_applies,
                "expected": None if self.expected is None else show_bits(self.expected),
                "holds": self.holds}


def extraction_record(q: Compressor, n: int, m: int, table: Optional[RunTable] = None) -> Extraction:
    if not is_compression_function(q, n):
        raise NotACompressionFunction(f"{q.name} is not a compression function for length {n}")
    t_prime = max(u_eval(q(y)).steps for y in all_strings(n))
    z = oracle.a_set(t_prime, m, table).members[0]
    bb_m = oracle.busy_beaver(m, table).bb
    applies = t_prime >= bb_m
    expected = oracle.random_strings(m, table)[0] if applies else None
    return Extraction(z, t_prime, bb_m, applies, expected)


def extract_random(q: Compressor, n: int, m: int, table: Optional[RunTable] = None) -> str:
    """Recover a random string of length m from the decompression time of q.

    t' is the longest decompression time over all inputs of length n; the
    answer is the first member of A^m_{t'}.
    """
    return extraction_record(q, n, m, table).z


# ---------------------------------------------------------------------------
# constants


def estimate_constants(grid: Iterable[tuple[int, int]], q_len_max: int = 10,
                       table: Optional[RunTable] = None) -> MeasuredConstants:
    grid = sorted(set(grid))
    k_print, k1, k2 = 0, 0, None
    tight = []
    n_max_for: dict[int, int] = {}
    for m, n in grid:
        n_max_for[m] = max(n_max_for.get(m, 0), n)
    for m, n_max in sorted(n_max_for.items()):
        r = verify_theorem1(m, n_max, table)
        k_print = max(k_print, r.k_print_measured)
        if r.k_min > k1:
            tight.append((("theorem", "thm1"), ("m", m), ("n_max", n_max), ("k", r.k_min)))
        k1 = max(k1, r.k_min)
    for m, n in grid:
        r2 = verify_theorem2(m, n, q_len_max, table)
        if r2.degenerate or r2.k_min_items is None:
            continue
        if k2 is None or r2.k_min_items > k2:
            tight.append((("theorem", "thm3"), ("m", m), ("n", n), ("k", r2.k_min_items)))
            k2 = r2.k_min_items
    return MeasuredConstants(k_print=max(k_print, 0), k_driver=K_DRIVER, k_min_thm1=k1,
                             k_min_thm2=k2, tight=tuple(tight))
