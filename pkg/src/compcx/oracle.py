"""Exact complexity oracles by exhaustive enumeration.

Every program halts, so the behaviour of all programs up to some length can be
tabulated once (output and exact step count of the uncapped run) and every
quantity below read off that table.  A capped run halts within ``s`` steps iff
the uncapped run takes at most ``s`` steps, so one table serves every budget.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterator, Optional

from compcx.toyvm import EMPTY_TOKEN, all_strings, show_bits, u_eval

log = logging.getLogger(__name__)

COMPLEXITY_CEILING = 18
BB_CEILING = 14
ASET_CEILING = 14
CACHE_VERSION = "compcx-runtable 1"


class CeilingError(ValueError):
    """A request exceeds the configured enumeration ceiling."""


def _check_ceiling(what: str, value: int, ceiling: int) -> None:
    if value > ceiling:
        raise CeilingError(f"{what}={value} exceeds the enumeration ceiling {ceiling}")
    if value < 0:
        raise ValueError(f"{what} must be nonnegative, got {value}")


def enumerate_programs(max_len: int) -> Iterator[str]:
    """All strings of length 0..max_len in shortlex order."""
    if max_len < 0:
        raise ValueError("max_len must be nonnegative")
    for n in range(max_len + 1):
        yield from all_strings(n)


@dataclass(frozen=True)
class ComplexityRecord:
    x: str
    value: int
    witness: str
    step_budget: Optional[int] = None
    # False only for a time-bounded query no program can meet; the record then
    # carries the Print program as a fallback.
    within_budget: bool = True

    def to_dict(self) -> dict:
        return {
            "x": show_bits(self.x),
            "value": self.value,
            "witness": show_bits(self.witness),
            "step_budget": self.step_budget,
            "within_budget": self.within_budget,
        }


@dataclass(frozen=True)
class BBRecord:
    m: int
    bb: int
    p_m: str

    def to_dict(self) -> dict:
        return {"m": self.m, "bb": self.bb, "p_m": show_bits(self.p_m)}


@dataclass(frozen=True)
class ASet:
    s: int
    length: int
    members: tuple[str, ...]

    @property
    def canonical_index(self) -> str:
        return "\n".join(show_bits(y) for y in self.members)

    def __contains__(self, y: str) -> bool:
        return y in set(self.members)

    def to_dict(self) -> dict:
        return {"s": self.s, "length": self.length, "size": len(self.members),
                "members": [show_bits(y) for y in self.members]}


@dataclass
class _Level:
    outputs: list[str]
    steps: list[int]
    # output -> indices of producing programs, ascending
    by_output: dict[str, list[int]] = field(default_factory=dict)


class RunTable:
    """Memo of ``u_eval(p)`` for every program ``p``, built one length at a time."""

    def __init__(self) -> None:
        self._levels: dict[int, _Level] = {}

    def level(self, n: int) -> _Level:
        lv = self._levels.get(n)
        if lv is None:
            outputs, steps = [], []
            for p in all_strings(n):
                r = u_eval(p)
                outputs.append(r.output)
                steps.append(r.steps)
            by_output: dict[str, list[int]] = {}
            for i, o in enumerate(outputs):
                by_output.setdefault(o, []).append(i)
            lv = self._levels[n] = _Level(outputs, steps, by_output)
            if n >= 16:
                log.info("tabulated %d programs of length %d", 1 << n, n)
        return lv

    def run(self, p: str) -> tuple[str, int]:
        lv = self.level(len(p))
        i = int(p, 2) if p else 0
        return lv.outputs[i], lv.steps[i]

    def producers(self, x: str, n: int, budget: Optional[int] = None) -> Iterator[tuple[str, int]]:
        """Programs of length ``n`` with output ``x`` (within ``budget``), lexicographically."""
        lv = self.level(n)
        fmt = f"0{n}b"
        for i in lv.by_output.get(x, ()):
            if budget is None or lv.steps[i] <= budget:
                yield (format(i, fmt) if n else ""), lv.steps[i]

    def programs(self, n: int) -> Iterator[tuple[str, str, int]]:
        """(program, output, steps) for every program of length ``n``."""
        lv = self.level(n)
        for i, p in enumerate(all_strings(n)):
            yield p, lv.outputs[i], lv.steps[i]

    # persistence -----------------------------------------------------------

    def save(self, path: Path | str) -> None:
        with open(path, "w") as fh:
            fh.write(f"# {CACHE_VERSION}\n")
            for n in sorted(self._levels):
                for p, o, s in self.programs(n):
                    fh.write(f"{show_bits(p)}\t{show_bits(o)}\t{s}\n")

    @classmethod
    def load(cls, path: Path | str) -> "RunTable":
        table = cls()
        rows: dict[int, list[tuple[str, str, int]]] = {}
        with open(path) as fh:
            header = fh.readline().strip()
            if header != f"# {CACHE_VERSION}":
                raise ValueError(f"unsupported cache header {header!r}")
            for line in fh:
                p, o, s = line.rstrip("\n").split("\t")
                p = "" if p == EMPTY_TOKEN else p
                o = "" if o == EMPTY_TOKEN else o
                rows.setdefault(len(p), []).append((p, o, int(s)))
        for n, items in rows.items():
            if len(items) != 1 << n:
                continue  # partial level: let it be recomputed
            items.sort()
            outputs = [o for _, o, _ in items]
            steps = [s for _, _, s in items]
            by_output: dict[str, list[int]] = {}
            for i, o in enumerate(outputs):
                by_output.setdefault(o, []).append(i)
            table._levels[n] = _Level(outputs, steps, by_output)
        return table


DEFAULT_TABLE = RunTable()


def resolve_table(table: Optional[RunTable]) -> RunTable:
    return DEFAULT_TABLE if table is None else table


def complexity(x: str, table: Optional[RunTable] = None) -> ComplexityRecord:
    """C(x) with the shortlex-first witness."""
    _check_ceiling("|x|", len(x), COMPLEXITY_CEILING)
    t = resolve_table(table)
    for n in range(len(x) + 3):
        for p, _ in t.producers(x, n):
            return ComplexityRecord(x, n, p)
    raise AssertionError(f"Print program failed to produce {x!r}")


def complexity_time_bounded(x: str, budget: int, table: Optional[RunTable] = None) -> ComplexityRecord:
    """C^t(x): shortest program printing ``x`` within ``budget`` steps.

    Producing ``x`` costs at least ``|x|`` output steps plus a dispatch, and
    the Print program ``00x`` costs exactly that, so scanning to ``|x| + 2``
    is exhaustive.  If nothing fits the budget, the Print program is returned
    with ``within_budget=False``.
    """
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    _check_ceiling("|x|", len(x), COMPLEXITY_CEILING)
    t = resolve_table(table)
    for n in range(len(x) + 3):
        for p, _ in t.producers(x, n, budget):
            return ComplexityRecord(x, n, p, step_budget=budget)
    return ComplexityRecord(x, len(x) + 2, "00" + x, step_budget=budget, within_budget=False)


def busy_beaver(m: int, table: Optional[RunTable] = None, ceiling: int = BB_CEILING) -> BBRecord:
    """BB(m) and p_m, the shortlex-least program of length <= m attaining it."""
    _check_ceiling("m", m, ceiling)
    t = resolve_table(table)
    best, best_p = -1, ""
    for n in range(m + 1):
        lv = t.level(n)
        top = max(lv.steps)
        if top > best:
            best = top
            i = lv.steps.index(top)
            best_p = format(i, f"0{n}b") if n else ""
    return BBRecord(m, best, best_p)


def a_set(s: int, length: int, table: Optional[RunTable] = None) -> ASet:
    """Strings of the given length printed by no shorter program within ``s`` steps."""
    _check_ceiling("length", length, ASET_CEILING)
    if s < 0:
        raise ValueError("s must be nonnegative")
    t = resolve_table(table)
    produced = set()
    for n in range(length):
        lv = t.level(n)
        for o, k in zip(lv.outputs, lv.steps):
            if k <= s and len(o) == length:
                produced.add(o)
    return ASet(s, length, tuple(y for y in all_strings(length) if y not in produced))


def random_strings(length: int, table: Optional[RunTable] = None) -> list[str]:
    """Strings y of the given length with C(y) >= |y|, lexicographically."""
    _check_ceiling("length", length, ASET_CEILING)
    return [y for y in all_strings(length) if complexity(y, table).value >= length]


def incompressible_fraction(n: int, table: Optional[RunTable] = None) -> Fraction:
    return Fraction(len(random_strings(n, table)), 1 << n)
