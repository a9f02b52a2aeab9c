"""Time-bounded compression and the compression-based PRG distinguisher."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

import numpy as np

from compcx import oracle
from compcx.compressors import Compressor, is_compression_function
from compcx.oracle import ComplexityRecord, RunTable
from compcx.toyvm import all_strings, exec_program, u_eval

EXHAUSTIVE_LENGTH = 12
SAMPLES_PER_LENGTH = 256
RNG_NAME = "numpy.random.Generator(PCG64), SeedSequence([rng_seed, stream, trial])"
_UNIFORM_STREAM, _SEED_STREAM = 0, 1


@dataclass(frozen=True)
class TimeBound:
    """t(n) = a * n**b + c machine steps."""

    a: int = 0
    b: int = 0
    c: int = 0

    def __post_init__(self):
        if min(self.a, self.b, self.c) < 0:
            raise ValueError("time-bound coefficients must be nonnegative")

    def __call__(self, n: int) -> int:
        return self.a * n ** self.b + self.c

    @classmethod
    def parse(cls, text: str) -> "TimeBound":
        a, b, c = (int(v) for v in text.split(","))
        return cls(a, b, c)


def ct_complexity(x: str, tb: TimeBound, table: Optional[RunTable] = None) -> ComplexityRecord:
    return oracle.complexity_time_bounded(x, tb(len(x)), table)


@dataclass
class FGReport:
    compressor: str
    f_modeled: bool
    checked: int = 0
    f_failures: list[str] = field(default_factory=list)
    g_failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.f_failures and not self.g_failures

    def to_dict(self) -> dict:
        return {"compressor": self.compressor, "checked": self.checked,
                "f": "checked" if self.f_modeled else "not modeled",
                "f_failures": self.f_failures[:20], "g_failures": self.g_failures[:20],
                "pass": self.passed}


def _strings_of_length(n: int, rng_seed: int) -> Iterable[str]:
    if n <= EXHAUSTIVE_LENGTH:
        return all_strings(n)
    rng = np.random.default_rng([rng_seed, n])
    return ("".join(map(str, rng.integers(0, 2, n))) for _ in range(SAMPLES_PER_LENGTH))


def fg_check(c: Compressor, f: TimeBound, g: TimeBound, lengths: Iterable[int],
             rng_seed: int = 0) -> FGReport:
    """Check the (f, g) time bounds on every string of each length (sampled past 12).

    Compression time is only measured for program-backed compressors; host
    codecs run outside the machine and get no f verdict.
    """
    rep = FGReport(c.name, c.program is not None)
    for n in lengths:
        for x in _strings_of_length(n, rng_seed):
            rep.checked += 1
            if c.program is not None:
                r = exec_program(c.program, x)
                if r.steps > f(n):
                    rep.f_failures.append(x)
                qx = r.output
            else:
                qx = c.compress(x)
            d = u_eval(qx)
            if d.output != x or d.steps > g(n):
                rep.g_failures.append(x)
    return rep


@dataclass
class CompressorFamily:
    """q_0, q_1, ...: one compressor per input length."""

    name: str
    generator: Callable[[int], Compressor]
    size_bound: Callable[[int], int]
    uniform: bool = True

    def __getitem__(self, n: int) -> Compressor:
        return self.generator(n)

    def check(self, ns: Iterable[int]) -> dict[int, bool]:
        return {n: is_compression_function(self[n], n) and self[n].declared_length <= self.size_bound(n)
                for n in ns}


# ---------------------------------------------------------------------------
# PRG and distinguisher


def prg_expand(seed: str, length: int) -> str:
    """Stretch ``seed`` to ``length`` bits by repeating it."""
    if not 1 <= len(seed) < length:
        raise ValueError(f"need 1 <= |seed| < length, got |seed|={len(seed)}, length={length}")
    reps = -(-length // len(seed))
    return (seed * reps)[:length]


def distinguisher_T(c: Compressor, x: str) -> int:
    """0 if c compresses x below its own length, else 1."""
    return 0 if len(c.compress(x)) < len(x) else 1


def _bits(rng: np.random.Generator, n: int) -> str:
    return "".join("1" if b else "0" for b in rng.integers(0, 2, n))


def _stream(rng_seed: int, stream: int, trial: int) -> np.random.Generator:
    return np.random.default_rng([rng_seed, stream, trial])


@dataclass(frozen=True)
class DistinguisherReport:
    compressor: str
    seed_len: int
    out_len: int
    trials: int
    accepted_uniform: int
    accepted_prg: int
    rng_seed: int
    generator: str = RNG_NAME

    @property
    def accept_rate_uniform(self) -> float:
        return self.accepted_uniform / self.trials

    @property
    def accept_rate_prg(self) -> float:
        return self.accepted_prg / self.trials

    @property
    def advantage(self) -> float:
        return self.accept_rate_uniform - self.accept_rate_prg

    def to_dict(self) -> dict:
        return {"compressor": self.compressor, "seed_len": self.seed_len, "out_len": self.out_len,
                "trials": self.trials, "accepted_uniform": self.accepted_uniform,
                "accepted_prg": self.accepted_prg,
                "accept_rate_uniform": self.accept_rate_uniform,
                "accept_rate_prg": self.accept_rate_prg, "advantage": self.advantage,
                "rng_seed": self.rng_seed, "generator": self.generator}


def run_distinguisher(c: Compressor, seed_len: int, out_len: int, trials: int,
                      rng_seed: int, first_trial: int = 0) -> DistinguisherReport:
    """Acceptance rates of T on uniform strings versus PRG outputs.

    Trial i draws from its own stream keyed by (rng_seed, stream, i), so runs
    over disjoint trial ranges (``first_trial``) add up to one long run.
    """
    if not 1 <= seed_len < out_len:
        raise ValueError(f"need 1 <= seed_len < out_len, got {seed_len}, {out_len}")
    if trials < 1:
        raise ValueError("trials must be positive")
    acc_u = acc_g = 0
    for i in range(first_trial, first_trial + trials):
        acc_u += distinguisher_T(c, _bits(_stream(rng_seed, _UNIFORM_STREAM, i), out_len))
        seed = _bits(_stream(rng_seed, _SEED_STREAM, i), seed_len)
        acc_g += distinguisher_T(c, prg_expand(seed, out_len))
    return DistinguisherReport(c.name, seed_len, out_len, trials, acc_u, acc_g, rng_seed)
