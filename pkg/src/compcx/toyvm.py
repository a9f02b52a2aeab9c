"""The toy machine U.

Programs, inputs and outputs are bit strings, represented as Python ``str``
objects over the characters ``'0'`` and ``'1'``.  The machine is total: every
program halts on every input, which makes busy-beaver values and exact
complexities computable by plain enumeration.

Opcodes (first match wins)::

    00    LIT_REST    append every remaining program bit, then halt
    01    EMIT_RUN    b, gamma(c)         append c copies of bit b
    10    COPY_BACK   gamma(d), gamma(l)  copy l bits from d bits back (may overlap)
    1100  INPUT_REST  append every unread input bit
    1101  LIT_CHUNK   gamma(l), l raw bits
    1110  LOOP        gamma(c), gamma(L)  run the next L bits c times
    1111  HALT

A step is charged per completed dispatch and per output bit.  Anything
malformed (truncated code, back-reference before the start of the output,
loop block overrunning its scope, nesting deeper than ``MAX_LOOP_DEPTH``)
stops the machine gracefully at no extra cost.
"""

from __future__ import annotations

import enum
import functools
import re
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Optional

MAX_LOOP_DEPTH = 8
EMPTY_TOKEN = "_"


class HaltReason(str, enum.Enum):
    NORMAL = "NORMAL"
    GRACEFUL = "GRACEFUL"
    CAP_EXCEEDED = "CAP_EXCEEDED"


class Op(str, enum.Enum):
    LIT_REST = "LIT_REST"
    EMIT_RUN = "EMIT_RUN"
    COPY_BACK = "COPY_BACK"
    INPUT_REST = "INPUT_REST"
    LIT_CHUNK = "LIT_CHUNK"
    LOOP = "LOOP"
    HALT = "HALT"
    # Not instructions: markers left by the decoder where execution stops.
    TRUNCATED = "TRUNCATED"


OPCODES = {
    Op.LIT_REST: "00",
    Op.EMIT_RUN: "01",
    Op.COPY_BACK: "10",
    Op.INPUT_REST: "1100",
    Op.LIT_CHUNK: "1101",
    Op.LOOP: "1110",
    Op.HALT: "1111",
}


class ExecResult(NamedTuple):
    output: str
    steps: int
    halt_reason: HaltReason


# ---------------------------------------------------------------------------
# bit strings


def is_bits(s: str) -> bool:
    return all(c in "01" for c in s)


def parse_bits(token: str) -> str:
    """Parse a CLI bit-string token; ``_`` stands for the empty string."""
    if token == EMPTY_TOKEN:
        return ""
    if not is_bits(token):
        raise ValueError(f"not a bit string: {token!r}")
    return token


def show_bits(s: str) -> str:
    return s if s else EMPTY_TOKEN


def shortlex_key(s: str) -> tuple[int, str]:
    return (len(s), s)


def all_strings(n: int) -> Iterator[str]:
    """All strings of length exactly ``n`` in lexicographic order."""
    if n == 0:
        yield ""
        return
    fmt = f"0{n}b"
    for i in range(1 << n):
        yield format(i, fmt)


# ---------------------------------------------------------------------------
# Elias gamma


def gamma_code(n: int) -> str:
    if n < 1:
        raise ValueError(f"gamma code needs n >= 1, got {n}")
    body = bin(n)[2:]
    return "0" * (len(body) - 1) + body


def gamma_len(n: int) -> int:
    return 2 * n.bit_length() - 1


def gamma_decode(s: str, pos: int = 0, end: Optional[int] = None) -> Optional[tuple[int, int]]:
    """Decode one gamma code starting at ``pos``.

    Returns ``(n, next_pos)``, or None if the code runs past ``end`` (default:
    end of ``s``).
    """
    if end is None:
        end = len(s)
    one = s.find("1", pos, end)
    if one < 0:
        return None
    stop = 2 * one - pos + 1
    if stop > end:
        return None
    return int(s[one:stop], 2), stop


# ---------------------------------------------------------------------------
# pairing


def pair_encode(x: str, y: str) -> str:
    return "1" * len(x) + "0" + x + y


def pair_parse(s: str) -> Optional[tuple[str, str]]:
    if not s or s[0] != "1":
        return None
    a = s.find("0")
    if a < 0:
        return None
    rest = s[a + 1:]
    if len(rest) < a:
        return None
    return rest[:a], rest[a:]


# ---------------------------------------------------------------------------
# decoding


@dataclass(frozen=True)
class Instruction:
    kind: Op
    offset: int
    bits: str
    bit: int = 0
    count: int = 0
    distance: int = 0
    length: int = 0
    payload: str = ""
    block: tuple["Instruction", ...] = ()
    note: str = ""

    @property
    def bit_width(self) -> int:
        return len(self.bits)

    @property
    def halts(self) -> bool:
        """True if dispatching this instruction always stops the machine."""
        return self.kind in (Op.LIT_REST, Op.HALT, Op.TRUNCATED) or (
            self.kind is Op.LOOP and self.note != ""
        )

    def encode(self) -> str:
        k = self.kind
        if k is Op.LIT_REST:
            out = "00" + self.payload
        elif k is Op.EMIT_RUN:
            out = "01" + str(self.bit) + gamma_code(self.count)
        elif k is Op.COPY_BACK:
            out = "10" + gamma_code(self.distance) + gamma_code(self.length)
        elif k is Op.INPUT_REST or k is Op.HALT:
            out = OPCODES[k]
        elif k is Op.LIT_CHUNK:
            out = "1101" + gamma_code(self.length) + self.payload
        elif k is Op.LOOP:
            out = "1110" + gamma_code(self.count) + gamma_code(self.length)
            out += self.payload if self.note else "".join(i.encode() for i in self.block)
        else:
            out = self.bits
        return out


def _decode(prog: str, pos: int, end: int, depth: int) -> tuple[Instruction, ...]:
    """Statically decode ``prog[pos:end]`` as an instruction sequence.

    Decoding stops after the first instruction that always halts.  ``depth``
    is the number of loops enclosing this sequence.
    """
    out: list[Instruction] = []
    while pos < end:
        start = pos
        if pos + 2 > end:
            out.append(Instruction(Op.TRUNCATED, start, prog[start:end], note="truncated opcode"))
            break
        head = prog[pos:pos + 2]
        if head == "00":
            out.append(Instruction(Op.LIT_REST, start, prog[start:end], payload=prog[pos + 2:end]))
            break
        if head == "01":
            if pos + 3 > end:
                out.append(Instruction(Op.TRUNCATED, start, prog[start:end], note="truncated EMIT_RUN"))
                break
            g = gamma_decode(prog, pos + 3, end)
            if g is None:
                out.append(Instruction(Op.TRUNCATED, start, prog[start:end], note="truncated EMIT_RUN"))
                break
            out.append(Instruction(Op.EMIT_RUN, start, prog[start:g[1]],
                                   bit=int(prog[pos + 2]), count=g[0]))
            pos = g[1]
            continue
        if head == "10":
            g1 = gamma_decode(prog, pos + 2, end)
            g2 = gamma_decode(prog, g1[1], end) if g1 is not None else None
            if g2 is None:
                out.append(Instruction(Op.TRUNCATED, start, prog[start:end], note="truncated COPY_BACK"))
                break
            out.append(Instruction(Op.COPY_BACK, start, prog[start:g2[1]],
                                   distance=g1[0], length=g2[0]))
            pos = g2[1]
            continue
        if pos + 4 > end:
            out.append(Instruction(Op.TRUNCATED, start, prog[start:end], note="truncated opcode"))
            break
        op = prog[pos + 2:pos + 4]
        pos += 4
        if op == "00":
            out.append(Instruction(Op.INPUT_REST, start, "1100"))
        elif op == "11":
            out.append(Instruction(Op.HALT, start, "1111"))
            break
        elif op == "01":
            g = gamma_decode(prog, pos, end)
            if g is None or g[1] + g[0] > end:
                out.append(Instruction(Op.TRUNCATED, start, prog[start:end], note="truncated LIT_CHUNK"))
                break
            stop = g[1] + g[0]
            out.append(Instruction(Op.LIT_CHUNK, start, prog[start:stop],
                                   length=g[0], payload=prog[g[1]:stop]))
            pos = stop
        else:
            g1 = gamma_decode(prog, pos, end)
            g2 = gamma_decode(prog, g1[1], end) if g1 is not None else None
            if g2 is None:
                out.append(Instruction(Op.TRUNCATED, start, prog[start:end], note="truncated LOOP"))
                break
            count, body_len, body = g1[0], g2[0], g2[1]
            if body + body_len > end:
                out.append(Instruction(Op.TRUNCATED, start, prog[start:end], note="loop block past end"))
                break
            stop = body + body_len
            if depth + 1 > MAX_LOOP_DEPTH:
                out.append(Instruction(Op.LOOP, start, prog[start:stop], count=count, length=body_len,
                                       payload=prog[body:stop], note="nesting too deep"))
                break
            out.append(Instruction(Op.LOOP, start, prog[start:stop], count=count, length=body_len,
                                   block=_decode(prog, body, stop, depth + 1)))
            pos = stop
    return tuple(out)


@functools.lru_cache(maxsize=1 << 16)
def decode(program: str) -> tuple[Instruction, ...]:
    return _decode(program, 0, len(program), 0)


# ---------------------------------------------------------------------------
# execution


class _Stop(Exception):
    def __init__(self, reason: HaltReason):
        self.reason = reason


class _Machine:
    __slots__ = ("inp", "in_pos", "out", "steps", "cap")

    def __init__(self, inp: str, cap: Optional[int]):
        self.inp = inp
        self.in_pos = 0
        self.out = ""
        self.steps = 0
        self.cap = cap

    def _dispatch(self) -> None:
        if self.cap is not None and self.steps >= self.cap:
            raise _Stop(HaltReason.CAP_EXCEEDED)
        self.steps += 1

    def _emit(self, bits: str) -> None:
        if self.cap is not None and self.steps + len(bits) > self.cap:
            room = self.cap - self.steps
            self.out += bits[:room]
            self.steps = self.cap
            raise _Stop(HaltReason.CAP_EXCEEDED)
        self.out += bits
        self.steps += len(bits)

    def run(self, block: tuple[Instruction, ...]) -> None:
        for ins in block:
            k = ins.kind
            if k is Op.EMIT_RUN:
                self._dispatch()
                self._emit(("1" if ins.bit else "0") * ins.count)
            elif k is Op.COPY_BACK:
                d, n = ins.distance, ins.length
                if d > len(self.out):
                    raise _Stop(HaltReason.GRACEFUL)
                self._dispatch()
                src = self.out[len(self.out) - d:]
                self._emit(src[:n] if n <= d else (src * (n // d + 1))[:n])
            elif k is Op.LIT_REST:
                self._dispatch()
                self._emit(ins.payload)
                raise _Stop(HaltReason.NORMAL)
            elif k is Op.INPUT_REST:
                self._dispatch()
                rest = self.inp[self.in_pos:]
                self.in_pos = len(self.inp)
                self._emit(rest)
            elif k is Op.LIT_CHUNK:
                self._dispatch()
                self._emit(ins.payload)
            elif k is Op.LOOP:
                if ins.note:
                    raise _Stop(HaltReason.GRACEFUL)
                self._dispatch()
                for _ in range(ins.count):
                    self.run(ins.block)
            elif k is Op.HALT:
                self._dispatch()
                raise _Stop(HaltReason.NORMAL)
            else:
                raise _Stop(HaltReason.GRACEFUL)


def exec_program(program: str, inp: str = "", cap: Optional[int] = None) -> ExecResult:
    """Run ``program`` on ``inp``; stop after ``cap`` steps if a cap is given."""
    m = _Machine(inp, cap)
    reason = HaltReason.NORMAL
    try:
        m.run(decode(program))
    except _Stop as stop:
        reason = stop.reason
    return ExecResult(m.out, m.steps, reason)


def u_eval(s: str, cap: Optional[int] = None) -> ExecResult:
    """U(s): a pair <p, x> runs p on x, anything else runs as a program on ε."""
    parsed = pair_parse(s)
    if parsed is not None:
        return exec_program(parsed[0], parsed[1], cap)
    return exec_program(s, "", cap)


# ---------------------------------------------------------------------------
# listing and assembly


def _operand_text(ins: Instruction) -> str:
    k = ins.kind
    if k is Op.LIT_REST:
        return f'LIT_REST "{ins.payload}"'
    if k is Op.EMIT_RUN:
        return f"EMIT_RUN b={ins.bit} c={ins.count}"
    if k is Op.COPY_BACK:
        return f"COPY_BACK d={ins.distance} l={ins.length}"
    if k is Op.LIT_CHUNK:
        return f'LIT_CHUNK l={ins.length} "{ins.payload}"'
    if k is Op.LOOP:
        return f"LOOP c={ins.count} L={ins.length}"
    if k is Op.TRUNCATED:
        return f'TRUNCATED "{ins.bits}"'
    return k.value


def _listing(program: str, block: tuple[Instruction, ...], start: int, end: int, indent: int,
             lines: list[str]) -> None:
    pad = "  " * indent
    pos = start
    for ins in block:
        text = _operand_text(ins)
        if ins.kind is Op.TRUNCATED:
            text += f"  ; {ins.note}, halts"
        elif ins.kind is Op.LOOP and ins.note:
            text += f"  ; {ins.note}, halts"
        lines.append(f"{ins.offset:04d}  {pad}{text}")
        if ins.kind is Op.LOOP:
            body = ins.offset + ins.bit_width - ins.length
            if ins.note:
                lines.append(f'{body:04d}  {pad}  DATA "{ins.payload}"')
            else:
                _listing(program, ins.block, body, ins.offset + ins.bit_width, indent + 1, lines)
        pos = ins.offset + ins.bit_width
    if pos < end:
        # only reachable after HALT: the rest of this scope is dead code
        lines.append(f'{pos:04d}  {pad}DATA "{program[pos:end]}"  ; unreachable')


def disassemble(program: str) -> str:
    """Human-readable listing: one instruction per line with its bit offset."""
    lines: list[str] = []
    _listing(program, decode(program), 0, len(program), 0, lines)
    return "\n".join(lines)


_LINE = re.compile(r"^\s*(?:\d+\s+)?(?P<body>[^;]*?)\s*(?:;.*)?$")
_KV = re.compile(r"(\w+)=(\d+)")
_STR = re.compile(r'"([01]*)"')


def assemble(text: str) -> str:
    """Inverse of :func:`disassemble`; offsets and ``;`` comments are ignored.

    ``LOOP`` lines carry their block length explicitly, so block contents are
    simply the bits of the lines that follow.
    """
    out = []
    for raw in text.splitlines():
        body = _LINE.match(raw).group("body")
        if not body:
            continue
        mnemonic = body.split()[0]
        kv = {k: int(v) for k, v in _KV.findall(body)}
        lit = _STR.search(body)
        payload = lit.group(1) if lit else ""
        if mnemonic == "LIT_REST":
            out.append("00" + payload)
        elif mnemonic == "EMIT_RUN":
            out.append("01" + str(kv["b"]) + gamma_code(kv["c"]))
        elif mnemonic == "COPY_BACK":
            out.append("10" + gamma_code(kv["d"]) + gamma_code(kv["l"]))
        elif mnemonic == "INPUT_REST":
            out.append("1100")
        elif mnemonic == "LIT_CHUNK":
            out.append("1101" + gamma_code(kv.get("l", len(payload))) + payload)
        elif mnemonic == "LOOP":
            out.append("1110" + gamma_code(kv["c"]) + gamma_code(kv["L"]))
        elif mnemonic == "HALT":
            out.append("1111")
        elif mnemonic in ("TRUNCATED", "DATA"):
            out.append(payload)
        else:
            raise ValueError(f"unknown mnemonic {mnemonic!r} in line {raw!r}")
    return "".join(out)
