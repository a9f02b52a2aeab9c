import random
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from compcx.toyvm import (
    HaltReason,
    Op,
    all_strings,
    assemble,
    decode,
    disassemble,
    exec_program,
    gamma_code,
    gamma_decode,
    pair_encode,
    pair_parse,
    parse_bits,
    u_eval,
)

GOLDEN = Path(__file__).parent / "golden"
bits = st.text(alphabet="01", max_size=40)

NORMAL, GRACEFUL, CAP = HaltReason.NORMAL, HaltReason.GRACEFUL, HaltReason.CAP_EXCEEDED


# -- gamma ------------------------------------------------------------------

@pytest.mark.parametrize("n, code", [(1, "1"), (2, "010"), (3, "011"), (4, "00100"), (50, "00000110010")])
def test_gamma_examples(n, code):
    assert gamma_code(n) == code
    assert gamma_decode(code) == (n, len(code))


def test_gamma_rejects_zero():
    with pytest.raises(ValueError):
        gamma_code(0)


@pytest.mark.parametrize("s, pos", [("", 0), ("000", 0), ("0001", 0), ("10010", 1)])
def test_gamma_truncation(s, pos):
    assert gamma_decode(s, pos) is None


@given(st.integers(min_value=1, max_value=10**6), bits, bits)
def test_gamma_roundtrip_in_context(n, before, after):
    s = before + gamma_code(n) + after
    assert gamma_decode(s, len(before)) == (n, len(before) + len(gamma_code(n)))


# -- pairing ----------------------------------------------------------------

def test_pair_examples():
    assert pair_encode("01", "1") == "110011"
    assert pair_encode("", "1") == "01"
    assert pair_parse("110011") == ("01", "1")
    assert pair_parse("0101") is None
    assert pair_parse("") is None
    assert pair_parse("1111") is None
    assert pair_parse("1101") is None  # remainder "1" shorter than 2


def test_pair_parse_of_empty_first_component():
    # "01" starts with 0, so U runs it as a plain program
    assert pair_parse("01") is None
    assert pair_parse(pair_encode("", "1")) is None


@given(bits.filter(bool), bits)
def test_pair_roundtrip(x, y):
    assert pair_parse(pair_encode(x, y)) == (x, y)


# -- execution: hand traces -------------------------------------------------

@pytest.mark.parametrize("program, inp, output, steps, reason", [
    ("00101", "", "101", 4, NORMAL),
    ("010010", "", "00", 3, NORMAL),
    ("", "111", "", 0, NORMAL),
    ("1111", "", "", 1, NORMAL),
    ("00", "", "", 1, NORMAL),
    ("0", "", "", 0, GRACEFUL),
    ("01", "", "", 0, GRACEFUL),
    ("1100", "101", "101", 4, NORMAL),
    ("11001100", "101", "101", 5, NORMAL),  # second INPUT_REST finds nothing left
    ("0100101100", "1", "001", 5, NORMAL),
    # EMIT_RUN 0, EMIT_RUN 1, COPY_BACK d=2 l=5 (overlapping)
    ("0101" "0111" "10" "010" "00101", "", "0101010", 10, NORMAL),
    # COPY_BACK before any output
    ("1011", "", "", 0, GRACEFUL),
    # LIT_CHUNK l=3 with only 2 payload bits
    ("1101" "011" "10", "", "", 0, GRACEFUL),
    ("1101" "011" "101", "", "101", 4, NORMAL),
    # LOOP c=3 over EMIT_RUN b=1 c=1
    ("1110" "011" "00100" "0111", "", "111", 7, NORMAL),
    # LOOP c=2 whose block is LIT_REST "1": halts the whole machine
    ("1110" "010" "011" "001" "0111", "", "1", 3, NORMAL),
    # LOOP block longer than the program
    ("1110" "010" "00100" "01", "", "", 0, GRACEFUL),
    # EMIT_RUN, then a truncated opcode: output so far is kept
    ("0111" "1", "", "1", 2, GRACEFUL),
    # HALT stops before the following LIT_REST
    ("1111" "00101", "", "", 1, NORMAL),
])
def test_exec_hand_traces(program, inp, output, steps, reason):
    assert exec_program(program, inp) == (output, steps, reason)


def _nest(depth: int, body: str) -> str:
    for _ in range(depth):
        body = "1110" + gamma_code(1) + gamma_code(len(body)) + body
    return body


def test_loop_nesting_limit():
    assert exec_program(_nest(8, "1111")) == ("", 9, NORMAL)
    assert exec_program(_nest(9, "1111")) == ("", 8, GRACEFUL)


def test_loop_block_is_its_own_scope():
    # EMIT_RUN inside a 3-bit block cannot borrow its count from outside the block
    prog = "1110" + "1" + gamma_code(3) + "011" + "1"
    assert exec_program(prog) == ("", 1, GRACEFUL)


@pytest.mark.parametrize("program, u_out", [
    ("00101", "101"),
    ("110011", ""),
    (pair_encode("0100101100", "1"), "001"),
])
def test_u_eval_examples(program, u_out):
    assert u_eval(program).output == u_out


def test_u_eval_runs_pairs_as_program_on_input():
    q, x = "0100101100", "0110"
    assert u_eval(pair_encode(q, x)) == exec_program(q, x)


# -- caps -------------------------------------------------------------------

def test_cap_examples():
    assert exec_program("00101", cap=2) == ("1", 2, CAP)
    assert exec_program("00101", cap=0) == ("", 0, CAP)
    assert exec_program("00101", cap=4) == ("101", 4, NORMAL)
    assert exec_program("0", cap=0) == ("", 0, GRACEFUL)


def _check_cap_consistency(p, x):
    full = exec_program(p, x)
    for cap in range(full.steps + 2):
        r = exec_program(p, x, cap)
        if r.halt_reason is CAP:
            assert cap < full.steps
            assert r.steps == cap
            assert full.output.startswith(r.output)
        else:
            assert r == full
        if full.steps <= cap:
            assert r.halt_reason is not CAP


def test_cap_consistency_exhaustive_small():
    for n in range(11):
        for p in all_strings(n):
            _check_cap_consistency(p, "01")


@settings(max_examples=300)
@given(bits, st.text(alphabet="01", max_size=8))
def test_cap_consistency_fuzz(p, x):
    _check_cap_consistency(p, x)


# -- global properties ------------------------------------------------------

@settings(max_examples=500)
@given(st.text(alphabet="01", max_size=64), st.text(alphabet="01", max_size=16))
def test_total_deterministic_and_step_floor(p, x):
    r = exec_program(p, x)
    assert r == exec_program(p, x)
    assert r.halt_reason in (NORMAL, GRACEFUL)
    assert r.steps >= len(r.output)


def test_print_bound_exhaustive():
    for n in range(11):
        for z in all_strings(n):
            assert u_eval("00" + z) == (z, 1 + n, NORMAL)


def test_print_bound_random_long():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randint(11, 300)
        z = format(rng.getrandbits(n), f"0{n}b")
        assert u_eval("00" + z) == (z, 1 + n, NORMAL)


# -- decoding, listing, assembly --------------------------------------------

def _walk(block):
    for ins in block:
        yield ins
        yield from _walk(ins.block)


def test_instruction_reencoding_exhaustive():
    for n in range(13):
        for p in all_strings(n):
            for ins in _walk(decode(p)):
                assert ins.encode() == p[ins.offset:ins.offset + ins.bit_width]
                if ins.kind is not Op.TRUNCATED:
                    assert ins.encode() == ins.bits


@pytest.mark.parametrize("program, text", [
    ("00101", 'LIT_REST "101"'),
    ("010010", "EMIT_RUN b=0 c=2"),
    ("1111", "HALT"),
])
def test_disassembly_examples(program, text):
    assert disassemble(program) == f"0000  {text}"


def test_assemble_inverts_disassemble_exhaustive():
    for n in range(13):
        for p in all_strings(n):
            assert assemble(disassemble(p)) == p


@given(st.text(alphabet="01", max_size=60))
def test_assemble_inverts_disassemble_fuzz(p):
    assert assemble(disassemble(p)) == p


@pytest.mark.parametrize("name", sorted(p.stem for p in GOLDEN.glob("*.bits")))
def test_disassembly_golden(name):
    program = (GOLDEN / f"{name}.bits").read_text().strip()
    expected = (GOLDEN / f"{name}.lst").read_text().rstrip("\n")
    assert disassemble(parse_bits(program)) == expected
    assert assemble(expected) == parse_bits(program)
