import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from compcx import oracle
from compcx.compressors import (
    BEST,
    CODECS,
    K_DRIVER,
    LITERAL,
    LZ,
    MIN_MATCH,
    Q_LIT,
    best_compress,
    is_compression_function,
    literal_compress,
    lz_compress,
    program_as_compressor,
    rle_compress,
    theorem1_compressor,
)
from compcx.oracle import CeilingError
from compcx.toyvm import all_strings, decode, Op, u_eval

codecs = pytest.mark.parametrize("codec", sorted(CODECS))


def test_literal_examples():
    assert literal_compress("") == "00"
    assert literal_compress("101") == "00101"
    assert u_eval("00101").output == "101"


def test_rle_long_run():
    p = rle_compress("0" * 16)
    assert p == "010000010000"
    assert u_eval(p).output == "0" * 16


def test_rle_falls_back_to_literal():
    assert rle_compress("0110") == "000110"


def test_lz_periodic_short_is_not_worth_it():
    p = lz_compress("01" * 8)
    # EMIT_RUN 0, EMIT_RUN 1 (4 bits each), COPY_BACK d=2 l=14 (2 + 3 + 7)
    assert p == "0101" "0111" "10" "010" "0001110"
    assert len(p) == 20
    assert u_eval(p).output == "01" * 8
    assert best_compress("01" * 8) == literal_compress("01" * 8)


def test_lz_periodic_long():
    p = lz_compress("01" * 32)
    assert p == "0101" "0111" "10" "010" "00000111110"
    assert len(p) == 24
    assert u_eval(p).output == "01" * 32


def test_min_match_threshold():
    # shortest l with 2 + |gamma(1)| + |gamma(l)| < l
    assert MIN_MATCH == 11


def test_lz_output_never_opens_with_a_pair_prefix():
    # U would read a leading 1^a 0 as a pair, so programs must start with 0
    rng = random.Random(3)
    for _ in range(300):
        n = rng.randint(1, 120)
        x = format(rng.getrandbits(n), f"0{n}b")
        for codec in CODECS.values():
            assert codec.compress(x)[0] == "0"


def test_lz_uses_emit_then_chunk_at_start():
    x = "1011001110001011" * 4
    ops = [i.kind for i in decode(lz_compress(x))]
    assert ops == [Op.EMIT_RUN, Op.LIT_CHUNK, Op.COPY_BACK]


@codecs
def test_codec_roundtrip_exhaustive(codec):
    c = CODECS[codec]
    for n in range(13):
        for x in all_strings(n):
            assert u_eval(c.compress(x)).output == x


@codecs
@settings(max_examples=200)
@given(st.text(alphabet="01", max_size=256))
def test_codec_roundtrip_fuzz(codec, x):
    assert u_eval(CODECS[codec].compress(x)).output == x


@given(st.text(alphabet="01", max_size=300))
def test_best_print_bound(x):
    assert len(best_compress(x)) <= len(x) + 2


@given(st.text(alphabet="01", min_size=1, max_size=12), st.integers(min_value=2, max_value=20))
def test_lz_roundtrip_on_repetitions(unit, reps):
    x = unit * reps
    assert u_eval(lz_compress(x)).output == x


def test_codecs_never_beat_kolmogorov():
    for n in range(11):
        for x in all_strings(n):
            c = oracle.complexity(x).value
            for codec in CODECS.values():
                assert len(codec.compress(x)) >= c


def test_best_tie_order_prefers_literal():
    # rle and literal tie at |x| + 2 here; literal is listed first
    x = "01"
    assert len(rle_compress(x)) == len(literal_compress(x))
    assert best_compress(x) == "0001"


# -- oracle-backed compressor ------------------------------------------------

def brute_thm1(m, z):
    t = max(u_eval(p).steps for p in oracle.enumerate_programs(m))
    for p in oracle.enumerate_programs(len(z)):
        r = u_eval(p, t)
        if r.output == z and r.halt_reason.value != "CAP_EXCEEDED":
            return p
    return "00" + z


def test_theorem1_examples():
    assert theorem1_compressor(3)("0") == "000"
    assert theorem1_compressor(3)("000") == "00000"
    assert theorem1_compressor(0)("1") == "001"
    q12 = theorem1_compressor(12)
    assert q12("0" * 16) == oracle.complexity("0" * 16).witness


@pytest.mark.parametrize("m", [0, 2, 4, 6, 8])
def test_theorem1_matches_brute_force(m):
    q = theorem1_compressor(m)
    for n in range(7):
        for z in all_strings(n):
            assert q(z) == brute_thm1(m, z)


def test_theorem1_declared_length():
    for m in range(8):
        assert theorem1_compressor(m).declared_length == len(oracle.busy_beaver(m).p_m) + K_DRIVER
        assert theorem1_compressor(m).declared_length <= m + K_DRIVER


def test_theorem1_refuses_past_ceiling():
    with pytest.raises(CeilingError):
        theorem1_compressor(2)("0" * 19)


# -- programs as compressors -------------------------------------------------

def test_program_as_compressor_q_lit():
    q = program_as_compressor(Q_LIT)
    assert q.declared_length == 10
    assert q.backing == "program"
    for n in range(9):
        assert is_compression_function(q, n)
        for z in all_strings(n):
            assert q(z) == "00" + z


@pytest.mark.parametrize("prog", ["00", ""])
def test_trivial_programs_only_work_for_length_zero(prog):
    q = program_as_compressor(prog)
    assert q("101") == ""
    assert is_compression_function(q, 0)
    for n in range(1, 6):
        assert not is_compression_function(q, n)


def test_is_compression_function_examples():
    for n in range(17):
        assert is_compression_function(LITERAL, n)
    assert not is_compression_function(program_as_compressor("00"), 1)
    assert is_compression_function(theorem1_compressor(2), 4)


def test_is_compression_function_ceilings():
    with pytest.raises(CeilingError):
        is_compression_function(LZ, 17)
    with pytest.raises(CeilingError):
        is_compression_function(program_as_compressor(Q_LIT), 9)


def test_codecs_are_host_backed():
    assert BEST.backing == "host"
    assert BEST.declared_length == K_DRIVER
