"""compcx command line.

Exit codes: 0 success, 1 a check ran and came out false, 2 usage error or a
request the enumeration ceilings refuse.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Any, Optional, Sequence

from compcx import __version__, acceptance, oracle
from compcx.compressors import (
    CODECS,
    is_compression_function,
    program_as_compressor,
    theorem1_compressor,
)
from compcx.oracle import CeilingError
from compcx.theorems import (
    NotACompressionFunction,
    estimate_constants,
    extraction_record,
    verify_theorem1,
    verify_theorem2,
)
from compcx.timebounded import TimeBound, run_distinguisher
from compcx.toyvm import disassemble, exec_program, parse_bits, show_bits, u_eval


class UsageError(Exception):
    pass


def _bits(token: str) -> str:
    try:
        return parse_bits(token)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def parse_grid(spec: str) -> list[tuple[int, int]]:
    """``"0-4:1-5"`` -> every (m, n) with m in 0..4, n in 1..5 and m <= n.

    Several blocks may be joined with commas; a bare number is a one-point range.
    """
    def rng(part: str) -> range:
        lo, _, hi = part.partition("-")
        return range(int(lo), int(hi or lo) + 1)

    grid = set()
    for block in spec.split(","):
        ms, _, ns = block.partition(":")
        if not ns:
            raise UsageError(f"grid block {block!r} must look like M:N or M0-M1:N0-N1")
        grid.update((m, n) for m in rng(ms) for n in rng(ns) if m <= n)
    return sorted(grid)


# ---------------------------------------------------------------------------
# handlers: each returns (payload, ok, text)


def _exec_payload(r) -> dict:
    return {"output": show_bits(r.output), "steps": r.steps, "halt_reason": r.halt_reason.value}


def cmd_vm_run(a):
    r = exec_program(a.program, a.input, a.cap) if not a.u else u_eval(a.program, a.cap)
    p = _exec_payload(r)
    return p, True, f"output: {p['output']}\nsteps: {r.steps}\nhalt: {r.halt_reason.value}"


def cmd_vm_disasm(a):
    text = disassemble(a.program)
    return {"program": show_bits(a.program), "listing": text.splitlines()}, True, text


def cmd_oracle_c(a):
    rec = oracle.complexity(a.x)
    return rec.to_dict(), True, f"C({show_bits(a.x)}) = {rec.value}  witness {show_bits(rec.witness)}"


def cmd_oracle_ct(a):
    if (a.budget is None) == (a.poly is None):
        raise UsageError("give exactly one of --budget or --poly")
    budget = a.budget if a.budget is not None else TimeBound.parse(a.poly)(len(a.x))
    rec = oracle.complexity_time_bounded(a.x, budget)
    flag = "" if rec.within_budget else "  (no program fits the budget; Print fallback)"
    return rec.to_dict(), True, (f"C^{budget}({show_bits(a.x)}) = {rec.value}  "
                                 f"witness {show_bits(rec.witness)}{flag}")


def cmd_oracle_bb(a):
    rec = oracle.busy_beaver(a.m)
    return rec.to_dict(), True, f"BB({a.m}) = {rec.bb}  p_m {show_bits(rec.p_m)}"


def cmd_oracle_aset(a):
    s = oracle.a_set(a.s, a.len)
    return s.to_dict(), True, s.canonical_index


def cmd_oracle_fraction(a):
    f = oracle.incompressible_fraction(a.n)
    return {"n": a.n, "numerator": f.numerator, "denominator": f.denominator,
            "value": float(f)}, True, f"{f} ({float(f):.6f})"


def _codec(a):
    if a.codec == "thm1":
        if a.m is None:
            raise UsageError("--codec thm1 needs --m")
        return theorem1_compressor(a.m)
    return CODECS[a.codec]


def cmd_compress(a):
    c = _codec(a)
    p = c.compress(a.x)
    back = u_eval(p)
    ok = back.output == a.x
    payload = {"codec": c.name, "x": show_bits(a.x), "program": show_bits(p), "length": len(p),
               "input_length": len(a.x), "decompression_steps": back.steps, "roundtrip": ok}
    return payload, ok, f"{show_bits(p)}\n{len(a.x)} -> {len(p)} bits, roundtrip {'ok' if ok else 'FAILED'}"


def cmd_check_cf(a):
    ok = is_compression_function(program_as_compressor(a.q, a.n), a.n)
    return {"q": show_bits(a.q), "n": a.n, "is_compression_function": ok}, ok, str(ok).lower()


def cmd_verify_thm1(a):
    r = verify_theorem1(a.m, a.nmax)
    d = r.to_dict(outcomes=a.outcomes)
    text = (f"m={a.m} n_max={a.nmax} BB={r.bb} |q|={r.declared_length} "
            f"slack={r.corollary_slack} k_min={r.k_min}: {'PASS' if r.passed else 'FAIL'}")
    return d, r.passed, text


def cmd_verify_thm2(a):
    r = verify_theorem2(a.m, a.n, a.qmax)
    d = r.to_dict()
    text = (f"m={a.m} n={a.n} t={r.t} x_adv={show_bits(r.x_adv)} C={r.c_x_adv} "
            f"compression functions={len(r.compression_functions)} violations={len(r.violations)} "
            f"k_min={r.k_min_items}{' (degenerate)' if r.degenerate else ''}: "
            f"{'PASS' if r.mechanism_holds else 'FAIL'}")
    return d, r.mechanism_holds, text


def cmd_verify_constants(a):
    grid = parse_grid(a.grid)
    mc = estimate_constants(grid, a.qmax)
    d = {"grid": [list(g) for g in grid], **mc.to_dict()}
    return d, True, (f"k_print={mc.k_print} k_driver={mc.k_driver} "
                     f"k_min_thm1={mc.k_min_thm1} k_min_thm2={mc.k_min_thm2}")


def cmd_extract(a):
    try:
        e = extraction_record(program_as_compressor(a.q, a.n), a.n, a.m)
    except NotACompressionFunction as err:
        raise UsageError(str(err))
    text = (f"z={show_bits(e.z)} t'={e.t_prime} BB({a.m})={e.bb_m} "
            + (f"expected={show_bits(e.expected)} {'ok' if e.holds else 'MISMATCH'}"
               if e.conditional_applies else "(t' < BB(m): no claim)"))
    return e.to_dict(), e.holds, text


def cmd_distinguish(a):
    r = run_distinguisher(CODECS[a.codec], a.seed_len, a.out_len, a.trials, a.rng_seed)
    text = (f"uniform accept {r.accept_rate_uniform:.3f}  prg accept {r.accept_rate_prg:.3f}  "
            f"advantage {r.advantage:.3f}")
    return r.to_dict(), True, text


def cmd_acceptance(a):
    wanted = sorted(acceptance.CRITERIA) if not a.only else [int(v) for v in a.only.split(",")]
    results, lines = [], []
    for k in wanted:
        if k not in acceptance.CRITERIA:
            raise UsageError(f"no acceptance criterion {k}")
        r = acceptance.run(k)
        results.append(r)
        lines.append(f"[{'PASS' if r['pass'] else 'FAIL'}] {k}. {acceptance.CRITERIA[k][0]}")
    ok = all(r["pass"] for r in results)
    return {"criteria": results, "pass": ok}, ok, "\n".join(lines)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="compcx", description="Compression-complexity laboratory.")
    ap.add_argument("--json", action="store_true", help="emit the JSON report envelope")
    sub = ap.add_subparsers(dest="group", required=True)

    vm = sub.add_parser("vm", help="run or list toy-machine programs").add_subparsers(dest="cmd", required=True)
    p = vm.add_parser("run")
    p.add_argument("--program", type=_bits, required=True)
    p.add_argument("--input", type=_bits, default="")
    p.add_argument("--cap", type=int)
    p.add_argument("--u", action="store_true", help="evaluate U(program) instead of program(input)")
    p.set_defaults(func=cmd_vm_run)
    p = vm.add_parser("disasm")
    p.add_argument("--program", type=_bits, required=True)
    p.set_defaults(func=cmd_vm_disasm)

    orc = sub.add_parser("oracle", help="exact complexity oracles").add_subparsers(dest="cmd", required=True)
    p = orc.add_parser("c")
    p.add_argument("--x", type=_bits, required=True)
    p.set_defaults(func=cmd_oracle_c)
    p = orc.add_parser("ct")
    p.add_argument("--x", type=_bits, required=True)
    p.add_argument("--budget", type=int)
    p.add_argument("--poly", help="a,b,c for the budget a*|x|^b + c")
    p.set_defaults(func=cmd_oracle_ct)
    p = orc.add_parser("bb")
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_oracle_bb)
    p = orc.add_parser("aset")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--len", type=int, required=True)
    p.set_defaults(func=cmd_oracle_aset)
    p = orc.add_parser("fraction")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_oracle_fraction)

    p = sub.add_parser("compress", help="compress a bit string")
    p.add_argument("--codec", choices=[*CODECS, "thm1"], required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--x", type=_bits, required=True)
    p.set_defaults(func=cmd_compress)

    chk = sub.add_parser("check").add_subparsers(dest="cmd", required=True)
    p = chk.add_parser("cf", help="is program q a compression function for length n?")
    p.add_argument("--q", type=_bits, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_check_cf)

    ver = sub.add_parser("verify").add_subparsers(dest="cmd", required=True)
    p = ver.add_parser("thm1")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--outcomes", action="store_true", help="include every per-string outcome")
    p.set_defaults(func=cmd_verify_thm1)
    p = ver.add_parser("thm2")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--qmax", type=int, required=True)
    p.set_defaults(func=cmd_verify_thm2)
    p = ver.add_parser("constants")
    p.add_argument("--grid", required=True, help='e.g. "0-4:1-5" (m range : n range, m <= n)')
    p.add_argument("--qmax", type=int, default=10)
    p.set_defaults(func=cmd_verify_constants)

    p = sub.add_parser("extract-random")
    p.add_argument("--q", type=_bits, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("distinguish")
    p.add_argument("--seed-len", type=int, required=True)
    p.add_argument("--out-len", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--rng-seed", type=int, required=True)
    p.add_argument("--codec", choices=list(CODECS), default="best")
    p.set_defaults(func=cmd_distinguish)

    p = sub.add_parser("acceptance", help="run the exit criteria")
    p.add_argument("--only", help="comma-separated criterion numbers")
    p.set_defaults(func=cmd_acceptance)
    return ap


def _parameters(a: argparse.Namespace) -> dict[str, Any]:
    out = {}
    for k, v in sorted(vars(a).items()):
        if k in ("func", "json", "group", "cmd"):
            continue
        out[k] = show_bits(v) if isinstance(v, str) and k in ("program", "input", "x", "q") else v
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    a = ap.parse_args(argv)
    command = " ".join(c for c in (a.group, getattr(a, "cmd", None)) if c)
    start = time.perf_counter()
    try:
        payload, ok, text = a.func(a)
    except (CeilingError, UsageError, ValueError) as e:
        if a.json:
            print(json.dumps({"tool_version": __version__, "command": command,
                              "parameters": _parameters(a), "error": str(e)}, sort_keys=True))
        print(f"compcx: {e}", file=sys.stderr)
        return 2
    elapsed = time.perf_counter() - start
    if a.json:
        env = {"tool_version": __version__, "command": command, "parameters": _parameters(a),
               "result": payload, "timing": {"seconds": round(elapsed, 6)}}
        print(json.dumps(env, sort_keys=True))
    else:
        print(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
