"""Acceptance criteria, one test each, all at exact (zero) tolerance.

Each test records a PASS/FAIL line in RESULTS; the lines are printed in
the terminal summary (see conftest.py) and when run as a script.
"""

import dataclasses
import subprocess
import sys
import time
import warnings
from pathlib import Path

from rhtc import catalog
from rhtc.cohomology import cohomology, zero_map
from rhtc.invariants import (
    htc,
    inequality_audit,
    mtc_attempt,
    nil_ker_cup,
    tensor_context,
    toomer_e0,
    verify_theorem,
)
from rhtc.poincare import build_duality_morphisms, choose_omega_complement, detect_pd
from rhtc.retraction import build_homotopy_retraction, verify_retraction

from test_invariants import brute_force_nil_ker

ROOT = Path(__file__).resolve().parent.parent
RESULTS = {}


def record(k, ok, text):
    RESULTS[k] = f"criterion {k}: {'PASS' if ok else 'FAIL'} - {text}"
    print(RESULTS[k])
    assert ok, RESULTS[k]


def coverage_cap(name):
    """2N + top generator degree + 1, the cap at which verdicts are complete."""
    A = catalog.model(name)
    n = detect_pd(cohomology(A, 4 * A.max_generator_degree())).n
    return 2 * n + A.max_generator_degree() + 1


def test_criterion_1_betti():
    cases = [
        ("s2", 6, [1, 0, 1, 0, 0, 0, 0]),
        ("s3", 6, [1, 0, 0, 1, 0, 0, 0]),
        ("cp2", 8, [1, 0, 1, 0, 1, 0, 0, 0, 0]),
    ]
    ok, notes = True, []
    for name, cap, expected in cases:
        t = time.perf_counter()
        got = cohomology(catalog.model(name), cap).betti()
        dt = time.perf_counter() - t
        ok &= got == expected and dt < 1.0
        notes.append(f"{name} {tuple(got)} in {dt * 1000:.0f} ms")
    record(1, ok, "betti numbers: " + "; ".join(notes))


def test_criterion_2_nil_ker():
    expected = {"s2": 2, "s3": 1, "cp2": 4, "s2xs3": 3}
    ok, notes = True, []
    for name, value in expected.items():
        got = nil_ker_cup(catalog.model(name), coverage_cap(name)).value
        oracle = brute_force_nil_ker(name)
        ok &= got == value == oracle
        notes.append(f"{name} {got} (oracle {oracle})")
    record(2, ok, "nil ker ∪: " + ", ".join(notes))


def test_criterion_3_e0():
    expected = {"s2": 1, "s3": 1, "cp2": 2}
    ok, notes = True, []
    for name, value in expected.items():
        rep = toomer_e0(catalog.model(name), coverage_cap(name))
        ok &= rep.value == value
        notes.append(f"{name} {rep.value}")
    record(3, ok, "e0: " + ", ".join(notes))


def test_criterion_4_htc():
    expected = {"s3": 1, "s2": 2, "cp2": 4}
    ok, notes = True, []
    for name, value in expected.items():
        A = catalog.model(name)
        n = detect_pd(cohomology(A, 4 * A.max_generator_degree())).n
        # 2·dim + 4 with dim the formal dimension of the tensor square
        cap = 2 * (2 * n) + 4
        t = time.perf_counter()
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            rep = htc(A, cap)
            nk = nil_ker_cup(A, cap).value
        dt = time.perf_counter() - t
        ok &= rep.value == value == nk and rep.complete and dt < 300
        notes.append(f"{name} {rep.value} = nil ker ∪ {nk} at cap {cap} in {dt:.2f} s")
    record(4, ok, "htc: " + "; ".join(notes))


def test_criterion_5_theorem():
    ok, notes = True, []
    for name in catalog.PD_MODELS:
        A = catalog.model(name)
        cap = coverage_cap(name)
        r = verify_theorem(A, cap)
        h = r.htc.value
        ctx = tensor_context(A, cap)
        # least n with build_homotopy_retraction succeeding (hypotheses enforced)
        least = next(
            n for n in range(0, h + 1)
            if build_homotopy_retraction(ctx.projection(n)[1], cap).success
        )
        witnesses_ok = all(
            verify_retraction(a.retraction.witness, cap).passed for a in r.attempts.values() if a.built
        )
        below = ctx.injectivity(h - 1)
        attempt_below = mtc_attempt(A, h - 1, cap, ctx)
        this = (
            r.verified and r.complete and least == h == r.mtc.value and witnesses_ok
            and not below.injective and below.witness is not None
            and attempt_below.status == "no_retraction_at_cap"
        )
        ok &= this
        notes.append(f"{name} htc = mtc★ = {least} (cap {cap}){'' if this else ' MISMATCH'}")
    record(5, ok, "theorem: " + "; ".join(notes))


def test_criterion_6_duality():
    ok, notes = True, []
    keys = ("omega_sharp_omega_ok", "omega_sharp_d_ok", "chain_map_ok", "phi_chain_map_ok",
            "module_map_ok", "phi_module_map_ok", "quasi_iso_ok")
    for name in catalog.PD_MODELS:
        A = catalog.model(name)
        cap = coverage_cap(name)
        H = cohomology(A, cap)
        n = detect_pd(H, cap).n
        plain = build_duality_morphisms(A, H, choose_omega_complement(A, H, n))
        ctx = tensor_context(A, cap)
        h = htc(A, cap, ctx=ctx, monotonicity=False).value
        rep = build_homotopy_retraction(ctx.projection(h)[1], cap)
        dual = rep.duality.report
        this = all(plain.report[k] for k in keys) and all(dual[k] for k in keys)
        this &= dual["kills_K_ok"] and dual["factorization_ok"]
        ok &= this
        notes.append(f"{name} {'ok' if this else 'FAILED'}")
    record(6, ok, "φ chain/module/quasi-iso, ω♯, φ(K) = 0: " + ", ".join(notes))


def test_criterion_7_inequalities():
    ok, notes = True, []
    for name in catalog.PD_MODELS:
        a = inequality_audit(catalog.model(name), coverage_cap(name))
        this = a.ok and all(i.holds is True for i in a.inequalities) and a.monotone
        ok &= this
        v = a.values
        notes.append(f"{name} {v['nil ker ∪']} ≤ {v['htc']} ≤ 2·{v['e0']}")
    record(7, ok, "nil ker ∪ ≤ htc ≤ 2·e0 and monotone: " + "; ".join(notes))


def test_criterion_8_negative_controls():
    res = detect_pd(cohomology(catalog.square_zero_algebra(), 6))
    refused = not res.is_pd and res.degree == 2 and res.witness == {0: 1}
    s2 = catalog.model("s2")
    ctx = tensor_context(s2, 8)
    w = build_homotopy_retraction(ctx.projection(2)[1], 8).witness
    zero_ret = dataclasses.replace(w, ret=zero_map(w.P, w.A_module))
    zero_psi = dataclasses.replace(w, psi=zero_map(w.P, w.B_module))
    f1 = verify_retraction(zero_ret).failed()
    f2 = verify_retraction(zero_psi).failed()
    ok = refused and verify_retraction(w).passed and f1 == ["ret∘g = id"] and "H(ψ) iso" in f2
    record(8, ok, f"square-zero algebra refused (witness a in degree 2); corrupted witnesses fail at {f1} and {f2}")


def test_criterion_9_determinism():
    cmd = [sys.executable, "-m", "rhtc.cli", "verify-theorem", "models/s2.model", "--cap", "8", "--json"]
    a = subprocess.run(cmd, capture_output=True, cwd=ROOT)
    b = subprocess.run(cmd, capture_output=True, cwd=ROOT)
    ok = a.returncode == b.returncode == 0 and a.stdout == b.stdout and len(a.stdout) > 0
    record(9, ok, f"verify-theorem JSON byte-identical across runs ({len(a.stdout)} bytes)")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
