import itertools
from fractions import Fraction

import pytest

from rhtc import catalog
from rhtc.invariants import (
    htc,
    inequality_audit,
    mtc_attempt,
    mtc_sweep,
    nil_ker_cup,
    tensor_context,
    toomer_e0,
    verify_theorem,
)

# ----- brute-force oracle on hand-written cohomology rings ------------------------

# basis: list of (name, degree); product table: (i, j) -> {k: coefficient}
RINGS = {
    "s2": ([("1", 0), ("x", 2)], {}),
    "s3": ([("1", 0), ("x", 3)], {}),
    "cp2": ([("1", 0), ("x", 2), ("x2", 4)], {(1, 1): {2: 1}}),
    "s2xs3": ([("1", 0), ("x", 2), ("z", 3), ("xz", 5)], {(1, 2): {3: 1}, (2, 1): {3: 1}}),
    "s3xs3": ([("1", 0), ("x", 3), ("z", 3), ("xz", 6)], {(1, 2): {3: 1}, (2, 1): {3: -1}}),
}


def ring_mul(ring, i, j):
    basis, table = ring
    if i == 0:
        return {j: 1}
    if j == 0:
        return {i: 1}
    return table.get((i, j), {})


def tensor_mul(ring, u, v):
    """(a⊗b)(c⊗d) = (−1)^{|b||c|} ac ⊗ bd on dicts {(i, j): coef}."""
    basis = ring[0]
    out = {}
    for (a, b), s in u.items():
        for (c, d), t in v.items():
            sign = -1 if (basis[b][1] * basis[c][1]) % 2 else 1
            for p, x in ring_mul(ring, a, c).items():
                for q, y in ring_mul(ring, b, d).items():
                    key = (p, q)
                    out[key] = out.get(key, 0) + sign * s * t * x * y
    return {k: v for k, v in out.items() if v}


def nullspace(rows, ncols):
    """Exact nullspace by plain Gauss-Jordan on Fractions."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        m[r] = [x / m[r][c] for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -m[i][f]
        out.append(v)
    return out


def brute_force_nil_ker(name):
    ring = RINGS[name]
    basis = ring[0]
    pairs = [(i, j) for i in range(len(basis)) for j in range(len(basis))]
    kernel = []
    degs = sorted({basis[i][1] + basis[j][1] for i, j in pairs})
    for deg in degs:
        cols = [p for p in pairs if basis[p[0]][1] + basis[p[1]][1] == deg]
        # multiplication H⊗H → H restricted to this degree
        targets = sorted({k for p in cols for k in ring_mul(ring, *p)})
        rows = [[ring_mul(ring, *p).get(t, 0) for p in cols] for t in targets]
        for v in nullspace(rows, len(cols)):
            elt = {p: c for p, c in zip(cols, v) if c}
            if elt:
                kernel.append(elt)
    n = 0
    while True:
        nonzero = any(
            _product(ring, tup) for tup in itertools.product(kernel, repeat=n + 1)
        )
        if not nonzero:
            return n
        n += 1


def _product(ring, tup):
    out = {(0, 0): 1}
    for e in tup:
        out = tensor_mul(ring, out, e)
        if not out:
            return {}
    return out


EXPECTED_NIL = {"s2": 2, "s3": 1, "cp2": 4, "s2xs3": 3, "s3xs3": 2}
CAPS = {"s2": 8, "s3": 10, "cp2": 14, "s2xs3": 14, "s3xs3": 16}


@pytest.mark.parametrize("name", sorted(EXPECTED_NIL))
def test_brute_force_oracle_values(name):
    assert brute_force_nil_ker(name) == EXPECTED_NIL[name]


@pytest.mark.parametrize("name", sorted(EXPECTED_NIL))
def test_nil_ker_matches_oracle(name):
    rep = nil_ker_cup(catalog.model(name), CAPS[name])
    assert rep.value == brute_force_nil_ker(name)
    assert rep.complete


def test_s2_diagonal_square():
    ring = RINGS["s2"]
    d = {(1, 0): 1, (0, 1): -1}
    assert tensor_mul(ring, d, d) == {(1, 1): -2}
    assert tensor_mul(ring, tensor_mul(ring, d, d), d) == {}


def test_cp2_fourth_power():
    ring = RINGS["cp2"]
    d = {(1, 0): 1, (0, 1): -1}
    p = {(0, 0): 1}
    for _ in range(4):
        p = tensor_mul(ring, p, d)
    assert p == {(2, 2): 6}


# ----- e₀ ------------------------------------------------------------------------


@pytest.mark.parametrize("name, value", [("s2", 1), ("s3", 1), ("cp2", 2), ("s2xs3", 2), ("s3xs3", 2)])
def test_e0(name, value):
    rep = toomer_e0(catalog.model(name), CAPS[name])
    assert rep.value == value and rep.complete


def test_e0_cp2_witness(cp2):
    rep = toomer_e0(cp2, 14)
    # [x^2] dies in the word-length-1 quotient
    assert rep.witnesses[0]["n"] == 1 and rep.witnesses[0]["degree"] == 4


def test_e0_budget_exhausted(cp2):
    rep = toomer_e0(cp2, 14, budget=1)
    assert rep.value is None and rep.status == "lower_bound"


# ----- htc and mtc -------------------------------------------------------------------


@pytest.mark.parametrize("name, value", [("s3", 1), ("s2", 2), ("cp2", 4), ("s2xs3", 3), ("s3xs3", 2)])
def test_htc(name, value):
    rep = htc(catalog.model(name), CAPS[name])
    assert rep.value == value
    assert rep.complete and rep.details["monotone"]


def test_htc_s3_witness(s3):
    rep = htc(s3, 10)
    w = rep.witnesses[0]
    assert w["n"] == 0 and w["degree"] == 3
    assert w["cocycle"] in ("x - x'", "-x + x'")


def test_htc_budget(cp2):
    rep = htc(cp2, 14, budget=2)
    assert rep.value is None and rep.details["lower_bound"] == 3


def test_cap_too_small_not_complete(s2):
    assert not htc(s2, 6).complete


@pytest.mark.parametrize("n, status", [(1, "built"), (0, "no_retraction_at_cap")])
def test_mtc_attempt_s3(s3, n, status):
    assert mtc_attempt(s3, n, 10).status == status


@pytest.mark.parametrize("n, status", [(2, "built"), (1, "no_retraction_at_cap")])
def test_mtc_attempt_s2(s2, n, status):
    a = mtc_attempt(s2, n, 8)
    assert a.status == status
    if a.built:
        assert a.retraction.verification.passed


def test_soundness_coupling(s2):
    ctx = tensor_context(s2, 8)
    h = htc(s2, 8, ctx=ctx).value
    for n in range(0, 4):
        a = mtc_attempt(s2, n, 8, ctx)
        if a.built:
            assert h <= n
        if n < h:
            assert a.status == "no_retraction_at_cap"


def test_mtc_sweep(s2):
    assert mtc_sweep(s2, 8).value == 2


# ----- theorem and audit ----------------------------------------------------------------


@pytest.mark.parametrize("name", ["s3", "s2"])
def test_verify_theorem(name):
    r = verify_theorem(catalog.model(name), CAPS[name])
    assert r.verified
    assert r.htc.value == r.mtc.value


def test_verify_theorem_refuses_non_pd():
    r = verify_theorem(catalog.model("nonpd"), 8)
    assert r.status == "refused"
    assert r.refusal.witness is not None


@pytest.mark.parametrize("name, chain", [("s2", (2, 2, 1)), ("s3", (1, 1, 1)), ("cp2", (4, 4, 2))])
def test_inequality_audit(name, chain):
    a = inequality_audit(catalog.model(name), CAPS[name])
    assert a.ok
    assert (a.values["nil ker ∪"], a.values["htc"], a.values["e0"]) == chain
