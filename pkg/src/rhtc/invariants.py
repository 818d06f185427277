"""Numerical invariants: nil ker ∪, Toomer e₀, htc, mtc attempts, theorem check.

htc(X) is the least n for which the projection
pₙ: ΛV⊗ΛV → ΛV⊗ΛV/(ker μ)^{n+1} is injective on cohomology; mtc★ is the
least n for which the retraction pipeline builds a verified module
retraction of pₙ.  Every value carries the cap it was computed at and a
completeness flag.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cdga import (
    FreeCDGA,
    format_poly,
    ideal_power_basis,
    quotient_by_ideal,
    tensor_square,
    word_length_quotient,
)
from .cohomology import (
    CohomologyData,
    InducedMap,
    cohomology,
    induced_map,
    is_injective_on_H,
)
from .linalg import SpanReducer, rank_kernel_image
from .poincare import detect_pd
from .retraction import RetractionError, build_homotopy_retraction


@dataclass
class InvariantReport:
    name: str
    value: int | None
    cap: int
    complete: bool
    status: str = "determined"  # determined | lower_bound | undetermined_at_cap | refused
    witnesses: list = field(default_factory=list)
    details: dict = field(default_factory=dict)


def default_budget(model: FreeCDGA, cap: int) -> int:
    """2·(formal dimension) when H(ΛV) is PD within cap, else cap."""
    pd = detect_pd(cohomology(model, cap), cap)
    return 2 * pd.n if pd.is_pd else cap


def coverage_ok(H: CohomologyData, top: int, max_gen: int, cap: int) -> bool:
    """H vanishes in (top, cap] and cap ≥ top + max generator degree + 1."""
    if cap < top + max_gen + 1:
        return False
    return all(H.dim(k) == 0 for k in range(top + 1, cap + 1))


def _fmt(alg: FreeCDGA, v, k: int) -> str:
    return format_poly(alg, alg.from_vector(v, k))


# ----- nil ker ----------------------------------------------------------------------


def kernel_powers(Hf: InducedMap, cap: int | None = None) -> list:
    """Degreewise bases of (ker H(f))^m for m = 1, 2, ... until zero.

    Returns a list of dicts degree -> list of class vectors; products
    landing above the window of H are dropped.
    """
    H = Hf.source
    cap = H.hi if cap is None else min(cap, H.hi)
    ker = {}
    for k in range(max(H.lo, 1), cap + 1):
        if H.dim(k) == 0:
            continue
        el = rank_kernel_image(Hf.matrix(k), Hf.target.dim(k + Hf.degree))
        if el.kernel:
            ker[k] = el.kernel
    powers = []
    cur = ker
    while cur:
        powers.append(cur)
        nxt: dict = {}
        for k1, vs in cur.items():
            for k2, ws in ker.items():
                t = k1 + k2
                if t > cap:
                    continue
                red = nxt.setdefault(t, SpanReducer())
                for v in vs:
                    for w in ws:
                        red.insert(H.product(k1, v, k2, w))
        cur = {k: r.basis() for k, r in nxt.items() if r.dim}
    return powers


def nil_ker(Hf: InducedMap, cap: int | None = None) -> int:
    """Least n such that every (n+1)-fold product of kernel classes vanishes."""
    return len(kernel_powers(Hf, cap))


def nil_ker_cup(model: FreeCDGA, cap: int) -> InvariantReport:
    """nil ker of the cup product H(X)⊗H(X) → H(X)."""
    ts = tensor_square(model)
    H = cohomology(model, cap)
    pd = detect_pd(H, cap)
    H2 = cohomology(ts.algebra, cap)
    H1 = cohomology(model, cap)
    Hmu = induced_map(ts.mu, cap, Hs=H2, Ht=H1)
    powers = kernel_powers(Hmu, cap)
    value = len(powers)
    complete = pd.is_pd and coverage_ok(H2, 2 * pd.n, model.max_generator_degree(), cap)
    wit = []
    if powers:
        last = powers[-1]
        k = min(last)
        rep = H2.representative(k, last[k][0])
        wit.append({"degree": k, "class": last[k][0], "cocycle": _fmt(ts.algebra, rep, k)})
    return InvariantReport("nil ker ∪", value, cap, complete, witnesses=wit,
                           details={"kernel power degrees": [sorted(p) for p in powers]})


# ----- e₀ ---------------------------------------------------------------------------


def toomer_e0(model: FreeCDGA, cap: int, budget: int | None = None) -> InvariantReport:
    """Least n with ΛV → ΛV/Λ^{>n}V injective on cohomology in degrees ≤ cap."""
    H = cohomology(model, cap)
    pd = detect_pd(H, cap)
    budget = cap if budget is None else budget
    complete = pd.is_pd and coverage_ok(H, pd.n, model.max_generator_degree(), cap)
    sweep = {}
    wit = []
    for n in range(0, budget + 1):
        Q, p = word_length_quotient(model, n, cap + 1)
        inj = is_injective_on_H(induced_map(p, cap, Hs=H))
        sweep[n] = inj.injective
        if inj.injective:
            return InvariantReport("e0", n, cap, complete, witnesses=wit, details={"sweep": sweep})
        wit = [{"n": n, "degree": inj.degree, "class": inj.witness,
                "cocycle": _fmt(model, inj.cocycle, inj.degree)}]
    return InvariantReport("e0", None, cap, False, "lower_bound", wit,
                           {"sweep": sweep, "lower_bound": budget + 1})


# ----- htc --------------------------------------------------------------------------


@dataclass
class TensorContext:
    """Tensor square, its cohomology and the PD data shared by the sweeps."""

    model: FreeCDGA
    cap: int
    ts: object
    H: CohomologyData
    H2: CohomologyData
    pd: object
    pd2: object
    complete: bool
    _quotients: dict = field(default_factory=dict)

    def projection(self, n: int):
        pr = self._quotients.get(n)
        if pr is None:
            ideal = ideal_power_basis(self.ts, n + 1, self.cap)
            pr = quotient_by_ideal(self.ts.algebra, ideal, self.cap + 1)
            pr[1].name = f"p{n}"
            self._quotients[n] = pr
        return pr

    def injectivity(self, n: int):
        Q, p = self.projection(n)
        return is_injective_on_H(induced_map(p, self.cap, Hs=self.H2))

    def ideal_vanishes(self, n: int) -> bool:
        """(ker μ)^{n+1} is zero in every degree ≤ cap, so pₙ is the identity."""
        Q, p = self.projection(n)
        return all(Q.ideal.dim(k) == 0 for k in range(self.cap + 2))


def tensor_context(model: FreeCDGA, cap: int) -> TensorContext:
    ts = tensor_square(model)
    H = cohomology(model, cap)
    pd = detect_pd(H, cap)
    H2 = cohomology(ts.algebra, cap)
    pd2 = detect_pd(H2, cap)
    complete = pd.is_pd and coverage_ok(H2, 2 * pd.n, model.max_generator_degree(), cap)
    return TensorContext(model, cap, ts, H, H2, pd, pd2, complete)


def htc(model: FreeCDGA, cap: int, budget: int | None = None,
        ctx: TensorContext | None = None, monotonicity: bool = True) -> InvariantReport:
    """Least n with H(pₙ) injective up to cap.

    With ``monotonicity`` the sweep continues past the first success up to
    the budget (or until pₙ is the identity) and checks that injectivity
    never fails again.
    """
    ctx = ctx or tensor_context(model, cap)
    budget = default_budget(model, cap) if budget is None else budget
    sweep = {}
    value = None
    wit = []
    for n in range(0, budget + 1):
        inj = ctx.injectivity(n)
        sweep[n] = inj.injective
        if not inj.injective and value is None:
            wit = [{"n": n, "degree": inj.degree, "class": inj.witness,
                    "cocycle": _fmt(ctx.ts.algebra, inj.cocycle, inj.degree)}]
        if inj.injective and value is None:
            value = n
            if not monotonicity:
                break
        if value is not None and ctx.ideal_vanishes(n):
            break
    mono = all(sweep[m] for m in sweep if value is not None and m >= value)
    details = {"sweep": sweep, "monotone": mono}
    if value is None:
        details["lower_bound"] = budget + 1
        return InvariantReport("htc", None, cap, False, "lower_bound", wit, details)
    return InvariantReport("htc", value, cap, ctx.complete, witnesses=wit, details=details)


# ----- mtc --------------------------------------------------------------------------


@dataclass
class MtcAttempt:
    n: int
    status: str  # built | no_retraction_at_cap | undetermined_at_cap
    injective: bool
    retraction: object  # RetractionReport

    @property
    def built(self) -> bool:
        return self.status == "built"


def mtc_attempt(model: FreeCDGA, n: int, cap: int, ctx: TensorContext | None = None) -> MtcAttempt:
    """Run the retraction pipeline on pₙ and classify the outcome.

    The lift is attempted even when H(pₙ) is not injective; an inconsistent
    system then certifies that no retraction exists at this cap.
    """
    ctx = ctx or tensor_context(model, cap)
    Q, p = ctx.projection(n)
    rep = build_homotopy_retraction(p, cap, enforce_hypotheses=False)
    status = rep.status
    if status == "verification_failed":
        raise RetractionError(f"witness for p{n} failed verification: {rep.verification.failed()}")
    return MtcAttempt(n, status, rep.injectivity.injective, rep)


def mtc_sweep(model: FreeCDGA, cap: int, budget: int | None = None,
              ctx: TensorContext | None = None) -> InvariantReport:
    """mtc★ = least n with a verified retraction of pₙ; never inferred from failure."""
    ctx = ctx or tensor_context(model, cap)
    budget = default_budget(model, cap) if budget is None else budget
    attempts = {}
    for n in range(0, budget + 1):
        a = mtc_attempt(model, n, cap, ctx)
        attempts[n] = a
        if a.built:
            return InvariantReport(
                "mtc", n, cap, ctx.complete, witnesses=[_attempt_summary(a)],
                details={"attempts": {m: x.status for m, x in attempts.items()}},
            )
        if a.status == "undetermined_at_cap":
            return InvariantReport(
                "mtc", None, cap, False, "undetermined_at_cap", [_attempt_summary(a)],
                details={"attempts": {m: x.status for m, x in attempts.items()}},
            )
    return InvariantReport("mtc", None, cap, False, "lower_bound", [],
                           {"attempts": {m: x.status for m, x in attempts.items()},
                            "lower_bound": budget + 1})


def _attempt_summary(a: MtcAttempt) -> dict:
    rep = a.retraction
    out = {"n": a.n, "status": a.status}
    if rep.semifree is not None:
        out["semifree_generators"] = [(g.name, g.degree) for g in rep.semifree.P.gens[1:]]
    if rep.verification is not None:
        out["checks"] = rep.verification.as_dict()
    if rep.lift is not None:
        out["system"] = {"unknowns": rep.lift.unknowns, "equations": rep.lift.equations}
    if not a.injective and rep.injectivity is not None:
        out["kernel_degree"] = rep.injectivity.degree
        out["kernel_class"] = rep.injectivity.witness
    return out


# ----- theorem ------------------------------------------------------------------------


@dataclass
class TheoremReport:
    status: str  # verified | refused | inconclusive | violated
    cap: int
    htc: InvariantReport | None = None
    mtc: InvariantReport | None = None
    attempts: dict = field(default_factory=dict)
    refusal: object = None
    complete: bool = False

    @property
    def verified(self) -> bool:
        return self.status == "verified"


def verify_theorem(model: FreeCDGA, cap: int, budget: int | None = None) -> TheoremReport:
    """Compute htc and mtc★ independently and compare them.

    Refuses when H(ΛV) (and so H(ΛV⊗ΛV)) is not a PD algebra.  Every
    attempt below mtc★ must end in a certified failure, otherwise the
    report is inconclusive.
    """
    ctx = tensor_context(model, cap)
    if not ctx.pd.is_pd:
        return TheoremReport("refused", cap, refusal=ctx.pd)
    if not ctx.pd2.is_pd:
        return TheoremReport("refused", cap, refusal=ctx.pd2)
    budget = default_budget(model, cap) if budget is None else budget
    h = htc(model, cap, budget, ctx)
    attempts = {}
    m = None
    for n in range(0, budget + 1):
        a = mtc_attempt(model, n, cap, ctx)
        attempts[n] = a
        if a.built:
            m = n
            break
        if a.status != "no_retraction_at_cap":
            break
    mrep = InvariantReport(
        "mtc", m, cap, ctx.complete if m is not None else False,
        "determined" if m is not None else "undetermined_at_cap",
        [_attempt_summary(a) for a in attempts.values()],
    )
    out = TheoremReport("inconclusive", cap, h, mrep, attempts, complete=ctx.complete)
    if h.value is None or m is None:
        return out
    sound = all(not a.injective for n, a in attempts.items() if n < m)
    if h.value == m and sound:
        out.status = "verified"
    else:
        out.status = "violated"
    return out


# ----- inequalities -------------------------------------------------------------------


@dataclass
class Inequality:
    statement: str
    lhs: int | None
    rhs: int | None
    holds: bool | None  # None when a side is unknown


@dataclass
class AuditReport:
    values: dict
    inequalities: list
    monotone: bool

    @property
    def violated(self) -> list:
        return [i for i in self.inequalities if i.holds is False] + (
            [] if self.monotone else [Inequality("monotonicity of H(pₙ)-injectivity", None, None, False)]
        )

    @property
    def ok(self) -> bool:
        return not self.violated


def inequality_audit(model: FreeCDGA, cap: int, budget: int | None = None) -> AuditReport:
    """Check nil ker ∪ ≤ htc ≤ 2·e₀ and monotonicity of the htc sweep."""
    ctx = tensor_context(model, cap)
    budget = default_budget(model, cap) if budget is None else budget
    nk = nil_ker_cup(model, cap).value
    h = htc(model, cap, budget, ctx)
    e = toomer_e0(model, cap, budget).value
    vals = {"nil ker ∪": nk, "htc": h.value, "e0": e}

    def le(name, a, b):
        return Inequality(name, a, b, None if a is None or b is None else a <= b)

    ineqs = [
        le("nil ker ∪ ≤ htc", nk, h.value),
        le("htc ≤ 2·e0", h.value, None if e is None else 2 * e),
    ]
    return AuditReport(vals, ineqs, h.details["monotone"])
