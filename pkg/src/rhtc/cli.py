"""Command line front end.

    rhtc cohomology s2.model --cap 8
    rhtc verify-theorem s3.model --cap 12 --json

Exit codes: 0 determinate answer, 1 input error, 2 refusal (a hypothesis
fails), 3 undetermined at the cap, 4 the theorem check was violated.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
import warnings
from fractions import Fraction

from .cdga import FreeCDGA, ModelError, format_poly
from .cohomology import ComplexError, cohomology
from .invariants import (
    InvariantReport,
    coverage_ok,
    htc,
    mtc_attempt,
    mtc_sweep,
    nil_ker_cup,
    tensor_context,
    toomer_e0,
    verify_theorem,
)
from .modelfile import parse_model
from .poincare import detect_pd

EXIT_OK, EXIT_INPUT, EXIT_REFUSED, EXIT_UNDETERMINED, EXIT_VIOLATED = 0, 1, 2, 3, 4

COMMANDS = ("cohomology", "pd-check", "cup-length", "e0", "htc", "mtc", "verify-theorem", "retract")


def default_cap(model: FreeCDGA) -> int:
    return 2 * model.max_generator_degree() * 3


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in sorted(x.items(), key=lambda kv: str(kv[0]))}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _model_info(model: FreeCDGA, source: str) -> dict:
    return {
        "source": source,
        "generators": [[n, d] for n, d in zip(model.names, model.degrees)],
        "differential": {n: format_poly(model, model.dgen(i)) for i, n in enumerate(model.names)
                         if model.dgen(i)},
    }


def _from_invariant(rep: InvariantReport) -> dict:
    return {
        "value": rep.value,
        "status": rep.status,
        "complete": rep.complete,
        "witnesses": rep.witnesses,
        "details": rep.details,
    }


def _exit_for(status: str) -> int:
    return {
        "determined": EXIT_OK,
        "verified": EXIT_OK,
        "built": EXIT_OK,
        "no_retraction_at_cap": EXIT_OK,
        "refused": EXIT_REFUSED,
        "violated": EXIT_VIOLATED,
    }.get(status, EXIT_UNDETERMINED)


def run(command: str, model: FreeCDGA, cap: int, budget: int | None = None, n: int | None = None) -> dict:
    """Run one command; returns the report body (without model and timing)."""
    if command == "cohomology":
        H = cohomology(model, cap)
        pd = detect_pd(H, cap)
        complete = pd.is_pd and coverage_ok(H, pd.n, model.max_generator_degree(), cap)
        return {"value": H.betti(), "status": "determined", "complete": complete, "witnesses": [],
                "details": {"representatives": {
                    k: [format_poly(model, model.from_vector(z, k)) for z in H.reps(k)]
                    for k in range(cap + 1) if H.dim(k)}}}
    if command == "pd-check":
        H = cohomology(model, cap)
        pd = detect_pd(H, cap)
        if not pd.is_pd:
            return {"value": None, "status": "refused", "complete": pd.complete,
                    "witnesses": [{"reason": pd.reason, "degree": pd.degree, "class": pd.witness}],
                    "details": {}}
        return {"value": pd.n, "status": "determined", "complete": pd.complete, "witnesses": [],
                "details": {"pairings": pd.pairings}}
    if command == "cup-length":
        return _from_invariant(nil_ker_cup(model, cap))
    if command == "e0":
        return _from_invariant(toomer_e0(model, cap, budget))
    if command == "htc":
        return _from_invariant(htc(model, cap, budget))
    if command == "mtc":
        return _from_invariant(mtc_sweep(model, cap, budget))
    if command == "verify-theorem":
        r = verify_theorem(model, cap, budget)
        if r.status == "refused":
            w = r.refusal
            return {"value": None, "status": "refused", "complete": w.complete,
                    "witnesses": [{"reason": w.reason, "degree": w.degree, "class": w.witness}],
                    "details": {}}
        return {
            "value": {"htc": r.htc.value, "mtc": r.mtc.value},
            "status": r.status,
            "complete": r.complete,
            "witnesses": r.htc.witnesses + r.mtc.witnesses,
            "details": {"htc_sweep": r.htc.details.get("sweep"),
                        "monotone": r.htc.details.get("monotone"),
                        "attempts": {k: a.status for k, a in r.attempts.items()}},
        }
    if command == "retract":
        if n is None:
            raise ValueError("retract needs --n")
        ctx = tensor_context(model, cap)
        a = mtc_attempt(model, n, cap, ctx)
        rep = a.retraction
        details = {"n": n, "injective": a.injective}
        if rep.verification is not None:
            details["checks"] = rep.verification.as_dict()
        if rep.semifree is not None:
            details["semifree_generators"] = [[g.name, g.degree] for g in rep.semifree.P.gens[1:]]
        if rep.duality is not None:
            details["duality"] = {k: v for k, v in rep.duality.report.items() if k.endswith("_ok")}
        value = True if a.built else (False if a.status == "no_retraction_at_cap" else None)
        return {"value": value, "status": a.status, "complete": ctx.complete,
                "witnesses": [], "details": details}
    raise ValueError(f"unknown command {command!r}")


def emit_report(report: dict, fmt: str = "text") -> bytes:
    if fmt == "json":
        return (json.dumps(_jsonable(report), ensure_ascii=False, indent=2, sort_keys=True) + "\n").encode()
    return _text(report).encode()


def _text(r: dict) -> str:
    cmd, status, value = r["command"], r["status"], r["value"]
    lines = []
    if cmd == "verify-theorem" and status != "refused":
        v = value
        if status == "verified":
            lines.append(f"htc = mtc★ = {v['htc']}: VERIFIED")
        else:
            lines.append(f"htc = {v['htc']}, mtc★ = {v['mtc']}: {status.upper()}")
        for k, s in sorted(r["details"]["attempts"].items()):
            lines.append(f"  n = {k}: {s}")
    elif status == "refused":
        w = r["witnesses"][0]
        lines.append(f"refused: {w['reason']}")
        if w.get("class") is not None:
            lines.append(f"  witness class in degree {w['degree']}: {_jsonable(w['class'])}")
    elif cmd == "cohomology":
        lines.append("betti: " + " ".join(str(b) for b in value))
        for k, reps in sorted(r["details"]["representatives"].items()):
            lines.append(f"  H^{k}: " + ", ".join(f"[{p}]" for p in reps))
    elif cmd == "retract":
        lines.append(f"p{r['details']['n']}: {status}")
        for name, ok in r["details"].get("checks", {}).items():
            lines.append(f"  {name}: {'ok' if ok else 'FAILED'}")
    else:
        name = {"pd-check": "formal dimension", "cup-length": "nil ker ∪"}.get(cmd, cmd)
        shown = value if value is not None else status
        lines.append(f"{name} = {shown}")
    lines.append(f"cap {r['cap']}, {'complete' if r['complete'] else 'not certified complete'}")
    if r.get("timing_ms") is not None:
        lines.append(f"time {r['timing_ms']} ms")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rhtc", description="Rational sectional-category invariants of Sullivan models.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("model", help="model file ('-' for stdin)")
    ap.add_argument("--cap", type=int, help="degree cap (default 6 times the top generator degree)")
    ap.add_argument("--json", action="store_true", help="machine-readable output")
    ap.add_argument("--budget", type=int, help="largest n tried in sweeps")
    ap.add_argument("--n", type=int, help="power for retract")
    ap.add_argument("--flag-degree-one", action="store_true", help="allow generators of degree 1")
    ap.add_argument("--timing", action="store_true", help="record wall-clock time in the report")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.model == "-":
            text, source = sys.stdin.read(), "<stdin>"
        else:
            with open(args.model, encoding="utf-8") as fh:
                text = fh.read()
            source = args.model
        model = parse_model(text, args.flag_degree_one, source).algebra()
    except (OSError, ModelError) as exc:
        print(f"rhtc: {exc}", file=sys.stderr)
        return EXIT_INPUT
    cap = default_cap(model) if args.cap is None else args.cap
    if cap < 0 or (args.budget is not None and args.budget < 0):
        print("rhtc: cap and budget must be non-negative", file=sys.stderr)
        return EXIT_INPUT
    start = time.perf_counter()
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            body = run(args.command, model, cap, args.budget, args.n)
    except (ModelError, ComplexError, ValueError) as exc:
        print(f"rhtc: {exc}", file=sys.stderr)
        return EXIT_INPUT
    for w in caught:
        print(f"rhtc: warning: {w.message}", file=sys.stderr)
    elapsed = round((time.perf_counter() - start) * 1000)
    report = {"command": args.command, "model": _model_info(model, source), "cap": cap, **body,
              "timing_ms": elapsed if args.timing else None}
    sys.stdout.buffer.write(emit_report(report, "json" if args.json else "text"))
    sys.stdout.flush()
    return _exit_for(report["status"])


if __name__ == "__main__":
    sys.exit(main())
