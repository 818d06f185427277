"""Text format for Sullivan models.

    # 2-sphere
    generator x 2
    generator y 3
    d y = x^2

A polynomial is a sum of terms ``coef * mon`` or ``mon``; coefficients are
integers or ``p/q``; a monomial is ``g1^e1 g2^e2 ...`` (``^1`` optional,
factors may also be joined with ``*``).  Generators without a ``d`` line
are cocycles.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .cdga import FreeCDGA, ModelError, format_poly


class ModelSyntaxError(ModelError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass
class ModelFile:
    names: list
    degrees: list
    differential: dict  # name -> {monomial tuple: Fraction}
    positions: dict = field(default_factory=dict)  # name -> (line, column)
    source: str | None = None
    allow_degree_one: bool = False
    _algebra: FreeCDGA | None = field(default=None, repr=False)

    def algebra(self) -> FreeCDGA:
        if self._algebra is None:
            self._algebra = FreeCDGA(
                self.names, self.degrees, self.differential, allow_degree_one=self.allow_degree_one
            )
        return self._algebra


_NAME = r"[A-Za-z_][A-Za-z0-9_']*"
_TOKEN = re.compile(
    rf"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>{_NAME})|(?P<op>[-+*^]))"
)


def _tokenize(text: str, line: int, col0: int):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ModelSyntaxError(f"unexpected character {text[bad]!r}", line, col0 + bad + 1)
        kind = m.lastgroup
        start = m.start(kind)
        out.append((kind, m.group(kind), col0 + start + 1))
        pos = m.end()
    return out


def _parse_poly(text: str, line: int, col0: int, index: dict, degrees: list, odd: list) -> dict:
    toks = _tokenize(text, line, col0)
    if not toks:
        raise ModelSyntaxError("empty polynomial", line, col0 + 1)
    ngens = len(index)
    poly: dict = {}
    i = 0

    def peek():
        return toks[i] if i < len(toks) else (None, None, col0 + len(text) + 1)

    while i < len(toks):
        sign = 1
        while peek()[0] == "op" and peek()[1] in "+-":
            if peek()[1] == "-":
                sign = -sign
            i += 1
        coef = Fraction(sign)
        kind, val, col = peek()
        if kind == "num":
            coef *= Fraction(val)
            i += 1
            if peek()[0] == "op" and peek()[1] == "*":
                i += 1
        exps = [0] * ngens
        seen_factor = False
        while peek()[0] == "name":
            _, name, col = peek()
            if name not in index:
                raise ModelSyntaxError(f"unknown generator {name!r}", line, col)
            i += 1
            e = 1
            if peek()[0] == "op" and peek()[1] == "^":
                i += 1
                k2, v2, c2 = peek()
                if k2 != "num" or "/" in v2:
                    raise ModelSyntaxError("expected an exponent", line, c2)
                e = int(v2)
                i += 1
            exps[index[name]] += e
            seen_factor = True
            if peek()[0] == "op" and peek()[1] == "*":
                i += 1
                if peek()[0] != "name":
                    raise ModelSyntaxError("expected a generator after '*'", line, peek()[2])
        if not seen_factor and kind != "num":
            raise ModelSyntaxError("expected a term", line, peek()[2])
        if peek()[0] is not None and not (peek()[0] == "op" and peek()[1] in "+-"):
            raise ModelSyntaxError(f"unexpected {peek()[1]!r}", line, peek()[2])
        if any(e > 1 and o for e, o in zip(exps, odd)):
            continue  # square of an odd generator is zero
        mon = tuple(exps)
        s = poly.get(mon, 0) + coef
        if s:
            poly[mon] = s
        else:
            poly.pop(mon, None)
    return poly


def parse_model(text: str, allow_degree_one: bool = False, source: str | None = None) -> ModelFile:
    """Parse a model file and check d∘d = 0 on every generator."""
    names: list = []
    degrees: list = []
    positions: dict = {}
    pending = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        stripped = line.strip()
        if not stripped:
            continue
        col0 = len(line) - len(line.lstrip())
        words = stripped.split()
        head = words[0]
        if head == "generator":
            if len(words) != 3:
                raise ModelSyntaxError("expected 'generator <name> <degree>'", ln, col0 + 1)
            name, deg = words[1], words[2]
            ncol = line.index(name, col0 + len(head)) + 1
            if not re.fullmatch(_NAME, name):
                raise ModelSyntaxError(f"invalid generator name {name!r}", ln, ncol)
            if name in positions:
                raise ModelSyntaxError(f"duplicate generator {name!r}", ln, ncol)
            dcol = line.rindex(deg) + 1
            if not re.fullmatch(r"-?\d+", deg):
                raise ModelSyntaxError(f"degree must be an integer, got {deg!r}", ln, dcol)
            d = int(deg)
            if d <= 0:
                raise ModelSyntaxError(f"generator {name} has degree {d}; degrees must be positive", ln, dcol)
            if d == 1 and not allow_degree_one:
                raise ModelSyntaxError(
                    f"generator {name} has degree 1 (use --flag-degree-one to allow it)", ln, dcol
                )
            names.append(name)
            degrees.append(d)
            positions[name] = (ln, ncol)
        elif head == "d":
            eq = line.find("=")
            if eq < 0:
                raise ModelSyntaxError("expected 'd <name> = <poly>'", ln, col0 + 1)
            lhs = line[col0 + 1 : eq].split()
            if len(lhs) != 1:
                raise ModelSyntaxError("expected a single generator before '='", ln, col0 + 2)
            pending.append((ln, line.index(lhs[0], col0 + 1) + 1, lhs[0], eq + 1, line[eq + 1 :]))
        else:
            raise ModelSyntaxError(f"unknown directive {head!r}", ln, col0 + 1)
    index = {n: i for i, n in enumerate(names)}
    odd = [d % 2 == 1 for d in degrees]
    diff: dict = {}
    for ln, ncol, name, eqcol, rhs in pending:
        if name not in index:
            raise ModelSyntaxError(f"d of unknown generator {name!r}", ln, ncol)
        if name in diff:
            raise ModelSyntaxError(f"second differential for {name!r}", ln, ncol)
        poly = _parse_poly(rhs, ln, eqcol, index, degrees, odd)
        want = degrees[index[name]] + 1
        for mon in poly:
            deg = sum(e * g for e, g in zip(mon, degrees))
            if deg != want:
                raise ModelSyntaxError(
                    f"d {name} must have degree {want}, found a term of degree {deg}", ln, eqcol + 1
                )
        diff[name] = poly
    mf = ModelFile(names, degrees, diff, positions, source, allow_degree_one)
    mf.algebra()
    return mf


def load_model(text: str, allow_degree_one: bool = False, source: str | None = None) -> FreeCDGA:
    return parse_model(text, allow_degree_one, source).algebra()


def emit_model(model: FreeCDGA, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.append(f"# {comment}")
    for n, d in zip(model.names, model.degrees):
        lines.append(f"generator {n} {d}")
    for i, n in enumerate(model.names):
        p = model.dgen(i)
        if p:
            lines.append(f"d {n} = {format_poly(model, p)}")
    return "\n".join(lines) + "\n"
