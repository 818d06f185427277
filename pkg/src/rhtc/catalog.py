"""Small catalog of Sullivan models used in tests and examples."""

from __future__ import annotations

from .cdga import DegreewiseIdeal, FreeCDGA, QuotientCDGA
from .modelfile import load_model

MODEL_TEXT = {
    "s2": "# 2-sphere\ngenerator x 2\ngenerator y 3\nd y = x^2\n",
    "s3": "# 3-sphere\ngenerator x 3\n",
    "cp2": "# complex projective plane\ngenerator x 2\ngenerator y 5\nd y = x^3\n",
    "s2xs3": "# product of a 2-sphere and a 3-sphere\ngenerator x 2\ngenerator y 3\ngenerator z 3\nd y = x^2\n",
    "s3xs3": "# product of two 3-spheres\ngenerator x 3\ngenerator z 3\n",
    # H^{2k} is two-dimensional for every k ≥ 1: no top class, not PD.
    "nonpd": "# cohomology not a Poincaré duality algebra\ngenerator a 2\ngenerator b 2\ngenerator y 3\nd y = a b\n",
}

PD_MODELS = ("s2", "s3", "cp2", "s2xs3", "s3xs3")


def model(name: str) -> FreeCDGA:
    return load_model(MODEL_TEXT[name], source=name)


def sphere(n: int) -> FreeCDGA:
    if n < 2:
        raise ValueError("spheres of dimension at least 2")
    if n % 2:
        return FreeCDGA(["x"], [n])
    mon = (2, 0)
    return FreeCDGA(["x", "y"], [n, 2 * n - 1], {"y": {mon: 1}})


def complex_projective(n: int) -> FreeCDGA:
    """Λ(x₂, y_{2n+1}) with dy = x^{n+1}."""
    if n < 1:
        raise ValueError("n must be positive")
    return FreeCDGA(["x", "y"], [2, 2 * n + 1], {"y": {(n + 1, 0): 1}})


def square_zero_algebra() -> QuotientCDGA:
    """Q ⊕ Qa ⊕ Qb with a, b in degree 2 and all products zero (d = 0)."""
    free = FreeCDGA(["a", "b"], [2, 2])
    ideal = DegreewiseIdeal.monomial(free, lambda m: sum(m) >= 2, "(a,b)^2")
    return QuotientCDGA(free, ideal)
