"""Explicit lower bounds for the Weil height on L(E_tor), in log space.

``theorem13_bound`` evaluates, for a supersingular prime p with local degree
bound dv and base degree [K:Q],

    1/(4^(p^2 dv) + 1) * (log p / (dv (40 sqrt2 + 2) [K:Q] p^(2 p^2 dv + 2)))^(2 + 4/(p^(p^2 dv/4) - 2))

with ``log`` the natural logarithm.  ``prop22_cm_bound`` gives the CM bound
3^-(4d^2 + 4d + 6), d = [L:Q].  Neither is ever materialized as a float.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import mpmath

from .algebra.logspace import DEFAULT_DPS, BigLogReal, Int, Pow, Sum, log_sum_exp, logspace_eval
from .errors import InvalidArgument

LOG_CONVENTION = "natural logarithm for 'log p'"


@dataclass(frozen=True)
class BoundInput:
    p: int
    dv: int
    deg_K: int

    def __post_init__(self):
        problems = []
        if self.dv < 1:
            problems.append("dv >= 1")
        if self.deg_K < 1:
            problems.append("deg_K >= 1")
        if self.p <= max(3, 2 * self.dv):
            problems.append(f"p > max(3, 2*dv) = {max(3, 2 * self.dv)}")
        if problems:
            raise InvalidArgument("violated: " + ", ".join(problems))

    def as_dict(self):
        return {"p": self.p, "dv": self.dv, "deg_K": self.deg_K}


@dataclass(frozen=True)
class HeightBound:
    value: BigLogReal
    formula_id: str
    inputs: dict = field(default_factory=dict)
    exponent: int | None = None  # exact power of 3 for the CM bound

    @property
    def ln(self):
        return self.value.ln

    @property
    def log10(self):
        return self.value.log10

    def as_dict(self, digits=50):
        d = {
            "formula": self.formula_id,
            "inputs": dict(self.inputs),
            "ln": self.value.ln_str(digits),
            "log10": self.value.log10_str(digits),
        }
        if self.exponent is not None:
            d["base"] = 3
            d["exponent"] = self.exponent
        if self.formula_id == "theorem13":
            d["log_convention"] = LOG_CONVENTION
        return d


def theorem13_bound(inp: BoundInput, dps: int = DEFAULT_DPS) -> HeightBound:
    p, dv, deg_K = inp.p, inp.dv, inp.deg_K
    with mpmath.workdps(dps + 20):
        lnp = mpmath.log(p)
        n = p * p * dv
        # ln(4^n + 1)
        ln_first = logspace_eval(Sum(Pow(Int(4), n), Int(1)), dps + 20).ln
        # p^(n/4) - 2 > 0 always holds for p >= 5
        big = mpmath.exp(mpmath.mpf(n) / 4 * lnp)
        if big <= 2:
            raise InvalidArgument("p^(p^2 dv / 4) must exceed 2")
        exponent = 2 + 4 / (big - 2)
        const = dv * (40 * mpmath.sqrt(2) + 2) * deg_K
        ln_inner = mpmath.log(lnp) - mpmath.log(const) - (2 * n + 2) * lnp
        value = -ln_first + exponent * ln_inner
    with mpmath.workdps(dps):
        return HeightBound(BigLogReal(+value, dps), "theorem13", inp.as_dict())


def prop22_cm_bound(d: int, dps: int = DEFAULT_DPS) -> HeightBound:
    if d < 1:
        raise InvalidArgument("d must be >= 1")
    exponent = -(4 * d * d + 4 * d + 6)
    value = logspace_eval(Pow(Int(3), exponent), dps)
    return HeightBound(value, "prop22", {"d": d}, exponent=exponent)


__all__ = [
    "BoundInput",
    "HeightBound",
    "LOG_CONVENTION",
    "log_sum_exp",
    "prop22_cm_bound",
    "theorem13_bound",
]
