"""Shared domain types, parameter validation and the built-in function corpus.

All types are immutable value objects; every other module builds on them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np


class ParamError(ValueError):
    """A parameter tuple violates its admissibility constraints."""


class DomainError(ValueError):
    """An evaluation point falls outside a function's declared domain."""


class GateError(RuntimeError):
    """A bound's convexity hypothesis failed the numerical gate.

    Carries the offending witness so callers can distinguish a failed
    hypothesis from a genuine inequality violation.
    """

    def __init__(self, message: str, witness=None, worst_violation: float | None = None):
        super().__init__(message)
        self.witness = witness
        self.worst_violation = worst_violation


class NonFiniteError(ArithmeticError):
    """An integrand or sampled function returned NaN or infinity."""


# Tolerance added on top of the quadrature error estimate when deciding
# whether an inequality holds; absorbs double rounding, never masks a
# genuine violation (those exceed it by orders of magnitude).
HOLDS_SLACK = 1e-12


@dataclass(frozen=True)
class Interval:
    """Integration domain [a, b] with 0 <= a < b."""

    a: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise ParamError(f"interval endpoints must be finite, got [{self.a}, {self.b}]")
        if not 0 <= self.a < self.b:
            raise ParamError(f"interval requires 0 <= a < b, got [{self.a}, {self.b}]")

    @property
    def width(self) -> float:
        return self.b - self.a


@dataclass(frozen=True)
class Params:
    """The tuple (alpha, m, lambda, mu, q) with the Hoelder conjugate derived.

    alpha and m live in (0, 1]; lam and mu are nonnegative weights with
    lam + mu > 0; q >= 1 is the derivative-power exponent.  The conjugate
    p = q/(q-1) only exists for q > 1 and accessing it at q = 1 raises.
    """

    alpha: float = 1.0
    m: float = 1.0
    lam: float = 1.0
    mu: float = 1.0
    q: float = 1.0

    def __post_init__(self):
        for name in ("alpha", "m", "lam", "mu", "q"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ParamError(f"{name} must be finite, got {v}")
        if not 0 < self.alpha <= 1:
            raise ParamError(f"alpha must lie in (0, 1], got {self.alpha}")
        if not 0 < self.m <= 1:
            raise ParamError(f"m must lie in (0, 1], got {self.m}")
        if self.lam < 0 or self.mu < 0:
            raise ParamError(f"weights must be nonnegative, got lam={self.lam}, mu={self.mu}")
        if self.lam + self.mu <= 0:
            raise ParamError("weights must satisfy lam + mu > 0")
        if self.q < 1:
            raise ParamError(f"q must satisfy q >= 1, got {self.q}")

    @property
    def p(self) -> float:
        """Hoelder conjugate q/(q-1); undefined at q = 1."""
        if self.q == 1:
            raise ParamError("conjugate exponent is undefined at q = 1")
        return self.q / (self.q - 1.0)


@dataclass(frozen=True)
class TestFunction:
    """A scalar function paired with its exact derivative.

    f and df must accept scalars and numpy arrays alike; domain_min is the
    largest lower bound above which both are finite (functions are assumed
    finite on [domain_min, inf)).
    """

    __test__ = False  # keep pytest from collecting this as a test class

    id: str
    f: Callable[[float], float]
    df: Callable[[float], float]
    domain_min: float = -math.inf

    def covers(self, x: float) -> bool:
        return x >= self.domain_min

    def require(self, *points: float) -> None:
        for x in points:
            if not self.covers(x):
                raise DomainError(
                    f"{self.id} is not defined at x={x} (domain starts at {self.domain_min})"
                )


@dataclass(frozen=True)
class Config:
    """A validated (params, interval, function) triple."""

    params: Params
    interval: Interval
    fn: TestFunction


@dataclass(frozen=True)
class BoundReport:
    """Outcome of checking one bound: exact LHS vs closed-form RHS."""

    theorem_id: str
    lhs: float
    rhs: float
    slack: float
    holds: bool
    quad_error: float
    branches: dict = field(default_factory=dict)


def make_report(theorem_id: str, lhs: float, rhs: float, quad_error: float,
                branches: dict | None = None) -> BoundReport:
    slack = rhs - lhs
    holds = lhs <= rhs + quad_error + HOLDS_SLACK
    return BoundReport(theorem_id=theorem_id, lhs=lhs, rhs=rhs, slack=slack,
                       holds=holds, quad_error=quad_error, branches=branches or {})


@dataclass(frozen=True)
class CoefficientSet:
    """Named closed-form constants belonging to one bound family."""

    theorem_id: str
    values: dict

    def __post_init__(self):
        for name, v in self.values.items():
            if not math.isfinite(v):
                raise ParamError(f"coefficient {name} is not finite: {v}")
            if v < -1e-12:
                raise ParamError(f"coefficient {name} must be nonnegative, got {v}")

    def __getitem__(self, name: str) -> float:
        return self.values[name]


def validate_params(params: Params, interval: Interval, fn: TestFunction) -> Config:
    """Check that the function's domain covers every point the bounds touch.

    With m <= 1 the stretched endpoints a/m, b/m never fall below a, so the
    binding requirement is that the interval itself starts inside the domain.
    """
    lo = min(interval.a, interval.a / params.m)
    if lo < fn.domain_min:
        raise DomainError(
            f"{fn.id} needs evaluation down to {lo} but is only defined on "
            f"[{fn.domain_min}, inf)"
        )
    return Config(params=params, interval=interval, fn=fn)


# Positive lower bound for corpus members that blow up at the origin.
SINGULAR_EPS = 1e-12


def builtin_corpus() -> list[TestFunction]:
    """The compiled-in function corpus, each with its analytic derivative."""
    return [
        TestFunction("pow2", lambda x: x ** 2, lambda x: 2.0 * x),
        TestFunction("pow3", lambda x: x ** 3, lambda x: 3.0 * x ** 2),
        TestFunction("pow4", lambda x: x ** 4, lambda x: 4.0 * x ** 3),
        TestFunction("pown2", lambda x: x ** -2.0, lambda x: -2.0 * x ** -3.0,
                     domain_min=SINGULAR_EPS),
        TestFunction("recip", lambda x: 1.0 / x, lambda x: -1.0 / x ** 2,
                     domain_min=SINGULAR_EPS),
        TestFunction("exp", np.exp, np.exp),
        TestFunction("xlogx", lambda x: x * np.log(x), lambda x: np.log(x) + 1.0,
                     domain_min=SINGULAR_EPS),
        TestFunction("sinh", np.sinh, np.cosh),
    ]


def corpus_by_id() -> dict[str, TestFunction]:
    return {fn.id: fn for fn in builtin_corpus()}


def power_function(n: int) -> TestFunction:
    """x^n with its derivative, for the mean-comparison propositions."""
    if n == 0:
        raise ParamError("power exponent must be nonzero")
    domain_min = SINGULAR_EPS if n < 0 else 0.0
    return TestFunction(f"pow{n}", lambda x: x ** float(n),
                        lambda x: float(n) * x ** float(n - 1), domain_min=domain_min)


def reflect(fn: TestFunction, interval: Interval) -> TestFunction:
    """The mirrored function x -> f(a+b-x), intended for use on [a, b] only.

    Mirroring turns the original domain's lower bound into an upper bound,
    which TestFunction cannot express; the returned function is therefore
    only declared on the interval it was mirrored across (m = 1 use cases).
    """
    s = interval.a + interval.b
    if fn.domain_min > interval.a:
        raise DomainError(f"{fn.id} does not cover [{interval.a}, {interval.b}]")
    return TestFunction(
        id=f"{fn.id}_reflected",
        f=lambda x: fn.f(s - x),
        df=lambda x: -fn.df(s - x),
        domain_min=interval.a,
    )
