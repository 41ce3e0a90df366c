"""Exact LHS evaluation and every closed-form RHS, plus the identity check.

Each ``bound_*`` operation pairs the quadrature LHS with one theorem's RHS
and returns a BoundReport; ``verify`` dispatches by theorem id after gating
the bound's convexity hypothesis.  RHS-only helpers (``*_rhs``) are exposed
separately so the means module can compare against them without integrating.
"""

from __future__ import annotations

from dataclasses import dataclass

from .convexity import ConvexityVerdict, check_alpha_m_convex, derivative_power
from .coefficients import K_factors, M_factors, gamma_coeffs, mu_factors, nu_coeffs
from .core import (BoundReport, GateError, Interval, ParamError, Params,
                   TestFunction, make_report, validate_params)
from .quadrature import integrate

DEFAULT_LHS_TOL = 1e-9

THEOREM_IDS = ("da", "sso", "bop_m", "bop_am", "thm11", "thm211", "thm22")


@dataclass(frozen=True)
class Deviation:
    """The weighted trapezoid deviation: |(lam f(a) + mu f(b))/(lam+mu) - integral mean|."""

    weighted_endpoint_value: float
    integral_mean: float
    lhs_abs: float
    quad_error: float


def integral_mean(fn: TestFunction, iv: Interval, tol: float = DEFAULT_LHS_TOL):
    res = integrate(fn.f, iv, tol=tol)
    return res.value / iv.width, res.error_estimate / iv.width


def deviation(fn: TestFunction, iv: Interval, lam: float, mu: float,
              tol: float = DEFAULT_LHS_TOL) -> Deviation:
    if lam < 0 or mu < 0 or lam + mu <= 0:
        raise ParamError(f"weights must be nonnegative with lam + mu > 0, got {lam}, {mu}")
    fn.require(iv.a)
    endpoint = (lam * fn.f(iv.a) + mu * fn.f(iv.b)) / (lam + mu)
    mean, err = integral_mean(fn, iv, tol)
    return Deviation(weighted_endpoint_value=endpoint, integral_mean=mean,
                     lhs_abs=abs(endpoint - mean), quad_error=err)


def lemma21_residual(fn: TestFunction, iv: Interval, lam: float, mu: float,
                     tol: float = 1e-10) -> float:
    """|LHS - RHS| of the weighted trapezoid identity.

    The right side rewrites the deviation as a kernel-weighted integral of
    f' over [0, 1]; both sides are evaluated by independent quadratures and
    the residual should sit at the combined quadrature noise level.
    """
    dev = deviation(fn, iv, lam, mu, tol=tol)
    lhs = dev.weighted_endpoint_value - dev.integral_mean
    total = lam + mu
    a, b = iv.a, iv.b

    def integrand(t):
        return (total * t - lam) * fn.df(t * b + (1.0 - t) * a)

    res = integrate(integrand, (0.0, 1.0), tol=tol, breakpoints=(lam / total,))
    rhs = iv.width / total * res.value
    return abs(lhs - rhs)


def bound_hh(fn: TestFunction, iv: Interval) -> tuple[float, float]:
    """The classical two-sided bracket for convex f: midpoint value and
    endpoint average; the integral mean lies between them."""
    fn.require(iv.a)
    mid = 0.5 * (iv.a + iv.b)
    return float(fn.f(mid)), 0.5 * (float(fn.f(iv.a)) + float(fn.f(iv.b)))


# ---------------------------------------------------------------------------
# RHS evaluators (no quadrature) -- one per bound family.

def da_rhs(fn: TestFunction, iv: Interval) -> float:
    fn.require(iv.a)
    return iv.width / 8.0 * (abs(fn.df(iv.a)) + abs(fn.df(iv.b)))


def sso_rhs(fn: TestFunction, iv: Interval, alpha: float, m: float) -> tuple[float, dict]:
    a, b = iv.a, iv.b
    fn.require(a, b, a / m, b / m)
    branch1 = (fn.f(a) + alpha * m * fn.f(b / m)) / (alpha + 1.0)
    branch2 = (fn.f(b) + alpha * m * fn.f(a / m)) / (alpha + 1.0)
    return min(branch1, branch2), {"branch1": branch1, "branch2": branch2}


def bop_m_rhs(fn: TestFunction, iv: Interval, m: float, q: float) -> tuple[float, dict]:
    coeffs = mu_factors(fn, iv, m, q)
    spread = coeffs["mu1"] ** (1.0 / q) + coeffs["mu2"] ** (1.0 / q)
    loose = iv.width / 4.0 * spread
    tight = loose * ((q - 1.0) / (2.0 * q - 1.0)) ** ((q - 1.0) / q)
    return tight, {"loose": loose, "mu1": coeffs["mu1"], "mu2": coeffs["mu2"]}


def bop_am_rhs(fn: TestFunction, iv: Interval, alpha: float, m: float,
               q: float) -> tuple[float, dict]:
    a, b = iv.a, iv.b
    fn.require(a, b, a / m, b / m)
    coeffs = nu_coeffs(alpha)
    nu1, nu2 = coeffs["nu1"], coeffs["nu2"]
    da_, db_ = abs(fn.df(a)) ** q, abs(fn.df(b)) ** q
    dam = abs(fn.df(a / m)) ** q
    dbm = abs(fn.df(b / m)) ** q
    branch1 = (nu1 * da_ + m * nu2 * dbm) ** (1.0 / q)
    branch2 = (nu1 * db_ + m * nu2 * dam) ** (1.0 / q)
    rhs = iv.width / 2.0 * 0.5 ** (1.0 - 1.0 / q) * min(branch1, branch2)
    return rhs, {"branch1": branch1, "branch2": branch2}


def thm11_rhs(fn: TestFunction, iv: Interval, p: Params) -> tuple[float, dict]:
    a, b = iv.a, iv.b
    m, q, lam, mu = p.m, p.q, p.lam, p.mu
    fn.require(a, b, a / m, b / m)
    g = gamma_coeffs(p.alpha, lam, mu)
    db_ = abs(fn.df(b)) ** q
    da_ = abs(fn.df(a)) ** q
    dam = abs(fn.df(a / m)) ** q
    dbm = abs(fn.df(b / m)) ** q
    branch1 = g["gamma1"] * db_ + m * g["gamma2"] * dam
    branch2 = g["gamma3"] * da_ + m * g["gamma4"] * dbm
    total = lam + mu
    if q == 1:
        # Direct linear combination; avoids the 0-exponent edge of the q>1 form.
        rhs = iv.width / total * min(branch1, branch2)
    else:
        half_weight = (lam ** 2 + mu ** 2) / (2.0 * total)
        rhs = (iv.width / total * half_weight ** ((q - 1.0) / q)
               * min(branch1, branch2) ** (1.0 / q))
    return rhs, {"branch1": branch1, "branch2": branch2}


def thm211_rhs(fn: TestFunction, iv: Interval, p: Params) -> tuple[float, dict]:
    conj = p.p  # raises ParamError at q = 1
    coeffs = M_factors(fn, iv, p.alpha, p.m, p.lam, p.mu, p.q)
    total = p.lam + p.mu
    rhs = (iv.width / total ** 2 * (1.0 / (conj + 1.0)) ** (1.0 / conj)
           * (p.lam ** 2 * coeffs["M1"] ** (1.0 / p.q)
              + p.mu ** 2 * coeffs["M2"] ** (1.0 / p.q)))
    return rhs, {"M1": coeffs["M1"], "M2": coeffs["M2"]}


def thm22_rhs(fn: TestFunction, iv: Interval, p: Params) -> tuple[float, dict]:
    conj = p.p
    coeffs = K_factors(fn, iv, p.alpha, p.m, p.q)
    total = p.lam + p.mu
    kernel = ((p.lam ** (conj + 1.0) + p.mu ** (conj + 1.0))
              / ((conj + 1.0) * total)) ** (1.0 / conj)
    rhs = (iv.width / total * kernel * (1.0 / (p.alpha + 1.0)) ** (1.0 / p.q)
           * min(coeffs["K1"], coeffs["K2"]) ** (1.0 / p.q))
    return rhs, {"K1": coeffs["K1"], "K2": coeffs["K2"]}


# ---------------------------------------------------------------------------
# Full bound checks (LHS quadrature + RHS closed form).

def bound_da(fn: TestFunction, iv: Interval, tol: float = DEFAULT_LHS_TOL) -> BoundReport:
    dev = deviation(fn, iv, 1.0, 1.0, tol=tol)
    return make_report("da", dev.lhs_abs, da_rhs(fn, iv), dev.quad_error)


def bound_sso(fn: TestFunction, iv: Interval, alpha: float, m: float,
              tol: float = DEFAULT_LHS_TOL) -> BoundReport:
    mean, err = integral_mean(fn, iv, tol)
    rhs, branches = sso_rhs(fn, iv, alpha, m)
    return make_report("sso", mean, rhs, err, branches)


def bound_bop_m(fn: TestFunction, iv: Interval, m: float, q: float,
                tol: float = DEFAULT_LHS_TOL) -> BoundReport:
    dev = deviation(fn, iv, 1.0, 1.0, tol=tol)
    rhs, branches = bop_m_rhs(fn, iv, m, q)
    return make_report("bop_m", dev.lhs_abs, rhs, dev.quad_error, branches)


def bound_bop_am(fn: TestFunction, iv: Interval, alpha: float, m: float, q: float,
                 tol: float = DEFAULT_LHS_TOL) -> BoundReport:
    dev = deviation(fn, iv, 1.0, 1.0, tol=tol)
    rhs, branches = bop_am_rhs(fn, iv, alpha, m, q)
    return make_report("bop_am", dev.lhs_abs, rhs, dev.quad_error, branches)


def bound_thm11(fn: TestFunction, iv: Interval, p: Params,
                tol: float = DEFAULT_LHS_TOL) -> BoundReport:
    dev = deviation(fn, iv, p.lam, p.mu, tol=tol)
    rhs, branches = thm11_rhs(fn, iv, p)
    return make_report("thm11", dev.lhs_abs, rhs, dev.quad_error, branches)


def bound_thm211(fn: TestFunction, iv: Interval, p: Params,
                 tol: float = DEFAULT_LHS_TOL) -> BoundReport:
    dev = deviation(fn, iv, p.lam, p.mu, tol=tol)
    rhs, branches = thm211_rhs(fn, iv, p)
    return make_report("thm211", dev.lhs_abs, rhs, dev.quad_error, branches)


def bound_thm22(fn: TestFunction, iv: Interval, p: Params,
                tol: float = DEFAULT_LHS_TOL) -> BoundReport:
    dev = deviation(fn, iv, p.lam, p.mu, tol=tol)
    rhs, branches = thm22_rhs(fn, iv, p)
    return make_report("thm22", dev.lhs_abs, rhs, dev.quad_error, branches)


# ---------------------------------------------------------------------------
# Gated dispatch.

def gate_verdict(fn: TestFunction, iv: Interval, p: Params, theorem_id: str,
                 grid_n: int = 16) -> ConvexityVerdict:
    """Run the convexity check matching one theorem's hypothesis class."""
    upper = max(iv.b, iv.b / p.m)
    if theorem_id == "da":
        return check_alpha_m_convex(lambda x: abs(fn.df(x)), iv.b, 1.0, 1.0, grid_n)
    if theorem_id == "sso":
        return check_alpha_m_convex(fn.f, upper, p.alpha, p.m, grid_n)
    if theorem_id == "bop_m":
        return check_alpha_m_convex(derivative_power(fn, p.q), upper, 1.0, p.m, grid_n)
    if theorem_id in ("bop_am", "thm11", "thm211", "thm22"):
        return check_alpha_m_convex(derivative_power(fn, p.q), upper, p.alpha, p.m, grid_n)
    raise ParamError(f"unknown theorem id {theorem_id!r}")


_DISPATCH = {
    "da": lambda fn, iv, p, tol: bound_da(fn, iv, tol),
    "sso": lambda fn, iv, p, tol: bound_sso(fn, iv, p.alpha, p.m, tol),
    "bop_m": lambda fn, iv, p, tol: bound_bop_m(fn, iv, p.m, p.q, tol),
    "bop_am": lambda fn, iv, p, tol: bound_bop_am(fn, iv, p.alpha, p.m, p.q, tol),
    "thm11": bound_thm11,
    "thm211": bound_thm211,
    "thm22": bound_thm22,
}


def verify(fn: TestFunction, iv: Interval, p: Params, theorem_id: str,
           tol: float = DEFAULT_LHS_TOL, gate: bool = True,
           gate_grid_n: int = 16) -> BoundReport:
    """Gate the hypothesis, then check the named bound.

    Raises GateError (with the sampled witness) when the hypothesis fails;
    a gate failure is never a theorem violation.
    """
    if theorem_id not in _DISPATCH:
        raise ParamError(f"unknown theorem id {theorem_id!r}")
    validate_params(p, iv, fn)
    if gate:
        verdict = gate_verdict(fn, iv, p, theorem_id, gate_grid_n)
        if not verdict.holds:
            raise GateError(
                f"convexity hypothesis of {theorem_id} fails for {fn.id} "
                f"(violation {verdict.worst_violation:.3e} at {verdict.witness})",
                witness=verdict.witness, worst_violation=verdict.worst_violation,
            )
    return _DISPATCH[theorem_id](fn, iv, p, tol)
