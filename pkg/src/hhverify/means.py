"""Special means of two positive numbers and the mean-form corollaries.

Each proposition is checked two ways: its displayed mean-form RHS must
coincide with the generic bound RHS it is a substitution of, and the
inequality itself must hold against exact mean values.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .core import DomainError, Interval, ParamError, Params, power_function
from .bounds import thm11_rhs, thm211_rhs, thm22_rhs
from .coefficients import gamma_coeffs


class MeanKind(str, enum.Enum):
    WEIGHTED_ARITHMETIC = "weighted_arithmetic"
    ARITHMETIC = "arithmetic"
    WEIGHTED_HARMONIC = "weighted_harmonic"
    HARMONIC = "harmonic"
    LOGARITHMIC = "logarithmic"
    P_LOGARITHMIC = "p_logarithmic"


@dataclass(frozen=True)
class MeanValue:
    kind: MeanKind
    value: float
    weight: float | None = None


def mean(kind: MeanKind | str, a: float, b: float, weight: float | None = None,
         p: int | None = None) -> MeanValue:
    """Evaluate one of the six special means.

    The weighted kinds put ``weight`` on the first argument; logarithmic
    kinds require strictly positive inputs and take the value b at a = b.
    """
    kind = MeanKind(kind)
    if a < 0 or b < 0:
        raise DomainError(f"means require nonnegative inputs, got ({a}, {b})")
    if kind in (MeanKind.WEIGHTED_HARMONIC, MeanKind.HARMONIC,
                MeanKind.LOGARITHMIC, MeanKind.P_LOGARITHMIC) and (a == 0 or b == 0):
        raise DomainError(f"{kind.value} mean requires strictly positive inputs")

    w = weight
    if kind in (MeanKind.WEIGHTED_ARITHMETIC, MeanKind.WEIGHTED_HARMONIC):
        if w is None or not 0 <= w <= 1:
            raise ParamError(f"weight must lie in [0, 1], got {w}")
    if kind is MeanKind.WEIGHTED_ARITHMETIC:
        value = w * a + (1.0 - w) * b
    elif kind is MeanKind.ARITHMETIC:
        value = 0.5 * (a + b)
    elif kind is MeanKind.WEIGHTED_HARMONIC:
        value = 1.0 / (w / a + (1.0 - w) / b)
    elif kind is MeanKind.HARMONIC:
        value = 2.0 * a * b / (a + b)
    elif kind is MeanKind.LOGARITHMIC:
        value = b if a == b else (b - a) / (math.log(b) - math.log(a))
    else:  # P_LOGARITHMIC
        if p is None or p in (-1, 0) or p != int(p):
            raise DomainError(f"p must be a nonzero integer other than -1, got {p}")
        p = int(p)
        value = b if a == b else ((b ** (p + 1) - a ** (p + 1))
                                  / ((p + 1) * (b - a))) ** (1.0 / p)
    return MeanValue(kind=kind, value=value, weight=w)


def power_log_mean_pow(a: float, b: float, n: int) -> float:
    """L_n(a, b)^n, which equals the integral mean of x^n over [a, b]."""
    if n in (-1, 0):
        raise DomainError(f"n must be a nonzero integer other than -1, got {n}")
    if a == b:
        return float(b) ** n
    return (b ** (n + 1) - a ** (n + 1)) / ((n + 1) * (b - a))


@dataclass(frozen=True)
class PropositionResult:
    prop: int
    mean_lhs: float
    mean_rhs: float
    corollary_rhs: float
    residual: float
    holds: bool
    note: str = ""


def _require_positive_pair(a: float, b: float) -> None:
    if not 0 < a < b:
        raise DomainError(f"propositions require 0 < a < b, got ({a}, {b})")


def proposition_check(k: int, a: float, b: float, p: Params,
                      n: int | None = None) -> PropositionResult:
    """Check proposition k on (a, b) with the weights and exponent from p.

    Propositions 1-3 compare the weighted arithmetic mean of a^n, b^n with
    the power-logarithmic mean (f = x^n); 4-6 compare the inverse weighted
    harmonic mean with the inverse logarithmic mean (f = 1/x).  mean_rhs is
    assembled from the proposition's own display; corollary_rhs calls the
    generic bound it substitutes into.  The two must agree to rounding,
    except proposition 6 whose display carries a spurious (1/2)^(1/q)
    factor relative to the bound it cites; that mismatch is reported in
    ``note`` rather than normalized away.
    """
    _require_positive_pair(a, b)
    if k not in range(1, 7):
        raise ParamError(f"proposition index must lie in 1..6, got {k}")
    lam, mu, q = p.lam, p.mu, p.q
    if k in (2, 3, 5, 6) and q <= 1:
        raise ParamError(f"proposition {k} requires q > 1, got q={q}")
    if k in (1, 2, 3):
        if n is None or abs(n) < 2 or n != int(n):
            raise ParamError(f"propositions 1-3 require integer |n| >= 2, got {n}")
        n = int(n)

    iv = Interval(a, b)
    total = lam + mu
    w = lam / total
    generic = Params(alpha=1.0, m=1.0, lam=lam, mu=mu, q=q)
    note = ""

    if k in (1, 2, 3):
        fn = power_function(n)
        endpoint = mean(MeanKind.WEIGHTED_ARITHMETIC, a ** n, b ** n, weight=w).value
        mean_lhs = abs(endpoint - power_log_mean_pow(a, b, n))
        an = a ** ((n - 1) * q)
        bn = b ** ((n - 1) * q)
        if k == 1:
            g = gamma_coeffs(1.0, lam, mu)
            branch1 = g["gamma1"] * bn + g["gamma2"] * an
            branch2 = g["gamma3"] * an + g["gamma4"] * bn
            core = min(branch1 ** (1.0 / q), branch2 ** (1.0 / q))
            if q == 1:
                mean_rhs = iv.width / total * abs(n) * core
            else:
                half_weight = (lam ** 2 + mu ** 2) / (2.0 * total)
                mean_rhs = (iv.width / total * half_weight ** ((q - 1.0) / q)
                            * abs(n) * core)
            corollary_rhs, _ = thm11_rhs(fn, iv, generic)
        elif k == 2:
            conj = generic.p
            z = mean(MeanKind.WEIGHTED_ARITHMETIC, b, a, weight=w).value
            m1 = mean(MeanKind.ARITHMETIC, an, z ** ((n - 1) * q)).value
            m2 = mean(MeanKind.ARITHMETIC, bn, z ** ((n - 1) * q)).value
            mean_rhs = (iv.width / total ** 2 * (1.0 / (conj + 1.0)) ** (1.0 / conj)
                        * abs(n) * (lam ** 2 * m1 ** (1.0 / q) + mu ** 2 * m2 ** (1.0 / q)))
            corollary_rhs, _ = thm211_rhs(fn, iv, generic)
        else:
            conj = generic.p
            amean = mean(MeanKind.ARITHMETIC, an, bn).value
            mean_rhs = (iv.width / total
                        * ((lam ** (conj + 1.0) + mu ** (conj + 1.0)) / total) ** (1.0 / conj)
                        * (1.0 / (conj + 1.0)) ** (1.0 / conj)
                        * abs(n) * amean ** (1.0 / q))
            corollary_rhs, _ = thm22_rhs(fn, iv, generic)
    else:
        fn = power_function(-1)
        endpoint = 1.0 / mean(MeanKind.WEIGHTED_HARMONIC, a, b, weight=w).value
        log_mean = mean(MeanKind.LOGARITHMIC, a, b).value
        mean_lhs = abs(endpoint - 1.0 / log_mean)
        a2q = a ** (2 * q)
        b2q = b ** (2 * q)
        if k == 4:
            g = gamma_coeffs(1.0, lam, mu)
            branch1 = g["gamma1"] / b2q + g["gamma2"] / a2q
            branch2 = g["gamma3"] / a2q + g["gamma4"] / b2q
            core = min(branch1 ** (1.0 / q), branch2 ** (1.0 / q))
            if q == 1:
                mean_rhs = iv.width / total * core
            else:
                half_weight = (lam ** 2 + mu ** 2) / (2.0 * total)
                mean_rhs = iv.width / total * half_weight ** ((q - 1.0) / q) * core
            corollary_rhs, _ = thm11_rhs(fn, iv, generic)
        elif k == 5:
            conj = generic.p
            z = mean(MeanKind.WEIGHTED_ARITHMETIC, b, a, weight=w).value
            m1 = 1.0 / mean(MeanKind.HARMONIC, a2q, z ** (2 * q)).value
            m2 = 1.0 / mean(MeanKind.HARMONIC, b2q, z ** (2 * q)).value
            mean_rhs = (iv.width / total ** 2 * (1.0 / (conj + 1.0)) ** (1.0 / conj)
                        * (lam ** 2 * m1 ** (1.0 / q) + mu ** 2 * m2 ** (1.0 / q)))
            corollary_rhs, _ = thm211_rhs(fn, iv, generic)
        else:
            conj = generic.p
            weight_mean = mean(MeanKind.WEIGHTED_ARITHMETIC, lam ** conj, mu ** conj,
                               weight=w).value
            hmean = mean(MeanKind.WEIGHTED_HARMONIC, a2q, b2q, weight=0.5).value
            mean_rhs = (iv.width / total * weight_mean ** (1.0 / conj)
                        * (1.0 / (conj + 1.0)) ** (1.0 / conj)
                        * 0.5 ** (1.0 / q) * hmean ** (-1.0 / q))
            corollary_rhs, _ = thm22_rhs(fn, iv, generic)
            note = ("displayed mean form carries an extra (1/2)^(1/q) factor "
                    "relative to the bound it substitutes into")

    residual = abs(mean_rhs - corollary_rhs)
    holds = mean_lhs <= corollary_rhs + 1e-12
    return PropositionResult(prop=k, mean_lhs=mean_lhs, mean_rhs=mean_rhs,
                             corollary_rhs=corollary_rhs, residual=residual,
                             holds=holds, note=note)
