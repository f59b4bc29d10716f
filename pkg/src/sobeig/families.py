"""The four classical measures: parameters, recurrences, eigenvalues, endpoint values.

Everything downstream works with *orthonormal* polynomials.  The recurrence
entries (a_n, b_n) are the symmetric Jacobi-matrix coefficients

    x p_n(x) = a_{n+1} p_{n+1}(x) + b_n p_n(x) + a_n p_{n-1}(x),   a_n > 0.

The Laguerre family classically carries an alternating leading coefficient,
so its table values follow the classical sign (positive at 0); squares and
absolute values, which is all the growth machinery consumes, are unaffected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .errors import ParamOutOfRange

JACOBI = "jacobi"
LAGUERRE = "laguerre"
HERMITE = "hermite"
GEGENBAUER = "gegenbauer"

KINDS = (JACOBI, LAGUERRE, HERMITE, GEGENBAUER)


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    alpha: Optional[float] = None
    beta: Optional[float] = None

    def label(self) -> str:
        if self.kind == JACOBI:
            return f"jacobi({self.alpha:g},{self.beta:g})"
        if self.kind == HERMITE:
            return "hermite"
        return f"{self.kind}({self.alpha:g})"


def jacobi(alpha: float, beta: float) -> FamilySpec:
    return FamilySpec(JACOBI, float(alpha), float(beta))


def laguerre(alpha: float) -> FamilySpec:
    return FamilySpec(LAGUERRE, float(alpha))


def hermite() -> FamilySpec:
    return FamilySpec(HERMITE)


def gegenbauer(alpha: float) -> FamilySpec:
    return FamilySpec(GEGENBAUER, float(alpha))


class LambdaCoefficients(NamedTuple):
    gamma: float
    delta: float


class RecurrenceRow(NamedTuple):
    n: int
    a: float
    b: float


def validate(spec: FamilySpec) -> None:
    """Raise ParamOutOfRange unless the family parameters are admissible."""
    if spec.kind not in KINDS:
        raise ParamOutOfRange("kind", spec.kind, f"must be one of {KINDS}")
    if spec.kind == HERMITE:
        if spec.alpha is not None or spec.beta is not None:
            raise ParamOutOfRange("alpha", spec.alpha, "hermite takes no parameters")
        return
    if spec.alpha is None or not math.isfinite(spec.alpha) or spec.alpha <= -1.0:
        raise ParamOutOfRange("alpha", spec.alpha, "alpha must be > -1")
    if spec.kind == JACOBI:
        if spec.beta is None or not math.isfinite(spec.beta) or spec.beta <= -1.0:
            raise ParamOutOfRange("beta", spec.beta, "beta must be > -1")
    elif spec.beta is not None:
        raise ParamOutOfRange("beta", spec.beta, f"{spec.kind} takes no beta")


def is_symmetric_weight(spec: FamilySpec) -> bool:
    """True for measures even about the origin (zero recurrence diagonal)."""
    return spec.kind in (HERMITE, GEGENBAUER)


def classical_sign_flip(spec: FamilySpec) -> bool:
    """True when the classical normalization alternates leading-coefficient sign.

    Only Laguerre does; its positive-definite Jacobi matrix generates
    (-1)^n times the classical orthonormal polynomial.
    """
    return spec.kind == LAGUERRE


def lambda_coefficients(spec: FamilySpec) -> LambdaCoefficients:
    """Coefficients (gamma, delta) of the classical eigenvalue gamma*n^2 + delta*n."""
    if spec.kind == JACOBI:
        return LambdaCoefficients(1.0, spec.alpha + spec.beta + 1.0)
    if spec.kind == LAGUERRE:
        return LambdaCoefficients(0.0, 1.0)
    if spec.kind == HERMITE:
        return LambdaCoefficients(0.0, 2.0)
    return LambdaCoefficients(1.0, 2.0 * spec.alpha + 1.0)


def lambda_classical(spec: FamilySpec, n: int) -> float:
    gamma, delta = lambda_coefficients(spec)
    return gamma * float(n) * float(n) + delta * float(n)


def lambda_array(spec: FamilySpec, nmax: int) -> np.ndarray:
    """lambda_classical for n = 0..nmax as a float64 vector."""
    gamma, delta = lambda_coefficients(spec)
    n = np.arange(nmax + 1, dtype=np.float64)
    return gamma * n * n + delta * n


def mu_zero(spec: FamilySpec) -> float:
    """Total mass of the measure, via log-Gamma."""
    if spec.kind == JACOBI:
        al, be = spec.alpha, spec.beta
        return math.exp(
            (al + be + 1.0) * math.log(2.0)
            + math.lgamma(al + 1.0)
            + math.lgamma(be + 1.0)
            - math.lgamma(al + be + 2.0)
        )
    if spec.kind == LAGUERRE:
        return math.exp(math.lgamma(spec.alpha + 1.0))
    if spec.kind == HERMITE:
        return math.sqrt(math.pi)
    al = spec.alpha
    return math.exp(
        (2.0 * al + 1.0) * math.log(2.0)
        + 2.0 * math.lgamma(al + 1.0)
        - math.lgamma(2.0 * al + 2.0)
    )


def _jacobi_sq_offdiag(al: float, be: float, n: int) -> float:
    # a_n^2 for the orthonormal Jacobi recurrence; n = 1 needs its own form
    # because the generic one is 0/0 at alpha + beta = -1.
    if n == 1:
        s = al + be
        return 4.0 * (al + 1.0) * (be + 1.0) / ((s + 2.0) ** 2 * (s + 3.0))
    s2 = 2.0 * n + al + be
    return (
        4.0 * n * (n + al) * (n + be) * (n + al + be)
        / (s2 * s2 * (s2 + 1.0) * (s2 - 1.0))
    )


def recurrence_row(spec: FamilySpec, n: int) -> RecurrenceRow:
    """Orthonormal Jacobi-matrix entries (a_n, b_n) for one index."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if spec.kind == LAGUERRE:
        al = spec.alpha
        a = math.sqrt(n * (n + al)) if n >= 1 else 0.0
        return RecurrenceRow(n, a, 2.0 * n + al + 1.0)
    if spec.kind == HERMITE:
        a = math.sqrt(n / 2.0) if n >= 1 else 0.0
        return RecurrenceRow(n, a, 0.0)
    if spec.kind == GEGENBAUER:
        al = spec.alpha
        if n == 0:
            return RecurrenceRow(0, 0.0, 0.0)
        if n == 1:
            return RecurrenceRow(1, math.sqrt(1.0 / (2.0 * al + 3.0)), 0.0)
        s2 = 2.0 * n + 2.0 * al
        a = math.sqrt(n * (n + 2.0 * al) / ((s2 + 1.0) * (s2 - 1.0)))
        return RecurrenceRow(n, a, 0.0)
    al, be = spec.alpha, spec.beta
    if n == 0:
        return RecurrenceRow(0, 0.0, (be - al) / (al + be + 2.0))
    b = (be * be - al * al) / ((2.0 * n + al + be) * (2.0 * n + al + be + 2.0))
    return RecurrenceRow(n, math.sqrt(_jacobi_sq_offdiag(al, be, n)), b)


def recurrence_arrays(spec: FamilySpec, nmax: int) -> tuple[np.ndarray, np.ndarray]:
    """Vectors a[0..nmax], b[0..nmax] of recurrence entries (a[0] = 0, unused)."""
    a = np.zeros(nmax + 1)
    b = np.zeros(nmax + 1)
    n = np.arange(1, nmax + 1, dtype=np.float64)
    if spec.kind == LAGUERRE:
        al = spec.alpha
        a[1:] = np.sqrt(n * (n + al))
        b[:] = 2.0 * np.arange(nmax + 1, dtype=np.float64) + al + 1.0
        return a, b
    if spec.kind == HERMITE:
        a[1:] = np.sqrt(n / 2.0)
        return a, b
    if spec.kind == GEGENBAUER:
        al = spec.alpha
        if nmax >= 1:
            a[1] = math.sqrt(1.0 / (2.0 * al + 3.0))
        if nmax >= 2:
            m = n[1:]
            s2 = 2.0 * m + 2.0 * al
            a[2:] = np.sqrt(m * (m + 2.0 * al) / ((s2 + 1.0) * (s2 - 1.0)))
        return a, b
    al, be = spec.alpha, spec.beta
    b[0] = (be - al) / (al + be + 2.0)
    s2 = 2.0 * n + al + be
    b[1:] = (be * be - al * al) / (s2 * (s2 + 2.0))
    if nmax >= 1:
        a[1] = math.sqrt(_jacobi_sq_offdiag(al, be, 1))
    if nmax >= 2:
        m = n[1:]
        t2 = 2.0 * m + al + be
        a[2:] = np.sqrt(
            4.0 * m * (m + al) * (m + be) * (m + al + be)
            / (t2 * t2 * (t2 + 1.0) * (t2 - 1.0))
        )
    return a, b


def distinguished_point(spec: FamilySpec) -> float:
    """The endpoint/origin the closed forms are stated at."""
    return 1.0 if spec.kind == JACOBI else 0.0


def _log_jacobi_norm_sq(al: float, be: float, n: int) -> float:
    # log of the classical Jacobi L2 norm squared h_n
    if n == 0:
        return (
            (al + be + 1.0) * math.log(2.0)
            + math.lgamma(al + 1.0)
            + math.lgamma(be + 1.0)
            - math.lgamma(al + be + 2.0)
        )
    return (
        (al + be + 1.0) * math.log(2.0)
        - math.log(2.0 * n + al + be + 1.0)
        + math.lgamma(n + al + 1.0)
        + math.lgamma(n + be + 1.0)
        - math.lgamma(n + al + be + 1.0)
        - math.lgamma(n + 1.0)
    )


def _symmetric_jacobi_at_zero(al: float, big_n: int) -> tuple[float, float]:
    # classical P_N^{(al,al)}(0) as (log|value|, sign); zero handled by caller
    m = big_n // 2
    logv = (
        math.lgamma(big_n + al + 1.0)
        - m * math.log(4.0)
        - math.lgamma(m + 1.0)
        - math.lgamma(m + al + 1.0)
    )
    return logv, -1.0 if m % 2 else 1.0


def closed_form_endpoint(spec: FamilySpec, n: int, k: int) -> float:
    """Exact orthonormal derivative value p_n^{(k)}(c) at the distinguished point.

    Classical parameter-shift identities evaluated in log space, then divided
    by the orthonormalizing norm.  Independent of the recurrence pipeline;
    serves as its oracle.  Symmetric families return exactly 0.0 when n - k
    is odd.
    """
    if k < 0 or n < 0 or k > n:
        raise ValueError("need 0 <= k <= n")
    if spec.kind == JACOBI:
        al, be = spec.alpha, spec.beta
        logv = (
            math.lgamma(n + al + 1.0)
            - math.lgamma(al + k + 1.0)
            - math.lgamma(n - k + 1.0)
            - k * math.log(2.0)
        )
        if k > 0:
            logv += math.lgamma(n + al + be + 1.0 + k) - math.lgamma(n + al + be + 1.0)
        return math.exp(logv - 0.5 * _log_jacobi_norm_sq(al, be, n))
    if spec.kind == LAGUERRE:
        al = spec.alpha
        logv = (
            0.5 * math.lgamma(n + al + 1.0)
            + 0.5 * math.lgamma(n + 1.0)
            - math.lgamma(al + k + 1.0)
            - math.lgamma(n - k + 1.0)
        )
        return (-1.0) ** k * math.exp(logv)
    if (n - k) % 2 == 1:
        return 0.0
    if spec.kind == HERMITE:
        m = (n - k) // 2
        logv = (
            k * math.log(2.0)
            + 0.5 * math.lgamma(n + 1.0)
            - math.lgamma(m + 1.0)
            - 0.25 * math.log(math.pi)
            - 0.5 * n * math.log(2.0)
        )
        return (-1.0) ** m * math.exp(logv)
    al = spec.alpha
    logv, sign = _symmetric_jacobi_at_zero(al + k, n - k)
    if k > 0:
        logv += (
            math.lgamma(n + 2.0 * al + 1.0 + k)
            - math.lgamma(n + 2.0 * al + 1.0)
            - k * math.log(2.0)
        )
    return sign * math.exp(logv - 0.5 * _log_jacobi_norm_sq(al, al, n))


def growth_ab(spec: FamilySpec, c: float, parity: Optional[str] = None) -> tuple[float, float]:
    """Exponent parameters (a, b): |p_n^{(k)}(c)| grows like n^(a*k + b).

    For symmetric weights at c = 0 the parity branch must be named: the k-th
    entry of the 'even' branch refers to order 2k on even indices, of the
    'odd' branch to order 2k+1 on odd indices.
    """
    if spec.kind == LAGUERRE:
        return 1.0, spec.alpha / 2.0
    if spec.kind == JACOBI:
        base = spec.alpha if c > 0 else spec.beta
        return 2.0, base + 0.5
    if spec.kind == GEGENBAUER and c != 0.0:
        return 2.0, spec.alpha + 0.5
    if parity not in ("even", "odd"):
        raise ValueError("symmetric weight at c=0 needs parity 'even' or 'odd'")
    if spec.kind == HERMITE:
        return 1.0, -0.25 if parity == "even" else 0.25
    return 2.0, 0.0 if parity == "even" else 1.0
