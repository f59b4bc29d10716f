"""Independent verification layer.

Everything here reaches results by routes disjoint from the derivative-table
pipeline: Gauss rules from the Jacobi matrix (eigen-solved by an in-repo
implicit-shift QL, not a linear-algebra library), exact rational partial sums
for integer-parameter cases, and the closed-form endpoint values.  The only
helper shared with the pipeline is closed_form_endpoint, and the shift
identity residual is precisely the check that guards it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import derivatives, families, sobolev_eigen
from .errors import ConvergenceFailure, UnsupportedCase
from .families import FamilySpec
from .sobolev_eigen import SobolevSpec


@dataclass(frozen=True)
class QuadratureRule:
    family: FamilySpec
    npoints: int
    nodes: np.ndarray
    weights: np.ndarray

    def integrate(self, f) -> float:
        return float(np.dot(self.weights, f(self.nodes)))


def _ql_implicit(d: list[float], e: list[float], z: list[float], max_sweeps: int) -> None:
    """Implicit-shift QL on a symmetric tridiagonal; d/e/z updated in place.

    d: diagonal, e: off-diagonal (e[i] couples i and i+1, e[-1] spare),
    z: vector rotated along, seeded with the first unit vector so z[q]^2
    ends up as the squared first eigenvector component.
    """
    n = len(d)
    if n == 1:
        return
    eps = np.finfo(float).eps
    e[n - 1] = 0.0
    sweeps = 0
    for l in range(n):
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= eps * dd:
                    break
                m += 1
            if m == l:
                break
            sweeps += 1
            if sweeps > max_sweeps:
                raise ConvergenceFailure(
                    f"tridiagonal QL: {sweeps} sweeps exceeded budget {max_sweeps}"
                )
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = 1.0
            c = 1.0
            p = 0.0
            underflow = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                f = z[i + 1]
                z[i + 1] = s * z[i] + c * f
                z[i] = c * z[i] - s * f
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0


def gauss_rule(family: FamilySpec, npoints: int) -> QuadratureRule:
    """Gauss rule from the spectral data of the npoints x npoints Jacobi matrix."""
    families.validate(family)
    if npoints < 1:
        raise ValueError("npoints must be >= 1")
    d = [families.recurrence_row(family, n).b for n in range(npoints)]
    e = [families.recurrence_row(family, n + 1).a for n in range(npoints - 1)] + [0.0]
    z = [1.0] + [0.0] * (npoints - 1)
    _ql_implicit(d, e, z, 30 * npoints)
    mu0 = families.mu_zero(family)
    order = sorted(range(npoints), key=lambda q: d[q])
    nodes = np.array([d[q] for q in order])
    weights = np.array([mu0 * z[q] * z[q] for q in order])
    return QuadratureRule(family, npoints, nodes, weights)


def polynomial_values_at(family: FamilySpec, nmax: int, x: np.ndarray) -> np.ndarray:
    """out[q, n] = p_n(x_q) via the plain (k = 0) recurrence, positive-a_n form."""
    x = np.asarray(x, dtype=np.float64)
    out = np.zeros((x.shape[0], nmax + 1))
    out[:, 0] = 1.0 / math.sqrt(families.mu_zero(family))
    prev = np.zeros_like(x)
    for n in range(nmax):
        a_n = families.recurrence_row(family, n).a if n >= 1 else 0.0
        b_n = families.recurrence_row(family, n).b
        a_n1 = families.recurrence_row(family, n + 1).a
        out[:, n + 1] = ((x - b_n) * out[:, n] - a_n * prev) / a_n1
        prev = out[:, n].copy()
    return out


def orthonormality_residual(family: FamilySpec, nmax: int) -> float:
    """max |<p_m, p_n> - delta_mn| by a rule exact through degree 2*nmax."""
    rule = gauss_rule(family, nmax + 1)
    vals = polynomial_values_at(family, nmax, rule.nodes)
    gram = vals.T @ (rule.weights[:, None] * vals)
    return float(np.max(np.abs(gram - np.eye(nmax + 1))))


def true_moment(family: FamilySpec, m: int) -> float:
    """Closed-form integral of x^m against the weight (Gamma/Beta in log space;
    Jacobi through the boundary-term recurrence seeded by the mass)."""
    families.validate(family)
    if family.kind == families.LAGUERRE:
        return math.exp(math.lgamma(m + family.alpha + 1.0))
    if family.kind == families.HERMITE:
        if m % 2 == 1:
            return 0.0
        return math.exp(math.lgamma((m + 1.0) / 2.0))
    al = family.alpha
    be = al if family.kind == families.GEGENBAUER else family.beta
    if family.kind == families.GEGENBAUER and m % 2 == 1:
        return 0.0
    mom_prev = families.mu_zero(families.jacobi(al, be))
    if m == 0:
        return mom_prev
    mom = mom_prev * (be - al) / (al + be + 2.0)
    for i in range(1, m):
        mom_prev, mom = mom, (i * mom_prev + (be - al) * mom) / (i + al + be + 2.0)
    return mom


def moment_exactness(family: FamilySpec, dmax: int) -> float:
    """Worst relative moment error of the (d+1)-point rules, d <= dmax.

    A d+1 point rule must reproduce moments through degree 2d+1; odd moments
    of symmetric weights are compared against the rule's absolute mass scale.
    """
    worst = 0.0
    for d in range(dmax + 1):
        rule = gauss_rule(family, d + 1)
        powers = rule.nodes[None, :] ** np.arange(2 * d + 2)[:, None]
        sums = powers @ rule.weights
        scales = np.abs(powers) @ rule.weights
        for m in range(2 * d + 2):
            exact = true_moment(family, m)
            denom = abs(exact) if exact != 0.0 else max(scales[m], 1.0)
            worst = max(worst, abs(sums[m] - exact) / denom)
    return worst


# -- exact rational route ----------------------------------------------------

_EXACT_LAGUERRE_ALPHAS = (0, 1, 2)
_EXACT_ORDERS = (0, 1)


@dataclass(frozen=True)
class ExactAlphaCase:
    spec: SobolevSpec
    closed_form: str
    values: tuple[Fraction, ...]


def _is_exact_case(spec: SobolevSpec) -> bool:
    fam = spec.family
    if spec.j not in _EXACT_ORDERS:
        return False
    if fam.kind == families.LAGUERRE and spec.c == 0.0:
        return fam.alpha in _EXACT_LAGUERRE_ALPHAS and fam.alpha == int(fam.alpha)
    if fam.kind == families.JACOBI and spec.c == 1.0:
        return fam.alpha == 0.0 and fam.beta == 0.0
    return False


def _laguerre_sq_list(alpha: int, k: int, nmax: int) -> list[Fraction]:
    # squared orthonormal derivative values at 0, built by the term ratio
    # sq(m)/sq(m-1) = (m+alpha) m / (m-k)^2 so fractions stay reduced
    out = [Fraction(0)] * (nmax + 1)
    if k > nmax:
        return out
    out[k] = Fraction(math.factorial(k), math.factorial(alpha + k))
    for m in range(k + 1, nmax + 1):
        out[m] = out[m - 1] * Fraction((m + alpha) * m, (m - k) ** 2)
    return out


def _legendre_sq_list(k: int, nmax: int) -> list[Fraction]:
    # ((m+k)! / (2^k k! (m-k)!))^2 (2m+1)/2, via the same incremental trick
    out = [Fraction(0)] * (nmax + 1)
    if k > nmax:
        return out
    base = Fraction(math.factorial(2 * k), (2**k) * math.factorial(k))
    out[k] = base * base * Fraction(2 * k + 1, 2)
    for m in range(k + 1, nmax + 1):
        out[m] = out[m - 1] * Fraction(
            (m + k) ** 2 * (2 * m + 1), (m - k) ** 2 * (2 * m - 1)
        )
    return out


def exact_alpha(spec: SobolevSpec, nmax: int) -> ExactAlphaCase:
    """Exact rational alpha_n for the restricted integer-parameter cases."""
    sobolev_eigen.validate_sobolev(spec)
    if not _is_exact_case(spec):
        raise UnsupportedCase(
            f"no exact route for {spec.family.label()}, c={spec.c:g}, j={spec.j}"
        )
    j = spec.j
    if spec.family.kind == families.LAGUERRE:
        al = int(spec.family.alpha)
        sq = _laguerre_sq_list(al, j, nmax)
        lam_diff = lambda i: Fraction(1)  # noqa: E731
        tag = f"laguerre({al}), j={j}"
    else:
        sq = _legendre_sq_list(j, nmax)
        lam_diff = lambda i: Fraction(2 * i)  # noqa: E731
        tag = f"legendre endpoint, j={j}"
    values = [Fraction(0)] * (nmax + 1)
    kernel = Fraction(0)
    acc = Fraction(0)
    for i in range(j, nmax):
        kernel += sq[i]  # K_i after this line
        acc += lam_diff(i + 1) * kernel
        values[i + 1] = acc
    return ExactAlphaCase(spec, tag, tuple(values))


def exact_lambda_tilde(case: ExactAlphaCase, mass: Fraction) -> tuple[Fraction, ...]:
    """lam + mass * alpha with exact classical eigenvalues."""
    fam = case.spec.family
    if fam.kind == families.LAGUERRE:
        lam = lambda n: Fraction(n)  # noqa: E731
    else:
        lam = lambda n: Fraction(n * n + n)  # noqa: E731
    return tuple(lam(n) + mass * a for n, a in enumerate(case.values))


def shift_identity_residual(family: FamilySpec, nmax: int, kmax: int) -> float:
    """Worst relative gap between the recurrence table and the closed forms."""
    c = families.distinguished_point(family)
    table = derivatives.build_derivative_table(family, c, kmax, nmax)
    worst = 0.0
    for n in range(nmax + 1):
        for k in range(min(n, kmax) + 1):
            exact = families.closed_form_endpoint(family, n, k)
            got = table.values[n, k]
            worst = max(worst, abs(got - exact) / max(1.0, abs(exact)))
    return worst


def sign_pattern_check(family: FamilySpec, c: float, k: int, nmax: int) -> bool:
    """Signs of p_n^(k)(c) (pipeline route): constant at c = 1, alternating at c = -1."""
    if family.kind != families.JACOBI or c not in (-1.0, 1.0):
        raise ValueError("sign pattern is a Jacobi endpoint check")
    table = derivatives.build_derivative_table(family, c, k, nmax)
    signs = np.sign(table.values[k:, k])
    if np.any(signs == 0.0):
        return False
    if c == 1.0:
        return bool(np.all(signs == signs[0]))
    return bool(np.all(signs[1:] == -signs[:-1]))
