"""Derivative tables p_n^(k)(c) and Christoffel-Darboux kernel diagonals.

The k-times differentiated three-term recurrence

    p_{n+1}^(k)(c) = ((c - b_n) p_n^(k)(c) + k p_n^(k-1)(c) - a_n p_{n-1}^(k)(c)) / a_{n+1}

propagates one extra coupling term per derivative order, so a full ladder of
orders 0..jmax advances in O(jmax) per index.  Parity zeros at c = 0 are
exact: every contributing term is the product or sum of exact zeros.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import families
from ._kernels import comp_cumsum, deriv_and_kernel, full_table
from .errors import MagnitudeOverflow
from .families import FamilySpec

# refuse predicted magnitudes beyond this decimal exponent (binary64 tops out ~1e308)
GUARD_LOG10 = 300.0


@dataclass(frozen=True)
class DerivativeTable:
    spec: FamilySpec
    c: float
    jmax: int
    nmax: int
    values: np.ndarray  # shape (nmax+1, jmax+1), values[n, k] = p_n^(k)(c)


@dataclass(frozen=True)
class KernelSeries:
    spec: FamilySpec
    c: float
    j: int
    K: np.ndarray  # K[n] = sum_{i<=n} p_i^(j)(c)^2


def predicted_log10_peak(spec: FamilySpec, c: float, j: int, nmax: int, kind: str = "eigen") -> float:
    """Decimal exponent of the largest value the requested computation reaches."""
    parity = None
    if families.is_symmetric_weight(spec) and c == 0.0:
        parity = "even" if j % 2 == 0 else "odd"
    a, b = families.growth_ab(spec, c, parity)
    order = j // 2 if parity is not None else j
    e_deriv = a * order + b
    e_kernel = 2.0 * e_deriv + 1.0
    gamma, _ = families.lambda_coefficients(spec)
    if kind == "derivative":
        e = max(e_deriv, 0.0)
    elif kind == "kernel":
        e = e_kernel
    else:
        e = e_kernel + (2.0 if gamma != 0.0 else 1.0)
    return e * math.log10(max(nmax, 2))


def check_magnitude(spec: FamilySpec, c: float, j: int, nmax: int, kind: str = "eigen") -> None:
    peak = predicted_log10_peak(spec, c, j, nmax, kind)
    if peak > GUARD_LOG10:
        raise MagnitudeOverflow(
            f"predicted magnitude 1e{peak:.0f} exceeds 1e{GUARD_LOG10:.0f} "
            f"for {spec.label()}, j={j}, nmax={nmax}"
        )


def _seed(spec: FamilySpec) -> float:
    return 1.0 / math.sqrt(families.mu_zero(spec))


def _sign_convention(spec: FamilySpec) -> float:
    return -1.0 if families.classical_sign_flip(spec) else 1.0


def build_derivative_table(spec: FamilySpec, c: float, jmax: int, nmax: int) -> DerivativeTable:
    """Materialize the full ladder of derivative values at c."""
    if jmax < 0 or nmax < jmax:
        raise ValueError("need 0 <= jmax <= nmax")
    families.validate(spec)
    check_magnitude(spec, c, jmax, nmax, "derivative")
    a, b = families.recurrence_arrays(spec, nmax + 1)
    values = full_table(float(c), a, b, _seed(spec), jmax, nmax, _sign_convention(spec))
    return DerivativeTable(spec, float(c), jmax, nmax, values)


def kernel_diag_series(table: DerivativeTable, j: int, nmax: int) -> KernelSeries:
    """Kernel diagonal K_n = sum of squared order-j values, compensated."""
    if j > table.jmax or nmax > table.nmax:
        raise ValueError("table too small for requested (j, nmax)")
    col = table.values[: nmax + 1, j]
    return KernelSeries(table.spec, table.c, j, comp_cumsum(col * col))


def stream_deriv_kernel(spec: FamilySpec, c: float, j: int, nmax: int) -> tuple[np.ndarray, np.ndarray]:
    """O(j)-memory streaming pass: order-j values and their kernel diagonal.

    Preferred entry point for large nmax; equals the table route bit for bit.
    """
    families.validate(spec)
    check_magnitude(spec, c, j, nmax, "kernel")
    a, b = families.recurrence_arrays(spec, nmax + 1)
    return deriv_and_kernel(float(c), a, b, _seed(spec), j, nmax, _sign_convention(spec))


def kernel_series(spec: FamilySpec, c: float, j: int, nmax: int) -> KernelSeries:
    """KernelSeries via the streaming pass."""
    _, kern = stream_deriv_kernel(spec, c, j, nmax)
    return KernelSeries(spec, float(c), j, kern)
