"""Perturbed eigenvalue sequences for one derivative point mass.

A mass M on the j-th derivative at the point c turns the classical
eigenvalues lam_n into lam_n + M * alpha_n, where alpha_n accumulates
eigenvalue increments weighted by the kernel diagonal.  Symmetric measures
at c = 0 touch only the parity class of j; the other parity keeps its
classical polynomials and eigenvalues verbatim.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from . import derivatives, families
from ._kernels import comp_cumsum
from .derivatives import KernelSeries
from .errors import ParamOutOfRange, RoutingMismatch
from .families import FamilySpec

ADMISSIBLE_C = {
    families.JACOBI: (-1.0, 1.0),
    families.LAGUERRE: (0.0,),
    families.HERMITE: (0.0,),
    families.GEGENBAUER: (-1.0, 0.0, 1.0),
}


@dataclass(frozen=True)
class SobolevSpec:
    family: FamilySpec
    c: float
    j: int
    mass: float


def validate_sobolev(spec: SobolevSpec) -> None:
    families.validate(spec.family)
    if not isinstance(spec.j, int) or spec.j < 0:
        raise ParamOutOfRange("j", spec.j, "derivative order must be an integer >= 0")
    if not spec.mass > 0.0:
        raise ParamOutOfRange("mass", spec.mass, "mass must be > 0")
    if spec.c not in ADMISSIBLE_C[spec.family.kind]:
        raise ParamOutOfRange(
            "c", spec.c, f"c={spec.c:g} not admissible for {spec.family.kind}"
        )


def is_symmetric_path(spec: SobolevSpec) -> bool:
    """True when the stride-2 accumulation applies (symmetric weight, c = 0)."""
    return families.is_symmetric_weight(spec.family) and spec.c == 0.0


def effective_family(spec: SobolevSpec) -> FamilySpec:
    """Family whose growth constants drive spec; Gegenbauer at an endpoint
    runs through the nonsymmetric machinery with both parameters equal."""
    if spec.family.kind == families.GEGENBAUER and spec.c != 0.0:
        return families.jacobi(spec.family.alpha, spec.family.alpha)
    return spec.family


@dataclass(frozen=True)
class EigenSequence:
    spec: SobolevSpec
    indices: np.ndarray
    lam: np.ndarray
    alpha: np.ndarray
    lam_tilde: np.ndarray
    branch: str = "full"  # 'full' | 'even_branch' | 'odd_branch'


def _check_kernel(spec: SobolevSpec, kernel: KernelSeries, nmax: int) -> None:
    if kernel.spec != spec.family or kernel.c != spec.c or kernel.j != spec.j:
        raise ValueError("kernel was built for a different (family, c, j)")
    if kernel.K.shape[0] <= max(nmax - 1, 0):
        raise ValueError("kernel too short for requested nmax")


def alpha_nonsymmetric(spec: SobolevSpec, kernel: KernelSeries, nmax: int) -> np.ndarray:
    """alpha_n = sum_{i=j+1..n} (lam_i - lam_{i-1}) K_{i-1}; zero through n = j."""
    validate_sobolev(spec)
    if is_symmetric_path(spec):
        raise RoutingMismatch(f"{spec.family.kind} at c=0 routes symmetric")
    _check_kernel(spec, kernel, nmax)
    lam = families.lambda_array(spec.family, nmax)
    out = np.zeros(nmax + 1)
    j = spec.j
    if nmax >= j + 1:
        terms = (lam[j + 1 :] - lam[j : nmax]) * kernel.K[j : nmax]
        out[j + 1 :] = comp_cumsum(terms)
    return out


def alpha_symmetric(spec: SobolevSpec, kernel: KernelSeries, nmax: int) -> np.ndarray:
    """Stride-2 analog on indices j+2t; untouched parity stays exactly zero."""
    validate_sobolev(spec)
    if not is_symmetric_path(spec):
        raise RoutingMismatch(f"{spec.family.kind} at c={spec.c:g} routes nonsymmetric")
    _check_kernel(spec, kernel, nmax)
    lam = families.lambda_array(spec.family, nmax)
    out = np.zeros(nmax + 1)
    j = spec.j
    tmax = (nmax - j) // 2
    if tmax >= 1:
        hi = lam[j + 2 : j + 2 * tmax + 1 : 2]
        lo = lam[j : j + 2 * tmax - 1 : 2]
        kdiag = kernel.K[j + 1 : j + 2 * tmax : 2]
        out[j + 2 : j + 2 * tmax + 1 : 2] = comp_cumsum((hi - lo) * kdiag)
    return out


def alpha_sequence(spec: SobolevSpec, nmax: int) -> np.ndarray:
    """Full alpha array via the streaming kernel, routed by parity."""
    validate_sobolev(spec)
    kernel = derivatives.kernel_series(spec.family, spec.c, spec.j, max(nmax - 1, spec.j))
    if is_symmetric_path(spec):
        return alpha_symmetric(spec, kernel, nmax)
    return alpha_nonsymmetric(spec, kernel, nmax)


def lambda_tilde(spec: SobolevSpec, nmax: int) -> EigenSequence:
    """Assemble (lam, alpha, lam_tilde) for n = 0..nmax."""
    validate_sobolev(spec)
    derivatives.check_magnitude(spec.family, spec.c, spec.j, nmax, "eigen")
    lam = families.lambda_array(spec.family, nmax)
    alpha = alpha_sequence(spec, nmax)
    return EigenSequence(
        spec=spec,
        indices=np.arange(nmax + 1),
        lam=lam,
        alpha=alpha,
        lam_tilde=lam + spec.mass * alpha,
    )


def _branch_view(seq: EigenSequence, parity: int) -> EigenSequence:
    sel = seq.indices % 2 == parity
    return replace(
        seq,
        indices=seq.indices[sel],
        lam=seq.lam[sel],
        alpha=seq.alpha[sel],
        lam_tilde=seq.lam_tilde[sel],
        branch="even_branch" if parity == 0 else "odd_branch",
    )


def modified_branch(seq: EigenSequence) -> EigenSequence:
    """Subsequence of the parity the mass point perturbs (indices j, j+2, ...)."""
    if not is_symmetric_path(seq.spec):
        raise RoutingMismatch("branch views exist only on the symmetric path")
    view = _branch_view(seq, seq.spec.j % 2)
    keep = view.indices >= seq.spec.j
    return replace(
        view,
        indices=view.indices[keep],
        lam=view.lam[keep],
        alpha=view.alpha[keep],
        lam_tilde=view.lam_tilde[keep],
    )


def untouched_branch(seq: EigenSequence) -> EigenSequence:
    """Subsequence whose polynomials coincide with the classical ones."""
    if not is_symmetric_path(seq.spec):
        raise RoutingMismatch("branch views exist only on the symmetric path")
    return _branch_view(seq, 1 - seq.spec.j % 2)
