"""Predicted growth laws and their numerical certification.

Each law states |value_n| / (C * n^e) -> 1 for a named sequence (derivative
values, kernel diagonals, alpha, perturbed eigenvalues).  Certification
samples the computed sequence on a geometric index schedule, forms the ratio
series, and accelerates it with iterated Aitken delta-squared; ratios here
carry c + O(1/n) tails, on which Aitken over doubling indices is exact at
first order.  All comparisons use absolute values: alternating signs at
c = -1 are irrelevant to the growth.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

import numpy as np

from . import derivatives, families, sobolev_eigen
from .errors import DegenerateIndex, InsufficientSamples, RoutingMismatch
from .families import FamilySpec
from .sobolev_eigen import SobolevSpec

LAW_KINDS = ("derivative", "kernel", "alpha", "eigen", "eigen_untouched")

# extrapolation-residual tolerance tiers: exact-oracle-backed cells vs purely
# floating-point ones
TOL_EXACT = 1e-3
TOL_FLOAT = 5e-3


@dataclass(frozen=True)
class AsymptoticLaw:
    kind: str
    exponent: float
    constant: float  # absolute value; all checks are sign-insensitive
    index_map: str = "identity"  # 'identity' | 'sym_even' | 'sym_odd'
    offset: int = 0  # symmetric maps send full index m to (m - offset) / 2
    sign_insensitive: bool = True


def mapped_indices(law: AsymptoticLaw, indices: np.ndarray) -> np.ndarray:
    idx = np.asarray(indices, dtype=np.float64)
    if law.index_map == "identity":
        out = idx
    else:
        out = (idx - law.offset) / 2.0
    if np.any(out < 1.0):
        raise DegenerateIndex(f"law {law.kind}: mapped index below 1")
    return out


def _parity_name(j: int) -> str:
    return "even" if j % 2 == 0 else "odd"


def _deriv_constant(family: FamilySpec, c: float, k: int, parity: Optional[str]) -> float:
    if family.kind == families.LAGUERRE:
        return math.exp(-math.lgamma(family.alpha + k + 1.0))
    if family.kind == families.JACOBI or (
        family.kind == families.GEGENBAUER and c != 0.0
    ):
        al = family.alpha
        be = al if family.kind == families.GEGENBAUER else family.beta
        shifted = al if c > 0 else be
        return math.exp(
            -(k + (al + be) / 2.0) * math.log(2.0) - math.lgamma(shifted + k + 1.0)
        )
    if family.kind == families.HERMITE:
        extra = 0.0 if parity == "even" else 1.0
        return 2.0 ** (2 * k + extra) / math.sqrt(math.pi)
    extra = 0.5 if parity == "even" else 1.5
    return 2.0 ** (2 * k + extra) / math.sqrt(math.pi)


def derivative_growth_law(
    family: FamilySpec, c: float, k: int, parity: Optional[str] = None
) -> AsymptoticLaw:
    """|p_n^(k)(c)| ~ C n^(ak+b); on symmetric branches k counts within the branch."""
    families.validate(family)
    symmetric = families.is_symmetric_weight(family) and c == 0.0
    if symmetric and parity not in ("even", "odd"):
        raise ValueError("symmetric family at c=0 needs parity")
    a, b = families.growth_ab(family, c, parity if symmetric else None)
    constant = abs(_deriv_constant(family, c, k, parity if symmetric else None))
    if not symmetric:
        return AsymptoticLaw("derivative", a * k + b, constant)
    return AsymptoticLaw(
        "derivative",
        a * k + b,
        constant,
        index_map=f"sym_{parity}",
        offset=0 if parity == "even" else 1,
    )


def kernel_growth_law(
    family: FamilySpec, c: float, ell: int, parity: Optional[str] = None
) -> AsymptoticLaw:
    """Kernel diagonal law implied by the derivative law via term counting."""
    dlaw = derivative_growth_law(family, c, ell, parity)
    exponent = 2.0 * dlaw.exponent + 1.0
    constant = dlaw.constant * dlaw.constant / exponent
    if dlaw.index_map == "identity":
        return AsymptoticLaw("kernel", exponent, constant)
    # ratio at branch count T uses K at full index 2T-1 (even) / 2T (odd)
    return AsymptoticLaw(
        "kernel",
        exponent,
        constant,
        index_map=dlaw.index_map,
        offset=-1 if dlaw.index_map == "sym_even" else 0,
    )


def _nonsym_alpha_exponent_constant(
    family: FamilySpec, c: float, j: int
) -> tuple[float, float]:
    a, b = families.growth_ab(family, c, None)
    cj = _deriv_constant(family, c, j, None)
    gamma, delta = families.lambda_coefficients(family)
    e_half = a * j + b
    if gamma != 0.0:
        exponent = 2.0 * e_half + 3.0
        constant = 2.0 * gamma * cj * cj / ((2.0 * e_half + 3.0) * (2.0 * e_half + 1.0))
    else:
        exponent = 2.0 * (e_half + 1.0)
        constant = delta * cj * cj / (2.0 * (e_half + 1.0) * (2.0 * e_half + 1.0))
    return exponent, constant


def alpha_growth_law(spec: SobolevSpec) -> AsymptoticLaw:
    """Growth of alpha_n on the nonsymmetric path (two cases by gamma)."""
    sobolev_eigen.validate_sobolev(spec)
    if sobolev_eigen.is_symmetric_path(spec):
        raise RoutingMismatch("alpha law on the symmetric path folds into eigen_law")
    fam = sobolev_eigen.effective_family(spec)
    exponent, constant = _nonsym_alpha_exponent_constant(fam, spec.c, spec.j)
    return AsymptoticLaw("alpha", exponent, abs(constant))


def _sym_eigen_generic(spec: SobolevSpec) -> tuple[float, float]:
    fam = spec.family
    parity = _parity_name(spec.j)
    r = spec.j // 2
    a, b = families.growth_ab(fam, 0.0, parity)
    cr = _deriv_constant(fam, 0.0, r, parity)
    gamma, delta = families.lambda_coefficients(fam)
    e_half = a * r + b
    if gamma != 0.0:
        exponent = 2.0 * e_half + 3.0
        constant = (
            8.0 * gamma * spec.mass * cr * cr
            / ((2.0 * e_half + 3.0) * (2.0 * e_half + 1.0))
        )
    else:
        exponent = 2.0 * (e_half + 1.0)
        constant = (
            delta * spec.mass * cr * cr / ((e_half + 1.0) * (2.0 * e_half + 1.0))
        )
    return exponent, constant


def _specialized_eigen(spec: SobolevSpec) -> tuple[float, float]:
    """Per-family closed forms of the eigenvalue limit, for cross-checking."""
    j, m = spec.j, spec.mass
    fam = sobolev_eigen.effective_family(spec)
    if fam.kind == families.LAGUERRE:
        al = fam.alpha
        return (
            2.0 * j + al + 2.0,
            m
            * math.exp(-2.0 * math.lgamma(al + j + 1.0))
            / ((2.0 * j + al + 2.0) * (2.0 * j + al + 1.0)),
        )
    if fam.kind == families.JACOBI:
        al, be = fam.alpha, fam.beta
        shifted = al if spec.c > 0 else be
        return (
            4.0 * j + 2.0 * shifted + 4.0,
            m
            * math.exp(
                -(2.0 * j + al + be + 1.0) * math.log(2.0)
                - 2.0 * math.lgamma(shifted + j + 1.0)
            )
            / ((2.0 * j + shifted + 2.0) * (2.0 * j + shifted + 1.0)),
        )
    r = j // 2
    if fam.kind == families.HERMITE:
        if j % 2 == 0:
            return (
                2.0 * r + 1.5,
                m * 2.0 ** (4 * r + 1) / (math.pi * (r + 0.75) * (2.0 * r + 0.5)),
            )
        return (
            2.0 * r + 2.5,
            m * 2.0 ** (4 * r + 3) / (math.pi * (r + 1.25) * (2.0 * r + 1.5)),
        )
    if j % 2 == 0:
        return (
            4.0 * r + 3.0,
            2.0 ** (4 * (r + 1)) * m / (math.pi * (4.0 * r + 3.0) * (4.0 * r + 1.0)),
        )
    return (
        4.0 * r + 5.0,
        2.0 ** (4 * r + 6) * m / (math.pi * (4.0 * r + 5.0) * (4.0 * r + 3.0)),
    )


def eigen_law(spec: SobolevSpec) -> AsymptoticLaw:
    """Limit law for the perturbed eigenvalues (generic and per-family forms
    must agree; a mismatch means a bug, not a tolerance issue)."""
    sobolev_eigen.validate_sobolev(spec)
    if sobolev_eigen.is_symmetric_path(spec):
        exponent, constant = _sym_eigen_generic(spec)
        index_map = f"sym_{_parity_name(spec.j)}"
        offset = spec.j
    else:
        e_alpha, c_alpha = _nonsym_alpha_exponent_constant(
            sobolev_eigen.effective_family(spec), spec.c, spec.j
        )
        exponent, constant = e_alpha, spec.mass * c_alpha
        index_map, offset = "identity", 0
    e_spec, c_spec = _specialized_eigen(spec)
    if not (
        math.isclose(exponent, e_spec, rel_tol=1e-12)
        and math.isclose(constant, c_spec, rel_tol=1e-12)
    ):
        raise AssertionError(
            f"eigen law mismatch for {spec}: generic ({exponent}, {constant}) "
            f"vs specialized ({e_spec}, {c_spec})"
        )
    return AsymptoticLaw("eigen", exponent, abs(constant), index_map, offset)


def classical_branch_law(spec: SobolevSpec) -> AsymptoticLaw:
    """Untouched-parity eigenvalues keep the classical growth (4*gamma*n^2 or
    2*delta*n in the branch index)."""
    if not sobolev_eigen.is_symmetric_path(spec):
        raise RoutingMismatch("untouched branch exists only on the symmetric path")
    gamma, delta = families.lambda_coefficients(spec.family)
    untouched = 1 - spec.j % 2
    index_map = "sym_even" if untouched == 0 else "sym_odd"
    if gamma != 0.0:
        return AsymptoticLaw("eigen_untouched", 2.0, 4.0 * gamma, index_map, untouched)
    return AsymptoticLaw("eigen_untouched", 1.0, 2.0 * delta, index_map, untouched)


def ratio_series(values: np.ndarray, law: AsymptoticLaw, indices: np.ndarray) -> np.ndarray:
    """r = |value| / (C * mapped_index^exponent)."""
    if law.constant == 0.0 or not math.isfinite(law.constant):
        raise ValueError("law constant must be finite and nonzero")
    n = mapped_indices(law, indices)
    return np.abs(np.asarray(values, dtype=np.float64)) / (
        abs(law.constant) * n**law.exponent
    )


class ExtrapolationResult(NamedTuple):
    value: float
    sweeps: int
    breakdown: bool


def extrapolate_limit(series: Sequence[float], max_sweeps: int = 3) -> ExtrapolationResult:
    """Iterated Aitken delta-squared on geometrically sampled ratios.

    Stops after max_sweeps or on numerical breakdown (denominator below
    1e-14 of the local scale); on breakdown at the first sweep the last raw
    sample is returned, flagged.
    """
    cur = [float(x) for x in series]
    if len(cur) < 3:
        raise InsufficientSamples("need at least 3 geometric samples")
    sweeps = 0
    breakdown = False
    for _ in range(max_sweeps):
        if len(cur) < 3:
            break
        nxt = []
        for i in range(len(cur) - 2):
            d1 = cur[i + 1] - cur[i]
            d2 = cur[i + 2] - cur[i + 1]
            den = d2 - d1
            scale = max(abs(cur[i]), abs(cur[i + 1]), abs(cur[i + 2]), 1.0)
            if abs(den) <= 1e-14 * scale:
                breakdown = True
                break
            nxt.append(cur[i + 2] - d2 * d2 / den)
        if breakdown:
            break
        cur = nxt
        sweeps += 1
    return ExtrapolationResult(cur[-1], sweeps, breakdown)


@dataclass(frozen=True)
class VerificationVerdict:
    spec: SobolevSpec
    law: AsymptoticLaw
    n_used: tuple[int, ...]
    extrapolated_ratio: float
    deviation: float
    tolerance: float
    passed: bool
    raw_tail: tuple[float, ...]
    breakdown: bool
    seconds: float


def _schedule(limit: int, base: Optional[int], floor: int) -> list[int]:
    n0 = base if base is not None else limit // 64
    n0 = max(n0, floor, 2)
    pts = []
    n = n0
    while n <= limit:
        pts.append(n)
        n *= 2
    if len(pts) < 3:
        raise InsufficientSamples(
            f"schedule from {n0} reaches only {len(pts)} samples below {limit}"
        )
    return pts


class CellData:
    """Per-spec pipeline arrays shared by every law verdict of one cell."""

    def __init__(self, spec: SobolevSpec, nmax: int):
        sobolev_eigen.validate_sobolev(spec)
        derivatives.check_magnitude(spec.family, spec.c, spec.j, nmax, "eigen")
        self.spec = spec
        self.nmax = nmax
        self.deriv, kern = derivatives.stream_deriv_kernel(
            spec.family, spec.c, spec.j, nmax
        )
        self.kernel = derivatives.KernelSeries(spec.family, spec.c, spec.j, kern)
        if sobolev_eigen.is_symmetric_path(spec):
            self.alpha = sobolev_eigen.alpha_symmetric(spec, self.kernel, nmax)
        else:
            self.alpha = sobolev_eigen.alpha_nonsymmetric(spec, self.kernel, nmax)
        self.lam = families.lambda_array(spec.family, nmax)
        self.lam_tilde = self.lam + spec.mass * self.alpha


def _law_samples(
    cell: CellData, kind: str, base: Optional[int]
) -> tuple[AsymptoticLaw, np.ndarray, np.ndarray]:
    """Law plus (full indices, values) sampled on the geometric schedule."""
    spec, nmax = cell.spec, cell.nmax
    sym = sobolev_eigen.is_symmetric_path(spec)
    j = spec.j
    parity = _parity_name(j) if sym else None
    r = j // 2

    if kind == "derivative":
        law = derivative_growth_law(spec.family, spec.c, r if sym else j, parity)
        if sym:
            par = j % 2
            limit = (nmax - par) // 2
            branch = np.array(_schedule(limit, base, r + 1))
            full = 2 * branch + par
        else:
            full = np.array(_schedule(nmax, base, j + 1))
        return law, full, cell.deriv[full]
    if kind == "kernel":
        law = kernel_growth_law(spec.family, spec.c, r if sym else j, parity)
        if sym:
            par = j % 2
            limit = ((nmax + 1) // 2) if par == 0 else (nmax // 2)
            counts = np.array(_schedule(limit, base, r + 1))
            full = 2 * counts - 1 if par == 0 else 2 * counts
            return law, full, cell.kernel.K[full]
        idx = np.array(_schedule(nmax, base, j + 1))
        return law, idx, cell.kernel.K[idx - 1]
    if kind == "alpha":
        if sym:
            elaw = eigen_law(spec)
            law = AsymptoticLaw(
                "alpha", elaw.exponent, elaw.constant / spec.mass,
                elaw.index_map, elaw.offset,
            )
            branch = np.array(_schedule((nmax - j) // 2, base, 1))
            full = j + 2 * branch
        else:
            law = alpha_growth_law(spec)
            full = np.array(_schedule(nmax, base, j + 1))
        return law, full, cell.alpha[full]
    if kind == "eigen":
        law = eigen_law(spec)
        if sym:
            branch = np.array(_schedule((nmax - j) // 2, base, 1))
            full = j + 2 * branch
        else:
            full = np.array(_schedule(nmax, base, j + 1))
        return law, full, cell.lam_tilde[full]
    if kind == "eigen_untouched":
        law = classical_branch_law(spec)
        par = law.offset
        branch = np.array(_schedule((nmax - par) // 2, base, 1))
        full = 2 * branch + par
        return law, full, cell.lam_tilde[full]
    raise ValueError(f"unknown law kind {kind!r}")


def verify_cell(
    spec: SobolevSpec,
    nmax: int,
    kinds: Sequence[str],
    tol: float | dict[str, float],
    schedule_base: Optional[int] = None,
) -> list[VerificationVerdict]:
    """One pipeline pass per spec, one verdict per requested law kind."""
    cell = CellData(spec, nmax)
    out = []
    for kind in kinds:
        t0 = time.perf_counter()
        law, full, values = _law_samples(cell, kind, schedule_base)
        ratios = ratio_series(values, law, full)
        acc = extrapolate_limit(ratios)
        kind_tol = tol[kind] if isinstance(tol, dict) else tol
        deviation = abs(acc.value - 1.0)
        out.append(
            VerificationVerdict(
                spec=spec,
                law=law,
                n_used=tuple(int(x) for x in full),
                extrapolated_ratio=acc.value,
                deviation=deviation,
                tolerance=kind_tol,
                passed=bool(deviation <= kind_tol),
                raw_tail=tuple(float(x) for x in ratios[-3:]),
                breakdown=acc.breakdown,
                seconds=time.perf_counter() - t0,
            )
        )
    return out


def verify_law(
    spec: SobolevSpec,
    kind: str,
    nmax: int,
    tol: float,
    schedule_base: Optional[int] = None,
) -> VerificationVerdict:
    """Build the needed sequences, compare against the predicted law, judge."""
    return verify_cell(spec, nmax, [kind], tol, schedule_base)[0]
