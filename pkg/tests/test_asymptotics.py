import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sobeig import asymptotics, families, sobolev_eigen
from sobeig.asymptotics import (
    AsymptoticLaw,
    alpha_growth_law,
    classical_branch_law,
    derivative_growth_law,
    eigen_law,
    extrapolate_limit,
    kernel_growth_law,
    ratio_series,
    verify_law,
)
from sobeig.errors import DegenerateIndex, InsufficientSamples, RoutingMismatch
from sobeig.families import gegenbauer, hermite, jacobi, laguerre
from sobeig.sobolev_eigen import SobolevSpec

GRID_PARAMS = (-0.5, 0.0, 0.5, 1.5)
GRID_ORDERS = (0, 1, 2, 3)
GRID_MASSES = (0.5, 1.0, 5.0)


class TestDerivativeLaw:
    def test_legendre_endpoint(self):
        law = derivative_growth_law(jacobi(0.0, 0.0), 1.0, 0)
        assert (law.exponent, law.constant) == (0.5, 1.0)

    def test_laguerre_flat(self):
        law = derivative_growth_law(laguerre(0.0), 0.0, 0)
        assert (law.exponent, law.constant) == (0.0, 1.0)

    def test_hermite_even(self):
        law = derivative_growth_law(hermite(), 0.0, 0, "even")
        assert law.exponent == -0.25
        assert law.constant == pytest.approx(1.0 / math.sqrt(math.pi), rel=1e-15)
        assert law.index_map == "sym_even"

    def test_mirror_uses_other_parameter(self):
        plus = derivative_growth_law(jacobi(0.5, -0.5), 1.0, 1)
        minus = derivative_growth_law(jacobi(0.5, -0.5), -1.0, 1)
        assert plus.exponent == 2 + 0.5 + 0.5
        assert minus.exponent == 2 - 0.5 + 0.5
        assert plus.constant != minus.constant

    def test_symmetric_requires_parity(self):
        with pytest.raises(ValueError):
            derivative_growth_law(hermite(), 0.0, 0)


class TestKernelLaw:
    def test_laguerre_linear(self):
        law = kernel_growth_law(laguerre(0.0), 0.0, 0)
        assert (law.exponent, law.constant) == (1.0, 1.0)

    def test_legendre(self):
        law = kernel_growth_law(jacobi(0.0, 0.0), 1.0, 0)
        assert (law.exponent, law.constant) == (2.0, 0.5)

    def test_hermite_even(self):
        law = kernel_growth_law(hermite(), 0.0, 0, "even")
        assert law.exponent == 0.5
        assert law.constant == pytest.approx(2.0 / math.pi, rel=1e-15)


class TestAlphaLaw:
    def test_laguerre(self):
        law = alpha_growth_law(SobolevSpec(laguerre(0.0), 0.0, 0, 1.0))
        assert (law.exponent, law.constant) == (2.0, 0.5)

    def test_legendre(self):
        law = alpha_growth_law(SobolevSpec(jacobi(0.0, 0.0), 1.0, 0, 1.0))
        assert (law.exponent, law.constant) == (4.0, 0.25)

    def test_symmetric_is_refused(self):
        with pytest.raises(RoutingMismatch):
            alpha_growth_law(SobolevSpec(hermite(), 0.0, 0, 1.0))


class TestEigenLaw:
    def test_laguerre(self):
        law = eigen_law(SobolevSpec(laguerre(0.0), 0.0, 0, 1.0))
        assert (law.exponent, law.constant) == (2.0, 0.5)

    def test_legendre(self):
        law = eigen_law(SobolevSpec(jacobi(0.0, 0.0), 1.0, 0, 1.0))
        assert (law.exponent, law.constant) == (4.0, 0.25)

    def test_hermite_even_order(self):
        law = eigen_law(SobolevSpec(hermite(), 0.0, 0, 1.0))
        assert law.exponent == 1.5
        assert law.constant == pytest.approx(16.0 / (3.0 * math.pi), rel=1e-14)
        assert law.index_map == "sym_even"
        assert law.offset == 0

    def test_gegenbauer_even_order(self):
        for al in (0.0, 0.25, 1.5):
            law = eigen_law(SobolevSpec(gegenbauer(al), 0.0, 0, 1.0))
            assert law.exponent == 3.0
            assert law.constant == pytest.approx(16.0 / (3.0 * math.pi), rel=1e-14)

    def test_generic_equals_specialized_over_grid(self):
        # the Theorem-level formula and each subsection's closed form must
        # coincide; eigen_law asserts 1e-12 internally, so success suffices
        for mass in GRID_MASSES:
            for j in GRID_ORDERS:
                for al in GRID_PARAMS:
                    eigen_law(SobolevSpec(laguerre(al), 0.0, j, mass))
                    eigen_law(SobolevSpec(gegenbauer(al), 0.0, j, mass))
                    eigen_law(SobolevSpec(gegenbauer(al), 1.0, j, mass))
                    for be in GRID_PARAMS:
                        eigen_law(SobolevSpec(jacobi(al, be), 1.0, j, mass))
                        eigen_law(SobolevSpec(jacobi(al, be), -1.0, j, mass))
                eigen_law(SobolevSpec(hermite(), 0.0, j, mass))

    @settings(max_examples=30, deadline=None)
    @given(
        st.floats(min_value=-0.9, max_value=4.0),
        st.integers(min_value=0, max_value=4),
        st.floats(min_value=0.1, max_value=20.0),
    )
    def test_constant_linear_in_mass(self, al, j, mass):
        for make in (
            lambda m: SobolevSpec(laguerre(al), 0.0, j, m),
            lambda m: SobolevSpec(jacobi(al, 0.5), 1.0, j, m),
            lambda m: SobolevSpec(hermite(), 0.0, j, m),
            lambda m: SobolevSpec(gegenbauer(al), 0.0, j, m),
        ):
            single = eigen_law(make(mass))
            doubled = eigen_law(make(2.0 * mass))
            assert doubled.constant == 2.0 * single.constant
            assert doubled.exponent == single.exponent

    def test_exponent_exceeds_classical_degree(self):
        for j in GRID_ORDERS:
            for al in GRID_PARAMS:
                law = eigen_law(SobolevSpec(laguerre(al), 0.0, j, 1.0))
                gap = law.exponent - 1.0
                assert gap > 0.0
                assert math.isclose(gap, 2 * j + al + 1.0, rel_tol=1e-15)
                for be in GRID_PARAMS:
                    law = eigen_law(SobolevSpec(jacobi(al, be), 1.0, j, 1.0))
                    assert law.exponent > 2.0
                law = eigen_law(SobolevSpec(gegenbauer(al), 0.0, j, 1.0))
                assert law.exponent > 2.0
            law = eigen_law(SobolevSpec(hermite(), 0.0, j, 1.0))
            assert law.exponent > 1.0


class TestClassicalBranchLaw:
    def test_hermite(self):
        law = classical_branch_law(SobolevSpec(hermite(), 0.0, 0, 1.0))
        assert (law.exponent, law.constant) == (1.0, 4.0)
        assert law.index_map == "sym_odd"

    def test_gegenbauer(self):
        law = classical_branch_law(SobolevSpec(gegenbauer(0.25), 0.0, 1, 1.0))
        assert (law.exponent, law.constant) == (2.0, 4.0)
        assert law.index_map == "sym_even"


class TestRatioSeries:
    def test_recovers_constant_one(self):
        law = AsymptoticLaw("eigen", 2.0, 3.0)
        idx = np.array([2, 4, 8, 16])
        values = 3.0 * idx.astype(float) ** 2
        np.testing.assert_allclose(ratio_series(values, law, idx), 1.0, rtol=1e-15)

    def test_laguerre_exact_ratio_algebra(self):
        # lam_tilde_n = n + n(n+1)/2 against (1/2) n^2 gives exactly 1 + 3/n
        spec = SobolevSpec(laguerre(0.0), 0.0, 0, 1.0)
        seq = sobolev_eigen.lambda_tilde(spec, 64)
        law = eigen_law(spec)
        idx = np.array([4, 8, 16, 32, 64])
        ratios = ratio_series(seq.lam_tilde[idx], law, idx)
        np.testing.assert_allclose(ratios, 1.0 + 3.0 / idx, rtol=1e-13)

    def test_untouched_branch_tracks_classical_law(self):
        spec = SobolevSpec(hermite(), 0.0, 0, 1.0)
        seq = sobolev_eigen.lambda_tilde(spec, 10**5)
        branch = sobolev_eigen.untouched_branch(seq)
        law = classical_branch_law(spec)
        sel = branch.indices >= 3
        ratios = ratio_series(branch.lam_tilde[sel], law, branch.indices[sel])
        acc = extrapolate_limit(
            [ratios[(len(ratios) - 1) // (2**t)] for t in range(6, -1, -1)]
        )
        assert abs(acc.value - 1.0) <= 1e-3
        assert abs(ratios[-1] - 1.0) <= 1e-3

    def test_degenerate_index(self):
        law = AsymptoticLaw("eigen", 1.0, 1.0, "sym_even", offset=2)
        with pytest.raises(DegenerateIndex):
            ratio_series(np.array([1.0]), law, np.array([2]))


class TestExtrapolateLimit:
    def test_first_order_tail_is_exact(self):
        series = [1.0 + 1.0 / (10 * 2**t) for t in range(7)]
        res = extrapolate_limit(series)
        assert abs(res.value - 1.0) <= 1e-9

    def test_oracle_ratio_tail(self):
        series = [1.0 + 3.0 / (10 * 2**t) for t in range(7)]
        res = extrapolate_limit(series)
        assert abs(res.value - 1.0) <= 1e-9

    def test_constant_series_returned_as_is(self):
        res = extrapolate_limit([2.5] * 7)
        assert res.value == 2.5
        assert res.sweeps == 0
        assert res.breakdown

    def test_two_scale_tail(self):
        series = [1.0 + 2.0 / (8 * 2**t) + 5.0 / (8 * 2**t) ** 1.5 for t in range(7)]
        res = extrapolate_limit(series)
        assert abs(res.value - 1.0) <= 1e-5
        # at the schedule base the acceptance grid actually uses, the same
        # tail shape accelerates far below every tolerance tier
        series = [1.0 + 2.0 / (1562 * 2**t) + 5.0 / (1562 * 2**t) ** 1.5 for t in range(7)]
        res = extrapolate_limit(series)
        assert abs(res.value - 1.0) <= 1e-9

    def test_insufficient_samples(self):
        with pytest.raises(InsufficientSamples):
            extrapolate_limit([1.0, 2.0])

    @settings(max_examples=25, deadline=None)
    @given(
        st.floats(min_value=-50.0, max_value=50.0),
        st.floats(min_value=0.5, max_value=2.0),
        st.integers(min_value=5, max_value=50),
    )
    def test_exact_on_geometric_first_order(self, d, limit, n0):
        series = [limit + d / (n0 * 2**t) for t in range(7)]
        res = extrapolate_limit(series)
        assert abs(res.value - limit) <= 1e-9 * max(1.0, abs(limit))


class TestVerifyLaw:
    def test_laguerre_exact_cell(self):
        spec = SobolevSpec(laguerre(0.0), 0.0, 0, 1.0)
        v = verify_law(spec, "eigen", 10**5, 1e-3)
        assert v.passed
        assert v.deviation < 1e-6

    def test_legendre_exact_cell(self):
        spec = SobolevSpec(jacobi(0.0, 0.0), 1.0, 0, 1.0)
        v = verify_law(spec, "eigen", 10**5, 5e-3)
        assert v.passed

    def test_hermite_odd_branch(self):
        spec = SobolevSpec(hermite(), 0.0, 1, 1.0)
        v = verify_law(spec, "eigen", 2 * 10**5 + 1, 5e-3)
        assert v.passed
        assert v.law.index_map == "sym_odd"

    def test_mass_five(self):
        spec = SobolevSpec(laguerre(0.5), 0.0, 1, 5.0)
        v = verify_law(spec, "eigen", 10**5, 5e-3)
        assert v.passed

    def test_verdict_carries_schedule_and_tail(self):
        spec = SobolevSpec(laguerre(0.0), 0.0, 0, 1.0)
        v = verify_law(spec, "kernel", 2**12, 5e-3, schedule_base=64)
        assert v.n_used == tuple(64 * 2**t for t in range(7))
        assert len(v.raw_tail) == 3
        assert all(math.isfinite(r) and r > 0.0 for r in v.raw_tail)
        assert v.tolerance == 5e-3
        assert v.passed == (v.deviation <= v.tolerance)

    def test_growth_law_exponents_positive(self):
        # kernel/alpha/eigen exponents are 2(aj+b)+1 and up, always > 0
        for j in GRID_ORDERS:
            for al in GRID_PARAMS:
                specs = [
                    SobolevSpec(laguerre(al), 0.0, j, 1.0),
                    SobolevSpec(jacobi(al, 0.5), 1.0, j, 1.0),
                    SobolevSpec(hermite(), 0.0, j, 1.0),
                    SobolevSpec(gegenbauer(al), 0.0, j, 1.0),
                ]
                for spec in specs:
                    parity = "even" if j % 2 == 0 else "odd"
                    sym = spec.family.kind in ("hermite", "gegenbauer")
                    klaw = kernel_growth_law(
                        spec.family, spec.c, j // 2 if sym else j,
                        parity if sym else None,
                    )
                    elaw = eigen_law(spec)
                    assert klaw.exponent > 0.0
                    assert elaw.exponent > 0.0
                    assert math.isfinite(elaw.constant) and elaw.constant != 0.0

    def test_failure_is_reported_not_raised(self):
        spec = SobolevSpec(laguerre(0.5), 0.0, 1, 1.0)
        v = verify_law(spec, "eigen", 10**5, 1e-12)
        assert not v.passed
        assert v.deviation > 1e-12
