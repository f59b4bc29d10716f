import math
from fractions import Fraction

import numpy as np
import pytest

from sobeig import families, oracle, sobolev_eigen
from sobeig.errors import UnsupportedCase
from sobeig.families import gegenbauer, hermite, jacobi, laguerre
from sobeig.sobolev_eigen import SobolevSpec

RULE_FAMILIES = [
    jacobi(0.0, 0.0),
    jacobi(0.5, -0.5),
    jacobi(1.5, 0.5),
    laguerre(0.0),
    laguerre(0.5),
    laguerre(1.5),
    hermite(),
    gegenbauer(0.0),
    gegenbauer(0.25),
]


class TestGaussRule:
    def test_two_point_legendre(self):
        rule = oracle.gauss_rule(jacobi(0.0, 0.0), 2)
        np.testing.assert_allclose(
            rule.nodes, [-1.0 / math.sqrt(3.0), 1.0 / math.sqrt(3.0)], atol=1e-15
        )
        np.testing.assert_allclose(rule.weights, [1.0, 1.0], rtol=1e-14)

    def test_two_point_hermite(self):
        rule = oracle.gauss_rule(hermite(), 2)
        np.testing.assert_allclose(
            rule.nodes, [-math.sqrt(0.5), math.sqrt(0.5)], atol=1e-15
        )
        np.testing.assert_allclose(
            rule.weights, [math.sqrt(math.pi) / 2.0] * 2, rtol=1e-14
        )

    def test_one_point_laguerre(self):
        rule = oracle.gauss_rule(laguerre(0.0), 1)
        assert rule.nodes[0] == pytest.approx(1.0, rel=1e-15)
        assert rule.weights[0] == pytest.approx(1.0, rel=1e-15)

    def test_weights_positive_and_sum_to_mass(self):
        for fam in RULE_FAMILIES:
            for npoints in (1, 2, 7, 40):
                rule = oracle.gauss_rule(fam, npoints)
                assert np.all(rule.weights > 0.0)
                assert np.sum(rule.weights) == pytest.approx(
                    families.mu_zero(fam), rel=1e-12
                )

    def test_converges_within_budget_at_256_points(self):
        # the sweep budget must never trip over the acceptance grid
        for fam in RULE_FAMILIES:
            rule = oracle.gauss_rule(fam, 256)
            assert rule.nodes.shape == (256,)
            assert np.all(np.diff(rule.nodes) > 0.0)

    def test_nodes_inside_support(self):
        for fam in RULE_FAMILIES:
            rule = oracle.gauss_rule(fam, 24)
            assert np.all(np.diff(rule.nodes) > 0.0)
            if fam.kind in (families.JACOBI, families.GEGENBAUER):
                assert np.all(np.abs(rule.nodes) < 1.0)
            elif fam.kind == families.LAGUERRE:
                assert np.all(rule.nodes > 0.0)

    def test_symmetric_node_pairing(self):
        for fam in (hermite(), gegenbauer(0.25), jacobi(0.0, 0.0)):
            for npoints in (8, 25):
                rule = oracle.gauss_rule(fam, npoints)
                assert np.max(np.abs(rule.nodes + rule.nodes[::-1])) <= 1e-13
                assert np.max(
                    np.abs(rule.weights - rule.weights[::-1])
                ) <= 1e-13 * np.max(rule.weights)

    def test_against_dense_eigensolver(self):
        # independent spectral route: numpy's symmetric eigensolver
        for fam in (jacobi(1.5, 0.5), laguerre(0.5), hermite()):
            for npoints in (5, 32, 128, 256):
                rule = oracle.gauss_rule(fam, npoints)
                d = np.array(
                    [families.recurrence_row(fam, n).b for n in range(npoints)]
                )
                e = np.array(
                    [families.recurrence_row(fam, n + 1).a for n in range(npoints - 1)]
                )
                mat = np.diag(d) + np.diag(e, 1) + np.diag(e, -1)
                w, v = np.linalg.eigh(mat)
                scale = max(1.0, np.max(np.abs(w)))
                assert np.max(np.abs(rule.nodes - w)) <= 1e-11 * scale
                ref_weights = families.mu_zero(fam) * v[0, :] ** 2
                assert np.max(np.abs(rule.weights - ref_weights)) <= 1e-11 * np.max(
                    ref_weights
                )

    def test_rejects_empty_rule(self):
        with pytest.raises(ValueError):
            oracle.gauss_rule(hermite(), 0)


class TestMoments:
    def test_exactness_through_degree_grid(self):
        for fam in RULE_FAMILIES:
            assert oracle.moment_exactness(fam, 20) <= 1e-12, fam.label()

    def test_known_values(self):
        assert oracle.true_moment(hermite(), 2) == pytest.approx(
            math.sqrt(math.pi) / 2.0, rel=1e-15
        )
        assert oracle.true_moment(laguerre(0.0), 3) == pytest.approx(6.0, rel=1e-14)
        assert oracle.true_moment(jacobi(0.0, 0.0), 2) == pytest.approx(
            2.0 / 3.0, rel=1e-14
        )
        assert oracle.true_moment(gegenbauer(0.25), 7) == 0.0


class TestOrthonormality:
    def test_legendre_small(self):
        assert oracle.orthonormality_residual(jacobi(0.0, 0.0), 10) < 1e-12

    def test_half_integer_laguerre(self):
        assert oracle.orthonormality_residual(laguerre(0.5), 50) < 1e-10

    def test_hermite_first_pair_by_hand(self):
        # odd integrand: <h_0, h_1> vanishes
        rule = oracle.gauss_rule(hermite(), 2)
        vals = oracle.polynomial_values_at(hermite(), 1, rule.nodes)
        inner = float(np.sum(rule.weights * vals[:, 0] * vals[:, 1]))
        assert abs(inner) < 1e-15

    def test_all_families_to_fifty(self):
        for fam in RULE_FAMILIES:
            assert oracle.orthonormality_residual(fam, 50) < 1e-10, fam.label()


class TestExactAlpha:
    def test_triangular_numbers(self):
        case = oracle.exact_alpha(SobolevSpec(laguerre(0.0), 0.0, 0, 1.0), 12)
        assert case.values[3] == 6
        assert all(
            case.values[n] == Fraction(n * (n + 1), 2) for n in range(13)
        )

    def test_cubed_sum(self):
        case = oracle.exact_alpha(SobolevSpec(jacobi(0.0, 0.0), 1.0, 0, 1.0), 12)
        assert case.values[2] == 9
        assert all(
            case.values[n] == Fraction(n * (n + 1), 2) ** 2 for n in range(13)
        )

    def test_empty_sum_at_order(self):
        for j in (0, 1):
            case = oracle.exact_alpha(SobolevSpec(laguerre(2.0), 0.0, j, 1.0), 8)
            assert case.values[j] == 0

    def test_entries_nonnegative_rationals(self):
        case = oracle.exact_alpha(SobolevSpec(laguerre(1.0), 0.0, 1, 1.0), 50)
        assert all(isinstance(v, Fraction) and v >= 0 for v in case.values)

    def test_unsupported_cases_rejected(self):
        for spec in (
            SobolevSpec(laguerre(0.5), 0.0, 0, 1.0),
            SobolevSpec(laguerre(0.0), 0.0, 2, 1.0),
            SobolevSpec(jacobi(0.5, 0.5), 1.0, 0, 1.0),
            SobolevSpec(jacobi(0.0, 0.0), -1.0, 0, 1.0),
            SobolevSpec(hermite(), 0.0, 0, 1.0),
        ):
            with pytest.raises(UnsupportedCase):
                oracle.exact_alpha(spec, 5)

    def test_exact_lambda_tilde(self):
        case = oracle.exact_alpha(SobolevSpec(laguerre(0.0), 0.0, 0, 1.0), 5)
        lt = oracle.exact_lambda_tilde(case, Fraction(5))
        assert lt[4] == 4 + 5 * 10

    def test_pipeline_agreement_small(self):
        for spec in (
            SobolevSpec(laguerre(2.0), 0.0, 1, 1.0),
            SobolevSpec(jacobi(0.0, 0.0), 1.0, 1, 1.0),
        ):
            case = oracle.exact_alpha(spec, 400)
            got = sobolev_eigen.alpha_sequence(spec, 400)
            for n, exact in enumerate(case.values):
                want = float(exact)
                assert abs(got[n] - want) <= 1e-10 * max(1.0, abs(want))


class TestShiftIdentity:
    def test_laguerre_tight(self):
        assert oracle.shift_identity_residual(laguerre(0.0), 100, 3) < 1e-10

    def test_all_families_acceptance_scale(self):
        for fam in RULE_FAMILIES:
            assert oracle.shift_identity_residual(fam, 200, 4) < 1e-9, fam.label()


class TestSignPattern:
    def test_constant_at_plus_one(self):
        assert oracle.sign_pattern_check(jacobi(0.0, 0.0), 1.0, 0, 200)

    def test_alternating_at_minus_one(self):
        assert oracle.sign_pattern_check(jacobi(0.0, 0.0), -1.0, 0, 200)

    def test_asymmetric_derivative_case(self):
        assert oracle.sign_pattern_check(jacobi(0.3, 0.7), -1.0, 1, 500)

    def test_rejects_interior_point(self):
        with pytest.raises(ValueError):
            oracle.sign_pattern_check(jacobi(0.0, 0.0), 0.0, 0, 10)

    def test_rejects_non_jacobi(self):
        with pytest.raises(ValueError):
            oracle.sign_pattern_check(hermite(), 1.0, 0, 10)
