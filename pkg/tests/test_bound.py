"""Tests for the bound-state families and their overlap structure."""

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, strategies as st

from coulomb1d.bound import (
    BoundState,
    anomalous_norm,
    anomalous_wavefunction,
    anomalous_wavefunction_derivative,
    delta_np,
    elliptic_overlap_report,
    gram_analysis,
    overlap,
    poly_pair,
    regular_orthogonality,
    regular_wavefunction,
    spectrum,
)
from coulomb1d.specfun import DomainError, SingularityError


def _dfact(m):
    out = 1
    while m > 0:
        out *= m
        m -= 2
    return out


class TestPolyPair:
    def test_base_case(self):
        pq = poly_pair(0)
        assert pq.p_coeffs == (1,) and pq.q_coeffs == (1,)

    def test_printed_low_orders(self):
        assert poly_pair(1).p_coeffs == (3, -4)
        assert poly_pair(1).q_coeffs == (1, -4)
        assert poly_pair(2).p_coeffs == (15, -36, 16)
        # the recurrence fixes this one; it resolves an ambiguity in the
        # reference tables (two entries printed under the same label)
        assert poly_pair(2).q_coeffs == (3, -28, 16)

    def test_q2_matches_4x_4x_minus_7_plus_3(self, dps30):
        # expanded form of the second printed expression: 16x^2 - 28x + 3
        pq = poly_pair(2)
        for x in ("0.3", "2.0", "5.5"):
            x = mp.mpf(x)
            assert abs(pq.q_value(x) - (4 * x * (4 * x - 7) + 3)) == 0

    @given(n=st.integers(0, 8))
    def test_structure(self, n):
        pq = poly_pair(n)
        assert all(isinstance(c, int) for c in pq.p_coeffs + pq.q_coeffs)
        assert pq.p_coeffs[0] == _dfact(2 * n + 1)
        assert pq.q_coeffs[0] == _dfact(2 * n - 1)
        assert pq.p_coeffs[-1] == (-4) ** n
        assert pq.q_coeffs[-1] == (-4) ** n


class TestSpectrum:
    def test_interlacing(self):
        reg = spectrum("regular", 4)
        ano = spectrum("anomalous", 4)
        merged = sorted(reg + ano, key=lambda s: -s.energy)
        kinds = [s.kind for s in merged]
        assert kinds == ["anomalous", "regular"] * 4

    def test_energy_ratios(self):
        ano = spectrum("anomalous", 3)
        assert abs(ano[0].energy - 4) < 1e-20
        assert abs(ano[1].energy - mp.mpf(4) / 9) < 1e-20
        reg = spectrum("regular", 2)
        assert reg[0].energy == 1
        assert abs(reg[1].energy - mp.mpf(1) / 4) < 1e-20

    def test_eta_values(self):
        assert spectrum("regular", 2)[1].eta_n == -2
        assert spectrum("anomalous", 1)[0].eta_n == mp.mpf("-0.5")

    def test_validation(self):
        with pytest.raises(ValueError):
            spectrum("rydberg", 3)
        with pytest.raises(DomainError):
            spectrum("regular", 0)


class TestWavefunctions:
    def test_ground_state_closed_form(self, dps30):
        # zeta_1(u) = u*exp(-u) for u > 0
        for u in ("0.3", "2.0", "7.5"):
            u = mp.mpf(u)
            assert abs(regular_wavefunction(1, u) - u * mp.exp(-u)) < 1e-25

    def test_regular_parity_odd(self, dps30):
        for n in (1, 2, 3):
            v = regular_wavefunction(n, mp.mpf("1.7"))
            assert abs(regular_wavefunction(n, mp.mpf("-1.7")) + v) < 1e-25

    def test_anomalous_parity_even(self, dps30):
        for n in (0, 1, 2):
            v = anomalous_wavefunction(n, mp.mpf("0.9"))
            assert abs(anomalous_wavefunction(n, mp.mpf("-0.9")) - v) < 1e-25

    def test_anomalous_closed_form_n0(self, dps30):
        # xi_0(u) = u*(K0(u) + K1(u))/sqrt(pi)
        u = mp.mpf("1.3")
        expected = u * (mp.besselk(0, u) + mp.besselk(1, u)) / mp.sqrt(mp.pi)
        assert abs(anomalous_wavefunction(0, u) - expected) < 1e-25

    def test_origin_is_ramification_point(self):
        with pytest.raises(SingularityError):
            anomalous_wavefunction(0, 0)
        with pytest.raises(SingularityError):
            anomalous_wavefunction_derivative(1, 0)

    def test_anomalous_finite_origin_limit(self, dps30):
        # xi_n(0+) = q_n(0)/((-2)^n*sqrt(pi)) since t*K1(t) -> 1
        for n in (0, 1, 2):
            val = anomalous_wavefunction(n, mp.mpf("1e-20"))
            expected = mp.mpf(_dfact(2 * n - 1)) / ((-2) ** n * mp.sqrt(mp.pi))
            assert abs(val - expected) / abs(expected) < 1e-15

    def test_derivative_matches_finite_differences(self, dps30):
        for n in (0, 2):
            for u in (mp.mpf("0.8"), mp.mpf("-2.2")):
                h = mp.mpf("1e-10")
                fd = (anomalous_wavefunction(n, u + h)
                      - anomalous_wavefunction(n, u - h)) / (2 * h)
                assert abs(fd - anomalous_wavefunction_derivative(n, u)) < 1e-9

    @pytest.mark.parametrize("n", [0, 1, 2, 3])
    def test_u_route_equals_bessel_route(self, n, dps30):
        # xi_n(t) = 2t*exp(-t)*U(1/2 - n, 2, 2t) exactly
        for t in ("0.4", "2.0", "6.5", "10"):
            t = mp.mpf(t)
            lhs = 2 * t * mp.exp(-t) * mp.hyperu(mp.mpf(1) / 2 - n, 2, 2 * t)
            rhs = anomalous_wavefunction(n, t)
            assert abs(lhs - rhs) / abs(rhs) < 1e-25

    def test_eigen_equation_residual(self, dps30):
        # -psi'' + (2*eta_n/|u|)*psi + psi = 0 in scaled units
        for kind, n, eta_n in (("regular", 2, -2), ("anomalous", 1, "-1.5")):
            eta_n = mp.mpf(eta_n)
            fn = (lambda u: regular_wavefunction(n, u)) if kind == "regular" \
                else (lambda u: anomalous_wavefunction(n, u))
            u = mp.mpf("1.3")
            d2 = mp.diff(fn, u, 2, h=mp.mpf("1e-6"))
            residual = -d2 + (2 * eta_n / u) * fn(u) + fn(u)
            assert abs(residual) < 1e-12


class TestNorms:
    @pytest.mark.parametrize("n,beta", [(0, 3), (1, 41), (2, 1063)])
    def test_integer_constants(self, n, beta, dps30):
        norm, extracted = anomalous_norm(n)
        assert norm > 0
        assert abs(extracted - beta) / beta < 1e-8

    def test_regular_norm_quarter_n(self, dps30):
        for n in range(1, 6):
            ov = regular_orthogonality(n, n, -2)
            # overlap(x-space) = (2n/|lam|)*u_norm; u_norm must equal n/4
            u_norm = ov * 2 / (2 * n)
            assert abs(u_norm - mp.mpf(n) / 4) / (mp.mpf(n) / 4) < 1e-10

    def test_regular_orthogonality(self, dps30):
        assert abs(regular_orthogonality(1, 3, -2)) < 1e-15
        assert abs(regular_orthogonality(2, 4, -2)) < 1e-15


class TestOverlaps:
    def test_opposite_parity_vanishes_on_full_line(self):
        ano = spectrum("anomalous", 1)[0]
        reg = spectrum("regular", 1)[0]
        assert overlap(ano, reg, "full_line") == 0

    def test_full_line_doubles_half_line(self, dps30):
        s = spectrum("anomalous", 2)
        half = overlap(s[0], s[1], "half_line")
        full = overlap(s[0], s[1], "full_line")
        assert abs(full - 2 * half) < 1e-20

    def test_scaling_with_coupling(self, dps30):
        s = spectrum("anomalous", 2)
        v2 = overlap(s[0], s[1], "half_line", lam=-2)
        v5 = overlap(s[0], s[1], "half_line", lam=-5)
        assert abs(v2 * 2 - v5 * 5) < 1e-18

    def test_repulsive_coupling_rejected(self):
        s = spectrum("anomalous", 2)
        with pytest.raises(DomainError):
            overlap(s[0], s[1], "half_line", lam=1)


class TestHermiticityDefects:
    def test_antisymmetry(self, dps30):
        assert abs(delta_np(0, 1) + delta_np(1, 0)) < 1e-8

    def test_identical_indices_rejected(self):
        with pytest.raises(ValueError):
            delta_np(2, 2)

    def test_known_value(self, dps30):
        assert abs(delta_np(0, 1) + 8 / (3 * mp.pi)) < 1e-8


class TestGram:
    def test_trivial_size_one(self):
        res = gram_analysis(1)
        assert res.M.shape == (1, 1)
        assert abs(res.M[0, 0] - 1) < 1e-12
        assert abs(res.eigenvalues[0] - 1) < 1e-12

    def test_orthogonalization_property(self):
        res = gram_analysis(3)
        assert np.allclose(res.P.T @ res.M @ res.P, np.eye(3), atol=1e-12)
        assert np.all(res.eigenvalues > 0)
        assert np.all(np.diff(res.eigenvalues) <= 0)

    def test_unit_diagonal_and_symmetry(self):
        res = gram_analysis(3)
        assert np.allclose(np.diag(res.M), 1, atol=1e-14)
        assert np.allclose(res.M, res.M.T, atol=1e-15)

    def test_validation(self):
        with pytest.raises(DomainError):
            gram_analysis(0)


class TestEllipticReport:
    def test_discrepancy_is_reported(self):
        report = elliptic_overlap_report()
        assert {rec["pair"] for rec in report} == {(0, 1), (0, 2), (1, 2)}
        for rec in report:
            # the literal closed-form expressions do not reproduce the
            # quadrature values; the report must say so rather than agree
            assert rec["discrepant"]
            assert rec["difference"] > 1e-3
