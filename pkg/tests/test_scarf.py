import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import binom

from scatter1d import scarf
from scatter1d.potentials import ScarfII, support_interval

EPS = np.finfo(float).eps

# frozen with 40-digit mpmath evaluation
R0_S02 = 0.31013015527025213
T0_S02 = 0.68986984472974787
R_S02_Q1_E001 = 0.28974456860920115
T_S02_Q1_E001 = 0.71025543139079885
R_S02_Q05_E1 = 0.010751500482284505
R_S02_Q15_E1EM8 = 0.99999993191257784
JACOBI_COMPLEX_REF = -0.63852130989583333 + 0.16972280208333333j


class TestProbabilities:
    def test_frozen_points(self):
        assert scarf.reflection(0.2, 1.0, 0.01) == pytest.approx(R_S02_Q1_E001, rel=1e-13)
        assert scarf.transmission(0.2, 1.0, 0.01) == pytest.approx(T_S02_Q1_E001, rel=1e-13)
        assert scarf.reflection(0.2, 0.5, 1.0) == pytest.approx(R_S02_Q05_E1, rel=1e-13)

    def test_low_energy_dip_below_zero_energy_value(self):
        # near-threshold reflection at integer q undershoots even the anomalous R(0)
        assert scarf.reflection(0.2, 1.0, 0.01) < R0_S02

    def test_ordinary_threshold_for_half_integer_q(self):
        assert scarf.reflection(0.2, 1.5, 1e-8) == pytest.approx(R_S02_Q15_E1EM8, rel=1e-12)
        assert scarf.reflection(0.2, 1.5, 1e-8) > 0.999
        assert scarf.transmission(0.5, 0.5, 1e-12) < 1e-9

    def test_zero_energy_rejected(self):
        with pytest.raises(ValueError):
            scarf.reflection(0.2, 1.0, 0.0)
        with pytest.raises(ValueError):
            scarf.transmission(0.2, 1.0, -1.0)

    @given(
        s=st.floats(0.0, 2.0),
        q=st.floats(-3.0, 3.0),
        energy=st.floats(1e-6, 100.0),
    )
    @settings(max_examples=300)
    def test_unitarity_to_ulps(self, s, q, energy):
        total = scarf.reflection(s, q, energy) + scarf.transmission(s, q, energy)
        assert abs(total - 1.0) <= 4 * EPS

    def test_q_periodicity_exact_at_dyadic_q(self):
        # q + 1 is exact in binary for dyadic q, so the reduction must agree bitwise
        for q in (0.25, -0.5, 0.75, 1.5):
            for energy in (0.01, 1.0):
                assert scarf.reflection(0.2, q, energy) == scarf.reflection(0.2, q + 1.0, energy)
                assert scarf.reflection(0.2, q, energy) == scarf.reflection(0.2, -q, energy)

    @given(q=st.floats(-2.5, 2.5), energy=st.floats(1e-4, 10.0))
    @settings(max_examples=200)
    def test_q_periodicity_generic(self, q, energy):
        a = scarf.reflection(0.3, q, energy)
        b = scarf.reflection(0.3, q + 1.0, energy)
        assert a == pytest.approx(b, abs=1e-13)


class TestZeroEnergyLimits:
    def test_anomalous_values(self):
        assert scarf.zero_energy_reflection(0.2) == pytest.approx(R0_S02, rel=1e-14)
        assert scarf.zero_energy_transmission(0.2) == pytest.approx(T0_S02, rel=1e-14)

    def test_reflectionless_at_s_zero(self):
        assert scarf.zero_energy_reflection(0.0) == 0.0
        assert scarf.zero_energy_transmission(0.0) == 1.0

    @given(s=st.floats(0.0, 3.0))
    @settings(max_examples=100)
    def test_limits_sum_to_one(self, s):
        total = scarf.zero_energy_reflection(s) + scarf.zero_energy_transmission(s)
        assert abs(total - 1.0) < 1e-14

    def test_small_energy_approaches_limit_at_integer_q(self):
        assert scarf.reflection(0.2, 1.0, 1e-8) == pytest.approx(R0_S02, abs=1e-6)

    def test_small_energy_approaches_one_off_integer_q(self):
        assert scarf.reflection(0.2, 1.3, 1e-10) > 0.999


class TestBoundSpectrum:
    def test_examples(self):
        assert scarf.bound_energies(2.5).energies == pytest.approx((-6.25, -2.25, -0.25))
        assert scarf.bound_energies(0.5).energies == pytest.approx((-0.25,))
        # integer q: the would-be n = q member is the zero-energy half bound state
        assert scarf.bound_energies(2.0).energies == pytest.approx((-4.0, -1.0))

    def test_empty_spectra(self):
        assert scarf.bound_energies(0.0).count == 0
        assert scarf.bound_energies(-0.5).count == 0
        assert scarf.bound_energies(-2.0).count == 0

    def test_energies_rise_with_n(self):
        energies = scarf.bound_energies(3.7).energies
        assert len(energies) == 4
        assert all(b > a for a, b in zip(energies, energies[1:]))
        assert all(e < 0 for e in energies)

    def test_near_integer_snaps(self):
        assert scarf.bound_energies(2.0 + 1e-12).count == 2
        assert scarf.bound_energies(2.0 - 1e-12).count == 2
        assert scarf.bound_energies(1.999).count == 2


class TestJacobiPolynomial:
    def test_degree_zero_and_one(self):
        assert scarf.jacobi_polynomial(0, 0.3 + 1j, -0.2j, 0.7 + 0.1j) == 1.0
        alpha, beta, z = 0.4 - 0.7j, 1.1 + 0.2j, 0.3 + 0.9j
        expected = (alpha + 1) + (alpha + beta + 2) * (z - 1) / 2
        assert scarf.jacobi_polynomial(1, alpha, beta, z) == pytest.approx(expected, rel=1e-15)

    def test_endpoint_identity_real_parameters(self):
        # P_n^(a,b)(1) = binomial(n + a, n)
        assert scarf.jacobi_polynomial(3, 0.7, -0.3, 1.0) == pytest.approx(2.8305, rel=1e-13)
        rng = np.random.default_rng(7)
        for _ in range(20):
            n = int(rng.integers(0, 8))
            a = float(rng.uniform(-0.9, 3.0))
            b = float(rng.uniform(-0.9, 3.0))
            assert scarf.jacobi_polynomial(n, a, b, 1.0) == pytest.approx(
                float(binom(n + a, n)), rel=1e-11, abs=1e-13
            )

    def test_against_mpmath_complex(self):
        got = scarf.jacobi_polynomial(3, 0.5 - 1.2j, -0.25 + 0.8j, 0.3 + 0.4j)
        assert got == pytest.approx(JACOBI_COMPLEX_REF, rel=1e-13)
        rng = np.random.default_rng(11)
        for _ in range(10):
            n = int(rng.integers(2, 7))
            a = complex(rng.uniform(-1, 2), rng.uniform(-2, 2))
            b = complex(rng.uniform(-1, 2), rng.uniform(-2, 2))
            z = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            ref = complex(mpmath.jacobi(n, a, b, z))
            assert scarf.jacobi_polynomial(n, a, b, z) == pytest.approx(ref, rel=1e-10)

    def test_vectorized(self):
        zs = np.array([0.1 + 0.2j, -0.4j, 1.0])
        vals = scarf.jacobi_polynomial(2, 0.3, 0.4, zs)
        assert vals.shape == zs.shape

    def test_bad_degree(self):
        with pytest.raises(ValueError):
            scarf.jacobi_polynomial(-1, 0.0, 0.0, 0.5)


class TestEigenfunction:
    def test_ground_state_nodeless_and_normalized(self):
        xs = np.linspace(-6, 6, 1001)
        psi = scarf.eigenfunction(0.2, 2.5, 0, xs)
        assert np.all(psi > 0)
        assert np.max(np.abs(psi)) <= 1.0 + 1e-12

    def test_node_counts(self):
        xs = np.linspace(-10, 10, 4001)
        for q, n, nodes in [(1.0, 1, 1), (2.0, 2, 2), (2.5, 2, 2), (2.5, 1, 1)]:
            psi = scarf.eigenfunction(0.2, q, n, xs)
            signs = np.sign(psi)
            signs = signs[signs != 0]
            assert int(np.sum(signs[1:] * signs[:-1] < 0)) == nodes

    def test_hbs_tails_flatten(self):
        # n = q at integer q: tails approach constants, derivative dies off
        p = ScarfII(s=0.2, q=2.0)
        _, xr = support_interval(p)
        psi = scarf.eigenfunction(0.2, 2.0, 2, np.array([xr - 1e-4, xr, xr + 1e-4]))
        deriv = (psi[2] - psi[0]) / 2e-4
        assert abs(deriv) < 1e-6
        assert abs(psi[1]) > 1e-3

    def test_bound_state_tails_decay(self):
        psi = scarf.eigenfunction(0.2, 2.5, 0, np.array([-25.0, 25.0]))
        assert np.max(np.abs(psi)) < 1e-8

    def test_out_of_range_index(self):
        with pytest.raises(IndexError):
            scarf.eigenfunction(0.2, 2.5, 3, 0.0)
        with pytest.raises(IndexError):
            scarf.eigenfunction(0.2, 2.0, 3, 0.0)
        with pytest.raises(IndexError):
            scarf.eigenfunction(0.2, 1.0, -1, 0.0)

    def test_integer_q_admits_the_hbs_index(self):
        assert scarf.eigenfunction(0.2, 2.0, 2, 0.1) == pytest.approx(
            scarf.eigenfunction(0.2, 2.0, 2, np.array([0.1]))[0]
        )
