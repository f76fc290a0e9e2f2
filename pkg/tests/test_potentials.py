import math

import numpy as np
import pytest

from scatter1d.potentials import (
    DeltaPair,
    Sampled,
    ScarfII,
    SinSquaredWellBarrier,
    SquareWellBarrier,
    effective_q,
    evaluate,
    support_interval,
)

ALL_POINTWISE = [
    ScarfII(s=0.2, q=1.0),
    SquareWellBarrier(u1=1.0, u2=2.0, w=1.0, a=0.5),
    SinSquaredWellBarrier(u1=1.5, u2=0.5, w=2.0, a=1.0),
    Sampled(xs=(-1.0, 0.0, 2.0), vs=(0.5, -1.0, 0.25)),
]


class TestValidation:
    def test_delta_pair_rejects_negative_strengths(self):
        with pytest.raises(ValueError):
            DeltaPair(u1=-1.0, u2=1.0, a=1.0)
        with pytest.raises(ValueError):
            DeltaPair(u1=1.0, u2=1.0, a=0.0)

    def test_square_rejects_bad_geometry(self):
        with pytest.raises(ValueError):
            SquareWellBarrier(u1=1.0, u2=1.0, w=0.0, a=0.0)
        with pytest.raises(ValueError):
            SquareWellBarrier(u1=1.0, u2=1.0, w=1.0, a=-0.1)

    def test_sampled_rejects_bad_abscissae(self):
        with pytest.raises(ValueError):
            Sampled(xs=(0.0,), vs=(1.0,))
        with pytest.raises(ValueError):
            Sampled(xs=(0.0, 0.0), vs=(1.0, 1.0))
        with pytest.raises(ValueError):
            Sampled(xs=(0.0, 1.0), vs=(1.0,))

    def test_scarf_rejects_negative_s(self):
        with pytest.raises(ValueError):
            ScarfII(s=-0.1, q=1.0)


class TestEvaluate:
    def test_scarf_at_origin(self):
        # (s^2 - q^2 - q) sech^2(0) + s(2q+1) sech(0) tanh(0) with s=0.2, q=1
        assert evaluate(ScarfII(s=0.2, q=1.0), 0.0) == pytest.approx(-1.96, rel=1e-12)

    def test_scarf_vanishes_at_infinity(self):
        p = ScarfII(s=0.7, q=2.3)
        assert abs(evaluate(p, 40.0)) < 1e-15
        assert abs(evaluate(p, -40.0)) < 1e-15

    def test_square_geometry(self):
        p = SquareWellBarrier(u1=1.0, u2=1.0, w=1.0, a=0.0)
        assert evaluate(p, -0.5) == -1.0
        assert evaluate(p, 0.5) == 1.0
        assert evaluate(p, 0.0) == 0.0
        assert evaluate(p, -1.5) == 0.0
        assert evaluate(p, 1.5) == 0.0

    def test_square_antisymmetry_about_gap_midpoint(self):
        p = SquareWellBarrier(u1=1.3, u2=1.3, w=0.8, a=0.6)
        xs = np.linspace(-2.0, 2.0, 401)
        np.testing.assert_allclose(evaluate(p, -xs), -np.asarray(evaluate(p, xs)), atol=0)

    def test_sin2_lobes_vanish_at_edges_and_peak(self):
        p = SinSquaredWellBarrier(u1=2.0, u2=1.0, w=1.0, a=1.0)
        assert evaluate(p, -1.5) == pytest.approx(0.0, abs=1e-15)
        assert evaluate(p, -0.5) == pytest.approx(0.0, abs=1e-30)
        assert evaluate(p, -1.0) == pytest.approx(-2.0, rel=1e-12)
        assert evaluate(p, 1.0) == pytest.approx(1.0, rel=1e-12)
        assert evaluate(p, 0.0) == 0.0

    def test_sin2_antisymmetry_for_equal_strengths(self):
        p = SinSquaredWellBarrier(u1=0.9, u2=0.9, w=1.7, a=0.4)
        xs = np.linspace(-3.0, 3.0, 601)
        np.testing.assert_allclose(evaluate(p, -xs), -np.asarray(evaluate(p, xs)), atol=1e-15)

    def test_sampled_reproduces_knots_and_interpolates(self):
        p = Sampled(xs=(-1.0, 0.0, 2.0), vs=(0.5, -1.0, 0.25))
        for x, v in zip(p.xs, p.vs):
            assert evaluate(p, x) == v
        assert evaluate(p, 1.0) == pytest.approx(-0.375)
        assert evaluate(p, -5.0) == 0.0
        assert evaluate(p, 5.0) == 0.0

    def test_delta_pair_has_no_pointwise_value(self):
        with pytest.raises(ValueError, match="non-pointwise"):
            evaluate(DeltaPair(u1=1.0, u2=1.0, a=1.0), 0.3)

    def test_array_input_matches_scalars(self):
        p = ScarfII(s=0.3, q=1.2)
        xs = np.array([-1.0, 0.0, 2.5])
        vals = evaluate(p, xs)
        assert vals.shape == xs.shape
        for x, v in zip(xs, vals):
            assert evaluate(p, float(x)) == pytest.approx(v, rel=1e-15)


class TestSupportInterval:
    def test_square_exact_support(self):
        assert support_interval(SquareWellBarrier(u1=1, u2=1, w=1.0, a=2.0)) == (-2.0, 2.0)

    def test_sampled_support(self):
        assert support_interval(Sampled(xs=(-1.0, 1.0), vs=(1.0, 1.0))) == (-1.0, 1.0)

    def test_delta_margin(self):
        assert support_interval(DeltaPair(u1=1, u2=2, a=0.5)) == (-1.0, 1.5)

    def test_scarf_cutoff_contains_envelope(self):
        xl, xr = support_interval(ScarfII(s=0.2, q=1.0), tol=1e-12)
        assert xl < -16 and xr > 16
        assert xr == pytest.approx(math.acosh(2.56 / 1e-12), rel=1e-12)

    def test_tail_is_below_tol_for_every_family(self):
        for p in ALL_POINTWISE:
            xl, xr = support_interval(p, tol=1e-12)
            for x in (xl - 0.5, xr + 0.5, xl - 10.0, xr + 10.0):
                assert abs(evaluate(p, x)) < 1e-12

    def test_bad_tol(self):
        with pytest.raises(ValueError):
            support_interval(ScarfII(s=0.2, q=1.0), tol=0.0)


class TestEffectiveQ:
    def test_square_rule(self):
        assert effective_q(SquareWellBarrier(u1=4.0, u2=1.0, w=1.0, a=0.0)) == 2.0

    def test_scarf_identity(self):
        assert effective_q(ScarfII(s=0.2, q=1.97)) == 1.97

    def test_sin2_rule(self):
        assert effective_q(SinSquaredWellBarrier(u1=1.0, u2=1.0, w=1.0, a=0.0)) == 1.0

    def test_delta_pair_has_none(self):
        with pytest.raises(ValueError, match="no dimensionless q"):
            effective_q(DeltaPair(u1=1.0, u2=1.0, a=1.0))
