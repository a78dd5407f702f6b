"""Frequency-response checks against the analytic structure."""

import math

import numpy as np
import pytest

from pasf.design import SeparationSpec, design_fir_equiripple, design_iir, make_complementary
from pasf.errors import InvalidArgumentError
from pasf.response import bode_table, default_grid, eval_response

FIG3 = SeparationSpec(rho_tilde=1.0, period=628, sampling_time=0.001)


def test_aperiodic_notches_at_harmonics():
    _, a = design_iir(FIG3, 1)
    for m in range(6):
        w = 2.0 * math.pi * m / (FIG3.period * FIG3.sampling_time)
        assert abs(eval_response(a, w)) <= 1e-10


def test_periodic_dc_gain_is_one():
    p, _ = design_iir(FIG3, 1)
    assert eval_response(p, 0.0) == pytest.approx(1.0 + 0.0j, abs=1e-15)


def test_complementary_pair_sums_to_one():
    rng = np.random.default_rng(3)
    p, _ = design_iir(FIG3, 1)
    comp = make_complementary(p)
    freqs = rng.uniform(0.0, math.pi / FIG3.sampling_time, size=64)
    total = eval_response(p, freqs) + eval_response(comp, freqs)
    assert np.max(np.abs(total - 1.0)) < 1e-12


def test_notch_and_unity_structure_orders_1_to_3():
    for order in (1, 2, 3):
        p, a = design_iir(FIG3, order)
        for m in range(6):
            w = 2.0 * math.pi * m / (FIG3.period * FIG3.sampling_time)
            assert abs(eval_response(a, w)) <= 1e-10
            assert abs(abs(eval_response(p, w)) - 1.0) <= 1e-10


def test_band_stop_midpoint_deepens_with_order():
    # probe the rendered stop-band depth: the tabulated gain nearest the
    # inter-harmonic midpoint (the exact midpoint is the filter's zero)
    mid = math.pi / (FIG3.period * FIG3.sampling_time)
    gains = []
    for order in (1, 2, 3):
        p, _ = design_iir(FIG3, order)
        table = bode_table(p)
        row = int(np.argmin(np.abs(table.omega - mid)))
        gains.append(table.gain_db[row])
    assert gains[0] > gains[1] > gains[2]


def test_interior_stopband_point_deepens_with_order():
    # quarter-way between harmonics, where the gain is far from the zero
    w = 0.5 * math.pi / (FIG3.period * FIG3.sampling_time)
    gains = []
    for order in (1, 2, 3):
        p, _ = design_iir(FIG3, order)
        gains.append(abs(eval_response(p, w)))
    assert gains[0] > gains[1] > gains[2]
    assert gains[0] < 0.5  # genuinely in the stop band


def _half_power_width(coeffs, spec):
    """Width of the band-pass lobe around the first harmonic at |F| = 2^-0.5."""
    w1 = 2.0 * math.pi / (spec.period * spec.sampling_time)
    half_span = math.pi / (spec.period * spec.sampling_time)
    target = 1.0 / math.sqrt(2.0)

    def gain(w):
        return abs(eval_response(coeffs, w))

    def bisect(lo, hi):
        # gain(hi_side) crosses the target monotonically near the lobe
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if gain(mid) > target:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    right = bisect(w1, w1 + half_span)
    left = bisect(w1, w1 - half_span)
    return abs(right - left)


def test_band_pass_width_grows_with_rho():
    widths = []
    for rho_tilde in (0.5, 1.0, 2.0):
        spec = SeparationSpec(rho_tilde, 628, 0.001)
        p, _ = design_iir(spec, 1)
        widths.append(_half_power_width(p, spec))
    assert widths[0] < widths[1] < widths[2]


def test_conjugate_symmetry():
    p, a = design_iir(FIG3, 2)
    freqs = np.linspace(0.1, math.pi / FIG3.sampling_time, 50)
    for coeffs in (p, a):
        pos = eval_response(coeffs, freqs)
        neg = eval_response(coeffs, -freqs)
        assert np.allclose(neg, np.conj(pos), atol=1e-14)


def test_fir_linear_phase_in_passband():
    p, _ = design_fir_equiripple(FIG3, 50)
    half = 25
    lifted_rate = FIG3.period * FIG3.sampling_time
    freqs = np.linspace(0.01, 0.8 * FIG3.rho, 7) / lifted_rate
    for w in freqs:
        resp = eval_response(p, w)
        expected = -w * half * lifted_rate
        # phase is defined modulo pi because the amplitude may change sign
        diff = np.angle(resp) - expected
        assert abs(math.remainder(diff, math.pi)) < 1e-6


def test_complementary_fir_phase_zero_at_band_pass():
    p, _ = design_fir_equiripple(FIG3, 50)
    comp = make_complementary(p)
    lifted_rate = FIG3.period * FIG3.sampling_time
    for m in range(10):
        w = (2 * m + 1) * math.pi / lifted_rate
        phase = math.degrees(np.angle(eval_response(comp, w)))
        assert abs(phase) < 1.0


def test_singular_denominator_raises():
    from pasf.design import FilterCoefficients
    from pasf.errors import SingularResponseError

    marginal = FilterCoefficients(
        kind="periodic-pass", realization="iir", order=1, period=10,
        sampling_time=0.1, feedback=np.array([-1.0]),
        feedforward=np.array([1.0, 0.0]),
    )
    with pytest.raises(SingularResponseError):
        eval_response(marginal, 0.0)  # denominator 1 - 1 = 0 at DC


def test_bode_table_shape_and_grid_validation():
    p, _ = design_iir(FIG3, 1)
    table = bode_table(p)
    assert len(table.omega) == 2000
    assert np.all(np.diff(table.omega) > 0)
    assert table.omega[-1] <= math.pi / FIG3.sampling_time * (1 + 1e-12)
    assert np.all(table.phase_deg > -180.0) and np.all(table.phase_deg <= 180.0)
    with pytest.raises(InvalidArgumentError):
        bode_table(p, np.array([2.0, 1.0]))
    with pytest.raises(InvalidArgumentError):
        default_grid(p, omega_min=0.0)
