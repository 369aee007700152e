import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from purephoton.dispersion import (
    CrystalConfig,
    SellmeierCoefficients,
    default_crystal,
    default_sellmeier,
    delta_k,
    group_velocity,
    inverse_group_velocity,
    load_sellmeier,
    refractive_index,
    solve_poling_period,
    tilt_angle,
    tilt_angle_from_inverse_velocities,
    wavevector,
)
from purephoton.errors import (
    ConfigError,
    DegenerateOrientationError,
    DomainError,
    NoPhysicalSolutionError,
)
from purephoton.units import C_UM_PER_PS, nm_to_omega

# Hand evaluation of the published fits in plain floating point.
N_Z_1584 = 1.81523177974665
N_Y_1584 = 1.7334305321304118
N_Y_792 = 1.7571682436993585


def constant_index(n, axis="y"):
    return SellmeierCoefficients(axis, "constant", {"n": n}, (0.3, 4.0))


@pytest.fixture(scope="module")
def coeffs():
    return default_sellmeier()


def test_regression_values(coeffs):
    assert refractive_index(coeffs["z"], 1.584) == pytest.approx(N_Z_1584, rel=1e-14)
    assert refractive_index(coeffs["y"], 1.584) == pytest.approx(N_Y_1584, rel=1e-14)
    assert refractive_index(coeffs["y"], 0.792) == pytest.approx(N_Y_792, rel=1e-14)
    assert 1.7 < N_Z_1584 < 1.9


def test_window_edges(coeffs):
    lo, hi = coeffs["z"].valid_um
    assert refractive_index(coeffs["z"], lo) > 1
    assert refractive_index(coeffs["z"], hi) > 1
    with pytest.raises(DomainError, match=r"\[0.4, 3.3\]"):
        refractive_index(coeffs["z"], hi + 1e-6)
    with pytest.raises(DomainError):
        refractive_index(coeffs["z"], lo - 1e-6)


@pytest.mark.parametrize("axis", ["y", "z"])
def test_normal_dispersion_in_telecom_band(coeffs, axis):
    lam = np.linspace(1.40, 1.75, 200)
    n = refractive_index(coeffs[axis], lam)
    assert np.all(n > 1)
    assert np.all(np.diff(n) < 0)
    k = wavevector(coeffs[axis], lam)
    assert np.all(np.diff(k) < 0)


def test_wavevector_definition():
    assert wavevector(constant_index(1.5), 1.0) == pytest.approx(3 * math.pi)


@pytest.mark.parametrize("axis", ["y", "z"])
@pytest.mark.parametrize("lam", [0.75, 0.792, 1.46, 1.584, 1.675])
def test_wavevector_matches_phase_finite_difference(coeffs, axis, lam):
    # k = d(phase per unit length)/d(...) : phase accumulated over 1 um is
    # 2 pi n / lambda; check via the derivative of n(lambda)*omega/c in omega.
    c = coeffs[axis]
    w = 2 * math.pi * C_UM_PER_PS / lam
    h = w * math.sqrt(np.finfo(float).eps)

    def k_of_w(ww):
        return float(refractive_index(c, 2 * math.pi * C_UM_PER_PS / ww)) * ww / C_UM_PER_PS

    assert wavevector(c, lam) == pytest.approx(k_of_w(w), rel=1e-14)
    fd = (k_of_w(w + h) - k_of_w(w - h)) / (2 * h)
    analytic = float(inverse_group_velocity(c, lam))
    assert abs(analytic - fd) / analytic < 1e-6


def test_group_velocity_constant_index():
    assert group_velocity(constant_index(2.0), 1.0) == pytest.approx(C_UM_PER_PS / 2)


def test_group_velocity_bounds_and_edges(coeffs):
    v = group_velocity(coeffs["y"], 1.584)
    assert 0 < v < C_UM_PER_PS
    with pytest.raises(DomainError):
        group_velocity(coeffs["y"], coeffs["y"].valid_um[1])


def test_pump_group_index_between_signal_and_idler(coeffs):
    gp = inverse_group_velocity(coeffs["y"], 0.792)
    gs = inverse_group_velocity(coeffs["y"], 1.584)
    gi = inverse_group_velocity(coeffs["z"], 1.584)
    assert min(gs, gi) < gp < max(gs, gi)


def test_solve_poling_period(crystal):
    period = solve_poling_period(crystal, 1584.0)
    assert period == pytest.approx(46.1, abs=1.0)
    w0 = nm_to_omega(1584.0)
    assert abs(delta_k(crystal, w0, w0)) < 1e-9
    assert abs(delta_k(crystal, w0, w0) * crystal.length_um / 2) < 1e-6


def test_round_trip_over_band():
    base = default_crystal()
    periods = []
    for lam in np.arange(1460.0, 1675.0 + 1e-9, 5.0):
        c = base.matched(lam)
        w0 = nm_to_omega(lam)
        assert abs(float(delta_k(c, w0, w0))) < 1e-9
        periods.append(c.period_um)
    # The period is stationary where 2 k'_p = k'_s + k'_i (group-velocity
    # matching), so it is monotone on either side of that point, not overall.
    lams = np.arange(1460.0, 1675.0 + 1e-9, 5.0)
    d = np.diff(periods)
    turn = int(np.argmax(d > 0))
    assert 0 < turn < d.size
    assert np.all(d[:turn] < 0) and np.all(d[turn:] > 0)
    gvm = [
        2 * inverse_group_velocity(base.pump, lam * 5e-4)
        - inverse_group_velocity(base.signal, lam * 1e-3)
        - inverse_group_velocity(base.idler, lam * 1e-3)
        for lam in lams
    ]
    assert np.all(np.sign(gvm[: turn - 1]) == np.sign(gvm[0]))
    assert np.all(np.sign(gvm[turn + 2 :]) == -np.sign(gvm[0]))


def test_grating_term_linearity(crystal):
    w = nm_to_omega(np.array([1580.0, 1590.0]))
    with_g = delta_k(crystal, w, w[::-1])
    without = delta_k(crystal, w, w[::-1], include_grating=False)
    np.testing.assert_allclose(
        np.abs(without - with_g), 2 * math.pi / crystal.period_um, rtol=1e-12
    )


def test_delta_k_monotone_near_degeneracy(crystal):
    wp = 2 * nm_to_omega(1584.0)
    ws = np.linspace(wp / 2 - 2.0, wp / 2 + 2.0, 401)
    dk = delta_k(crystal, ws, wp - ws, wp)
    assert np.all(np.isfinite(dk))
    d = np.diff(dk)
    assert np.all(d > 0) or np.all(d < 0)


def test_no_physical_solution():
    same = {"y": constant_index(1.8, "y"), "z": constant_index(1.8, "z")}
    c = CrystalConfig(30.0, same)
    with pytest.raises(NoPhysicalSolutionError):
        solve_poling_period(c, 1584.0)


def test_tilt_angle_at_1584(crystal):
    assert tilt_angle(crystal, 1584.0) == pytest.approx(45.0, abs=2.0)


def test_tilt_symmetric_gvm():
    # 2 k'_p = k'_s + k'_i
    assert tilt_angle_from_inverse_velocities(2.0, 1.5, 2.5) == pytest.approx(45.0)


def test_tilt_swap_axes(crystal):
    theta = tilt_angle(crystal, 1584.0)
    assert tilt_angle(crystal.swapped(), 1584.0) == pytest.approx(90.0 - theta, abs=1e-10)


def test_tilt_vertical_ridge():
    with pytest.raises(DegenerateOrientationError):
        tilt_angle_from_inverse_velocities(1.0, 0.5, 1.0)


@given(
    st.floats(0.1, 10.0),
    st.floats(0.1, 10.0),
    st.floats(0.1, 10.0),
    st.floats(1e-3, 1e3),
)
def test_tilt_scale_invariance(p, s, i, scale):
    if abs(p - i) < 1e-6:
        return
    a = tilt_angle_from_inverse_velocities(p, s, i)
    b = tilt_angle_from_inverse_velocities(p * scale, s * scale, i * scale)
    assert a == pytest.approx(b, abs=1e-9)
    assert -90.0 < a <= 90.0


def test_config_validation(coeffs):
    with pytest.raises(ConfigError):
        CrystalConfig(0.0, coeffs)
    with pytest.raises(ConfigError):
        CrystalConfig(30.0, coeffs, poling_period_um=-1.0)
    with pytest.raises(ConfigError):
        CrystalConfig(30.0, coeffs, signal_axis="z", idler_axis="z")
    with pytest.raises(ConfigError):
        SellmeierCoefficients("y", "one_pole_ir", {"A": 1.0}, (0.4, 1.0))


def test_sellmeier_json_round_trip(tmp_path, coeffs):
    import json

    path = tmp_path / "z.json"
    path.write_text(json.dumps(coeffs["z"].to_dict()))
    loaded = load_sellmeier(path)
    assert loaded == coeffs["z"]
    assert "Fradkin" in loaded.source
