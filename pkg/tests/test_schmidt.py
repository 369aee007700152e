import json

import numpy as np
import pytest

from purephoton.errors import ContractError, DegenerateInputError, GridSizeError
from purephoton.jsa import JointSpectrum, PumpSpec, SpectralGrid, build_jsa, default_grid
from purephoton.schmidt import SchmidtResult, decompose, purity, purity_oracle

GRID = SpectralGrid.centered(0.0, 0.0, 6.0, 96, unit="rad/ps")


def _double_gaussian(sig_plus, sig_minus, grid=GRID):
    ws, wi = np.meshgrid(grid.signal, grid.idler, indexing="ij")
    plus = (ws + wi) / np.sqrt(2)
    minus = (ws - wi) / np.sqrt(2)
    f = np.exp(-plus**2 / (4 * sig_plus**2) - minus**2 / (4 * sig_minus**2))
    return JointSpectrum(grid, f, "JSA").normalize()


def test_separable_is_pure():
    x = GRID.signal
    f = np.outer(np.exp(-x**2), np.exp(-((x - 0.5) ** 2) / 2) * (1 + 0.3 * np.cos(3 * x)))
    r = decompose(JointSpectrum(GRID, f, "JSA").normalize())
    assert r.purity == pytest.approx(1.0, abs=1e-9)
    assert r.schmidt_number == pytest.approx(1.0, abs=1e-9)
    assert np.sum(r.coefficients**2) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("ratio", [0.5, 2.0, 3.0])
def test_double_gaussian_analytic(ratio):
    # Gaussian amplitude with widths r: K = (r + 1/r) / 2
    jsa = _double_gaussian(ratio * 0.5, 0.5)
    expected = 2.0 / (ratio + 1.0 / ratio)
    assert decompose(jsa).purity == pytest.approx(expected, abs=1e-6)
    assert purity_oracle(jsa) == pytest.approx(expected, abs=1e-6)
    # |f|^2 is again a double Gaussian with widths divided by sqrt(2): same ratio
    assert decompose(jsa.intensity()).purity == pytest.approx(expected, abs=1e-6)


def test_ratio_two_gives_point_eight():
    assert decompose(_double_gaussian(1.4, 0.7)).purity == pytest.approx(0.8, abs=1e-6)


def test_random_low_rank_matches_oracle():
    rng = np.random.default_rng(20240917)
    grid = SpectralGrid.centered(0.0, 0.0, 1.0, 48, unit="rad/ps")
    for _ in range(20):
        rank = int(rng.integers(1, 6))
        f = rng.normal(size=(48, rank)) @ rng.normal(size=(rank, 48))
        spec = JointSpectrum(grid, f, "JSA").normalize()
        assert decompose(spec).purity == pytest.approx(purity_oracle(spec), abs=1e-8)


def test_identity_is_maximally_mixed():
    n = 32
    grid = SpectralGrid.centered(0.0, 0.0, 1.0, n, unit="rad/ps")
    r = decompose(JointSpectrum(grid, np.eye(n), "JSA").normalize())
    assert r.purity == pytest.approx(1.0 / n, rel=1e-12)
    assert r.modes == n


def test_invariant_under_transpose_and_scale():
    jsa = _double_gaussian(1.1, 0.4)
    base = decompose(jsa).purity
    assert decompose(jsa.transposed()).purity == pytest.approx(base, abs=1e-12)
    scaled = JointSpectrum(GRID, 7.5 * jsa.values, "JSA").normalize()
    assert decompose(scaled).purity == pytest.approx(base, abs=1e-12)


def test_requires_normalized():
    spec = JointSpectrum(GRID, np.ones(GRID.shape), "JSI")
    with pytest.raises(ContractError):
        decompose(spec)


def test_zero_matrix():
    spec = JointSpectrum(GRID, np.zeros(GRID.shape), "JSI")
    with pytest.raises((DegenerateInputError, ContractError)):
        decompose(spec.normalize())


def test_oracle_size_limit():
    grid = SpectralGrid.centered(0.0, 0.0, 1.0, 200, unit="rad/ps")
    spec = JointSpectrum(grid, np.eye(200), "JSA").normalize()
    with pytest.raises(GridSizeError):
        purity_oracle(spec)


def test_purity_helper(crystal, optimum_jsi):
    pump = PumpSpec(792.0, optimum_jsi.bandwidth)
    jsa = build_jsa(crystal, pump, default_grid(crystal, pump, 128))
    assert purity(jsa) == pytest.approx(decompose(jsa).purity)


def test_jsa_purity_not_above_jsi(crystal, optimum_jsi, optimum_jsa):
    for sigma in (optimum_jsi.bandwidth, optimum_jsa.bandwidth, 2.0):
        pump = PumpSpec(792.0, sigma)
        grid = default_grid(crystal, pump, 128).to_frequency()
        jsa = build_jsa(crystal, pump, grid)
        assert decompose(jsa).purity <= decompose(jsa.intensity()).purity + 1e-12


def test_oracle_on_crystal_spectra(crystal, optimum_jsi):
    pump = PumpSpec(792.0, optimum_jsi.bandwidth)
    jsa = build_jsa(crystal, pump, default_grid(crystal, pump, 128).to_frequency())
    for spec in (jsa, jsa.intensity()):
        assert decompose(spec).purity == pytest.approx(purity_oracle(spec), abs=1e-8)


def test_json_round_trip():
    r = decompose(_double_gaussian(1.4, 0.7))
    doc = json.loads(r.to_json())
    back = SchmidtResult.from_dict(doc)
    assert back.purity == r.purity
    np.testing.assert_array_equal(back.coefficients, r.coefficients)
    assert doc["kind"] == "JSA"
