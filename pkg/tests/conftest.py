import pytest

from purephoton.dispersion import default_crystal
from purephoton.scan import optimize_pump_bandwidth, wavelength_sweep


@pytest.fixture(scope="session")
def crystal():
    """30 mm PPKTP, period solved for degeneracy at 1584 nm."""
    c = default_crystal()
    return c.with_poling_period(c.period_um)


@pytest.fixture(scope="session")
def optimum_jsi(crystal):
    return optimize_pump_bandwidth(crystal, 1584.0, "p_jsi")


@pytest.fixture(scope="session")
def optimum_jsa(crystal):
    return optimize_pump_bandwidth(crystal, 1584.0, "p_jsa")


@pytest.fixture(scope="session")
def sweep_rows(crystal, optimum_jsi, optimum_jsa):
    """Fixed-period sweep over 1460..1675 nm in 5 nm steps."""
    return wavelength_sweep(
        crystal, 1460.0, 1675.0, 5.0, optimum_jsi.bandwidth, optimum_jsa.bandwidth
    )


ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
