import pytest

from spectral_sphere import PRESETS, enumerate_singularities, reflection_scan
from spectral_sphere.units import NM_PER_MM, NM_PER_UM

DYE_RADIUS = 3.300 * NM_PER_MM
DIODE_RADIUS = 150 * NM_PER_UM


@pytest.fixture(scope="session")
def dye():
    return PRESETS["rose-bengal-dmso"]


@pytest.fixture(scope="session")
def diode():
    return PRESETS["diode"]


@pytest.fixture(scope="session")
def dye_modes(dye):
    return enumerate_singularities(dye, DYE_RADIUS)


@pytest.fixture(scope="session")
def fig2_scan(dye):
    return reflection_scan(dye, DYE_RADIUS, 4.981546, (548.9, 549.1), 10_000)


# one line per acceptance check, printed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
