import pytest

from npf.qexp import EIGENFORM_WEIGHTS, cusp_series, form_from_series

TABLE_N = 16001


@pytest.fixture(scope="session")
def cusp_series_16001():
    return {k: cusp_series(k, TABLE_N) for k in EIGENFORM_WEIGHTS}


@pytest.fixture(scope="session")
def forms(cusp_series_16001):
    return {k: form_from_series(s, k) for k, s in cusp_series_16001.items()}


@pytest.fixture(scope="session")
def delta(forms):
    return forms[12]


@pytest.fixture(scope="session")
def delta_series(cusp_series_16001):
    return cusp_series_16001[12]


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
