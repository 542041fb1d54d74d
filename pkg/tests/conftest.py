import pytest

from causebounds import CountTable2x2, estimate_experimental, estimate_observational

from .support import PROFIT_EXP, PROFIT_OBS, VACCINE_EXP, VACCINE_OBS


@pytest.fixture
def vaccine():
    e = estimate_experimental(CountTable2x2.experimental(*VACCINE_EXP))
    o = estimate_observational(CountTable2x2.observational(*VACCINE_OBS))
    return e, o


@pytest.fixture
def profit():
    e = estimate_experimental(CountTable2x2.experimental(*PROFIT_EXP))
    o = estimate_observational(CountTable2x2.observational(*PROFIT_OBS))
    return e, o
