"""Shared study data and hypothesis strategies."""

import numpy as np
from hypothesis import strategies as st

from causebounds import (
    CountTable2x2,
    ExperimentalDistribution,
    ObservationalDistribution,
    estimate_experimental,
    estimate_observational,
)
from causebounds.oracle import ResponseTypeDistribution

# study tables from the worked examples: (x_pos, x_neg, xp_pos, xp_neg)
VACCINE_EXP = (795, 705, 720, 780)
VACCINE_OBS = (210, 450, 90, 750)
ENTICEMENT_EXP = (150, 1350, 1350, 150)
PROFIT_EXP = (825, 675, 600, 900)
PROFIT_OBS = (450, 345, 30, 675)
PROFIT_BENEFIT = (1500, -800, 0, -2000)


probs = st.floats(0.0, 1.0, allow_nan=False)
interior = st.floats(0.01, 0.99, allow_nan=False)


@st.composite
def experimental(draw, elements=probs):
    return ExperimentalDistribution(draw(elements), draw(elements))


@st.composite
def populations(draw):
    """Response-type populations with exactly derived (e, o)."""
    w = np.array([draw(st.floats(0.0, 1.0)) for _ in range(4)])
    if w.sum() == 0:
        w[0] = 1.0
    w = w / w.sum()
    props = tuple(draw(probs) for _ in range(4))
    rtd = ResponseTypeDistribution(*map(float, w), propensity=props)
    return rtd, rtd.experimental(), rtd.observational()


def obs(*cells):
    return ObservationalDistribution(*cells)
