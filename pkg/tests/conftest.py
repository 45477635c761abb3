import numpy as np
import pytest
from hypothesis import assume
from hypothesis import strategies as st

FIG5_SIN_CHI = (1.0, np.sqrt(2) / 2, 0.5, 1 / 3)

coord = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False, allow_infinity=False)


@st.composite
def unit_vectors(draw):
    v = np.array([draw(coord), draw(coord), draw(coord)])
    n = np.linalg.norm(v)
    assume(n > 0.1)
    return v / n


@st.composite
def ball_vectors(draw):
    v = draw(unit_vectors())
    return v * draw(st.floats(min_value=0.0, max_value=1.0))


@st.composite
def target_pairs(draw, min_sin_chi=0.05):
    a = draw(unit_vectors())
    b = draw(unit_vectors())
    assume(np.linalg.norm(np.cross(a, b)) > min_sin_chi)
    return a, b


phis = st.floats(min_value=0.0, max_value=np.pi / 2)
interior_phis = st.floats(min_value=0.01, max_value=np.pi / 2 - 0.01)
sin_chis = st.floats(min_value=0.0, max_value=1.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20170501)
