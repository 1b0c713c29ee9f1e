"""Hypothesis strategies shared by the property tests."""
import random

from hypothesis import strategies as st

from twokinds.checks import random_complex
from twokinds.linalg import QQ, F, Mat

FIELDS = [F(2), F(3), F(5), QQ]


@st.composite
def fields(draw):
    return draw(st.sampled_from(FIELDS))


@st.composite
def matrices(draw, K=None, max_dim=5):
    K = K or draw(fields())
    r = draw(st.integers(0, max_dim))
    c = draw(st.integers(0, max_dim))
    lo, hi = (0, K.p - 1) if K.is_finite else (-3, 3)
    rows = [[draw(st.integers(lo, hi)) for _ in range(c)] for _ in range(r)]
    return Mat(K, rows, c)


@st.composite
def complexes(draw, K=None, max_total=6, lo=None, length=None):
    K = K or draw(fields())
    seed = draw(st.integers(0, 2 ** 32 - 1))
    return random_complex(random.Random(seed), K, max_total, lo=lo, length=length)
