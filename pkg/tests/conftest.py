from fractions import Fraction

import numpy as np
import pytest
from hypothesis import settings, strategies as st

from ptlab.gf2 import BoolFn

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def bool_fns(draw, min_n=1, max_n=4):
    n = draw(st.integers(min_n, max_n))
    code = draw(st.integers(0, (1 << (1 << n)) - 1))
    return BoolFn.from_code(n, code)


@st.composite
def fn_pairs(draw, min_n=1, max_n=4):
    f = draw(bool_fns(min_n, max_n))
    g = BoolFn.from_code(f.n, draw(st.integers(0, (1 << f.size) - 1)))
    return f, g


def brute_dist(f, g):
    return Fraction(sum(int(a != b) for a, b in zip(f.bitstring(), g.bitstring())), f.size)


AND2 = BoolFn.from_bitstring("0001")
OR2 = BoolFn.from_bitstring("0111")


@pytest.fixture
def and2():
    return AND2


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
