import itertools

import numpy as np
from hypothesis import strategies as st

from qimg.esop import EsopCover


@st.composite
def covers(draw, min_vars=1, max_vars=6, max_cubes=40, minterms_only=False):
    n = draw(st.integers(min_vars, max_vars))
    alphabet = "01" if minterms_only else "0-1"
    cube = st.text(alphabet=alphabet, min_size=n, max_size=n)
    cubes = draw(st.lists(cube, max_size=max_cubes, unique=True))
    return EsopCover(n, cubes)


@st.composite
def images(draw, max_side=16, channels=(1,)):
    rows = draw(st.integers(1, max_side))
    cols = draw(st.integers(1, max_side))
    ch = draw(st.sampled_from(channels))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    shape = (rows, cols) if ch == 1 else (rows, cols, ch)
    return rng.integers(0, 256, size=shape)


def all_assignments(n):
    return ["".join(bits) for bits in itertools.product("01", repeat=n)]


def cyclic_shift(cubes, k=1):
    return {c[k % len(c):] + c[:k % len(c)] for c in cubes} if cubes else set()
