from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from inoue.gamma_r import GammaREnd, GammaRElem
from inoue.surfaces import SMINUS, SPLUS, SurfaceDescriptor, is_valid

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

PLASTIC = ((0, 0, 1), (1, 0, 1), (0, 1, 0))
N_PLUS = ((2, 1), (1, 1))
N_MINUS = ((2, 1), (1, 0))

small = st.integers(-4, 4)
nonzero_r = st.integers(-4, 4).filter(bool)


@st.composite
def gamma_elems(draw, r=None):
    r = draw(nonzero_r) if r is None else r
    y2 = draw(st.integers(-20, 20))
    if r % 2 == 0:
        y2 *= 2
    return GammaRElem((draw(small), draw(small)), y2, r)


@st.composite
def gamma_ends(draw):
    k = ((draw(small), draw(small)), (draw(small), draw(small)))
    return GammaREnd(k, (draw(st.integers(-6, 6)), draw(st.integers(-6, 6))))


def valid_matrices(kind: str, entry: int = 4) -> list:
    rng = range(-entry, entry + 1)
    out = []
    for a, b, c, d in itertools.product(rng, repeat=4):
        if is_valid(SurfaceDescriptor(kind, N=((a, b), (c, d)), p=0, q=0, r=1)):
            out.append(((a, b), (c, d)))
    return out


VALID_N = {SPLUS: valid_matrices(SPLUS), SMINUS: valid_matrices(SMINUS)}


@st.composite
def valid_surfaces(draw, kind=SPLUS, offsets=3, rmax=3):
    """Random valid S+ / S- descriptors with matrix entries in [-4, 4]."""
    return SurfaceDescriptor(kind, N=draw(st.sampled_from(VALID_N[kind])),
                             p=draw(st.integers(-offsets, offsets)),
                             q=draw(st.integers(-offsets, offsets)),
                             r=draw(st.integers(-rmax, rmax).filter(bool)),
                             sign=draw(st.sampled_from([1, -1])))


def random_valid_surfaces(rng: random.Random, kind: str, count: int, entry: int = 4,
                          offsets: int = 3, rmax: int = 3) -> list[SurfaceDescriptor]:
    out = []
    while len(out) < count:
        n = tuple(tuple(rng.randint(-entry, entry) for _ in range(2)) for _ in range(2))
        desc = SurfaceDescriptor(kind, N=n, p=rng.randint(-offsets, offsets),
                                 q=rng.randint(-offsets, offsets),
                                 r=rng.choice([x for x in range(-rmax, rmax + 1) if x]),
                                 sign=rng.choice([1, -1]))
        if is_valid(desc):
            out.append(desc)
    return out


@pytest.fixture
def rng():
    return random.Random(20261017)


@pytest.fixture
def splus_example():
    return SurfaceDescriptor(SPLUS, N=N_PLUS, p=0, q=0, r=1)


@pytest.fixture
def sminus_example():
    return SurfaceDescriptor(SMINUS, N=N_MINUS, p=0, q=0, r=1)
