"""Hypothesis strategies for points, arcs and Moebius maps."""

import math

import numpy as np
from hypothesis import assume
from hypothesis import strategies as st

from lombardikit.geom import DirectedArc
from lombardikit.moebius import random_transform

coord = st.floats(-5, 5, allow_nan=False, allow_infinity=False)
points = st.builds(complex, coord, coord)
bulges = st.floats(-3, 3, allow_nan=False)
angles = st.floats(-math.pi, math.pi, allow_nan=False)
seeds = st.integers(0, 2**32 - 1)


@st.composite
def arcs(draw, min_chord=0.1):
    a, b = draw(points), draw(points)
    assume(abs(a - b) > min_chord)
    return DirectedArc(a, b, draw(bulges))


@st.composite
def transforms(draw, spread=1.0):
    return random_transform(np.random.default_rng(draw(seeds)), spread)
