"""Hypothesis strategies for random bodies and points."""
import numpy as np
from hypothesis import strategies as st

from alexmod.polytope import random_polytope
from alexmod.verify import random_interior_point as interior_point

seeds = st.integers(min_value=0, max_value=2**31 - 1)
dims = st.sampled_from([2, 3])


@st.composite
def polytopes(draw, dims=dims, kind=st.sampled_from(["h", "v"])):
    rng = np.random.default_rng(draw(seeds))
    return random_polytope(rng, draw(dims), kind=draw(kind))


@st.composite
def polytope_and_point(draw, dims=dims):
    poly = draw(polytopes(dims=dims))
    rng = np.random.default_rng(draw(seeds))
    return poly, interior_point(poly, rng)


@st.composite
def unit_vectors(draw, n):
    rng = np.random.default_rng(draw(seeds))
    v = rng.standard_normal(n)
    return v / np.linalg.norm(v)
