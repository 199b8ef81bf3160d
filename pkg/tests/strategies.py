"""Shared hypothesis strategies."""

import cmath
import math

import numpy as np
from hypothesis import strategies as st

from hardy_specta.mobius import SymbolClass, canonical_map, disc_automorphism

unit_interval = st.floats(0.05, 0.95)
angles = st.floats(0.0, 2 * math.pi)


@st.composite
def complex_in_disc(draw, radius=0.85):
    rho = draw(st.floats(0.0, radius))
    return rho * cmath.exp(1j * draw(angles))


@st.composite
def automorphisms(draw):
    return disc_automorphism(draw(complex_in_disc(0.85)), cmath.exp(1j * draw(angles)))


@st.composite
def canonical_symbols(draw, classes=tuple(SymbolClass)):
    cls = draw(st.sampled_from(classes))
    if cls in (SymbolClass.HA, SymbolClass.HNA_I, SymbolClass.HNA_II):
        param = draw(unit_interval)
    elif cls is SymbolClass.EA:
        param = cmath.exp(1j * draw(st.floats(0.1, 2 * math.pi - 0.1)))
    elif cls is SymbolClass.PA:
        param = 1j * draw(st.floats(0.2, 3.0)) * draw(st.sampled_from([-1, 1]))
    elif cls is SymbolClass.PNA:
        param = complex(draw(st.floats(0.2, 3.0)), draw(st.floats(-3.0, 3.0)))
    else:
        a = draw(st.floats(0.1, 0.9)) * cmath.exp(1j * draw(angles))
        cmax = min((1 - abs(a)) / abs(1 - a), 0.95)
        param = (a, draw(st.floats(0.0, 0.9)) * cmax)
    return cls, param, canonical_map(cls, param)


@st.composite
def polynomials(draw, max_degree=16, scale=1.0):
    deg = draw(st.integers(0, max_degree))
    re = draw(st.lists(st.floats(-scale, scale), min_size=deg + 1, max_size=deg + 1))
    im = draw(st.lists(st.floats(-scale, scale), min_size=deg + 1, max_size=deg + 1))
    c = np.array(re) + 1j * np.array(im)
    if not np.any(c):
        c[0] = 1.0
    return c
