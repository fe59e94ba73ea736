from hypothesis import settings, strategies as st

from starpi.exact import Indeterminate, ScalarPoly
from starpi.free import NCPoly, y, z

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

LETTERS = [z(1), z(2), y(1), y(2), y(3)]

coeffs = st.fractions(min_value=-6, max_value=6, max_denominator=4)
letters = st.sampled_from(LETTERS)
words = st.lists(letters, max_size=4).map(tuple)
ncpolys = st.dictionaries(words, coeffs, max_size=5).map(NCPoly)

XS = [Indeterminate("x", i) for i in range(1, 4)]
monomials = st.dictionaries(st.sampled_from(XS), st.integers(1, 3), max_size=3).map(
    lambda d: tuple(sorted(d.items()))
)
scalar_polys = st.dictionaries(monomials, coeffs, max_size=4).map(ScalarPoly)

