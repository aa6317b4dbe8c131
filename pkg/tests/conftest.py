from __future__ import annotations

from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from galilean.exactnum import Scalar

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

RADICANDS = (1, 2, 3, 5, 6, 7, 10, 15)

fractions = st.builds(
    Fraction,
    st.integers(min_value=-20, max_value=20),
    st.integers(min_value=1, max_value=9),
)


@st.composite
def scalars(draw, max_radicands: int = 4, nonzero: bool = False) -> Scalar:
    rads = draw(st.lists(st.sampled_from(RADICANDS), max_size=max_radicands, unique=True))
    terms = {r: draw(fractions) for r in rads}
    s = Scalar.from_terms(terms)
    if nonzero and not s:
        s = Scalar.from_terms({draw(st.sampled_from(RADICANDS)): Fraction(draw(st.integers(1, 5)))})
    return s
