from fractions import Fraction

from hypothesis import settings, strategies as st

from polycover.exact import ExactScalar, Quaternion

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
scalars = st.builds(ExactScalar, rationals, rationals)
nonzero_scalars = scalars.filter(bool)
quaternions = st.builds(Quaternion, scalars, scalars, scalars, scalars)
nonneg_rationals = st.fractions(min_value=0, max_value=50, max_denominator=16)


def frac(s: str) -> Fraction:
    return Fraction(s)
