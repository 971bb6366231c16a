from fractions import Fraction

import pytest
from hypothesis import strategies as st

from cobcalc import fgl
from cobcalc.coeffring import CoeffPoly
from cobcalc.pseries import TruncatedSeries

# -- shared laws (session-scoped: construction is the expensive part) --------


@pytest.fixture(scope="session")
def miscenko11():
    return fgl.miscenko_law(11)


@pytest.fixture(scope="session")
def miscenko8(miscenko11):
    return miscenko11.truncate(8)


@pytest.fixture(scope="session")
def mult14():
    return fgl.multiplicative_law(1, 14)


@pytest.fixture(scope="session")
def additive12():
    return fgl.additive_law(12)


# -- hypothesis strategies -----------------------------------------------------

small_fractions = st.fractions(min_value=Fraction(-4), max_value=Fraction(4),
                               max_denominator=6)

monomials = st.lists(
    st.tuples(st.integers(min_value=1, max_value=3),
              st.integers(min_value=1, max_value=2)),
    max_size=2,
).map(lambda pairs: tuple(sorted(dict(pairs).items())))

coeff_polys = st.dictionaries(monomials, small_fractions, max_size=3).map(
    CoeffPoly.from_terms)

nonzero_coeff_polys = coeff_polys.filter(lambda p: not p.is_zero())

_expvecs_uv = st.tuples(st.integers(min_value=0, max_value=3),
                        st.integers(min_value=0, max_value=3)).filter(
    lambda ev: sum(ev) <= 5)

series_uv = st.dictionaries(_expvecs_uv, coeff_polys, max_size=5).map(
    lambda d: TruncatedSeries.from_terms(d, ("u", "v"), 5))

# One-variable series u + c2 u^2 + ... with unit linear coefficient,
# suitable for reversion round trips.
revertible_series = st.lists(coeff_polys, min_size=0, max_size=4).map(
    lambda tail: TruncatedSeries.from_terms(
        {(1,): CoeffPoly.one(),
         **{(k + 2,): c for k, c in enumerate(tail)}},
        ("u",), 6))
