"""Shared hypothesis strategies."""
from hypothesis import strategies as st

from wreathext.coeff import NVARS, LaurentPoly, RatFunc

small_int = st.integers(min_value=-4, max_value=4)


@st.composite
def partitions(draw, max_size=8):
    n = draw(st.integers(min_value=0, max_value=max_size))
    parts = []
    left = n
    cap = n
    while left > 0:
        k = draw(st.integers(min_value=1, max_value=min(left, cap)))
        parts.append(k)
        left -= k
        cap = k
    return tuple(parts)


@st.composite
def laurent_polys(draw, max_terms=4, variables=("q", "t", "u")):
    from wreathext.coeff import VAR_INDEX

    terms = {}
    for _ in range(draw(st.integers(min_value=0, max_value=max_terms))):
        e = [0] * NVARS
        for v in variables:
            e[VAR_INDEX[v]] = draw(st.integers(min_value=-2, max_value=3))
        terms[tuple(e)] = draw(st.integers(min_value=-5, max_value=5))
    return LaurentPoly(terms)


@st.composite
def ratfuncs(draw):
    num = draw(laurent_polys())
    den = draw(laurent_polys(max_terms=3))
    if den.is_zero():
        den = LaurentPoly.const(1)
    return RatFunc.from_pair(num, den)
