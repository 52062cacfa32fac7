from fractions import Fraction

from hypothesis import settings
from hypothesis import strategies as st

from superlinks.exponent_ring import ExponentForm, LaurentElement, ParamSymbol

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

A = ParamSymbol.make(1, "a")
B = ParamSymbol.make(2, "b")
SYMBOLS = {"a": A, "b": B}

small_int = st.integers(min_value=-4, max_value=4)
small_rat = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 3))


@st.composite
def exponents(draw, quadratic=True, rational=False):
    num = small_rat if rational else small_int
    items = [((), draw(num)), ((A,), draw(num)), ((B,), draw(num))]
    if quadratic:
        items.append(((A, B), draw(small_int)))
        items.append(((A, A), draw(small_int)))
    return ExponentForm(items)


@st.composite
def elements(draw, quadratic=True, rational=False, max_terms=4):
    n = draw(st.integers(0, max_terms))
    terms = [(draw(exponents(quadratic, rational)), draw(st.integers(-3, 3))) for _ in range(n)]
    return LaurentElement(terms)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for r in sorted(RESULTS, key=lambda r: r.number):
        terminalreporter.write_line(r.line())
