import os
import re

import pytest
import sympy
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from hilbchart.ring import QQ, PolyRing

settings.register_profile("default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=15, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "fixtures")


@pytest.fixture
def fixture_path():
    return lambda name: os.path.join(FIXTURES, name)


def sympy_name(v) -> str:
    return re.sub(r"U\[(\d+)\]\[(\d+)\]\[(\d+)\]", r"U_\1_\2_\3", str(v))


def to_sympy(p):
    """Independent translation through the text form."""
    syms = {sympy_name(v): sympy.Symbol(sympy_name(v)) for v in p.ring.gens}
    text = sympy_name(str(p)).replace("^", "**")
    return sympy.sympify(text, locals=syms)


def sympy_gens(ring):
    return [sympy.Symbol(sympy_name(v)) for v in ring.gens]


def polys(ring: PolyRing, max_terms=4, max_exp=2, coeff=5):
    """Random polynomials with small integer coefficients."""
    k = ring.ngens
    term = st.tuples(
        st.tuples(*[st.integers(0, max_exp) for _ in range(k)]),
        st.integers(-coeff, coeff),
    )

    def build(ts):
        acc = ring.zero()
        for e, c in ts:
            acc = acc + ring.monomial(e).scale(ring.field.convert(c))
        return acc

    return st.lists(term, max_size=max_terms).map(build)


XYZ = PolyRing(["x", "y", "z"], QQ, "grevlex")


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "REPORT", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
