import pytest
from hypothesis import HealthCheck, settings, strategies as st

from beckdiff.exactnum import GF, QQ
from beckdiff.polyring import Polynomial

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large]
)
settings.load_profile("default")

FIELDS = [QQ, GF(2), GF(3), GF(5)]
FIELD_IDS = ["Q", "F2", "F3", "F5"]
XY = ("x", "y")


def coefficients(base):
    if base == QQ:
        return st.builds(lambda a, b: base.from_fraction(a, b), st.integers(-5, 5), st.integers(1, 4))
    return st.integers(0, base.p - 1).map(base.from_int)


def monomials(nvars, max_degree):
    return st.tuples(*[st.integers(0, max_degree)] * nvars).filter(lambda m: sum(m) <= max_degree)


@st.composite
def polynomials(draw, base, variables=XY, max_degree=3, max_terms=4):
    terms = draw(st.lists(st.tuples(monomials(len(variables), max_degree), coefficients(base)), max_size=max_terms))
    out = {}
    for m, c in terms:
        out[m] = base.add(out.get(m, base.zero()), c)
    return Polynomial(variables, base, out)


@st.composite
def zero_dim_ideals(draw, base):
    """``x^a + lower, y^b + lower, extra``: finite quotient by construction."""
    a, b = draw(st.integers(1, 3)), draw(st.integers(1, 3))
    x = Polynomial.monomial((a, 0), XY, base)
    y = Polynomial.monomial((0, b), XY, base)
    gx = x + draw(polynomials(base, max_degree=a - 1, max_terms=2))
    gy = y + draw(polynomials(base, max_degree=b - 1, max_terms=2))
    extra = draw(st.lists(polynomials(base, max_degree=2, max_terms=3), max_size=1))
    return [gx, gy, *extra]


@pytest.fixture(params=FIELDS, ids=FIELD_IDS)
def field(request):
    return request.param


# acceptance lines, printed once at the end of the run
ACCEPTANCE = {}


def record(criterion, ok, detail):
    ACCEPTANCE[criterion] = (bool(ok), detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
