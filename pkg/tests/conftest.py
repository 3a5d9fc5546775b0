import pytest
from hypothesis import settings, strategies as st

from lcverify.polyring import Polynomial, VarContext

settings.register_profile("default", deadline=None)
settings.load_profile("default")

XYZ = VarContext(("x", "y", "z"))
XYZ_L = XYZ.with_laurent()

coefficients = st.one_of(st.integers(-9, 9), st.integers(-(10 ** 40), 10 ** 40))


def monomials(ctx, max_exp=3):
    lo = -max_exp if ctx.laurent else 0
    return st.tuples(*[st.integers(lo, max_exp)] * ctx.arity)


def polynomials(ctx=XYZ, max_terms=5, max_exp=3):
    return st.dictionaries(monomials(ctx, max_exp), coefficients, max_size=max_terms).map(
        lambda d: Polynomial(ctx, d))


def integer_matrices(max_rows=5, max_cols=5, bound=20):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(-bound, bound), min_size=c, max_size=c),
                               min_size=r, max_size=r)))


@pytest.fixture
def xyz():
    return XYZ.gens()


@pytest.fixture(scope="session")
def verify_all_json(tmp_path_factory):
    """Two runs of `verify all` on the packaged defaults, as JSON text."""
    from lcverify.cli import run
    out = tmp_path_factory.mktemp("all")
    texts, codes = [], []
    for i in range(2):
        path = out / f"run{i}.json"
        codes.append(run(["verify", "all", "--format", "json", "--output", str(path)]))
        texts.append(path.read_text())
    return codes, texts


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        ok, detail = mod.RESULTS[n]
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
