import re

import pytest
from hypothesis import settings, strategies as st

from dilates.residue_core import ResidueSet, make_residue_set

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

SMALL_PRIMES = [2, 3, 5, 7, 11, 13]
PRIMES = [5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 101, 211, 1009]


@st.composite
def residue_sets(draw, primes=PRIMES, min_size=1, max_size=None):
    p = draw(st.sampled_from(primes))
    hi = p if max_size is None else min(p, max_size)
    els = draw(st.sets(st.integers(0, p - 1), min_size=min(min_size, p), max_size=hi))
    return make_residue_set(p, els)


def all_subsets(p):
    """Every non-empty subset of Z/pZ."""
    for mask in range(1, 1 << p):
        yield ResidueSet(p, tuple(i for i in range(p) if mask >> i & 1))


def brute_sumset(elements, t, p=None):
    if p is None:
        return {a + t * b for a in elements for b in elements}
    return {(a + t * b) % p for a in elements for b in elements}


# -- acceptance summary: one line per criterion -----------------------------------

_CRITERIA: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def criterion():
    def record(name: str, passed: bool, detail: str = ""):
        prev = _CRITERIA.get(name)
        ok = passed and (prev is None or prev[0])
        text = "; ".join(x for x in ((prev[1] if prev else ""), detail) if x)
        _CRITERIA[name] = (ok, text)
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA, key=lambda s: (int(re.match(r"\D*(\d+)", s).group(1)), s)):
        ok, detail = _CRITERIA[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
