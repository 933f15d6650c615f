import math

import pytest

from catalan_automaton import PrimeContext, build

SMALL_PRIMES = (2, 3, 5, 7, 11, 13)


def primes_between(lo, hi):
    return [n for n in range(max(lo, 2), hi + 1) if all(n % f for f in range(2, math.isqrt(n) + 1))]


def exact_catalan(n):
    return math.comb(2 * n, n) // (n + 1)


@pytest.fixture(scope="session")
def automata():
    """Dense automata keyed by p, built once per session."""
    cache = {}

    def get(p):
        if p not in cache:
            cache[p] = build(PrimeContext(p), closed_form=False)
        return cache[p]

    return get


ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def criterion(request):
    """Log one PASS/FAIL line for an acceptance criterion."""
    lines = request.config.stash.setdefault(ACCEPTANCE, [])

    def record(name, ok, detail=""):
        line = f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  ({detail})" if detail else "")
        lines.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
