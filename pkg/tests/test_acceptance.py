"""Acceptance criteria, one test each.

Each test logs a single PASS/FAIL line through the ``criterion`` fixture; the
lines are collected again in an "acceptance criteria" section at the end of
the pytest run.  Run alone with ``pytest tests/test_acceptance.py -v -s``.
"""
import json
import random
from fractions import Fraction

import pydot

from catalan_automaton import BiPoly, PrimeContext, evaluate
from catalan_automaton.analysis import (
    census_series,
    forced_zero_digits_check,
    forced_zero_residues_check,
    mod2_characterization_check,
    oracle_census,
    oracle_check,
    state_bound_check,
    table1_check,
    table2_check,
)
from catalan_automaton.automaton import decimal_to_digits, export_dot, export_json, import_json
from catalan_automaton.bipoly import cartier, catalan_r
from catalan_automaton.field import base_p_digits
from catalan_automaton.oracle import catalan_lucas_oracle

from .conftest import SMALL_PRIMES, primes_between
from .strategies import inflate, random_bipoly


def _first_failure(reports):
    bad = [r for r in reports if not r.ok]
    return "" if not bad else f"p={bad[0].p} {bad[0].claim}: {bad[0].counterexample}"


def test_oracle_equivalence(criterion, automata):
    reports = []
    for p in SMALL_PRIMES:
        reports += oracle_check(automata(p), 100_000, convolution_max=5000)
    criterion(
        "oracle equivalence, p in {2,3,5,7,11,13}, n <= 1e5 (convolution n <= 5000)",
        all(r.ok for r in reports),
        _first_failure(reports) or f"{len(reports)} reports verified",
    )


def test_table1_conformance(criterion):
    primes = primes_between(5, 97)
    reports = [table1_check(PrimeContext(p)) for p in primes]
    criterion(
        "basis-monomial step closed forms, primes 5..97",
        all(r.ok for r in reports),
        _first_failure(reports) or f"{len(primes)} primes x 5 monomials x p digits",
    )


def test_table2_conformance(criterion, automata):
    primes = primes_between(5, 97)
    reports = [table2_check(automata(p)) for p in primes]
    entries = sum(r.params["entries"] for r in reports)
    criterion(
        "transition table closed forms, primes 5..97",
        all(r.ok for r in reports),
        _first_failure(reports) or f"{entries} transitions",
    )


def test_state_bound(criterion, automata):
    primes = primes_between(5, 199)
    problems = []
    for p in primes:
        a = automata(p)
        ctx = a.ctx
        r = state_bound_check(a)
        s2 = BiPoly(p, {(1, 1): 2, (1, 2): 2})
        minus_y1 = BiPoly(p, {(0, 0): -1, (0, 1): -1})
        present = all(a.find(f) is not None for f in (catalan_r(ctx), s2, minus_y1))
        if not (r.ok and present and len(a) == p + 3):
            problems.append((p, len(a), present))
    criterion(
        "at most p+3 states with R, 2xy(y+1), -(y+1) present, primes 5..199",
        not problems,
        f"violations: {problems}" if problems else f"{len(primes)} primes, exactly p+3 each",
    )


def test_pk_minus_1(criterion, automata):
    failures = []
    for p in (5, 7, 11, 13):
        ctx = PrimeContext(p)
        a = automata(p)
        for k in range(1, 21):
            n = p**k - 1
            digits = decimal_to_digits(str(n), ctx)
            v, w = evaluate(a, digits), catalan_lucas_oracle(n, ctx)
            if v != p - 1 or w != p - 1:
                failures.append((p, k, v, w))
    criterion(
        "C_{p^k-1} = -1 mod p, p in {5,7,11,13}, k = 1..20",
        not failures,
        f"failures: {failures}" if failures else "80 cases, largest n = 13^20 - 1",
    )


def test_forced_zeros(criterion, automata):
    reports = []
    for p in (5, 7, 11):
        reports.append(forced_zero_digits_check(automata(p), 100_000))
        reports.append(forced_zero_residues_check(PrimeContext(p), 100_000))
    checked = sum(r.params.get("checked", 0) for r in reports)
    criterion(
        "forced-zero digits and residues, p in {5,7,11}, n <= 1e5",
        all(r.ok for r in reports),
        _first_failure(reports) or f"{checked} n checked, no counterexample",
    )


def test_density(criterion, automata):
    a = automata(5)
    series = list(census_series(a, 8))
    curve = [c.density(0) for c in series]
    monotone = all(x <= y for x, y in zip(curve, curve[1:]))
    high = curve[-1] > Fraction(95, 100)
    decay = all(1 - d <= Fraction(4, 5) ** (k - 1) for k, d in enumerate(curve, start=1))
    swept = [c.k for c in series if 5**c.k <= 200_000]
    sweep_ok = all(series[k - 1].counts == oracle_census(a.ctx, k).counts for k in swept)
    criterion(
        "p=5 zero density nondecreasing k=1..8, > 0.95 at k=8, nonzero <= (4/5)^(k-1), census = sweep",
        monotone and high and decay and sweep_ok,
        f"density at k=8: {curve[-1]} = {float(curve[-1]):.4f}; sweep k = {swept[0]}..{swept[-1]}; "
        f"monotone={monotone} decay={decay} sweep={sweep_ok}",
    )


def test_mod2_characterization(criterion):
    r = mod2_characterization_check(16)
    criterion("p=2: output 1 exactly at n = 2^k - 1, n < 2^16", r.ok, str(r.counterexample or ""))


def test_property_suite(criterion, automata):
    rng = random.Random(20261017)
    bad = []
    for p in (2, 3, 5, 7, 13):
        ctx = PrimeContext(p)
        for i in range(1000):
            f = random_bipoly(rng, p, 3 * p)
            g = random_bipoly(rng, p, 3 * p)
            a, b = rng.randrange(p), rng.randrange(p)
            d1, d2 = rng.randrange(p), rng.randrange(p)
            if cartier(a * f + b * g, d1, d2, ctx) != a * cartier(f, d1, d2, ctx) + b * cartier(g, d1, d2, ctx):
                bad.append(("linearity", p, i))
            total = BiPoly.zero(p)
            for e1 in range(p):
                for e2 in range(p):
                    part = cartier(f, e1, e2, ctx)
                    if not part.is_zero():
                        total = total + BiPoly.monomial(p, e1, e2) * inflate(part, p)
            if total != f:
                bad.append(("decomposition", p, i))
    for p in (5, 7, 11):
        a = automata(p)
        for n in range(10_001):
            s = a.initial
            for d in base_p_digits(n, p):
                s = a.transition(s, d)
            out = a.output(s) if n else 1
            for _ in range(3):
                s = a.transition(s, 0)
                if n and a.output(s) != out:
                    bad.append(("padding", p, n))
    criterion(
        "Cartier linearity and decomposition (1000 polys x 5 primes); zero padding p in {5,7,11}, n <= 1e4",
        not bad,
        f"first failures: {bad[:3]}" if bad else "5000 polynomials x 2 identities, 30003 n x 3 paddings",
    )


def test_export(criterion, automata):
    a = automata(5)
    graphs = pydot.graph_from_dot_data(export_dot(a))
    dot_ok = graphs is not None and len(graphs) == 1 and graphs[0].get_type() == "digraph"
    text = export_json(a)
    back = import_json(text)
    json_ok = back.delta == a.delta and json.loads(export_json(back)) == json.loads(text)
    criterion("DOT for p=5 parses; JSON round-trips the delta table", dot_ok and json_ok, f"dot={dot_ok} json={json_ok}")
