"""Quantitative checks on the automaton: residue counts, densities and the
structural facts read off its transition table.

Every check returns a :class:`Report`; none of them raise on a failed claim.
Counts are exact Python integers and densities are ``Fraction``s.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import log2
from typing import Any, NamedTuple

from .automaton import (
    Automaton,
    AnyAutomaton,
    StateKind,
    build,
    evaluate,
    transition_closed_form,
)
from .bipoly import TABLE1_BASIS, BiPoly, q_power, step, table1_closed_form
from .errors import ResourceError, UnsupportedModulusError, UsageError
from .field import PrimeContext, base_p_digits, binom_small
from .oracle import catalan_convolution, catalan_lucas_oracle

__all__ = [
    "Report",
    "ResidueCensus",
    "ForcedDigits",
    "GeneratorCheck",
    "CENSUS_MAX_BITS",
    "census_series",
    "residue_census",
    "oracle_census",
    "zero_density_curve",
    "forced_zero_digit_set",
    "forced_zero_residues_check",
    "forced_zero_digits_check",
    "pk_minus_1_check",
    "generator_check",
    "mod2_characterization_check",
    "state_bound_check",
    "table1_check",
    "table2_check",
    "oracle_check",
    "density_check",
    "format_reports",
]

# count magnitudes are bounded by p^k; refuse once that needs more bits than this
CENSUS_MAX_BITS = 1 << 20


@dataclass
class Report:
    claim: str
    p: int
    params: dict[str, Any] = field(default_factory=dict)
    status: str = "verified"
    counterexample: dict[str, Any] | None = None

    @property
    def ok(self) -> bool:
        return self.status == "verified"

    def fail(self, **counterexample) -> Report:
        self.status = "failed"
        self.counterexample = counterexample
        return self

    def to_dict(self) -> dict[str, Any]:
        d = {"claim": self.claim, "p": self.p, "params": self.params, "status": self.status}
        if self.counterexample is not None:
            d["counterexample"] = self.counterexample
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, default=str)


def format_reports(reports: list[Report]) -> str:
    """Plain-text table, one claim per row."""
    rows = [("claim", "p", "params", "status")]
    for r in reports:
        params = ", ".join(f"{k}={v}" for k, v in r.params.items())
        status = r.status if r.ok else f"{r.status}: {r.counterexample}"
        rows.append((r.claim, str(r.p), params, status))
    widths = [max(len(row[i]) for row in rows) for i in range(3)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(row[:3], widths)) + "  " + row[3] for row in rows]
    return "\n".join(line.rstrip() for line in lines)


@dataclass(frozen=True)
class ResidueCensus:
    """Number of n in [0, p^k) with C_n congruent to each residue."""

    p: int
    k: int
    counts: dict[int, int]

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def density(self, residue: int) -> Fraction:
        return Fraction(self.counts.get(residue, 0), self.p**self.k)

    def densities(self) -> dict[int, Fraction]:
        return {r: self.density(r) for r in range(self.p)}


def _require_dense(a: AnyAutomaton) -> Automaton:
    if not isinstance(a, Automaton):
        raise UsageError("this operation needs a dense automaton (build with closed_form=False)")
    return a


def census_series(a: Automaton, k_max: int, max_bits: int = CENSUS_MAX_BITS):
    """Yield ResidueCensus for k = 1..k_max from one transfer-matrix pass.

    Strings of exactly k digits are counted, leading zeros included; padding
    with high-order zeros leaves the output unchanged, so each n < p^k is
    counted once.  The all-zero string is n = 0, whose value is 1 by
    convention rather than the output of the state it ends in.
    """
    p = a.p
    if k_max * log2(p) > max_bits:
        raise ResourceError(f"census for p={p}, k={k_max} needs more than {max_bits} bits per count")
    moves = [Counter(row) for row in a.delta]
    vec = [0] * len(a.states)
    vec[a.initial] = 1
    zeros_end = a.initial
    for k in range(1, k_max + 1):
        nxt = [0] * len(vec)
        for s, c in enumerate(vec):
            if c:
                for t, m in moves[s].items():
                    nxt[t] += c * m
        vec = nxt
        zeros_end = a.delta[zeros_end][0]
        counts = dict.fromkeys(range(p), 0)
        for s, c in enumerate(vec):
            counts[a.states[s].output] += c
        counts[a.states[zeros_end].output] -= 1
        counts[1 % p] += 1
        yield ResidueCensus(p, k, counts)


def residue_census(a: AnyAutomaton, k: int, *, max_bits: int = CENSUS_MAX_BITS) -> ResidueCensus:
    if k < 1:
        raise UsageError(f"need k >= 1, got {k}")
    *_, last = census_series(_require_dense(a), k, max_bits)
    return last


def oracle_census(ctx: PrimeContext, k: int) -> ResidueCensus:
    """The same counts by evaluating the Lucas oracle at every n < p^k."""
    counts = dict.fromkeys(range(ctx.p), 0)
    for n in range(ctx.p**k):
        counts[catalan_lucas_oracle(n, ctx)] += 1
    return ResidueCensus(ctx.p, k, counts)


def zero_density_curve(a: AnyAutomaton, k_max: int, *, max_bits: int = CENSUS_MAX_BITS) -> list[Fraction]:
    """Fraction of n < p^k with p | C_n, for k = 1..k_max."""
    if k_max < 1:
        raise UsageError(f"need k_max >= 1, got {k_max}")
    return [c.density(0) for c in census_series(_require_dense(a), k_max, max_bits)]


class ForcedDigits(NamedTuple):
    digits: frozenset[int]
    # False for p < 5, where the range is empty and no claim is made
    applicable: bool


def forced_zero_digit_set(ctx: PrimeContext) -> ForcedDigits:
    """Digits d in [(p+1)/2, p-2]; any one of them in n forces p | C_n."""
    p = ctx.p
    if p < 5:
        return ForcedDigits(frozenset(), False)
    return ForcedDigits(frozenset(range((p + 1) // 2, p - 1)), True)


def _need_p5(ctx: PrimeContext, what: str) -> None:
    if ctx.p < 5:
        raise UnsupportedModulusError(f"{what} needs p >= 5, got p={ctx.p}")


def forced_zero_residues_check(ctx: PrimeContext, n_max: int) -> Report:
    """Oracle check that C_n = 0 mod p whenever n mod p is a forced digit."""
    _need_p5(ctx, "forced_zero_residues_check")
    forced = forced_zero_digit_set(ctx).digits
    report = Report("forced-zero residues", ctx.p, {"n_max": n_max, "residues": sorted(forced)})
    checked = 0
    for n in range(n_max + 1):
        if n % ctx.p in forced:
            checked += 1
            v = catalan_lucas_oracle(n, ctx)
            if v:
                return report.fail(n=n, value=v)
    report.params["checked"] = checked
    return report


def forced_zero_digits_check(a: AnyAutomaton, n_max: int) -> Report:
    """Automaton and oracle both give 0 for every n with a forced digit anywhere."""
    ctx = a.ctx
    _need_p5(ctx, "forced_zero_digits_check")
    forced = forced_zero_digit_set(ctx).digits
    report = Report("forced-zero digits", ctx.p, {"n_max": n_max, "digits": sorted(forced)})
    checked = 0
    for n in range(n_max + 1):
        if forced.intersection(base_p_digits(n, ctx.p)):
            checked += 1
            v, w = evaluate(a, n), catalan_lucas_oracle(n, ctx)
            if v or w:
                return report.fail(n=n, automaton=v, oracle=w)
    report.params["checked"] = checked
    return report


def pk_minus_1_check(ctx: PrimeContext, k_max: int, automaton: AnyAutomaton | None = None) -> Report:
    """C_{p^k - 1} = -1 mod p for k = 1..k_max, through the automaton and the oracle."""
    a = automaton if automaton is not None else build(ctx)
    p = ctx.p
    report = Report("C_{p^k-1} = -1", p, {"k_max": k_max})
    for k in range(1, k_max + 1):
        n = p**k - 1
        v = evaluate(a, [p - 1] * k)
        w = catalan_lucas_oracle(n, ctx)
        if v != p - 1 or w != p - 1:
            return report.fail(k=k, n=str(n), automaton=v, oracle=w)
    return report


@dataclass(frozen=True)
class GeneratorCheck:
    p: int
    generators: frozenset[int]
    closure: frozenset[int]
    # None when no dense automaton was available for comparison
    matches_constant_states: bool | None

    @property
    def generates(self) -> bool:
        return len(self.closure) == self.p - 1

    @property
    def size(self) -> int:
        return len(self.closure)

    def report(self) -> Report:
        r = Report(
            "central binomials generate (Z/pZ)^x",
            self.p,
            {"closure_size": self.size, "matches_constant_states": self.matches_constant_states},
        )
        if not self.generates:
            r.fail(missing=sorted(set(range(1, self.p)) - self.closure))
        return r


def generator_check(ctx: PrimeContext, automaton: AnyAutomaton | None = None) -> GeneratorCheck:
    """Multiplicative closure of the nonzero binom(2d, d), 0 <= d <= (p-1)/2.

    When a dense automaton is given (or cheap to build) the closure is also
    compared with the set of nonzero constant states.
    """
    _need_p5(ctx, "generator_check")
    p = ctx.p
    gens = frozenset(v for d in range((p + 1) // 2) if (v := binom_small(2 * d, d, ctx)))
    closure = {1}
    frontier = [1]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = x * g % p
            if y not in closure:
                closure.add(y)
                frontier.append(y)
    a = automaton if automaton is not None else build(ctx)
    matches = a.constants() == closure if isinstance(a, Automaton) else None
    return GeneratorCheck(p, gens, frozenset(closure), matches)


def mod2_characterization_check(k_max: int) -> Report:
    """C_n odd exactly when n = 2^j - 1, for every n < 2^k_max."""
    if not 1 <= k_max <= 20:
        raise UsageError(f"k_max must be in 1..20, got {k_max}")
    ctx = PrimeContext(2)
    a = build(ctx, closed_form=False)
    report = Report("C_n odd iff n = 2^k - 1", 2, {"k_max": k_max})
    for n in range(2**k_max):
        expected = 1 if (n + 1) & n == 0 else 0
        v = evaluate(a, n)
        if v != expected:
            return report.fail(n=n, automaton=v, expected=expected)
    return report


def state_bound_check(a: Automaton) -> Report:
    """At most p+3 states, with R, 2xy(y+1) and -(y+1) among them."""
    p = a.p
    report = Report("at most p+3 states", p, {"states": len(a), "bound": p + 3})
    if len(a) > p + 3:
        return report.fail(states=len(a))
    kinds = {s.kind for s in a.states}
    missing = {StateKind.S1, StateKind.S2, StateKind.MINUS_Y_PLUS_1} - kinds
    if missing:
        return report.fail(missing=sorted(k.value for k in missing))
    return report


def table1_check(ctx: PrimeContext) -> Report:
    """Generic step on 1, y, xy, xy^2, xy^3 against the closed forms."""
    _need_p5(ctx, "table1_check")
    qp = q_power(ctx)
    report = Report("Cartier step closed forms (basis monomials)", ctx.p)
    for r, t in TABLE1_BASIS:
        mono = BiPoly.monomial(ctx.p, r, t)
        for d in range(ctx.p):
            got = step(mono, d, qp, ctx)
            want = table1_closed_form((r, t), d, ctx)
            if got != want:
                return report.fail(basis=str(mono), d=d, generic=str(got), closed_form=str(want))
    return report


def table2_check(a: Automaton) -> Report:
    """Every entry of the dense table against transition_closed_form."""
    ctx = a.ctx
    _need_p5(ctx, "table2_check")
    report = Report("transition table closed forms", ctx.p, {"entries": len(a) * ctx.p})
    for s in a.states:
        for d in range(ctx.p):
            got = a.states[a.delta[s.id][d]].label
            want = transition_closed_form(s.label, d, ctx)
            if got != want:
                return report.fail(state=s.kind_name, d=d, built=str(got), closed_form=str(want))
    return report


def oracle_check(a: AnyAutomaton, n_max: int, convolution_max: int = 5000) -> list[Report]:
    """Automaton against the Lucas oracle, then Lucas against convolution."""
    ctx = a.ctx
    r1 = Report("automaton = Lucas oracle", ctx.p, {"n_max": n_max})
    for n in range(n_max + 1):
        v, w = evaluate(a, n), catalan_lucas_oracle(n, ctx)
        if v != w:
            r1.fail(n=n, automaton=v, oracle=w)
            break
    limit = min(n_max, convolution_max)
    r2 = Report("Lucas oracle = convolution oracle", ctx.p, {"n_max": limit})
    for n, w in enumerate(catalan_convolution(limit, ctx)):
        v = catalan_lucas_oracle(n, ctx)
        if v != w:
            r2.fail(n=n, lucas=v, convolution=w)
            break
    return [r1, r2]


def density_check(a: Automaton, k_max: int, sweep_limit: int = 200_000) -> list[Report]:
    """Zero-class density is nondecreasing in k; census equals an oracle sweep
    for every k with p^k <= sweep_limit."""
    p = a.p
    curve = zero_density_curve(a, k_max)
    mono = Report("zero density nondecreasing", p, {"k_max": k_max, "final": str(curve[-1])})
    for k in range(1, len(curve)):
        if curve[k] < curve[k - 1]:
            mono.fail(k=k + 1, previous=str(curve[k - 1]), current=str(curve[k]))
            break
    reports = [mono]
    k = 1
    while k <= k_max and p**k <= sweep_limit:
        census = residue_census(a, k)
        swept = oracle_census(a.ctx, k)
        r = Report("census = oracle sweep", p, {"k": k})
        if census.counts != swept.counts:
            r.fail(census=census.counts, sweep=swept.counts)
        reports.append(r)
        k += 1
    return reports
