"""The automaton computing C_n mod p, built by state closure.

States are polynomials.  Starting from ``R = y(1 - 2xy - 2xy^2)`` every
state is pushed through ``step(., d)`` for each digit ``d`` until no new
polynomial appears.  Digits of ``n`` are read least-significant first and the
answer is the constant term of the final state.

For p >= 5 the reachable states are always ``R``, ``2xy(y+1)``, ``-(y+1)``,
the zero polynomial and some nonzero constants, so transitions also have a
closed form (:func:`transition_closed_form`) which :class:`ClosedFormAutomaton`
uses to evaluate without building any table.
"""
from __future__ import annotations

import enum
import json
import re
from collections import deque
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from typing import Union

from .bipoly import BiPoly, catalan_r, eval00, q_power, step
from .errors import ConsistencyError, ResourceError, UnsupportedModulusError, UsageError
from .field import PrimeContext, base_p_digits, binom_small, fp_inv

__all__ = [
    "StateKind",
    "Label",
    "State",
    "Automaton",
    "ClosedFormAutomaton",
    "DigitString",
    "BUILD_GUARD",
    "CLOSED_FORM_THRESHOLD",
    "AUTOMATON_JSON_SCHEMA",
    "classify",
    "label_poly",
    "build",
    "transition_closed_form",
    "evaluate",
    "trace",
    "decimal_to_digits",
    "export_dot",
    "export_json",
    "import_json",
    "format_digit_set",
]

BUILD_GUARD = 50_021
CLOSED_FORM_THRESHOLD = 1000


class StateKind(enum.Enum):
    S1 = "S1"
    S2 = "S2"
    MINUS_Y_PLUS_1 = "MinusYPlus1"
    CONSTANT = "Constant"
    ZERO = "Zero"
    # states of the generic closure for p in {2, 3} that fit no named shape
    OTHER = "Other"


# A state described without its polynomial: a non-constant StateKind, or a
# nonzero int standing for a constant state.  Zero is always StateKind.ZERO.
Label = Union[StateKind, int]


def _s2_poly(p: int) -> BiPoly:
    return BiPoly(p, {(1, 1): 2, (1, 2): 2})


def _minus_y_plus_1(p: int) -> BiPoly:
    return BiPoly(p, {(0, 0): -1, (0, 1): -1})


def classify(poly: BiPoly, ctx: PrimeContext) -> Label:
    """Label of a state polynomial."""
    p = ctx.p
    if poly.is_zero():
        return StateKind.ZERO
    if poly.is_constant():
        return eval00(poly)
    if poly == catalan_r(ctx):
        return StateKind.S1
    if poly == _s2_poly(p):
        return StateKind.S2
    if poly == _minus_y_plus_1(p):
        return StateKind.MINUS_Y_PLUS_1
    return StateKind.OTHER


def label_poly(label: Label, ctx: PrimeContext) -> BiPoly:
    """Inverse of :func:`classify` for every label except ``OTHER``."""
    p = ctx.p
    if isinstance(label, int):
        return BiPoly.constant(p, label)
    if label is StateKind.ZERO:
        return BiPoly.zero(p)
    if label is StateKind.S1:
        return catalan_r(ctx)
    if label is StateKind.S2:
        return _s2_poly(p)
    if label is StateKind.MINUS_Y_PLUS_1:
        return _minus_y_plus_1(p)
    raise UsageError(f"label {label!r} has no canonical polynomial")


def _kind_name(label: Label) -> str:
    if isinstance(label, int):
        return f"Constant({label})"
    return label.value


def _label_output(label: Label, p: int) -> int:
    if isinstance(label, int):
        return label % p
    if label is StateKind.MINUS_Y_PLUS_1:
        return p - 1
    return 0


@dataclass(frozen=True)
class State:
    id: int
    poly: BiPoly
    output: int
    label: Label

    @property
    def kind(self) -> StateKind:
        return StateKind.CONSTANT if isinstance(self.label, int) else self.label

    @property
    def kind_name(self) -> str:
        return _kind_name(self.label)


@dataclass(frozen=True)
class DigitString:
    """Base-p digits of n, least significant first, without high-order zeros.

    The empty string represents n = 0.
    """

    digits: tuple[int, ...]
    p: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "digits", tuple(self.digits))
        for d in self.digits:
            if not (isinstance(d, int) and 0 <= d < self.p):
                raise UsageError(f"digit {d!r} outside 0..{self.p - 1}")
        if self.digits and self.digits[-1] == 0:
            raise UsageError("digit string has a high-order zero")

    @classmethod
    def from_int(cls, n: int, p: int) -> DigitString:
        return cls(tuple(base_p_digits(n, p)), p)

    def to_int(self) -> int:
        n = 0
        for d in reversed(self.digits):
            n = n * self.p + d
        return n

    def __len__(self) -> int:
        return len(self.digits)

    def __iter__(self) -> Iterator[int]:
        return iter(self.digits)


_DECIMAL = re.compile(r"[0-9]+")
_CHUNK = 1000


def _parse_decimal(s: str) -> int:
    # chunked so inputs beyond CPython's int/str digit limit still parse
    value = 0
    for i in range(0, len(s), _CHUNK):
        piece = s[i : i + _CHUNK]
        value = value * 10 ** len(piece) + int(piece)
    return value


def decimal_to_digits(n: str, ctx: PrimeContext) -> DigitString:
    """Parse a nonnegative decimal string into canonical base-p digits."""
    if not isinstance(n, str) or not _DECIMAL.fullmatch(n):
        raise UsageError(f"not a nonnegative decimal integer: {n!r}")
    return DigitString.from_int(_parse_decimal(n), ctx.p)


def transition_closed_form(label: Label, d: int, ctx: PrimeContext) -> Label:
    """Transition of a p >= 5 state on digit ``d``, from the transition table.

    ``label`` is a :class:`StateKind` or a nonzero int for a constant state.
    Constants other than 1 scale the constant-1 column.
    """
    p = ctx.p
    if p < 5:
        raise UnsupportedModulusError(f"closed-form transitions need p >= 5, got p={p}")
    if not (isinstance(d, int) and 0 <= d < p):
        raise UsageError(f"digit {d!r} outside 0..{p - 1}")
    if isinstance(label, int):
        label %= p
        if label == 0:
            label = StateKind.ZERO
    if label is StateKind.ZERO:
        return StateKind.ZERO
    if label is StateKind.OTHER or label is StateKind.CONSTANT:
        raise UsageError(f"no closed-form transition for {label!r}")
    half = (p - 1) // 2

    def const(c: int) -> Label:
        c %= p
        return c if c else StateKind.ZERO

    if d == 0:
        if label in (StateKind.S1, StateKind.S2):
            return StateKind.S2
        if label is StateKind.MINUS_Y_PLUS_1:
            return const(-1)
        return const(label)
    if d <= half:
        if label is StateKind.S1:
            return const(fp_inv(d, ctx) * binom_small(2 * d, d - 1, ctx))
        if label is StateKind.S2:
            return const(2 * binom_small(2 * d - 1, d, ctx))
        if label is StateKind.MINUS_Y_PLUS_1:
            return const(-binom_small(2 * d + 1, d, ctx))
        return const(label * binom_small(2 * d, d, ctx))
    if d <= p - 2:
        return StateKind.ZERO
    if label in (StateKind.S1, StateKind.MINUS_Y_PLUS_1):
        return StateKind.MINUS_Y_PLUS_1
    return StateKind.ZERO


@dataclass(frozen=True)
class Automaton:
    """Dense automaton: explicit state list and ``delta[state][digit]`` table.

    State ids follow breadth-first discovery order; the initial state is 0.
    """

    ctx: PrimeContext
    states: tuple[State, ...]
    initial: int
    delta: tuple[tuple[int, ...], ...]

    @property
    def p(self) -> int:
        return self.ctx.p

    def transition(self, state: int, d: int) -> int:
        return self.delta[state][d]

    def output(self, state: int) -> int:
        return self.states[state].output

    def describe(self, state: int) -> str:
        s = self.states[state]
        return f"s{s.id}: {s.poly} (out={s.output})"

    def find(self, poly: BiPoly) -> int | None:
        for s in self.states:
            if s.poly == poly:
                return s.id
        return None

    @property
    def zero_state(self) -> int | None:
        return self.find(BiPoly.zero(self.p))

    def constants(self) -> set[int]:
        """Values of the nonzero constant states."""
        return {s.label for s in self.states if isinstance(s.label, int)}

    def __len__(self) -> int:
        return len(self.states)


@dataclass(frozen=True)
class ClosedFormAutomaton:
    """Table-free automaton for p >= 5; states are labels."""

    ctx: PrimeContext

    def __post_init__(self) -> None:
        if self.ctx.p < 5:
            raise UnsupportedModulusError(f"closed-form mode needs p >= 5, got p={self.ctx.p}")

    @property
    def p(self) -> int:
        return self.ctx.p

    @property
    def initial(self) -> Label:
        return StateKind.S1

    def transition(self, state: Label, d: int) -> Label:
        return transition_closed_form(state, d, self.ctx)

    def output(self, state: Label) -> int:
        return _label_output(state, self.ctx.p)

    def describe(self, state: Label) -> str:
        return f"{_kind_name(state)}: {label_poly(state, self.ctx)} (out={self.output(state)})"


AnyAutomaton = Union[Automaton, ClosedFormAutomaton]


def build(
    ctx: PrimeContext,
    *,
    closed_form: bool | None = None,
    guard: int = BUILD_GUARD,
    closed_form_threshold: int = CLOSED_FORM_THRESHOLD,
) -> AnyAutomaton:
    """Construct the automaton for C_n mod p.

    ``closed_form=None`` picks the table-free mode for p above
    ``closed_form_threshold``; ``False`` forces the generic closure, which is
    refused above ``guard``.
    """
    p = ctx.p
    if closed_form is None:
        closed_form = p > closed_form_threshold and p >= 5
    if closed_form:
        return ClosedFormAutomaton(ctx)
    if p > guard:
        raise ResourceError(f"dense build refused for p={p} > guard {guard}")

    qp = q_power(ctx)
    start = catalan_r(ctx)
    polys = [start]
    index = {start: 0}
    rows: list[list[int]] = []
    queue = deque([0])
    while queue:
        i = queue.popleft()
        row = []
        for d in range(p):
            t = step(polys[i], d, qp, ctx)
            j = index.get(t)
            if j is None:
                j = index[t] = len(polys)
                polys.append(t)
                queue.append(j)
                if p >= 5 and len(polys) > p + 3:
                    raise ConsistencyError(f"closure for p={p} exceeded p+3 states")
            row.append(j)
        rows.append(row)

    states = tuple(State(i, f, eval00(f), classify(f, ctx)) for i, f in enumerate(polys))
    return Automaton(ctx, states, 0, tuple(tuple(r) for r in rows))


def _as_digits(a: AnyAutomaton, n) -> tuple[int, ...]:
    if isinstance(n, int):
        return tuple(base_p_digits(n, a.p))
    if isinstance(n, DigitString):
        if n.p != a.p:
            raise UsageError(f"digits are base {n.p}, automaton is mod {a.p}")
        return n.digits
    return DigitString(tuple(n), a.p).digits


def trace(a: AnyAutomaton, n: DigitString | Sequence[int] | int) -> list:
    """States visited while reading ``n``, starting with the initial state."""
    path = [a.initial]
    for d in _as_digits(a, n):
        path.append(a.transition(path[-1], d))
    return path


def evaluate(a: AnyAutomaton, n: DigitString | Sequence[int] | int) -> int:
    """C_n mod p.  The empty digit string (n = 0) gives 1.

    ``n`` may be a :class:`DigitString`, a raw digit sequence (checked for
    canonical form) or a nonnegative int.
    """
    digits = _as_digits(a, n)
    if not digits:
        return 1
    s = a.initial
    for d in digits:
        s = a.transition(s, d)
    return a.output(s)


def format_digit_set(digits) -> str:
    """``[0, 1, 2, 4]`` -> ``'{0..2, 4}'``; a single digit stays bare."""
    ds = sorted(digits)
    if len(ds) == 1:
        return str(ds[0])
    runs = []
    start = prev = ds[0]
    for d in ds[1:] + [None]:
        if d is not None and d == prev + 1:
            prev = d
            continue
        runs.append(str(start) if start == prev else f"{start}..{prev}")
        if d is not None:
            start = prev = d
    return "{" + ", ".join(runs) + "}"


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(a: Automaton) -> str:
    """Graphviz digraph; constants sit in a cluster labelled C."""
    lines = [f"digraph catalan_mod_{a.p} {{", "  rankdir=LR;", '  __start [shape=point, label=""];']
    consts = []
    for s in a.states:
        attrs = [f"label={_dot_quote(a.describe(s.id))}"]
        if s.kind is StateKind.ZERO:
            attrs += ["shape=doublecircle", "style=filled", 'fillcolor="gray80"']
        elif s.kind is StateKind.CONSTANT:
            attrs += ["shape=box", "style=filled", 'fillcolor="lightblue"']
        else:
            attrs += ["shape=ellipse"]
        node = f"  s{s.id} [{', '.join(attrs)}];"
        (consts if s.kind is StateKind.CONSTANT else lines).append(node)
    if consts:
        lines.append("  subgraph cluster_C {")
        lines.append('    label="C";')
        lines.extend("  " + c for c in consts)
        lines.append("  }")
    lines.append(f"  __start -> s{a.initial};")
    for s in a.states:
        groups: dict[int, list[int]] = {}
        for d, t in enumerate(a.delta[s.id]):
            groups.setdefault(t, []).append(d)
        for t, ds in groups.items():
            lines.append(f"  s{s.id} -> s{t} [label={_dot_quote(format_digit_set(ds))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


AUTOMATON_JSON_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["p", "states", "initial", "delta"],
    "additionalProperties": False,
    "properties": {
        "p": {"type": "integer", "minimum": 2},
        "states": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "poly", "output", "kind"],
                "additionalProperties": False,
                "properties": {
                    "id": {"type": "integer", "minimum": 0},
                    "poly": {
                        "type": "array",
                        "items": {
                            "type": "array",
                            "items": {"type": "integer", "minimum": 0},
                            "minItems": 3,
                            "maxItems": 3,
                        },
                    },
                    "output": {"type": "integer", "minimum": 0},
                    "kind": {"type": "string"},
                },
            },
        },
        "initial": {"type": "integer", "minimum": 0},
        "delta": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        },
    },
}


def export_json(a: Automaton) -> str:
    doc = {
        "p": a.p,
        "states": [
            {
                "id": s.id,
                "poly": [[dx, dy, c] for (dx, dy), c in s.poly.items()],
                "output": s.output,
                "kind": s.kind_name,
            }
            for s in a.states
        ],
        "initial": a.initial,
        "delta": [list(r) for r in a.delta],
    }
    return json.dumps(doc) + "\n"


def import_json(text: str) -> Automaton:
    """Rebuild an :class:`Automaton` from :func:`export_json` output."""
    try:
        doc = json.loads(text)
        p = doc["p"]
        ctx = PrimeContext(p)
        states = []
        for i, s in enumerate(doc["states"]):
            if s["id"] != i:
                raise UsageError(f"state ids must be 0..n-1 in order, got {s['id']} at {i}")
            poly = BiPoly(p, [((dx, dy), c) for dx, dy, c in s["poly"]])
            if eval00(poly) != s["output"]:
                raise UsageError(f"state {i}: output {s['output']} disagrees with polynomial {poly}")
            states.append(State(i, poly, s["output"], classify(poly, ctx)))
        delta = tuple(tuple(r) for r in doc["delta"])
        initial = doc["initial"]
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, UsageError):
            raise
        raise UsageError(f"malformed automaton JSON: {exc}") from exc
    n = len(states)
    if len(delta) != n or any(len(r) != p or any(not 0 <= t < n for t in r) for r in delta):
        raise UsageError("delta table is not total over the states and digits")
    if not 0 <= initial < n:
        raise UsageError(f"initial state {initial} out of range")
    return Automaton(ctx, tuple(states), initial, delta)
