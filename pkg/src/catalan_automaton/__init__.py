"""Finite automata for Catalan numbers modulo a prime.

>>> from catalan_automaton import catalan_mod
>>> catalan_mod(124, 5)
4
>>> catalan_mod("98765432123456789", 13) == catalan_mod(98765432123456789, 13)
True
"""
from functools import lru_cache

from .automaton import (
    Automaton,
    ClosedFormAutomaton,
    DigitString,
    State,
    StateKind,
    build,
    decimal_to_digits,
    evaluate,
    export_dot,
    export_json,
    import_json,
    trace,
    transition_closed_form,
)
from .bipoly import BiPoly, cartier, eval00, q_power, step, table1_closed_form
from .errors import (
    CatalanAutomatonError,
    ConsistencyError,
    DomainError,
    ResourceError,
    UnsupportedModulusError,
    UsageError,
)
from .field import PrimeContext, binom_lucas, binom_small, fp_inv
from .oracle import catalan_convolution, catalan_lucas_oracle

__version__ = "0.1.0"


@lru_cache(maxsize=32)
def _automaton(p: int):
    return build(PrimeContext(p))


def catalan_mod(n, p: int) -> int:
    """C_n mod p for an int or decimal-string ``n``."""
    a = _automaton(p)
    digits = decimal_to_digits(n, a.ctx) if isinstance(n, str) else DigitString.from_int(n, p)
    return evaluate(a, digits)
