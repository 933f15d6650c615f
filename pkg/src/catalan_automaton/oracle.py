"""Brute-force values of C_n mod p, independent of the automaton."""
from __future__ import annotations

import numpy as np

from .errors import ResourceError
from .field import PrimeContext, binom_lucas

__all__ = ["catalan_lucas_oracle", "catalan_convolution", "CONVOLUTION_GUARD"]

CONVOLUTION_GUARD = 100_000


def catalan_lucas_oracle(n: int, ctx: PrimeContext) -> int:
    """C_n mod p as binom(2n, n) - binom(2n, n+1), each by Lucas' theorem.

    The difference form needs no inverse of n + 1, which fails to exist
    whenever p divides n + 1.
    """
    return (binom_lucas(2 * n, n, ctx) - binom_lucas(2 * n, n + 1, ctx)) % ctx.p


def catalan_convolution(limit: int, ctx: PrimeContext) -> list[int]:
    """[C_0, ..., C_limit] mod p from C_{m+1} = sum_i C_i C_{m-i}.

    Quadratic on purpose.  Each sum is one vectorised dot product.
    """
    if limit > CONVOLUTION_GUARD:
        raise ResourceError(f"convolution oracle limited to N <= {CONVOLUTION_GUARD}, got {limit}")
    if limit < 0:
        return []
    p = ctx.p
    # each dot product is at most (limit + 1)(p - 1)^2; past int64 use Python ints
    dtype = np.int64 if (limit + 1) * (p - 1) ** 2 < 2**62 else object
    c = np.zeros(limit + 1, dtype=dtype)
    c[0] = 1 % p
    for m in range(limit):
        c[m + 1] = int(np.dot(c[: m + 1], c[m::-1])) % p
    return [int(v) for v in c]
