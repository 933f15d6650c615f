"""Arithmetic in F_p and binomial coefficients reduced modulo p.

Residues are always the least nonnegative representative. Arguments of
``binom_lucas`` may be arbitrarily large Python integers.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, isqrt

from .errors import DomainError

__all__ = [
    "PrimeContext",
    "is_prime",
    "fp_inv",
    "binom_small",
    "binom_lucas",
    "base_p_digits",
]


def is_prime(n: int) -> bool:
    """Deterministic trial division."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for f in range(3, isqrt(n) + 1, 2):
        if n % f == 0:
            return False
    return True


@dataclass(frozen=True)
class PrimeContext:
    """A prime modulus with factorial and inverse-factorial tables mod p.

    >>> ctx = PrimeContext(7)
    >>> ctx.fact[3], ctx.inv_fact[3]
    (6, 6)
    """

    p: int
    fact: tuple[int, ...] = field(init=False, repr=False, compare=False)
    inv_fact: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or isinstance(self.p, bool):
            raise DomainError(f"modulus must be an int, got {self.p!r}")
        if not is_prime(self.p):
            raise DomainError(f"{self.p} is not prime")
        p = self.p
        fact = [1] * p
        for k in range(1, p):
            fact[k] = fact[k - 1] * k % p
        inv_fact = [1] * p
        # Wilson: (p-1)! = -1, which is its own inverse.
        inv_fact[p - 1] = p - 1
        for k in range(p - 1, 0, -1):
            inv_fact[k - 1] = inv_fact[k] * k % p
        object.__setattr__(self, "fact", tuple(fact))
        object.__setattr__(self, "inv_fact", tuple(inv_fact))

    def reduce(self, a: int) -> int:
        return a % self.p


def fp_inv(a: int, ctx: PrimeContext) -> int:
    """Multiplicative inverse of ``a`` modulo p."""
    a %= ctx.p
    if a == 0:
        raise DomainError(f"0 has no inverse modulo {ctx.p}")
    return pow(a, -1, ctx.p)


def _binom_digit(n: int, k: int, ctx: PrimeContext) -> int:
    # 0 <= k <= n < p
    return ctx.fact[n] * ctx.inv_fact[k] % ctx.p * ctx.inv_fact[n - k] % ctx.p


def binom_small(n: int, k: int, ctx: PrimeContext) -> int:
    """binom(n, k) mod p for n up to 2p; zero when k < 0 or k > n."""
    if k < 0 or k > n:
        return 0
    p = ctx.p
    if n < p:
        return _binom_digit(n, k, ctx)
    if n > 2 * p:
        raise DomainError(f"binom_small needs n <= 2p, got n={n}, p={p}")
    n1, n0 = divmod(n, p)
    k1, k0 = divmod(k, p)
    if k0 > n0 or k1 > n1:
        return 0
    # binom(n1, k1) with n1 <= 2 is the Lucas product of the high digits.
    hi = comb(n1, k1) % p
    return hi * _binom_digit(n0, k0, ctx) % p


def base_p_digits(n: int, p: int) -> list[int]:
    """Base-p digits of ``n``, least significant first; ``[]`` for 0."""
    if n < 0:
        raise DomainError("negative integers have no base-p expansion")
    out = []
    while n:
        n, r = divmod(n, p)
        out.append(r)
    return out


def binom_lucas(n: int, k: int, ctx: PrimeContext) -> int:
    """binom(n, k) mod p for arbitrary nonnegative n, k via Lucas' theorem."""
    if k < 0 or k > n:
        return 0
    p = ctx.p
    result = 1
    while k:
        n, ni = divmod(n, p)
        k, ki = divmod(k, p)
        if ki > ni:
            return 0
        result = result * _binom_digit(ni, ki, ctx) % p
    return result
