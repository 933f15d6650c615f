"""Sparse bivariate polynomials over F_p and the Cartier operator.

A :class:`BiPoly` is an immutable map ``(deg_x, deg_y) -> coefficient`` with
no zero coefficients stored, so two polynomials are equal exactly when their
term maps are.  The Catalan automaton lives entirely in this ring: its states
are polynomials, and a transition on digit ``d`` is
``cartier(s * Q**(p-1), d, d)`` with ``Q = x(y+1)^2 - 1``.
"""
from __future__ import annotations

from collections.abc import Iterable, Mapping
from typing import Union

from .errors import UnsupportedModulusError, UsageError
from .field import PrimeContext, binom_small

__all__ = [
    "BiPoly",
    "poly_add",
    "poly_scale",
    "poly_mul",
    "cartier",
    "catalan_q",
    "catalan_r",
    "q_power",
    "step",
    "eval00",
    "TABLE1_BASIS",
    "table1_closed_form",
]

Monomial = tuple[int, int]


class BiPoly:
    """Polynomial in ``x`` and ``y`` with coefficients in F_p.

    >>> f = BiPoly(5, {(0, 1): 1, (0, 0): 1})
    >>> str(f * f)
    '1 + 2y + y^2'
    """

    __slots__ = ("p", "_terms", "_key", "_degs")

    def __init__(self, p: int, terms: Mapping[Monomial, int] | Iterable[tuple[Monomial, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Monomial, int] = {}
        for (dx, dy), c in items:
            if dx < 0 or dy < 0:
                raise UsageError(f"negative exponent in monomial {(dx, dy)}")
            acc[(dx, dy)] = (acc.get((dx, dy), 0) + c) % p
        self.p = p
        self._terms = {m: c for m, c in sorted(acc.items()) if c}
        self._key = (p, tuple(self._terms.items()))
        self._degs = None

    @classmethod
    def _raw(cls, p: int, terms: dict[Monomial, int]) -> BiPoly:
        # trusted constructor: terms already reduced, nonzero
        obj = cls.__new__(cls)
        obj.p = p
        obj._terms = dict(sorted(terms.items()))
        obj._key = (p, tuple(obj._terms.items()))
        obj._degs = None
        return obj

    @classmethod
    def zero(cls, p: int) -> BiPoly:
        return cls._raw(p, {})

    @classmethod
    def constant(cls, p: int, c: int) -> BiPoly:
        return cls(p, {(0, 0): c})

    @classmethod
    def monomial(cls, p: int, dx: int, dy: int, c: int = 1) -> BiPoly:
        return cls(p, {(dx, dy): c})

    @property
    def terms(self) -> dict[Monomial, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, dx: int, dy: int) -> int:
        return self._terms.get((dx, dy), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(m == (0, 0) for m in self._terms)

    def _degrees(self) -> tuple[int, int]:
        if self._degs is None:
            self._degs = (
                max((dx for dx, _ in self._terms), default=-1),
                max((dy for _, dy in self._terms), default=-1),
            )
        return self._degs

    @property
    def deg_x(self) -> int:
        return self._degrees()[0]

    @property
    def deg_y(self) -> int:
        return self._degrees()[1]

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, BiPoly):
            return self._key == other._key
        if isinstance(other, int):
            return self == BiPoly.constant(self.p, other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._key)

    def _check(self, other: BiPoly) -> None:
        if other.p != self.p:
            raise UsageError(f"modulus mismatch: {self.p} vs {other.p}")

    def _coerce(self, other) -> BiPoly:
        if isinstance(other, int):
            return BiPoly.constant(self.p, other)
        self._check(other)
        return other

    def __add__(self, other) -> BiPoly:
        return poly_add(self, self._coerce(other))

    __radd__ = __add__

    def __neg__(self) -> BiPoly:
        return poly_scale(-1, self)

    def __sub__(self, other) -> BiPoly:
        return poly_add(self, -self._coerce(other))

    def __rsub__(self, other) -> BiPoly:
        return poly_add(self._coerce(other), -self)

    def __mul__(self, other) -> BiPoly:
        if isinstance(other, int):
            return poly_scale(other, self)
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> BiPoly:
        if e < 0:
            raise UsageError("negative power")
        result = BiPoly.constant(self.p, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __repr__(self) -> str:
        return f"BiPoly({self.p}, {self._terms!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (dx, dy), c in self._terms.items():
            mono = ""
            if dx:
                mono += "x" if dx == 1 else f"x^{dx}"
            if dy:
                mono += "y" if dy == 1 else f"y^{dy}"
            if not mono:
                parts.append(str(c))
            else:
                parts.append(mono if c == 1 else f"{c}{mono}")
        return " + ".join(parts)


def poly_add(f: BiPoly, g: BiPoly) -> BiPoly:
    f._check(g)
    p = f.p
    out = dict(f._terms)
    for m, c in g._terms.items():
        v = (out.get(m, 0) + c) % p
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return BiPoly._raw(p, out)


def poly_scale(c: int, f: BiPoly) -> BiPoly:
    p = f.p
    c %= p
    if c == 0:
        return BiPoly.zero(p)
    return BiPoly._raw(p, {m: a * c % p for m, a in f._terms.items()})


def poly_mul(f: BiPoly, g: BiPoly) -> BiPoly:
    f._check(g)
    p = f.p
    out: dict[Monomial, int] = {}
    for (ax, ay), a in f._terms.items():
        for (bx, by), b in g._terms.items():
            m = (ax + bx, ay + by)
            out[m] = (out.get(m, 0) + a * b) % p
    return BiPoly._raw(p, {m: c for m, c in out.items() if c})


def _ctx_check(f: BiPoly, ctx: PrimeContext) -> None:
    if f.p != ctx.p:
        raise UsageError(f"polynomial is over F_{f.p}, context is F_{ctx.p}")


def _digit_check(d: int, p: int) -> None:
    if not (isinstance(d, int) and 0 <= d < p):
        raise UsageError(f"digit {d!r} outside 0..{p - 1}")


def cartier(f: BiPoly, d1: int, d2: int, ctx: PrimeContext) -> BiPoly:
    """Keep terms with degrees congruent to ``(d1, d2)`` mod p, divide degrees by p."""
    _ctx_check(f, ctx)
    p = ctx.p
    _digit_check(d1, p)
    _digit_check(d2, p)
    return BiPoly._raw(
        p,
        {(dx // p, dy // p): c for (dx, dy), c in f._terms.items() if dx % p == d1 and dy % p == d2},
    )


def catalan_q(ctx: PrimeContext) -> BiPoly:
    """Q = x(y+1)^2 - 1."""
    return BiPoly(ctx.p, {(1, 2): 1, (1, 1): 2, (1, 0): 1, (0, 0): -1})


def catalan_r(ctx: PrimeContext) -> BiPoly:
    """R = y(1 - 2xy - 2xy^2), the initial state."""
    return BiPoly(ctx.p, {(0, 1): 1, (1, 2): -2, (1, 3): -2})


def q_power(ctx: PrimeContext) -> BiPoly:
    """Q^(p-1), expanded coefficient-wise.

    The coefficient of ``x^k y^l`` is ``binom(p-1, k) binom(2k, l) (-1)^k``
    for ``0 <= k <= p-1`` and ``0 <= l <= 2k``.
    """
    p = ctx.p
    terms = {}
    for k in range(p):
        ck = binom_small(p - 1, k, ctx)
        if k % 2:
            ck = -ck % p
        if not ck:
            continue
        for l in range(2 * k + 1):
            c = ck * binom_small(2 * k, l, ctx) % p
            if c:
                terms[(k, l)] = c
    return BiPoly._raw(p, terms)


def step(s: BiPoly, d: int, qp: BiPoly, ctx: PrimeContext) -> BiPoly:
    """Transition map ``cartier(s * qp, d, d)``.

    Only products landing in the residue class ``(d, d)`` are formed: for a
    term ``x^r y^t`` of ``s`` the partner exponents of ``qp`` are pinned to
    ``k = d - r`` and ``l = d - t`` modulo p, so each term of ``s`` touches a
    handful of entries of ``qp`` instead of all of them.
    """
    _ctx_check(s, ctx)
    _ctx_check(qp, ctx)
    p = ctx.p
    _digit_check(d, p)
    kmax, lmax = qp.deg_x, qp.deg_y
    qterms = qp._terms
    out: dict[Monomial, int] = {}
    for (r, t), a in s._terms.items():
        for k in range((d - r) % p, kmax + 1, p):
            for l in range((d - t) % p, lmax + 1, p):
                b = qterms.get((k, l))
                if b:
                    m = ((k + r) // p, (l + t) // p)
                    out[m] = (out.get(m, 0) + a * b) % p
    return BiPoly._raw(p, {m: c for m, c in out.items() if c})


def eval00(f: BiPoly) -> int:
    """Value at x = y = 0, i.e. the constant term."""
    return f.coeff(0, 0)


TABLE1_BASIS: tuple[Monomial, ...] = ((0, 0), (0, 1), (1, 1), (1, 2), (1, 3))


def table1_closed_form(basis: Union[Monomial, BiPoly], d: int, ctx: PrimeContext) -> BiPoly:
    """Closed form of ``step(x^r y^t, d)`` for the five basis monomials.

    ``basis`` is an exponent pair ``(r, t)`` from :data:`TABLE1_BASIS` or the
    corresponding monic monomial.  Only valid for p >= 5.
    """
    p = ctx.p
    if p < 5:
        raise UnsupportedModulusError(f"closed forms need p >= 5, got p={p}")
    _digit_check(d, p)
    if isinstance(basis, BiPoly):
        if len(basis) != 1 or next(iter(basis.items()))[1] != 1:
            raise UsageError(f"{basis} is not a monic monomial")
        basis = next(iter(basis.items()))[0]
    basis = tuple(basis)

    def const(n: int, k: int) -> BiPoly:
        return BiPoly._raw(p, {(0, 0): v} if (v := binom_small(n, k, ctx)) else {})

    y_plus_1 = BiPoly._raw(p, {(0, 0): 1, (0, 1): 1})
    xy_y_plus_1 = BiPoly._raw(p, {(1, 1): 1, (1, 2): 1})

    if basis == (0, 0):
        return const(2 * d, d)
    if basis == (0, 1):
        return y_plus_1 if d == p - 1 else const(2 * d, d - 1)
    if basis == (1, 1):
        return const(2 * d - 2, d - 1)
    if basis == (1, 2):
        return xy_y_plus_1 if d == 0 else const(2 * d - 2, d - 2)
    if basis == (1, 3):
        if d == 0:
            return poly_scale(-2, xy_y_plus_1)
        return y_plus_1 if d == p - 1 else const(2 * d - 2, d - 3)
    raise UsageError(f"no closed form for basis monomial {basis}")
