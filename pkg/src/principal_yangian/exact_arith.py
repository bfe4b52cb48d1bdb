"""Exact arithmetic in cyclotomic fields Q(w), w = exp(2*pi*i/n).

Elements are stored in canonical form: coordinates over the power basis
1, w, ..., w^(phi(n)-1) after reduction modulo the n-th cyclotomic
polynomial.  Internally the coordinates are kept as integer numerators over
a single positive denominator, normalised so that equality is a tuple
comparison.  Rational scalars are plain :class:`fractions.Fraction`.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

Rat = Fraction
Scalar = Union[int, Fraction, "Cyc"]


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` (or an integer string) into an exact rational.

    Decimal and float spellings are rejected on purpose.
    """
    s = text.strip()
    if not s:
        raise ValueError("empty rational")
    parts = s.split("/")
    if len(parts) > 2:
        raise ValueError(f"not a rational: {text!r}")
    try:
        p = int(parts[0])
        q = int(parts[1]) if len(parts) == 2 else 1
    except ValueError:
        raise ValueError(f"not a rational: {text!r}") from None
    if q == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return Fraction(p, q)


def format_rational(q: Fraction | int) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


# -- integer polynomials, coefficient lists low degree first ---------------

def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(p: Sequence, q: Sequence) -> list:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def _poly_divmod(p: Sequence, q: Sequence) -> tuple[list, list]:
    """Polynomial long division over Q.  ``q`` must be nonzero."""
    r = [Fraction(c) for c in p]
    _trim(r)
    q = _trim([Fraction(c) for c in q])
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    dq = len(q) - 1
    lead = q[-1]
    quot = [Fraction(0)] * max(len(r) - dq, 1)
    while len(r) - 1 >= dq and r:
        shift = len(r) - 1 - dq
        c = r[-1] / lead
        quot[shift] = c
        for i, b in enumerate(q):
            r[shift + i] -= c * b
        _trim(r)
    return _trim(quot), r


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients (low degree first) of the monic n-th cyclotomic polynomial.

    >>> cyclotomic_poly(3)
    (1, 1, 1)
    """
    if n < 1:
        raise ValueError(f"cyclotomic_poly needs n >= 1, got {n}")
    num: list = [-1] + [0] * (n - 1) + [1]
    den: list = [1]
    for d in range(1, n):
        if n % d == 0:
            den = _poly_mul(den, cyclotomic_poly(d))
    quot, rem = _poly_divmod(num, den)
    assert not rem, "x^n - 1 not divisible by the proper cyclotomic factors"
    assert all(c.denominator == 1 for c in quot)
    return tuple(int(c) for c in quot)


def euler_phi(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Row k holds the canonical coordinates of x^k mod Phi_n, 0 <= k < n."""
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    rows = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(n):
        rows.append(tuple(cur))
        # multiply by x, then eliminate x^deg using the monic relation
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(deg):
                cur[i] -= top * phi[i]
    return tuple(rows)


def _reduce_ints(n: int, coeffs: Sequence[int]) -> list[int]:
    """Reduce an integer polynomial in w to canonical coordinates."""
    table = _power_table(n)
    deg = len(table[0])
    folded = [0] * n
    for k, c in enumerate(coeffs):
        if c:
            folded[k % n] += c
    out = folded[:deg] if deg <= n else folded + [0] * (deg - n)
    for k in range(deg, n):
        c = folded[k]
        if c:
            row = table[k]
            for i in range(deg):
                if row[i]:
                    out[i] += c * row[i]
    return out


class Cyc:
    """An element of Q(w_n) in canonical form.  Immutable."""

    __slots__ = ("order", "_num", "_den", "_hash")

    def __init__(self, order: int, coeffs: Iterable[int | Fraction] = ()):
        coeffs = [Fraction(c) for c in coeffs]
        den = math.lcm(*(c.denominator for c in coeffs)) if coeffs else 1
        ints = [c.numerator * (den // c.denominator) for c in coeffs]
        self._set(order, _reduce_ints(order, ints), den)

    def _set(self, order: int, num: list[int], den: int) -> None:
        g = math.gcd(den, *num)
        if g != 1:
            num = [c // g for c in num]
            den //= g
        if not any(num):
            den = 1
        self.order = order
        self._num = tuple(num)
        self._den = den
        self._hash = None

    @classmethod
    def _raw(cls, order: int, num: list[int], den: int) -> "Cyc":
        obj = cls.__new__(cls)
        obj._set(order, num, den)
        return obj

    @classmethod
    def rational(cls, order: int, q: int | Fraction) -> "Cyc":
        q = Fraction(q)
        num = [0] * euler_phi(order)
        num[0] = q.numerator
        return cls._raw(order, num, q.denominator)

    @classmethod
    def zero(cls, order: int) -> "Cyc":
        return _zero(order)

    @classmethod
    def one(cls, order: int) -> "Cyc":
        return _one(order)

    # -- inspection --------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        """Canonical power-basis coordinates, length phi(order)."""
        return tuple(Fraction(c, self._den) for c in self._num)

    def is_zero(self) -> bool:
        return not any(self._num)

    def __bool__(self) -> bool:
        return any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self._num[0], self._den)

    def to_complex(self) -> complex:
        """Floating-point rendering, for display only."""
        w = cmath.exp(2j * cmath.pi / self.order)
        return sum(c * w**k for k, c in enumerate(self._num)) / self._den

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "Cyc | None":
        if isinstance(other, Cyc):
            if other.order != self.order:
                raise ValueError(
                    f"order mismatch: Q(w_{self.order}) vs Q(w_{other.order})"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Cyc.rational(self.order, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not any(o._num):
            return self
        if not any(self._num):
            return o
        if self._den == o._den:
            num = [a + b for a, b in zip(self._num, o._num)]
            return Cyc._raw(self.order, num, self._den)
        num = [a * o._den + b * self._den for a, b in zip(self._num, o._num)]
        return Cyc._raw(self.order, num, self._den * o._den)

    __radd__ = __add__

    def __neg__(self) -> "Cyc":
        return Cyc._raw(self.order, [-a for a in self._num], self._den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not any(self._num):
            return self
        if not any(o._num):
            return o
        den = self._den * o._den
        if o.is_rational():
            c = o._num[0]
            return Cyc._raw(self.order, [a * c for a in self._num], den)
        if self.is_rational():
            c = self._num[0]
            return Cyc._raw(self.order, [b * c for b in o._num], den)
        prod = _poly_mul(self._num, o._num)
        return Cyc._raw(self.order, _reduce_ints(self.order, prod), den)

    __rmul__ = __mul__

    def inverse(self) -> "Cyc":
        return cyc_inv(self)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * cyc_inv(o)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * cyc_inv(self)

    def __pow__(self, k: int) -> "Cyc":
        if k < 0:
            return cyc_inv(self) ** (-k)
        result = _one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "Cyc":
        """Complex conjugate, i.e. the Galois automorphism w -> w^-1."""
        n = self.order
        ints = [0] * n
        for k, c in enumerate(self._num):
            ints[(-k) % n] += c
        return Cyc._raw(n, _reduce_ints(n, ints), self._den)

    # -- comparison --------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Cyc):
            return (
                self.order == other.order
                and self._den == other._den
                and self._num == other._num
            )
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self._num[0], self._den) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self._num[0], self._den))
            else:
                self._hash = hash((self.order, self._num, self._den))
        return self._hash

    # -- display / serialisation -------------------------------------------

    def __repr__(self) -> str:
        return f"Cyc({self.order}, {[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else ("w" if k == 1 else f"w^{k}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"({c})*{mono}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [format_rational(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "Cyc":
        n = int(data["order"])
        coeffs = [parse_rational(s) for s in data["coeffs"]]
        if len(coeffs) != euler_phi(n):
            raise ValueError(f"expected {euler_phi(n)} coefficients for order {n}")
        return cls(n, coeffs)


@lru_cache(maxsize=None)
def _zero(order: int) -> Cyc:
    return Cyc.rational(order, 0)


@lru_cache(maxsize=None)
def _one(order: int) -> Cyc:
    return Cyc.rational(order, 1)


@lru_cache(maxsize=None)
def root_of_unity(n: int, k: int = 1) -> Cyc:
    """w^k in Q(w_n); ``k`` is taken modulo ``n``."""
    if n < 1:
        raise ValueError(f"root_of_unity needs n >= 1, got {n}")
    ints = [0] * n
    ints[k % n] = 1
    return Cyc._raw(n, _reduce_ints(n, ints), 1)


def cyc_inv(x: Cyc) -> Cyc:
    """Multiplicative inverse via the extended Euclidean algorithm against Phi_n."""
    if x.is_zero():
        raise ZeroDivisionError("inverse of zero in a cyclotomic field")
    if x.is_rational():
        return Cyc.rational(x.order, 1 / x.as_rational())
    # invariant: r_i = s_i * x  (mod Phi_n)
    r0, r1 = [Fraction(c) for c in cyclotomic_poly(x.order)], list(x.coeffs)
    _trim(r1)
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        prod = _poly_mul(q, s1)
        s2 = [
            (s0[i] if i < len(s0) else 0) - (prod[i] if i < len(prod) else 0)
            for i in range(max(len(s0), len(prod)))
        ]
        r0, r1 = r1, r
        s0, s1 = s1, _trim(s2)
    # r1 is a nonzero constant since Phi_n is irreducible
    c = r1[0]
    return Cyc(x.order, [a / c for a in s1])
