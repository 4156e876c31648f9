"""Exact arithmetic in the cyclotomic field Q(zeta_N).

Elements are stored in the reduced power basis ``1, z, ..., z^(phi(N)-1)``
with ``z = exp(2*pi*i/N)``.  Internally the coefficients are kept as a tuple
of integer numerators over one common positive denominator, normalized so
that the gcd of all of them is 1.  Because ``Phi_N`` is monic with integer
coefficients, products and reductions never leave the integers, which keeps
``mul`` cheap compared with carrying one ``Fraction`` per coefficient.

Rationals are ``fractions.Fraction`` throughout.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache, reduce
from numbers import Rational
from typing import Iterable, Sequence, Union

__all__ = [
    "CyclotomicNumber",
    "OrderMismatch",
    "add",
    "conj",
    "cyclotomic_polynomial",
    "mul",
    "neg",
    "root_of_unity",
    "to_complex",
    "totient_degree",
]

RationalLike = Union[int, Fraction]


class OrderMismatch(ValueError):
    """Raised when two cyclotomic numbers of different order are combined."""


# ---------------------------------------------------------------------------
# integer polynomials (ascending coefficient tuples)

def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divexact(num: Sequence[int], den: Sequence[int]) -> list[int]:
    """Quotient of ``num / den`` for a monic ``den`` that divides ``num``."""
    num = list(num)
    dn = len(den) - 1
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    quot = [0] * (len(num) - dn)
    for shift in range(len(quot) - 1, -1, -1):
        c = num[shift + dn]
        quot[shift] = c
        if c:
            for i, d in enumerate(den):
                num[shift + i] -= c * d
    if any(num[:dn]):
        raise ArithmeticError("inexact polynomial division")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first.

    Uses ``x^n - 1 = prod_{d | n} Phi_d(x)`` and divides out the proper
    divisors.

    >>> cyclotomic_polynomial(6)
    (1, -1, 1)
    """
    if n < 1:
        raise ValueError(f"cyclotomic_polynomial needs n >= 1, got {n}")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def totient_degree(n: int) -> int:
    """Degree of Phi_n, i.e. Euler's phi(n)."""
    return len(cyclotomic_polynomial(n)) - 1


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    # row e holds the reduced coefficients of x^e mod Phi_n, for 0 <= e < n
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    row = [1] + [0] * (deg - 1)
    rows = []
    for _ in range(n):
        rows.append(tuple(row))
        top = row[-1]
        row = [0] + row[:-1]
        if top:
            for i in range(deg):
                row[i] -= top * phi[i]
    return tuple(rows)


@lru_cache(maxsize=None)
def _unit_powers(n: int) -> tuple[complex, ...]:
    deg = totient_degree(n)
    return tuple(cmath.exp(2j * math.pi * i / n) for i in range(deg))


# ---------------------------------------------------------------------------

class CyclotomicNumber:
    """An element of Q(zeta_N) in canonical reduced form.

    Parameters
    ----------
    order : int
        The cyclotomic order ``N``.
    coeffs : sequence of int or Fraction
        Exactly ``phi(N)`` coefficients in the power basis of ``zeta_N``.

    Two values compare equal iff their orders and coefficient sequences
    agree.  Instances are immutable and hashable.
    """

    __slots__ = ("_order", "_nums", "_den")

    def __init__(self, order: int, coeffs: Sequence[RationalLike]):
        deg = totient_degree(order)
        if len(coeffs) != deg:
            raise ValueError(
                f"order {order} needs {deg} coefficients, got {len(coeffs)}")
        fracs = [Fraction(c) for c in coeffs]
        den = reduce(_lcm, (f.denominator for f in fracs), 1)
        nums = [f.numerator * (den // f.denominator) for f in fracs]
        self._set(order, nums, den)

    @classmethod
    def _raw(cls, order: int, nums: Sequence[int], den: int = 1) -> CyclotomicNumber:
        obj = cls.__new__(cls)
        obj._set(order, nums, den)
        return obj

    def _set(self, order: int, nums: Sequence[int], den: int) -> None:
        g = math.gcd(den, *nums)
        if den < 0:
            g = -g
        if g not in (0, 1):
            nums = [x // g for x in nums]
            den //= g
        if not any(nums):
            den = 1
        self._order = order
        self._nums = tuple(nums)
        self._den = den

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_rational(cls, order: int, value: RationalLike) -> CyclotomicNumber:
        value = Fraction(value)
        deg = totient_degree(order)
        return cls._raw(order, [value.numerator] + [0] * (deg - 1),
                        value.denominator)

    @classmethod
    def zero(cls, order: int) -> CyclotomicNumber:
        return cls._raw(order, [0] * totient_degree(order))

    @classmethod
    def one(cls, order: int) -> CyclotomicNumber:
        return cls.from_rational(order, 1)

    @classmethod
    def from_polynomial(cls, order: int, coeffs: Iterable[RationalLike]) -> CyclotomicNumber:
        """Reduce ``sum_e coeffs[e] * zeta^e`` (any length) to canonical form."""
        fracs = [Fraction(c) for c in coeffs]
        den = reduce(_lcm, (f.denominator for f in fracs), 1)
        acc = [0] * order
        for e, f in enumerate(fracs):
            acc[e % order] += f.numerator * (den // f.denominator)
        return cls._raw(order, _reduce_cyclic(order, acc), den)

    # -- accessors --------------------------------------------------------

    @property
    def order(self) -> int:
        return self._order

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self._den) for x in self._nums)

    @property
    def numerators(self) -> tuple[int, ...]:
        return self._nums

    @property
    def denominator(self) -> int:
        return self._den

    def is_rational(self) -> bool:
        return not any(self._nums[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self._nums[0], self._den)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> CyclotomicNumber:
        if isinstance(other, CyclotomicNumber):
            if other._order != self._order:
                raise OrderMismatch(
                    f"cannot combine orders {self._order} and {other._order}")
            return other
        if isinstance(other, (int, Rational)):
            return CyclotomicNumber.from_rational(self._order, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other._nums or not any(other._nums):
            return self
        if not any(self._nums):
            return other
        d1, d2 = self._den, other._den
        if d1 == d2:
            nums = [a + b for a, b in zip(self._nums, other._nums)]
            return CyclotomicNumber._raw(self._order, nums, d1)
        den = _lcm(d1, d2)
        f1, f2 = den // d1, den // d2
        nums = [a * f1 + b * f2 for a, b in zip(self._nums, other._nums)]
        return CyclotomicNumber._raw(self._order, nums, den)

    __radd__ = __add__

    def __neg__(self) -> CyclotomicNumber:
        return CyclotomicNumber._raw(self._order, [-x for x in self._nums], self._den)

    def __pos__(self) -> CyclotomicNumber:
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = self._order
        if not any(self._nums) or not any(other._nums):
            return CyclotomicNumber.zero(n)
        if other.is_rational():
            c = other._nums[0]
            return CyclotomicNumber._raw(
                n, [x * c for x in self._nums], self._den * other._den)
        if self.is_rational():
            return other * self
        acc = [0] * n
        for i, a in enumerate(self._nums):
            if a:
                for j, b in enumerate(other._nums):
                    if b:
                        acc[(i + j) % n] += a * b
        return CyclotomicNumber._raw(n, _reduce_cyclic(n, acc), self._den * other._den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, exponent: int) -> CyclotomicNumber:
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else self.inverse()
        exponent = abs(exponent)
        result = CyclotomicNumber.one(self._order)
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def galois(self, k: int) -> CyclotomicNumber:
        """Apply the automorphism ``zeta -> zeta^k`` (``k`` coprime to the order)."""
        n = self._order
        if math.gcd(k, n) != 1:
            raise ValueError(f"{k} is not a unit modulo {n}")
        acc = [0] * n
        for i, a in enumerate(self._nums):
            if a:
                acc[(i * k) % n] += a
        return CyclotomicNumber._raw(n, _reduce_cyclic(n, acc), self._den)

    def conjugate(self) -> CyclotomicNumber:
        return self.galois(self._order - 1)

    def norm(self) -> Fraction:
        """Field norm down to Q, the product of all Galois conjugates."""
        return (self * self._other_conjugates()).to_fraction()

    def _other_conjugates(self) -> CyclotomicNumber:
        n = self._order
        prod = CyclotomicNumber.one(n)
        for k in range(2, n):
            if math.gcd(k, n) == 1:
                prod = prod * self.galois(k)
        return prod

    def inverse(self) -> CyclotomicNumber:
        if not any(self._nums):
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self.is_rational():
            return CyclotomicNumber.from_rational(self._order, 1 / self.to_fraction())
        rest = self._other_conjugates()
        nrm = (self * rest).to_fraction()
        return rest * (1 / nrm)

    def real_part(self) -> CyclotomicNumber:
        """``(a + conj(a)) / 2``, still as a field element."""
        return (self + self.conjugate()) * Fraction(1, 2)

    # -- comparisons and conversion ---------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, CyclotomicNumber):
            return (self._order == other._order and self._den == other._den
                    and self._nums == other._nums)
        if isinstance(other, (int, Rational)):
            return self.is_rational() and self.to_fraction() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.to_fraction())
        return hash((self._order, self._nums, self._den))

    def __bool__(self) -> bool:
        return any(self._nums)

    def __complex__(self) -> complex:
        return to_complex(self)

    def to_text(self, var: str = "z") -> str:
        """Render as a polynomial in ``var``, lowest power first.

        >>> root_of_unity(3, 2).to_text()
        '-1 - z'
        """
        terms = []
        for power, c in enumerate(self.coeffs):
            if not c:
                continue
            mag = abs(c)
            if power == 0:
                body = str(mag)
            else:
                mono = var if power == 1 else f"{var}^{power}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            terms.append((c < 0, body))
        if not terms:
            return "0"
        neg0, body0 = terms[0]
        out = ("-" if neg0 else "") + body0
        for negative, body in terms[1:]:
            out += (" - " if negative else " + ") + body
        return out

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"CyclotomicNumber({self._order}, {self.to_text()!r})"


def _lcm(a: int, b: int) -> int:
    return a // math.gcd(a, b) * b


def _reduce_cyclic(n: int, acc: Sequence[int]) -> list[int]:
    # acc holds coefficients of x^0..x^(n-1) in Z[x]/(x^n - 1)
    table = _power_table(n)
    deg = len(table[0])
    out = list(acc[:deg])
    for e in range(deg, n):
        c = acc[e]
        if c:
            for i, t in enumerate(table[e]):
                if t:
                    out[i] += c * t
    return out


# ---------------------------------------------------------------------------
# functional surface

def root_of_unity(n: int, k: int) -> CyclotomicNumber:
    """Canonical form of ``zeta_n^k``; ``k`` is reduced modulo ``n``."""
    if n < 1:
        raise ValueError(f"root_of_unity needs n >= 1, got {n}")
    return CyclotomicNumber._raw(n, list(_power_table(n)[k % n]))


def add(a: CyclotomicNumber, b: CyclotomicNumber) -> CyclotomicNumber:
    _check_orders(a, b)
    return a + b


def mul(a: CyclotomicNumber, b: CyclotomicNumber) -> CyclotomicNumber:
    _check_orders(a, b)
    return a * b


def neg(a: CyclotomicNumber) -> CyclotomicNumber:
    return -a


def conj(a: CyclotomicNumber) -> CyclotomicNumber:
    return a.conjugate()


def to_complex(a: CyclotomicNumber) -> complex:
    """Evaluate at ``exp(2*pi*i/order)`` in double precision."""
    powers = _unit_powers(a.order)
    re = math.fsum(c * w.real for c, w in zip(a.numerators, powers))
    im = math.fsum(c * w.imag for c, w in zip(a.numerators, powers))
    return complex(re / a.denominator, im / a.denominator)


def _check_orders(a: CyclotomicNumber, b: CyclotomicNumber) -> None:
    if a.order != b.order:
        raise OrderMismatch(f"cannot combine orders {a.order} and {b.order}")
