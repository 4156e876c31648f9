"""Dense matrices and vectors over exact cyclotomic or complex float scalars.

Exact objects hold a numpy ``object`` array of :class:`CyclotomicNumber`
entries of one shared order, times a symbolic :class:`Scale`.  The scale
carries the two irrational factors that show up in the clock model: a square
root (pointer states are normalized by ``1/sqrt(N)``) and integer powers of
the angular unit ``2*pi/order``.  Any rational part of a scale is folded into
the entries, so equality of exact objects is a comparison of entries plus
scale.

Float objects hold a ``complex128`` array and always have the trivial scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from .exactcyc import CyclotomicNumber, to_complex
from .numtheory import factorize

__all__ = [
    "DimMismatch",
    "OperatorMatrix",
    "Scale",
    "ScaleMismatch",
    "ScaledNumber",
    "ScalarKindMismatch",
    "StateVector",
    "adjoint",
    "commutator",
    "diagonal",
    "embed",
    "identity",
    "inner_product",
    "matmul",
    "matvec",
    "max_abs_diff",
    "outer",
    "trace",
    "zeros",
]


class DimMismatch(ValueError):
    pass


class ScalarKindMismatch(ValueError):
    pass


class ScaleMismatch(ScalarKindMismatch):
    """Exact operands whose symbolic scales differ cannot be added."""


def _squarefree_split(n: int) -> tuple[int, int]:
    # n = core * root**2 with core squarefree
    core, root = 1, 1
    for p, e in factorize(n):
        root *= p ** (e // 2)
        if e % 2:
            core *= p
    return core, root


@dataclass(frozen=True)
class Scale:
    """``sqrt(radicand) * (2*pi/order) ** omega`` with a squarefree radicand."""

    radicand: int = 1
    omega: int = 0

    def __post_init__(self):
        if self.radicand < 1 or _squarefree_split(self.radicand)[1] != 1:
            raise ValueError(f"radicand must be squarefree and positive, got {self.radicand}")

    def __mul__(self, other: Scale) -> tuple[Scale, int]:
        """Product scale plus the integer factor pulled out of the square roots."""
        g = math.gcd(self.radicand, other.radicand)
        return Scale(self.radicand * other.radicand // (g * g), self.omega + other.omega), g

    def to_float(self, order: int) -> float:
        return math.sqrt(self.radicand) * (2 * math.pi / order) ** self.omega

    @property
    def is_trivial(self) -> bool:
        return self.radicand == 1 and self.omega == 0

    def to_text(self) -> str:
        parts = []
        if self.radicand != 1:
            parts.append(f"sqrt({self.radicand})")
        if self.omega == 1:
            parts.append("w")
        elif self.omega:
            parts.append(f"w^{self.omega}")
        return "*".join(parts)


TRIVIAL = Scale()


def inverse_sqrt(n: int) -> tuple[Scale, int]:
    """Write ``1/sqrt(n)`` as ``sqrt(core) / den``; returns ``(Scale(core), den)``."""
    core, root = _squarefree_split(n)
    # 1/sqrt(core*root^2) = sqrt(core) / (core*root)
    return Scale(core), core * root


@dataclass(frozen=True)
class ScaledNumber:
    """An exact scalar: a cyclotomic value times a symbolic scale."""

    value: CyclotomicNumber
    scale: Scale = TRIVIAL

    def __post_init__(self):
        if not self.value and not self.scale.is_trivial:
            object.__setattr__(self, "scale", TRIVIAL)

    @property
    def order(self) -> int:
        return self.value.order

    def to_complex(self) -> complex:
        return to_complex(self.value) * self.scale.to_float(self.order)

    __complex__ = to_complex

    def __mul__(self, other):
        if isinstance(other, ScaledNumber):
            scale, g = self.scale * other.scale
            return ScaledNumber(self.value * other.value * g, scale)
        if isinstance(other, (int, Fraction, CyclotomicNumber)):
            return ScaledNumber(self.value * other, self.scale)
        return NotImplemented

    __rmul__ = __mul__

    def __add__(self, other):
        if not isinstance(other, ScaledNumber):
            return NotImplemented
        if not other.value:
            return self
        if not self.value:
            return other
        if self.scale != other.scale:
            raise ScaleMismatch(f"{self.scale} vs {other.scale}")
        return ScaledNumber(self.value + other.value, self.scale)

    def __neg__(self):
        return ScaledNumber(-self.value, self.scale)

    def __sub__(self, other):
        return self + (-other)

    def conjugate(self) -> ScaledNumber:
        return ScaledNumber(self.value.conjugate(), self.scale)

    def __bool__(self) -> bool:
        return bool(self.value)

    def to_text(self) -> str:
        body = self.value.to_text()
        if self.scale.is_trivial or not self.value:
            return body
        return f"({body})*{self.scale.to_text()}"


Scalar = Union[ScaledNumber, complex]


# ---------------------------------------------------------------------------
# containers

def _as_exact_array(entries, order: int, ndim: int) -> np.ndarray:
    src = np.asarray(entries, dtype=object)
    if src.ndim != ndim:
        raise ValueError(f"expected {ndim}-d entries, got shape {src.shape}")
    out = np.empty(src.shape, dtype=object)
    for idx, x in np.ndenumerate(src):
        if isinstance(x, CyclotomicNumber):
            if x.order != order:
                raise ScalarKindMismatch(f"entry of order {x.order} in order-{order} object")
            out[idx] = x
        else:
            out[idx] = CyclotomicNumber.from_rational(order, x)
    return out


class _Dense:
    __slots__ = ("entries", "order", "scale")

    ndim = 0

    def __init__(self, entries, order: Optional[int] = None, scale: Scale = TRIVIAL):
        if order is None:
            if not scale.is_trivial:
                raise ScalarKindMismatch("float objects carry no symbolic scale")
            arr = np.array(entries, dtype=np.complex128)
            if arr.ndim != self.ndim:
                raise ValueError(f"expected {self.ndim}-d entries, got shape {arr.shape}")
        else:
            arr = _as_exact_array(entries, order, self.ndim)
            if not any(arr.flat):
                scale = TRIVIAL
        if arr.size == 0:
            raise ValueError("dimension must be at least 1")
        arr.flags.writeable = False
        self.entries = arr
        self.order = order
        self.scale = scale

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def is_exact(self) -> bool:
        return self.order is not None

    @property
    def kind(self) -> str:
        return "float" if self.order is None else f"exact({self.order})"

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        if self.order != other.order or self.scale != other.scale:
            return False
        if self.entries.shape != other.entries.shape:
            return False
        return bool(np.all(self.entries == other.entries))

    __hash__ = None

    def __neg__(self):
        return type(self)(-self.entries, self.order, self.scale)

    def __repr__(self) -> str:
        tag = "" if self.scale.is_trivial else f", scale={self.scale.to_text()}"
        return f"{type(self).__name__}(dim={self.dim}, kind={self.kind}{tag})"


class OperatorMatrix(_Dense):
    """An ``N x N`` operator, exact or float."""

    ndim = 2

    def __init__(self, entries, order=None, scale=TRIVIAL):
        super().__init__(entries, order, scale)
        rows, cols = self.entries.shape
        if rows != cols:
            raise DimMismatch(f"operator must be square, got {rows}x{cols}")

    def element(self, i: int, j: int) -> Scalar:
        if self.is_exact:
            return ScaledNumber(self.entries[i, j], self.scale)
        return complex(self.entries[i, j])

    def __matmul__(self, other):
        if isinstance(other, OperatorMatrix):
            return matmul(self, other)
        if isinstance(other, StateVector):
            return matvec(self, other)
        return NotImplemented

    def __add__(self, other):
        return _combine(self, other, 1)

    def __sub__(self, other):
        return _combine(self, other, -1)

    def times(self, factor) -> OperatorMatrix:
        """Multiply every entry by an int, Fraction, or (for exact) CyclotomicNumber."""
        return _times(self, factor)


class StateVector(_Dense):
    """A length-N coefficient vector in the azimuthal basis."""

    ndim = 1

    def element(self, i: int) -> Scalar:
        if self.is_exact:
            return ScaledNumber(self.entries[i], self.scale)
        return complex(self.entries[i])

    def __add__(self, other):
        return _combine(self, other, 1)

    def __sub__(self, other):
        return _combine(self, other, -1)

    def times(self, factor) -> StateVector:
        return _times(self, factor)


# ---------------------------------------------------------------------------
# helpers

def _check_pair(a: _Dense, b: _Dense) -> None:
    if a.order != b.order:
        raise ScalarKindMismatch(f"{a.kind} vs {b.kind}")
    if a.dim != b.dim:
        raise DimMismatch(f"dimensions {a.dim} and {b.dim}")


def _zero_exact(order: int) -> CyclotomicNumber:
    return CyclotomicNumber.zero(order)


def _times(x: _Dense, factor):
    if x.is_exact:
        entries = np.empty_like(x.entries)
        for idx, v in np.ndenumerate(x.entries):
            entries[idx] = v * factor
        return type(x)(entries, x.order, x.scale)
    return type(x)(x.entries * complex(factor))


def _combine(a: _Dense, b: _Dense, sign: int):
    if type(a) is not type(b):
        return NotImplemented
    _check_pair(a, b)
    if not a.is_exact:
        return type(a)(a.entries + sign * b.entries)
    if not any(b.entries.flat):
        return a
    if not any(a.entries.flat):
        return b if sign > 0 else -b
    if a.scale != b.scale:
        raise ScaleMismatch(f"{a.scale} vs {b.scale}")
    entries = a.entries + b.entries if sign > 0 else a.entries - b.entries
    return type(a)(entries, a.order, a.scale)


def _exact_product(a: np.ndarray, b: np.ndarray, order: int, factor: int) -> np.ndarray:
    # dense product with zero skipping; b may be 1-d
    zero = _zero_exact(order)
    vec = b.ndim == 1
    bb = b.reshape(-1, 1) if vec else b
    n, inner = a.shape
    m = bb.shape[1]
    out = np.empty((n, m), dtype=object)
    for i in range(n):
        row = [zero] * m
        for k in range(inner):
            x = a[i, k]
            if not x:
                continue
            brow = bb[k]
            for j in range(m):
                y = brow[j]
                if y:
                    row[j] = row[j] + x * y
        for j in range(m):
            out[i, j] = row[j] * factor if factor != 1 else row[j]
    return out.reshape(-1) if vec else out


# ---------------------------------------------------------------------------
# operations

def matmul(a: OperatorMatrix, b: OperatorMatrix) -> OperatorMatrix:
    _check_pair(a, b)
    if not a.is_exact:
        return OperatorMatrix(a.entries @ b.entries)
    scale, g = a.scale * b.scale
    return OperatorMatrix(_exact_product(a.entries, b.entries, a.order, g), a.order, scale)


def matvec(a: OperatorMatrix, x: StateVector) -> StateVector:
    _check_pair(a, x)
    if not a.is_exact:
        return StateVector(a.entries @ x.entries)
    scale, g = a.scale * x.scale
    return StateVector(_exact_product(a.entries, x.entries, a.order, g), a.order, scale)


def adjoint(a: OperatorMatrix) -> OperatorMatrix:
    # scales are real, so only the entries are conjugated
    return OperatorMatrix(np.conj(a.entries.T), a.order, a.scale)


def commutator(a: OperatorMatrix, b: OperatorMatrix) -> OperatorMatrix:
    """``a @ b - b @ a``."""
    return matmul(a, b) - matmul(b, a)


def inner_product(x: StateVector, y: StateVector) -> Scalar:
    """``sum_n conj(x_n) * y_n`` (conjugate-linear in ``x``)."""
    _check_pair(x, y)
    if not x.is_exact:
        return complex(np.vdot(x.entries, y.entries))
    scale, g = x.scale * y.scale
    total = _zero_exact(x.order)
    for u, v in zip(x.entries, y.entries):
        if u and v:
            total = total + u.conjugate() * v
    return ScaledNumber(total * g, scale)


def outer(x: StateVector, y: StateVector) -> OperatorMatrix:
    """``|x><y|``."""
    _check_pair(x, y)
    if not x.is_exact:
        return OperatorMatrix(np.outer(x.entries, np.conj(y.entries)))
    scale, g = x.scale * y.scale
    n = x.dim
    out = np.empty((n, n), dtype=object)
    ybar = [v.conjugate() for v in y.entries]
    for i, u in enumerate(x.entries):
        for j, v in enumerate(ybar):
            out[i, j] = u * v * g if g != 1 else u * v
    return OperatorMatrix(out, x.order, scale)


def trace(a: OperatorMatrix) -> Scalar:
    if not a.is_exact:
        return complex(np.trace(a.entries))
    total = _zero_exact(a.order)
    for i in range(a.dim):
        total = total + a.entries[i, i]
    return ScaledNumber(total, a.scale)


def embed(a: Union[OperatorMatrix, StateVector]):
    """Complex-float counterpart of an exact matrix or vector."""
    if not a.is_exact:
        return a
    vals = np.array([to_complex(v) for v in a.entries.flat], dtype=np.complex128)
    vals = vals.reshape(a.entries.shape) * a.scale.to_float(a.order)
    return type(a)(vals)


def identity(dim: int, order: Optional[int] = None) -> OperatorMatrix:
    if order is None:
        return OperatorMatrix(np.eye(dim, dtype=np.complex128))
    return diagonal([1] * dim, order)


def zeros(dim: int, order: Optional[int] = None) -> OperatorMatrix:
    if order is None:
        return OperatorMatrix(np.zeros((dim, dim), dtype=np.complex128))
    return OperatorMatrix([[0] * dim for _ in range(dim)], order)


def diagonal(values: Sequence, order: Optional[int] = None, scale: Scale = TRIVIAL) -> OperatorMatrix:
    n = len(values)
    if order is None:
        return OperatorMatrix(np.diag(np.asarray(values, dtype=np.complex128)))
    rows = [[values[i] if i == j else 0 for j in range(n)] for i in range(n)]
    return OperatorMatrix(rows, order, scale)


def max_abs_diff(a: _Dense, b: _Dense) -> float:
    """Largest entrywise modulus of ``embed(a) - embed(b)``."""
    if a.dim != b.dim:
        raise DimMismatch(f"dimensions {a.dim} and {b.dim}")
    return float(np.max(np.abs(embed(a).entries - embed(b).entries)))


def allclose(a: _Dense, b: _Dense, tol: float = 1e-9) -> bool:
    """Float comparison with the tolerance scaled by the dimension."""
    return max_abs_diff(a, b) <= tol * a.dim
