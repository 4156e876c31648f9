"""The Salecker-Wigner-Peres clock and its coprime-restricted variant.

Natural units: ``tau = 1`` and ``hbar = 1``, so ``omega = 2*pi/N``.  Exact
operators keep ``omega`` symbolic as ``Scale(omega=1)``; pointer states keep
their ``1/sqrt(N)`` normalization symbolic as a square-root scale.

Basis positions ``i = 0..N-1`` carry the azimuthal labels of the model's
convention: ``m = i`` (zero-based) or ``m = i - j`` with ``N = 2j + 1``
(symmetric).
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from . import linalg
from .exactcyc import CyclotomicNumber, root_of_unity
from .linalg import OperatorMatrix, Scale, ScaledNumber, StateVector
from .numtheory import coprime_residues, weighted_coprime_sum

__all__ = [
    "BasisRelation",
    "ClockModel",
    "Convention",
    "EnergyReport",
    "EvolutionSpec",
    "IndexOutOfRange",
    "NotNormalized",
    "SuperpositionResult",
    "azimuthal_wavefunction",
    "basis_relation",
    "clock_time_operator",
    "commutator_tc_hc",
    "commutator_tc_hc_element",
    "commutator_tcyclot_hc",
    "cyclo_commutator_element",
    "cyclotomic_time_operator",
    "energy_uncertainty",
    "evolution_operator",
    "float_operators",
    "hamiltonian",
    "pointer_index",
    "pointer_overlaps",
    "pointer_state_vector",
    "pointer_wavefunction",
    "pointer_wavefunction_closed_form",
    "superposition_expectation",
    "to_pointer_basis",
    "wavefunction_evolution",
]

OMEGA = Scale(omega=1)
PI_OVER_SQRT3 = math.pi / math.sqrt(3)


class IndexOutOfRange(IndexError):
    pass


class NotNormalized(ValueError):
    pass


class Convention(enum.Enum):
    ZERO_BASED = "zero-based"
    SYMMETRIC = "symmetric"


@dataclass(frozen=True)
class ClockModel:
    """Clock of dimension ``dim`` in natural units (``tau = hbar = 1``)."""

    dim: int
    convention: Convention = Convention.ZERO_BASED

    tau = 1.0
    hbar = 1.0

    def __post_init__(self):
        if not isinstance(self.dim, int) or self.dim < 1:
            raise ValueError(f"clock dimension must be a positive integer, got {self.dim!r}")
        conv = Convention(self.convention)
        object.__setattr__(self, "convention", conv)
        if conv is Convention.SYMMETRIC and self.dim % 2 == 0:
            raise ValueError(f"symmetric convention needs odd N = 2j+1, got {self.dim}")

    @property
    def omega(self) -> float:
        return 2 * math.pi / (self.dim * self.tau)

    @property
    def j(self) -> int:
        return (self.dim - 1) // 2

    @property
    def labels(self) -> tuple[int, ...]:
        """Azimuthal quantum numbers ``m`` at basis positions ``0..N-1``."""
        shift = self.j if self.convention is Convention.SYMMETRIC else 0
        return tuple(i - shift for i in range(self.dim))

    def check_index(self, *indices: int) -> None:
        for i in indices:
            if not 0 <= i < self.dim:
                raise IndexOutOfRange(f"index {i} outside 0..{self.dim - 1}")


@dataclass(frozen=True)
class EvolutionSpec:
    """Frequency offset and amplitudes of the stationary-state superposition.

    ``amplitudes`` defaults to ``N**-0.5`` for every state.
    """

    omega0: float = 0.0
    amplitudes: Optional[tuple[complex, ...]] = None

    def __post_init__(self):
        if self.amplitudes is not None:
            amps = tuple(complex(a) for a in self.amplitudes)
            object.__setattr__(self, "amplitudes", amps)
            norm2 = sum(abs(a) ** 2 for a in amps)
            if abs(norm2 - 1) > 1e-12:
                raise NotNormalized(f"sum |a_k|^2 = {norm2!r}, expected 1")

    def resolve(self, dim: int) -> np.ndarray:
        if self.amplitudes is None:
            return np.full(dim, dim ** -0.5, dtype=np.complex128)
        if len(self.amplitudes) != dim:
            raise ValueError(f"need {dim} amplitudes, got {len(self.amplitudes)}")
        return np.asarray(self.amplitudes, dtype=np.complex128)


# ---------------------------------------------------------------------------
# wavefunctions on the circle

def azimuthal_wavefunction(n: int, theta: float, dim: Optional[int] = None) -> complex:
    """``u_n(theta) = exp(i n theta) / sqrt(2 pi)``."""
    if n < 0 or (dim is not None and n >= dim):
        raise IndexOutOfRange(f"azimuthal index {n} out of range")
    return cmath.exp(1j * n * theta) / math.sqrt(2 * math.pi)


def pointer_wavefunction(model: ClockModel, k: int, theta: float) -> complex:
    """``v_k(theta)`` as the finite sum over the azimuthal states."""
    model.check_index(k)
    n = model.dim
    total = sum(cmath.exp(-2j * math.pi * k * m / n) * cmath.exp(1j * m * theta)
                for m in model.labels)
    return total / math.sqrt(2 * math.pi * n)


def pointer_wavefunction_closed_form(model: ClockModel, k: int, theta: float) -> float:
    """Dirichlet-kernel profile ``sin(N x/2) / sin(x/2) / sqrt(2 pi N)``, ``x = theta - 2 pi k/N``.

    This is exactly :func:`pointer_wavefunction` in the symmetric
    convention.  In the zero-based convention the finite sum carries the
    extra unimodular factor :func:`pointer_phase`.
    """
    model.check_index(k)
    n = model.dim
    x = theta - 2 * math.pi * k / n
    norm = math.sqrt(2 * math.pi * n)
    # removable singularities at x = 2 pi r
    r = round(x / (2 * math.pi))
    if abs(x - 2 * math.pi * r) < 1e-12:
        sign = -1 if (r * (n + 1)) % 2 else 1
        return sign * n / norm
    return math.sin(n * x / 2) / math.sin(x / 2) / norm


def pointer_phase(model: ClockModel, k: int, theta: float) -> complex:
    """Ratio of the finite-sum pointer wavefunction to its real closed form."""
    if model.convention is Convention.SYMMETRIC:
        return 1.0 + 0j
    x = theta - 2 * math.pi * k / model.dim
    return cmath.exp(0.5j * (model.dim - 1) * x)


# ---------------------------------------------------------------------------
# exact states and operators

@lru_cache(maxsize=256)
def pointer_state_vector(model: ClockModel, k: int) -> StateVector:
    """``v_k = N^{-1/2} sum_m zeta^{-k m} u_m``, exact.

    >>> v = pointer_state_vector(ClockModel(2), 1)
    >>> [str(c) for c in v.entries], v.scale
    (['1/2', '-1/2'], Scale(radicand=2, omega=0))
    """
    model.check_index(k)
    n = model.dim
    scale, den = linalg.inverse_sqrt(n)
    factor = Fraction(1, den)
    entries = [root_of_unity(n, -k * m) * factor for m in model.labels]
    return StateVector(entries, n, scale)


def _pointer_matrix(model: ClockModel) -> OperatorMatrix:
    # columns are the pointer states
    cols = [pointer_state_vector(model, k) for k in range(model.dim)]
    entries = np.array([[c.entries[i] for c in cols] for i in range(model.dim)], dtype=object)
    return OperatorMatrix(entries, model.dim, cols[0].scale)


def _weighted_projector_sum(model: ClockModel, weights: dict[int, int]) -> OperatorMatrix:
    total = linalg.zeros(model.dim, model.dim)
    for k, w in weights.items():
        if w:
            v = pointer_state_vector(model, k)
            total = total + linalg.outer(v, v).times(w)
    return total


@lru_cache(maxsize=64)
def clock_time_operator(model: ClockModel) -> OperatorMatrix:
    """``T_c = tau * sum_k k |v_k><v_k|`` in the azimuthal basis."""
    return _weighted_projector_sum(model, {k: k for k in range(model.dim)})


@lru_cache(maxsize=64)
def cyclotomic_time_operator(model: ClockModel) -> OperatorMatrix:
    """``T_cyclot = tau * sum_{(p,N)=1} p |v_p><v_p|``."""
    return _weighted_projector_sum(model, {p: p for p in coprime_residues(model.dim)})


@lru_cache(maxsize=64)
def hamiltonian(model: ClockModel) -> OperatorMatrix:
    """``H_c = diag(m) * hbar*omega`` over the convention's labels."""
    return linalg.diagonal(list(model.labels), model.dim, OMEGA)


def evolution_operator(model: ClockModel, steps: int) -> OperatorMatrix:
    """``exp(-i H_c t)`` at ``t = steps * tau``: ``diag(zeta^{-m*steps})``."""
    if steps < 0:
        raise ValueError(f"steps must be non-negative, got {steps}")
    n = model.dim
    return linalg.diagonal([root_of_unity(n, -m * steps) for m in model.labels], n)


def pointer_index(model: ClockModel, state: StateVector) -> Optional[int]:
    """The ``k`` with ``state == v_k`` exactly, or None."""
    for k in range(model.dim):
        if state == pointer_state_vector(model, k):
            return k
    return None


def to_pointer_basis(model: ClockModel, op: OperatorMatrix) -> OperatorMatrix:
    """Matrix elements ``<v_m| op |v_n>``."""
    vmat = _pointer_matrix(model)
    return linalg.matmul(linalg.adjoint(vmat), linalg.matmul(op, vmat))


@lru_cache(maxsize=64)
def commutator_tc_hc(model: ClockModel) -> OperatorMatrix:
    """Brute-force ``[T_c, H_c]`` in the azimuthal basis."""
    return linalg.commutator(clock_time_operator(model), hamiltonian(model))


@lru_cache(maxsize=64)
def commutator_tcyclot_hc(model: ClockModel) -> OperatorMatrix:
    """Brute-force ``[T_cyclot, H_c]`` in the azimuthal basis."""
    return linalg.commutator(cyclotomic_time_operator(model), hamiltonian(model))


def commutator_tc_hc_element(model: ClockModel, m: int, n: int, basis: str = "u") -> ScaledNumber:
    """Closed form of ``<u_m|[T_c, H_c]|u_n>``.

    Zero on the diagonal, otherwise
    ``i hbar (2 pi i/N)(n-m) / (1 - zeta^(n-m))``.  With ``hbar = tau = 1``
    the prefactor ``i * 2 pi i/N`` is ``-omega``.

    ``basis`` only labels which element is being claimed; the same number is
    returned for ``"v"``.  See :func:`basis_relation` for how the pointer-basis
    element actually relates to this one.
    """
    if basis not in ("u", "v"):
        raise ValueError(f"basis must be 'u' or 'v', got {basis!r}")
    model.check_index(m, n)
    order = model.dim
    if m == n:
        return ScaledNumber(CyclotomicNumber.zero(order))
    d = n - m
    denom = 1 - root_of_unity(order, d)
    return ScaledNumber(denom.inverse() * (-d), OMEGA)


def cyclo_commutator_element(model: ClockModel, l: int, n: int) -> ScaledNumber:
    """``hbar*omega * (tau/N) * sum_{(p,N)=1} p (l-n) zeta^(p(l-n))``.

    This is the coefficient of ``|u_n><u_l|`` in ``[T_cyclot, H_c]``, i.e. the
    azimuthal matrix element at row ``n``, column ``l``.
    """
    model.check_index(l, n)
    d = l - n
    val = weighted_coprime_sum(model.dim, d) * Fraction(d, model.dim)
    return ScaledNumber(val, OMEGA)


# ---------------------------------------------------------------------------
# float oracle

@dataclass(frozen=True)
class FloatOperators:
    pointers: np.ndarray        # column k is v_k
    time: np.ndarray
    cyclotomic_time: np.ndarray
    hamiltonian: np.ndarray


@lru_cache(maxsize=64)
def float_operators(model: ClockModel) -> FloatOperators:
    """The clock operators built directly in double precision with numpy."""
    n = model.dim
    m = np.array(model.labels, dtype=float)
    k = np.arange(n)
    vmat = np.exp(-2j * np.pi * np.outer(m, k) / n) / np.sqrt(n)
    coprime = np.array([p if p in coprime_residues(n) else 0 for p in k], dtype=float)
    time = (vmat * k) @ vmat.conj().T
    cyc = (vmat * coprime) @ vmat.conj().T
    ham = np.diag(m * model.omega).astype(np.complex128)
    return FloatOperators(vmat, time, cyc, ham)


def float_commutator(model: ClockModel, variant: str = "classic") -> np.ndarray:
    ops = float_operators(model)
    t = ops.time if variant == "classic" else ops.cyclotomic_time
    return t @ ops.hamiltonian - ops.hamiltonian @ t


# ---------------------------------------------------------------------------
# basis relation for the classic commutator

@dataclass(frozen=True)
class BasisRelation:
    """Measured ``<v_m|C|v_n> = zeta^e(m, n) * <u_m|C|u_n>``.

    ``exponents[m][n]`` is the ``e`` found by exact search (None on the
    diagonal, where both sides vanish, or if no root of unity works).
    """

    dim: int
    convention: Convention
    exponents: tuple[tuple[Optional[int], ...], ...]
    predicted: tuple[tuple[Optional[int], ...], ...]
    literal_equal: tuple[tuple[bool, ...], ...]

    @property
    def phase_relation_holds(self) -> bool:
        return self.exponents == self.predicted

    @property
    def literal_equality_holds(self) -> bool:
        return all(all(row) for row in self.literal_equal)

    @property
    def literal_equal_count(self) -> int:
        return sum(sum(row) for row in self.literal_equal)


def predicted_phase_exponent(model: ClockModel, m: int, n: int) -> int:
    """``n - m`` (zero-based) or ``(j+1)(n - m)`` (symmetric), modulo N."""
    factor = model.j + 1 if model.convention is Convention.SYMMETRIC else 1
    return (factor * (n - m)) % model.dim


def basis_relation(model: ClockModel) -> BasisRelation:
    comm = commutator_tc_hc(model)
    comm_v = to_pointer_basis(model, comm)
    n = model.dim
    exps, preds, literal = [], [], []
    for a in range(n):
        erow, prow, lrow = [], [], []
        for b in range(n):
            u_el, v_el = comm.element(a, b), comm_v.element(a, b)
            lrow.append(u_el == v_el)
            if a == b:
                erow.append(None)
                prow.append(None)
                continue
            found = None
            for e in range(n):
                if u_el * root_of_unity(n, e) == v_el:
                    found = e
                    break
            erow.append(found)
            prow.append(predicted_phase_exponent(model, a, b))
        exps.append(tuple(erow))
        preds.append(tuple(prow))
        literal.append(tuple(lrow))
    return BasisRelation(n, model.convention, tuple(exps), tuple(preds), tuple(literal))


# ---------------------------------------------------------------------------
# superpositions

@dataclass(frozen=True)
class SuperpositionResult:
    formula: complex    # (hbar omega)(tau/N) sum conj(c_n) c_l a_ln
    sandwich: complex   # <f|[T_cyclot, H_c]|f> from the matrix

    @property
    def abs_diff(self) -> float:
        return abs(self.formula - self.sandwich)


@lru_cache(maxsize=64)
def _a_matrix(model: ClockModel) -> np.ndarray:
    # a[l, n] = (l - n) S_N(l - n), embedded; depends only on l - n mod N for S
    n = model.dim
    s = {d: complex(weighted_coprime_sum(n, d)) for d in range(n)}
    a = np.empty((n, n), dtype=np.complex128)
    for l in range(n):
        for k in range(n):
            a[l, k] = (l - k) * s[(l - k) % n]
    return a


def superposition_expectation(model: ClockModel, coeffs: Sequence[complex]) -> SuperpositionResult:
    """Expectation of ``[T_cyclot, H_c]`` in ``|f> = sum c_n |u_n>``, two ways."""
    c = np.asarray(coeffs, dtype=np.complex128)
    if c.shape != (model.dim,):
        raise ValueError(f"need {model.dim} coefficients, got shape {c.shape}")
    norm2 = float(np.vdot(c, c).real)
    if abs(norm2 - 1) > 1e-9:
        raise NotNormalized(f"sum |c_n|^2 = {norm2!r}, expected 1")
    n = model.dim
    a = _a_matrix(model)
    # sum over n, l of conj(c_n) c_l a_ln
    formula = model.hbar * model.omega * model.tau / n * complex(c.conj() @ a.T @ c)
    comm = linalg.embed(commutator_tcyclot_hc(model)).entries
    sandwich = complex(c.conj() @ comm @ c)
    return SuperpositionResult(formula, sandwich)


# ---------------------------------------------------------------------------
# energetics

@dataclass(frozen=True)
class EnergyReport:
    """Energy moments of a pointer state; exact moments are in units of hbar*omega."""

    dim: int
    convention: Convention
    mean: Fraction
    second_moment: Fraction
    variance: Fraction
    omega: float

    @property
    def mean_energy(self) -> float:
        return float(self.mean) * self.omega

    @property
    def delta_h(self) -> float:
        """Energy spread in units of hbar/tau."""
        return self.omega * math.sqrt(self.variance)

    @property
    def raw_second_moment(self) -> float:
        """``omega^2 (1/N) sum m^2`` -- the ``|H_c v_k|^2`` value."""
        return self.omega ** 2 * float(self.second_moment)

    @property
    def large_n_second_moment(self) -> float:
        """``omega^2 N^2 / 3``."""
        return self.omega ** 2 * self.dim ** 2 / 3

    @property
    def asymptote(self) -> float:
        return PI_OVER_SQRT3

    @property
    def relative_error(self) -> float:
        return abs(self.delta_h - PI_OVER_SQRT3) / PI_OVER_SQRT3


def energy_uncertainty(model: ClockModel) -> EnergyReport:
    """Energy spread of any pointer state.

    Every pointer state has weight exactly ``1/N`` on each azimuthal state, so
    the moments are plain averages over the spectrum.
    """
    labels = model.labels
    n = model.dim
    mean = Fraction(sum(labels), n)
    second = Fraction(sum(m * m for m in labels), n)
    return EnergyReport(n, model.convention, mean, second, second - mean * mean, model.omega)


# ---------------------------------------------------------------------------
# continuous-time evolution (float)

def wavefunction_evolution(model: ClockModel, spec: EvolutionSpec, t: float) -> StateVector:
    """``phi(t) = sum_k a_k exp(-i omega_k t) u_k`` with ``omega_k = omega_0 + 2 pi k/(N tau)``."""
    if t < 0:
        raise ValueError(f"t must be non-negative, got {t}")
    amps = spec.resolve(model.dim)
    labels = np.array(model.labels, dtype=float)
    freqs = spec.omega0 + 2 * np.pi * labels / (model.dim * model.tau)
    return StateVector(amps * np.exp(-1j * freqs * t))


def pointer_overlaps(model: ClockModel, state: StateVector) -> np.ndarray:
    """``|<v_k|state>|`` for every k."""
    vmat = float_operators(model).pointers
    return np.abs(vmat.conj().T @ linalg.embed(state).entries)
