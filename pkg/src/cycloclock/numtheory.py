"""Totient, Moebius, coprime residues, and Ramanujan-type sums.

Factorization is plain trial division; clock dimensions are small.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .exactcyc import CyclotomicNumber

__all__ = [
    "CoprimeSet",
    "coprime_residues",
    "euler_phi",
    "factorize",
    "moebius",
    "ramanujan_sum",
    "ramanujan_sum_direct",
    "weighted_coprime_sum",
]


def _check_positive(n: int) -> None:
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")


@lru_cache(maxsize=4096)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization as ``((p, e), ...)`` with ascending primes."""
    _check_positive(n)
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def euler_phi(n: int) -> int:
    result = n
    for p, _ in factorize(n):
        result -= result // p
    return result


def moebius(n: int) -> int:
    factors = factorize(n)
    if any(e > 1 for _, e in factors):
        return 0
    return -1 if len(factors) % 2 else 1


@dataclass(frozen=True)
class CoprimeSet:
    """Residues ``0 <= p < modulus`` with ``gcd(p, modulus) == 1``.

    For ``modulus == 1`` this is ``(0,)`` since ``gcd(0, 1) == 1``.
    """

    modulus: int
    residues: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.residues)

    def __iter__(self):
        return iter(self.residues)

    def __contains__(self, p: int) -> bool:
        return p in self.residues


@lru_cache(maxsize=1024)
def coprime_residues(n: int) -> CoprimeSet:
    _check_positive(n)
    return CoprimeSet(n, tuple(p for p in range(n) if math.gcd(p, n) == 1))


def ramanujan_sum(n: int, m: int) -> int:
    """c_n(m) from Hoelder's closed form ``mu(n/d) phi(n) / phi(n/d)``."""
    _check_positive(n)
    d = math.gcd(m % n, n)
    q = n // d
    return moebius(q) * euler_phi(n) // euler_phi(q)


def ramanujan_sum_direct(n: int, m: int) -> CyclotomicNumber:
    """The unweighted coprime sum ``sum_p zeta_n^(p*m)``, computed exactly."""
    return _coprime_character_sum(n, m, weighted=False)


def weighted_coprime_sum(n: int, m: int) -> CyclotomicNumber:
    """``S_n(m) = sum over p coprime to n of p * zeta_n^(p*m)``.

    Satisfies ``S_n(m) + conj(S_n(m)) == n * c_n(m)`` for ``n >= 2``
    (substitute ``p -> n - p``).
    """
    return _coprime_character_sum(n, m, weighted=True)


def _coprime_character_sum(n: int, m: int, weighted: bool) -> CyclotomicNumber:
    _check_positive(n)
    m %= n
    acc = [0] * n
    for p in coprime_residues(n):
        acc[(p * m) % n] += p if weighted else 1
    return CyclotomicNumber.from_polynomial(n, acc)
