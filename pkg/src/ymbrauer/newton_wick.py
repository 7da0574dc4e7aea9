"""Power sums on U(N): Haar moments, Wick-ordered products and the Gross-Taylor identities.

A power-sum polynomial is stored as a dict ``{(lam, mu): coefficient}``
standing for ``sum c * p_lam(U) * conj(p_mu(U))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import mpmath
import numpy as np

from .algebra_core import (
    ExactScalar,
    Partition,
    character_value,
    class_size,
    enumerate_partitions,
    perm_cycle_type,
    z_lambda,
)
from .walled_brauer import SYMBOL, BrauerElement, SizeLimitError, block_perms, MAX_SYMBOLIC_SIZE

__all__ = [
    "PowerSumMonomial",
    "haar_moment",
    "wick_inner_product",
    "wick_newton",
    "wick_coefficient",
    "power_sum_product",
    "factorised_expansion",
    "generalized_frobenius",
    "weyl_character",
    "omega_gaussian",
    "gaussian_moment_factor",
    "JITTER",
]

JITTER = 1e-6


@dataclass(frozen=True)
class PowerSumMonomial:
    """``coefficient * p_lam * conj(p_mu)``."""

    lam: Partition
    mu: Partition
    coefficient: int

    @property
    def degree(self) -> int:
        return self.lam.size + self.mu.size


def _from_mult(mult: dict[int, int]) -> Partition:
    parts = []
    for i in sorted(mult, reverse=True):
        parts.extend([i] * mult[i])
    return Partition(tuple(parts))


def haar_moment(lam: Partition, mu: Partition, N: int) -> ExactScalar:
    """Exact ``int p_lam(U) conj(p_mu(U)) dU`` over ``U(N)``."""
    if lam.size != mu.size:
        return ExactScalar(0)
    if lam.size <= N:
        return ExactScalar(z_lambda(lam) if lam == mu else 0)
    total = 0
    for nu in enumerate_partitions(lam.size):
        if nu.length <= N:
            total += character_value(nu, lam) * character_value(nu, mu)
    return ExactScalar(total)


def wick_inner_product(lam: Partition, mu: Partition, lam2: Partition, mu2: Partition, N: int) -> ExactScalar:
    """``int p_[lam,mu](U) conj(p_[lam2,mu2](U)) dU`` from the Wick expansions."""
    total = ExactScalar(0)
    for a in wick_newton(lam, mu):
        for b in wick_newton(lam2, mu2):
            # p_a conj(p_b) conj(p_c) p_d integrates as the moment of (a u d, b u c)
            moment = haar_moment(a.lam.union(b.mu), a.mu.union(b.lam), N)
            total = total + moment * (a.coefficient * b.coefficient)
    return total


def _sub_multisets(lam: Partition, mu: Partition):
    """All ``nu <= lam ^ mu`` in the multiplicity order."""
    ml, mm = lam.multiplicities(), mu.multiplicities()
    keys = sorted(set(ml) & set(mm))
    ranges = [range(min(ml[i], mm[i]) + 1) for i in keys]

    def rec(idx, acc):
        if idx == len(keys):
            yield dict(acc)
            return
        for c in ranges[idx]:
            if c:
                acc[keys[idx]] = c
            else:
                acc.pop(keys[idx], None)
            yield from rec(idx + 1, acc)
        acc.pop(keys[idx], None)

    yield from rec(0, {})


def wick_coefficient(nu: Partition, lam: Partition, mu: Partition) -> int:
    """``z_nu`` times the number of ways to remove ``nu`` from ``lam`` and from ``mu``."""
    ml, mm, mn = lam.multiplicities(), mu.multiplicities(), nu.multiplicities()
    out = 1
    for i, k in mn.items():
        a, b = ml.get(i, 0), mm.get(i, 0)
        if k > a or k > b:
            return 0
        out *= math.comb(a, k) * math.comb(b, k) * math.factorial(k) * i**k
    return out


@lru_cache(maxsize=None)
def wick_newton(lam: Partition, mu: Partition) -> tuple[PowerSumMonomial, ...]:
    """Expansion of the traceless-tensor power sum ``p_[lam,mu]`` into plain monomials."""
    ml, mm = lam.multiplicities(), mu.multiplicities()
    out = []
    for mult in _sub_multisets(lam, mu):
        nu = _from_mult(mult)
        c = wick_coefficient(nu, lam, mu) * (-1) ** nu.length
        rl = _from_mult({i: ml[i] - mult.get(i, 0) for i in ml if ml[i] - mult.get(i, 0)})
        rm = _from_mult({i: mm[i] - mult.get(i, 0) for i in mm if mm[i] - mult.get(i, 0)})
        out.append(PowerSumMonomial(rl, rm, c))
    out.sort(key=lambda t: (-t.degree, t.lam.parts, t.mu.parts))
    return tuple(out)


def _as_poly(monos) -> dict[tuple[Partition, Partition], int]:
    out: dict = {}
    for t in monos:
        key = (t.lam, t.mu)
        out[key] = out.get(key, 0) + t.coefficient
    return {k: v for k, v in out.items() if v}


def power_sum_product(a: dict, b: dict) -> dict:
    """Product of two power-sum polynomials in dict form."""
    out: dict = {}
    for (la, ma), ca in a.items():
        for (lb, mb), cb in b.items():
            key = (la.union(lb), ma.union(mb))
            out[key] = out.get(key, 0) + ca * cb
    return {k: v for k, v in out.items() if v}


def factorised_expansion(lam: Partition, mu: Partition) -> dict:
    """``prod_i p_i^{(m_i(lam), m_i(mu))}`` using the single-length closed form."""
    ml, mm = lam.multiplicities(), mu.multiplicities()
    out = {(Partition(), Partition()): 1}
    for i in sorted(set(ml) | set(mm)):
        a, b = ml.get(i, 0), mm.get(i, 0)
        factor = {}
        for k in range(min(a, b) + 1):
            key = (Partition((i,) * (a - k)), Partition((i,) * (b - k)))
            factor[key] = (-1) ** k * math.factorial(k) * i**k * math.comb(a, k) * math.comb(b, k)
        out = power_sum_product(out, factor)
    return out


def _power_sums(eigs: Sequence[complex], top: int) -> list[complex]:
    return [sum(z**k for z in eigs) for k in range(top + 1)]


def _eval_poly(poly: dict, ps: list[complex]) -> complex:
    total = 0j
    for (l, m), c in poly.items():
        term = complex(c)
        for k in l.parts:
            term *= ps[k]
        for k in m.parts:
            term *= ps[k].conjugate()
        total += term
    return total


def generalized_frobenius(lam: Partition, mu: Partition, eigenvalues: Sequence[complex]) -> complex:
    """Character of ``[lam, mu]_N`` at a unitary with the given spectrum, via power sums."""
    N = len(eigenvalues)
    n, m = lam.size, mu.size
    if N < n + m:
        raise ValueError(f"spectrum of length {N} is shorter than |lam|+|mu|={n + m}")
    ps = _power_sums(eigenvalues, max(n, m, 1))
    total = 0j
    for a in enumerate_partitions(n):
        ca = character_value(lam, a)
        if not ca:
            continue
        for b in enumerate_partitions(m):
            cb = character_value(mu, b)
            if not cb:
                continue
            weight = class_size(a) * class_size(b) * ca * cb
            total += weight * _eval_poly(_as_poly(wick_newton(a, b)), ps)
    return total / (math.factorial(n) * math.factorial(m))


def weyl_character(entries: Sequence[int], eigenvalues: Sequence[complex], jitter: float = JITTER) -> complex:
    """Ratio of alternants ``det(z_i^{a_j+N-j}) / det(z_i^{N-j})``.

    Coincident eigenvalues are separated by rotating the ``i``-th one by
    ``i * jitter`` radians so the Vandermonde denominator is non-zero.
    """
    N = len(eigenvalues)
    if len(entries) != N:
        raise ValueError("weight and spectrum lengths differ")
    z = [complex(x) for x in eigenvalues]
    gaps = [abs(z[i] - z[j]) for i in range(N) for j in range(i + 1, N)]
    if gaps and min(gaps) < 10 * jitter:
        # the alternants are O(jitter^{N(N-1)/2}); evaluate them at high precision
        with mpmath.workdps(30 + 2 * N * N):
            zz = [mpmath.mpc(x) * mpmath.expj(jitter * i) for i, x in enumerate(z)]
            num = mpmath.matrix([[zi ** (entries[j] + N - 1 - j) for j in range(N)] for zi in zz])
            den = mpmath.matrix([[zi ** (N - 1 - j) for j in range(N)] for zi in zz])
            return complex(mpmath.det(num) / mpmath.det(den))
    num = np.array([[zi ** (entries[j] + N - 1 - j) for j in range(N)] for zi in z])
    den = np.array([[zi ** (N - 1 - j) for j in range(N)] for zi in z])
    return complex(np.linalg.det(num) / np.linalg.det(den))


def gaussian_moment_factor(a: int, b: int, k: int) -> ExactScalar:
    """``E[(N + i Z)^a (N + i conj Z)^b]`` for ``Z`` complex Gaussian of variance ``k``."""
    total = ExactScalar(0)
    for j in range(min(a, b) + 1):
        # i^{2j} E[Z^j conj(Z)^j] = (-1)^j j! k^j
        c = math.comb(a, j) * math.comb(b, j) * (-1) ** j * math.factorial(j) * k**j
        total = total + SYMBOL ** (a + b - 2 * j) * c
    return total


@lru_cache(maxsize=None)
def omega_gaussian(n: int, m: int) -> BrauerElement:
    """Gross-Taylor Gaussian formula for the traceless-tensor character element."""
    if n + m > MAX_SYMBOLIC_SIZE:
        raise SizeLimitError(f"n+m={n + m} exceeds {MAX_SYMBOLIC_SIZE}", "symbolic_size")
    cache: dict = {}
    coeffs = {}
    for sigma in block_perms(n, m):
        a = perm_cycle_type(tuple(sigma[:n])) if n else Partition()
        b = perm_cycle_type(tuple(x - n for x in sigma[n:])) if m else Partition()
        key = (a, b)
        if key not in cache:
            ma, mb = a.multiplicities(), b.multiplicities()
            val = ExactScalar(1)
            for k in set(ma) | set(mb):
                val = val * gaussian_moment_factor(ma.get(k, 0), mb.get(k, 0), k)
            cache[key] = val
        coeffs[sigma] = cache[key]
    return BrauerElement.from_group(coeffs, n, m)
