"""Witten zeta functions of U(N) and SU(N), their Casimir deformations and tails.

Weights are enumerated by size through the centred parametrisation
``alpha = [lam, mu]_N`` with ``l(lam) <= p - 1`` and ``l(mu) <= N - p`` where
``p`` is the centre index; this visits each SU(N) class exactly once.

Tail certificates are fully explicit. With ``omega_l`` the fundamental
coordinates of a weight, ``d_alpha >= prod_l (1 + omega_l)^{v_l}`` and the size
is ``sum_l w_l omega_l`` with ``w_l = l`` left of the centre and ``N - l`` from
the centre on. A weight of size ``> k`` has some ``omega_l > k / ((N-1) w_l)``,
and a union bound over ``l`` gives

    sum_l  (J_l + 1)^{1 - s v_l} / (s v_l - 1)  *  prod_{l' != l} zeta(s v_{l'})

with ``J_l = floor(k / ((N-1) w_l))``. Every factor is a Riemann zeta value or
an integral comparison, so the bound is a certificate, not an estimate.

A second, sharper certificate uses the same majorant exactly: the full majorant
sum is ``prod_l zeta(s v_l)``, so its part over ``|alpha| > k`` equals that
product minus the finitely many enumerated majorant terms. The reported tail is
the smaller of the two.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional

import mpmath

from .algebra_core import ExactScalar, Partition, partitions_max_length
from .weights import _casimir_fraction, _dim_int, centre_index, from_pair

__all__ = [
    "DivergenceError",
    "ZetaQuery",
    "ZetaResult",
    "zeta",
    "v_coefficients",
    "theta",
    "theta_charged",
    "enumerate_su_classes",
    "tail_certificate",
    "size_weights",
    "large_n_epsilon",
    "charge_truncated_zeta",
]

PREC_BITS = 128


class DivergenceError(ValueError):
    """The requested sum diverges or admits no finite certificate."""


@dataclass(frozen=True)
class ZetaQuery:
    group: str
    s: Fraction
    N: int
    size_cutoff: int
    q: Optional[float] = None
    charge_cutoff: Optional[int] = None

    def __post_init__(self):
        if self.group not in {"U", "SU"}:
            raise ValueError("group must be 'U' or 'SU'")
        if self.N < 1 or self.size_cutoff < 0:
            raise ValueError("need N >= 1 and k >= 0")
        if self.q is not None and not (0 < self.q <= 1):
            raise ValueError("q must lie in (0, 1]")
        if self.group == "U" and (self.q is None or self.q >= 1):
            raise DivergenceError("the U(N) zeta function needs a damping q < 1")


@dataclass
class ZetaResult:
    partial_sum: object
    tail_bound: mpmath.mpf
    terms_used: int
    details: dict = field(default_factory=dict)

    def upper(self):
        return mpmath.mpf(self.partial_float()) + self.tail_bound

    def partial_float(self):
        if isinstance(self.partial_sum, ExactScalar):
            f = self.partial_sum.as_fraction()
            return mpmath.mpf(f.numerator) / f.denominator
        return self.partial_sum


def v_coefficients(N: int) -> list[ExactScalar]:
    """``v_l = sum_{i <= l < j} 1/(j - i)`` for ``l = 1..N-1``."""
    if N < 2:
        raise ValueError("v coefficients need N >= 2")
    return [ExactScalar(_v(N, l)) for l in range(1, N)]


def _v(N: int, l: int) -> Fraction:
    return sum((Fraction(1, j - i) for i in range(1, l + 1) for j in range(l + 1, N + 1)), Fraction(0))


def size_weights(N: int) -> list[int]:
    """Coefficients ``w_l`` with ``|alpha| = sum_l w_l omega_l``."""
    p = centre_index(N) + 1
    return [l if l < p else N - l for l in range(1, N)]


def enumerate_su_classes(N: int, k: int) -> Iterator[tuple[Partition, Partition]]:
    """Pairs ``(lam, mu)`` of centred SU(N) classes with ``|lam| + |mu| <= k``."""
    p = centre_index(N)
    max_lam, max_mu = p, N - 1 - p
    for total in range(k + 1):
        for a in range(total + 1):
            for lam in partitions_max_length(a, max_lam):
                for mu in partitions_max_length(total - a, max_mu):
                    yield lam, mu


def _mp_pow(base: Fraction, s: Fraction) -> mpmath.mpf:
    return mpmath.power(mpmath.mpf(base.numerator) / base.denominator, mpmath.mpf(s.numerator) / s.denominator)


def tail_certificate(N: int, s: Fraction, k: int) -> mpmath.mpf:
    """Upper bound on ``sum_{|alpha| > k} d_alpha^{-s}`` over SU(N) classes."""
    if N == 1:
        return mpmath.mpf(0)
    with mpmath.workprec(PREC_BITS):
        sf = mpmath.mpf(s.numerator) / s.denominator
        vs = [mpmath.mpf(v.numerator) / v.denominator for v in (_v(N, l) for l in range(1, N))]
        exps = [sf * v for v in vs]
        if min(exps) <= 1:
            raise DivergenceError(f"no finite certificate: s*v_l <= 1 for N={N}, s={s}")
        zetas = [mpmath.zeta(a) for a in exps]
        w = size_weights(N)
        total = mpmath.mpf(0)
        for l, a in enumerate(exps):
            J = k // ((N - 1) * w[l])
            inner = mpmath.power(J + 1, 1 - a) / (a - 1)
            others = mpmath.fprod(z for i, z in enumerate(zetas) if i != l)
            total += inner * others
        return total


def large_n_epsilon(N: int, s: Fraction) -> mpmath.mpf:
    """``eps`` with ``zeta_SU(N)(s) < 1 + eps``.

    Every non-trivial class has ``d_alpha >= N``, so
    ``sum_{alpha != 0} d^{-s} <= N^{-s/2} (prod_l zeta(s v_l / 2) - 1)``.
    """
    with mpmath.workprec(PREC_BITS):
        half = mpmath.mpf(s.numerator) / (2 * s.denominator)
        exps = [half * mpmath.mpf(v.numerator) / v.denominator for v in (_v(N, l) for l in range(1, N))]
        if min(exps) <= 1:
            raise DivergenceError("s v_l / 2 must exceed 1 for the large-N bound")
        prod = mpmath.fprod(mpmath.zeta(a) for a in exps)
        return (prod - 1) / mpmath.power(N, half)


def theta(q: float, grid: int = 200) -> mpmath.mpf:
    """``sup_{u in [0,1]} sum_n q^{(n+u)^2}``, evaluated at ``u in {0, 1/2}`` and a grid."""
    if not (0 < q < 1):
        raise ValueError("theta needs 0 < q < 1")
    with mpmath.workprec(PREC_BITS):
        qq = mpmath.mpf(q)
        best = mpmath.mpf(0)
        us = [mpmath.mpf(0), mpmath.mpf(1) / 2] + [mpmath.mpf(i) / grid for i in range(grid + 1)]
        for u in us:
            best = max(best, _shifted_theta(qq, u))
        return best


def _shifted_theta(q, u, lo=None, hi=None) -> mpmath.mpf:
    """``sum_{lo <= n <= hi} q^{(n+u)^2}``; open ends are summed until negligible."""
    eps = mpmath.mpf(2) ** (-PREC_BITS - 10)
    start = int(mpmath.nint(-u))
    if lo is not None:
        start = max(start, lo)
    if hi is not None:
        start = min(start, hi)
    total = mpmath.mpf(0)
    n = start
    while hi is None or n <= hi:
        t = mpmath.power(q, (n + u) ** 2)
        total += t
        if hi is None and t < eps and n + u > 0:
            break
        n += 1
    n = start - 1
    while lo is None or n >= lo:
        t = mpmath.power(q, (n + u) ** 2)
        total += t
        if lo is None and t < eps and n + u < 0:
            break
        n -= 1
    return total


def theta_charged(q: float, x: float) -> mpmath.mpf:
    """``sum_{c in Z} q^{c^2 + 2 x c}``."""
    if not (0 < q < 1):
        raise ValueError("theta needs 0 < q < 1")
    with mpmath.workprec(PREC_BITS):
        qq = mpmath.mpf(q)
        xx = mpmath.mpf(x)
        # q^{c^2+2xc} = q^{(c+x)^2} q^{-x^2}
        return _shifted_theta(qq, xx) * mpmath.power(qq, -xx * xx)


def zeta(query: ZetaQuery) -> ZetaResult:
    """Truncated sum over ``|alpha| <= k`` with a certified tail bound."""
    N, s, k = query.N, Fraction(query.s), query.size_cutoff
    if s <= 0:
        raise DivergenceError("s must be positive")
    if N == 1:
        if query.group == "SU":
            return ZetaResult(ExactScalar(1), mpmath.mpf(0), 1, {"certificate": "exact"})
    exact = query.q is None and s.denominator == 1
    with mpmath.workprec(PREC_BITS):
        tail = tail_certificate(N, s, k) if N > 1 else mpmath.mpf(0)
        if query.group == "U":
            tail *= theta(query.q)
        q = mpmath.mpf(query.q) if query.q is not None else None
        vs = [_v(N, l) for l in range(1, N)] if N > 1 else []
        majorant_exps = [mpmath.mpf(s.numerator) / s.denominator * mpmath.mpf(v.numerator) / v.denominator for v in vs]
        majorant_seen = mpmath.mpf(0)
        acc_exact = Fraction(0)
        acc = mpmath.mpf(0)
        count = 0
        charge_tail = mpmath.mpf(0)
        for lam, mu in enumerate_su_classes(N, k):
            alpha = from_pair(lam, mu, N)
            d = _dim_int(alpha.entries)
            count += 1
            omega = alpha.fundamental_coords()
            majorant_seen += mpmath.fprod(mpmath.power(1 + w, -a) for w, a in zip(omega, majorant_exps))
            if exact:
                acc_exact += Fraction(1, d ** s.numerator)
                continue
            term = 1 / _mp_pow(Fraction(d), s)
            if q is not None:
                cstar = _casimir_fraction(alpha.entries, True)
                term *= mpmath.power(q, mpmath.mpf(cstar.numerator) / cstar.denominator)
            if query.group == "U":
                x = mpmath.mpf(lam.size - mu.size) / N
                if query.charge_cutoff is None:
                    term *= _shifted_theta(q, x)
                else:
                    C = query.charge_cutoff
                    inside = _shifted_theta(q, x, -C, C)
                    outside = _shifted_theta(q, x) - inside
                    charge_tail += term * outside
                    term *= inside
            acc += term
        partial = ExactScalar(acc_exact) if exact else acc
        details = {"union_bound": str(tail)}
        if N > 1:
            remainder = mpmath.fprod(mpmath.zeta(a) for a in majorant_exps) - majorant_seen
            remainder = remainder * (1 + mpmath.mpf(2) ** -90) + mpmath.mpf(2) ** -100
            if query.group == "U":
                remainder *= theta(query.q)
            details["majorant_remainder"] = str(remainder)
            tail = min(tail, remainder)
        if query.charge_cutoff is not None:
            details["charge_tail"] = str(charge_tail)
            tail += charge_tail * (1 + mpmath.mpf(2) ** -60)
        return ZetaResult(partial, tail, count, details)


def charge_truncated_zeta(N: int, s: Fraction, q: float, k: int, c: int, kmax: int) -> mpmath.mpf:
    """``sum`` over ``k < |alpha| <= kmax`` and ``|c(alpha)| > c`` of ``d^{-s} q^{c_alpha}``."""
    with mpmath.workprec(PREC_BITS):
        qq = mpmath.mpf(q)
        total = mpmath.mpf(0)
        for lam, mu in enumerate_su_classes(N, kmax):
            if lam.size + mu.size <= k:
                continue
            alpha = from_pair(lam, mu, N)
            d = _dim_int(alpha.entries)
            cstar = _casimir_fraction(alpha.entries, True)
            base = mpmath.power(qq, mpmath.mpf(cstar.numerator) / cstar.denominator) / _mp_pow(Fraction(d), Fraction(s))
            x = mpmath.mpf(lam.size - mu.size) / N
            outside = _shifted_theta(qq, x) - _shifted_theta(qq, x, -c, c)
            total += base * outside
        return total


def su_truncated_sum(N: int, s: Fraction, q: Optional[float], k: int, kmax: int) -> mpmath.mpf:
    """``sum`` over ``k < |alpha| <= kmax`` of ``d^{-s} q^{c*_alpha}`` (SU classes)."""
    with mpmath.workprec(PREC_BITS):
        total = mpmath.mpf(0)
        for lam, mu in enumerate_su_classes(N, kmax):
            if lam.size + mu.size <= k:
                continue
            alpha = from_pair(lam, mu, N)
            term = 1 / _mp_pow(Fraction(_dim_int(alpha.entries)), Fraction(s))
            if q is not None:
                cstar = _casimir_fraction(alpha.entries, True)
                term *= mpmath.power(mpmath.mpf(q), mpmath.mpf(cstar.numerator) / cstar.denominator)
            total += term
        return total


def u_truncated_sum(N: int, s: Fraction, q: float, k: int, kmax: int) -> mpmath.mpf:
    """``sum`` over ``k < |alpha| <= kmax`` and all charges of ``d^{-s} q^{c_alpha}``."""
    with mpmath.workprec(PREC_BITS):
        qq = mpmath.mpf(q)
        total = mpmath.mpf(0)
        for lam, mu in enumerate_su_classes(N, kmax):
            if lam.size + mu.size <= k:
                continue
            alpha = from_pair(lam, mu, N)
            cstar = _casimir_fraction(alpha.entries, True)
            term = mpmath.power(qq, mpmath.mpf(cstar.numerator) / cstar.denominator)
            term /= _mp_pow(Fraction(_dim_int(alpha.entries)), Fraction(s))
            total += term * _shifted_theta(qq, mpmath.mpf(lam.size - mu.size) / N)
        return total

