"""Exact scalars, integer partitions and symmetric-group characters.

Every other module builds on the objects defined here:

* :class:`ExactScalar` is either a reduced rational number or a reduced
  rational function of one indeterminate ``N`` with a monic denominator.
* :class:`Partition` is an integer partition with the usual derived data.
* :func:`character_value` evaluates irreducible characters of ``S_n`` by the
  Murnaghan-Nakayama rule; :func:`littlewood_richardson` computes branching
  multiplicities from ``S_{n+m}`` to ``S_n x S_m`` as a class-sum inner product.

Polynomial arithmetic and gcds are delegated to ``python-flint``.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache

import flint

__all__ = [
    "ExactScalar",
    "Partition",
    "CharacterTable",
    "PoleError",
    "enumerate_partitions",
    "partitions_max_length",
    "character_value",
    "character_table",
    "littlewood_richardson",
    "z_lambda",
    "class_size",
    "hook_dimension",
    "content_sum",
    "perm_compose",
    "perm_inverse",
    "perm_cycle_type",
    "perm_cycles",
    "perm_num_cycles",
    "identity_perm",
    "all_perms",
]


class PoleError(ZeroDivisionError):
    """Raised when a rational function is evaluated at a root of its denominator."""


_ONE_POLY = flint.fmpq_poly([1])
_ZERO_POLY = flint.fmpq_poly([])


def _to_fmpq(x) -> flint.fmpq:
    if isinstance(x, flint.fmpq):
        return x
    if isinstance(x, int):
        return flint.fmpq(x)
    if isinstance(x, Fraction):
        return flint.fmpq(x.numerator, x.denominator)
    if isinstance(x, str):
        f = Fraction(x)
        return flint.fmpq(f.numerator, f.denominator)
    if isinstance(x, flint.fmpz):
        return flint.fmpq(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


class ExactScalar:
    """A rational number or a rational function of the symbol ``N``.

    Internally both forms are a pair of ``fmpq_poly``: a rational is the
    special case where numerator and denominator are constants. The pair is
    always reduced and the denominator is monic, so ``==`` is structural.
    """

    __slots__ = ("num", "den")

    def __init__(self, value=0, _den=None):
        if isinstance(value, ExactScalar):
            self.num, self.den = value.num, value.den
            return
        if isinstance(value, flint.fmpq_poly):
            num = value
            den = _den if _den is not None else _ONE_POLY
            self.num, self.den = self._reduce(num, den)
            return
        q = _to_fmpq(value)
        self.num = flint.fmpq_poly([q]) if q != 0 else _ZERO_POLY
        self.den = _ONE_POLY

    @staticmethod
    def _reduce(num, den):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            return _ZERO_POLY, _ONE_POLY
        if den.degree() > 0 and num.degree() >= 0:
            g = num.gcd(den)
            if g.degree() > 0:
                num = num // g
                den = den // g
        lc = den.leading_coefficient()
        if lc != 1:
            num = num / lc
            den = den / lc
        return num, den

    @classmethod
    def _raw(cls, num, den):
        obj = cls.__new__(cls)
        obj.num, obj.den = num, den
        return obj

    # constructors ---------------------------------------------------------
    @classmethod
    def symbol(cls) -> "ExactScalar":
        """The indeterminate ``N``."""
        return cls._raw(flint.fmpq_poly([0, 1]), _ONE_POLY)

    @classmethod
    def from_coeffs(cls, num, den=(1,)) -> "ExactScalar":
        """Build from ascending coefficient lists of numerator and denominator."""
        n = flint.fmpq_poly([_to_fmpq(c) for c in num])
        d = flint.fmpq_poly([_to_fmpq(c) for c in den])
        return cls(n, d)

    @classmethod
    def coerce(cls, x) -> "ExactScalar":
        return x if isinstance(x, ExactScalar) else cls(x)

    # predicates -----------------------------------------------------------
    @property
    def is_rational(self) -> bool:
        return self.num.degree() <= 0 and self.den.degree() == 0

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def degree(self) -> int:
        """Degree at infinity: ``deg(num) - deg(den)``; zero has degree ``-inf``."""
        if self.num.is_zero():
            return -(10**9)
        return self.num.degree() - self.den.degree()

    # conversion -----------------------------------------------------------
    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is not a constant")
        c = self.num[0] if not self.num.is_zero() else flint.fmpq(0)
        return Fraction(int(c.p), int(c.q))

    def __float__(self) -> float:
        f = self.as_fraction()
        return f.numerator / f.denominator

    def __int__(self) -> int:
        f = self.as_fraction()
        if f.denominator != 1:
            raise ValueError(f"{f} is not an integer")
        return f.numerator

    def numerator_coeffs(self) -> list[Fraction]:
        return [Fraction(int(c.p), int(c.q)) for c in self.num.coeffs()]

    def denominator_coeffs(self) -> list[Fraction]:
        return [Fraction(int(c.p), int(c.q)) for c in self.den.coeffs()]

    def specialize(self, n0) -> "ExactScalar":
        """Evaluate at ``N = n0``; raises :class:`PoleError` at a pole."""
        x = _to_fmpq(n0)
        d = self.den(x)
        if d == 0:
            raise PoleError(f"denominator of {self} vanishes at N={n0}")
        return ExactScalar(self.num(x) / d)

    def evaluate_float(self, x: float) -> float:
        num = sum(float(c) * x**i for i, c in enumerate(self.numerator_coeffs()))
        den = sum(float(c) * x**i for i, c in enumerate(self.denominator_coeffs()))
        if den == 0:
            raise PoleError(f"denominator of {self} vanishes at N={x}")
        return num / den

    def laurent_at_infinity(self, terms: int) -> dict[int, Fraction]:
        """First ``terms`` coefficients of the expansion in decreasing powers of N.

        Returns ``{exponent: coefficient}`` starting at ``self.degree()``.
        """
        if self.num.is_zero():
            return {}
        top = self.degree()
        # Reverse both polynomials: in the variable u = 1/N the ratio becomes
        # u^{-top} * num_rev(u) / den_rev(u) with den_rev(0) = 1 (monic den).
        nrev = list(reversed(self.num.coeffs()))
        drev = list(reversed(self.den.coeffs()))
        out = {}
        series = []
        for k in range(terms):
            acc = nrev[k] if k < len(nrev) else flint.fmpq(0)
            for j in range(1, min(k, len(drev) - 1) + 1):
                acc -= drev[j] * series[k - j]
            series.append(acc)
            if acc != 0:
                out[top - k] = Fraction(int(acc.p), int(acc.q))
        return out

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, ExactScalar):
            try:
                other = ExactScalar(other)
            except TypeError:
                return NotImplemented
        if self.den.degree() == 0 and other.den.degree() == 0:
            s = self.num + other.num
            return ExactScalar._raw(s, _ONE_POLY)
        if self.den == other.den:
            return ExactScalar(self.num + other.num, self.den)
        return ExactScalar(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar._raw(-self.num, self.den)

    def __sub__(self, other):
        if not isinstance(other, ExactScalar):
            try:
                other = ExactScalar(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return ExactScalar.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, ExactScalar):
            try:
                other = ExactScalar(other)
            except TypeError:
                return NotImplemented
        if self.den.degree() == 0 and other.den.degree() == 0:
            return ExactScalar._raw(self.num * other.num, _ONE_POLY)
        return ExactScalar(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "ExactScalar":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return ExactScalar(self.den, self.num)

    def __truediv__(self, other):
        if not isinstance(other, ExactScalar):
            try:
                other = ExactScalar(other)
            except TypeError:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return ExactScalar.coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        return ExactScalar._raw(self.num**e, self.den**e)

    # comparison -----------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, ExactScalar):
            try:
                other = ExactScalar(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((str(self.num), str(self.den)))

    def __bool__(self):
        return not self.num.is_zero()

    def _cmp_value(self, other):
        return self.as_fraction(), ExactScalar.coerce(other).as_fraction()

    def __lt__(self, other):
        a, b = self._cmp_value(other)
        return a < b

    def __le__(self, other):
        a, b = self._cmp_value(other)
        return a <= b

    def __gt__(self, other):
        a, b = self._cmp_value(other)
        return a > b

    def __ge__(self, other):
        a, b = self._cmp_value(other)
        return a >= b

    def __abs__(self):
        return -self if self.as_fraction() < 0 else self

    # display --------------------------------------------------------------
    def _poly_str(self, p) -> str:
        return str(p).replace("x", "N")

    def __str__(self):
        if self.is_rational:
            return str(self.as_fraction())
        if self.den.degree() == 0:
            return self._poly_str(self.num)
        return f"({self._poly_str(self.num)})/({self._poly_str(self.den)})"

    def __repr__(self):
        return f"ExactScalar({self})"

    def to_json(self):
        """Rationals become ``"p/q"`` strings; rational functions become coefficient lists."""
        if self.is_rational:
            return str(self.as_fraction())
        return {
            "num": [str(c) for c in self.numerator_coeffs()],
            "den": [str(c) for c in self.denominator_coeffs()],
        }


# ---------------------------------------------------------------------------
# partitions


class Partition:
    """An integer partition stored as a non-increasing tuple of positive parts."""

    __slots__ = ("parts", "_hash")

    def __init__(self, parts=()):
        parts = tuple(int(p) for p in parts if p != 0)
        if any(p < 0 for p in parts):
            raise ValueError(f"negative part in {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts must be non-increasing: {parts}")
        self.parts = parts
        self._hash = hash(parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def multiplicities(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for p in self.parts:
            out[p] = out.get(p, 0) + 1
        return out

    def multiplicity(self, i: int) -> int:
        return self.parts.count(i)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > j) for j in range(self.parts[0])))

    def cells(self):
        for i, p in enumerate(self.parts):
            for j in range(p):
                yield i, j

    def union(self, other: "Partition") -> "Partition":
        return Partition(sorted(self.parts + other.parts, reverse=True))

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __eq__(self, other):
        if isinstance(other, Partition):
            return self.parts == other.parts
        if isinstance(other, tuple):
            return self.parts == other
        return NotImplemented

    def __lt__(self, other):
        return self.parts < other.parts

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Partition({self.parts})"

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")" if self.parts else "()"

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse ``"2,1"``, ``"2 1"``, ``"(2,1)"`` or ``""`` / ``"0"`` for the empty partition."""
        text = text.strip().strip("()[]")
        if not text or text in {"0", "-", "empty"}:
            return cls(())
        toks = text.replace(",", " ").split()
        return cls(sorted((int(t) for t in toks), reverse=True))


@lru_cache(maxsize=None)
def _partitions(n: int, max_part: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in _partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def enumerate_partitions(n: int) -> list[Partition]:
    """All partitions of ``n`` in lexicographically descending order."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return [Partition(p) for p in _partitions(n, n)]


@lru_cache(maxsize=None)
def _bounded(n: int, max_part: int, max_len: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    if max_len == 0:
        return ()
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in _bounded(n - first, first, max_len - 1):
            out.append((first,) + rest)
    return tuple(out)


def partitions_max_length(n: int, max_len: int) -> list[Partition]:
    """Partitions of ``n`` with at most ``max_len`` parts, lexicographically descending."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return [Partition(p) for p in _bounded(n, n, max_len)]


def z_lambda(lam: Partition) -> int:
    """Order of the centralizer of a permutation of cycle type ``lam``."""
    out = 1
    for i, mi in lam.multiplicities().items():
        out *= i**mi * math.factorial(mi)
    return out


def class_size(lam: Partition) -> int:
    return math.factorial(lam.size) // z_lambda(lam)


def hook_dimension(lam: Partition) -> int:
    """Dimension of the irreducible ``S_n`` module by the hook-length formula."""
    conj = lam.conjugate().parts
    prod = 1
    for i, j in lam.cells():
        prod *= (lam.parts[i] - j - 1) + (conj[j] - i - 1) + 1
    return math.factorial(lam.size) // prod


def content_sum(lam: Partition) -> int:
    return sum(j - i for i, j in lam.cells())


@lru_cache(maxsize=None)
def _mn(beta: frozenset, mu: tuple[int, ...]) -> int:
    """Murnaghan-Nakayama recursion on beta-sets (first-column hook lengths)."""
    if not mu:
        return 1
    k = mu[0]
    rest = mu[1:]
    total = 0
    for b in beta:
        c = b - k
        if c < 0 or c in beta:
            continue
        sign = -1 if sum(1 for x in beta if c < x < b) % 2 else 1
        total += sign * _mn((beta - {b}) | {c}, rest)
    return total


def _beta_set(lam: Partition) -> frozenset:
    ell = len(lam.parts)
    return frozenset(p + ell - 1 - i for i, p in enumerate(lam.parts))


def character_value(lam: Partition, mu: Partition) -> int:
    """Irreducible character ``chi^lam`` evaluated on the class of cycle type ``mu``."""
    if lam.size != mu.size:
        raise ValueError(f"size mismatch: |{lam}| != |{mu}|")
    return _mn(_beta_set(lam), mu.parts)


class CharacterTable:
    """Immutable character table of ``S_n``; rows are irreps, columns classes."""

    def __init__(self, n: int):
        self.n = n
        self.partitions = tuple(enumerate_partitions(n))
        self._values = {
            (lam, mu): character_value(lam, mu) for lam in self.partitions for mu in self.partitions
        }

    def __getitem__(self, key: tuple[Partition, Partition]) -> int:
        return self._values[key]

    def row(self, lam: Partition) -> list[int]:
        return [self._values[lam, mu] for mu in self.partitions]


@lru_cache(maxsize=None)
def character_table(n: int) -> CharacterTable:
    return CharacterTable(n)


@lru_cache(maxsize=None)
def _lr(lam: Partition, mu: Partition, nu: Partition) -> int:
    total = Fraction(0)
    for a in enumerate_partitions(mu.size):
        cm = character_value(mu, a)
        if cm == 0:
            continue
        for b in enumerate_partitions(nu.size):
            cn = character_value(nu, b)
            if cn == 0:
                continue
            total += Fraction(character_value(lam, a.union(b)) * cm * cn, z_lambda(a) * z_lambda(b))
    if total.denominator != 1 or total < 0:
        raise ArithmeticError(f"non-integral LR coefficient {total}")
    return int(total)


def littlewood_richardson(lam: Partition, mu: Partition, nu: Partition) -> int:
    """Multiplicity of ``chi^mu x chi^nu`` in the restriction of ``chi^lam`` to ``S_|mu| x S_|nu|``."""
    if lam.size != mu.size + nu.size:
        raise ValueError(f"size mismatch: |{lam}| != |{mu}| + |{nu}|")
    return _lr(lam, mu, nu)


# ---------------------------------------------------------------------------
# permutations as tuples: p[i] is the image of i, composition (p*q)(i) = p[q[i]]


def identity_perm(k: int) -> tuple[int, ...]:
    return tuple(range(k))


def perm_compose(p, q) -> tuple[int, ...]:
    return tuple(p[i] for i in q)


def perm_inverse(p) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def perm_cycles(p) -> list[tuple[int, ...]]:
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i]:
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = p[j]
        out.append(tuple(cyc))
    return out


def perm_num_cycles(p) -> int:
    return len(perm_cycles(p))


def perm_cycle_type(p) -> Partition:
    return Partition(sorted((len(c) for c in perm_cycles(p)), reverse=True))


def all_perms(k: int):
    return itertools.permutations(range(k))
