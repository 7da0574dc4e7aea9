"""Highest weights of U(N) and SU(N).

A weight is a non-increasing integer vector of length ``N``. SU(N) weights are
translation classes modulo the constant vector; their canonical representative
has a zero at the centre index ``p = (N-1)//2 + 1`` (1-based), which also fixes
the size function ``|alpha| = |lambda(alpha)| + |mu(alpha)|``.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra_core import ExactScalar, Partition

__all__ = [
    "HighestWeight",
    "weyl_dimension",
    "casimir",
    "pieri_neighbors",
    "size_and_decomposition",
    "from_pair",
    "rho",
    "centre_index",
]


def centre_index(N: int) -> int:
    """0-based index of the entry used to centre SU(N) weights."""
    return (N - 1) // 2


def rho(N: int) -> tuple[Fraction, ...]:
    """Half-sum of positive roots, ``rho_i = (N+1)/2 - i``."""
    return tuple(Fraction(N + 1, 2) - i for i in range(1, N + 1))


class HighestWeight:
    """Non-increasing integer vector; ``su`` marks a class modulo ``1_N``."""

    __slots__ = ("entries", "su")

    def __init__(self, entries, su: bool = False):
        entries = tuple(int(x) for x in entries)
        if not entries:
            raise ValueError("a weight needs N >= 1 entries")
        if any(entries[i] < entries[i + 1] for i in range(len(entries) - 1)):
            raise ValueError(f"entries must be non-increasing: {entries}")
        if su:
            c = entries[centre_index(len(entries))]
            entries = tuple(x - c for x in entries)
        self.entries = entries
        self.su = su

    @property
    def N(self) -> int:
        return len(self.entries)

    def __eq__(self, other):
        return (
            isinstance(other, HighestWeight)
            and self.entries == other.entries
            and self.su == other.su
        )

    def __hash__(self):
        return hash((self.entries, self.su))

    def __repr__(self):
        tag = ", su" if self.su else ""
        return f"HighestWeight({self.entries}{tag})"

    def shifted(self, c: int) -> "HighestWeight":
        return HighestWeight(tuple(x + c for x in self.entries), su=False)

    def dual(self) -> "HighestWeight":
        return HighestWeight(tuple(-x for x in reversed(self.entries)), su=self.su)

    def dimension(self) -> int:
        return _dim_int(self.entries)

    def fundamental_coords(self) -> tuple[int, ...]:
        """``omega_l = alpha_l - alpha_{l+1}`` for ``l = 1..N-1``."""
        e = self.entries
        return tuple(e[i] - e[i + 1] for i in range(len(e) - 1))

    @property
    def size(self) -> int:
        return size_and_decomposition(self)[0]


def _dim_int(e: tuple[int, ...]) -> int:
    N = len(e)
    num = 1
    den = 1
    for i in range(N):
        for j in range(i + 1, N):
            num *= e[i] - e[j] + j - i
            den *= j - i
    return num // den


def weyl_dimension(alpha: HighestWeight) -> ExactScalar:
    """Weyl dimension ``prod_{i<j} (a_i - a_j + j - i)/(j - i)``."""
    return ExactScalar(_dim_int(alpha.entries))


def _casimir_fraction(e: tuple[int, ...], star: bool) -> Fraction:
    N = len(e)
    r = rho(N)
    sq = sum(x * x for x in e)
    lin = 2 * sum(x * ri for x, ri in zip(e, r))
    total = sq + lin
    if star:
        total -= Fraction(sum(e) ** 2, N)
    return Fraction(total) / N


def casimir(alpha: HighestWeight, star: bool = False) -> ExactScalar:
    """``N c = |alpha+rho|^2 - |rho|^2``; with ``star`` the vector is centred first."""
    if alpha.su and not star:
        raise ValueError("the U(N) Casimir is not defined on an SU(N) class")
    return ExactScalar(_casimir_fraction(alpha.entries, star))


def pieri_neighbors(alpha: HighestWeight, direction: str = "up") -> list[HighestWeight]:
    """Weights ``alpha +/- e_i`` that stay non-increasing."""
    if direction not in {"up", "down"}:
        raise ValueError("direction must be 'up' or 'down'")
    step = 1 if direction == "up" else -1
    e = list(alpha.entries)
    out = []
    for i in range(len(e)):
        f = e.copy()
        f[i] += step
        if all(f[j] >= f[j + 1] for j in range(len(f) - 1)):
            out.append(HighestWeight(f, su=alpha.su))
    return out


def size_and_decomposition(alpha: HighestWeight) -> tuple[int, Partition, Partition, int]:
    """Return ``(size, lam, mu, c)`` with ``alpha = [lam, mu]_N + c 1_N``."""
    e = alpha.entries
    p = centre_index(len(e))
    c = e[p]
    lam = Partition(tuple(x - c for x in e[:p]))
    mu = Partition(tuple(c - x for x in reversed(e[p + 1:])))
    return lam.size + mu.size, lam, mu, c


def from_pair(lam: Partition, mu: Partition, N: int, c: int = 0, su: bool = False) -> HighestWeight:
    """The vector ``[lam, mu]_N + c 1_N``."""
    if lam.length + mu.length > N:
        raise ValueError(f"l({lam}) + l({mu}) exceeds N={N}")
    mid = N - lam.length - mu.length
    e = list(lam.parts) + [0] * mid + [-x for x in reversed(mu.parts)]
    return HighestWeight(tuple(x + c for x in e), su=su)
