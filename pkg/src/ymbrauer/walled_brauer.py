"""Walled Brauer diagrams, their algebra, and the traceless-tensor projector.

Diagram model
-------------
A diagram in ``D_{n,m}`` has ``k = n + m`` top points ``0..k-1`` and ``k``
bottom points ``k..2k-1``; top point ``i`` sits above bottom point ``k + i``.
Positions ``0..n-1`` carry ``V`` and positions ``n..k-1`` carry ``V*``. The
pairing is a fixed-point-free involution stored as a tuple. The wall rule says
a vertical string joins two points on the same side and a horizontal string
joins a ``V`` point to a ``V*`` point of the same row.

The product ``a * b`` stacks ``a`` above ``b``: the bottom row of ``a`` is glued
to the top row of ``b``. Each closed loop contributes a factor ``N``. The tensor
representation sends a diagram to the matrix whose entry at (top labels,
bottom labels) is the product of Kronecker deltas over its strings; it is an
algebra morphism for this product.

A permutation ``sigma`` of ``range(k)`` preserving the two blocks becomes the
diagram joining top ``sigma(j)`` to bottom ``j``; this embeds the group algebra
of ``S_n x S_m`` multiplicatively.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

import flint

from .algebra_core import (
    ExactScalar,
    Partition,
    character_value,
    content_sum,
    enumerate_partitions,
    hook_dimension,
    littlewood_richardson,
    perm_compose,
    perm_cycle_type,
    perm_inverse,
    perm_num_cycles,
)
from ._kernel import compose_pairings, count_cycles_closed

__all__ = [
    "SizeLimitError",
    "WalledDiagram",
    "BrauerElement",
    "DenseOperator",
    "diagram_product",
    "rho_matrix",
    "jucys_murphy",
    "traceless_projector",
    "omega_mixed",
    "omega_mixed_trace_route",
    "omega_full",
    "weingarten_full",
    "weingarten_mixed",
    "restrict_to_walled",
    "dim_from_omega",
    "omega_expansion",
    "constellation_h",
    "word_lengths",
    "brauer_norm",
    "norm_bound_constant",
    "group_invert",
    "all_diagrams",
    "block_perms",
    "kernel_projector",
    "SYMBOL",
]

SYMBOL = ExactScalar.symbol()
DENSE_LIMIT = 10**4
MAX_SYMBOLIC_SIZE = 5


class SizeLimitError(ValueError):
    """A request exceeds a configured size cap."""

    def __init__(self, message: str, cap: str):
        super().__init__(message)
        self.cap = cap


class WalledDiagram:
    """A walled Brauer diagram on ``n`` ``V``-points and ``m`` ``V*``-points."""

    __slots__ = ("n", "m", "pairing", "_hash")

    def __init__(self, n: int, m: int, pairing: Iterable[int], check: bool = True):
        self.n = n
        self.m = m
        self.pairing = tuple(pairing)
        self._hash = hash((n, m, self.pairing))
        if check:
            self._validate()

    def _validate(self):
        k = self.n + self.m
        p = self.pairing
        if len(p) != 2 * k:
            raise ValueError("pairing has the wrong length")
        for u, v in enumerate(p):
            if v == u or p[v] != u:
                raise ValueError(f"not a fixed-point-free involution at {u}")
            same_row = (u < k) == (v < k)
            same_side = self._is_v(u) == self._is_v(v)
            if same_row == same_side:
                raise ValueError(f"string {u}-{v} breaks the wall rule")

    def _is_v(self, point: int) -> bool:
        return (point % (self.n + self.m)) < self.n

    @property
    def k(self) -> int:
        return self.n + self.m

    # constructors ---------------------------------------------------------
    @classmethod
    def identity(cls, n: int, m: int) -> "WalledDiagram":
        k = n + m
        return cls(n, m, [i + k if i < k else i - k for i in range(2 * k)], check=False)

    @classmethod
    def from_permutation(cls, sigma, n: int, m: int) -> "WalledDiagram":
        """Diagram of a block-preserving permutation of ``range(n+m)``."""
        k = n + m
        if any((sigma[j] < n) != (j < n) for j in range(k)):
            raise ValueError("permutation does not preserve the wall")
        p = [0] * (2 * k)
        for j in range(k):
            p[sigma[j]] = k + j
            p[k + j] = sigma[j]
        return cls(n, m, p, check=False)

    @classmethod
    def from_pair(cls, alpha, beta) -> "WalledDiagram":
        n, m = len(alpha), len(beta)
        return cls.from_permutation(tuple(alpha) + tuple(n + b for b in beta), n, m)

    @classmethod
    def transposition(cls, a: int, b: int, n: int, m: int) -> "WalledDiagram":
        """The transposition of positions ``a`` and ``b`` (0-based, same side)."""
        sigma = list(range(n + m))
        sigma[a], sigma[b] = sigma[b], sigma[a]
        return cls.from_permutation(sigma, n, m)

    @classmethod
    def contraction(cls, i: int, j: int, n: int, m: int) -> "WalledDiagram":
        """``<i, n+j>``: contract ``V``-point ``i`` with ``V*``-point ``j`` (0-based)."""
        k = n + m
        a, b = i, n + j
        p = [x + k if x < k else x - k for x in range(2 * k)]
        p[a], p[b] = b, a
        p[k + a], p[k + b] = k + b, k + a
        return cls(n, m, p, check=False)

    # derived data ---------------------------------------------------------
    @property
    def h(self) -> int:
        """Number of horizontal strings in the top row."""
        k = self.k
        return sum(1 for u in range(k) if self.pairing[u] < k) // 2

    def is_permutation(self) -> bool:
        return self.h == 0

    def to_permutation(self) -> tuple[int, ...]:
        if not self.is_permutation():
            raise ValueError("diagram has horizontal strings")
        k = self.k
        sigma = [0] * k
        for j in range(k):
            sigma[j] = self.pairing[k + j]
        return tuple(sigma)

    def num_cycles(self) -> int:
        """Loops formed after joining each top point to the bottom point below it."""
        return count_cycles_closed(self.pairing, self.k)

    def flip(self) -> "WalledDiagram":
        """Upside-down reflection; corresponds to the adjoint under the tensor representation."""
        k = self.k
        sw = lambda x: x + k if x < k else x - k
        return WalledDiagram(self.n, self.m, [sw(self.pairing[sw(u)]) for u in range(2 * k)], check=False)

    def theta(self) -> tuple[int, ...]:
        """Partial transpose: swap top and bottom of the ``V*`` points, giving a permutation of ``S_{n+m}``."""
        k = self.k
        sw = lambda x: (x + k if x < k else x - k) if (x % k) >= self.n else x
        p = [sw(self.pairing[sw(u)]) for u in range(2 * k)]
        return tuple(p[k + j] for j in range(k))

    @classmethod
    def theta_inverse(cls, sigma, n: int, m: int) -> "WalledDiagram":
        k = n + m
        p = [0] * (2 * k)
        for j in range(k):
            p[sigma[j]] = k + j
            p[k + j] = sigma[j]
        sw = lambda x: (x + k if x < k else x - k) if (x % k) >= n else x
        return cls(n, m, [sw(p[sw(u)]) for u in range(2 * k)])

    def __mul__(self, other: "WalledDiagram"):
        return diagram_product(self, other)

    def __eq__(self, other):
        return isinstance(other, WalledDiagram) and self.pairing == other.pairing and self.n == other.n

    def __lt__(self, other):
        return self.pairing < other.pairing

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"WalledDiagram({self.n},{self.m},{self.label()})"

    def label(self) -> str:
        """Readable name: ``id``, a permutation in cycle notation, or a pair list."""
        k = self.k
        if self.pairing == WalledDiagram.identity(self.n, self.m).pairing:
            return "id"
        if self.is_permutation():
            sigma = self.to_permutation()
            cycles = []
            seen = set()
            for i in range(k):
                if i in seen or sigma[i] == i:
                    continue
                c = [i]
                seen.add(i)
                j = sigma[i]
                while j != i:
                    c.append(j)
                    seen.add(j)
                    j = sigma[j]
                cycles.append("(" + " ".join(str(x + 1) for x in c) + ")")
            return "".join(cycles)
        if self.h == 1:
            tops = [u for u in range(k) if self.pairing[u] < k]
            bots = [u - k for u in range(k, 2 * k) if self.pairing[u] >= k]
            if tops == bots and all(self.pairing[k + u] == k + u for u in range(k) if u not in tops):
                return f"<{tops[0] + 1} {tops[1] + 1}>"
        pairs = sorted({tuple(sorted((u, v))) for u, v in enumerate(self.pairing)})
        name = lambda x: f"{x + 1}" if x < k else f"{x - k + 1}'"
        return "{" + ",".join(f"{name(a)}-{name(b)}" for a, b in pairs) + "}"


def diagram_product(a: WalledDiagram, b: WalledDiagram) -> tuple[int, WalledDiagram]:
    """Stack ``a`` over ``b``; returns ``(closed loops, resulting diagram)``."""
    if a.n != b.n or a.m != b.m:
        raise ValueError("shape mismatch")
    loops, p = compose_pairings(a.pairing, b.pairing, a.k)
    return loops, WalledDiagram(a.n, a.m, p, check=False)


@lru_cache(maxsize=None)
def block_perms(n: int, m: int) -> tuple[tuple[int, ...], ...]:
    """All block-preserving permutations of ``range(n+m)``, identity first."""
    out = []
    for alpha in itertools.permutations(range(n)):
        for beta in itertools.permutations(range(m)):
            out.append(tuple(alpha) + tuple(n + b for b in beta))
    return tuple(out)


@lru_cache(maxsize=None)
def all_diagrams(n: int, m: int) -> tuple[WalledDiagram, ...]:
    """Every diagram of ``D_{n,m}``; there are ``(n+m)!`` of them."""
    return tuple(WalledDiagram.theta_inverse(s, n, m) for s in itertools.permutations(range(n + m)))


# ---------------------------------------------------------------------------
# algebra elements


class BrauerElement:
    """A finite linear combination of diagrams over :class:`ExactScalar`.

    ``N`` is the loop weight: the symbol by default, or a fixed integer.
    """

    __slots__ = ("n", "m", "terms", "N")

    def __init__(self, n: int, m: int, terms=None, N=None):
        self.n = n
        self.m = m
        self.N = SYMBOL if N is None else ExactScalar.coerce(N)
        self.terms: dict[WalledDiagram, ExactScalar] = {}
        if terms:
            for d, c in (terms.items() if isinstance(terms, dict) else terms):
                self._accumulate(d, ExactScalar.coerce(c))

    def _accumulate(self, d: WalledDiagram, c: ExactScalar):
        if c.is_zero():
            return
        cur = self.terms.get(d)
        if cur is None:
            self.terms[d] = c
        else:
            s = cur + c
            if s.is_zero():
                del self.terms[d]
            else:
                self.terms[d] = s

    @classmethod
    def diagram(cls, d: WalledDiagram, coeff=1, N=None) -> "BrauerElement":
        return cls(d.n, d.m, {d: coeff}, N=N)

    @classmethod
    def identity(cls, n: int, m: int, N=None) -> "BrauerElement":
        return cls.diagram(WalledDiagram.identity(n, m), 1, N=N)

    @classmethod
    def scalar(cls, c, n: int, m: int, N=None) -> "BrauerElement":
        return cls.diagram(WalledDiagram.identity(n, m), c, N=N)

    @classmethod
    def from_group(cls, coeffs: dict, n: int, m: int, N=None) -> "BrauerElement":
        """From ``{block permutation: coefficient}``."""
        return cls(n, m, {WalledDiagram.from_permutation(s, n, m): c for s, c in coeffs.items()}, N=N)

    def copy(self) -> "BrauerElement":
        out = BrauerElement(self.n, self.m, N=self.N)
        out.terms = dict(self.terms)
        return out

    def coefficient(self, d: WalledDiagram) -> ExactScalar:
        return self.terms.get(d, ExactScalar(0))

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "BrauerElement"):
        if self.n != other.n or self.m != other.m:
            raise ValueError("shape mismatch")
        if self.N != other.N:
            raise ValueError("loop weights differ")

    def __add__(self, other):
        if not isinstance(other, BrauerElement):
            other = BrauerElement.scalar(other, self.n, self.m, N=self.N)
        self._check(other)
        out = self.copy()
        for d, c in other.terms.items():
            out._accumulate(d, c)
        return out

    __radd__ = __add__

    def __neg__(self):
        out = BrauerElement(self.n, self.m, N=self.N)
        out.terms = {d: -c for d, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if not isinstance(other, BrauerElement):
            other = BrauerElement.scalar(other, self.n, self.m, N=self.N)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "BrauerElement":
        c = ExactScalar.coerce(c)
        out = BrauerElement(self.n, self.m, N=self.N)
        if not c.is_zero():
            out.terms = {d: v * c for d, v in self.terms.items()}
        return out

    def __mul__(self, other):
        if not isinstance(other, BrauerElement):
            return self.scale(other)
        self._check(other)
        out = BrauerElement(self.n, self.m, N=self.N)
        powers = {}
        for da, ca in self.terms.items():
            for db, cb in other.terms.items():
                loops, dc = diagram_product(da, db)
                coeff = ca * cb
                if loops:
                    pw = powers.get(loops)
                    if pw is None:
                        pw = powers[loops] = self.N**loops
                    coeff = coeff * pw
                out._accumulate(dc, coeff)
        return out

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if isinstance(other, BrauerElement):
            return self.n == other.n and self.m == other.m and self.terms == other.terms
        if isinstance(other, (int, Fraction, ExactScalar)):
            return self == BrauerElement.scalar(other, self.n, self.m, N=self.N)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def specialize(self, n0: int) -> "BrauerElement":
        """Evaluate every coefficient at ``N = n0`` and fix the loop weight to ``n0``."""
        out = BrauerElement(self.n, self.m, N=n0)
        for d, c in self.terms.items():
            out._accumulate(d, c.specialize(n0))
        return out

    def max_h_support(self) -> int:
        return max((d.h for d in self.terms), default=0)

    def items(self):
        return sorted(self.terms.items(), key=lambda t: (t[0].h, t[0].pairing))

    def is_permutation_supported(self) -> bool:
        return all(d.is_permutation() for d in self.terms)

    def group_coeffs(self) -> dict[tuple[int, ...], ExactScalar]:
        return {d.to_permutation(): c for d, c in self.terms.items()}

    def __repr__(self):
        body = " + ".join(f"({c})*{d.label()}" for d, c in self.items())
        return f"BrauerElement[{self.n},{self.m}]({body or '0'})"


# ---------------------------------------------------------------------------
# dense representation


class DenseOperator:
    """Exact rational matrix of size ``N^{n+m}`` on the mixed tensor space."""

    def __init__(self, N: int, n: int, m: int, matrix: flint.fmpq_mat):
        self.N = N
        self.n = n
        self.m = m
        self.matrix = matrix

    @property
    def dim(self) -> int:
        return self.N ** (self.n + self.m)

    def __matmul__(self, other: "DenseOperator") -> "DenseOperator":
        return DenseOperator(self.N, self.n, self.m, self.matrix * other.matrix)

    def __eq__(self, other):
        return isinstance(other, DenseOperator) and self.matrix == other.matrix

    def trace(self) -> Fraction:
        t = sum((self.matrix[i, i] for i in range(self.dim)), flint.fmpq(0))
        return Fraction(int(t.p), int(t.q))


def _check_dense(N: int, k: int):
    if N**k > DENSE_LIMIT:
        raise SizeLimitError(f"dense dimension {N}^{k} exceeds {DENSE_LIMIT}", "dense_limit")


@lru_cache(maxsize=None)
def _diagram_entries(pairing: tuple, k: int, N: int) -> tuple[tuple[int, int], ...]:
    """Nonzero (row, column) positions of the 0/1 matrix of a diagram."""
    pairs = []
    seen = set()
    for u, v in enumerate(pairing):
        if u in seen:
            continue
        seen.update((u, v))
        pairs.append((u, v))
    out = []
    for labels in itertools.product(range(N), repeat=k):
        lab = [0] * (2 * k)
        for (u, v), x in zip(pairs, labels):
            lab[u] = lab[v] = x
        row = 0
        col = 0
        for i in range(k):
            row = row * N + lab[i]
            col = col * N + lab[k + i]
        out.append((row, col))
    return tuple(out)


def rho_matrix(x, N: int) -> DenseOperator:
    """Tensor representation of a diagram or element at a fixed integer ``N``."""
    if isinstance(x, WalledDiagram):
        x = BrauerElement.diagram(x, 1, N=N)
    k = x.n + x.m
    _check_dense(N, k)
    dim = N**k
    entries = {}
    for d, c in x.terms.items():
        c = c if c.is_rational else c.specialize(N)
        cf = c.as_fraction()
        for pos in _diagram_entries(d.pairing, k, N):
            entries[pos] = entries.get(pos, Fraction(0)) + cf
    mat = flint.fmpq_mat(dim, dim)
    for (r, col), v in entries.items():
        if v:
            mat[r, col] = flint.fmpq(v.numerator, v.denominator)
    return DenseOperator(N, x.n, x.m, mat)


def _contraction_map(N: int, n: int, m: int, i: int, j: int) -> flint.fmpq_mat:
    """Matrix of ``c_{i,j}: T_{n,m} -> T_{n-1,m-1}`` contracting ``V``-slot ``i`` with ``V*``-slot ``j``."""
    k = n + m
    keep = [p for p in range(k) if p not in (i, n + j)]
    rows = N ** len(keep)
    mat = flint.fmpq_mat(rows, N**k)
    for col, labels in enumerate(itertools.product(range(N), repeat=k)):
        if labels[i] != labels[n + j]:
            continue
        r = 0
        for p in keep:
            r = r * N + labels[p]
        mat[r, col] += 1
    return mat


def kernel_projector(N: int, n: int, m: int) -> DenseOperator:
    """Orthogonal projector onto the common kernel of all contractions, by dense linear algebra."""
    _check_dense(N, n + m)
    dim = N ** (n + m)
    blocks = [_contraction_map(N, n, m, i, j) for i in range(n) for j in range(m)]
    total_rows = sum(b.nrows() for b in blocks)
    stacked = flint.fmpq_mat(total_rows, dim)
    r0 = 0
    for b in blocks:
        for r in range(b.nrows()):
            for c in range(dim):
                v = b[r, c]
                if v != 0:
                    stacked[r0 + r, c] = v
        r0 += b.nrows()
    # nullspace from the reduced row echelon form
    rref, rank = stacked.rref()
    pivots = []
    row = 0
    for c in range(dim):
        if row < rank and rref[row, c] != 0:
            pivots.append(c)
            row += 1
    free = [c for c in range(dim) if c not in set(pivots)]
    basis = flint.fmpq_mat(dim, len(free))
    for t, f in enumerate(free):
        basis[f, t] = 1
        for r, pc in enumerate(pivots):
            basis[pc, t] = -rref[r, f]
    if not free:
        return DenseOperator(N, n, m, flint.fmpq_mat(dim, dim))
    gram = basis.transpose() * basis
    proj = basis * gram.inv() * basis.transpose()
    return DenseOperator(N, n, m, proj)


# ---------------------------------------------------------------------------
# Jucys-Murphy elements and the projector


def jucys_murphy(kind: str, index: int, n: int, m: int, N=None) -> BrauerElement:
    """``X_i``, ``Xbar_j``, ``Y_j`` or ``Ybar_i`` with 1-based ``index``."""
    zero = BrauerElement(n, m, N=N)
    Nval = zero.N
    if kind == "X":
        if not 1 <= index <= n:
            raise IndexError("X index out of range")
        out = zero
        for a in range(index - 1):
            out = out + BrauerElement.diagram(WalledDiagram.transposition(a, index - 1, n, m), 1, N=N)
        return out
    if kind == "Xbar":
        if not 1 <= index <= m:
            raise IndexError("Xbar index out of range")
        out = zero
        for a in range(index - 1):
            out = out + BrauerElement.diagram(WalledDiagram.transposition(n + a, n + index - 1, n, m), 1, N=N)
        return out
    if kind == "Y":
        if not 1 <= index <= m:
            raise IndexError("Y index out of range")
        out = BrauerElement.scalar(Nval, n, m, N=N)
        for i in range(n):
            out = out - BrauerElement.diagram(WalledDiagram.contraction(i, index - 1, n, m), 1, N=N)
        return out + jucys_murphy("Xbar", index, n, m, N=N)
    if kind == "Ybar":
        if not 1 <= index <= n:
            raise IndexError("Ybar index out of range")
        out = BrauerElement.scalar(Nval, n, m, N=N)
        for j in range(m):
            out = out - BrauerElement.diagram(WalledDiagram.contraction(index - 1, j, n, m), 1, N=N)
        return out + jucys_murphy("X", index, n, m, N=N)
    raise ValueError(f"unknown Jucys-Murphy kind {kind!r}")


def _solve(matrix: list[list[ExactScalar]], rhs: list[ExactScalar]) -> list[ExactScalar]:
    """Gauss-Jordan elimination over :class:`ExactScalar`."""
    n = len(matrix)
    a = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = None
        best = None
        for r in range(col, n):
            if not a[r][col].is_zero():
                # prefer low-degree pivots to keep intermediate expressions small
                cost = a[r][col].num.degree() + a[r][col].den.degree()
                if best is None or cost < best:
                    piv, best = r, cost
        if piv is None:
            raise ZeroDivisionError("singular system")
        a[col], a[piv] = a[piv], a[col]
        inv = a[col][col].inverse()
        a[col] = [v * inv if not v.is_zero() else v for v in a[col]]
        for r in range(n):
            if r != col and not a[r][col].is_zero():
                f = a[r][col]
                a[r] = [x - f * y if not y.is_zero() else x for x, y in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]


def group_invert(x: BrauerElement) -> BrauerElement:
    """Inverse of a permutation-supported element inside the group algebra of ``S_n x S_m``."""
    if not x.is_permutation_supported():
        raise ValueError("element is not supported on permutations")
    n, m = x.n, x.m
    basis = block_perms(n, m)
    index = {s: i for i, s in enumerate(basis)}
    coeffs = x.group_coeffs()
    size = len(basis)
    zero = ExactScalar(0)
    mat = [[zero] * size for _ in range(size)]
    # column t holds x * basis[t]
    for t, tau in enumerate(basis):
        for sigma, c in coeffs.items():
            mat[index[perm_compose(sigma, tau)]][t] = mat[index[perm_compose(sigma, tau)]][t] + c
    rhs = [zero] * size
    rhs[index[tuple(range(n + m))]] = ExactScalar(1)
    sol = _solve(mat, rhs)
    return BrauerElement.from_group({basis[i]: c for i, c in enumerate(sol)}, n, m, N=x.N)


def _product(elems: list[BrauerElement], n: int, m: int, N=None) -> BrauerElement:
    out = BrauerElement.identity(n, m, N=N)
    for e in elems:
        out = out * e
    return out


@lru_cache(maxsize=None)
def traceless_projector(n: int, m: int) -> BrauerElement:
    """The projector onto traceless tensors as a ratfun combination of diagrams."""
    if n < 0 or m < 0:
        raise ValueError("n and m must be non-negative")
    if n + m > MAX_SYMBOLIC_SIZE:
        raise SizeLimitError(f"n+m={n + m} exceeds {MAX_SYMBOLIC_SIZE}", "symbolic_size")
    if n == 0 or m == 0:
        return BrauerElement.identity(n, m)
    X = [jucys_murphy("X", i, n, m) for i in range(1, n + 1)]
    Xb = [jucys_murphy("Xbar", j, n, m) for j in range(1, m + 1)]
    denom = _product([X[i] + Xb[j] + SYMBOL for i in range(n) for j in range(m)], n, m)
    if m <= n:
        Y = [jucys_murphy("Y", j, n, m) for j in range(1, m + 1)]
        numer = _product([X[i] + Y[j] for i in range(n) for j in range(m)], n, m)
    else:
        Yb = [jucys_murphy("Ybar", i, n, m) for i in range(1, n + 1)]
        numer = _product([Xb[j] + Yb[i] for i in range(n) for j in range(m)], n, m)
    return group_invert(denom) * numer


# ---------------------------------------------------------------------------
# Omega and Weingarten functions


def _check_symbolic(n: int, m: int):
    if n + m > MAX_SYMBOLIC_SIZE:
        raise SizeLimitError(f"n+m={n + m} exceeds {MAX_SYMBOLIC_SIZE}", "symbolic_size")


def _split(sigma, n: int) -> tuple[Partition, Partition]:
    alpha = tuple(sigma[:n])
    beta = tuple(x - n for x in sigma[n:])
    return perm_cycle_type(alpha) if n else Partition(), perm_cycle_type(beta) if beta else Partition()


def _content_poly(lam: Partition) -> ExactScalar:
    out = ExactScalar(1)
    for i, j in lam.cells():
        out = out * (SYMBOL + (j - i))
    return out


@lru_cache(maxsize=None)
def _q_nu_mu(nu: Partition, mu: Partition) -> ExactScalar:
    n, m = nu.size, mu.size
    pref = Fraction(math.factorial(n) * math.factorial(m), math.factorial(n + m) * hook_dimension(nu) * hook_dimension(mu))
    total = ExactScalar(0)
    for lam in enumerate_partitions(n + m):
        c = littlewood_richardson(lam, nu, mu)
        if c:
            total = total + _content_poly(lam).inverse() * (hook_dimension(lam) * c)
    return total * pref


@lru_cache(maxsize=None)
def omega_mixed(n: int, m: int) -> BrauerElement:
    """Character of the traceless tensors as a group-algebra element (character route)."""
    _check_symbolic(n, m)
    fact = math.factorial(n) * math.factorial(m)
    pieces = []
    for nu in enumerate_partitions(n):
        for mu in enumerate_partitions(m):
            weight = _q_nu_mu(nu, mu).inverse() * Fraction(hook_dimension(nu) * hook_dimension(mu), fact)
            pieces.append((nu, mu, weight))
    coeffs = {}
    for sigma in block_perms(n, m):
        a, b = _split(sigma, n)
        c = ExactScalar(0)
        for nu, mu, w in pieces:
            chi = character_value(nu, a) * character_value(mu, b)
            if chi:
                c = c + w * chi
        coeffs[sigma] = c
    return BrauerElement.from_group(coeffs, n, m)


@lru_cache(maxsize=None)
def omega_mixed_trace_route(n: int, m: int) -> BrauerElement:
    """``Omega(sigma) = Tr(rho(q sigma^{-1}))`` summed diagram by diagram."""
    _check_symbolic(n, m)
    q = traceless_projector(n, m)
    coeffs = {}
    for sigma in block_perms(n, m):
        inv = WalledDiagram.from_permutation(perm_inverse(sigma), n, m)
        total = ExactScalar(0)
        for d, c in q.terms.items():
            loops, prod = diagram_product(d, inv)
            total = total + c * SYMBOL ** (loops + prod.num_cycles())
        coeffs[sigma] = total
    return BrauerElement.from_group(coeffs, n, m)


def omega_full(k: int) -> dict[tuple[int, ...], ExactScalar]:
    """``Omega_k = sum_sigma N^{#sigma} sigma`` on ``S_k``."""
    return {s: SYMBOL ** perm_num_cycles(s) for s in itertools.permutations(range(k))}


@lru_cache(maxsize=None)
def weingarten_full(k: int) -> dict[tuple[int, ...], ExactScalar]:
    """Inverse of ``Omega_k`` in the group algebra of ``S_k`` by linear solve."""
    _check_symbolic(k, 0)
    x = BrauerElement.from_group(omega_full(k), k, 0)
    return group_invert(x).group_coeffs()


def restrict_to_walled(coeffs: dict, n: int, m: int) -> BrauerElement:
    """Keep the block-preserving part of an ``S_{n+m}`` element."""
    return BrauerElement.from_group({s: coeffs[s] for s in block_perms(n, m)}, n, m)


@lru_cache(maxsize=None)
def weingarten_mixed(n: int, m: int) -> BrauerElement:
    """Inverse of ``Omega_{n,m}`` in the group algebra of ``S_n x S_m``."""
    return group_invert(omega_mixed(n, m))


def dim_from_omega(lam: Partition, mu: Partition, N: int, route: str = "character") -> ExactScalar:
    """``chi^{[lam,mu]}(Omega_{n,m}) / (n! m!)`` at the integer ``N``."""
    if lam.length + mu.length > N:
        raise ValueError(f"l({lam}) + l({mu}) exceeds N={N}")
    n, m = lam.size, mu.size
    om = omega_mixed(n, m) if route == "character" else omega_mixed_trace_route(n, m)
    total = ExactScalar(0)
    for d, c in om.terms.items():
        a, b = _split(d.to_permutation(), n)
        chi = character_value(lam, a) * character_value(mu, b)
        if chi:
            total = total + c.specialize(N) * chi
    return total / (math.factorial(n) * math.factorial(m))


def omega_expansion(sigma, n: int, m: int, g_max: int) -> dict[int, int]:
    """Coefficients ``h_g`` of ``Omega(sigma) = N^{#sigma} + sum_g h_g N^{#sigma - 2g}``."""
    if n + m > 4:
        raise SizeLimitError("expansion limited to n+m <= 4", "expansion_size")
    val = omega_mixed(n, m).coefficient(WalledDiagram.from_permutation(sigma, n, m))
    cyc = perm_num_cycles(sigma)
    series = val.laurent_at_infinity(2 * g_max + 1)
    if series.get(cyc) != 1 or max(series) != cyc:
        raise ArithmeticError(f"leading term of Omega({sigma}) is not N^{cyc}: {series}")
    out = {}
    for e, c in series.items():
        if (cyc - e) % 2:
            raise ArithmeticError(f"exponent {e} has the wrong parity for #sigma={cyc}")
        if c.denominator != 1:
            raise ArithmeticError(f"non-integral coefficient {c}")
        g = (cyc - e) // 2
        if g >= 1:
            out[g] = int(c)
    return {g: out.get(g, 0) for g in range(1, g_max + 1)}


def _compositions(L: int):
    for cuts in itertools.product((0, 1), repeat=L - 1):
        parts = []
        size = 1
        for c in cuts:
            if c:
                parts.append(size)
                size = 1
            else:
                size += 1
        parts.append(size)
        yield parts


def constellation_h(gamma, n: int, m: int, g: int, sign: str = "blocks_and_factors") -> int:
    """Signed count of constellations with block products in ``S_n x S_m``.

    Tuples of non-identity permutations of ``S_{n+m}`` with product ``gamma``
    and total length ``|gamma| + 2g`` are weighted by ``(-1)^{l + L}`` over the
    compositions of the tuple into ``l`` consecutive blocks whose products are
    block-preserving; ``L`` is the tuple length. ``sign="blocks"`` uses
    ``(-1)^l`` alone.
    """
    k = n + m
    length = lambda s: k - perm_num_cycles(s)
    target = length(gamma) + 2 * g
    nonid = [s for s in itertools.permutations(range(k)) if length(s) > 0]
    lens = {s: length(s) for s in nonid}
    in_block = lambda s: all((s[j] < n) == (j < n) for j in range(k))
    total = 0

    def rec(prefix, prod, used):
        nonlocal total
        if used == target:
            # the empty tuple is the leading term N^{#gamma}, not part of any h_g
            if prefix and prod == tuple(gamma):
                L = len(prefix)
                for comp in _compositions(L):
                    pos = 0
                    ok = True
                    for part in comp:
                        bp = tuple(range(k))
                        for s in prefix[pos:pos + part]:
                            bp = perm_compose(bp, s)
                        pos += part
                        if not in_block(bp):
                            ok = False
                            break
                    if ok:
                        l = len(comp)
                        total += (-1) ** (l + L) if sign == "blocks_and_factors" else (-1) ** l
            return
        for s in nonid:
            if used + lens[s] <= target:
                rec(prefix + [s], perm_compose(prod, s), used + lens[s])

    rec([], tuple(range(k)), 0)
    return total


# ---------------------------------------------------------------------------
# word lengths and norms


@lru_cache(maxsize=None)
def word_lengths(n: int, m: int) -> dict[WalledDiagram, int]:
    """Minimal number of transpositions and contractions needed to write each diagram (loops ignored)."""
    gens = []
    for a, b in itertools.combinations(range(n), 2):
        gens.append(WalledDiagram.transposition(a, b, n, m))
    for a, b in itertools.combinations(range(m), 2):
        gens.append(WalledDiagram.transposition(n + a, n + b, n, m))
    for i in range(n):
        for j in range(m):
            gens.append(WalledDiagram.contraction(i, j, n, m))
    start = WalledDiagram.identity(n, m)
    dist = {start: 0}
    queue = deque([start])
    while queue:
        d = queue.popleft()
        for g in gens:
            _, e = diagram_product(d, g)
            if e not in dist:
                dist[e] = dist[d] + 1
                queue.append(e)
    return dist


def brauer_norm(x: BrauerElement, lam) -> Fraction:
    """``sum_pi lam^{|pi|} |kappa_pi|`` at a fixed ``N`` (coefficients are specialised at ``lam``)."""
    lengths = word_lengths(x.n, x.m)
    total = Fraction(0)
    for d, c in x.terms.items():
        v = c.specialize(lam).as_fraction() if not c.is_rational else c.as_fraction()
        total += Fraction(lam) ** lengths[d] * abs(v)
    return total


def norm_bound_constant(n: int, m: int) -> int:
    """``(n+m)^{nm+n+m} (2n+m)^{nm}`` with ``n >= m`` after symmetrising."""
    if m > n:
        n, m = m, n
    return (n + m) ** (n * m + n + m) * (2 * n + m) ** (n * m)


def content_eigenvalue(lam: Partition, mu: Partition) -> int:
    """Central character of the within-block transposition sum on ``[lam, mu]``."""
    return content_sum(lam) + content_sum(mu)
