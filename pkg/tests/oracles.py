"""Independent brute-force oracles used by the test suite.

Nothing here calls into the package's algebraic routines: each oracle
recomputes its quantity from first principles so that agreement is evidence.
"""

import itertools
import math
from fractions import Fraction

import flint


def cycle_count(perm) -> int:
    seen = set()
    count = 0
    for start in range(len(perm)):
        if start in seen:
            continue
        count += 1
        j = start
        while j not in seen:
            seen.add(j)
            j = perm[j]
    return count


def perm_of_type(parts) -> tuple[int, ...]:
    """A fixed permutation whose cycles have the given lengths."""
    perm = []
    start = 0
    for part in parts:
        perm.extend(start + (a + 1) % part for a in range(part))
        start += part
    return tuple(perm)


def weingarten_matrix(k: int, N: int):
    """Inverse of the Gram matrix ``N^{#(s^-1 t)}`` on ``S_k``, exactly."""
    perms = list(itertools.permutations(range(k)))
    gram = flint.fmpq_mat([[N ** cycle_count(tuple(s.index(t[i]) for i in range(k))) for t in perms] for s in perms])
    return perms, gram.inv()


def haar_power_sum_moment(lam_parts, mu_parts, N: int) -> Fraction:
    """``int p_lam(U) conj(p_mu(U)) dU`` by summing the Weingarten formula over matrix indices."""
    k = sum(lam_parts)
    if sum(mu_parts) != k:
        return Fraction(0)
    perms, wg = weingarten_matrix(k, N)
    hol = perm_of_type(lam_parts)
    anti = perm_of_type(mu_parts)
    total = flint.fmpq(0)
    for i in itertools.product(range(N), repeat=k):
        j = [i[hol[a]] for a in range(k)]
        for ip in itertools.product(range(N), repeat=k):
            jp = [ip[anti[b]] for b in range(k)]
            for x, s in enumerate(perms):
                if any(i[a] != ip[s[a]] for a in range(k)):
                    continue
                for y, t in enumerate(perms):
                    if all(j[a] == jp[t[a]] for a in range(k)):
                        total += wg[x, y]
    return Fraction(int(total.p), int(total.q))


def partition_count(n: int) -> int:
    """Number of partitions of ``n`` by the standard coin-change recurrence."""
    ways = [1] + [0] * n
    for part in range(1, n + 1):
        for total in range(part, n + 1):
            ways[total] += ways[total - part]
    return ways[n]


def vandermonde_dimension(entries) -> Fraction:
    """Weyl dimension as a product over pairs."""
    N = len(entries)
    out = Fraction(1)
    for i in range(N):
        for j in range(i + 1, N):
            out *= Fraction(entries[i] - entries[j] + j - i, j - i)
    return out


def centralizer_order(parts) -> int:
    """Count permutations commuting with a fixed element of the given cycle type."""
    k = sum(parts)
    g = perm_of_type(parts)
    count = 0
    for p in itertools.permutations(range(k)):
        if all(p[g[i]] == g[p[i]] for i in range(k)):
            count += 1
    return count


def surface_group_sphere_sizes(genus: int, radius: int) -> list[int]:
    """Sphere sizes of the genus-``genus`` surface group from its rational growth series.

    The series is ``(1 + 2x + ... + 2x^{2g-1} + x^{2g}) / (1 - (4g-2)(x + ... + x^{2g-1}) + x^{2g})``.
    """
    num = [1] + [2] * (2 * genus - 1) + [1]
    den = [1] + [-(4 * genus - 2)] * (2 * genus - 1) + [1]
    out = []
    for n in range(radius + 1):
        v = num[n] if n < len(num) else 0
        v -= sum(den[i] * out[n - i] for i in range(1, min(n, len(den) - 1) + 1))
        out.append(v)
    return out


def harmonic(n: int) -> Fraction:
    return sum((Fraction(1, i) for i in range(1, n + 1)), Fraction(0))


def binomial(n: int, k: int) -> int:
    return math.comb(n, k)
