import cmath
import itertools
import math
import random
from fractions import Fraction

import pytest

from oracles import haar_power_sum_moment
from ymbrauer.algebra_core import ExactScalar, Partition, enumerate_partitions, perm_cycle_type, z_lambda
from ymbrauer.newton_wick import (
    factorised_expansion,
    gaussian_moment_factor,
    generalized_frobenius,
    haar_moment,
    omega_gaussian,
    weyl_character,
    wick_inner_product,
    wick_newton,
)
from ymbrauer.walled_brauer import WalledDiagram, block_perms, kernel_projector, omega_mixed, rho_matrix
from ymbrauer.weights import from_pair, weyl_dimension

P = Partition
E = Partition(())
N_SYM = ExactScalar.symbol()


def pairs_up_to(total: int):
    for k in range(total + 1):
        for n in range(k + 1):
            for lam in enumerate_partitions(n):
                for mu in enumerate_partitions(k - n):
                    yield lam, mu


def poly(monos) -> dict:
    out = {}
    for t in monos:
        out[(t.lam, t.mu)] = out.get((t.lam, t.mu), 0) + t.coefficient
    return {k: v for k, v in out.items() if v}


def evaluate(monos, eigs) -> complex:
    ps = [sum(z**k for z in eigs) for k in range(0, 8)]
    total = 0j
    for t in monos:
        term = complex(t.coefficient)
        for part in t.lam.parts:
            term *= ps[part]
        for part in t.mu.parts:
            term *= ps[part].conjugate()
        total += term
    return total


# Haar moments ------------------------------------------------------------------------


def test_haar_examples():
    assert haar_moment(P((1,)), P((1,)), 1) == ExactScalar(1)
    assert haar_moment(P((2,)), P((1, 1)), 2) == ExactScalar(0)
    assert haar_moment(P((2,)), P((2,)), 2) == ExactScalar(2)


def test_haar_beyond_stable_range_on_circle():
    # on U(1) every power sum is e^{i k theta}, so equal-degree moments are 1
    for k in range(1, 5):
        for lam in enumerate_partitions(k):
            for mu in enumerate_partitions(k):
                assert haar_moment(lam, mu, 1) == ExactScalar(1)


def test_haar_stable_range_matches_weingarten():
    for lam in enumerate_partitions(2):
        for mu in enumerate_partitions(2):
            assert haar_moment(lam, mu, 2).as_fraction() == haar_power_sum_moment(lam.parts, mu.parts, 2)


def test_haar_mismatched_degrees_vanish():
    assert haar_moment(P((2,)), P((1,)), 3) == ExactScalar(0)


# Wick expansion -------------------------------------------------------------------------


def test_wick_examples():
    assert poly(wick_newton(P((1,)), P((1,)))) == {(P((1,)), P((1,))): 1, (E, E): -1}
    for lam in enumerate_partitions(3):
        assert poly(wick_newton(lam, E)) == {(lam, E): 1}


@pytest.mark.parametrize("total", [2, 3, 4, 5])
def test_wick_hierarchy(total):
    for lam, mu in pairs_up_to(total):
        terms = wick_newton(lam, mu)
        lead = [t for t in terms if t.degree == lam.size + mu.size]
        assert len(lead) == 1 and (lead[0].lam, lead[0].mu, lead[0].coefficient) == (lam, mu, 1)
        assert all((lam.size + mu.size - t.degree) % 2 == 0 for t in terms)


@pytest.mark.parametrize("total", [2, 3, 4, 5, 6])
def test_wick_matches_factorised_form(total):
    for lam, mu in pairs_up_to(total):
        assert poly(wick_newton(lam, mu)) == factorised_expansion(lam, mu)


def test_wick_matches_dense_traceless_trace():
    # p_[a,b](U) is the trace of (a x b) U on traceless tensors; N = 3 covers |a| + |b| <= 3
    rng = random.Random(3)
    N = 3
    z = [cmath.exp(2j * math.pi * rng.random()) for _ in range(N)]
    for n, m in [(1, 1), (2, 1), (1, 2)]:
        proj = kernel_projector(N, n, m).matrix
        basis = list(itertools.product(range(N), repeat=n + m))
        diag = [math.prod(z[i] for i in idx[:n]) * math.prod(z[j].conjugate() for j in idx[n:]) for idx in basis]
        seen = set()
        for s in block_perms(n, m):
            perm = rho_matrix(WalledDiagram.from_permutation(s, n, m), N).matrix * proj
            trace = sum(
                float(Fraction(int(perm[i, i].p), int(perm[i, i].q))) * diag[i] for i in range(len(basis))
            )
            a = perm_cycle_type(s[:n])
            b = perm_cycle_type(tuple(x - n for x in s[n:]))
            seen.add((a, b))
            assert abs(trace - evaluate(wick_newton(a, b), z)) < 1e-9
        assert seen


def test_orthogonality_small():
    for lam, mu in pairs_up_to(3):
        for lam2, mu2 in pairs_up_to(3):
            expected = z_lambda(lam) * z_lambda(mu) if (lam, mu) == (lam2, mu2) else 0
            assert wick_inner_product(lam, mu, lam2, mu2, 4) == ExactScalar(expected)


# generalized Frobenius ----------------------------------------------------------------------


def test_frobenius_examples():
    rng = random.Random(9)
    z = [cmath.exp(2j * math.pi * rng.random()) for _ in range(5)]
    assert abs(generalized_frobenius(P((1,)), E, z) - sum(z)) < 1e-12
    assert abs(generalized_frobenius(P((1,)), P((1,)), [1] * 5) - 24) < 1e-12


def test_frobenius_against_alternants():
    rng = random.Random(17)
    z = [cmath.exp(2j * math.pi * rng.random()) for _ in range(4)]
    a = generalized_frobenius(P((2,)), P((1,)), z)
    b = weyl_character(from_pair(P((2,)), P((1,)), 4).entries, z)
    assert abs(a - b) < 1e-10


def test_frobenius_short_spectrum():
    with pytest.raises(ValueError):
        generalized_frobenius(P((2,)), P((1,)), [1, 1])


@pytest.mark.parametrize("N", [4, 5])
def test_frobenius_at_identity_is_dimension(N):
    for lam, mu in pairs_up_to(4):
        if lam.length + mu.length > N:
            continue
        value = generalized_frobenius(lam, mu, [1] * N)
        assert abs(value - int(weyl_dimension(from_pair(lam, mu, N)))) < 1e-9


def test_weyl_character_coincident_spectrum():
    # coincident eigenvalues go through the jittered high-precision path
    value = weyl_character(from_pair(P((1,)), P((1,)), 3).entries, [1, 1, 1])
    assert abs(value - 8) < 1e-4


# Gaussian formula ----------------------------------------------------------------------------


def test_gaussian_examples():
    assert omega_gaussian(1, 0) == omega_mixed(1, 0)
    assert gaussian_moment_factor(1, 1, 1) == N_SYM * N_SYM - 1


@pytest.mark.parametrize("shape", [(n, k - n) for k in range(1, 5) for n in range(k + 1)])
def test_gaussian_matches_omega(shape):
    assert omega_gaussian(*shape) == omega_mixed(*shape)
