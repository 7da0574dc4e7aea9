import cmath
import itertools
import math
import random
from fractions import Fraction

import pytest

from ymbrauer.algebra_core import ExactScalar, Partition, character_value, enumerate_partitions, perm_cycle_type
from ymbrauer.newton_wick import generalized_frobenius
from ymbrauer.walled_brauer import (
    BrauerElement,
    SizeLimitError,
    WalledDiagram,
    all_diagrams,
    block_perms,
    brauer_norm,
    diagram_product,
    dim_from_omega,
    jucys_murphy,
    norm_bound_constant,
    omega_expansion,
    omega_mixed,
    omega_mixed_trace_route,
    rho_matrix,
    traceless_projector,
    weingarten_mixed,
    word_lengths,
)

N = ExactScalar.symbol()
SHAPES = [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1)]


def element(d: WalledDiagram, c=1) -> BrauerElement:
    return BrauerElement.diagram(d, c)


# diagrams ------------------------------------------------------------------------


def test_diagram_counts_are_factorials():
    for n, m in [(1, 0), (1, 1), (2, 1), (2, 2), (3, 1)]:
        assert len(all_diagrams(n, m)) == math.factorial(n + m)


def test_wall_rule_enforced():
    # a horizontal string joining two V-points on the top row breaks the wall rule
    with pytest.raises(ValueError):
        WalledDiagram(2, 0, [1, 0, 3, 2])


def test_identity_product():
    for d in all_diagrams(2, 1):
        assert diagram_product(WalledDiagram.identity(2, 1), d) == (0, d)
        assert diagram_product(d, WalledDiagram.identity(2, 1)) == (0, d)


def test_contraction_squares_to_loop():
    e1 = WalledDiagram.contraction(0, 0, 1, 1)
    assert diagram_product(e1, e1) == (1, e1)
    assert element(e1) * element(e1) == element(e1, N)


def test_permutation_products_compose():
    for s in block_perms(2, 1):
        for t in block_perms(2, 1):
            loops, c = diagram_product(WalledDiagram.from_permutation(s, 2, 1), WalledDiagram.from_permutation(t, 2, 1))
            assert loops == 0 and c.is_permutation()


def test_shape_mismatch():
    with pytest.raises(ValueError):
        element(WalledDiagram.identity(1, 1)) * element(WalledDiagram.identity(2, 1))


# dense representation -----------------------------------------------------------------


def test_rho_identity():
    mat = rho_matrix(WalledDiagram.identity(2, 1), 3).matrix
    assert all(mat[i, j] == (1 if i == j else 0) for i in range(27) for j in range(27))


@pytest.mark.parametrize("shape", [(1, 1), (2, 1)])
def test_trace_counts_cycles(shape):
    for d in all_diagrams(*shape):
        assert rho_matrix(d, 3).trace() == 3 ** d.num_cycles()


def test_rho_is_a_morphism():
    rng = random.Random(11)
    diagrams = all_diagrams(2, 1)
    for _ in range(50):
        a, b = rng.choice(diagrams), rng.choice(diagrams)
        loops, c = diagram_product(a, b)
        lhs = rho_matrix(a, 3) @ rho_matrix(b, 3)
        rhs = rho_matrix(BrauerElement.diagram(c, 3**loops, N=3), 3)
        assert lhs == rhs


def test_dense_size_limit():
    with pytest.raises(SizeLimitError):
        rho_matrix(WalledDiagram.identity(3, 2), 7)


# Jucys-Murphy elements ---------------------------------------------------------------


def test_jm_examples():
    assert jucys_murphy("X", 1, 2, 2).is_zero()
    assert jucys_murphy("Xbar", 1, 2, 2).is_zero()
    assert jucys_murphy("X", 2, 2, 2) == element(WalledDiagram.transposition(0, 1, 2, 2))
    y1 = jucys_murphy("Y", 1, 2, 1)
    expected = BrauerElement.scalar(N, 2, 1) - element(WalledDiagram.contraction(0, 0, 2, 1)) - element(
        WalledDiagram.contraction(1, 0, 2, 1)
    )
    assert y1 == expected


def test_jm_commute():
    xs = [jucys_murphy("X", i, 2, 2) for i in (1, 2)]
    ys = [jucys_murphy("Y", j, 2, 2) for j in (1, 2)]
    for x in xs:
        for y in ys:
            assert x * y == y * x


def test_jm_index_range():
    with pytest.raises(IndexError):
        jucys_murphy("X", 3, 2, 1)
    with pytest.raises(ValueError):
        jucys_murphy("Z", 1, 2, 1)


# traceless projector -----------------------------------------------------------------


def test_q11_closed_form():
    e1 = element(WalledDiagram.contraction(0, 0, 1, 1))
    assert traceless_projector(1, 1) == BrauerElement.identity(1, 1) - e1 * (1 / N)


@pytest.mark.parametrize("shape", SHAPES)
def test_projector_structure(shape):
    n, m = shape
    q = traceless_projector(n, m)
    ident = WalledDiagram.identity(n, m)
    assert q.coefficient(ident) == ExactScalar(1)
    assert all(d.h > 0 for d in q.terms if d != ident)
    for d, c in q.terms.items():
        # the coefficient decays at least like N^{-h}
        assert c.degree() <= -d.h
    for s in block_perms(n, m):
        p = element(WalledDiagram.from_permutation(s, n, m))
        assert p * q == q * p


@pytest.mark.parametrize("shape", SHAPES)
def test_projector_idempotent_and_annihilates(shape):
    q = traceless_projector(*shape)
    assert q * q == q
    for d in all_diagrams(*shape):
        if d.h:
            assert (q * element(d)).is_zero() and (element(d) * q).is_zero()


@pytest.mark.parametrize("shape", [(1, 1), (2, 1), (2, 2)])
def test_projector_norm_bound(shape):
    n, m = shape
    q = traceless_projector(n, m)
    bound = norm_bound_constant(n, m)
    for N0 in range(n + m, n + m + 8):
        assert brauer_norm(q, N0) <= bound


@pytest.mark.parametrize("shape", [(1, 1), (2, 1), (2, 2)])
def test_triangularity(shape):
    lengths = word_lengths(*shape)
    diagrams = all_diagrams(*shape)
    assert set(lengths) == set(diagrams)
    for p in diagrams:
        assert p.h <= lengths[p]
        for v in diagrams:
            loops, c = diagram_product(p, v)
            assert lengths[c] + loops <= lengths[p] + lengths[v]


def test_character_identity_on_traceless_tensors():
    # n! m! chi_{[lam,mu]}(U) = Tr(rho(chi q) rho(U)) for diagonal U at N = 3
    rng = random.Random(5)
    z = [cmath.exp(2j * math.pi * rng.random()) for _ in range(3)]
    n, m = 2, 1
    q = traceless_projector(n, m)
    basis = list(itertools.product(range(3), repeat=n + m))
    weights = [math.prod(z[i] for i in idx[:n]) * math.prod(z[j].conjugate() for j in idx[n:]) for idx in basis]
    for lam in enumerate_partitions(n):
        for mu in enumerate_partitions(m):
            chi = BrauerElement(n, m)
            for s in block_perms(n, m):
                a = perm_cycle_type(s[:n])
                b = perm_cycle_type(tuple(x - n for x in s[n:]))
                coeff = character_value(lam, a) * character_value(mu, b)
                chi = chi + element(WalledDiagram.from_permutation(s, n, m), coeff)
            mat = rho_matrix(chi * q, 3).matrix
            trace = sum(float(Fraction(int(mat[i, i].p), int(mat[i, i].q))) * weights[i] for i in range(len(basis)))
            expected = math.factorial(n) * math.factorial(m) * generalized_frobenius(lam, mu, z)
            assert abs(trace - expected) < 1e-9


# Omega and Weingarten ------------------------------------------------------------------


def test_omega_examples():
    assert omega_mixed(1, 0) == BrauerElement.identity(1, 0) * N
    assert omega_mixed(1, 1).coefficient(WalledDiagram.identity(1, 1)) == N * N - 1
    assert omega_mixed(2, 0).coefficient(WalledDiagram.transposition(0, 1, 2, 0)) == N


@pytest.mark.parametrize("shape", [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1), (3, 0)])
def test_omega_two_routes_agree(shape):
    assert omega_mixed(*shape) == omega_mixed_trace_route(*shape)


@pytest.mark.parametrize("shape", [(1, 1), (2, 1), (2, 2)])
def test_omega_is_central(shape):
    om = omega_mixed(*shape)
    for s in block_perms(*shape):
        p = element(WalledDiagram.from_permutation(s, *shape))
        assert p * om == om * p


def test_weingarten_examples():
    assert weingarten_mixed(1, 0) == BrauerElement.identity(1, 0) * (1 / N)
    wg = weingarten_mixed(2, 0)
    assert wg.coefficient(WalledDiagram.identity(2, 0)) == 1 / (N * N - 1)
    assert wg.coefficient(WalledDiagram.transposition(0, 1, 2, 0)) == -1 / (N * (N * N - 1))


def test_dim_from_omega_examples():
    for N0 in range(3, 8):
        assert dim_from_omega(Partition((1,)), Partition(()), N0) == ExactScalar(N0)
        assert dim_from_omega(Partition((1,)), Partition((1,)), N0) == ExactScalar(N0 * N0 - 1)
        assert dim_from_omega(Partition((2,)), Partition(()), N0) == ExactScalar(N0 * (N0 + 1) // 2)


def test_dim_from_omega_length_overflow():
    with pytest.raises(ValueError):
        dim_from_omega(Partition((1, 1)), Partition((1,)), 2)


def test_omega_expansion_examples():
    assert omega_expansion((0, 1), 1, 1, 2) == {1: -1, 2: 0}
    for s in block_perms(2, 1):
        coeffs = omega_expansion(s, 2, 1, 3)
        assert all(isinstance(v, int) for v in coeffs.values())


def test_omega_expansion_size_limit():
    with pytest.raises(SizeLimitError):
        omega_expansion(tuple(range(5)), 3, 2, 1)
