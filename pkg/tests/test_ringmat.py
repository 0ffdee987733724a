"""Matrix substrate over involutive rings."""

from fractions import Fraction as F
import random

import pytest

from splithopf.splitnum import SplitComplex, OrdinaryComplex
from splithopf.ringmat import (
    RMatrix, MetricForm, RING_REAL, RING_SPLIT, RING_COMPLEX,
    commutator, anticommutator, kron, grassmann_ring,
)
from splithopf import gammarep
from splithopf.superhopf import PSEUDO, STANDARD, GrassmannElement

j = SplitComplex(0, 1)


def rand_split_matrix(rng, n, m):
    return RMatrix([[SplitComplex(F(rng.randint(-4, 4), rng.randint(1, 3)),
                                  F(rng.randint(-4, 4), rng.randint(1, 3)))
                     for _ in range(m)] for _ in range(n)], RING_SPLIT)


def test_identity_and_shapes():
    one = RMatrix.identity(3, RING_REAL)
    m = RMatrix([[1, 2, 3], [4, 5, 6]], RING_REAL)
    assert m @ one == m
    with pytest.raises(ValueError):
        one @ m
    with pytest.raises(TypeError):
        m @ RMatrix.identity(3, RING_SPLIT)


def test_split_pauli_products():
    s = gammarep.split_pauli
    one = RMatrix.identity(2, RING_SPLIT)
    assert s(1) @ s(1) == one
    assert anticommutator(s(1), s(2)).is_zero()
    assert anticommutator(s(2), s(2)) == one.scale(-2)
    assert commutator(s(1), s(1)).is_zero()


def test_dagger_properties():
    s = gammarep.split_pauli
    assert s(2).dagger() == s(2)  # hermitian despite the j entries
    assert RMatrix.identity(2, RING_SPLIT).dagger() == RMatrix.identity(2, RING_SPLIT)
    fam = gammarep.build_family("tau")
    for a in (1, 2, 3):
        assert fam.gamma(a).dagger() == -fam.gamma_lower(a)
    rng = random.Random(5)
    for _ in range(25):
        a = rand_split_matrix(rng, 3, 2)
        b = rand_split_matrix(rng, 2, 4)
        assert (a @ b).dagger() == b.dagger() @ a.dagger()


def test_matmul_bilinear_associative():
    rng = random.Random(9)
    for _ in range(10):
        a = rand_split_matrix(rng, 2, 3)
        b = rand_split_matrix(rng, 3, 3)
        c = rand_split_matrix(rng, 3, 2)
        assert (a @ b) @ c == a @ (b @ c)
        d = rand_split_matrix(rng, 3, 3)
        assert a @ (b + d) == a @ b + a @ d


def test_so32_gamma_product_matches_conjugation_matrix():
    fam = gammarep.build_family("so32_I")
    b = gammarep.charge_conjugation("so32_I").matrix
    assert fam.gamma(1) @ fam.gamma(3) == b.scale(j)


def test_kron():
    s = gammarep.split_pauli
    one2 = RMatrix.identity(2, RING_SPLIT)
    assert kron(one2, one2) == RMatrix.identity(4, RING_SPLIT)
    # mixed-product property
    rng = random.Random(2)
    a = rand_split_matrix(rng, 2, 2)
    b = rand_split_matrix(rng, 2, 2)
    c = rand_split_matrix(rng, 2, 2)
    d = rand_split_matrix(rng, 2, 2)
    assert kron(a, b) @ kron(c, d) == kron(a @ c, b @ d)
    # the 16-component block gammas are kron products in row-major layout
    so54 = gammarep.build_family("so54_II")
    one8 = RMatrix.identity(8, RING_REAL)
    p1 = RMatrix([[0, 1], [1, 0]], RING_REAL)
    p3 = RMatrix([[1, 0], [0, -1]], RING_REAL)
    assert so54.gamma(8) == kron(p1, one8)
    assert so54.gamma(9) == kron(p3, one8)
    fam = gammarep.build_family("so32_II")
    for i in (1, 2, 3):
        assert fam.gamma(i) == kron(gammarep.pauli(2), gammarep.tau(i))


def test_weighted_adjoint():
    fam = gammarep.build_family("so32_II")
    g = MetricForm((1, -1, 1, -1))
    m = fam.gamma(1)
    w = m.weighted_adjoint(g)
    gm = g.matrix(RING_COMPLEX)
    assert w == gm @ m.dagger() @ gm


def test_metric_form():
    eta = MetricForm((1, -1, 1))
    assert eta.eta(2) == -1
    assert eta.eta(1, 2) == 0
    assert eta.inner((1, 2, 3), (1, 2, 3)) == 1 - 4 + 9
    with pytest.raises(ValueError):
        MetricForm((1, 2))


def test_grassmann_matrix_involution_order_rules():
    # order-reversing involution: dagger is an anti-homomorphism;
    # order-preserving pseudo-conjugation: entrywise conj is a homomorphism
    def sample(cfg):
        g0 = GrassmannElement.generator(0, cfg)
        g1 = GrassmannElement.generator(1, cfg)
        g2 = GrassmannElement.generator(2, cfg)
        one = GrassmannElement.scalar(1, cfg)
        ring = grassmann_ring(cfg)
        a = RMatrix([[one, g0], [g1, one + g0 * g1]], ring)
        b = RMatrix([[g2, one], [one, g0]], ring)
        return a, b

    a, b = sample(STANDARD)
    assert (a @ b).dagger() == b.dagger() @ a.dagger()
    assert a.dagger().dagger() == a

    a, b = sample(PSEUDO)
    assert (a @ b).conj() == a.conj() @ b.conj()
    # the pseudo-involution squares to the parity sign, not the identity
    g0 = GrassmannElement.generator(0, PSEUDO)
    assert g0.conj().conj() == -g0
