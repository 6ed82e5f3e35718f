import pytest

from sidon_lattice import algebra
from sidon_lattice.algebra import (
    cyclic,
    gf_construct,
    group_make,
    hermite_normal_form,
    is_prime,
    is_prime_power,
    mat_det,
    mat_mul,
    prime_power_decompose,
    quotient_group,
    smith_normal_form,
)
from sidon_lattice.errors import FieldBoundError, InfiniteQuotientError, NotPrimePowerError


def test_det_known_values():
    assert mat_det(((2, 0), (0, 3))) == 6
    assert mat_det(((1, 2), (3, 4))) == -2
    assert mat_det(((13, 0, 0), (10, 1, 0), (4, 0, 1))) == 13
    assert mat_det(((1, 2), (2, 4))) == 0
    assert mat_det(()) == 1


def test_smith_normal_form_properties():
    m = algebra.make_matrix([(2, 4, 4), (-6, 6, 12), (10, 4, 16)])
    d, u, v = smith_normal_form(m)
    assert mat_mul(mat_mul(u, m), v) == d
    diag = [d[i][i] for i in range(3)]
    # nonneg divisibility chain
    for a, b in zip(diag, diag[1:]):
        assert a >= 0
        if a and b:
            assert b % a == 0
    assert abs(mat_det(u)) == 1 and abs(mat_det(v)) == 1
    # |det| is preserved up to sign by unimodular transforms
    assert abs(mat_det(m)) == diag[0] * diag[1] * diag[2]


def test_smith_normal_form_classic():
    d, _, _ = smith_normal_form(algebra.make_matrix([(2, 0), (0, 4)]))
    assert (d[0][0], d[1][1]) == (2, 4)
    d, _, _ = smith_normal_form(algebra.make_matrix([(2, 0), (0, 3)]))
    assert (d[0][0], d[1][1]) == (1, 6)


def test_hermite_normal_form_canonical():
    # lower-triangular, positive pivots, sub-pivot entries reduced
    assert hermite_normal_form(algebra.make_matrix([(7, 0), (-3, 1)])) == ((7, 0), (4, 1))
    h = hermite_normal_form(algebra.make_matrix([(13, 0, 0), (-3, 1, 0), (-9, 0, 1)]))
    assert h == ((13, 0, 0), (10, 1, 0), (4, 0, 1))
    assert hermite_normal_form(h) == h
    # zero rows dropped
    assert hermite_normal_form(algebra.make_matrix([(2, 0), (4, 0)])) == ((2, 0),)


def test_group_normalization():
    assert group_make([4, 2]).invariant_factors == (2, 4)
    assert group_make([2, 3]).invariant_factors == (6,)
    assert group_make([1, 5]).invariant_factors == (5,)
    assert cyclic(1).invariant_factors == ()
    with pytest.raises(ValueError):
        group_make([0])


def test_group_arithmetic():
    g = group_make([2, 4])
    assert g.order == 8 and not g.is_cyclic and g.rank == 2
    assert g.add((1, 3), (1, 2)) == (0, 1)
    assert g.sub((0, 1), (1, 3)) == (1, 2)
    assert g.scale((1, 1), 3) == (1, 3)
    assert g.element_order((1, 2)) == 2
    assert g.element_order((0, 1)) == 4
    assert len(list(g.elements())) == 8
    z5 = cyclic(5)
    assert z5.is_cyclic and z5.element_order((2,)) == 5


def test_quotient_group():
    basis = algebra.make_matrix([(13, 0, 0), (10, 1, 0), (4, 0, 1)])
    g, cmap = quotient_group(basis, 3)
    assert g.invariant_factors == (13,)
    # rows of the basis map to zero, the map is a homomorphism
    for row in basis:
        assert cmap(row) == g.zero()
    a, b = (1, 2, 3), (-4, 0, 7)
    ab = tuple(x + y for x, y in zip(a, b))
    assert cmap(ab) == g.add(cmap(a), cmap(b))
    with pytest.raises(InfiniteQuotientError):
        quotient_group(algebra.make_matrix([(1, 2)]), 2)


def test_quotient_group_noncyclic():
    g, cmap = quotient_group(algebra.make_matrix([(2, 2), (0, 6)]), 2)
    assert g.invariant_factors == (2, 6)
    assert cmap((2, 2)) == g.zero()
    seen = {cmap((x, y)) for x in range(6) for y in range(6)}
    assert len(seen) == 12


def test_primes_and_prime_powers():
    assert [n for n in range(2, 20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert prime_power_decompose(8) == (2, 3)
    assert prime_power_decompose(9) == (3, 2)
    assert prime_power_decompose(12) is None
    assert is_prime_power(1)
    assert not is_prime_power(6)


def test_gf8_tables():
    f = gf_construct(2, 3)
    assert f.modulus == (1, 1, 0, 1)  # x^3 + x + 1 is the first irreducible
    assert f.order == 8
    theta = f.primitive_element
    # multiplicative order is 7
    x = f.one()
    for i in range(1, 7):
        x = f.mul(x, theta)
        assert x != f.one()
    assert f.mul(x, theta) == f.one()
    # dlog inverts pow
    for a in f.elements():
        if any(a):
            assert f.pow(theta, f.dlog(a)) == a


def test_gf_subfield():
    f = gf_construct(2, 4)
    sub = f.subfield_elements(4)
    assert len(sub) == 4
    # closed under multiplication and addition
    for a in sub:
        for b in sub:
            assert f.mul(a, b) in sub
            assert f.add(a, b) in sub


def test_gf_guards():
    with pytest.raises(NotPrimePowerError):
        gf_construct(4, 2)
    with pytest.raises(FieldBoundError):
        gf_construct(2, 3, max_order=4)
