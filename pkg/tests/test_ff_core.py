import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dickson.errors import DomainError, ParameterError
from dickson.nearfield import default_field
from dickson.ff_core import (
    ExtensionField,
    Polynomial,
    factorize,
    find_irreducible,
    find_primitive,
    is_irreducible,
    is_prime,
)


@pytest.fixture(scope="module")
def gf9():
    return ExtensionField(3, 2)


def el(F, *coeffs):
    return F.element(list(coeffs))


# -- brute-force oracles ----------------------------------------------------


def _monic(p, d):
    for tail in itertools.product(range(p), repeat=d):
        yield tail + (1,)


def _polymul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return tuple(out)


def reducible_monics(p, m):
    """All monic degree-m products of two monic factors of positive degree."""
    out = set()
    for d in range(1, m // 2 + 1):
        for f in _monic(p, d):
            for g in _monic(p, m - d):
                out.add(_polymul(f, g, p))
    return out


def brute_order(F, a):
    x, t = a, 1
    while x != F.one:
        x, t = x * a, t + 1
    return t


# -- primes and factoring ---------------------------------------------------


def test_is_prime_matches_sieve():
    limit = 20000
    sieve = np.ones(limit, dtype=bool)
    sieve[:2] = False
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i::i] = False
    assert [n for n in range(limit) if is_prime(n)] == list(np.flatnonzero(sieve))


def test_is_prime_large():
    assert is_prime(2**61 - 1)
    assert not is_prime((2**31 - 1) * (2**61 - 1))


@pytest.mark.parametrize("n, expected", [
    (1, []),
    (8, [2, 2, 2]),
    (3**2 - 1, [2, 2, 2]),
    (13**6 - 1, [2, 2, 2, 3, 3, 7, 61, 157]),
])
def test_factorize_examples(n, expected):
    assert factorize(n) == expected
    assert math.prod(expected) == n


def test_factorize_pollard_path():
    n = 1000003 * 1000033 * 4
    assert factorize(n) == [2, 2, 1000003, 1000033]


@given(st.integers(min_value=1, max_value=10**12))
@settings(max_examples=200, deadline=None)
def test_factorize_multiplies_back(n):
    fs = factorize(n)
    assert math.prod(fs) == n
    assert all(is_prime(f) for f in fs)
    assert fs == sorted(fs)


def test_factorize_rejects_zero():
    with pytest.raises(DomainError):
        factorize(0)


# -- polynomials and moduli -------------------------------------------------


def test_find_irreducible_gf9_modulus():
    assert find_irreducible(3, 2).coefficients == (1, 0, 1)
    assert str(find_irreducible(3, 2)) == "x^2 + 1"


def test_find_irreducible_examples():
    assert find_irreducible(2, 2).coefficients == (1, 1, 1)
    for p in (2, 3, 5, 13):
        assert find_irreducible(p, 1).coefficients == (0, 1)


@pytest.mark.parametrize("p, m", [(2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 2), (3, 3),
                                  (3, 4), (5, 2), (5, 3), (7, 2), (7, 3), (11, 2)])
def test_find_irreducible_against_factor_enumeration(p, m):
    reducible = reducible_monics(p, m)
    first = next(f for f in (t + (1,) for t in itertools.product(range(p), repeat=m))
                 if f not in reducible)
    assert find_irreducible(p, m).coefficients == first


@pytest.mark.parametrize("p, m", [(2, 4), (3, 3), (5, 2)])
def test_rabin_test_agrees_with_enumeration(p, m):
    reducible = reducible_monics(p, m)
    for f in _monic(p, m):
        assert is_irreducible(Polynomial(f, p)) == (f not in reducible)


def test_polynomial_normalises():
    assert Polynomial((4, 0, 3, 0), 3).coefficients == (1,)
    assert Polynomial((), 5).degree == -1


def test_reducible_modulus_rejected():
    with pytest.raises(ParameterError):
        ExtensionField(3, 2, modulus=[2, 0, 1])


# -- elements ---------------------------------------------------------------


def test_gf9_addition(gf9):
    assert el(gf9, 1, 1) + el(gf9, 2, 2) == gf9.zero
    assert el(gf9, 2, 1) + el(gf9, 2, 1) == el(gf9, 1, 2)
    for a in gf9.elements():
        assert a + gf9.zero == a


def test_gf9_multiplication(gf9):
    beta = el(gf9, 0, 1)
    assert beta * beta == el(gf9, 2)
    assert el(gf9, 1, 1) * el(gf9, 1, 1) == el(gf9, 0, 2)
    for a in gf9.elements():
        assert a * gf9.one == a


def test_gf9_inverse(gf9):
    assert gf9.one.inverse() == gf9.one
    assert el(gf9, 2).inverse() == el(gf9, 2)
    for a in gf9.elements():
        if a:
            assert a.inverse().inverse() == a
            assert a * a.inverse() == gf9.one
    with pytest.raises(ZeroDivisionError):
        gf9.zero.inverse()


def test_gf9_pow(gf9):
    assert el(gf9, 1, 1) ** 2 == el(gf9, 0, 2)
    assert gf9.generator ** gf9.unit_order == gf9.one
    for a in gf9.elements():
        if a:
            assert a**0 == gf9.one
            assert a**-1 == a.inverse()
            assert a**-3 == (a**3).inverse()
    with pytest.raises(ZeroDivisionError):
        gf9.zero ** -1


def test_mismatched_fields_rejected(gf9):
    other = ExtensionField(2, 3)
    with pytest.raises(ParameterError):
        gf9.one + other.one
    with pytest.raises(ParameterError):
        gf9.one * other.one


def test_same_parameters_interoperate(gf9):
    clone = ExtensionField(3, 2)
    assert clone.one + gf9.one == el(gf9, 2)


# -- primitive elements and discrete logs -----------------------------------


def test_find_primitive_examples(gf9):
    assert gf9.generator == el(gf9, 1, 1)
    assert ExtensionField(3, 1).generator == ExtensionField(3, 1).element(2)
    assert ExtensionField(2, 1).generator == ExtensionField(2, 1).one


@pytest.mark.parametrize("p, m", [(2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (7, 2), (13, 1), (3, 1)])
def test_find_primitive_is_lex_first_of_full_order(p, m):
    F = ExtensionField(p, m)
    first = next(a for a in F.elements() if a and brute_order(F, a) == F.unit_order)
    assert find_primitive(F) == first == F.generator


def test_primitive_certificate(gf9):
    g = gf9.generator
    for r in set(gf9.factorization):
        assert g ** (gf9.unit_order // r) != gf9.one
    assert not gf9.is_primitive(el(gf9, 0, 1))
    assert gf9.element_order(el(gf9, 0, 1)) == 4


def test_dlog_examples(gf9):
    assert gf9.dlog(gf9.one) == 0
    assert gf9.dlog(gf9.generator) == 1
    assert gf9.dlog(el(gf9, 2)) == 4
    with pytest.raises(DomainError):
        gf9.dlog(gf9.zero)


@pytest.mark.parametrize("p, m", [(2, 8), (3, 5), (5, 4), (7, 3), (101, 1), (97, 2)])
def test_dlog_round_trip_exhaustive(p, m):
    F = ExtensionField(p, m)
    assert F.order <= 10**4
    for a in F.elements():
        if a:
            assert F.generator ** F.dlog(a) == a


def test_scalar_bsgs_matches_table():
    F = ExtensionField(3, 5)
    for a in F.elements():
        if a:
            assert F.bsgs_dlog(a) == F.dlog(a)


def test_bsgs_backend_above_threshold():
    F = ExtensionField(13, 6)
    assert F.dlog_backend == "bsgs"
    rng = np.random.default_rng(1)
    for e in rng.integers(0, F.unit_order, size=20):
        assert F.dlog(F.generator ** int(e)) == int(e)


def test_log_tables_consistent():
    F = ExtensionField(2, 10)
    exp, log = F.log_tables()
    assert log[0] == -1
    for e in (0, 1, 2, 511, 1022):
        assert F.from_code(int(exp[e])) == F.generator**e
    assert np.array_equal(log[exp], np.arange(F.unit_order))


# -- Frobenius --------------------------------------------------------------


def test_frobenius_examples(gf9):
    beta = el(gf9, 0, 1)
    assert beta.frobenius(1) == el(gf9, 0, 2)
    for a in gf9.elements():
        assert a.frobenius(0) == a
        assert a.frobenius(gf9.m) == a
        assert a.frobenius(1) == a**3
    with pytest.raises(DomainError):
        beta.frobenius(-1)


@pytest.mark.parametrize("p, m", [(2, 6), (3, 4), (5, 3), (2, 4)])
def test_frobenius_fixed_points_and_bijectivity(p, m):
    F = ExtensionField(p, m)
    for j in range(m + 1):
        images = [a.frobenius(j) for a in F.elements()]
        assert len(set(images)) == F.order
        fixed = sum(a == b for a, b in zip(F.elements(), images))
        assert fixed == p ** math.gcd(j, m)


# -- field axioms -----------------------------------------------------------


@pytest.mark.parametrize("p, m", [(2, 1), (2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3), (7, 2), (3, 4)])
def test_field_axioms_exhaustive(p, m):
    F = ExtensionField(p, m)
    els = list(F.elements())
    N = len(els)
    ix = {a: i for i, a in enumerate(els)}
    A = np.array([[ix[a + b] for b in els] for a in els])
    M = np.array([[ix[a * b] for b in els] for a in els])
    zero, one = ix[F.zero], ix[F.one]
    assert (A == A.T).all() and (M == M.T).all()
    assert (A[zero] == np.arange(N)).all() and (M[one] == np.arange(N)).all()
    assert (A == zero).any(axis=1).all()
    assert (M[np.arange(N) != zero] == one).any(axis=1).all()
    for a in range(N):
        assert (A[A[a]] == A[a][A]).all()
        assert (M[M[a]] == M[a][M]).all()
        assert (M[a][A] == A[M[a][:, None], M[a][None, :]]).all()


finite = st.sampled_from([(2, 8), (3, 5), (5, 3), (13, 2), (7, 4)])


@given(finite, st.data())
@settings(max_examples=100, deadline=None)
def test_field_laws_random(pm, data):
    F = default_field(*pm)
    draw = st.lists(st.integers(0, F.p - 1), min_size=F.m, max_size=F.m)
    a, b, c = (F.element(data.draw(draw)) for _ in range(3))
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b).frobenius(1) == a.frobenius(1) + b.frobenius(1)
    assert (a * b).frobenius(2) == a.frobenius(2) * b.frobenius(2)
    if a:
        assert a / a == F.one
        assert F.generator ** F.dlog(a) == a
