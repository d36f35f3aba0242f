import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from hashvss import benaloh
from hashvss.benaloh import EncPublicKey, decrypt, encrypt, hom_add, hom_scale, keygen, keygen_toy, legendre
from hashvss.errors import MessageOutOfRange, NotAValidCiphertext, NotPrime, TooSmall
from hashvss.field_poly import is_probable_prime
from oracles import encryption_table, toy_key_search


@pytest.mark.parametrize("r,expected", [(5, (33, 2, 11, 3)), (17, (515, 2, 103, 5))])
def test_toy_keygen_matches_search(r, expected):
    assert toy_key_search(r) == expected
    pk, sk = keygen_toy(r)
    assert (pk.N, pk.y, sk.p_e, sk.q_e) == expected
    assert pk.r == r


def test_toy_key_example_arithmetic():
    # 2^(20/5) = 16 for r=5; 2^24 = 61 mod 515 for r=17
    assert pow(2, 20 // 5, 33) == 16
    assert pow(2, 408 // 17, 515) == 61


def _check_key(pk, sk):
    p, q, r = sk.p_e, sk.q_e, pk.r
    assert pk.N == p * q and p != q
    assert is_probable_prime(p) and is_probable_prime(q)
    assert (p - 1) % r == 0 and math.gcd(r, (p - 1) // r) == 1
    assert math.gcd(pk.y, pk.N) == 1
    if r == 2:
        assert legendre(pk.y, p) == legendre(pk.y, q) == -1
    else:
        assert math.gcd(r, q - 1) == 1
        assert pow(pk.y, sk.phi // r, pk.N) != 1


@pytest.mark.parametrize("r,bits", [(3, 64), (17, 128), (251, 128), (65537, 256), (2**61 - 1, 512)])
def test_keygen_invariants(r, bits):
    pk, sk = keygen(r, bits, random.Random(r))
    _check_key(pk, sk)
    assert abs(pk.N.bit_length() - bits) <= 2


def test_keygen_r2_is_quadratic_nonresidue():
    pk, sk = keygen(2, 128, random.Random(9))
    _check_key(pk, sk)
    # Jacobi symbol (y/N) = (y/p)(y/q) = +1
    assert legendre(pk.y, sk.p_e) * legendre(pk.y, sk.q_e) == 1
    for m in (0, 1):
        c, _ = encrypt(pk, m, random.Random(m))
        assert decrypt(sk, pk, c) == m


def test_keygen_rejects_bad_parameters():
    with pytest.raises(NotPrime):
        keygen(15, 128, random.Random(0))
    with pytest.raises(TooSmall):
        keygen(65537, 32, random.Random(0))


def test_encrypt_examples(toy5):
    pk, _ = toy5
    assert encrypt(pk, 3, x=2) == (25, 2)
    assert encrypt(pk, 0, x=1)[0] == 1
    with pytest.raises(MessageOutOfRange):
        encrypt(pk, 5, x=1)
    with pytest.raises(MessageOutOfRange):
        encrypt(pk, -1, x=1)


def test_decrypt_examples(toy5, toy17):
    pk, sk = toy5
    assert decrypt(sk, pk, 25) == 3
    assert decrypt(sk, pk, 1) == 0
    with pytest.raises(NotAValidCiphertext):
        decrypt(sk, pk, 11)
    pk, sk = toy17
    rng = random.Random(0)
    for m in range(17):
        assert decrypt(sk, pk, encrypt(pk, m, rng)[0]) == m


@pytest.mark.parametrize("r", [5, 17])
def test_decrypt_matches_exhaustive_table(r):
    pk, sk = keygen_toy(r)
    table = encryption_table(pk.N, pk.y, pk.r)
    assert len(table) == math.prod((sk.p_e - 1, sk.q_e - 1))
    for c, m in table.items():
        assert decrypt(sk, pk, c) == m


def test_hom_add_examples(toy5):
    pk, sk = toy5
    c1, _ = encrypt(pk, 1, x=2)
    c2, _ = encrypt(pk, 2, x=4)
    assert (c1, c2) == (31, 4)
    assert hom_add(pk, c1, c2) == 25
    assert decrypt(sk, pk, 25) == 3
    assert hom_add(pk, c1, encrypt(pk, 0, x=1)[0]) == c1
    assert hom_add(pk, c1, c2) == hom_add(pk, c2, c1)


def test_hom_scale_examples(toy5):
    pk, sk = toy5
    assert hom_scale(pk, 4, 1) == 4
    assert hom_scale(pk, 4, 0) == 1
    assert hom_scale(pk, 4, 3) == 31
    assert decrypt(sk, pk, 31) == 1
    # exponents far beyond r and N are fine
    assert decrypt(sk, pk, hom_scale(pk, 4, 10**40 + 3)) == (2 * (10**40 + 3)) % 5


def test_homomorphism_exhaustive_toy(toy17):
    pk, sk = toy17
    rng = random.Random(1)
    for m1 in range(17):
        for m2 in range(17):
            c = hom_add(pk, encrypt(pk, m1, rng)[0], encrypt(pk, m2, rng)[0])
            assert decrypt(sk, pk, c) == (m1 + m2) % 17


@pytest.fixture(scope="module")
def big_key():
    return keygen(65537, 256, random.Random(12))


@settings(max_examples=1000)
@given(st.integers(0, 65536), st.integers(0, 65536), st.integers(0, 2**32), st.integers(0, 10**6))
def test_homomorphism_large_r(big_key, m1, m2, seed, k):
    pk, sk = big_key
    rng = random.Random(seed)
    c1, _ = encrypt(pk, m1, rng)
    c2, _ = encrypt(pk, m2, rng)
    assert decrypt(sk, pk, hom_add(pk, c1, c2)) == (m1 + m2) % pk.r
    assert decrypt(sk, pk, hom_scale(pk, c1, k)) == k * m1 % pk.r
    assert decrypt(sk, pk, c1) == m1


@given(st.integers(0, 16), st.integers(0, 2**32))
def test_witness_recomputes_ciphertext(toy17, m, seed):
    pk, _ = toy17
    c, x = encrypt(pk, m, random.Random(seed))
    assert math.gcd(x, pk.N) == 1
    assert c == pow(x, pk.r, pk.N) * pow(pk.y, m, pk.N) % pk.N


def test_probabilistic_encryption():
    # The toy N=515 key has only phi(N)/r = 24 encryptions of each message, so
    # distinctness is measured on an r=17 key with a realistic modulus.
    pk, _ = keygen(17, 256, random.Random(4))
    rng = random.Random(8)
    cts = {encrypt(pk, 0, rng)[0] for _ in range(100)}
    assert len(cts) >= 99


def test_toy_key_encryption_class_size(toy17):
    pk, sk = toy17
    rng = random.Random(2)
    cts = {encrypt(pk, 0, rng)[0] for _ in range(2000)}
    assert len(cts) == sk.phi // pk.r == 24


def test_random_unit_bounded():
    class Stuck(random.Random):
        def randrange(self, *a):
            return 5

    with pytest.raises(benaloh.ParameterSearchFailed):
        benaloh.random_unit(515, Stuck())
