"""Probabilistic additively homomorphic encryption over a composite modulus.

A message m in Z_r encrypts as ``x^r * y^m mod N`` with fresh random x.
Multiplying ciphertexts adds plaintexts mod r; raising a ciphertext to k
multiplies its plaintext by k. For r = 2 this is Goldwasser-Micali.

Key conditions for odd prime r:

* r | p_e - 1 and gcd(r, (p_e - 1)/r) = 1
* gcd(r, q_e - 1) = 1
* gcd(N, phi(N)) = 1
* y^(phi(N)/r) != 1 mod N

For r = 2 the base y is instead a quadratic non-residue mod both primes.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .errors import MessageOutOfRange, NotAValidCiphertext, NotPrime, ParameterSearchFailed, TooSmall
from .field_poly import is_probable_prime, random_prime

_WITNESS_DRAWS = 128


@dataclass(frozen=True)
class EncPublicKey:
    N: int
    y: int
    r: int


@dataclass(frozen=True)
class EncPrivateKey:
    p_e: int
    q_e: int

    @property
    def phi(self) -> int:
        return (self.p_e - 1) * (self.q_e - 1)


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for odd prime p, as -1, 0 or 1."""
    s = pow(a, (p - 1) // 2, p)
    return -1 if s == p - 1 else s


def _good_p(p: int, r: int) -> bool:
    return (p - 1) % r == 0 and math.gcd(r, (p - 1) // r) == 1


def _good_q(q: int, p: int, r: int) -> bool:
    if q == p:
        return False
    if r != 2 and math.gcd(r, q - 1) != 1:
        return False
    return math.gcd(p * q, (p - 1) * (q - 1)) == 1


def _good_base(y: int, r: int, p: int, q: int) -> bool:
    N = p * q
    if math.gcd(y, N) != 1:
        return False
    if r == 2:
        return legendre(y, p) == -1 and legendre(y, q) == -1
    return pow(y, (p - 1) * (q - 1) // r, N) != 1


def _check_r(r: int) -> None:
    if not is_probable_prime(r):
        raise NotPrime(f"plaintext order r={r} must be prime")


def keygen(r: int, bits: int, rng: random.Random, max_attempts: int = 100_000):
    """Generate a key pair with plaintext space Z_r and an N of about ``bits`` bits.

    p_e is drawn as k*r + 1 with k coprime to r; q_e is a random prime filling
    the remaining bits. Returns ``(EncPublicKey, EncPrivateKey)``.
    """
    _check_r(r)
    half = bits // 2
    k_bits = half - r.bit_length()
    if k_bits < 2:
        raise TooSmall(f"{bits}-bit modulus leaves no room for p_e > r={r}")

    p = None
    for _ in range(max_attempts):
        k = rng.getrandbits(k_bits) | (1 << (k_bits - 1))
        if r != 2:
            k &= ~1  # p = k*r + 1 must be odd
        if k % r == 0:
            continue
        cand = k * r + 1
        if _good_p(cand, r) and is_probable_prime(cand):
            p = cand
            break
    if p is None:
        raise ParameterSearchFailed(f"no p_e = 1 mod {r} found in {max_attempts} draws")

    q_bits = max(bits - p.bit_length(), 3)
    for _ in range(max_attempts):
        q = random_prime(q_bits, rng)
        if _good_q(q, p, r):
            break
    else:
        raise ParameterSearchFailed(f"no suitable q_e found in {max_attempts} draws")

    N = p * q
    for _ in range(max_attempts):
        y = rng.randrange(2, N)
        if _good_base(y, r, p, q):
            return EncPublicKey(N, y, r), EncPrivateKey(p, q)
    raise ParameterSearchFailed("no valid base y found")


def keygen_toy(r: int, limit: int = 1 << 20):
    """Smallest key pair for ``r``: least valid p_e, then least q_e, then least y.

    Meant for hand-checkable tests; offers no security.
    """
    _check_r(r)
    p = next((c for c in range(r + 1, limit, r) if _good_p(c, r) and is_probable_prime(c)), None)
    if p is None:
        raise ParameterSearchFailed(f"no p_e below {limit}")
    q = next((c for c in range(3, limit) if is_probable_prime(c) and _good_q(c, p, r)), None)
    if q is None:
        raise ParameterSearchFailed(f"no q_e below {limit}")
    y = next(c for c in range(2, p * q) if _good_base(c, r, p, q))
    return EncPublicKey(p * q, y, r), EncPrivateKey(p, q)


def random_unit(N: int, rng: random.Random) -> int:
    """Uniform element of the multiplicative group mod N, by rejection."""
    for _ in range(_WITNESS_DRAWS):
        x = rng.randrange(1, N)
        if math.gcd(x, N) == 1:
            return x
    raise ParameterSearchFailed(f"no unit mod N found in {_WITNESS_DRAWS} draws")


def encrypt(pk: EncPublicKey, m: int, rng: random.Random | None = None, x: int | None = None):
    """Encrypt ``m`` in [0, r). Returns ``(ciphertext, witness)``.

    Pass ``x`` to fix the randomness (tests, hint construction); otherwise it
    is drawn from ``rng``.
    """
    if not 0 <= m < pk.r:
        raise MessageOutOfRange(f"message {m} outside [0, {pk.r})")
    if x is None:
        if rng is None:
            raise ValueError("need rng or explicit witness")
        x = random_unit(pk.N, rng)
    elif math.gcd(x, pk.N) != 1:
        raise ValueError("witness must be a unit mod N")
    return pow(x, pk.r, pk.N) * pow(pk.y, m, pk.N) % pk.N, x


def hom_add(pk: EncPublicKey, c1: int, c2: int) -> int:
    return c1 * c2 % pk.N


def hom_scale(pk: EncPublicKey, c: int, k: int) -> int:
    if k < 0:
        raise ValueError("scalar must be non-negative")
    return pow(c, k, pk.N)


def _bsgs(g: int, h: int, order: int, mod: int) -> int | None:
    """Smallest e in [0, order) with g^e = h mod ``mod``, or None."""
    m = math.isqrt(order - 1) + 1
    baby = {}
    e = 1
    for j in range(m):
        baby.setdefault(e, j)
        e = e * g % mod
    giant = pow(g, -m, mod)
    gamma = h
    for i in range(m):
        j = baby.get(gamma)
        if j is not None and i * m + j < order:
            return i * m + j
        gamma = gamma * giant % mod
    return None


def decrypt(sk: EncPrivateKey, pk: EncPublicKey, c: int) -> int:
    """Recover m via a discrete log in the order-r subgroup mod p_e.

    Raising to (p_e - 1)/r kills the x^r factor; the q_e component carries no
    plaintext information. Cost is O(sqrt(r)) multiplications, so this is
    only practical for small r. Test and oracle use only.
    """
    if not 0 < c < pk.N or math.gcd(c, pk.N) != 1:
        raise NotAValidCiphertext(f"{c} is not a unit mod N")
    p, r = sk.p_e, pk.r
    e = (p - 1) // r
    m = _bsgs(pow(pk.y, e, p), pow(c, e, p), r, p)
    if m is None:
        raise NotAValidCiphertext("no plaintext matches")
    return m
