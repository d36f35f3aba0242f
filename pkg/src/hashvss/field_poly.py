"""Prime-field arithmetic, Shamir sharing and Lagrange reconstruction.

Field elements are plain ints in ``[0, P)``. Share indices run from 1 to n;
index 0 is reserved because f(0) is the secret.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    DuplicateIndex,
    EmptyInput,
    InvalidThreshold,
    NotPrime,
    ThresholdExceedsN,
    TooManyShareholders,
    TooSmall,
)

# Bases that make Miller-Rabin deterministic below 3.3e24.
_SMALL_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_DETERMINISTIC_LIMIT = 3317044064679887385961981
# 40 random rounds: error <= 4^-40 = 2^-80.
_MR_ROUNDS = 40

_witness_rng = random.SystemRandom()


def _mr_round(n: int, d: int, s: int, a: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin primality test.

    Exact below 3.3e24; above that, 40 rounds with random bases bound the
    error for a composite at 2^-80. The bases come from the OS entropy pool so
    the answer never depends on a caller's seeded generator.
    """
    if n < 2:
        return False
    for p in _SMALL_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < _DETERMINISTIC_LIMIT:
        return all(_mr_round(n, d, s, a) for a in _SMALL_BASES)
    return all(
        _mr_round(n, d, s, _witness_rng.randrange(2, n - 1))
        for _ in range(_MR_ROUNDS)
    )


def random_prime(bits: int, rng: random.Random) -> int:
    """Uniformly drawn prime with exactly ``bits`` bits."""
    if bits < 2:
        raise TooSmall(f"cannot draw a {bits}-bit prime")
    if bits == 2:
        return rng.choice((2, 3))
    while True:
        cand = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        if is_probable_prime(cand):
            return cand


@dataclass(frozen=True)
class FieldParams:
    P: int

    def __post_init__(self):
        if self.P <= 2:
            raise TooSmall(f"field prime must be >= 3, got {self.P}")
        if not is_probable_prime(self.P):
            raise NotPrime(f"{self.P} is not prime")

    def inv(self, a: int) -> int:
        """Fermat inverse a^(P-2); caller guarantees a != 0 mod P."""
        return pow(a, self.P - 2, self.P)


def field_new(P: int) -> FieldParams:
    return FieldParams(P)


@dataclass(frozen=True)
class Polynomial:
    """Coefficients ``a_0..a_{t-1}`` over GF(P); ``a_0`` is the secret."""

    coeffs: tuple[int, ...]
    P: int

    @property
    def t(self) -> int:
        return len(self.coeffs)

    @property
    def secret(self) -> int:
        return self.coeffs[0]


@dataclass(frozen=True, order=True)
class Share:
    index: int
    value: int


def poly_random(secret: int, t: int, field: FieldParams, rng: random.Random) -> Polynomial:
    """Random polynomial of length ``t`` with constant term ``secret``.

    Higher coefficients are uniform on [0, P) and may be zero, so the
    effective degree can fall below t-1.
    """
    if t < 1:
        raise InvalidThreshold(f"threshold must be >= 1, got {t}")
    if not 0 <= secret < field.P:
        raise ValueError(f"secret {secret} outside [0, {field.P})")
    coeffs = (secret,) + tuple(rng.randrange(field.P) for _ in range(t - 1))
    return Polynomial(coeffs, field.P)


def poly_eval(poly: Polynomial, x: int) -> int:
    acc = 0
    for a in reversed(poly.coeffs):
        acc = (acc * x + a) % poly.P
    return acc


def shares_generate(poly: Polynomial, n: int) -> list[Share]:
    if n >= poly.P:
        raise TooManyShareholders(f"n={n} must be below the field prime {poly.P}")
    if poly.t > n:
        raise ThresholdExceedsN(f"threshold t={poly.t} exceeds n={n}")
    return [Share(i, poly_eval(poly, i)) for i in range(1, n + 1)]


def lagrange_weights(indices: Sequence[int], P: int) -> list[int]:
    """Weights w_i with f(0) = sum w_i * f(x_i) mod P."""
    weights = []
    for xi in indices:
        num, den = 1, 1
        for xj in indices:
            if xj != xi:
                num = num * xj % P
                den = den * (xj - xi) % P
        weights.append(num * pow(den, P - 2, P) % P)
    return weights


def lagrange_reconstruct(shares: Iterable[Share], P: int) -> int:
    """Recover f(0) from the interpolant through every given share."""
    shares = list(shares)
    if not shares:
        raise EmptyInput("need at least one share")
    indices = [s.index for s in shares]
    if len(set(indices)) != len(indices):
        raise DuplicateIndex(f"duplicate share indices in {sorted(indices)}")
    for s in shares:
        if not 0 <= s.value < P:
            raise ValueError(f"share value {s.value} outside [0, {P})")
        if s.index % P == 0:
            raise ValueError(f"share index {s.index} is 0 mod P")
    weights = lagrange_weights(indices, P)
    return sum(w * s.value for w, s in zip(weights, shares)) % P


def add_shares(a: Sequence[Share], b: Sequence[Share], P: int) -> list[Share]:
    """Pointwise sum of two share vectors dealt over the same indices."""
    if [s.index for s in a] != [s.index for s in b]:
        raise ValueError("share vectors must cover the same indices")
    return [Share(x.index, (x.value + y.value) % P) for x, y in zip(a, b)]
