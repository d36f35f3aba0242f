"""Dealing, share verification and verified reconstruction.

The dealer commits to every polynomial coefficient with a probabilistic
homomorphic encryption C_j = x_j^r * y^(a_j) and sends shareholder i its share
S_i together with a consistency hint

    X_i = y^(k_i) * prod_j x_j^(i^j)  mod N,   k_i = (sum_j a_j i^j - S_i) / P

so that the shareholder can check, without interaction,

    X_i^r * y^(S_i) == prod_j C_j^(i^j)  mod N.

This only works when the plaintext order r equals the field prime P: k_i
absorbs the wrap-around between integer evaluation and reduction mod P.

Reconstruction needs only public data (broadcast commitments and the hash
registry), so the reconstructor role holds no dealer secrets.
"""

from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import benaloh
from .benaloh import EncPrivateKey, EncPublicKey
from .errors import DiscardedState, NotAllAccepted, ThresholdExceedsN, TooManyShareholders, InvalidThreshold, UnknownIndex
from .field_poly import FieldParams, Polynomial, Share, lagrange_reconstruct, poly_random, shares_generate
from .registry import HashRegistry, check_secret, check_share, digest_params, registry_build


@dataclass(frozen=True)
class DealParams:
    t: int
    n: int
    field: FieldParams
    pk: EncPublicKey

    def __post_init__(self):
        if self.t < 1:
            raise InvalidThreshold(f"threshold must be >= 1, got {self.t}")
        if self.t > self.n:
            raise ThresholdExceedsN(f"threshold t={self.t} exceeds n={self.n}")
        if self.n >= self.field.P:
            raise TooManyShareholders(f"n={self.n} must be below the field prime {self.field.P}")
        if self.pk.r != self.field.P:
            raise ValueError(f"plaintext order r={self.pk.r} must equal field prime P={self.field.P}")

    @property
    def P(self) -> int:
        return self.field.P

    def digest(self) -> bytes:
        pk = self.pk
        return digest_params(self.P, self.t, self.n, pk.N, pk.y, pk.r)


@dataclass(frozen=True)
class BroadcastMessage:
    commitments: tuple[int, ...]
    registry: HashRegistry
    params: DealParams

    def __post_init__(self):
        if len(self.commitments) != self.params.t:
            raise ValueError(f"expected {self.params.t} commitments, got {len(self.commitments)}")
        if len(self.registry) != self.params.n:
            raise ValueError(f"expected {self.params.n} registry entries, got {len(self.registry)}")


@dataclass(frozen=True)
class PrivateMessage:
    share: Share
    hint: int


class Failure(str, enum.Enum):
    NONE = "none"
    HASH = "HashMismatch"
    CONSISTENCY = "ConsistencyMismatch"


@dataclass(frozen=True)
class VerificationVerdict:
    accepted: bool
    failure: Failure = Failure.NONE

    def __post_init__(self):
        if self.accepted != (self.failure is Failure.NONE):
            raise ValueError("accepted iff failure is none")


ACCEPT = VerificationVerdict(True)


@dataclass(frozen=True)
class ReconstructionResult:
    secret: int | None
    accepted_shares: frozenset[int]
    rejected_shares: frozenset[int]
    secret_verified: bool


class DealerSecretState:
    """Polynomial, encryption witnesses and private key held by the dealer.

    Single owner. After :func:`dealer_discard` every accessor raises
    :class:`DiscardedState`.
    """

    def __init__(self, poly: Polynomial, witnesses: Sequence[int], private_key: EncPrivateKey | None = None):
        self._poly = poly
        self._witnesses = list(witnesses)
        self._private_key = private_key
        self._discarded = False

    def _live(self):
        if self._discarded:
            raise DiscardedState("dealer secrets were discarded")

    @property
    def discarded(self) -> bool:
        return self._discarded

    @property
    def polynomial(self) -> Polynomial:
        self._live()
        return self._poly

    @property
    def witnesses(self) -> list[int]:
        self._live()
        return list(self._witnesses)

    @property
    def private_key(self) -> EncPrivateKey | None:
        self._live()
        return self._private_key

    def _destroy(self):
        # Python ints are immutable; dropping every reference is the best we can do.
        self._witnesses.clear()
        self._poly = None
        self._private_key = None
        self._discarded = True


def setup(P: int, t: int, n: int, rng: random.Random, modulus_bits: int | None = None):
    """Field and encryption parameters for a deal, with r = P.

    Returns ``(DealParams, EncPrivateKey)``.
    """
    field = FieldParams(P)
    if modulus_bits is None:
        modulus_bits = max(256, 4 * P.bit_length())
    pk, sk = benaloh.keygen(P, modulus_bits, rng)
    return DealParams(t, n, field, pk), sk


def commit_coefficients(pk: EncPublicKey, poly: Polynomial, rng: random.Random):
    """Encrypt each coefficient with a fresh witness. Returns ``(commitments, witnesses)``."""
    pairs = [benaloh.encrypt(pk, a, rng) for a in poly.coeffs]
    return tuple(c for c, _ in pairs), [x for _, x in pairs]


def make_hint(pk: EncPublicKey, poly: Polynomial, witnesses: Sequence[int], i: int) -> int:
    powers = [i**j for j in range(poly.t)]
    integer_eval = sum(a * e for a, e in zip(poly.coeffs, powers))
    k = integer_eval // poly.P  # exact: integer_eval - S_i is a multiple of P
    X = pow(pk.y, k, pk.N)
    for x, e in zip(witnesses, powers):
        X = X * pow(x, e, pk.N) % pk.N
    return X


def deal(S: int, params: DealParams, rng: random.Random, private_key: EncPrivateKey | None = None):
    """Share ``S`` among ``params.n`` shareholders.

    Returns ``(BroadcastMessage, [PrivateMessage] * n, DealerSecretState)``.
    """
    poly = poly_random(S, params.t, params.field, rng)
    shares = shares_generate(poly, params.n)
    commitments, witnesses = commit_coefficients(params.pk, poly, rng)
    registry = registry_build(shares, S, params.digest())
    private = [PrivateMessage(s, make_hint(params.pk, poly, witnesses, s.index)) for s in shares]
    state = DealerSecretState(poly, witnesses, private_key)
    return BroadcastMessage(commitments, registry, params), private, state


def consistency_holds(bm: BroadcastMessage, share: Share, hint: int) -> bool:
    """X_i^r * y^(S_i) == prod_j C_j^(i^j) mod N."""
    pk = bm.params.pk
    if not 0 < hint < pk.N or math.gcd(hint, pk.N) != 1:
        return False
    if not 0 <= share.value < bm.params.P:
        return False
    lhs = pow(hint, pk.r, pk.N) * pow(pk.y, share.value, pk.N) % pk.N
    rhs = 1
    for j, c in enumerate(bm.commitments):
        rhs = benaloh.hom_add(pk, rhs, benaloh.hom_scale(pk, c, share.index**j))
    return lhs == rhs


def verify_share(bm: BroadcastMessage, pm: PrivateMessage) -> VerificationVerdict:
    """Registry check first, then the homomorphic consistency check."""
    share = pm.share
    if not 1 <= share.index <= bm.params.n:
        raise UnknownIndex(f"index {share.index} outside [1, {bm.params.n}]")
    if not check_share(bm.registry, share):
        return VerificationVerdict(False, Failure.HASH)
    if not consistency_holds(bm, share, pm.hint):
        return VerificationVerdict(False, Failure.CONSISTENCY)
    return ACCEPT


def dealer_discard(state: DealerSecretState, verdicts: Sequence[VerificationVerdict], n: int) -> None:
    """Destroy the dealer's secrets once all ``n`` shareholders accepted.

    Calling it again on a discarded state is a no-op.
    """
    if state.discarded:
        return
    if len(verdicts) != n or not all(v.accepted for v in verdicts):
        accepted = sum(v.accepted for v in verdicts)
        raise NotAllAccepted(f"{accepted}/{n} shareholders accepted")
    state._destroy()


def reconstruct(bm: BroadcastMessage, submitted: Iterable[Share]) -> ReconstructionResult:
    """Check every submission against the registry and recover the secret.

    An index is rejected if any submission carrying it fails the registry
    check (or the index is unknown). Rejection wins over a passing duplicate,
    so accepted and rejected never overlap. With at least t accepted indices
    the secret is interpolated from the t smallest of them.
    """
    reg = bm.registry
    good: dict[int, Share] = {}
    bad: set[int] = set()
    for s in submitted:
        if s.index in reg.share_digests and check_share(reg, s):
            good[s.index] = s
        else:
            bad.add(s.index)
    for i in bad:
        good.pop(i, None)

    accepted = frozenset(good)
    rejected = frozenset(bad)
    t = bm.params.t
    if len(accepted) < t:
        return ReconstructionResult(None, accepted, rejected, False)
    chosen = [good[i] for i in sorted(accepted)[:t]]
    secret = lagrange_reconstruct(chosen, bm.params.P)
    return ReconstructionResult(secret, accepted, rejected, check_secret(reg, secret))
