"""The dealer's public file of share and secret digests.

Every digest is SHA-256 over an ASCII string with a versioned tag:

    vss1:share:<i>:<v>
    vss1:secret:<S>
    vss1:params:<P>:<t>:<n>:<N>:<y>:<r>

Numbers are plain decimal with no leading zeros. The distinct tags keep the
three digest families from ever colliding by construction.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import UnknownIndex
from .field_poly import Share

TAG = "vss1"


def _h(text: str) -> bytes:
    return hashlib.sha256(text.encode("ascii")).digest()


def _dec(v: int) -> str:
    if v < 0:
        raise ValueError(f"negative value {v} has no canonical encoding")
    return str(v)


def digest_share(i: int, v: int) -> bytes:
    if i < 1:
        raise ValueError(f"share index must be >= 1, got {i}")
    return _h(f"{TAG}:share:{_dec(i)}:{_dec(v)}")


def digest_secret(S: int) -> bytes:
    return _h(f"{TAG}:secret:{_dec(S)}")


def digest_params(P: int, t: int, n: int, N: int, y: int, r: int) -> bytes:
    return _h(f"{TAG}:params:" + ":".join(_dec(v) for v in (P, t, n, N, y, r)))


@dataclass(frozen=True)
class HashRegistry:
    params_digest: bytes
    share_digests: Mapping[int, bytes] = field(hash=False)
    secret_digest: bytes

    def __post_init__(self):
        digests = [self.params_digest, self.secret_digest, *self.share_digests.values()]
        if any(len(d) != 32 for d in digests):
            raise ValueError("all digests must be 32 bytes")
        if any(i < 1 for i in self.share_digests):
            raise ValueError("share indices must be >= 1")
        # Freeze a sorted copy so equality and iteration are order-stable.
        object.__setattr__(self, "share_digests", dict(sorted(self.share_digests.items())))

    def __len__(self) -> int:
        return len(self.share_digests)


def registry_build(shares: Iterable[Share], S: int, params_digest: bytes) -> HashRegistry:
    """Build the public file for one deal.

    ``params_digest`` comes from :func:`digest_params` over the deal's public
    parameters; it binds the file to that deal.
    """
    return HashRegistry(
        params_digest=params_digest,
        share_digests={s.index: digest_share(s.index, s.value) for s in shares},
        secret_digest=digest_secret(S),
    )


def check_share(reg: HashRegistry, share: Share) -> bool:
    try:
        expected = reg.share_digests[share.index]
    except KeyError:
        raise UnknownIndex(f"index {share.index} not in registry") from None
    if share.value < 0:
        return False
    return digest_share(share.index, share.value) == expected


def check_secret(reg: HashRegistry, S: int) -> bool:
    return S >= 0 and digest_secret(S) == reg.secret_digest
