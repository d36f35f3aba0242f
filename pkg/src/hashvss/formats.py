"""Canonical JSON encodings for the public file and share files.

Keys are sorted, indentation is two spaces, and the file ends in one
newline. Big integers are decimal strings with no leading zeros; digests are
64 lowercase hex characters. Parsing is strict, so for any file produced here
``serialize(parse(text)) == text``.

public.json::

    {"commitments": [C_0, ..., C_{t-1}],
     "params": {"N", "P", "n", "r", "t", "y"},
     "registry": {"params_digest", "secret_digest",
                  "share_digests": {"1": hex, ..., "n": hex}},
     "version": "vss1"}

share_<i>.json::

    {"hint": X_i, "index": i, "value": S_i, "version": "vss1"}
"""

from __future__ import annotations

import json
import re

from .benaloh import EncPublicKey
from .errors import FormatError
from .field_poly import FieldParams, Share
from .protocol import BroadcastMessage, DealParams, PrivateMessage
from .registry import TAG, HashRegistry

_DEC = re.compile(r"0|[1-9][0-9]*")
_HEX = re.compile(r"[0-9a-f]{64}")


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def _load(text: str | bytes, keys: set[str]) -> dict:
    try:
        obj = json.loads(text)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise FormatError(f"not JSON: {exc}") from None
    if not isinstance(obj, dict) or set(obj) != keys:
        raise FormatError(f"expected an object with keys {sorted(keys)}")
    if obj["version"] != TAG:
        raise FormatError(f"unsupported version {obj['version']!r}")
    return obj


def _int(v, what: str) -> int:
    if not isinstance(v, str) or not _DEC.fullmatch(v):
        raise FormatError(f"{what} must be a canonical decimal string, got {v!r}")
    return int(v)


def _hex(v, what: str) -> bytes:
    if not isinstance(v, str) or not _HEX.fullmatch(v):
        raise FormatError(f"{what} must be 64 lowercase hex characters")
    return bytes.fromhex(v)


def serialize_public(bm: BroadcastMessage) -> str:
    p = bm.params
    reg = bm.registry
    return _dump({
        "version": TAG,
        "params": {
            "P": str(p.P), "t": str(p.t), "n": str(p.n),
            "N": str(p.pk.N), "y": str(p.pk.y), "r": str(p.pk.r),
        },
        "commitments": [str(c) for c in bm.commitments],
        "registry": {
            "params_digest": reg.params_digest.hex(),
            "secret_digest": reg.secret_digest.hex(),
            "share_digests": {str(i): d.hex() for i, d in reg.share_digests.items()},
        },
    })


def parse_public(text: str | bytes) -> BroadcastMessage:
    obj = _load(text, {"version", "params", "commitments", "registry"})
    raw = obj["params"]
    if not isinstance(raw, dict) or set(raw) != {"P", "t", "n", "N", "y", "r"}:
        raise FormatError("params must hold exactly P, t, n, N, y, r")
    v = {k: _int(raw[k], f"params.{k}") for k in raw}
    try:
        params = DealParams(v["t"], v["n"], FieldParams(v["P"]), EncPublicKey(v["N"], v["y"], v["r"]))
    except ValueError as exc:
        raise FormatError(f"invalid parameters: {exc}") from None
    if not 1 < params.pk.y < params.pk.N:
        raise FormatError("y must lie in (1, N)")

    if not isinstance(obj["commitments"], list):
        raise FormatError("commitments must be a list")
    commitments = tuple(_int(c, "commitment") for c in obj["commitments"])
    if any(not 0 < c < params.pk.N for c in commitments):
        raise FormatError("commitments must lie in [1, N)")

    reg = obj["registry"]
    if not isinstance(reg, dict) or set(reg) != {"params_digest", "secret_digest", "share_digests"}:
        raise FormatError("registry must hold params_digest, secret_digest, share_digests")
    shares = reg["share_digests"]
    if not isinstance(shares, dict):
        raise FormatError("share_digests must be an object")
    digests = {_int(k, "share index"): _hex(d, f"share digest {k}") for k, d in shares.items()}
    if sorted(digests) != list(range(1, params.n + 1)):
        raise FormatError(f"share_digests must cover indices 1..{params.n}")
    registry = HashRegistry(
        params_digest=_hex(reg["params_digest"], "params_digest"),
        share_digests=digests,
        secret_digest=_hex(reg["secret_digest"], "secret_digest"),
    )
    if registry.params_digest != params.digest():
        raise FormatError("params_digest does not match the listed parameters")
    try:
        return BroadcastMessage(commitments, registry, params)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def serialize_share(pm: PrivateMessage) -> str:
    return _dump({
        "version": TAG,
        "index": str(pm.share.index),
        "value": str(pm.share.value),
        "hint": str(pm.hint),
    })


def parse_share(text: str | bytes) -> PrivateMessage:
    obj = _load(text, {"version", "index", "value", "hint"})
    index = _int(obj["index"], "index")
    if index < 1:
        raise FormatError("index must be >= 1")
    return PrivateMessage(Share(index, _int(obj["value"], "value")), _int(obj["hint"], "hint"))
