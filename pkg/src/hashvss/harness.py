"""Deterministic multi-party simulation with injectable cheaters.

Parties run sequentially: the dealer, then shareholders in index order. The
dealer reaches each shareholder over a private channel and everyone over a
broadcast channel that delivers the same message to all. All randomness comes
from ``random.Random(scenario.seed)``, so a scenario replays to a
byte-identical transcript.

Scenarios:

HONEST
    nobody cheats.
DEALER_INCONSISTENT
    targets receive points of a second polynomial while the commitments
    describe the first. ``rule`` is ``same_secret`` or ``different_secret``
    (constant term of the second polynomial). With ``forge_registry`` the
    public file lists the bad shares, so only the homomorphic check catches
    them.
SHAREHOLDER_FAKE
    targets submit altered shares at reconstruction.
INTRUDER_TAMPER
    shares of targets are altered in transit from the dealer.
SECRET_MISMATCH
    the dealer publishes the digest of a wrong secret.

For the two tampering scenarios ``rule`` is ``increment`` (v + 1) or
``random`` (v + d for a random nonzero d); both always change the value.
"""

from __future__ import annotations

import dataclasses
import enum
import json
import random
from dataclasses import dataclass, field
from typing import Any

from . import protocol
from .errors import InvalidScenario, NotAllAccepted
from .field_poly import FieldParams, Polynomial, Share, poly_eval, poly_random, shares_generate
from .protocol import BroadcastMessage, Failure, PrivateMessage, ReconstructionResult
from .registry import digest_secret, registry_build


class ScenarioName(str, enum.Enum):
    HONEST = "HONEST"
    DEALER_INCONSISTENT = "DEALER_INCONSISTENT"
    SHAREHOLDER_FAKE = "SHAREHOLDER_FAKE"
    INTRUDER_TAMPER = "INTRUDER_TAMPER"
    SECRET_MISMATCH = "SECRET_MISMATCH"


_RULES = {
    ScenarioName.HONEST: {"none"},
    ScenarioName.DEALER_INCONSISTENT: {"same_secret", "different_secret"},
    ScenarioName.SHAREHOLDER_FAKE: {"increment", "random"},
    ScenarioName.INTRUDER_TAMPER: {"increment", "random"},
    ScenarioName.SECRET_MISMATCH: {"increment", "random"},
}
_DEFAULT_RULE = {
    ScenarioName.HONEST: "none",
    ScenarioName.DEALER_INCONSISTENT: "different_secret",
    ScenarioName.SHAREHOLDER_FAKE: "increment",
    ScenarioName.INTRUDER_TAMPER: "increment",
    ScenarioName.SECRET_MISMATCH: "increment",
}
_TARGETED = {ScenarioName.DEALER_INCONSISTENT, ScenarioName.SHAREHOLDER_FAKE, ScenarioName.INTRUDER_TAMPER}
_RESAMPLE_LIMIT = 1000


@dataclass(frozen=True)
class Scenario:
    name: ScenarioName
    P: int = 17
    t: int = 2
    n: int = 4
    secret: int = 13
    targets: frozenset[int] = frozenset()
    rule: str | None = None
    forge_registry: bool = True
    seed: int = 0
    modulus_bits: int | None = None

    def __post_init__(self):
        try:
            object.__setattr__(self, "name", ScenarioName(self.name))
        except ValueError:
            raise InvalidScenario(f"unknown scenario {self.name!r}") from None
        object.__setattr__(self, "targets", frozenset(self.targets))
        if self.rule is None:
            object.__setattr__(self, "rule", _DEFAULT_RULE[self.name])

    def validate(self) -> None:
        if self.rule not in _RULES[self.name]:
            raise InvalidScenario(f"rule {self.rule!r} not valid for {self.name.value}")
        if not 1 <= self.t <= self.n < self.P:
            raise InvalidScenario(f"need 1 <= t <= n < P, got t={self.t} n={self.n} P={self.P}")
        if not 0 <= self.secret < self.P:
            raise InvalidScenario(f"secret {self.secret} outside [0, {self.P})")
        if not self.targets <= set(range(1, self.n + 1)):
            raise InvalidScenario(f"targets {sorted(self.targets)} outside [1, {self.n}]")
        if self.name in _TARGETED and not self.targets:
            raise InvalidScenario(f"{self.name.value} needs at least one target")
        if self.name not in _TARGETED and self.targets:
            raise InvalidScenario(f"{self.name.value} takes no targets")
        if self.name is ScenarioName.DEALER_INCONSISTENT and self.rule == "same_secret" and self.t < 2:
            raise InvalidScenario("same_secret needs t >= 2; with t = 1 both polynomials coincide")

    def describe(self) -> dict[str, Any]:
        return {
            "name": self.name.value,
            "P": str(self.P),
            "t": self.t,
            "n": self.n,
            "secret": str(self.secret),
            "targets": sorted(self.targets),
            "rule": self.rule,
            "forge_registry": self.forge_registry,
            "seed": self.seed,
            "modulus_bits": self.modulus_bits,
        }


@dataclass(frozen=True)
class Transcript:
    scenario: Scenario
    events: tuple[dict[str, Any], ...]
    verdicts: dict[int, Failure] = field(hash=False)
    halted: bool
    result: ReconstructionResult

    def to_json(self) -> str:
        body = {"scenario": self.scenario.describe(), "events": list(self.events)}
        return json.dumps(body, sort_keys=True, indent=2) + "\n"


@dataclass(frozen=True)
class Expectation:
    """Oracle outcome for a scenario; ``None`` fields are left unchecked."""

    verdicts: dict[int, Failure] = field(hash=False)
    rejected: frozenset[int] | None
    secret: int | None
    secret_verified: bool | None


def _tamper(value: int, rule: str, P: int, rng: random.Random) -> int:
    delta = 1 if rule == "increment" else rng.randrange(1, P)
    return (value + delta) % P


def _second_polynomial(sc: Scenario, first: Polynomial, field_: FieldParams, rng: random.Random) -> Polynomial:
    """A polynomial that differs from ``first`` at every target index."""
    for _ in range(_RESAMPLE_LIMIT):
        if sc.rule == "same_secret":
            a0 = first.secret
        else:
            a0 = (first.secret + rng.randrange(1, sc.P)) % sc.P
        cand = poly_random(a0, sc.t, field_, rng)
        if all(poly_eval(cand, i) != poly_eval(first, i) for i in sc.targets):
            return cand
    raise InvalidScenario("could not find a second polynomial differing at every target")


class _Log:
    def __init__(self):
        self.events: list[dict[str, Any]] = []

    def __call__(self, kind: str, **data):
        self.events.append({"seq": len(self.events), "kind": kind, **data})


def _dealer_phase(sc: Scenario, params: protocol.DealParams, sk, rng: random.Random):
    if sc.name is not ScenarioName.DEALER_INCONSISTENT:
        bm, private, state = protocol.deal(sc.secret, params, rng, sk)
        if sc.name is ScenarioName.SECRET_MISMATCH:
            wrong = _tamper(sc.secret, sc.rule, sc.P, rng)
            reg = dataclasses.replace(bm.registry, secret_digest=digest_secret(wrong))
            bm = dataclasses.replace(bm, registry=reg)
        return bm, private, state

    first = poly_random(sc.secret, sc.t, params.field, rng)
    second = _second_polynomial(sc, first, params.field, rng)
    commitments, witnesses = protocol.commit_coefficients(params.pk, first, rng)
    honest = shares_generate(first, sc.n)
    dealt = [Share(s.index, poly_eval(second, s.index)) if s.index in sc.targets else s for s in honest]
    listed = dealt if sc.forge_registry else honest
    registry = registry_build(listed, sc.secret, params.digest())
    private = [PrivateMessage(s, protocol.make_hint(params.pk, first, witnesses, s.index)) for s in dealt]
    state = protocol.DealerSecretState(first, witnesses, sk)
    return BroadcastMessage(commitments, registry, params), private, state


def run_scenario(sc: Scenario) -> Transcript:
    sc.validate()
    rng = random.Random(sc.seed)
    log = _Log()

    params, sk = protocol.setup(sc.P, sc.t, sc.n, rng, sc.modulus_bits)
    pk = params.pk
    log("setup", P=str(sc.P), t=sc.t, n=sc.n, N=str(pk.N), y=str(pk.y), r=str(pk.r))

    bm, private, state = _dealer_phase(sc, params, sk, rng)
    log(
        "broadcast",
        commitments=[str(c) for c in bm.commitments],
        share_digests={str(i): d.hex() for i, d in bm.registry.share_digests.items()},
        secret_digest=bm.registry.secret_digest.hex(),
    )

    held: dict[int, PrivateMessage] = {}
    for pm in private:
        i = pm.share.index
        log("private_send", to=i)
        if sc.name is ScenarioName.INTRUDER_TAMPER and i in sc.targets:
            bad = Share(i, _tamper(pm.share.value, sc.rule, sc.P, rng))
            pm = PrivateMessage(bad, pm.hint)
            log("tampered", channel="dealer->shareholder", to=i)
        held[i] = pm
        log("private_deliver", to=i)

    verdicts: dict[int, Failure] = {}
    for i in sorted(held):
        v = protocol.verify_share(bm, held[i])
        verdicts[i] = v.failure
        log("verdict", shareholder=i, accepted=v.accepted, failure=v.failure.value)
        if not v.accepted:
            log("complaint", shareholder=i, reason=v.failure.value)

    halted = False
    try:
        protocol.dealer_discard(state, [protocol.VerificationVerdict(f is Failure.NONE, f) for f in verdicts.values()], sc.n)
        log("dealer_discarded")
    except NotAllAccepted as exc:
        halted = True
        log("deal_halted", reason=str(exc), complainants=sorted(i for i, f in verdicts.items() if f is not Failure.NONE))

    submitted = []
    for i in sorted(held):
        share = held[i].share
        if sc.name is ScenarioName.SHAREHOLDER_FAKE and i in sc.targets:
            share = Share(i, _tamper(share.value, sc.rule, sc.P, rng))
            log("fake_submission", shareholder=i)
        submitted.append(share)
        log("submit", shareholder=i)

    result = protocol.reconstruct(bm, submitted)
    log(
        "reconstruction",
        secret=None if result.secret is None else str(result.secret),
        accepted=sorted(result.accepted_shares),
        rejected=sorted(result.rejected_shares),
        secret_verified=result.secret_verified,
    )
    return Transcript(sc, tuple(log.events), verdicts, halted, result)


def scenario_expectations(sc: Scenario) -> Expectation:
    """What each scenario must produce, derived from the scenario alone."""
    sc.validate()
    everyone = range(1, sc.n + 1)
    verdicts = {i: Failure.NONE for i in everyone}
    honest_left = sc.n - len(sc.targets)
    recovered = sc.secret if honest_left >= sc.t else None

    if sc.name is ScenarioName.HONEST:
        return Expectation(verdicts, frozenset(), sc.secret, True)
    if sc.name is ScenarioName.SECRET_MISMATCH:
        return Expectation(verdicts, frozenset(), sc.secret, False)
    if sc.name is ScenarioName.SHAREHOLDER_FAKE:
        return Expectation(verdicts, sc.targets, recovered, recovered is not None)
    if sc.name is ScenarioName.INTRUDER_TAMPER:
        verdicts.update({i: Failure.HASH for i in sc.targets})
        return Expectation(verdicts, sc.targets, recovered, recovered is not None)

    # DEALER_INCONSISTENT
    if sc.forge_registry:
        # Forged registry entries pass the hash check at reconstruction, so the
        # outcome depends on which points get interpolated; left unchecked.
        verdicts.update({i: Failure.CONSISTENCY for i in sc.targets})
        return Expectation(verdicts, None, None, None)
    verdicts.update({i: Failure.HASH for i in sc.targets})
    return Expectation(verdicts, sc.targets, recovered, recovered is not None)


def mismatches(tr: Transcript, exp: Expectation) -> list[str]:
    """Differences between a transcript and its expectation; empty means match."""
    out = []
    if tr.verdicts != exp.verdicts:
        got = {i: f.value for i, f in tr.verdicts.items()}
        want = {i: f.value for i, f in exp.verdicts.items()}
        out.append(f"verdicts {got} != {want}")
    res = tr.result
    if exp.rejected is not None and res.rejected_shares != exp.rejected:
        out.append(f"rejected {sorted(res.rejected_shares)} != {sorted(exp.rejected)}")
    if exp.secret_verified is not None:
        if res.secret != exp.secret:
            out.append(f"secret {res.secret} != {exp.secret}")
        if res.secret_verified != exp.secret_verified:
            out.append(f"secret_verified {res.secret_verified} != {exp.secret_verified}")
    return out
