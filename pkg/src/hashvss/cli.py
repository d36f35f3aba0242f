"""Command-line front end.

Exit codes:

    0  success / ACCEPT / verified secret / transcript matches expectations
    2  invalid arguments or unparseable files
    3  deal self-check failed
    4  share rejected
    5  fewer than t shares accepted
    6  reconstructed secret does not match the published digest
    7  simulated transcript deviates from scenario expectations
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from . import formats, harness, protocol
from .errors import VSSError
from .field_poly import random_prime

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_SELFCHECK = 3
EXIT_REJECT = 4
EXIT_INSUFFICIENT = 5
EXIT_SECRET_MISMATCH = 6
EXIT_MISMATCH = 7

_DEFAULT_TARGET = {
    harness.ScenarioName.DEALER_INCONSISTENT: 4,
    harness.ScenarioName.SHAREHOLDER_FAKE: 2,
    harness.ScenarioName.INTRUDER_TAMPER: 3,
}


class _Usage(Exception):
    pass


def _rng(seed: int | None) -> random.Random:
    return random.SystemRandom() if seed is None else random.Random(seed)


def _read(path: str, parse):
    try:
        return parse(Path(path).read_bytes())
    except OSError as exc:
        raise _Usage(f"cannot read {path}: {exc.strerror}") from None
    except VSSError as exc:
        raise _Usage(f"{path}: {exc}") from None


def cmd_deal(args) -> int:
    rng = _rng(args.seed)
    if args.field_prime is not None:
        P = args.field_prime
    else:
        P = random_prime(args.field_bits, rng)
        print(f"field prime: {P}")
    try:
        params, sk = protocol.setup(P, args.threshold, args.shares, rng, args.modulus_bits)
        bm, private, state = protocol.deal(args.secret, params, rng, sk)
    except (VSSError, ValueError) as exc:
        raise _Usage(str(exc)) from None

    verdicts = [protocol.verify_share(bm, pm) for pm in private]
    failed = [pm.share.index for pm, v in zip(private, verdicts) if not v.accepted]
    if failed:
        print(f"self-check failed for shares {failed}; nothing written", file=sys.stderr)
        return EXIT_SELFCHECK
    protocol.dealer_discard(state, verdicts, params.n)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "public.json").write_text(formats.serialize_public(bm))
    for pm in private:
        (out / f"share_{pm.share.index}.json").write_text(formats.serialize_share(pm))
    print(f"dealt {params.n} shares, threshold {params.t}, into {out}")
    return EXIT_OK


def cmd_verify(args) -> int:
    bm = _read(args.public, formats.parse_public)
    pm = _read(args.share, formats.parse_share)
    try:
        verdict = protocol.verify_share(bm, pm)
    except VSSError as exc:
        raise _Usage(str(exc)) from None
    if verdict.accepted:
        print("ACCEPT")
        return EXIT_OK
    print(f"REJECT({verdict.failure.value})")
    return EXIT_REJECT


def cmd_reconstruct(args) -> int:
    bm = _read(args.public, formats.parse_public)
    shares = [_read(f, formats.parse_share).share for f in args.share]
    result = protocol.reconstruct(bm, shares)
    if result.rejected_shares:
        print("rejected: " + ",".join(map(str, sorted(result.rejected_shares))), file=sys.stderr)
    if result.secret is None:
        print(
            f"insufficient shares: {len(result.accepted_shares)} accepted, {bm.params.t} required",
            file=sys.stderr,
        )
        return EXIT_INSUFFICIENT
    if not result.secret_verified:
        print(f"{result.secret} UNVERIFIED")
        return EXIT_SECRET_MISMATCH
    print(f"{result.secret} VERIFIED")
    return EXIT_OK


def cmd_simulate(args) -> int:
    name = harness.ScenarioName(args.scenario)
    if args.targets is not None:
        targets = frozenset(args.targets)
    elif name in _DEFAULT_TARGET:
        targets = frozenset({min(_DEFAULT_TARGET[name], args.shares)})
    else:
        targets = frozenset()
    try:
        sc = harness.Scenario(
            name, P=args.field_prime, t=args.threshold, n=args.shares, secret=args.secret,
            targets=targets, rule=args.rule, forge_registry=not args.honest_registry,
            seed=args.seed, modulus_bits=args.modulus_bits,
        )
        tr = harness.run_scenario(sc)
        diffs = harness.mismatches(tr, harness.scenario_expectations(sc))
    except (VSSError, ValueError) as exc:
        raise _Usage(str(exc)) from None
    sys.stdout.write(tr.to_json())
    for d in diffs:
        print(f"expectation mismatch: {d}", file=sys.stderr)
    return EXIT_MISMATCH if diffs else EXIT_OK


def _targets(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad target list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hashvss", description="Verifiable threshold secret sharing")
    sub = ap.add_subparsers(dest="command", required=True)

    d = sub.add_parser("deal", help="split a secret and write public.json plus share files")
    d.add_argument("--secret", type=int, required=True)
    d.add_argument("--threshold", "-t", type=int, required=True)
    d.add_argument("--shares", "-n", type=int, required=True)
    field = d.add_mutually_exclusive_group(required=True)
    field.add_argument("--field-prime", type=int)
    field.add_argument("--field-bits", type=int)
    d.add_argument("--modulus-bits", type=int, default=None, help="size of the encryption modulus N")
    d.add_argument("--seed", type=int, default=None, help="omit for OS randomness")
    d.add_argument("--out", required=True)
    d.set_defaults(func=cmd_deal)

    v = sub.add_parser("verify", help="check one share against the public file")
    v.add_argument("--public", required=True)
    v.add_argument("--share", required=True)
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("reconstruct", help="recover and verify the secret")
    r.add_argument("--public", required=True)
    r.add_argument("--share", action="append", required=True)
    r.set_defaults(func=cmd_reconstruct)

    s = sub.add_parser("simulate", help="run a cheating scenario and print its transcript")
    s.add_argument("--scenario", required=True, choices=[n.value for n in harness.ScenarioName])
    s.add_argument("--seed", type=int, default=1)
    s.add_argument("--field-prime", type=int, default=17)
    s.add_argument("--threshold", "-t", type=int, default=2)
    s.add_argument("--shares", "-n", type=int, default=4)
    s.add_argument("--secret", type=int, default=13)
    s.add_argument("--targets", type=_targets, default=None, help="comma-separated indices")
    s.add_argument("--rule", default=None)
    s.add_argument("--honest-registry", action="store_true",
                   help="DEALER_INCONSISTENT: list the committed shares in the public file")
    s.add_argument("--modulus-bits", type=int, default=None)
    s.set_defaults(func=cmd_simulate)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Usage as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
