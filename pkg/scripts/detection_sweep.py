"""Run every cheating scenario across many seeds and tabulate detection.

    python scripts/detection_sweep.py --runs 200 --field-prime 251
"""

import argparse
import collections
import random
import time

from hashvss.harness import Scenario, ScenarioName, mismatches, run_scenario, scenario_expectations


def make(name, rng, P):
    n = rng.randint(2, 6)
    t = rng.randint(2, n) if name is ScenarioName.DEALER_INCONSISTENT else rng.randint(1, n)
    targets = frozenset()
    if name in (ScenarioName.SHAREHOLDER_FAKE, ScenarioName.INTRUDER_TAMPER, ScenarioName.DEALER_INCONSISTENT):
        targets = frozenset(rng.sample(range(1, n + 1), rng.randint(1, n)))
    rule = None
    if name is ScenarioName.DEALER_INCONSISTENT:
        rule = rng.choice(["same_secret", "different_secret"])
    elif name is not ScenarioName.HONEST:
        rule = rng.choice(["increment", "random"])
    return Scenario(name, P=P, t=t, n=n, secret=rng.randrange(P), targets=targets, rule=rule,
                    seed=rng.getrandbits(32), modulus_bits=128)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--runs", type=int, default=200)
    ap.add_argument("--field-prime", type=int, default=251)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    print(f"{'scenario':<22}{'runs':>6}{'match':>7}{'halted':>8}{'recovered':>11}{'verified':>10}{'sec':>7}")
    for name in ScenarioName:
        tally = collections.Counter()
        start = time.perf_counter()
        for _ in range(args.runs):
            sc = make(name, rng, args.field_prime)
            tr = run_scenario(sc)
            tally["match"] += not mismatches(tr, scenario_expectations(sc))
            tally["halted"] += tr.halted
            tally["recovered"] += tr.result.secret is not None
            tally["verified"] += tr.result.secret_verified
        dt = time.perf_counter() - start
        print(f"{name.value:<22}{args.runs:>6}{tally['match']:>7}{tally['halted']:>8}"
              f"{tally['recovered']:>11}{tally['verified']:>10}{dt:>7.2f}")


if __name__ == "__main__":
    main()
