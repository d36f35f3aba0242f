import random

import pytest

from hashvss.errors import InvalidScenario
from hashvss.harness import Scenario, ScenarioName, mismatches, run_scenario, scenario_expectations
from hashvss.protocol import Failure
from builders import random_scenario

NAMES = list(ScenarioName)


def test_honest_example():
    tr = run_scenario(Scenario(ScenarioName.HONEST, seed=1))
    assert set(tr.verdicts.values()) == {Failure.NONE} and len(tr.verdicts) == 4
    assert (tr.result.secret, tr.result.secret_verified, tr.result.rejected_shares) == (13, True, frozenset())
    assert not tr.halted
    assert any(e["kind"] == "dealer_discarded" for e in tr.events)


def test_shareholder_fake_example():
    tr = run_scenario(Scenario(ScenarioName.SHAREHOLDER_FAKE, targets={2}, rule="increment", seed=1))
    assert set(tr.verdicts.values()) == {Failure.NONE}
    assert tr.result.rejected_shares == {2}
    assert tr.result.secret == 13 and tr.result.secret_verified


def test_intruder_tamper_example():
    tr = run_scenario(Scenario(ScenarioName.INTRUDER_TAMPER, targets={3}, seed=1))
    assert tr.verdicts[3] is Failure.HASH
    assert all(tr.verdicts[i] is Failure.NONE for i in (1, 2, 4))
    assert tr.halted
    halted = next(e for e in tr.events if e["kind"] == "deal_halted")
    assert halted["complainants"] == [3]
    assert tr.result.rejected_shares == {3}


@pytest.mark.parametrize("rule", ["same_secret", "different_secret"])
def test_dealer_inconsistent_example(rule):
    sc = Scenario(ScenarioName.DEALER_INCONSISTENT, targets={4}, rule=rule, seed=1)
    tr = run_scenario(sc)
    assert tr.verdicts == {1: Failure.NONE, 2: Failure.NONE, 3: Failure.NONE, 4: Failure.CONSISTENCY}
    assert tr.halted
    assert mismatches(tr, scenario_expectations(sc)) == []


def test_dealer_inconsistent_unforged_registry():
    sc = Scenario(ScenarioName.DEALER_INCONSISTENT, targets={4}, forge_registry=False, seed=1)
    tr = run_scenario(sc)
    assert tr.verdicts[4] is Failure.HASH
    assert tr.result.rejected_shares == {4} and tr.result.secret == 13


def test_secret_mismatch_example():
    tr = run_scenario(Scenario(ScenarioName.SECRET_MISMATCH, seed=1))
    assert set(tr.verdicts.values()) == {Failure.NONE}
    assert tr.result.rejected_shares == frozenset()
    assert tr.result.secret == 13 and not tr.result.secret_verified


def test_expectation_patterns():
    exp = scenario_expectations(Scenario(ScenarioName.HONEST))
    assert set(exp.verdicts.values()) == {Failure.NONE} and exp.rejected == frozenset()
    exp = scenario_expectations(Scenario(ScenarioName.DEALER_INCONSISTENT, targets={4}))
    assert exp.verdicts[4] is Failure.CONSISTENCY and exp.rejected is None
    exp = scenario_expectations(Scenario(ScenarioName.SECRET_MISMATCH))
    assert exp.secret_verified is False


@pytest.mark.parametrize("name", NAMES)
def test_determinism(name):
    sc = random_scenario(random.Random(hash(name.value) & 0xFFFF), name)
    assert run_scenario(sc).to_json() == run_scenario(sc).to_json()


def test_sweep_matches_expectations():
    rng = random.Random(2024)
    for k in range(250):
        sc = random_scenario(rng, NAMES[k % len(NAMES)])
        tr = run_scenario(sc)
        assert mismatches(tr, scenario_expectations(sc)) == [], sc


def test_honest_never_rejects():
    rng = random.Random(7)
    for _ in range(50):
        tr = run_scenario(random_scenario(rng, ScenarioName.HONEST))
        assert not tr.result.rejected_shares
        assert all(f is Failure.NONE for f in tr.verdicts.values())


def test_fake_with_enough_honest_always_recovers():
    rng = random.Random(11)
    for _ in range(60):
        n = rng.randint(2, 6)
        t = rng.randint(1, n - 1)
        f = rng.randint(1, n - t)
        sc = Scenario(ScenarioName.SHAREHOLDER_FAKE, P=251, t=t, n=n, secret=rng.randrange(251),
                      targets=frozenset(rng.sample(range(1, n + 1), f)), seed=rng.getrandbits(32), modulus_bits=96)
        tr = run_scenario(sc)
        assert tr.result.secret == sc.secret and tr.result.secret_verified


@pytest.mark.parametrize("kwargs", [
    dict(name="NOPE"),
    dict(name=ScenarioName.HONEST, targets={1}),
    dict(name=ScenarioName.SHAREHOLDER_FAKE),
    dict(name=ScenarioName.SHAREHOLDER_FAKE, targets={9}),
    dict(name=ScenarioName.SHAREHOLDER_FAKE, targets={1}, rule="bogus"),
    dict(name=ScenarioName.DEALER_INCONSISTENT, t=1, targets={1}, rule="same_secret"),
    dict(name=ScenarioName.HONEST, t=5, n=4),
    dict(name=ScenarioName.HONEST, secret=17),
])
def test_invalid_scenarios(kwargs):
    with pytest.raises(InvalidScenario):
        run_scenario(Scenario(**kwargs))
