"""Verifiable threshold secret sharing with a hash registry and homomorphic coefficient commitments."""

from .benaloh import EncPrivateKey, EncPublicKey, decrypt, encrypt, hom_add, hom_scale, keygen, keygen_toy
from .field_poly import (
    FieldParams,
    Polynomial,
    Share,
    field_new,
    lagrange_reconstruct,
    poly_eval,
    poly_random,
    shares_generate,
)
from .harness import Scenario, ScenarioName, run_scenario, scenario_expectations
from .protocol import (
    BroadcastMessage,
    DealParams,
    PrivateMessage,
    ReconstructionResult,
    VerificationVerdict,
    deal,
    dealer_discard,
    reconstruct,
    setup,
    verify_share,
)
from .registry import HashRegistry, check_secret, check_share, digest_secret, digest_share, registry_build

__version__ = "0.1.0"
