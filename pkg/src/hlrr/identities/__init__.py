"""The verification catalog, its runner and the random-point sampler."""

from .registry import Comparison, IdentityCase, Trial, get_case, registry
from .runner import exit_code, run_suite, summarize, verify_case
from .sampling import RandomPointSpec, case_rng, random_points, random_q

__all__ = [
    "Comparison",
    "IdentityCase",
    "RandomPointSpec",
    "Trial",
    "case_rng",
    "exit_code",
    "get_case",
    "random_points",
    "random_q",
    "registry",
    "run_suite",
    "summarize",
    "verify_case",
]
