"""Bijections between the closed terms of a signature and the natural numbers."""

import json as _json

from ._core import (
    CodeOutOfRange,
    Codec,
    Error,
    FuelExhausted,
    NoWellFoundedPlan,
    ParseError,
    PlanError,
    Signature,
    TermError,
    ValidationError,
    diagnose,
    gaps_to_set,
    mingle,
    mingle_fold,
    set_to_gaps,
    unmingle,
    unmingle_fold,
)

__all__ = [
    "CodeOutOfRange",
    "Codec",
    "Error",
    "FuelExhausted",
    "NoWellFoundedPlan",
    "ParseError",
    "PlanError",
    "Signature",
    "TermError",
    "ValidationError",
    "diagnose",
    "gaps_to_set",
    "mingle",
    "mingle_fold",
    "set_to_gaps",
    "unmingle",
    "unmingle_fold",
    "verify",
]


def verify(codec, max_size=6, max_code=10000, threads=0, fuel=None):
    """Run the adequacy check and return the report as a dict."""
    return _json.loads(codec.verify_json(max_size=max_size, max_code=max_code, threads=threads, fuel=fuel))
