"""Invariants of Artin-Schreier curves: road map, Table 1, isomorphism test."""

import json

from . import _asinv
from ._asinv import BudgetExceeded, DomainError, InputError, VerificationError, suite_names

__all__ = [
    "BudgetExceeded",
    "DomainError",
    "InputError",
    "VerificationError",
    "describe",
    "iso",
    "roadmap",
    "suite_names",
    "table1",
    "verify",
]


def describe(p, orders):
    """Genus, p-rank, D and dimension of the component."""
    return json.loads(_asinv.describe(p, list(orders)))


def roadmap(p, orders, ring=False, seed=1, timing=True):
    """Report for one prime and pole partition (same schema as the CLI JSON)."""
    return json.loads(_asinv.roadmap(p, list(orders), ring, seed, timing))


def table1(timing=True):
    return json.loads(_asinv.table1(timing))


def iso(a, b):
    return json.loads(_asinv.iso(a, b))


def verify(suite, seed=1):
    return json.loads(_asinv.verify(suite, seed))
