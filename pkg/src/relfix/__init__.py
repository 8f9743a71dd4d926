"""Certification and Picard iteration for Meir-Keeler maps on relational metric spaces."""

from .certifier import CertificationReport, Verdict, certify_theorem2, mk_modulus_table
from .comparison import AlteringPair, ComparisonFunction, Linear, Ratio, StepTable
from .metric import (
    AffineMap,
    FiniteCarrier,
    FiniteMap,
    Functional,
    IntervalCarrier,
    IntervalRelation,
    MetricInstance,
)
from .picard import iterate, verify_gsp
from .relations import FiniteRelation, PreconditionError
from .scenario import Scenario, ScenarioError, parse_scenario, render_scenario

__all__ = [
    "AffineMap",
    "AlteringPair",
    "CertificationReport",
    "ComparisonFunction",
    "FiniteCarrier",
    "FiniteMap",
    "FiniteRelation",
    "Functional",
    "IntervalCarrier",
    "IntervalRelation",
    "Linear",
    "MetricInstance",
    "PreconditionError",
    "Ratio",
    "Scenario",
    "ScenarioError",
    "StepTable",
    "Verdict",
    "certify_theorem2",
    "iterate",
    "mk_modulus_table",
    "parse_scenario",
    "render_scenario",
    "verify_gsp",
]
