"""Finite regular *-semigroups, their projection algebras and groupoid data."""
from .core import StarSemigroup, verify_star_laws, special_elements, green_data, projection_algebra_of
from .palg import ProjectionAlgebra, verify_axioms, kinyon
from .diagram import Partition, partition_monoid
from .constructions import SimpleGraph, SandwichMatrix, adjacency_semigroup, rees_star_semigroup, fp_semigroup
from .groupoid import OrderedGroupoid, groupoid_of, verify_ordered_groupoid
from .cpg import EvaluationTable, extract_evaluation, verify_evaluation, verify_coherence, reconstruct, roundtrip
from .report import StructuralError, VerificationReport

__all__ = [
    "StarSemigroup",
    "verify_star_laws",
    "special_elements",
    "green_data",
    "projection_algebra_of",
    "ProjectionAlgebra",
    "verify_axioms",
    "kinyon",
    "Partition",
    "partition_monoid",
    "SimpleGraph",
    "SandwichMatrix",
    "adjacency_semigroup",
    "rees_star_semigroup",
    "fp_semigroup",
    "OrderedGroupoid",
    "groupoid_of",
    "verify_ordered_groupoid",
    "EvaluationTable",
    "extract_evaluation",
    "verify_evaluation",
    "verify_coherence",
    "reconstruct",
    "roundtrip",
    "StructuralError",
    "VerificationReport",
]

__version__ = "0.1.0"
