"""Realizability from discrete combinatory objects: PCAs, DCOs, the family
fibration, partitioned assemblies and their exact completion."""

from .dco import CartesianStructure, FiniteDco, FunctionalCompleteness, Graph, PcaDco, catalog, saturate
from .exlex import ExCompletion, ExMor, ExObj, RealizabilityTopos, rt
from .fam import Predicate, fiber_leq
from .pasm import PAsm, PAsmMor, PAsmObj
from .pca import NatPca, SKPca, compile_polynomial, parse_polynomial
from .report import Check, Report, Verdict
from .terms import Exhausted, evaluate, format_term, parse_term

__all__ = [
    "CartesianStructure", "FiniteDco", "FunctionalCompleteness", "Graph", "PcaDco", "catalog", "saturate",
    "ExCompletion", "ExMor", "ExObj", "RealizabilityTopos", "rt",
    "Predicate", "fiber_leq",
    "PAsm", "PAsmMor", "PAsmObj",
    "NatPca", "SKPca", "compile_polynomial", "parse_polynomial",
    "Check", "Report", "Verdict",
    "Exhausted", "evaluate", "format_term", "parse_term",
]
