"""Exact toolkit for phase-free ZH diagrams.

Builds, serializes and exactly contracts diagrams over the six
phase-free generators, compiles boolean formulae into counting
diagrams, and materializes the counting reductions (state equality,
entry containment, circuit-extraction hardness) as verifiable
constructions.
"""

from zhcalc.diagram import (
    Diagram,
    DiagramBuilder,
    GeneratorKind,
    compose,
    generator,
    identity,
    tensor,
    tensor_all,
)
from zhcalc.encode import GateBlock, counting_state, encode_formula, gate_gadget
from zhcalc.evaluate import BasisState, ExactMatrix, apply_basis, evaluate
from zhcalc.formula import (
    Formula,
    SatCompareInstance,
    count_sat,
    formula_vars,
    parse_formula,
)
from zhcalc.reductions import (
    DyadicK,
    StateEqInstance,
    build_circuit_extraction,
    build_contains_entry,
    build_state_eq,
)
from zhcalc.scalar import ExactScalar, sqrt2_pow
from zhcalc.solve import (
    compare_diagrams,
    is_zero,
    scalar_diagram,
    solve_contains_entry,
    solve_sat_compare,
    solve_state_eq,
)

__version__ = "0.1.0"

__all__ = [
    "BasisState",
    "Diagram",
    "DiagramBuilder",
    "DyadicK",
    "ExactMatrix",
    "ExactScalar",
    "Formula",
    "GateBlock",
    "GeneratorKind",
    "SatCompareInstance",
    "StateEqInstance",
    "apply_basis",
    "build_circuit_extraction",
    "build_contains_entry",
    "build_state_eq",
    "compare_diagrams",
    "compose",
    "count_sat",
    "counting_state",
    "encode_formula",
    "evaluate",
    "formula_vars",
    "gate_gadget",
    "generator",
    "identity",
    "is_zero",
    "parse_formula",
    "scalar_diagram",
    "solve_contains_entry",
    "solve_sat_compare",
    "solve_state_eq",
    "sqrt2_pow",
    "tensor",
    "tensor_all",
    "__version__",
]
