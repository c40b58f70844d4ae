"""Equivalence and redundancy of lexicographic revision sequences."""

from .formula import (
    And, Clause, Cnf, Const, EnumerationCapError, FALSE, Formula, FormulaSyntaxError, Iff,
    Implies, Literal, Model, Not, Or, TRUE, UnboundVariableError, Var, cnf_to_formula, conj,
    disj, enumerate_models, evaluate, formula_as_cnf, is_horn, max_vars, parse_formula,
    rename, size, to_cnf, to_cnf_equivalent, to_text, var_order, variables,
)
from .semantics import (
    AlphabetMismatch, Order, RevisionSequence, Verdict, Witness, common_alphabet, compare,
    equivalent_bruteforce, leq, leq_formula, q_conjunction, redundant_last_by_conjunctions,
    truth_vector,
)
from .solver import (
    DimacsError, SolveResult, SolverBudgetExceeded, entails, export_dimacs, import_dimacs,
    is_satisfiable, solve, unit_propagate,
)
from .encoder import (
    DiffEncoding, EncodingContext, build_diff, check_equivalence, check_redundant_last,
    diff_cnf, diff_dimacs, equiv_formula, order_formula, pad, strict_formula,
)
from .horn import (
    HardnessInstance, NotHornError, build_hardness_instance, horn_entails, horn_equiv,
    horn_neg_equiv, horn_sat, horn_tautological, least_model, negativize, percent_remove,
    redundant_two_horn,
)
from .redundancy import (
    MinimizationReport, check_redundant_two, equivalent, is_redundant_at, minimize,
)

__version__ = "0.1.0"

__all__ = [
    "__version__", "And", "Clause", "Cnf", "Const", "EnumerationCapError", "FALSE", "Formula",
    "FormulaSyntaxError", "Iff", "Implies", "Literal", "Model", "Not", "Or", "TRUE",
    "UnboundVariableError", "Var", "cnf_to_formula", "conj", "disj", "enumerate_models",
    "evaluate", "formula_as_cnf", "is_horn", "max_vars", "parse_formula", "rename", "size",
    "to_cnf", "to_cnf_equivalent", "to_text", "var_order", "variables", "AlphabetMismatch",
    "Order", "RevisionSequence", "Verdict", "Witness", "common_alphabet", "compare",
    "equivalent_bruteforce", "leq", "leq_formula", "q_conjunction",
    "redundant_last_by_conjunctions", "truth_vector", "DimacsError", "SolveResult",
    "SolverBudgetExceeded", "entails", "export_dimacs", "import_dimacs", "is_satisfiable",
    "solve", "unit_propagate", "DiffEncoding", "EncodingContext", "build_diff",
    "check_equivalence", "check_redundant_last", "diff_cnf", "diff_dimacs", "equiv_formula",
    "order_formula", "pad", "strict_formula", "HardnessInstance", "NotHornError",
    "build_hardness_instance", "horn_entails", "horn_equiv", "horn_neg_equiv", "horn_sat",
    "horn_tautological", "least_model", "negativize", "percent_remove", "redundant_two_horn",
    "MinimizationReport", "check_redundant_two", "equivalent", "is_redundant_at", "minimize",
]
