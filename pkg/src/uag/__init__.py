"""Exact equation solving over finite algebras and their truncated direct powers."""
from .algebra import (  # noqa: F401GROUP, MAGMA, MONOID, RING, FiniteAlgebra, PowerElement, Signature,
                      StructuralSubset, center, direct_power, direct_product, load_algebra,
                      magma_from_term, right_annihilator, save_algebra, support, validate_algebra)
from .constructions import (  # noqa: F401TheoremKind, VerificationReport, group_system, magma_system,
                            monoid_system, project_to_factor, ring_system, semilattice_system,
                            verify_theorem, witness_pair)
from .solver import (  # noqa: F401BudgetExceeded, SolutionSet, entails, equivalent, eval_term,
                     minimal_equivalent_prefix, solve)
from .terms import (  # noqa: F401App, Const, EqSystem, Equation, ParseError, Var, free_variables,
                    normalize_zero_mult, parse_equation, parse_system, parse_term, print_system,
                    print_term, substitute)
from . import zoo  # noqa: F401

__version__ = "0.1.0"
