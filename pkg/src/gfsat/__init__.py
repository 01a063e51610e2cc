"""Decision procedure for polynomial constraint systems over finite fields.

The package decides conjunctions of clauses whose literals are polynomial
equations and disequations over a finite field, by model-constructing
search with theory propagation; conflicts are explained through projection
lemmas built from subresultant chains.  It ships exact field and sparse
polynomial arithmetic, a brute-force oracle, seeded benchmark generators,
and a command-line front end.
"""

from .engine import Config, Stats, Verdict, check_model, solve
from .field import Field, FieldElement, FieldError, extension_field, prime_field
from .formula import Clause, Constraint, Formula, Rel
from .oracle import brute_solve, check_weak_projection
from .parser import ParseError, parse, parse_file, render
from .poly import Polynomial

__version__ = "0.1.0"

__all__ = [
    "Clause",
    "Config",
    "Constraint",
    "Field",
    "FieldElement",
    "FieldError",
    "Formula",
    "ParseError",
    "Polynomial",
    "Rel",
    "Stats",
    "Verdict",
    "brute_solve",
    "check_model",
    "check_weak_projection",
    "extension_field",
    "parse",
    "parse_file",
    "prime_field",
    "render",
    "solve",
    "__version__",
]
