"""Atomized semilattices: models as sets of atoms over a finite constant set."""

from .core import (
    Atom,
    ConstantTable,
    CSet,
    Duple,
    Term,
    atom_join,
    intern_constants,
    wider_than,
)
from .crossing import freest_model, full_cross, full_cross_batch, full_cross_omega
from .decompose import Factor, factor_project, subdirect_factors, verify_subdirect
from .errors import (
    AxiomViolation,
    FormatError,
    GuardError,
    PreconditionError,
    SemilatticeError,
    TableMismatchError,
)
from .formats import Problem, hasse_dot, parse_model, parse_problem, serialize_model, serialize_problem
from .model import (
    Model,
    Theory,
    atom_le_term,
    discriminant,
    freer_or_as_free,
    is_compatible,
    lower_segment,
    model_sum,
    new_model,
    positive_theory,
    term_le,
)
from .oracle import OrderOracle, congruence_closure, oracle_equiv, oracle_le
from .redundancy import (
    PinningInfo,
    is_redundant,
    is_weakly_redundant,
    non_redundant_atoms,
    omega,
    pinning,
    reduce_atomization,
)

__version__ = "0.1.0"
