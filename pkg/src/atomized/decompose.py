"""Subdirect decomposition into two-element semilattices, one per nonzero atom."""

from __future__ import annotations

from dataclasses import dataclass

from .core import Atom, CSet, Term, mask_key
from .errors import PreconditionError, TableMismatchError
from .model import ENUMERATION_GUARD, Model, check_guard, lower_table


@dataclass(frozen=True)
class Factor:
    atom: Atom

    def __post_init__(self) -> None:
        if self.atom.is_zero():
            raise PreconditionError("the zero atom does not index a factor")


def subdirect_factors(M: Model) -> list[Factor]:
    """One factor per atom of ``M`` other than the zero atom, in canonical order."""
    full = M.table.full_mask
    n = M.table.size
    factors = [Factor(Atom(CSet(m, n))) for m in M.sorted_masks if m != full]
    if not factors:
        raise PreconditionError("trivial model (every duple positive) has no factors")
    return factors


def factor_project(f: Factor, t: Term) -> int:
    """1 iff the factor's atom lies under ``t``."""
    if f.atom.width != t.width:
        raise TableMismatchError("factor and term are bound to different tables")
    return 1 if f.atom.mask & t.mask else 0


def element_tuples(M: Model) -> dict[int, tuple[int, ...]]:
    """Map each term mask to its tuple of factor values."""
    factors = [f.atom.mask for f in subdirect_factors(M)]
    return {
        t: tuple(1 if a & t else 0 for a in factors)
        for t in sorted(M.table.all_term_masks(), key=mask_key)
    }


def verify_subdirect(M: Model, guard: int | None = None) -> bool:
    """Check that the tuple map is injective on elements and order-preserving both ways."""
    check_guard(M.table, guard, ENUMERATION_GUARD, "subdirect verification")
    tuples = element_tuples(M)
    lower = lower_table(M)
    terms = list(tuples)
    for s in terms:
        ts, ls = tuples[s], lower[s]
        for t in terms:
            tt = tuples[t]
            le_model = ls & ~lower[t] == 0
            le_tuple = all(x <= y for x, y in zip(ts, tt))
            if le_model != le_tuple:
                return False
            same_element = le_model and lower[t] & ~ls == 0
            if same_element != (ts == tt):
                return False
    # every factor must be onto {0, 1}
    for k in range(len(next(iter(tuples.values())))):
        values = {tup[k] for tup in tuples.values()}
        if values != {0, 1}:
            return False
    return True
