"""Full crossing of duples and construction of freest models."""

from __future__ import annotations

from typing import Sequence

from .core import ConstantTable, Duple
from .errors import TableMismatchError
from .model import Model, check_guard, freest_atoms
from .redundancy import OMEGA_GUARD, omega_masks


def _check(M: Model, r: Duple) -> None:
    if r.width != M.table.size:
        raise TableMismatchError("duple is not bound to the model's table")


def full_cross(M: Model, r: Duple) -> Model:
    """Make ``r`` positive while keeping every positive duple of ``M``.

    Atoms discriminating ``r`` are replaced by their joins with every atom
    below ``r.right``. The result is the freest model of ``M``'s positive
    theory plus ``r``.
    """
    _check(M, r)
    left, right = r.left.mask, r.right.mask
    kept: set[int] = set()
    hit: list[int] = []
    below_right: list[int] = []
    for m in M.masks:
        if m & right:
            below_right.append(m)
            kept.add(m)
        elif m & left:
            hit.append(m)
        else:
            kept.add(m)
    if not hit:
        return M
    for h in hit:
        kept.update(map(h.__or__, below_right))
    # every removed atom h leaves h | b behind, so coverage of C is preserved
    return Model._trusted(M.table, frozenset(kept))


def full_cross_batch(M: Model, R: Sequence[Duple]) -> Model:
    """Cross each duple of ``R`` in list order."""
    for r in R:
        M = full_cross(M, r)
    return M


def full_cross_omega(M: Model, R: Sequence[Duple], guard: int | None = None) -> Model:
    """Cross ``R`` at once: drop from the full atomization every atom discriminating some duple."""
    check_guard(M.table, guard, OMEGA_GUARD, "omega enumeration")
    for r in R:
        _check(M, r)
    pairs = [(r.left.mask, r.right.mask) for r in R]
    survivors = frozenset(
        m for m in omega_masks(M, guard)
        if not any(m & left and not m & right for left, right in pairs)
    )
    return Model(M.table, survivors)


def freest_model(table: ConstantTable, R: Sequence[Duple]) -> Model:
    """The freest model over ``table`` satisfying every duple of ``R``."""
    return full_cross_batch(freest_atoms(table), R)
