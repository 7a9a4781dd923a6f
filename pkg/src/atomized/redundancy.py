"""Compatible atoms, pinning duples, redundancy and atomization reduction."""

from __future__ import annotations

from dataclasses import dataclass

from .core import Atom, ConstantTable, CSet, Duple, Term, iter_bits, mask_key
from .errors import GuardError, PreconditionError, TableMismatchError
from .model import Model, check_guard, compatible_mask, order_rows

# Largest |C| for which all 2^|C| - 1 candidate atoms are enumerated.
OMEGA_GUARD = 20
# Rough per-candidate cost in bytes when materializing the compatible set.
_BYTES_PER_CANDIDATE = 64
_MEMORY_LIMIT = 1 << 30


@dataclass(frozen=True)
class PinningInfo:
    atom: Atom
    pinning_term: Term | None
    pinning_duples: tuple[Duple, ...]


def pinning(table: ConstantTable, phi: Atom) -> PinningInfo:
    """The pinning term (join of the constants outside ``phi``) and its duples."""
    if not table.owns(phi):
        raise TableMismatchError("atom is not bound to this table")
    rest = table.full_mask & ~phi.mask
    if not rest:
        return PinningInfo(phi, None, ())
    n = table.size
    pin = Term(CSet(rest, n))
    duples = tuple(Duple(Term(CSet(1 << c, n)), pin) for c in iter_bits(phi.mask))
    return PinningInfo(phi, pin, duples)


def _omega_guard(M: Model, guard: int | None) -> None:
    check_guard(M.table, guard, OMEGA_GUARD, "omega enumeration")
    if (1 << M.table.size) * _BYTES_PER_CANDIDATE > _MEMORY_LIMIT:
        raise GuardError(f"omega enumeration for |C| = {M.table.size} needs more than 1 GiB")


def omega_masks(M: Model, guard: int | None = None) -> tuple[int, ...]:
    """Masks of all atoms compatible with ``M``, in canonical order."""
    _omega_guard(M, guard)
    found = [m for m in range(1, 1 << M.table.size) if compatible_mask(M, m)]
    return tuple(sorted(found, key=mask_key))


def omega(M: Model, guard: int | None = None) -> frozenset[Atom]:
    n = M.table.size
    return frozenset(Atom(CSet(m, n)) for m in omega_masks(M, guard))


def _in_omega(M: Model, phi: Atom, om: tuple[int, ...] | None) -> tuple[int, ...]:
    if not M.table.owns(phi):
        raise TableMismatchError("atom is not bound to the model's table")
    if om is None:
        om = omega_masks(M)
    if not compatible_mask(M, phi.mask):
        raise PreconditionError(
            "redundancy is only defined for atoms compatible with the model"
        )
    return om


def is_redundant(M: Model, phi: Atom, *, om: tuple[int, ...] | None = None) -> bool:
    """True iff ``phi`` is the join of other compatible atoms.

    ``om`` may carry a precomputed :func:`omega_masks` result.
    """
    om = _in_omega(M, phi, om)
    target = phi.mask
    union = 0
    for m in om:
        if m != target and m & ~target == 0:
            union |= m
    return union == target


def is_weakly_redundant(M: Model, phi: Atom, *, om: tuple[int, ...] | None = None) -> bool:
    """True iff every duple ``(c, t)`` that ``phi`` discriminates has another compatible discriminator.

    At finite C the pinning term is the hardest right-hand side, so only
    ``(c, T_phi)`` is checked for each ``c``. The zero atom has no pinning
    term; for it the condition reduces to the other compatible atoms covering
    every constant, which is what removing it from an atomization requires.
    """
    om = _in_omega(M, phi, om)
    info = pinning(M.table, phi)
    pin = info.pinning_term.mask if info.pinning_term is not None else 0
    for c in iter_bits(phi.mask):
        bit = 1 << c
        if not any(m != phi.mask and m & bit and not m & pin for m in om):
            return False
    return True


def _classify(M: Model, guard: int | None, test) -> tuple[list[int], list[int]]:
    om = omega_masks(M, guard)
    n = M.table.size
    yes, no = [], []
    for m in om:
        (yes if test(M, Atom(CSet(m, n)), om=om) else no).append(m)
    return yes, no


def _atoms(M: Model, masks: list[int]) -> frozenset[Atom]:
    n = M.table.size
    return frozenset(Atom(CSet(m, n)) for m in masks)


def redundant_atoms(M: Model, guard: int | None = None) -> frozenset[Atom]:
    return _atoms(M, _classify(M, guard, is_redundant)[0])


def non_redundant_atoms(M: Model, guard: int | None = None) -> frozenset[Atom]:
    return _atoms(M, _classify(M, guard, is_redundant)[1])


def weakly_redundant_atoms(M: Model, guard: int | None = None) -> frozenset[Atom]:
    return _atoms(M, _classify(M, guard, is_weakly_redundant)[0])


def non_weakly_redundant_atoms(M: Model, guard: int | None = None) -> frozenset[Atom]:
    return _atoms(M, _classify(M, guard, is_weakly_redundant)[1])


def reduce_atomization(M: Model, debug: bool = False, guard: int | None = None) -> Model:
    """Drop atoms that are joins of strictly narrower atoms of the same atomization.

    Candidates are visited widest first (ties by canonical order). With
    ``debug`` every removal is checked to leave the theory unchanged, which
    enumerates the theory and so is subject to ``guard``.
    """
    current = set(M.masks)
    before = order_rows(M, guard) if debug else None
    for m in sorted(M.masks, key=lambda x: (-x.bit_count(), mask_key(x)[1])):
        union = 0
        for other in current:
            if other != m and other & ~m == 0:
                union |= other
        if union != m:
            continue
        current.discard(m)
        if debug:
            after = order_rows(Model(M.table, frozenset(current)), guard)
            assert after == before, f"removing atom {m:#x} changed the theory"
    return Model(M.table, frozenset(current))
