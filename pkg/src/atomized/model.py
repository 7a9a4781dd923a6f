"""Atomized semilattices over a finite constant table.

A model is a constant table plus a set of atoms. An atom lies under a term
exactly when its upper constant segment meets the term's constants, and
``s <= t`` holds exactly when every atom under ``s`` is also under ``t``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Iterator

from .core import Atom, ConstantTable, CSet, Duple, Term, iter_bits, mask_key
from .errors import AxiomViolation, GuardError, PreconditionError, TableMismatchError

# Largest |C| for which theories are enumerated (2^16 - 1 terms).
ENUMERATION_GUARD = 16


def check_guard(table: ConstantTable, guard: int | None, default: int, what: str) -> None:
    limit = default if guard is None else guard
    if table.size > limit:
        raise GuardError(
            f"{what} enumerates 2^{table.size} - 1 terms; |C| = {table.size} exceeds "
            f"the guard of {limit} (raise it with --guard, or use sampled checks)"
        )


@dataclass(frozen=True, eq=True)
class Model:
    """A semilattice spawned by a set of atoms.

    ``masks`` holds the atoms' upper constant segments as bitmasks; the
    constructor enforces that every constant has some atom below it.
    """

    table: ConstantTable
    masks: frozenset[int]

    def __post_init__(self) -> None:
        masks = frozenset(self.masks)
        object.__setattr__(self, "masks", masks)
        full = self.table.full_mask
        covered = 0
        for m in masks:
            if m <= 0 or m & ~full:
                raise PreconditionError(f"atom mask {m:#x} is empty or not bound to the table")
            covered |= m
        if covered != full:
            missing = self.table.names_of(full & ~covered)
            raise AxiomViolation(
                "constants with no atom below them: " + ", ".join(missing)
            )

    @classmethod
    def _trusted(cls, table: ConstantTable, masks: frozenset[int]) -> Model:
        """Skip validation; for callers whose output provably covers every constant."""
        self = object.__new__(cls)
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "masks", masks)
        return self

    @classmethod
    def from_atoms(cls, table: ConstantTable, atoms: Iterable[Atom]) -> Model:
        masks = []
        for a in atoms:
            if not table.owns(a):
                raise TableMismatchError(f"atom {a} is not bound to this table")
            masks.append(a.mask)
        return cls(table, frozenset(masks))

    @cached_property
    def atoms(self) -> frozenset[Atom]:
        n = self.table.size
        return frozenset(Atom(CSet(m, n)) for m in self.masks)

    @cached_property
    def sorted_masks(self) -> tuple[int, ...]:
        return tuple(sorted(self.masks, key=mask_key))

    @cached_property
    def constant_index(self) -> tuple[int, ...]:
        """For each constant, the bitset (over ``sorted_masks``) of atoms below it."""
        index = [0] * self.table.size
        for pos, m in enumerate(self.sorted_masks):
            bit = 1 << pos
            for c in iter_bits(m):
                index[c] |= bit
        return tuple(index)

    def lower_bits(self, term_mask: int) -> int:
        """Atoms below a term, as a bitset over ``sorted_masks``."""
        index = self.constant_index
        bits = 0
        for c in iter_bits(term_mask):
            bits |= index[c]
        return bits

    def __len__(self) -> int:
        return len(self.masks)

    def __repr__(self) -> str:
        shown = ", ".join(
            "{" + ",".join(self.table.names_of(m)) + "}" for m in self.sorted_masks[:8]
        )
        more = "" if len(self.masks) <= 8 else f", ... ({len(self.masks)} atoms)"
        return f"Model([{shown}{more}])"


def _require(table: ConstantTable, *values: Atom | Term | Duple) -> None:
    for v in values:
        if not table.owns(v):
            raise TableMismatchError(f"{v!r} is not bound to a table of size {table.size}")


def new_model(table: ConstantTable, atoms: Iterable[Atom], auto_zero: bool = False) -> Model:
    """Build a model, adjoining the zero atom if ``auto_zero`` and some constant is uncovered."""
    atoms = list(atoms)
    _require(table, *atoms)
    masks = {a.mask for a in atoms}
    if auto_zero:
        covered = 0
        for m in masks:
            covered |= m
        if covered != table.full_mask:
            masks.add(table.full_mask)
    return Model(table, frozenset(masks))


def freest_atoms(table: ConstantTable) -> Model:
    """The freest model over ``table``, atomized by one singleton atom per constant."""
    return Model(table, frozenset(1 << i for i in range(table.size)))


def atom_le_term(phi: Atom, t: Term) -> bool:
    if phi.width != t.width:
        raise TableMismatchError("atom and term are bound to different tables")
    return phi.mask & t.mask != 0


def lower_segment(M: Model, t: Term) -> frozenset[Atom]:
    _require(M.table, t)
    n = M.table.size
    return frozenset(Atom(CSet(m, n)) for m in M.masks if m & t.mask)


def le_masks(M: Model, s: int, t: int) -> bool:
    """``s <= t`` on raw term masks."""
    for m in M.masks:
        if m & s and not m & t:
            return False
    return True


def term_le(M: Model, s: Term, t: Term) -> bool:
    _require(M.table, s, t)
    return le_masks(M, s.mask, t.mask)


def holds(M: Model, r: Duple) -> bool:
    """True iff the duple is positive in ``M``."""
    return term_le(M, r.left, r.right)


def discriminant(M: Model, r: Duple) -> frozenset[Atom]:
    _require(M.table, r)
    n = M.table.size
    left, right = r.left.mask, r.right.mask
    return frozenset(Atom(CSet(m, n)) for m in M.masks if m & left and not m & right)


def compatible_mask(M: Model, phi: int) -> bool:
    full = M.table.full_mask
    if phi == full:
        return True
    pin = full ^ phi
    index = M.constant_index
    pin_lower = M.lower_bits(pin)
    # phi is compatible iff no pinning duple (c, T_phi) is positive.
    for c in iter_bits(phi):
        if index[c] & ~pin_lower == 0:
            return False
    return True


def is_compatible(M: Model, phi: Atom) -> bool:
    """True iff adding ``phi`` to ``M``'s atoms changes no duple."""
    _require(M.table, phi)
    return compatible_mask(M, phi.mask)


def model_sum(M: Model, N: Model) -> Model:
    if M.table != N.table:
        raise TableMismatchError("model_sum needs models over the same constants")
    return Model(M.table, M.masks | N.masks)


def lower_table(M: Model) -> list[int]:
    """Lower-segment bitsets for every term mask ``1..2^|C|-1`` (index 0 unused)."""
    n = M.table.size
    index = M.constant_index
    table = [0] * (1 << n)
    for t in range(1, 1 << n):
        low = t & -t
        table[t] = table[t ^ low] | index[low.bit_length() - 1]
    return table


def order_rows(M: Model, guard: int | None = None) -> tuple[int, ...]:
    """Row ``s`` is the bitset of term masks ``t`` with ``s <= t`` (row 0 is empty).

    Two models over one table have the same theory iff their rows are equal.
    """
    check_guard(M.table, guard, ENUMERATION_GUARD, "theory enumeration")
    lower = lower_table(M)
    terms = range(1, len(lower))
    rows = [0]
    for s in terms:
        ls = lower[s]
        row = 0
        for t in terms:
            if ls & ~lower[t] == 0:
                row |= 1 << t
        rows.append(row)
    return tuple(rows)


def same_theory(M: Model, N: Model, guard: int | None = None) -> bool:
    if M.table != N.table:
        raise TableMismatchError("models over different constants")
    return order_rows(M, guard) == order_rows(N, guard)


def iter_duples(table: ConstantTable) -> Iterator[Duple]:
    """Every duple over nonempty term sets, in canonical order."""
    n = table.size
    terms = [Term(CSet(m, n)) for m in sorted(table.all_term_masks(), key=mask_key)]
    for s, t in product(terms, repeat=2):
        yield Duple(s, t)


@dataclass(frozen=True)
class Theory:
    positives: frozenset[Duple]
    negatives: frozenset[Duple]

    def __contains__(self, r: Duple) -> bool:
        return r in self.positives


def positive_theory(M: Model, guard: int | None = None) -> Theory:
    """Classify every duple over the nonempty subsets of C as positive or negative."""
    rows = order_rows(M, guard)
    pos, neg = [], []
    for r in iter_duples(M.table):
        (pos if rows[r.left.mask] >> r.right.mask & 1 else neg).append(r)
    return Theory(frozenset(pos), frozenset(neg))


def freer_or_as_free(M: Model, N: Model, guard: int | None = None) -> bool:
    """True iff every duple negative in ``N`` is negative in ``M``."""
    if M.table != N.table:
        raise TableMismatchError("models over different constants")
    rows_m = order_rows(M, guard)
    rows_n = order_rows(N, guard)
    # M <= relation must be contained in N's.
    return all(rm & ~rn == 0 for rm, rn in zip(rows_m, rows_n))


def model_classes(M: Model, guard: int | None = None) -> list[list[int]]:
    """Distinct elements of ``M`` as lists of term masks, in canonical order.

    Each class lists its members canonically; classes are ordered by their
    first (minimal) member.
    """
    check_guard(M.table, guard, ENUMERATION_GUARD, "element enumeration")
    lower = lower_table(M)
    groups: dict[int, list[int]] = {}
    for t in sorted(range(1, len(lower)), key=mask_key):
        groups.setdefault(lower[t], []).append(t)
    return sorted(groups.values(), key=lambda g: mask_key(g[0]))
