"""Constant interning and the set-of-constants algebra.

Every set of constants (the constants of a term, the upper constant segment of
an atom) is a :class:`CSet`: a Python integer used as a bitmask over the dense
indices of a :class:`ConstantTable`, plus the width of that table.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Iterator, Sequence

from .errors import FormatError, PreconditionError, TableMismatchError

NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_key(mask: int) -> tuple[int, tuple[int, ...]]:
    """Canonical ordering key: size first, then the sorted index tuple."""
    members = tuple(iter_bits(mask))
    return (len(members), members)


@dataclass(frozen=True, slots=True)
class CSet:
    """A subset of ``0..width-1``."""

    mask: int
    width: int

    def __post_init__(self) -> None:
        if self.mask < 0 or self.mask >> self.width:
            raise PreconditionError(
                f"mask {self.mask:#x} has members outside 0..{self.width - 1}"
            )

    @classmethod
    def of(cls, indices: Iterable[int], width: int) -> CSet:
        mask = 0
        for i in indices:
            if not 0 <= i < width:
                raise PreconditionError(f"index {i} outside 0..{width - 1}")
            mask |= 1 << i
        return cls(mask, width)

    @classmethod
    def full(cls, width: int) -> CSet:
        return cls((1 << width) - 1, width)

    def _check(self, other: CSet) -> None:
        if self.width != other.width:
            raise TableMismatchError(
                f"sets over universes of size {self.width} and {other.width}"
            )

    def __or__(self, other: CSet) -> CSet:
        self._check(other)
        return CSet(self.mask | other.mask, self.width)

    def __and__(self, other: CSet) -> CSet:
        self._check(other)
        return CSet(self.mask & other.mask, self.width)

    def __sub__(self, other: CSet) -> CSet:
        self._check(other)
        return CSet(self.mask & ~other.mask, self.width)

    def __invert__(self) -> CSet:
        return CSet(((1 << self.width) - 1) ^ self.mask, self.width)

    def __le__(self, other: CSet) -> bool:
        self._check(other)
        return self.mask & ~other.mask == 0

    def __lt__(self, other: CSet) -> bool:
        return self <= other and self.mask != other.mask

    def __ge__(self, other: CSet) -> bool:
        return other <= self

    def __gt__(self, other: CSet) -> bool:
        return other < self

    def __contains__(self, index: object) -> bool:
        return isinstance(index, int) and index >= 0 and bool(self.mask >> index & 1)

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def isdisjoint(self, other: CSet) -> bool:
        self._check(other)
        return self.mask & other.mask == 0

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return mask_key(self.mask)


@dataclass(frozen=True, slots=True)
class Atom:
    """An atom, identified by its upper constant segment ``ucs``."""

    ucs: CSet

    def __post_init__(self) -> None:
        if not self.ucs:
            raise PreconditionError("an atom needs a nonempty upper constant segment")

    @property
    def mask(self) -> int:
        return self.ucs.mask

    @property
    def width(self) -> int:
        return self.ucs.width

    def is_zero(self) -> bool:
        """True for the zero atom, the one lying under every constant."""
        return self.ucs.mask == (1 << self.ucs.width) - 1

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return self.ucs.sort_key()


@dataclass(frozen=True, slots=True)
class Term:
    """A term, i.e. the join of the constants in ``cset``."""

    cset: CSet

    def __post_init__(self) -> None:
        if not self.cset:
            raise PreconditionError("a term must mention at least one constant")

    @property
    def mask(self) -> int:
        return self.cset.mask

    @property
    def width(self) -> int:
        return self.cset.width

    def join(self, other: Term) -> Term:
        return Term(self.cset | other.cset)

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return self.cset.sort_key()


@dataclass(frozen=True, slots=True)
class Duple:
    """An ordered pair of terms, read as ``left <= right``."""

    left: Term
    right: Term

    def __post_init__(self) -> None:
        if self.left.width != self.right.width:
            raise TableMismatchError("duple terms are bound to different tables")

    @property
    def width(self) -> int:
        return self.left.width

    def sort_key(self) -> tuple:
        return (self.left.sort_key(), self.right.sort_key())


@dataclass(frozen=True)
class ConstantTable:
    """Interned constant names; position in ``names`` is the constant's index."""

    names: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.names:
            raise FormatError("a constant table needs at least one constant")
        seen: set[str] = set()
        for name in self.names:
            if not isinstance(name, str) or not name:
                raise FormatError(f"invalid constant name {name!r}")
            if name in seen:
                raise FormatError(f"duplicate constant name {name!r}")
            seen.add(name)
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(self.names)})

    @property
    def size(self) -> int:
        return len(self.names)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.names)) - 1

    def __len__(self) -> int:
        return len(self.names)

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise FormatError(f"undeclared constant {name!r}") from None

    def cset(self, names: Iterable[str]) -> CSet:
        return CSet.of((self.index(n) for n in names), self.size)

    def from_mask(self, mask: int) -> CSet:
        return CSet(mask, self.size)

    def atom(self, *names: str) -> Atom:
        return Atom(self.cset(names))

    def term(self, *names: str) -> Term:
        return Term(self.cset(names))

    def duple(self, left: str | Sequence[str], right: str | Sequence[str]) -> Duple:
        """Build a duple; each side is one name or a sequence of names."""
        if isinstance(left, str):
            left = (left,)
        if isinstance(right, str):
            right = (right,)
        return Duple(self.term(*left), self.term(*right))

    def zero_atom(self) -> Atom:
        return Atom(CSet.full(self.size))

    def names_of(self, s: CSet | Atom | Term | int) -> list[str]:
        mask = s if isinstance(s, int) else s.mask
        return [self.names[i] for i in iter_bits(mask)]

    def all_term_masks(self) -> range:
        """Masks of every nonempty subset of the constants."""
        return range(1, 1 << self.size)

    def owns(self, s: CSet | Atom | Term | Duple) -> bool:
        return s.width == self.size


def intern_constants(names: Sequence[str]) -> ConstantTable:
    """Build a constant table, indexing names in input order."""
    names = tuple(names)
    for name in names:
        if not isinstance(name, str) or not NAME_RE.match(name):
            raise FormatError(f"invalid constant name {name!r}")
    return ConstantTable(names)


def atom_join(atoms: Sequence[Atom]) -> Atom:
    """The atom whose upper constant segment is the union of the inputs'."""
    if not atoms:
        raise PreconditionError("atom_join needs at least one atom")
    width = atoms[0].width
    if any(a.width != width for a in atoms):
        raise TableMismatchError("atoms are bound to different tables")
    return Atom(CSet(reduce(lambda m, a: m | a.mask, atoms, 0), width))


def wider_than(phi: Atom, psi: Atom) -> bool:
    """True iff ``phi``'s upper constant segment strictly contains ``psi``'s."""
    return phi.ucs > psi.ucs
