"""Seeded random instances for fuzzing and property checks."""

from __future__ import annotations

import random

from .core import ConstantTable, CSet, Duple, Term, intern_constants
from .model import Model


def constants(n: int) -> ConstantTable:
    """A table ``c0 .. c{n-1}``."""
    return intern_constants([f"c{i}" for i in range(n)])


def random_mask(rng: random.Random, n: int) -> int:
    return rng.randrange(1, 1 << n)


def random_duple(rng: random.Random, table: ConstantTable) -> Duple:
    n = table.size
    return Duple(Term(CSet(random_mask(rng, n), n)), Term(CSet(random_mask(rng, n), n)))


def random_duples(rng: random.Random, table: ConstantTable, max_count: int) -> list[Duple]:
    return [random_duple(rng, table) for _ in range(rng.randint(0, max_count))]


def random_atomization(rng: random.Random, table: ConstantTable, max_atoms: int) -> Model:
    """A random atom set, closed under AS6 by adding the zero atom when needed."""
    n = table.size
    masks = {random_mask(rng, n) for _ in range(rng.randint(1, max_atoms))}
    covered = 0
    for m in masks:
        covered |= m
    if covered != table.full_mask:
        masks.add(table.full_mask)
    return Model(table, frozenset(masks))
