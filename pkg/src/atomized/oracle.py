"""Brute-force ground truth: the free semilattice quotiented by a congruence.

Elements of the free semilattice over C are the nonempty subsets of C, with
union as join. Each duple ``l <= r`` seeds the pair ``(r, l | r)``; the
smallest equivalence containing the seeds and closed under ``s ~ t  =>
s | u ~ t | u`` is computed with union-find. None of this touches atoms.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .core import ConstantTable, CSet, Duple, Term, mask_key
from .errors import TableMismatchError
from .model import Model, check_guard, lower_table

ORACLE_GUARD = 12


class UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


@dataclass(frozen=True)
class OrderOracle:
    """``class_of[m]`` is the representative mask of term mask ``m`` (index 0 unused)."""

    table: ConstantTable
    class_of: tuple[int, ...]

    def classes(self) -> list[list[int]]:
        groups: dict[int, list[int]] = {}
        for m in sorted(range(1, len(self.class_of)), key=mask_key):
            groups.setdefault(self.class_of[m], []).append(m)
        return sorted(groups.values(), key=lambda g: mask_key(g[0]))


def congruence_closure(
    table: ConstantTable, R: Sequence[Duple], guard: int | None = None
) -> OrderOracle:
    check_guard(table, guard, ORACLE_GUARD, "congruence closure")
    n = table.size
    size = 1 << n
    uf = UnionFind(size)
    work: deque[tuple[int, int]] = deque()
    for r in R:
        if r.width != n:
            raise TableMismatchError("duple is not bound to the oracle's table")
        right = r.right.mask
        work.append((right, r.left.mask | right))
    singles = [1 << c for c in range(n)]
    while work:
        s, t = work.popleft()
        if not uf.union(s, t):
            continue
        # Closing under single-constant joins closes under all joins.
        for c in singles:
            sc, tc = s | c, t | c
            if sc != tc:
                work.append((sc, tc))
    best: dict[int, int] = {}
    for m in sorted(range(1, size), key=mask_key):
        best.setdefault(uf.find(m), m)
    class_of = (0,) + tuple(best[uf.find(m)] for m in range(1, size))
    return OrderOracle(table, class_of)


def oracle_le_masks(O: OrderOracle, s: int, t: int) -> bool:
    return O.class_of[s | t] == O.class_of[t]


def oracle_le(O: OrderOracle, s: Term, t: Term) -> bool:
    """``s <= t`` iff ``s + t`` and ``t`` fall in the same class."""
    n = O.table.size
    if s.width != n or t.width != n:
        raise TableMismatchError("terms are not bound to the oracle's table")
    return oracle_le_masks(O, s.mask, t.mask)


def oracle_equiv(
    M: Model, O: OrderOracle, guard: int | None = None
) -> tuple[bool, Duple | None]:
    """Compare ``M``'s order with the oracle's on every pair of terms.

    Returns ``(True, None)`` on agreement, otherwise ``(False, r)`` with ``r``
    the first disagreeing duple in canonical order.
    """
    if M.table != O.table:
        raise TableMismatchError("model and oracle are over different constants")
    check_guard(M.table, guard, ORACLE_GUARD, "oracle comparison")
    n = M.table.size
    lower = lower_table(M)
    class_of = O.class_of
    terms = sorted(range(1, 1 << n), key=mask_key)
    for s in terms:
        ls = lower[s]
        for t in terms:
            if (ls & ~lower[t] == 0) != (class_of[s | t] == class_of[t]):
                return False, Duple(Term(CSet(s, n)), Term(CSet(t, n)))
    return True, None
