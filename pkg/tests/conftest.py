import itertools
import random

import pytest

from atomized import ConstantTable, Model, intern_constants
from atomized.core import iter_bits

ABC = intern_constants(["a", "b", "c"])
AB = intern_constants(["a", "b"])


# ---------------------------------------------------------------------------
# Naive reference implementations. They work from definitions on explicit
# Python sets and never call the bitset fast paths they are used to check.


def naive_lower(atoms, term):
    """Lower atomic segment as a set of frozensets of constant indices."""
    return {a for a in atoms if a & term}


def naive_atoms(M: Model):
    return {frozenset(iter_bits(m)) for m in M.masks}


def naive_terms(n):
    return [
        frozenset(c)
        for k in range(1, n + 1)
        for c in itertools.combinations(range(n), k)
    ]


def naive_order(atoms, n):
    """Set of pairs (s, t) of frozenset terms with s <= t."""
    terms = naive_terms(n)
    return {
        (s, t)
        for s in terms
        for t in terms
        if naive_lower(atoms, s) <= naive_lower(atoms, t)
    }


def naive_model_order(M: Model):
    return naive_order(naive_atoms(M), M.table.size)


def naive_compatible(M: Model, phi: frozenset) -> bool:
    atoms = naive_atoms(M)
    return naive_order(atoms | {phi}, M.table.size) == naive_order(atoms, M.table.size)


def naive_omega(M: Model):
    n = M.table.size
    return {phi for phi in naive_terms(n) if naive_compatible(M, phi)}


def naive_weakly_redundant(M: Model, phi: frozenset, om) -> bool:
    """phi can be dropped from the full atomization: the rest still covers C and spawns M."""
    rest = set(om) - {phi}
    covered = set().union(*rest) if rest else set()
    if covered != set(range(M.table.size)):
        return False
    return naive_order(rest, M.table.size) == naive_model_order(M)


def naive_congruence(n, seeds):
    """Smallest join-compatible equivalence on nonempty subsets containing ``seeds``.

    Fixpoint over an explicit relation, closing under s|u ~ t|u for every u.
    """
    terms = naive_terms(n)
    rel = {(t, t) for t in terms}
    for s, t in seeds:
        rel |= {(s, t), (t, s)}
    while True:
        new = set(rel)
        for (s, t) in rel:
            for u in terms:
                new.add((s | u, t | u))
        for (s, t) in list(new):
            for (x, y) in list(new):
                if t == x:
                    new.add((s, y))
        if new == rel:
            return rel
        rel = new


def masks_to_sets(masks):
    return {frozenset(iter_bits(m)) for m in masks}


@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.fixture
def abc() -> ConstantTable:
    return ABC


@pytest.fixture
def ab() -> ConstantTable:
    return AB


# ---------------------------------------------------------------------------
# Acceptance criteria report: one PASS/FAIL line per criterion.

_criteria: dict[str, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _criteria.setdefault(marker.args[0], []).append(report.outcome == "passed")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_criteria, key=lambda s: int(s.split()[0][2:])):
        verdict = "PASS" if all(_criteria[label]) else "FAIL"
        terminalreporter.write_line(f"{verdict}  {label}")
