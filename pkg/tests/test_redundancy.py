import random

import pytest

from atomized import (
    GuardError,
    PreconditionError,
    freest_model,
    is_redundant,
    is_weakly_redundant,
    new_model,
    non_redundant_atoms,
    omega,
    pinning,
    reduce_atomization,
)
from atomized.core import Atom, CSet
from atomized.generate import constants, random_atomization, random_duples
from atomized.model import Model, freest_atoms, same_theory
from atomized.redundancy import (
    non_weakly_redundant_atoms,
    omega_masks,
    redundant_atoms,
    weakly_redundant_atoms,
)

from conftest import masks_to_sets, naive_omega, naive_weakly_redundant


def quotient_ab(t):
    return new_model(t, [t.atom("c"), t.atom("a", "b")])


def test_pinning_examples(abc):
    info = pinning(abc, abc.atom("a", "b"))
    assert info.pinning_term == abc.term("c")
    assert info.pinning_duples == (abc.duple("a", "c"), abc.duple("b", "c"))
    zero = pinning(abc, abc.zero_atom())
    assert zero.pinning_term is None and zero.pinning_duples == ()
    single = pinning(abc, abc.atom("a"))
    assert single.pinning_term == abc.term("b", "c")
    assert single.pinning_duples == (abc.duple("a", ["b", "c"]),)


def test_omega_examples(ab, abc):
    assert len(omega(freest_atoms(ab))) == 3
    assert omega(quotient_ab(abc)) == {abc.atom("c"), abc.atom("a", "b"), abc.zero_atom()}
    assert omega(new_model(ab, [ab.zero_atom()])) == {ab.zero_atom()}


def test_omega_matches_definition(rng):
    for _ in range(25):
        t = constants(rng.randint(1, 4))
        M = random_atomization(rng, t, 5)
        assert masks_to_sets(omega_masks(M)) == naive_omega(M)


def test_redundancy_examples(ab, abc):
    F = freest_atoms(ab)
    assert is_redundant(F, ab.atom("a", "b"))
    assert not is_redundant(F, ab.atom("a"))
    assert is_redundant(quotient_ab(abc), abc.zero_atom())
    assert is_weakly_redundant(F, ab.atom("a", "b"))
    Z = new_model(ab, [ab.zero_atom()])
    assert not is_weakly_redundant(Z, ab.zero_atom())


def test_redundancy_domain_error(abc):
    with pytest.raises(PreconditionError):
        is_redundant(quotient_ab(abc), abc.atom("a"))
    with pytest.raises(PreconditionError):
        is_weakly_redundant(quotient_ab(abc), abc.atom("a"))


def test_non_redundant_examples(ab, abc):
    assert non_redundant_atoms(freest_atoms(abc)) == {abc.atom(x) for x in "abc"}
    assert non_redundant_atoms(quotient_ab(abc)) == {abc.atom("c"), abc.atom("a", "b")}
    assert non_redundant_atoms(new_model(ab, [ab.zero_atom()])) == {ab.zero_atom()}


def test_reduce_examples(ab, abc):
    M = new_model(ab, [ab.atom("a"), ab.atom("b"), ab.atom("a", "b")])
    assert reduce_atomization(M).atoms == {ab.atom("a"), ab.atom("b")}
    F = freest_atoms(ab)
    assert reduce_atomization(F) == F
    Q = new_model(abc, [abc.atom("c"), abc.atom("a", "b"), abc.zero_atom()])
    assert reduce_atomization(Q).atoms == {abc.atom("c"), abc.atom("a", "b")}


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_weak_redundancy_matches_definition(n):
    rng = random.Random(n * 31)
    t = constants(n)
    for _ in range(10):
        M = freest_model(t, random_duples(rng, t, 4))
        om = omega_masks(M)
        om_sets = masks_to_sets(om)
        for m in om:
            phi = Atom(CSet(m, n))
            expected = naive_weakly_redundant(M, frozenset(phi.ucs), om_sets)
            assert is_weakly_redundant(M, phi, om=om) == expected
            assert is_redundant(M, phi, om=om) == expected


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_redundancy_partition_and_reduction(n):
    rng = random.Random(n)
    t = constants(n)
    for _ in range(10):
        M = random_atomization(rng, t, 6) if rng.random() < 0.5 else freest_model(
            t, random_duples(rng, t, 5)
        )
        om = omega(M)
        R, NR = redundant_atoms(M), non_redundant_atoms(M)
        assert R | NR == om and not R & NR
        assert weakly_redundant_atoms(M) == R
        assert non_weakly_redundant_atoms(M) == NR
        assert same_theory(Model.from_atoms(t, NR), M)
        reduced = reduce_atomization(M, debug=True)
        assert reduced.atoms == NR
        assert NR <= M.atoms


def test_reduction_canonical_across_atomizations(rng):
    for _ in range(20):
        t = constants(rng.randint(2, 5))
        R = random_duples(rng, t, 5)
        M = freest_model(t, R)
        shuffled = R[:]
        rng.shuffle(shuffled)
        N = freest_model(t, shuffled)
        full = Model.from_atoms(t, omega(M))
        assert same_theory(M, N) and same_theory(M, full)
        target = reduce_atomization(M)
        assert reduce_atomization(N) == target == reduce_atomization(full)


def test_omega_guard():
    with pytest.raises(GuardError):
        omega(freest_atoms(constants(21)))
    with pytest.raises(GuardError):
        omega(freest_atoms(constants(4)), guard=3)
