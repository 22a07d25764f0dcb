import itertools
import random

import pytest

from oracles import parity_by_inversions, random_one_line
from sylowtree.perm import (
    Permutation,
    compose,
    conjugate,
    cycle_type,
    double,
    element_order,
    embed_block,
    format_cycles,
    format_one_line,
    identity,
    inverse,
    parity,
    parse_cycles,
    parse_one_line,
)


def test_compose_transposition_squares_to_identity():
    t = parse_cycles("(1 2)", degree=2)
    assert compose(t, t) == identity(2)


def test_compose_identity_laws():
    rng = random.Random(1)
    for _ in range(50):
        p = Permutation(random_one_line(9, rng))
        assert compose(p, identity(9)) == p
        assert compose(identity(9), p) == p


def test_compose_degree_mismatch():
    with pytest.raises(ValueError):
        compose(identity(3), identity(4))


def test_compose_is_left_action():
    # (a * b)(x) = a(b(x))
    a = parse_cycles("(1 2 3)", degree=3)
    b = parse_cycles("(2 3)", degree=3)
    assert compose(a, b)(2) == a(b(2)) == 1


def test_element_order_examples():
    assert element_order(parse_cycles("(1 2 3 4)", degree=4)) == 4
    assert element_order(identity(5)) == 1
    assert element_order(parse_cycles("(1 2)(3 4 5)", degree=5)) == 6


def test_inverse_random_samples():
    rng = random.Random(2)
    for _ in range(1000):
        p = Permutation(random_one_line(10, rng))
        assert compose(p, inverse(p)) == identity(10)
        assert compose(inverse(p), p) == identity(10)


def test_parity_examples():
    assert parity(identity(8)) == 0
    assert parity(parse_cycles("(3 4)", degree=4)) == 1
    assert parity(parse_cycles("(1 5)(2 6)(3 7)(4 8)", degree=8)) == 0


def test_parity_matches_inversion_oracle():
    rng = random.Random(3)
    for _ in range(500):
        images = random_one_line(11, rng)
        assert parity(Permutation(images)) == parity_by_inversions(images)


def test_parity_homomorphism():
    rng = random.Random(4)
    for _ in range(10_000):
        a = Permutation(random_one_line(8, rng))
        b = Permutation(random_one_line(8, rng))
        assert parity(compose(a, b)) == parity(a) ^ parity(b)


def test_cycle_type_examples():
    assert cycle_type(identity(8)) == (1,) * 8
    assert cycle_type(parse_cycles("(1 5)(2 6)(3 7)(4 8)", degree=8)) == (2, 2, 2, 2)
    assert cycle_type(parse_cycles("(1 2)(7 8)", degree=8)) == (2, 2, 1, 1, 1, 1)


def test_cycle_type_conjugation_invariant():
    rng = random.Random(5)
    for _ in range(1000):
        a = Permutation(random_one_line(9, rng))
        g = Permutation(random_one_line(9, rng))
        assert cycle_type(conjugate(a, g)) == cycle_type(a)


def test_double_examples():
    assert double(parse_cycles("(1 2)", degree=2)) == parse_cycles("(1 3)(2 4)", degree=4)
    assert double(identity(5)) == identity(10)


def test_double_always_even():
    rng = random.Random(6)
    for _ in range(1000):
        p = Permutation(random_one_line(7, rng))
        assert parity_by_inversions(double(p).images) == 0


def test_double_is_injective_homomorphism():
    s4 = [Permutation(images) for images in itertools.permutations(range(1, 5))]
    images = {double(p) for p in s4}
    assert len(images) == len(s4)
    for a in s4:
        for b in s4:
            assert double(compose(a, b)) == compose(double(a), double(b))


def test_embed_block_examples():
    assert embed_block(parse_cycles("(1 2)", degree=2), 4, 6) == parse_cycles("(5 6)", degree=6)
    assert embed_block(identity(3), 2, 8) == identity(8)


def test_embed_block_disjoint_blocks_commute():
    rng = random.Random(7)
    for _ in range(200):
        a = Permutation(random_one_line(4, rng))
        b = Permutation(random_one_line(3, rng))
        ea = embed_block(a, 0, 7)
        eb = embed_block(b, 4, 7)
        assert compose(ea, eb) == compose(eb, ea)


def test_embed_block_overflow():
    with pytest.raises(ValueError):
        embed_block(identity(4), 3, 6)


def test_cycle_notation_round_trip():
    rng = random.Random(8)
    for _ in range(300):
        p = Permutation(random_one_line(12, rng))
        assert parse_cycles(format_cycles(p), degree=12) == p
    assert format_cycles(identity(4)) == "()"
    assert parse_cycles("()", degree=4) == identity(4)


def test_one_line_round_trip():
    rng = random.Random(9)
    for _ in range(300):
        p = Permutation(random_one_line(12, rng))
        assert parse_one_line(format_one_line(p)) == p


def test_bad_one_line_rejected():
    with pytest.raises(ValueError):
        Permutation([1, 1, 3])
    with pytest.raises(ValueError):
        parse_one_line("2,3")


def test_bad_cycle_text_rejected():
    with pytest.raises(ValueError):
        parse_cycles("(1 2", degree=3)
    with pytest.raises(ValueError):
        parse_cycles("(1 1)", degree=3)
