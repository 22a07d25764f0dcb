import math
import random

import pytest

from oracles import random_one_line
from sylowtree import portrait as pt
from sylowtree import sylow
from sylowtree.engine import (
    ClosureCapExceeded,
    GeneratingSet,
    GroupTable,
    StabilizerChain,
    closure,
    contains,
    derived_length,
    derived_subgroup,
    frattini_2group,
    is_normal,
    order_report,
    order_schreier_sims,
    quotient_structure,
    rank,
    span,
    squares_subgroup,
    table_lines,
)
from sylowtree.perm import Permutation, compose, identity, inverse, parse_cycles


def gens_of(*cycle_strings, degree):
    return GeneratingSet(
        degree, tuple(parse_cycles(s, degree=degree) for s in cycle_strings)
    )


# -- closure ---------------------------------------------------------------------


def test_closure_single_transposition():
    table = closure(gens_of("(1 2)", degree=2), cap=10)
    assert len(table) == 2
    assert identity(2) in table


def test_closure_orders_of_tree_groups(group_table_3, group_table_4):
    assert len(group_table_3) == 64
    assert len(group_table_4) == 16384


def test_closure_cap_exceeded_reports_partial():
    with pytest.raises(ClosureCapExceeded) as exc:
        closure(gens_of("(1 2)", "(1 2 3 4 5 6 7)", degree=7), cap=100)
    assert exc.value.partial_count > 100


def test_closure_contains_inverses_and_products(group_table_3):
    elems = group_table_3.sorted_elements()
    for x in elems[::7]:
        assert inverse(x) in group_table_3
        for y in elems[::7]:
            assert compose(x, y) in group_table_3


def test_small_table_validates():
    closure(gens_of("(1 2)(3 4)", "(1 3)(2 4)", degree=4), cap=10).validate()


def test_table_lines_sorted(group_table_3):
    lines = table_lines(group_table_3)
    assert lines == sorted(lines)
    assert len(lines) == 64
    assert lines[0] == "1,2,3,4,5,6,7,8"


def test_group_table_rejects_missing_identity():
    with pytest.raises(ValueError):
        GroupTable(2, [parse_cycles("(1 2)", degree=2)], gens_of("(1 2)", degree=2))


# -- stabilizer chain ---------------------------------------------------------------


def test_chain_single_transposition():
    assert order_schreier_sims(gens_of("(1 2)", degree=2)) == 2


def test_chain_matches_closure_small(group_table_4):
    assert order_schreier_sims(sylow.s_beta(4)) == len(group_table_4)
    assert order_schreier_sims(sylow.s_beta(3)) == 64


def test_chain_large_orders():
    assert order_schreier_sims(sylow.s_beta(5)) == 1 << 30


def test_chain_on_symmetric_group():
    assert order_schreier_sims(gens_of("(1 2)", "(1 2 3 4 5 6)", degree=6)) == math.factorial(6)


def test_chain_invariants():
    chain = StabilizerChain(sylow.s_beta(4))
    assert math.prod(chain.orbit_sizes) == chain.order() == 1 << 14
    assert len(chain.base) == len(chain.orbit_sizes)
    for g in chain.strong_generators():
        assert chain.sift(g).is_identity()


def test_chain_membership(group_table_3):
    chain = StabilizerChain(sylow.s_beta(3))
    for x in group_table_3.sorted_elements()[::5]:
        assert x in chain
    assert parse_cycles("(1 2)", degree=8) not in chain


def test_contains_dispatch(group_table_3):
    assert contains(group_table_3, identity(8))
    assert not contains(group_table_3, parse_cycles("(1 2)", degree=8))
    assert contains(group_table_3, pt.to_permutation(sylow.tau_ij(3, 2, 3)))
    chain = StabilizerChain(sylow.s_beta(3))
    assert contains(chain, pt.to_permutation(sylow.tau_ij(3, 2, 3)))
    with pytest.raises(ValueError):
        contains(group_table_3, identity(4))


def test_chain_identity_only_group():
    assert order_schreier_sims(GeneratingSet(3, (identity(3),))) == 1


# -- normality ------------------------------------------------------------------------


def test_w_normal_in_tree_group(group_table_3):
    assert is_normal(sylow.w_subgroup_gens(3), group_table_3)


def test_trivial_subgroup_normal(group_table_3):
    trivial = GeneratingSet(8, (identity(8),))
    assert is_normal(trivial, group_table_3)


def test_b_complement_not_normal(group_table_3):
    assert not is_normal(sylow.b_subgroup_gens(3), group_table_3)


def test_is_normal_requires_subgroup(group_table_3):
    with pytest.raises(ValueError):
        is_normal(gens_of("(1 2)", degree=8), group_table_3)


# -- derived / squares / frattini ------------------------------------------------------


def test_frattini_of_elementary_abelian_is_trivial():
    g2 = closure(sylow.s_beta(2))
    assert len(frattini_2group(g2)) == 1


def test_frattini_order_depth_3(group_table_3):
    assert len(frattini_2group(group_table_3)) == 64 // 8


def test_derived_inside_squares(group_table_3, group_table_4):
    for g in (closure(sylow.s_beta(2)), group_table_3, group_table_4):
        assert derived_subgroup(g).elements <= squares_subgroup(g).elements


def test_derived_matches_all_pairs_bruteforce(group_table_3):
    # independent oracle: the subgroup generated by every commutator
    g2 = closure(sylow.s_beta(2))
    for g in (g2, group_table_3):
        elems = g.sorted_elements()
        commutators = {
            compose(compose(a, b), compose(inverse(a), inverse(b)))
            for a in elems
            for b in elems
        }
        brute = span(g.degree, commutators)
        assert derived_subgroup(g).elements == brute.elements


def test_frattini_not_defined_for_non_2group():
    s3 = closure(gens_of("(1 2)", "(1 2 3)", degree=3))
    with pytest.raises(ValueError):
        frattini_2group(s3)


def test_rank_values(group_table_3, group_table_4):
    assert rank(closure(sylow.s_beta(2))) == 2
    assert rank(group_table_3) == 3
    assert rank(group_table_4) == 4


def test_derived_length(group_table_3):
    assert derived_length(closure(sylow.s_beta(2))) == 1
    trivial = closure(GeneratingSet(2, (identity(2),)))
    assert derived_length(trivial) == 0
    # recompute the series by hand and compare step counts
    steps = 0
    current = group_table_3
    while len(current) > 1:
        current = derived_subgroup(current)
        steps += 1
    assert derived_length(group_table_3) == steps


def test_quotient_structure(group_table_3):
    f = frattini_2group(group_table_3)
    q = quotient_structure(group_table_3, f)
    assert q.coset_count == 8
    assert q.exponent == 2
    whole = quotient_structure(group_table_3, group_table_3)
    assert whole.coset_count == 1
    assert whole.exponent == 1


def test_quotient_requires_normal(group_table_3):
    b = closure(sylow.b_subgroup_gens(3))
    with pytest.raises(ValueError):
        quotient_structure(group_table_3, b)


def test_lagrange_for_computed_subgroups(group_table_3):
    for sub in (
        frattini_2group(group_table_3),
        derived_subgroup(group_table_3),
        squares_subgroup(group_table_3),
        closure(sylow.w_subgroup_gens(3)),
        closure(sylow.b_subgroup_gens(3)),
    ):
        assert len(group_table_3) % len(sub) == 0
        assert sub.elements <= group_table_3.elements


# -- frattini vs maximal subgroups (independent oracle) ----------------------------------


def _subgroup_lattice(table):
    """All subgroups as bitmasks over the sorted element list."""
    elems = table.sorted_elements()
    n = len(elems)
    index = {e: i for i, e in enumerate(elems)}
    mul = [[index[compose(a, b)] for b in elems] for a in elems]
    id_idx = index[identity(table.degree)]

    def close_mask(seed_mask):
        cur = seed_mask | (1 << id_idx)
        members = [i for i in range(n) if (cur >> i) & 1]
        frontier = list(members)
        while frontier:
            new = []
            for x in frontier:
                row = mul[x]
                for y in members:
                    for z in (row[y], mul[y][x]):
                        if not (cur >> z) & 1:
                            cur |= 1 << z
                            new.append(z)
            members.extend(new)
            frontier = new
        return cur

    subgroups = {close_mask(1 << i) for i in range(n)}
    queue = list(subgroups)
    while queue:
        h = queue.pop()
        for i in range(n):
            if not (h >> i) & 1:
                k = close_mask(h | (1 << i))
                if k not in subgroups:
                    subgroups.add(k)
                    queue.append(k)
    return elems, subgroups


def test_frattini_is_intersection_of_maximals(group_table_3):
    for table in (closure(sylow.s_beta(2)), group_table_3):
        elems, subgroups = _subgroup_lattice(table)
        full = (1 << len(elems)) - 1
        proper = [s for s in subgroups if s != full]
        maximal = [
            s for s in proper if not any(s != t and (s | t) == t for t in proper)
        ]
        inter = full
        for m in maximal:
            inter &= m
        expected = {elems[i] for i in range(len(elems)) if (inter >> i) & 1}
        assert frattini_2group(table).elements == expected


def test_burnside_basis_consistency(group_table_3):
    # over a pool of candidate triples: generating the group is equivalent to
    # generating the Frattini quotient
    f = frattini_2group(group_table_3)
    q_order = len(group_table_3) // len(f)
    pool = list(
        dict.fromkeys(
            list(sylow.s_beta(3).generators)
            + list(sylow.w_subgroup_gens(3).generators)
            + list(sylow.b_subgroup_gens(3).generators)
            + [pt.to_permutation(sylow.tau_ij(3, i, j)) for i, j in ((1, 3), (2, 4), (2, 3))]
            + [compose(a, b) for a, b in zip(sylow.s_beta(3).generators, sylow.b_subgroup_gens(3).generators)]
        )
    )
    checked_generating = 0
    for i in range(len(pool)):
        for j in range(i + 1, len(pool)):
            for k in range(j + 1, len(pool)):
                triple = (pool[i], pool[j], pool[k])
                generates = len(span(8, triple)) == len(group_table_3)
                assert generates == (_quotient_span(triple, f) == q_order)
                checked_generating += generates
    assert checked_generating > 0


def _quotient_span(triple, f):
    # size of the subgroup generated in g/f, via coset representatives
    rep = {}

    def coset_key(x):
        return min(compose(x, m).images for m in f.elements)

    seen = {coset_key(identity(8))}
    frontier = [identity(8)]
    while frontier:
        new = []
        for x in frontier:
            for t in triple:
                y = compose(x, t)
                key = coset_key(y)
                if key not in seen:
                    seen.add(key)
                    new.append(y)
        frontier = new
    return len(seen)


# -- dual engine agreement -----------------------------------------------------------


def test_engines_agree_on_random_subgroups():
    rng = random.Random(17)
    for _ in range(20):
        gens = GeneratingSet(
            7, tuple(Permutation(random_one_line(7, rng)) for _ in range(2))
        )
        assert len(closure(gens)) == order_schreier_sims(gens)


def test_order_report_shape():
    rec = order_report("sbeta(3)", 8, 64, "closure")
    assert rec == {"name": "sbeta(3)", "degree": 8, "order": "64", "engine": "closure"}
