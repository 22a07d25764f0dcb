"""Generator families, order formulas and verification drivers for the
maximal 2-subgroups of symmetric and alternating groups.

The even-acting group of the depth-k tree is generated by the k-1 leftmost
single-vertex swaps together with one cross-half pair swap on the last label
level; that family has exactly k elements and the drivers below certify its
orders, its semidirect decomposition, the Frattini content and the
minimality of the generating set, each by explicit computation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import portrait as pt
from .engine import (
    GeneratingSet,
    GroupTable,
    StabilizerChain,
    closure,
    derived_subgroup,
    frattini_2group,
    is_normal,
    quotient_structure,
    rank,
    span,
    squares_subgroup,
)
from .perm import Permutation, compose, embed_block, identity, inverse, parity
from .portrait import Portrait


# -- generator families --------------------------------------------------------


def alpha(k: int, i: int) -> Portrait:
    """Single active vertex at the leftmost position of level i, depth k."""
    if not 0 <= i <= k - 2:
        raise ValueError(f"alpha index must lie in 0..{k - 2}, got {i}")
    return pt.vertex_swap(k, (i, 1))


def tau(k: int) -> Portrait:
    """Active vertices at the first and last position of level k-1."""
    if k < 2:
        raise ValueError(f"depth must be at least 2, got {k}")
    masks = [0] * k
    masks[k - 1] = 1 | (1 << ((1 << (k - 1)) - 1))
    return Portrait.from_masks(k, masks)


def generator_portraits(k: int) -> list[tuple[str, Portrait]]:
    """The k named generators: a0..a(k-2) and t."""
    named = [(f"a{i}", alpha(k, i)) for i in range(k - 1)]
    named.append(("t", tau(k)))
    return named


def s_beta(k: int) -> GeneratingSet:
    """The k generators as leaf permutations of degree 2**k."""
    gens = tuple(pt.to_permutation(p) for _, p in generator_portraits(k))
    return GeneratingSet(1 << k, gens, name=f"sbeta({k})")


def eval_word(k: int, word: list[str]) -> Portrait:
    """Evaluate a word over the named generators, leftmost applied last."""
    table = dict(generator_portraits(k))
    result = pt.identity(k)
    for name in word:
        if name not in table:
            raise ValueError(f"unknown generator {name!r} at depth {k}")
        result = pt.compose(result, table[name])
    return result


def _mover_word(k: int, src: int, dst: int) -> list[str]:
    # word over a1..a(k-2) whose vertex action maps first-half position src
    # to dst on level k-1, fixing the second half pointwise
    def digits(pos: int) -> list[str]:
        path = pos - 1
        width = k - 1
        return [f"a{t}" for t in range(1, width) if (path >> (width - 1 - t)) & 1]

    if src == dst:
        return []
    return digits(dst) + list(reversed(digits(src)))


def tau_ij_word(k: int, i: int, j: int) -> list[str]:
    """A word over a0..a(k-2), t whose value has active vertices exactly at
    positions i and j of level k-1.

    Cross-half pairs are conjugates of the seed element: the conjugator moves
    position 1 inside the first half and position 2**(k-1) inside the second
    half, picking single-vertex swaps by the binary digits of the targets.
    Same-half pairs are products of two cross-half elements, whose active
    sets combine by symmetric difference.
    """
    if k < 2:
        raise ValueError(f"depth must be at least 2, got {k}")
    half = 1 << (k - 2)
    full = 1 << (k - 1)
    if not (1 <= i < j <= full):
        raise ValueError(f"need 1 <= i < j <= {full}, got ({i}, {j})")
    if i <= half < j:
        conj = _mover_word(k, 1, i)
        second = _mover_word(k, half, j - half)
        if second:
            conj = conj + ["a0"] + second + ["a0"]
        return conj + ["t"] + list(reversed(conj))
    if j <= half:
        return tau_ij_word(k, i, full) + tau_ij_word(k, j, full)
    return tau_ij_word(k, 1, i) + tau_ij_word(k, 1, j)


def tau_ij(k: int, i: int, j: int) -> Portrait:
    """The pair swap at level-(k-1) positions i and j, built as a word in the
    standard generators."""
    return eval_word(k, tau_ij_word(k, i, j))


def w_subgroup_portraits(k: int) -> list[Portrait]:
    """Adjacent active pairs on level k-1: a basis of the even-weight space."""
    if k < 2:
        raise ValueError(f"depth must be at least 2, got {k}")
    out = []
    for i in range(1, 1 << (k - 1)):
        masks = [0] * k
        masks[k - 1] = 0b11 << (i - 1)
        out.append(Portrait.from_masks(k, masks))
    return out


def w_subgroup_gens(k: int) -> GeneratingSet:
    gens = tuple(pt.to_permutation(p) for p in w_subgroup_portraits(k))
    return GeneratingSet(1 << k, gens, name=f"w({k})")


def b_subgroup_gens(k: int) -> GeneratingSet:
    """The depth-k single-vertex swaps above the last level."""
    if k < 2:
        raise ValueError(f"depth must be at least 2, got {k}")
    gens = tuple(pt.to_permutation(alpha(k, i)) for i in range(k - 1))
    return GeneratingSet(1 << k, gens, name=f"b({k})")


# -- order formulas ------------------------------------------------------------


def nu2_factorial(n: int) -> int:
    """Exponent of 2 in n!, by summing the floor quotients."""
    if n < 0:
        raise ValueError(f"need n >= 0, got {n}")
    total = 0
    q = n >> 1
    while q:
        total += q
        q >>= 1
    return total


def syl2_order_Sn(n: int) -> int:
    """Order of a maximal 2-subgroup of the symmetric group of degree n."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    return 1 << nu2_factorial(n)


def syl2_order_An(n: int) -> int:
    """Order of a maximal 2-subgroup of the alternating group of degree n.

    Half the symmetric-group count once odd permutations exist; degrees 1
    and 2 give the trivial group.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if n < 3:
        return 1
    return 1 << (nu2_factorial(n) - 1)


@dataclass(frozen=True)
class BinaryDecomposition:
    n: int
    parts: tuple[int, ...]  # strictly decreasing exponents, sum of 2**e is n

    def blocks(self) -> list[int]:
        return [1 << e for e in self.parts]


def binary_decompose(n: int) -> BinaryDecomposition:
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    parts = tuple(e for e in range(n.bit_length() - 1, -1, -1) if (n >> e) & 1)
    return BinaryDecomposition(n, parts)


# -- block constructions ---------------------------------------------------------


def _tower_gens(k: int) -> list[Permutation]:
    # full wreath tower on 2**k points: one swap per level, leftmost vertex
    if k == 0:
        return []
    return [pt.to_permutation(pt.vertex_swap(k, (l, 1))) for l in range(k)]


def syl2_Sn_block_parts(n: int) -> list[GeneratingSet]:
    """Per-block generating sets of degree n, largest block first at offset 0."""
    decomp = binary_decompose(n)
    parts = []
    offset = 0
    for e in decomp.parts:
        block = 1 << e
        gens = [embed_block(g, offset, n) for g in _tower_gens(e)]
        if gens:
            parts.append(GeneratingSet(n, tuple(gens), name=f"block(2^{e}@{offset})"))
        offset += block
    return parts


def syl2_Sn_gens(n: int) -> GeneratingSet:
    """Generators of a maximal 2-subgroup of the symmetric group of degree n:
    the full wreath tower on each binary block."""
    parts = syl2_Sn_block_parts(n)
    gens: tuple[Permutation, ...] = tuple(g for part in parts for g in part.generators)
    if not gens:
        gens = (identity(n),)
    return GeneratingSet(n, gens, name=f"syl2_Sn({n})")


def boxtimes_gens(parts: list[GeneratingSet]) -> GeneratingSet:
    """Generators of the even-permutation subgroup of a product on disjoint
    blocks.

    Schreier generators for the index-2 parity kernel, with transversal
    {identity, t} for the first odd generator t. If every generator is even
    the product is returned unchanged.
    """
    if not parts:
        raise ValueError("need at least one part")
    degree = parts[0].degree
    all_gens: list[Permutation] = []
    support: set[int] = set()
    for part in parts:
        if part.degree != degree:
            raise ValueError(f"degree mismatch: {part.degree} vs {degree}")
        for g in part.generators:
            moved = set(g.moved_points())
            if moved & support:
                raise ValueError("parts overlap: blocks must be disjoint")
        support.update(m for g in part.generators for m in g.moved_points())
        all_gens.extend(part.generators)
    odd = next((g for g in all_gens if parity(g)), None)
    if odd is None:
        return GeneratingSet(degree, tuple(all_gens), name="boxtimes")
    t_inv = inverse(odd)
    kernel: list[Permutation] = []
    seen: set[Permutation] = {identity(degree)}
    for g in all_gens:
        if parity(g):
            candidates = (compose(g, t_inv), compose(odd, g))
        else:
            candidates = (g, compose(compose(odd, g), t_inv))
        for c in candidates:
            if c not in seen:
                seen.add(c)
                kernel.append(c)
    if not kernel:
        kernel = [identity(degree)]
    return GeneratingSet(degree, tuple(kernel), name="boxtimes")


def syl2_An_gens(n: int) -> GeneratingSet:
    """Generators of a maximal 2-subgroup of the alternating group of degree n:
    the even subgroup of the block product."""
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    gs = boxtimes_gens(syl2_Sn_block_parts(n))
    return GeneratingSet(gs.degree, gs.generators, name=f"syl2_An({n})")


def phi_iso(a: Permutation) -> Permutation:
    """Extend a degree-4k permutation by two points, appending the tail
    transposition exactly when the input is odd. The result is always even."""
    if a.degree % 4:
        raise ValueError(f"degree must be divisible by 4, got {a.degree}")
    n = a.degree + 2
    out = embed_block(a, 0, n)
    if parity(a):
        swap = list(range(1, n + 1))
        swap[n - 2], swap[n - 1] = n, n - 1
        out = compose(out, Permutation(swap, check=False))
    return out


def build_h_subgroup(n: int) -> GeneratingSet:
    """Paired generating sets matching each block generator with the
    compensating tail element.

    Degree 2 mod 4: each generator of the 2-subgroup on the first n-2 points
    is completed by the tail transposition when odd. Degree 3 mod 4: same,
    with a fixed transposition from the last three points. A sum of two
    powers of two: the even subgroup of the two-block product.
    """
    if n % 4 == 2 and n >= 6:
        base = syl2_Sn_gens(n - 2)
        gens = tuple(phi_iso(g) for g in base.generators)
        return GeneratingSet(n, gens, name=f"h({n})")
    if n % 4 == 3 and n >= 7:
        base = syl2_Sn_gens(n - 3)
        t = [x + 1 for x in range(n)]
        t[n - 3], t[n - 2] = n - 1, n - 2
        pair = Permutation(t, check=False)
        gens = tuple(
            compose(embed_block(g, 0, n), pair) if parity(g) else embed_block(g, 0, n)
            for g in base.generators
        )
        return GeneratingSet(n, gens, name=f"h({n})")
    decomp = binary_decompose(n)
    if len(decomp.parts) == 2 and decomp.parts[1] >= 1:
        gs = boxtimes_gens(syl2_Sn_block_parts(n))
        return GeneratingSet(gs.degree, gs.generators, name=f"h({n})")
    raise ValueError(
        f"no paired construction for degree {n}: need n = 2 or 3 mod 4, "
        "or a sum of two powers of two"
    )


# -- verification drivers --------------------------------------------------------


@dataclass(frozen=True)
class CheckRecord:
    """One verified identity: expected vs computed, both as decimal strings."""

    check: str
    param: int
    expected: str
    got: str
    ok: bool


def _record(check: str, param: int, expected, got) -> CheckRecord:
    return CheckRecord(check, param, str(expected), str(got), str(expected) == str(got))


@dataclass(frozen=True)
class SemidirectReport:
    k: int
    w_order: int
    b_order: int
    g_order: int
    w_normal: bool
    intersection_trivial: bool
    product_is_g: bool

    @property
    def ok(self) -> bool:
        return (
            self.w_normal
            and self.intersection_trivial
            and self.product_is_g
            and self.w_order * self.b_order == self.g_order
        )

    def records(self) -> list[CheckRecord]:
        return [
            _record("semidirect.w_order", self.k, 1 << ((1 << (self.k - 1)) - 1), self.w_order),
            _record("semidirect.b_order", self.k, 1 << ((1 << (self.k - 1)) - 1), self.b_order),
            _record("semidirect.g_order", self.k, 1 << ((1 << self.k) - 2), self.g_order),
            _record("semidirect.w_normal", self.k, True, self.w_normal),
            _record("semidirect.intersection_trivial", self.k, True, self.intersection_trivial),
            _record("semidirect.product_is_g", self.k, True, self.product_is_g),
        ]


def verify_semidirect(k: int) -> SemidirectReport:
    """Exhaustively decompose the even-acting group as complement times
    last-level kernel, for the table-scale depths."""
    if k not in (2, 3, 4):
        raise ValueError(f"exhaustive engine covers depths 2..4, got {k}")
    g = closure(s_beta(k))
    w_gens = w_subgroup_gens(k)
    w = closure(w_gens)
    b = closure(b_subgroup_gens(k))
    inter = w.elements & b.elements
    product = {compose(x, y) for x in b.elements for y in w.elements}
    return SemidirectReport(
        k=k,
        w_order=len(w),
        b_order=len(b),
        g_order=len(g),
        w_normal=is_normal(w_gens, g),
        intersection_trivial=inter == {identity(1 << k)},
        product_is_g=product == g.elements,
    )


@dataclass(frozen=True)
class MinimalityReport:
    k: int
    order: int
    expected_order: int
    rank: int
    coset_count: int
    quotient_exponent: int
    removal_orders: tuple[int, ...]

    @property
    def order_ok(self) -> bool:
        return self.order == self.expected_order

    @property
    def rank_ok(self) -> bool:
        return self.rank == self.k

    @property
    def quotient_ok(self) -> bool:
        return self.coset_count == 1 << self.k and self.quotient_exponent == 2

    @property
    def all_removals_proper(self) -> bool:
        return all(o < self.order for o in self.removal_orders)

    @property
    def ok(self) -> bool:
        return self.order_ok and self.rank_ok and self.quotient_ok and self.all_removals_proper

    def records(self) -> list[CheckRecord]:
        recs = [
            _record("minimal.order", self.k, self.expected_order, self.order),
            _record("minimal.rank", self.k, self.k, self.rank),
            _record("minimal.frattini_cosets", self.k, 1 << self.k, self.coset_count),
            _record("minimal.frattini_exponent", self.k, 2, self.quotient_exponent),
            _record("minimal.removals_proper", self.k, True, self.all_removals_proper),
        ]
        return recs


def verify_minimal(k: int) -> MinimalityReport:
    """Certify that the k standard generators are a minimal generating set:
    right order, Burnside rank k, and every one-generator removal lands in a
    proper subgroup."""
    if k not in (2, 3, 4):
        raise ValueError(f"exhaustive engine covers depths 2..4, got {k}")
    gs = s_beta(k)
    g = closure(gs)
    f = frattini_2group(g)
    q = quotient_structure(g, f)
    removals = tuple(len(closure(gs.without(i))) for i in range(len(gs.generators)))
    return MinimalityReport(
        k=k,
        order=len(g),
        expected_order=1 << ((1 << k) - 2),
        rank=rank(g),
        coset_count=q.coset_count,
        quotient_exponent=q.exponent,
        removal_orders=removals,
    )


@dataclass(frozen=True)
class FrattiniActionReport:
    k: int
    phi_order: int
    squares_order: int
    derived_order: int
    closures_coincide: bool
    indices_all_even: bool
    type_t_in_phi: int
    type_t_in_g: int

    @property
    def ok(self) -> bool:
        return (
            self.closures_coincide
            and self.indices_all_even
            and self.type_t_in_phi == 0
            and self.type_t_in_g > 0
        )

    def records(self) -> list[CheckRecord]:
        return [
            _record("frattini.order", self.k, 1 << ((1 << self.k) - 2 - self.k), self.phi_order),
            _record("frattini.closures_coincide", self.k, True, self.closures_coincide),
            _record("frattini.indices_all_even", self.k, True, self.indices_all_even),
            _record("frattini.type_t_in_phi", self.k, 0, self.type_t_in_phi),
            _record("frattini.has_type_t_outside", self.k, True, self.type_t_in_g > 0),
        ]


def verify_frattini_action(k: int) -> FrattiniActionReport:
    """Compute the Frattini subgroup three ways and audit its level activity:
    all level indices even, and none of the cross-half odd/odd elements."""
    from .classify import classify  # local import: classify builds on this module

    if k not in (3, 4):
        raise ValueError(f"exhaustive engine covers depths 3..4, got {k}")
    g = closure(s_beta(k))
    squares = squares_subgroup(g)
    derived = derived_subgroup(g)
    frattini = frattini_2group(g)
    union = span(g.degree, squares.elements | derived.elements)
    coincide = (
        squares.elements == frattini.elements
        and union.elements == frattini.elements
        and derived.elements <= frattini.elements
    )
    phi_portraits = [pt.from_permutation(k, x) for x in frattini.sorted_elements()]
    indices_even = all(
        pt.level_index(p, l) % 2 == 0 for p in phi_portraits for l in range(k)
    )
    t_in_phi = sum(classify(p).klass == "T" for p in phi_portraits)
    t_in_g = sum(
        classify(pt.from_permutation(k, x)).klass == "T" for x in g.elements
    )
    return FrattiniActionReport(
        k=k,
        phi_order=len(frattini),
        squares_order=len(squares),
        derived_order=len(derived),
        closures_coincide=coincide,
        indices_all_even=indices_even,
        type_t_in_phi=t_in_phi,
        type_t_in_g=t_in_g,
    )


@dataclass(frozen=True)
class OrderRelationsReport:
    n: int
    records_list: tuple[CheckRecord, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.records_list)

    def records(self) -> list[CheckRecord]:
        return list(self.records_list)


def verify_order_relations(n: int, group_level: bool | None = None) -> OrderRelationsReport:
    """Evaluate the order identities that apply to a given degree.

    Formula-level checks always run; group-level brute force (closure or
    chain orders, extension embedding, the parity-compensating isomorphism)
    runs for degrees up to 16 unless disabled.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if group_level is None:
        group_level = n <= 16
    recs: list[CheckRecord] = []
    if n % 2 == 1:
        recs.append(_record("relations.an_odd_collapse", n, syl2_order_An(n - 1), syl2_order_An(n)))
        recs.append(_record("relations.sn_odd_collapse", n, syl2_order_Sn(n - 1), syl2_order_Sn(n)))
    if n % 4 == 3 and n >= 7:
        recs.append(_record("relations.ratio_over_4k1", n, 2 * syl2_order_An(n - 2), syl2_order_An(n)))
    if n % 2 == 0:
        m = (n & -n).bit_length() - 1  # exponent of 2 in n
        recs.append(
            _record(
                "relations.index_over_Sn_minus1",
                n,
                1 << (m - 1),
                syl2_order_An(n) // syl2_order_Sn(n - 1),
            )
        )
    if n % 4 == 2 and n >= 6:
        recs.append(_record("relations.phi_order_match", n, syl2_order_Sn(n - 2), syl2_order_An(n)))
    if group_level:
        recs.append(
            _record(
                "relations.group_order_sn",
                n,
                syl2_order_Sn(n),
                StabilizerChain(syl2_Sn_gens(n)).order(),
            )
        )
        if n >= 3:
            recs.append(
                _record(
                    "relations.group_order_an",
                    n,
                    syl2_order_An(n),
                    StabilizerChain(syl2_An_gens(n)).order(),
                )
            )
        if n % 2 == 1 and n >= 5:
            recs.append(_record("relations.embeds_in_next", n, True, _embedding_check(n)))
        if n % 4 == 2 and n >= 6:
            recs.append(_record("relations.phi_group_iso", n, True, _phi_group_check(n)))
    return OrderRelationsReport(n=n, records_list=tuple(recs))


def _embedding_check(n: int) -> bool:
    # extend the degree-(n-1) group by a fixed point; same order and containment
    prev = closure(syl2_An_gens(n - 1))
    cur = closure(syl2_An_gens(n))
    if len(prev) != len(cur):
        return False
    extended = {embed_block(x, 0, n) for x in prev.elements}
    return extended <= cur.elements


def _phi_group_check(n: int) -> bool:
    # the parity-compensating extension is a bijective homomorphism onto the
    # even block group of degree n
    domain = closure(syl2_Sn_gens(n - 2))
    target = closure(syl2_An_gens(n))
    image = {phi_iso(x) for x in domain.elements}
    if image != target.elements:
        return False
    elements = domain.sorted_elements()
    if len(elements) <= 128:
        pairs = ((a, b) for a in elements for b in elements)
    else:
        import random

        rng = random.Random(20260810)
        pairs = (
            (rng.choice(elements), rng.choice(elements)) for _ in range(2000)
        )
    return all(
        phi_iso(compose(a, b)) == compose(phi_iso(a), phi_iso(b)) for a, b in pairs
    )
