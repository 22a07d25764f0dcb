"""Classification of tree automorphisms by their last-level activity.

The last label level splits into two halves of 2**(k-2) vertices. Elements
that are trivial above it and carry an odd number of active vertices in each
half are the cross-half pair swaps ("T"); relaxing the triviality gives the
combined elements ("C"), or combined generators ("CG") when the upper part
is a single standard swap. The checks below certify, by exhaustion at small
depth, the closure and parity barriers that make such elements unavoidable
in any generating set: T is not closed under products or even powers,
within-half elements never generate it, and reaching it takes an odd number
of C-or-T factors.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import portrait as pt
from .portrait import Portrait


@dataclass(frozen=True)
class ElementClass:
    is_level_stabilizer: bool
    first_half_count: int
    second_half_count: int
    klass: str  # one of "T", "C", "CG", "other"


def half_counts(a: Portrait) -> tuple[int, int]:
    """Active-vertex counts on the two halves of level depth-1."""
    if a.depth < 2:
        raise ValueError(f"depth must be at least 2, got {a.depth}")
    half = 1 << (a.depth - 2)
    mask = a.level_masks[a.depth - 1]
    first = bin(mask & ((1 << half) - 1)).count("1")
    second = bin(mask >> half).count("1")
    return first, second


def classify(a: Portrait) -> ElementClass:
    """Most specific label first: T needs triviality above the last level,
    CG needs the upper part to be a single standard swap, C only the odd/odd
    half counts."""
    first, second = half_counts(a)
    stabilizer = all(m == 0 for m in a.level_masks[: a.depth - 1])
    both_odd = first % 2 == 1 and second % 2 == 1
    if both_odd and stabilizer:
        klass = "T"
    elif both_odd and _restriction_is_single_swap(a):
        klass = "CG"
    elif both_odd:
        klass = "C"
    else:
        klass = "other"
    return ElementClass(stabilizer, first, second, klass)


def _restriction_is_single_swap(a: Portrait) -> bool:
    upper = a.level_masks[: a.depth - 1]
    active_levels = [l for l, m in enumerate(upper) if m]
    return len(active_levels) == 1 and upper[active_levels[0]] == 1


def type_t_portraits(k: int) -> list[Portrait]:
    """Every depth-k element trivial above the last level with odd/odd halves."""
    if k < 2:
        raise ValueError(f"depth must be at least 2, got {k}")
    half = 1 << (k - 2)
    out = []
    for m in range(1 << (1 << (k - 1))):
        first = bin(m & ((1 << half) - 1)).count("1")
        second = bin(m >> half).count("1")
        if first % 2 == 1 and second % 2 == 1:
            masks = [0] * (k - 1) + [m]
            out.append(Portrait.from_masks(k, masks))
    return out


def _portrait_closure(gens: list[Portrait], cap: int = 1 << 20) -> set[Portrait]:
    if not gens:
        raise ValueError("need at least one generator")
    k = gens[0].depth
    seen: set[Portrait] = {pt.identity(k)}
    frontier = [g for g in gens if g not in seen]
    seen.update(frontier)
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = pt.compose(x, g)
                if y not in seen:
                    seen.add(y)
                    new.append(y)
        if len(seen) > cap:
            raise RuntimeError(f"portrait closure exceeded cap {cap}")
        frontier = new
    return seen


def check_T_not_closed(k: int) -> bool:
    """No product of two odd/odd stabilizer elements, and no square, is one."""
    if k not in (3, 4):
        raise ValueError(f"exhaustive scan covers depths 3..4, got {k}")
    ts = type_t_portraits(k)
    for x in ts:
        if classify(pt.compose(x, x)).klass == "T":
            return False
        for y in ts:
            if classify(pt.compose(x, y)).klass == "T":
                return False
    return True


def check_distance_barrier(k: int) -> bool:
    """Stabilizer elements active within a single half never generate a
    cross-half pair: their closure contains nothing with odd/odd counts."""
    if k not in (3, 4):
        raise ValueError(f"exhaustive scan covers depths 3..4, got {k}")
    half = 1 << (k - 2)
    gens = []
    for m in range(1 << half):
        if bin(m).count("1") % 2 == 0 and m:
            gens.append(Portrait.from_masks(k, [0] * (k - 1) + [m]))
            gens.append(Portrait.from_masks(k, [0] * (k - 1) + [m << half]))
    generated = _portrait_closure(gens)
    if any(classify(x).klass == "T" for x in generated):
        return False
    from .sylow import tau  # local import: sylow builds on this module too

    return tau(k) not in generated


@dataclass(frozen=True)
class OddUsageReport:
    homomorphism_ok: bool
    word_scan_ok: bool
    scanned_length: int

    @property
    def ok(self) -> bool:
        return self.homomorphism_ok and self.word_scan_ok


def check_odd_usage(k: int = 3, max_factors: int = 6) -> OddUsageReport:
    """Reaching an odd/odd stabilizer element takes an odd number of odd/odd
    factors.

    Two certificates: the half-count parity pair is a homomorphism on the
    whole even-acting group (checked on every pair of elements), and a
    breadth-first scan over (product, factor-count-parity) states confirms
    that no word of bounded length lands on a cross-half pair swap with an
    even count.
    """
    if k != 3:
        raise ValueError(f"word-level exhaustion is sized for depth 3, got {k}")
    elements = list(pt.even_portraits(k))
    parities = {g: tuple(c % 2 for c in half_counts(g)) for g in elements}
    hom_ok = True
    for a in elements:
        for b in elements:
            c = pt.compose(a, b)
            expected = tuple((x + y) % 2 for x, y in zip(parities[a], parities[b]))
            if parities[c] != expected:
                hom_ok = False
                break
        if not hom_ok:
            break
    in_ct = {g: classify(g).klass in ("T", "C", "CG") for g in elements}
    is_t = {g: classify(g).klass == "T" for g in elements}
    states: set[tuple[Portrait, int]] = {(pt.identity(k), 0)}
    seen_products: set[tuple[Portrait, int]] = set()
    scan_ok = True
    for _ in range(max_factors):
        nxt: set[tuple[Portrait, int]] = set()
        for x, count in states:
            for g in elements:
                state = (pt.compose(x, g), (count + in_ct[g]) % 2)
                nxt.add(state)
                seen_products.add(state)
        states = nxt
    for x, count in seen_products:
        if is_t[x] and count == 0:
            scan_ok = False
            break
    return OddUsageReport(homomorphism_ok=hom_ok, word_scan_ok=scan_ok, scanned_length=max_factors)
