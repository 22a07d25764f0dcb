"""Finite-group machinery over permutations.

Two order engines live here. The closure table enumerates every element by
breadth-first multiplication and is the desk-scale workhorse (caps at a few
million elements). The stabilizer chain computes exact big-integer orders of
much larger groups as a product of orbit sizes, and doubles as a membership
test via sifting. Wherever both run they must agree; the test suite holds
them to that.

On top of the tables: normality, derived and squares subgroups, the Frattini
subgroup of a 2-group (equal to the squares subgroup there), Burnside rank,
derived length and quotient shape.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .perm import Permutation, compose, identity, inverse

DEFAULT_CAP = 2_000_000


class ClosureCapExceeded(RuntimeError):
    """Raised when a closure outgrows its element cap."""

    def __init__(self, cap: int, partial_count: int):
        super().__init__(f"closure exceeded cap {cap}: at least {partial_count} elements")
        self.cap = cap
        self.partial_count = partial_count


@dataclass(frozen=True)
class GeneratingSet:
    """A named list of same-degree permutations."""

    degree: int
    generators: tuple[Permutation, ...]
    name: str | None = None

    def __post_init__(self):
        if not self.generators:
            raise ValueError("a generating set needs at least one element")
        for g in self.generators:
            if g.degree != self.degree:
                raise ValueError(f"generator degree {g.degree} != declared {self.degree}")

    def without(self, index: int) -> "GeneratingSet":
        gens = self.generators[:index] + self.generators[index + 1 :]
        if not gens:
            gens = (identity(self.degree),)
        return GeneratingSet(self.degree, gens, name=self.name)


class GroupTable:
    """A fully enumerated finite permutation group."""

    def __init__(self, degree: int, elements: Iterable[Permutation], origin: GeneratingSet):
        self.degree = degree
        self.elements: frozenset[Permutation] = frozenset(elements)
        self.origin = origin
        if identity(degree) not in self.elements:
            raise ValueError("a group table must contain the identity")
        if math.factorial(degree) % len(self.elements):
            raise ValueError(f"size {len(self.elements)} does not divide {degree}!")

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x: Permutation) -> bool:
        return x in self.elements

    def sorted_elements(self) -> list[Permutation]:
        return sorted(self.elements)

    def validate(self) -> None:
        """Exhaustively re-check closure and inverses; quadratic, test use only."""
        for x in self.elements:
            if inverse(x) not in self.elements:
                raise AssertionError(f"inverse of {x} missing")
            for y in self.elements:
                if compose(x, y) not in self.elements:
                    raise AssertionError(f"product {x} * {y} escapes the table")


def closure(gens: GeneratingSet, cap: int = DEFAULT_CAP) -> GroupTable:
    """The full subgroup generated, by breadth-first frontier multiplication.

    Deterministic: the frontier is expanded in lexicographic one-line order.
    Raises ClosureCapExceeded (with the partial count) if the group is
    larger than ``cap``.
    """
    if cap < 1:
        raise ValueError(f"cap must be positive, got {cap}")
    seen: set[Permutation] = {identity(gens.degree)}
    frontier = sorted(set(gens.generators) - seen)
    seen.update(frontier)
    if len(seen) > cap:
        raise ClosureCapExceeded(cap, len(seen))
    while frontier:
        new: set[Permutation] = set()
        for x in frontier:
            for g in gens.generators:
                y = compose(x, g)
                if y not in seen and y not in new:
                    new.add(y)
        if len(seen) + len(new) > cap:
            raise ClosureCapExceeded(cap, len(seen) + len(new))
        seen.update(new)
        frontier = sorted(new)
    return GroupTable(gens.degree, seen, gens)


def span(degree: int, elements: Iterable[Permutation], name: str | None = None,
         cap: int = DEFAULT_CAP) -> GroupTable:
    """Subgroup generated by an arbitrary element collection.

    Grows incrementally: elements already inside the running subgroup are
    skipped, so feeding in a whole group costs little more than membership
    checks.
    """
    table: set[Permutation] = {identity(degree)}
    used: list[Permutation] = []
    for x in sorted(set(elements)):
        if x in table:
            continue
        used.append(x)
        frontier = [x]
        table.add(x)
        while frontier:
            new = []
            for y in frontier:
                for g in used:
                    for z in (compose(y, g), compose(g, y)):
                        if z not in table:
                            table.add(z)
                            new.append(z)
            if len(table) > cap:
                raise ClosureCapExceeded(cap, len(table))
            frontier = new
    origin = GeneratingSet(degree, tuple(used) or (identity(degree),), name=name)
    return GroupTable(degree, table, origin)


# -- stabilizer chain ----------------------------------------------------------


class _Level:
    __slots__ = ("point", "gens", "inv_gens", "transversal", "inv_transversal",
                 "orbit", "checked")

    def __init__(self, point: int):
        self.point = point
        self.gens: list[tuple[int, ...]] = []
        self.inv_gens: list[tuple[int, ...]] = []
        # transversal[p] maps the base point to p; orbit keeps insertion order
        self.transversal: dict[int, tuple[int, ...]] = {}
        self.inv_transversal: dict[int, tuple[int, ...]] = {}
        self.orbit: list[int] = []
        self.checked: set[tuple[int, int]] = set()


def _mul(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    return tuple(a[x] for x in b)


def _inv(a: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


class StabilizerChain:
    """Base, transversals and strong generators of a permutation group.

    Built with the deterministic Schreier-Sims procedure; new base points are
    always the smallest point moved by the offending residue, so runs are
    reproducible. The group order is the product of the orbit sizes, exact at
    any size that fits in memory.
    """

    def __init__(self, gens: GeneratingSet):
        self.degree = gens.degree
        self.origin = gens
        self._identity = tuple(range(gens.degree))
        self._levels: list[_Level] = []
        for g in gens.generators:
            self._insert_generator(tuple(x - 1 for x in g.images))
        self._build()

    # construction ------------------------------------------------------

    def _new_level(self, g: tuple[int, ...]) -> None:
        point = min(i for i, x in enumerate(g) if x != i)
        level = _Level(point)
        level.transversal[point] = self._identity
        level.inv_transversal[point] = self._identity
        level.orbit.append(point)
        self._levels.append(level)

    def _insert_generator(self, g: tuple[int, ...]) -> None:
        """Place an external generator at every level whose base prefix it fixes."""
        if g == self._identity:
            return
        j = 0
        while j < len(self._levels) and g[self._levels[j].point] == self._levels[j].point:
            j += 1
        if j == len(self._levels):
            self._new_level(g)
        for m in range(j + 1):
            self._add_gen_at(m, g)

    def _add_gen_at(self, idx: int, g: tuple[int, ...]) -> None:
        level = self._levels[idx]
        level.gens.append(g)
        level.inv_gens.append(_inv(g))
        self._extend_orbit(idx)

    def _extend_orbit(self, idx: int) -> None:
        # existing transversal entries are never rewritten, so earlier
        # Schreier checks stay valid
        level = self._levels[idx]
        queue = list(level.orbit)
        while queue:
            p = queue.pop(0)
            up = level.transversal[p]
            for g, ginv in zip(level.gens, level.inv_gens):
                r = g[p]
                if r not in level.transversal:
                    level.transversal[r] = _mul(g, up)
                    level.inv_transversal[r] = _inv(level.transversal[r])
                    level.orbit.append(r)
                    queue.append(r)

    def _strip(self, g: tuple[int, ...], start: int) -> tuple[tuple[int, ...], int]:
        for j in range(start, len(self._levels)):
            level = self._levels[j]
            p = g[level.point]
            if p == level.point:
                continue
            if p not in level.transversal:
                return g, j
            g = _mul(level.inv_transversal[p], g)
        return g, len(self._levels)

    def _build(self) -> None:
        i = len(self._levels) - 1
        while i >= 0:
            level = self._levels[i]
            self._extend_orbit(i)
            restart = False
            for p in level.orbit:
                up = level.transversal[p]
                for gi, (g, _) in enumerate(zip(level.gens, level.inv_gens)):
                    if (p, gi) in level.checked:
                        continue
                    level.checked.add((p, gi))
                    schreier = _mul(self._levels[i].inv_transversal[g[p]], _mul(g, up))
                    if schreier == self._identity:
                        continue
                    residue, j = self._strip(schreier, i + 1)
                    if residue == self._identity:
                        continue
                    if j == len(self._levels):
                        self._new_level(residue)
                    for m in range(i + 1, j + 1):
                        self._add_gen_at(m, residue)
                    i = j
                    restart = True
                    break
                if restart:
                    break
            if not restart:
                i -= 1

    # queries -------------------------------------------------------------

    @property
    def base(self) -> list[int]:
        return [level.point + 1 for level in self._levels]

    @property
    def orbit_sizes(self) -> list[int]:
        return [len(level.orbit) for level in self._levels]

    def strong_generators(self) -> list[Permutation]:
        seen: set[tuple[int, ...]] = set()
        out = []
        for level in self._levels:
            for g in level.gens:
                if g not in seen:
                    seen.add(g)
                    out.append(Permutation((x + 1 for x in g), check=False))
        return out

    def order(self) -> int:
        return math.prod(len(level.orbit) for level in self._levels)

    def sift(self, x: Permutation) -> Permutation:
        """Residue after stripping through every level; identity iff member."""
        if x.degree != self.degree:
            raise ValueError(f"degree mismatch: {x.degree} vs {self.degree}")
        g = tuple(v - 1 for v in x.images)
        residue, _ = self._strip(g, 0)
        return Permutation((v + 1 for v in residue), check=False)

    def __contains__(self, x: Permutation) -> bool:
        return self.sift(x).is_identity()


def order_schreier_sims(gens: GeneratingSet) -> int:
    """Exact order of the generated group via a stabilizer chain."""
    return StabilizerChain(gens).order()


def contains(group: GroupTable | StabilizerChain, x: Permutation) -> bool:
    """Membership: set lookup for tables, sifting for chains."""
    if group.degree != x.degree:
        raise ValueError(f"degree mismatch: {group.degree} vs {x.degree}")
    return x in group


# -- subgroup operators --------------------------------------------------------


def is_normal(h_gens: GeneratingSet, g: GroupTable) -> bool:
    """Whether every g-conjugate of every h-generator stays in <h_gens>.

    Conjugates by every element of the table, per the literal definition;
    the table scale keeps that affordable.
    """
    if h_gens.degree != g.degree:
        raise ValueError(f"degree mismatch: {h_gens.degree} vs {g.degree}")
    h = closure(h_gens)
    if not h.elements <= g.elements:
        raise ValueError("generators do not lie inside the ambient group")
    for x in g.elements:
        x_inv = inverse(x)
        for s in h_gens.generators:
            if compose(compose(x, s), x_inv) not in h.elements:
                return False
    return True


def _normal_closure(seed: Iterable[Permutation], g: GroupTable, name: str) -> GroupTable:
    gens = sorted(set(seed) - {identity(g.degree)})
    table = span(g.degree, gens, name=name)
    conj_by = [(q, inverse(q)) for q in g.origin.generators]
    changed = True
    while changed:
        changed = False
        for x in list(table.origin.generators):
            for q, q_inv in conj_by:
                c = compose(compose(q, x), q_inv)
                if c not in table.elements:
                    gens = list(table.origin.generators) + [c]
                    table = span(g.degree, gens, name=name)
                    changed = True
    return table


def derived_subgroup(g: GroupTable) -> GroupTable:
    """Commutator subgroup: normal closure of generator commutators."""
    seed = []
    gens = g.origin.generators
    for a in gens:
        a_inv = inverse(a)
        for b in gens:
            seed.append(compose(compose(a, b), compose(a_inv, inverse(b))))
    return _normal_closure(seed, g, name="derived")


def squares_subgroup(g: GroupTable) -> GroupTable:
    """Subgroup generated by the squares of every element."""
    return span(g.degree, (compose(x, x) for x in g.elements), name="squares")


def frattini_2group(g: GroupTable) -> GroupTable:
    """Frattini subgroup of a 2-group: squares times commutators.

    For 2-groups the commutators already lie among products of squares; the
    equality is asserted rather than assumed.
    """
    if len(g) & (len(g) - 1):
        raise ValueError(f"not a 2-group: order {len(g)}")
    squares = squares_subgroup(g)
    derived = derived_subgroup(g)
    union = span(g.degree, squares.elements | derived.elements, name="frattini")
    if union.elements != squares.elements:
        raise AssertionError("squares subgroup is not Frattini-closed; not a 2-group?")
    return GroupTable(g.degree, union.elements, union.origin)


def rank(g: GroupTable) -> int:
    """Size of every minimal generating set, via the Frattini quotient."""
    f = frattini_2group(g)
    quotient = len(g) // len(f)
    r = quotient.bit_length() - 1
    if 1 << r != quotient:
        raise AssertionError(f"Frattini quotient {quotient} is not a power of 2")
    return r


def derived_length(g: GroupTable) -> int:
    """Steps of the derived series down to the trivial group."""
    length = 0
    current = g
    while len(current) > 1:
        current = derived_subgroup(current)
        length += 1
    return length


@dataclass(frozen=True)
class QuotientReport:
    coset_count: int
    exponent: int
    element_orders: tuple[int, ...]


def quotient_structure(g: GroupTable, n: GroupTable) -> QuotientReport:
    """Coset count and exponent of g/n; n must be normal in g."""
    if not n.elements <= g.elements:
        raise ValueError("not a subgroup of the ambient group")
    if not is_normal(n.origin, g):
        raise ValueError("subgroup is not normal")
    seen: set[Permutation] = set()
    orders = []
    for x in g.sorted_elements():
        if x in seen:
            continue
        seen.update(compose(x, m) for m in n.elements)
        y, m = x, 1
        while y not in n.elements:
            y = compose(y, x)
            m += 1
        orders.append(m)
    return QuotientReport(
        coset_count=len(g) // len(n),
        exponent=math.lcm(1, *orders),
        element_orders=tuple(sorted(orders)),
    )


# -- exports -------------------------------------------------------------------


def table_lines(g: GroupTable) -> list[str]:
    """Sorted one-line forms, one element per line, for external diffing."""
    return [",".join(map(str, x.images)) for x in g.sorted_elements()]


def order_report(name: str, degree: int, order: int, engine: str) -> dict:
    """The JSON-ready order record emitted by the CLI."""
    return {"name": name, "degree": degree, "order": str(order), "engine": engine}
