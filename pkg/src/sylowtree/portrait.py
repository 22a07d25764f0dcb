"""Automorphisms of the depth-k regular binary rooted tree as activity bits.

A depth-k portrait stores one bit per internal vertex: levels 0..k-1, with
level l holding 2**l vertices numbered 1..2**l left to right. Bit 1 at a
vertex swaps the two subtrees hanging below it, wholesale. Leaves sit on
level k and are numbered 1..2**k left to right, so the leaf reached from the
root along the path x_1..x_k (0 = left) has number 1 + sum x_j * 2**(k-j).

The image of a leaf path under a portrait is computed bit by bit: the j-th
output bit is x_j flipped iff the vertex at the *original* prefix
x_1..x_(j-1) is active. Consequently, for the left action a*b (apply b
first) the labels combine as

    label_{a*b}(v) = label_b(v) XOR label_a(b(v)),

where b(v) is the image of the vertex v under b. Portraits are immutable
values; every operation here is a pure function.
"""

from __future__ import annotations

from typing import Iterable, Iterator, NamedTuple

from .perm import Permutation


class VertexAddress(NamedTuple):
    """A vertex v at (level, position), position 1-based left to right."""

    level: int
    position: int


class Portrait:
    """Activity bits of a tree automorphism, one bitmask per level.

    ``level_masks[l]`` has bit i set iff the vertex at level l, position
    i + 1 is active. Construct from explicit per-level bit sequences; the
    mask form is what the algebra below works on.
    """

    __slots__ = ("depth", "level_masks")

    def __init__(self, labels: Iterable[Iterable[int]]):
        rows = [tuple(int(b) for b in row) for row in labels]
        if not rows:
            raise ValueError("invalid depth: a portrait needs at least one level")
        for l, row in enumerate(rows):
            if len(row) != 1 << l:
                raise ValueError(f"level {l} must carry {1 << l} bits, got {len(row)}")
            if any(b not in (0, 1) for b in row):
                raise ValueError(f"level {l} has a non-bit label: {row!r}")
        self.depth: int = len(rows)
        self.level_masks: tuple[int, ...] = tuple(
            sum(b << i for i, b in enumerate(row)) for row in rows
        )

    @classmethod
    def from_masks(cls, depth: int, masks: Iterable[int]) -> "Portrait":
        if depth < 1:
            raise ValueError(f"invalid depth: {depth}")
        p = object.__new__(cls)
        p.depth = depth
        p.level_masks = tuple(masks)
        if len(p.level_masks) != depth:
            raise ValueError(f"expected {depth} level masks, got {len(p.level_masks)}")
        for l, m in enumerate(p.level_masks):
            if m < 0 or m >> (1 << l):
                raise ValueError(f"level {l} mask out of range: {m}")
        return p

    @property
    def labels(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple((m >> i) & 1 for i in range(1 << l))
            for l, m in enumerate(self.level_masks)
        )

    def bit(self, level: int, position: int) -> int:
        """Label at v_(level, position), position 1-based."""
        return (self.level_masks[level] >> (position - 1)) & 1

    def active_positions(self, level: int) -> tuple[int, ...]:
        """1-based positions of active vertices on a level."""
        m = self.level_masks[level]
        return tuple(i + 1 for i in range(1 << level) if (m >> i) & 1)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Portrait)
            and self.depth == other.depth
            and self.level_masks == other.level_masks
        )

    def __hash__(self) -> int:
        return hash((self.depth, self.level_masks))

    def __repr__(self) -> str:
        rows = ["".join(map(str, row)) for row in self.labels]
        return f"Portrait({self.depth}: {' '.join(rows)})"


def identity(k: int) -> Portrait:
    """The trivial automorphism: all labels zero."""
    if k < 1:
        raise ValueError(f"invalid depth: {k}")
    return Portrait.from_masks(k, (0,) * k)


def vertex_swap(k: int, vertex: tuple[int, int]) -> Portrait:
    """A single active vertex; swaps the two subtrees below it."""
    level, position = vertex
    if k < 1:
        raise ValueError(f"invalid depth: {k}")
    if not 0 <= level <= k - 1:
        if level == k:
            raise ValueError(f"level {k} is the leaf level and has no activity state")
        raise ValueError(f"level {level} out of range for depth {k}")
    if not 1 <= position <= 1 << level:
        raise ValueError(f"position {position} out of range on level {level}")
    masks = [0] * k
    masks[level] = 1 << (position - 1)
    return Portrait.from_masks(k, masks)


def _vertex_maps(a: Portrait) -> list[list[int]]:
    """0-based image arrays for every level 0..depth.

    maps[l][i] is the image position of the level-l vertex at position i;
    maps[depth] is the leaf action. Children inherit the parent image, with
    the side flipped at active parents.
    """
    maps: list[list[int]] = [[0]]
    for l in range(a.depth):
        mask = a.level_masks[l]
        prev = maps[-1]
        nxt = [0] * (2 << l)
        for i in range(1 << l):
            base = prev[i] << 1
            flip = (mask >> i) & 1
            nxt[2 * i] = base | flip
            nxt[2 * i + 1] = base | (1 - flip)
        maps.append(nxt)
    return maps


def vertex_image(a: Portrait, level: int, position: int) -> int:
    """Image (1-based) of vertex v_(level, position) under the automorphism.

    Walks the path from the root, flipping each step at active vertices on
    the original prefix addresses.
    """
    if not 0 <= level <= a.depth:
        raise ValueError(f"level {level} out of range for depth {a.depth}")
    if not 1 <= position <= 1 << level:
        raise ValueError(f"position {position} out of range on level {level}")
    pos = position - 1
    img = 0
    for l in range(level):
        orig_prefix = pos >> (level - l)
        step = (pos >> (level - 1 - l)) & 1
        flip = (a.level_masks[l] >> orig_prefix) & 1
        img = (img << 1) | (step ^ flip)
    return img + 1


def compose(a: Portrait, b: Portrait) -> Portrait:
    """Return a*b with (a*b)(x) = a(b(x)) on leaves."""
    if a.depth != b.depth:
        raise ValueError(f"incompatible depths: {a.depth} vs {b.depth}")
    bmaps = _vertex_maps(b)
    masks = []
    for l in range(a.depth):
        bm = b.level_masks[l]
        am = a.level_masks[l]
        img = bmaps[l]
        m = 0
        for i in range(1 << l):
            if ((bm >> i) ^ (am >> img[i])) & 1:
                m |= 1 << i
        masks.append(m)
    return Portrait.from_masks(a.depth, masks)


def inverse(a: Portrait) -> Portrait:
    """The inverse automorphism: labels pushed forward along the vertex action."""
    amaps = _vertex_maps(a)
    masks = []
    for l in range(a.depth):
        am = a.level_masks[l]
        img = amaps[l]
        m = 0
        for i in range(1 << l):
            if (am >> i) & 1:
                m |= 1 << img[i]
        masks.append(m)
    return Portrait.from_masks(a.depth, masks)


def conjugate(a: Portrait, by: Portrait) -> Portrait:
    """Return by * a * by^-1."""
    return compose(compose(by, a), inverse(by))


def to_permutation(a: Portrait) -> Permutation:
    """The action on the 2**k leaves, numbered 1..2**k left to right."""
    leaf = _vertex_maps(a)[a.depth]
    return Permutation((x + 1 for x in leaf), check=False)


def from_permutation(k: int, p: Permutation) -> Portrait:
    """Recover the portrait of a leaf permutation of a depth-k tree.

    Raises ValueError if the permutation does not respect the tree's block
    structure (i.e. is not an automorphism).
    """
    if k < 1:
        raise ValueError(f"invalid depth: {k}")
    if p.degree != 1 << k:
        raise ValueError(f"degree {p.degree} does not match depth {k}")
    img0 = [x - 1 for x in p.images]

    def recover(images: list[int], depth: int) -> list[int]:
        # returns flat masks [level 0, .., depth-1] for the sub-automorphism
        if depth == 0:
            if images != [0]:
                raise ValueError("not a tree automorphism")
            return []
        h = 1 << (depth - 1)
        first_targets = {x >= h for x in images[:h]}
        second_targets = {x >= h for x in images[h:]}
        if len(first_targets) != 1 or len(second_targets) != 1:
            raise ValueError("not a tree automorphism")
        root = 1 if first_targets.pop() else 0
        if second_targets.pop() != (root == 0):
            raise ValueError("not a tree automorphism")
        left = [x - root * h for x in images[:h]]
        right = [x - (1 - root) * h for x in images[h:]]
        sub_l = recover(left, depth - 1)
        sub_r = recover(right, depth - 1)
        masks = [root]
        for l in range(depth - 1):
            masks.append(sub_l[l] | (sub_r[l] << (1 << l)))
        return masks

    return Portrait.from_masks(k, recover(img0, k))


def level_index(a: Portrait, l: int) -> int:
    """Number of active vertices on level l."""
    if not 0 <= l <= a.depth - 1:
        raise ValueError(f"level {l} out of range for depth {a.depth}")
    return bin(a.level_masks[l]).count("1")


def restrict(a: Portrait, m: int) -> Portrait:
    """Keep levels 0..m-1, dropping the deeper labels."""
    if not 1 <= m <= a.depth:
        raise ValueError(f"restriction depth {m} out of range for depth {a.depth}")
    return Portrait.from_masks(m, a.level_masks[:m])


def vp_distance(a: Portrait) -> int | None:
    """Maximal tree distance between active vertices of the last label level.

    None when fewer than two vertices on level depth-1 are active. Two
    vertices at 0-based positions p, q on that level are 2*t apart, where t
    is the number of trailing path bits below their lowest common ancestor,
    i.e. the bit length of p XOR q.
    """
    last = a.level_masks[a.depth - 1]
    positions = [i for i in range(1 << (a.depth - 1)) if (last >> i) & 1]
    if len(positions) < 2:
        return None
    best = 0
    for i, p in enumerate(positions):
        for q in positions[i + 1 :]:
            best = max(best, 2 * (p ^ q).bit_length())
    return best


# -- text serialization -------------------------------------------------------
#
# Line 1: the depth k. Then one line of '0'/'1' characters per level, level l
# having 2**l characters, leftmost character = position 1.


def to_text(a: Portrait) -> str:
    lines = [str(a.depth)]
    for row in a.labels:
        lines.append("".join(map(str, row)))
    return "\n".join(lines) + "\n"


def from_text(text: str) -> Portrait:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty portrait text")
    try:
        k = int(lines[0])
    except ValueError:
        raise ValueError(f"first line must be the depth, got {lines[0]!r}") from None
    if k < 1:
        raise ValueError(f"invalid depth: {k}")
    if len(lines) != k + 1:
        raise ValueError(f"expected {k} label lines after the depth, got {len(lines) - 1}")
    rows = []
    for l, ln in enumerate(lines[1:]):
        if len(ln) != 1 << l or set(ln) - {"0", "1"}:
            raise ValueError(f"level {l} line must be {1 << l} bits, got {ln!r}")
        rows.append([int(c) for c in ln])
    return Portrait(rows)


# -- enumeration --------------------------------------------------------------


def all_portraits(k: int) -> Iterator[Portrait]:
    """Every depth-k portrait; 2**(2**k - 1) of them, so keep k small."""
    if k < 1:
        raise ValueError(f"invalid depth: {k}")

    def rec(level: int, masks: list[int]) -> Iterator[Portrait]:
        if level == k:
            yield Portrait.from_masks(k, masks)
            return
        for m in range(1 << (1 << level)):
            masks.append(m)
            yield from rec(level + 1, masks)
            masks.pop()

    yield from rec(0, [])


def even_portraits(k: int) -> Iterator[Portrait]:
    """Depth-k portraits acting evenly on leaves: even weight on the last level.

    Labels above the last level contribute even leaf permutations regardless,
    so this is exactly the maximal even-acting subgroup.
    """
    if k < 1:
        raise ValueError(f"invalid depth: {k}")
    upper_total = (1 << (k - 1)) - 1 if k > 1 else 0
    last_width = 1 << (k - 1)
    even_masks = [m for m in range(1 << last_width) if bin(m).count("1") % 2 == 0]

    def rec(level: int, masks: list[int]) -> Iterator[Portrait]:
        if level == k - 1:
            for m in even_masks:
                yield Portrait.from_masks(k, masks + [m])
            return
        for m in range(1 << (1 << level)):
            masks.append(m)
            yield from rec(level + 1, masks)
            masks.pop()

    yield from rec(0, [])
