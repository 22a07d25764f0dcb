"""Permutations of {1..n} in one-line form.

Composition is the left action throughout: ``compose(a, b)`` applies ``b``
first, then ``a``. Parity and cycle structure are computed from the one-line
form; the block embedding and the index-doubling map are the two gluing
operations used to assemble groups on unions of intervals.
"""

from __future__ import annotations

import math
import re
from typing import Iterable, Iterator


class Permutation:
    """A bijection of {1..n} stored as a tuple of images.

    ``p.images[i - 1]`` is the image of point ``i``; points are 1-based in
    the whole public interface. Instances are immutable, hashable and
    ordered by their one-line form, which gives element sets and exports a
    stable, reproducible order.
    """

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int], check: bool = True):
        self.images: tuple[int, ...] = tuple(images)
        if check and sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(self.images)}: {self.images!r}")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)!r})"

    def __str__(self) -> str:
        return format_cycles(self)

    def is_identity(self) -> bool:
        return all(img == i + 1 for i, img in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint cycles of length >= 2, each starting at its smallest point."""
        seen = [False] * len(self.images)
        out = []
        for i in range(1, len(self.images) + 1):
            if seen[i - 1] or self.images[i - 1] == i:
                continue
            cyc = [i]
            seen[i - 1] = True
            j = self.images[i - 1]
            while j != i:
                seen[j - 1] = True
                cyc.append(j)
                j = self.images[j - 1]
            out.append(tuple(cyc))
        return out

    def moved_points(self) -> Iterator[int]:
        return (i + 1 for i, img in enumerate(self.images) if img != i + 1)


def identity(n: int) -> Permutation:
    return Permutation(range(1, n + 1), check=False)


def compose(a: Permutation, b: Permutation) -> Permutation:
    """Return a*b, the permutation mapping x to a(b(x))."""
    if a.degree != b.degree:
        raise ValueError(f"degree mismatch: {a.degree} vs {b.degree}")
    img = a.images
    return Permutation((img[x - 1] for x in b.images), check=False)


def inverse(a: Permutation) -> Permutation:
    inv = [0] * a.degree
    for i, img in enumerate(a.images):
        inv[img - 1] = i + 1
    return Permutation(inv, check=False)


def conjugate(a: Permutation, by: Permutation) -> Permutation:
    """Return by * a * by^-1."""
    return compose(compose(by, a), inverse(by))


def element_order(a: Permutation) -> int:
    return math.lcm(1, *(len(c) for c in a.cycles()))


def parity(a: Permutation) -> int:
    """0 for even, 1 for odd; degree minus number of cycles, mod 2."""
    return sum(len(c) - 1 for c in a.cycles()) % 2


def cycle_type(a: Permutation) -> tuple[int, ...]:
    """Cycle lengths including fixed points, as a descending partition of n."""
    lengths = [len(c) for c in a.cycles()]
    lengths += [1] * (a.degree - sum(lengths))
    return tuple(sorted(lengths, reverse=True))


def double(a: Permutation) -> Permutation:
    """Spread a permutation of {1..m} over {1..2m} by pairing 2i-1, 2i.

    Point 2i-1 maps to 2a(i)-1 and point 2i to 2a(i); every moved point of
    the input contributes a pair of transpositions, so the result is always
    even.
    """
    img = [0] * (2 * a.degree)
    for i, target in enumerate(a.images, start=1):
        img[2 * i - 2] = 2 * target - 1
        img[2 * i - 1] = 2 * target
    return Permutation(img, check=False)


def embed_block(a: Permutation, offset: int, n: int) -> Permutation:
    """Act as ``a`` on [offset+1, offset+m], fix everything else in {1..n}."""
    if offset < 0 or offset + a.degree > n:
        raise ValueError(
            f"block [{offset + 1}, {offset + a.degree}] does not fit in degree {n}"
        )
    img = list(range(1, n + 1))
    for i, target in enumerate(a.images, start=1):
        img[offset + i - 1] = offset + target
    return Permutation(img, check=False)


# -- text formats ------------------------------------------------------------
#
# Cycle notation: "(1 2)(7 8)", identity printed as "()".
# One-line notation: comma-separated images, "2,1,3,4".

_CYCLE_RE = re.compile(r"\(\s*((?:\d+[\s,]*)*)\)")


def format_cycles(a: Permutation) -> str:
    cycs = a.cycles()
    if not cycs:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cycs)


def parse_cycles(text: str, degree: int | None = None) -> Permutation:
    """Parse cycle notation; cycles are applied right to left.

    The degree is the largest point mentioned unless given explicitly.
    """
    stripped = text.strip()
    matches = list(_CYCLE_RE.finditer(stripped))
    if not matches or _CYCLE_RE.sub("", stripped).strip():
        raise ValueError(f"cannot parse cycle notation: {text!r}")
    cycles = []
    for m in matches:
        pts = [int(tok) for tok in re.split(r"[\s,]+", m.group(1).strip()) if tok]
        if len(set(pts)) != len(pts):
            raise ValueError(f"repeated point in cycle: {m.group(0)}")
        if pts:
            cycles.append(pts)
    n = max((max(c) for c in cycles), default=0)
    if degree is not None:
        if n > degree:
            raise ValueError(f"point {n} exceeds degree {degree}")
        n = degree
    result = identity(n)
    for cyc in reversed(cycles):
        img = list(range(1, n + 1))
        for i, pt in enumerate(cyc):
            img[pt - 1] = cyc[(i + 1) % len(cyc)]
        result = compose(Permutation(img, check=False), result)
    return result


def format_one_line(a: Permutation) -> str:
    return ",".join(map(str, a.images))


def parse_one_line(text: str) -> Permutation:
    return Permutation(int(tok) for tok in text.strip().split(","))
