"""Exact permutation arithmetic on n points.

Composition is left-to-right: ``p * q`` applies ``p`` first, then ``q``, so a
written product ``x_1 x_2 ... x_m t`` transcribes literally.  Conjugation is
``x^g = g^-1 x g``.

Points are 1-based in every public constructor and printed form; the images
are stored 0-based.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import comb, factorial
from typing import Iterable, Iterator, Sequence


class Permutation:
    __slots__ = ("_img",)

    def __init__(self, images: Sequence[int]):
        """Build from a 1-based image sequence: ``images[j-1]`` is the image of j."""
        img = tuple(int(v) - 1 for v in images)
        if sorted(img) != list(range(len(img))):
            raise ValueError(f"not a bijection on 1..{len(img)}: {list(images)}")
        self._img = img

    @classmethod
    def _raw(cls, img: tuple[int, ...]) -> "Permutation":
        p = object.__new__(cls)
        p._img = img
        return p

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls._raw(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> "Permutation":
        """``Permutation.from_cycles(6, (1, 2, 3, 4))`` is (1 2 3 4) on 6 points."""
        img = list(range(n))
        seen = set()
        for cyc in cycles:
            pts = [c - 1 for c in cyc]
            if any(not 0 <= c < n for c in pts) or seen.intersection(pts) or len(set(pts)) != len(pts):
                raise ValueError(f"bad cycle {cyc} on {n} points")
            seen.update(pts)
            for a, b in zip(pts, pts[1:] + pts[:1]):
                img[a] = b
        return cls._raw(tuple(img))

    @property
    def degree(self) -> int:
        return len(self._img)

    @property
    def images(self) -> tuple[int, ...]:
        """1-based image sequence."""
        return tuple(v + 1 for v in self._img)

    def __call__(self, point: int) -> int:
        return self._img[point - 1] + 1

    def __mul__(self, other: "Permutation") -> "Permutation":
        return mul(self, other)

    def __invert__(self) -> "Permutation":
        return inverse(self)

    def __pow__(self, k: int) -> "Permutation":
        return power(self, k)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self._img == other._img

    def __hash__(self) -> int:
        return hash(self._img)

    def __lt__(self, other: "Permutation") -> bool:
        return self._img < other._img

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self._img))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        """Disjoint cycles as 1-based tuples, each starting at its least point."""
        out = []
        seen = [False] * len(self._img)
        for s in range(len(self._img)):
            if seen[s]:
                continue
            cyc = []
            j = s
            while not seen[j]:
                seen[j] = True
                cyc.append(j + 1)
                j = self._img[j]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def __repr__(self) -> str:
        cyc = self.cycles()
        body = "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) or "()"
        return f"{body}[{self.degree}]"


@dataclass(frozen=True)
class CycleType:
    """Conjugacy-class label of S_n: parts sorted ascending, fixed points included."""

    degree: int
    parts: tuple[int, ...]

    def __post_init__(self):
        if sum(self.parts) != self.degree or any(p <= 0 for p in self.parts):
            raise ValueError(f"parts {self.parts} do not partition {self.degree}")
        if tuple(sorted(self.parts)) != self.parts:
            object.__setattr__(self, "parts", tuple(sorted(self.parts)))

    @classmethod
    def of(cls, *parts: int) -> "CycleType":
        return cls(sum(parts), tuple(sorted(parts)))

    @property
    def multiplicities(self) -> Counter:
        return Counter(self.parts)

    def is_even(self) -> bool:
        return (self.degree - len(self.parts)) % 2 == 0

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.parts)) + "]"


def _check_degrees(p: Permutation, q: Permutation) -> None:
    if len(p._img) != len(q._img):
        raise ValueError(f"degree mismatch: {p.degree} vs {q.degree}")


def mul(p: Permutation, q: Permutation) -> Permutation:
    """Apply p, then q."""
    _check_degrees(p, q)
    qi = q._img
    return Permutation._raw(tuple(qi[v] for v in p._img))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * len(p._img)
    for i, v in enumerate(p._img):
        inv[v] = i
    return Permutation._raw(tuple(inv))


def power(p: Permutation, k: int) -> Permutation:
    if k < 0:
        return power(inverse(p), -k)
    result = Permutation.identity(p.degree)
    base = p
    while k:
        if k & 1:
            result = mul(result, base)
        base = mul(base, base)
        k >>= 1
    return result


def conjugate(p: Permutation, g: Permutation) -> Permutation:
    """p^g = g^-1 p g."""
    _check_degrees(p, g)
    # g^-1 p g sends g(i) to g(p(i))
    img = [0] * len(p._img)
    gi = g._img
    for i, v in enumerate(p._img):
        img[gi[i]] = gi[v]
    return Permutation._raw(tuple(img))


def cycle_lengths(p: Permutation) -> list[int]:
    img = p._img
    seen = bytearray(len(img))
    out = []
    for s in range(len(img)):
        if seen[s]:
            continue
        length = 0
        j = s
        while not seen[j]:
            seen[j] = 1
            length += 1
            j = img[j]
        out.append(length)
    return out


def cycle_type(p: Permutation) -> CycleType:
    return CycleType(p.degree, tuple(sorted(cycle_lengths(p))))


def parity(p: Permutation) -> int:
    """0 for even, 1 for odd: (-1)^(n - #cycles)."""
    return (p.degree - len(cycle_lengths(p))) % 2


def is_even(p: Permutation) -> bool:
    return parity(p) == 0


def order(p: Permutation) -> int:
    from math import lcm

    return lcm(*cycle_lengths(p)) if p.degree else 1


def class_size(ct: CycleType) -> int:
    """|{g in S_n : cycle_type(g) = ct}| = n! / prod_k k^{m_k} m_k!."""
    denom = 1
    for k, mk in ct.multiplicities.items():
        denom *= k**mk * factorial(mk)
    return factorial(ct.degree) // denom


def partitions(n: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of n, parts in non-increasing order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def cycle_types(n: int) -> Iterator[CycleType]:
    for parts in partitions(n):
        yield CycleType(n, tuple(reversed(parts)))


def _subset_sum_counts(lengths: Iterable[int], target: int) -> int:
    """Number of sub-collections of the (distinguishable) lengths summing to target."""
    ways = [0] * (target + 1)
    ways[0] = 1
    for length in lengths:
        for s in range(target, length - 1, -1):
            ways[s] += ways[s - length]
    return ways[target]


def invariant_ksubsets(p: Permutation, k: int) -> int:
    """Number of k-subsets S of the points with p(S) = S."""
    if not 0 <= k <= p.degree:
        raise ValueError(f"k={k} outside 0..{p.degree}")
    return _subset_sum_counts(cycle_lengths(p), k)


def invariant_bipartitions(p: Permutation) -> int:
    """Unordered balanced bipartitions {A, B} with p(A) in {A, B}."""
    n = p.degree
    if n % 2:
        raise ValueError("balanced bipartitions need an even degree")
    lengths = cycle_lengths(p)
    preserving = _subset_sum_counts(lengths, n // 2) // 2
    # p(A) = B forces every cycle to alternate between the blocks
    swapping = 2 ** (len(lengths) - 1) if all(c % 2 == 0 for c in lengths) else 0
    return preserving + swapping


def random_permutation(n: int, rng) -> Permutation:
    img = list(range(n))
    rng.shuffle(img)
    return Permutation._raw(tuple(img))


def random_even(n: int, rng) -> Permutation:
    img = list(range(n))
    rng.shuffle(img)
    p = Permutation._raw(tuple(img))
    if parity(p):
        img[0], img[1] = img[1], img[0]
        p = Permutation._raw(tuple(img))
    return p


def random_of_type(ct: CycleType, rng) -> Permutation:
    """Uniform element of the class ct."""
    pts = list(range(ct.degree))
    rng.shuffle(pts)
    img = [0] * ct.degree
    pos = 0
    for length in ct.parts:
        cyc = pts[pos:pos + length]
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a] = b
        pos += length
    return Permutation._raw(tuple(img))


def representative(ct: CycleType) -> Permutation:
    """Deterministic element of ct: consecutive points, parts in ascending order."""
    img = list(range(ct.degree))
    pos = 0
    for length in ct.parts:
        for j in range(pos, pos + length):
            img[j] = pos + (j - pos + 1) % length
        pos += length
    return Permutation._raw(tuple(img))


def conjugator(p: Permutation, q: Permutation) -> Permutation:
    """Some a with p^a = q (requires equal cycle types)."""
    if cycle_type(p) != cycle_type(q):
        raise ValueError("not conjugate")
    pc = sorted(p.cycles(include_fixed=True), key=len)
    qc = sorted(q.cycles(include_fixed=True), key=len)
    img = [0] * p.degree
    for a, b in zip(pc, qc):
        for x, y in zip(a, b):
            img[x - 1] = y - 1
    return Permutation._raw(tuple(img))


def binomial(n: int, k: int) -> int:
    return comb(n, k)


def all_permutations(n: int) -> Iterator[Permutation]:
    from itertools import permutations

    for img in permutations(range(n)):
        yield Permutation._raw(img)


def alternating_elements(n: int) -> list[Permutation]:
    return [p for p in all_permutations(n) if parity(p) == 0]
