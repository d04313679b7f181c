"""Symbolic maximal-subgroup families of S_n and class counts inside them.

Descriptors stand for setwise stabilizers in S_n:

* ``KSet``: stabilizer of an i-subset (intransitive, S_i x S_{n-i});
* ``Bipartition``: stabilizer of a balanced two-block partition (S_{n/2} wr S_2);
* ``DBlocks``: stabilizer of a partition into d equal blocks (S_{n/d} wr S_d);
* ``PrimitiveBound``: a primitive maximal subgroup known only through |H| < 4^n.

The subgroup M of A_n attached to a descriptor is ``stabilizer & A_n``; its
normalizer in S_n is the full stabilizer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterator, Union

from .perm import CycleType, Permutation, class_size, cycle_lengths, parity, partitions


@dataclass(frozen=True)
class KSet:
    n: int
    subset: frozenset

    def __post_init__(self):
        object.__setattr__(self, "subset", frozenset(self.subset))
        if not self.subset or not self.subset <= frozenset(range(1, self.n + 1)):
            raise ValueError(f"bad subset {sorted(self.subset)} of 1..{self.n}")

    @property
    def i(self) -> int:
        return len(self.subset)


@dataclass(frozen=True)
class _Blocks:
    n: int
    blocks: frozenset

    def __post_init__(self):
        blocks = frozenset(frozenset(b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        sizes = {len(b) for b in blocks}
        union = frozenset().union(*blocks) if blocks else frozenset()
        if len(sizes) != 1 or union != frozenset(range(1, self.n + 1)) or sum(map(len, blocks)) != self.n:
            raise ValueError(f"blocks do not partition 1..{self.n} into equal parts")

    @property
    def d(self) -> int:
        return len(self.blocks)

    @property
    def block_size(self) -> int:
        return self.n // len(self.blocks)


@dataclass(frozen=True)
class Bipartition(_Blocks):
    def __post_init__(self):
        super().__post_init__()
        if len(self.blocks) != 2:
            raise ValueError("a bipartition has exactly two blocks")


@dataclass(frozen=True)
class DBlocks(_Blocks):
    pass


@dataclass(frozen=True)
class PrimitiveBound:
    n: int

    @property
    def order_cap(self) -> int:
        return 4**self.n


StabilizerDescriptor = Union[KSet, Bipartition, DBlocks, PrimitiveBound]


@dataclass(frozen=True)
class NormalizerInfo:
    descriptor: StabilizerDescriptor
    order_in_sn: int


# canonical representatives ---------------------------------------------------


def kset(n: int, i: int) -> KSet:
    return KSet(n, frozenset(range(1, i + 1)))


def bipartition(n: int) -> Bipartition:
    h = n // 2
    return Bipartition(n, frozenset([frozenset(range(1, h + 1)), frozenset(range(h + 1, n + 1))]))


def dblocks(n: int, d: int) -> DBlocks:
    if n % d:
        raise ValueError(f"{d} does not divide {n}")
    a = n // d
    return DBlocks(n, frozenset(frozenset(range(j * a + 1, (j + 1) * a + 1)) for j in range(d)))


def stabilizer_order(desc: StabilizerDescriptor) -> int:
    if isinstance(desc, KSet):
        return factorial(desc.i) * factorial(desc.n - desc.i)
    if isinstance(desc, (Bipartition, DBlocks)):
        return factorial(desc.block_size) ** desc.d * factorial(desc.d)
    return desc.order_cap


def normalizer_info(desc: StabilizerDescriptor) -> NormalizerInfo:
    return NormalizerInfo(desc, stabilizer_order(desc))


def family(desc: StabilizerDescriptor) -> tuple:
    """Conjugacy-class key of the descriptor in S_n."""
    if isinstance(desc, KSet):
        return ("kset", desc.n, min(desc.i, desc.n - desc.i))
    if isinstance(desc, Bipartition):
        return ("bipart", desc.n)
    if isinstance(desc, DBlocks):
        return ("dblocks", desc.n, desc.d) if desc.d != 2 else ("bipart", desc.n)
    return ("prim", desc.n)


def _normal_kset(desc: KSet) -> KSet:
    # S and its complement have the same stabilizer
    if 2 * desc.i > desc.n:
        return KSet(desc.n, frozenset(range(1, desc.n + 1)) - desc.subset)
    if 2 * desc.i == desc.n and 1 not in desc.subset:
        return KSet(desc.n, frozenset(range(1, desc.n + 1)) - desc.subset)
    return desc


def normalize(desc: StabilizerDescriptor) -> StabilizerDescriptor:
    """Canonical descriptor: equal stabilizers give equal descriptors."""
    if isinstance(desc, KSet):
        return _normal_kset(desc)
    if isinstance(desc, DBlocks) and desc.d == 2:
        return Bipartition(desc.n, desc.blocks)
    return desc


def stabilizes(p: Permutation, desc: StabilizerDescriptor) -> bool:
    if isinstance(desc, PrimitiveBound):
        raise TypeError("primitive subgroups are represented by an order bound only")
    if p.degree != desc.n:
        raise ValueError("degree mismatch")
    img = p._img
    if isinstance(desc, KSet):
        pts = {x - 1 for x in desc.subset}
        return all(img[x] in pts for x in pts)
    label = [0] * desc.n
    for j, block in enumerate(sorted(desc.blocks, key=min)):
        for x in block:
            label[x - 1] = j
    for block in desc.blocks:
        target = {label[img[x - 1]] for x in block}
        if len(target) != 1:
            return False
    return True


def image(desc: StabilizerDescriptor, g: Permutation) -> StabilizerDescriptor:
    """desc^g: the stabilizer of desc conjugated by g stabilizes the image under g."""
    if isinstance(desc, PrimitiveBound):
        return desc
    if isinstance(desc, KSet):
        return _normal_kset(KSet(desc.n, frozenset(g(x) for x in desc.subset)))
    blocks = frozenset(frozenset(g(x) for x in b) for b in desc.blocks)
    return type(desc)(desc.n, blocks)


def odd_element(desc: StabilizerDescriptor) -> Permutation:
    """A transposition in the stabilizer, witnessing N_{S_n}(M) A_n = S_n."""
    if isinstance(desc, PrimitiveBound):
        raise TypeError("no element-level data for primitive bounds")
    if isinstance(desc, KSet):
        side = sorted(desc.subset) if desc.i >= 2 else sorted(set(range(1, desc.n + 1)) - desc.subset)
    else:
        side = sorted(min(desc.blocks, key=min))
    if len(side) < 2:
        raise ValueError("stabilizer contains no transposition")
    t = Permutation.from_cycles(desc.n, (side[0], side[1]))
    assert stabilizes(t, desc) and parity(t) == 1
    return t


def text(desc: StabilizerDescriptor) -> str:
    """Canonical text form used in report files."""

    def fmt(s):
        return "{" + ",".join(map(str, sorted(s))) + "}"

    desc = normalize(desc)
    if isinstance(desc, KSet):
        return f"kset:{desc.i}:{fmt(desc.subset)}"
    if isinstance(desc, Bipartition):
        return "bipart:" + fmt(min(desc.blocks, key=min))
    if isinstance(desc, DBlocks):
        return f"dblocks:{desc.d}:" + "|".join(fmt(b) for b in sorted(desc.blocks, key=min))
    return f"prim:{desc.order_cap}"


def parse(s: str, n: int) -> StabilizerDescriptor:
    kind, _, rest = s.partition(":")

    def pts(t):
        return frozenset(int(x) for x in t.strip("{}").split(",") if x)

    if kind == "kset":
        _, _, body = rest.partition(":")
        return KSet(n, pts(body))
    if kind == "bipart":
        a = pts(rest)
        return Bipartition(n, frozenset([a, frozenset(range(1, n + 1)) - a]))
    if kind == "dblocks":
        _, _, body = rest.partition(":")
        return DBlocks(n, frozenset(pts(b) for b in body.split("|")))
    if kind == "prim":
        return PrimitiveBound(n)
    raise ValueError(f"unknown descriptor {s!r}")


# B-classes -------------------------------------------------------------------


def index_set(n: int) -> list[int]:
    """I = {-1, 1, ..., ceil(n/3) - 1}; equals {-1, 1, ..., n/3 - 1} when 3 | n."""
    return [-1] + list(range(1, -(-n // 3)))


def outside_theorem(n: int) -> bool:
    return not (n % 6 == 0 and n >= 30)


def b_class(n: int, i: int) -> CycleType:
    """The odd class B_i of S_n pinned to the covering family i."""
    if n % 6 or n < 6:
        raise ValueError(f"B-classes need n = 0 mod 6, got {n}")
    if i not in index_set(n):
        raise ValueError(f"index {i} not in I for n={n}")
    h = n // 2
    if i == -1:
        parts = (n,)
    elif i == 1:
        parts = (1, h - 2, h + 1)
    elif i == 2:
        parts = (2, h - 1, h - 1) if h % 2 == 0 else (2, h - 4, h + 2)
    elif i % 2:
        parts = (i, (n - i - 1) // 2, (n - i + 1) // 2)
    elif ((n - i) // 2) % 2:
        parts = (i, (n - i) // 2, (n - i) // 2)
    else:
        parts = (i, (n - i) // 2 - 1, (n - i) // 2 + 1)
    ct = CycleType(n, tuple(sorted(parts)))
    assert not ct.is_even()
    return ct


def covering_descriptor(n: int, i: int) -> StabilizerDescriptor:
    """Canonical member of the S_n-family F_i."""
    return bipartition(n) if i == -1 else kset(n, i)


# class counts ------------------------------------------------------------------


def _split_counts(mult: dict, target: int):
    """Yield (chosen, rest) multiplicity splits with sum(chosen) == target."""
    items = sorted(mult.items())

    def rec(idx, remaining, chosen):
        if idx == len(items):
            if remaining == 0:
                yield dict(chosen)
            return
        k, mk = items[idx]
        for j in range(min(mk, remaining // k) + 1):
            if j:
                chosen[k] = j
            yield from rec(idx + 1, remaining - j * k, chosen)
            chosen.pop(k, None)

    for chosen in rec(0, target, {}):
        rest = {k: mk - chosen.get(k, 0) for k, mk in items if mk - chosen.get(k, 0)}
        yield chosen, rest


def _ct_from_mult(mult: dict) -> CycleType:
    parts = tuple(sorted(k for k, mk in mult.items() for _ in range(mk)))
    return CycleType(sum(parts), parts)


def _class_size_mult(mult: dict) -> int:
    if not mult:
        return 1
    return class_size(_ct_from_mult(mult))


def class_count_in_young(ct: CycleType, a: int, b: int) -> int:
    """Elements of type ct in a fixed S_a x S_b."""
    if a + b != ct.degree:
        raise ValueError("a + b must equal the degree")
    total = 0
    for chosen, rest in _split_counts(dict(ct.multiplicities), a):
        total += _class_size_mult(chosen) * _class_size_mult(rest)
    return total


def class_count_in_wreath2(ct: CycleType, n: int) -> int:
    """Elements of type ct in the stabilizer of a fixed balanced bipartition."""
    if n % 2 or ct.degree != n:
        raise ValueError("needs even n equal to the degree of ct")
    h = n // 2
    preserving = class_count_in_young(ct, h, h)
    # a block swap squares to a permutation of one block; each of its
    # l-cycles doubles to a 2l-cycle, and each square arises h! times
    if all(p % 2 == 0 for p in ct.parts):
        swapping = factorial(h) * class_size(CycleType(h, tuple(p // 2 for p in ct.parts)))
    else:
        swapping = 0
    return preserving + swapping


@lru_cache(maxsize=None)
def _wreath_assignments(cycle_lens: tuple, remaining: tuple, a: int) -> int:
    """Weighted ways to hand each block-cycle a return-map type so the parts match."""
    if not cycle_lens:
        return 1 if not remaining else 0
    c = cycle_lens[0]
    mult: dict = {}
    for p in remaining:
        if p % c == 0:
            mult[p] = mult.get(p, 0) + 1
    total = 0
    for chosen, _ in _split_counts({p // c: mk for p, mk in mult.items()}, a):
        used = {p * c: j for p, j in chosen.items()}
        left = list(remaining)
        for p, j in used.items():
            for _ in range(j):
                left.remove(p)
        total += _class_size_mult(chosen) * _wreath_assignments(cycle_lens[1:], tuple(left), a)
    return total


def class_count_in_wreath(ct: CycleType, a: int, b: int) -> int:
    """Elements of type ct in S_a wr S_b (stabilizer of b blocks of size a)."""
    if a * b != ct.degree:
        raise ValueError("a * b must equal the degree")
    total = 0
    fa = factorial(a)
    for mu in partitions(b):
        weight = class_size(CycleType(b, tuple(sorted(mu)))) * fa ** (b - len(mu))
        total += weight * _wreath_assignments(tuple(sorted(mu, reverse=True)), ct.parts, a)
    return total


def class_count_in(ct: CycleType, desc: StabilizerDescriptor) -> int:
    """|ct & stabilizer(desc)|."""
    if isinstance(desc, KSet):
        return class_count_in_young(ct, desc.i, desc.n - desc.i)
    if isinstance(desc, Bipartition):
        return class_count_in_wreath2(ct, desc.n)
    if isinstance(desc, DBlocks):
        return class_count_in_wreath(ct, desc.block_size, desc.d)
    raise TypeError("class counts are unavailable for primitive bounds")


# covering members of S_n ---------------------------------------------------------


def _cycle_subsets(cycles: list, target: int) -> Iterator[list]:
    if target < 0:
        return
    lens = [len(c) for c in cycles]
    # reachable[j][s]: can cycles j.. reach sum s
    reach = [[False] * (target + 1) for _ in range(len(cycles) + 1)]
    reach[len(cycles)][0] = True
    for j in range(len(cycles) - 1, -1, -1):
        for s in range(target + 1):
            reach[j][s] = reach[j + 1][s] or (s >= lens[j] and reach[j + 1][s - lens[j]])

    def rec(j, s, chosen):
        if not reach[j][s]:
            return
        if j == len(cycles):
            yield list(chosen)
            return
        if s >= lens[j]:
            chosen.append(cycles[j])
            yield from rec(j + 1, s - lens[j], chosen)
            chosen.pop()
        yield from rec(j + 1, s, chosen)

    yield from rec(0, target, [])


def iter_f_members(p: Permutation) -> Iterator[StabilizerDescriptor]:
    """Members of F (KSet with i < n/3, balanced bipartitions) whose stabilizer contains p."""
    n = p.degree
    cycles = p.cycles(include_fixed=True)
    for i in range(1, -(-n // 3)):
        for sel in _cycle_subsets(cycles, i):
            yield KSet(n, frozenset(x for c in sel for x in c))
    if n % 2:
        return
    h = n // 2
    everything = frozenset(range(1, n + 1))
    # cycles[0] contains point 1; requiring it in the selected block dedupes {A, B}
    for sel in _cycle_subsets(cycles[1:], h - len(cycles[0])):
        a = frozenset(x for c in [cycles[0]] + sel for x in c)
        yield Bipartition(n, frozenset([a, everything - a]))
    if all(len(c) % 2 == 0 for c in cycles):
        rest = cycles[1:]
        for mask in range(2 ** len(rest)):
            a = set(cycles[0][0::2])
            for j, c in enumerate(rest):
                a.update(c[(mask >> j) & 1::2])
            a = frozenset(a)
            yield Bipartition(n, frozenset([a, everything - a]))


def f_members_containing(p: Permutation, n: int | None = None, limit: int | None = None) -> list:
    if n is not None and n != p.degree:
        raise ValueError("degree mismatch")
    if parity(p) == 0:
        raise ValueError("F covers only odd permutations (A_n covers the rest)")
    out = []
    for desc in iter_f_members(p):
        out.append(desc)
        if limit is not None and len(out) >= limit:
            break
    return out


def f_member_counts(p: Permutation) -> dict:
    """Counts of containing F-members per family index, from cycle lengths alone."""
    from .perm import invariant_bipartitions, invariant_ksubsets

    n = p.degree
    counts = {i: invariant_ksubsets(p, i) for i in range(1, -(-n // 3))}
    counts[-1] = invariant_bipartitions(p) if n % 2 == 0 else 0
    return counts


def eric_sum_bound(n: int) -> Fraction:
    """(3n^2 + 27n + 54) / (4n^2 - 9)."""
    return Fraction(3 * n * n + 27 * n + 54, 4 * n * n - 9)


# enumeration of families (small n) ------------------------------------------------


def all_ksets(n: int, i: int) -> list[KSet]:
    from itertools import combinations

    seen = {}
    for c in combinations(range(1, n + 1), i):
        d = _normal_kset(KSet(n, frozenset(c)))
        seen[d] = None
    return list(seen)


def all_block_systems(n: int, d: int) -> list:
    a = n // d
    out = []

    def rec(left: list, blocks: list):
        if not left:
            out.append(frozenset(blocks))
            return
        first = left[0]
        from itertools import combinations

        for rest in combinations(left[1:], a - 1):
            block = frozenset((first,) + rest)
            rec([x for x in left if x not in block], blocks + [block])

    rec(list(range(1, n + 1)), [])
    cls = Bipartition if d == 2 else DBlocks
    return [cls(n, b) for b in out]


def all_in_family(desc: StabilizerDescriptor) -> list:
    if isinstance(desc, KSet):
        return all_ksets(desc.n, min(desc.i, desc.n - desc.i))
    if isinstance(desc, (Bipartition, DBlocks)):
        return all_block_systems(desc.n, desc.d)
    raise TypeError("primitive families are not enumerated")
