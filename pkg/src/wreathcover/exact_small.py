"""Exact covering number and generating-graph clique number for small groups.

A ``SmallGroup`` lists its elements explicitly (identity first, breadth-first
from the generators).  Subgroups are Python ``int`` bitmasks over element
indices, so subset tests and unions are single integer operations.

The subgroup lattice is built by cyclic extension over conjugacy-class
representatives: every subgroup is reached from the trivial group by adjoining
one element at a time, and conjugates of a processed representative never need
processing of their own.  Maximal subgroups fall out for free, since a
representative is maximal exactly when every one-element extension is the
whole group.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
import time
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .perm import Permutation, mul

LATTICE_CAP = 1000
MEMBERSHIP_CAP = 1_000_000
CACHE_ENV = "WREATHCOVER_CACHE"


class CapExceeded(RuntimeError):
    pass


class NotCoverable(ValueError):
    """Cyclic groups are not a union of proper subgroups."""


class NotTwoGenerated(ValueError):
    """The generating graph has no edge, so its clique number is undefined."""


class SmallGroup:
    def __init__(self, generators: Sequence[Permutation], name: str | None = None, cap: int = MEMBERSHIP_CAP):
        gens = list(generators)
        if not gens:
            raise ValueError("need at least one generator (use the identity for the trivial group)")
        self.degree = gens[0].degree
        self.generators = gens
        self.name = name or f"<{len(gens)} gens on {self.degree} points>"
        e = Permutation.identity(self.degree)
        elements = [e]
        index = {e: 0}
        head = 0
        while head < len(elements):
            x = elements[head]
            head += 1
            for g in gens:
                y = mul(x, g)
                if y not in index:
                    if len(elements) >= cap:
                        raise CapExceeded(f"{self.name}: more than {cap} elements")
                    index[y] = len(elements)
                    elements.append(y)
        self.elements = elements
        self._index = index
        self._table = None
        self._inv = None
        self._orders = None

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def full(self) -> int:
        return (1 << self.order) - 1

    def index(self, p: Permutation | int) -> int:
        return p if isinstance(p, (int, np.integer)) else self._index[p]

    def __contains__(self, p: Permutation) -> bool:
        return p in self._index

    def __repr__(self) -> str:
        return f"SmallGroup({self.name}, order={self.order})"

    @property
    def table(self) -> np.ndarray:
        """table[a, b] = index of elements[a] * elements[b]."""
        if self._table is None:
            n = self.order
            if n > LATTICE_CAP:
                raise CapExceeded(f"{self.name}: order {n} above the table cap {LATTICE_CAP}")
            d = self.degree
            imgs = np.array([p._img for p in self.elements], dtype=np.int64)
            weights = d ** np.arange(d, dtype=np.int64)
            codes = imgs @ weights
            order = np.argsort(codes)
            sorted_codes = codes[order]
            t = np.empty((n, n), dtype=np.int32)
            for a in range(n):
                # (a*b)[i] = b[a[i]]
                prod = imgs[:, imgs[a]]
                t[a] = order[np.searchsorted(sorted_codes, prod @ weights)]
            self._table = t
        return self._table

    @property
    def inverses(self) -> np.ndarray:
        if self._inv is None:
            t = self.table
            self._inv = np.argmax(t == 0, axis=1).astype(np.int32)
        return self._inv

    @property
    def element_orders(self) -> np.ndarray:
        if self._orders is None:
            t = self.table
            n = self.order
            orders = np.ones(n, dtype=np.int64)
            cur = np.arange(n)
            k = 1
            pending = cur != 0
            while pending.any():
                cur = t[cur, np.arange(n)]
                k += 1
                done = pending & (cur == 0)
                orders[done] = k
                pending &= ~done
            self._orders = orders
        return self._orders

    def is_cyclic(self) -> bool:
        return self.order == 1 or bool((self.element_orders == self.order).any())

    def fingerprint(self) -> str:
        hist = sorted(Counter(int(o) for o in self.element_orders).items())
        gens = [list(g.images) for g in self.generators]
        blob = json.dumps([self.order, hist, gens], separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:24]

    # masks ------------------------------------------------------------------

    def mask_of(self, indices) -> int:
        m = 0
        for i in indices:
            m |= 1 << int(i)
        return m

    def members(self, mask: int) -> list[int]:
        out = []
        i = 0
        while mask:
            if mask & 1:
                out.append(i)
            mask >>= 1
            i += 1
        return out

    def closure(self, gens: Sequence[int], start: int = 0, limit: int | None = None) -> int:
        """Subgroup generated by ``gens`` (element indices).

        ``start`` is an optional subgroup mask contained in <gens>; it only
        seeds the search.  Once the closure exceeds
        ``limit`` elements it is reported as the whole group; the default limit
        |G|/2 makes that exact.
        """
        n = self.order
        if limit is None:
            limit = n // 2
        t = self.table
        inside = np.zeros(n, dtype=bool)
        if start:
            idx = np.array(self.members(start), dtype=np.int64)
        else:
            idx = np.array([0], dtype=np.int64)
        inside[idx] = True
        count = len(idx)
        g = np.array(list(gens), dtype=np.int64)
        if len(g) == 0:
            return self.mask_of(idx)
        frontier = idx
        while frontier.size:
            new = np.unique(t[np.ix_(frontier, g)].ravel())
            new = new[~inside[new]]
            if not new.size:
                break
            inside[new] = True
            count += new.size
            if count > limit:
                return self.full
            frontier = new
        return _bool_to_mask(inside)

    def conjugation_table(self) -> np.ndarray:
        """conj[a, x] = a^-1 x a."""
        t = self.table
        left = t[self.inverses]
        return t[left, np.arange(self.order)[:, None]]


def _bool_to_mask(arr: np.ndarray) -> int:
    return int.from_bytes(np.packbits(arr, bitorder="little").tobytes(), "little")


# named groups -------------------------------------------------------------------


def symmetric(n: int) -> SmallGroup:
    if n < 2:
        return SmallGroup([Permutation.identity(max(n, 1))], f"S{n}")
    return SmallGroup(
        [Permutation.from_cycles(n, (1, 2)), Permutation.from_cycles(n, tuple(range(1, n + 1)))], f"S{n}"
    )


def alternating(n: int) -> SmallGroup:
    if n < 3:
        return SmallGroup([Permutation.identity(max(n, 1))], f"A{n}")
    gens = [Permutation.from_cycles(n, (1, 2, 3))]
    if n > 3:
        long = tuple(range(1, n + 1)) if n % 2 else tuple(range(2, n + 1))
        gens.append(Permutation.from_cycles(n, long))
    return SmallGroup(gens, f"A{n}")


def cyclic(n: int) -> SmallGroup:
    if n == 1:
        return SmallGroup([Permutation.identity(1)], "C1")
    return SmallGroup([Permutation.from_cycles(n, tuple(range(1, n + 1)))], f"C{n}")


def dihedral(n: int) -> SmallGroup:
    """Symmetries of the n-gon, order 2n."""
    rot = Permutation.from_cycles(n, tuple(range(1, n + 1)))
    refl = Permutation([((1 - i) % n) + 1 for i in range(n)])
    return SmallGroup([rot, refl], f"D{2 * n}")


def wreath_group(n: int, m: int, cap: int = MEMBERSHIP_CAP) -> SmallGroup:
    """G_{n,m} as permutations of nm points, for membership-level work only."""
    from .wreath import GroupParams, standard_generators, to_points

    params = GroupParams(n, m)
    if params.order > cap:
        raise CapExceeded(f"G_{n},{m} has order {params.order}, above the cap {cap}")
    x1 = Permutation.from_cycles(n, (1, 2, 3))
    x2 = Permutation.from_cycles(n, tuple(range(2, n + 1)) if n % 2 == 0 else tuple(range(1, n + 1)))
    gens = [to_points(a) for a in standard_generators(params, x1, x2)]
    return SmallGroup(gens, f"G{n}_{m}", cap=cap)


def wreath_order(name: str) -> int | None:
    """Order of 'G<n>_<m>' without building it, or None for other names."""
    from .wreath import GroupParams

    name = name.strip().upper()
    if name.startswith("G") and "_" in name:
        n, _, m = name[1:].partition("_")
        if n.isdigit() and m.isdigit():
            return GroupParams(int(n), int(m)).order
    return None


def named_group(name: str) -> SmallGroup:
    """'S5', 'A4', 'C7', 'D8' (dihedral of order 8), 'G6_2'."""
    name = name.strip().upper()
    if wreath_order(name) is not None:
        n, _, m = name[1:].partition("_")
        return wreath_group(int(n), int(m))
    kind, num = name[0], name[1:]
    if not num.isdigit():
        raise ValueError(f"unknown group {name!r}")
    k = int(num)
    if kind == "S":
        return symmetric(k)
    if kind == "A":
        return alternating(k)
    if kind == "C":
        return cyclic(k)
    if kind == "D" and k % 2 == 0 and k >= 6:
        return dihedral(k // 2)
    raise ValueError(f"unknown group {name!r}")


# subgroup lattice -----------------------------------------------------------------


@dataclass
class SubgroupClass:
    rep: int
    order: int
    members: list
    gens: tuple
    maximal: bool = False


@dataclass
class SubgroupLattice:
    group: SmallGroup
    classes: list

    @property
    def subgroups(self) -> list[int]:
        return [s for c in self.classes for s in c.members]

    def maximal_classes(self) -> list[SubgroupClass]:
        return [c for c in self.classes if c.maximal]

    def maximal_subgroups(self) -> list[int]:
        return [s for c in self.maximal_classes() for s in c.members]

    def largest_maximal_order(self) -> int:
        return max((c.order for c in self.maximal_classes()), default=0)


def cyclic_subgroups(G: SmallGroup) -> dict[int, int]:
    """mask of <g> -> least generator index, over all g."""
    t = G.table
    out: dict[int, int] = {}
    for g in range(G.order):
        m = 1
        x = g
        while x != 0:
            m |= 1 << int(x)
            x = t[x, g]
        out.setdefault(m, g)
    return out


def maximal_cyclic_subgroups(G: SmallGroup) -> dict[int, int]:
    cyc = cyclic_subgroups(G)
    keys = sorted(cyc, key=lambda m: -bin(m).count("1"))
    kept: dict[int, int] = {}
    for m in keys:
        if not any(m & k == m for k in kept):
            kept[m] = cyc[m]
    return kept


def _conjugates(G: SmallGroup, conj: np.ndarray, mask: int) -> set[int]:
    elems = np.array(G.members(mask), dtype=np.int64)
    images = conj[:, elems]
    rows = np.zeros((G.order, G.order), dtype=bool)
    rows[np.arange(G.order)[:, None], images] = True
    packed = np.packbits(rows, axis=1, bitorder="little")
    return {int.from_bytes(r.tobytes(), "little") for r in packed}


def _compute_lattice(G: SmallGroup) -> SubgroupLattice:
    n = G.order
    if n > LATTICE_CAP:
        raise CapExceeded(f"{G.name}: order {n} above the lattice cap {LATTICE_CAP}")
    if n == 1:
        return SubgroupLattice(G, [SubgroupClass(1, 1, [1], ())])
    conj = G.conjugation_table()
    cyc = sorted(cyclic_subgroups(G).items(), key=lambda kv: kv[1])
    classes = [SubgroupClass(1, 1, [1], ())]
    known = {1}
    head = 0
    while head < len(classes):
        c = classes[head]
        head += 1
        maximal = True
        for cmask, g in cyc:
            if cmask & c.rep == cmask:
                continue
            k = G.closure(c.gens + (g,), start=c.rep)
            if k == G.full:
                continue
            maximal = False
            if k in known:
                continue
            conjs = _conjugates(G, conj, k)
            known |= conjs
            classes.append(SubgroupClass(k, bin(k).count("1"), sorted(conjs), c.gens + (g,)))
        c.maximal = maximal
    gens = tuple(G.index(p) for p in G.generators)
    classes.append(SubgroupClass(G.full, n, [G.full], gens))
    return SubgroupLattice(G, classes)


def _cache_path(G: SmallGroup) -> Path | None:
    root = os.environ.get(CACHE_ENV)
    if not root:
        return None
    return Path(root) / f"lattice-{G.fingerprint()}.json"


def _load_cached(G: SmallGroup, path: Path) -> SubgroupLattice | None:
    try:
        data = json.loads(path.read_text())
    except (OSError, ValueError):
        return None
    if data.get("fingerprint") != G.fingerprint() or data.get("order") != G.order:
        return None
    conj = G.conjugation_table()
    classes = []
    for entry in data["classes"]:
        rep = G.mask_of(entry["rep"])
        members = sorted(_conjugates(G, conj, rep))
        classes.append(SubgroupClass(rep, len(entry["rep"]), members, tuple(entry["gens"]), entry["maximal"]))
    return SubgroupLattice(G, classes)


def _store_cached(lat: SubgroupLattice, path: Path) -> None:
    G = lat.group
    data = {
        "fingerprint": G.fingerprint(),
        "order": G.order,
        "classes": [
            {"rep": G.members(c.rep), "gens": [int(x) for x in c.gens], "maximal": c.maximal} for c in lat.classes
        ],
    }
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".lattice-")
    with os.fdopen(fd, "w") as fh:
        json.dump(data, fh)
    os.replace(tmp, path)


def subgroup_lattice(G: SmallGroup, use_cache: bool = True) -> SubgroupLattice:
    path = _cache_path(G) if use_cache else None
    if path is not None and path.exists():
        lat = _load_cached(G, path)
        if lat is not None:
            return lat
    lat = _compute_lattice(G)
    if path is not None:
        _store_cached(lat, path)
    return lat


def maximal_subgroups(G: SmallGroup) -> list[int]:
    return subgroup_lattice(G).maximal_subgroups()


def saturated_subgroups(G: SmallGroup, max_gens: int = 2) -> set[int]:
    """Closures of all generating sets of size <= max_gens, then joins to a fixpoint.

    Brute force, meant as a cross-check for orders up to about 120.
    """
    import itertools

    n = G.order
    subs = {1}
    for size in range(1, max_gens + 1):
        for gens in itertools.combinations(range(n), size):
            subs.add(G.closure(gens, limit=n))
    frontier = set(subs)
    while frontier:
        new = set()
        listed = list(subs)
        for a in frontier:
            for b in listed:
                if a & b == a or a & b == b:
                    continue
                j = G.closure(G.members(a) + G.members(b), start=a, limit=n)
                if j not in subs:
                    new.add(j)
        subs |= new
        frontier = new
    return subs


# generation -------------------------------------------------------------------------


def generation_test(G: SmallGroup, x, y, limit: int | None = None) -> bool:
    """<x, y> = G, stopping as soon as the closure outgrows every maximal subgroup."""
    if G.order == 1:
        return True
    a, b = G.index(x), G.index(y)
    return G.closure((a, b), limit=limit) == G.full


@dataclass
class GeneratingGraph:
    group: SmallGroup
    limit: int | None = None

    def adjacent(self, x, y) -> bool:
        if self.group.index(x) == self.group.index(y):
            return False
        return generation_test(self.group, x, y, self.limit)

    def adjacency(self) -> list[int]:
        """Bitmask neighbourhoods over all elements (quadratic in |G|)."""
        n = self.group.order
        adj = [0] * n
        for a in range(n):
            for b in range(a + 1, n):
                if generation_test(self.group, a, b, self.limit):
                    adj[a] |= 1 << b
                    adj[b] |= 1 << a
        return adj


# exact set cover ---------------------------------------------------------------------


@dataclass
class CoverResult:
    value: int
    witness: list
    lower_bound: int
    nodes: int
    seconds: float

    def verify(self, G: SmallGroup) -> bool:
        union = 0
        for s in self.witness:
            if s == G.full:
                return False
            union |= s
        return union == G.full and len(self.witness) == self.value


def _bits(x: int) -> list[int]:
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


def min_set_cover(universe: int, sets: list[int]) -> tuple[list[int], int, int]:
    """Exact minimum cover of ``universe`` (bitmask) by ``sets``.

    Branches on the uncovered point with the fewest covering sets.  The bound is
    a greedy family of uncovered points no two of which share a set: each needs
    its own set.  Returns (chosen set indices, root lower bound, nodes).
    """
    points = _bits(universe)
    hits = {u: [i for i, s in enumerate(sets) if s >> u & 1] for u in points}
    hit_mask = {u: sum(1 << i for i in hits[u]) for u in points}
    if any(not hits[u] for u in points):
        raise NotCoverable("some point lies in no set")

    def lower(uncovered: int) -> int:
        pts = sorted(_bits(uncovered), key=lambda u: len(hits[u]))
        used = 0
        count = 0
        for u in pts:
            if hit_mask[u] & used == 0:
                used |= hit_mask[u]
                count += 1
        return count

    # greedy incumbent
    best: list[int] = []
    left = universe
    while left:
        i = max(range(len(sets)), key=lambda j: bin(sets[j] & left).count("1"))
        best.append(i)
        left &= ~sets[i]
    nodes = 0
    root_lb = lower(universe)

    def rec(uncovered: int, chosen: list[int]):
        nonlocal best, nodes
        nodes += 1
        if not uncovered:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        if len(chosen) + lower(uncovered) >= len(best):
            return
        u = min(_bits(uncovered), key=lambda p: len(hits[p]))
        options = sorted(hits[u], key=lambda i: -bin(sets[i] & uncovered).count("1"))
        for i in options:
            chosen.append(i)
            rec(uncovered & ~sets[i], chosen)
            chosen.pop()
            if len(best) <= root_lb:
                return

    rec(universe, [])
    return best, root_lb, nodes


def sigma_exact(G: SmallGroup, cover_sets: list[int] | None = None) -> CoverResult:
    """Covering number of G with an element-complete witness.

    ``cover_sets`` defaults to the maximal subgroups; any family of proper
    subgroups containing them gives the same value.
    """
    t0 = time.perf_counter()
    if G.is_cyclic():
        raise NotCoverable(f"{G.name} is cyclic, hence not coverable")
    if cover_sets is None:
        cover_sets = maximal_subgroups(G)
    # covering the generator of every maximal cyclic subgroup covers everything
    gens = sorted(maximal_cyclic_subgroups(G).values())
    pos = {g: i for i, g in enumerate(gens)}
    universe = (1 << len(gens)) - 1
    projected = []
    for s in cover_sets:
        p = 0
        for g in gens:
            if s >> g & 1:
                p |= 1 << pos[g]
        projected.append(p)
    chosen, lb, nodes = min_set_cover(universe, projected)
    witness = [cover_sets[i] for i in chosen]
    return CoverResult(len(witness), witness, lb, nodes, time.perf_counter() - t0)


def naive_sigma(G: SmallGroup, cover_sets: list[int] | None = None, max_k: int = 12) -> int:
    """Smallest k with some k of the sets covering every element; plain enumeration."""
    import itertools

    if cover_sets is None:
        cover_sets = maximal_subgroups(G)
    for k in range(1, max_k + 1):
        for combo in itertools.combinations(cover_sets, k):
            u = 0
            for s in combo:
                u |= s
            if u == G.full:
                return k
    raise RuntimeError("no covering found within max_k")


# exact clique -----------------------------------------------------------------------


@dataclass
class CliqueResult:
    value: int
    witness: list
    nodes: int
    seconds: float

    def verify(self, G: SmallGroup) -> bool:
        w = self.witness
        if len(set(w)) != len(w) or len(w) != self.value:
            return False
        return all(generation_test(G, a, b) for i, a in enumerate(w) for b in w[i + 1:])


def max_clique(adj: list[int], orbits: list[list[int]] | None = None) -> tuple[list[int], int]:
    """Maximum clique by branch and bound with greedy colouring bounds.

    ``orbits`` is an optional partition of the vertices into orbits of a graph
    automorphism group.  Each root branch then fixes one orbit representative
    and discards the orbits already handled, which is exact because any clique
    can be moved onto one containing the representative of its first orbit.
    """
    best: list[int] = []
    nodes = 0

    def colour_sort(cand: int) -> tuple[list[int], list[int]]:
        order, bounds = [], []
        left = cand
        colour = 0
        while left:
            colour += 1
            q = left
            while q:
                low = q & -q
                v = low.bit_length() - 1
                left &= ~low
                q &= ~low
                q &= ~adj[v]
                order.append(v)
                bounds.append(colour)
        return order, bounds

    def expand(clique: list[int], cand: int):
        nonlocal best, nodes
        nodes += 1
        order, bounds = colour_sort(cand)
        for v, b in zip(reversed(order), reversed(bounds)):
            if len(clique) + b <= len(best):
                return
            clique.append(v)
            nxt = cand & adj[v]
            if nxt:
                expand(clique, nxt)
            elif len(clique) > len(best):
                best = list(clique)
            clique.pop()
            cand &= ~(1 << v)

    if not adj:
        return best, nodes
    full = (1 << len(adj)) - 1
    if orbits is None:
        expand([], full)
        return best, nodes
    remaining = full
    # small orbits last: their neighbourhoods are searched with the most pruning
    for orb in sorted(orbits, key=len, reverse=True):
        v = orb[0]
        cand = remaining & adj[v]
        if cand:
            expand([v], cand)
        elif not best:
            best = [v]
        for u in orb:
            remaining &= ~(1 << u)
    return best, nodes


def _vertex_orbits(G: SmallGroup, masks: list[int]) -> list[list[int]]:
    """Orbits of conjugation on a conjugation-closed list of subgroup masks."""
    conj = G.conjugation_table()
    pos = {m: i for i, m in enumerate(masks)}
    gens = [G.index(p) for p in G.generators]
    seen = [False] * len(masks)
    orbits = []
    for i in range(len(masks)):
        if seen[i]:
            continue
        orb = [i]
        seen[i] = True
        head = 0
        while head < len(orb):
            elems = G.members(masks[orb[head]])
            head += 1
            for g in gens:
                j = pos[G.mask_of(conj[g, elems])]
                if not seen[j]:
                    seen[j] = True
                    orb.append(j)
        orbits.append(orb)
    return orbits


def omega_exact(G: SmallGroup) -> CliqueResult:
    """Clique number of the generating graph with a witness clique."""
    t0 = time.perf_counter()
    if G.order == 1:
        return CliqueResult(1, [0], 0, 0.0)
    if G.is_cyclic():
        # small enough to scan pairs directly
        adj = GeneratingGraph(G).adjacency()
        clique, nodes = max_clique(adj)
        return CliqueResult(len(clique), clique, nodes, time.perf_counter() - t0)
    maxes = maximal_subgroups(G)
    # an element may be swapped for a generator of a maximal cyclic subgroup
    # containing it: that only shrinks its set of maximal overgroups
    cyc = sorted(maximal_cyclic_subgroups(G).items(), key=lambda kv: kv[1])
    verts = [g for _, g in cyc]
    sig = []
    for v in verts:
        s = 0
        for j, m in enumerate(maxes):
            if m >> v & 1:
                s |= 1 << j
        sig.append(s)
    adj = [0] * len(verts)
    for a in range(len(verts)):
        for b in range(a + 1, len(verts)):
            if sig[a] & sig[b] == 0:
                adj[a] |= 1 << b
                adj[b] |= 1 << a
    if not any(adj):
        raise NotTwoGenerated(f"{G.name} is not 2-generated")
    clique, nodes = max_clique(adj, _vertex_orbits(G, [m for m, _ in cyc]))
    witness = [verts[i] for i in clique]
    return CliqueResult(len(witness), witness, nodes, time.perf_counter() - t0)


def write_witness(path, G: SmallGroup, result) -> None:
    """Plain-text witness: one subgroup (element list) or element per line."""
    lines = [f"# {G.name} order {G.order} value {result.value}"]
    if isinstance(result, CoverResult):
        for s in result.witness:
            lines.append(" ".join(str(G.elements[i]) for i in G.members(s)))
    else:
        for i in result.witness:
            lines.append(str(G.elements[i]))
    Path(path).write_text("\n".join(lines) + "\n")
