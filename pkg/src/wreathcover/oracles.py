"""Brute-force enumeration oracles at desk scale (numpy).

Elements of G_{n,m} for m = 2 are encoded as integers ``(k * N + x1) * N + x2``
where x1, x2 index the sorted list of even permutations and N = |A_n|.  Every
set of elements becomes a boolean mask over the codes, and conjugation by a
fixed element becomes an index map, so membership, closure and intersection
questions are answered exhaustively.

Normalizers are found the slow honest way: g normalizes a subgroup X exactly
when g^-1 h g lies in X for every generator h of X.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial

import numpy as np

from .perm import CycleType, Permutation, alternating_elements, cycle_type, mul, parity
from .snsub import stabilizes


class AltTable:
    """Indexed A_n with a multiplication table and tau-related lookups."""

    def __init__(self, n: int):
        self.n = n
        self.perms = alternating_elements(n)
        self.P = np.array([p._img for p in self.perms], dtype=np.int64)
        self.codes = self._encode(self.P)
        order = np.argsort(self.codes)
        self.perms = [self.perms[i] for i in order]
        self.P = self.P[order]
        self.codes = self.codes[order]
        self.N = len(self.perms)
        dtype = np.int16 if self.N < 32768 else np.int32
        mt = np.empty((self.N, self.N), dtype=dtype)
        for a in range(self.N):
            # mul(a, b)[i] = b[a[i]]
            mt[a] = self.index_of(self.P[:, self.P[a]])
        self.mt = mt
        e = self.idx(Permutation.identity(n))
        self.identity = e
        self.inv = np.argmax(mt == e, axis=1).astype(dtype)
        tau = Permutation.from_cycles(n, (1, 2))
        self.tau = tau
        self.tc = np.array([self.idx(mul(mul(tau, p), tau)) for p in self.perms], dtype=dtype)
        types = sorted({cycle_type(mul(p, tau)) for p in self.perms} | {cycle_type(p) for p in self.perms}, key=lambda c: c.parts)
        self.types = types
        tid = {c: j for j, c in enumerate(types)}
        self.type_id = tid
        self.cls_tau = np.array([tid[cycle_type(mul(p, tau))] for p in self.perms], dtype=np.int16)
        self.cls = np.array([tid[cycle_type(p)] for p in self.perms], dtype=np.int16)

    def _encode(self, arr: np.ndarray) -> np.ndarray:
        weights = self.n ** np.arange(self.n - 1, -1, -1, dtype=np.int64)
        return arr @ weights

    def index_of(self, arr: np.ndarray) -> np.ndarray:
        c = self._encode(arr)
        pos = np.searchsorted(self.codes, c)
        if np.any(self.codes[np.minimum(pos, self.N - 1)] != c):
            raise ValueError("not an even permutation")
        return pos

    def idx(self, p: Permutation) -> int:
        return int(self.index_of(np.array([p._img], dtype=np.int64))[0])

    def conj_by_all(self, h: int) -> np.ndarray:
        """x -> x^-1 h x for every x."""
        return self.mt[self.mt[self.inv, h], np.arange(self.N)]

    def conj_perm(self, phi: Permutation) -> np.ndarray:
        """a -> phi^-1 a phi for an arbitrary phi in S_n."""
        inv = Permutation._raw(tuple(np.argsort(phi._img)))
        return np.array([self.idx(mul(mul(inv, p), phi)) for p in self.perms], dtype=self.mt.dtype)

    def type_of(self, ct: CycleType) -> int:
        return self.type_id.get(ct, -1)

    def closure_size(self, gens: list[int]) -> int:
        seen = np.zeros(self.N, dtype=bool)
        seen[self.identity] = True
        frontier = np.array([self.identity])
        while frontier.size:
            nxt = np.unique(np.concatenate([self.mt[frontier, g] for g in gens]))
            nxt = nxt[~seen[nxt]]
            seen[nxt] = True
            frontier = nxt
        return int(seen.sum())

    def generators_of(self, mask: np.ndarray) -> list[int]:
        """A small generating set of the subgroup given by mask (greedy)."""
        target = int(mask.sum())
        members = np.flatnonzero(mask)
        gens: list[int] = []
        size = 1
        for cand in members[::-1]:
            if size == target:
                break
            trial = self.closure_size(gens + [int(cand)])
            if trial > size:
                gens.append(int(cand))
                size = trial
        assert size == target
        return gens

    def stabilizer_mask(self, desc) -> np.ndarray:
        return np.array([stabilizes(p, desc) for p in self.perms], dtype=bool)


@lru_cache(maxsize=4)
def alt_table(n: int) -> AltTable:
    return AltTable(n)


# G_{n,2} in index form -----------------------------------------------------------------------


class G2Index:
    """All elements of G_{n,2} as code arrays."""

    def __init__(self, n: int):
        self.A = A = alt_table(n)
        self.n = n
        N = A.N
        self.size = 4 * N * N
        codes = np.arange(self.size, dtype=np.int64)
        self.K = codes // (N * N)
        self.X1 = (codes // N) % N
        self.X2 = codes % N

    def encode(self, x1, x2, k) -> np.ndarray:
        N = self.A.N
        return (np.asarray(k) * N + x1) * N + x2

    def element(self, code: int):
        from .wreath import GroupParams, WreathElement

        A = self.A
        N = A.N
        k, x1, x2 = code // (N * N), (code // N) % N, code % N
        return WreathElement(GroupParams(self.n, 2), (A.perms[x1], A.perms[x2]), int(k), check=False)

    def code_of(self, g) -> int:
        A = self.A
        return int(self.encode(A.idx(g.xs[0]), A.idx(g.xs[1]), g.k))

    # conjugation maps
    def conj_gamma(self, sel=slice(None)) -> np.ndarray:
        """Codes of g^gamma: (x1, x2) gamma^k -> (x2^tau, x1) gamma^k."""
        A = self.A
        return self.encode(A.tc[self.X2[sel]], self.X1[sel], self.K[sel])

    def conj_socle(self, y1: int, y2: int, sel=slice(None)) -> np.ndarray:
        """Codes of g^y for y = (y1, y2): (y^-1 . x . A^{-k}(y)) gamma^k."""
        A = self.A
        mt, inv, tc = A.mt, A.inv, A.tc
        # A^{-1}(u1, u2) = (u2, u1^tau)
        shifted = [(y1, y2)]
        for _ in range(3):
            u1, u2 = shifted[-1]
            shifted.append((u2, int(tc[u1])))
        U1 = np.array([s[0] for s in shifted])
        U2 = np.array([s[1] for s in shifted])
        K = self.K[sel]
        n1 = mt[mt[inv[y1], self.X1[sel]], U1[K]]
        n2 = mt[mt[inv[y2], self.X2[sel]], U2[K]]
        return self.encode(n1, n2, K)

    def socle_generators(self) -> list[int]:
        """Two generators of A_n (verified by closure)."""
        n = self.n
        a = Permutation.from_cycles(n, (1, 2, 3))
        b = Permutation.from_cycles(n, tuple(range(2, n + 1)) if n % 2 == 0 else tuple(range(1, n + 1)))
        gens = [self.A.idx(a), self.A.idx(b)]
        assert self.A.closure_size(gens) == self.A.N
        return gens

    def generator_conjugations(self) -> list[np.ndarray]:
        """Conjugation maps for a generating set of G: gamma and (a,1), (b,1), (1,a), (1,b)."""
        e = self.A.identity
        maps = [self.conj_gamma()]
        for a in self.socle_generators():
            maps.append(self.conj_socle(a, e))
            maps.append(self.conj_socle(e, a))
        return maps

    # marked sets
    def pi_mask(self, desc) -> np.ndarray:
        from .pi_classes import Pi, Pi0r

        A = self.A
        if isinstance(desc, Pi):
            prod = A.mt[self.X1, self.X2]
            return (self.K == 1) & (A.cls_tau[prod] == A.type_of(desc.b))
        if isinstance(desc, Pi0r):
            assert desc.r == 2
            shifts = range(2) if desc.shift is None else [desc.shift]
            out = np.zeros(self.size, dtype=bool)
            for s in shifts:
                c1, c2 = desc.classes_at(s)
                out |= (self.K == 2) & (A.cls_tau[self.X1] == A.type_of(c1)) & (A.cls_tau[self.X2] == A.type_of(c2))
            return out
        raise TypeError("odd-m variant does not occur for m = 2")

    # normalizers
    def product_normalizer_mask(self, d1, d2, sel=None) -> np.ndarray:
        """Elements g with (M1 x M2)^g = M1 x M2, M_j = stab(d_j) & A_n."""
        A = self.A
        m1, m2 = A.stabilizer_mask(d1), A.stabilizer_mask(d2)
        e = A.identity
        gens = [(h, e) for h in A.generators_of(m1)] + [(e, h) for h in A.generators_of(m2)]
        if sel is None:
            sel = np.arange(self.size)
        K = self.K[sel]
        ok = np.ones(len(sel), dtype=bool)
        for h1, h2 in gens:
            u1 = A.conj_by_all(h1)[self.X1[sel]]
            u2 = A.conj_by_all(h2)[self.X2[sel]]
            # then conjugate by gamma^k: A(u1, u2) = (u2^tau, u1)
            v1, v2 = u1.copy(), u2.copy()
            for k in range(1, 4):
                pick = K >= k
                t1 = np.where(pick, A.tc[v2], v1)
                t2 = np.where(pick, v1, v2)
                v1, v2 = t1, t2
            ok &= m1[v1] & m2[v2]
        return ok


@lru_cache(maxsize=2)
def g2_index(n: int) -> G2Index:
    return G2Index(n)


def orbit_mask(gi: G2Index, start: int, maps: list[np.ndarray]) -> np.ndarray:
    """Conjugacy-class mask of one element, by BFS over generator conjugations."""
    seen = np.zeros(gi.size, dtype=bool)
    seen[start] = True
    frontier = np.array([start])
    while frontier.size:
        nxt = np.unique(np.concatenate([mp[frontier] for mp in maps]))
        nxt = nxt[~seen[nxt]]
        seen[nxt] = True
        frontier = nxt
    return seen


def full_closure_size(gi: G2Index, gens) -> int:
    """|<gens>| inside G_{n,2}, by BFS on codes with right multiplication."""
    # right multiplication by a fixed element as an index map
    maps = [_right_mul_map(gi, g) for g in gens]
    seen = np.zeros(gi.size, dtype=bool)
    e = gi.encode(gi.A.identity, gi.A.identity, 0)
    seen[e] = True
    frontier = np.array([e])
    while frontier.size:
        nxt = np.unique(np.concatenate([mp[frontier] for mp in maps]))
        nxt = nxt[~seen[nxt]]
        seen[nxt] = True
        frontier = nxt
    return int(seen.sum())


def _right_mul_map(gi: G2Index, h) -> np.ndarray:
    """code(g) -> code(g h) for all g; (x) gamma^k (y) gamma^l = (x . A^{-k}(y)) gamma^{k+l}."""
    A = gi.A
    y1, y2 = A.idx(h.xs[0]), A.idx(h.xs[1])
    shifted = [(y1, y2)]
    for _ in range(3):
        u1, u2 = shifted[-1]
        shifted.append((u2, int(A.tc[u1])))
    U1 = np.array([s[0] for s in shifted])
    U2 = np.array([s[1] for s in shifted])
    K = gi.K
    return gi.encode(A.mt[gi.X1, U1[K]], A.mt[gi.X2, U2[K]], (K + h.k) % 4)


# diagonal normalizer census ------------------------------------------------------------------


@dataclass
class DiagonalCensus:
    n: int
    phi: Permutation
    by_k: dict
    k2_same_type: bool
    k2_pairs_checked: int
    generalized_hits: dict = field(default_factory=dict)

    @property
    def order(self) -> int:
        return sum(self.by_k.values())

    @property
    def empty_intersections(self) -> bool:
        return all(v == 0 for v in self.generalized_hits.values())

    def summary(self) -> dict:
        return {
            "n": self.n,
            "phi": list(self.phi.images),
            "order": self.order,
            "by_k": {str(k): v for k, v in sorted(self.by_k.items())},
            "generalized_hits": dict(sorted(self.generalized_hits.items())),
        }


@lru_cache(maxsize=8)
def diagonal_census(n: int = 7, phi_images: tuple | None = None) -> DiagonalCensus:
    """Enumerate N_G(Delta_phi) in G_{n,2}, Delta_phi = {(a, a^phi)}, over all 4 |A_n|^2 elements.

    Generalized marked sets at odd n: Pi_i-type sets use every odd class for the
    product x_1 x_2 tau; Pi_{0,2}-type sets use any two distinct odd classes for
    x_1 tau and x_2 tau.
    """
    A = alt_table(n)
    phi = Permutation(phi_images) if phi_images else Permutation.identity(n)
    PHI = A.conj_perm(phi)
    a = Permutation.from_cycles(n, (1, 2, 3))
    b = Permutation.from_cycles(n, tuple(range(1, n + 1)) if n % 2 else tuple(range(2, n + 1)))
    gens = [A.idx(a), A.idx(b)]
    assert A.closure_size(gens) == A.N
    N = A.N
    tc = A.tc
    by_k = {}
    k2_same = True
    k2_checked = 0
    hits = {"pi_i_generalized": 0, "pi02_generalized": 0}
    for k in range(4):
        ok = np.ones((N, N), dtype=bool)
        for h in gens:
            u1 = A.conj_by_all(h)[:, None]  # indexed by x1
            u2 = A.conj_by_all(int(PHI[h]))[None, :]  # indexed by x2
            if k == 0:
                v1, v2 = u1, u2
            elif k == 1:
                v1, v2 = tc[u2], u1
            elif k == 2:
                v1, v2 = tc[u1], tc[u2]
            else:
                v1, v2 = u2, tc[u1]
            ok &= PHI[v1] == v2
        by_k[k] = int(ok.sum())
        xs1, xs2 = np.nonzero(ok)
        if k % 2 == 1 and xs1.size:
            prod = A.mt[xs1, xs2]
            # every product x1 x2 tau is odd, so each such element lies in a generalized Pi_i
            hits["pi_i_generalized"] += int(xs1.size)
            assert all(parity(mul(A.perms[p], A.tau)) for p in prod[:10])
        if k == 2:
            same = A.cls_tau[xs1] == A.cls_tau[xs2]
            k2_checked = int(xs1.size)
            k2_same = bool(same.all())
            hits["pi02_generalized"] += int((~same).sum())
    return DiagonalCensus(n, phi, by_k, k2_same, k2_checked, hits)


def diagonal_expected_order(n: int, m: int = 2, t: int = 2) -> int:
    return 2 * m * (factorial(n) // 2) ** (m // t)


# exhaustive marked-set checks at m = 2 ------------------------------------------------------


def _labelled_pi_masks(gi: G2Index) -> dict:
    from .pi_classes import pi_descriptors
    from .wreath import GroupParams

    params = GroupParams(gi.n, 2)
    out = {}
    for desc in pi_descriptors(params, split_shifts=True):
        label = f"Pi({desc.i})" if hasattr(desc, "i") else f"Pi0r(r={desc.r},shift={desc.shift})"
        out[label] = (desc, gi.pi_mask(desc))
    return out


def exhaustive_pi_report(n: int = 6) -> dict:
    """Sizes, conjugation closure and disjointness of every marked set of G_{n,2}."""
    from .pi_classes import pi_size
    from .wreath import GroupParams

    params = GroupParams(n, 2)
    gi = g2_index(n)
    masks = _labelled_pi_masks(gi)
    maps = gi.generator_conjugations()
    sizes, closed, formula = {}, {}, {}
    for label, (desc, mask) in masks.items():
        sizes[label] = int(mask.sum())
        formula[label] = pi_size(desc, params)
        idx = np.flatnonzero(mask)
        if label.startswith("Pi0r"):
            # gamma moves one rotation onto the other; the socle fixes each
            closed[label] = all(bool(mask[mp[idx]].all()) for mp in maps[1:])
        else:
            closed[label] = all(bool(mask[mp[idx]].all()) for mp in maps)
    shift_labels = [lab for lab in masks if lab.startswith("Pi0r")]
    union = np.zeros(gi.size, dtype=bool)
    for lab in shift_labels:
        union |= masks[lab][1]
    if shift_labels:
        uidx = np.flatnonzero(union)
        closed["Pi0r(union)"] = all(bool(union[mp[uidx]].all()) for mp in maps)
        sizes["Pi0r(union)"] = int(union.sum())
        s0, s1 = (masks[lab][1] for lab in shift_labels)
        gamma_swaps = bool(s1[maps[0][np.flatnonzero(s0)]].all() and s0[maps[0][np.flatnonzero(s1)]].all())
    else:
        gamma_swaps = True
    labels = list(masks)
    overlaps = {
        f"{a}&{b}": int((masks[a][1] & masks[b][1]).sum())
        for i, a in enumerate(labels)
        for b in labels[i + 1:]
    }
    return {
        "n": n,
        "sizes": sizes,
        "formula_sizes": formula,
        "sizes_match": all(sizes[lab] == formula[lab] for lab in formula),
        "closed": closed,
        "gamma_swaps_rotations": gamma_swaps,
        "overlaps": overlaps,
        "disjoint": not any(overlaps.values()),
        "ok": all(closed.values()) and gamma_swaps and not any(overlaps.values())
        and all(sizes[lab] == formula[lab] for lab in formula),
    }


def exhaustive_normalizer_counts(n: int = 6, descs=None) -> dict:
    """|N_G(M^2) & Pi| by enumeration against the class-count formula, for each M and Pi."""
    from .covering import ProductNormalizer, count_pi_in_normalizer, subgroup_order
    from .snsub import bipartition, dblocks, kset, text
    from .wreath import GroupParams

    params = GroupParams(n, 2)
    gi = g2_index(n)
    if descs is None:
        descs = [bipartition(n)] + [kset(n, i) for i in range(1, n // 2)]
        descs += [dblocks(n, d) for d in range(3, n // 2 + 1) if n % d == 0]
    masks = _labelled_pi_masks(gi)
    rows = []
    for d in descs:
        norm = gi.product_normalizer_mask(d, d)
        order = int(norm.sum())
        row = {
            "subgroup": text(d),
            "order": order,
            "order_formula": subgroup_order(ProductNormalizer(d), params),
            "counts": {},
            "formula": {},
        }
        for label, (desc, mask) in masks.items():
            row["counts"][label] = int((norm & mask).sum())
            row["formula"][label] = count_pi_in_normalizer(d, desc, params)
        row["ok"] = row["order"] == row["order_formula"] and row["counts"] == row["formula"]
        rows.append(row)
    return {"n": n, "rows": rows, "ok": all(r["ok"] for r in rows)}


def exhaustive_single_class(n: int = 6) -> tuple[bool, int]:
    """Run the explicit conjugator on every element of Pi(-1) in G_{n,2}."""
    from .pi_classes import pi_index, single_class_check
    from .wreath import GroupParams

    gi = g2_index(n)
    mask = gi.pi_mask(pi_index(GroupParams(n, 2), -1))
    members = [gi.element(int(c)) for c in np.flatnonzero(mask)]
    ok, bad = single_class_check(GroupParams(n, 2), members)
    return ok, len(members)
