"""Arithmetic in G_{n,m} = A_n^m x| <gamma>, gamma = (1,...,1,tau) delta.

Elements are kept in the twisted normal form ``(x_1, ..., x_m) gamma^k`` with
every x_j even and 0 <= k < 2m.  Conjugation by gamma acts on socle tuples as

    A(x_1, ..., x_m) = (x_m^tau, x_1, ..., x_{m-1}),

and the product rule follows from it:

    (x) gamma^k * (y) gamma^l = (x . A^{-k}(y)) gamma^{k+l}.

The ambient embedding G <= S_n wr S_m (pairs of an n-tuple over S_n and a top
permutation of the coordinates) is reachable only through ``to_raw`` and
``canonicalize``; ``to_points`` flattens further to a permutation of n*m points.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from math import factorial, gcd, lcm

from .perm import Permutation, conjugate, inverse, mul, order as perm_order, parity, random_even


class OutsideHypotheses(UserWarning):
    """Raised as a warning when a theorem-level routine runs at test scale."""


@dataclass(frozen=True)
class GroupParams:
    n: int
    m: int

    def __post_init__(self):
        if self.n < 2 or self.m < 1:
            raise ValueError(f"need n >= 2 and m >= 1, got n={self.n}, m={self.m}")

    @property
    def order(self) -> int:
        return (factorial(self.n) // 2) ** self.m * 2 * self.m

    @property
    def theorem_scale(self) -> bool:
        return self.n % 6 == 0 and self.n >= 30 and self.m >= 2

    def flags(self) -> list[str]:
        out = []
        if not (self.n % 6 == 0 and self.n >= 30):
            out.append("outside theorem hypotheses")
        if self.m == 1:
            out.append("m=1 degenerate")
        if self.n == 6:
            out.append("n=6: diagonal-type subgroups excluded")
        return out

    def require_theorem_scale(self) -> None:
        if not self.theorem_scale:
            warnings.warn(f"(n,m)=({self.n},{self.m}) is outside the theorem hypotheses", OutsideHypotheses)

    def tau(self) -> Permutation:
        return Permutation.from_cycles(self.n, (1, 2))


def gamma_action(xs: tuple, steps: int, tau: Permutation | None = None) -> tuple:
    """Apply A = (conjugation by gamma) ``steps`` times to a socle tuple."""
    m = len(xs)
    if tau is None:
        tau = Permutation.from_cycles(xs[0].degree, (1, 2))
    steps %= 2 * m
    xs = tuple(xs)
    # A^m conjugates every coordinate by tau
    if steps >= m:
        xs = tuple(conjugate(x, tau) for x in xs)
        steps -= m
    if steps:
        head = tuple(conjugate(x, tau) for x in xs[m - steps:])
        xs = head + xs[:m - steps]
    return xs


class WreathElement:
    __slots__ = ("params", "xs", "k")

    def __init__(self, params: GroupParams, xs, k: int, check: bool = True):
        xs = tuple(xs)
        if check:
            if len(xs) != params.m or any(x.degree != params.n for x in xs):
                raise ValueError("socle tuple does not match (n, m)")
            if any(parity(x) for x in xs):
                raise ValueError("socle coordinates must be even")
        self.params = params
        self.xs = xs
        self.k = k % (2 * params.m)

    def __mul__(self, other: "WreathElement") -> "WreathElement":
        return w_mul(self, other)

    def __invert__(self) -> "WreathElement":
        return w_inv(self)

    def __pow__(self, e: int) -> "WreathElement":
        return w_pow(self, e)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, WreathElement)
            and self.params == other.params
            and self.k == other.k
            and self.xs == other.xs
        )

    def __hash__(self) -> int:
        return hash((self.xs, self.k))

    def __repr__(self) -> str:
        return serialize(self)

    def is_identity(self) -> bool:
        return self.k == 0 and all(x.is_identity() for x in self.xs)


def identity(params: GroupParams) -> WreathElement:
    e = Permutation.identity(params.n)
    return WreathElement(params, (e,) * params.m, 0, check=False)


def gamma(params: GroupParams) -> WreathElement:
    e = Permutation.identity(params.n)
    return WreathElement(params, (e,) * params.m, 1, check=False)


def socle(params: GroupParams, xs) -> WreathElement:
    return WreathElement(params, xs, 0)


def w_mul(g: WreathElement, h: WreathElement) -> WreathElement:
    if g.params != h.params:
        raise ValueError("elements of different groups")
    p = g.params
    ys = gamma_action(h.xs, -g.k, p.tau()) if g.k else h.xs
    return WreathElement(p, tuple(mul(a, b) for a, b in zip(g.xs, ys)), g.k + h.k, check=False)


def w_inv(g: WreathElement) -> WreathElement:
    inv = tuple(inverse(x) for x in g.xs)
    return WreathElement(g.params, gamma_action(inv, g.k, g.params.tau()), -g.k, check=False)


def w_pow(g: WreathElement, e: int) -> WreathElement:
    if e < 0:
        return w_pow(w_inv(g), -e)
    result = identity(g.params)
    base = g
    while e:
        if e & 1:
            result = w_mul(result, base)
        base = w_mul(base, base)
        e >>= 1
    return result


def w_conj(g: WreathElement, h: WreathElement) -> WreathElement:
    """g^h = h^-1 g h."""
    return w_mul(w_mul(w_inv(h), g), h)


def w_order(g: WreathElement) -> int:
    q = 2 * g.params.m // gcd(g.k, 2 * g.params.m)
    base = w_pow(g, q)
    return q * lcm(*(perm_order(x) for x in base.xs))


def random_element(params: GroupParams, rng, k: int | None = None) -> WreathElement:
    xs = tuple(random_even(params.n, rng) for _ in range(params.m))
    if k is None:
        k = rng.randrange(2 * params.m)
    return WreathElement(params, xs, k, check=False)


def random_socle(params: GroupParams, rng) -> WreathElement:
    return random_element(params, rng, k=0)


# ambient embedding ----------------------------------------------------------------


def _raw_mul(a: tuple, b: tuple) -> tuple:
    ys, top = a
    zs, top2 = b
    # (y) pi * (z) rho = (y_j z_{j^pi})_j  (pi rho)
    return tuple(mul(y, zs[top(j + 1) - 1]) for j, y in enumerate(ys)), mul(top, top2)


def raw_gamma(params: GroupParams) -> tuple:
    n, m = params.n, params.m
    e = Permutation.identity(n)
    delta = Permutation([(j % m) + 1 for j in range(1, m + 1)])
    return (e,) * (m - 1) + (params.tau(),), delta


def to_raw(g: WreathElement) -> tuple:
    """(n-tuple over S_n, top permutation of the m coordinates)."""
    p = g.params
    raw = (g.xs, Permutation.identity(p.m))
    step = raw_gamma(p)
    for _ in range(g.k):
        raw = _raw_mul(raw, step)
    return raw


def canonicalize(params: GroupParams, raw: tuple) -> WreathElement:
    """Normal form of an ambient pair, or ValueError with a diagnosis."""
    ys, top = raw
    n, m = params.n, params.m
    if len(ys) != m or top.degree != m or any(y.degree != n for y in ys):
        raise ValueError("raw pair does not match (n, m)")
    shift = (top(1) - 1) % m
    if any(top(j) != (j - 1 + shift) % m + 1 for j in range(1, m + 1)):
        raise ValueError(f"top permutation {top} is not a power of the m-cycle delta")
    step = raw_gamma(params)
    for k in (shift, shift + m):
        cur = (tuple(ys), top)
        inv_step = _raw_inverse(step)
        for _ in range(k):
            cur = _raw_mul(cur, inv_step)
        xs, rest = cur
        if rest.is_identity() and not any(parity(x) for x in xs):
            return WreathElement(params, xs, k, check=False)
    odd = [j + 1 for j, y in enumerate(ys) if parity(y)]
    raise ValueError(
        f"not in G: top is delta^{shift} but coordinate parities {odd or 'none odd'} "
        f"match neither gamma^{shift} nor gamma^{shift + m}"
    )


def _raw_inverse(a: tuple) -> tuple:
    ys, top = a
    tinv = inverse(top)
    # ((y) pi)^-1 = (y_{j^{pi^-1}}^-1)_j pi^-1
    return tuple(inverse(ys[tinv(j + 1) - 1]) for j in range(len(ys))), tinv


def to_points(g: WreathElement) -> Permutation:
    """The element as a permutation of n*m points; point (i, j) is j*n + i."""
    ys, top = to_raw(g)
    n = g.params.n
    img = []
    for j, y in enumerate(ys):
        tj = top(j + 1) - 1
        img.extend(tj * n + v for v in y._img)
    return Permutation._raw(tuple(img))


# generators --------------------------------------------------------------------------


def generated_order(gens: list, cap: int = 2_000_000) -> int:
    """Order of <gens> for permutations; BFS below ``cap``, Schreier-Sims above."""
    if not gens:
        return 1
    n = gens[0].degree
    seen = {tuple(range(n))}
    frontier = [tuple(range(n))]
    gimgs = [g._img for g in gens]
    while frontier:
        nxt = []
        for a in frontier:
            for gi in gimgs:
                b = tuple(gi[v] for v in a)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
        if len(seen) > cap:
            from sympy.combinatorics import Permutation as SymPerm, PermutationGroup

            return int(PermutationGroup([SymPerm(list(g._img)) for g in gens]).order())
    return len(seen)


def generates_sn(a: Permutation, b: Permutation) -> bool:
    return generated_order([a, b]) == factorial(a.degree)


def standard_generators(params: GroupParams, x1: Permutation, x2: Permutation, check: bool = True):
    """alpha_i = (x_i, 1, ..., 1) gamma for i = 1, 2."""
    if parity(x1) or parity(x2):
        raise ValueError("x_1 and x_2 must be even")
    tau = params.tau()
    if check and params.n <= 12 and not generates_sn(mul(x1, tau), mul(x2, tau)):
        raise ValueError("<x_1 tau, x_2 tau> is not S_n")
    e = Permutation.identity(params.n)
    rest = (e,) * (params.m - 1)
    return (
        WreathElement(params, (x1,) + rest, 1, check=False),
        WreathElement(params, (x2,) + rest, 1, check=False),
    )


# serialization -------------------------------------------------------------------------


def serialize(g: WreathElement) -> str:
    body = ";".join(",".join(map(str, x.images)) for x in g.xs)
    return f"[{body}]^{g.k}"


def deserialize(s: str) -> WreathElement:
    body, _, k = s.strip().rpartition("^")
    perms = [Permutation([int(v) for v in part.split(",")]) for part in body.strip("[]").split(";")]
    params = GroupParams(perms[0].degree, len(perms))
    return WreathElement(params, perms, int(k))
