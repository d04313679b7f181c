"""The covering family of G_{n,m}, its witnesses, counting formulas and d(H) bounds.

The family consists of

* the index-r overgroups A_n^m x| <gamma^r> of the socle, one per prime r | 2m;
* the normalizers N_G(M x M^{a_2} x ... x M^{a_m}) where M is the even part of a
  balanced-bipartition stabilizer (one G-class) or of an i-set stabilizer with
  1 <= i < n/3 (one G-class per i).

A competitor is any other maximal subgroup; each must satisfy d(H) < 1, where
d(H) sums, over the marked sets, the share of each set that H can absorb.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, gcd
from typing import Union

from .intervals import DEFAULT_PRECISION, IntervalRational, e_interval, pi_interval
from .perm import CycleType, class_size, mul, representative
from .pi_classes import (
    Pi,
    Pi0r,
    Pi02Odd,
    full_product,
    is_prime,
    pi_descriptors,
    pi_index,
    pi_size,
    prime_divisors,
)
from .snsub import (
    Bipartition,
    DBlocks,
    KSet,
    PrimitiveBound,
    b_class,
    bipartition,
    class_count_in,
    dblocks,
    eric_sum_bound,
    f_members_containing,
    image,
    index_set,
    kset,
    normalize,
    odd_element,
    outside_theorem,
    stabilizer_order,
    text,
)
from .wreath import GroupParams, OutsideHypotheses, WreathElement, w_order, w_pow

ERIC_CONSTANT = Fraction(9925, 10000)


@dataclass(frozen=True)
class SocleIndex:
    r: int


@dataclass(frozen=True)
class ProductNormalizer:
    """N_G(M^{a_1} x ... x M^{a_m}); ``conjugators`` None means the whole G-class."""

    base: object
    conjugators: tuple | None = None

    def coords(self) -> tuple:
        if self.conjugators is None:
            raise ValueError("class-level descriptor has no coordinates")
        base = normalize(self.base)
        return (base,) + tuple(image(base, a) for a in self.conjugators)


@dataclass(frozen=True)
class Diagonal:
    t: int
    phi: tuple | None = None


MaximalClassDescriptor = Union[SocleIndex, ProductNormalizer, Diagonal]


def alpha(k: int) -> int:
    """Number of distinct prime factors."""
    return len(prime_divisors(k))


def subgroup_order(desc: MaximalClassDescriptor, params: GroupParams) -> int:
    n, m = params.n, params.m
    if isinstance(desc, SocleIndex):
        return params.order // desc.r
    if isinstance(desc, ProductNormalizer):
        return 2 * m * (stabilizer_order(desc.base) // 2) ** m
    return 2 * m * (factorial(n) // 2) ** (m // desc.t)


def _gamma_on_coords(coords: tuple, tau) -> tuple:
    """Conjugation by gamma on coordinate descriptors: (D_m^tau, D_1, ..., D_{m-1})."""
    return (image(coords[-1], tau),) + tuple(coords[:-1])


def act_on_coords(coords: tuple, g: WreathElement) -> tuple:
    """(M_1 x ... x M_m)^g at the level of descriptors."""
    tau = g.params.tau()
    out = tuple(image(d, x) for d, x in zip(coords, g.xs))
    for _ in range(g.k):
        out = _gamma_on_coords(out, tau)
    return tuple(normalize(d) for d in out)


def contains(desc: MaximalClassDescriptor, g: WreathElement) -> bool:
    if isinstance(desc, SocleIndex):
        return g.k % desc.r == 0
    if isinstance(desc, ProductNormalizer):
        coords = tuple(normalize(d) for d in desc.coords())
        return act_on_coords(coords, g) == coords
    raise NotImplementedError("diagonal subgroups are handled by the enumeration oracle")


# the formula ------------------------------------------------------------------------------


def _check_scale(n: int, m: int) -> list[str]:
    flags = []
    if outside_theorem(n):
        flags.append("outside theorem hypotheses")
        warnings.warn(f"n={n} is outside the theorem hypotheses", OutsideHypotheses, stacklevel=3)
    if m == 1:
        flags.append("m=1 degenerate")
    return flags


def sigma_formula(n: int, m: int) -> int:
    """alpha(2m) + (C(n,n/2)/2)^m + sum_{i=1}^{n/3-1} C(n,i)^m."""
    if n % 6:
        raise ValueError("the formula needs n = 0 mod 6")
    _check_scale(n, m)
    return alpha(2 * m) + (comb(n, n // 2) // 2) ** m + sum(comb(n, i) ** m for i in range(1, n // 3))


@dataclass
class CoveringDesign:
    params: GroupParams
    classes: list
    total: int
    flags: list = field(default_factory=list)


def covering_classes(n: int, m: int) -> CoveringDesign:
    if n % 6:
        raise ValueError("the covering family needs n = 0 mod 6")
    flags = _check_scale(n, m)
    params = GroupParams(n, m)
    classes: list = [(SocleIndex(r), 1) for r in prime_divisors(2 * m)]
    classes.append((ProductNormalizer(bipartition(n)), (comb(n, n // 2) // 2) ** m))
    for i in range(1, n // 3):
        classes.append((ProductNormalizer(kset(n, i)), comb(n, i) ** m))
    return CoveringDesign(params, classes, sum(s for _, s in classes), flags)


# witnesses --------------------------------------------------------------------------------


def coprime_exponent(g: WreathElement) -> int:
    """t with k t = 1 mod 2m and gcd(t, |g|) = 1, so that <g> = <g^t>."""
    two_m = 2 * g.params.m
    inv = pow(g.k, -1, two_m)
    o = w_order(g)
    t = inv
    while gcd(t, o) != 1:
        t += two_m
    return t


def witness_member(g: WreathElement):
    """A covering-family member containing g, or None when none is found."""
    two_m = 2 * g.params.m
    c = gcd(g.k, two_m)
    if c != 1:
        return SocleIndex(min(prime_divisors(c)))
    h = w_pow(g, coprime_exponent(g)) if g.k != 1 else g
    s = full_product(h.xs, g.params.tau())
    members = f_members_containing(s)
    if not members:
        return None
    base = normalize(members[0])
    conj = []
    acc = None
    for x in h.xs[:-1]:
        acc = x if acc is None else mul(acc, x)
        conj.append(acc)
    return ProductNormalizer(base, tuple(conj))


# counting ------------------------------------------------------------------------------------


def _normalizer_precondition(mdesc) -> int:
    if isinstance(mdesc, PrimitiveBound):
        raise TypeError("element counts need an explicit stabilizer")
    odd_element(mdesc)  # raises when the stabilizer lies inside A_n
    return stabilizer_order(mdesc)


def count_pi_in_normalizer(mdesc, pidesc, params: GroupParams) -> int:
    """|N_G(M^m) & Pi| from class counts inside N_{S_n}(M)."""
    big_n = _normalizer_precondition(mdesc)
    half = big_n // 2
    m = params.m
    if isinstance(pidesc, Pi):
        return half ** (m - 1) * class_count_in(pidesc.b, mdesc)
    if isinstance(pidesc, Pi0r):
        one = half ** (m - pidesc.r)
        for d in pidesc.d_classes:
            one *= class_count_in(d, mdesc)
        return one if pidesc.shift is not None else pidesc.r * one
    return half ** (m - 1) * class_count_in(pidesc.c, mdesc)


# uniqueness ----------------------------------------------------------------------------------


@dataclass
class UniquenessReport:
    n: int
    rows: list
    d_class_ok: bool
    flags: list

    @property
    def ok(self) -> bool:
        return self.d_class_ok and all(r["ok"] for r in self.rows)

    @property
    def findings(self) -> list:
        return [r for r in self.rows if not r["ok"]]


def _family_index(desc) -> int:
    if isinstance(desc, KSet):
        return desc.i
    return -1


def uniqueness_check(n: int, m: int = 2) -> UniquenessReport:
    """One containing member per B_i representative, and of the family i."""
    if n % 6:
        raise ValueError("needs n = 0 mod 6")
    flags = ["outside theorem hypotheses"] if outside_theorem(n) else []
    rows = []
    for i in index_set(n):
        ct = b_class(n, i)
        members = f_members_containing(representative(ct))
        fams = [_family_index(d) for d in members]
        rows.append(
            {
                "i": i,
                "class": str(ct),
                "members": [text(d) for d in members],
                "ok": len(members) == 1 and fams[0] == i,
            }
        )
    # no family member meets every D-class (so M_{0,r} alone covers Pi_{0,r})
    d_ok = True
    for r in prime_divisors(2 * m):
        if r == 2 and m % 2:
            continue
        ds = (CycleType.of(n - 2, 1, 1), CycleType.of(n))
        for fam in [bipartition(n)] + [kset(n, i) for i in range(1, n // 3)]:
            if all(class_count_in(d, fam) for d in ds):
                d_ok = False
    return UniquenessReport(n, rows, d_ok, flags)


# competitors and d(H) ------------------------------------------------------------------------


def competitors(n: int) -> list:
    """Maximal-subgroup families of S_n outside the covering family (primitive by bound only)."""
    out: list = [kset(n, k) for k in range(-(-n // 3), (n + 1) // 2) if 2 * k < n]
    out += [dblocks(n, d) for d in range(3, n // 2 + 1) if n % d == 0]
    out.append(PrimitiveBound(n))
    return out


def is_covering_family(desc) -> bool:
    if isinstance(desc, KSet):
        return min(desc.i, desc.n - desc.i) < desc.n / 3
    return isinstance(desc, Bipartition) or (isinstance(desc, DBlocks) and desc.d == 2)


@dataclass
class DReport:
    kind: str
    params: GroupParams
    terms: dict
    bound: Fraction
    extras: dict = field(default_factory=dict)
    flags: list = field(default_factory=list)

    @property
    def verdict(self) -> bool:
        return self.bound < 1

    @property
    def margin(self) -> Fraction:
        return 1 - self.bound


def _pi0_ratio_bound(big_n: int, n: int, m: int, r: int) -> Fraction:
    base = Fraction(big_n, factorial(n)) ** m
    if r == 2 and m % 2:
        return base * 2 * n * (n - 2)
    return base * 2 * (n - 2) * n ** (r - 1)


def eric_sum_exact(mdesc, n: int) -> Fraction:
    """sum_i |B_i & N| / |B_i & N_i| over the covering families, for an explicit competitor."""
    total = Fraction(0)
    for i in index_set(n):
        b = b_class(n, i)
        total += Fraction(class_count_in(b, mdesc), class_count_in(b, bipartition(n) if i == -1 else kset(n, i)))
    return total


def closed_form_bound(n: int, m: int, prec: int = DEFAULT_PRECISION) -> IntervalRational:
    """Upper enclosure of 2m [(2^{2/3}/3)^n n e^2 sqrt(n) / (3 sqrt(pi))]^m + 0.9925."""
    e = e_interval(prec)
    c = IntervalRational.exact(4, prec).root(3) / 3
    inner = (c**n) * n * (e * e) * IntervalRational.exact(n, prec).sqrt() / (3 * pi_interval(prec).sqrt())
    return inner**m * (2 * m) + ERIC_CONSTANT


def d_value_product(mdesc, params: GroupParams) -> DReport:
    n, m = params.n, params.m
    if is_covering_family(mdesc):
        raise ValueError(f"{text(mdesc)} belongs to the covering family")
    big_n = stabilizer_order(mdesc)
    cap = factorial(n // 3) * factorial(2 * n // 3)
    terms: dict = {}
    extras: dict = {"normalizer_order": big_n, "uniform_cap": cap, "cap_holds": big_n <= cap}
    for r in prime_divisors(2 * m):
        terms[f"pi0:{r}"] = _pi0_ratio_bound(big_n, n, m, r)
    eric30 = eric_sum_bound(30)
    extras["eric_n"] = eric_sum_bound(n)
    extras["eric_30_below_constant"] = eric30 < ERIC_CONSTANT
    extras["eric_n_below_30"] = eric_sum_bound(n) <= eric30
    terms["pi_i"] = ERIC_CONSTANT
    if not isinstance(mdesc, PrimitiveBound):
        exact = eric_sum_exact(mdesc, n)
        extras["eric_sum_exact"] = exact
        extras["eric_sum_exact_below_bound"] = exact <= eric30
        for desc in pi_descriptors(params):
            if isinstance(desc, Pi):
                continue
            key = f"pi0_exact:{getattr(desc, 'r', 2)}"
            extras[key] = Fraction(count_pi_in_normalizer(mdesc, desc, params), pi_size(desc, params))
    bound = sum(terms.values(), Fraction(0))
    flags = ["outside theorem hypotheses"] if outside_theorem(n) else []
    return DReport(f"product:{text(mdesc)}", params, terms, bound, extras, flags)


def d_value_diagonal(t: int, params: GroupParams, census: bool = False) -> DReport:
    n, m = params.n, params.m
    if not is_prime(t) or m % t:
        raise ValueError(f"t={t} must be a prime divisor of m={m}")
    if n == 6:
        raise ValueError("diagonal subgroups are not constructed for n = 6")
    flags = ["outside theorem hypotheses"] if outside_theorem(n) else []
    if m == 2:
        extras: dict = {"argument": "no element of N_G(Delta) meets a marked set"}
        if census:
            from .oracles import diagonal_census

            c = diagonal_census(7)
            extras["census_n7"] = c.summary()
            if not c.empty_intersections:
                raise AssertionError("diagonal normalizer meets a marked set at n=7")
        return DReport(f"diagonal:t={t}", params, {"all": Fraction(0)}, Fraction(0), extras, flags)
    order = 2 * m * (factorial(n) // 2) ** (m // t)
    nr = len(prime_divisors(2 * m))
    pi0 = Fraction(nr * 2 ** (m - 2) * n**m, factorial(n) ** m)
    pii = Fraction(n // 3, factorial(n // 2) ** (2 * (m - 1)))
    terms = {"pi0": order * pi0, "pi_i": order * pii}
    return DReport(f"diagonal:t={t}", params, terms, sum(terms.values(), Fraction(0)), {"order": order}, flags)


# order lemmas ---------------------------------------------------------------------------------


def block_factorial_check(nmax: int = 300) -> dict:
    """(n/d)!^d d! <= 2 (n/2)!^2 for even n <= nmax, 2 <= d <= n/2, d | n; equality iff d = 2."""
    checked = 0
    failures = []
    for n in range(4, nmax + 1, 2):
        rhs = 2 * factorial(n // 2) ** 2
        for d in range(2, n // 2 + 1):
            if n % d:
                continue
            lhs = factorial(n // d) ** d * factorial(d)
            checked += 1
            if lhs > rhs or (lhs == rhs) != (d == 2):
                failures.append((n, d))
    # odd n have no d = 2 comparison; the inequality is only used for even n
    return {"checked": checked, "failures": failures, "ok": not failures}


def normalizer_order_check(n: int) -> dict:
    """For every competitor H and covering index i: |H| <= |N_{S_n}(M_i)| or H & B_i is empty."""
    rows = []
    ok = True
    for h in competitors(n):
        ho = stabilizer_order(h)
        for i in index_set(n):
            cov = bipartition(n) if i == -1 else kset(n, i)
            fits = ho <= stabilizer_order(cov)
            empty = None
            if not fits and not isinstance(h, PrimitiveBound):
                empty = class_count_in(b_class(n, i), h) == 0
            good = fits or bool(empty)
            ok &= good
            rows.append((text(h), i, fits, empty, good))
    extra = 4**n <= 2 * factorial(n // 2) ** 2
    return {"n": n, "rows": rows, "primitive_cap_fits": extra, "ok": ok and extra}


# consolidated -------------------------------------------------------------------------------


def verify_theorem1(params: GroupParams, trials: int = 100, seed: int = 0) -> dict:
    from .pi_classes import closure_and_disjointness_check

    n, m = params.n, params.m
    flags = params.flags()
    closure = closure_and_disjointness_check(params, trials, seed)
    uniq = uniqueness_check(n, m)
    prods = [d_value_product(c, params) for c in competitors(n)]
    diags = [d_value_diagonal(t, params) for t in prime_divisors(m)] if n != 6 else []
    d_ok = all(r.verdict for r in prods + diags)
    certified = closure.ok and uniq.ok and d_ok and not outside_theorem(n) and m >= 2
    return {
        "params": params,
        "flags": flags,
        "sigma": sigma_formula(n, m),
        "closure": closure,
        "uniqueness": uniq,
        "d_product": prods,
        "d_diagonal": diags,
        "conditions": {"closure": closure.ok, "uniqueness": uniq.ok, "d_below_one": d_ok},
        "certified": certified,
    }
