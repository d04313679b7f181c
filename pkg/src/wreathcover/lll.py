"""Local-lemma certificate for large cliques in the generating graph of G_{n,m}.

The clique candidates are one element of C(H) = Pi(-1) ∩ H for every H in the
G-class of N_G(M^m), M the even part of a balanced-bipartition stabilizer.
There are l = C(n,n/2)^m / 2^m such H, each pair is an event "fails to
generate", and each event shares a subgroup with d = 2(l-2) others.  If every
event has probability at most 1/(e(d+1)), some choice generates pairwise and
omega(G) >= l.

The probability is split by the type of maximal subgroup that could contain the
pair.  Every case bound below is an exact rational built from factorials; the
constant e only enters the threshold, through an interval enclosure.
"""

from __future__ import annotations

import itertools
import random
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, isqrt

from .covering import ProductNormalizer, SocleIndex, act_on_coords, contains, sigma_formula
from .intervals import DEFAULT_PRECISION, IntervalRational, e_interval
from .pi_classes import Pi, b_class, prime_divisors, random_member
from .snsub import all_in_family, normalize
from .wreath import GroupParams, OutsideHypotheses

CASES = (1, 2, 3, 4, 5, 6)


@dataclass(frozen=True)
class CliqueFamilyStats:
    n: int
    m: int
    l: int
    d: int
    c_h: int


def clique_family_stats(n: int, m: int) -> CliqueFamilyStats:
    """(l, d, |C(H)|) with |C(H)| = (2/n)(n/2)!^{2m}."""
    if n % 2:
        raise ValueError("n must be even")
    l = comb(n, n // 2) ** m // 2**m
    c_h = 2 * factorial(n // 2) ** (2 * m) // n
    return CliqueFamilyStats(n, m, l, 2 * (l - 2), c_h)


def _c_h(n: int, m: int) -> int:
    return clique_family_stats(n, m).c_h


def _f_product(n: int, m: int, stab_order: int) -> Fraction:
    """2m stab_order^m / |C(H)|, an upper bound on the share f of K.

    ``stab_order`` is the order of the stabilizer in S_n.  The true |K| uses the
    even part, half as large in each coordinate; the looser S_n order is kept.
    """
    return Fraction(2 * m * stab_order**m, _c_h(n, m))


def case_bound(j: int, n: int, m: int, path: str = "auto") -> Fraction:
    """Exact upper bound on the probability that the pair lies in a type-j subgroup.

    1 intransitive, 2 primitive, 3 three blocks, 4 four blocks, 5 at least five
    blocks, 6 diagonal.  Each uses at most (number of classes) x (conjugates
    through a marked element, <= nm) x (largest share f).  For case 4 with
    4 | n the default path instead uses that at most one such subgroup meets
    both candidate sets, giving f^2; ``path="star"`` forces the generic route.
    """
    if j not in CASES:
        raise ValueError(f"no case {j}")
    if n % 2:
        raise ValueError("n must be even")
    nm = n * m
    if j == 1:
        # intransitive subgroups contain no n-cycle, so no marked element
        return Fraction(0)
    if j == 2:
        # primitive: c <= n classes, |K| <= 2m 4^{mn}
        return Fraction(m * m * n**3 * 4 ** (m * n), factorial(n // 2) ** (2 * m))
    if j == 3:
        if n % 6:
            return Fraction(0)
        six = n // 6
        share = Fraction(n, 2) * Fraction(factorial(six) ** 6 * factorial(6), factorial(n // 2) ** 2) ** m
        return nm * share
    if j == 4:
        if n % 4:
            return Fraction(0)
        f = _f_product(n, m, factorial(n // 4) ** 4 * factorial(4))
        if path == "star":
            return nm * f
        if path not in ("auto", "s"):
            raise ValueError(f"unknown path {path!r}")
        return f * f
    if j == 5:
        blocks = [b for b in range(5, n // 2 + 1) if n % b == 0]
        if not blocks:
            return Fraction(0)
        biggest = max(factorial(n // b) ** b * factorial(b) for b in blocks)
        # the class count is an integer at most 2 sqrt(n)
        return isqrt(4 * n) * nm * _f_product(n, m, biggest)
    t = min(prime_divisors(m))
    k_order = 2 * m * (factorial(n) // 2) ** (m // t)
    return m * 2**m * nm * Fraction(k_order, _c_h(n, m))


def case2_display(n: int, m: int, prec: int = DEFAULT_PRECISION) -> IntervalRational:
    """m^2 n^3 (8e/n)^{nm}, the Stirling-simplified form of case 2."""
    e = e_interval(prec)
    return m * m * n**3 * (e * Fraction(8, n)) ** (n * m)


@dataclass
class BoundReport:
    n: int
    m: int
    l: int
    d: int
    c_h: int
    cases: dict
    total: Fraction
    threshold: IntervalRational
    precision: int
    verdict: bool
    extras: dict = field(default_factory=dict)

    @property
    def margin(self) -> Fraction:
        """Lower threshold endpoint minus the bound; positive when certified."""
        return self.threshold.lower - self.total

    def conclusion(self) -> str | None:
        if not self.verdict:
            return None
        return f"omega(G_{{{self.n},{self.m}}}) >= {self.l}"


def lll_verdict(n: int, m: int, prec: int = DEFAULT_PRECISION) -> BoundReport:
    if n % 2 or m < 2:
        raise ValueError("needs n even and m >= 2")
    st = clique_family_stats(n, m)
    cases = {j: case_bound(j, n, m) for j in CASES}
    total = sum(cases.values(), Fraction(0))
    threshold = (e_interval(prec) * (st.d + 1)).reciprocal()
    verdict = total <= threshold.lower
    extras = {
        "l_below_2^(m(n-1))": st.l < 2 ** (m * (n - 1)),
        "d_at_most_2^(mn)": st.d <= 2 ** (m * n),
        # closing comparison: total against (1/2)^{mn}
        "total_times_2^(mn)": total * 2 ** (m * n),
        "below_half_power": total <= Fraction(1, 2 ** (m * n)),
    }
    if n % 4 == 0:
        star = case_bound(4, n, m, path="star")
        extras["case4_star"] = star
        extras["verdict_with_case4_star"] = total - cases[4] + star <= threshold.lower
    disp = case2_display(n, m, prec)
    extras["case2_display_upper"] = disp.upper
    extras["case2_exact_within_display"] = cases[2] <= disp.upper
    return BoundReport(n, m, st.l, st.d, st.c_h, cases, total, threshold, prec, verdict, extras)


@dataclass
class ThresholdScan:
    m: int
    ns: list
    verdicts: dict
    n0: int | None
    n0_eventual: int | None
    monotone: bool
    stable: bool


def threshold_scan(m: int, n_max: int = 240, step: int = 12, prec: int = DEFAULT_PRECISION) -> ThresholdScan:
    """Verdicts on n = step, 2 step, ... <= n_max.

    ``n0`` is the first certified n, ``n0_eventual`` the first n from which every
    scanned n is certified, ``monotone`` whether those coincide.  ``stable``
    records that doubling the interval precision changes no verdict.
    """
    ns = list(range(step, n_max + 1, step))
    verdicts = {}
    stable = True
    for n in ns:
        v = lll_verdict(n, m, prec).verdict
        if lll_verdict(n, m, 2 * prec).verdict != v:
            stable = False
        verdicts[n] = v
    n0 = next((n for n in ns if verdicts[n]), None)
    eventual = None
    for n in reversed(ns):
        if not verdicts[n]:
            break
        eventual = n
    monotone = n0 is not None and n0 == eventual
    return ThresholdScan(m, ns, verdicts, n0, eventual, monotone, stable)


# conjugates through a marked element ------------------------------------------------


def conjugate_count_check(params: GroupParams, subgroup, g=None, cap: int = 200_000) -> int:
    """Number of G-conjugates of the subgroup that contain g (a marked element).

    ``subgroup`` is a SocleIndex or a ProductNormalizer whose base is a k-set,
    a balanced bipartition or a block system.  Conjugates of N_G(M^m) are the
    normalizers of all m-tuples of A_n-conjugates of M, which are enumerated.
    Raises AssertionError if the count exceeds nm.
    """
    n, m = params.n, params.m
    if g is None:
        g = random_member(Pi(-1, b_class(n, -1)), params, random.Random(0))
    if isinstance(subgroup, SocleIndex):
        count = 1 if contains(subgroup, g) else 0
    elif isinstance(subgroup, ProductNormalizer):
        orbit = [normalize(d) for d in all_in_family(subgroup.base)]
        if len(orbit) ** m > cap:
            raise ValueError(f"{len(orbit)}^{m} conjugates exceed the cap {cap}")
        count = 0
        for coords in itertools.product(orbit, repeat=m):
            if act_on_coords(coords, g) == coords:
                count += 1
    else:
        raise TypeError(f"unsupported subgroup {subgroup!r}")
    assert count <= n * m, f"{count} conjugates contain g, above nm = {n * m}"
    return count


# ratio --------------------------------------------------------------------------------


@dataclass
class RatioScan:
    m: int
    ns: list
    ratios: dict
    certified: dict
    n1: int | None
    monotone: bool


def omega_sigma_ratio(n: int, m: int, check: bool = True) -> tuple[Fraction, bool]:
    """l / sigma as an exact rational, and whether the local-lemma verdict holds.

    When the verdict holds this bounds omega/sigma from below; otherwise the
    second value is False and the ratio is only indicative.
    """
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", OutsideHypotheses)
        sigma = sigma_formula(n, m)
    l = clique_family_stats(n, m).l
    certified = lll_verdict(n, m).verdict if check else False
    return Fraction(l, sigma), certified


def ratio_scan(m: int, n_max: int = 480, step: int = 12, target: Fraction = Fraction(99, 100)) -> RatioScan:
    ns = list(range(step, n_max + 1, step))
    ratios, certified = {}, {}
    for n in ns:
        ratios[n], certified[n] = omega_sigma_ratio(n, m)
    n1 = next((n for n in ns if ratios[n] > target and certified[n]), None)
    monotone = all(ratios[a] < ratios[b] for a, b in zip(ns, ns[1:]))
    return RatioScan(m, ns, ratios, certified, n1, monotone)
