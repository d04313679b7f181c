"""Marked element sets of G_{n,m} and the checks run on them.

Three kinds of descriptor:

* ``Pi(i)``: elements (x) gamma with x_1 ... x_m tau in the odd class B_i;
* ``Pi0r(r, shift)``: elements (x) gamma^r whose r interleaved products
  x_i x_{i+r} ... x_{i+m-r} tau fall in D_{sigma(i)}, where D_1 holds the
  (n-2)-cycles, D_j (j >= 2) the n-cycles and sigma is the rotation by ``shift``;
  ``shift=None`` means the union over all r rotations;
* ``Pi02Odd``: for odd m, elements (x) gamma^2 whose odd-index product times
  tau times even-index product times tau lies in C = [p, n-p].
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import factorial
from typing import Union

from .perm import (
    CycleType,
    Permutation,
    class_size,
    conjugator,
    cycle_type,
    inverse,
    mul,
    parity,
    random_even,
    random_of_type,
)
from .snsub import b_class, index_set
from .wreath import GroupParams, WreathElement, gamma, random_socle, w_conj


def is_prime(k: int) -> bool:
    if k < 2:
        return False
    f = 2
    while f * f <= k:
        if k % f == 0:
            return False
        f += 1
    return True


def prime_divisors(k: int) -> list[int]:
    return [p for p in range(2, k + 1) if k % p == 0 and is_prime(p)]


def bertrand_prime(n: int) -> int:
    """Smallest prime p with n/3 < p < 2n/3."""
    for p in range(n // 3 + 1, -(-2 * n // 3)):
        if 3 * p > n and 3 * p < 2 * n and is_prime(p):
            return p
    raise AssertionError(f"no prime in ({n}/3, 2*{n}/3)")


@dataclass(frozen=True)
class Pi:
    i: int
    b: CycleType


@dataclass(frozen=True)
class Pi0r:
    r: int
    shift: int | None
    d_classes: tuple = field(default=())

    def classes_at(self, shift: int) -> tuple:
        """Target class for each of the r products under the given rotation."""
        r = self.r
        return tuple(self.d_classes[(j + shift) % r] for j in range(r))


@dataclass(frozen=True)
class Pi02Odd:
    p: int
    c: CycleType


PiDescriptor = Union[Pi, Pi0r, Pi02Odd]


def d_classes(n: int, r: int) -> tuple:
    return (CycleType.of(n - 2, 1, 1),) + (CycleType.of(n),) * (r - 1)


def pi_index(params: GroupParams, i: int) -> Pi:
    return Pi(i, b_class(params.n, i))


def pi_zero(params: GroupParams, r: int, shift: int | None = None) -> PiDescriptor:
    n, m = params.n, params.m
    if (2 * m) % r or not is_prime(r):
        raise ValueError(f"{r} is not a prime divisor of 2m={2 * m}")
    if r == 2 and m % 2:
        p = bertrand_prime(n)
        return Pi02Odd(p, CycleType.of(p, n - p))
    return Pi0r(r, None if shift is None else shift % r, d_classes(n, r))


def pi_descriptors(params: GroupParams, split_shifts: bool = False) -> list:
    """All marked sets for (n, m); with split_shifts each Pi0r is given per rotation."""
    out: list = [pi_index(params, i) for i in index_set(params.n)]
    if params.m == 1:
        return out
    for r in prime_divisors(2 * params.m):
        desc = pi_zero(params, r)
        if split_shifts and isinstance(desc, Pi0r):
            out.extend(pi_zero(params, r, s) for s in range(r))
        else:
            out.append(desc)
    return out


def exponent_of(desc: PiDescriptor) -> int:
    if isinstance(desc, Pi):
        return 1
    if isinstance(desc, Pi0r):
        return desc.r
    return 2


# products ----------------------------------------------------------------------


def _prod(perms) -> Permutation:
    it = iter(perms)
    acc = next(it)
    for p in it:
        acc = mul(acc, p)
    return acc


def full_product(xs, tau: Permutation) -> Permutation:
    """x_1 x_2 ... x_m tau."""
    return mul(_prod(xs), tau)


def chain_products(xs, r: int, tau: Permutation) -> list[Permutation]:
    """[x_i x_{i+r} ... x_{i+m-r} tau for i = 1..r]."""
    return [mul(_prod(xs[j::r]), tau) for j in range(r)]


def odd_m_product(xs, tau: Permutation) -> Permutation:
    """x_1 x_3 ... x_m tau . x_2 x_4 ... x_{m-1} tau."""
    return mul(mul(_prod(xs[0::2]), tau), mul(_prod(xs[1::2]), tau))


def pi0r_shift(g: WreathElement, desc: Pi0r) -> int | None:
    """The rotation whose shift-class contains g, or None."""
    if g.k != desc.r:
        return None
    types = [cycle_type(p) for p in chain_products(g.xs, desc.r, g.params.tau())]
    for s in range(desc.r):
        if tuple(types) == desc.classes_at(s):
            return s
    return None


def pi_membership(g: WreathElement, desc: PiDescriptor) -> bool:
    tau = g.params.tau()
    if g.k != exponent_of(desc) % (2 * g.params.m):
        return False
    if isinstance(desc, Pi):
        return cycle_type(full_product(g.xs, tau)) == desc.b
    if isinstance(desc, Pi0r):
        s = pi0r_shift(g, desc)
        return s is not None and (desc.shift is None or s == desc.shift)
    return cycle_type(odd_m_product(g.xs, tau)) == desc.c


def pi_size(desc: PiDescriptor, params: GroupParams) -> int:
    n, m = params.n, params.m
    alt = factorial(n) // 2
    if isinstance(desc, Pi):
        return alt ** (m - 1) * class_size(desc.b)
    if isinstance(desc, Pi0r):
        one = alt ** (m - desc.r)
        for d in desc.d_classes:
            one *= class_size(d)
        return one if desc.shift is not None else desc.r * one
    return alt ** (m - 1) * class_size(desc.c)


# uniform sampling ----------------------------------------------------------------


def _solve_last(prefix: Permutation | None, target: Permutation, tau: Permutation) -> Permutation:
    """x with prefix . x . tau = target."""
    right = mul(target, tau)
    return right if prefix is None else mul(inverse(prefix), right)


def random_member(desc: PiDescriptor, params: GroupParams, rng) -> WreathElement:
    """Exact uniform sample: free coordinates uniform, one coordinate per equation solved."""
    n, m = params.n, params.m
    tau = params.tau()
    if isinstance(desc, Pi):
        xs = [random_even(n, rng) for _ in range(m - 1)]
        prefix = _prod(xs) if xs else None
        xs.append(_solve_last(prefix, random_of_type(desc.b, rng), tau))
        return WreathElement(params, xs, 1, check=False)
    if isinstance(desc, Pi0r):
        r = desc.r
        shift = desc.shift if desc.shift is not None else rng.randrange(r)
        targets = desc.classes_at(shift)
        xs: list = [None] * m
        for j in range(r):
            idx = list(range(j, m, r))
            for t in idx[:-1]:
                xs[t] = random_even(n, rng)
            prefix = _prod(xs[t] for t in idx[:-1]) if len(idx) > 1 else None
            xs[idx[-1]] = _solve_last(prefix, random_of_type(targets[j], rng), tau)
        return WreathElement(params, xs, r, check=False)
    # odd m: L . x_m . tau . R . tau = c with L = x_1 x_3 ... x_{m-2}, R = x_2 ... x_{m-1}
    xs = [random_even(n, rng) for _ in range(m - 1)]
    left = _prod(xs[0::2])
    right = mul(mul(tau, _prod(xs[1::2])), tau)
    c = random_of_type(desc.c, rng)
    xm = mul(mul(inverse(left), c), inverse(right))
    xs.append(xm)
    return WreathElement(params, xs, 2, check=False)


# checks ----------------------------------------------------------------------------


@dataclass
class ClosureReport:
    params: GroupParams
    trials: int
    seed: int
    checked: int = 0
    failures: list = field(default_factory=list)
    overlaps: list = field(default_factory=list)
    shift_moves: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures and not self.overlaps


def closure_and_disjointness_check(params: GroupParams, trials: int, seed: int) -> ClosureReport:
    """Sampled conjugation closure and pairwise disjointness of every marked set.

    The exhaustive variant at (6,2) lives with the enumeration oracles.
    """
    rng = random.Random(seed)
    descs = pi_descriptors(params)
    report = ClosureReport(params, trials, seed)
    gam = gamma(params)
    for desc in descs:
        for _ in range(trials):
            g = random_member(desc, params, rng)
            if not pi_membership(g, desc):
                report.failures.append(("sampler", desc, g))
                continue
            for h in (gam, random_socle(params, rng)):
                c = w_conj(g, h)
                report.checked += 1
                if not pi_membership(c, desc):
                    report.failures.append(("conjugate", desc, g, h))
            if isinstance(desc, Pi0r):
                s0 = pi0r_shift(g, desc)
                s1 = pi0r_shift(w_conj(g, gam), desc)
                if s1 != (s0 - 1) % desc.r:
                    report.failures.append(("shift", desc, g))
                else:
                    report.shift_moves += 1
            for other in descs:
                if other is not desc and pi_membership(g, other):
                    report.overlaps.append((desc, other, g))
    return report


def base_point(params: GroupParams) -> WreathElement:
    """pi = (z, 1, ..., 1) gamma with z tau an n-cycle, z = (1 2 ... n) tau."""
    n = params.n
    z = mul(Permutation.from_cycles(n, tuple(range(1, n + 1))), params.tau())
    assert parity(z) == 0
    e = Permutation.identity(n)
    return WreathElement(params, (z,) + (e,) * (params.m - 1), 1, check=False)


def single_class_conjugator(g: WreathElement) -> WreathElement:
    """y with g^y equal to the base point, for g in Pi(-1).

    y_1 = a with s^a = z tau (s the full product, a even), y_i = x_i ... x_m tau a tau.
    """
    p = g.params
    tau = p.tau()
    pi = base_point(p)
    s = full_product(g.xs, tau)
    target = mul(pi.xs[0], tau)
    a = conjugator(s, target)
    if parity(a):
        # s itself centralizes s and is odd (an n-cycle with n even)
        a = mul(s, a)
    ys = [a]
    for i in range(1, p.m):
        ys.append(mul(mul(mul(_prod(g.xs[i:]), tau), a), tau))
    return WreathElement(p, ys, 0)


def single_class_check(params: GroupParams, members) -> tuple[bool, list]:
    """Verify every given member of Pi(-1) conjugates to the base point."""
    if params.n % 2:
        raise ValueError("needs even n")
    pi = base_point(params)
    bad = []
    for g in members:
        y = single_class_conjugator(g)
        if w_conj(g, y) != pi:
            bad.append(g)
    return not bad, bad
