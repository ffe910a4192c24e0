"""Slow reference implementations used to cross-check the package."""

from __future__ import annotations

import cmath
import itertools
from collections import Counter
from fractions import Fraction

from rankdual.characters import dominant_multiplicities
from rankdual.weights import BWeight


def leibniz_det(m):
    n = len(m)
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = -1 if inv % 2 else 1
        for i, p in enumerate(perm):
            term *= m[i][p]
        total += term
    return total


def weight_system(w: BWeight) -> Counter:
    """All weights of V_w with multiplicity, doubled L-coordinates."""
    out: Counter = Counter()
    for dom, mult in dominant_multiplicities(w).items():
        orbit = set()
        for perm in set(itertools.permutations(dom)):
            for signs in itertools.product((1, -1), repeat=len(dom)):
                orbit.add(tuple(x * s for x, s in zip(perm, signs)))
        for v in orbit:
            out[v] += mult
    return out


def tensor_product(a: BWeight, b: BWeight) -> Counter:
    """Classical decomposition of V_a (x) V_b by the Brauer-Klimyk rule."""
    r = a.rank
    rho2 = tuple(2 * (r - i) - 1 for i in range(r))
    out: Counter = Counter()
    for omega, mult in weight_system(b).items():
        v = [x + y + p for x, y, p in zip(a.twice_l, omega, rho2)]
        if 0 in v or len({abs(x) for x in v}) < r:
            continue
        sign = 1
        for x in v:
            if x < 0:
                sign = -sign
        absv = [abs(x) for x in v]
        inv = sum(1 for i in range(r) for j in range(i + 1, r) if absv[i] < absv[j])
        if inv % 2:
            sign = -sign
        srt = sorted(absv, reverse=True)
        tl = [x - p for x, p in zip(srt, rho2)]
        fund = [(tl[i] - tl[i + 1]) // 2 for i in range(r - 1)] + [tl[-1]]
        out[BWeight(r, tuple(fund))] += sign * mult
    return Counter({k: v for k, v in out.items() if v})


def character_by_weights(w: BWeight, twice_u, k: int) -> complex:
    """Double-precision character as a plain sum over the weight system."""
    return sum(
        m * cmath.exp(2j * cmath.pi * Fraction(sum(x * y for x, y in zip(nu, twice_u)), 4 * k))
        for nu, m in weight_system(w).items()
    )


def bracket_instance(rng, r: int, s: int, max_energy2: int = 6):
    """Random (X, Y, m, n, v) for the current bracket, with X = B^a_b and Y = B^b_c
    chained so that [X, Y] is usually nonzero."""
    from rankdual.fock import FockVector, b_matrix, random_monomials

    idx = [(j, p) for j in range(-r, r + 1) for p in range(-s, s + 1)]
    while True:
        a, b, c = (idx[int(i)] for i in rng.integers(0, len(idx), 3))
        x, y = b_matrix(a, b), b_matrix(b, c)
        if x and y:
            break
    m, n = (int(t) for t in rng.integers(-1, 2, 2))
    (mono,) = random_monomials(rng, r, s, max_energy2, 1)
    return x, y, m, n, FockVector({mono: 1})
