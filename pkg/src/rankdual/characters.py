"""Weyl characters of so(2r+1) at the roots of unity that enter the Verlinde
sum, the sine product Phi_k, and checks of the determinant, trigonometric and
character identities that drive the dimension comparison.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import DomainError, PrecisionError, ResourceError
from .numeric import DEFAULT, ComplexValue, NumericConfig, to_mpf
from .weights import (
    BWeight,
    ULabel,
    YoungDiagram,
    orbit_bijection_plus,
    orbit_bijection_zero,
    sigma,
    transpose,
    u_label,
    young_to_weight,
)

__all__ = [
    "label_from_integers",
    "label_from_u0",
    "char_value",
    "char_value_oracle",
    "phi_k",
    "root_product",
    "bareiss_det",
    "adjugate",
    "perm_sign",
    "verify_minor_identity",
    "IndexSets",
    "index_sets",
    "CharDualityReport",
    "verify_char_duality",
    "verify_center_trace",
    "verify_trace_lemma",
    "verify_trig1",
    "verify_trig2",
]


# --------------------------------------------------------------------------
# labels


def label_from_integers(u: Sequence[int], level: int) -> ULabel:
    """Spin-class label with the given integer entries."""
    return ULabel(tuple(2 * int(x) for x in sorted(u, reverse=True)), level)


def label_from_u0(u0: Sequence[int], level: int) -> ULabel:
    """Tensor-class label whose entries are u'_i - 1/2."""
    return ULabel(tuple(2 * int(x) - 1 for x in sorted(u0, reverse=True)), level)


def _as_weight(lam: YoungDiagram | BWeight, r: int) -> BWeight:
    if isinstance(lam, YoungDiagram):
        return young_to_weight(lam, r)
    if lam.rank != r:
        raise DomainError(f"weight of rank {lam.rank} evaluated at a rank {r} label")
    return lam


def _orbit_rep(u: ULabel) -> ULabel:
    """Representative with u_1 <= k/2."""
    if u.twice[0] <= u.k:
        return u
    first = 2 * u.k - u.twice[0]
    return ULabel(tuple(sorted((first,) + u.twice[1:], reverse=True)), u.level)


# --------------------------------------------------------------------------
# determinants at working precision


@lru_cache(maxsize=None)
def _unit_table(prec: int, n: int) -> tuple:
    from .numeric import context

    ctx = context(prec)
    return tuple(ctx.expjpi(ctx.mpf(2 * j) / n) for j in range(n))


def _lu_det(ctx, m: list[list]) -> ComplexValue:
    """Determinant by Gaussian elimination with partial pivoting."""
    a = [row[:] for row in m]
    n = len(a)
    det = ctx.mpc(1)
    for c in range(n):
        p = max(range(c, n), key=lambda i: abs(a[i][c]))
        if a[p][c] == 0:
            return ctx.mpc(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        piv = a[c][c]
        det *= piv
        for i in range(c + 1, n):
            f = a[i][c] / piv
            if f:
                for j in range(c + 1, n):
                    a[i][j] -= f * a[c][j]
    return det


def _alternant(prec: int, twice_u: tuple[int, ...], twice_l: tuple[int, ...], k: int):
    """det(z^{u_i l_j} - z^{-u_i l_j}) with z = exp(2 pi i / k)."""
    from .numeric import context

    ctx = context(prec)
    n = 4 * k
    tab = _unit_table(prec, n)
    m = [[tab[(x * y) % n] - tab[(-x * y) % n] for y in twice_l] for x in twice_u]
    return _lu_det(ctx, m)


@lru_cache(maxsize=65536)
def _char_cached(twice_lam: tuple[int, ...], twice_u: tuple[int, ...], k: int, prec: int, tol: float):
    r = len(twice_u)
    shift = tuple(2 * (r - j) - 1 for j in range(r))
    num = _alternant(prec, twice_u, tuple(a + b for a, b in zip(twice_lam, shift)), k)
    den = _alternant(prec, twice_u, shift, k)
    if abs(den) < tol:
        raise PrecisionError(f"Weyl denominator vanishes at label {twice_u} (k={k})")
    return num / den


def char_value(
    lam: YoungDiagram | BWeight, u: ULabel, config: NumericConfig = DEFAULT
) -> ComplexValue:
    """Character of V_lam at exp(2 pi i (mu + rho) / k), mu + rho given by u.

    The value is real at these points; the tiny imaginary residue is kept so
    callers can inspect it.
    """
    w = _as_weight(lam, u.rank)
    return _char_cached(w.twice_l, u.twice, u.k, config.prec, config.identity_tol)


# --------------------------------------------------------------------------
# independent oracle: weight multiplicities by Freudenthal's formula


def _positive_roots(r: int) -> list[tuple[int, ...]]:
    roots = []
    for i in range(r):
        e = [0] * r
        e[i] = 1
        roots.append(tuple(e))
        for j in range(i + 1, r):
            for sgn in (1, -1):
                e = [0] * r
                e[i] = 1
                e[j] = sgn
                roots.append(tuple(e))
    return roots


def _dominant(v: Sequence[int]) -> tuple[int, ...]:
    return tuple(sorted((abs(x) for x in v), reverse=True))


def _below(top: Sequence[int], v: Sequence[int]) -> bool:
    a = b = 0
    for x, y in zip(top, v):
        a += x
        b += y
        if b > a:
            return False
    return True


def dominant_multiplicities(w: BWeight, max_twice_size: int = 24) -> dict[tuple[int, ...], int]:
    """Multiplicities of the dominant weights of V_w, keyed by doubled L-coordinates."""
    top = w.twice_l
    if sum(top) > max_twice_size:
        raise ResourceError(f"weight {w} too large for the multiplicity oracle")
    r = w.rank
    parity = top[0] % 2
    cands = [
        v
        for v in itertools.product(range(top[0], -1, -1), repeat=r)
        if all(x % 2 == parity for x in v)
        and all(v[i] >= v[i + 1] for i in range(r - 1))
        and _below(top, v)
    ]

    def height(v):
        return sum(itertools.accumulate(a - b for a, b in zip(top, v)))

    cands.sort(key=height)
    cand_set = set(cands)
    rho2 = tuple(2 * (r - i) - 1 for i in range(r))
    roots = _positive_roots(r)

    def norm_shift(v):
        return sum((x + p) ** 2 for x, p in zip(v, rho2))

    top_norm = norm_shift(top)
    mult: dict[tuple[int, ...], int] = {top: 1}
    for v in cands[1:]:
        acc = 0
        for a in roots:
            j = 1
            while True:
                nv = tuple(x + 2 * j * y for x, y in zip(v, a))
                d = _dominant(nv)
                if d not in cand_set:
                    break
                acc += mult.get(d, 0) * sum(x * y for x, y in zip(nv, a))
                j += 1
        val = Fraction(4 * acc, top_norm - norm_shift(v))
        if val.denominator != 1:
            raise ArithmeticError(f"non-integral multiplicity {val} at {v}")
        mult[v] = int(val)
    return mult


def _weyl_orbit(v: tuple[int, ...]) -> set[tuple[int, ...]]:
    out = set()
    for perm in set(itertools.permutations(v)):
        nz = [i for i, x in enumerate(perm) if x]
        for signs in itertools.product((1, -1), repeat=len(nz)):
            p = list(perm)
            for i, sg in zip(nz, signs):
                p[i] *= sg
            out.add(tuple(p))
    return out


def char_value_oracle(
    lam: YoungDiagram | BWeight, u: ULabel, config: NumericConfig = DEFAULT
) -> ComplexValue:
    """The same character as an explicit sum over the weight system."""
    w = _as_weight(lam, u.rank)
    ctx = config.ctx
    n = 4 * u.k
    tab = _unit_table(config.prec, n)
    total = ctx.mpc(0)
    for v, m in sorted(dominant_multiplicities(w).items()):
        s = ctx.mpc(0)
        for nu in sorted(_weyl_orbit(v)):
            s += tab[sum(x * y for x, y in zip(nu, u.twice)) % n]
        total += m * s
    return total


# --------------------------------------------------------------------------
# sine products


def phi_k(values: Iterable, k: int, config: NumericConfig = DEFAULT):
    """Phi_k(V) = prod (2 sin pi v/k)^2 prod_{v<w} (2 sin pi(v-w)/k)^2 (2 sin pi(v+w)/k)^2."""
    ctx = config.ctx
    vs = [Fraction(x) for x in values]
    if any(v <= 0 for v in vs) or len(set(vs)) != len(vs):
        raise DomainError(f"entries must be positive and distinct: {vs}")
    out = ctx.mpf(1)
    for i, v in enumerate(vs):
        out *= (2 * ctx.sinpi(to_mpf(ctx, v / k))) ** 2
        for w in vs[i + 1 :]:
            out *= (2 * ctx.sinpi(to_mpf(ctx, (v - w) / k))) ** 2
            out *= (2 * ctx.sinpi(to_mpf(ctx, (v + w) / k))) ** 2
    return out


def root_product(u: ULabel, config: NumericConfig = DEFAULT):
    """prod over positive roots alpha of |2 sin pi (mu+rho, alpha)/k|^2."""
    ctx = config.ctx
    out = ctx.mpf(1)
    for a in _positive_roots(u.rank):
        pair = Fraction(sum(x * y for x, y in zip(a, u.twice)), 2)
        out *= abs(2 * ctx.sinpi(to_mpf(ctx, pair / u.k))) ** 2
    return out


# --------------------------------------------------------------------------
# exact linear algebra for the minor identity


def bareiss_det(m: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant by fraction-free elimination."""
    a = [list(map(int, row)) for row in m]
    n = len(a)
    if any(len(row) != n for row in a):
        raise DomainError("matrix is not square")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for c in range(n - 1):
        if a[c][c] == 0:
            for p in range(c + 1, n):
                if a[p][c]:
                    a[c], a[p] = a[p], a[c]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                a[i][j] = (a[i][j] * a[c][c] - a[i][c] * a[c][j]) // prev
        prev = a[c][c]
    return sign * a[n - 1][n - 1]


def adjugate(m: Sequence[Sequence[int]]) -> list[list[int]]:
    n = len(m)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1 :] for k, row in enumerate(map(list, m)) if k != i]
            out[j][i] = (-1) ** (i + j) * bareiss_det(minor)
    return out


def perm_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation taking sorted(seq) to seq."""
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inv % 2 else 1


def _submatrix(m, rows, cols):
    return [[m[i - 1][j - 1] for j in cols] for i in rows]


def verify_minor_identity(
    a: Sequence[Sequence[int]],
    u: Sequence[int],
    t: Sequence[int],
    b: Sequence[Sequence[int]] | None = None,
) -> bool:
    """Check (prod_{i in U^c} d_i) det A_{U,T} = sgn(U,U^c) sgn(T,T^c) det A det B_{T^c,U^c}.

    A B must be diagonal with entries d_i. B defaults to the adjugate of A.
    Index sequences are 1-based; complements are taken in increasing order.
    """
    n = len(a)
    if any(len(row) != n for row in a):
        raise DomainError("A is not square")
    if len(u) != len(t) or len(set(u)) != len(u) or len(set(t)) != len(t):
        raise DomainError("U and T must be sequences of equal length without repeats")
    if any(not 1 <= x <= n for x in itertools.chain(u, t)):
        raise DomainError("index out of range")
    if b is None:
        b = adjugate(a)
    if len(b) != n or any(len(row) != n for row in b):
        raise DomainError("B has the wrong shape")
    d = [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    if any(d[i][j] for i in range(n) for j in range(n) if i != j):
        raise DomainError("A B is not diagonal")
    uc = [x for x in range(1, n + 1) if x not in set(u)]
    tc = [x for x in range(1, n + 1) if x not in set(t)]
    lhs = bareiss_det(_submatrix(a, u, t))
    for x in uc:
        lhs *= d[x - 1][x - 1]
    rhs = (
        perm_sign(list(u) + uc)
        * perm_sign(list(t) + tc)
        * bareiss_det(a)
        * bareiss_det(_submatrix(b, tc, uc))
    )
    return lhs == rhs


# --------------------------------------------------------------------------
# character duality


@dataclass(frozen=True)
class IndexSets:
    """alpha^i = lambda^i + r + 1 - i, its complement beta in [r+s], and gamma."""

    alpha: tuple[int, ...]
    beta: tuple[int, ...]
    gamma: tuple[Fraction, ...]
    t: tuple[int, ...]
    t_prime: tuple[int, ...]
    t_c: tuple[int, ...]

    def sign_alpha_beta(self) -> int:
        return perm_sign(self.alpha + self.beta)

    def sign_t(self) -> int:
        return perm_sign(self.t + self.t_c)


def index_sets(lam: YoungDiagram, r: int, s: int) -> IndexSets:
    if not lam.fits(r, s):
        raise DomainError(f"{lam} does not fit in an {r} x {s} box")
    n = r + s
    alpha = tuple(lam.row(i) + r + 1 - i for i in range(1, r + 1))
    beta = tuple(x for x in range(n, 0, -1) if x not in set(alpha))
    gamma = tuple(Fraction(n) - (beta[s - i] - Fraction(1, 2)) for i in range(1, s + 1))
    t = tuple(range(r, 0, -1))
    t_prime = tuple(range(s, 0, -1))
    t_c = tuple(range(n, r, -1))
    return IndexSets(alpha, beta, gamma, t, t_prime, t_c)


@dataclass(frozen=True)
class CharDualityReport:
    lhs: ComplexValue
    rhs: ComplexValue
    sign: int
    residual: float
    passed: bool


def verify_char_duality(
    lam: YoungDiagram,
    r: int,
    s: int,
    u: Sequence[int] | None = None,
    u0: Sequence[int] | None = None,
    config: NumericConfig = DEFAULT,
) -> CharDualityReport:
    """Compare Tr_lam at a rank-r label with Tr_{lam^T} at the bijected rank-s label.

    Pass exactly one of `u` (spin-class integer label, an r-subset of [r+s])
    or `u0` (tensor-class label u').  The spin class carries the sign
    (-1)^{|lam|}; the tensor class has none.
    """
    if (u is None) == (u0 is None):
        raise DomainError("give exactly one of u or u0")
    if not lam.fits(r, s):
        raise DomainError(f"{lam} does not fit in an {r} x {s} box")
    lt = transpose(lam)
    if u is not None:
        left = label_from_integers(u, 2 * s + 1)
        right = label_from_integers(orbit_bijection_plus(u, r, s), 2 * r + 1)
        sign = -1 if lam.size % 2 else 1
    else:
        left = label_from_u0(u0, 2 * s + 1)
        right = label_from_u0(orbit_bijection_zero(u0, r, s), 2 * r + 1)
        sign = 1
    lhs = char_value(lam, left, config)
    rhs = char_value(lt, right, config)
    res = float(abs(lhs - sign * rhs))
    return CharDualityReport(lhs, rhs, sign, res, res <= config.identity_tol)


def verify_center_trace(
    lams: Sequence[YoungDiagram | BWeight],
    mu: BWeight,
    level: int,
    config: NumericConfig = DEFAULT,
) -> bool:
    """Products of characters agree at mu + rho and sigma(mu) + rho."""
    r = mu.rank
    ws = [_as_weight(x, r) for x in lams]
    if sum(1 for w in ws if not w.is_tensor) % 2:
        raise DomainError("an odd number of spin-class weights is not center invariant")
    a = u_label(mu, level)
    b = u_label(sigma(mu, level), level)
    ctx = config.ctx
    pa = ctx.mpc(1)
    pb = ctx.mpc(1)
    for w in ws:
        pa *= char_value(w, a, config)
        pb *= char_value(w, b, config)
    return float(abs(pa - pb)) <= config.identity_tol


def verify_trace_lemma(r: int, s: int, config: NumericConfig = DEFAULT) -> list[tuple[ULabel, bool]]:
    """Tr_{(2s+1) w_1} is +1 at tensor-class labels and -1 at spin-class labels."""
    from .weights import enumerate_level_set

    level = 2 * s + 1
    lam = BWeight.omega(r, 1, level)
    out = []
    for mu in enumerate_level_set(r, level):
        u = u_label(mu, level)
        want = -1 if u.is_integral else 1
        val = char_value(lam, u, config)
        out.append((u, float(abs(val - want)) <= config.identity_tol))
    return out


# --------------------------------------------------------------------------
# trigonometric identities


def verify_trig1(v: Iterable[int], a: int, config: NumericConfig = DEFAULT) -> bool:
    """(2a)^{|V|}/Phi_{2a}(V) = 2 (2a)^{|W|}/Phi_{2a}(W) with W = V^c + {a}, V in {1..a-1}."""
    vs = sorted(set(int(x) for x in v))
    if any(not 1 <= x <= a - 1 for x in vs):
        raise DomainError(f"V must lie in 1..{a - 1}")
    wc = [x for x in range(1, a) if x not in vs] + [a]
    ctx = config.ctx
    lhs = ctx.mpf(2 * a) ** len(vs) / phi_k(vs, 2 * a, config)
    rhs = 2 * ctx.mpf(2 * a) ** len(wc) / phi_k(wc, 2 * a, config)
    return float(abs(lhs - rhs)) <= config.identity_tol * max(1.0, float(abs(lhs)))


def verify_trig2(v: Iterable, a: int, config: NumericConfig = DEFAULT) -> bool:
    """(2a)^{|V'|}/Phi_{2a}(V') = (2a)^{|V'^c|}/Phi_{2a}(a - V'^c) for V' in {1/2..a-1/2}."""
    full = [Fraction(2 * i + 1, 2) for i in range(a)]
    vs = sorted(set(Fraction(x) for x in v))
    if any(x not in full for x in vs):
        raise DomainError(f"V' must lie in 1/2..{a}-1/2")
    comp = [a - x for x in full if x not in vs]
    ctx = config.ctx
    lhs = ctx.mpf(2 * a) ** len(vs) / phi_k(vs, 2 * a, config)
    rhs = ctx.mpf(2 * a) ** len(comp) / phi_k(comp, 2 * a, config)
    return float(abs(lhs - rhs)) <= config.identity_tol * max(1.0, float(abs(lhs)))
