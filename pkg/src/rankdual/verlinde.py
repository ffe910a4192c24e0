"""Conformal-block dimensions from the Verlinde formula, plus the structural
checks (fusion, factorization, propagation) and the rank-level duality
dimension comparison.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .characters import char_value, label_from_integers, label_from_u0, phi_k
from .errors import DomainError, PrecisionError
from .numeric import DEFAULT, NumericConfig
from .weights import (
    BWeight,
    ULabel,
    YoungDiagram,
    dual_weight,
    enumerate_level_set,
    sigma,
    transpose,
    u_label,
    warn_small_rank,
    young_to_weight,
)

__all__ = [
    "VerlindeResult",
    "verlinde_eval",
    "verlinde_dim",
    "verlinde_dim_orbit",
    "fusion_coeff",
    "lr_rule",
    "FactorizationReport",
    "factorization_check",
    "propagation_check",
    "DualityReport",
    "duality_insertions",
    "duality_check",
]


@dataclass(frozen=True)
class VerlindeResult:
    dim: int
    residual: float
    prec: int


def _check_weights(r: int, level: int, weights: Sequence[BWeight]) -> tuple[BWeight, ...]:
    ws = tuple(weights)
    for w in ws:
        if not isinstance(w, BWeight) or w.rank != r:
            raise DomainError(f"{w!r} is not a rank-{r} weight")
        if w.level > level:
            raise DomainError(f"weight {w} has level {w.level} > {level}")
    return ws


def _term(weights: Sequence[BWeight], u: ULabel, power: int, config: NumericConfig):
    ctx = config.ctx
    t = ctx.mpc(1)
    for w in weights:
        t *= char_value(w, u, config)
    return t * _phi_cached(u.twice, u.k, config.prec) ** power


@lru_cache(maxsize=65536)
def _phi_cached(twice: tuple[int, ...], k: int, prec: int):
    return phi_k([Fraction(x, 2) for x in twice], k, NumericConfig(prec=prec))


def _chunk_terms(args):
    weights, labels, power, prec, tol = args
    config = NumericConfig(prec=prec, identity_tol=tol)
    out = []
    for u in labels:
        t = _term(weights, u, power, config)
        out.append((t.real._mpf_, t.imag._mpf_))
    return out


def _collect_terms(weights, labels, power, config: NumericConfig, jobs: int):
    """Per-label terms in label order, optionally computed in worker processes."""
    ctx = config.ctx
    if jobs <= 1 or len(labels) < 2 * jobs:
        return [_term(weights, u, power, config) for u in labels]
    size = -(-len(labels) // jobs)
    chunks = [labels[i : i + size] for i in range(0, len(labels), size)]
    args = [(weights, c, power, config.prec, config.identity_tol) for c in chunks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        parts = list(pool.map(_chunk_terms, args))
    return [ctx.mpc(ctx.make_mpf(re), ctx.make_mpf(im)) for part in parts for re, im in part]


def _round(ctx, terms, mults, scale, config: NumericConfig) -> tuple[int, float]:
    re = ctx.fsum(m * t.real for m, t in zip(mults, terms)) * scale
    im = ctx.fsum(m * t.imag for m, t in zip(mults, terms)) * scale
    n = int(ctx.nint(re))
    residual = float(abs(ctx.mpc(re - n, im)))
    return n, residual


def _evaluate(build, config: NumericConfig) -> VerlindeResult:
    """Run `build(config)` and retry once at doubled precision if rounding fails."""
    for cfg in (config, config.doubled()):
        n, residual = build(cfg)
        if residual < cfg.rounding_tol:
            if n < 0:
                raise PrecisionError(f"negative dimension {n}")
            return VerlindeResult(n, residual, cfg.prec)
    raise PrecisionError(f"rounding residual {residual:.3g} exceeds {config.rounding_tol}")


def verlinde_eval(
    r: int,
    level: int,
    genus: int,
    weights: Sequence[BWeight],
    config: NumericConfig = DEFAULT,
    jobs: int = 1,
) -> VerlindeResult:
    """Dimension of the genus-g block with the given weights, with its rounding residual."""
    if genus < 0:
        raise DomainError("genus must be nonnegative")
    ws = _check_weights(r, level, weights)
    labels = [u_label(mu, level) for mu in enumerate_level_set(r, level)]
    k = level + 2 * r - 1

    def build(cfg: NumericConfig):
        ctx = cfg.ctx
        terms = _collect_terms(ws, labels, 1 - genus, cfg, jobs)
        scale = (4 * ctx.mpf(k) ** r) ** (genus - 1)
        return _round(ctx, terms, [1] * len(terms), scale, cfg)

    return _evaluate(build, config)


def verlinde_dim(
    r: int,
    level: int,
    genus: int,
    weights: Sequence[BWeight],
    config: NumericConfig = DEFAULT,
    jobs: int = 1,
) -> int:
    return verlinde_eval(r, level, genus, weights, config, jobs).dim


def _orbit_labels(r: int, s: int) -> tuple[list[ULabel], list[int]]:
    """One label per center orbit at level 2s+1, with the orbit sizes.

    Spin-class orbits are the r-subsets of [r+s]; those containing r+s are
    fixed points.  Tensor-class orbits are the r-subsets U' of [r+s] read as
    u = U' - 1/2, all of length 2.
    """
    level = 2 * s + 1
    labels, mults = [], []
    for sub in itertools.combinations(range(r + s, 0, -1), r):
        labels.append(label_from_integers(sub, level))
        mults.append(1 if sub[0] == r + s else 2)
    for sub in itertools.combinations(range(r + s, 0, -1), r):
        labels.append(label_from_u0(sub, level))
        mults.append(2)
    return labels, mults


def verlinde_dim_orbit(
    r: int,
    s: int,
    weights: Sequence[BWeight],
    config: NumericConfig = DEFAULT,
    jobs: int = 1,
) -> VerlindeResult:
    """Genus-0 dimension at level 2s+1 summed over center orbits (tensor weights only)."""
    level = 2 * s + 1
    ws = _check_weights(r, level, weights)
    if any(not w.is_tensor for w in ws):
        raise DomainError("the orbit-reduced sum needs tensor-class weights")
    labels, mults = _orbit_labels(r, s)
    k = 2 * (r + s)

    def build(cfg: NumericConfig):
        ctx = cfg.ctx
        terms = _collect_terms(ws, labels, 1, cfg, jobs)
        return _round(ctx, terms, mults, 1 / (4 * ctx.mpf(k) ** r), cfg)

    return _evaluate(build, config)


def fusion_coeff(
    r: int, level: int, lam: BWeight, mu: BWeight, nu: BWeight, config: NumericConfig = DEFAULT
) -> int:
    return verlinde_dim(r, level, 0, (lam, mu, nu), config)


def lr_rule(lam: BWeight) -> list[BWeight]:
    """Highest weights of V_lam (x) V_{w_1} for a tensor-class lam, sorted."""
    y = lam.young()
    r = lam.rank
    rows = [y.row(i) for i in range(1, r + 1)]
    out = []
    for i in range(r):
        for d in (1, -1):
            new = rows[:]
            new[i] += d
            if new[i] < 0 or any(new[j] < new[j + 1] for j in range(r - 1)):
                continue
            out.append(young_to_weight(YoungDiagram(tuple(new)), r))
    if lam.fund[-1] != 0:
        out.append(lam)
    return sorted(out)


@dataclass(frozen=True)
class FactorizationReport:
    lhs: int
    rhs: int
    passed: bool


def factorization_check(
    r: int, level: int, weights: Sequence[BWeight], split: int, config: NumericConfig = DEFAULT
) -> FactorizationReport:
    """dim(w) = sum_mu dim(w[:split], mu) dim(mu^dagger, w[split:])."""
    ws = _check_weights(r, level, weights)
    if len(ws) < 2 or not 1 <= split < len(ws):
        raise DomainError("need at least two points and 1 <= split < n")
    lhs = verlinde_dim(r, level, 0, ws, config)
    rhs = 0
    for mu in enumerate_level_set(r, level):
        left = verlinde_dim(r, level, 0, ws[:split] + (mu,), config)
        if left:
            rhs += left * verlinde_dim(r, level, 0, (dual_weight(mu),) + ws[split:], config)
    return FactorizationReport(lhs, rhs, lhs == rhs)


def propagation_check(
    r: int, level: int, weights: Sequence[BWeight], config: NumericConfig = DEFAULT
) -> bool:
    ws = _check_weights(r, level, weights)
    a = verlinde_dim(r, level, 0, ws, config)
    b = verlinde_dim(r, level, 0, ws + (BWeight.zero(r),), config)
    return a == b


@dataclass(frozen=True)
class DualityReport:
    lhs: int
    rhs: int
    passed: bool


CASES = ("even", "odd", "sigma0")


def duality_insertions(
    r: int, s: int, diagrams: Sequence[YoungDiagram], case: str
) -> tuple[list[BWeight], list[BWeight]]:
    """Weights on the so(2r+1) side at level 2s+1 and on the so(2s+1) side at level 2r+1."""
    if case not in CASES:
        raise DomainError(f"unknown case {case!r}")
    for y in diagrams:
        if not y.fits(r, s):
            raise DomainError(f"{y} does not fit in an {r} x {s} box")
    total = sum(y.size for y in diagrams)
    if case == "odd" and total % 2 == 0:
        raise DomainError("case 'odd' needs an odd total number of boxes")
    if case in ("even", "sigma0") and total % 2 == 1:
        raise DomainError(f"case {case!r} needs an even total number of boxes")
    left = [young_to_weight(y, r) for y in diagrams]
    right = [young_to_weight(transpose(y), s) for y in diagrams]
    if case == "odd":
        left.append(BWeight.zero(r))
        right.append(sigma(BWeight.zero(s), 2 * r + 1))
    elif case == "sigma0":
        left.append(sigma(BWeight.zero(r), 2 * s + 1))
        right.append(sigma(BWeight.zero(s), 2 * r + 1))
    return left, right


def duality_check(
    r: int,
    s: int,
    diagrams: Sequence[YoungDiagram],
    case: str,
    config: NumericConfig = DEFAULT,
    jobs: int = 1,
) -> DualityReport:
    """Compare both sides of the rank-level duality at the level of dimensions."""
    warn_small_rank(r, s)
    left, right = duality_insertions(r, s, diagrams, case)
    lhs = verlinde_dim_orbit(r, s, left, config, jobs).dim
    rhs = verlinde_dim_orbit(s, r, right, config, jobs).dim
    return DualityReport(lhs, rhs, lhs == rhs)
