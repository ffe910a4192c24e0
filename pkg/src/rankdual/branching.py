"""Data of the conformal embedding so(2r+1) + so(2s+1) in so((2r+1)(2s+1)):
central charges, trace anomalies, Dynkin indices and the level-1 branching
components.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from .errors import DomainError
from .weights import BWeight, YoungDiagram, diagrams_in_box, sigma, transpose, young_to_weight

__all__ = [
    "EmbeddingData",
    "BranchPair",
    "central_charge",
    "conformal_check",
    "trace_anomaly",
    "delta_sum_check",
    "branch_set",
    "classify_pair",
    "dynkin_index",
    "VARIANTS",
    "SOURCES",
]

VARIANTS = ("plain", "sigmaL", "sigmaR", "sigmaLR")
SOURCES = ("vacuum", "vector")


@dataclass(frozen=True)
class EmbeddingData:
    r: int
    s: int

    @property
    def n(self) -> int:
        return (2 * self.r + 1) * (2 * self.s + 1)

    @property
    def d(self) -> int:
        return (self.n - 1) // 2

    @property
    def levels(self) -> tuple[int, int]:
        return 2 * self.s + 1, 2 * self.r + 1

    @property
    def dual_coxeter(self) -> tuple[int, int, int]:
        return 2 * self.r - 1, 2 * self.s - 1, self.n - 2


def central_charge(r: int, level: int) -> Fraction:
    """c = level * dim so(2r+1) / (g* + level)."""
    if level == 0:
        return Fraction(0)
    return Fraction(level * r * (2 * r + 1), 2 * r - 1 + level)


def conformal_check(r: int, s: int) -> bool:
    e = EmbeddingData(r, s)
    return central_charge(r, 2 * s + 1) + central_charge(s, 2 * r + 1) == central_charge(e.d, 1)


def trace_anomaly(w: BWeight, level: int) -> Fraction:
    """(lambda, lambda + 2 rho) / (2 (g* + level)) with (L_i, L_j) = delta_ij."""
    if w.level > level:
        raise DomainError(f"weight {w} has level {w.level} > {level}")
    r = w.rank
    tl = w.twice_l
    # in doubled coordinates: (2l)(2l + 2(2r - 2i + 1)) / 4
    num = sum(x * (x + 2 * (2 * (r - i) - 1)) for i, x in enumerate(tl))
    return Fraction(num, 4 * 2 * (2 * r - 1 + level))


def delta_sum_check(lam: YoungDiagram, r: int, s: int) -> bool:
    if not lam.fits(r, s):
        raise DomainError(f"{lam} does not fit in an {r} x {s} box")
    left = trace_anomaly(young_to_weight(lam, r), 2 * s + 1)
    right = trace_anomaly(young_to_weight(transpose(lam), s), 2 * r + 1)
    return left + right == Fraction(lam.size, 2)


@dataclass(frozen=True)
class BranchPair:
    """One component H_left (x) H_right of a level-1 so(N) module."""

    left: BWeight
    right: BWeight
    source: str
    generator: YoungDiagram
    variant: str

    def anomaly_sum(self) -> Fraction:
        r, s = self.left.rank, self.right.rank
        return trace_anomaly(self.left, 2 * s + 1) + trace_anomaly(self.right, 2 * r + 1)

    def as_dict(self) -> dict:
        return {
            "left": list(self.left.fund),
            "right": list(self.right.fund),
            "source": self.source,
            "generator": list(self.generator.rows),
            "variant": self.variant,
            "anomaly": str(self.anomaly_sum()),
        }


def _variant_weights(lam: YoungDiagram, r: int, s: int, variant: str) -> tuple[BWeight, BWeight]:
    left = young_to_weight(lam, r)
    right = young_to_weight(transpose(lam), s)
    if variant in ("sigmaL", "sigmaLR"):
        left = sigma(left, 2 * s + 1)
    if variant in ("sigmaR", "sigmaLR"):
        right = sigma(right, 2 * r + 1)
    return left, right


def _source_of(size: int, variant: str) -> str:
    flips = variant in ("sigmaL", "sigmaR")
    return "vacuum" if (size % 2 == 0) != flips else "vector"


def branch_set(r: int, s: int, source: str, bound: int) -> list[BranchPair]:
    """Components of the level-1 module `source` generated by diagrams with at most `bound` boxes."""
    return list(iter_branch_set(r, s, source, bound))


def iter_branch_set(r: int, s: int, source: str, bound: int) -> Iterator[BranchPair]:
    if source not in SOURCES:
        raise DomainError(f"unknown source {source!r}")
    if bound < 0:
        raise DomainError("bound must be nonnegative")
    seen = set()
    for lam in diagrams_in_box(r, s, bound):
        for variant in VARIANTS:
            if _source_of(lam.size, variant) != source:
                continue
            left, right = _variant_weights(lam, r, s, variant)
            if (left, right) in seen:
                continue
            seen.add((left, right))
            yield BranchPair(left, right, source, lam, variant)


def _undo_sigma(w: BWeight, box_r: int, box_s: int, level: int) -> tuple[YoungDiagram, bool] | None:
    """Write w as a diagram in the box, or as sigma of one."""
    for flipped, cand in ((False, w), (True, sigma(w, level))):
        if cand.is_tensor:
            y = cand.young()
            if y.fits(box_r, box_s):
                return y, flipped
    return None


def classify_pair(left: BWeight, right: BWeight) -> str | None:
    """The level-1 source containing (left, right), or None if it is not a component."""
    r, s = left.rank, right.rank
    if left.level > 2 * s + 1 or right.level > 2 * r + 1:
        return None
    a = _undo_sigma(left, r, s, 2 * s + 1)
    b = _undo_sigma(right, s, r, 2 * r + 1)
    if a is None or b is None or transpose(a[0]) != b[0]:
        return None
    variant = {(False, False): "plain", (True, False): "sigmaL", (False, True): "sigmaR", (True, True): "sigmaLR"}[
        (a[1], b[1])
    ]
    source = _source_of(a[0].size, variant)
    twice = 2 * (trace_anomaly(left, 2 * s + 1) + trace_anomaly(right, 2 * r + 1))
    if twice.denominator != 1 or (twice.numerator % 2 == 0) != (source == "vacuum"):
        raise ArithmeticError(f"anomaly {twice / 2} disagrees with routing to {source}")
    return source


def _so_generator(n: int) -> np.ndarray:
    x = np.zeros((n, n), dtype=np.int64)
    x[0, 1], x[1, 0] = 1, -1
    return x


def dynkin_index(r: int, s: int) -> tuple[int, int]:
    """Indices of X -> X (x) I and Y -> I (x) Y, by comparing trace forms on one generator."""
    if r < 1 or s < 1:
        raise DomainError("need r, s >= 1")
    a, b = 2 * r + 1, 2 * s + 1
    out = []
    for gen, emb in (
        (_so_generator(a), np.kron(_so_generator(a), np.eye(b, dtype=np.int64))),
        (_so_generator(b), np.kron(np.eye(a, dtype=np.int64), _so_generator(b))),
    ):
        ratio = Fraction(int(np.trace(emb @ emb)), int(np.trace(gen @ gen)))
        if ratio.denominator != 1:
            raise ArithmeticError(f"non-integral Dynkin index {ratio}")
        out.append(int(ratio))
    return out[0], out[1]
