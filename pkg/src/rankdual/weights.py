"""Young diagrams, dominant weights of so(2r+1), the level-ℓ automorphism
sigma, u-coordinates and the orbit bijections between the two ranks.

Half-integers are stored doubled throughout so that every comparison here is
exact integer arithmetic.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import DomainError, SmallRankWarning

__all__ = [
    "YoungDiagram",
    "BWeight",
    "ULabel",
    "young_to_weight",
    "transpose",
    "sigma",
    "enumerate_level_set",
    "diagrams_in_box",
    "u_label",
    "u0_label",
    "from_u_label",
    "orbit_length",
    "orbit_bijection_plus",
    "orbit_bijection_zero",
    "dual_weight",
    "parse_weight_literal",
    "warn_small_rank",
]


def warn_small_rank(*ranks: int) -> None:
    if any(x < 3 for x in ranks):
        warnings.warn(
            f"ranks {ranks} include a value below 3; duality statements assume r, s >= 3",
            SmallRankWarning,
            stacklevel=3,
        )


@dataclass(frozen=True, order=True)
class YoungDiagram:
    """A partition, stored as its weakly decreasing nonzero row lengths."""

    rows: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        rows = tuple(int(x) for x in self.rows)
        if any(x < 0 for x in rows):
            raise DomainError(f"negative row length in {rows}")
        if any(rows[i] < rows[i + 1] for i in range(len(rows) - 1)):
            raise DomainError(f"rows must be weakly decreasing: {rows}")
        while rows and rows[-1] == 0:
            rows = rows[:-1]
        object.__setattr__(self, "rows", rows)

    @property
    def size(self) -> int:
        return sum(self.rows)

    @property
    def length(self) -> int:
        return len(self.rows)

    @property
    def width(self) -> int:
        return self.rows[0] if self.rows else 0

    def fits(self, r: int, s: int) -> bool:
        return self.length <= r and self.width <= s

    def row(self, i: int) -> int:
        """Length of row i, 1-based, zero past the end."""
        return self.rows[i - 1] if 1 <= i <= len(self.rows) else 0

    def boxes(self) -> list[tuple[int, int]]:
        """Boxes (row, column), 1-based, in row-major order."""
        return [(i + 1, j + 1) for i, n in enumerate(self.rows) for j in range(n)]

    def transpose(self) -> "YoungDiagram":
        return transpose(self)

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.rows)) + "]"


def transpose(y: YoungDiagram) -> YoungDiagram:
    width = y.width
    return YoungDiagram(tuple(sum(1 for n in y.rows if n > j) for j in range(width)))


def diagrams_in_box(r: int, s: int, max_size: int | None = None) -> list[YoungDiagram]:
    """All diagrams with at most r rows and at most s columns.

    Ordered by size, then lexicographically on rows.
    """
    out = []

    def rec(prefix: tuple[int, ...], cap: int) -> Iterator[tuple[int, ...]]:
        yield prefix
        if len(prefix) == r:
            return
        for n in range(1, cap + 1):
            yield from rec(prefix + (n,), n)

    for rows in rec((), s):
        if max_size is None or sum(rows) <= max_size:
            out.append(YoungDiagram(rows))
    out.sort(key=lambda y: (y.size, y.rows))
    return out


@dataclass(frozen=True, order=True)
class BWeight:
    """Dominant weight sum a_i w_i of so(2r+1)."""

    rank: int
    fund: tuple[int, ...]

    def __post_init__(self) -> None:
        fund = tuple(int(x) for x in self.fund)
        if self.rank < 1:
            raise DomainError("rank must be positive")
        if len(fund) != self.rank:
            raise DomainError(f"expected {self.rank} coefficients, got {len(fund)}")
        if any(x < 0 for x in fund):
            raise DomainError(f"weight is not dominant: {fund}")
        object.__setattr__(self, "fund", fund)

    @classmethod
    def zero(cls, r: int) -> "BWeight":
        return cls(r, (0,) * r)

    @classmethod
    def omega(cls, r: int, i: int, mult: int = 1) -> "BWeight":
        """mult times the i-th fundamental weight (1-based)."""
        if not 1 <= i <= r:
            raise DomainError(f"no fundamental weight {i} in rank {r}")
        a = [0] * r
        a[i - 1] = mult
        return cls(r, tuple(a))

    @property
    def twice_l(self) -> tuple[int, ...]:
        """Doubled L-coordinates 2*lambda^i."""
        a = self.fund
        out = []
        acc = a[-1]
        for i in range(self.rank - 1, -1, -1):
            if i < self.rank - 1:
                acc += 2 * a[i]
            out.append(acc)
        return tuple(reversed(out))

    @property
    def l_coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, 2) for x in self.twice_l)

    @property
    def level(self) -> int:
        a = self.fund
        if self.rank == 1:
            return a[0]
        return a[0] + 2 * sum(a[1:-1]) + a[-1]

    @property
    def is_tensor(self) -> bool:
        return self.fund[-1] % 2 == 0

    def young(self) -> YoungDiagram:
        """Diagram whose rows are the L-coordinates (tensor class only)."""
        if not self.is_tensor:
            raise DomainError(f"{self} is not in the tensor class")
        return YoungDiagram(tuple(x // 2 for x in self.twice_l))

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.fund)) + ")"


def young_to_weight(y: YoungDiagram, r: int) -> BWeight:
    if y.length > r:
        raise DomainError(f"diagram {y} has more than {r} rows")
    lam = [y.row(i) for i in range(1, r + 1)]
    a = [lam[i] - lam[i + 1] for i in range(r - 1)] + [2 * lam[r - 1]]
    return BWeight(r, tuple(a))


def _check_level(w: BWeight, level: int) -> None:
    if w.level > level:
        raise DomainError(f"weight {w} has level {w.level} > {level}")


def sigma(w: BWeight, level: int) -> BWeight:
    """The nontrivial diagram automorphism of level-`level` weights.

    The first coefficient becomes level - level_of(w); the rest are kept.
    This is an involution and sends u_1 to k - u_1.
    """
    _check_level(w, level)
    return BWeight(w.rank, (level - w.level,) + w.fund[1:])


def dual_weight(w: BWeight) -> BWeight:
    """The contragredient highest weight; the identity in type B."""
    return w


def enumerate_level_set(r: int, level: int, tensor: bool = False) -> list[BWeight]:
    """Dominant weights of level at most `level`, lexicographic in a_1..a_r."""
    if r < 1 or level < 0:
        raise DomainError("need r >= 1 and level >= 0")
    warn_small_rank(r)
    coef = [1] if r == 1 else [1] + [2] * (r - 2) + [1]
    out: list[BWeight] = []

    def rec(i: int, used: int, acc: list[int]) -> None:
        if i == r:
            if not tensor or acc[-1] % 2 == 0:
                out.append(BWeight(r, tuple(acc)))
            return
        for a in range((level - used) // coef[i] + 1):
            acc.append(a)
            rec(i + 1, used + coef[i] * a, acc)
            acc.pop()

    rec(0, 0, [])
    return out


@dataclass(frozen=True, order=True)
class ULabel:
    """Coordinates u_1 > ... > u_r of lambda + rho, stored doubled."""

    twice: tuple[int, ...]
    level: int

    @property
    def rank(self) -> int:
        return len(self.twice)

    @property
    def k(self) -> int:
        return self.level + 2 * self.rank - 1

    @property
    def entries(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, 2) for x in self.twice)

    @property
    def is_integral(self) -> bool:
        """True for the spin class (integer entries)."""
        return self.twice[0] % 2 == 0

    @property
    def orbit_length(self) -> int:
        return 1 if self.twice[0] == self.k else 2


def u_label(w: BWeight, level: int) -> ULabel:
    r = w.rank
    if r < 2:
        raise DomainError("u-labels are defined for rank >= 2")
    _check_level(w, level)
    tl = w.twice_l
    return ULabel(tuple(tl[i] + 2 * (r - i) - 1 for i in range(r)), level)


def u0_label(w: BWeight, level: int) -> tuple[int, ...]:
    """Integer label u'_i = u_i + 1/2 of a tensor-class weight."""
    if not w.is_tensor:
        raise DomainError(f"{w} is not in the tensor class")
    u = u_label(w, level)
    return tuple((x + 1) // 2 for x in u.twice)


def from_u_label(u: ULabel) -> BWeight:
    r = u.rank
    if r < 2:
        raise DomainError("u-labels are defined for rank >= 2")
    t = u.twice
    if any(t[i] <= t[i + 1] for i in range(r - 1)) or t[-1] <= 0:
        raise DomainError(f"label entries must be strictly decreasing and positive: {u.entries}")
    if len({x % 2 for x in t}) != 1:
        raise DomainError(f"label entries mix integer and half-integer classes: {u.entries}")
    tl = [t[i] - 2 * (r - i) + 1 for i in range(r)]
    a = [(tl[i] - tl[i + 1]) // 2 for i in range(r - 1)] + [tl[-1]]
    w = BWeight(r, tuple(a))
    _check_level(w, u.level)
    return w


def orbit_length(w: BWeight, level: int) -> int:
    return u_label(w, level).orbit_length


def _check_subset(u: Sequence[int], r: int, s: int) -> tuple[int, ...]:
    vals = tuple(int(x) for x in u)
    if len(vals) != r or len(set(vals)) != r:
        raise DomainError(f"expected {r} distinct entries, got {vals}")
    if any(not 1 <= x <= r + s for x in vals):
        raise DomainError(f"entries of {vals} must lie in [1, {r + s}]")
    return tuple(sorted(vals, reverse=True))


def _complement(vals: Iterable[int], n: int) -> tuple[int, ...]:
    present = set(vals)
    return tuple(x for x in range(n, 0, -1) if x not in present)


def orbit_bijection_plus(u: Sequence[int], r: int, s: int) -> tuple[int, ...]:
    """Spin-class orbit map from rank r, level 2s+1 to rank s, level 2r+1."""
    return _complement(_check_subset(u, r, s), r + s)


def orbit_bijection_zero(u0: Sequence[int], r: int, s: int) -> tuple[int, ...]:
    """Tensor-class orbit map on integer labels u'."""
    comp = _complement(_check_subset(u0, r, s), r + s)
    return tuple(sorted((r + s + 1 - x for x in comp), reverse=True))


def parse_weight_literal(obj, r: int, level: int | None = None) -> BWeight:
    """Decode {"young": rows, "sigma": bool} or {"fund": coefficients}."""
    if not isinstance(obj, dict):
        raise DomainError(f"weight literal must be an object, got {obj!r}")
    if "fund" in obj:
        w = BWeight(r, tuple(obj["fund"]))
    elif "young" in obj:
        w = young_to_weight(YoungDiagram(tuple(obj["young"])), r)
        if obj.get("sigma", False):
            if level is None:
                raise DomainError("sigma in a weight literal needs a level")
            w = sigma(w, level)
    else:
        raise DomainError(f"weight literal needs 'young' or 'fund': {obj!r}")
    if level is not None:
        _check_level(w, level)
    return w

