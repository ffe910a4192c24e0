"""Exact model of the level-1 spin module of so(N), N = (2r+1)(2s+1), as the
exterior algebra on negative half-integer fermion modes phi^{j,p}(a).

A mode is a triple (two_a, j, p) with two_a = 2a odd, -r <= j <= r and
-s <= p <= s.  Modes with a < 0 create and modes with a > 0 annihilate.
A monomial is a sorted tuple of creation modes; its sign is fixed by that
order.  Vectors are finite maps monomial -> Fraction.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .branching import trace_anomaly
from .errors import DomainError, ResourceError
from .weights import BWeight, YoungDiagram, sigma, transpose, young_to_weight

__all__ = [
    "Mode",
    "Monomial",
    "FockVector",
    "ENERGY_CAP",
    "vacuum",
    "wedge",
    "clifford_apply",
    "current_apply",
    "so_apply",
    "subalgebra_apply",
    "b_matrix",
    "matrix_bracket",
    "half_trace",
    "bracket_rhs",
    "hwv_modes",
    "hwv_wedge",
    "expected_weights",
    "default_box_pairs",
    "random_monomials",
    "lowest_wedge",
    "HWVReport",
    "verify_hwv",
    "KacMoodyResult",
    "kacmoody_build",
    "gauge_instance",
    "verify_gauge_vanishing",
    "q_pair",
    "format_monomial",
]

Mode = tuple[int, int, int]
Monomial = tuple[Mode, ...]

# Total energy bound, doubled (12 in energy units).
ENERGY_CAP = 24


def _energy2(mono: Monomial) -> int:
    return -sum(m[0] for m in mono)


class FockVector:
    """Finite exact-rational combination of wedge monomials.  Immutable."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None, cap: int = ENERGY_CAP):
        clean = {}
        for mono, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                if _energy2(mono) > cap:
                    raise ResourceError(f"energy {Fraction(_energy2(mono), 2)} exceeds the cap {Fraction(cap, 2)}")
                clean[mono] = c
        self._terms = clean

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(sorted(self._terms.items()))

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, FockVector):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "FockVector") -> "FockVector":
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return FockVector(out)

    def __neg__(self) -> "FockVector":
        return FockVector({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "FockVector") -> "FockVector":
        return self + (-other)

    def scale(self, c) -> "FockVector":
        return FockVector({m: c * v for m, v in self._terms.items()})

    __rmul__ = scale

    def energies(self) -> set[Fraction]:
        return {Fraction(_energy2(m), 2) for m in self._terms}

    def parities(self) -> set[int]:
        return {len(m) % 2 for m in self._terms}

    def coefficient(self, mono: Monomial) -> Fraction:
        return self._terms.get(mono, Fraction(0))

    def ratio_to(self, other: "FockVector") -> Fraction | None:
        """c with self == c * other, or None if not proportional (other nonzero)."""
        if other.is_zero():
            raise DomainError("ratio against the zero vector")
        if set(self._terms) != set(other._terms):
            return None
        m0 = next(iter(other._terms))
        c = self._terms[m0] / other._terms[m0]
        if all(self._terms[m] == c * other._terms[m] for m in other._terms):
            return c
        return None

    def to_json(self) -> list[dict]:
        return [{"monomial": format_monomial(m), "coeff": str(c)} for m, c in self.items()]

    def __repr__(self) -> str:
        if not self._terms:
            return "FockVector(0)"
        return "FockVector(" + " + ".join(f"{c}*{format_monomial(m)}" for m, c in self.items()) + ")"


def format_monomial(mono: Monomial) -> str:
    if not mono:
        return "1"
    return "^".join(f"phi({j},{p},{Fraction(a, 2)})" for a, j, p in mono)


def vacuum() -> FockVector:
    return FockVector({(): 1})


def _check_mode(mode: Mode) -> Mode:
    a, j, p = (int(x) for x in mode)
    if a % 2 == 0:
        raise DomainError(f"mode index {Fraction(a, 2)} is not a strict half-integer")
    return (a, j, p)


def wedge(modes: Iterable[Mode], v: FockVector | None = None) -> FockVector:
    """Apply creation modes right to left: wedge([m1, m2]) = m1 m2 . v."""
    out = vacuum() if v is None else v
    for m in reversed(list(modes)):
        out = clifford_apply(m, out)
    return out


def _apply_mode_mono(mode: Mode, mono: Monomial) -> tuple[int, Monomial] | None:
    a, j, p = mode
    if a < 0:
        if mode in mono:
            return None
        pos = bisect.bisect_left(mono, mode)
        return (-1 if pos % 2 else 1), mono[:pos] + (mode,) + mono[pos:]
    partner = (-a, -j, -p)
    pos = bisect.bisect_left(mono, partner)
    if pos == len(mono) or mono[pos] != partner:
        return None
    return (-1 if pos % 2 else 1), mono[:pos] + mono[pos + 1 :]


def clifford_apply(mode: Mode, v: FockVector) -> FockVector:
    """Action of phi^{j,p}(a): wedge for a < 0, contraction for a > 0."""
    mode = _check_mode(mode)
    out: dict[Monomial, Fraction] = {}
    for mono, c in v._terms.items():
        hit = _apply_mode_mono(mode, mono)
        if hit is not None:
            sgn, new = hit
            out[new] = out.get(new, 0) + sgn * c
    return FockVector(out)


def _neg(x: tuple[int, int]) -> tuple[int, int]:
    return (-x[0], -x[1])


def _current_pairs(x, y, two_m: int, mono: Monomial) -> set[tuple[int, int]]:
    """(2a, 2b) with a + b = m whose normal-ordered product can act on mono."""
    ny = _neg(y)
    cands = set()
    for a2, j, p in mono:
        if (j, p) == _neg(x):
            cands.add((-a2, two_m + a2))
        if (j, p) == _neg(ny):
            cands.add((two_m + a2, -a2))
    for a2 in range(-1, two_m, -2):
        cands.add((a2, two_m - a2))
    return cands


def current_apply(x: tuple[int, int], y: tuple[int, int], m: int, v: FockVector) -> FockVector:
    """B^x_y(m) = sum_{a+b=m} :phi^x(a) phi^{-y}(b): applied to v."""
    ny = _neg(y)
    two_m = 2 * m
    out: dict[Monomial, Fraction] = {}
    for mono, c in v._terms.items():
        for a2, b2 in _current_pairs(x, y, two_m, mono):
            first = (a2,) + tuple(x)
            second = (b2,) + ny
            if a2 > 0 > b2:
                ops, sgn = (second, first), -1
            else:
                ops, sgn = (first, second), 1
            hit = _apply_mode_mono(ops[1], mono)
            if hit is None:
                continue
            s1, mid = hit
            hit = _apply_mode_mono(ops[0], mid)
            if hit is None:
                continue
            s2, new = hit
            out[new] = out.get(new, 0) + sgn * s1 * s2 * c
    return FockVector(out)


# --------------------------------------------------------------------------
# so(N) elements as matrices M[x, y] on the basis phi^x


def b_matrix(x: tuple[int, int], y: tuple[int, int]) -> dict:
    """Matrix of B^x_y = E^x_y - E^{-y}_{-x}."""
    out: dict = {}
    out[(x, y)] = out.get((x, y), 0) + 1
    key = (_neg(y), _neg(x))
    out[key] = out.get(key, 0) - 1
    return {k: Fraction(c) for k, c in out.items() if c}


def matrix_bracket(a: dict, b: dict) -> dict:
    out: dict = {}
    for (i, k), c in a.items():
        for (k2, j), d in b.items():
            if k == k2:
                out[(i, j)] = out.get((i, j), 0) + c * d
    for (i, k), c in b.items():
        for (k2, j), d in a.items():
            if k == k2:
                out[(i, j)] = out.get((i, j), 0) - c * d
    return {k: v for k, v in out.items() if v}


def half_trace(a: dict, b: dict) -> Fraction:
    """(X, Y) = tr(XY)/2, the normalized invariant form on the vector representation."""
    return Fraction(sum(c * b.get((k, i), 0) for (i, k), c in a.items()), 2)


def so_apply(mat: dict, m: int, v: FockVector) -> FockVector:
    """X(m) for X = sum M_xy E^x_y in so(N), realized as (1/2) sum M_xy B^x_y(m)."""
    out = FockVector()
    for (x, y), c in sorted(mat.items()):
        out = out + current_apply(x, y, m, v).scale(Fraction(c) / 2)
    return out


def bracket_rhs(a: dict, b: dict, m: int, n: int, v: FockVector) -> FockVector:
    """[X,Y](m+n) v + m (X,Y) delta_{m+n,0} v at level 1."""
    out = so_apply(matrix_bracket(a, b), m + n, v)
    if m + n == 0:
        out = out + v.scale(m * half_trace(a, b))
    return out


def subalgebra_apply(side: str, i: int, j: int, m: int, v: FockVector, r: int, s: int) -> FockVector:
    """B^i_j(m) of so(2r+1) (side 'left') or so(2s+1) (side 'right') inside so(N)."""
    if side == "left":
        if abs(i) > r or abs(j) > r:
            raise DomainError(f"left indices must lie in [-{r}, {r}]")
        out = FockVector()
        for p in range(-s, s + 1):
            out = out + current_apply((i, p), (j, p), m, v)
        return out
    if side == "right":
        if abs(i) > s or abs(j) > s:
            raise DomainError(f"right indices must lie in [-{s}, {s}]")
        out = FockVector()
        for q in range(-r, r + 1):
            out = out + current_apply((q, i), (q, j), m, v)
        return out
    raise DomainError(f"unknown side {side!r}")


# --------------------------------------------------------------------------
# highest weight vectors


def _plain_zeros(lam: YoungDiagram) -> set[tuple[int, int]]:
    return set(lam.boxes())


def _sigma_l_zeros(lam: YoungDiagram, s: int) -> set[tuple[int, int]]:
    row = lam.row(1)
    extra = {(1, p) for p in range(1, s + 1)} | {(1, 0)} | {(1, -q) for q in range(row + 1, s + 1)}
    return _plain_zeros(lam) | extra


def _sigma_r_zeros(lam: YoungDiagram, r: int) -> set[tuple[int, int]]:
    col = lam.length
    extra = {(j, 1) for j in range(1, r + 1)} | {(0, 1)} | {(-i, 1) for i in range(col + 1, r + 1)}
    return _plain_zeros(lam) | extra


def hwv_modes(lam: YoungDiagram, variant: str, r: int, s: int) -> list[Mode]:
    """Creation modes whose wedge is the highest weight vector of the given variant."""
    if not lam.fits(r, s):
        raise DomainError(f"{lam} does not fit in an {r} x {s} box")
    if variant == "plain":
        zeros = _plain_zeros(lam)
    elif variant == "sigmaL":
        zeros = _sigma_l_zeros(lam, s)
    elif variant == "sigmaR":
        zeros = _sigma_r_zeros(lam, r)
    elif variant == "sigmaLR":
        zeros = _sigma_l_zeros(lam, s) | _sigma_r_zeros(lam, r)
        if lam.size == 0:
            # The union would be all of row 1 and column 1, whose weight is
            # (2s L_1, 2r L_1).  Dropping (1,-1) and (-1,1) and adding a
            # second excitation of (1,1) at -3/2 gives weight
            # ((2s+1) L_1, (2r+1) L_1) and energy r + s + 1.
            zeros -= {(1, -1), (-1, 1)}
            return sorted([(-1, j, p) for j, p in zeros] + [(-3, 1, 1)])
    else:
        raise DomainError(f"unknown variant {variant!r}")
    return sorted((-1, j, p) for j, p in zeros)


def hwv_wedge(lam: YoungDiagram, variant: str, r: int, s: int) -> FockVector:
    """The wedge monomial, normalized to coefficient +1 in canonical order."""
    return FockVector({tuple(hwv_modes(lam, variant, r, s)): 1})


def lowest_wedge(lam: YoungDiagram, r: int, s: int) -> FockVector:
    """Lowest weight vector of the plain component: phi^{-j,-p}(-1/2) over the boxes."""
    if not lam.fits(r, s):
        raise DomainError(f"{lam} does not fit in an {r} x {s} box")
    return FockVector({tuple(sorted((-1, -j, -p) for j, p in lam.boxes())): 1})


def expected_weights(lam: YoungDiagram, variant: str, r: int, s: int) -> tuple[BWeight, BWeight]:
    left = young_to_weight(lam, r)
    right = young_to_weight(transpose(lam), s)
    if variant in ("sigmaL", "sigmaLR"):
        left = sigma(left, 2 * s + 1)
    if variant in ("sigmaR", "sigmaLR"):
        right = sigma(right, 2 * r + 1)
    return left, right


@dataclass
class HWVReport:
    passed: bool
    parity: int | None
    energy: Fraction | None
    failures: list[str] = field(default_factory=list)


def _raising(rank: int) -> list[tuple[tuple[int, int], int]]:
    """(indices, mode) of the simple raising operators and of f_theta(1)."""
    ops = [((i, i + 1), 0) for i in range(1, rank)]
    ops.append(((rank, 0), 0))
    ops.append(((-1, 2) if rank >= 2 else (-1, 0), 1))
    return ops


def verify_hwv(
    v: FockVector, left: BWeight, right: BWeight, source: str | None = None
) -> HWVReport:
    """Check weights, annihilation by the positive generators, parity and energy."""
    r, s = left.rank, right.rank
    fails: list[str] = []
    if v.is_zero():
        return HWVReport(False, None, None, ["zero vector"])
    energies = v.energies()
    parities = v.parities()
    energy = next(iter(energies)) if len(energies) == 1 else None
    parity = next(iter(parities)) if len(parities) == 1 else None
    if energy is None:
        fails.append("vector is not homogeneous in energy")
    if parity is None:
        fails.append("vector is not homogeneous in wedge parity")
    for side, w, rank, other in (("left", left, r, s), ("right", right, s, r)):
        for i, lam_i in enumerate(w.l_coords, start=1):
            hv = subalgebra_apply(side, i, i, 0, v, r, s)
            if hv != v.scale(lam_i):
                fails.append(f"{side} Cartan B^{i}_{i}(0) eigenvalue differs from {lam_i}")
        for (i, j), m in _raising(rank):
            if not subalgebra_apply(side, i, j, m, v, r, s).is_zero():
                fails.append(f"{side} B^{i}_{j}({m}) does not annihilate")
    anomaly = trace_anomaly(left, 2 * s + 1) + trace_anomaly(right, 2 * r + 1)
    want_source = "vacuum" if anomaly.denominator == 1 else "vector"
    if source is not None and source != want_source:
        fails.append(f"anomaly {anomaly} routes to {want_source}, not {source}")
    if parity is not None and parity != (0 if want_source == "vacuum" else 1):
        fails.append(f"wedge parity {parity} does not match source {want_source}")
    if energy is not None and energy != anomaly:
        fails.append(f"energy {energy} differs from anomaly sum {anomaly}")
    return HWVReport(not fails, parity, energy, fails)


@dataclass(frozen=True)
class KacMoodyResult:
    vector: FockVector
    scalar: Fraction | None


def default_box_pairs(lam: YoungDiagram) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Row-major pairing of the boxes; an odd diagram starts from the box (1,1)."""
    boxes = lam.boxes()
    if len(boxes) % 2:
        boxes = boxes[1:]
    return [(boxes[i], boxes[i + 1]) for i in range(0, len(boxes), 2)]


def kacmoody_build(
    lam: YoungDiagram,
    r: int,
    s: int,
    pairs: Sequence[tuple[tuple[int, int], tuple[int, int]]] | None = None,
) -> KacMoodyResult:
    """Apply B^{a,b}_{-c,-d}(-1) for each pair of boxes, starting from 1 or phi^{1,1}(-1/2)."""
    if not lam.fits(r, s):
        raise DomainError(f"{lam} does not fit in an {r} x {s} box")
    if pairs is None:
        pairs = default_box_pairs(lam)
    have: set[tuple[int, int]] = set()
    v = vacuum()
    if lam.size % 2:
        have.add((1, 1))
        v = wedge([(-1, 1, 1)])
    for (a, b), (c, d) in pairs:
        for box in ((a, b), (c, d)):
            i, j = box
            if box in have or not (1 <= i <= r and 1 <= j <= s):
                raise DomainError(f"box {box} is repeated or outside the {r} x {s} box")
            if (i > 1 and (i - 1, j) not in have) or (j > 1 and (i, j - 1) not in have):
                raise DomainError(f"adding {box} does not give a Young diagram")
            have.add(box)
        v = current_apply((a, b), (-c, -d), -1, v)
    if have != set(lam.boxes()):
        raise DomainError(f"the box sequence builds {sorted(have)}, not {lam}")
    return KacMoodyResult(v, v.ratio_to(hwv_wedge(lam, "plain", r, s)) if not v.is_zero() else None)


def gauge_instance(a: tuple[int, int], e: tuple[int, int], base: YoungDiagram) -> FockVector:
    """Phi_3 = B^{-a}_{e}(-1) applied to the lowest vector of `base`."""
    v = FockVector({tuple(sorted((-1, -j, -p) for j, p in base.boxes())): 1})
    return current_apply(_neg(a), e, -1, v)


def verify_gauge_vanishing(a: tuple[int, int], c: tuple[int, int], phi3: FockVector) -> bool:
    """B^{a}_{-c}(1) Phi_3 == 0 exactly."""
    return current_apply(a, _neg(c), 1, phi3).is_zero()


def q_pair(u: FockVector, v: FockVector) -> Fraction:
    """Bilinear form with Q(phi^x(-1/2), phi^y(-1/2)) = delta_{x,-y}."""
    for w in (u, v):
        if any(len(m) != 1 or m[0][0] != -1 for m in w._terms):
            raise DomainError("q_pair needs combinations of single modes at -1/2")
    total = Fraction(0)
    for (mu,), cu in u._terms.items():
        for (mv,), cv in v._terms.items():
            if (mu[1], mu[2]) == (-mv[1], -mv[2]):
                total += cu * cv
    return total


def random_monomials(rng, r: int, s: int, max_energy2: int, count: int) -> list[Monomial]:
    """Random distinct monomials of doubled energy at most max_energy2."""
    modes = [
        (a, j, p)
        for a in range(-1, -max_energy2 - 1, -2)
        for j in range(-r, r + 1)
        for p in range(-s, s + 1)
    ]
    out = []
    while len(out) < count:
        k = int(rng.integers(0, 4))
        picks = sorted({modes[int(i)] for i in rng.integers(0, len(modes), size=k)})
        if _energy2(tuple(picks)) <= max_energy2:
            out.append(tuple(picks))
    return out
