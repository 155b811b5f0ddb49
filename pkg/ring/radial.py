"""Radial (sphere-constant) elements of free group rings.

A radial element of R[F_r] is sum_l c[l] 1_{S(l)}, stored as the
per-element coefficient vector c.  Radial elements form a commutative
subalgebra; m(Sigma)^k for the standard set Sigma is radial, which is
what makes k in the hundreds reachable.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple, Union

from group.presentation import Free
from group.word import Word, format_word, word_sort_key
from ring.element import RingElement, SupportGuardExceeded, DEFAULT_SUPPORT_GUARD

Number = Union[Fraction, int]


class NonRadial(ValueError):
    def __init__(self, present: Word, other: Word):
        super().__init__(
            f"element is not constant on spheres: {format_word(present)} "
            f"and {format_word(other)} carry different coefficients"
        )
        self.witness = (present, other)


class RankMismatch(ValueError):
    pass


# ---- sphere combinatorics --------------------------------------------------


def sphere_size(r: int, ell: int) -> int:
    """Number of reduced words of length *ell* in F_r."""
    if r < 1 or ell < 0:
        raise ValueError(f"need r >= 1 and ell >= 0, got r={r}, ell={ell}")
    if ell == 0:
        return 1
    return 2 * r * (2 * r - 1) ** (ell - 1)


def ball_size(r: int, radius: int) -> int:
    return sum(sphere_size(r, ell) for ell in range(radius + 1))


@dataclass(frozen=True)
class SphereProfile:
    """Sphere sizes N(0..L) of the 2r-regular tree."""

    rank: int
    sizes: Tuple[int, ...]

    @staticmethod
    def of(r: int, max_distance: int) -> "SphereProfile":
        return SphereProfile(r, tuple(sphere_size(r, ell) for ell in range(max_distance + 1)))

    @property
    def ball_size(self) -> int:
        return sum(self.sizes)


def iter_sphere(r: int, ell: int) -> Iterator[Word]:
    """Reduced words of length *ell* in shortlex order."""
    letters = []
    for i in range(1, r + 1):
        letters.extend([i, -i])
    for word in product(letters, repeat=ell):
        if all(word[t] != -word[t + 1] for t in range(ell - 1)):
            yield word


# ---- the element type ------------------------------------------------------


@dataclass(frozen=True)
class RadialElement:
    """sum_l coefficients[l] * 1_{S(l)} in R[F_rank]; trailing zeros trimmed."""

    rank: int
    coefficients: Tuple[Number, ...]

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError(f"rank must be >= 1, got {self.rank}")
        coeffs = list(self.coefficients)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def max_distance(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, ell: int) -> Number:
        if 0 <= ell < len(self.coefficients):
            return self.coefficients[ell]
        return 0

    def spheres(self) -> List[int]:
        """Distances whose sphere lies in the support."""
        return [ell for ell, c in enumerate(self.coefficients) if c != 0]

    @property
    def size(self) -> int:
        return sum(sphere_size(self.rank, ell) for ell in self.spheres())

    def l1_norm(self) -> Fraction:
        return Fraction(
            sum(
                (sphere_size(self.rank, ell) * abs(c) for ell, c in enumerate(self.coefficients)),
                0,
            )
        )

    def trace(self) -> Fraction:
        return Fraction(self[0])

    def scaled(self, factor: Number) -> "RadialElement":
        return RadialElement(self.rank, tuple(c * factor for c in self.coefficients))

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coefficients)

    def is_hermitean(self) -> bool:
        return True

    def square_trace(self) -> Fraction:
        """tau(x x) = sum_l N(l) c[l]^2 (x hermitean)."""
        return Fraction(
            sum(
                (sphere_size(self.rank, ell) * c * c for ell, c in enumerate(self.coefficients)),
                0,
            )
        )

    def __mul__(self, other):
        if isinstance(other, RadialElement):
            return radial_convolve(self.rank, self, other)
        return self.scaled(other)

    __rmul__ = scaled


def radial_zero(r: int) -> RadialElement:
    return RadialElement(r, ())


def radial_delta(r: int) -> RadialElement:
    return RadialElement(r, (1,))


def indicator_radial(r: int, distances: Iterable[int]) -> RadialElement:
    """Indicator of the union of the listed spheres."""
    distances = set(distances)
    if any(d < 0 for d in distances):
        raise ValueError("distances must be nonnegative")
    top = max(distances, default=-1)
    return RadialElement(r, tuple(1 if ell in distances else 0 for ell in range(top + 1)))


# ---- random walk on the tree ----------------------------------------------


def iter_walk_counts(r: int, k_max: int) -> Iterator[Tuple[int, List[int]]]:
    """Yield ``(k, W_k)``: W_k[l] counts nearest-neighbour walks of k steps ending at distance l.

    From distance 0 there are 2r outward moves; from j >= 1 there are
    2r - 1 outward moves and one inward move.
    """
    q = 2 * r - 1
    counts = [1]
    yield 0, counts
    for k in range(1, k_max + 1):
        nxt = [0] * (k + 1)
        for j, c in enumerate(counts):
            if not c:
                continue
            if j == 0:
                nxt[1] += 2 * r * c
            else:
                nxt[j + 1] += q * c
                nxt[j - 1] += c
        counts = nxt
        yield k, counts


def distance_distribution(r: int, k: int) -> List[Fraction]:
    """P_k(l): probability that the simple random walk sits at distance l after k steps."""
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    counts: List[int] = [1]
    for _, counts in iter_walk_counts(r, k):
        pass
    total = (2 * r) ** k
    return [Fraction(c, total) for c in counts]


def radial_markov_power(r: int, k: int) -> RadialElement:
    """m(Sigma)^k for the standard set of F_r: c[l] = P_k(l) / N(l)."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    dist = distance_distribution(r, k)
    return RadialElement(r, tuple(p / sphere_size(r, ell) for ell, p in enumerate(dist)))


# ---- sphere products -------------------------------------------------------

# (r, l) -> list indexed by i of {j: #{s in S(i) : |s w| = j}} for a fixed |w| = l.
_SPHERE_PRODUCTS: Dict[Tuple[int, int], List[Dict[int, int]]] = {}
_SPHERE_LOCK = threading.Lock()


def _sweep_sphere_products(r: int, ell: int, i_max: int) -> List[Dict[int, int]]:
    """Tree-path DP: prepend the letters of s (right to left) to a fixed w, |w| = ell.

    While letters cancel, the state is the cancellation depth t; once a
    letter does not cancel, every later letter of the reduced word s must
    extend the product, so a growing state only records t.
    """
    q = 2 * r - 1
    table: List[Dict[int, int]] = [{ell: 1}]
    cancelling = True  # the all-cancel path is alive while m <= ell
    growing: Dict[int, int] = {}  # t -> count
    for m in range(i_max):
        nxt: Dict[int, int] = {t: c * q for t, c in growing.items()}
        if cancelling:
            # leave the cancel chain at depth t = m
            choices = 2 * r - (1 if m < ell else 0) - (1 if m >= 1 else 0)
            if choices:
                nxt[m] = nxt.get(m, 0) + choices
            cancelling = m + 1 <= ell
        growing = nxt
        steps = m + 1
        row: Dict[int, int] = {}
        for t, c in growing.items():
            j = ell - 2 * t + steps
            row[j] = row.get(j, 0) + c
        if cancelling:
            row[ell - steps] = row.get(ell - steps, 0) + 1
        table.append(row)
    return table


def sphere_products(r: int, i: int, ell: int) -> Dict[int, int]:
    """{j: #{s in S(i) : |s w| = j}} for any fixed w with |w| = ell."""
    key = (r, ell)
    table = _SPHERE_PRODUCTS.get(key)
    if table is None or len(table) <= i:
        with _SPHERE_LOCK:
            table = _SPHERE_PRODUCTS.get(key)
            if table is None or len(table) <= i:
                table = _sweep_sphere_products(r, ell, max(i, 2 * len(table or [])))
                _SPHERE_PRODUCTS[key] = table
    return table[i]


def radial_convolve(r: int, u: RadialElement, v: RadialElement) -> RadialElement:
    """Exact u * v: (u*v)[l] = sum_i u[i] sum_j n(i, l, j) v[j]."""
    if u.rank != r or v.rank != r:
        raise RankMismatch(f"ranks {u.rank} and {v.rank} do not match F_{r}")
    if not u.coefficients or not v.coefficients:
        return radial_zero(r)
    u_support = u.spheres()
    v_coeffs = v.coefficients
    top = u.max_distance + v.max_distance
    out: List[Number] = []
    for ell in range(top + 1):
        acc: Number = 0
        for i in u_support:
            counts = sphere_products(r, i, ell)
            inner: Number = 0
            for j, n in counts.items():
                if j < len(v_coeffs) and v_coeffs[j]:
                    inner += n * v_coeffs[j]
            if inner:
                acc += u.coefficients[i] * inner
        out.append(acc)
    return RadialElement(r, tuple(out))


def radial_power(u: RadialElement, k: int) -> RadialElement:
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    result = u
    for _ in range(k - 1):
        result = radial_convolve(u.rank, result, u)
    return result


# ---- bridges to the dense engine -----------------------------------------


def to_radial(a: RingElement) -> RadialElement:
    """Per-sphere coefficients of a dense free-group element.

    Raises ``NonRadial`` with a witness pair if two words of equal length
    carry different coefficients (an absent word counts as 0).
    """
    p = a.presentation
    if not isinstance(p, Free):
        raise ValueError(f"radial elements live in free groups, not {p.spec_string()}")
    r = p.rank
    by_sphere: Dict[int, Dict[Word, Fraction]] = {}
    for word, c in a.coefficients.items():
        by_sphere.setdefault(len(word), {})[word] = c

    coeffs: Dict[int, Fraction] = {}
    for ell in sorted(by_sphere):
        words = by_sphere[ell]
        ordered = sorted(words, key=word_sort_key)
        first = ordered[0]
        for w in ordered[1:]:
            if words[w] != words[first]:
                raise NonRadial(first, w)
        if len(words) < sphere_size(r, ell):
            missing = next(w for w in iter_sphere(r, ell) if w not in words)
            present = next(w for w in iter_sphere(r, ell) if w in words)
            raise NonRadial(present, missing)
        coeffs[ell] = words[first]
    top = max(coeffs, default=-1)
    return RadialElement(r, tuple(coeffs.get(ell, 0) for ell in range(top + 1)))


def to_dense(u: RadialElement, guard: int = DEFAULT_SUPPORT_GUARD) -> RingElement:
    """Expand a radial element into a dense ``RingElement`` (for oracle checks)."""
    predicted = u.size
    if predicted > guard:
        raise SupportGuardExceeded(predicted, guard)
    p = Free(u.rank)
    coeffs: Dict[Word, Fraction] = {}
    for ell in u.spheres():
        c = Fraction(u.coefficients[ell])
        for w in iter_sphere(u.rank, ell):
            coeffs[w] = c
    return RingElement(p, coeffs)


def sphere_values(u: RadialElement) -> Sequence[Tuple[int, Number]]:
    """(distance, coefficient) for every sphere in the support."""
    return [(ell, u.coefficients[ell]) for ell in u.spheres()]
