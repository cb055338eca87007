"""Near-universal coloring families built from modular hashing.

A colorer with multiplier a maps vertex v to ((a * v) mod p) mod palette,
then shifts to 1-based colors.  p is the smallest prime above n, so the
family has exactly p members (a = 0..p-1) and p < 2n.  Each member is
reconstructible from (n, palette, a) alone, which is what lets streaming
passes share a colorer in O(log n) bits.

Two palettes are used by the streaming algorithms: `basic_family` colors
with max(delta, 1) colors, `extension_family` with max(6 * delta, 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import PaletteMismatchError, StreamFormatError
from .graph import PartialColoring, normalize_edge


def is_prime(x: int) -> bool:
    """Deterministic trial-division primality check."""
    if x < 2:
        return False
    if x < 4:
        return True
    if x % 2 == 0:
        return False
    f = 3
    while f * f <= x:
        if x % f == 0:
            return False
        f += 2
    return True


def smallest_prime_above(n: int) -> int:
    """Smallest prime strictly greater than n."""
    candidate = max(n, 1) + 1
    while not is_prime(candidate):
        candidate += 1
    return candidate


@dataclass(frozen=True)
class HashColorer:
    """One family member: v -> ((a * v) mod p) mod palette + 1."""

    n: int
    palette: int
    p: int
    a: int

    def color(self, v: int) -> int:
        return ((self.a * v) % self.p) % self.palette + 1

    def colors_array(self) -> np.ndarray:
        """Colors of vertices 1..n as int64, index 0 unused (=0)."""
        v = np.arange(self.n + 1, dtype=np.int64)
        out = ((self.a * v) % self.p) % self.palette + 1
        out[0] = 0
        return out

    def as_coloring(self) -> PartialColoring:
        return PartialColoring(
            self.n, self.palette, [self.color(v) for v in range(1, self.n + 1)]
        )

    def serialize(self) -> str:
        """Decimal text `n palette a`; p is recomputed on load."""
        return f"{self.n} {self.palette} {self.a}"


def deserialize_colorer(text: str) -> HashColorer:
    parts = text.split()
    if len(parts) != 3:
        raise StreamFormatError("expected `n palette a`")
    try:
        n, palette, a = (int(x) for x in parts)
    except ValueError as exc:
        raise StreamFormatError(f"cannot parse colorer {text!r}") from exc
    fam = ColoringFamily(n, palette)
    return fam.member(a)


@dataclass(frozen=True)
class ColoringFamily:
    """All p colorers sharing one modulus and palette."""

    n: int
    palette: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("family needs n >= 1")
        if self.palette < 1:
            raise ValueError("palette must be at least 1")
        object.__setattr__(self, "_p", smallest_prime_above(self.n))

    @property
    def p(self) -> int:
        return self._p  # type: ignore[attr-defined]

    def __len__(self) -> int:
        return self.p

    def member(self, a: int) -> HashColorer:
        if not 0 <= a < self.p:
            raise ValueError(f"member index {a} outside [0, {self.p})")
        return HashColorer(self.n, self.palette, self.p, a)

    def __iter__(self):
        return (self.member(a) for a in range(self.p))


def basic_family(n: int, delta: int) -> ColoringFamily:
    """Palette max(delta, 1) family used by the two-pass algorithm."""
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    return ColoringFamily(n, max(delta, 1))


def extension_family(n: int, delta: int) -> ColoringFamily:
    """Palette max(6 * delta, 1) family used to extend partial colorings."""
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    return ColoringFamily(n, max(6 * delta, 1))


def extend(base: PartialColoring, filler: HashColorer) -> PartialColoring:
    """Total coloring agreeing with `base` where assigned, `filler` elsewhere."""
    if base.n != filler.n:
        raise PaletteMismatchError(f"vertex counts differ: {base.n} vs {filler.n}")
    if base.palette != filler.palette:
        raise PaletteMismatchError(
            f"palettes differ: {base.palette} vs {filler.palette}"
        )
    cols = [
        c if c is not None else filler.color(v)
        for v, c in enumerate(base.colors(), start=1)
    ]
    return PartialColoring(base.n, base.palette, cols)


def collision_probability(family: ColoringFamily, u: int, v: int) -> Fraction:
    """Exact fraction of members coloring u and v alike."""
    normalize_edge(u, v)  # rejects u == v
    p, k = family.p, family.palette
    a = np.arange(p, dtype=np.int64)
    hits = int(np.count_nonzero((a * u % p) % k == (a * v % p) % k))
    return Fraction(hits, p)


def color_hit_probability(family: ColoringFamily, u: int, color: int) -> Fraction:
    """Exact fraction of members assigning `color` to u."""
    if not 1 <= color <= family.palette:
        raise ValueError(f"color {color} outside [1, {family.palette}]")
    p, k = family.p, family.palette
    a = np.arange(p, dtype=np.int64)
    hits = int(np.count_nonzero((a * u % p) % k == color - 1))
    return Fraction(hits, p)
