"""Summaries of sampled graphs and the missing-edge bound.

A compression scheme maps each graph in a distribution's support to a
fixed-width bit string.  For each summary value, the missing set is the
set of base edges contained in no graph with that summary; the checker
verifies that some non-empty summary class misses at most
ln2 * (bits + 1) / p base edges.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from ..errors import StreamFormatError, TooLargeError
from ..graph import Edge, Graph
from ..prng import splitmix64_next
from .distribution import (
    DEFAULT_ENUM_CAP,
    RandomGraphDistribution,
    SupportTable,
    _GAMMA,
    _MASK64,
    _popcount_u32,
    support_table,
)
from .lnscaled import LnScaled

DEFAULT_LABELING_CAP = 20


@dataclass(frozen=True)
class CompressionScheme:
    """Deterministic map from support graphs to ``bits``-wide bit strings.

    ``mask_label``, when set, computes the label straight from a subset
    bitmask so enumeration loops can skip building Graph objects.
    """

    bits: int
    label: Callable[[Graph], str]
    name: str = "custom"
    mask_label: Callable[[int], str] | None = None

    def __post_init__(self):
        if self.bits < 1:
            raise ValueError("summary width must be at least 1 bit")

    def apply(self, g: Graph) -> str:
        return self._check(self.label(g))

    def apply_mask(self, table: SupportTable, mask: int) -> str:
        if self.mask_label is not None:
            return self._check(self.mask_label(mask))
        return self._check(self.label(table.graph(mask)))

    def _check(self, out: str) -> str:
        if not isinstance(out, str) or len(out) != self.bits:
            raise ValueError(
                f"scheme {self.name!r} must emit exactly {self.bits} bits"
            )
        if out.strip("01"):
            raise ValueError(f"scheme {self.name!r} emitted non-binary characters")
        return out


def _bit_string(value: int, bits: int) -> str:
    return format(value & ((1 << bits) - 1), f"0{bits}b")


def parity_scheme(bits: int = 1) -> CompressionScheme:
    """Summary = edge-count parity, zero-padded to ``bits``."""
    return CompressionScheme(
        bits=bits,
        label=lambda g: _bit_string(g.m % 2, bits),
        name="parity",
        mask_label=lambda mask: _bit_string(mask.bit_count() % 2, bits),
    )


def identity_scheme(base: Graph, bits: int) -> CompressionScheme:
    """Summary = low ``bits`` of the subset bitmask over base edge rank."""
    rank = {e: i for i, e in enumerate(base.edges_sorted())}

    def mask_of(g: Graph) -> int:
        mask = 0
        for e in g.edges_sorted():
            if e not in rank:
                raise ValueError(f"edge {e} is not a base edge")
            mask |= 1 << rank[e]
        return mask

    return CompressionScheme(
        bits=bits,
        label=lambda g: _bit_string(mask_of(g), bits),
        name="identity",
        mask_label=lambda mask: _bit_string(mask, bits),
    )


def constant_scheme(bits: int, value: str | None = None) -> CompressionScheme:
    """Every graph maps to one fixed summary."""
    fixed = "0" * bits if value is None else value
    return CompressionScheme(
        bits=bits,
        label=lambda g: fixed,
        name="constant",
        mask_label=lambda mask: fixed,
    )


def random_scheme(bits: int, seed: int) -> CompressionScheme:
    """Pseudorandom but deterministic labels keyed by the subset bitmask."""

    def from_mask(mask: int) -> str:
        _, out = splitmix64_next((seed + (mask + 1) * _GAMMA) & _MASK64)
        return _bit_string(out, bits)

    def from_graph(g: Graph) -> str:
        raise ValueError("random schemes label bitmasks; apply via a support table")

    return CompressionScheme(
        bits=bits,
        label=from_graph,
        name=f"random[{seed}]",
        mask_label=from_mask,
    )


def scheme_from_file(path, *, bits: int | None = None) -> CompressionScheme:
    """Load an explicit mask -> summary map.

    Line format: ``<graph-bitmask-hex> <summary-bits>``; blank lines and
    lines starting with ``#`` are skipped.
    """
    mapping: dict[int, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise StreamFormatError(
                    f"{path}:{lineno}: expected '<mask-hex> <summary-bits>'"
                )
            try:
                mask = int(parts[0], 16)
            except ValueError:
                raise StreamFormatError(
                    f"{path}:{lineno}: bad hexadecimal mask {parts[0]!r}"
                ) from None
            summary = parts[1]
            if summary.strip("01"):
                raise StreamFormatError(
                    f"{path}:{lineno}: summary must be a 0/1 string"
                )
            if bits is None:
                bits = len(summary)
            if len(summary) != bits:
                raise StreamFormatError(
                    f"{path}:{lineno}: summary width {len(summary)} != {bits}"
                )
            if mask in mapping and mapping[mask] != summary:
                raise StreamFormatError(
                    f"{path}:{lineno}: conflicting summaries for mask {mask:#x}"
                )
            mapping[mask] = summary
    if bits is None or not mapping:
        raise StreamFormatError(f"{path}: no scheme entries found")

    def from_mask(mask: int) -> str:
        try:
            return mapping[mask]
        except KeyError:
            raise ValueError(f"scheme file has no entry for mask {mask:#x}") from None

    def from_graph(g: Graph) -> str:
        raise ValueError("file schemes label bitmasks; apply via a support table")

    return CompressionScheme(
        bits=bits, label=from_graph, name="file", mask_label=from_mask
    )


@dataclass(frozen=True)
class LabelClass:
    """One summary value's preimage, reduced to covering statistics."""

    label: str
    count: int
    probability: Fraction
    union_mask: int
    smallest_mask: int


@dataclass(frozen=True)
class MissingGraph:
    """Base edges contained in no support graph with the given summary."""

    label: str
    edges: frozenset[Edge]
    preimage_size: int


def label_partition(
    table: SupportTable, scheme: CompressionScheme
) -> dict[str, LabelClass]:
    """Group the support by summary value."""
    stats: dict[str, list] = {}
    for mask in table.masks.tolist():
        label = scheme.apply_mask(table, mask)
        entry = stats.get(label)
        if entry is None:
            stats[label] = [1, table.probability(mask), mask, mask]
        else:
            entry[0] += 1
            entry[1] += table.probability(mask)
            entry[2] |= mask
            entry[3] = min(entry[3], mask)
    return {
        label: LabelClass(label, count, prob, union, smallest)
        for label, (count, prob, union, smallest) in sorted(stats.items())
    }


def _missing_edges(table: SupportTable, union_mask: int) -> frozenset[Edge]:
    return frozenset(
        e for i, e in enumerate(table.edges) if not union_mask >> i & 1
    )


def missing_graph(
    dist: RandomGraphDistribution,
    scheme: CompressionScheme,
    label: str,
    *,
    cap: int = DEFAULT_ENUM_CAP,
) -> MissingGraph:
    """Exact missing set for one summary value.

    A summary no support graph maps to misses every base edge vacuously.
    """
    table = support_table(dist, cap=cap)
    part = label_partition(table, scheme)
    cls = part.get(label)
    if cls is None:
        return MissingGraph(label, frozenset(table.edges), 0)
    return MissingGraph(label, _missing_edges(table, cls.union_mask), cls.count)


def missing_bound(bits: int, p: Fraction) -> LnScaled:
    """The guaranteed ceiling ln2 * (bits + 1) / p, kept exact."""
    return LnScaled(Fraction(bits + 1) / Fraction(p), 1)


def check_compression_lemma(
    dist: RandomGraphDistribution,
    scheme: CompressionScheme,
    *,
    cap: int = DEFAULT_ENUM_CAP,
) -> dict:
    """Minimum missing count over used summaries versus the ceiling.

    ``holds`` is decided by exact comparison of min_missing * p against
    ln2 * (bits + 1); ``bound`` is the float rendering of the ceiling.
    Summaries with empty preimage are not eligible: the guarantee is
    about a summary that actually receives probability mass.
    """
    table = support_table(dist, cap=cap)
    part = label_partition(table, scheme)
    best_label, best_missing = None, None
    for label, cls in part.items():
        missing = len(table.edges) - cls.union_mask.bit_count()
        if best_missing is None or missing < best_missing:
            best_label, best_missing = label, missing
    assert best_label is not None and best_missing is not None
    ceiling = missing_bound(scheme.bits, dist.p)
    return {
        "min_missing": best_missing,
        "bound": ceiling.to_float(),
        "holds": LnScaled.of(best_missing) <= ceiling,
        "hypotheses_ok": dist.hypotheses_ok(),
        "labels_used": len(part),
        "argmin_label": best_label,
    }


@dataclass(frozen=True)
class TwoLabelingReport:
    """Worst case over every 2-labeling of the support."""

    support_size: int
    worst_min_missing: int
    worst_labeling_mask: int
    bound: float
    holds: bool


def worst_two_labeling(
    dist: RandomGraphDistribution,
    *,
    cap: int = DEFAULT_ENUM_CAP,
    labeling_cap: int = DEFAULT_LABELING_CAP,
) -> TwoLabelingReport:
    """Exhaust all 1-bit schemes; report the one maximizing min missing.

    Labelings are encoded as subsets S of the support (bit t set means
    support graph t gets summary "1").  The score of a labeling is the
    smaller missing count among its non-empty classes.
    """
    table = support_table(dist, cap=cap)
    t = len(table)
    if t > labeling_cap:
        raise TooLargeError(f"2^{t} labelings exceed the cap of 2^{labeling_cap}")
    m = len(table.edges)
    gmasks = table.masks.astype(np.uint32)

    union = np.zeros(1 << t, dtype=np.uint32)
    for i in range(t):
        blk = 1 << i
        union[blk : 2 * blk] = union[:blk] | gmasks[i]
    missing = (m - _popcount_u32(union)).astype(np.int64)

    idx = np.arange(1 << t)
    scores = np.minimum(missing[idx], missing[((1 << t) - 1) ^ idx])
    # a constant labeling has a single non-empty class: the whole support
    scores[0] = scores[-1] = missing[-1]
    worst = int(scores.max())
    ceiling = missing_bound(1, dist.p)
    return TwoLabelingReport(
        support_size=t,
        worst_min_missing=worst,
        worst_labeling_mask=int(scores.argmax()),
        bound=ceiling.to_float(),
        holds=LnScaled.of(worst) <= ceiling,
    )
