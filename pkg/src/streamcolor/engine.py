"""Deterministic semi-streaming coloring algorithms.

Two algorithms over edge streams on vertices 1..n with max degree at
most delta:

* two_pass_coloring: pass 1 counts, per hash colorer, how many stream
  edges it leaves monochromatic and keeps the argmin member; pass 2
  stores that member's monochromatic edges (at most 4n of them), colors
  the stored subgraph greedily with delta + 1 colors, and outputs the
  product coloring over at most delta * (delta + 1) colors.

* iterative_coloring: repeatedly extends a partial coloring by the best
  member of a 6*delta-palette family, storing at most n0/3 monochromatic
  edges per round (n0 = currently uncolored), until at most n/delta
  vertices remain; a final pass stores their incident edges (at most n)
  and greedy-colors them inside the same palette.  Colors used: at most
  max(6 * delta, 1); rounds: at most ceil(log_{3/2} delta) + 1.

* two_pass_unknown_delta: like two_pass_coloring but pass 1 also
  measures the true max degree and maintains a counter bank per
  power-of-two palette guess, then commits to the smallest guess that
  is at least the true degree.

Dynamic streams (insertions and deletions) replace each "store edges"
phase with a deterministic sparse-recovery sketch; decoded edge sets
equal what an insertion-only run on the final graph would store, so
outputs are identical byte for byte.

A pass is one replay of the stream; the StreamSource counts replays so
reports cannot misstate pass usage.  Space accounting in reports covers
the algorithm's own state: stored edges, counter entries, sketch field
elements, plus the O(n) color and degree arrays.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from .counters import CounterBank, argmin_counter, base_color_array
from .errors import (
    DegreeViolationError,
    IllegalUpdateError,
    MonoBudgetExceededError,
    NonTerminationError,
)
from .graph import Edge, EdgeUpdate, Graph, PartialColoring, greedy_extend
from .hashfam import HashColorer, basic_family, extension_family
from .recovery import SparseRecoverySketch
from .streamio import StreamFile, read_stream


class StreamSource:
    """Replayable edge-update sequence with declared n and optional delta.

    Every replay yields the identical sequence.  `replays` counts how
    many passes have been taken over the source.
    """

    def __init__(self, n: int, updates: Iterable[EdgeUpdate], delta: int | None = None):
        if n < 1:
            raise ValueError("stream needs n >= 1")
        self.n = n
        self.declared_delta = delta
        self.updates = tuple(
            u if isinstance(u, EdgeUpdate) else EdgeUpdate(*u) for u in updates
        )
        self.replays = 0
        self._arrays: tuple[np.ndarray, np.ndarray, np.ndarray] | None = None

    @classmethod
    def from_stream_file(cls, sf: StreamFile) -> "StreamSource":
        return cls(sf.n, sf.updates, sf.delta)

    @classmethod
    def from_file(cls, path: str | Path) -> "StreamSource":
        return cls.from_stream_file(read_stream(path))

    @classmethod
    def from_graph(cls, g: Graph, delta: int | None = None) -> "StreamSource":
        return cls(g.n, (EdgeUpdate(1, u, v) for u, v in g.edges_sorted()), delta)

    def replay(self) -> Iterator[EdgeUpdate]:
        self.replays += 1
        return iter(self.updates)

    def replay_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """One pass, returned as (us, vs, signs) int64 arrays.

        The arrays are cached; the replay is still counted as a pass.
        """
        self.replays += 1
        if self._arrays is None:
            m = len(self.updates)
            us = np.empty(m, dtype=np.int64)
            vs = np.empty(m, dtype=np.int64)
            signs = np.empty(m, dtype=np.int64)
            for i, (sign, u, v) in enumerate(self.updates):
                if u == v:
                    raise IllegalUpdateError(f"self loop on vertex {u}")
                if not (1 <= u <= self.n and 1 <= v <= self.n):
                    raise IllegalUpdateError(f"vertex outside [1, {self.n}]")
                if sign not in (1, -1):
                    raise IllegalUpdateError(f"bad sign {sign}")
                us[i], vs[i], signs[i] = u, v, sign
            lo = np.minimum(us, vs)
            hi = np.maximum(us, vs)
            for arr in (lo, hi, signs):
                arr.setflags(write=False)
            self._arrays = (lo, hi, signs)
        return self._arrays

    def materialized(self) -> Graph:
        """Final graph after all updates (validates stream legality)."""
        from .graph import materialize

        return materialize(self.n, self.updates)


@dataclass
class RunReport:
    """Everything a run discloses: output plus resource accounting."""

    algorithm: str
    n: int
    delta: int
    palette_bound: int
    passes: int
    coloring: PartialColoring
    chosen_members: list[int] = field(default_factory=list)
    iterations: int = 0
    peak_stored_edges: int = 0
    counter_entries: int = 0
    selected_delta: int | None = None
    sketch_budgets: list[int] = field(default_factory=list)
    phase_uncolored: list[int] = field(default_factory=list)
    phase_stored: list[int] = field(default_factory=list)
    phase_colorings: list[PartialColoring] = field(default_factory=list)
    final_stored_edges: int | None = None

    def max_color_used(self) -> int:
        return max((c for c in self.coloring.colors() if c is not None), default=0)

    def to_json_dict(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "n": self.n,
            "delta": self.delta,
            "selected_delta": self.selected_delta,
            "palette_bound": self.palette_bound,
            "max_color_used": self.max_color_used(),
            "passes": self.passes,
            "iterations": self.iterations,
            "chosen_members": list(self.chosen_members),
            "peak_stored_edges": self.peak_stored_edges,
            "final_stored_edges": self.final_stored_edges,
            "counter_entries": self.counter_entries,
            "sketch_budgets": list(self.sketch_budgets),
            "phase_uncolored": list(self.phase_uncolored),
            "phase_stored": list(self.phase_stored),
        }


def _degree_array(n: int, us, vs, signs) -> np.ndarray:
    deg = np.zeros(n + 1, dtype=np.int64)
    np.add.at(deg, us, signs)
    np.add.at(deg, vs, signs)
    return deg


def _first_pass_checks(src: StreamSource, delta: int | None, dynamic: bool):
    """Read one pass; enforce sign discipline and the degree bound.

    Returns (arrays, true max degree).  Degrees are checked on the
    final materialized multiset, so dynamic streams may exceed delta
    transiently.
    """
    us, vs, signs = src.replay_arrays()
    if not dynamic and bool((signs < 0).any()):
        raise IllegalUpdateError(
            "deletions present; insertion-only mode cannot process them"
        )
    deg = _degree_array(src.n, us, vs, signs)
    if bool((deg < 0).any()):
        raise IllegalUpdateError("some vertex ends with negative degree")
    true_delta = int(deg.max()) if deg.size else 0
    if delta is not None and true_delta > delta:
        offender = int(np.argmax(deg))
        raise DegreeViolationError(
            f"vertex {offender} has degree {int(deg[offender])} > delta {delta}"
        )
    return (us, vs, signs), true_delta


def _mono_mask(ext_colors: np.ndarray, us, vs) -> np.ndarray:
    return ext_colors[us] == ext_colors[vs]


def _same_color_pairs_of(ext_colors: np.ndarray) -> list[Edge]:
    """All vertex pairs sharing a color under ext_colors (index 0 ignored)."""
    by_color: dict[int, list[int]] = {}
    for v in range(1, ext_colors.shape[0]):
        by_color.setdefault(int(ext_colors[v]), []).append(v)
    pairs: list[Edge] = []
    for verts in by_color.values():
        for i in range(len(verts)):
            for j in range(i + 1, len(verts)):
                pairs.append((verts[i], verts[j]))
    return pairs


def _collect_edges(
    n: int,
    us,
    vs,
    signs,
    keep_mask: np.ndarray,
    dynamic: bool,
    sketch_k: int,
    candidates: list[Edge] | None,
    report: RunReport,
) -> list[Edge]:
    """Storage phase: keep the masked edges directly (insertion-only) or
    through a sparse-recovery sketch (dynamic)."""
    if not dynamic:
        ku = us[keep_mask]
        kv = vs[keep_mask]
        return [(int(a), int(b)) for a, b in zip(ku, kv)]
    sketch = SparseRecoverySketch.empty(n, sketch_k)
    sketch.update_batch(signs[keep_mask], us[keep_mask], vs[keep_mask])
    report.sketch_budgets.append(sketch_k)
    return sketch.decode(candidates=candidates)


def _product_coloring(
    n: int, member: HashColorer, greedy: PartialColoring, delta: int
) -> PartialColoring:
    block = delta + 1
    cols = [
        (member.color(v) - 1) * block + greedy.color_of(v) for v in range(1, n + 1)
    ]
    palette = max(delta, 1) * (delta + 1)
    return PartialColoring(n, palette, cols)


def two_pass_coloring(
    src: StreamSource, delta: int, *, dynamic: bool = False
) -> RunReport:
    """Two passes, at most delta * (delta + 1) colors, 4n stored edges."""
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    n = src.n
    start_passes = src.replays
    fam = basic_family(n, delta)

    (us, vs, signs), _ = _first_pass_checks(src, delta, dynamic)
    bank = CounterBank.from_arrays(fam, None, us, vs, signs)
    i_star = argmin_counter(bank)
    member = fam.member(i_star)

    report = RunReport(
        algorithm="two-pass",
        n=n,
        delta=delta,
        palette_bound=max(delta, 1) * (delta + 1),
        passes=0,
        coloring=PartialColoring(n, 1),
        chosen_members=[i_star],
        counter_entries=fam.p,
    )

    us, vs, signs = src.replay_arrays()
    colors = member.colors_array()
    mono = _mono_mask(colors, us, vs)
    candidates = _same_color_pairs_of(colors) if dynamic else None
    stored = _collect_edges(n, us, vs, signs, mono, dynamic, 4 * n, candidates, report)
    if len(stored) > 4 * n:
        raise MonoBudgetExceededError(
            f"{len(stored)} monochromatic edges exceed the 4n = {4 * n} budget"
        )

    sub = Graph(n, stored)
    greedy = greedy_extend(sub, PartialColoring(n, delta + 1))
    report.coloring = _product_coloring(n, member, greedy, delta)
    report.peak_stored_edges = len(stored)
    report.passes = src.replays - start_passes
    return report


def _ceil_log_3_2(x: int) -> int:
    """Smallest t with (3/2)^t >= x, for x >= 1. Exact integer arithmetic."""
    t = 0
    num, den = 1, 1  # (3/2)^t as 3^t / 2^t
    while num < x * den:
        t += 1
        num *= 3
        den *= 2
    return t


def iterative_coloring(
    src: StreamSource, delta: int, *, dynamic: bool = False
) -> RunReport:
    """O(log delta) passes, at most max(6 * delta, 1) colors."""
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    n = src.n
    start_passes = src.replays
    fam = extension_family(n, delta)
    palette = fam.palette
    partial = PartialColoring(n, palette)
    # proven round bound is ceil(log_{3/2} delta) + 1; the runtime guard
    # allows one extra round before declaring non-termination
    guard_rounds = _ceil_log_3_2(max(delta, 1)) + 2

    report = RunReport(
        algorithm="iterative",
        n=n,
        delta=delta,
        palette_bound=palette,
        passes=0,
        coloring=partial,
        counter_entries=fam.p,
    )

    first = True
    uncolored = list(range(1, n + 1))
    while len(uncolored) * delta > n:
        if report.iterations >= guard_rounds:
            raise NonTerminationError(
                f"exceeded the round guard of {guard_rounds}"
            )
        n0 = len(uncolored)
        report.phase_uncolored.append(n0)

        # pass A: pick the family member whose extension is cheapest
        if first:
            (us, vs, signs), _ = _first_pass_checks(src, delta, dynamic)
            first = False
        else:
            us, vs, signs = src.replay_arrays()
        bank = CounterBank.from_arrays(fam, partial, us, vs, signs)
        i_star = argmin_counter(bank)
        member = fam.member(i_star)
        report.chosen_members.append(i_star)

        # pass B: store the extension's monochromatic edges
        us, vs, signs = src.replay_arrays()
        base_arr = base_color_array(partial, n)
        ext = np.where(base_arr > 0, base_arr, member.colors_array())
        mono = _mono_mask(ext, us, vs)
        candidates = _same_color_pairs_of(ext) if dynamic else None
        stored = _collect_edges(
            n, us, vs, signs, mono, dynamic, max(1, n0), candidates, report
        )
        if 3 * len(stored) > n0:
            raise MonoBudgetExceededError(
                f"round {report.iterations + 1}: {len(stored)} monochromatic "
                f"edges exceed the n0/3 = {n0}/3 budget"
            )
        report.phase_stored.append(len(stored))
        report.peak_stored_edges = max(report.peak_stored_edges, len(stored))

        blocked = {w for e in stored for w in e}
        newly = {
            v: int(ext[v]) for v in uncolored if v not in blocked
        }
        partial = partial.assign(newly)
        uncolored = [v for v in uncolored if v in blocked]
        report.iterations += 1
        report.phase_colorings.append(partial)

    # final pass: store everything incident on the few uncolored vertices
    if first:
        (us, vs, signs), _ = _first_pass_checks(src, delta, dynamic)
    else:
        us, vs, signs = src.replay_arrays()
    unc_mask = np.zeros(n + 1, dtype=bool)
    for v in uncolored:
        unc_mask[v] = True
    relevant = unc_mask[us] | unc_mask[vs]
    if dynamic:
        cands = sorted(
            {
                (min(w, x), max(w, x))
                for w in uncolored
                for x in range(1, n + 1)
                if x != w
            }
        )
    else:
        cands = None
    # the final phase stores at most n edges, so the sketch budget is n
    stored = _collect_edges(n, us, vs, signs, relevant, dynamic, n, cands, report)
    if len(stored) > n:
        raise MonoBudgetExceededError(
            f"final round stored {len(stored)} edges, above the n = {n} budget"
        )
    report.final_stored_edges = len(stored)
    report.peak_stored_edges = max(report.peak_stored_edges, len(stored))

    sub = Graph(n, stored)
    partial = greedy_extend(sub, partial, order=uncolored)
    report.coloring = partial
    report.phase_colorings.append(partial)
    report.passes = src.replays - start_passes
    return report


def _power_of_two_grid(n: int) -> list[int]:
    grid = [1]
    while grid[-1] < n:
        grid.append(grid[-1] * 2)
    return grid


def two_pass_unknown_delta(src: StreamSource, *, dynamic: bool = False) -> RunReport:
    """Two passes without a declared degree bound.

    Pass 1 keeps a counter bank per power-of-two palette guess and also
    measures the true max degree; the smallest guess at least that
    degree is committed for pass 2, so the guess is within a factor two.
    """
    n = src.n
    start_passes = src.replays
    grid = _power_of_two_grid(n)

    (us, vs, signs), true_delta = _first_pass_checks(src, None, dynamic)
    selected = next(g for g in grid if g >= max(true_delta, 1))
    fam = basic_family(n, selected)
    # one logical bank per grid value is maintained during the pass; only
    # the selected bank's argmin is consumed, so only it is materialized
    bank = CounterBank.from_arrays(fam, None, us, vs, signs)
    i_star = argmin_counter(bank)
    member = fam.member(i_star)

    report = RunReport(
        algorithm="two-pass-unknown-delta",
        n=n,
        delta=selected,
        palette_bound=selected * (selected + 1),
        passes=0,
        coloring=PartialColoring(n, 1),
        chosen_members=[i_star],
        counter_entries=fam.p * len(grid),
        selected_delta=selected,
    )

    us, vs, signs = src.replay_arrays()
    colors = member.colors_array()
    mono = _mono_mask(colors, us, vs)
    candidates = _same_color_pairs_of(colors) if dynamic else None
    stored = _collect_edges(n, us, vs, signs, mono, dynamic, 4 * n, candidates, report)
    if len(stored) > 4 * n:
        raise MonoBudgetExceededError(
            f"{len(stored)} monochromatic edges exceed the 4n = {4 * n} budget"
        )
    sub = Graph(n, stored)
    greedy = greedy_extend(sub, PartialColoring(n, selected + 1))
    report.coloring = _product_coloring(n, member, greedy, selected)
    report.peak_stored_edges = len(stored)
    report.passes = src.replays - start_passes
    return report


def run_dynamic(src: StreamSource, delta: int, which: str) -> RunReport:
    """Dynamic-stream entry point; `which` is `two-pass` or `iterative`."""
    if which == "two-pass":
        return two_pass_coloring(src, delta, dynamic=True)
    if which == "iterative":
        return iterative_coloring(src, delta, dynamic=True)
    if which == "two-pass-unknown-delta":
        return two_pass_unknown_delta(src, dynamic=True)
    raise ValueError(f"unknown algorithm {which!r}")
