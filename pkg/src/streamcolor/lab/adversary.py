"""Adaptive hard-input construction against a game strategy, at desk scale.

Level i samples player i's share from the current base graph, groups the
support by what the player would write given the blackboard so far, picks
the summary whose class misses the fewest base edges, prunes vertices
with too many missing edges, and recurses on the missing graph.  After k
levels the chosen representatives are replayed through the game and every
same-colored surviving pair is checked against the final missing set.

Two views of each level's messages are kept.  The accounting view
truncates or pads messages to the s-bit budget, which is the width the
missing-edge ceiling ln2*(s+1)/p is stated for.  The behavioral view
keeps raw messages, which is what later players actually read and what
the replay reproduces.  For the final level the same-color check groups
the support by the entire output coloring, the grouping for which the
containment claim is literally true: if a same-colored surviving pair is
not in that class's missing set, some consistent input contains the pair
as an edge while receiving the same coloring, so replaying it must fail
validation.  The harness hunts that input down the level chain and
returns it as a concrete counterexample.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from ..errors import ImproperOutputError, InfeasibleLevelError
from ..graph import Edge, Graph, color_classes, complete_graph, normalize_edge
from ..streamio import dumps_coloring
from .distribution import (
    DEFAULT_ENUM_CAP,
    RandomGraphDistribution,
    SupportTable,
    support_table,
)
from .game import GameSpec, GameTranscript, Strategy, run_game, text_bits
from .lnscaled import LnScaled
from .schedule import schedule


def fit_bits(message: str, bits: int) -> str:
    """Truncate or zero-pad a message to exactly ``bits`` characters."""
    if message.strip("01"):
        raise ValueError("messages must be 0/1 strings")
    if len(message) >= bits:
        return message[:bits]
    return message + "0" * (bits - len(message))


@dataclass(frozen=True)
class AdversaryLevel:
    """Accounting for one level, all on the s-bit view."""

    index: int
    v_size: int
    base_edge_count: int
    support_size: int
    labels_used: int
    chosen_label: str
    miss_count: int
    miss_bound: float
    miss_bound_holds: bool
    removed: tuple[int, ...]
    vsize_bound_holds: bool


@dataclass(frozen=True)
class Counterexample:
    """A consistent input on which the strategy's coloring is improper."""

    pair: Edge | None
    level: int | None
    shares: tuple[tuple[Edge, ...], ...]
    violations: tuple[Edge, ...]


@dataclass(frozen=True)
class AdversaryReport:
    n: int
    delta: int
    k: int
    s: int
    p: tuple[Fraction, ...]
    d: tuple[Fraction, ...]
    final_prune_threshold: LnScaled
    levels: tuple[AdversaryLevel, ...]
    v_sizes: tuple[int, ...]
    surviving: tuple[int, ...]
    shares: tuple[tuple[Edge, ...], ...]
    transcript: GameTranscript | None
    replay_proper: bool
    exact_miss_count: int
    same_color_pairs_checked: int
    same_color_ok: bool
    counterexample: Counterexample | None

    @property
    def bounds_hold(self) -> bool:
        return all(
            lvl.miss_bound_holds and lvl.vsize_bound_holds for lvl in self.levels
        )


class _Partition:
    """Per-label counts, edge-cover unions, and smallest member masks."""

    def __init__(self):
        self.count: dict[str, int] = {}
        self.union: dict[str, int] = {}
        self.smallest: dict[str, int] = {}

    def add(self, label: str, mask: int) -> None:
        if label in self.count:
            self.count[label] += 1
            self.union[label] |= mask
            self.smallest[label] = min(self.smallest[label], mask)
        else:
            self.count[label] = 1
            self.union[label] = mask
            self.smallest[label] = mask

    def argmin_missing(self, edge_count: int) -> tuple[str, int]:
        best_label, best_missing = None, None
        for label in sorted(self.count):
            missing = edge_count - self.union[label].bit_count()
            if best_missing is None or missing < best_missing:
                best_label, best_missing = label, missing
        if best_label is None:
            raise InfeasibleLevelError("level support is empty")
        return best_label, best_missing


@dataclass
class _LevelState:
    """Everything the counterexample hunt needs to revisit a level."""

    table: SupportTable
    history: tuple[str, ...]
    fitted_label: str
    fitted_union: int
    exact_label: str | None = None
    exact_union: int | None = None

    def miss_edges(self) -> frozenset[Edge]:
        union = self.fitted_union
        return frozenset(
            e for i, e in enumerate(self.table.edges) if not union >> i & 1
        )

    def exact_miss_edges(self) -> frozenset[Edge]:
        assert self.exact_union is not None
        union = self.exact_union
        return frozenset(
            e for i, e in enumerate(self.table.edges) if not union >> i & 1
        )


def _default_parameters(
    n: int, delta: int, k: int, s: int
) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    sched = schedule(n, delta, k, s)
    if any(value.power != 0 for value in sched.p + sched.d):
        raise ValueError(
            "derived levels beyond the first are irrational; "
            "pass explicit rational p and d overrides for k >= 2"
        )
    return (
        tuple(value.coeff for value in sched.p),
        tuple(value.coeff for value in sched.d),
    )


def run_adversary(
    strategy: Strategy,
    n: int,
    delta: int,
    k: int,
    s: int,
    *,
    p: Sequence[Fraction] | None = None,
    d: Sequence[Fraction] | None = None,
    seed: int = 0,
    enum_cap: int = DEFAULT_ENUM_CAP,
) -> AdversaryReport:
    """Execute the k-level construction and the confirming replay.

    ``p`` and ``d`` override the derived per-level parameters with exact
    rationals (required for k >= 2, where the derived values carry ln2
    factors).  ``d`` may carry one extra entry used as the final pruning
    threshold; otherwise that threshold is derived from the recursion.
    The game promise requires delta at least the sum of the per-level
    degree cutoffs, else the replay can reject its own input.
    """
    spec = GameSpec(n, delta, k)
    if s < 1:
        raise ValueError("summary budget s must be at least 1")
    if (p is None) != (d is None):
        raise ValueError("override p and d together")
    final_threshold: LnScaled | None = None
    if p is None:
        p_levels, d_levels = _default_parameters(n, delta, k, s)
    else:
        p_levels = tuple(Fraction(x) for x in p)
        d_all = tuple(Fraction(x) for x in d)
        if len(p_levels) != k or len(d_all) not in (k, k + 1):
            raise ValueError(f"need {k} probabilities and {k} or {k + 1} thresholds")
        d_levels = d_all[:k]
        if len(d_all) == k + 1:
            final_threshold = LnScaled.of(d_all[k])
    if final_threshold is None:
        # one more turn of the recursion: d_{k+1} = 2*ln2*(s+1)*2k/(p_k*n)
        final_threshold = LnScaled(
            Fraction(2 * (s + 1) * 2 * k) / (p_levels[-1] * n), 1
        )

    vertices = tuple(range(1, n + 1))
    base = complete_graph(n)
    v_sizes = [n]
    history_raw: list[str] = []
    chosen_shares: list[tuple[Edge, ...]] = []
    levels: list[AdversaryLevel] = []
    states: list[_LevelState] = []

    for li in range(k):
        index = li + 1
        dist = RandomGraphDistribution(base, p_levels[li], d_levels[li], seed)
        table = support_table(dist, cap=enum_cap)
        if len(table) == 0:
            raise InfeasibleLevelError(f"level {index} support is empty")
        history = tuple(history_raw)

        fitted = _Partition()
        exact = _Partition() if index == k else None
        for mask in table.masks.tolist():
            share = tuple(table.graph(mask).edges_sorted())
            if index < k:
                raw = strategy.message(spec, index, share, history)
            else:
                raw = text_bits(dumps_coloring(strategy.output(spec, share, history)))
            fitted.add(fit_bits(raw, s), mask)
            if exact is not None:
                exact.add(raw, mask)

        edge_count = len(table.edges)
        chosen, miss_count = fitted.argmin_missing(edge_count)
        state = _LevelState(
            table=table,
            history=history,
            fitted_label=chosen,
            fitted_union=fitted.union[chosen],
        )
        ceiling = LnScaled(Fraction(s + 1) / p_levels[li], 1)

        rep_mask = fitted.smallest[chosen]
        rep_share = tuple(table.graph(rep_mask).edges_sorted())
        chosen_shares.append(rep_share)
        if index < k:
            history_raw.append(strategy.message(spec, index, rep_share, history))
        else:
            assert exact is not None
            rep_label = text_bits(
                dumps_coloring(strategy.output(spec, rep_share, history))
            )
            state.exact_label = rep_label
            state.exact_union = exact.union[rep_label]
        states.append(state)

        miss_edges = state.miss_edges()
        threshold = (
            LnScaled.of(d_levels[li + 1]) if index < k else final_threshold
        )
        miss_degree = {v: 0 for v in vertices}
        for u, v in miss_edges:
            miss_degree[u] += 1
            miss_degree[v] += 1
        survivors = tuple(
            v for v in vertices if LnScaled.of(miss_degree[v]) <= threshold
        )
        removed = tuple(sorted(set(vertices) - set(survivors)))

        levels.append(
            AdversaryLevel(
                index=index,
                v_size=len(vertices),
                base_edge_count=edge_count,
                support_size=len(table),
                labels_used=len(fitted.count),
                chosen_label=chosen,
                miss_count=miss_count,
                miss_bound=ceiling.to_float(),
                miss_bound_holds=LnScaled.of(miss_count) <= ceiling,
                removed=removed,
                vsize_bound_holds=2 * k * len(removed) <= n,
            )
        )
        v_sizes.append(len(survivors))
        survivor_set = set(survivors)
        base = Graph(
            n, (e for e in miss_edges if e[0] in survivor_set and e[1] in survivor_set)
        )
        vertices = survivors

    shares = tuple(chosen_shares)
    exact_miss = states[-1].exact_miss_edges()
    transcript: GameTranscript | None = None
    counterexample: Counterexample | None = None
    replay_proper = False
    same_color_ok = False
    pairs_checked = 0
    try:
        transcript = run_game(strategy, spec, shares)
        replay_proper = True
    except ImproperOutputError as err:
        transcript = err.transcript
        counterexample = Counterexample(
            pair=None, level=None, shares=shares, violations=tuple(err.violations)
        )

    if replay_proper:
        assert transcript is not None
        for i in range(k - 1):
            if transcript.messages[i] != history_raw[i]:
                raise AssertionError(f"replayed message {i + 1} diverged")
        if transcript.messages[k - 1] != states[-1].exact_label:
            raise AssertionError("replayed final message diverged")

        surviving_set = set(vertices)
        violating_pair = None
        for members in color_classes(transcript.coloring).values():
            alive = [v for v in members if v in surviving_set]
            for u, v in combinations(alive, 2):
                pairs_checked += 1
                if normalize_edge(u, v) not in exact_miss:
                    violating_pair = normalize_edge(u, v)
                    break
            if violating_pair:
                break

        if violating_pair is None:
            same_color_ok = True
        else:
            counterexample = _exhibit_counterexample(
                strategy, spec, shares, states, violating_pair
            )

    return AdversaryReport(
        n=n,
        delta=delta,
        k=k,
        s=s,
        p=p_levels,
        d=d_levels,
        final_prune_threshold=final_threshold,
        levels=tuple(levels),
        v_sizes=tuple(v_sizes),
        surviving=tuple(vertices),
        shares=shares,
        transcript=transcript,
        replay_proper=replay_proper,
        exact_miss_count=len(exact_miss),
        same_color_pairs_checked=pairs_checked,
        same_color_ok=same_color_ok,
        counterexample=counterexample,
    )


def _exhibit_counterexample(
    strategy: Strategy,
    spec: GameSpec,
    shares: tuple[tuple[Edge, ...], ...],
    states: list[_LevelState],
    pair: Edge,
) -> Counterexample:
    """Swap one share for a same-class graph containing ``pair``.

    The deepest level whose base still holds the pair is the one whose
    class must contain a witness: deeper bases are subsets of each miss
    set along the chain, so had the pair been missed there too, it would
    have survived into the next base.
    """
    k = len(states)
    level = None
    for i in range(k, 0, -1):
        if pair in states[i - 1].table._edge_rank:
            level = i
            break
    if level is None:
        raise AssertionError(f"pair {pair} is outside even the first base graph")

    state = states[level - 1]
    table = state.table
    bit = table._edge_rank[pair]
    use_exact = level == k
    witness = None
    for mask in table.masks.tolist():
        if not mask >> bit & 1:
            continue
        share = tuple(table.graph(mask).edges_sorted())
        if use_exact:
            raw = text_bits(
                dumps_coloring(strategy.output(spec, share, state.history))
            )
            if raw == state.exact_label:
                witness = share
                break
        else:
            raw = strategy.message(spec, level, share, state.history)
            if fit_bits(raw, len(state.fitted_label)) == state.fitted_label:
                witness = share
                break
    if witness is None:
        raise AssertionError(
            f"pair {pair} outside the missing set has no witness at level {level}"
        )
    counter_shares = shares[: level - 1] + (witness,) + shares[level:]
    try:
        run_game(strategy, spec, counter_shares)
    except ImproperOutputError as err:
        return Counterexample(
            pair=pair,
            level=level,
            shares=counter_shares,
            violations=tuple(err.violations),
        )
    raise AssertionError(
        f"witness for pair {pair} at level {level} replayed proper; "
        "the strategy is inconsistent within a message class"
    )
