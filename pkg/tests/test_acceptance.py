"""Acceptance suite: one test per release criterion.

Each test covers one numbered criterion end to end and finishes by
printing a single CRITERION line, so `pytest -v -rA` reads as a
checklist.  All bound checks are exact (integer or rational); the only
float comparisons are the wall-clock ceilings.
"""

from __future__ import annotations

import time
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from streamcolor.counters import CounterBank
from streamcolor.engine import (
    StreamSource,
    iterative_coloring,
    run_dynamic,
    two_pass_coloring,
    two_pass_unknown_delta,
)
from streamcolor.errors import ImproperOutputError, RecoveryFailedError
from streamcolor.generator import generate_graph, generate_stream
from streamcolor.graph import (
    EdgeUpdate,
    Graph,
    PartialColoring,
    materialize,
    max_degree,
    validate_partial,
    validate_proper,
)
from streamcolor.hashfam import basic_family, collision_probability, extension_family
from streamcolor.lab import (
    ConstantColorStrategy,
    DistinctColorsStrategy,
    GameSpec,
    LnScaled,
    ParityMessageStrategy,
    RandomGraphDistribution,
    Strategy,
    check_compression_lemma,
    corollary_check,
    random_scheme,
    run_adversary,
    run_game,
    schedule,
    worst_two_labeling,
)
from streamcolor.prng import SplitMix64
from streamcolor.recovery import SparseRecoverySketch, edge_decode, edge_encode
from streamcolor.streamio import StreamFile, dumps_coloring

# 200 seeded graphs spanning the (n, delta) grid; the n = 10^4 slice is
# kept small because each run there costs about a second of counter work
CORPUS_SHAPE = (
    [(100, 2)] * 27 + [(100, 8)] * 27 + [(100, 32)] * 26
    + [(1_000, 2)] * 35 + [(1_000, 8)] * 35 + [(1_000, 32)] * 35
    + [(10_000, 2)] * 6 + [(10_000, 8)] * 5 + [(10_000, 32)] * 4
)
assert len(CORPUS_SHAPE) == 200


@pytest.fixture(scope="module")
def corpus():
    """(n, delta, stream, final graph) for all 200 corpus entries."""
    out = []
    for j, (n, delta) in enumerate(CORPUS_SHAPE):
        sf = generate_stream(n, delta, seed=j)
        out.append((n, delta, sf, materialize(sf.n, sf.updates)))
    return out


def _round_bound(delta: int) -> int:
    """Smallest t with (3/2)^t >= delta, plus one; exact integers."""
    t, num, den = 0, 1, 1
    while num < max(delta, 1) * den:
        t += 1
        num *= 3
        den *= 2
    return t + 1


def _graph_arrays(g: Graph):
    edges = g.edges_sorted()
    us = np.array([u for u, _ in edges], dtype=np.int64)
    vs = np.array([v for _, v in edges], dtype=np.int64)
    return us, vs, np.ones(len(edges), dtype=np.int64)


def test_criterion_01_two_pass_corpus_bounds(corpus):
    t0 = time.monotonic()
    for n, delta, sf, g in corpus:
        rep = two_pass_coloring(StreamSource.from_stream_file(sf), delta)
        assert rep.passes == 2
        assert validate_proper(g, rep.coloring) == []
        assert rep.coloring.palette <= delta * (delta + 1)
        assert rep.max_color_used() <= delta * (delta + 1)
        assert rep.peak_stored_edges <= 4 * n
        assert rep.counter_entries <= 2 * n
    elapsed = time.monotonic() - t0
    assert elapsed < 60.0, f"two-pass corpus took {elapsed:.1f}s"
    print(f"CRITERION 1: PASS (200 graphs, {elapsed:.1f}s)")


def test_criterion_02_iterative_corpus_bounds(corpus):
    t0 = time.monotonic()
    for n, delta, sf, g in corpus:
        rep = iterative_coloring(StreamSource.from_stream_file(sf), delta)
        assert validate_proper(g, rep.coloring) == []
        assert rep.coloring.palette <= max(6 * delta, 1)
        assert rep.max_color_used() <= max(6 * delta, 1)
        assert rep.iterations <= _round_bound(delta)
        # per-round storage stays within a third of the uncolored count
        for n0, stored in zip(rep.phase_uncolored, rep.phase_stored):
            assert 3 * stored <= n0
        # each round colors at least a third of what it started with
        after = [n - pc.colored_count() for pc in rep.phase_colorings]
        for n0, left in zip(rep.phase_uncolored, after):
            assert 3 * left <= 2 * n0
        assert rep.final_stored_edges is not None
        assert rep.final_stored_edges <= n
        for pc in rep.phase_colorings:
            assert validate_partial(g, pc) == []
    elapsed = time.monotonic() - t0
    assert elapsed < 180.0, f"iterative corpus took {elapsed:.1f}s"
    print(f"CRITERION 2: PASS (200 graphs, {elapsed:.1f}s)")


def test_criterion_03_dynamic_matches_insertion_only():
    for seed in range(100):
        delta = (2, 8, 32)[seed % 3]
        sf = generate_stream(500, delta, seed=1_000 + seed, deletion_fraction=0.3)
        assert any(sign == -1 for sign, _, _ in sf.updates)
        g = materialize(sf.n, sf.updates)
        ins = StreamFile(
            500, delta, tuple(EdgeUpdate(1, u, v) for u, v in g.edges_sorted())
        )
        runs = (
            ("two-pass", two_pass_coloring),
            ("iterative", iterative_coloring),
        )
        for which, plain in runs:
            dyn = run_dynamic(StreamSource.from_stream_file(sf), delta, which)
            ref = plain(StreamSource.from_stream_file(ins), delta)
            assert dumps_coloring(dyn.coloring) == dumps_coloring(ref.coloring)
            assert dyn.passes == ref.passes
            assert dyn.sketch_budgets
            for k in dyn.sketch_budgets:
                assert SparseRecoverySketch.empty(500, k).size_field_elements <= 2 * k
            if which == "two-pass":
                assert dyn.sketch_budgets == [4 * 500]
            else:
                expected = [max(1, n0) for n0 in dyn.phase_uncolored] + [500]
                assert dyn.sketch_budgets == expected
    print("CRITERION 3: PASS (100 streams, both algorithms byte-identical)")


def test_criterion_04_recovery_matches_brute_force():
    t0 = time.monotonic()
    rng = SplitMix64(424242)
    within, beyond = 0, 0
    for case in range(2_000):
        n = 4 + rng.below(197)
        k = 1 + rng.below(64)
        univ = n * (n - 1) // 2
        if case % 4 == 3:
            t = min(univ, k + 1 + rng.below(k + 8))
        else:
            t = rng.below(min(k, univ) + 1)
        churn_n = rng.below(12)
        pool = rng.sample_indices(min(univ, t + churn_n), univ)
        surv = [edge_decode(x + 1, n) for x in pool[:t]]
        churn = [edge_decode(x + 1, n) for x in pool[t:]]
        events = (
            [(1, u, v) for u, v in surv]
            + [(1, u, v) for u, v in churn]
            + [(-1, u, v) for u, v in churn]
        )
        # brute-force replay: final multiset of the signed stream
        mult: dict[tuple[int, int], int] = {}
        for sign, u, v in events:
            e = (min(u, v), max(u, v))
            mult[e] = mult.get(e, 0) + sign
        final = sorted(
            (e for e, c in mult.items() if c), key=lambda e: edge_encode(*e, n)
        )
        sk = SparseRecoverySketch.empty(n, k)
        if events:
            sk.update_batch(
                np.array([s for s, _, _ in events], dtype=np.int64),
                np.array([u for _, u, _ in events], dtype=np.int64),
                np.array([v for _, _, v in events], dtype=np.int64),
            )
        if len(final) <= k:
            assert sk.decode() == final
            within += 1
        else:
            try:
                got = sk.decode()
            except RecoveryFailedError:
                pass
            else:
                assert got == final
            beyond += 1
    assert within >= 1_200 and beyond >= 300
    elapsed = time.monotonic() - t0
    assert elapsed < 30.0, f"recovery cases took {elapsed:.1f}s"
    print(
        f"CRITERION 4: PASS (2000 cases, {within} within budget, "
        f"{beyond} beyond, {elapsed:.1f}s)"
    )


def _seeded_partial(g: Graph, palette: int, rng: SplitMix64) -> PartialColoring:
    """Properly color roughly half of the vertices, greedily."""
    colors: list[int | None] = [None] * g.n
    adj = g.adjacency()
    for v in range(1, g.n + 1):
        if rng.below(2):
            used = {colors[w - 1] for w in adj[v]}
            colors[v - 1] = next(c for c in range(1, palette + 1) if c not in used)
    return PartialColoring(g.n, palette, colors)


def test_criterion_05_hash_family_bounds():
    t0 = time.monotonic()
    problems: list[str] = []
    configs = [(n, d) for n in (10, 100, 1_000) for d in (2, 5, 16)]
    for ci, (n, delta) in enumerate(configs):
        families = (
            ("basic", basic_family(n, delta)),
            ("extension", extension_family(n, delta)),
        )
        # clause 1: pairwise collision fraction at most 2/palette
        for fam_name, fam in families:
            bound = Fraction(2, fam.palette)
            rng = SplitMix64(9_000 + ci)
            bad, worst = 0, Fraction(0)
            for _ in range(500):
                u = 1 + rng.below(n)
                v = 1 + rng.below(n)
                while v == u:
                    v = 1 + rng.below(n)
                frac = collision_probability(fam, u, v)
                if frac > bound:
                    bad += 1
                    worst = max(worst, frac)
            if bad:
                problems.append(
                    f"{fam_name} family n={n} delta={delta}: {bad}/500 pairs "
                    f"collide above 2/palette = {bound} (worst {worst})"
                )
        # clause 2: some member leaves at most 4n monochromatic edges
        fam = basic_family(n, delta)
        for i in range(50):
            g = generate_graph(n, delta, seed=20_000 + 100 * ci + i)
            bank = CounterBank.from_arrays(fam, None, *_graph_arrays(g))
            if int(bank.counts.min()) > 4 * n:
                problems.append(
                    f"basic family n={n} delta={delta} graph {i}: min "
                    f"monochromatic {int(bank.counts.min())} > 4n"
                )
        # clause 3: some extension leaves at most n0/3 monochromatic edges
        fam = extension_family(n, delta)
        for i in range(50):
            g = generate_graph(n, delta, seed=30_000 + 100 * ci + i)
            rng = SplitMix64(31_000 + 100 * ci + i)
            base = _seeded_partial(g, fam.palette, rng)
            assert validate_partial(g, base) == []
            n0 = n - base.colored_count()
            bank = CounterBank.from_arrays(fam, base, *_graph_arrays(g))
            if 3 * int(bank.counts.min()) > n0:
                problems.append(
                    f"extension family n={n} delta={delta} pair {i}: min "
                    f"extension count {int(bank.counts.min())} > n0/3 = {n0}/3"
                )
    elapsed = time.monotonic() - t0
    assert elapsed < 60.0, f"hash family checks took {elapsed:.1f}s"
    assert not problems, "hash family guarantees violated:\n" + "\n".join(problems)
    print(f"CRITERION 5: PASS (9 configurations, {elapsed:.1f}s)")


def test_criterion_06_unknown_delta_selection(corpus):
    for n, delta, sf, g in corpus:
        rep = two_pass_unknown_delta(StreamSource(sf.n, sf.updates))
        assert rep.passes == 2
        true_delta = max(max_degree(g), 1)
        assert rep.selected_delta is not None
        assert true_delta <= rep.selected_delta < 2 * true_delta
        assert validate_proper(g, rep.coloring) == []
        bound = rep.selected_delta * (rep.selected_delta + 1)
        assert rep.coloring.palette <= bound
        assert rep.max_color_used() <= bound
    print("CRITERION 6: PASS (200 graphs, estimate within a factor two)")


def _component_signature(edges: tuple[tuple[int, int], ...]):
    """Isomorphism invariant for graphs with at most four edges.

    Components this small are pinned down by (vertex count, edge count,
    degree multiset), so the sorted multiset of those triples separates
    every pair of non-isomorphic graphs in range.
    """
    verts = sorted({v for e in edges for v in e})
    parent = {v: v for v in verts}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        parent[find(u)] = find(v)
    deg = {v: 0 for v in verts}
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    groups: dict[int, list[int]] = {}
    for v in verts:
        groups.setdefault(find(v), []).append(v)
    comps = []
    for members in groups.values():
        inside = set(members)
        e_count = sum(1 for u, _ in edges if u in inside)
        comps.append(
            (len(members), e_count, tuple(sorted(deg[v] for v in members)))
        )
    return tuple(sorted(comps))


def _compact_graph(edges: tuple[tuple[int, int], ...]) -> Graph:
    verts = sorted({v for e in edges for v in e})
    ren = {v: i + 1 for i, v in enumerate(verts)}
    es = sorted((min(ren[u], ren[v]), max(ren[u], ren[v])) for u, v in edges)
    return Graph(max(len(verts), 1), es)


def test_criterion_07_compression_bound_small_bases():
    t0 = time.monotonic()
    # every graph with at most four edges, up to isomorphism: eight
    # vertices suffice (a four-edge graph touches at most eight)
    k8 = [(u, v) for u in range(1, 9) for v in range(u + 1, 9)]
    reps: dict[tuple, tuple] = {}
    for m in range(5):
        for combo in combinations(k8, m):
            sig = _component_signature(combo)
            if sig not in reps:
                reps[sig] = combo
    assert len(reps) == 20  # 1 + 1 + 2 + 5 + 11 classes by edge count
    p_values = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))
    d_large = Fraction(100)
    for combo in reps.values():
        base = _compact_graph(combo)
        for p in p_values:
            dist = RandomGraphDistribution(base, p, d_large, 0)
            out = worst_two_labeling(dist)
            assert out.support_size == 1 << base.m
            assert out.holds, (
                f"base {base!r} p={p}: worst 2-labeling misses "
                f"{out.worst_min_missing} > {out.bound}"
            )
    # 500 random wider schemes on five-edge bases
    k7 = [(u, v) for u in range(1, 8) for v in range(u + 1, 8)]
    for i in range(500):
        rng = SplitMix64(40_000 + i)
        base = Graph(7, sorted(k7[j] for j in rng.sample_indices(5, 21)))
        bits = 1 + i % 3
        p = p_values[(i // 3) % 3]
        dist = RandomGraphDistribution(base, p, d_large, 0)
        out = check_compression_lemma(dist, random_scheme(bits, seed=50_000 + i))
        assert out["hypotheses_ok"]
        assert out["holds"], (
            f"scheme {i} (s={bits}, p={p}) on {base!r}: "
            f"min missing {out['min_missing']} > {out['bound']}"
        )
    elapsed = time.monotonic() - t0
    assert elapsed < 120.0, f"compression checks took {elapsed:.1f}s"
    print(
        f"CRITERION 7: PASS (20 bases exhaustively, 500 random schemes, "
        f"{elapsed:.1f}s)"
    )


def test_criterion_08_schedule_identities():
    checked = 0
    one = LnScaled.of(Fraction(1))
    zero = LnScaled.of(Fraction(0))
    for j in range(100):
        k = (1, 1, 2, 2, 3, 4)[j % 6]
        delta = 150_000 + 7_919 * j
        n = delta**k * (1 + j % 3)
        s = n * delta.bit_length() * (1 + j % 2)
        sched = schedule(n, delta, k, s)
        assert sched.hypotheses_ok, (n, delta, k, s, sched.warnings)
        assert sched.p_in_unit_interval
        product = LnScaled.of(Fraction(delta, 2 * k))
        for i in range(k):
            assert sched.d[i] == sched.closed_form_d(i + 1)
            assert sched.p[i] == sched.closed_form_p(i + 1)
            assert sched.p[i] * sched.d[i] == product
            assert zero < sched.p[i] < one
        checked += 1
    assert checked == 100
    print("CRITERION 8: PASS (100 tuples, exact symbolic identities)")


def test_criterion_09_corollary_instantiations():
    n = 2**20
    checks = [
        corollary_check(n, q=1),
        corollary_check(n, q=2),
        corollary_check(n, alpha=Fraction(1, 4)),
        corollary_check(n, alpha=Fraction(1, 2)),
    ]
    failing = [c for c in checks if not c.exceeds]
    detail = "\n".join(
        f"  mode={c.mode} parameter={c.parameter}: bound {c.theorem_bound} "
        f"(ln {c.theorem_bound_ln:.4f}) vs threshold ln {c.threshold_ln:.4f} "
        f"(delta={c.delta}, k={c.k}, s={c.s})"
        for c in failing
    )
    assert not failing, (
        "computed bound does not exceed the advertised color threshold:\n"
        + detail
    )
    print("CRITERION 9: PASS (all four instantiations clear their thresholds)")


class _WatchPairStrategy(Strategy):
    """Announces whether its share touches one watched edge; the final
    player colors the watched endpoints alike only if no view saw it."""

    name = "watch-pair"

    def __init__(self, pair: tuple[int, int]):
        self.pair = (min(pair), max(pair))

    def _sees(self, share) -> bool:
        return any((min(u, v), max(u, v)) == self.pair for u, v in share)

    def message(self, spec, index, share, history):
        return "1" if self._sees(share) else "0"

    def output(self, spec, share, history):
        colors = list(range(1, spec.n + 1))
        if not self._sees(share) and "1" not in history:
            a, b = self.pair
            colors[b - 1] = colors[a - 1]
        return PartialColoring(spec.n, spec.n, colors)


def test_criterion_10_toy_adversary_mechanics():
    t0 = time.monotonic()
    half = Fraction(1, 2)
    common = dict(n=6, delta=4, k=2, s=2)

    def run(strategy, d):
        rep = run_adversary(strategy, p=[half, half], d=d, **common)
        for level in rep.levels:
            assert level.miss_bound_holds, (strategy.name, level)
            assert level.vsize_bound_holds, (strategy.name, level)
        for before, after in zip(rep.v_sizes, rep.v_sizes[1:]):
            # |V_{i+1}| >= |V_i| - n/(2k), i.e. at most one removal here
            assert 4 * (before - after) <= 6
        return rep

    # proper strategies: the containment check passes
    for strategy in (DistinctColorsStrategy(), ParityMessageStrategy()):
        rep = run(strategy, d=[Fraction(2), Fraction(2)])
        assert rep.replay_proper
        assert rep.same_color_ok
        assert rep.counterexample is None

    # watched-pair strategy: same-colors exactly the one pair every view
    # missed, so the containment check passes with real content
    rep = run(_WatchPairStrategy((1, 2)), d=[Fraction(2), Fraction(1)])
    assert rep.replay_proper
    assert rep.levels[0].miss_count == 1
    assert rep.levels[1].miss_count == 1
    assert rep.same_color_pairs_checked == 1
    assert rep.same_color_ok
    assert rep.counterexample is None

    # constant strategy: containment fails and a concrete miscolored
    # input is exhibited
    strategy = ConstantColorStrategy()
    rep = run(strategy, d=[Fraction(2), Fraction(2)])
    ce = rep.counterexample
    assert ce is not None
    assert ce.pair == (1, 2)
    assert ce.violations
    with pytest.raises(ImproperOutputError) as exc_info:
        run_game(strategy, GameSpec(6, 4, 2), ce.shares)
    err = exc_info.value
    union = Graph(6, sorted({e for share in ce.shares for e in share}))
    assert validate_proper(union, err.transcript.coloring) == list(err.violations)
    assert ce.pair in err.violations
    elapsed = time.monotonic() - t0
    assert elapsed < 60.0, f"toy adversary took {elapsed:.1f}s"
    print(f"CRITERION 10: PASS (4 strategies, counterexample replayed, {elapsed:.1f}s)")
