"""Tests for the degree-capped random subgraph distribution."""

import math
from collections import Counter
from fractions import Fraction

import pytest

from streamcolor.errors import OutOfRangeError, RejectionOverflowError, TooLargeError
from streamcolor.graph import Graph, complete_graph, max_degree
from streamcolor.lab.distribution import (
    RandomGraphDistribution,
    enumerate_support,
    support_table,
)

HALF = Fraction(1, 2)


def triangle():
    return complete_graph(3)


def test_parameter_validation():
    with pytest.raises(OutOfRangeError):
        RandomGraphDistribution(triangle(), Fraction(0), Fraction(5))
    with pytest.raises(OutOfRangeError):
        RandomGraphDistribution(triangle(), Fraction(1), Fraction(5))
    with pytest.raises(OutOfRangeError):
        RandomGraphDistribution(triangle(), HALF, Fraction(1, 2))
    with pytest.raises(OutOfRangeError):
        RandomGraphDistribution(triangle(), HALF, Fraction(5), seed=-1)
    with pytest.raises(OutOfRangeError):
        RandomGraphDistribution(triangle(), HALF, Fraction(5), seed=1 << 64)


def test_degree_cutoff_is_strict():
    # kept graphs must have max degree strictly below 2*p*d
    dist = RandomGraphDistribution(triangle(), HALF, Fraction(2))
    assert dist.degree_cutoff == Fraction(2)
    assert dist.max_kept_degree == 1


def test_cutoff_rounds_down_at_integers():
    dist = RandomGraphDistribution(triangle(), Fraction(3, 4), Fraction(2))
    # 2pd = 3, strict, so degrees up to 2 survive
    assert dist.max_kept_degree == 2


def test_support_unrestricted_when_cutoff_clears_base_degree():
    dist = RandomGraphDistribution(triangle(), HALF, Fraction(10))
    table = support_table(dist)
    assert len(table) == 8
    for graph, prob in enumerate_support(dist):
        assert prob == Fraction(1, 8)


def test_support_probabilities_sum_to_one():
    base = complete_graph(4)
    for p, d in [(HALF, Fraction(2)), (Fraction(1, 3), Fraction(3)), (Fraction(9, 10), Fraction(1))]:
        dist = RandomGraphDistribution(base, p, d)
        total = sum(prob for _, prob in enumerate_support(dist))
        assert total == 1


def test_single_edge_base_distribution():
    base = Graph(2, [(1, 2)])
    dist = RandomGraphDistribution(base, Fraction(1, 3), Fraction(5))
    support = {g.m: prob for g, prob in enumerate_support(dist)}
    assert support == {0: Fraction(2, 3), 1: Fraction(1, 3)}


def test_conditioning_renormalizes():
    # cutoff 1 on a triangle keeps only matchings: empty or single edges
    dist = RandomGraphDistribution(triangle(), HALF, Fraction(1))
    assert dist.max_kept_degree == 0
    support = list(enumerate_support(dist))
    assert len(support) == 1
    graph, prob = support[0]
    assert graph.m == 0 and prob == 1


def test_conditioning_matchings_only():
    dist = RandomGraphDistribution(triangle(), Fraction(3, 4), Fraction(1))
    # 2pd = 3/2, kept degree <= 1: empty graph and the three single edges
    table = support_table(dist)
    assert len(table) == 4
    weights = dict()
    for g, prob in enumerate_support(dist):
        weights[g.m] = weights.get(g.m, Fraction(0)) + prob
    # raw weights 1/64 for empty, 3/64 each edge; kept mass 10/64
    assert weights == {0: Fraction(1, 10), 1: Fraction(9, 10)}


def test_empty_graph_always_in_support():
    for p in [Fraction(1, 10), HALF, Fraction(99, 100)]:
        dist = RandomGraphDistribution(complete_graph(4), p, Fraction(1))
        table = support_table(dist)
        assert table.probability(0) > 0


def test_mask_roundtrip():
    dist = RandomGraphDistribution(complete_graph(4), HALF, Fraction(10))
    table = support_table(dist)
    for mask in [0, 1, 5, (1 << 6) - 1]:
        g = table.graph(mask)
        assert table.mask_of(g) == mask


def test_probability_of_rejected_graph_is_zero():
    dist = RandomGraphDistribution(triangle(), Fraction(3, 4), Fraction(1))
    table = support_table(dist)
    assert table.probability(0b111) == 0


def test_sampler_determinism():
    base = complete_graph(6)
    dist = RandomGraphDistribution(base, HALF, Fraction(8), seed=42)
    a = dist.sample(3)
    b = dist.sample(3)
    assert a == b
    assert dist.sample(4) != a or dist.sample(5) != a  # indexes decorrelate


def test_sampler_seeds_decorrelate():
    base = complete_graph(6)
    d1 = RandomGraphDistribution(base, HALF, Fraction(8), seed=1)
    d2 = RandomGraphDistribution(base, HALF, Fraction(8), seed=2)
    draws1 = [d1.sample(i) for i in range(8)]
    draws2 = [d2.sample(i) for i in range(8)]
    assert draws1 != draws2


def test_samples_respect_cutoff():
    dist = RandomGraphDistribution(complete_graph(5), Fraction(2, 3), Fraction(2))
    for i in range(200):
        g = dist.sample(i)
        assert max_degree(g) <= dist.max_kept_degree


def test_sampler_matches_enumerated_distribution():
    # Monte Carlo against exact probabilities, 5 sigma plus a small floor
    dist = RandomGraphDistribution(triangle(), Fraction(3, 4), Fraction(1), seed=11)
    table = support_table(dist)
    trials = 4000
    counts = Counter(table.mask_of(dist.sample(i)) for i in range(trials))
    for mask in table.masks.tolist():
        exact = float(table.probability(mask))
        observed = counts[mask] / trials
        sigma = math.sqrt(exact * (1 - exact) / trials)
        assert abs(observed - exact) <= 5 * sigma + 0.01


def test_rejection_rate_small_under_hypotheses():
    # d >= 4 ln(2n) / p makes acceptance at least a half
    n = 8
    base = complete_graph(n)
    p = HALF
    d = Fraction(math.ceil(4 * math.log(2 * n) / p))
    dist = RandomGraphDistribution(base, p, d, seed=5)
    assert dist.hypotheses_ok()
    attempts = [dist.sample_with_attempts(i)[1] for i in range(300)]
    # geometric with success >= 1/2: average attempts comfortably below 2
    assert sum(attempts) / len(attempts) < 2.0


def test_hypotheses_flag_reports_failure():
    dist = RandomGraphDistribution(triangle(), Fraction(1, 100), Fraction(3))
    assert not dist.hypotheses_ok()


def test_rejection_overflow_raises():
    # cutoff 1 on K5 at p=99/100: nearly every draw is rejected
    dist = RandomGraphDistribution(complete_graph(5), Fraction(99, 100), Fraction(1))
    with pytest.raises(RejectionOverflowError):
        dist.sample_with_attempts(0, retry_cap=3)


def test_support_cap_enforced():
    base = complete_graph(8)  # 28 edges > default-sized cap below
    dist = RandomGraphDistribution(base, HALF, Fraction(100))
    with pytest.raises(TooLargeError):
        support_table(dist, cap=1 << 20)


def test_acceptance_probability_exact():
    dist = RandomGraphDistribution(triangle(), Fraction(3, 4), Fraction(1))
    table = support_table(dist)
    assert table.acceptance == Fraction(10, 64)
