import itertools
import math

import numpy as np
import pytest

from tspgcn.core import Tour, tour_length, tour_to_adjacency
from tspgcn.decode import (
    BeamState,
    beam_decode,
    beam_decode_shortest,
    beam_search,
    decode_batch,
    greedy_decode,
    log_probs,
    symmetrize,
    tour_probability,
)
from tspgcn.errors import InvalidArgumentError
from tspgcn.oracle import solve_brute_force


def _argmax_tour(heatmap, start=0):
    n = heatmap.shape[0]
    others = [v for v in range(n) if v != start]
    best, best_score = None, -math.inf
    for perm in itertools.permutations(others):
        tour = Tour((start,) + perm)
        score = tour_probability(heatmap, tour)
        if score > best_score:
            best, best_score = tour, score
    return best, best_score


class TestTourProbability:
    def test_product_of_edges(self):
        probs = np.zeros((3, 3))
        probs[0, 1], probs[1, 2], probs[2, 0] = 0.9, 0.8, 0.7
        assert tour_probability(probs, Tour((0, 1, 2))) == pytest.approx(math.log(0.504))

    def test_certain_tour(self):
        probs = tour_to_adjacency(Tour((0, 1, 2, 3))).entries.astype(float)
        assert tour_probability(probs, Tour((0, 1, 2, 3))) == 0.0

    def test_zero_edge_is_minus_infinity(self):
        probs = tour_to_adjacency(Tour((0, 1, 2, 3))).entries.astype(float)
        assert tour_probability(probs, Tour((0, 2, 1, 3))) == -math.inf

    def test_never_positive(self, random_heatmap):
        assert tour_probability(random_heatmap(6, 0), Tour((3, 1, 0, 5, 2, 4))) <= 0.0

    def test_log_probs_clamped(self):
        assert np.isfinite(log_probs(np.zeros((3, 3)))).all()


class TestGreedy:
    def test_forced_after_first_pick(self):
        probs = np.zeros((3, 3))
        probs[0, 1], probs[0, 2] = 0.9, 0.1
        assert greedy_decode(probs).order == (0, 1, 2)

    def test_recovers_ground_truth(self):
        truth = Tour((0, 4, 2, 6, 1, 5, 3))
        probs = tour_to_adjacency(truth).entries.astype(float)
        decoded = greedy_decode(probs)
        assert tour_to_adjacency(decoded).entries.tolist() == tour_to_adjacency(truth).entries.tolist()

    def test_always_valid(self, random_heatmap):
        for seed in range(100):
            assert sorted(greedy_decode(random_heatmap(7, seed)).order) == list(range(7))

    def test_adversarial_zeros(self):
        assert sorted(greedy_decode(np.zeros((5, 5))).order) == list(range(5))

    def test_bad_start(self, random_heatmap):
        with pytest.raises(InvalidArgumentError):
            greedy_decode(random_heatmap(4, 0), start=4)


class TestBeam:
    def test_width_one_is_greedy(self, random_heatmap):
        rng = np.random.default_rng(0)
        for seed in range(100):
            heatmap = random_heatmap(int(rng.integers(3, 13)), seed)
            assert beam_decode(heatmap, 1) == greedy_decode(heatmap)

    def test_exhaustive_width_is_argmax(self, random_heatmap):
        rng = np.random.default_rng(1)
        for seed in range(100):
            n = int(rng.integers(3, 8))
            heatmap = random_heatmap(n, 1000 + seed)
            expected, expected_score = _argmax_tour(heatmap)
            got = beam_decode(heatmap, math.factorial(n - 1))
            assert tour_probability(heatmap, got) == pytest.approx(expected_score, abs=1e-12)
            assert got == expected

    def test_ground_truth_at_any_width(self):
        truth = Tour((0, 3, 1, 4, 2, 5))
        probs = tour_to_adjacency(truth).entries.astype(float)
        for width in (1, 3, 16):
            assert tour_to_adjacency(beam_decode(probs, width)).entries.tolist() == tour_to_adjacency(truth).entries.tolist()

    def test_beam_state_invariants(self, random_heatmap):
        logp = log_probs(random_heatmap(6, 3))
        state = BeamState.initial(6, 0)
        previous_best = 0.0
        for _ in range(5):
            state = state.expand(logp, 4)
            assert len({row.size for row in state.orders}) == 1
            assert all(len(set(row.tolist())) == row.size for row in state.orders)
            assert state.log_probs.max() <= previous_best + 1e-12
            previous_best = state.log_probs.max()
        assert state.width == 4

    def test_equal_scores_prefer_lower_node(self):
        probs = np.zeros((4, 4))
        probs[0, 1], probs[0, 2], probs[0, 3] = 0.5, 0.25, 0.1
        probs[1, 2], probs[1, 3] = 0.25, 0.01
        probs[2, 1], probs[2, 3] = 0.01, 0.5
        logp = log_probs(probs)
        state = BeamState.initial(4, 0).expand(logp, 2)
        assert state.orders.tolist() == [[0, 1], [0, 2]]
        # [0, 1, 2] and [0, 2, 3] tie exactly on log .5 + log .25
        best = state.expand(logp, 1)
        assert best.orders.tolist() == [[0, 1, 2]]
        assert state.expand(logp, 2).orders.tolist() == [[0, 1, 2], [0, 2, 3]]

    def test_closing_edge_counted(self, random_heatmap):
        heatmap = random_heatmap(5, 9)
        state, closing = beam_search(heatmap, 3)
        for order, score in zip(state.orders, closing):
            assert score == pytest.approx(tour_probability(heatmap, Tour(order)))

    def test_bad_width(self, random_heatmap):
        with pytest.raises(InvalidArgumentError):
            beam_decode(random_heatmap(4, 0), 0)


class TestBeamShortest:
    def test_width_one_is_greedy(self, random_heatmap, make_instances):
        for seed, instance in enumerate(make_instances(9, 20, seed=4)):
            heatmap = random_heatmap(9, seed)
            assert beam_decode_shortest(heatmap, instance, 1) == greedy_decode(heatmap)

    def test_not_longer_than_most_probable(self, random_heatmap, make_instances):
        for seed, instance in enumerate(make_instances(8, 20, seed=5)):
            heatmap = random_heatmap(8, seed)
            shortest = tour_length(instance, beam_decode_shortest(heatmap, instance, 8))
            assert shortest <= tour_length(instance, beam_decode(heatmap, 8)) + 1e-12

    def test_bounded_by_optimum(self, random_heatmap, make_instances):
        for seed, instance in enumerate(make_instances(8, 100, seed=6)):
            heatmap = random_heatmap(8, seed)
            optimum = tour_length(instance, solve_brute_force(instance))
            assert tour_length(instance, beam_decode_shortest(heatmap, instance, 64)) >= optimum - 1e-12


class TestBatch:
    def test_order_and_thread_independence(self, random_heatmap, make_instances):
        heatmaps = np.stack([random_heatmap(8, seed) for seed in range(12)])
        instances = make_instances(8, 12)
        for decoder in ("greedy", "beam", "beam-shortest"):
            single = decode_batch(heatmaps, decoder, 4, instances=instances, threads=1)
            pooled = decode_batch(heatmaps, decoder, 4, instances=instances, threads=4)
            assert single == pooled
        assert decode_batch(heatmaps, "greedy")[5] == greedy_decode(heatmaps[5])

    def test_unknown_decoder(self, random_heatmap):
        with pytest.raises(InvalidArgumentError):
            decode_batch(np.stack([random_heatmap(4, 0)]), "sampling")

    def test_shortest_needs_instances(self, random_heatmap):
        with pytest.raises(InvalidArgumentError):
            decode_batch(np.stack([random_heatmap(4, 0)]), "beam-shortest", 2)

    def test_symmetrize(self, random_heatmap):
        probs = random_heatmap(5, 2)
        sym = symmetrize(probs).probs
        assert np.allclose(sym, sym.T)
        assert sym[0, 1] == pytest.approx((probs[0, 1] + probs[1, 0]) / 2)
