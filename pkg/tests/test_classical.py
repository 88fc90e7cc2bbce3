import itertools
from fractions import Fraction

import numpy as np
import pytest

from qutrit_protocols.classical import (
    CLASSICAL_BOUND,
    ClassicalStrategy,
    evaluate_strategy,
    exhaustive_bound_reduced_class,
    paper_optimal_strategy,
    random_strategy_search,
    reduced_class,
)
from qutrit_protocols.protocols import ccp_promise_inputs, ccp_round, ccp_task_value


def play(strategy, a, b, c):
    """Run one game directly from the lookup tables (independent of the vectorised scorer)."""
    msg_a = strategy.alice_msg[3 * a[0] + a[1]]
    msg_b = strategy.bob_msg[9 * b[0] + 3 * b[1] + msg_a]
    return strategy.charlie_guess[9 * c[0] + 3 * c[1] + msg_b]


def brute_score(strategy):
    correct = 0
    for sa, sb, sc in ccp_promise_inputs():
        a, b, c = divmod(sa, 3), divmod(sb, 3), divmod(sc, 3)
        correct += play(strategy, a, b, c) == ccp_task_value(sa, sb, sc)
    return correct


def test_paper_strategy_cases():
    s = paper_optimal_strategy()
    for a0, b0, c0 in itertools.product(range(3), repeat=3):
        t_s1 = (a0 + b0 + c0 + 1) % 3
        assert play(s, (a0, 0), (b0, 1), (c0, 2)) == t_s1
        assert ccp_task_value(3 * a0, 3 * b0 + 1, 3 * c0 + 2) == t_s1
        # s = 0: guess overshoots by one
        assert play(s, (a0, 0), (b0, 0), (c0, 0)) == (ccp_task_value(3 * a0, 3 * b0, 3 * c0) + 1) % 3


def test_paper_strategy_score():
    score = evaluate_strategy(paper_optimal_strategy())
    assert score.correct == 189 and score.total == 243
    assert score.fraction == Fraction(7, 9)
    assert brute_score(paper_optimal_strategy()) == 189


def test_constant_guess():
    s = ClassicalStrategy((0,) * 9, (0,) * 27, (0,) * 27)
    assert evaluate_strategy(s).correct == 81 == brute_score(s)


def test_ignoring_c0():
    s = ClassicalStrategy.from_functions(lambda a0, a1: a0, lambda b0, b1, r: r + b0, lambda c0, c1, r: r + 1)
    score = evaluate_strategy(s)
    assert score.correct == brute_score(s)
    assert score.fraction == Fraction(1, 3)


def test_vectorised_matches_brute_force():
    rng = np.random.default_rng(4)
    for _ in range(25):
        s = ClassicalStrategy(rng.integers(0, 3, 9), rng.integers(0, 3, 27), rng.integers(0, 3, 27))
        assert evaluate_strategy(s).correct == brute_score(s)


def test_strategy_validation():
    with pytest.raises(ValueError):
        ClassicalStrategy((0,) * 8, (0,) * 27, (0,) * 27)
    with pytest.raises(ValueError):
        ClassicalStrategy((3,) * 9, (0,) * 27, (0,) * 27)


def test_reduced_class_size():
    assert len(reduced_class()) == 216


def test_reduced_class_bound():
    bound, argmax = exhaustive_bound_reduced_class()
    assert bound == CLASSICAL_BOUND
    assert all(r == (1, 1, 1) and sum(q) % 3 == 1 for r, q in argmax)
    assert ((1, 1, 1), (0, 0, 1)) in argmax
    for _, _, s in reduced_class():
        assert evaluate_strategy(s).fraction <= CLASSICAL_BOUND


def test_random_search():
    best = random_strategy_search(10_000, np.random.default_rng(0))
    assert best.fraction <= CLASSICAL_BOUND
    assert best.total == 243
    with pytest.raises(ValueError):
        random_strategy_search(0, np.random.default_rng(0))


def test_quantum_beats_classical():
    quantum = sum(ccp_round(*s).m == ccp_task_value(*s) for s in ccp_promise_inputs())
    assert quantum == 243 > evaluate_strategy(paper_optimal_strategy()).correct
