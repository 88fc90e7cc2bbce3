"""Deterministic classical strategies for the three-party CCP and an exact bound oracle.

Alice sends one trit to Bob, Bob sends one trit to Charlie, and Charlie guesses
T. A strategy is three lookup tables; it is scored exactly over the 243
promise-satisfying inputs (x1 triples with sum divisible by 3, any x0 triple).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

N_PROMISE_INPUTS = 243
CLASSICAL_BOUND = Fraction(7, 9)


def _promise_inputs() -> np.ndarray:
    rows = [
        (a0, a1, b0, b1, c0, c1)
        for a0, a1, b0, b1, c0, c1 in itertools.product(range(3), repeat=6)
        if (a1 + b1 + c1) % 3 == 0
    ]
    return np.array(rows, dtype=np.int64)


_INPUTS = _promise_inputs()
A0, A1, B0, B1, C0, C1 = _INPUTS.T
# T = ((3 a0 + a1 + 3 b0 + b1 + 3 c0 + c1) mod 9) / 3
_TARGET = ((3 * (A0 + B0 + C0) + A1 + B1 + C1) % 9) // 3
_ALICE_IDX = 3 * A0 + A1
_BOB_BASE = 9 * B0 + 3 * B1
_CHARLIE_BASE = 9 * C0 + 3 * C1


@dataclass(frozen=True)
class ClassicalStrategy:
    """Lookup tables: ``alice_msg[3*a0 + a1]``, ``bob_msg[9*b0 + 3*b1 + received]``,
    ``charlie_guess[9*c0 + 3*c1 + received]``; all values in {0, 1, 2}."""

    alice_msg: tuple[int, ...]
    bob_msg: tuple[int, ...]
    charlie_guess: tuple[int, ...]

    def __post_init__(self):
        for name, table, size in (
            ("alice_msg", self.alice_msg, 9),
            ("bob_msg", self.bob_msg, 27),
            ("charlie_guess", self.charlie_guess, 27),
        ):
            table = tuple(int(v) for v in table)
            if len(table) != size or any(v not in (0, 1, 2) for v in table):
                raise ValueError(f"{name} must be {size} trits")
            object.__setattr__(self, name, table)

    @classmethod
    def from_functions(cls, alice, bob, charlie) -> ClassicalStrategy:
        """Tabulate ``alice(x0, x1)``, ``bob(x0, x1, received)`` and ``charlie(x0, x1, received)``."""
        return cls(
            tuple(alice(x0, x1) % 3 for x0 in range(3) for x1 in range(3)),
            tuple(bob(x0, x1, r) % 3 for x0 in range(3) for x1 in range(3) for r in range(3)),
            tuple(charlie(x0, x1, r) % 3 for x0 in range(3) for x1 in range(3) for r in range(3)),
        )


@dataclass(frozen=True)
class Success:
    """Exact success count over the promise inputs."""

    correct: int
    total: int = N_PROMISE_INPUTS

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.correct, self.total)

    def __float__(self) -> float:
        return self.correct / self.total

    def __str__(self) -> str:
        return f"{self.correct}/{self.total}"


def paper_optimal_strategy() -> ClassicalStrategy:
    return ClassicalStrategy.from_functions(
        lambda a0, a1: a0,
        lambda b0, b1, r: r + b0,
        lambda c0, c1, r: r + c0 + 1,
    )


def _guesses(alice, bob, charlie) -> np.ndarray:
    """Charlie's guesses for every promise input; tables may carry a leading batch axis."""
    msg_a = np.take(alice, _ALICE_IDX, axis=-1)
    msg_b = np.take_along_axis(bob, _BOB_BASE + msg_a, axis=-1)
    return np.take_along_axis(charlie, _CHARLIE_BASE + msg_b, axis=-1)


def evaluate_strategy(strategy: ClassicalStrategy) -> Success:
    guesses = _guesses(
        np.array(strategy.alice_msg),
        np.array(strategy.bob_msg),
        np.array(strategy.charlie_guess),
    )
    return Success(int((guesses == _TARGET).sum()))


def reduced_class_strategy(r: tuple[int, int, int], q: tuple[int, int, int]) -> ClassicalStrategy:
    """Strategy where each party adds ``r_x * x0 + q_x`` to the trit it received."""
    (ra, rb, rc), (qa, qb, qc) = r, q
    return ClassicalStrategy.from_functions(
        lambda a0, a1: ra * a0 + qa,
        lambda b0, b1, m: m + rb * b0 + qb,
        lambda c0, c1, m: m + rc * c0 + qc,
    )


def reduced_class() -> list[tuple[tuple, tuple, ClassicalStrategy]]:
    """All 8 x 27 = 216 strategies with r in {1, 2}^3 and offsets in {0, 1, 2}^3."""
    return [
        (r, q, reduced_class_strategy(r, q))
        for r in itertools.product((1, 2), repeat=3)
        for q in itertools.product(range(3), repeat=3)
    ]


def exhaustive_bound_reduced_class() -> tuple[Fraction, list[tuple[tuple, tuple]]]:
    """Best exact success over the reduced class, and the (r, q) pairs attaining it."""
    best = -1
    argmax: list = []
    for r, q, strategy in reduced_class():
        score = evaluate_strategy(strategy).correct
        if score > best:
            best, argmax = score, [(r, q)]
        elif score == best:
            argmax.append((r, q))
    return Fraction(best, N_PROMISE_INPUTS), argmax


def random_strategy_search(trials: int, rng: np.random.Generator, batch: int = 2048) -> Success:
    """Best score among ``trials`` uniformly random full-table strategies.

    Raises:
        AssertionError: if a sampled strategy beats 7/9.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    best = 0
    done = 0
    while done < trials:
        n = min(batch, trials - done)
        alice = rng.integers(0, 3, size=(n, 9))
        bob = rng.integers(0, 3, size=(n, 27))
        charlie = rng.integers(0, 3, size=(n, 27))
        guesses = _guesses(alice, bob, charlie)
        best = max(best, int((guesses == _TARGET).sum(axis=1).max()))
        done += n
    result = Success(best)
    if result.fraction > CLASSICAL_BOUND:
        raise AssertionError(f"sampled strategy scored {result}, above the 7/9 bound")
    return result
