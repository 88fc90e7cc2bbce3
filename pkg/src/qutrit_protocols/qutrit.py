"""Single-qutrit state vectors, diagonal phase gates and Fourier-basis measurement."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi
OMEGA = np.exp(2j * math.pi / 3)

# Rows are the Fourier basis vectors (1, w^k, w^-k)/sqrt(3), k = 0, 1, 2.
FOURIER_BASIS = np.array(
    [[1.0, OMEGA**k, OMEGA ** (-k)] for k in range(3)], dtype=complex
) / math.sqrt(3)

NORM_TOL = 1e-9


@dataclass(frozen=True)
class QutritState:
    """Three complex amplitudes indexed by the computational basis |0>, |1>, |2>."""

    amplitudes: tuple[complex, complex, complex]

    def __post_init__(self):
        if len(self.amplitudes) != 3:
            raise ValueError(f"a qutrit has 3 amplitudes, got {len(self.amplitudes)}")
        object.__setattr__(self, "amplitudes", tuple(complex(a) for a in self.amplitudes))

    @classmethod
    def from_phases(cls, phi1: float, phi2: float) -> QutritState:
        """Equal-weight state (1, e^{i phi1}, e^{i phi2})/sqrt(3)."""
        s = 1.0 / math.sqrt(3)
        return cls((s, s * np.exp(1j * phi1), s * np.exp(1j * phi2)))

    def as_array(self) -> np.ndarray:
        return np.array(self.amplitudes, dtype=complex)

    def norm(self) -> float:
        return float(np.linalg.norm(self.as_array()))


@dataclass(frozen=True)
class PhaseGate:
    """Diagonal unitary diag(e^{i p0}, e^{i p1}, e^{i p2}); phases in radians."""

    phases: tuple[float, float, float]

    def __post_init__(self):
        if len(self.phases) != 3:
            raise ValueError(f"a phase gate has 3 phases, got {len(self.phases)}")
        object.__setattr__(self, "phases", tuple(float(p) for p in self.phases))

    def __matmul__(self, other: PhaseGate) -> PhaseGate:
        return PhaseGate(tuple(a + b for a, b in zip(self.phases, other.phases)))

    def factors(self) -> np.ndarray:
        p = np.array(self.phases)
        return np.cos(p) + 1j * np.sin(p)


IDENTITY = PhaseGate((0.0, 0.0, 0.0))


@dataclass(frozen=True)
class FourierOutcome:
    index: int
    probabilities: tuple[float, float, float]


def prepare_psi() -> QutritState:
    """The uniform superposition (|0> + |1> + |2>)/sqrt(3)."""
    s = 1.0 / math.sqrt(3)
    return QutritState((s, s, s))


def gate_u(exponent_ninths: int) -> PhaseGate:
    """U raised to ``exponent_ninths / 3``.

    The exponent is counted in ninths of a turn so that integer powers
    (``3 * k``) and the third-integer powers used by the CCP encoding share a
    single exact integer representation.
    """
    angle = TWO_PI * exponent_ninths / 9
    return PhaseGate((0.0, angle, -angle))


def gate_v(exponent: int) -> PhaseGate:
    if exponent < 0:
        raise ValueError(f"V exponent must be non-negative, got {exponent}")
    angle = TWO_PI * exponent / 3
    return PhaseGate((0.0, angle, angle))


def apply(gate: PhaseGate, state: QutritState) -> QutritState:
    return QutritState(tuple(gate.factors() * state.as_array()))


def fourier_probabilities(state: QutritState) -> tuple[float, float, float]:
    """Outcome probabilities of a measurement in the qutrit Fourier basis.

    Raises:
        ValueError: if the state norm deviates from 1 by more than 1e-9.
    """
    vec = state.as_array()
    norm = np.linalg.norm(vec)
    if abs(norm - 1.0) > NORM_TOL:
        raise ValueError(f"state is not normalized (norm={norm!r})")
    amps = FOURIER_BASIS.conj() @ vec
    probs = np.abs(amps) ** 2
    probs = np.clip(probs, 0.0, 1.0)
    return tuple(float(p) for p in probs)


def sample_outcome(probabilities, rng: np.random.Generator) -> int:
    """Draw a Fourier-basis index from ``probabilities`` using ``rng``."""
    p = np.asarray(probabilities, dtype=float)
    cdf = np.cumsum(p)
    u = rng.random() * cdf[-1]
    # strict comparison keeps zero-probability outcomes unreachable
    return int(min(np.searchsorted(cdf, u, side="right"), 2))


def measure(state: QutritState, rng: np.random.Generator) -> FourierOutcome:
    probs = fourier_probabilities(state)
    return FourierOutcome(sample_outcome(probs, rng), probs)
