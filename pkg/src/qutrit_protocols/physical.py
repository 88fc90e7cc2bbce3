"""Monte Carlo model of the three-arm fiber interferometer and its detectors.

Each laser trigger goes through: Gaussian drift of the two relative arm
phases, a signal click (probability ``click_prob``) in a detector drawn from
the interference probabilities, and independent dark counts per detector.
Only triggers with exactly one clicking detector count as detections.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np
from scipy.optimize import brentq

from . import protocols
from .qutrit import TWO_PI

PAPER_DARK_PROB = (5.9e-5, 2.8e-5, 20.5e-5)
PAPER_CLICK_PROB = 4.0e-3
PAPER_TRIGGERS = 100_000
DEFAULT_DRIFT_TARGET = 0.02
# calibrate_drift_sigma(DEFAULT_DRIFT_TARGET); regression-tested
DEFAULT_DRIFT_SIGMA = 0.2139530267

_SHIFT = TWO_PI / 3
_GH_NODES, _GH_WEIGHTS = np.polynomial.hermite_e.hermegauss(80)
_GH_WEIGHTS = _GH_WEIGHTS / _GH_WEIGHTS.sum()


class InterferometerPhases(NamedTuple):
    """Phases of arms 2 and 3 relative to the reference arm (radians)."""

    phi2: float
    phi3: float

    def reduced(self) -> InterferometerPhases:
        return InterferometerPhases(self.phi2 % TWO_PI, self.phi3 % TWO_PI)


@dataclass(frozen=True)
class NoiseConfig:
    dark_prob: tuple[float, float, float] = PAPER_DARK_PROB
    click_prob: float = PAPER_CLICK_PROB
    drift_sigma: float = DEFAULT_DRIFT_SIGMA
    triggers: int = PAPER_TRIGGERS
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "dark_prob", tuple(float(d) for d in self.dark_prob))
        if len(self.dark_prob) != 3:
            raise ValueError("dark_prob needs one entry per detector")
        for p in (*self.dark_prob, self.click_prob):
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"probability {p} outside [0, 1]")
        if self.drift_sigma < 0 or not math.isfinite(self.drift_sigma):
            raise ValueError(f"drift_sigma must be finite and >= 0, got {self.drift_sigma}")
        if self.triggers < 1:
            raise ValueError(f"triggers must be positive, got {self.triggers}")

    @classmethod
    def ideal(cls, **overrides) -> NoiseConfig:
        """No dark counts, no drift, every trigger detected."""
        kw = dict(dark_prob=(0.0, 0.0, 0.0), click_prob=1.0, drift_sigma=0.0)
        kw.update(overrides)
        return cls(**kw)


@dataclass(frozen=True)
class SettingCounts:
    counts: tuple[int, int, int]
    triggers_run: int

    @property
    def total(self) -> int:
        return sum(self.counts)


@dataclass(frozen=True)
class Setting:
    """A protocol setting: ``inputs`` are three (x0, x1) pairs, or (sa, sb, sc) for ccp."""

    protocol: str
    inputs: tuple = field()

    def __post_init__(self):
        if self.protocol not in ("ss", "dba", "ccp"):
            raise ValueError(f"unknown protocol {self.protocol!r}")
        if self.protocol == "ccp":
            inputs = tuple(int(s) for s in self.inputs)
            protocols.ccp_task_value(*inputs)
        else:
            inputs = tuple(protocols.TritPair(*map(int, p)) for p in self.inputs)
            if self.protocol == "dba":
                protocols.dba_round(*inputs)
            else:
                protocols.secret_sharing_round(*inputs)
        if len(inputs) != 3:
            raise ValueError("a setting names exactly three parties")
        object.__setattr__(self, "inputs", inputs)

    @property
    def expected(self) -> int | None:
        """Ideal outcome, or ``None`` when the round fails the sift."""
        if self.protocol == "ccp":
            return protocols.ccp_task_value(*self.inputs)
        if sum(p.x1 for p in self.inputs) % 3:
            return None
        return sum(p.x0 for p in self.inputs) % 3

    def flat(self) -> tuple[int, ...]:
        if self.protocol == "ccp":
            return self.inputs
        return tuple(v for pair in self.inputs for v in pair)


def detector_probabilities(phi2, phi3):
    """Click probabilities of D0, D1, D2 for relative arm phases ``phi2``, ``phi3``.

    Accepts scalars or equally shaped arrays; returns a tuple of three floats
    or three arrays.
    """
    phi2 = np.asarray(phi2, dtype=float)
    phi3 = np.asarray(phi3, dtype=float)
    diff = phi2 - phi3
    p0 = (3 + 2 * (np.cos(phi2) + np.cos(phi3) + np.cos(diff))) / 9
    p1 = (3 + 2 * (np.cos(phi2 - _SHIFT) + np.cos(phi3 + _SHIFT) + np.cos(diff + _SHIFT))) / 9
    p2 = (3 + 2 * (np.cos(phi2 + _SHIFT) + np.cos(phi3 - _SHIFT) + np.cos(diff - _SHIFT))) / 9
    out = tuple(np.clip(p, 0.0, 1.0) for p in (p0, p1, p2))
    if out[0].ndim == 0:
        return tuple(float(p) for p in out)
    return out


def protocol_phases(setting: Setting) -> InterferometerPhases:
    """Accumulated phases on |1> and |2> relative to |0> after all three parties act."""
    if setting.protocol == "ccp":
        gates = [protocols.ccp_gate(s) for s in setting.inputs]
    else:
        gates = [protocols.party_gate(p) for p in setting.inputs]
    total = gates[0] @ gates[1] @ gates[2]
    p0, p1, p2 = total.phases
    return InterferometerPhases(p1 - p0, p2 - p0)


def _as_phases(target) -> InterferometerPhases:
    if isinstance(target, Setting):
        return protocol_phases(target)
    return InterferometerPhases(*target)


def simulate_triggers(phases, noise: NoiseConfig, rng: np.random.Generator, n: int) -> np.ndarray:
    """Detector index per trigger for ``n`` triggers; -1 marks no (or a discarded) detection."""
    phi2, phi3 = _as_phases(phases)
    drift = rng.normal(0.0, 1.0, size=(2, n)) * noise.drift_sigma
    p0, p1, _ = detector_probabilities(phi2 + drift[0], phi3 + drift[1])
    signal = rng.random(n) < noise.click_prob
    u = rng.random(n)
    which = (u >= p0).astype(np.int64) + (u >= p0 + p1)
    clicks = rng.random((n, 3)) < np.asarray(noise.dark_prob)
    rows = np.flatnonzero(signal)
    clicks[rows, which[rows]] = True
    n_clicks = clicks.sum(axis=1)
    return np.where(n_clicks == 1, clicks.argmax(axis=1), -1)


def simulate_trigger(phases, noise: NoiseConfig, rng: np.random.Generator) -> int | None:
    out = int(simulate_triggers(phases, noise, rng, 1)[0])
    return None if out < 0 else out


def run_setting(setting, noise: NoiseConfig, rng: np.random.Generator | None = None) -> SettingCounts:
    """Click counts per detector over ``noise.triggers`` triggers.

    Without an explicit ``rng`` the stream is seeded from ``noise.seed``.
    """
    if rng is None:
        rng = np.random.default_rng(noise.seed)
    hits = simulate_triggers(setting, noise, rng, noise.triggers)
    counts = np.bincount(hits[hits >= 0], minlength=3)
    return SettingCounts(tuple(int(c) for c in counts), noise.triggers)


def setting_seed(master_seed: int, index: int) -> int:
    """Seed of the ``index``-th setting of a campaign."""
    return master_seed + index


def run_campaign(settings: Sequence[Setting], noise: NoiseConfig, master_seed: int) -> list[SettingCounts]:
    return [
        run_setting(s, noise, np.random.default_rng(setting_seed(master_seed, i)))
        for i, s in enumerate(settings)
    ]


def drift_averaged_probabilities(phases, sigma: float) -> np.ndarray:
    """Detector probabilities averaged over Gaussian drift of both arm phases (quadrature)."""
    phi2, phi3 = _as_phases(phases)
    if sigma == 0:
        return np.array(detector_probabilities(phi2, phi3))
    z2, z3 = np.meshgrid(_GH_NODES * sigma, _GH_NODES * sigma, indexing="ij")
    w = np.outer(_GH_WEIGHTS, _GH_WEIGHTS)
    probs = detector_probabilities(phi2 + z2, phi3 + z3)
    return np.array([(p * w).sum() for p in probs])


def detection_distribution(phases, noise: NoiseConfig) -> np.ndarray:
    """Per-trigger probability that detector j is the single click, j = 0, 1, 2."""
    p = drift_averaged_probabilities(phases, noise.drift_sigma)
    d = np.asarray(noise.dark_prob)
    c = noise.click_prob
    quiet = np.prod(1 - d)
    out = np.empty(3)
    for j in range(3):
        others_quiet = quiet / (1 - d[j]) if d[j] < 1 else np.prod(np.delete(1 - d, j))
        out[j] = others_quiet * (c * p[j] + (1 - c) * d[j])
    return out


def expected_qter(setting: Setting, noise: NoiseConfig) -> float:
    """Expected wrong-detector fraction among detections for a valid setting."""
    dist = detection_distribution(setting, noise)
    return 1.0 - dist[setting.expected] / dist.sum()


def _calibration_settings() -> list[Setting]:
    from .paper_data import SECRET_SHARING_TABLE

    return [Setting("ss", row[:3]) for row in SECRET_SHARING_TABLE if row[3] is not None]


def drift_error(sigma: float) -> float:
    """Mean wrong-detector probability over the nine valid secret-sharing settings, drift only."""
    errs = []
    for s in _calibration_settings():
        p = drift_averaged_probabilities(s, sigma)
        errs.append(1.0 - p[s.expected])
    return float(np.mean(errs))


def calibrate_drift_sigma(target: float) -> float:
    """Drift spread (radians) whose expected wrong-detector probability equals ``target``.

    Raises:
        ValueError: if ``target`` lies outside [0, 0.5).
    """
    if not 0.0 <= target < 0.5:
        raise ValueError(f"drift error target {target} unattainable; must lie in [0, 0.5)")
    if target == 0.0:
        return 0.0
    return float(brentq(lambda s: drift_error(s) - target, 0.0, 3.0, xtol=1e-12))
