"""Ideal round engines for secret sharing, DBA data distribution and the CCP.

Every party acts on the same travelling qutrit with a diagonal phase gate, and
Charlie finishes with a Fourier-basis measurement. Because all gates commute,
a round is fully described by the product of the three parties' gates.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from .qutrit import (
    TWO_PI,
    PhaseGate,
    apply,
    fourier_probabilities,
    gate_u,
    gate_v,
    prepare_psi,
    sample_outcome,
)

PARTIES = ("alice", "bob", "charlie")
DBA_CORRELATED_TRIPLES = frozenset({(0, 0, 0), (1, 1, 1), (2, 1, 0), (2, 0, 1)})
CONVENTIONS = ("main-text", "table-s1")
DETERMINISTIC_TOL = 1e-12


class TritPair(NamedTuple):
    x0: int
    x1: int


@dataclass(frozen=True)
class RoundRecord:
    """One protocol round.

    ``inputs`` holds three ``TritPair`` for secret sharing / DBA and the three
    integers ``(sa, sb, sc)`` for the CCP. ``m`` is ``None`` when the outcome
    is random and no RNG was supplied.
    """

    protocol: str
    inputs: tuple
    probabilities: tuple[float, float, float]
    m: int | None
    valid: bool
    expected: int | None = None

    @property
    def x0_triple(self) -> tuple[int, int, int]:
        return tuple(p.x0 for p in self.inputs)


@dataclass(frozen=True)
class PrivacyFold:
    party: str
    trit: int
    rounds_used: int


@dataclass
class Verification:
    """Outcome of an exhaustive ideal-case sweep."""

    protocol: str
    cases: int
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures


def _as_pair(value, *, bit_x0: bool = False, who: str = "") -> TritPair:
    pair = TritPair(*value)
    hi = 2 if bit_x0 else 3
    if not (0 <= pair.x0 < hi and 0 <= pair.x1 < 3):
        kind = "bit" if bit_x0 else "trit"
        raise ValueError(f"{who or 'input'} {tuple(pair)} out of range (x0 must be a {kind})")
    return pair


def party_gate(pair: TritPair, convention: str = "main-text") -> PhaseGate:
    """U^{x0} V^{x1}, or U^{x1} V^{x0} under the ``table-s1`` ordering."""
    if convention == "main-text":
        return gate_u(3 * pair.x0) @ gate_v(pair.x1)
    if convention == "table-s1":
        return gate_u(3 * pair.x1) @ gate_v(pair.x0)
    raise ValueError(f"unknown convention {convention!r}")


def _combined_gate(pairs: Sequence[TritPair]) -> PhaseGate:
    gate = PhaseGate((0.0, 0.0, 0.0))
    for pair in pairs:
        gate = gate @ party_gate(pair)
    return gate


def _deterministic_index(probs) -> int | None:
    for k, p in enumerate(probs):
        if abs(p - 1.0) <= DETERMINISTIC_TOL:
            return k
    return None


def _outcome(probs, rng: np.random.Generator | None) -> int | None:
    if rng is not None:
        return sample_outcome(probs, rng)
    return _deterministic_index(probs)


def secret_sharing_round(alice, bob, charlie, rng: np.random.Generator | None = None) -> RoundRecord:
    """Run one ideal secret-sharing round.

    The round is valid when ``a1 + b1 + c1 = 0 (mod 3)``; its outcome is then
    ``a0 + b0 + c0 (mod 3)`` with certainty. Invalid rounds still produce a
    (uniformly random) outcome when ``rng`` is given.
    """
    pairs = tuple(_as_pair(p, who=w) for p, w in zip((alice, bob, charlie), PARTIES))
    probs = fourier_probabilities(apply(_combined_gate(pairs), prepare_psi()))
    valid = sum(p.x1 for p in pairs) % 3 == 0
    expected = sum(p.x0 for p in pairs) % 3 if valid else None
    return RoundRecord("ss", pairs, probs, _outcome(probs, rng), valid, expected)


def reconstruction_candidates(m: int, known: Mapping[str, int], target: str) -> set[int]:
    """Values of ``target``'s x0 consistent with ``m`` and the ``known`` shares."""
    unknown = [p for p in PARTIES if p not in known]
    if target not in unknown:
        raise ValueError(f"{target!r} is already among the known shares")
    found = set()
    for values in itertools.product(range(3), repeat=len(unknown)):
        assignment = dict(known, **dict(zip(unknown, values)))
        if sum(assignment.values()) % 3 == m % 3:
            found.add(assignment[target])
    return found


def sift_and_extract_secret(record: RoundRecord, known: Mapping[str, int]) -> int:
    """Recover the withheld party's x0 from two collaborators' x0 values and m.

    Raises:
        ValueError: if the round was sifted out, has no outcome, or ``known``
            does not name exactly two parties.
    """
    if not record.valid:
        raise ValueError("round failed the sift and carries no secret")
    if record.m is None:
        raise ValueError("round has no measured outcome")
    if len(known) != 2 or not set(known) <= set(PARTIES):
        raise ValueError(f"need the x0 values of exactly two parties, got {sorted(known)}")
    return (record.m - sum(known.values())) % 3


def qter_from_counts(counts: Sequence[int], expected: int) -> float:
    total = sum(counts)
    if total == 0:
        raise ValueError("no outcomes recorded")
    return (total - counts[expected]) / total


def qter(records: Iterable[RoundRecord]) -> float:
    """Fraction of valid rounds whose outcome differs from a0 + b0 + c0 (mod 3)."""
    records = list(records)
    if not records:
        raise ValueError("qter needs at least one round")
    wrong = 0
    for rec in records:
        if not rec.valid or rec.m is None:
            raise ValueError("qter is defined over valid, measured rounds only")
        wrong += rec.m != rec.expected
    return wrong / len(records)


def dba_round(alice, bob, charlie, rng: np.random.Generator | None = None) -> RoundRecord:
    """DBA data distribution round: b0 and c0 are bits.

    The round is kept only when the outcome is 0 and the x1 values pass the sift.
    """
    pairs = (
        _as_pair(alice, who="alice"),
        _as_pair(bob, bit_x0=True, who="bob"),
        _as_pair(charlie, bit_x0=True, who="charlie"),
    )
    probs = fourier_probabilities(apply(_combined_gate(pairs), prepare_psi()))
    m = _outcome(probs, rng)
    sifted = sum(p.x1 for p in pairs) % 3 == 0
    expected = sum(p.x0 for p in pairs) % 3 if sifted else None
    return RoundRecord("dba", pairs, probs, m, sifted and m == 0, expected)


def dba_correlation_check(triples: Iterable[Sequence[int]]) -> bool:
    return all(tuple(t) in DBA_CORRELATED_TRIPLES for t in triples)


def _check_ccp(sa: int, sb: int, sc: int) -> None:
    for name, s in zip(("sa", "sb", "sc"), (sa, sb, sc)):
        if not 0 <= s <= 8:
            raise ValueError(f"{name}={s} outside 0..8")
    if (sa + sb + sc) % 3:
        raise ValueError(f"promise violated: {sa}+{sb}+{sc} is not divisible by 3")


def ccp_task_value(sa: int, sb: int, sc: int) -> int:
    """T = ((sa + sb + sc) mod 9) / 3 under the promise sa + sb + sc = 0 (mod 3)."""
    _check_ccp(sa, sb, sc)
    return ((sa + sb + sc) % 9) // 3


def ccp_gate(s: int, convention: str = "main-text") -> PhaseGate:
    """Gate applied by one CCP party holding ``s``.

    ``main-text`` is U^{s/3}; ``table-s2`` is the (0, 2 pi s/9, 4 pi s/9)
    setting used on the bench. They differ by 2 pi s/3 on |2>, which sums
    to a multiple of 2 pi whenever the promise holds.
    """
    if convention == "main-text":
        return gate_u(s)
    if convention == "table-s2":
        return PhaseGate((0.0, TWO_PI * s / 9, 2 * TWO_PI * s / 9))
    raise ValueError(f"unknown CCP convention {convention!r}")


def ccp_round(sa: int, sb: int, sc: int, rng: np.random.Generator | None = None,
              convention: str = "main-text") -> RoundRecord:
    t = ccp_task_value(sa, sb, sc)
    gate = ccp_gate(sa, convention) @ ccp_gate(sb, convention) @ ccp_gate(sc, convention)
    probs = fourier_probabilities(apply(gate, prepare_psi()))
    return RoundRecord("ccp", (sa, sb, sc), probs, _outcome(probs, rng), True, t)


def privacy_fold(rounds: Sequence[RoundRecord], party: str) -> PrivacyFold:
    """Fold a party's x0 values from L valid rounds into one trit.

    Alice additionally subtracts each round's outcome, so the three folded
    trits sum to 0 (mod 3).
    """
    if party not in PARTIES:
        raise ValueError(f"unknown party {party!r}")
    if not rounds:
        raise ValueError("privacy_fold needs at least one round")
    idx = PARTIES.index(party)
    total = 0
    for rec in rounds:
        if not rec.valid or rec.m is None:
            raise ValueError("privacy_fold accepts valid, measured rounds only")
        total += rec.inputs[idx].x0
        if party == "alice":
            total -= rec.m
    return PrivacyFold(party, total % 3, len(rounds))


def required_rounds(p_cheat: float, p_bar: float) -> int:
    """Smallest L with p_cheat**L <= p_bar, i.e. ceil(log p_bar / log p_cheat)."""
    if not (0 < p_cheat < 1 and 0 < p_bar < 1):
        raise ValueError("p_cheat and p_bar must lie strictly between 0 and 1")
    ratio = math.log(p_bar) / math.log(p_cheat)
    return max(1, math.ceil(ratio - 1e-12))


def _reduce_angle(a: float) -> float:
    a = a % TWO_PI
    if math.isclose(a, TWO_PI, abs_tol=1e-9) or math.isclose(a, 0.0, abs_tol=1e-9):
        return 0.0
    return a


def _party_angles(gate: PhaseGate, party: str) -> tuple[float, float, float]:
    phases = gate.phases
    if party == "distributor":
        # global phase chosen to zero the |2> entry
        phases = tuple(p - phases[2] for p in phases)
    elif party != "relay":
        raise ValueError(f"party must be 'distributor' or 'relay', got {party!r}")
    return tuple(_reduce_angle(p) for p in phases)


def encoding_table(protocol: str, party: str, convention: str = "main-text") -> dict:
    """Phase shifts (radians, in [0, 2 pi)) on |0>, |1>, |2> per setting.

    Secret sharing / DBA settings are keyed by ``(x0, x1)``; the ``table-s1``
    convention swaps the roles of x0 and x1. CCP settings are keyed by S and
    always use the bench convention, independent of ``convention``.
    """
    if protocol in ("ss", "dba"):
        return {
            (x0, x1): _party_angles(party_gate(TritPair(x0, x1), convention), party)
            for x0 in range(3)
            for x1 in range(3)
        }
    if protocol == "ccp":
        if convention not in CONVENTIONS:
            raise ValueError(f"unknown convention {convention!r}")
        return {s: _party_angles(ccp_gate(s, "table-s2"), party) for s in range(9)}
    raise ValueError(f"unknown protocol {protocol!r}")


def ccp_promise_inputs() -> list[tuple[int, int, int]]:
    return [t for t in itertools.product(range(9), repeat=3) if sum(t) % 3 == 0]


def verify_secret_sharing() -> Verification:
    result = Verification("ss", 0)
    valid = 0
    for a, b, c in itertools.product(itertools.product(range(3), repeat=2), repeat=3):
        rec = secret_sharing_round(a, b, c)
        result.cases += 1
        if rec.valid:
            valid += 1
            target = [0.0, 0.0, 0.0]
            target[rec.expected] = 1.0
        else:
            target = [1 / 3] * 3
        if max(abs(p - q) for p, q in zip(rec.probabilities, target)) > DETERMINISTIC_TOL:
            result.failures.append((a, b, c))
    result.details = {"valid": valid, "invalid": result.cases - valid}
    return result


def verify_dba() -> Verification:
    result = Verification("dba", 0)
    retained = set()
    kept = 0
    for a in itertools.product(range(3), repeat=2):
        for b, c in itertools.product(itertools.product(range(2), range(3)), repeat=2):
            rec = dba_round(a, b, c)
            result.cases += 1
            if rec.valid:
                kept += 1
                retained.add(rec.x0_triple)
    if retained != DBA_CORRELATED_TRIPLES:
        result.failures.append(sorted(retained ^ DBA_CORRELATED_TRIPLES))
    result.details = {"retained_rounds": kept, "retained_triples": sorted(retained)}
    return result


def verify_ccp() -> Verification:
    result = Verification("ccp", 0)
    for sa, sb, sc in ccp_promise_inputs():
        rec = ccp_round(sa, sb, sc)
        result.cases += 1
        if abs(rec.probabilities[rec.expected] - 1.0) > DETERMINISTIC_TOL:
            result.failures.append((sa, sb, sc))
    return result


VERIFIERS = {"ss": verify_secret_sharing, "dba": verify_dba, "ccp": verify_ccp}
