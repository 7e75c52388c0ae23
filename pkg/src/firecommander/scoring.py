"""Episode scoring: negative-reward accumulation and the final report card.

Penalties accrue once per scored second: a small charge per burning spot plus
a facility-specific charge per spot sitting inside a footprint. The episode
ends with four percentage scores (overall, perception, action, facility), a
negative-reward ratio against the worst case expected for the scenario, and a
verbal grade on the combined result.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .world import PENALTY_COEFFICIENTS, Facility, FacilityKind

DEFAULT_PROPAGATION_WEIGHT = 0.1  # per burning spot per scored second
DEFAULT_TEMPORAL_PENALTY = 1.25  # neutral value for the facility-term scale

# Verbal grade bands over final_score / 3, left-closed.
VERBAL_BANDS = (
    (90.0, "Excellent"),
    (80.0, "Well Done"),
    (60.0, "Almost There!"),
    (50.0, "Fair"),
    (float("-inf"), "Failed"),
)


@dataclass
class ScoringParams:
    propagation_weight: float = DEFAULT_PROPAGATION_WEIGHT
    temporal_penalty: float = DEFAULT_TEMPORAL_PENALTY
    penalty_overrides: dict[FacilityKind, float] = field(default_factory=dict)

    def penalty_coefficient(self, kind: FacilityKind) -> float:
        return self.penalty_overrides.get(kind, PENALTY_COEFFICIENTS[kind])

    @property
    def facility_term_scale(self) -> float:
        # Normalized so the default setting reproduces the reference formula.
        return self.temporal_penalty / DEFAULT_TEMPORAL_PENALTY


@dataclass
class ScoreState:
    """Running accumulators, updated once per scored second."""

    params: ScoringParams
    expected_negative: float
    total_negative: float = 0.0
    scored_seconds: int = 0
    ever_on_fire: list[bool] = field(default_factory=list)
    sensed_by_agent: dict[int, int] = field(default_factory=dict)
    pruned_by_agent: dict[int, int] = field(default_factory=dict)


def accumulate_negative(score: ScoreState, active_count: int,
                        facilities: list[Facility],
                        spots_in_facility: list[int]) -> float:
    """Charge one scored second; returns the increment added."""
    inc = score.params.propagation_weight * active_count
    scale = score.params.facility_term_scale
    for fac, n in zip(facilities, spots_in_facility):
        if n:
            inc += scale * score.params.penalty_coefficient(fac.kind) * n
    score.total_negative += inc
    score.scored_seconds += 1
    for i, n in enumerate(spots_in_facility):
        if n:
            score.ever_on_fire[i] = True
    return inc


def expected_negative_reward(initial_spots: int, duration_seconds: int,
                             propagation_weight: float = DEFAULT_PROPAGATION_WEIGHT) -> float:
    """Worst-case benchmark: untouched fire assumed to grow linearly."""
    t = duration_seconds
    return propagation_weight * initial_spots * t * (t + 1) / 2.0


def ratio_scores(spawned: int, sensed: int, pruned: int) -> tuple[float, float, float]:
    """(overall, perception, action) percentages.

    No fire ever spawned counts as a perfect outing; fire spawned but never
    sensed zeroes the action score since nothing was actionable.
    """
    if spawned == 0:
        return 100.0, 100.0, 100.0
    overall = pruned / spawned * 100.0
    perception = sensed / spawned * 100.0
    action = pruned / sensed * 100.0 if sensed else 0.0
    return overall, perception, action


def facility_score(ever_on_fire: list[bool]) -> float:
    if not ever_on_fire:
        return 100.0
    safe = sum(1 for flag in ever_on_fire if not flag)
    return safe / len(ever_on_fire) * 100.0


def negative_reward_ratio(total_negative: float, expected_negative: float) -> float:
    if expected_negative == 0.0:
        return 0.0
    return 100.0 * total_negative / expected_negative


def verbal_grade(final_score: float) -> str:
    scaled = final_score / 3.0
    for floor, label in VERBAL_BANDS:
        if scaled >= floor:
            return label
    raise AssertionError("unreachable")


def final_evaluation(perception: float, action: float, facility: float,
                     nrr: float) -> tuple[float, str]:
    final = perception + action + facility - 3.0 * nrr
    return final, verbal_grade(final)
