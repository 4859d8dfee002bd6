"""Aggregate evaluation metrics over logged interactions.

Satisfaction is always an input label (a human judgment), never computed.
Accuracy is reported to one decimal, half-up; the per-session interaction
average keeps its exact value alongside the rounded headline figure.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, ROUND_HALF_UP
from typing import Iterable, Sequence

from .store import FAILURE_REASONS, InteractionRecord

RATING_SCALE = (1, 2, 3, 4, 5)


class EmptyCorpus(Exception):
    pass


@dataclass(frozen=True)
class CorpusStats:
    sessions: int
    interactions: int
    satisfied: int
    accuracy_percent: float
    avg_interactions_per_session: float
    avg_interactions_headline: int
    failure_breakdown: dict[str, int]
    rating_histogram: dict[int, int]


def _half_up(value: Decimal, places: str) -> Decimal:
    return value.quantize(Decimal(places), rounding=ROUND_HALF_UP)


def compute_stats(
    records: Iterable[InteractionRecord],
    ratings: Sequence[int] = (),
) -> CorpusStats:
    records = list(records)
    if not records:
        raise EmptyCorpus("no interaction records")
    for rating in ratings:
        if rating not in RATING_SCALE:
            raise ValueError(f"rating {rating!r} outside the 1..5 scale")

    interactions = len(records)
    sessions = len({r.session_id for r in records})
    satisfied = sum(1 for r in records if r.satisfied is True)

    accuracy = _half_up(Decimal(100 * satisfied) / Decimal(interactions), "0.1")
    average = Decimal(interactions) / Decimal(sessions)
    headline = int(_half_up(average, "1"))

    breakdown = {reason: 0 for reason in FAILURE_REASONS}
    for record in records:
        if record.satisfied is False and record.failure_reason:
            breakdown[record.failure_reason] += 1

    histogram = {scale: 0 for scale in RATING_SCALE}
    for rating in ratings:
        histogram[rating] += 1

    return CorpusStats(
        sessions=sessions,
        interactions=interactions,
        satisfied=satisfied,
        accuracy_percent=float(accuracy),
        avg_interactions_per_session=float(average),
        avg_interactions_headline=headline,
        failure_breakdown=breakdown,
        rating_histogram=histogram,
    )
