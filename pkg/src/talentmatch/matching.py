"""Weighted multi-criteria match scoring and ranked feeds.

Scoring runs whenever a job is listed (and on demand for a candidate):
candidates are prefiltered on hard gates (shared skill, salary
compatibility), each survivor gets a per-criterion subscore in [0, 1],
and the weighted blend becomes a 0-100 percentage.  Feeds are the
ranked results for one side of the market.

Arithmetic contract, relied on by downstream consumers that recompute
scores: the percentage is

    100 * fsum(w_i * s_i) / fsum(w_i)

over the applicable criteria taken in CRITERIA order, using
math.fsum for both sums.  fsum keeps the blend exact enough that a
candidate with every subscore at 1.0 scores exactly 100.0 and that
toggling one subscore moves the percentage by exactly its weight's
worth under the default weights.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from datetime import date, datetime, time, timezone
from typing import Iterable, Mapping, Optional, Sequence

from .domain import CandidateProfile, Gender, JobListing, JobStatus, age_of, salary_compatible
from .personality import similarity

# Canonical criterion order.  Every loop over criteria, including the
# fsum calls above, iterates in this order; reordering would change
# low-order bits and break byte-for-byte feed determinism.
CRITERIA = (
    "skills",
    "personality",
    "salary",
    "location",
    "employment",
    "age",
    "gender",
)

# Years of age difference at which the age subscore reaches zero.
AGE_TOLERANCE_YEARS = 10

_WEIGHT_SUM_TOLERANCE = 1e-9
_CAP_SLACK = 1e-12  # float dust only; the cap itself is exact


class MatchingError(Exception):
    """Base class for scoring failures."""


class InvalidWeightsError(MatchingError, ValueError):
    """Weight vector violates a structural constraint."""


class PrefilterError(MatchingError):
    """Scoring was attempted on a pair that fails the hard gates."""


class JobClosedError(MatchingError):
    """Ranking was requested for a job that is not open."""


@dataclass(frozen=True)
class MatchWeights:
    """Blend weights for the seven criteria.

    Weights must be non-negative and sum to 1 (within 1e-9).  The two
    demographic weights (age, gender) are each capped at half the mean
    of the five non-demographic weights, so demographics can never
    decide a match on their own.
    """

    skills: float = 0.40
    personality: float = 0.20
    salary: float = 0.15
    location: float = 0.10
    employment: float = 0.05
    age: float = 0.05
    gender: float = 0.05

    def __post_init__(self) -> None:
        for name in CRITERIA:
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise InvalidWeightsError(f"weight {name!r} must be a number")
            if not math.isfinite(value):
                raise InvalidWeightsError(f"weight {name!r} must be finite")
            if value < 0:
                raise InvalidWeightsError(f"weight {name!r} must be >= 0")
        total = math.fsum(getattr(self, name) for name in CRITERIA)
        if abs(total - 1.0) > _WEIGHT_SUM_TOLERANCE:
            raise InvalidWeightsError(f"weights sum to {total!r}, expected 1.0")
        core = (self.skills, self.personality, self.salary, self.location, self.employment)
        cap = 0.5 * (math.fsum(core) / len(core))
        if self.age > cap + _CAP_SLACK:
            raise InvalidWeightsError(
                f"age weight {self.age!r} exceeds the demographic cap {cap!r}"
            )
        if self.gender > cap + _CAP_SLACK:
            raise InvalidWeightsError(
                f"gender weight {self.gender!r} exceeds the demographic cap {cap!r}"
            )

    @classmethod
    def default(cls) -> "MatchWeights":
        return cls()

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, float]) -> "MatchWeights":
        unknown = set(mapping) - set(CRITERIA)
        if unknown:
            raise InvalidWeightsError(f"unknown weight keys: {sorted(unknown)}")
        missing = set(CRITERIA) - set(mapping)
        if missing:
            raise InvalidWeightsError(f"missing weight keys: {sorted(missing)}")
        return cls(**{name: float(mapping[name]) for name in CRITERIA})

    def as_mapping(self) -> dict:
        return {name: getattr(self, name) for name in CRITERIA}


@dataclass(frozen=True)
class ScoreBreakdown:
    """Per-criterion subscores; None marks an inapplicable criterion.

    A criterion is inapplicable when the job omits its ideal value
    (personality, age, gender) or the candidate has no quiz result.
    Skills, salary, location and employment always apply.
    """

    skills: float
    salary: float
    location: float
    employment: float
    personality: Optional[float] = None
    age: Optional[float] = None
    gender: Optional[float] = None

    def subscore(self, criterion: str) -> Optional[float]:
        if criterion not in CRITERIA:
            raise KeyError(criterion)
        return getattr(self, criterion)

    def applicable(self) -> tuple:
        return tuple(c for c in CRITERIA if getattr(self, c) is not None)


@dataclass(frozen=True)
class MatchResult:
    job_id: str
    candidate_id: str
    percentage: float
    breakdown: ScoreBreakdown
    # weight actually applied per applicable criterion, renormalized so
    # the applicable weights sum to 1
    effective_weights: Mapping[str, float] = field(default_factory=dict)


@dataclass(frozen=True)
class Feed:
    """Ranked matches for one owner: a job (employer side) or a
    candidate (seeker side)."""

    owner: str
    results: tuple
    generated_at: datetime

    def __post_init__(self) -> None:
        if not isinstance(self.results, tuple):
            object.__setattr__(self, "results", tuple(self.results))


def passes_prefilter(job: JobListing, candidate: CandidateProfile) -> bool:
    """Hard gate: at least one shared required skill and a compatible
    salary (open to negotiation, or the offer meets the stated minimum)."""
    if not job.required_skills:
        raise ValueError("job has no required skills")
    if not (candidate.skills & job.required_skills):
        return False
    return salary_compatible(candidate, job.offered_salary)


def prefilter(
    job: JobListing, candidates: Iterable[CandidateProfile]
) -> list:
    """Filter candidates through the hard gates, preserving order."""
    return [c for c in candidates if passes_prefilter(job, c)]


def _location_subscore(candidate: CandidateProfile, job: JobListing) -> float:
    c, j = candidate.location, job.location
    if c.country == "" or j.country == "" or c.country != j.country:
        return 0.0
    if c.city and c.city == j.city and c.region and c.region == j.region:
        return 1.0
    if c.region and c.region == j.region:
        return 0.5
    return 0.25


def _salary_subscore(candidate: CandidateProfile, offered: int) -> float:
    if candidate.salary_open:
        return 1.0
    lo, hi = candidate.salary_min, candidate.salary_max
    if lo == hi:
        # prefilter guarantees offered >= lo here
        return 1.0
    return min(1.0, max(0.0, (offered - lo) / (hi - lo)))


def subscores(
    job: JobListing, candidate: CandidateProfile, as_of: date
) -> ScoreBreakdown:
    """Compute every applicable subscore for a prefiltered pair.

    Raises PrefilterError if the pair fails the hard gates; graded
    scoring is only defined past them (the salary ratio in particular
    assumes a compatible offer).
    """
    if not passes_prefilter(job, candidate):
        raise PrefilterError(
            f"candidate {candidate.candidate_id} fails prefilter for job {job.job_id}"
        )

    matched = candidate.skills & job.required_skills
    skills = len(matched) / len(job.required_skills)

    personality: Optional[float] = None
    if job.ideal_personality is not None and candidate.personality is not None:
        personality = similarity(candidate.personality, job.ideal_personality)

    salary = _salary_subscore(candidate, job.offered_salary)
    location = _location_subscore(candidate, job)
    employment = 1.0 if candidate.employment_type == job.employment_type else 0.0

    age: Optional[float] = None
    if job.ideal_age is not None:
        years = age_of(candidate.date_of_birth, as_of)
        age = max(0.0, 1.0 - abs(years - job.ideal_age) / AGE_TOLERANCE_YEARS)

    gender: Optional[float] = None
    if job.ideal_gender is not None and job.ideal_gender is not Gender.UNSPECIFIED:
        gender = 1.0 if candidate.gender is job.ideal_gender else 0.0

    return ScoreBreakdown(
        skills=skills,
        personality=personality,
        salary=salary,
        location=location,
        employment=employment,
        age=age,
        gender=gender,
    )


def score(
    job: JobListing,
    candidate: CandidateProfile,
    weights: MatchWeights,
    as_of: date,
) -> MatchResult:
    """Blend the subscores into a 0-100 percentage.

    Inapplicable criteria drop out and their weight is redistributed
    proportionally across the rest, which is what the single division
    below does.  Skills always apply, so the denominator is never zero.
    """
    breakdown = subscores(job, candidate, as_of)
    applicable = breakdown.applicable()
    numerator = math.fsum(
        getattr(weights, c) * breakdown.subscore(c) for c in applicable
    )
    denominator = math.fsum(getattr(weights, c) for c in applicable)
    percentage = min(100.0, max(0.0, 100.0 * (numerator / denominator)))
    effective = {c: getattr(weights, c) / denominator for c in applicable}
    return MatchResult(
        job_id=job.job_id,
        candidate_id=candidate.candidate_id,
        percentage=percentage,
        breakdown=breakdown,
        effective_weights=effective,
    )


def _feed_timestamp(as_of: date) -> datetime:
    # midnight UTC keeps feeds for a given as_of byte-identical
    return datetime.combine(as_of, time.min, tzinfo=timezone.utc)


def _ranked(results: Iterable[MatchResult], counterpart: str) -> tuple:
    return tuple(
        sorted(results, key=lambda r: (-r.percentage, getattr(r, counterpart)))
    )


def rank_candidates(
    job: JobListing,
    candidates: Iterable[CandidateProfile],
    weights: MatchWeights,
    as_of: date,
) -> Feed:
    """Ranked feed of candidates for one job, best match first.

    Ties break toward the lexicographically smaller candidate id; a
    candidate appearing more than once in the input is scored once.
    """
    if job.status is not JobStatus.OPEN:
        raise JobClosedError(f"job {job.job_id} is closed")
    seen = set()
    results = []
    for candidate in candidates:
        if candidate.candidate_id in seen:
            continue
        seen.add(candidate.candidate_id)
        if passes_prefilter(job, candidate):
            results.append(score(job, candidate, weights, as_of))
    return Feed(
        owner=job.job_id,
        results=_ranked(results, "candidate_id"),
        generated_at=_feed_timestamp(as_of),
    )


def rank_jobs(
    candidate: CandidateProfile,
    jobs: Iterable[JobListing],
    weights: MatchWeights,
    as_of: date,
) -> Feed:
    """Ranked feed of open jobs for one candidate.

    Scores are computed by the same function as the employer-side feed,
    so a (job, candidate) pair scores identically in both directions.
    """
    seen = set()
    results = []
    for job in jobs:
        if job.status is not JobStatus.OPEN or job.job_id in seen:
            continue
        seen.add(job.job_id)
        if passes_prefilter(job, candidate):
            results.append(score(job, candidate, weights, as_of))
    return Feed(
        owner=candidate.candidate_id,
        results=_ranked(results, "job_id"),
        generated_at=_feed_timestamp(as_of),
    )
