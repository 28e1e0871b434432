"""Deterministic synthetic corpora and the batch match runner.

Everything here is reproducible from a single integer seed.  Random
draws come from SplitMix64 rather than the standard library so the
sequence is pinned down exactly and portable across languages:

    state = (state + 0x9E3779B97F4A7C15) mod 2^64
    z = state
    z = (z XOR (z >> 30)) * 0xBF58476D1CE4E5B9   mod 2^64
    z = (z XOR (z >> 27)) * 0x94D049BB133111EB   mod 2^64
    output = z XOR (z >> 31)

Bounded draws use plain modulo (`next() % n`); the bias is negligible
for the pool sizes used here and keeping the mapping trivial matters
more than uniformity in the last decimal place.

Generation order is part of the determinism contract: skills, quiz
bank questions, employers, candidates (profile fields first, then quiz
answers), jobs.  Reordering the draws changes the corpus.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from datetime import date, datetime, time, timedelta, timezone
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from . import matching, storage
from .domain import (
    CandidateProfile,
    EmployerProfile,
    EmploymentEntry,
    EmploymentType,
    Gender,
    HRContact,
    JobListing,
    JobStatus,
    Location,
    Skill,
)
from .matching import MatchWeights
from .personality import AXES, QuizResponseSet, default_bank, score_quiz
from .storage import EntityKind, MemoryStore, Store

# Reference date the generator pins ages and timestamps to, so a seed
# always yields the same bytes no matter when it runs.
DEFAULT_AS_OF = date(2026, 1, 1)

_MASK64 = (1 << 64) - 1


class InvalidConfigError(ValueError):
    pass


class SplitMix64:
    """Tiny deterministic PRNG; see the module docstring for the exact
    algorithm and the bounded-draw convention."""

    def __init__(self, seed: int) -> None:
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        if n <= 0:
            raise ValueError("bound must be positive")
        return self.next_u64() % n

    def between(self, lo: int, hi: int) -> int:
        """Inclusive on both ends."""
        return lo + self.below(hi - lo + 1)

    def chance(self, numerator: int, denominator: int) -> bool:
        return self.below(denominator) < numerator

    def choice(self, seq: Sequence):
        return seq[self.below(len(seq))]

    def sample(self, seq: Sequence, k: int) -> list:
        # partial Fisher-Yates; deterministic and collision-free
        pool = list(seq)
        if k > len(pool):
            raise ValueError("sample larger than population")
        for i in range(k):
            j = i + self.below(len(pool) - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]


DEFAULT_LOCATIONS: Tuple[Location, ...] = (
    Location(country="australia", region="nsw", city="sydney"),
    Location(country="australia", region="nsw", city="newcastle"),
    Location(country="australia", region="vic", city="melbourne"),
    Location(country="australia", region="vic", city="geelong"),
    Location(country="australia", region="qld", city="brisbane"),
    Location(country="australia", region="wa", city="perth"),
    Location(country="australia", region="sa", city="adelaide"),
    Location(country="new zealand", region="auckland", city="auckland"),
)


@dataclass(frozen=True)
class GenConfig:
    seed: int
    candidate_count: int
    job_count: int
    skill_count: int = 40
    salary_low: int = 45000
    salary_high: int = 160000
    location_pool: Tuple[Location, ...] = DEFAULT_LOCATIONS

    def __post_init__(self) -> None:
        if self.candidate_count <= 0:
            raise InvalidConfigError("candidate_count must be > 0")
        if self.job_count <= 0:
            raise InvalidConfigError("job_count must be > 0")
        if self.skill_count <= 0:
            raise InvalidConfigError("skill_count must be > 0")
        if not (0 < self.salary_low < self.salary_high):
            raise InvalidConfigError("salary bounds must satisfy 0 < low < high")
        if not self.location_pool:
            raise InvalidConfigError("location pool must not be empty")


_SKILL_NAMES = (
    "python", "typescript", "sql", "react", "django", "fastapi", "docker",
    "kubernetes", "terraform", "aws", "linux", "postgresql", "redis", "graphql",
    "data analysis", "machine learning", "statistics", "etl pipelines",
    "ui design", "ux research", "figma", "copywriting", "seo", "crm systems",
    "account management", "cold outreach", "negotiation", "customer support",
    "zendesk", "technical writing", "project management", "agile coaching",
    "payroll", "bookkeeping", "recruiting", "onboarding", "network security",
    "penetration testing", "incident response", "observability",
)

_SKILL_CATEGORIES = ("engineering", "data", "design", "marketing", "sales", "operations")

_FIRST_NAMES = (
    "alice", "ben", "carla", "dev", "erin", "felix", "grace", "hamish", "isla",
    "jack", "kira", "liam", "mona", "noah", "opal", "priya", "quinn", "rosa",
    "sam", "tessa", "umar", "vera", "wes", "xena", "yusuf", "zoe",
)

_LAST_NAMES = (
    "anderson", "bishop", "cole", "duong", "evans", "fitzgerald", "guo",
    "harper", "ibrahim", "jones", "kaur", "lindqvist", "moreau", "nguyen",
    "okafor", "petrov", "quigley", "rossi", "singh", "tanaka", "ueda",
    "vance", "walsh", "xu", "young", "zhang",
)

_EMAIL_DOMAINS = ("example.com", "mailbox.test", "postbox.example")

_COMPANY_HEADS = (
    "harbour", "summit", "crescent", "lattice", "beacon", "fable", "granite",
    "meridian", "quarry", "sable", "tidal", "vantage",
)

_COMPANY_TAILS = (
    "logistics", "analytics", "studios", "systems", "retail", "labs",
    "foundry", "media", "consulting", "robotics", "energy", "freight",
)

_COMPANY_SUFFIXES = ("pty ltd", "group", "co", "holdings")

_JOB_TITLES = (
    "backend engineer", "frontend developer", "data analyst", "devops engineer",
    "product designer", "support specialist", "account executive",
    "marketing coordinator", "payroll officer", "site reliability engineer",
    "qa engineer", "recruiter", "content strategist", "security analyst",
    "warehouse supervisor", "field technician",
)

_SUMMARY_TEMPLATES = (
    "Help the {team} team ship reliable work every week.",
    "Own day-to-day delivery across our {team} function.",
    "Join a small {team} crew with real customer impact.",
    "Keep our {team} practice sharp, documented and humming.",
)

_TEAMS = ("platform", "growth", "client services", "insights", "core product")


def _random_code(rng: SplitMix64) -> str:
    return "".join(axis.poles[rng.below(2)] for axis in AXES)


def _make_skills(rng: SplitMix64, count: int) -> List[Skill]:
    skills = []
    for i in range(count):
        if i < len(_SKILL_NAMES):
            name = _SKILL_NAMES[i]
        else:
            name = f"specialty {i + 1}"
        category = _SKILL_CATEGORIES[i % len(_SKILL_CATEGORIES)]
        skills.append(Skill(skill_id="", name=name, category=category))
    return skills


def _make_employers(rng: SplitMix64, count: int) -> List[EmployerProfile]:
    employers = []
    used = set()
    for i in range(count):
        name = f"{rng.choice(_COMPANY_HEADS)} {rng.choice(_COMPANY_TAILS)} {rng.choice(_COMPANY_SUFFIXES)}"
        if name in used:
            name = f"{name} {i + 1}"
        used.add(name)
        slug = name.split()[0]
        contacts = []
        for k in range(rng.between(1, 2)):
            first = rng.choice(_FIRST_NAMES)
            last = rng.choice(_LAST_NAMES)
            phone = "+61 4" + "".join(str(rng.below(10)) for _ in range(8))
            contacts.append(
                HRContact(
                    contact_id=f"hr-{i + 1}-{k + 1}",
                    name=f"{first.capitalize()} {last.capitalize()}",
                    phone=phone,
                    email=f"{first}.{last}@{slug}.example",
                )
            )
        employers.append(
            EmployerProfile(
                employer_id="",
                business_name=name,
                logo_ref=f"logo-{i + 1:03d}.png" if rng.chance(1, 2) else None,
                hr_contacts=tuple(contacts),
            )
        )
    return employers


def _make_history(rng: SplitMix64) -> Tuple[EmploymentEntry, ...]:
    entries = []
    for k in range(rng.below(4)):
        start = date(2013 + rng.below(10), rng.between(1, 12), rng.between(1, 28))
        months = rng.between(6, 48)
        end: Optional[date] = start + timedelta(days=30 * months)
        if k == 0 and rng.chance(1, 2):
            end = None  # still in the role
        entries.append(
            EmploymentEntry(
                title=rng.choice(_JOB_TITLES),
                employer=f"{rng.choice(_COMPANY_HEADS)} {rng.choice(_COMPANY_TAILS)}",
                start=start,
                end=end,
            )
        )
    return tuple(entries)


def generate(config: GenConfig) -> MemoryStore:
    """Build a validator-clean corpus in a fresh in-memory store."""
    rng = SplitMix64(config.seed)
    store = MemoryStore()

    skill_ids = [store.put(EntityKind.SKILL, s).record_id for s in _make_skills(rng, config.skill_count)]

    bank = default_bank()
    for question in bank.questions:
        store.put(EntityKind.PERSONALITY_QUESTION, question)

    employer_count = max(1, (config.job_count + 2) // 3)
    employer_ids = [
        store.put(EntityKind.EMPLOYER, e).record_id
        for e in _make_employers(rng, employer_count)
    ]

    result_base = datetime.combine(DEFAULT_AS_OF, time(9, 0), tzinfo=timezone.utc)
    salary_steps = (config.salary_high - config.salary_low) // 1000

    for i in range(config.candidate_count):
        first = rng.choice(_FIRST_NAMES)
        last = rng.choice(_LAST_NAMES)
        age = rng.between(18, 64)
        dob = date(DEFAULT_AS_OF.year - age, rng.between(1, 12), rng.between(1, 28))
        salary_min = config.salary_low + rng.below(max(1, salary_steps - 9)) * 1000
        salary_max = min(salary_min + rng.between(5, 30) * 1000, config.salary_high)
        gender_draw = rng.below(20)
        gender = Gender.FEMALE if gender_draw < 9 else Gender.MALE if gender_draw < 18 else Gender.UNSPECIFIED
        skills = frozenset(rng.sample(skill_ids, rng.between(2, 7)))
        history = _make_history(rng)

        answers: Optional[Dict[str, str]] = None
        scored = None
        if rng.chance(4, 5):
            answers = {
                q.question_id: "a" if rng.chance(1, 2) else "b" for q in bank.questions
            }
            scored = score_quiz(
                bank,
                QuizResponseSet(candidate_id="pending", answers=answers),
                taken_at=result_base + timedelta(minutes=i),
            )

        profile = CandidateProfile(
            candidate_id="",
            first_name=first.capitalize(),
            last_name=last.capitalize(),
            email=f"{first}.{last}.{i + 1}@{rng.choice(_EMAIL_DOMAINS)}",
            date_of_birth=dob,
            location=rng.choice(config.location_pool),
            salary_min=salary_min,
            salary_max=salary_max,
            salary_open=rng.chance(1, 5),
            employment_type=rng.choice(tuple(EmploymentType)),
            gender=gender,
            personality=None if scored is None else scored.code,
            skills=skills,
            photo_ref=f"photo-{i + 1:05d}.png" if rng.chance(2, 3) else None,
            employment_history=history,
        )

        candidate_id = store.put(EntityKind.CANDIDATE, profile).record_id
        if answers is not None and scored is not None:
            store.put(
                EntityKind.PERSONALITY_ANSWER,
                QuizResponseSet(candidate_id=candidate_id, answers=answers),
            )
            store.put(
                EntityKind.PERSONALITY_RESULT,
                replace(scored, candidate_id=candidate_id),
            )

    for i in range(config.job_count):
        required = frozenset(rng.sample(skill_ids, rng.between(2, 5)))
        job = JobListing(
            job_id="",
            employer_id=rng.choice(employer_ids),
            title=rng.choice(_JOB_TITLES),
            summary=rng.choice(_SUMMARY_TEMPLATES).format(team=rng.choice(_TEAMS)),
            location=rng.choice(config.location_pool),
            offered_salary=config.salary_low + rng.below(salary_steps + 1) * 1000,
            employment_type=rng.choice(tuple(EmploymentType)),
            required_skills=required,
            ideal_personality=_random_code(rng) if rng.chance(3, 5) else None,
            ideal_age=rng.between(22, 55) if rng.chance(1, 2) else None,
            ideal_gender=rng.choice((Gender.FEMALE, Gender.MALE)) if rng.chance(1, 5) else None,
            status=JobStatus.CLOSED if rng.chance(1, 10) else JobStatus.OPEN,
        )
        store.put(EntityKind.JOB, job)

    return store


def generate_snapshot(config: GenConfig, path) -> storage.StoreSnapshot:
    return storage.write_snapshot(generate(config), path)


# ---------------------------------------------------------------------------
# batch matching and reports

REPORT_SCHEMA = 1


def batch_match(store: Store, weights: MatchWeights, as_of: date = DEFAULT_AS_OF) -> dict:
    """Rank every open job's candidates; returns the report structure
    that both report files are rendered from.

    Elapsed time deliberately stays out of the report so identical
    inputs produce identical bytes; the CLI prints timing separately.
    """
    candidates = [rec.entity for rec in store.list_by(EntityKind.CANDIDATE)]
    job_records = sorted(store.list_by(EntityKind.JOB), key=lambda r: r.record_id)

    feeds = []
    pairs_scored = 0
    open_jobs = 0
    for rec in job_records:
        job = rec.entity
        if job.status is not JobStatus.OPEN:
            continue
        open_jobs += 1
        feed = matching.rank_candidates(job, candidates, weights, as_of)
        pairs_scored += len(feed.results)
        feeds.append(
            {
                "job_id": job.job_id,
                "title": job.title,
                "entries": [
                    {
                        "candidate_id": r.candidate_id,
                        "percentage": r.percentage,
                        "subscores": {
                            name: r.breakdown.subscore(name) for name in matching.CRITERIA
                        },
                    }
                    for r in feed.results
                ],
            }
        )

    return {
        "schema": REPORT_SCHEMA,
        "as_of": as_of.isoformat(),
        "weights": weights.as_mapping(),
        "summary": {
            "candidates": len(candidates),
            "jobs_total": len(job_records),
            "jobs_open": open_jobs,
            "pairs_scored": pairs_scored,
        },
        "feeds": feeds,
    }


_COLUMNS = ("skills", "personality", "salary", "location", "employment", "age", "gender")


def render_text_report(report: dict) -> str:
    """Fixed-width table per job; inapplicable subscores print as '-'."""
    out = []
    summary = report["summary"]
    out.append(f"match report  as_of {report['as_of']}")
    out.append(
        "candidates {candidates}  jobs {jobs_total} ({jobs_open} open)  "
        "pairs scored {pairs_scored}".format(**summary)
    )
    weights = report["weights"]
    out.append(
        "weights  " + "  ".join(f"{name} {weights[name]:.2f}" for name in _COLUMNS)
    )
    for feed in report["feeds"]:
        out.append("")
        out.append(f"job {feed['job_id']}  {feed['title']}")
        if not feed["entries"]:
            out.append("  (no surviving candidates)")
            continue
        header = f"  {'rank':>4}  {'candidate':<12}  {'pct':>6}"
        for name in _COLUMNS:
            header += f"  {name[:6]:>6}"
        out.append(header)
        for rank, entry in enumerate(feed["entries"], start=1):
            line = f"  {rank:>4}  {entry['candidate_id']:<12}  {entry['percentage']:>6.2f}"
            for name in _COLUMNS:
                value = entry["subscores"][name]
                line += f"  {'-':>6}" if value is None else f"  {value:>6.3f}"
            out.append(line)
    return "\n".join(out) + "\n"


def render_json_report(report: dict) -> str:
    import json

    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def write_reports(report: dict, out_prefix) -> Tuple[Path, Path]:
    """Write <prefix>.json and <prefix>.txt; returns both paths."""
    prefix = Path(out_prefix)
    prefix.parent.mkdir(parents=True, exist_ok=True)
    json_path = prefix.with_suffix(".json")
    text_path = prefix.with_suffix(".txt")
    json_path.write_text(render_json_report(report), encoding="utf-8")
    text_path.write_text(render_text_report(report), encoding="utf-8")
    return json_path, text_path
