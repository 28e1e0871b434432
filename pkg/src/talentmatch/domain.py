"""Core domain entities: candidates, employers, jobs, skills.

Everything here is an immutable value. Construction only normalizes;
invariants are checked by the validate_* functions, which report
violations as data rather than raising (a bad profile is user input,
not a programming fault).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import date
from enum import Enum
from typing import Optional

MIN_REGISTRATION_AGE = 15


class EmploymentType(Enum):
    FULL_TIME = "full_time"
    PART_TIME = "part_time"
    CASUAL = "casual"
    CONTRACT = "contract"


class Gender(Enum):
    FEMALE = "female"
    MALE = "male"
    UNSPECIFIED = "unspecified"


class JobStatus(Enum):
    OPEN = "open"
    CLOSED = "closed"


@dataclass(frozen=True)
class Location:
    """(country, region, city) triple, lowercase-normalized on construction.

    city may be empty (country-only or region-only locations are fine),
    but a city without a region is a validation violation.
    """

    country: str
    region: str = ""
    city: str = ""

    def __post_init__(self):
        object.__setattr__(self, "country", self.country.strip().lower())
        object.__setattr__(self, "region", self.region.strip().lower())
        object.__setattr__(self, "city", self.city.strip().lower())


@dataclass(frozen=True)
class EmploymentEntry:
    """One row of a candidate's employment history."""

    title: str
    employer: str
    start: date
    end: Optional[date] = None


@dataclass(frozen=True)
class CandidateProfile:
    candidate_id: str
    first_name: str
    last_name: str
    email: str
    date_of_birth: date
    location: Location
    salary_min: int
    salary_max: int
    salary_open: bool
    employment_type: EmploymentType
    gender: Gender = Gender.UNSPECIFIED
    personality: Optional[str] = None  # 5-letter code once the quiz is taken
    skills: frozenset = field(default_factory=frozenset)
    photo_ref: Optional[str] = None
    employment_history: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "skills", frozenset(self.skills))
        object.__setattr__(self, "employment_history", tuple(self.employment_history))


@dataclass(frozen=True)
class HRContact:
    contact_id: str
    name: str
    phone: str
    email: str


@dataclass(frozen=True)
class EmployerProfile:
    employer_id: str
    business_name: str
    logo_ref: Optional[str] = None
    hr_contacts: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "hr_contacts", tuple(self.hr_contacts))


@dataclass(frozen=True)
class JobListing:
    job_id: str
    employer_id: str
    title: str
    summary: str
    location: Location
    offered_salary: int
    employment_type: EmploymentType
    required_skills: frozenset
    ideal_personality: Optional[str] = None
    ideal_age: Optional[int] = None
    ideal_gender: Optional[Gender] = None
    status: JobStatus = JobStatus.OPEN

    def __post_init__(self):
        object.__setattr__(self, "required_skills", frozenset(self.required_skills))


@dataclass(frozen=True)
class Skill:
    skill_id: str
    name: str
    category: str


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of validating one entity: ok, or the violated invariants by name."""

    violations: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.violations


def age_of(date_of_birth: date, as_of: date) -> int:
    """Completed whole years between date_of_birth and as_of.

    Raises ValueError for a birthdate in the future of as_of.
    """
    if date_of_birth > as_of:
        raise ValueError(f"date_of_birth {date_of_birth} is after {as_of}")
    years = as_of.year - date_of_birth.year
    if (as_of.month, as_of.day) < (date_of_birth.month, date_of_birth.day):
        years -= 1
    return years


def salary_compatible(candidate: CandidateProfile, offered: int) -> bool:
    """True iff the offer clears the candidate's stated minimum, or the
    candidate marked their range as negotiable."""
    if offered <= 0:
        raise ValueError("offered salary must be positive")
    return candidate.salary_open or offered >= candidate.salary_min


def _validate_location(location: Location, violations: list):
    if not location.country:
        violations.append("empty country")
    if location.city and not location.region:
        violations.append("city without region")


def _valid_email(email: str) -> bool:
    return bool(email) and email.count("@") == 1 and not email.startswith("@") and not email.endswith("@")


def validate_candidate(profile: CandidateProfile, catalog, as_of: Optional[date] = None) -> ValidationReport:
    """Check every candidate invariant against the given skill catalog.

    as_of defaults to today and anchors the minimum-age check.
    """
    as_of = as_of or date.today()
    violations: list = []
    if not profile.first_name.strip():
        violations.append("empty first_name")
    if not profile.last_name.strip():
        violations.append("empty last_name")
    if not _valid_email(profile.email):
        violations.append("invalid email")
    if profile.date_of_birth > as_of:
        violations.append("future date_of_birth")
    elif age_of(profile.date_of_birth, as_of) < MIN_REGISTRATION_AGE:
        violations.append("under minimum age")
    if profile.salary_min < 0:
        violations.append("negative salary_min")
    if not profile.salary_open and profile.salary_min > profile.salary_max:
        violations.append("salary range inverted")
    _validate_location(profile.location, violations)
    unknown = profile.skills - frozenset(catalog)
    if unknown:
        violations.append("unknown skill")
    if profile.personality is not None:
        from . import personality as _personality

        if not _personality.is_valid_code(profile.personality):
            violations.append("invalid personality code")
    return ValidationReport(tuple(violations))


def validate_employer(profile: EmployerProfile) -> ValidationReport:
    violations: list = []
    if not profile.business_name.strip():
        violations.append("empty business_name")
    for contact in profile.hr_contacts:
        if not contact.name.strip():
            violations.append("empty contact name")
            break
    return ValidationReport(tuple(violations))


def validate_job(job: JobListing, catalog) -> ValidationReport:
    violations: list = []
    if not job.title.strip():
        violations.append("empty title")
    if job.offered_salary <= 0:
        violations.append("non-positive offered_salary")
    if not job.required_skills:
        violations.append("empty required_skills")
    unknown = job.required_skills - frozenset(catalog)
    if unknown:
        violations.append("unknown skill")
    if job.ideal_age is not None and not (MIN_REGISTRATION_AGE <= job.ideal_age <= 100):
        violations.append("ideal_age out of range")
    _validate_location(job.location, violations)
    if job.ideal_personality is not None:
        from . import personality as _personality

        if not _personality.is_valid_code(job.ideal_personality):
            violations.append("invalid ideal_personality code")
    return ValidationReport(tuple(violations))


def validate_skill(skill: Skill) -> ValidationReport:
    violations: list = []
    if not skill.name.strip():
        violations.append("empty name")
    if not skill.category.strip():
        violations.append("empty category")
    return ValidationReport(tuple(violations))
