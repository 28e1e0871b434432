"""Shared builders for the test suite.

Most tests need a (job, candidate) pair with every field under the
test's control; these factories hand out fully valid objects with
keyword overrides.
"""

from __future__ import annotations

from datetime import date

import pytest

from talentmatch.domain import (
    CandidateProfile,
    EmployerProfile,
    EmploymentType,
    Gender,
    HRContact,
    JobListing,
    JobStatus,
    Location,
    Skill,
)

AS_OF = date(2026, 1, 1)

SYDNEY = Location(country="australia", region="nsw", city="sydney")
MELBOURNE = Location(country="australia", region="victoria", city="melbourne")
GEELONG = Location(country="australia", region="victoria", city="geelong")
AUCKLAND = Location(country="new zealand", region="auckland", city="auckland")


def make_candidate(**overrides) -> CandidateProfile:
    fields = dict(
        candidate_id="cand-000001",
        first_name="rae",
        last_name="park",
        email="rae@example.net",
        date_of_birth=date(1986, 1, 1),
        location=SYDNEY,
        salary_min=80_000,
        salary_max=90_000,
        salary_open=False,
        employment_type=EmploymentType.FULL_TIME,
        gender=Gender.FEMALE,
        personality="OETCS",
        skills=frozenset({"skill-000001", "skill-000002"}),
    )
    fields.update(overrides)
    return CandidateProfile(**fields)


def make_job(**overrides) -> JobListing:
    fields = dict(
        job_id="job-000001",
        employer_id="emp-000001",
        title="data engineer",
        summary="build the pipelines",
        location=SYDNEY,
        offered_salary=100_000,
        employment_type=EmploymentType.FULL_TIME,
        required_skills=frozenset({"skill-000001", "skill-000002"}),
        ideal_personality="OETCS",
        ideal_age=40,
        ideal_gender=Gender.FEMALE,
        status=JobStatus.OPEN,
    )
    fields.update(overrides)
    return JobListing(**fields)


def make_employer(**overrides) -> EmployerProfile:
    fields = dict(
        employer_id="emp-000001",
        business_name="acme pty ltd",
        logo_ref=None,
        hr_contacts=(
            HRContact(contact_id="hr-1", name="jo hall", phone="0400000001", email="jo@acme.example"),
        ),
    )
    fields.update(overrides)
    return EmployerProfile(**fields)


def make_skill(n: int = 1, **overrides) -> Skill:
    fields = dict(skill_id=f"skill-{n:06d}", name=f"skill {n}", category="software")
    fields.update(overrides)
    return Skill(**fields)


@pytest.fixture
def catalog():
    return {"skill-000001", "skill-000002", "skill-000003", "skill-000004"}
