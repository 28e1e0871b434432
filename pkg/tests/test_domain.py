"""Entity validation and derived-field behavior."""

from datetime import date

import pytest

from talentmatch.domain import (
    EmploymentEntry,
    EmploymentType,
    Gender,
    Location,
    age_of,
    salary_compatible,
    validate_candidate,
    validate_employer,
    validate_job,
    validate_skill,
)

from .conftest import make_candidate, make_employer, make_job, make_skill


def test_location_normalizes_case_and_whitespace():
    loc = Location(country="  Australia ", region="NSW", city=" Sydney")
    assert (loc.country, loc.region, loc.city) == ("australia", "nsw", "sydney")


def test_location_city_requires_region(catalog):
    # construction just normalizes; the violation surfaces at validation
    loc = Location(country="australia", region="", city="sydney")
    report = validate_candidate(make_candidate(location=loc), catalog)
    assert "city without region" in report.violations


def test_location_country_required(catalog):
    loc = Location(country="   ")
    report = validate_job(make_job(location=loc), catalog)
    assert "empty country" in report.violations


def test_age_of_counts_whole_years():
    dob = date(1990, 6, 15)
    assert age_of(dob, date(2020, 6, 14)) == 29
    assert age_of(dob, date(2020, 6, 15)) == 30
    assert age_of(dob, date(2020, 6, 16)) == 30


def test_age_of_leap_day():
    dob = date(2000, 2, 29)
    # a Feb-29 birthday completes on Mar 1 in common years
    assert age_of(dob, date(2021, 2, 28)) == 20
    assert age_of(dob, date(2021, 3, 1)) == 21


def test_age_of_rejects_future_birth():
    with pytest.raises(ValueError):
        age_of(date(2030, 1, 1), date(2026, 1, 1))


def test_salary_compatible_open_range():
    cand = make_candidate(salary_open=True, salary_min=200_000)
    assert salary_compatible(cand, 50_000)


def test_salary_compatible_respects_floor():
    cand = make_candidate(salary_min=80_000, salary_max=90_000)
    assert salary_compatible(cand, 80_000)
    assert not salary_compatible(cand, 79_999)


def test_salary_compatible_rejects_nonpositive_offer():
    with pytest.raises(ValueError):
        salary_compatible(make_candidate(), 0)


def test_candidate_happy_path(catalog):
    report = validate_candidate(make_candidate(), catalog, as_of=date(2026, 1, 1))
    assert report.ok
    assert report.violations == ()


def test_candidate_salary_range_inverted(catalog):
    cand = make_candidate(salary_min=90_000, salary_max=80_000)
    report = validate_candidate(cand, catalog)
    assert not report.ok
    assert any("salary" in v for v in report.violations)


def test_candidate_inverted_range_fine_when_open(catalog):
    cand = make_candidate(salary_min=90_000, salary_max=80_000, salary_open=True)
    assert validate_candidate(cand, catalog).ok


def test_candidate_email_must_have_one_at(catalog):
    for bad in ("rae.example.net", "rae@@example.net", "", "@example.net", "rae@"):
        report = validate_candidate(make_candidate(email=bad), catalog)
        assert not report.ok


def test_candidate_minimum_age(catalog):
    as_of = date(2026, 1, 1)
    too_young = make_candidate(date_of_birth=date(2012, 1, 2))
    report = validate_candidate(too_young, catalog, as_of=as_of)
    assert not report.ok
    just_old_enough = make_candidate(date_of_birth=date(2011, 1, 1))
    assert validate_candidate(just_old_enough, catalog, as_of=as_of).ok


def test_candidate_skills_must_be_in_catalog(catalog):
    cand = make_candidate(skills=frozenset({"skill-000001", "skill-999999"}))
    report = validate_candidate(cand, catalog)
    assert "unknown skill" in report.violations


def test_candidate_names_non_empty(catalog):
    assert not validate_candidate(make_candidate(first_name=" "), catalog).ok
    assert not validate_candidate(make_candidate(last_name=""), catalog).ok


def test_candidate_invalid_personality_code(catalog):
    report = validate_candidate(make_candidate(personality="ABCDE"), catalog)
    assert "invalid personality code" in report.violations


def test_employment_history_is_tuple():
    entry = EmploymentEntry(title="dev", employer="acme", start=date(2020, 1, 1))
    cand = make_candidate(employment_history=[entry])
    assert cand.employment_history == (entry,)


def test_employer_validation():
    assert validate_employer(make_employer()).ok
    assert not validate_employer(make_employer(business_name="  ")).ok


def test_job_happy_path(catalog):
    assert validate_job(make_job(), catalog).ok


def test_job_requires_skills(catalog):
    report = validate_job(make_job(required_skills=frozenset()), catalog)
    assert not report.ok


def test_job_unknown_skill(catalog):
    report = validate_job(make_job(required_skills=frozenset({"skill-424242"})), catalog)
    assert not report.ok


def test_job_ideal_age_bounds(catalog):
    assert validate_job(make_job(ideal_age=15), catalog).ok
    assert validate_job(make_job(ideal_age=100), catalog).ok
    assert not validate_job(make_job(ideal_age=14), catalog).ok
    assert not validate_job(make_job(ideal_age=101), catalog).ok


def test_job_ideal_personality_shape(catalog):
    assert not validate_job(make_job(ideal_personality="XXXXX"), catalog).ok
    assert not validate_job(make_job(ideal_personality="OETC"), catalog).ok
    assert validate_job(make_job(ideal_personality=None), catalog).ok


def test_job_salary_positive(catalog):
    assert not validate_job(make_job(offered_salary=0), catalog).ok


def test_job_title_non_empty(catalog):
    assert not validate_job(make_job(title="   "), catalog).ok


def test_skill_validation():
    assert validate_skill(make_skill()).ok
    assert not validate_skill(make_skill(name=" ")).ok
    assert not validate_skill(make_skill(category="")).ok


def test_enums_closed():
    with pytest.raises(ValueError):
        EmploymentType("freelance")
    with pytest.raises(ValueError):
        Gender("other")
