"""Persistence for the nine entity kinds behind a swappable store.

Business logic stays out of the store: records are validated on write,
but cross-record rules (handshake gating, scoring) live in their own
modules.  Two backends share one implementation: an in-memory store
and a file-backed store that writes through to one JSONL file per kind
with atomic replace.

Snapshots are the transfer format: a header line carrying the schema
version and a SHA-256 digest of the body, then one kind-tagged JSON
record per line, sorted by (kind, id).  Versions survive the round
trip, so export -> wipe -> import -> export is byte-identical.
"""

from __future__ import annotations

import hashlib
import json
import os
import re
import tempfile
import threading
from dataclasses import dataclass
from datetime import date, datetime
from enum import Enum
from pathlib import Path
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from . import domain, personality, shortlist
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
from .personality import PersonalityResult, QuizOption, QuizQuestion, QuizResponseSet
from .shortlist import Message, Party, ShortlistRecord, VideoState

SCHEMA_VERSION = 1


class StoreError(Exception):
    """Base class for persistence failures."""


class NotFoundError(StoreError):
    pass


class DuplicateKeyError(StoreError):
    pass


class VersionConflictError(StoreError):
    pass


class StoreValidationError(StoreError):
    def __init__(self, violations: Iterable[str]):
        self.violations = tuple(violations)
        super().__init__("; ".join(self.violations))


class StoreNotEmptyError(StoreError):
    pass


class SnapshotIntegrityError(StoreError):
    pass


class SnapshotVersionError(StoreError):
    pass


class EntityKind(Enum):
    CANDIDATE = "candidate"
    EMPLOYER = "employer"
    JOB = "job"
    SKILL = "skill"
    PERSONALITY_RESULT = "personality_result"
    PERSONALITY_QUESTION = "personality_question"
    PERSONALITY_ANSWER = "personality_answer"
    SHORTLIST = "shortlist"
    MESSAGE = "message"


# kind -> (dataclass, natural id field or None, id prefix)
_KIND_INFO = {
    EntityKind.CANDIDATE: (CandidateProfile, "candidate_id", "cand"),
    EntityKind.EMPLOYER: (EmployerProfile, "employer_id", "emp"),
    EntityKind.JOB: (JobListing, "job_id", "job"),
    EntityKind.SKILL: (Skill, "skill_id", "skill"),
    EntityKind.PERSONALITY_RESULT: (PersonalityResult, None, "res"),
    EntityKind.PERSONALITY_QUESTION: (QuizQuestion, "question_id", "q"),
    EntityKind.PERSONALITY_ANSWER: (QuizResponseSet, None, "ans"),
    EntityKind.SHORTLIST: (ShortlistRecord, None, "sl"),
    EntityKind.MESSAGE: (Message, "message_id", "msg"),
}


@dataclass(frozen=True)
class StoredRecord:
    kind: EntityKind
    record_id: str
    version: int
    entity: object


# ---------------------------------------------------------------------------
# codecs

def _iso(value: Optional[datetime]) -> Optional[str]:
    return None if value is None else value.isoformat()


def _parse_dt(value: Optional[str]) -> Optional[datetime]:
    return None if value is None else datetime.fromisoformat(value)


def _encode_location(loc: Location) -> dict:
    return {"country": loc.country, "region": loc.region, "city": loc.city}


def _decode_location(data: dict) -> Location:
    return Location(country=data["country"], region=data["region"], city=data["city"])


def _encode_candidate(c: CandidateProfile) -> dict:
    return {
        "candidate_id": c.candidate_id,
        "first_name": c.first_name,
        "last_name": c.last_name,
        "email": c.email,
        "date_of_birth": c.date_of_birth.isoformat(),
        "location": _encode_location(c.location),
        "salary_min": c.salary_min,
        "salary_max": c.salary_max,
        "salary_open": c.salary_open,
        "employment_type": c.employment_type.value,
        "gender": c.gender.value,
        "personality": c.personality,
        "skills": sorted(c.skills),
        "photo_ref": c.photo_ref,
        "employment_history": [
            {
                "title": e.title,
                "employer": e.employer,
                "start": e.start.isoformat(),
                "end": None if e.end is None else e.end.isoformat(),
            }
            for e in c.employment_history
        ],
    }


def _decode_candidate(data: dict) -> CandidateProfile:
    return CandidateProfile(
        candidate_id=data["candidate_id"],
        first_name=data["first_name"],
        last_name=data["last_name"],
        email=data["email"],
        date_of_birth=date.fromisoformat(data["date_of_birth"]),
        location=_decode_location(data["location"]),
        salary_min=data["salary_min"],
        salary_max=data["salary_max"],
        salary_open=data["salary_open"],
        employment_type=EmploymentType(data["employment_type"]),
        gender=Gender(data["gender"]),
        personality=data["personality"],
        skills=frozenset(data["skills"]),
        photo_ref=data["photo_ref"],
        employment_history=tuple(
            EmploymentEntry(
                title=e["title"],
                employer=e["employer"],
                start=date.fromisoformat(e["start"]),
                end=None if e["end"] is None else date.fromisoformat(e["end"]),
            )
            for e in data["employment_history"]
        ),
    )


def _encode_employer(e: EmployerProfile) -> dict:
    return {
        "employer_id": e.employer_id,
        "business_name": e.business_name,
        "logo_ref": e.logo_ref,
        "hr_contacts": [
            {"contact_id": h.contact_id, "name": h.name, "phone": h.phone, "email": h.email}
            for h in e.hr_contacts
        ],
    }


def _decode_employer(data: dict) -> EmployerProfile:
    return EmployerProfile(
        employer_id=data["employer_id"],
        business_name=data["business_name"],
        logo_ref=data["logo_ref"],
        hr_contacts=tuple(
            HRContact(
                contact_id=h["contact_id"],
                name=h["name"],
                phone=h["phone"],
                email=h["email"],
            )
            for h in data["hr_contacts"]
        ),
    )


def _encode_job(j: JobListing) -> dict:
    return {
        "job_id": j.job_id,
        "employer_id": j.employer_id,
        "title": j.title,
        "summary": j.summary,
        "location": _encode_location(j.location),
        "offered_salary": j.offered_salary,
        "employment_type": j.employment_type.value,
        "required_skills": sorted(j.required_skills),
        "ideal_personality": j.ideal_personality,
        "ideal_age": j.ideal_age,
        "ideal_gender": None if j.ideal_gender is None else j.ideal_gender.value,
        "status": j.status.value,
    }


def _decode_job(data: dict) -> JobListing:
    return JobListing(
        job_id=data["job_id"],
        employer_id=data["employer_id"],
        title=data["title"],
        summary=data["summary"],
        location=_decode_location(data["location"]),
        offered_salary=data["offered_salary"],
        employment_type=EmploymentType(data["employment_type"]),
        required_skills=frozenset(data["required_skills"]),
        ideal_personality=data["ideal_personality"],
        ideal_age=data["ideal_age"],
        ideal_gender=None if data["ideal_gender"] is None else Gender(data["ideal_gender"]),
        status=JobStatus(data["status"]),
    )


def _encode_skill(s: Skill) -> dict:
    return {"skill_id": s.skill_id, "name": s.name, "category": s.category}


def _decode_skill(data: dict) -> Skill:
    return Skill(skill_id=data["skill_id"], name=data["name"], category=data["category"])


def _encode_result(r: PersonalityResult) -> dict:
    return {
        "candidate_id": r.candidate_id,
        "code": r.code,
        "tallies": {key: list(counts) for key, counts in r.tallies.items()},
        "taken_at": r.taken_at.isoformat(),
    }


def _decode_result(data: dict) -> PersonalityResult:
    return PersonalityResult(
        candidate_id=data["candidate_id"],
        code=data["code"],
        tallies={key: tuple(counts) for key, counts in data["tallies"].items()},
        taken_at=datetime.fromisoformat(data["taken_at"]),
    )


def _encode_question(q: QuizQuestion) -> dict:
    return {
        "question_id": q.question_id,
        "text": q.text,
        "axis": q.axis.key,
        "option_a": {"text": q.option_a.text, "pole": q.option_a.pole},
        "option_b": {"text": q.option_b.text, "pole": q.option_b.pole},
    }


def _decode_question(data: dict) -> QuizQuestion:
    return QuizQuestion(
        question_id=data["question_id"],
        text=data["text"],
        axis=personality.axis_from_key(data["axis"]),
        option_a=QuizOption(text=data["option_a"]["text"], pole=data["option_a"]["pole"]),
        option_b=QuizOption(text=data["option_b"]["text"], pole=data["option_b"]["pole"]),
    )


def _encode_answers(a: QuizResponseSet) -> dict:
    return {"candidate_id": a.candidate_id, "answers": dict(sorted(a.answers.items()))}


def _decode_answers(data: dict) -> QuizResponseSet:
    return QuizResponseSet(candidate_id=data["candidate_id"], answers=dict(data["answers"]))


def _encode_shortlist(s: ShortlistRecord) -> dict:
    return {
        "job_id": s.job_id,
        "candidate_id": s.candidate_id,
        "employer_shortlisted_at": _iso(s.employer_shortlisted_at),
        "candidate_shortlisted_at": _iso(s.candidate_shortlisted_at),
        "contact_initiated_at": _iso(s.contact_initiated_at),
        "contact_accepted_at": _iso(s.contact_accepted_at),
        "video_state": s.video_state.value,
        "video_requested_by": None if s.video_requested_by is None else s.video_requested_by.value,
        "video_requested_at": _iso(s.video_requested_at),
        "video_accepted_at": _iso(s.video_accepted_at),
    }


def _decode_shortlist(data: dict) -> ShortlistRecord:
    return ShortlistRecord(
        job_id=data["job_id"],
        candidate_id=data["candidate_id"],
        employer_shortlisted_at=_parse_dt(data["employer_shortlisted_at"]),
        candidate_shortlisted_at=_parse_dt(data["candidate_shortlisted_at"]),
        contact_initiated_at=_parse_dt(data["contact_initiated_at"]),
        contact_accepted_at=_parse_dt(data["contact_accepted_at"]),
        video_state=VideoState(data["video_state"]),
        video_requested_by=None
        if data["video_requested_by"] is None
        else Party(data["video_requested_by"]),
        video_requested_at=_parse_dt(data["video_requested_at"]),
        video_accepted_at=_parse_dt(data["video_accepted_at"]),
    )


def _encode_message(m: Message) -> dict:
    return {
        "message_id": m.message_id,
        "job_id": m.job_id,
        "candidate_id": m.candidate_id,
        "sender": m.sender.value,
        "body": m.body,
        "sent_at": m.sent_at.isoformat(),
    }


def _decode_message(data: dict) -> Message:
    return Message(
        message_id=data["message_id"],
        job_id=data["job_id"],
        candidate_id=data["candidate_id"],
        sender=Party(data["sender"]),
        body=data["body"],
        sent_at=datetime.fromisoformat(data["sent_at"]),
    )


_CODECS: Dict[EntityKind, Tuple[Callable, Callable]] = {
    EntityKind.CANDIDATE: (_encode_candidate, _decode_candidate),
    EntityKind.EMPLOYER: (_encode_employer, _decode_employer),
    EntityKind.JOB: (_encode_job, _decode_job),
    EntityKind.SKILL: (_encode_skill, _decode_skill),
    EntityKind.PERSONALITY_RESULT: (_encode_result, _decode_result),
    EntityKind.PERSONALITY_QUESTION: (_encode_question, _decode_question),
    EntityKind.PERSONALITY_ANSWER: (_encode_answers, _decode_answers),
    EntityKind.SHORTLIST: (_encode_shortlist, _decode_shortlist),
    EntityKind.MESSAGE: (_encode_message, _decode_message),
}


def encode_entity(kind: EntityKind, entity) -> dict:
    return _CODECS[kind][0](entity)


def decode_entity(kind: EntityKind, data: dict):
    return _CODECS[kind][1](data)


def _canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------------------
# store

def _unique_key(kind: EntityKind, entity) -> Optional[tuple]:
    if kind is EntityKind.EMPLOYER:
        return ("business_name", entity.business_name.lower())
    if kind is EntityKind.SKILL:
        return ("name_category", entity.name.lower(), entity.category.lower())
    if kind is EntityKind.PERSONALITY_RESULT:
        return ("candidate", entity.candidate_id)
    if kind is EntityKind.PERSONALITY_ANSWER:
        return ("candidate", entity.candidate_id)
    if kind is EntityKind.SHORTLIST:
        return ("pair", entity.job_id, entity.candidate_id)
    return None


class Store:
    """In-memory reference store; subclass hooks add durability.

    All mutations run under one lock, which is what makes
    compare_and_update linearizable for concurrent writers.
    """

    def __init__(self) -> None:
        self._lock = threading.RLock()
        self._records: Dict[EntityKind, Dict[str, StoredRecord]] = {
            kind: {} for kind in EntityKind
        }
        self._unique: Dict[EntityKind, Dict[tuple, str]] = {kind: {} for kind in EntityKind}
        self._counters: Dict[EntityKind, int] = {kind: 0 for kind in EntityKind}

    # -- subclass hooks ----------------------------------------------------
    def _persist(self, kind: EntityKind) -> None:
        pass

    def _persist_all(self) -> None:
        pass

    # -- helpers -----------------------------------------------------------
    def _bump_counter(self, kind: EntityKind, record_id: str) -> None:
        prefix = _KIND_INFO[kind][2]
        m = re.fullmatch(re.escape(prefix) + r"-(\d+)", record_id)
        if m:
            self._counters[kind] = max(self._counters[kind], int(m.group(1)))

    def _next_id(self, kind: EntityKind) -> str:
        prefix = _KIND_INFO[kind][2]
        self._counters[kind] += 1
        return f"{prefix}-{self._counters[kind]:06d}"

    def _validate(self, kind: EntityKind, entity) -> None:
        cls = _KIND_INFO[kind][0]
        if not isinstance(entity, cls):
            raise TypeError(f"{kind.value} record must be {cls.__name__}")
        violations: List[str] = []
        if kind is EntityKind.CANDIDATE:
            violations = list(domain.validate_candidate(entity, self._skill_catalog()).violations)
        elif kind is EntityKind.EMPLOYER:
            violations = list(domain.validate_employer(entity).violations)
        elif kind is EntityKind.JOB:
            violations = list(domain.validate_job(entity, self._skill_catalog()).violations)
        elif kind is EntityKind.SKILL:
            violations = list(domain.validate_skill(entity).violations)
        elif kind is EntityKind.PERSONALITY_RESULT:
            if not entity.candidate_id:
                violations.append("empty candidate_id")
            if not personality.is_valid_code(entity.code):
                violations.append("invalid personality code")
        elif kind is EntityKind.PERSONALITY_QUESTION:
            if not entity.question_id:
                violations.append("empty question_id")
        elif kind is EntityKind.PERSONALITY_ANSWER:
            if not entity.candidate_id:
                violations.append("empty candidate_id")
            for qid, choice in entity.answers.items():
                if choice not in ("a", "b"):
                    violations.append(f"invalid choice for {qid}")
        elif kind is EntityKind.SHORTLIST:
            if not entity.job_id:
                violations.append("empty job_id")
            if not entity.candidate_id:
                violations.append("empty candidate_id")
        elif kind is EntityKind.MESSAGE:
            if not entity.job_id:
                violations.append("empty job_id")
            if not entity.candidate_id:
                violations.append("empty candidate_id")
        if violations:
            raise StoreValidationError(violations)

    def _skill_catalog(self) -> set:
        return set(self._records[EntityKind.SKILL])

    def _normalize(self, kind: EntityKind, entity):
        # round-trip through the codec: detaches shared mutable bits and
        # guarantees stored state equals its serialized form
        return decode_entity(kind, encode_entity(kind, entity))

    def _claim_unique(self, kind: EntityKind, entity, record_id: str) -> None:
        key = _unique_key(kind, entity)
        if key is None:
            return
        holder = self._unique[kind].get(key)
        if holder is not None and holder != record_id:
            raise DuplicateKeyError(f"{kind.value} duplicate key {key!r}")
        self._unique[kind][key] = record_id

    def _release_unique(self, kind: EntityKind, entity, record_id: str) -> None:
        key = _unique_key(kind, entity)
        if key is not None and self._unique[kind].get(key) == record_id:
            del self._unique[kind][key]

    # -- interface ---------------------------------------------------------
    def put(self, kind: EntityKind, entity) -> StoredRecord:
        with self._lock:
            self._validate(kind, entity)
            id_field = _KIND_INFO[kind][1]
            record_id = getattr(entity, id_field) if id_field else None
            if not record_id:
                record_id = self._next_id(kind)
                if id_field:
                    entity = _replace_id(entity, id_field, record_id)
            else:
                self._bump_counter(kind, record_id)
            if record_id in self._records[kind]:
                raise DuplicateKeyError(f"{kind.value} id {record_id!r} already exists")
            entity = self._normalize(kind, entity)
            self._claim_unique(kind, entity, record_id)
            record = StoredRecord(kind=kind, record_id=record_id, version=1, entity=entity)
            self._records[kind][record_id] = record
            self._persist(kind)
            return record

    def get(self, kind: EntityKind, record_id: str) -> StoredRecord:
        record = self._records[kind].get(record_id)
        if record is None:
            raise NotFoundError(f"{kind.value} {record_id!r} not found")
        return record

    def exists(self, kind: EntityKind, record_id: str) -> bool:
        return record_id in self._records[kind]

    def delete(self, kind: EntityKind, record_id: str) -> None:
        with self._lock:
            record = self._records[kind].pop(record_id, None)
            if record is None:
                raise NotFoundError(f"{kind.value} {record_id!r} not found")
            self._release_unique(kind, record.entity, record_id)
            self._persist(kind)

    def version_of(self, kind: EntityKind, record_id: str) -> int:
        return self.get(kind, record_id).version

    def compare_and_update(
        self, kind: EntityKind, record_id: str, expected_version: int, entity
    ) -> StoredRecord:
        with self._lock:
            current = self._records[kind].get(record_id)
            if current is None:
                raise NotFoundError(f"{kind.value} {record_id!r} not found")
            if current.version != expected_version:
                raise VersionConflictError(
                    f"{kind.value} {record_id!r} at version {current.version}, "
                    f"expected {expected_version}"
                )
            id_field = _KIND_INFO[kind][1]
            if id_field:
                entity_id = getattr(entity, id_field)
                if not entity_id:
                    entity = _replace_id(entity, id_field, record_id)
                elif entity_id != record_id:
                    raise StoreValidationError([f"id field does not match {record_id!r}"])
            self._validate(kind, entity)
            entity = self._normalize(kind, entity)
            self._release_unique(kind, current.entity, record_id)
            try:
                self._claim_unique(kind, entity, record_id)
            except DuplicateKeyError:
                self._claim_unique(kind, current.entity, record_id)  # restore
                raise
            record = StoredRecord(
                kind=kind, record_id=record_id, version=current.version + 1, entity=entity
            )
            self._records[kind][record_id] = record
            self._persist(kind)
            return record

    def list_by(self, kind: EntityKind, **filters) -> List[StoredRecord]:
        """Equality filters on entity fields; a filter against a set-valued
        field (candidate skills, job required_skills) tests membership."""
        out = []
        for record in self._records[kind].values():
            if all(_matches(record.entity, key, value) for key, value in filters.items()):
                out.append(record)
        return out

    def count(self, kind: EntityKind) -> int:
        return len(self._records[kind])

    def wipe(self) -> None:
        with self._lock:
            for kind in EntityKind:
                self._records[kind].clear()
                self._unique[kind].clear()
                self._counters[kind] = 0
            self._persist_all()

    def is_empty(self) -> bool:
        return all(not records for records in self._records.values())

    def _restore(self, kind: EntityKind, record_id: str, version: int, entity) -> None:
        """Import path: keep the snapshot's id and version verbatim."""
        with self._lock:
            if record_id in self._records[kind]:
                raise DuplicateKeyError(f"{kind.value} id {record_id!r} already exists")
            self._claim_unique(kind, entity, record_id)
            self._bump_counter(kind, record_id)
            self._records[kind][record_id] = StoredRecord(
                kind=kind, record_id=record_id, version=version, entity=entity
            )


def _replace_id(entity, id_field: str, record_id: str):
    import dataclasses

    return dataclasses.replace(entity, **{id_field: record_id})


def _matches(entity, key: str, value) -> bool:
    attr = getattr(entity, key, None)
    if isinstance(attr, (frozenset, set)):
        return value in attr
    if isinstance(attr, Enum) and not isinstance(value, Enum):
        return attr.value == value
    return attr == value


class MemoryStore(Store):
    pass


class FileStore(Store):
    """Write-through store: one JSONL file per kind under `directory`,
    each replaced atomically on mutation."""

    def __init__(self, directory) -> None:
        super().__init__()
        self._dir = Path(directory)
        self._dir.mkdir(parents=True, exist_ok=True)
        self._load()

    def _path(self, kind: EntityKind) -> Path:
        return self._dir / f"{kind.value}.jsonl"

    def _load(self) -> None:
        for kind in EntityKind:
            path = self._path(kind)
            if not path.exists():
                continue
            with path.open("r", encoding="utf-8") as fh:
                for line in fh:
                    line = line.strip()
                    if not line:
                        continue
                    row = json.loads(line)
                    entity = decode_entity(kind, row["data"])
                    self._restore(kind, row["id"], row["version"], entity)

    def _persist(self, kind: EntityKind) -> None:
        rows = [
            _canonical_json(
                {
                    "id": record.record_id,
                    "version": record.version,
                    "data": encode_entity(kind, record.entity),
                }
            )
            for record in self._records[kind].values()
        ]
        payload = "".join(row + "\n" for row in rows)
        fd, tmp = tempfile.mkstemp(dir=str(self._dir), prefix=f".{kind.value}.", suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(payload)
                fh.flush()
                os.fsync(fh.fileno())
            os.replace(tmp, self._path(kind))
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def _persist_all(self) -> None:
        for kind in EntityKind:
            self._persist(kind)


# ---------------------------------------------------------------------------
# integrity

@dataclass(frozen=True)
class IntegrityIssue:
    kind: EntityKind
    record_id: str
    field: str
    missing: str


@dataclass(frozen=True)
class IntegrityReport:
    issues: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.issues


def check_integrity(store: Store) -> IntegrityReport:
    """Walk the reference graph and report every dangling reference."""
    issues: List[IntegrityIssue] = []

    def check(kind, record_id, field, target_kind, target_id):
        if not store.exists(target_kind, target_id):
            issues.append(IntegrityIssue(kind, record_id, field, target_id))

    for rec in store.list_by(EntityKind.CANDIDATE):
        for skill_id in sorted(rec.entity.skills):
            check(EntityKind.CANDIDATE, rec.record_id, "skills", EntityKind.SKILL, skill_id)
    for rec in store.list_by(EntityKind.JOB):
        check(EntityKind.JOB, rec.record_id, "employer_id", EntityKind.EMPLOYER, rec.entity.employer_id)
        for skill_id in sorted(rec.entity.required_skills):
            check(EntityKind.JOB, rec.record_id, "required_skills", EntityKind.SKILL, skill_id)
    for rec in store.list_by(EntityKind.PERSONALITY_RESULT):
        check(
            EntityKind.PERSONALITY_RESULT,
            rec.record_id,
            "candidate_id",
            EntityKind.CANDIDATE,
            rec.entity.candidate_id,
        )
    for rec in store.list_by(EntityKind.PERSONALITY_ANSWER):
        check(
            EntityKind.PERSONALITY_ANSWER,
            rec.record_id,
            "candidate_id",
            EntityKind.CANDIDATE,
            rec.entity.candidate_id,
        )
        for qid in sorted(rec.entity.answers):
            check(
                EntityKind.PERSONALITY_ANSWER,
                rec.record_id,
                "answers",
                EntityKind.PERSONALITY_QUESTION,
                qid,
            )
    pairs = set()
    for rec in store.list_by(EntityKind.SHORTLIST):
        pairs.add((rec.entity.job_id, rec.entity.candidate_id))
        check(EntityKind.SHORTLIST, rec.record_id, "job_id", EntityKind.JOB, rec.entity.job_id)
        check(
            EntityKind.SHORTLIST,
            rec.record_id,
            "candidate_id",
            EntityKind.CANDIDATE,
            rec.entity.candidate_id,
        )
    for rec in store.list_by(EntityKind.MESSAGE):
        check(EntityKind.MESSAGE, rec.record_id, "job_id", EntityKind.JOB, rec.entity.job_id)
        check(
            EntityKind.MESSAGE,
            rec.record_id,
            "candidate_id",
            EntityKind.CANDIDATE,
            rec.entity.candidate_id,
        )
        if (rec.entity.job_id, rec.entity.candidate_id) not in pairs:
            issues.append(
                IntegrityIssue(
                    EntityKind.MESSAGE,
                    rec.record_id,
                    "pair",
                    f"{rec.entity.job_id}/{rec.entity.candidate_id}",
                )
            )
    return IntegrityReport(issues=tuple(issues))


# ---------------------------------------------------------------------------
# snapshots

@dataclass(frozen=True)
class StoreSnapshot:
    schema_version: int
    digest: str
    text: str


def export_snapshot(store: Store) -> StoreSnapshot:
    """Serialize the whole store: header line with version and body
    digest, then one record per line sorted by (kind, id)."""
    with store._lock:
        lines = []
        for kind in sorted(EntityKind, key=lambda k: k.value):
            for record_id in sorted(store._records[kind]):
                record = store._records[kind][record_id]
                lines.append(
                    _canonical_json(
                        {
                            "kind": kind.value,
                            "id": record.record_id,
                            "version": record.version,
                            "data": encode_entity(kind, record.entity),
                        }
                    )
                )
    body = "".join(line + "\n" for line in lines)
    digest = hashlib.sha256(body.encode("utf-8")).hexdigest()
    header = _canonical_json({"digest": digest, "schema_version": SCHEMA_VERSION})
    return StoreSnapshot(
        schema_version=SCHEMA_VERSION, digest=digest, text=header + "\n" + body
    )


def parse_snapshot(text: str) -> StoreSnapshot:
    """Validate a snapshot's header, version and digest (contents are
    decoded later, at import)."""
    newline = text.find("\n")
    if newline < 0:
        raise SnapshotIntegrityError("missing snapshot header")
    try:
        header = json.loads(text[:newline])
    except json.JSONDecodeError as exc:
        raise SnapshotIntegrityError(f"unreadable snapshot header: {exc}") from exc
    if not isinstance(header, dict) or "schema_version" not in header or "digest" not in header:
        raise SnapshotIntegrityError("snapshot header missing fields")
    if header["schema_version"] != SCHEMA_VERSION:
        raise SnapshotVersionError(
            f"unsupported schema_version {header['schema_version']!r}"
        )
    body = text[newline + 1 :]
    digest = hashlib.sha256(body.encode("utf-8")).hexdigest()
    if digest != header["digest"]:
        raise SnapshotIntegrityError("snapshot digest mismatch")
    return StoreSnapshot(schema_version=header["schema_version"], digest=digest, text=text)


def import_snapshot(store: Store, snapshot: StoreSnapshot) -> None:
    """Load a snapshot into an empty store, preserving ids and versions."""
    snapshot = parse_snapshot(snapshot.text)  # re-verify before touching the store
    with store._lock:
        if not store.is_empty():
            raise StoreNotEmptyError("import target must be empty")
        body = snapshot.text.split("\n", 1)[1]
        for line in body.splitlines():
            if not line:
                continue
            row = json.loads(line)
            kind = EntityKind(row["kind"])
            entity = decode_entity(kind, row["data"])
            store._restore(kind, row["id"], row["version"], entity)
        store._persist_all()


def write_snapshot(store: Store, path) -> StoreSnapshot:
    snapshot = export_snapshot(store)
    Path(path).write_text(snapshot.text, encoding="utf-8")
    return snapshot


def read_snapshot(path) -> StoreSnapshot:
    return parse_snapshot(Path(path).read_text(encoding="utf-8"))
