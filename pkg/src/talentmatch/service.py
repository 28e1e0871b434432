"""HTTP/JSON boundary tying the domain modules together.

Every response body is JSON.  Every error body has the single shape

    {"error": {"code": ..., "message": ..., "details": [...]}}

with code one of validation_failed (400), unauthorized (401),
not_found (404), duplicate (409), conflict (409, stale concurrent
update after 3 internal retries), precondition_failed (412).

Auth is a minimal bearer-token scheme: registration responses carry a
token exactly once; the server keeps only its SHA-256 hash.  Tokens
and notifications live in a sidecar state file next to the store (they
are service plumbing, not one of the nine entity kinds).

Feeds are never cached: the feed endpoints and the synchronous compute
at job posting always rank against the current store, so a feed can
never be stale.  Candidate contact details (email) and employer HR
contact details stay hidden from the counterpart until the pair's
handshake reaches contact_accepted.
"""

from __future__ import annotations

import hashlib
import json
import logging
import secrets
import sys
import threading
import time as time_mod
from dataclasses import dataclass, replace
from datetime import date, datetime, timezone
from pathlib import Path
from typing import Dict, List, Optional

from fastapi import Depends, FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field
from starlette.exceptions import HTTPException as StarletteHTTPException

from . import domain, matching, personality, shortlist, storage
from .config import ServiceConfig
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
from .matching import JobClosedError
from .personality import (
    IncompleteResponseError,
    QuizResponseSet,
    UnknownQuestionError,
    default_bank,
    load_bank,
)
from .shortlist import (
    DuplicateEventError,
    EventKind,
    MessagingNotEnabledError,
    Party,
    PreconditionFailedError,
    ShortlistEvent,
    ShortlistRecord,
    WrongActorError,
)
from .storage import (
    DuplicateKeyError,
    EntityKind,
    FileStore,
    MemoryStore,
    NotFoundError,
    Store,
    StoreValidationError,
    VersionConflictError,
)

_CAS_ATTEMPTS = 3
_MAX_PAGE = 200

logger = logging.getLogger("talentmatch.api")
if not logger.handlers:
    _handler = logging.StreamHandler(sys.stdout)
    _handler.setFormatter(logging.Formatter("%(message)s"))
    logger.addHandler(_handler)
    logger.setLevel(logging.INFO)
    logger.propagate = False


class ApiException(Exception):
    def __init__(self, status: int, code: str, message: str, details: Optional[list] = None):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message
        self.details = details or []


def _validation_failed(message: str, details: Optional[list] = None) -> ApiException:
    return ApiException(400, "validation_failed", message, details)


def _unauthorized(message: str = "authentication required") -> ApiException:
    return ApiException(401, "unauthorized", message)


def _not_found(message: str) -> ApiException:
    return ApiException(404, "not_found", message)


@dataclass(frozen=True)
class Principal:
    party: Party
    subject_id: str


class ServiceState:
    """Sidecar state: hashed bearer tokens and notifications.

    Persisted as one JSON file in the storage directory (atomic
    replace); memory-only when the store itself is memory-only.
    """

    def __init__(self, path: Optional[Path] = None) -> None:
        self._path = path
        self._lock = threading.RLock()
        self._tokens: Dict[str, dict] = {}
        self._notifications: List[dict] = []
        self._seq = 0
        if path is not None and path.exists():
            doc = json.loads(path.read_text(encoding="utf-8"))
            self._tokens = doc.get("tokens", {})
            self._notifications = doc.get("notifications", [])
            self._seq = doc.get("notification_seq", 0)

    def _flush(self) -> None:
        if self._path is None:
            return
        payload = json.dumps(
            {
                "tokens": self._tokens,
                "notifications": self._notifications,
                "notification_seq": self._seq,
            },
            sort_keys=True,
        )
        tmp = self._path.with_name(self._path.name + ".tmp")
        tmp.write_text(payload, encoding="utf-8")
        tmp.replace(self._path)

    def issue_token(self, principal: Principal) -> str:
        token = secrets.token_hex(16)
        digest = hashlib.sha256(token.encode("ascii")).hexdigest()
        with self._lock:
            self._tokens[digest] = {
                "party": principal.party.value,
                "id": principal.subject_id,
            }
            self._flush()
        return token

    def resolve(self, token: str) -> Optional[Principal]:
        digest = hashlib.sha256(token.encode("ascii")).hexdigest()
        entry = self._tokens.get(digest)
        if entry is None:
            return None
        return Principal(party=Party(entry["party"]), subject_id=entry["id"])

    def notify(self, recipient: Principal, kind: str, job_id: str, candidate_id: str) -> dict:
        with self._lock:
            self._seq += 1
            note = {
                "notification_id": f"ntf-{self._seq:06d}",
                "recipient_party": recipient.party.value,
                "recipient_id": recipient.subject_id,
                "kind": kind,
                "job_id": job_id,
                "candidate_id": candidate_id,
                "created_at": datetime.now(timezone.utc).isoformat(),
                "read": False,
            }
            self._notifications.append(note)
            self._flush()
            return note

    def notifications_for(self, principal: Principal) -> List[dict]:
        return [
            n
            for n in self._notifications
            if n["recipient_party"] == principal.party.value
            and n["recipient_id"] == principal.subject_id
        ]

    def mark_read(self, principal: Principal, notification_id: str) -> dict:
        with self._lock:
            for note in self._notifications:
                if note["notification_id"] == notification_id:
                    if (
                        note["recipient_party"] != principal.party.value
                        or note["recipient_id"] != principal.subject_id
                    ):
                        raise _unauthorized("notification belongs to another account")
                    note["read"] = True
                    self._flush()
                    return note
        raise _not_found(f"notification {notification_id!r} not found")


# ---------------------------------------------------------------------------
# request bodies

class LocationBody(BaseModel):
    country: str
    region: str = ""
    city: str = ""


class EmploymentEntryBody(BaseModel):
    title: str
    employer: str
    start: date
    end: Optional[date] = None


class CandidateCreateBody(BaseModel):
    first_name: str
    last_name: str
    email: str
    date_of_birth: date
    location: LocationBody
    salary_min: int
    salary_max: int
    salary_open: bool = False
    employment_type: str
    gender: str = "unspecified"
    skills: List[str] = Field(default_factory=list)
    photo_ref: Optional[str] = None
    employment_history: List[EmploymentEntryBody] = Field(default_factory=list)


class CandidateUpdateBody(BaseModel):
    first_name: Optional[str] = None
    last_name: Optional[str] = None
    email: Optional[str] = None
    date_of_birth: Optional[date] = None
    location: Optional[LocationBody] = None
    salary_min: Optional[int] = None
    salary_max: Optional[int] = None
    salary_open: Optional[bool] = None
    employment_type: Optional[str] = None
    gender: Optional[str] = None
    skills: Optional[List[str]] = None
    photo_ref: Optional[str] = None
    employment_history: Optional[List[EmploymentEntryBody]] = None


class HRContactBody(BaseModel):
    name: str
    phone: str
    email: str


class EmployerCreateBody(BaseModel):
    business_name: str
    logo_ref: Optional[str] = None
    hr_contacts: List[HRContactBody] = Field(default_factory=list)


class JobCreateBody(BaseModel):
    title: str
    summary: str = ""
    location: LocationBody
    offered_salary: int
    employment_type: str
    required_skills: List[str]
    ideal_personality: Optional[str] = None
    ideal_age: Optional[int] = None
    ideal_gender: Optional[str] = None


class QuizSubmitBody(BaseModel):
    answers: Dict[str, str]


class SkillCreateBody(BaseModel):
    name: str
    category: str


class EventBody(BaseModel):
    kind: str


class MessageBody(BaseModel):
    body: str


# ---------------------------------------------------------------------------
# enum parsing helpers (pydantic keeps strings; the domain wants enums)

def _parse_employment(value: str) -> EmploymentType:
    try:
        return EmploymentType(value)
    except ValueError:
        raise _validation_failed(
            f"invalid employment_type {value!r}",
            [f"expected one of {[e.value for e in EmploymentType]}"],
        )


def _parse_gender(value: str) -> Gender:
    try:
        return Gender(value)
    except ValueError:
        raise _validation_failed(
            f"invalid gender {value!r}",
            [f"expected one of {[g.value for g in Gender]}"],
        )


def _parse_ideal_gender(value: Optional[str]) -> Optional[Gender]:
    return None if value is None else _parse_gender(value)


# ---------------------------------------------------------------------------
# views

def _location_view(loc: Location) -> dict:
    return {"country": loc.country, "region": loc.region, "city": loc.city}


def _candidate_self_view(c: CandidateProfile) -> dict:
    view = storage.encode_entity(EntityKind.CANDIDATE, c)
    return view


def _candidate_public_view(c: CandidateProfile) -> dict:
    # what the other side of the market is allowed to see pre-handshake
    return {
        "candidate_id": c.candidate_id,
        "first_name": c.first_name,
        "last_name": c.last_name,
        "location": _location_view(c.location),
        "employment_type": c.employment_type.value,
        "skills": sorted(c.skills),
        "personality": c.personality,
        "photo_ref": c.photo_ref,
    }


def _employer_self_view(e: EmployerProfile) -> dict:
    return storage.encode_entity(EntityKind.EMPLOYER, e)


def _employer_public_view(e: EmployerProfile) -> dict:
    return {
        "employer_id": e.employer_id,
        "business_name": e.business_name,
        "logo_ref": e.logo_ref,
    }


def _job_view(j: JobListing, business_name: Optional[str] = None) -> dict:
    view = storage.encode_entity(EntityKind.JOB, j)
    if business_name is not None:
        view["business_name"] = business_name
    return view


def _breakdown_view(result: matching.MatchResult) -> dict:
    return {name: result.breakdown.subscore(name) for name in matching.CRITERIA}


def _skill_view(s: Skill) -> dict:
    return {"skill_id": s.skill_id, "name": s.name, "category": s.category}


def _message_view(m: shortlist.Message) -> dict:
    return storage.encode_entity(EntityKind.MESSAGE, m)


_STAGE_LABELS = (
    ("employer_shortlisted", "employer shortlist"),
    ("candidate_shortlisted", "candidate shortlist"),
    ("contact_initiated", "employer contact"),
    ("contact_accepted", "candidate response"),
)


def _status_view(record: ShortlistRecord) -> dict:
    awaiting = None
    for attr, label in _STAGE_LABELS:
        if not getattr(record, attr):
            awaiting = label
            break
    return {
        "job_id": record.job_id,
        "candidate_id": record.candidate_id,
        "employer_shortlisted": record.employer_shortlisted,
        "candidate_shortlisted": record.candidate_shortlisted,
        "contact_initiated": record.contact_initiated,
        "contact_accepted": record.contact_accepted,
        "timestamps": {
            "employer_shortlisted_at": _iso_or_none(record.employer_shortlisted_at),
            "candidate_shortlisted_at": _iso_or_none(record.candidate_shortlisted_at),
            "contact_initiated_at": _iso_or_none(record.contact_initiated_at),
            "contact_accepted_at": _iso_or_none(record.contact_accepted_at),
        },
        "stages_complete": record.stages_complete,
        "stage": f"{record.stages_complete}/4",
        "awaiting": awaiting,
        "messaging_enabled": shortlist.messaging_enabled(record),
        "video_state": record.video_state.value,
        "video_requested_by": None
        if record.video_requested_by is None
        else record.video_requested_by.value,
    }


def _iso_or_none(value: Optional[datetime]) -> Optional[str]:
    return None if value is None else value.isoformat()


# ---------------------------------------------------------------------------
# app factory

def build_app(config: Optional[ServiceConfig] = None) -> FastAPI:
    config = config or ServiceConfig()
    app = FastAPI(title="talentmatch", docs_url=None, redoc_url=None, openapi_url=None)

    if config.storage_dir:
        store: Store = FileStore(config.storage_dir)
        state = ServiceState(Path(config.storage_dir) / "service_state.json")
    else:
        store = MemoryStore()
        state = ServiceState()

    bank = load_bank(config.quiz_bank_path) if config.quiz_bank_path else default_bank()
    report = personality.validate_bank(bank)
    if not report.ok:
        raise ValueError(f"quiz bank failed validation: {report.violations}")
    for question in bank.questions:
        if not store.exists(EntityKind.PERSONALITY_QUESTION, question.question_id):
            store.put(EntityKind.PERSONALITY_QUESTION, question)

    weights = config.weights
    app.state.store = store
    app.state.service_state = state
    app.state.bank = bank
    app.state.weights = weights
    app.state.config = config

    def now() -> datetime:
        return datetime.now(timezone.utc)

    def as_of_today() -> date:
        return config.as_of or date.today()

    # -- plumbing -----------------------------------------------------------

    @app.exception_handler(ApiException)
    async def handle_api_exception(request: Request, exc: ApiException):
        return JSONResponse(
            status_code=exc.status,
            content={
                "error": {"code": exc.code, "message": exc.message, "details": exc.details}
            },
        )

    @app.exception_handler(RequestValidationError)
    async def handle_request_validation(request: Request, exc: RequestValidationError):
        details = [
            {"field": ".".join(str(part) for part in err.get("loc", ())), "message": err.get("msg", "")}
            for err in exc.errors()
        ]
        return JSONResponse(
            status_code=400,
            content={
                "error": {
                    "code": "validation_failed",
                    "message": "request failed validation",
                    "details": details,
                }
            },
        )

    @app.exception_handler(StarletteHTTPException)
    async def handle_http_exception(request: Request, exc: StarletteHTTPException):
        code = {404: "not_found", 401: "unauthorized", 409: "duplicate", 412: "precondition_failed"}.get(
            exc.status_code, "validation_failed"
        )
        return JSONResponse(
            status_code=exc.status_code,
            content={"error": {"code": code, "message": str(exc.detail), "details": []}},
        )

    @app.middleware("http")
    async def log_requests(request: Request, call_next):
        started = time_mod.perf_counter()
        response = await call_next(request)
        logger.info(
            json.dumps(
                {
                    "ts": datetime.now(timezone.utc).isoformat(),
                    "method": request.method,
                    "path": request.url.path,
                    "status": response.status_code,
                    "duration_ms": round((time_mod.perf_counter() - started) * 1000, 2),
                },
                sort_keys=True,
            )
        )
        return response

    def principal_of(request: Request) -> Principal:
        header = request.headers.get("authorization", "")
        if not header.lower().startswith("bearer "):
            raise _unauthorized()
        principal = state.resolve(header[7:].strip())
        if principal is None:
            raise _unauthorized("unknown token")
        return principal

    def get_candidate(candidate_id: str) -> storage.StoredRecord:
        try:
            return store.get(EntityKind.CANDIDATE, candidate_id)
        except NotFoundError:
            raise _not_found(f"candidate {candidate_id!r} not found")

    def get_employer(employer_id: str) -> storage.StoredRecord:
        try:
            return store.get(EntityKind.EMPLOYER, employer_id)
        except NotFoundError:
            raise _not_found(f"employer {employer_id!r} not found")

    def get_job(job_id: str) -> storage.StoredRecord:
        try:
            return store.get(EntityKind.JOB, job_id)
        except NotFoundError:
            raise _not_found(f"job {job_id!r} not found")

    def require_self_candidate(principal: Principal, candidate_id: str) -> None:
        if principal.party is not Party.CANDIDATE or principal.subject_id != candidate_id:
            raise _unauthorized("candidate token for this profile required")

    def require_self_employer(principal: Principal, employer_id: str) -> None:
        if principal.party is not Party.EMPLOYER or principal.subject_id != employer_id:
            raise _unauthorized("employer token for this account required")

    def require_pair_party(principal: Principal, job: JobListing, candidate_id: str) -> None:
        if principal.party is Party.CANDIDATE:
            if principal.subject_id != candidate_id:
                raise _unauthorized("not a party of this pair")
        else:
            if principal.subject_id != job.employer_id:
                raise _unauthorized("not a party of this pair")

    def put_guarded(kind: EntityKind, entity):
        try:
            return store.put(kind, entity)
        except StoreValidationError as exc:
            raise _validation_failed("record failed validation", list(exc.violations))
        except DuplicateKeyError as exc:
            raise ApiException(409, "duplicate", str(exc))

    def cas_guarded(kind: EntityKind, record_id: str, mutate):
        """Read-modify-write with bounded retry; mutate(entity) -> entity."""
        for _ in range(_CAS_ATTEMPTS):
            current = store.get(kind, record_id)
            try:
                return store.compare_and_update(
                    kind, record_id, current.version, mutate(current.entity)
                )
            except VersionConflictError:
                continue
            except StoreValidationError as exc:
                raise _validation_failed("record failed validation", list(exc.violations))
            except DuplicateKeyError as exc:
                raise ApiException(409, "duplicate", str(exc))
        raise ApiException(409, "conflict", f"{kind.value} {record_id!r} kept changing")

    def page_params(
        limit: int = Query(50, ge=1, le=_MAX_PAGE), offset: int = Query(0, ge=0)
    ) -> tuple:
        return limit, offset

    def notify_counterpart(actor: Party, kind: str, job: JobListing, candidate_id: str) -> None:
        recipient = (
            Principal(Party.CANDIDATE, candidate_id)
            if actor is Party.EMPLOYER
            else Principal(Party.EMPLOYER, job.employer_id)
        )
        state.notify(recipient, kind, job.job_id, candidate_id)

    # -- health and catalog ---------------------------------------------------

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.get("/skills")
    def list_skills():
        items = sorted(
            (_skill_view(rec.entity) for rec in store.list_by(EntityKind.SKILL)),
            key=lambda s: s["skill_id"],
        )
        return {"items": items, "total": len(items)}

    @app.post("/skills", status_code=201)
    def create_skill(body: SkillCreateBody, request: Request):
        principal_of(request)
        record = put_guarded(EntityKind.SKILL, Skill(skill_id="", name=body.name, category=body.category))
        return {"skill": _skill_view(record.entity)}

    @app.get("/stats/skill-demand")
    def skill_demand():
        open_jobs = [rec.entity for rec in store.list_by(EntityKind.JOB, status=JobStatus.OPEN)]
        items = []
        for rec in sorted(store.list_by(EntityKind.SKILL), key=lambda r: r.record_id):
            count = sum(1 for job in open_jobs if rec.record_id in job.required_skills)
            items.append(
                {
                    "skill_id": rec.record_id,
                    "name": rec.entity.name,
                    "open_job_count": count,
                }
            )
        return {"items": items, "total": len(items)}

    # -- registration and profiles -------------------------------------------

    def candidate_from_body(body: CandidateCreateBody, existing: Optional[CandidateProfile] = None) -> CandidateProfile:
        return CandidateProfile(
            candidate_id="" if existing is None else existing.candidate_id,
            first_name=body.first_name,
            last_name=body.last_name,
            email=body.email,
            date_of_birth=body.date_of_birth,
            location=Location(
                country=body.location.country,
                region=body.location.region,
                city=body.location.city,
            ),
            salary_min=body.salary_min,
            salary_max=body.salary_max,
            salary_open=body.salary_open,
            employment_type=_parse_employment(body.employment_type),
            gender=_parse_gender(body.gender),
            personality=None if existing is None else existing.personality,
            skills=frozenset(body.skills),
            photo_ref=body.photo_ref,
            employment_history=tuple(
                EmploymentEntry(title=e.title, employer=e.employer, start=e.start, end=e.end)
                for e in body.employment_history
            ),
        )

    @app.post("/candidates", status_code=201)
    def register_candidate(body: CandidateCreateBody):
        record = put_guarded(EntityKind.CANDIDATE, candidate_from_body(body))
        token = state.issue_token(Principal(Party.CANDIDATE, record.record_id))
        return {"candidate": _candidate_self_view(record.entity), "token": token}

    @app.get("/candidates/{candidate_id}")
    def fetch_candidate(candidate_id: str, request: Request):
        principal = principal_of(request)
        record = get_candidate(candidate_id)
        require_self_candidate(principal, candidate_id)
        return {"candidate": _candidate_self_view(record.entity)}

    @app.patch("/candidates/{candidate_id}")
    def update_candidate(candidate_id: str, body: CandidateUpdateBody, request: Request):
        principal = principal_of(request)
        get_candidate(candidate_id)
        require_self_candidate(principal, candidate_id)

        def mutate(current: CandidateProfile) -> CandidateProfile:
            changes = {}
            if body.first_name is not None:
                changes["first_name"] = body.first_name
            if body.last_name is not None:
                changes["last_name"] = body.last_name
            if body.email is not None:
                changes["email"] = body.email
            if body.date_of_birth is not None:
                changes["date_of_birth"] = body.date_of_birth
            if body.location is not None:
                changes["location"] = Location(
                    country=body.location.country,
                    region=body.location.region,
                    city=body.location.city,
                )
            if body.salary_min is not None:
                changes["salary_min"] = body.salary_min
            if body.salary_max is not None:
                changes["salary_max"] = body.salary_max
            if body.salary_open is not None:
                changes["salary_open"] = body.salary_open
            if body.employment_type is not None:
                changes["employment_type"] = _parse_employment(body.employment_type)
            if body.gender is not None:
                changes["gender"] = _parse_gender(body.gender)
            if body.skills is not None:
                changes["skills"] = frozenset(body.skills)
            if body.photo_ref is not None:
                changes["photo_ref"] = body.photo_ref
            if body.employment_history is not None:
                changes["employment_history"] = tuple(
                    EmploymentEntry(title=e.title, employer=e.employer, start=e.start, end=e.end)
                    for e in body.employment_history
                )
            return replace(current, **changes)

        record = cas_guarded(EntityKind.CANDIDATE, candidate_id, mutate)
        return {"candidate": _candidate_self_view(record.entity)}

    @app.post("/employers", status_code=201)
    def register_employer(body: EmployerCreateBody):
        contacts = tuple(
            HRContact(contact_id=f"hr-{i + 1}", name=c.name, phone=c.phone, email=c.email)
            for i, c in enumerate(body.hr_contacts)
        )
        record = put_guarded(
            EntityKind.EMPLOYER,
            EmployerProfile(
                employer_id="", business_name=body.business_name,
                logo_ref=body.logo_ref, hr_contacts=contacts,
            ),
        )
        token = state.issue_token(Principal(Party.EMPLOYER, record.record_id))
        return {"employer": _employer_self_view(record.entity), "token": token}

    @app.get("/employers/{employer_id}")
    def fetch_employer(employer_id: str, request: Request):
        principal = principal_of(request)
        record = get_employer(employer_id)
        if principal.party is Party.EMPLOYER and principal.subject_id == employer_id:
            return {"employer": _employer_self_view(record.entity)}
        return {"employer": _employer_public_view(record.entity)}

    @app.post("/employers/{employer_id}/contacts", status_code=201)
    def add_hr_contact(employer_id: str, body: HRContactBody, request: Request):
        principal = principal_of(request)
        get_employer(employer_id)
        require_self_employer(principal, employer_id)

        def mutate(current: EmployerProfile) -> EmployerProfile:
            contact = HRContact(
                contact_id=f"hr-{len(current.hr_contacts) + 1}",
                name=body.name,
                phone=body.phone,
                email=body.email,
            )
            return replace(current, hr_contacts=current.hr_contacts + (contact,))

        record = cas_guarded(EntityKind.EMPLOYER, employer_id, mutate)
        return {"employer": _employer_self_view(record.entity)}

    # -- quiz ------------------------------------------------------------------

    @app.get("/quiz/questions")
    def quiz_questions(request: Request):
        principal_of(request)
        # pole letters deliberately stripped: answering honestly must be
        # the only strategy
        items = [
            {
                "id": q.question_id,
                "text": q.text,
                "options": {"a": q.option_a.text, "b": q.option_b.text},
            }
            for q in bank.questions
        ]
        return {"questions": items, "total": len(items)}

    @app.post("/candidates/{candidate_id}/quiz")
    def submit_quiz(candidate_id: str, body: QuizSubmitBody, request: Request):
        principal = principal_of(request)
        get_candidate(candidate_id)
        require_self_candidate(principal, candidate_id)

        responses = QuizResponseSet(candidate_id=candidate_id, answers=dict(body.answers))
        try:
            result = personality.score_quiz(bank, responses, taken_at=now())
        except UnknownQuestionError as exc:
            raise _validation_failed("unknown question ids", [str(exc)])
        except IncompleteResponseError as exc:
            raise _validation_failed("incomplete responses", [str(exc)])
        except ValueError as exc:
            # covers QuizError plus malformed choice values
            raise _validation_failed("invalid quiz submission", [str(exc)])

        def upsert(kind: EntityKind, entity) -> None:
            existing = store.list_by(kind, candidate_id=candidate_id)
            if existing:
                rec = existing[0]
                for _ in range(_CAS_ATTEMPTS):
                    try:
                        store.compare_and_update(kind, rec.record_id, rec.version, entity)
                        return
                    except VersionConflictError:
                        rec = store.get(kind, rec.record_id)
                        continue
                raise ApiException(409, "conflict", f"{kind.value} kept changing")
            else:
                store.put(kind, entity)

        upsert(EntityKind.PERSONALITY_ANSWER, responses)
        upsert(EntityKind.PERSONALITY_RESULT, result)
        cas_guarded(
            EntityKind.CANDIDATE,
            candidate_id,
            lambda current: replace(current, personality=result.code),
        )
        return {
            "code": result.code,
            "tallies": {key: list(counts) for key, counts in result.tallies.items()},
            "taken_at": result.taken_at.isoformat(),
        }

    @app.get("/candidates/{candidate_id}/personality")
    def fetch_personality(candidate_id: str, request: Request):
        principal = principal_of(request)
        get_candidate(candidate_id)
        require_self_candidate(principal, candidate_id)
        results = store.list_by(EntityKind.PERSONALITY_RESULT, candidate_id=candidate_id)
        if not results:
            raise _not_found("no quiz result for this candidate")
        result = results[0].entity
        return {
            "code": result.code,
            "tallies": {key: list(counts) for key, counts in result.tallies.items()},
            "taken_at": result.taken_at.isoformat(),
        }

    # -- jobs and feeds ---------------------------------------------------------

    @app.post("/jobs", status_code=201)
    def post_job(body: JobCreateBody, request: Request):
        principal = principal_of(request)
        if principal.party is not Party.EMPLOYER:
            raise _unauthorized("employer token required to post jobs")
        employer = get_employer(principal.subject_id)

        job = JobListing(
            job_id="",
            employer_id=principal.subject_id,
            title=body.title,
            summary=body.summary,
            location=Location(
                country=body.location.country,
                region=body.location.region,
                city=body.location.city,
            ),
            offered_salary=body.offered_salary,
            employment_type=_parse_employment(body.employment_type),
            required_skills=frozenset(body.required_skills),
            ideal_personality=body.ideal_personality,
            ideal_age=body.ideal_age,
            ideal_gender=_parse_ideal_gender(body.ideal_gender),
            status=JobStatus.OPEN,
        )
        record = put_guarded(EntityKind.JOB, job)
        # the analyst runs as part of posting: the feed exists before the
        # response returns
        feed = employer_feed_view(record.entity)
        return {
            "job": _job_view(record.entity, employer.entity.business_name),
            "feed": feed,
        }

    @app.get("/jobs/{job_id}")
    def fetch_job(job_id: str, request: Request):
        principal_of(request)
        record = get_job(job_id)
        employer = get_employer(record.entity.employer_id)
        return {"job": _job_view(record.entity, employer.entity.business_name)}

    @app.post("/jobs/{job_id}/close")
    def close_job(job_id: str, request: Request):
        principal = principal_of(request)
        record = get_job(job_id)
        require_self_employer(principal, record.entity.employer_id)
        if record.entity.status is JobStatus.CLOSED:
            raise ApiException(409, "duplicate", f"job {job_id!r} is already closed")
        updated = cas_guarded(
            EntityKind.JOB, job_id, lambda current: replace(current, status=JobStatus.CLOSED)
        )
        return {"job": _job_view(updated.entity)}

    @app.get("/employers/{employer_id}/jobs")
    def list_employer_jobs(employer_id: str, request: Request):
        principal = principal_of(request)
        get_employer(employer_id)
        require_self_employer(principal, employer_id)
        items = [
            _job_view(rec.entity)
            for rec in sorted(
                store.list_by(EntityKind.JOB, employer_id=employer_id),
                key=lambda r: r.record_id,
            )
        ]
        return {"items": items, "total": len(items)}

    def employer_feed_view(job: JobListing) -> dict:
        candidates = [rec.entity for rec in store.list_by(EntityKind.CANDIDATE)]
        try:
            feed = matching.rank_candidates(job, candidates, weights, as_of_today())
        except JobClosedError as exc:
            raise ApiException(412, "precondition_failed", str(exc))
        items = []
        for result in feed.results:
            candidate = store.get(EntityKind.CANDIDATE, result.candidate_id).entity
            entry = _candidate_public_view(candidate)
            entry["percentage"] = result.percentage
            entry["breakdown"] = _breakdown_view(result)
            entry["effective_weights"] = dict(result.effective_weights)
            items.append(entry)
        return {
            "owner": feed.owner,
            "generated_at": feed.generated_at.isoformat(),
            "total": len(items),
            "items": items,
        }

    @app.get("/jobs/{job_id}/feed")
    def job_feed(job_id: str, request: Request, page: tuple = Depends(page_params)):
        principal = principal_of(request)
        record = get_job(job_id)
        require_self_employer(principal, record.entity.employer_id)
        limit, offset = page
        feed = employer_feed_view(record.entity)
        feed["items"] = feed["items"][offset : offset + limit]
        feed["limit"] = limit
        feed["offset"] = offset
        return feed

    @app.get("/candidates/{candidate_id}/feed")
    def candidate_feed(candidate_id: str, request: Request, page: tuple = Depends(page_params)):
        principal = principal_of(request)
        record = get_candidate(candidate_id)
        require_self_candidate(principal, candidate_id)
        limit, offset = page
        jobs = [rec.entity for rec in store.list_by(EntityKind.JOB)]
        feed = matching.rank_jobs(record.entity, jobs, weights, as_of_today())
        items = []
        for result in feed.results:
            job = store.get(EntityKind.JOB, result.job_id).entity
            employer = store.get(EntityKind.EMPLOYER, job.employer_id).entity
            items.append(
                {
                    "job_id": job.job_id,
                    "title": job.title,
                    "summary": job.summary,
                    "business_name": employer.business_name,
                    "location": _location_view(job.location),
                    "offered_salary": job.offered_salary,
                    "employment_type": job.employment_type.value,
                    "required_skills": sorted(job.required_skills),
                    "percentage": result.percentage,
                    "breakdown": _breakdown_view(result),
                    "effective_weights": dict(result.effective_weights),
                }
            )
        return {
            "owner": feed.owner,
            "generated_at": feed.generated_at.isoformat(),
            "total": len(items),
            "items": items[offset : offset + limit],
            "limit": limit,
            "offset": offset,
        }

    # -- handshake, status, chat ---------------------------------------------

    _NOTIFY_KIND = {
        EventKind.EMPLOYER_SHORTLISTS: "shortlisted",
        EventKind.CANDIDATE_SHORTLISTS: "shortlisted",
        EventKind.EMPLOYER_INITIATES_CONTACT: "contact_requested",
        EventKind.CANDIDATE_ACCEPTS_CONTACT: "contact_accepted",
        EventKind.VIDEO_REQUESTED: "video_requested",
        EventKind.VIDEO_ACCEPTED: "video_accepted",
    }

    def pair_record(job_id: str, candidate_id: str) -> Optional[storage.StoredRecord]:
        found = store.list_by(EntityKind.SHORTLIST, job_id=job_id, candidate_id=candidate_id)
        return found[0] if found else None

    def contact_exchange_view(job: JobListing, candidate: CandidateProfile) -> dict:
        employer = store.get(EntityKind.EMPLOYER, job.employer_id).entity
        return {
            "candidate": {
                "name": f"{candidate.first_name} {candidate.last_name}",
                "email": candidate.email,
            },
            "employer": {
                "business_name": employer.business_name,
                "hr_contacts": [
                    {"name": h.name, "phone": h.phone, "email": h.email}
                    for h in employer.hr_contacts
                ],
            },
        }

    def full_status_view(record: ShortlistRecord, job: JobListing, candidate: CandidateProfile) -> dict:
        view = _status_view(record)
        if record.contact_accepted:
            view["contact"] = contact_exchange_view(job, candidate)
        return view

    @app.post("/shortlists/{job_id}/{candidate_id}/events")
    def post_event(job_id: str, candidate_id: str, body: EventBody, request: Request):
        principal = principal_of(request)
        job = get_job(job_id).entity
        candidate = get_candidate(candidate_id).entity
        require_pair_party(principal, job, candidate_id)
        if job.status is not JobStatus.OPEN:
            raise ApiException(
                412, "precondition_failed", f"job {job_id!r} is closed"
            )
        try:
            kind = EventKind(body.kind)
        except ValueError:
            raise _validation_failed(
                f"unknown event kind {body.kind!r}",
                [f"expected one of {[k.value for k in EventKind]}"],
            )
        event = ShortlistEvent(kind=kind, actor=principal.party, at=now())

        existing = pair_record(job_id, candidate_id)
        if existing is None:
            try:
                existing = store.put(
                    EntityKind.SHORTLIST, shortlist.fresh_record(job_id, candidate_id)
                )
            except DuplicateKeyError:
                existing = pair_record(job_id, candidate_id)

        record_id = existing.record_id
        last_error: Optional[Exception] = None
        for _ in range(_CAS_ATTEMPTS):
            current = store.get(EntityKind.SHORTLIST, record_id)
            try:
                updated_entity = shortlist.apply_event(current.entity, event)
            except WrongActorError as exc:
                raise _unauthorized(str(exc))
            except DuplicateEventError as exc:
                raise ApiException(409, "duplicate", str(exc))
            except PreconditionFailedError as exc:
                raise ApiException(412, "precondition_failed", str(exc))
            try:
                updated = store.compare_and_update(
                    EntityKind.SHORTLIST, record_id, current.version, updated_entity
                )
                break
            except VersionConflictError as exc:
                last_error = exc
                continue
        else:
            raise ApiException(409, "conflict", f"shortlist {record_id!r} kept changing: {last_error}")

        notify_counterpart(principal.party, _NOTIFY_KIND[kind], job, candidate_id)
        return {"status": full_status_view(updated.entity, job, candidate)}

    @app.get("/shortlists/{job_id}/{candidate_id}")
    def pair_status(job_id: str, candidate_id: str, request: Request):
        principal = principal_of(request)
        job = get_job(job_id).entity
        candidate = get_candidate(candidate_id).entity
        require_pair_party(principal, job, candidate_id)
        existing = pair_record(job_id, candidate_id)
        record = existing.entity if existing else shortlist.fresh_record(job_id, candidate_id)
        return {"status": full_status_view(record, job, candidate)}

    @app.get("/candidates/{candidate_id}/shortlists")
    def candidate_shortlists(candidate_id: str, request: Request):
        principal = principal_of(request)
        get_candidate(candidate_id)
        require_self_candidate(principal, candidate_id)
        items = []
        for rec in store.list_by(EntityKind.SHORTLIST, candidate_id=candidate_id):
            job = store.get(EntityKind.JOB, rec.entity.job_id).entity
            employer = store.get(EntityKind.EMPLOYER, job.employer_id).entity
            view = _status_view(rec.entity)
            view["job_title"] = job.title
            view["business_name"] = employer.business_name
            items.append(view)
        items.sort(key=lambda v: v["job_id"])
        return {"items": items, "total": len(items)}

    @app.get("/jobs/{job_id}/shortlists")
    def job_shortlists(job_id: str, request: Request):
        principal = principal_of(request)
        job = get_job(job_id).entity
        require_self_employer(principal, job.employer_id)
        items = []
        for rec in store.list_by(EntityKind.SHORTLIST, job_id=job_id):
            candidate = store.get(EntityKind.CANDIDATE, rec.entity.candidate_id).entity
            view = _status_view(rec.entity)
            view["candidate_name"] = f"{candidate.first_name} {candidate.last_name}"
            items.append(view)
        items.sort(key=lambda v: v["candidate_id"])
        return {"items": items, "total": len(items)}

    @app.post("/shortlists/{job_id}/{candidate_id}/messages", status_code=201)
    def send_pair_message(job_id: str, candidate_id: str, body: MessageBody, request: Request):
        principal = principal_of(request)
        job = get_job(job_id).entity
        get_candidate(candidate_id)
        require_pair_party(principal, job, candidate_id)
        existing = pair_record(job_id, candidate_id)
        record = existing.entity if existing else shortlist.fresh_record(job_id, candidate_id)
        try:
            message = shortlist.send_message(
                record, principal.party, body.body, message_id="", sent_at=now()
            )
        except MessagingNotEnabledError as exc:
            raise ApiException(412, "precondition_failed", str(exc))
        except (shortlist.EmptyBodyError, shortlist.BodyTooLongError) as exc:
            raise _validation_failed(str(exc))
        stored = store.put(EntityKind.MESSAGE, message)
        notify_counterpart(principal.party, "message_received", job, candidate_id)
        return {"message": _message_view(stored.entity)}

    @app.get("/shortlists/{job_id}/{candidate_id}/messages")
    def pair_messages(
        job_id: str, candidate_id: str, request: Request, page: tuple = Depends(page_params)
    ):
        principal = principal_of(request)
        job = get_job(job_id).entity
        get_candidate(candidate_id)
        require_pair_party(principal, job, candidate_id)
        limit, offset = page
        # zero-padded sequential ids give the conversation its total order
        records = sorted(
            store.list_by(EntityKind.MESSAGE, job_id=job_id, candidate_id=candidate_id),
            key=lambda r: r.record_id,
        )
        items = [_message_view(rec.entity) for rec in records]
        return {
            "items": items[offset : offset + limit],
            "total": len(items),
            "limit": limit,
            "offset": offset,
        }

    # -- notifications -----------------------------------------------------------

    @app.get("/notifications")
    def list_notifications(
        request: Request,
        unread_only: bool = Query(False),
        page: tuple = Depends(page_params),
    ):
        principal = principal_of(request)
        limit, offset = page
        mine = state.notifications_for(principal)
        unread = sum(1 for n in mine if not n["read"])
        if unread_only:
            mine = [n for n in mine if not n["read"]]
        return {
            "items": mine[offset : offset + limit],
            "total": len(mine),
            "unread": unread,
            "limit": limit,
            "offset": offset,
        }

    @app.post("/notifications/{notification_id}/read")
    def read_notification(notification_id: str, request: Request):
        principal = principal_of(request)
        note = state.mark_read(principal, notification_id)
        return {"notification": note}

    if config.ui_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=config.ui_dir, html=True), name="ui")

    return app
