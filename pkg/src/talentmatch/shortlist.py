"""Mutual-interest handshake between an employer's job and a candidate.

Four stages gate contact: each side shortlists the other (in either
order), the employer initiates contact, and the candidate accepts.
Only a 4/4 record unlocks instant messaging and video signaling.

Error precedence when an event is rejected: for the four handshake
events the actor is checked first (wrong-actor), then whether the
stage already happened (duplicate-event), then prerequisites
(precondition-failed).  Video acceptance derives its required actor
from the pending request, so its state checks run first and the
opposite-party rule last.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from typing import Optional

MAX_MESSAGE_LENGTH = 4096


class Party(enum.Enum):
    EMPLOYER = "employer"
    CANDIDATE = "candidate"

    @property
    def other(self) -> "Party":
        return Party.CANDIDATE if self is Party.EMPLOYER else Party.EMPLOYER


class VideoState(enum.Enum):
    NONE = "none"
    REQUESTED = "requested"
    ACCEPTED = "accepted"


class EventKind(enum.Enum):
    EMPLOYER_SHORTLISTS = "employer_shortlists"
    CANDIDATE_SHORTLISTS = "candidate_shortlists"
    EMPLOYER_INITIATES_CONTACT = "employer_initiates_contact"
    CANDIDATE_ACCEPTS_CONTACT = "candidate_accepts_contact"
    VIDEO_REQUESTED = "video_requested"
    VIDEO_ACCEPTED = "video_accepted"


# Events whose actor is fixed by the kind.  Video events take either
# party: anyone may request, and acceptance is pinned to the opposite
# party of whoever requested.
_REQUIRED_ACTOR = {
    EventKind.EMPLOYER_SHORTLISTS: Party.EMPLOYER,
    EventKind.CANDIDATE_SHORTLISTS: Party.CANDIDATE,
    EventKind.EMPLOYER_INITIATES_CONTACT: Party.EMPLOYER,
    EventKind.CANDIDATE_ACCEPTS_CONTACT: Party.CANDIDATE,
}


class ShortlistError(Exception):
    """Base class for handshake violations."""


class WrongActorError(ShortlistError):
    """The acting party may not emit this event."""


class DuplicateEventError(ShortlistError):
    """The event's stage has already happened."""


class PreconditionFailedError(ShortlistError):
    """An earlier stage is still missing."""


class MessagingNotEnabledError(ShortlistError):
    """Messaging requires all four handshake stages."""


class EmptyBodyError(ValueError):
    pass


class BodyTooLongError(ValueError):
    pass


@dataclass(frozen=True)
class ShortlistEvent:
    kind: EventKind
    actor: Party
    at: datetime


@dataclass(frozen=True)
class ShortlistRecord:
    """Handshake state for one (job, candidate) pair.

    A stage's timestamp doubles as its flag: None means the stage has
    not happened.  No event ever clears a stage, so the boolean views
    are monotone.
    """

    job_id: str
    candidate_id: str
    employer_shortlisted_at: Optional[datetime] = None
    candidate_shortlisted_at: Optional[datetime] = None
    contact_initiated_at: Optional[datetime] = None
    contact_accepted_at: Optional[datetime] = None
    video_state: VideoState = VideoState.NONE
    video_requested_by: Optional[Party] = None
    video_requested_at: Optional[datetime] = None
    video_accepted_at: Optional[datetime] = None

    def __post_init__(self) -> None:
        if self.contact_initiated_at is not None and not (
            self.employer_shortlisted_at and self.candidate_shortlisted_at
        ):
            raise ValueError("contact initiated without mutual shortlist")
        if self.contact_accepted_at is not None and self.contact_initiated_at is None:
            raise ValueError("contact accepted without initiation")
        if self.video_state is not VideoState.NONE:
            if not self.all_stages_complete:
                raise ValueError("video state requires a 4/4 record")
            if self.video_requested_by is None or self.video_requested_at is None:
                raise ValueError("video state without requester")
        else:
            if self.video_requested_by is not None or self.video_requested_at is not None:
                raise ValueError("video requester without video state")
        if self.video_accepted_at is not None and self.video_state is not VideoState.ACCEPTED:
            raise ValueError("video acceptance timestamp without accepted state")

    @property
    def employer_shortlisted(self) -> bool:
        return self.employer_shortlisted_at is not None

    @property
    def candidate_shortlisted(self) -> bool:
        return self.candidate_shortlisted_at is not None

    @property
    def contact_initiated(self) -> bool:
        return self.contact_initiated_at is not None

    @property
    def contact_accepted(self) -> bool:
        return self.contact_accepted_at is not None

    @property
    def all_stages_complete(self) -> bool:
        return (
            self.employer_shortlisted
            and self.candidate_shortlisted
            and self.contact_initiated
            and self.contact_accepted
        )

    @property
    def stages_complete(self) -> int:
        return sum(
            (
                self.employer_shortlisted,
                self.candidate_shortlisted,
                self.contact_initiated,
                self.contact_accepted,
            )
        )


@dataclass(frozen=True)
class Message:
    message_id: str
    job_id: str
    candidate_id: str
    sender: Party
    body: str
    sent_at: datetime

    def __post_init__(self) -> None:
        if not self.body.strip():
            raise EmptyBodyError("message body is empty")
        if len(self.body) > MAX_MESSAGE_LENGTH:
            raise BodyTooLongError(
                f"message body exceeds {MAX_MESSAGE_LENGTH} characters"
            )


def fresh_record(job_id: str, candidate_id: str) -> ShortlistRecord:
    return ShortlistRecord(job_id=job_id, candidate_id=candidate_id)


def messaging_enabled(record: ShortlistRecord) -> bool:
    return record.all_stages_complete


def apply_event(record: ShortlistRecord, event: ShortlistEvent) -> ShortlistRecord:
    """Advance the handshake by exactly one stage.

    Returns a new record; the input is never mutated.  Raises
    WrongActorError, DuplicateEventError or PreconditionFailedError
    (see the module docstring for precedence).
    """
    kind = event.kind
    required = _REQUIRED_ACTOR.get(kind)
    if required is not None and event.actor is not required:
        raise WrongActorError(f"{kind.value} must come from the {required.value}")

    if kind is EventKind.EMPLOYER_SHORTLISTS:
        if record.employer_shortlisted:
            raise DuplicateEventError("employer already shortlisted")
        return replace(record, employer_shortlisted_at=event.at)

    if kind is EventKind.CANDIDATE_SHORTLISTS:
        if record.candidate_shortlisted:
            raise DuplicateEventError("candidate already shortlisted")
        return replace(record, candidate_shortlisted_at=event.at)

    if kind is EventKind.EMPLOYER_INITIATES_CONTACT:
        if record.contact_initiated:
            raise DuplicateEventError("contact already initiated")
        if not (record.employer_shortlisted and record.candidate_shortlisted):
            raise PreconditionFailedError("contact requires a mutual shortlist")
        return replace(record, contact_initiated_at=event.at)

    if kind is EventKind.CANDIDATE_ACCEPTS_CONTACT:
        if record.contact_accepted:
            raise DuplicateEventError("contact already accepted")
        if not record.contact_initiated:
            raise PreconditionFailedError("no contact request to accept")
        return replace(record, contact_accepted_at=event.at)

    if kind is EventKind.VIDEO_REQUESTED:
        if record.video_state is not VideoState.NONE:
            raise DuplicateEventError("video already requested")
        if not record.all_stages_complete:
            raise PreconditionFailedError("video requires all four stages")
        return replace(
            record,
            video_state=VideoState.REQUESTED,
            video_requested_by=event.actor,
            video_requested_at=event.at,
        )

    if kind is EventKind.VIDEO_ACCEPTED:
        if record.video_state is VideoState.NONE:
            raise PreconditionFailedError("no video request to accept")
        if record.video_state is VideoState.ACCEPTED:
            raise DuplicateEventError("video already accepted")
        if event.actor is record.video_requested_by:
            raise WrongActorError("video must be accepted by the other party")
        return replace(
            record, video_state=VideoState.ACCEPTED, video_accepted_at=event.at
        )

    raise ValueError(f"unknown event kind: {kind!r}")


def send_message(
    record: ShortlistRecord,
    sender: Party,
    body: str,
    *,
    message_id: str,
    sent_at: Optional[datetime] = None,
) -> Message:
    """Build a message for a pair whose handshake is complete.

    The caller supplies the message id (storage assigns sequential ids,
    which give each pair's conversation its total order).
    """
    if not messaging_enabled(record):
        raise MessagingNotEnabledError(
            f"handshake at {record.stages_complete}/4 for job {record.job_id}"
        )
    if sent_at is None:
        sent_at = datetime.now(timezone.utc)
    return Message(
        message_id=message_id,
        job_id=record.job_id,
        candidate_id=record.candidate_id,
        sender=sender,
        body=body,
        sent_at=sent_at,
    )
