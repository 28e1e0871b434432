"""Record store behavior: ids, unique keys, optimistic versioning,
snapshots, file persistence, and the integrity checker."""

from __future__ import annotations

import json
import threading
from dataclasses import replace
from datetime import datetime, timezone

import pytest

from talentmatch.domain import Gender, JobStatus
from talentmatch.personality import PersonalityResult, QuizResponseSet, default_bank
from talentmatch.shortlist import Message, Party, ShortlistRecord, VideoState
from talentmatch.storage import (
    DuplicateKeyError,
    EntityKind,
    FileStore,
    MemoryStore,
    NotFoundError,
    SnapshotIntegrityError,
    SnapshotVersionError,
    StoreNotEmptyError,
    StoreValidationError,
    VersionConflictError,
    check_integrity,
    decode_entity,
    encode_entity,
    export_snapshot,
    import_snapshot,
    parse_snapshot,
    read_snapshot,
    write_snapshot,
)

from .conftest import make_candidate, make_employer, make_job, make_skill

T = datetime(2026, 1, 2, 12, 0, tzinfo=timezone.utc)


def seeded_store():
    """Store with enough referents for candidates and jobs to validate."""
    store = MemoryStore()
    for n in (1, 2, 3, 4):
        store.put(EntityKind.SKILL, make_skill(n))
    store.put(EntityKind.EMPLOYER, make_employer(employer_id=""))
    return store


def test_put_assigns_sequential_ids():
    store = seeded_store()
    first = store.put(EntityKind.CANDIDATE, make_candidate(candidate_id=""))
    second = store.put(EntityKind.CANDIDATE, make_candidate(
        candidate_id="", email="other@example.net"))
    assert first.record_id == "cand-000001"
    assert second.record_id == "cand-000002"
    assert first.version == 1
    assert first.entity.candidate_id == "cand-000001"


def test_counter_resumes_past_explicit_ids():
    store = seeded_store()
    store.put(EntityKind.CANDIDATE, make_candidate(candidate_id="cand-000044"))
    nxt = store.put(EntityKind.CANDIDATE, make_candidate(candidate_id=""))
    assert nxt.record_id == "cand-000045"


def test_put_rejects_duplicate_id():
    store = seeded_store()
    store.put(EntityKind.CANDIDATE, make_candidate())
    with pytest.raises(DuplicateKeyError):
        store.put(EntityKind.CANDIDATE, make_candidate())


def test_put_validates_against_catalog():
    store = seeded_store()
    with pytest.raises(StoreValidationError) as err:
        store.put(EntityKind.CANDIDATE, make_candidate(skills=frozenset({"skill-000099"})))
    assert "unknown skill" in err.value.violations


def test_employer_name_unique_case_insensitive():
    store = MemoryStore()
    store.put(EntityKind.EMPLOYER, make_employer(employer_id="", business_name="Acme Pty Ltd"))
    with pytest.raises(DuplicateKeyError):
        store.put(EntityKind.EMPLOYER, make_employer(employer_id="", business_name="ACME PTY LTD"))


def test_skill_name_category_unique():
    store = MemoryStore()
    store.put(EntityKind.SKILL, make_skill(1, skill_id="", name="Python", category="software"))
    with pytest.raises(DuplicateKeyError):
        store.put(EntityKind.SKILL, make_skill(2, skill_id="", name="python", category="Software"))
    # same name in a different category is a different skill
    store.put(EntityKind.SKILL, make_skill(3, skill_id="", name="python", category="education"))


def test_get_exists_delete():
    store = seeded_store()
    store.put(EntityKind.CANDIDATE, make_candidate())
    assert store.exists(EntityKind.CANDIDATE, "cand-000001")
    assert store.get(EntityKind.CANDIDATE, "cand-000001").entity == make_candidate()
    store.delete(EntityKind.CANDIDATE, "cand-000001")
    assert not store.exists(EntityKind.CANDIDATE, "cand-000001")
    with pytest.raises(NotFoundError):
        store.get(EntityKind.CANDIDATE, "cand-000001")
    with pytest.raises(NotFoundError):
        store.delete(EntityKind.CANDIDATE, "cand-000001")


def test_compare_and_update_happy_and_stale():
    store = seeded_store()
    store.put(EntityKind.CANDIDATE, make_candidate())
    updated = store.compare_and_update(
        EntityKind.CANDIDATE, "cand-000001", 1, make_candidate(salary_min=81_000))
    assert updated.version == 2
    assert store.version_of(EntityKind.CANDIDATE, "cand-000001") == 2
    with pytest.raises(VersionConflictError):
        store.compare_and_update(
            EntityKind.CANDIDATE, "cand-000001", 1, make_candidate(salary_min=82_000))


def test_compare_and_update_checks_id_and_validation():
    store = seeded_store()
    store.put(EntityKind.CANDIDATE, make_candidate())
    with pytest.raises(StoreValidationError):
        store.compare_and_update(
            EntityKind.CANDIDATE, "cand-000001", 1,
            make_candidate(candidate_id="cand-000002"))
    with pytest.raises(StoreValidationError):
        store.compare_and_update(
            EntityKind.CANDIDATE, "cand-000001", 1,
            make_candidate(skills=frozenset({"nope"})))


def test_compare_and_update_unique_rekey():
    store = MemoryStore()
    store.put(EntityKind.EMPLOYER, make_employer(employer_id="", business_name="alpha"))
    store.put(EntityKind.EMPLOYER, make_employer(employer_id="", business_name="beta"))
    with pytest.raises(DuplicateKeyError):
        store.compare_and_update(
            EntityKind.EMPLOYER, "emp-000002", 1,
            make_employer(employer_id="emp-000002", business_name="Alpha"))
    # failed re-key must not have clobbered the old key
    renamed = store.compare_and_update(
        EntityKind.EMPLOYER, "emp-000002", 1,
        make_employer(employer_id="emp-000002", business_name="gamma"))
    assert renamed.version == 2
    store.put(EntityKind.EMPLOYER, make_employer(employer_id="", business_name="beta"))


def test_list_by_filters():
    store = seeded_store()
    store.put(EntityKind.JOB, make_job(job_id="", status=JobStatus.OPEN))
    store.put(EntityKind.JOB, make_job(job_id="", status=JobStatus.CLOSED,
                                       title="closed role"))
    open_jobs = store.list_by(EntityKind.JOB, status=JobStatus.OPEN)
    assert [r.record_id for r in open_jobs] == ["job-000001"]
    by_skill = store.list_by(EntityKind.JOB, required_skills="skill-000001")
    assert len(by_skill) == 2  # membership test for set-valued fields
    assert store.list_by(EntityKind.JOB, title="closed role")[0].record_id == "job-000002"


def test_codecs_roundtrip_every_kind():
    entities = {
        EntityKind.CANDIDATE: make_candidate(),
        EntityKind.EMPLOYER: make_employer(),
        EntityKind.JOB: make_job(),
        EntityKind.SKILL: make_skill(),
        EntityKind.PERSONALITY_QUESTION: default_bank().questions[0],
        EntityKind.PERSONALITY_ANSWER: QuizResponseSet(
            candidate_id="cand-000001",
            answers={q.question_id: "a" for q in default_bank().questions}),
        EntityKind.PERSONALITY_RESULT: PersonalityResult(
            candidate_id="cand-000001", code="OETCS",
            tallies={"sociability": (5, 0), "decision_basis": (3, 2),
                     "work_style": (4, 1), "authority": (3, 2), "structure": (5, 0)},
            taken_at=T),
        EntityKind.SHORTLIST: ShortlistRecord(
            job_id="job-000001", candidate_id="cand-000001",
            employer_shortlisted_at=T, candidate_shortlisted_at=T,
            contact_initiated_at=T, contact_accepted_at=T,
            video_state=VideoState.REQUESTED, video_requested_by=Party.CANDIDATE,
            video_requested_at=T),
        EntityKind.MESSAGE: Message(
            message_id="msg-000001", job_id="job-000001", candidate_id="cand-000001",
            sender=Party.EMPLOYER, body="hello", sent_at=T),
    }
    for kind, entity in entities.items():
        encoded = encode_entity(kind, entity)
        # canonical JSON must be able to carry it
        json.dumps(encoded)
        assert decode_entity(kind, encoded) == entity


def test_snapshot_roundtrip_preserves_versions():
    store = seeded_store()
    store.put(EntityKind.CANDIDATE, make_candidate())
    store.compare_and_update(EntityKind.CANDIDATE, "cand-000001", 1,
                             make_candidate(salary_min=81_000))
    snap = export_snapshot(store)

    target = MemoryStore()
    import_snapshot(target, snap)
    assert target.version_of(EntityKind.CANDIDATE, "cand-000001") == 2
    assert export_snapshot(target).text == snap.text


def test_import_requires_empty_store():
    store = seeded_store()
    snap = export_snapshot(store)
    with pytest.raises(StoreNotEmptyError):
        import_snapshot(store, snap)


def test_snapshot_digest_tamper_detected():
    snap = export_snapshot(seeded_store())
    lines = snap.text.splitlines()
    lines[1] = lines[1].replace("acme", "evil")
    with pytest.raises(SnapshotIntegrityError):
        parse_snapshot("\n".join(lines) + "\n")


def test_snapshot_schema_version_checked():
    snap = export_snapshot(seeded_store())
    header = json.loads(snap.text.splitlines()[0])
    header["schema_version"] = 99
    body = "\n".join(snap.text.splitlines()[1:])
    doc = json.dumps(header, sort_keys=True, separators=(",", ":")) + "\n" + body + "\n"
    with pytest.raises(SnapshotVersionError):
        parse_snapshot(doc)


def test_snapshot_rejects_malformed_header():
    with pytest.raises(SnapshotIntegrityError):
        parse_snapshot("not json\n")


def test_snapshot_counter_continuity():
    store = seeded_store()
    store.put(EntityKind.CANDIDATE, make_candidate(candidate_id=""))
    target = MemoryStore()
    import_snapshot(target, export_snapshot(store))
    nxt = target.put(EntityKind.CANDIDATE, make_candidate(
        candidate_id="", email="x@example.net"))
    assert nxt.record_id == "cand-000002"


def test_file_store_persists_across_instances(tmp_path):
    store = FileStore(tmp_path)
    for n in (1, 2):
        store.put(EntityKind.SKILL, make_skill(n))
    store.put(EntityKind.EMPLOYER, make_employer(employer_id=""))
    store.put(EntityKind.CANDIDATE, make_candidate(
        skills=frozenset({"skill-000001"})))
    store.compare_and_update(EntityKind.CANDIDATE, "cand-000001", 1,
                             make_candidate(skills=frozenset({"skill-000001"}),
                                            salary_min=81_000))

    reloaded = FileStore(tmp_path)
    assert reloaded.version_of(EntityKind.CANDIDATE, "cand-000001") == 2
    assert reloaded.get(EntityKind.CANDIDATE, "cand-000001").entity.salary_min == 81_000
    assert export_snapshot(reloaded).text == export_snapshot(store).text
    # counters pick up where the files left off
    nxt = reloaded.put(EntityKind.CANDIDATE, make_candidate(
        candidate_id="", email="y@example.net", skills=frozenset({"skill-000002"})))
    assert nxt.record_id == "cand-000002"


def test_file_store_wipe_clears_disk(tmp_path):
    store = FileStore(tmp_path)
    store.put(EntityKind.SKILL, make_skill(1))
    store.wipe()
    assert store.is_empty()
    assert FileStore(tmp_path).is_empty()


def test_write_and_read_snapshot_files(tmp_path):
    store = seeded_store()
    path = tmp_path / "corpus.snap"
    write_snapshot(store, path)
    snap = read_snapshot(path)
    target = MemoryStore()
    import_snapshot(target, snap)
    assert export_snapshot(target).text == export_snapshot(store).text


def test_integrity_clean_store_ok():
    store = seeded_store()
    store.put(EntityKind.CANDIDATE, make_candidate())
    report = check_integrity(store)
    assert report.ok
    assert report.issues == ()


def test_integrity_flags_orphans():
    store = seeded_store()
    store.put(EntityKind.CANDIDATE, make_candidate())
    store.put(EntityKind.JOB, make_job())
    store.put(EntityKind.SHORTLIST, ShortlistRecord(
        job_id="job-000001", candidate_id="cand-000001"))
    assert check_integrity(store).ok

    store.delete(EntityKind.CANDIDATE, "cand-000001")
    report = check_integrity(store)
    assert not report.ok
    assert any(issue.kind is EntityKind.SHORTLIST and issue.missing == "cand-000001"
               for issue in report.issues)


def test_integrity_flags_message_without_shortlist():
    store = seeded_store()
    store.put(EntityKind.CANDIDATE, make_candidate())
    store.put(EntityKind.JOB, make_job())
    store.put(EntityKind.MESSAGE, Message(
        message_id="", job_id="job-000001", candidate_id="cand-000001",
        sender=Party.EMPLOYER, body="hi", sent_at=T))
    report = check_integrity(store)
    assert any(issue.kind is EntityKind.MESSAGE for issue in report.issues)


def test_concurrent_cas_single_winner_per_round():
    store = seeded_store()
    store.put(EntityKind.CANDIDATE, make_candidate(salary_max=10_000_000))
    hits, misses = [], []

    def bump():
        rec = store.get(EntityKind.CANDIDATE, "cand-000001")
        try:
            store.compare_and_update(
                EntityKind.CANDIDATE, "cand-000001", rec.version,
                replace(rec.entity, salary_min=rec.entity.salary_min + 1))
            hits.append(1)
        except VersionConflictError:
            misses.append(1)

    threads = [threading.Thread(target=bump) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    # every winner's increment landed; nobody overwrote anybody
    final = store.get(EntityKind.CANDIDATE, "cand-000001").entity.salary_min
    assert final == make_candidate().salary_min + len(hits)
    assert len(hits) >= 1
